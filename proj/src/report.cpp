#include "fdpn/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace fdpn {

const char* const kMetricDefinition =
    "si_suppression_db = 10*log10(sum|si_true|^2 / sum|si_true - u*exp(j*phi_hat)|^2), "
    "si_true = SI component of the digital-SIC input (oracle), capped at 300 dB";

std::string format_number(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

std::string sweep_csv(const SweepResult& r) {
    std::string out;
    for (const auto& [k, v] : r.metadata) out += "# " + k + " = " + v + "\n";
    out += "x_value";
    for (const auto& c : r.columns) out += "," + c + "_mean_db," + c + "_ci95_db";
    out += "\n";
    for (const auto& row : r.rows) {
        out += format_number(row.x);
        for (const auto& st : row.stats) out += "," + format_number(st.mean_db) + "," + format_number(st.ci95_db);
        out += "\n";
    }
    return out;
}

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const auto i = s.find(sep, pos);
        out.emplace_back(s.substr(pos, i == std::string_view::npos ? std::string_view::npos : i - pos));
        if (i == std::string_view::npos) break;
        pos = i + 1;
    }
    return out;
}

double to_double(const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw InputError("sweep csv: bad number '" + s + "'");
    }
    if (used != s.size()) throw InputError("sweep csv: bad number '" + s + "'");
    return v;
}

}  // namespace

SweepResult parse_sweep_csv(std::string_view text) {
    SweepResult r;
    bool have_header = false;
    for (const auto& line : split(text, '\n')) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string body = line.size() > 2 ? line.substr(2) : "";
            const auto eq = body.find(" = ");
            if (eq == std::string::npos) {
                r.metadata.emplace_back(body, "");
            } else {
                r.metadata.emplace_back(body.substr(0, eq), body.substr(eq + 3));
            }
            continue;
        }
        const auto fields = split(line, ',');
        if (!have_header) {
            if (fields.empty() || fields[0] != "x_value" || fields.size() % 2 != 1)
                throw InputError("sweep csv: malformed header");
            for (std::size_t i = 1; i < fields.size(); i += 2) {
                const std::string suffix = "_mean_db";
                const auto& f = fields[i];
                if (f.size() <= suffix.size() || f.compare(f.size() - suffix.size(), suffix.size(), suffix) != 0)
                    throw InputError("sweep csv: malformed column '" + f + "'");
                r.columns.push_back(f.substr(0, f.size() - suffix.size()));
            }
            have_header = true;
            continue;
        }
        if (fields.size() != 1 + 2 * r.columns.size()) throw InputError("sweep csv: row width mismatch");
        SweepResult::Row row;
        row.x = to_double(fields[0]);
        for (std::size_t i = 1; i < fields.size(); i += 2)
            row.stats.push_back({to_double(fields[i]), to_double(fields[i + 1])});
        r.rows.push_back(std::move(row));
    }
    if (!have_header) throw InputError("sweep csv: missing header");
    return r;
}

std::string single_dump_csv(const TrialArtifacts& a,
                            const std::vector<std::pair<std::string, std::string>>& metadata) {
    std::string out;
    for (const auto& [k, v] : metadata) out += "# " + k + " = " + v + "\n";
    out += "n,true_phase_rad,phi_hat_rad,residual_power\n";
    for (std::size_t i = 0; i < a.phi_hat.size(); ++i) {
        out += std::to_string(i) + "," + format_number(a.true_phase.phases[i]) + "," +
               format_number(a.phi_hat.phases[i]) + "," + format_number(std::norm(a.residual[i])) + "\n";
    }
    return out;
}

std::string opcount_tsv(const OpCountParams& params, std::size_t n_samples) {
    std::string out = "estimator\tcomplexity\tper_sample\treal_mults\treal_adds\tdivisions\targ_evals\n";
    for (auto kind : {OpCountKind::WfWindow, OpCountKind::OnlyCpe, OpCountKind::LpfBased, OpCountKind::TdMmse}) {
        const auto c = op_count(kind, params, n_samples);
        out += op_count_name(kind) + "\t" + op_count_formula(kind) + "\t" + format_number(c.per_sample()) + "\t" +
               format_number(c.real_mults) + "\t" + format_number(c.real_adds) + "\t" +
               format_number(c.divisions) + "\t" + format_number(c.arg_evals) + "\n";
    }
    return out;
}

void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace fdpn
