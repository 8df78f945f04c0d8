#include "curveflow/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "curveflow/error.hpp"

namespace curveflow {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return {buf, ptr};
}

json profile_to_json(DomainKind domain, int n, std::span<const double> values) {
    return json{{"domain", to_string(domain)},
                {"n", n},
                {"M", values.size()},
                {"values", std::vector<double>(values.begin(), values.end())}};
}

json profile_to_json(const SupportProfile& p) { return profile_to_json(p.domain(), p.n(), p.values()); }

ProfileData profile_from_json(const json& j) {
    try {
        ProfileData p;
        p.domain = domain_from_string(j.at("domain").get<std::string>());
        p.n = j.at("n").get<int>();
        p.values = j.at("values").get<std::vector<double>>();
        const auto m = j.at("M").get<std::size_t>();
        if (m != p.values.size())
            throw DataError("profile declares M = " + std::to_string(m) + " but has " +
                            std::to_string(p.values.size()) + " values");
        return p;
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed profile: ") + e.what());
    }
}

json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.byte, "valid JSON", what + ": " + e.what());
    }
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParameterError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path.string());
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParameterError("cannot write " + path.string());
    out << text;
}

std::string profile_to_csv(DomainKind domain, std::span<const double> values, const std::string& column) {
    std::string out = "theta," + column + "\n";
    const int M = static_cast<int>(values.size());
    for (int j = 0; j < M; ++j) {
        out += format_double(grid_node(domain, M, j));
        out += ',';
        out += format_double(values[j]);
        out += '\n';
    }
    return out;
}

ProfileData profile_from_csv(const std::string& text, DomainKind domain, int n) {
    ProfileData p{domain, n, {}};
    std::istringstream in(text);
    std::string line;
    std::size_t offset = 0;
    bool header = true;
    while (std::getline(in, line)) {
        const std::size_t start = offset;
        offset += line.size() + 1;
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw ParseError(start, "','", "CSV row without separator");
        double v = 0.0;
        const char* first = line.data() + comma + 1;
        const char* last = line.data() + line.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last)
            throw ParseError(start + comma + 1, "number", "malformed CSV value");
        p.values.push_back(v);
    }
    return p;
}

json history_to_json(const std::vector<HistoryEntry>& history, std::size_t max_entries) {
    // Decimate to at most max_entries rows, always keeping the last one.
    const std::size_t stride = history.size() <= max_entries ? 1 : (history.size() + max_entries - 1) / max_entries;
    json rows = json::array();
    for (std::size_t i = 0; i < history.size(); ++i) {
        if (i % stride != 0 && i + 1 != history.size()) continue;
        const HistoryEntry& h = history[i];
        rows.push_back({{"step", h.step},
                        {"t", h.t},
                        {"dt", h.dt},
                        {"residual", h.residual},
                        {"max_speed", h.max_speed},
                        {"kappa_min", h.kappa_min},
                        {"kappa_max", h.kappa_max},
                        {"pinching_B", h.pinching_B}});
    }
    return rows;
}

std::string history_to_csv(const std::vector<HistoryEntry>& history) {
    std::string out = "step,t,dt,residual,max_speed,kappa_min,kappa_max,pinching_B,min_abs_x,max_abs_x\n";
    for (const HistoryEntry& h : history) {
        out += std::to_string(h.step);
        for (double v : {h.t, h.dt, h.residual, h.max_speed, h.kappa_min, h.kappa_max, h.pinching_B, h.min_abs_x,
                         h.max_abs_x}) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

json flow_result_to_json(const FlowResult& r, const json& config_echo) {
    json j;
    j["config"] = config_echo;
    j["converged"] = r.converged;
    j["status"] = to_string(r.status);
    j["message"] = r.message;
    j["steps"] = r.state.steps;
    j["rejected_steps"] = r.state.rejected;
    j["t"] = r.state.t;
    j["parametrization"] = r.parametrization == Parametrization::Support ? "support" : "radial";
    j["profile"] = profile_to_json(r.domain, r.n, r.state.values);
    j["residual_history"] = history_to_json(r.history);
    j["diagnostics"] = {{"final_residual", r.final_residual},
                        {"final_speed", r.final_speed},
                        {"max_pinching_ratio", r.max_pinching_ratio},
                        {"max_pinching_B", r.max_pinching_B},
                        {"worst_monotone_defect", r.worst_monotone_defect},
                        {"min_abs_x", r.min_abs_x_seen},
                        {"max_abs_x", r.max_abs_x_seen},
                        {"barrier_ok", r.barrier_ok},
                        {"residual_tail_monotone", r.residual_tail_monotone}};
    return j;
}

}  // namespace curveflow
