#ifndef CURVEFLOW_IO_HPP
#define CURVEFLOW_IO_HPP

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

#include "curveflow/flow.hpp"
#include "curveflow/profile.hpp"

namespace curveflow {

using json = nlohmann::json;

// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

struct ProfileData {
    DomainKind domain = DomainKind::FullCircle;
    int n = 1;
    std::vector<double> values;
};

json profile_to_json(DomainKind domain, int n, std::span<const double> values);
json profile_to_json(const SupportProfile& p);
ProfileData profile_from_json(const json& j);

// Parses JSON text; syntax errors become ParseError with the byte offset.
json parse_json_text(const std::string& text, const std::string& what);
json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

// Header "theta,value" then one node per line.
std::string profile_to_csv(DomainKind domain, std::span<const double> values, const std::string& column = "s");
ProfileData profile_from_csv(const std::string& text, DomainKind domain, int n);

json history_to_json(const std::vector<HistoryEntry>& history, std::size_t max_entries = 200);
std::string history_to_csv(const std::vector<HistoryEntry>& history);

// Deterministic result document: no clocks, no host data.
json flow_result_to_json(const FlowResult& r, const json& config_echo);

}  // namespace curveflow

#endif
