#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "chaosbox/generation.hpp"
#include "chaosbox/metrics.hpp"

namespace chaosbox {

inline constexpr std::string_view kToolName = "chaosbox";
inline constexpr std::string_view kToolVersion = "1.0.0";

// Everything needed to replay a run. The timestamp is the only field that is
// allowed to differ between otherwise identical invocations.
struct RunManifest {
  std::string subcommand;
  nlohmann::json parameters = nlohmann::json::object();
  std::string timestamp;  // UTC, ISO-8601

  nlohmann::json to_json() const;
};

std::string utc_timestamp();

nlohmann::json key_to_json(const KeySpec& key);
// Accepts numbers or decimal strings for every field.
KeySpec key_from_json(const nlohmann::json& doc);

nlohmann::json report_to_json(const MetricReport& report);
nlohmann::json refine_stats_to_json(const RefineStats& stats);

// Multi-line plain-text rendering for terminals.
std::string report_table(const MetricReport& report);

std::string markdown_header();
std::string report_markdown_row(std::string_view id, const MetricReport& report);

// printf("%.17g")
std::string format_real17(double value);

}  // namespace chaosbox
