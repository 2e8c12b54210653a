#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chaosbox/metrics.hpp"
#include "chaosbox/sbox.hpp"

namespace chaosbox {

// A metric row as printed in a comparison table. Any column may be missing.
struct PublishedRow {
  std::optional<double> nl_min, nl_max, nl_avg;
  std::optional<double> sac, sac_offset, bic_nl;
  std::optional<double> lp, dp;
  std::optional<double> fixed_points;
};

struct CorpusEntry {
  std::string id;
  std::optional<SBox> table;
  std::optional<PublishedRow> published;
  std::string source;
  std::string note;
  std::vector<std::string> quality_flags;
};

// Reads <dir>/manifest.json and every grid file it references.
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir);

// Also matches "22" against the stored id "[22]".
const CorpusEntry* find_entry(const std::vector<CorpusEntry>& corpus, std::string_view id);

// One claimed-vs-computed comparison; match means the computed value rounds
// to the claim at the claim's printed resolution.
struct MetricDelta {
  std::string metric;
  double claimed = 0.0;
  double computed = 0.0;
  bool match = false;
};

std::vector<MetricDelta> compare_to_published(const MetricReport& report,
                                              const PublishedRow& claims);

enum class RowKind { Computed, Published, Failed };

struct ComparisonRow {
  std::string id;
  RowKind kind = RowKind::Failed;
  PublishedRow values;                   // what the table shows
  std::optional<MetricReport> report;    // Computed rows only
  std::vector<MetricDelta> deltas;       // Computed rows with published claims
  std::string note;
  std::string error;                     // Failed rows only
};

using ComparisonTable = std::vector<ComparisonRow>;

PublishedRow summarize(const MetricReport& report);

ComparisonRow compare_row(const CorpusEntry& entry, NlMode mode);
ComparisonRow failed_row(std::string id, std::string error);

// Throws InvalidArgument on an empty list; per-row metric errors become
// Failed rows.
ComparisonTable compare(const std::vector<CorpusEntry>& entries, NlMode mode);

// Table followed by one claimed-vs-computed section per row with claims.
std::string render_markdown(const ComparisonTable& table);
std::string render_csv(const ComparisonTable& table);

}  // namespace chaosbox
