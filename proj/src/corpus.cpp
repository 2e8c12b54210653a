#include "chaosbox/corpus.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "chaosbox/error.hpp"
#include "chaosbox/generation.hpp"
#include "chaosbox/io.hpp"

namespace chaosbox {

namespace {

std::optional<double> optional_number(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
  if (!doc.at(key).is_number()) {
    throw Error(ErrorKind::ParseError, std::string("published field '") + key + "' is not a number");
  }
  return doc.at(key).get<double>();
}

PublishedRow published_from_json(const nlohmann::json& doc) {
  PublishedRow row;
  row.nl_min = optional_number(doc, "nl_min");
  row.nl_max = optional_number(doc, "nl_max");
  row.nl_avg = optional_number(doc, "nl_avg");
  row.sac = optional_number(doc, "sac");
  row.sac_offset = optional_number(doc, "sac_offset");
  row.bic_nl = optional_number(doc, "bic_nl");
  row.lp = optional_number(doc, "lp");
  row.dp = optional_number(doc, "dp");
  row.fixed_points = optional_number(doc, "fixed_points");
  return row;
}

// Shortest round-trip text in fixed notation ("0.0007", never "7e-04").
std::string plain_decimal(double v) {
  char buf[512];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
  return ec == std::errc{} ? std::string(buf, ptr) : format_key_real(v);
}

// Half a unit in the last printed decimal of the claim.
double printed_resolution(double claim) {
  const std::string text = plain_decimal(claim);
  const std::size_t dot = text.find('.');
  const int decimals = dot == std::string::npos ? 0 : static_cast<int>(text.size() - dot - 1);
  return 0.5 * std::pow(10.0, -decimals) + 1e-12;
}

std::string shortest(const std::optional<double>& v) {
  return v ? plain_decimal(*v) : std::string();
}

std::string markdown_cell(const std::optional<double>& v, int decimals) {
  if (!v) return "-";
  char buf[64];
  if (std::floor(*v) == *v && std::fabs(*v) < 1e6) {
    std::snprintf(buf, sizeof buf, "%.0f", *v);
  } else {
    std::snprintf(buf, sizeof buf, "%.*f", decimals, *v);
    // published values keep their printed precision
    const std::string s = plain_decimal(*v);
    if (s.size() < std::string(buf).size()) return s;
  }
  return buf;
}

std::string_view kind_name(RowKind kind) {
  switch (kind) {
    case RowKind::Computed: return "computed";
    case RowKind::Published: return "published";
    case RowKind::Failed: return "error";
  }
  return "error";
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir) {
  const std::filesystem::path manifest_path = dir / "manifest.json";
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text_file(manifest_path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, manifest_path.string() + ": " + e.what());
  }

  std::vector<CorpusEntry> corpus;
  for (const nlohmann::json& item : doc.at("entries")) {
    CorpusEntry entry;
    entry.id = item.at("id").get<std::string>();
    entry.source = item.value("source", "");
    entry.note = item.value("note", "");
    if (item.contains("quality_flags")) {
      entry.quality_flags = item.at("quality_flags").get<std::vector<std::string>>();
    }
    if (item.contains("file")) {
      const GridFormat format = parse_grid_format(item.value("format", "dec"));
      entry.table = load_sbox(dir / item.at("file").get<std::string>(), format);
    }
    if (item.contains("published")) entry.published = published_from_json(item.at("published"));
    if (!entry.table && !entry.published) {
      throw Error(ErrorKind::ParseError, "corpus entry '" + entry.id + "' has neither table nor published row");
    }
    corpus.push_back(std::move(entry));
  }
  return corpus;
}

const CorpusEntry* find_entry(const std::vector<CorpusEntry>& corpus, std::string_view id) {
  for (const CorpusEntry& e : corpus) {
    if (e.id == id) return &e;
  }
  // Citation ids are stored as "[22]"; shells and CLI11 tend to eat brackets.
  const std::string bracketed = "[" + std::string(id) + "]";
  for (const CorpusEntry& e : corpus) {
    if (e.id == bracketed) return &e;
  }
  return nullptr;
}

PublishedRow summarize(const MetricReport& r) {
  PublishedRow row;
  row.nl_min = r.nl.min;
  row.nl_max = r.nl.max;
  row.nl_avg = r.nl.avg;
  row.sac = r.sac.avg;
  row.sac_offset = r.sac.offset;
  row.bic_nl = r.bic.avg;
  row.lp = r.lp.lp;
  row.dp = r.differential.dp;
  row.fixed_points = static_cast<double>(r.fixed_points.size());
  return row;
}

std::vector<MetricDelta> compare_to_published(const MetricReport& report,
                                              const PublishedRow& claims) {
  const PublishedRow computed = summarize(report);
  std::vector<MetricDelta> out;
  const auto add = [&](const char* name, const std::optional<double>& claim,
                       const std::optional<double>& value) {
    if (!claim || !value) return;
    out.push_back({name, *claim, *value, std::fabs(*claim - *value) <= printed_resolution(*claim)});
  };
  add("nl_min", claims.nl_min, computed.nl_min);
  add("nl_max", claims.nl_max, computed.nl_max);
  add("nl_avg", claims.nl_avg, computed.nl_avg);
  add("sac", claims.sac, computed.sac);
  add("sac_offset", claims.sac_offset, computed.sac_offset);
  add("bic_nl", claims.bic_nl, computed.bic_nl);
  add("lp", claims.lp, computed.lp);
  add("dp", claims.dp, computed.dp);
  add("fixed_points", claims.fixed_points, computed.fixed_points);
  return out;
}

ComparisonRow failed_row(std::string id, std::string error) {
  ComparisonRow row;
  row.id = std::move(id);
  row.kind = RowKind::Failed;
  row.error = std::move(error);
  return row;
}

ComparisonRow compare_row(const CorpusEntry& entry, NlMode mode) {
  ComparisonRow row;
  row.id = entry.id;
  row.note = entry.note;
  for (const std::string& flag : entry.quality_flags) {
    row.note += (row.note.empty() ? "" : "; ") + std::string("data quality: ") + flag;
  }

  if (!entry.table) {
    row.kind = RowKind::Published;
    row.values = *entry.published;
    return row;
  }

  try {
    row.report = full_report(*entry.table, mode);
  } catch (const Error& e) {
    return failed_row(entry.id, e.what());
  }
  row.kind = RowKind::Computed;
  row.values = summarize(*row.report);
  if (entry.published) {
    row.deltas = compare_to_published(*row.report, *entry.published);
    std::ostringstream mismatches;
    int n = 0;
    for (const MetricDelta& d : row.deltas) {
      if (d.match) continue;
      mismatches << (n++ ? ", " : "") << d.metric << " claimed " << plain_decimal(d.claimed)
                 << " computed " << plain_decimal(d.computed);
    }
    if (n > 0) {
      row.note += (row.note.empty() ? "" : "; ") + std::string("erratum: ") +
                  std::to_string(n) + " of " + std::to_string(row.deltas.size()) +
                  " published claims differ (" + mismatches.str() + ")";
    }
  }
  return row;
}

ComparisonTable compare(const std::vector<CorpusEntry>& entries, NlMode mode) {
  if (entries.empty()) {
    throw Error(ErrorKind::InvalidArgument, "compare needs at least one entry");
  }
  ComparisonTable table;
  table.reserve(entries.size());
  for (const CorpusEntry& e : entries) table.push_back(compare_row(e, mode));
  return table;
}

std::string render_markdown(const ComparisonTable& table) {
  std::ostringstream out;
  out << "| S-box | published | NL min | NL max | NL avg | SAC | SAC offset | BIC-NL | LP | DP | FP | note |\n"
      << "|---|---|---|---|---|---|---|---|---|---|---|---|\n";
  for (const ComparisonRow& row : table) {
    const PublishedRow& v = row.values;
    out << "| " << row.id << " | " << (row.kind == RowKind::Published ? "published" : "") << " | "
        << markdown_cell(v.nl_min, 0) << " | " << markdown_cell(v.nl_max, 0) << " | "
        << markdown_cell(v.nl_avg, 2) << " | " << markdown_cell(v.sac, 4) << " | "
        << markdown_cell(v.sac_offset, 4) << " | " << markdown_cell(v.bic_nl, 2) << " | "
        << markdown_cell(v.lp, 4) << " | " << markdown_cell(v.dp, 4) << " | "
        << markdown_cell(v.fixed_points, 0) << " | "
        << (row.kind == RowKind::Failed ? "error: " + row.error : row.note) << " |\n";
  }
  for (const ComparisonRow& row : table) {
    if (row.deltas.empty()) continue;
    out << "\n### Deltas: " << row.id << "\n\n"
        << "| metric | claimed | computed | |\n|---|---|---|---|\n";
    for (const MetricDelta& d : row.deltas) {
      out << "| " << d.metric << " | " << plain_decimal(d.claimed) << " | "
          << plain_decimal(d.computed) << " | " << (d.match ? "match" : "MISMATCH") << " |\n";
    }
  }
  return out.str();
}

std::string render_csv(const ComparisonTable& table) {
  std::ostringstream out;
  out << "id,kind,published,nl_min,nl_max,nl_avg,sac,sac_offset,bic_nl,lp,dp,fp,note\n";
  for (const ComparisonRow& row : table) {
    const PublishedRow& v = row.values;
    out << csv_escape(row.id) << ',' << kind_name(row.kind) << ','
        << (row.kind == RowKind::Published ? "published" : "") << ',' << shortest(v.nl_min) << ','
        << shortest(v.nl_max) << ',' << shortest(v.nl_avg) << ',' << shortest(v.sac) << ','
        << shortest(v.sac_offset) << ',' << shortest(v.bic_nl) << ',' << shortest(v.lp) << ','
        << shortest(v.dp) << ',' << shortest(v.fixed_points) << ','
        << csv_escape(row.kind == RowKind::Failed ? row.error : row.note) << '\n';
  }
  return out.str();
}

}  // namespace chaosbox
