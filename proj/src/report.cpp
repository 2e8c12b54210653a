#include "chaosbox/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>

#include "chaosbox/error.hpp"

namespace chaosbox {

namespace {

template <typename Derived>
nlohmann::json matrix_to_json(const Eigen::DenseBase<Derived>& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string key_field_text(const nlohmann::json& doc, const char* name) {
  if (!doc.contains(name)) {
    throw Error(ErrorKind::ParseError, std::string("key JSON is missing field '") + name + "'");
  }
  const nlohmann::json& v = doc.at(name);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_float()) return format_key_real(v.get<double>());
  throw Error(ErrorKind::ParseError,
              std::string("key JSON field '") + name + "' must be a number or decimal string");
}

}  // namespace

nlohmann::json RunManifest::to_json() const {
  return {{"tool", kToolName},
          {"version", kToolVersion},
          {"subcommand", subcommand},
          {"parameters", parameters},
          {"timestamp", timestamp}};
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json key_to_json(const KeySpec& key) {
  // Reals as decimal strings so that no digit is lost in transit.
  return {{"x0", format_key_real(key.x0)}, {"a", format_key_real(key.a)}, {"b", key.b},
          {"c", key.c},                    {"d", key.d},                  {"e", format_key_real(key.e)},
          {"f", format_key_real(key.f)}};
}

KeySpec key_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, "key JSON must be an object");
  KeySpec key;
  key.x0 = parse_key_real("x0", key_field_text(doc, "x0"));
  key.a = parse_key_real("a", key_field_text(doc, "a"));
  key.b = parse_key_integer("b", key_field_text(doc, "b"));
  key.c = parse_key_integer("c", key_field_text(doc, "c"));
  key.d = parse_key_integer("d", key_field_text(doc, "d"));
  key.e = parse_key_real("e", key_field_text(doc, "e"));
  key.f = parse_key_real("f", key_field_text(doc, "f"));
  return key;
}

nlohmann::json report_to_json(const MetricReport& r) {
  nlohmann::json doc;
  doc["nl_mode"] = to_string(r.nl_mode);
  doc["bijective"] = r.bijective;
  doc["nonlinearity"] = {{"min", r.nl.min},
                         {"max", r.nl.max},
                         {"avg", r.nl.avg},
                         {"per_coordinate", r.nl.per_coordinate}};
  doc["sac"] = {{"avg", r.sac.avg},
                {"offset", r.sac.offset},
                {"matrix", matrix_to_json(r.sac.matrix())},
                {"flips", matrix_to_json(r.sac.flips)}};
  doc["bic_nl"] = {{"avg", r.bic.avg}, {"matrix", matrix_to_json(r.bic.matrix)}};
  doc["lp"] = {{"value", r.lp.lp}, {"bias_count", r.lp.bias_count}};
  doc["differential"] = {{"du", r.differential.du},
                         {"dp", r.differential.dp},
                         {"du_grid", matrix_to_json(r.differential.du_grid)}};
  doc["fixed_points"] = {{"count", r.fixed_points.size()}, {"indices", r.fixed_points}};
  return doc;
}

nlohmann::json refine_stats_to_json(const RefineStats& s) {
  return {{"iterations", s.iterations},
          {"accepted", s.accepted},
          {"noop_swaps", s.noop_swaps},
          {"initial_objective", s.initial_objective},
          {"final_objective", s.final_objective}};
}

std::string report_table(const MetricReport& r) {
  std::ostringstream out;
  if (!r.bijective) out << "WARNING: S-box is not bijective; metrics use raw counts\n";
  out << "Nonlinearity (" << (r.nl_mode == NlMode::Coordinate ? "coordinate" : "full spectrum")
      << ")\n";
  out << "  min " << r.nl.min << "  max " << r.nl.max << "  avg " << fixed(r.nl.avg, 3) << "\n";
  out << "  R1..R8:";
  for (int v : r.nl.per_coordinate) out << ' ' << v;
  out << "\n";

  out << "SAC  avg " << fixed(r.sac.avg, 4) << "  offset " << fixed(r.sac.offset, 4) << "\n";
  const ByteMatrix<double> sac = r.sac.matrix();
  for (int i = 0; i < kSBoxBits; ++i) {
    out << " ";
    for (int j = 0; j < kSBoxBits; ++j) out << ' ' << fixed(sac(i, j), 4);
    out << "\n";
  }

  out << "BIC-NL  avg " << fixed(r.bic.avg, 3) << "\n";
  for (int i = 0; i < kSBoxBits; ++i) {
    out << " ";
    for (int j = 0; j < kSBoxBits; ++j) {
      char buf[8];
      std::snprintf(buf, sizeof buf, " %3d", r.bic.matrix(i, j));
      out << buf;
    }
    out << "\n";
  }

  out << "LP  " << fixed(r.lp.lp, 4) << " (" << r.lp.bias_count << "/256)\n";
  out << "DU  " << r.differential.du << "  DP " << fixed(r.differential.dp, 6) << "\n";
  out << "Fixed points  " << r.fixed_points.size();
  if (!r.fixed_points.empty() && r.fixed_points.size() <= 16) {
    out << " (";
    for (std::size_t i = 0; i < r.fixed_points.size(); ++i) {
      out << (i ? " " : "") << r.fixed_points[i];
    }
    out << ")";
  }
  out << "\n";
  return out.str();
}

std::string markdown_header() {
  return "| S-box | NL min | NL max | NL avg | SAC | SAC offset | BIC-NL | LP | DP | FP |\n"
         "|---|---|---|---|---|---|---|---|---|---|\n";
}

std::string report_markdown_row(std::string_view id, const MetricReport& r) {
  std::ostringstream out;
  out << "| " << id << " | " << r.nl.min << " | " << r.nl.max << " | " << fixed(r.nl.avg, 2)
      << " | " << fixed(r.sac.avg, 4) << " | " << fixed(r.sac.offset, 4) << " | "
      << fixed(r.bic.avg, 2) << " | " << fixed(r.lp.lp, 4) << " | "
      << fixed(r.differential.dp, 4) << " | " << r.fixed_points.size() << " |\n";
  return out.str();
}

std::string format_real17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace chaosbox
