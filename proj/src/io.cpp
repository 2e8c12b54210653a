#include "chaosbox/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

#include "chaosbox/error.hpp"

namespace chaosbox {

namespace {

[[noreturn]] void parse_fail(const std::string& message) {
  throw Error(ErrorKind::ParseError, message);
}

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

SBoxTable parse_grid(std::string_view text, int base) {
  std::vector<std::vector<std::string_view>> rows;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    auto tokens = split_tokens(line);
    if (!tokens.empty()) rows.push_back(std::move(tokens));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }

  std::size_t count = 0;
  for (const auto& r : rows) count += r.size();
  if (count != kSBoxSize) {
    parse_fail("expected 256 values, found " + std::to_string(count));
  }
  if (rows.size() != 16) {
    parse_fail("expected 16 rows of 16 values, found " + std::to_string(rows.size()) + " rows");
  }

  SBoxTable table{};
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != 16) {
      parse_fail("row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) +
                 " values, expected 16");
    }
    for (std::size_t c = 0; c < 16; ++c) {
      const std::string_view tok = rows[r][c];
      unsigned value = 0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value, base);
      const std::string where = "row " + std::to_string(r + 1) + ", column " + std::to_string(c + 1);
      if (ec == std::errc::result_out_of_range || (ec == std::errc{} && value > 255 &&
                                                   ptr == tok.data() + tok.size())) {
        parse_fail("value '" + std::string(tok) + "' at " + where + " exceeds 255");
      }
      if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        parse_fail("invalid token '" + std::string(tok) + "' at " + where);
      }
      table[r * 16 + c] = static_cast<std::uint8_t>(value);
    }
  }
  return table;
}

SBoxTable parse_json_table(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
  const nlohmann::json* values = &doc;
  if (doc.is_object()) {
    if (!doc.contains("sbox")) parse_fail("JSON object has no \"sbox\" array");
    values = &doc.at("sbox");
  }
  if (!values->is_array()) parse_fail("JSON S-box must be an array of 256 integers");
  if (values->size() != kSBoxSize) {
    parse_fail("expected 256 values, found " + std::to_string(values->size()));
  }
  SBoxTable table{};
  for (std::size_t i = 0; i < table.size(); ++i) {
    const nlohmann::json& v = (*values)[i];
    if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 255) {
      parse_fail("value at index " + std::to_string(i) + " (row " + std::to_string(i / 16) +
                 ", column " + std::to_string(i % 16) + ") is not an integer in 0..255");
    }
    table[i] = static_cast<std::uint8_t>(v.get<int>());
  }
  return table;
}

}  // namespace

std::string_view to_string(GridFormat format) {
  switch (format) {
    case GridFormat::Decimal: return "dec";
    case GridFormat::Hex: return "hex";
    case GridFormat::Json: return "json";
  }
  return "unknown";
}

GridFormat parse_grid_format(std::string_view text) {
  if (text == "dec") return GridFormat::Decimal;
  if (text == "hex") return GridFormat::Hex;
  if (text == "json") return GridFormat::Json;
  throw Error(ErrorKind::InvalidArgument,
              "unknown format '" + std::string(text) + "' (dec, hex, json)");
}

GridFormat grid_format_for(const std::filesystem::path& path, GridFormat fallback) {
  return path.extension() == ".json" ? GridFormat::Json : fallback;
}

SBox parse_sbox(std::string_view text, GridFormat format, bool allow_non_bijective) {
  SBoxTable table{};
  switch (format) {
    case GridFormat::Decimal: table = parse_grid(text, 10); break;
    case GridFormat::Hex: table = parse_grid(text, 16); break;
    case GridFormat::Json: table = parse_json_table(text); break;
  }
  if (allow_non_bijective) return SBox::unchecked(table);
  return SBox(table);
}

SBox load_sbox(const std::filesystem::path& path, GridFormat format, bool allow_non_bijective) {
  return parse_sbox(read_text_file(path), format, allow_non_bijective);
}

std::string format_sbox(const SBox& box, GridFormat format) {
  std::string out;
  if (format == GridFormat::Json) {
    nlohmann::json doc;
    doc["sbox"] = std::vector<int>(box.table().begin(), box.table().end());
    return doc.dump() + "\n";
  }
  char buf[8];
  for (int r = 0; r < 16; ++r) {
    for (int c = 0; c < 16; ++c) {
      const unsigned v = box(r * 16 + c);
      std::snprintf(buf, sizeof buf, format == GridFormat::Hex ? "%02x" : "%u", v);
      if (c > 0) out += ' ';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void save_sbox(const std::filesystem::path& path, const SBox& box, GridFormat format) {
  write_text_file(path, format_sbox(box, format));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorKind::InvalidArgument, "cannot write '" + path.string() + "'");
  }
  out << content;
}

}  // namespace chaosbox
