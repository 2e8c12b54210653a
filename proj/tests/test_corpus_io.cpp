#include <filesystem>
#include <functional>
#include <random>
#include <string>

#include "doctest.h"

#include "chaosbox/corpus.hpp"
#include "chaosbox/error.hpp"
#include "chaosbox/io.hpp"
#include "chaosbox/metrics.hpp"
#include "oracles.hpp"

using namespace chaosbox;

namespace {

const std::filesystem::path kCorpus = CHAOSBOX_TEST_CORPUS_DIR;

std::string grid_text(const oracle::Table& t, int count = 256) {
  std::string s;
  for (int i = 0; i < count; ++i) {
    s += std::to_string(t[static_cast<std::size_t>(i)]);
    s += (i % 16 == 15) ? '\n' : ' ';
  }
  return s;
}

std::string error_text(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("grid parsing") {
  std::mt19937_64 rng(12);
  const oracle::Table t = oracle::random_permutation(rng);

  SUBCASE("decimal round trip") {
    const SBox box = parse_sbox(grid_text(t), GridFormat::Decimal);
    CHECK(box.table() == t);
    CHECK(format_sbox(box, GridFormat::Decimal) == grid_text(t));
  }
  SUBCASE("hex and json round trip") {
    const SBox box(t);
    for (GridFormat f : {GridFormat::Hex, GridFormat::Json}) {
      CHECK(parse_sbox(format_sbox(box, f), f) == box);
    }
    CHECK(format_sbox(box, GridFormat::Hex).substr(0, 2).find_first_not_of("0123456789abcdef") ==
          std::string::npos);
    std::string bare = "[";
    for (int i = 0; i < 256; ++i) bare += std::to_string(t[static_cast<std::size_t>(i)]) + (i < 255 ? "," : "]");
    CHECK(parse_sbox(bare, GridFormat::Json) == box);
  }
  SUBCASE("tabs, runs of spaces and blank lines") {
    std::string messy = "\n";
    for (int i = 0; i < 256; ++i) {
      messy += std::to_string(t[static_cast<std::size_t>(i)]);
      messy += (i % 16 == 15) ? "\n\n" : (i % 2 ? "\t" : "   ");
    }
    CHECK(parse_sbox(messy, GridFormat::Decimal).table() == t);
  }
  SUBCASE("wrong count") {
    const std::string msg = error_text([&] { parse_sbox(grid_text(t, 255), GridFormat::Decimal); });
    CHECK(msg.find("expected 256 values, found 255") != std::string::npos);
  }
  SUBCASE("value out of range names its position") {
    std::string text = grid_text(t);
    const std::size_t pos = text.find('\n') + 1;  // first value of row 2
    const std::size_t end = text.find(' ', pos);
    text.replace(pos, end - pos, "300");
    const std::string msg = error_text([&] { parse_sbox(text, GridFormat::Decimal); });
    CHECK(msg.find("'300'") != std::string::npos);
    CHECK(msg.find("row 2, column 1") != std::string::npos);
  }
  SUBCASE("garbage token") {
    std::string text = grid_text(t);
    text.replace(0, text.find(' '), "x7");
    CHECK_THROWS_AS(parse_sbox(text, GridFormat::Decimal), Error);
  }
  SUBCASE("duplicates") {
    oracle::Table dup = t;
    dup[5] = dup[6];
    try {
      parse_sbox(grid_text(dup), GridFormat::Decimal);
      FAIL("expected NotBijective");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotBijective);
    }
    CHECK_FALSE(parse_sbox(grid_text(dup), GridFormat::Decimal, true).is_bijective());
  }
  SUBCASE("format detection by extension") {
    CHECK(grid_format_for("box.json", GridFormat::Decimal) == GridFormat::Json);
    CHECK(grid_format_for("box.txt", GridFormat::Hex) == GridFormat::Hex);
  }
}

TEST_CASE("file round trip") {
  std::mt19937_64 rng(3);
  const SBox box(oracle::random_permutation(rng));
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "chaosbox_io_test";
  std::filesystem::create_directories(dir);
  for (GridFormat f : {GridFormat::Decimal, GridFormat::Hex, GridFormat::Json}) {
    const std::filesystem::path p = dir / ("box." + std::string(to_string(f)));
    save_sbox(p, box, f);
    CHECK(load_sbox(p, f) == box);
  }
  CHECK_THROWS_AS(load_sbox(dir / "missing.dec", GridFormat::Decimal), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("shipped corpus") {
  const std::vector<CorpusEntry> corpus = load_corpus(kCorpus);

  SUBCASE("aes grid equals the field definition") {
    const CorpusEntry* aes = find_entry(corpus, "aes");
    REQUIRE(aes != nullptr);
    REQUIRE(aes->table);
    CHECK(aes->table->table() == oracle::aes_sbox());
  }
  SUBCASE("reference grid") {
    const CorpusEntry* ref = find_entry(corpus, "ahyb-reference");
    REQUIRE(ref != nullptr);
    REQUIRE(ref->table);
    CHECK((*ref->table)(0) == 206);
    CHECK((*ref->table)(255) == 116);
    CHECK(ref->table->is_bijective());
    CHECK(ref->published);
  }
  SUBCASE("published-only rows and lookup without brackets") {
    const CorpusEntry* row = find_entry(corpus, "22");
    REQUIRE(row != nullptr);
    CHECK(row->id == "[22]");
    CHECK_FALSE(row->table);
    CHECK(find_entry(corpus, "nope") == nullptr);
    CHECK_FALSE(find_entry(corpus, "[28]")->quality_flags.empty());
  }
}

TEST_CASE("comparison rows") {
  const std::vector<CorpusEntry> corpus = load_corpus(kCorpus);
  const CorpusEntry& aes = *find_entry(corpus, "aes");
  const CorpusEntry& ref = *find_entry(corpus, "ahyb-reference");
  const CorpusEntry& row22 = *find_entry(corpus, "[22]");

  const ComparisonTable table = compare({aes, row22, ref}, NlMode::Coordinate);
  REQUIRE(table.size() == 3);

  SUBCASE("computed rows equal the full report") {
    CHECK(table[0].kind == RowKind::Computed);
    const PublishedRow direct = summarize(full_report(*aes.table, NlMode::Coordinate));
    CHECK(table[0].values.nl_min == direct.nl_min);
    CHECK(table[0].values.lp == direct.lp);
    CHECK(table[0].values.dp == direct.dp);
    CHECK(table[0].values.sac == direct.sac);
    CHECK(table[0].values.fixed_points == direct.fixed_points);
    CHECK(table[0].deltas.empty());
  }
  SUBCASE("published rows echo their values") {
    CHECK(table[1].kind == RowKind::Published);
    CHECK(*table[1].values.nl_min == 112);
    CHECK(*table[1].values.lp == 0.062);
    CHECK(*table[1].values.dp == 0.015);
    CHECK_FALSE(table[1].report);
  }
  SUBCASE("reference row carries one delta per claim") {
    CHECK(table[2].deltas.size() == 9);
    CHECK(*table[2].values.fixed_points == 0);
  }
  SUBCASE("renderers") {
    const std::string md = render_markdown(table);
    CHECK(md.find("| aes |") != std::string::npos);
    CHECK(md.find("### Deltas: ahyb-reference") != std::string::npos);
    const std::string csv = render_csv(table);
    CHECK(csv.rfind("id,kind,published,nl_min,nl_max,nl_avg,sac,sac_offset,bic_nl,lp,dp,fp,note\n", 0) == 0);
    CHECK(csv.find("[22],published,published,112,") != std::string::npos);
    CHECK(csv.find("aes,computed,,112,112,112,0.5048828125,0.0048828125,112,0.0625,0.015625,0,") !=
          std::string::npos);
  }
  SUBCASE("empty comparison is an error") {
    CHECK_THROWS_AS(compare({}, NlMode::Coordinate), Error);
  }
}

TEST_CASE("claim matching uses the printed resolution") {
  MetricReport report = full_report(SBox(oracle::aes_sbox()), NlMode::Coordinate);
  PublishedRow claims;
  claims.lp = 0.07;
  claims.dp = 0.0156;  // 0.015625
  claims.sac_offset = 0.0007;
  claims.nl_min = 112;
  const std::vector<MetricDelta> deltas = compare_to_published(report, claims);
  REQUIRE(deltas.size() == 4);
  for (const MetricDelta& d : deltas) {
    if (d.metric == "nl_min") CHECK(d.match);
    if (d.metric == "dp") CHECK(d.match);
    if (d.metric == "lp") CHECK_FALSE(d.match);
    if (d.metric == "sac_offset") CHECK_FALSE(d.match);  // AES offset is 0.0049
  }
}
