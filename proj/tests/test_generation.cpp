#include <chrono>
#include <cmath>
#include <random>
#include <string>

#include "doctest.h"

#include "chaosbox/generation.hpp"
#include "chaosbox/io.hpp"
#include "chaosbox/metrics.hpp"
#include "key_util.hpp"

using namespace chaosbox;

namespace {

const std::string kData = CHAOSBOX_TEST_DATA_DIR;

KeySpec golden_key() {
  KeySpec k;
  k.x0 = 0.442637767848956;
  k.a = 1.0;
  k.b = 7317130;
  k.c = 731713;
  k.d = 167527;
  k.e = 0.442637767848956;
  k.f = 0.372463939884994;
  return k;
}

}  // namespace

TEST_CASE("KeySpec validation") {
  CHECK_NOTHROW(golden_key().validate());
  struct Bad {
    const char* field;
    void (*mutate)(KeySpec&);
  };
  const Bad cases[] = {
      {"x0", [](KeySpec& k) { k.x0 = 4.0; }},  {"x0", [](KeySpec& k) { k.x0 = 0.0; }},
      {"a", [](KeySpec& k) { k.a = 2.0; }},     {"b", [](KeySpec& k) { k.b = 1000000; }},
      {"b", [](KeySpec& k) { k.b = 1000000000; }}, {"c", [](KeySpec& k) { k.c = 0; }},
      {"d", [](KeySpec& k) { k.d = 1000000000; }}, {"e", [](KeySpec& k) { k.e = 1.0; }},
      {"f", [](KeySpec& k) { k.f = NAN; }},
  };
  for (const Bad& bad : cases) {
    KeySpec k = golden_key();
    bad.mutate(k);
    try {
      k.validate();
      FAIL("accepted bad field " << bad.field);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ParamOutOfRange);
      CHECK(std::string(e.what()).find(std::string("key field ") + bad.field) != std::string::npos);
    }
  }
}

TEST_CASE("key field parsing") {
  CHECK(parse_key_real("e", "0.442637767848956") == 0.442637767848956);
  CHECK(parse_key_real("a", "+1") == 1.0);
  CHECK_THROWS_AS(parse_key_real("e", "0.4426377678489561"), Error);
  CHECK_THROWS_AS(parse_key_real("e", "1e-3"), Error);
  CHECK_THROWS_AS(parse_key_real("e", ""), Error);
  CHECK(parse_key_integer("b", "7317130") == 7317130);
  CHECK_THROWS_AS(parse_key_integer("b", "7.5"), Error);
  CHECK(format_key_real(0.442637767848956) == "0.442637767848956");
}

TEST_CASE("initial_sbox") {
  const KeySpec k = golden_key();
  SUBCASE("golden vectors, both branch modes") {
    CHECK(initial_sbox(k.x0, k.a, k.b, BranchMode::Equation1) ==
          load_sbox(kData + "/golden_initial_eq1.dec", GridFormat::Decimal));
    CHECK(initial_sbox(k.x0, k.a, k.b, BranchMode::Algorithm1) ==
          load_sbox(kData + "/golden_initial_alg1.dec", GridFormat::Decimal));
  }
  SUBCASE("permutation and deterministic for random keys") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 200; ++i) {
      const KeySpec key = keyutil::random_key(rng);
      const SBox s = initial_sbox(key.x0, key.a, key.b);
      REQUIRE(s.is_bijective());
      REQUIRE(s == initial_sbox(key.x0, key.a, key.b));
    }
  }
  SUBCASE("range errors") {
    CHECK_THROWS_AS(initial_sbox(0.5, 1.0, 731713), Error);
    CHECK_THROWS_AS(initial_sbox(0.5, 0.0, 7317130), Error);
  }
}

TEST_CASE("refine_sbox") {
  const KeySpec k = golden_key();
  const SBox initial = initial_sbox(k.x0, k.a, k.b);

  SUBCASE("budget 0 is the identity") {
    const RefineResult r = refine_sbox(initial, k.c, k.d, k.e, k.f, {0, Objective::SumCoordinateNL});
    CHECK(r.box == initial);
    CHECK(r.stats.iterations == 0);
    CHECK(r.stats.initial_objective == r.stats.final_objective);
  }
  SUBCASE("golden final box") {
    const auto t0 = std::chrono::steady_clock::now();
    const RefineResult r = refine_sbox(initial, k.c, k.d, k.e, k.f);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(r.box == load_sbox(kData + "/golden_refined_eq1.dec", GridFormat::Decimal));
    CHECK(r.stats.iterations == kDefaultRefineBudget);
    CHECK(r.stats.final_objective == objective_value(r.box, Objective::SumCoordinateNL));
    CHECK(secs < 120.0);
    MESSAGE("65536-iteration refine took " << secs << " s");
  }
  SUBCASE("each objective is monotone and matches its definition") {
    for (Objective obj : {Objective::SumCoordinateNL, Objective::MinCoordinateNL,
                          Objective::FullSpectrumNL}) {
      const RefineResult r = refine_sbox(initial, k.c, k.d, k.e, k.f, {512, obj});
      CHECK(r.stats.final_objective >= r.stats.initial_objective);
      CHECK(r.stats.final_objective == objective_value(r.box, obj));
      CHECK(r.box.is_bijective());
    }
    const NonlinearitySummary nl = sbox_nonlinearity(initial, NlMode::Coordinate);
    long sum = 0;
    for (int v : nl.per_coordinate) sum += v;
    CHECK(objective_value(initial, Objective::SumCoordinateNL) == sum);
    CHECK(objective_value(initial, Objective::MinCoordinateNL) == nl.min);
    CHECK(objective_value(initial, Objective::FullSpectrumNL) ==
          sbox_nonlinearity(initial, NlMode::FullSpectrum).min);
  }
  SUBCASE("rejects non-bijective input and bad parameters") {
    SBoxTable t = initial.table();
    t[1] = t[0];
    CHECK_THROWS_AS(refine_sbox(SBox::unchecked(t), k.c, k.d, k.e, k.f), Error);
    CHECK_THROWS_AS(refine_sbox(initial, 0, k.d, k.e, k.f), Error);
    CHECK_THROWS_AS(refine_sbox(initial, k.c, k.d, 1.5, k.f), Error);
  }
}

TEST_CASE("generate over random keys") {
  std::mt19937_64 rng(8);
  const RefineConfig cfg{2048, Objective::SumCoordinateNL};
  for (int i = 0; i < 50; ++i) {
    const KeySpec key = keyutil::random_key(rng);
    RefineStats stats;
    const SBox box = generate(key, cfg, BranchMode::Equation1, &stats);
    REQUIRE(box.is_bijective());
    REQUIRE(stats.final_objective >= stats.initial_objective);
    REQUIRE(box == generate(key, cfg));
  }
}

TEST_CASE("15th decimal of x0 changes the box") {
  KeySpec k = golden_key();
  const RefineConfig cfg{1024, Objective::SumCoordinateNL};
  const SBox base = generate(k, cfg);
  k.x0 = 0.442637767848957;
  CHECK_FALSE(generate(k, cfg) == base);
}

TEST_CASE("key avalanche on the integer and slope fields") {
  // x0, e and f can collide under the per-step 15-decimal rounding; the
  // acceptance run reports those counts. a, b, c, d must always move the box.
  std::mt19937_64 rng(77);
  const RefineConfig cfg{1024, Objective::SumCoordinateNL};
  int changed[7] = {};
  for (int i = 0; i < 20; ++i) {
    const keyutil::KeyText text = keyutil::random_key_text(rng);
    const SBox base = generate(text.parse(), cfg);
    for (int field = 0; field < 7; ++field) {
      changed[field] += !(generate(text.flipped(field).parse(), cfg) == base);
    }
  }
  for (int field : {1, 2, 3, 4}) CHECK(changed[field] == 20);
  for (int field : {0, 5, 6}) CHECK(changed[field] >= 12);
}

TEST_CASE("swap index streams stay finite") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> seed(1e-15, 1.0);
  std::uniform_int_distribution<std::int64_t> offset(1, 999'999'999);
  for (int s = 0; s < 100; ++s) {
    SwapIndexStream x(SwapIndexStream::Form::Secant, offset(rng), seed(rng));
    SwapIndexStream y(SwapIndexStream::Form::Cosine, offset(rng), seed(rng));
    for (int i = 0; i < 100000; ++i) {
      const int a = x.next();
      const int b = y.next();
      if (a < 0 || a > 255 || b < 0 || b > 255 || !std::isfinite(x.state()) ||
          !std::isfinite(y.state())) {
        FAIL("stream left range at seed " << s << " step " << i);
      }
    }
  }
}

TEST_CASE("swap stream guards") {
  // cos(pi/2) is ~6e-17, so the secant form must take the nudged path.
  SwapIndexStream x(SwapIndexStream::Form::Secant, 1, 1.5707963267948966);
  CHECK_NOTHROW(x.next());
  CHECK(std::isfinite(x.state()));
  // Seeds at the clamp floor go through the log guard.
  SwapIndexStream y(SwapIndexStream::Form::Cosine, 1, 0.0);
  CHECK_NOTHROW(y.next());
}

TEST_CASE("keyspace_bits") {
  const KeyspaceBreakdown k = keyspace_bits();
  const double expected = std::log2(8.0) + 81.0 * std::log2(10.0);
  CHECK(k.total_bits == doctest::Approx(expected).epsilon(1e-12));
  CHECK(k.total_bits >= 270.0);
  CHECK(k.row_bits[0] == doctest::Approx(std::log2(4e15)));
  CHECK(std::fabs(k.row_bits[0] - 51.83) < 0.01);
  CHECK(k.mantissa == doctest::Approx(8.0));
  CHECK(k.exponent10 == 81);
}

TEST_CASE("objective names") {
  CHECK(parse_objective("sum") == Objective::SumCoordinateNL);
  CHECK(to_string(Objective::FullSpectrumNL) == "full");
  CHECK_THROWS_AS(parse_objective("max"), Error);
}
