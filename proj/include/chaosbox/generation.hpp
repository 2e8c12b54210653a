#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "chaosbox/chaos.hpp"
#include "chaosbox/sbox.hpp"

namespace chaosbox {

// Seven-parameter generator key. (x0, a, b) drive the initial construction,
// (c, d, e, f) the swap refinement.
struct KeySpec {
  double x0 = 0.0;    // (0, 4), 15 decimals
  double a = 0.0;     // (0, 2), 15 decimals
  std::int64_t b = 0; // (10^6, 10^9)
  std::int64_t c = 0; // (0, 10^9)
  std::int64_t d = 0; // (0, 10^9)
  double e = 0.0;     // (0, 1), 15 decimals
  double f = 0.0;     // (0, 1), 15 decimals

  // Throws ParamOutOfRange naming the first offending field and its range.
  void validate() const;

  friend bool operator==(const KeySpec&, const KeySpec&) = default;
};

// Parses one real key field from its decimal text; rejects more than 15
// fractional digits.
double parse_key_real(std::string_view field, std::string_view text);
std::int64_t parse_key_integer(std::string_view field, std::string_view text);

// Shortest decimal text that round-trips the double.
std::string format_key_real(double value);

enum class Objective { SumCoordinateNL, MinCoordinateNL, FullSpectrumNL };

std::string_view to_string(Objective objective);
Objective parse_objective(std::string_view text);

inline constexpr std::size_t kDefaultRefineBudget = 65536;

struct RefineConfig {
  std::size_t budget = kDefaultRefineBudget;
  Objective objective = Objective::SumCoordinateNL;
};

struct RefineStats {
  std::size_t iterations = 0;
  std::size_t accepted = 0;
  std::size_t noop_swaps = 0;  // I == J
  long initial_objective = 0;
  long final_objective = 0;
};

struct RefineResult {
  SBox box;
  RefineStats stats;
};

long objective_value(const SBox& box, Objective objective);

inline constexpr std::size_t kStallLimit = 1'000'000;

// Chaotic orbit -> candidate bytes; duplicates are discarded until all 256
// values are placed. Throws GenerationStall after kStallLimit consecutive
// discards.
SBox initial_sbox(double x0, double a, std::int64_t b,
                  BranchMode branch = BranchMode::Equation1);

// Index recurrence driving the swaps. Secant form:
//   X <- round15(|offset + X^2.5 + 2 log10(X) ln(X) + 1/cos(X)|)
// Cosine form:
//   Y <- round15(|offset + Y^2.5 + log10(Y) ln(Y) + cos(Y)|)
// The index is round(state) mod 256, then state <- |state mod 256|.
// Logs see the state clamped to >= 1e-12; if |cos(X)| < 1e-12 the secant
// form evaluates at X + 1e-9 instead.
//
// The state is carried in binary128. With offsets up to 10^9 a double keeps
// only ~7 fractional digits, which would make the last 8 digits of the seed
// irrelevant.
class SwapIndexStream {
 public:
  enum class Form { Secant, Cosine };

  SwapIndexStream(Form form, std::int64_t offset, double seed);

  // Advances the state and returns the derived index in 0..255.
  int next();
  double state() const { return static_cast<double>(state_); }

 private:
  Form form_;
  __float128 offset_;
  __float128 state_;
};

RefineResult refine_sbox(const SBox& box, std::int64_t c, std::int64_t d,
                         double e, double f, const RefineConfig& config = {});

SBox generate(const KeySpec& key, const RefineConfig& config = {},
              BranchMode branch = BranchMode::Equation1,
              RefineStats* stats = nullptr);

struct KeyspaceBreakdown {
  // log2 of each per-field count, in order X, A, B, C, D, E, F.
  std::array<double, 7> row_bits{};
  double total_bits = 0.0;
  double mantissa = 0.0;  // total = mantissa * 10^exponent10
  int exponent10 = 0;
};

KeyspaceBreakdown keyspace_bits();

}  // namespace chaosbox
