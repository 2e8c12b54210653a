#include "chaosbox/generation.hpp"

#include <bitset>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <system_error>

#include <quadmath.h>

#include "chaosbox/error.hpp"
#include "chaosbox/metrics.hpp"

namespace chaosbox {

namespace {

[[noreturn]] void out_of_range(std::string_view field, const std::string& value,
                               std::string_view range) {
  throw Error(ErrorKind::ParamOutOfRange, "key field " + std::string(field) + " = " + value +
                                              " outside " + std::string(range));
}

void check_open(std::string_view field, double v, double lo, double hi,
                std::string_view range) {
  if (!std::isfinite(v) || !(v > lo && v < hi)) out_of_range(field, format_key_real(v), range);
}

void check_open(std::string_view field, std::int64_t v, std::int64_t lo, std::int64_t hi,
                std::string_view range) {
  if (!(v > lo && v < hi)) out_of_range(field, std::to_string(v), range);
}

void check_initial_params(double x0, double a, std::int64_t b) {
  check_open("x0", x0, 0.0, 4.0, "(0, 4)");
  check_open("a", a, 0.0, 2.0, "(0, 2)");
  check_open("b", b, 1'000'000, 1'000'000'000, "(1000000, 1000000000)");
}

void check_refine_params(std::int64_t c, std::int64_t d, double e, double f) {
  check_open("c", c, 0, 1'000'000'000, "(0, 1000000000)");
  check_open("d", d, 0, 1'000'000'000, "(0, 1000000000)");
  check_open("e", e, 0.0, 1.0, "(0, 1)");
  check_open("f", f, 0.0, 1.0, "(0, 1)");
}

int to_byte_index(double value) {
  return static_cast<int>(std::llround(value) & 0xFF);
}

const __float128 kQLogClamp = 1e-12Q;
const __float128 kQCosFloor = 1e-12Q;
const __float128 kQCosNudge = 1e-9Q;

__float128 round15q(__float128 x) { return roundq(x * 1e15Q) / 1e15Q; }

}  // namespace

void KeySpec::validate() const {
  check_initial_params(x0, a, b);
  check_refine_params(c, d, e, f);
}

double parse_key_real(std::string_view field, std::string_view text) {
  const std::string s(text);
  const auto fail = [&](const std::string& why) -> double {
    throw Error(ErrorKind::ParseError,
                "key field " + std::string(field) + " = '" + s + "': " + why);
  };
  if (s.empty()) fail("empty value");
  std::size_t digits_after_point = 0;
  bool seen_point = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char ch = s[i];
    if (ch == '.' && !seen_point) {
      seen_point = true;
    } else if (ch >= '0' && ch <= '9') {
      if (seen_point) ++digits_after_point;
    } else if (!(i == 0 && (ch == '-' || ch == '+'))) {
      fail("expected a plain decimal number");
    }
  }
  if (digits_after_point > 15) fail("more than 15 decimal digits");
  double value = 0.0;
  const char* begin = s.data() + (s[0] == '+' ? 1 : 0);
  const auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) fail("not a number");
  return value;
}

std::int64_t parse_key_integer(std::string_view field, std::string_view text) {
  std::int64_t value = 0;
  const char* begin = text.data() + (!text.empty() && text[0] == '+' ? 1 : 0);
  const auto [ptr, ec] = std::from_chars(begin, text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::ParseError, "key field " + std::string(field) + " = '" +
                                           std::string(text) + "': expected an integer");
  }
  return value;
}

std::string format_key_real(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::string_view to_string(Objective objective) {
  switch (objective) {
    case Objective::SumCoordinateNL: return "sum";
    case Objective::MinCoordinateNL: return "min";
    case Objective::FullSpectrumNL: return "full";
  }
  return "unknown";
}

Objective parse_objective(std::string_view text) {
  if (text == "sum") return Objective::SumCoordinateNL;
  if (text == "min") return Objective::MinCoordinateNL;
  if (text == "full") return Objective::FullSpectrumNL;
  throw Error(ErrorKind::InvalidArgument,
              "unknown objective '" + std::string(text) + "' (sum, min, full)");
}

long objective_value(const SBox& box, Objective objective) {
  switch (objective) {
    case Objective::SumCoordinateNL: {
      long sum = 0;
      for (int i = 0; i < kSBoxBits; ++i) {
        sum += nonlinearity(BooleanComponent(box, static_cast<std::uint8_t>(1U << i)));
      }
      return sum;
    }
    case Objective::MinCoordinateNL: {
      int lo = kSBoxSize;
      for (int i = 0; i < kSBoxBits; ++i) {
        lo = std::min(lo, nonlinearity(BooleanComponent(box, static_cast<std::uint8_t>(1U << i))));
      }
      return lo;
    }
    case Objective::FullSpectrumNL: {
      int lo = kSBoxSize;
      for (int mask = 1; mask < kSBoxSize; ++mask) {
        lo = std::min(lo, nonlinearity(BooleanComponent(box, static_cast<std::uint8_t>(mask))));
      }
      return lo;
    }
  }
  return 0;
}

SBox initial_sbox(double x0, double a, std::int64_t b, BranchMode branch) {
  check_initial_params(x0, a, b);
  const MapParams params(MapKind::Ahyb, a, branch);

  SBoxTable table{};
  std::bitset<kSBoxSize> placed;
  std::size_t loc = 0;
  std::size_t discarded = 0;
  double x = x0;
  while (loc < table.size()) {
    x = orbit_step(params, x, nullptr);
    const int v = to_byte_index(x * static_cast<double>(b));
    if (placed.test(static_cast<std::size_t>(v))) {
      if (++discarded >= kStallLimit) {
        throw Error(ErrorKind::GenerationStall,
                    std::to_string(kStallLimit) + " consecutive duplicate candidates after " +
                        std::to_string(loc) + " values placed");
      }
      continue;
    }
    placed.set(static_cast<std::size_t>(v));
    table[loc++] = static_cast<std::uint8_t>(v);
    discarded = 0;
  }
  return SBox(table);
}

SwapIndexStream::SwapIndexStream(Form form, std::int64_t offset, double seed)
    : form_(form), offset_(static_cast<__float128>(offset)), state_(seed) {}

int SwapIndexStream::next() {
  __float128 s = fmaxq(state_, kQLogClamp);
  __float128 cs = cosq(s);
  if (form_ == Form::Secant && fabsq(cs) < kQCosFloor) {
    s += kQCosNudge;
    cs = cosq(s);
  }
  // s^2.5 and log10(s) ln(s) = ln(s)^2 / ln(10), cheaper than powq/log10q.
  const __float128 pow25 = s * s * sqrtq(s);
  const __float128 ln = logq(s);
  const __float128 loglog = ln * ln / M_LN10q;
  const __float128 raw = form_ == Form::Secant ? offset_ + pow25 + 2 * loglog + 1 / cs
                                               : offset_ + pow25 + loglog + cs;
  if (!finiteq(raw)) {
    throw Error(ErrorKind::NumericGuardTripped, "swap index recurrence left the finite range");
  }
  const __float128 value = round15q(fabsq(raw));
  const int index = static_cast<int>(llroundq(value) & 0xFF);
  state_ = fabsq(fmodq(value, 256));
  return index;
}

RefineResult refine_sbox(const SBox& box, std::int64_t c, std::int64_t d, double e,
                         double f, const RefineConfig& config) {
  check_refine_params(c, d, e, f);
  require_bijective(box, false);

  RefineResult result{box, {}};
  SBox& sb = result.box;
  RefineStats& stats = result.stats;

  SwapIndexStream rows(SwapIndexStream::Form::Secant, c, e);
  SwapIndexStream cols(SwapIndexStream::Form::Cosine, d, f);

  long best = objective_value(sb, config.objective);
  stats.initial_objective = best;
  for (std::size_t iter = 0; iter < config.budget; ++iter) {
    ++stats.iterations;
    const int i = rows.next();
    const int j = cols.next();
    if (i == j) {
      ++stats.noop_swaps;
      continue;
    }
    sb.swap_entries(i, j);
    const long candidate = objective_value(sb, config.objective);
    if (candidate > best) {
      best = candidate;
      ++stats.accepted;
    } else {
      sb.swap_entries(i, j);
    }
  }
  stats.final_objective = best;
  return result;
}

SBox generate(const KeySpec& key, const RefineConfig& config, BranchMode branch,
              RefineStats* stats) {
  key.validate();
  RefineResult refined =
      refine_sbox(initial_sbox(key.x0, key.a, key.b, branch), key.c, key.d, key.e, key.f, config);
  if (stats != nullptr) *stats = refined.stats;
  return refined.box;
}

KeyspaceBreakdown keyspace_bits() {
  // Distinct values per key field: X, A, B, C, D, E, F.
  constexpr std::array<double, 7> kRowCounts = {4e15, 2e15, 1e3, 1e9, 1e9, 1e15, 1e15};

  KeyspaceBreakdown out;
  double log10_total = 0.0;
  for (std::size_t i = 0; i < kRowCounts.size(); ++i) {
    out.row_bits[i] = std::log2(kRowCounts[i]);
    out.total_bits += out.row_bits[i];
    log10_total += std::log10(kRowCounts[i]);
  }
  out.exponent10 = static_cast<int>(std::floor(log10_total));
  out.mantissa = std::round(std::pow(10.0, log10_total - out.exponent10) * 1e9) / 1e9;
  return out;
}

}  // namespace chaosbox
