#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "chaosbox/error.hpp"

namespace chaosbox {

enum class MapKind { Ahyb, Logistic, Sine };

// Third AHYB branch: x*(A - x) by default, or the linear (A - x) variant.
enum class BranchMode { Equation1, Algorithm1 };

std::string_view to_string(MapKind kind);
std::string_view to_string(BranchMode mode);
MapKind parse_map_kind(std::string_view text);
BranchMode parse_branch_mode(std::string_view text);

// Open/closed control-parameter range of each map.
struct ParamRange {
  double lo;
  double hi;
  bool hi_inclusive;

  bool contains(double value) const {
    return value > lo && (hi_inclusive ? value <= hi : value < hi);
  }
};

ParamRange control_range(MapKind kind);

class MapParams {
 public:
  // Throws ParamOutOfRange when control is outside control_range(kind).
  MapParams(MapKind kind, double control,
            BranchMode branch = BranchMode::Equation1);

  MapKind kind() const { return kind_; }
  double control() const { return control_; }
  BranchMode branch() const { return branch_; }

 private:
  MapKind kind_;
  double control_;
  BranchMode branch_;
};

namespace detail {

template <typename Scalar>
void require_finite(Scalar value, const char* what) {
  using std::isfinite;
  if (!isfinite(value)) {
    throw Error(ErrorKind::NonFiniteState, std::string(what) + " is not finite");
  }
}

}  // namespace detail

// Raw next state. AHYB intervals are (0,1.5), [1.5,3), [3,4); the output is
// not folded back into [0,4).
template <typename Scalar>
Scalar map_step(const MapParams& params, Scalar x) {
  using std::pow;
  using std::sin;
  detail::require_finite(x, "map input");
  const Scalar c = static_cast<Scalar>(params.control());
  Scalar next{};
  switch (params.kind()) {
    case MapKind::Ahyb:
      if (x < Scalar(1.5)) {
        next = (Scalar(2) + c) * x;
      } else if (x < Scalar(3)) {
        next = c + pow(x, Scalar(9) / Scalar(10));
      } else if (params.branch() == BranchMode::Equation1) {
        next = x * (c - x);
      } else {
        next = c - x;
      }
      break;
    case MapKind::Logistic:
      next = c * x * (Scalar(1) - x);
      break;
    case MapKind::Sine:
      next = c / Scalar(4) * sin(std::numbers::pi_v<Scalar> * x);
      break;
  }
  detail::require_finite(next, "map output");
  return next;
}

template <typename Scalar>
Scalar map_derivative(const MapParams& params, Scalar x) {
  using std::cos;
  using std::pow;
  detail::require_finite(x, "map input");
  const Scalar c = static_cast<Scalar>(params.control());
  Scalar slope{};
  switch (params.kind()) {
    case MapKind::Ahyb:
      if (x < Scalar(1.5)) {
        slope = Scalar(2) + c;
      } else if (x < Scalar(3)) {
        slope = Scalar(9) / Scalar(10) * pow(x, Scalar(-1) / Scalar(10));
      } else if (params.branch() == BranchMode::Equation1) {
        slope = c - Scalar(2) * x;
      } else {
        slope = Scalar(-1);
      }
      break;
    case MapKind::Logistic:
      slope = c * (Scalar(1) - Scalar(2) * x);
      break;
    case MapKind::Sine:
      slope = c / Scalar(4) * std::numbers::pi_v<Scalar> *
              cos(std::numbers::pi_v<Scalar> * x);
      break;
  }
  detail::require_finite(slope, "map derivative");
  return slope;
}

// 4 * frac(|round15(x)|), always in [0, 4).
double renormalize(double x);

// Decimal rounding half away from zero at 15 fractional digits.
double round15(double x);

// Exact zero after folding is replaced by this value.
inline constexpr double kReseedValue = 1e-12;

struct TrajectoryPoint {
  std::size_t index;
  double state;
};

struct BifurcationPoint {
  double param;
  double state;
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  std::size_t reseeds = 0;  // AHYB states folded to exactly 0
};

// One orbit step as used by iterate/lyapunov: raw step, then for AHYB the
// fold (and reseed of exact 0). Returns the new state, bumps *reseeds.
double orbit_step(const MapParams& params, double x, std::size_t* reseeds);

Trajectory iterate(const MapParams& params, double x0, std::size_t transient,
                   std::size_t n);

inline constexpr std::size_t kDefaultBifurcationSteps = 1000;
inline constexpr std::size_t kDefaultTransient = 1000;
inline constexpr std::size_t kDefaultSamples = 200;

std::vector<BifurcationPoint> bifurcation_scan(
    MapKind kind, double param_lo, double param_hi, std::size_t steps,
    double x0, std::size_t transient = kDefaultTransient,
    std::size_t samples = kDefaultSamples,
    BranchMode branch = BranchMode::Equation1);

struct LyapunovEstimate {
  double value = 0.0;
  std::size_t samples_used = 0;
  std::size_t skipped = 0;  // |f'| below kDerivativeFloor
  std::size_t reseeds = 0;
};

inline constexpr double kDerivativeFloor = 1e-300;

// Natural-log average of |f'| over n post-transient orbit points. Samples
// with |f'| < 1e-300 are skipped; more than 1% skipped is DerivativeZero.
LyapunovEstimate lyapunov(const MapParams& params, double x0,
                          std::size_t transient, std::size_t n);

}  // namespace chaosbox
