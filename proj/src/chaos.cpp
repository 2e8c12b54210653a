#include "chaosbox/chaos.hpp"

#include <cmath>
#include <sstream>

namespace chaosbox {

std::string_view to_string(MapKind kind) {
  switch (kind) {
    case MapKind::Ahyb: return "ahyb";
    case MapKind::Logistic: return "logistic";
    case MapKind::Sine: return "sine";
  }
  return "unknown";
}

std::string_view to_string(BranchMode mode) {
  return mode == BranchMode::Equation1 ? "eq1" : "alg1";
}

MapKind parse_map_kind(std::string_view text) {
  if (text == "ahyb") return MapKind::Ahyb;
  if (text == "logistic") return MapKind::Logistic;
  if (text == "sine") return MapKind::Sine;
  throw Error(ErrorKind::InvalidArgument,
              "unknown map '" + std::string(text) + "' (ahyb, logistic, sine)");
}

BranchMode parse_branch_mode(std::string_view text) {
  if (text == "eq1") return BranchMode::Equation1;
  if (text == "alg1") return BranchMode::Algorithm1;
  throw Error(ErrorKind::InvalidArgument,
              "unknown branch mode '" + std::string(text) + "' (eq1, alg1)");
}

ParamRange control_range(MapKind kind) {
  switch (kind) {
    case MapKind::Ahyb: return {0.0, 2.0, false};
    case MapKind::Logistic: return {0.0, 4.0, true};
    case MapKind::Sine: return {0.0, 4.0, true};
  }
  return {0.0, 0.0, false};
}

namespace {

std::string describe_range(MapKind kind) {
  const ParamRange r = control_range(kind);
  std::ostringstream out;
  out << "(" << r.lo << ", " << r.hi << (r.hi_inclusive ? "]" : ")");
  return out.str();
}

void require_in_range(MapKind kind, double value) {
  if (!std::isfinite(value) || !control_range(kind).contains(value)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << to_string(kind) << " control parameter " << value
        << " outside " << describe_range(kind);
    throw Error(ErrorKind::ParamOutOfRange, msg.str());
  }
}

void require_start_state(MapKind kind, double x0) {
  const bool ok = kind == MapKind::Ahyb ? (x0 > 0.0 && x0 < 4.0)
                                        : (x0 >= 0.0 && x0 <= 1.0);
  if (!std::isfinite(x0) || !ok) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "initial state " << x0 << " outside "
        << (kind == MapKind::Ahyb ? "(0, 4)" : "[0, 1]");
    throw Error(ErrorKind::ParamOutOfRange, msg.str());
  }
}

// Walks an orbit, applying the AHYB fold and flagging reference-map orbits
// that are absorbed at 0.
class OrbitWalker {
 public:
  OrbitWalker(const MapParams& params, double x0) : params_(params), x_(x0) {
    require_start_state(params.kind(), x0);
  }

  double state() const { return x_; }
  std::size_t reseeds() const { return reseeds_; }

  void advance() {
    const double next = orbit_step(params_, x_, &reseeds_);
    if (next == 0.0 && x_ == 0.0) {
      throw Error(ErrorKind::DegenerateOrbit,
                  std::string(to_string(params_.kind())) +
                      " orbit absorbed at state 0");
    }
    x_ = next;
  }

 private:
  const MapParams& params_;
  double x_;
  std::size_t reseeds_ = 0;
};

}  // namespace

MapParams::MapParams(MapKind kind, double control, BranchMode branch)
    : kind_(kind), control_(control), branch_(branch) {
  require_in_range(kind, control);
}

double round15(double x) {
  detail::require_finite(x, "round15 input");
  constexpr double kScale = 1e15;
  constexpr double kExactLimit = 4503599627370496.0;  // 2^52
  const double scaled = x * kScale;
  if (std::fabs(scaled) >= kExactLimit) return x;
  return std::round(scaled) / kScale;
}

double renormalize(double x) {
  const double r = std::fabs(round15(x));
  return 4.0 * std::fmod(r, 1.0);
}

double orbit_step(const MapParams& params, double x, std::size_t* reseeds) {
  double next = map_step(params, x);
  if (params.kind() == MapKind::Ahyb) {
    next = renormalize(next);
    if (next == 0.0) {
      next = kReseedValue;
      if (reseeds != nullptr) ++*reseeds;
    }
  }
  return next;
}

Trajectory iterate(const MapParams& params, double x0, std::size_t transient,
                   std::size_t n) {
  OrbitWalker walker(params, x0);
  for (std::size_t i = 0; i < transient; ++i) walker.advance();

  Trajectory out;
  out.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    walker.advance();
    out.points.push_back({i, walker.state()});
  }
  out.reseeds = walker.reseeds();
  return out;
}

std::vector<BifurcationPoint> bifurcation_scan(MapKind kind, double param_lo,
                                               double param_hi,
                                               std::size_t steps, double x0,
                                               std::size_t transient,
                                               std::size_t samples,
                                               BranchMode branch) {
  require_in_range(kind, param_lo);
  require_in_range(kind, param_hi);
  if (!(param_lo < param_hi)) {
    throw Error(ErrorKind::ParamOutOfRange,
                "bifurcation range needs param_lo < param_hi");
  }
  if (steps == 0) {
    throw Error(ErrorKind::InvalidArgument, "bifurcation steps must be >= 1");
  }

  std::vector<BifurcationPoint> out;
  out.reserve(steps * samples);
  for (std::size_t k = 0; k < steps; ++k) {
    double param = param_lo;
    if (steps > 1) {
      param = k + 1 == steps
                  ? param_hi
                  : param_lo + (param_hi - param_lo) *
                                   (static_cast<double>(k) /
                                    static_cast<double>(steps - 1));
    }
    const MapParams params(kind, param, branch);
    for (const TrajectoryPoint& p : iterate(params, x0, transient, samples).points) {
      out.push_back({param, p.state});
    }
  }
  return out;
}

LyapunovEstimate lyapunov(const MapParams& params, double x0,
                          std::size_t transient, std::size_t n) {
  if (n == 0) {
    throw Error(ErrorKind::InvalidArgument, "lyapunov needs n >= 1");
  }
  OrbitWalker walker(params, x0);
  for (std::size_t i = 0; i < transient; ++i) walker.advance();

  LyapunovEstimate est;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    walker.advance();
    const double slope = std::fabs(map_derivative(params, walker.state()));
    if (slope < kDerivativeFloor) {
      ++est.skipped;
      continue;
    }
    sum += std::log(slope);
    ++est.samples_used;
  }
  est.reseeds = walker.reseeds();

  if (est.skipped * 100 > n || est.samples_used == 0) {
    throw Error(ErrorKind::DerivativeZero,
                std::to_string(est.skipped) + " of " + std::to_string(n) +
                    " samples had |f'| < 1e-300");
  }
  est.value = sum / static_cast<double>(est.samples_used);
  return est;
}

}  // namespace chaosbox
