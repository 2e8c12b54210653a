#include "chaosbox/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "chaosbox/error.hpp"

namespace chaosbox {

std::string_view to_string(NlMode mode) {
  return mode == NlMode::Coordinate ? "coord" : "full";
}

NlMode parse_nl_mode(std::string_view text) {
  if (text == "coord") return NlMode::Coordinate;
  if (text == "full") return NlMode::FullSpectrum;
  throw Error(ErrorKind::InvalidArgument,
              "unknown nl mode '" + std::string(text) + "' (coord, full)");
}

namespace {

void fast_walsh_hadamard(WalshSpectrum& v) {
  for (int len = 1; len < kSBoxSize; len <<= 1) {
    for (int i = 0; i < kSBoxSize; i += len << 1) {
      for (int j = i; j < i + len; ++j) {
        const int u = v(j);
        const int w = v(j + len);
        v(j) = u + w;
        v(j + len) = u - w;
      }
    }
  }
}

int max_abs(const WalshSpectrum& w) { return w.abs().maxCoeff(); }

int nl_from_max_walsh(int max_walsh) { return (kSBoxSize - max_walsh) / 2; }

}  // namespace

WalshSpectrum walsh_spectrum(const BooleanComponent& f) {
  WalshSpectrum w;
  for (int x = 0; x < kSBoxSize; ++x) w(x) = f(x) ? -1 : 1;
  fast_walsh_hadamard(w);
  return w;
}

int nonlinearity(const BooleanComponent& f) {
  return nl_from_max_walsh(max_abs(walsh_spectrum(f)));
}

NonlinearitySummary sbox_nonlinearity(const SBox& box, NlMode mode,
                                      const MetricOptions& opts) {
  require_bijective(box, opts.allow_non_bijective);

  NonlinearitySummary out;
  for (int i = 0; i < kSBoxBits; ++i) {
    out.per_coordinate[static_cast<std::size_t>(i)] =
        nonlinearity(BooleanComponent(box, static_cast<std::uint8_t>(1U << i)));
  }

  if (mode == NlMode::Coordinate) {
    const auto [lo, hi] = std::minmax_element(out.per_coordinate.begin(),
                                              out.per_coordinate.end());
    out.min = *lo;
    out.max = *hi;
    int sum = 0;
    for (int v : out.per_coordinate) sum += v;
    out.avg = static_cast<double>(sum) / kSBoxBits;
    return out;
  }

  out.min = kSBoxSize;
  out.max = 0;
  long sum = 0;
  for (int mask = 1; mask < kSBoxSize; ++mask) {
    const int nl = nonlinearity(BooleanComponent(box, static_cast<std::uint8_t>(mask)));
    out.min = std::min(out.min, nl);
    out.max = std::max(out.max, nl);
    sum += nl;
  }
  out.avg = static_cast<double>(sum) / (kSBoxSize - 1);
  return out;
}

SacResult sac_matrix(const SBox& box, const MetricOptions& opts) {
  require_bijective(box, opts.allow_non_bijective);

  SacResult out;
  for (int i = 0; i < kSBoxBits; ++i) {
    for (int x = 0; x < kSBoxSize; ++x) {
      const unsigned diff = box(x) ^ box(x ^ (1 << i));
      for (int j = 0; j < kSBoxBits; ++j) out.flips(i, j) += (diff >> j) & 1U;
    }
  }
  out.avg = static_cast<double>(out.flips.sum()) / (kSBoxSize * kSBoxBits * kSBoxBits);
  out.offset = std::fabs(out.avg - 0.5);
  return out;
}

BicNlResult bic_nl(const SBox& box, const MetricOptions& opts) {
  require_bijective(box, opts.allow_non_bijective);

  BicNlResult out;
  int sum = 0;
  for (int i = 0; i < kSBoxBits; ++i) {
    for (int j = i + 1; j < kSBoxBits; ++j) {
      const auto mask = static_cast<std::uint8_t>((1U << i) | (1U << j));
      const int nl = nonlinearity(BooleanComponent(box, mask));
      out.matrix(i, j) = nl;
      out.matrix(j, i) = nl;
      sum += 2 * nl;
    }
  }
  out.avg = static_cast<double>(sum) / (kSBoxBits * (kSBoxBits - 1));
  return out;
}

Eigen::MatrixXi walsh_table(const SBox& box) {
  Eigen::MatrixXi table(kSBoxSize, kSBoxSize);
  for (int b = 0; b < kSBoxSize; ++b) {
    table.row(b) = walsh_spectrum(BooleanComponent(box, static_cast<std::uint8_t>(b)))
                       .matrix()
                       .transpose();
  }
  return table;
}

LinearProbability linear_probability(const SBox& box, const MetricOptions& opts) {
  require_bijective(box, opts.allow_non_bijective);

  int max_walsh = 0;
  for (int b = 1; b < kSBoxSize; ++b) {
    max_walsh = std::max(
        max_walsh, max_abs(walsh_spectrum(BooleanComponent(box, static_cast<std::uint8_t>(b)))));
  }
  // count - 128 = W / 2
  LinearProbability out;
  out.bias_count = max_walsh / 2;
  out.lp = static_cast<double>(out.bias_count) / kSBoxSize;
  return out;
}

Eigen::MatrixXi difference_distribution(const SBox& box) {
  Eigen::MatrixXi counts = Eigen::MatrixXi::Zero(kSBoxSize, kSBoxSize);
  for (int dc = 0; dc < kSBoxSize; ++dc) {
    for (int x = 0; x < kSBoxSize; ++x) {
      ++counts(dc, box(x) ^ box(x ^ dc));
    }
  }
  return counts;
}

DifferentialResult differential_uniformity(const SBox& box, const MetricOptions& opts) {
  require_bijective(box, opts.allow_non_bijective);

  const Eigen::MatrixXi ddt = difference_distribution(box);
  DifferentialResult out;
  for (int dc = 1; dc < kSBoxSize; ++dc) {
    const int row_max = ddt.row(dc).maxCoeff();
    out.du_grid((dc - 1) / 16, (dc - 1) % 16) = row_max;
    out.du = std::max(out.du, row_max);
  }
  out.dp = static_cast<double>(out.du) / kSBoxSize;
  return out;
}

std::vector<int> fixed_points(const SBox& box) {
  std::vector<int> out;
  for (int x = 0; x < kSBoxSize; ++x) {
    if (box(x) == x) out.push_back(x);
  }
  return out;
}

MetricReport full_report(const SBox& box, NlMode mode, const MetricOptions& opts) {
  require_bijective(box, opts.allow_non_bijective);

  MetricReport r;
  r.nl_mode = mode;
  r.bijective = box.is_bijective();
  const MetricOptions raw{.allow_non_bijective = true};
  r.nl = sbox_nonlinearity(box, mode, raw);
  r.sac = sac_matrix(box, raw);
  r.bic = bic_nl(box, raw);
  r.lp = linear_probability(box, raw);
  r.differential = differential_uniformity(box, raw);
  r.fixed_points = fixed_points(box);
  return r;
}

}  // namespace chaosbox
