#pragma once

#include <Eigen/Core>

#include <array>
#include <string_view>
#include <vector>

#include "chaosbox/sbox.hpp"

namespace chaosbox {

// W(a) = sum_x (-1)^(f(x) xor a.x), indexed by the input mask a.
using WalshSpectrum = Eigen::Array<int, kSBoxSize, 1>;

template <typename Scalar>
using ByteMatrix = Eigen::Matrix<Scalar, kSBoxBits, kSBoxBits>;

enum class NlMode { Coordinate, FullSpectrum };

std::string_view to_string(NlMode mode);
NlMode parse_nl_mode(std::string_view text);

struct MetricOptions {
  bool allow_non_bijective = false;
};

// Fast Walsh-Hadamard transform, O(N log N).
WalshSpectrum walsh_spectrum(const BooleanComponent& f);

// (2^8 - max_a |W(a)|) / 2.
int nonlinearity(const BooleanComponent& f);

struct NonlinearitySummary {
  int min = 0;
  int max = 0;
  double avg = 0.0;
  std::array<int, kSBoxBits> per_coordinate{};  // masks 2^0 .. 2^7
};

// Coordinate mode looks at the 8 single-bit masks, FullSpectrum at all 255
// nonzero output masks.
NonlinearitySummary sbox_nonlinearity(const SBox& box, NlMode mode,
                                      const MetricOptions& opts = {});

struct SacResult {
  // flips(i, j): number of x in 0..255 for which output bit j changes when
  // input bit i is flipped.
  ByteMatrix<int> flips = ByteMatrix<int>::Zero();
  double avg = 0.0;
  double offset = 0.0;  // |avg - 0.5|

  ByteMatrix<double> matrix() const { return flips.cast<double>() / kSBoxSize; }
};

SacResult sac_matrix(const SBox& box, const MetricOptions& opts = {});

struct BicNlResult {
  ByteMatrix<int> matrix = ByteMatrix<int>::Zero();  // zero diagonal
  double avg = 0.0;                                  // over the 56 off-diagonal cells
};

BicNlResult bic_nl(const SBox& box, const MetricOptions& opts = {});

// lat(b, a) = Walsh coefficient of component b at input mask a. Row 0 is the
// trivial component.
Eigen::MatrixXi walsh_table(const SBox& box);

struct LinearProbability {
  int bias_count = 0;  // max |#{x : a.x = b.S(x)} - 128| over b != 0
  double lp = 0.0;     // bias_count / 256
};

LinearProbability linear_probability(const SBox& box, const MetricOptions& opts = {});

// counts(dc, dy) = #{x : S(x) xor S(x xor dc) = dy}
Eigen::MatrixXi difference_distribution(const SBox& box);

struct DifferentialResult {
  int du = 0;
  double dp = 0.0;  // du / 256
  // Cell k (row-major) holds the row maximum for dc = k + 1; the last cell
  // (dc = 256 = 0 mod 256) is a structural zero.
  Eigen::Matrix<int, 16, 16, Eigen::RowMajor> du_grid =
      Eigen::Matrix<int, 16, 16, Eigen::RowMajor>::Zero();
};

DifferentialResult differential_uniformity(const SBox& box,
                                           const MetricOptions& opts = {});

std::vector<int> fixed_points(const SBox& box);

struct MetricReport {
  NlMode nl_mode = NlMode::Coordinate;
  NonlinearitySummary nl;
  SacResult sac;
  BicNlResult bic;
  LinearProbability lp;
  DifferentialResult differential;
  std::vector<int> fixed_points;
  bool bijective = true;
};

MetricReport full_report(const SBox& box, NlMode mode,
                         const MetricOptions& opts = {});

}  // namespace chaosbox
