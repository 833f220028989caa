#include "ctreg/noise.hpp"

#include <cmath>
#include <random>
#include <span>

#include "ctreg/error.hpp"

namespace ctreg {

Sinogram add_noise(const Sinogram& y, const NoiseSpec& spec) {
  if (!(spec.delta >= 0.0) || !std::isfinite(spec.delta)) {
    throw ValidationError("noise level delta must be finite and >= 0");
  }
  Sinogram out = y;
  if (spec.delta == 0.0) return out;
  double peak = 0.0;
  for (double v : y.values) peak = std::max(peak, std::abs(v));
  const double scale = spec.delta * peak;
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (double& v : out.values) v += scale * normal(rng);
  return out;
}

NoiseNorms noise_norms(const Sinogram& y, const Sinogram& y_delta,
                       SobolevOrder s) {
  if (!y.same_geometry(y_delta)) throw GeometryMismatch("noise_norms: geometry mismatch");
  const auto n = static_cast<std::size_t>(y.row_length());
  std::vector<double> diff(n);
  double l2 = 0.0, hs = 0.0;
  for (int j = 0; j < y.rows(); ++j) {
    for (std::size_t l = 0; l < n; ++l) {
      const std::size_t i = static_cast<std::size_t>(j) * n + l;
      diff[l] = y_delta.values[i] - y.values[i];
      l2 += diff[l] * diff[l];
    }
    const double row = hs_norm(diff, y.offset_step(), -s.value());
    hs += row * row;
  }
  NoiseNorms norms;
  norms.l2 = std::sqrt(l2 * y.cell_weight());
  norms.hminus_s = std::sqrt(hs * y.angle_step());
  return norms;
}

}  // namespace ctreg
