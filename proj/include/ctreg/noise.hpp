#pragma once

#include <cstdint>
#include <string_view>

#include "ctreg/grid_fourier.hpp"
#include "ctreg/radon.hpp"

namespace ctreg {

/// Generator behind add_noise, recorded in run reports.
inline constexpr std::string_view kNoiseGenerator = "std::mt19937_64";

struct NoiseSpec {
  double delta = 0;  // relative level, >= 0
  std::uint64_t seed = 0;
};

/// y + delta * max|y| * N(0, 1), drawn independently per cell in storage
/// order. max|y| is the global maximum over the sinogram.
Sinogram add_noise(const Sinogram& y, const NoiseSpec& spec);

struct NoiseNorms {
  double l2 = 0;
  double hminus_s = 0;
};

/// Norms of y_delta - y: the weighted L^2 norm, and the H^{-s} norm taken
/// along the offset axis with angular weight pi/p.
NoiseNorms noise_norms(const Sinogram& y, const Sinogram& y_delta,
                       SobolevOrder s);

}  // namespace ctreg
