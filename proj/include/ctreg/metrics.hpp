#pragma once

#include <string>

#include "ctreg/phantom.hpp"

namespace ctreg {

inline constexpr int kSsimWindow = 8;
inline constexpr double kSsimK1 = 0.01;
inline constexpr double kSsimK2 = 0.03;

struct MetricsRow {
  std::string method;
  double alpha = 0;
  double delta = 0;
  unsigned long long seed = 0;
  double mse = 0;
  double psnr = 0;
  double ssim = 0;
  double relative_error = 0;
};

double mse(const Image2D& x, const Image2D& ref);
/// 10 log10(peak^2 / mse) with peak = max(ref) - min(ref); +inf when mse = 0.
double psnr(const Image2D& x, const Image2D& ref);
double psnr_from_mse(double mse, double peak);
/// Single-scale SSIM over all 8x8 windows at stride 1, averaged.
/// C1 = (0.01 L)^2, C2 = (0.03 L)^2 with L the dynamic range of ref.
double ssim(const Image2D& x, const Image2D& ref);
/// ||x - ref|| / ||ref|| over grid nodes.
double relative_error(const Image2D& x, const Image2D& ref);

MetricsRow evaluate(const Image2D& x, const Image2D& ref, std::string method);

}  // namespace ctreg
