#include "ctreg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ctreg/error.hpp"

namespace ctreg {

namespace {

void require_same_shape(const Image2D& x, const Image2D& ref) {
  if (x.values.size() != ref.values.size() || x.half_count != ref.half_count) {
    throw GeometryMismatch("images differ in shape");
  }
}

double dynamic_range(const Image2D& ref) {
  const auto [lo, hi] = std::minmax_element(ref.values.begin(), ref.values.end());
  return *hi - *lo;
}

}  // namespace

double mse(const Image2D& x, const Image2D& ref) {
  require_same_shape(x, ref);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.values.size(); ++i) {
    const double d = x.values[i] - ref.values[i];
    acc += d * d;
  }
  return acc / static_cast<double>(x.values.size());
}

double psnr_from_mse(double mse, double peak) {
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse);
}

double psnr(const Image2D& x, const Image2D& ref) {
  return psnr_from_mse(mse(x, ref), dynamic_range(ref));
}

double ssim(const Image2D& x, const Image2D& ref) {
  require_same_shape(x, ref);
  const int side = x.side();
  if (side < kSsimWindow) throw ValidationError("ssim needs images of at least 8x8");
  const double range = dynamic_range(ref);
  const double c1 = (kSsimK1 * range) * (kSsimK1 * range);
  const double c2 = (kSsimK2 * range) * (kSsimK2 * range);
  constexpr double count = kSsimWindow * kSsimWindow;
  double total = 0.0;
  const int last = side - kSsimWindow;
  for (int r0 = 0; r0 <= last; ++r0) {
    for (int c0 = 0; c0 <= last; ++c0) {
      double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
      for (int r = r0; r < r0 + kSsimWindow; ++r) {
        for (int c = c0; c < c0 + kSsimWindow; ++c) {
          const double a = x.values[static_cast<std::size_t>(r) * side + c];
          const double b = ref.values[static_cast<std::size_t>(r) * side + c];
          sx += a;
          sy += b;
          sxx += a * a;
          syy += b * b;
          sxy += a * b;
        }
      }
      const double mx = sx / count, my = sy / count;
      const double vx = sxx / count - mx * mx;
      const double vy = syy / count - my * my;
      const double cov = sxy / count - mx * my;
      const double num = (2 * mx * my + c1) * (2 * cov + c2);
      const double den = (mx * mx + my * my + c1) * (vx + vy + c2);
      // flat black windows of a constant reference
      total += den == 0.0 ? (num == 0.0 ? 1.0 : 0.0) : num / den;
    }
  }
  return total / (static_cast<double>(last + 1) * (last + 1));
}

double relative_error(const Image2D& x, const Image2D& ref) {
  require_same_shape(x, ref);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.values.size(); ++i) {
    const double d = x.values[i] - ref.values[i];
    num += d * d;
    den += ref.values[i] * ref.values[i];
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

MetricsRow evaluate(const Image2D& x, const Image2D& ref, std::string method) {
  MetricsRow row;
  row.method = std::move(method);
  row.mse = mse(x, ref);
  row.psnr = psnr_from_mse(row.mse, dynamic_range(ref));
  row.ssim = ssim(x, ref);
  row.relative_error = relative_error(x, ref);
  return row;
}

}  // namespace ctreg
