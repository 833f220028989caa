#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "ctreg/error.hpp"
#include "ctreg/metrics.hpp"
#include "oracles.hpp"

using namespace ctreg;
using doctest::Approx;

namespace {

Image2D random_image(int m, std::uint64_t seed) {
  Image2D img(m, 1.0);
  img.values = oracle::random_vector(img.values.size(), seed);
  return img;
}

Image2D flipped(const Image2D& x) {
  Image2D out = x;
  const int side = x.side();
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c) out.values[r * side + c] = x.values[r * side + (side - 1 - c)];
  return out;
}

// zero-mean checkerboard-like pattern
Image2D pattern(int m) {
  Image2D img(m, 1.0);
  const int side = img.side();
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c) img.values[r * side + c] = std::sin(0.9 * r) * std::cos(1.3 * c);
  return img;
}

}  // namespace

TEST_CASE("mse") {
  const Image2D ref = random_image(10, 1);
  CHECK(mse(ref, ref) == 0.0);
  Image2D shifted = ref;
  for (double& v : shifted.values) v += 0.1;
  CHECK(mse(shifted, ref) == Approx(0.01).epsilon(1e-12));
  const Image2D x = random_image(10, 2);
  CHECK(std::abs(mse(x, ref) - oracle::naive_mse(x, ref)) <= 1e-12);
  CHECK(mse(x, ref) == mse(ref, x));
  CHECK_THROWS_AS(mse(random_image(9, 1), ref), GeometryMismatch);
}

TEST_CASE("psnr") {
  CHECK(psnr_from_mse(0.01, 1.0) == Approx(20.0).epsilon(1e-14));
  CHECK(psnr_from_mse(1.0, 1.0) == 0.0);
  CHECK(psnr_from_mse(0.005, 1.0) - psnr_from_mse(0.01, 1.0) == Approx(3.0103).epsilon(1e-5));
  CHECK(psnr_from_mse(0.0, 1.0) == std::numeric_limits<double>::infinity());
  double prev = INFINITY;
  for (double m = 1e-6; m < 10; m *= 1.7) {
    CHECK(psnr_from_mse(m, 2.0) < prev);
    prev = psnr_from_mse(m, 2.0);
  }
  const Image2D ref = random_image(12, 3);
  const Image2D x = random_image(12, 4);
  double lo = INFINITY, hi = -INFINITY;
  for (double v : ref.values) lo = std::min(lo, v), hi = std::max(hi, v);
  CHECK(psnr(x, ref) == Approx(10 * std::log10((hi - lo) * (hi - lo) / oracle::naive_mse(x, ref))));
  CHECK(psnr(ref, ref) == std::numeric_limits<double>::infinity());
}

TEST_CASE("ssim") {
  const Image2D ref = pattern(12);
  CHECK(ssim(ref, ref) == 1.0);
  const Image2D x = random_image(12, 5);
  CHECK(ssim(x, ref) == Approx(oracle::naive_ssim(x, ref)).epsilon(1e-12));

  Image2D affine = ref;
  for (double& v : affine.values) v = 0.7 * v + 0.2;
  const double a = ssim(affine, ref);
  CHECK(a < 1.0);
  CHECK(a == Approx(oracle::naive_ssim(affine, ref)).epsilon(1e-12));

  Image2D negated = ref;
  for (double& v : negated.values) v = -v;
  CHECK(ssim(negated, ref) < 0.0);

  for (int seed = 0; seed < 5; ++seed) {
    const double v = ssim(random_image(6, seed), random_image(6, seed + 100));
    CHECK(v >= -1.0);
    CHECK(v <= 1.0);
  }
  CHECK_THROWS_AS(ssim(random_image(3, 1), random_image(3, 2)), ValidationError);
}

TEST_CASE("metrics are invariant under flipping both images") {
  const Image2D ref = pattern(10), x = random_image(10, 8);
  const Image2D fr = flipped(ref), fx = flipped(x);
  CHECK(mse(fx, fr) == Approx(mse(x, ref)).epsilon(1e-14));
  CHECK(psnr(fx, fr) == Approx(psnr(x, ref)).epsilon(1e-14));
  CHECK(ssim(fx, fr) == Approx(ssim(x, ref)).epsilon(1e-12));
}

TEST_CASE("evaluate fills a row") {
  const Image2D ref = pattern(10), x = random_image(10, 9);
  const MetricsRow row = evaluate(x, ref, "fbp");
  CHECK(row.method == "fbp");
  CHECK(row.mse == mse(x, ref));
  CHECK(row.psnr == psnr(x, ref));
  CHECK(row.ssim == ssim(x, ref));
  CHECK(row.relative_error == relative_error(x, ref));
}
