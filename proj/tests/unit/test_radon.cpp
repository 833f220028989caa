#include <doctest.h>

#include <cmath>
#include <random>

#include "ctreg/error.hpp"
#include "ctreg/noise.hpp"
#include "ctreg/radon.hpp"
#include "oracles.hpp"

using namespace ctreg;
using doctest::Approx;

namespace {

Sinogram analytic_sinogram(const PhantomSpec& spec, int p, int q, double rho) {
  Sinogram y(p, q, rho);
  for (int j = 0; j < p; ++j)
    for (int l = -q; l <= q; ++l) y.at(j, l) = analytic_radon(spec, y.angle(j), y.offset(l));
  return y;
}

}  // namespace

TEST_CASE("project examples") {
  SUBCASE("zero image") {
    const Sinogram y = project(Image2D(16, 1.0), 8, 10, 1.0);
    for (double v : y.values) CHECK(v == 0.0);
  }
  SUBCASE("unit disk centre chord is 2") {
    const Sinogram y = project(render(disk_phantom(), 128, 1.0), 36, 16, 1.0);
    for (int j = 0; j < y.rows(); ++j) CHECK(std::abs(y.at(j, 0) - 2.0) <= 0.02 * 2.0);
  }
  SUBCASE("gaussian projection at half a width") {
    const double w = 0.15;
    const Image2D f = render(gaussian_phantom(w), 128, 1.0);
    // offsets l rho / q with q = 40 put kappa = 3/40 = w / 2 on the grid
    const Sinogram y = project(f, 24, 40, 1.0);
    const double expected = w * std::sqrt(oracle::pi) * std::exp(-0.25);
    CHECK(y.offset(3) == Approx(0.5 * w));
    for (int j = 0; j < y.rows(); ++j) CHECK(std::abs(y.at(j, 3) - expected) <= 0.02 * expected);
  }
}

TEST_CASE("projection is linear") {
  const Image2D f = render(cheese_phantom(), 32, 1.0);
  const Image2D g = render(shepp_logan_phantom(), 32, 1.0);
  Image2D combo(32, 1.0);
  for (std::size_t i = 0; i < combo.values.size(); ++i) combo.values[i] = 2.5 * f.values[i] - 0.75 * g.values[i];
  const Sinogram a = project(f, 20, 24, 1.0), b = project(g, 20, 24, 1.0), c = project(combo, 20, 24, 1.0);
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    CHECK(std::abs(c.values[i] - (2.5 * a.values[i] - 0.75 * b.values[i])) <= 1e-12);
  }
}

TEST_CASE("backproject examples") {
  SUBCASE("zero sinogram") {
    const Image2D image = backproject(Sinogram(6, 8, 1.0), 10, 1.0);
    for (double v : image.values) CHECK(v == 0.0);
  }
  SUBCASE("constant sinogram gives pi at the origin") {
    Sinogram g(17, 12, 1.0);
    for (auto& v : g.values) v = 1.0;
    const Image2D image = backproject(g, 10, 1.0);
    CHECK(image.at(0, 0) == Approx(oracle::pi).epsilon(1e-14));
  }
}

TEST_CASE("projector and backprojector are adjoint up to quadrature") {
  const int M = 64, p = 90, q = 64;
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 3; ++trial) {
    Image2D f(M, 1.0);
    for (int m2 = -M; m2 <= M; ++m2)
      for (int m1 = -M; m1 <= M; ++m1)
        if (std::hypot(f.node(m1), f.node(m2)) < 0.9) f.at(m1, m2) = u(rng);
    Sinogram g(p, q, 1.0);
    for (auto& v : g.values) v = u(rng);
    const double lhs = inner_product(project(f, p, q, 1.0), g);
    const double rhs = inner_product(f, backproject(g, M, 1.0));
    CHECK(std::abs(lhs - rhs) <= 0.01 * std::abs(lhs));
  }
}

TEST_CASE("extend_half_turn") {
  SUBCASE("defining identity on exact data") {
    const PhantomSpec spec = cheese_phantom();
    const Sinogram y = analytic_sinogram(spec, 12, 10, 1.0);
    const Sinogram ext = extend_half_turn(y);
    REQUIRE(ext.rows() == 24);
    for (int j = 0; j < 12; ++j) {
      for (int l = -10; l <= 10; ++l) {
        CHECK(ext.at(j + 12, l) == y.at(j, -l));
        CHECK(ext.at(j, l) == y.at(j, l));
        // and the extension is the true data on the second half turn
        CHECK(std::abs(ext.at(j + 12, l) - analytic_radon(spec, ext.angle(j + 12), ext.offset(l))) <= 1e-12);
      }
    }
  }
  SUBCASE("single entry") {
    Sinogram y(5, 4, 1.0);
    y.at(0, 4) = 3.5;
    const Sinogram ext = extend_half_turn(y);
    CHECK(ext.at(5, -4) == 3.5);
    double total = 0;
    for (double v : ext.values) total += v;
    CHECK(total == 7.0);
  }
  SUBCASE("noisy data is extended verbatim") {
    const Sinogram y = add_noise(analytic_sinogram(disk_phantom(), 8, 6, 1.0), {0.3, 4});
    const Sinogram ext = extend_half_turn(y);
    for (int j = 0; j < 8; ++j)
      for (int l = -6; l <= 6; ++l) CHECK(ext.at(j + 8, l) == y.at(j, -l));
  }
  CHECK_THROWS_AS(extend_half_turn(extend_half_turn(Sinogram(4, 2, 1.0))), ValidationError);
}

TEST_CASE("Fourier slice theorem for the discrete projector") {
  const int M = 128, p = 180, q = 128;
  const double w = 0.15;
  const Point2 c{0.05, -0.03};
  const Image2D f = render(gaussian_phantom(w, c), M, 1.0);
  const Sinogram y = project(f, p, q, 1.0);
  const double peak = std::abs(oracle::gaussian_fourier(w, c, 1.0, 0, 0));
  const double bandwidth = oracle::pi * M;
  double worst = 0;
  for (int j = 0; j < p; j += 3) {
    const double th = y.angle(j);
    for (int i = 0; i <= 200; ++i) {
      const double sigma = bandwidth * i / 200.0;
      oracle::Complex sum{0, 0};
      for (int l = -q; l <= q; ++l) sum += y.at(j, l) * std::polar(1.0, -sigma * y.offset(l));
      sum *= y.offset_step();
      const auto exact = oracle::gaussian_fourier(w, c, 1.0, sigma * std::cos(th), sigma * std::sin(th));
      worst = std::max(worst, std::abs(sum - exact) / peak);
    }
  }
  MESSAGE("max relative slice mismatch " << worst);
  CHECK(worst <= 0.02);
}

TEST_CASE("sinogram geometry checks") {
  CHECK_THROWS_AS(Sinogram(1, 4, 1.0), ValidationError);
  CHECK_THROWS_AS(Sinogram(4, 0, 1.0), ValidationError);
  CHECK_THROWS_AS(inner_product(Sinogram(4, 2, 1.0), Sinogram(4, 3, 1.0)), GeometryMismatch);
}
