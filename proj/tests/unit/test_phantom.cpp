#include <doctest.h>

#include <cmath>
#include <random>

#include "ctreg/error.hpp"
#include "ctreg/phantom.hpp"
#include "oracles.hpp"

using namespace ctreg;
using doctest::Approx;

TEST_CASE("render examples") {
  SUBCASE("empty spec renders zeros") {
    const Image2D image = render(PhantomSpec{}, 8, 1.0);
    CHECK(image.side() == 17);
    for (double v : image.values) CHECK(v == 0.0);
  }
  SUBCASE("unit disk is 1 at the origin") {
    const Image2D image = render(disk_phantom(), 16, 1.0);
    CHECK(image.at(0, 0) == 1.0);
    CHECK(image.at(16, 16) == 0.0);
  }
  SUBCASE("unit-width gaussian at (1, 0)") {
    // w = 1 does not fit the unit ball, so evaluate the density directly.
    CHECK(gaussian_phantom(1.0).density(1.0, 0.0) == Approx(0.36787944117144233).epsilon(1e-15));
    const Image2D image = render(gaussian_phantom(0.15), 10, 1.0);
    CHECK(image.at(0, 0) == 1.0);
    CHECK(image.at(10, 0) == Approx(std::exp(-1.0 / 0.0225)));
  }
  SUBCASE("rendering is deterministic") {
    CHECK(render(cheese_phantom(), 20, 1.0).values == render(cheese_phantom(), 20, 1.0).values);
  }
}

TEST_CASE("components outside the unit ball are rejected") {
  CHECK_THROWS_AS(render(disk_phantom(1.2), 8, 1.0), ValidationError);
  CHECK_THROWS_AS(render(PhantomSpec{{Disk{{0.5, 0.0}, 0.6, 1.0}}}, 8, 1.0), ValidationError);
  CHECK_THROWS_AS(render(PhantomSpec{{Ellipse{{0.0, 0.5}, 0.2, 0.6, 0.0, 1.0}}}, 8, 1.0),
                  ValidationError);
  CHECK_THROWS_AS(render(gaussian_phantom(0.2), 8, 1.0), ValidationError);
  CHECK_NOTHROW(render(shepp_logan_phantom(), 8, 1.0));
  CHECK_NOTHROW(render(cheese_phantom(), 8, 1.0));
  CHECK_THROWS_AS(render(disk_phantom(), 0, 1.0), ValidationError);
}

TEST_CASE("analytic radon examples") {
  const PhantomSpec disk = disk_phantom();
  CHECK(analytic_radon(disk, 0.3, 0.0) == Approx(2.0));
  CHECK(analytic_radon(disk, 1.1, 1.0) == 0.0);
  CHECK(analytic_radon(gaussian_phantom(1.0), 0.7, 0.0) ==
        Approx(1.772453850905516).epsilon(1e-14));
  CHECK(analytic_radon(gaussian_phantom(1.0), 0.7, 0.5) ==
        Approx(1.380388447043143).epsilon(1e-14));
}

TEST_CASE("ellipse chords match brute-force line integration") {
  const PhantomSpec spec{{Ellipse{{0.1, -0.2}, 0.5, 0.25, 0.6, 1.3}}};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(0, 2 * oracle::pi), offset(-0.8, 0.8);
  for (int trial = 0; trial < 20; ++trial) {
    const double th = angle(rng), k = offset(rng);
    const double c = std::cos(th), s = std::sin(th);
    const double numeric = oracle::trapezoid(
        [&](double t) { return spec.density(k * c - t * s, k * s + t * c); }, -1.5, 1.5, 300000);
    CHECK(analytic_radon(spec, th, k) == Approx(numeric).epsilon(1e-3).scale(1.0));
  }
}

TEST_CASE("analytic radon is even under (theta, kappa) -> (theta + pi, -kappa)") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> angle(0, oracle::pi), offset(-1, 1);
  for (const auto& spec : {shepp_logan_phantom(), cheese_phantom(), gaussian_phantom(0.1, {0.2, 0.3})}) {
    for (int i = 0; i < 200; ++i) {
      const double th = angle(rng), k = offset(rng);
      CHECK(std::abs(analytic_radon(spec, th, k) - analytic_radon(spec, th + oracle::pi, -k)) <= 1e-12);
    }
  }
}

TEST_CASE("radially symmetric phantoms have angle-independent projections") {
  for (const auto& spec : {disk_phantom(0.7), gaussian_phantom(0.12)}) {
    for (double k : {0.0, 0.1, 0.35, 0.69}) {
      const double ref = analytic_radon(spec, 0.0, k);
      for (double th = 0.1; th < 2 * oracle::pi; th += 0.37) {
        CHECK(analytic_radon(spec, th, k) == Approx(ref).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("projection mass matches the rendered mass") {
  const int M = 128;
  for (const auto& spec : {disk_phantom(), cheese_phantom(), shepp_logan_phantom()}) {
    const Image2D image = render(spec, M, 1.0);
    for (double th : {0.0, 0.9, 2.2}) {
      const double mass = oracle::trapezoid([&](double k) { return analytic_radon(spec, th, k); },
                                            -1.0, 1.0, 4000);
      CHECK(std::abs(mass - image.mass()) <= 0.02 * std::abs(mass));
    }
  }
}

TEST_CASE("bilinear sampling reproduces nodes and vanishes outside") {
  const Image2D image = render(cheese_phantom(), 12, 1.0);
  CHECK(image.sample(image.node(3), image.node(-5)) == image.at(3, -5));
  CHECK(image.sample(1.01, 0.0) == 0.0);
  CHECK(image.sample(image.node(12), image.node(12)) == image.at(12, 12));
}
