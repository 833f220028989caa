#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace ctreg {

using Point2 = std::array<double, 2>;

/// Square image sampled at nodes (m1 h, m2 h), m_I in [-M, M], h = tau / M.
/// Storage is row-major with rows indexed by m2 (the x2 axis).
struct Image2D {
  int half_count = 0;     // M
  double half_width = 1;  // tau
  std::vector<double> values;

  Image2D() = default;
  Image2D(int half_count, double half_width);

  int side() const { return 2 * half_count + 1; }
  double mesh() const { return half_width / half_count; }
  double node(int m) const { return m * mesh(); }
  std::size_t index(int m1, int m2) const {
    return static_cast<std::size_t>(m2 + half_count) * side() +
           static_cast<std::size_t>(m1 + half_count);
  }
  double& at(int m1, int m2) { return values[index(m1, m2)]; }
  double at(int m1, int m2) const { return values[index(m1, m2)]; }

  /// Bilinear interpolation at a physical point; zero outside the grid.
  double sample(double x1, double x2) const;
  /// Discrete L^2 norm: sqrt(h^2 sum f^2).
  double l2_norm() const;
  /// h^2 sum f.
  double mass() const;
};

/// Constant-density disk.
struct Disk {
  Point2 center{0, 0};
  double radius = 1;
  double density = 1;
};

/// Constant-density ellipse with semi-axes (a, b) rotated by `rotation`.
struct Ellipse {
  Point2 center{0, 0};
  double semi_a = 1;
  double semi_b = 1;
  double rotation = 0;
  double density = 1;
};

/// amplitude * exp(-|x - center|^2 / width^2).
struct Gaussian {
  Point2 center{0, 0};
  double width = 1;
  double amplitude = 1;
};

using PhantomComponent = std::variant<Disk, Ellipse, Gaussian>;

/// Gaussians count as supported in the unit ball when |c| + 6w <= 1; the
/// tail beyond that radius is below e^{-36} of the peak.
inline constexpr double kGaussianSupportWidths = 6.0;

struct PhantomSpec {
  std::vector<PhantomComponent> components;

  /// Pointwise density, summed over components.
  double density(double x1, double x2) const;
  /// Throws ValidationError if any component leaves the unit ball.
  void validate() const;
  /// "empty", "disk", "gaussian" or "ellipses" (superposition).
  std::string kind() const;
};

/// Centered unit-density disk.
PhantomSpec disk_phantom(double radius = 1.0, double density = 1.0);
/// amplitude * exp(-|x - c|^2 / w^2).
PhantomSpec gaussian_phantom(double width, Point2 center = {0, 0},
                             double amplitude = 1.0);
/// Modified Shepp-Logan head scaled into the unit ball.
PhantomSpec shepp_logan_phantom();
/// Disk with elliptic holes and inclusions, a stand-in for a carved
/// cheese slice.
PhantomSpec cheese_phantom();

/// Evaluates the density at every grid node. Validates the spec first.
Image2D render(const PhantomSpec& spec, int half_count, double half_width);

/// Exact line integral of the phantom along {x . theta = offset} with
/// theta = (cos angle, sin angle).
double analytic_radon(const PhantomSpec& spec, double angle, double offset);

}  // namespace ctreg
