#pragma once

#include <cstddef>
#include <vector>

#include "ctreg/phantom.hpp"

namespace ctreg {

/// Parallel-beam data y(theta_j, kappa_l), phi_j = j pi / p, kappa_l = l rho / q.
/// A half-turn sinogram holds j in [0, p); the full-turn extension holds
/// j in [0, 2p). Storage is angle-major.
struct Sinogram {
  int angles = 0;  // p
  int half_offsets = 0;  // q
  double radius = 1;  // rho
  bool full_turn = false;
  std::vector<double> values;

  Sinogram() = default;
  Sinogram(int angles, int half_offsets, double radius, bool full_turn = false);

  int rows() const { return full_turn ? 2 * angles : angles; }
  int row_length() const { return 2 * half_offsets + 1; }
  double angle_step() const;
  double angle(int j) const { return j * angle_step(); }
  double offset_step() const { return radius / half_offsets; }
  double offset(int l) const { return l * offset_step(); }
  std::size_t index(int j, int l) const {
    return static_cast<std::size_t>(j) * row_length() +
           static_cast<std::size_t>(l + half_offsets);
  }
  double& at(int j, int l) { return values[index(j, l)]; }
  double at(int j, int l) const { return values[index(j, l)]; }

  /// Quadrature weight (pi/p)(rho/q) of one cell.
  double cell_weight() const { return angle_step() * offset_step(); }
  /// Weighted discrete L^2 norm over the stored cells.
  double l2_norm() const;
  bool same_geometry(const Sinogram& other) const;
};

/// Weighted inner product with quadrature (pi/p)(rho/q).
double inner_product(const Sinogram& a, const Sinogram& b);
/// h_x^2 sum a b.
double inner_product(const Image2D& a, const Image2D& b);

/// Discrete Radon transform: each line is sampled at step h_x with bilinear
/// interpolation of f and summed with weight h_x.
Sinogram project(const Image2D& f, int angles, int half_offsets, double radius);

/// Dual operator R* h(x) = sum_j h(theta_j, x . theta_j) (pi / p) with
/// linear interpolation in the offset.
Image2D backproject(const Sinogram& g, int half_count, double half_width);

/// Appends angles pi..2pi using y(j + p, l) = y(j, -l).
Sinogram extend_half_turn(const Sinogram& y);

}  // namespace ctreg
