#include "ctreg/radon.hpp"

#include <cmath>
#include <numbers>

#include "ctreg/error.hpp"
#include "ctreg/parallel.hpp"

namespace ctreg {

using std::numbers::pi;

Sinogram::Sinogram(int angles, int half_offsets, double radius, bool full_turn)
    : angles(angles), half_offsets(half_offsets), radius(radius),
      full_turn(full_turn) {
  if (angles < 2) throw ValidationError("sinogram needs p >= 2 angles");
  if (half_offsets < 1) throw ValidationError("sinogram needs q >= 1");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ValidationError("support radius rho must be finite and > 0");
  }
  values.assign(static_cast<std::size_t>(rows()) * row_length(), 0.0);
}

double Sinogram::angle_step() const { return pi / angles; }

double Sinogram::l2_norm() const { return std::sqrt(inner_product(*this, *this)); }

bool Sinogram::same_geometry(const Sinogram& other) const {
  return angles == other.angles && half_offsets == other.half_offsets &&
         radius == other.radius && full_turn == other.full_turn;
}

double inner_product(const Sinogram& a, const Sinogram& b) {
  if (!a.same_geometry(b)) throw GeometryMismatch("sinogram geometry mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) acc += a.values[i] * b.values[i];
  return acc * a.cell_weight();
}

double inner_product(const Image2D& a, const Image2D& b) {
  if (a.half_count != b.half_count || a.half_width != b.half_width) {
    throw GeometryMismatch("image geometry mismatch");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) acc += a.values[i] * b.values[i];
  return acc * a.mesh() * a.mesh();
}

Sinogram project(const Image2D& f, int angles, int half_offsets, double radius) {
  Sinogram y(angles, half_offsets, radius);
  const double h = f.mesh();
  // Lines are sampled across the whole square so nothing inside it is missed.
  const int steps = static_cast<int>(std::ceil(f.half_width * std::sqrt(2.0) / h));
  parallel_for(static_cast<std::size_t>(angles), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    const double c = std::cos(y.angle(j)), s = std::sin(y.angle(j));
    for (int l = -half_offsets; l <= half_offsets; ++l) {
      const double k = y.offset(l);
      double acc = 0.0;
      for (int i = -steps; i <= steps; ++i) {
        const double t = i * h;
        acc += f.sample(k * c - t * s, k * s + t * c);
      }
      y.at(j, l) = acc * h;
    }
  });
  return y;
}

Image2D backproject(const Sinogram& g, int half_count, double half_width) {
  Image2D image(half_count, half_width);
  const int rows = g.rows();
  std::vector<double> cosines(rows), sines(rows);
  for (int j = 0; j < rows; ++j) {
    cosines[j] = std::cos(g.angle(j));
    sines[j] = std::sin(g.angle(j));
  }
  const double dk = g.offset_step();
  const double weight = g.angle_step();
  parallel_for(static_cast<std::size_t>(image.side()), [&](std::size_t r) {
    const int m2 = static_cast<int>(r) - half_count;
    const double x2 = image.node(m2);
    for (int m1 = -half_count; m1 <= half_count; ++m1) {
      const double x1 = image.node(m1);
      double acc = 0.0;
      for (int j = 0; j < rows; ++j) {
        const double u = (x1 * cosines[j] + x2 * sines[j]) / dk;
        const double fl = std::floor(u);
        int l = static_cast<int>(fl);
        const double frac = u - fl;
        if (l >= -g.half_offsets && l <= g.half_offsets) acc += (1.0 - frac) * g.at(j, l);
        ++l;
        if (l >= -g.half_offsets && l <= g.half_offsets) acc += frac * g.at(j, l);
      }
      image.at(m1, m2) = acc * weight;
    }
  });
  return image;
}

Sinogram extend_half_turn(const Sinogram& y) {
  if (y.full_turn) throw ValidationError("sinogram is already extended");
  Sinogram out(y.angles, y.half_offsets, y.radius, true);
  for (int j = 0; j < y.angles; ++j) {
    for (int l = -y.half_offsets; l <= y.half_offsets; ++l) {
      out.at(j, l) = y.at(j, l);
      out.at(j + y.angles, l) = y.at(j, -l);
    }
  }
  return out;
}

}  // namespace ctreg
