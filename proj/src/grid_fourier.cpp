#include "ctreg/grid_fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ctreg/error.hpp"
#include "ctreg/parallel.hpp"
#include "ctreg/radon.hpp"

namespace ctreg {

using std::numbers::pi;

SobolevOrder::SobolevOrder(double s) : s_(s) {
  if (!(s >= 0.0) || !std::isfinite(s)) {
    throw ValidationError("Sobolev order must be finite and >= 0");
  }
}

FrequencyGrid2D::FrequencyGrid2D(int half_count, int oversampling,
                                 double bandwidth)
    : half_count_(half_count), oversampling_(oversampling),
      bandwidth_(bandwidth) {
  if (half_count < 1) throw ValidationError("frequency grid needs M >= 1");
  if (oversampling < 1) throw ValidationError("oversampling d must be >= 1");
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw ValidationError("bandwidth N must be finite and > 0");
  }
  mesh_ = bandwidth / (static_cast<double>(oversampling) * half_count);
}

double default_bandwidth(int half_count, double half_width) {
  return pi * half_count / half_width;
}

double bessel_multiplier(double xi_norm, SobolevOrder s) {
  if (s.value() == 0.0) return 1.0;
  return std::pow(1.0 + xi_norm * xi_norm, -s.value());
}

UniformDft::UniformDft(std::size_t length, double spacing)
    : n_(length), dx_(spacing), twiddle_(length) {
  if (length == 0) throw ValidationError("DFT length must be positive");
  for (std::size_t j = 0; j < n_; ++j) {
    const double t = -2.0 * pi * static_cast<double>(j) / static_cast<double>(n_);
    twiddle_[j] = {std::cos(t), std::sin(t)};
  }
}

double UniformDft::frequency_mesh() const {
  return 2.0 * pi / (static_cast<double>(n_) * dx_);
}

double UniformDft::frequency(std::size_t k) const {
  const auto signed_k = (2 * k > n_) ? static_cast<double>(k) - static_cast<double>(n_)
                                     : static_cast<double>(k);
  return signed_k * frequency_mesh();
}

void UniformDft::forward(std::span<const Complex> in,
                         std::span<Complex> out) const {
  for (std::size_t k = 0; k < n_; ++k) {
    Complex acc{0.0, 0.0};
    std::size_t idx = 0;
    for (std::size_t l = 0; l < n_; ++l) {
      acc += in[l] * twiddle_[idx];
      idx += k;
      if (idx >= n_) idx -= n_;
    }
    out[k] = acc;
  }
}

void UniformDft::inverse(std::span<const Complex> in,
                         std::span<Complex> out) const {
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t l = 0; l < n_; ++l) {
    Complex acc{0.0, 0.0};
    std::size_t idx = 0;
    for (std::size_t k = 0; k < n_; ++k) {
      acc += in[k] * std::conj(twiddle_[idx]);
      idx += l;
      if (idx >= n_) idx -= n_;
    }
    out[l] = acc * scale;
  }
}

Sinogram apply_embedding_adjoint_1d(const Sinogram& g, SobolevOrder s) {
  Sinogram out = g;
  if (s.value() == 0.0) return out;
  const auto n = static_cast<std::size_t>(g.row_length());
  const UniformDft dft(n, g.offset_step());
  parallel_for(static_cast<std::size_t>(g.rows()), [&](std::size_t j) {
    const std::span<const double> row(g.values.data() + j * n, n);
    const std::span<double> dst(out.values.data() + j * n, n);
    dft.apply_real(row, dst, [&](double sigma) { return bessel_multiplier(sigma, s); });
  });
  return out;
}

namespace {

double sobolev_weight(double xi2, double s) {
  return s == 0.0 ? 1.0 : std::pow(1.0 + xi2, s);
}

}  // namespace

double hs_inner(std::span<const double> u, std::span<const double> v,
                double spacing, double s) {
  if (u.size() != v.size()) throw GeometryMismatch("hs_inner: length mismatch");
  const UniformDft dft(u.size(), spacing);
  std::vector<Complex> a(u.begin(), u.end()), b(v.begin(), v.end());
  std::vector<Complex> fa(u.size()), fb(v.size());
  dft.forward(a, fa);
  dft.forward(b, fb);
  double acc = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double sigma = dft.frequency(k);
    acc += sobolev_weight(sigma * sigma, s) * (fa[k] * std::conj(fb[k])).real();
  }
  // (2 pi)^{-1} h_sigma dx^2 with h_sigma = 2 pi / (n dx)
  return acc * spacing / static_cast<double>(u.size());
}

double hs_norm(std::span<const double> u, double spacing, double s) {
  return std::sqrt(std::max(0.0, hs_inner(u, u, spacing, s)));
}

double hs_norm_2d(std::span<const double> u, std::size_t side, double spacing,
                  double s) {
  if (u.size() != side * side) throw GeometryMismatch("hs_norm_2d: not square");
  const UniformDft dft(side, spacing);
  std::vector<Complex> work(u.begin(), u.end());
  std::vector<Complex> line(side), spec(side);
  for (std::size_t r = 0; r < side; ++r) {
    dft.forward(std::span<const Complex>(work.data() + r * side, side), spec);
    std::copy(spec.begin(), spec.end(), work.begin() + static_cast<std::ptrdiff_t>(r * side));
  }
  double acc = 0.0;
  for (std::size_t c = 0; c < side; ++c) {
    for (std::size_t r = 0; r < side; ++r) line[r] = work[r * side + c];
    dft.forward(line, spec);
    const double sc = dft.frequency(c);
    for (std::size_t r = 0; r < side; ++r) {
      const double sr = dft.frequency(r);
      acc += sobolev_weight(sc * sc + sr * sr, s) * std::norm(spec[r]);
    }
  }
  const auto n = static_cast<double>(side);
  return std::sqrt(acc * spacing * spacing / (n * n));
}

}  // namespace ctreg
