#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ctreg {

struct Sinogram;

using Complex = std::complex<double>;

/// Order s >= 0 of the embedding L^2 -> H^{-s}.
class SobolevOrder {
 public:
  SobolevOrder() = default;
  explicit SobolevOrder(double s);
  double value() const { return s_; }

 private:
  double s_ = 0.0;
};

/// Cartesian frequency nodes xi_k = (k1 h, k2 h), k_I in [-dM, dM],
/// with mesh h = N / (d M).
class FrequencyGrid2D {
 public:
  FrequencyGrid2D(int half_count, int oversampling, double bandwidth);

  int half_count() const { return half_count_; }
  int oversampling() const { return oversampling_; }
  double bandwidth() const { return bandwidth_; }
  double mesh() const { return mesh_; }
  /// dM: largest |k_I|.
  int radius() const { return oversampling_ * half_count_; }
  /// 2dM + 1 nodes per axis.
  int nodes_per_axis() const { return 2 * radius() + 1; }
  std::size_t size() const {
    return static_cast<std::size_t>(nodes_per_axis()) * nodes_per_axis();
  }
  double node(int k) const { return k * mesh_; }
  /// Flat index of (k1, k2); k2 is the slow axis.
  std::size_t index(int k1, int k2) const {
    return static_cast<std::size_t>(k2 + radius()) * nodes_per_axis() +
           static_cast<std::size_t>(k1 + radius());
  }

 private:
  int half_count_;
  int oversampling_;
  double bandwidth_;
  double mesh_;
};

/// Nyquist bandwidth pi M / tau of a pixel grid with mesh tau / M.
double default_bandwidth(int half_count, double half_width);

/// (1 + |xi|^2)^{-s}.
double bessel_multiplier(double xi_norm, SobolevOrder s);

/// Exact O(n^2) DFT of uniformly sampled data with forward kernel
/// e^{-i x xi}. Frequencies follow the usual signed ordering: bin k maps to
/// 2 pi k' / (n dx) with k' in (-n/2, n/2].
class UniformDft {
 public:
  UniformDft(std::size_t length, double spacing);

  std::size_t length() const { return n_; }
  double spacing() const { return dx_; }
  /// Angular frequency of bin k.
  double frequency(std::size_t k) const;
  /// Frequency mesh 2 pi / (n dx).
  double frequency_mesh() const;

  /// X_k = sum_l x_l e^{-2 pi i k l / n} (unscaled).
  void forward(std::span<const Complex> in, std::span<Complex> out) const;
  /// x_l = (1/n) sum_k X_k e^{2 pi i k l / n}.
  void inverse(std::span<const Complex> in, std::span<Complex> out) const;

  /// Applies a real frequency multiplier m(|sigma|) to real data.
  template <class Multiplier>
  void apply_real(std::span<const double> in, std::span<double> out,
                  Multiplier&& m) const {
    std::vector<Complex> buf(in.begin(), in.end());
    std::vector<Complex> spec(n_);
    forward(buf, spec);
    for (std::size_t k = 0; k < n_; ++k) spec[k] *= m(std::abs(frequency(k)));
    inverse(spec, buf);
    for (std::size_t l = 0; l < n_; ++l) out[l] = buf[l].real();
  }

 private:
  std::size_t n_;
  double dx_;
  std::vector<Complex> twiddle_;  // e^{-2 pi i j / n}
};

/// Radial embedding adjoint: each angular row of g is filtered by
/// (1 + sigma^2)^{-s} in the discrete Fourier domain of length 2q+1.
Sinogram apply_embedding_adjoint_1d(const Sinogram& g, SobolevOrder s);

/// Discrete H^s norm of a uniformly sampled 1D signal:
/// (2 pi)^{-1} h_sigma sum_k (1 + sigma_k^2)^s |dx X_k|^2, square-rooted.
double hs_norm(std::span<const double> u, double spacing, double s);

/// Discrete H^s norm of a square field sampled with the same spacing on
/// both axes (row-major, side x side).
double hs_norm_2d(std::span<const double> u, std::size_t side, double spacing,
                  double s);

/// Discrete H^s inner product of two real 1D signals, same quadrature as
/// hs_norm.
double hs_inner(std::span<const double> u, std::span<const double> v,
                double spacing, double s);

}  // namespace ctreg
