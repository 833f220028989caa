#include "ctreg/fourier_recon.hpp"

#include <cmath>
#include <numbers>

#include "ctreg/error.hpp"
#include "ctreg/parallel.hpp"

namespace ctreg {

using std::numbers::pi;

PolarSpectrum::PolarSpectrum(const FrequencyGrid2D& grid)
    : grid(grid), plus_branch(grid.size()), minus_branch(grid.size()) {}

void ReconConfig::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw ValidationError("alpha must be finite and >= 0");
  }
  if (oversampling < 1) throw ValidationError("oversampling d must be >= 1");
  if (bandwidth < 0.0 || !std::isfinite(bandwidth)) {
    throw ValidationError("bandwidth N must be finite and > 0");
  }
  if (dimension != 2) throw ValidationError("only n = 2 is supported");
}

BeamWeights beam_weights(double phi, int angles) {
  const int turn = 2 * angles;
  const double step = pi / angles;
  int lower = static_cast<int>(std::floor(phi / step));
  if (lower >= turn) lower = turn - 1;
  if (lower < 0) lower = 0;
  BeamWeights w;
  w.lower = lower;
  w.upper = (lower + 1) % turn;
  w.a = ((lower + 1) * step - phi) / step;
  w.b = (phi - lower * step) / step;
  return w;
}

namespace {

double polar_angle(double x, double y) {
  double phi = std::atan2(y, x);
  if (phi < 0.0) phi += 2.0 * pi;
  if (phi >= 2.0 * pi) phi -= 2.0 * pi;
  return phi;
}

// (rho/q) sum_l e^{-i sign r kappa_l} (a y_K,l + b y_K+1,l), with
// phases[l] = e^{-i r kappa_l} for l >= 0.
Complex radial_sum(const Sinogram& y, const BeamWeights& w,
                   const std::vector<Complex>& phases, double sign) {
  const int q = y.half_offsets;
  const double* lo = y.values.data() + y.index(w.lower, 0);
  const double* hi = y.values.data() + y.index(w.upper, 0);
  Complex acc{w.a * lo[0] + w.b * hi[0], 0.0};
  for (int l = 1; l <= q; ++l) {
    const double pos = w.a * lo[l] + w.b * hi[l];
    const double neg = w.a * lo[-l] + w.b * hi[-l];
    const Complex e = phases[l];
    // e^{-i s r kappa_l} for +l and its conjugate for -l
    const Complex ep = sign > 0 ? e : std::conj(e);
    acc += pos * ep + neg * std::conj(ep);
  }
  return acc * y.offset_step();
}

}  // namespace

PolarSpectrum polar_resample(const Sinogram& extended,
                             const FrequencyGrid2D& grid) {
  if (!extended.full_turn) {
    throw ValidationError("polar_resample expects a sinogram extended to 2p angles");
  }
  PolarSpectrum spectrum(grid);
  const int radius = grid.radius();
  const int q = extended.half_offsets;
  const double dk = extended.offset_step();

  double zero = 0.0;
  for (int j = 0; j < extended.angles; ++j) {
    double row = 0.0;
    for (int l = -q; l <= q; ++l) row += extended.at(j, l);
    zero += row * dk;
  }
  zero /= extended.angles;

  parallel_for(static_cast<std::size_t>(grid.nodes_per_axis()), [&](std::size_t r) {
    const int k2 = static_cast<int>(r) - radius;
    std::vector<Complex> phases(static_cast<std::size_t>(q) + 1);
    for (int k1 = -radius; k1 <= radius; ++k1) {
      const std::size_t idx = grid.index(k1, k2);
      if (k1 == 0 && k2 == 0) {
        spectrum.plus_branch[idx] = zero;
        spectrum.minus_branch[idx] = zero;
        continue;
      }
      const double x = grid.node(k1), y = grid.node(k2);
      const double rad = std::hypot(x, y);
      for (int l = 0; l <= q; ++l) phases[l] = std::polar(1.0, -rad * l * dk);
      const double phi = polar_angle(x, y);
      const double phi_opposite = polar_angle(-x, -y);
      spectrum.plus_branch[idx] =
          radial_sum(extended, beam_weights(phi, extended.angles), phases, 1.0);
      spectrum.minus_branch[idx] =
          radial_sum(extended, beam_weights(phi_opposite, extended.angles), phases, -1.0);
    }
  });
  return spectrum;
}

double tikhonov_denominator(double xi_norm, double alpha, SobolevOrder s,
                            int dimension) {
  const double n = dimension;
  if (alpha == 0.0 || xi_norm == 0.0) return 2.0;
  return 2.0 + alpha * std::pow(2.0 * pi, 1.0 - n) * std::pow(xi_norm, n - 1.0) *
                   std::pow(1.0 + xi_norm * xi_norm, s.value());
}

std::vector<Complex> tikhonov_filter(const PolarSpectrum& spectrum,
                                     const ReconConfig& cfg) {
  cfg.validate();
  if (spectrum.plus_branch.size() != spectrum.grid.size() ||
      spectrum.minus_branch.size() != spectrum.grid.size()) {
    throw GeometryMismatch("spectrum branches do not match the grid");
  }
  const auto& grid = spectrum.grid;
  const int radius = grid.radius();
  std::vector<Complex> out(grid.size());
  for (int k2 = -radius; k2 <= radius; ++k2) {
    for (int k1 = -radius; k1 <= radius; ++k1) {
      const std::size_t idx = grid.index(k1, k2);
      const double xi = std::hypot(grid.node(k1), grid.node(k2));
      out[idx] = (spectrum.plus_branch[idx] + spectrum.minus_branch[idx]) /
                 tikhonov_denominator(xi, cfg.alpha, cfg.s, cfg.dimension);
    }
  }
  return out;
}

SynthesisResult synthesize_image(const std::vector<Complex>& spectrum,
                                 const FrequencyGrid2D& grid, int half_count,
                                 double half_width) {
  if (spectrum.size() != grid.size()) throw GeometryMismatch("spectrum size does not match the grid");
  SynthesisResult result{Image2D(half_count, half_width), 0.0};
  Image2D& image = result.image;
  const int side = image.side();
  const int nk = grid.nodes_per_axis();
  const int radius = grid.radius();

  // phase[m][k] = e^{i x_m xi_k}
  std::vector<Complex> phase(static_cast<std::size_t>(side) * nk);
  for (int m = 0; m < side; ++m) {
    const double x = image.node(m - half_count);
    for (int k = 0; k < nk; ++k) {
      phase[static_cast<std::size_t>(m) * nk + k] = std::polar(1.0, x * grid.node(k - radius));
    }
  }

  // partial[k2][m1] = sum_k1 e^{i x_m1 xi_k1} F(k1, k2)
  std::vector<Complex> partial(static_cast<std::size_t>(nk) * side);
  parallel_for(static_cast<std::size_t>(nk), [&](std::size_t k2) {
    const Complex* row = spectrum.data() + k2 * nk;
    for (int m1 = 0; m1 < side; ++m1) {
      const Complex* ph = phase.data() + static_cast<std::size_t>(m1) * nk;
      Complex acc{0.0, 0.0};
      for (int k1 = 0; k1 < nk; ++k1) acc += ph[k1] * row[k1];
      partial[k2 * side + m1] = acc;
    }
  });

  const double h = grid.mesh();
  const double scale = h * h / (4.0 * pi * pi);
  std::vector<double> imag(image.values.size());
  parallel_for(static_cast<std::size_t>(side), [&](std::size_t m2) {
    const Complex* ph = phase.data() + m2 * nk;
    for (int m1 = 0; m1 < side; ++m1) {
      Complex acc{0.0, 0.0};
      for (int k2 = 0; k2 < nk; ++k2) acc += ph[k2] * partial[static_cast<std::size_t>(k2) * side + m1];
      acc *= scale;
      image.values[m2 * side + m1] = acc.real();
      imag[m2 * side + m1] = acc.imag();
    }
  });
  double acc = 0.0;
  for (double v : imag) acc += v * v;
  result.imaginary_norm = std::sqrt(acc) * image.mesh();
  return result;
}

FrequencyGrid2D recon_grid(const ReconConfig& cfg, int half_count,
                           double half_width) {
  cfg.validate();
  const double bandwidth =
      cfg.bandwidth > 0.0 ? cfg.bandwidth : default_bandwidth(half_count, half_width);
  return FrequencyGrid2D(half_count, cfg.oversampling, bandwidth);
}

Reconstructor::Reconstructor(const Sinogram& y, const ReconConfig& base,
                             int half_count, double half_width)
    : base_(base), half_count_(half_count), half_width_(half_width),
      spectrum_(recon_grid(base, half_count, half_width)) {
  spectrum_ = polar_resample(y.full_turn ? y : extend_half_turn(y), spectrum_.grid);
}

SynthesisResult Reconstructor::run(double alpha) const {
  ReconConfig cfg = base_;
  cfg.alpha = alpha;
  return synthesize_image(tikhonov_filter(spectrum_, cfg), spectrum_.grid,
                          half_count_, half_width_);
}

Image2D reconstruct(const Sinogram& y, const ReconConfig& cfg, int half_count,
                    double half_width) {
  return Reconstructor(y, cfg, half_count, half_width).run(cfg.alpha).image;
}

double ramp_kernel(double offset, double cutoff) {
  const double u = cutoff * offset;
  const double b2 = cutoff * cutoff / pi;
  if (std::abs(u) < 1e-4) return b2 * (0.5 - u * u / 8.0);
  return b2 * (std::sin(u) / u + (std::cos(u) - 1.0) / (u * u));
}

Image2D fbp_baseline(const Sinogram& y, int half_count, double half_width,
                     double cutoff) {
  if (y.full_turn) throw ValidationError("fbp_baseline expects a half-turn sinogram");
  const double nyquist = pi / y.offset_step();
  if (!(cutoff > 0.0) || cutoff > nyquist * (1.0 + 1e-12)) {
    throw ValidationError("fbp cutoff must lie in (0, pi q / rho]");
  }
  const int q = y.half_offsets;
  const int n = y.row_length();
  const double dk = y.offset_step();
  std::vector<double> kernel(static_cast<std::size_t>(2 * n - 1));
  for (int d = -(n - 1); d <= n - 1; ++d) {
    kernel[static_cast<std::size_t>(d + n - 1)] = ramp_kernel(d * dk, cutoff) * dk;
  }
  Sinogram filtered(y.angles, q, y.radius);
  parallel_for(static_cast<std::size_t>(y.angles), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    for (int l = -q; l <= q; ++l) {
      double acc = 0.0;
      for (int m = -q; m <= q; ++m) {
        acc += kernel[static_cast<std::size_t>(l - m + n - 1)] * y.at(j, m);
      }
      filtered.at(j, l) = acc;
    }
  });
  Image2D image = backproject(filtered, half_count, half_width);
  for (double& v : image.values) v /= 2.0 * pi;
  return image;
}

}  // namespace ctreg
