#pragma once

#include <vector>

#include "ctreg/grid_fourier.hpp"
#include "ctreg/phantom.hpp"
#include "ctreg/radon.hpp"

namespace ctreg {

/// Estimates of F_2 y at (xi/|xi|, |xi|) and (-xi/|xi|, -|xi|) on the
/// Cartesian frequency grid.
struct PolarSpectrum {
  FrequencyGrid2D grid;
  std::vector<Complex> plus_branch;
  std::vector<Complex> minus_branch;

  explicit PolarSpectrum(const FrequencyGrid2D& grid);
};

struct ReconConfig {
  SobolevOrder s{1.2};
  double alpha = 0;
  int oversampling = 2;  // d
  /// Frequency bandwidth N; <= 0 selects pi M / tau.
  double bandwidth = 0;
  int dimension = 2;  // n, only enters the filter denominator

  void validate() const;
};

/// Angular interpolation between two neighbouring beams of a full-turn
/// sinogram: y(phi) ~ a y(theta_K) + b y(theta_{K+1}).
struct BeamWeights {
  int lower = 0;  // K
  int upper = 0;  // K + 1 modulo 2p
  double a = 1;
  double b = 0;
};

/// Neighbouring beams of the polar angle phi in [0, 2 pi) for p beams per
/// half turn.
BeamWeights beam_weights(double phi, int angles);

/// Resamples a full-turn sinogram onto the Cartesian frequency grid via
/// angular interpolation and a direct radial DFT.
PolarSpectrum polar_resample(const Sinogram& extended,
                             const FrequencyGrid2D& grid);

/// 2 + alpha (2 pi)^{1-n} |xi|^{n-1} (1 + |xi|^2)^s.
double tikhonov_denominator(double xi_norm, double alpha, SobolevOrder s,
                            int dimension = 2);

/// Pointwise Fourier-domain Tikhonov minimizer.
std::vector<Complex> tikhonov_filter(const PolarSpectrum& spectrum,
                                     const ReconConfig& cfg);

struct SynthesisResult {
  Image2D image;
  /// Discrete L^2 norm of the discarded imaginary part.
  double imaginary_norm = 0;
};

/// f_m = h_xi^2 (2 pi)^{-2} sum_k e^{i x_m . xi_k} F_k, evaluated as two
/// separable direct sums; returns the real part.
SynthesisResult synthesize_image(const std::vector<Complex>& spectrum,
                                 const FrequencyGrid2D& grid, int half_count,
                                 double half_width);

FrequencyGrid2D recon_grid(const ReconConfig& cfg, int half_count,
                           double half_width);

/// Fourier-based Tikhonov reconstruction of a half-turn sinogram.
Image2D reconstruct(const Sinogram& y, const ReconConfig& cfg, int half_count,
                    double half_width);

/// Holds the polar spectrum of one data set so that several alphas can be
/// reconstructed without repeating the resampling step.
class Reconstructor {
 public:
  Reconstructor(const Sinogram& y, const ReconConfig& base, int half_count,
                double half_width);

  SynthesisResult run(double alpha) const;
  const PolarSpectrum& spectrum() const { return spectrum_; }
  const ReconConfig& config() const { return base_; }

 private:
  ReconConfig base_;
  int half_count_;
  double half_width_;
  PolarSpectrum spectrum_;
};

/// Filtered backprojection: band-limited ramp filter |sigma| with a hard
/// cutoff, applied by spatial convolution along the offset, then
/// backprojection scaled by 1/(2 pi) over the half turn.
Image2D fbp_baseline(const Sinogram& y, int half_count, double half_width,
                     double cutoff);

/// Spatial kernel of the ramp filter band-limited to |sigma| <= cutoff.
double ramp_kernel(double offset, double cutoff);

}  // namespace ctreg
