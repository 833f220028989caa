#pragma once

#include <string>
#include <vector>

#include "ctreg/fourier_recon.hpp"

namespace ctreg {

/// Log-spaced alpha values.
struct AlphaGrid {
  double min = 1e-12;
  double max = 10;
  int count = 27;

  void validate() const;
  std::vector<double> values() const;
  /// Parses "lo:hi:n".
  static AlphaGrid parse(const std::string& text);
};

/// ||E*(R f) - E*(y_delta)||^2 in the weighted discrete L^2 of the data.
double discrepancy(const Image2D& f, const Sinogram& y_delta, SobolevOrder s);

struct LCurveRow {
  double alpha = 0;
  double residual2 = 0;
  double norm2 = 0;
  double objective = 0;  // J_F
};

struct LCurveResult {
  double best_alpha = 0;
  std::vector<LCurveRow> rows;  // ascending alpha
};

/// Minimizes J_F(alpha) = discrepancy * ||f_alpha||^2 over the given
/// alphas; ties go to the larger alpha.
LCurveResult modified_lcurve(const Sinogram& y, const ReconConfig& base,
                             const std::vector<double>& alphas, int half_count,
                             double half_width);
LCurveResult modified_lcurve(const Reconstructor& recon, const Sinogram& y,
                             const std::vector<double>& alphas);

/// Balances alpha^{beta/(1+2a+2p)} against delta/sqrt(alpha).
double apriori_alpha(double delta, double a_exp, double p_exp, double beta);

}  // namespace ctreg
