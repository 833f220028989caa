#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ctreg {

enum class FilterFamily { tikhonov, tsvd };

/// A spectral regularization q_alpha with bound constants gamma, gamma_star
/// and qualification rho(lambda) = lambda^qualification_power.
struct RegularizerSpec {
  FilterFamily family = FilterFamily::tikhonov;
  double gamma = 1;
  double gamma_star = 1;
  double qualification_power = 1;

  static RegularizerSpec tikhonov();
  /// TSVD with qualification lambda^power; any power is admissible.
  static RegularizerSpec tsvd(double power = 3);
  double qualification(double lambda) const;
};

/// Tikhonov: 1/(lambda + alpha). TSVD: 1/lambda for lambda >= alpha, else 0.
double q_alpha(FilterFamily family, double alpha, double lambda);

/// r_alpha(lambda) = 1 - lambda q_alpha(lambda).
double r_alpha(FilterFamily family, double alpha, double lambda);

struct Definition1Report {
  double max_residual = 0;        // max |r_alpha(lambda)|
  double max_scaled_filter = 0;   // max alpha |q_alpha(lambda)|
  double max_qualification = 0;   // max |r_alpha| rho(lambda) / rho(alpha)
  bool pass = false;
};

/// Checks |r| <= gamma, |q| <= gamma_star / alpha and |r| rho <= gamma rho(alpha)
/// on every (alpha, lambda) pair with lambda in (0, a].
Definition1Report verify_definition1(const RegularizerSpec& spec, double a,
                                     std::span<const double> alphas,
                                     std::span<const double> lambdas);

/// Power-type diagonal testbed: s_j(A) = j^{-p}, s_j(E E*) = j^{-(1+2a)},
/// so T = E* A has t_j = j^{-p - (1+2a)/2}. The exact solution is
/// f_j = c j^{-decay}, normalized so sum j^{2 beta} f_j^2 = 1.
inline constexpr double kDecayMargin = 0.55;

struct DiagonalModel {
  int length = 2000;  // J
  double a_exp = 0.5;
  double p_exp = 1;
  double beta = 1;
  /// Defaults to beta + 1/2 + 0.05, just inside the source set.
  double decay = 0;

  DiagonalModel() = default;
  DiagonalModel(int length, double a_exp, double p_exp, double beta);

  void validate() const;
  double effective_decay() const;
  /// 1 + 2a + 2p.
  double smoothing_index() const;
  std::vector<double> singular_values() const;
  std::vector<double> solution() const;
  /// Norm of the solution tail beyond J, estimated by the integral test.
  double truncation_error() const;
};

struct DiagonalResult {
  double error = 0;
};

/// Solves the diagonal problem g = t f + delta eta, with eta a uniform
/// random unit vector drawn from `seed`, and returns ||f - q(t^2) t g||.
DiagonalResult solve_diagonal(const DiagonalModel& model,
                              const RegularizerSpec& spec, double delta,
                              double alpha, std::uint64_t seed);

struct RateRow {
  double delta = 0;
  double alpha = 0;
  double mean_error = 0;
  double std_error = 0;
};

struct RateResult {
  std::vector<RateRow> rows;
  double slope = 0;
  double expected = 0;
  /// Ratio of the truncation error to the smallest mean error.
  double truncation_ratio = 0;
};

/// Runs solve_diagonal over a delta grid with the a-priori rule and fits
/// the log-log slope of mean error against delta.
RateResult rate_experiment(const DiagonalModel& model,
                           const RegularizerSpec& spec,
                           std::span<const double> deltas, int trials,
                           std::uint64_t seed = 0);

/// 2 beta / (2 beta + 1 + 2a + 2p).
double expected_rate(double a_exp, double p_exp, double beta);

/// Least-squares slope of y against x.
double fit_slope(std::span<const double> x, std::span<const double> y);

}  // namespace ctreg
