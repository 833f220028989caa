#include "ctreg/spectral_reg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "ctreg/error.hpp"
#include "ctreg/param_choice.hpp"

namespace ctreg {

RegularizerSpec RegularizerSpec::tikhonov() { return {FilterFamily::tikhonov, 1, 1, 1}; }

RegularizerSpec RegularizerSpec::tsvd(double power) {
  return {FilterFamily::tsvd, 1, 1, power};
}

double RegularizerSpec::qualification(double lambda) const {
  return std::pow(lambda, qualification_power);
}

double q_alpha(FilterFamily family, double alpha, double lambda) {
  switch (family) {
    case FilterFamily::tikhonov:
      return 1.0 / (lambda + alpha);
    case FilterFamily::tsvd:
      return lambda >= alpha ? 1.0 / lambda : 0.0;
  }
  return 0.0;
}

double r_alpha(FilterFamily family, double alpha, double lambda) {
  switch (family) {
    case FilterFamily::tikhonov:
      return alpha / (lambda + alpha);
    case FilterFamily::tsvd:
      return lambda >= alpha ? 0.0 : 1.0;
  }
  return 1.0;
}

Definition1Report verify_definition1(const RegularizerSpec& spec, double a,
                                     std::span<const double> alphas,
                                     std::span<const double> lambdas) {
  Definition1Report report;
  bool ok = true;
  for (double alpha : alphas) {
    const double rho_alpha = spec.qualification(alpha);
    for (double lambda : lambdas) {
      if (!(lambda > 0.0 && lambda <= a)) continue;
      const double r = std::abs(r_alpha(spec.family, alpha, lambda));
      const double q = std::abs(q_alpha(spec.family, alpha, lambda));
      const double qual = r * spec.qualification(lambda);
      report.max_residual = std::max(report.max_residual, r);
      report.max_scaled_filter = std::max(report.max_scaled_filter, alpha * q);
      report.max_qualification = std::max(report.max_qualification, qual / rho_alpha);
      ok = ok && r <= spec.gamma && q <= spec.gamma_star / alpha &&
           qual <= spec.gamma * rho_alpha;
    }
  }
  report.pass = ok;
  return report;
}

DiagonalModel::DiagonalModel(int length, double a_exp, double p_exp, double beta)
    : length(length), a_exp(a_exp), p_exp(p_exp), beta(beta) {}

void DiagonalModel::validate() const {
  if (length < 1) throw ValidationError("diagonal model needs J >= 1");
  if (!(a_exp > 0.0 && p_exp > 0.0 && beta > 0.0)) {
    throw ValidationError("diagonal model exponents a, p, beta must be > 0");
  }
  if (decay != 0.0 && !(decay > beta + 0.5)) {
    throw ValidationError("solution decay must be > beta + 1/2");
  }
}

double DiagonalModel::effective_decay() const {
  return decay > 0.0 ? decay : beta + kDecayMargin;
}

double DiagonalModel::smoothing_index() const { return 1.0 + 2.0 * a_exp + 2.0 * p_exp; }

std::vector<double> DiagonalModel::singular_values() const {
  std::vector<double> t(static_cast<std::size_t>(length));
  for (int j = 1; j <= length; ++j) {
    t[j - 1] = std::pow(static_cast<double>(j), -p_exp - 0.5 * (1.0 + 2.0 * a_exp));
  }
  return t;
}

std::vector<double> DiagonalModel::solution() const {
  const double e = effective_decay();
  std::vector<double> f(static_cast<std::size_t>(length));
  double source = 0.0;
  for (int j = 1; j <= length; ++j) {
    const double jj = j;
    f[j - 1] = std::pow(jj, -e);
    source += std::pow(jj, 2.0 * beta) * f[j - 1] * f[j - 1];
  }
  const double c = 1.0 / std::sqrt(source);
  for (double& v : f) v *= c;
  return f;
}

double DiagonalModel::truncation_error() const {
  const double e = effective_decay();
  const auto f = solution();
  const double c = f[0];  // f_1 = c
  // sum_{j > J} j^{-2e} <= integral_J^inf x^{-2e} dx
  return c * std::sqrt(std::pow(static_cast<double>(length), 1.0 - 2.0 * e) / (2.0 * e - 1.0));
}

DiagonalResult solve_diagonal(const DiagonalModel& model,
                              const RegularizerSpec& spec, double delta,
                              double alpha, std::uint64_t seed) {
  model.validate();
  if (!(delta >= 0.0)) throw ValidationError("delta must be >= 0");
  if (!(alpha > 0.0)) throw ValidationError("alpha must be > 0");
  const auto t = model.singular_values();
  const auto f = model.solution();
  const auto n = t.size();
  std::vector<double> eta(n, 0.0);
  if (delta > 0.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    double norm2 = 0.0;
    for (double& v : eta) {
      v = normal(rng);
      norm2 += v * v;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& v : eta) v *= inv;
  }
  double err2 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double g = t[j] * f[j] + delta * eta[j];
    const double est = q_alpha(spec.family, alpha, t[j] * t[j]) * t[j] * g;
    err2 += (f[j] - est) * (f[j] - est);
  }
  return {std::sqrt(err2)};
}

double expected_rate(double a_exp, double p_exp, double beta) {
  return 2.0 * beta / (2.0 * beta + 1.0 + 2.0 * a_exp + 2.0 * p_exp);
}

double fit_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ValidationError("slope fit needs at least two points");
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw ValidationError("slope fit needs distinct abscissae");
  return sxy / sxx;
}

RateResult rate_experiment(const DiagonalModel& model,
                           const RegularizerSpec& spec,
                           std::span<const double> deltas, int trials,
                           std::uint64_t seed) {
  model.validate();
  if (deltas.size() < 2) throw ValidationError("rate experiment needs a delta grid of >= 2 points");
  if (trials < 1) throw ValidationError("rate experiment needs >= 1 trial");
  for (double d : deltas) {
    if (!(d > 0.0)) throw ValidationError("rate experiment deltas must be > 0");
  }
  RateResult result;
  result.expected = expected_rate(model.a_exp, model.p_exp, model.beta);
  std::vector<double> log_delta, log_error;
  double min_error = std::numeric_limits<double>::infinity();
  for (double delta : deltas) {
    RateRow row;
    row.delta = delta;
    row.alpha = apriori_alpha(delta, model.a_exp, model.p_exp, model.beta);
    std::vector<double> errors;
    for (int trial = 0; trial < trials; ++trial) {
      errors.push_back(solve_diagonal(model, spec, delta, row.alpha,
                                      seed + static_cast<std::uint64_t>(trial))
                           .error);
    }
    row.mean_error = std::accumulate(errors.begin(), errors.end(), 0.0) / trials;
    double var = 0.0;
    for (double e : errors) var += (e - row.mean_error) * (e - row.mean_error);
    row.std_error = trials > 1 ? std::sqrt(var / (trials - 1)) : 0.0;
    min_error = std::min(min_error, row.mean_error);
    log_delta.push_back(std::log(delta));
    log_error.push_back(std::log(row.mean_error));
    result.rows.push_back(row);
  }
  if (*std::max_element(log_delta.begin(), log_delta.end()) ==
      *std::min_element(log_delta.begin(), log_delta.end())) {
    throw ValidationError("rate experiment delta grid is degenerate");
  }
  result.slope = fit_slope(log_delta, log_error);
  result.truncation_ratio = model.truncation_error() / min_error;
  return result;
}

}  // namespace ctreg
