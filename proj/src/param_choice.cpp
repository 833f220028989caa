#include "ctreg/param_choice.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "ctreg/error.hpp"
#include "ctreg/parallel.hpp"

namespace ctreg {

void AlphaGrid::validate() const {
  if (!(min > 0.0 && max > 0.0) || !std::isfinite(min) || !std::isfinite(max)) {
    throw ValidationError("alpha grid bounds must be finite and > 0");
  }
  if (count < 1) throw ValidationError("alpha grid needs at least one point");
  if (count >= 2 && !(min < max)) throw ValidationError("alpha grid needs lo < hi");
}

std::vector<double> AlphaGrid::values() const {
  validate();
  if (count == 1) return {min};
  std::vector<double> out(static_cast<std::size_t>(count));
  const double lo = std::log10(min), hi = std::log10(max);
  for (int i = 0; i < count; ++i) {
    out[i] = std::pow(10.0, lo + (hi - lo) * i / (count - 1));
  }
  out.front() = min;
  out.back() = max;
  return out;
}

AlphaGrid AlphaGrid::parse(const std::string& text) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? first : text.find(':', first + 1);
  if (second == std::string::npos) {
    throw ValidationError("alpha grid must look like lo:hi:n, got '" + text + "'");
  }
  AlphaGrid grid;
  try {
    std::size_t used = 0;
    const std::string lo = text.substr(0, first);
    const std::string hi = text.substr(first + 1, second - first - 1);
    const std::string n = text.substr(second + 1);
    grid.min = std::stod(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(lo);
    grid.max = std::stod(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(hi);
    grid.count = std::stoi(n, &used);
    if (used != n.size()) throw std::invalid_argument(n);
  } catch (const std::logic_error&) {
    throw ValidationError("alpha grid must look like lo:hi:n, got '" + text + "'");
  }
  grid.validate();
  return grid;
}

double discrepancy(const Image2D& f, const Sinogram& y_delta, SobolevOrder s) {
  if (y_delta.full_turn) throw GeometryMismatch("discrepancy expects a half-turn sinogram");
  Sinogram residual = project(f, y_delta.angles, y_delta.half_offsets, y_delta.radius);
  for (std::size_t i = 0; i < residual.values.size(); ++i) {
    residual.values[i] -= y_delta.values[i];
  }
  const Sinogram filtered = apply_embedding_adjoint_1d(residual, s);
  return inner_product(filtered, filtered);
}

LCurveResult modified_lcurve(const Reconstructor& recon, const Sinogram& y,
                             const std::vector<double>& alphas) {
  if (alphas.empty()) throw ValidationError("L-curve needs at least one alpha");
  std::vector<double> sorted = alphas;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (double a : sorted) {
    if (!(a >= 0.0) || !std::isfinite(a)) throw ValidationError("alpha values must be finite and >= 0");
  }
  LCurveResult result;
  result.rows.resize(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const Image2D f = recon.run(sorted[i]).image;
    LCurveRow& row = result.rows[i];
    row.alpha = sorted[i];
    row.residual2 = discrepancy(f, y, recon.config().s);
    const double norm = f.l2_norm();
    row.norm2 = norm * norm;
    row.objective = row.residual2 * row.norm2;
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < result.rows.size(); ++i) {
    if (result.rows[i].objective <= result.rows[best].objective) best = i;
  }
  result.best_alpha = result.rows[best].alpha;
  return result;
}

LCurveResult modified_lcurve(const Sinogram& y, const ReconConfig& base,
                             const std::vector<double>& alphas, int half_count,
                             double half_width) {
  const Reconstructor recon(y, base, half_count, half_width);
  return modified_lcurve(recon, y, alphas);
}

double apriori_alpha(double delta, double a_exp, double p_exp, double beta) {
  if (!(delta > 0.0 && a_exp > 0.0 && p_exp > 0.0 && beta > 0.0)) {
    throw ValidationError("a-priori rule needs positive delta, a, p, beta");
  }
  const double mu = 1.0 + 2.0 * a_exp + 2.0 * p_exp;
  return std::pow(delta, 2.0 * mu / (2.0 * beta + mu));
}

}  // namespace ctreg
