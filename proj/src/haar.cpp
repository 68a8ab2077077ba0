#include "dyadic_tent/haar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dyadic_tent {

StepFunction::StepFunction(unsigned depth, std::vector<double> values)
    : depth_(depth), values_(std::move(values)) {
  if (depth > 30) throw std::invalid_argument("step function depth is limited to 30");
  if (values_.size() != (std::size_t{1} << depth))
    throw std::invalid_argument("step function of depth " + std::to_string(depth) + " needs " +
                                std::to_string(std::size_t{1} << depth) + " values, got " +
                                std::to_string(values_.size()));
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("step function values must be finite");
}

StepFunction StepFunction::constant(unsigned depth, double value) {
  return {depth, std::vector<double>(std::size_t{1} << depth, value)};
}

double StepFunction::cell_length() const { return std::ldexp(1.0, -static_cast<int>(depth_)); }

void StepFunction::check_interval(const DyadicIndex& interval) const {
  if (interval.level() > depth_)
    throw std::domain_error("interval " + interval.to_string() + " is finer than the step function");
}

double StepFunction::integral(const DyadicIndex& interval) const {
  check_interval(interval);
  const std::size_t span = std::size_t{1} << (depth_ - interval.level());
  const std::size_t first = interval.position() * span;
  double sum = 0.0;
  for (std::size_t k = first; k < first + span; ++k) sum += values_[k];
  return sum * cell_length();
}

double StepFunction::average(const DyadicIndex& interval) const {
  return integral(interval) / interval.length();
}

double StepFunction::l2_norm() const {
  double sum = 0.0;
  for (double v : values_) sum += v * v;
  return std::sqrt(sum * cell_length());
}

double StepFunction::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

HaarExpansion haar_transform(const StepFunction& f) {
  HaarExpansion out;
  // integrals[k] holds the integral of f over the k-th interval of the current level.
  std::vector<double> integrals(f.values());
  for (double& v : integrals) v *= f.cell_length();
  for (unsigned level = f.depth(); level-- > 0;) {
    const double length = std::ldexp(1.0, -static_cast<int>(level));
    std::vector<double> coarser(integrals.size() / 2);
    for (std::size_t k = 0; k < coarser.size(); ++k) {
      const double left = integrals[2 * k];
      const double right = integrals[2 * k + 1];
      out.coefficients.set(DyadicIndex(level, k), (right - left) / length);
      coarser[k] = left + right;
    }
    integrals = std::move(coarser);
  }
  out.mean = integrals.front();
  return out;
}

StepFunction inverse_haar(const HaarExpansion& expansion, unsigned depth) {
  if (!expansion.coefficients.empty() && expansion.coefficients.depth() >= depth)
    throw std::domain_error("Haar coefficient at level " +
                            std::to_string(expansion.coefficients.depth()) +
                            " cannot be resolved at depth " + std::to_string(depth));
  std::vector<double> values{expansion.mean};
  for (unsigned level = 0; level < depth; ++level) {
    std::vector<double> finer(values.size() * 2);
    for (std::size_t k = 0; k < values.size(); ++k) {
      const double c = expansion.coefficients[DyadicIndex(level, k)];
      finer[2 * k] = values[k] - c;
      finer[2 * k + 1] = values[k] + c;
    }
    values = std::move(finer);
  }
  return {depth, std::move(values)};
}

double oscillation(const StepFunction& f, const DyadicIndex& interval, OscillationKind kind) {
  if (interval.level() > f.depth())
    throw std::domain_error("interval " + interval.to_string() + " is finer than the step function");
  const unsigned rel = f.depth() - interval.level();
  const std::size_t span = std::size_t{1} << rel;
  const std::size_t first = interval.position() * span;

  if (kind == OscillationKind::l2_haar) {
    // (1/|I|) sum_{J subset I} f_J^2 |J|, computed on the restriction of f to I.
    std::vector<double> local(f.values().begin() + static_cast<std::ptrdiff_t>(first),
                              f.values().begin() + static_cast<std::ptrdiff_t>(first + span));
    const auto expansion = haar_transform(StepFunction(rel, std::move(local)));
    double sum = 0.0;
    for (const auto& [j, c] : expansion.coefficients) sum += c * c * j.length();
    return std::sqrt(sum);
  }

  double mean = 0.0;
  for (std::size_t k = first; k < first + span; ++k) mean += f[k];
  mean /= static_cast<double>(span);
  double acc = 0.0;
  for (std::size_t k = first; k < first + span; ++k) {
    const double d = f[k] - mean;
    acc += kind == OscillationKind::l1 ? std::abs(d) : d * d;
  }
  acc /= static_cast<double>(span);
  return kind == OscillationKind::l1 ? acc : std::sqrt(acc);
}

HaarIdentityReport haar_osc_identity_check(const StepFunction& f, const DyadicIndex& interval,
                                           double tolerance) {
  if (interval.level() + 1 > f.depth())
    throw std::domain_error("identity needs the children of " + interval.to_string());
  auto weighted = [&](const DyadicIndex& j) {
    const double osc = oscillation(f, j, OscillationKind::l2_direct);
    return j.length() * osc * osc;
  };
  const auto expansion = haar_transform(f);
  const double c = expansion.coefficients[interval];

  HaarIdentityReport r;
  r.coefficient_term = c * c * interval.length();
  r.oscillation_term =
      weighted(interval) - weighted(interval.right_child()) - weighted(interval.left_child());
  r.holds = std::abs(r.coefficient_term - r.oscillation_term) <= tolerance &&
            r.oscillation_term >= -tolerance;
  return r;
}

DyadicSequence jn_oscillation_sequence(const StepFunction& f, double p, JnKind kind) {
  const auto osc_kind = kind == JnKind::l1 ? OscillationKind::l1 : OscillationKind::l2_direct;
  DyadicSequence g;
  for (unsigned level = 0; level <= f.depth(); ++level) {
    const double weight = std::pow(std::ldexp(1.0, -static_cast<int>(level)), 1.0 / p);
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << level); ++k) {
      const DyadicIndex index(level, k);
      g.set(index, oscillation(f, index, osc_kind) * weight);
    }
  }
  return g;
}

NormReport jnp_dyadic_norm(const StepFunction& f, const Exponent& p, JnKind kind) {
  if (p.is_infinite() || p.value() <= 1.0)
    throw std::domain_error("dyadic JN_p is defined for 1 < p < inf, got p = " + p.to_string());
  return xpq_norm(jn_oscillation_sequence(f, p.value(), kind), p, Exponent::infinity());
}

bool satisfies_osc2_growth(const DyadicSequence& g, double p, double tolerance) {
  const double factor = std::pow(2.0, 1.0 / p - 0.5);
  std::vector<DyadicIndex> nodes;
  for (const auto& [index, _] : g)
    for (unsigned level = 0; level <= index.level(); ++level) nodes.push_back(index.ancestor(level));
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  for (const auto& index : nodes) {
    const double rhs = factor * std::hypot(g[index.right_child()], g[index.left_child()]);
    if (g[index] < rhs - tolerance) return false;
  }
  return true;
}

SquareFunctionReport square_function_and_slinfty(const StepFunction& f) {
  const auto expansion = haar_transform(f);
  const unsigned depth = f.depth();
  std::vector<double> squares(f.size(), 0.0);
  for (const auto& [index, c] : expansion.coefficients) {
    const std::size_t span = std::size_t{1} << (depth - index.level());
    const std::size_t first = index.position() * span;
    for (std::size_t k = first; k < first + span; ++k) squares[k] += c * c;
  }
  SquareFunctionReport r;
  for (double& s : squares) {
    s = std::sqrt(s);
    r.sl_infinity = std::max(r.sl_infinity, s);
  }
  r.square = StepFunction(depth, std::move(squares));
  r.cone_value = xpq_norm(expansion.coefficients, Exponent::infinity(), Exponent(2.0)).value;
  return r;
}

StepFunction haar_multiplier_apply(const DyadicSequence& a, const StepFunction& f) {
  if (!a.empty() && a.depth() >= f.depth())
    throw std::domain_error("multiplier entry at level " + std::to_string(a.depth()) +
                            " is not resolved by a step function of depth " +
                            std::to_string(f.depth()));
  const auto expansion = haar_transform(f);
  HaarExpansion image;
  for (const auto& [index, a_i] : a)
    image.coefficients.set(index, a_i * expansion.coefficients[index] / std::sqrt(index.length()));
  return inverse_haar(image, f.depth());
}

MultiplierNormReport haar_multiplier_norm(const DyadicSequence& a) {
  MultiplierNormReport r;
  const auto norm = xpq_norm(a, Exponent(2.0), Exponent::infinity());
  r.value = norm.value;
  r.witness = norm.witness;

  HaarExpansion extremal;
  for (const auto& index : r.witness) extremal.coefficients.set(index, 1.0);
  if (extremal.coefficients.empty()) extremal.coefficients.set(DyadicIndex::root(), 1.0);
  r.extremal = inverse_haar(extremal, a.depth() + 1);

  const double sl = square_function_and_slinfty(r.extremal).sl_infinity;
  r.rayleigh = haar_multiplier_apply(a, r.extremal).l2_norm() / sl;
  return r;
}

}  // namespace dyadic_tent
