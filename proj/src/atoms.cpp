#include "dyadic_tent/atoms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dyadic_tent {

ChainAtom ChainAtom::full_chain(double point, double lambda, unsigned depth, int sign) {
  ChainAtom atom{point, lambda, {}};
  for (unsigned level = 0; level <= depth; ++level) atom.signs[level] = sign;
  atom.validate();
  return atom;
}

void ChainAtom::validate() const {
  if (!(point >= 0.0 && point < 1.0)) throw std::invalid_argument("atom point must lie in [0,1)");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("atom weight lambda must be positive and finite");
  for (const auto& [level, sign] : signs) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("atom signs must be +1 or -1");
    if (level > kMaxLevel) throw std::invalid_argument("atom sign level out of range");
  }
}

DyadicSequence synthesize(const std::vector<ChainAtom>& atoms, unsigned depth) {
  DyadicSequence f;
  for (const auto& atom : atoms) {
    atom.validate();
    for (const auto& [level, sign] : atom.signs) {
      if (level > depth) break;
      f.add(atom.interval_at(level), sign * atom.lambda);
    }
  }
  return f;
}

namespace {

// a - b is representable exactly (Knuth's TwoSum error term vanishes).
bool exact_difference(double a, double b) {
  const double s = a - b;
  const double b_virtual = s - a;
  const double a_virtual = s - b_virtual;
  return (a - a_virtual) + (-b - b_virtual) == 0.0;
}

}  // namespace

Decomposition decompose_greedy(const DyadicSequence& f) {
  Decomposition out;
  DyadicSequence residual = f;
  std::vector<ChainAtom> peeled;

  while (!residual.empty()) {
    // Deepest level first, leftmost within it.
    const unsigned depth = residual.depth();
    const DyadicIndex anchor = residual.entries().lower_bound(DyadicIndex(depth, 0))->first;

    std::vector<DyadicIndex> chain;
    double lambda = std::abs(residual[anchor]);
    for (unsigned level = 0; level <= depth; ++level) {
      const DyadicIndex j = anchor.ancestor(level);
      const double v = residual[j];
      if (v == 0.0) continue;
      chain.push_back(j);
      lambda = std::min(lambda, std::abs(v));
    }

    ChainAtom atom{anchor.left(), lambda, {}};
    for (const auto& j : chain) {
      const double v = residual[j];
      // Members whose peeled residual would round are left for a later atom;
      // this keeps every residual, and hence the reverse-order synthesis, exact.
      if (!exact_difference(std::abs(v), lambda)) continue;
      const int sign = v > 0 ? 1 : -1;
      atom.signs[j.level()] = sign;
      residual.set(j, sign * (std::abs(v) - lambda));
    }
    peeled.push_back(std::move(atom));
  }

  out.atoms.assign(peeled.rbegin(), peeled.rend());
  for (const auto& atom : out.atoms) out.lambda_sum += atom.lambda;
  out.norm = xpq_norm(f, Exponent(1.0), Exponent::infinity()).value;
  out.ratio = out.norm > 0.0 ? out.lambda_sum / out.norm : 1.0;
  return out;
}

DyadicSequence power_scale_sequence(const std::vector<ChainAtom>& atoms, unsigned depth, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("power scale needs p >= 1");
  DyadicSequence out;
  for (const auto& [index, s] : synthesize(atoms, depth))
    out.set(index, std::copysign(std::pow(std::abs(s), 1.0 / p), s));
  return out;
}

double YoungFunction::operator()(double t) const {
  if (t < 0) throw std::domain_error("Young functions are evaluated on [0, inf)");
  switch (kind_) {
    case YoungKind::l_log_half: return t * std::sqrt(1.0 + std::max(0.0, std::log(t)));
    case YoungKind::exp_square: return std::expm1(t * t);
  }
  return 0.0;
}

std::string YoungFunction::name() const {
  return kind_ == YoungKind::l_log_half ? "t(1+log+t)^(1/2)" : "exp(t^2)-1";
}

bool check_young_function(const YoungFunction& phi, double t_max, int samples) {
  if (phi(0.0) != 0.0) return false;
  const double h = t_max / samples;
  double prev = phi(0.0);
  for (int i = 1; i <= samples; ++i) {
    const double t = i * h;
    const double v = phi(t);
    if (v < prev) return false;
    if (i < samples) {
      const double mid = 2.0 * v - phi(t - h) - phi(t + h);
      if (mid > 1e-9 * std::max(1.0, std::abs(v))) return false;
    }
    prev = v;
  }
  return true;
}

namespace {

double young_integral(const StepFunction& f, const YoungFunction& phi, double lambda) {
  double sum = 0.0;
  for (double v : f.values()) sum += phi(std::abs(v) / lambda);
  return sum * f.cell_length();
}

}  // namespace

double luxemburg_norm(const StepFunction& f, const YoungFunction& phi, double threshold) {
  const double top = f.sup_norm();
  if (top == 0.0) return 0.0;
  auto admissible = [&](double lambda) { return young_integral(f, phi, lambda) <= threshold; };

  double hi = top;
  while (!admissible(hi)) hi *= 2.0;
  double lo = hi;
  while (admissible(lo)) lo *= 0.5;
  while (hi - lo > kBisectionRelativeTolerance * hi) {
    const double mid = 0.5 * (lo + hi);
    (admissible(mid) ? hi : lo) = mid;
  }
  return hi;
}

EmbeddingReport embedding_checks(const StepFunction& f_in) {
  EmbeddingReport r;
  const auto expansion_in = haar_transform(f_in);
  StepFunction f = f_in;
  if (expansion_in.mean != 0.0) {
    r.mean_subtracted = true;
    r.removed_mean = expansion_in.mean;
    HaarExpansion centered{0.0, expansion_in.coefficients};
    f = inverse_haar(centered, f_in.depth());
  }
  const auto coefficients = expansion_in.coefficients;
  r.sl_infinity = square_function_and_slinfty(f).sl_infinity;

  if (r.sl_infinity > 0.0) {
    auto integral = [&](double c) {
      double sum = 0.0;
      for (double v : f.values()) sum += std::exp(c * v * v / (r.sl_infinity * r.sl_infinity));
      return sum * f.cell_length();
    };
    double hi = 1.0;
    while (integral(hi) <= kExpSquareThreshold) hi *= 2.0;
    double lo = 0.0;
    while (hi - lo > kBisectionRelativeTolerance * hi) {
      const double mid = 0.5 * (lo + hi);
      (integral(mid) <= kExpSquareThreshold ? lo : hi) = mid;
    }
    r.exp_square_constant = lo;
  }

  r.x12_norm = xpq_norm(coefficients, Exponent(1.0), Exponent(2.0)).value;
  r.l_log_half_norm = luxemburg_norm(f, YoungFunction(YoungKind::l_log_half));
  if (r.l_log_half_norm > 0.0) r.ratio = r.x12_norm / r.l_log_half_norm;
  return r;
}

}  // namespace dyadic_tent
