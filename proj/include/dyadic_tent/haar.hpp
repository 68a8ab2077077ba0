#pragma once

// L^inf-normalized Haar analysis of dyadic step functions on [0,1):
// h_I = 1_{I_r} - 1_{I_l}, f_I = <f, h_I> / |I|.

#include <vector>

#include "dyadic_tent/dyadic.hpp"
#include "dyadic_tent/xpq.hpp"

namespace dyadic_tent {

/// A function constant on each generation-`depth` interval.
class StepFunction {
public:
  StepFunction() : values_(1, 0.0) {}
  /// Throws std::invalid_argument unless values.size() == 2^depth.
  StepFunction(unsigned depth, std::vector<double> values);

  static StepFunction constant(unsigned depth, double value);

  unsigned depth() const { return depth_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t cell) const { return values_[cell]; }

  double cell_length() const;
  double integral(const DyadicIndex& interval) const;
  double average(const DyadicIndex& interval) const;
  double l2_norm() const;
  double sup_norm() const;

  bool operator==(const StepFunction&) const = default;

private:
  void check_interval(const DyadicIndex& interval) const;

  unsigned depth_ = 0;
  std::vector<double> values_;
};

struct HaarExpansion {
  double mean = 0.0;
  /// Coefficients f_I for levels < depth of the transformed function.
  DyadicSequence coefficients;
};

HaarExpansion haar_transform(const StepFunction& f);

/// Throws std::domain_error when a coefficient sits at level >= depth.
StepFunction inverse_haar(const HaarExpansion& expansion, unsigned depth);

enum class OscillationKind { l1, l2_direct, l2_haar };

/// Mean oscillation of f over an interval of level <= depth(f).
double oscillation(const StepFunction& f, const DyadicIndex& interval, OscillationKind kind);

struct HaarIdentityReport {
  double coefficient_term = 0.0;  ///< f_I^2 |I|
  double oscillation_term = 0.0;  ///< |I|osc2(I)^2 - |I_r|osc2(I_r)^2 - |I_l|osc2(I_l)^2
  bool holds = true;
};

/// Checks f_I^2|I| against the telescoped L^2 oscillations, and their sign.
HaarIdentityReport haar_osc_identity_check(const StepFunction& f, const DyadicIndex& interval,
                                           double tolerance = kIdentityTolerance);

enum class JnKind { l1, l2 };

/// Sequence osc(f, I) |I|^{1/p} over every interval of level <= depth(f).
DyadicSequence jn_oscillation_sequence(const StepFunction& f, double p, JnKind kind);

/// Dyadic JN_p norm: X^{p,inf} norm of the oscillation sequence. Requires 1 < p < inf.
NormReport jnp_dyadic_norm(const StepFunction& f, const Exponent& p, JnKind kind);

/// g_I >= 2^{1/p - 1/2} (g_{I_r}^2 + g_{I_l}^2)^{1/2} at every interval of g's tree.
bool satisfies_osc2_growth(const DyadicSequence& g, double p, double tolerance = kIdentityTolerance);

struct SquareFunctionReport {
  StepFunction square;        ///< S(f), same depth as f
  double sl_infinity = 0.0;   ///< max S(f)
  double cone_value = 0.0;    ///< X^{inf,2} norm of the Haar coefficients
};

SquareFunctionReport square_function_and_slinfty(const StepFunction& f);

/// T_a f = sum_I a_I |I|^{-1/2} f_I h_I. Throws std::domain_error when a has an
/// entry at a level f cannot resolve (level >= depth(f)).
StepFunction haar_multiplier_apply(const DyadicSequence& a, const StepFunction& f);

struct MultiplierNormReport {
  double value = 0.0;              ///< ||a||_{X^{2,inf}}
  std::vector<DyadicIndex> witness;
  StepFunction extremal;           ///< Haar coefficients 1 on the witness antichain
  double rayleigh = 0.0;           ///< ||T_a f||_2 / ||f||_{SL^inf} at the extremal f
};

MultiplierNormReport haar_multiplier_norm(const DyadicSequence& a);

}  // namespace dyadic_tent
