#pragma once

// Chain atoms for X^{1,inf}, their greedy decomposition, Luxemburg norms and
// the two Orlicz embedding measurements.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dyadic_tent/dyadic.hpp"
#include "dyadic_tent/haar.hpp"

namespace dyadic_tent {

/// lambda times a +-1 pattern on intervals containing a fixed dyadic point.
/// The support is the set of levels carrying a sign, which is always a
/// nested collection.
struct ChainAtom {
  double point = 0.0;
  double lambda = 1.0;
  std::map<unsigned, int> signs;  ///< level -> +1 / -1

  /// Signs on every level 0..depth.
  static ChainAtom full_chain(double point, double lambda, unsigned depth, int sign = 1);

  DyadicIndex interval_at(unsigned level) const { return DyadicIndex::containing(point, level); }
  /// Throws std::invalid_argument for a point outside [0,1), lambda <= 0, or a sign not +-1.
  void validate() const;
};

/// f_I = sum over atoms with point in I of sign * lambda, for levels <= depth.
/// Contributions are accumulated in list order.
DyadicSequence synthesize(const std::vector<ChainAtom>& atoms, unsigned depth);

struct Decomposition {
  std::vector<ChainAtom> atoms;
  double lambda_sum = 0.0;
  double norm = 0.0;   ///< ||f||_{X^{1,inf}}
  double ratio = 1.0;  ///< lambda_sum / norm (1 when f = 0)
};

/// Greedy chain peeling with synthesize(atoms, depth(f)) == f bit for bit.
Decomposition decompose_greedy(const DyadicSequence& f);

/// f_I = sign(s_I) |s_I|^{1/p} where s = synthesize(atoms, depth).
DyadicSequence power_scale_sequence(const std::vector<ChainAtom>& atoms, unsigned depth, double p);

enum class YoungKind { l_log_half, exp_square };

/// Built-in Young functions: t (1 + log+ t)^{1/2} and e^{t^2} - 1.
class YoungFunction {
public:
  explicit YoungFunction(YoungKind kind) : kind_(kind) {}
  double operator()(double t) const;
  YoungKind kind() const { return kind_; }
  std::string name() const;

private:
  YoungKind kind_;
};

/// Samples convexity, monotonicity and Phi(0) = 0 on [0, t_max].
bool check_young_function(const YoungFunction& phi, double t_max = 10.0, int samples = 400);

inline constexpr double kLuxemburgThreshold = 1.0;
inline constexpr double kExpSquareThreshold = 2.0;
inline constexpr double kBisectionRelativeTolerance = 1e-10;

/// inf{lambda > 0 : integral Phi(|f| / lambda) <= threshold}.
double luxemburg_norm(const StepFunction& f, const YoungFunction& phi,
                      double threshold = kLuxemburgThreshold);

struct EmbeddingReport {
  bool mean_subtracted = false;
  double removed_mean = 0.0;
  double sl_infinity = 0.0;
  /// Largest c with integral exp(c f^2 / ||f||_{SL^inf}^2) <= 2; empty when f = 0.
  std::optional<double> exp_square_constant;
  double x12_norm = 0.0;        ///< ||{f_I}||_{X^{1,2}}
  double l_log_half_norm = 0.0; ///< ||f||_{L(1+log+)^{1/2}L}
  std::optional<double> ratio;  ///< x12_norm / l_log_half_norm
};

EmbeddingReport embedding_checks(const StepFunction& f);

}  // namespace dyadic_tent
