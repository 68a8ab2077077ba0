#pragma once

// Two-parameter tree norms X^{p,q} on dyadic sequences: the bottom-up
// reduction, its brute-force and cone-formula oracles, the duality pairing and
// the constructive dual extremizer.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dyadic_tent/dyadic.hpp"

namespace dyadic_tent {

/// Tolerance for algebraic identities between two routes to the same number.
inline constexpr double kIdentityTolerance = 1e-12;
/// Tolerance for optimality of the dual extremizer.
inline constexpr double kExtremizerTolerance = 1e-9;

/// An exponent in [1, inf].
class Exponent {
public:
  /// Throws std::invalid_argument unless value >= 1 (or +inf).
  explicit Exponent(double value);

  static Exponent infinity();

  /// Accepts decimal strings ("1", "1.5", "2") and "inf".
  static Exponent parse(std::string_view text);

  bool is_infinite() const { return infinite_; }
  /// Finite value; +inf when is_infinite().
  double value() const;
  Exponent conjugate() const;
  std::string to_string() const;

  bool operator==(const Exponent&) const = default;

private:
  Exponent() = default;
  double value_ = 1.0;
  bool infinite_ = false;
};

/// l^r norm of the pair (|x|, |y|).
double pair_norm(const Exponent& r, double x, double y);

/// ((|a_r|^p + |a_l|^p)^{q/p} + |a_node|^q)^{1/q}, maxima for infinite exponents.
double combine(const Exponent& p, const Exponent& q, double a_right, double a_left, double a_node);

enum class WitnessKind { none, antichain, chain };

struct NormReport {
  double value = 0.0;
  WitnessKind witness_kind = WitnessKind::none;
  /// Antichain members (q = inf) or a root-to-leaf chain (p = inf, q < inf).
  std::vector<DyadicIndex> witness;
};

/// Bottom-up reduction of g in X^{p,q}. For q = inf the report carries an
/// optimal disjoint collection; for p = inf and finite q, an optimal chain.
NormReport xpq_norm(const DyadicSequence& g, const Exponent& p, const Exponent& q);

/// sup over truncation depths i of ||restrict(g, i)||; equals xpq_norm for
/// finitely supported g.
double xpq_norm_by_truncation(const DyadicSequence& g, const Exponent& p, const Exponent& q);

/// The objective a witness stands for: (sum over antichain |g_I|^p)^{1/p} or
/// (sum over chain |g_I|^q)^{1/q}.
double evaluate_witness(const DyadicSequence& g, const NormReport& report, const Exponent& p,
                        const Exponent& q);

/// Direct maximization of (sum_{I in C} |g_I|^p)^{1/p} over all antichains C
/// of the tree down to depth(g). Ties go to the lexicographically first
/// antichain. Throws std::length_error when depth(g) > oracle_limit.
NormReport brute_force_xp_infty(const DyadicSequence& g, const Exponent& p,
                                unsigned oracle_limit = kDefaultOracleDepth);

/// (sum_{I containing x} |g_I|^q)^{1/q} over the chain through x.
double cone_norm(const DyadicSequence& g, const Exponent& q, double x);

/// max of cone_norm over one point per deepest-generation interval.
double cone_sup(const DyadicSequence& g, const Exponent& q);

/// sum_I f_I g_I over the common support.
double pairing(const DyadicSequence& f, const DyadicSequence& g);

struct HolderReport {
  double pairing_abs = 0.0;
  double norm_f = 0.0;       ///< ||f||_{X^{p,q}}
  double norm_g = 0.0;       ///< ||g||_{X^{p',q'}}
  double slack = 0.0;        ///< norm_f * norm_g - pairing_abs
  bool holds = true;
};

HolderReport holder_check(const DyadicSequence& f, const DyadicSequence& g, const Exponent& p,
                          const Exponent& q, double tolerance = kIdentityTolerance);

/// f with ||f||_{X^{p,q}} <= 1 and <f, g> = ||g||_{X^{p',q'}}, built from the
/// Holder equality weights recorded during the reduction of |g|.
DyadicSequence dual_extremizer(const DyadicSequence& g, const Exponent& p, const Exponent& q);

/// Entrywise |f_I|^p.
DyadicSequence power_transform(const DyadicSequence& f, double p);

}  // namespace dyadic_tent
