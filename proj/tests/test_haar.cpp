#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "dyadic_tent/corpus.hpp"
#include "dyadic_tent/haar.hpp"

using namespace dyadic_tent;

namespace {

const StepFunction kF4211(2, {4, 2, 1, 1});

// Values of sum_I c_I h_I on 2^depth cells, straight from h_I = 1_{I_r} - 1_{I_l}.
std::vector<double> synthesize_cells(const std::map<DyadicIndex, double>& c, unsigned depth) {
  std::vector<double> v(std::size_t{1} << depth, 0.0);
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double x = (k + 0.5) / double(v.size());
    for (const auto& [I, coef] : c)
      if (I.left() <= x && x < I.right()) v[k] += x < I.midpoint() ? -coef : coef;
  }
  return v;
}

double max_square(const std::map<DyadicIndex, double>& c, unsigned depth) {
  double best = 0.0;
  for (std::size_t k = 0; k < (std::size_t{1} << depth); ++k) {
    const double x = (k + 0.5) / double(std::size_t{1} << depth);
    double s = 0.0;
    for (const auto& [I, coef] : c)
      if (I.left() <= x && x < I.right()) s += coef * coef;
    best = std::max(best, std::sqrt(s));
  }
  return best;
}

// Exhaustive oracle for ||T_a||: every disjoint collection of intervals of
// level <= depth(a) (subset filter) and every sign pattern on it, with f the
// resulting +-1 Haar combination; ratio ||T_a f||_2 / max S(f) from cell values.
double multiplier_oracle(const DyadicSequence& a) {
  const unsigned depth = a.depth();
  std::vector<DyadicIndex> nodes;
  for (unsigned j = 0; j <= depth; ++j)
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << j); ++k) nodes.emplace_back(j, k);
  const unsigned cells_depth = depth + 1;
  double best = 0.0;
  for (std::uint32_t mask = 1; mask < (1u << nodes.size()); ++mask) {
    std::vector<DyadicIndex> members;
    for (unsigned i = 0; i < nodes.size(); ++i)
      if (mask >> i & 1) members.push_back(nodes[i]);
    bool disjoint = true;
    for (std::size_t i = 0; i < members.size() && disjoint; ++i)
      for (std::size_t j = i + 1; j < members.size() && disjoint; ++j)
        disjoint = members[i].right() <= members[j].left() || members[j].right() <= members[i].left();
    if (!disjoint) continue;
    for (std::uint32_t signs = 0; signs < (1u << (members.size() - 1)); ++signs) {
      std::map<DyadicIndex, double> c, tc;
      for (std::size_t i = 0; i < members.size(); ++i) {
        const double s = (i > 0 && (signs >> (i - 1) & 1)) ? -1.0 : 1.0;
        c[members[i]] = s;
        tc[members[i]] = a[members[i]] / std::sqrt(members[i].length()) * s;
      }
      const auto t = synthesize_cells(tc, cells_depth);
      double energy = 0.0;
      for (double v : t) energy += v * v / double(t.size());
      best = std::max(best, std::sqrt(energy) / max_square(c, cells_depth));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("step function basics") {
  CHECK_THROWS_AS(StepFunction(2, {1, 2, 3}), std::invalid_argument);
  CHECK(kF4211.integral(DyadicIndex::root()) == 2.0);
  CHECK(kF4211.average(DyadicIndex(1, 0)) == 3.0);
  CHECK(kF4211.sup_norm() == 4.0);
}

TEST_CASE("haar transform examples") {
  const auto e1 = haar_transform(StepFunction(1, {1, -1}));
  CHECK(e1.mean == 0.0);
  CHECK(e1.coefficients == DyadicSequence{{DyadicIndex::root(), -1.0}});

  const auto e = haar_transform(kF4211);
  CHECK(e.mean == 2.0);
  CHECK(e.coefficients[DyadicIndex(0, 0)] == -1.0);
  CHECK(e.coefficients[DyadicIndex(1, 0)] == -1.0);
  CHECK(e.coefficients[DyadicIndex(1, 1)] == 0.0);
  CHECK(inverse_haar(e, 2) == kF4211);

  const auto c = haar_transform(StepFunction::constant(4, 2.5));
  CHECK(c.mean == 2.5);
  CHECK(c.coefficients.empty());

  HaarExpansion deep{0.0, DyadicSequence{{DyadicIndex(2, 0), 1.0}}};
  CHECK_THROWS_AS(inverse_haar(deep, 2), std::domain_error);
}

TEST_CASE("haar coefficients from direct integrals") {
  Rng rng(21);
  for (int t = 0; t < 50; ++t) {
    const auto f = random_step_function(rng, 1, 6);
    const auto e = haar_transform(f);
    for (unsigned j = 0; j < f.depth(); ++j)
      for (std::uint64_t k = 0; k < (std::uint64_t{1} << j); ++k) {
        const DyadicIndex I(j, k);
        double right = 0.0, left = 0.0;
        for (std::size_t cell = 0; cell < f.size(); ++cell) {
          const double x = (cell + 0.5) / double(f.size());
          if (I.left() <= x && x < I.midpoint()) left += f[cell] / double(f.size());
          if (I.midpoint() <= x && x < I.right()) right += f[cell] / double(f.size());
        }
        CHECK(e.coefficients[I] == doctest::Approx((right - left) / I.length()).epsilon(1e-12));
      }
    const auto back = inverse_haar(e, f.depth());
    for (std::size_t k = 0; k < f.size(); ++k) CHECK(std::abs(back[k] - f[k]) <= 1e-12);
  }
}

TEST_CASE("oscillation examples") {
  CHECK(oscillation(kF4211, DyadicIndex::root(), OscillationKind::l1) == 1.0);
  CHECK(oscillation(kF4211, DyadicIndex::root(), OscillationKind::l2_direct) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-15));
  CHECK(oscillation(kF4211, DyadicIndex::root(), OscillationKind::l2_haar) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-15));
  for (auto kind : {OscillationKind::l1, OscillationKind::l2_direct, OscillationKind::l2_haar}) {
    CHECK(oscillation(kF4211, DyadicIndex(1, 1), kind) == 0.0);
    CHECK(oscillation(StepFunction::constant(3, 7.0), DyadicIndex(1, 0), kind) == 0.0);
  }
}

TEST_CASE("haar oscillation identity") {
  const auto r = haar_osc_identity_check(kF4211, DyadicIndex::root());
  CHECK(r.holds);
  CHECK(r.coefficient_term == 1.0);
  CHECK(r.oscillation_term == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(haar_osc_identity_check(StepFunction::constant(2, 1.0), DyadicIndex::root()).coefficient_term == 0.0);

  Rng rng(22);
  for (int t = 0; t < 100; ++t) {
    const auto f = random_step_function(rng, 1, 8);
    for (unsigned j = 0; j < f.depth(); ++j)
      for (std::uint64_t k = 0; k < (std::uint64_t{1} << j); ++k) {
        const auto id = haar_osc_identity_check(f, DyadicIndex(j, k));
        CHECK(id.holds);
        CHECK(id.oscillation_term >= -1e-12);
      }
  }
}

TEST_CASE("parseval and oscillation ordering") {
  Rng rng(23);
  for (int t = 0; t < 100; ++t) {
    const auto f = random_step_function(rng, 0, 8);
    const auto e = haar_transform(f);
    double energy = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) energy += f[k] * f[k] / double(f.size());
    double haar = e.mean * e.mean;
    for (const auto& [I, c] : e.coefficients) haar += c * c * I.length();
    CHECK(std::abs(energy - haar) <= 1e-12);
    for (unsigned j = 0; j <= f.depth(); ++j)
      for (std::uint64_t k = 0; k < (std::uint64_t{1} << j); ++k) {
        const DyadicIndex I(j, k);
        const double l1 = oscillation(f, I, OscillationKind::l1);
        const double l2 = oscillation(f, I, OscillationKind::l2_direct);
        CHECK(l1 <= l2 + 1e-12);
        CHECK(std::abs(l2 - oscillation(f, I, OscillationKind::l2_haar)) <= 1e-12);
      }
  }
}

TEST_CASE("jnp norm") {
  CHECK(jnp_dyadic_norm(StepFunction::constant(3, 2.0), Exponent(2), JnKind::l1).value == 0.0);
  const auto r = jnp_dyadic_norm(kF4211, Exponent(2), JnKind::l1);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.witness == std::vector<DyadicIndex>{DyadicIndex::root()});
  const auto seq = jn_oscillation_sequence(kF4211, 2.0, JnKind::l1);
  CHECK(seq[DyadicIndex(0, 0)] == 1.0);
  CHECK(seq[DyadicIndex(1, 0)] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(brute_force_xp_infty(seq, Exponent(2)).value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(jnp_dyadic_norm(kF4211, Exponent(1), JnKind::l1), std::domain_error);
  CHECK_THROWS_AS(jnp_dyadic_norm(kF4211, Exponent::infinity(), JnKind::l2), std::domain_error);

  Rng rng(24);
  for (int t = 0; t < 50; ++t) {
    const auto f = random_step_function(rng, 1, 6);
    for (double p : {1.5, 2.0, 3.0})
      CHECK(jnp_dyadic_norm(f, Exponent(p), JnKind::l1).value <= jnp_dyadic_norm(f, Exponent(p), JnKind::l2).value + 1e-12);
  }
}

TEST_CASE("osc2 growth predicate") {
  Rng rng(25);
  for (int t = 0; t < 50; ++t) {
    const auto f = random_step_function(rng, 1, 6);
    for (double p : {2.5, 3.0, 5.0}) CHECK(satisfies_osc2_growth(jn_oscillation_sequence(f, p, JnKind::l2), p));
  }
  DyadicSequence bad{{DyadicIndex(0, 0), 0.1}, {DyadicIndex(1, 0), 1.0}};
  CHECK_FALSE(satisfies_osc2_growth(bad, 3.0));
}

TEST_CASE("square function") {
  const auto s1 = square_function_and_slinfty(StepFunction(1, {1, -1}));
  CHECK(s1.square == StepFunction(1, {1, 1}));
  CHECK(s1.sl_infinity == 1.0);
  CHECK(square_function_and_slinfty(StepFunction::constant(3, 4.0)).square == StepFunction::constant(3, 0.0));
  const auto s = square_function_and_slinfty(kF4211);
  CHECK(s.square[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(s.square[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(s.square[2] == 1.0);
  CHECK(s.square[3] == 1.0);
  CHECK(s.sl_infinity == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(std::abs(s.sl_infinity - s.cone_value) <= 1e-12);

  Rng rng(26);
  for (int t = 0; t < 50; ++t) {
    const auto f = random_step_function(rng, 1, 8);
    const auto r = square_function_and_slinfty(f);
    CHECK(std::abs(r.sl_infinity - r.cone_value) <= 1e-12);
  }
}

TEST_CASE("haar multiplier apply") {
  const StepFunction f(1, {1, -1});
  CHECK(haar_multiplier_apply(DyadicSequence{}, f) == StepFunction::constant(1, 0.0));
  CHECK(haar_multiplier_apply(DyadicSequence{{DyadicIndex::root(), 1.0}}, f) == f);
  CHECK_THROWS_AS(haar_multiplier_apply(DyadicSequence{{DyadicIndex(1, 0), 1.0}}, f), std::domain_error);

  Rng rng(27);
  for (int t = 0; t < 50; ++t) {
    const auto g = random_step_function(rng, 4, 6);
    const auto a = random_sequence(rng, 3);
    const auto e = haar_transform(g);
    double expected = 0.0;
    for (const auto& [I, c] : e.coefficients) expected += a[I] * a[I] * c * c;
    const double norm = haar_multiplier_apply(a, g).l2_norm();
    CHECK(norm * norm == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("haar multiplier norm") {
  const auto r = haar_multiplier_norm(DyadicSequence{{DyadicIndex::root(), 2.0}});
  CHECK(r.value == 2.0);
  CHECK(haar_transform(r.extremal).coefficients == DyadicSequence{{DyadicIndex::root(), 1.0}});

  const auto s = haar_multiplier_norm(DyadicSequence{{DyadicIndex(1, 0), 1.0}, {DyadicIndex(1, 1), 1.0}});
  CHECK(s.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(s.witness == std::vector<DyadicIndex>{DyadicIndex(1, 0), DyadicIndex(1, 1)});

  CHECK(haar_multiplier_norm(DyadicSequence{}).value == 0.0);

  Rng rng(28);
  for (int t = 0; t < 25; ++t) {
    const auto a = random_sequence(rng, 3);
    const auto m = haar_multiplier_norm(a);
    CHECK(std::abs(m.value - multiplier_oracle(a)) <= 1e-9);
    CHECK(std::abs(m.rayleigh - m.value) <= 1e-9);
    // Random probes never exceed the norm.
    for (int probe = 0; probe < 10; ++probe) {
      const auto f = random_step_function(rng, a.depth() + 1, a.depth() + 2);
      const double sl = square_function_and_slinfty(f).sl_infinity;
      if (sl == 0.0) continue;
      CHECK(haar_multiplier_apply(a, f).l2_norm() / sl <= m.value + 1e-12);
    }
  }
}
