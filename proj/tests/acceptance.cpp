// Acceptance criteria 1-11. Prints one PASS/FAIL line per criterion.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "dyadic_tent/atoms.hpp"
#include "dyadic_tent/corpus.hpp"
#include "dyadic_tent/experiments.hpp"
#include "dyadic_tent/geometry.hpp"
#include "dyadic_tent/haar.hpp"
#include "dyadic_tent/xpq.hpp"

using namespace dyadic_tent;

namespace {

constexpr std::uint64_t kSeed = 20240611;
constexpr double kTol = 1e-12;

struct Outcome {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string note;
  void check(bool ok) {
    ++checks;
    if (!ok) ++failures;
  }
};

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

std::vector<Exponent> sweep() {
  return {Exponent(1.0), Exponent(1.5), Exponent(2.0), Exponent(3.0), Exponent::infinity()};
}

// ---- tree oracles ----

std::vector<DyadicIndex> tree_nodes(unsigned depth) {
  std::vector<DyadicIndex> nodes;
  for (unsigned j = 0; j <= depth; ++j)
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << j); ++k) nodes.emplace_back(j, k);
  return nodes;
}

bool disjoint(const DyadicIndex& a, const DyadicIndex& b) { return a.right() <= b.left() || b.right() <= a.left(); }

double own_pairing(const DyadicSequence& f, const DyadicSequence& g) {
  double s = 0.0;
  for (const auto& [I, v] : f) s += v * g[I];
  return s;
}

// max over leaves x of the l^q sum of |g_I| along the chain through x.
double own_cone_sup(const DyadicSequence& g, const Exponent& q) {
  const unsigned depth = g.depth();
  double best = 0.0;
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << depth); ++k) {
    const DyadicIndex leaf(depth, k);
    double acc = 0.0;
    for (unsigned j = 0; j <= depth; ++j) {
      const double v = std::abs(g[leaf.ancestor(j)]);
      acc = q.is_infinite() ? std::max(acc, v) : acc + std::pow(v, q.value());
    }
    best = std::max(best, q.is_infinite() ? acc : std::pow(acc, 1.0 / q.value()));
  }
  return best;
}

// ---- haar oracles ----

double cell_integral(const StepFunction& f, const DyadicIndex& I) {
  const unsigned shift = f.depth() - I.level();
  double s = 0.0;
  for (std::uint64_t c = I.position() << shift; c < (I.position() + 1) << shift; ++c) s += f[c];
  return s / double(f.size());
}

double own_osc2_sq(const StepFunction& f, const DyadicIndex& I) {
  const unsigned shift = f.depth() - I.level();
  const double avg = cell_integral(f, I) / I.length();
  double s = 0.0;
  for (std::uint64_t c = I.position() << shift; c < (I.position() + 1) << shift; ++c) s += (f[c] - avg) * (f[c] - avg);
  return s / double(std::uint64_t{1} << shift);
}

double own_haar_coefficient(const StepFunction& f, const DyadicIndex& I) {
  return (cell_integral(f, I.right_child()) - cell_integral(f, I.left_child())) / I.length();
}

// Values of sum_I c_I h_I on 2^depth cells.
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

// Every disjoint collection at levels <= depth(a), every sign pattern.
double multiplier_oracle(const DyadicSequence& a) {
  const auto nodes = tree_nodes(a.depth());
  const unsigned cells_depth = a.depth() + 1;
  double best = 0.0;
  for (std::uint32_t mask = 1; mask < (1u << nodes.size()); ++mask) {
    std::vector<DyadicIndex> members;
    for (unsigned i = 0; i < nodes.size(); ++i)
      if (mask >> i & 1) members.push_back(nodes[i]);
    bool ok = true;
    for (std::size_t i = 0; i < members.size() && ok; ++i)
      for (std::size_t j = i + 1; j < members.size() && ok; ++j) ok = disjoint(members[i], members[j]);
    if (!ok) continue;
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

// ---- box family oracles ----

bool in_box(const KBall& b, const Point& x, int dim) {
  for (int d = 0; d < dim; ++d)
    if (std::abs(x[d] - b.center[d]) > b.radius) return false;
  return true;
}

bool boxes_meet(const KBall& a, const KBall& b, int dim) {
  for (int d = 0; d < dim; ++d)
    if (std::abs(a.center[d] - b.center[d]) > a.radius + b.radius) return false;
  return true;
}

double box_volume(const KBall& b, int dim) { return std::pow(2.0 * b.radius, dim); }

// sup_x sum |w_i| 1_{B_i}(x) over the facet grid and its midpoints.
double grid_overlap(const BallFamily& family, const std::vector<double>& w) {
  const int dim = family.body.dim();
  std::vector<std::vector<double>> axes(dim);
  for (int d = 0; d < dim; ++d) {
    std::set<double> coords;
    for (const auto& b : family.balls) {
      coords.insert(b.center[d] - b.radius);
      coords.insert(b.center[d] + b.radius);
    }
    std::vector<double> c(coords.begin(), coords.end());
    for (std::size_t i = 0; i + 1 < c.size(); ++i) axes[d].push_back(0.5 * (c[i] + c[i + 1]));
    axes[d].insert(axes[d].end(), c.begin(), c.end());
  }
  double best = 0.0;
  Point x{};
  std::vector<std::size_t> at(dim, 0);
  while (true) {
    for (int d = 0; d < dim; ++d) x[d] = axes[d][at[d]];
    double s = 0.0;
    for (std::size_t i = 0; i < family.size(); ++i)
      if (in_box(family.balls[i], x, dim)) s += std::abs(w[i]);
    best = std::max(best, s);
    int d = 0;
    while (d < dim && ++at[d] == axes[d].size()) at[d++] = 0;
    if (d == dim) break;
  }
  return best;
}

double subset_mwis(const BallFamily& family, const std::vector<double>& w) {
  const std::size_t m = family.size();
  double best = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    bool ok = true;
    double s = 0.0;
    for (std::size_t i = 0; i < m && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      s += std::abs(w[i]);
      for (std::size_t j = i + 1; j < m && ok; ++j)
        if ((mask >> j & 1) && boxes_meet(family.balls[i], family.balls[j], family.body.dim())) ok = false;
    }
    if (ok) best = std::max(best, s);
  }
  return best;
}

double inclusion_exclusion_measure(const std::vector<KBall>& balls, int dim) {
  double total = 0.0;
  for (std::uint32_t mask = 1; mask < (1u << balls.size()); ++mask) {
    double vol = 1.0;
    for (int d = 0; d < dim; ++d) {
      double lo = -1e300, hi = 1e300;
      for (std::size_t i = 0; i < balls.size(); ++i)
        if (mask >> i & 1) {
          lo = std::max(lo, balls[i].center[d] - balls[i].radius);
          hi = std::min(hi, balls[i].center[d] + balls[i].radius);
        }
      vol *= std::max(0.0, hi - lo);
    }
    total += (std::popcount(mask) % 2 ? 1.0 : -1.0) * vol;
  }
  return total;
}

double lp_norm(const Point& v, int dim, double r) {
  double s = 0.0;
  for (int d = 0; d < dim; ++d) s = std::isinf(r) ? std::max(s, std::abs(v[d])) : s + std::pow(std::abs(v[d]), r);
  return std::isinf(r) ? s : std::pow(s, 1.0 / r);
}

// ---- criteria ----

Outcome criterion1() {
  Outcome o;
  Rng rng(kSeed + 1);
  for (int t = 0; t < 500; ++t) {
    const auto g = random_sequence(rng, 4);
    for (double pv : {1.0, 1.5, 2.0, 3.0}) {
      const Exponent p(pv);
      const auto fast = xpq_norm(g, p, Exponent::infinity());
      const auto slow = brute_force_xp_infty(g, p);
      bool witness_ok = is_antichain(fast.witness);
      double sum = 0.0;
      for (const auto& I : fast.witness) sum += std::pow(std::abs(g[I]), pv);
      witness_ok = witness_ok && std::abs(std::pow(sum, 1.0 / pv) - fast.value) <= kTol;
      o.check(std::abs(fast.value - slow.value) <= kTol && witness_ok);
    }
  }
  return o;
}

Outcome criterion2() {
  Outcome o;
  Rng rng(kSeed + 2);
  for (int t = 0; t < 500; ++t) {
    const auto g = random_sequence(rng, 6);
    for (const auto& q : {Exponent(1.0), Exponent(2.0), Exponent::infinity()}) {
      const double fast = xpq_norm(g, Exponent::infinity(), q).value;
      o.check(std::abs(fast - own_cone_sup(g, q)) <= kTol);
    }
  }
  return o;
}

void criteria3and4(Outcome& upper, Outcome& lower) {
  Rng rng(kSeed + 3);
  for (int t = 0; t < 1000; ++t) {
    const auto f = random_sequence(rng, 5);
    const auto g = random_sequence(rng, 5);
    const double pair = std::abs(own_pairing(f, g));
    for (const auto& p : sweep())
      for (const auto& q : sweep()) {
        const double nf = xpq_norm(f, p, q).value;
        const double ng = xpq_norm(g, p.conjugate(), q.conjugate()).value;
        upper.check(pair <= (1.0 + kTol) * nf * ng);

        const auto e = dual_extremizer(g, p, q);
        const double ne = xpq_norm(e, p, q).value;
        lower.check(ne <= 1.0 + kTol && own_pairing(e, g) >= ng - 1e-9);
      }
  }
}

Outcome criterion5() {
  Outcome o;
  Rng rng(kSeed + 5);
  for (int t = 0; t < 500; ++t) {
    const auto f = random_step_function(rng, 1, 8);
    const auto h = haar_transform(f);
    double energy = 0.0;
    for (double v : f.values()) energy += v * v / double(f.size());
    const double scale = std::max(1.0, energy);
    double parseval = h.mean * h.mean;
    o.check(std::abs(h.mean - cell_integral(f, DyadicIndex::root())) <= kTol * std::sqrt(scale));
    for (unsigned j = 0; j < f.depth(); ++j)
      for (std::uint64_t k = 0; k < (std::uint64_t{1} << j); ++k) {
        const DyadicIndex I(j, k);
        const double c = own_haar_coefficient(f, I);
        const double lhs = c * c * I.length();
        const double rhs = I.length() * own_osc2_sq(f, I) - I.right_child().length() * own_osc2_sq(f, I.right_child()) -
                           I.left_child().length() * own_osc2_sq(f, I.left_child());
        const auto lib = haar_osc_identity_check(f, I, kTol);
        o.check(std::abs(h.coefficients[I] - c) <= kTol * std::sqrt(scale) && std::abs(lhs - rhs) <= kTol * scale &&
                lib.holds && std::abs(lib.coefficient_term - lhs) <= kTol * scale);
        parseval += lhs;
      }
    o.check(std::abs(parseval - energy) <= kTol * scale);
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  Rng rng(kSeed + 6);
  for (int t = 0; t < 200; ++t) {
    const auto a = random_sequence(rng, 3);
    const auto m = haar_multiplier_norm(a);
    const double oracle = multiplier_oracle(a);
    // Rayleigh quotient of the extremal f from its own Haar coefficients.
    const auto& ext = m.extremal;
    std::map<DyadicIndex, double> coef;
    double energy = 0.0;
    for (unsigned j = 0; j < ext.depth(); ++j)
      for (std::uint64_t k = 0; k < (std::uint64_t{1} << j); ++k) {
        const DyadicIndex I(j, k);
        const double c = own_haar_coefficient(ext, I);
        if (c == 0.0) continue;
        coef[I] = c;
        energy += a[I] * a[I] * c * c;
      }
    const double sq = max_square(coef, ext.depth());
    const double attained = sq == 0.0 ? 0.0 : std::sqrt(energy) / sq;
    o.check(std::abs(m.value - oracle) <= 1e-9 && std::abs(attained - m.value) <= 1e-9);
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  Rng rng(kSeed + 7);
  for (int t = 0; t < 200; ++t) {
    const int dim = 1 + t % 2;
    const auto family = random_family(rng, ConvexBody::linf(dim), 10);
    for (double p : {1.0, 2.0}) {
      std::vector<double> ratio, powered;
      for (const auto& b : family.balls) {
        ratio.push_back(std::abs(b.weight) / std::pow(box_volume(b, dim), 1.0 / p));
        powered.push_back(std::pow(std::abs(b.weight), p));
      }
      const double top = *std::max_element(ratio.begin(), ratio.end());
      const double sp = subset_mwis(family, powered);
      for (double fraction : {0.1, 0.3, 0.5, 0.8, 1.2}) {
        const double lambda = fraction * top;
        std::vector<KBall> active;
        for (std::size_t i = 0; i < family.size(); ++i)
          if (ratio[i] > lambda) active.push_back(family.balls[i]);
        const double lhs = std::pow(lambda, p) * inclusion_exclusion_measure(active, dim);
        const auto r = maximal_weak_type(family, p, lambda);
        o.check(lhs <= std::pow(3.0, dim) * sp * (1.0 + kTol) + kTol && r.exact && r.holds &&
                close(r.lhs, lhs, 1e-9) && close(r.sp_norm_p, sp, kTol));
      }
    }
  }
  return o;
}

struct CorpusStats {
  double colors_ratio = 0.0;
  double duality = 0.0;
  std::size_t failures = 0;
};

CorpusStats coloring_corpus(std::uint64_t seed) {
  CorpusStats s;
  Rng rng(seed);
  for (int t = 0; t < 500; ++t) {
    const int dim = 1 + t % 2;
    const auto family = random_family(rng, ConvexBody::linf(dim), 10);
    const auto coloring = color_family(family);
    bool proper = coloring.color.size() == family.size();
    for (std::size_t i = 0; i < family.size() && proper; ++i)
      for (std::size_t j = i + 1; j < family.size() && proper; ++j)
        if (coloring.color[i] == coloring.color[j] && boxes_meet(family.balls[i], family.balls[j], dim)) proper = false;
    const double overlap = grid_overlap(family, std::vector<double>(family.size(), 1.0));
    if (!proper || total_overlap(family).value != overlap) ++s.failures;
    s.colors_ratio = std::max(s.colors_ratio, coloring.colors / (overlap + 1.0));

    std::vector<double> f(family.size()), g(family.size());
    for (auto& v : f) v = 1.0 - rng.uniform();
    for (auto& v : g) v = 1.0 - rng.uniform();
    double pair = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) pair += f[i] * g[i];
    const double ratio = std::abs(pair) / (subset_mwis(family, f) * grid_overlap(family, g));
    const auto d = discrete_duality_check(family, f, g);
    if (!d.ratio || !close(*d.ratio, ratio, 1e-9) || !std::isfinite(ratio)) ++s.failures;
    s.duality = std::max(s.duality, ratio);
  }
  return s;
}

Outcome criterion8() {
  Outcome o;
  const auto a = coloring_corpus(kSeed + 8);
  const auto b = coloring_corpus(kSeed + 88);
  o.check(a.failures == 0 && b.failures == 0);
  auto stable = [](double x, double y) { return std::abs(x - y) <= 0.2 * std::max(x, y); };
  o.check(std::isfinite(a.colors_ratio) && std::isfinite(a.duality));
  o.check(stable(a.colors_ratio, b.colors_ratio));
  o.check(stable(a.duality, b.duality));
  char buf[200];
  std::snprintf(buf, sizeof buf, "max colors/(O+1) %.4f vs %.4f, max duality ratio %.4f vs %.4f", a.colors_ratio,
                b.colors_ratio, a.duality, b.duality);
  o.note = buf;
  return o;
}

DyadicSequence own_synthesize(const std::vector<ChainAtom>& atoms) {
  DyadicSequence f;
  for (const auto& atom : atoms)
    for (const auto& [level, sign] : atom.signs) f.add(DyadicIndex::containing(atom.point, level), atom.lambda * sign);
  return f;
}

// Sums of a few doubles are exact at this precision.
using Exact = boost::multiprecision::cpp_bin_float_100;

// X^{1,inf} norm of the synthesized sequence in exact arithmetic:
// N(I) = max(|f_I|, N(I_l) + N(I_r)) down to the atom depth.
Exact exact_synthesis_norm(const std::vector<ChainAtom>& atoms, unsigned depth) {
  std::map<DyadicIndex, Exact> f;
  for (const auto& atom : atoms)
    for (const auto& [level, sign] : atom.signs) f[DyadicIndex::containing(atom.point, level)] += Exact(atom.lambda) * sign;
  auto value = [&](const DyadicIndex& I) { return f.count(I) ? Exact(abs(f[I])) : Exact(0); };
  std::vector<Exact> below;
  for (int j = int(depth); j >= 0; --j) {
    std::vector<Exact> level(std::size_t{1} << j);
    for (std::uint64_t k = 0; k < level.size(); ++k) {
      const Exact children = below.empty() ? Exact(0) : below[2 * k] + below[2 * k + 1];
      level[k] = std::max(value(DyadicIndex(unsigned(j), k)), children);
    }
    below = std::move(level);
  }
  return below[0];
}

Outcome criterion9() {
  Outcome o;
  Rng rng(kSeed + 9);
  for (int t = 0; t < 300; ++t) {
    const auto atoms = random_atoms(rng, 4, 6);
    Exact sum = 0;
    for (const auto& a : atoms) sum += a.lambda;
    const auto f = synthesize(atoms, 4);
    const Exact exact = exact_synthesis_norm(atoms, 4);
    const double computed = xpq_norm(f, Exponent(1), Exponent::infinity()).value;
    o.check(f == own_synthesize(atoms) && exact <= sum && std::abs(computed - exact.convert_to<double>()) <= kTol);

    const auto g = t % 2 ? random_sequence(rng, 4) : random_nonnegative_sequence(rng, 4);
    const auto d = decompose_greedy(g);
    o.check(own_synthesize(d.atoms) == g);
  }
  return o;
}

Outcome criterion10() {
  Outcome o;
  Rng rng(kSeed + 10);
  std::string exceed;
  for (double r : {HUGE_VAL, 2.0, 1.0})
    for (int dim : {1, 2}) {
      const ConvexBody body(dim, r);
      for (double a : {0.5, 1.0, 2.0}) {
        const auto net = separated_net(body, a);
        const auto& pts = net.points;
        bool ok = net.cover_ok && pts.size() <= std::pow(5.0, dim);
        for (std::size_t i = 0; i < pts.size() && ok; ++i) {
          ok = lp_norm(pts[i], dim, r) <= a * (1 + kTol);
          for (std::size_t j = i + 1; j < pts.size() && ok; ++j) {
            Point diff{};
            for (int d = 0; d < dim; ++d) diff[d] = pts[i][d] - pts[j][d];
            ok = lp_norm(diff, dim, r) >= 0.5 * a * (1 - kTol);
          }
        }
        // Sampled cover: y with ||y|| <= delta + s, s >= a, delta below a/2 minus the lattice slack.
        Point corner{};
        for (int d = 0; d < dim; ++d) corner[d] = a / kDefaultNetSteps;
        const double delta_max = 0.99 * (0.5 * a - lp_norm(corner, dim, r));
        for (int s = 0; s < 2000 && ok; ++s) {
          const double height = rng.uniform(a, 4.0 * a);
          Point y{};
          for (int d = 0; d < dim; ++d) y[d] = rng.uniform(-1.0, 1.0);
          const double n = lp_norm(y, dim, r);
          if (n == 0.0) continue;
          const double radius = (rng.uniform(0.0, delta_max) + height) * (rng.coin() ? 1.0 : rng.uniform());
          for (int d = 0; d < dim; ++d) y[d] *= radius / n;
          bool hit = false;
          for (const auto& x : pts) {
            Point diff{};
            for (int d = 0; d < dim; ++d) diff[d] = y[d] - x[d];
            hit = hit || lp_norm(diff, dim, r) <= height * (1 + kTol);
          }
          ok = hit;
        }
        o.check(ok);
        if (pts.size() > std::pow(3.0, dim))
          exceed += (exceed.empty() ? "" : ", ") + body.name() + " n=" + std::to_string(dim) + " a=" +
                    std::to_string(a).substr(0, 3) + ": " + std::to_string(pts.size());
      }
    }
  o.note = "cardinality above 3^n: " + (exceed.empty() ? std::string("none") : exceed);
  return o;
}

Outcome criterion11() {
  Outcome o;
  ExperimentConfig config;
  config.seed = kSeed;
  const auto a = dump_report(run_experiment("selftest", config).report);
  const auto b = dump_report(run_experiment("selftest", config).report);
  o.check(a == b);
  o.note = std::to_string(a.size()) + " bytes";
  return o;
}

int report(int number, const char* name, const Outcome& o) {
  const bool pass = o.failures == 0 && o.checks > 0;
  std::printf("%s criterion %d %s: %zu checks, %zu failures%s%s\n", pass ? "PASS" : "FAIL", number, name, o.checks,
              o.failures, o.note.empty() ? "" : "; ", o.note.c_str());
  std::fflush(stdout);
  return pass ? 0 : 1;
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  int failed = 0;
  failed += report(1, "oracle equivalence", criterion1());
  failed += report(2, "cone formula", criterion2());
  Outcome upper, lower;
  criteria3and4(upper, lower);
  failed += report(3, "duality upper", upper);
  failed += report(4, "duality lower", lower);
  failed += report(5, "haar identity and parseval", criterion5());
  failed += report(6, "haar multiplier norm", criterion6());
  failed += report(7, "weak type", criterion7());
  failed += report(8, "coloring and discrete duality", criterion8());
  failed += report(9, "atom synthesis", criterion9());
  failed += report(10, "net covering", criterion10());
  failed += report(11, "determinism", criterion11());
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of 11 criteria failed in %.1f s\n", failed, seconds);
  return failed == 0 ? 0 : 1;
}
