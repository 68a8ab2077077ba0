#include "dyadic_tent/xpq.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace dyadic_tent {

Exponent::Exponent(double value) {
  if (std::isinf(value) && value > 0) {
    infinite_ = true;
    value_ = std::numeric_limits<double>::infinity();
    return;
  }
  if (!(value >= 1.0))
    throw std::invalid_argument("exponent must lie in [1, inf], got " + std::to_string(value));
  value_ = value;
}

Exponent Exponent::infinity() {
  Exponent e;
  e.infinite_ = true;
  e.value_ = std::numeric_limits<double>::infinity();
  return e;
}

Exponent Exponent::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return infinity();
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty())
    throw std::invalid_argument("cannot parse exponent '" + std::string(text) + "'");
  return Exponent(value);
}

double Exponent::value() const { return value_; }

Exponent Exponent::conjugate() const {
  if (infinite_) return Exponent(1.0);
  if (value_ == 1.0) return infinity();
  return Exponent(value_ / (value_ - 1.0));
}

std::string Exponent::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream out;
  out.precision(17);
  out << value_;
  return out.str();
}

double pair_norm(const Exponent& r, double x, double y) {
  x = std::abs(x);
  y = std::abs(y);
  if (r.is_infinite()) return std::max(x, y);
  if (r.value() == 1.0) return x + y;
  if (r.value() == 2.0) return std::hypot(x, y);
  const double e = r.value();
  return std::pow(std::pow(x, e) + std::pow(y, e), 1.0 / e);
}

double combine(const Exponent& p, const Exponent& q, double a_right, double a_left, double a_node) {
  return pair_norm(q, pair_norm(p, a_right, a_left), a_node);
}

namespace {

struct TreeNode {
  double own = 0.0;      // |g_I|
  double reduced = 0.0;  // value after the bottom-up reduction below I
};

using Level = std::map<std::uint64_t, TreeNode>;

// Reduced values for every ancestor of the support, indexed by level.
std::vector<Level> reduce(const DyadicSequence& g, const Exponent& p, const Exponent& q) {
  const unsigned depth = g.depth();
  std::vector<Level> levels(depth + 1);
  for (const auto& [index, value] : g) levels[index.level()][index.position()].own = std::abs(value);
  for (unsigned level = depth; level >= 1; --level)
    for (const auto& [position, _] : levels[level]) levels[level - 1][position / 2];

  for (unsigned level = depth + 1; level-- > 0;) {
    for (auto& [position, node] : levels[level]) {
      double right = 0.0;
      double left = 0.0;
      if (level < depth) {
        const auto& below = levels[level + 1];
        if (auto it = below.find(2 * position + 1); it != below.end()) right = it->second.reduced;
        if (auto it = below.find(2 * position); it != below.end()) left = it->second.reduced;
      }
      node.reduced = combine(p, q, right, left, node.own);
    }
  }
  return levels;
}

double child_value(const std::vector<Level>& levels, unsigned level, std::uint64_t position) {
  if (level >= levels.size()) return 0.0;
  auto it = levels[level].find(position);
  return it == levels[level].end() ? 0.0 : it->second.reduced;
}

// Optimal antichain for q = inf: keep a node whenever it is at least the
// combined value of its children (node wins ties), otherwise descend.
void collect_antichain(const std::vector<Level>& levels, unsigned level, std::uint64_t position,
                       const Exponent& p, std::vector<DyadicIndex>& out) {
  auto it = levels[level].find(position);
  if (it == levels[level].end()) return;
  const double left = child_value(levels, level + 1, 2 * position);
  const double right = child_value(levels, level + 1, 2 * position + 1);
  const double inner = pair_norm(p, right, left);
  if (it->second.own >= inner) {
    if (it->second.own > 0.0) out.emplace_back(level, position);
    return;
  }
  collect_antichain(levels, level + 1, 2 * position, p, out);
  collect_antichain(levels, level + 1, 2 * position + 1, p, out);
}

// Optimal chain for p = inf: follow the larger child (left wins ties).
void collect_chain(const std::vector<Level>& levels, std::vector<DyadicIndex>& out) {
  unsigned level = 0;
  std::uint64_t position = 0;
  while (level < levels.size()) {
    out.emplace_back(level, position);
    const double left = child_value(levels, level + 1, 2 * position);
    const double right = child_value(levels, level + 1, 2 * position + 1);
    if (left == 0.0 && right == 0.0) break;
    position = left >= right ? 2 * position : 2 * position + 1;
    ++level;
  }
}

double lq_sum(const Exponent& q, double acc, double term) {
  if (q.is_infinite()) return std::max(acc, term);
  return acc + std::pow(term, q.value());
}

double lq_finish(const Exponent& q, double acc) {
  if (q.is_infinite() || q.value() == 1.0) return acc;
  return std::pow(acc, 1.0 / q.value());
}

}  // namespace

NormReport xpq_norm(const DyadicSequence& g, const Exponent& p, const Exponent& q) {
  NormReport report;
  if (g.empty()) {
    if (q.is_infinite()) report.witness_kind = WitnessKind::antichain;
    else if (p.is_infinite()) report.witness_kind = WitnessKind::chain;
    if (report.witness_kind == WitnessKind::chain) report.witness.push_back(DyadicIndex::root());
    return report;
  }
  const auto levels = reduce(g, p, q);
  report.value = levels[0].at(0).reduced;
  if (q.is_infinite()) {
    report.witness_kind = WitnessKind::antichain;
    collect_antichain(levels, 0, 0, p, report.witness);
    std::sort(report.witness.begin(), report.witness.end());
  } else if (p.is_infinite()) {
    report.witness_kind = WitnessKind::chain;
    collect_chain(levels, report.witness);
  }
  return report;
}

double xpq_norm_by_truncation(const DyadicSequence& g, const Exponent& p, const Exponent& q) {
  double best = 0.0;
  for (unsigned i = 0; i <= g.depth(); ++i) best = std::max(best, xpq_norm(restrict(g, i), p, q).value);
  return best;
}

double evaluate_witness(const DyadicSequence& g, const NormReport& report, const Exponent& p,
                        const Exponent& q) {
  const Exponent& r = report.witness_kind == WitnessKind::chain ? q : p;
  if (report.witness_kind == WitnessKind::none)
    throw std::invalid_argument("report carries no witness");
  double acc = 0.0;
  for (const auto& index : report.witness) acc = lq_sum(r, acc, std::abs(g[index]));
  return lq_finish(r, acc);
}

NormReport brute_force_xp_infty(const DyadicSequence& g, const Exponent& p, unsigned oracle_limit) {
  const unsigned depth = g.depth();
  const auto& masks = antichain_masks(depth, oracle_limit);

  std::vector<double> weight(std::size_t{1} << (depth + 1), 0.0);
  for (const auto& [index, value] : g)
    weight[node_id(index)] = p.is_infinite() ? std::abs(value) : std::pow(std::abs(value), p.value());

  // Sorted node ids order antichains exactly as (level, position) lists do.
  auto lexicographically_less = [](std::uint32_t a, std::uint32_t b) {
    while (a != 0 && b != 0) {
      const int ia = std::countr_zero(a);
      const int ib = std::countr_zero(b);
      if (ia != ib) return ia < ib;
      a &= a - 1;
      b &= b - 1;
    }
    return a == 0 && b != 0;
  };

  double best = -1.0;
  std::uint32_t best_mask = 0;
  for (auto mask : masks) {
    double acc = 0.0;
    for (auto m = mask; m != 0; m &= m - 1) {
      const double w = weight[std::countr_zero(m)];
      acc = p.is_infinite() ? std::max(acc, w) : acc + w;
    }
    if (acc > best || (acc == best && lexicographically_less(mask, best_mask))) {
      best = acc;
      best_mask = mask;
    }
  }

  NormReport report;
  report.witness_kind = WitnessKind::antichain;
  report.value = p.is_infinite() ? best : std::pow(best, 1.0 / p.value());
  report.witness = antichain_from_mask(best_mask).members();
  return report;
}

double cone_norm(const DyadicSequence& g, const Exponent& q, double x) {
  double acc = 0.0;
  for (unsigned level = 0; level <= g.depth(); ++level)
    acc = lq_sum(q, acc, std::abs(g[DyadicIndex::containing(x, level)]));
  return lq_finish(q, acc);
}

double cone_sup(const DyadicSequence& g, const Exponent& q) {
  const unsigned depth = g.depth();
  if (depth > 30) throw std::length_error("cone_sup is limited to depth 30");
  double best = 0.0;
  const std::uint64_t cells = std::uint64_t{1} << depth;
  for (std::uint64_t k = 0; k < cells; ++k)
    best = std::max(best, cone_norm(g, q, DyadicIndex(depth, k).left()));
  return best;
}

double pairing(const DyadicSequence& f, const DyadicSequence& g) {
  const auto& small = f.size() <= g.size() ? f : g;
  const auto& large = f.size() <= g.size() ? g : f;
  double sum = 0.0;
  for (const auto& [index, value] : small) sum += value * large[index];
  return sum;
}

HolderReport holder_check(const DyadicSequence& f, const DyadicSequence& g, const Exponent& p,
                          const Exponent& q, double tolerance) {
  HolderReport r;
  r.pairing_abs = std::abs(pairing(f, g));
  r.norm_f = xpq_norm(f, p, q).value;
  r.norm_g = xpq_norm(g, p.conjugate(), q.conjugate()).value;
  r.slack = r.norm_f * r.norm_g - r.pairing_abs;
  r.holds = r.pairing_abs <= r.norm_f * r.norm_g + tolerance;
  return r;
}

namespace {

// Weights (wx, wy) with ||(wx, wy)||_{r'} <= 1 attaining
// wx*x + wy*y = ||(x, y)||_r for x, y >= 0. Ties favour x.
std::pair<double, double> dual_pair(const Exponent& r, double x, double y) {
  const double norm = pair_norm(r, x, y);
  if (norm == 0.0) return {0.0, 0.0};
  if (y == 0.0) return {1.0, 0.0};
  if (x == 0.0) return {0.0, 1.0};
  if (r.is_infinite()) return x >= y ? std::pair{1.0, 0.0} : std::pair{0.0, 1.0};
  if (r.value() == 1.0) return {1.0, 1.0};
  const double e = r.value() - 1.0;
  return {std::pow(x / norm, e), std::pow(y / norm, e)};
}

double sign_of(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

}  // namespace

DyadicSequence dual_extremizer(const DyadicSequence& g, const Exponent& p, const Exponent& q) {
  DyadicSequence f;
  if (g.empty()) return f;
  const Exponent p_dual = p.conjugate();
  const Exponent q_dual = q.conjugate();
  const auto levels = reduce(g, p_dual, q_dual);

  // mass[I] bounds the reduced X^{p,q} value f can reach at I; the root gets 1.
  std::map<std::uint64_t, double> mass{{0, 1.0}};
  for (unsigned level = 0; level < levels.size(); ++level) {
    std::map<std::uint64_t, double> next;
    for (const auto& [position, m] : mass) {
      auto it = levels[level].find(position);
      if (it == levels[level].end() || m == 0.0) continue;
      const double left = child_value(levels, level + 1, 2 * position);
      const double right = child_value(levels, level + 1, 2 * position + 1);
      const double children = pair_norm(p_dual, right, left);
      const auto [w_node, w_children] = dual_pair(q_dual, it->second.own, children);
      const auto [w_left, w_right] = dual_pair(p_dual, left, right);

      const DyadicIndex index(level, position);
      f.set(index, sign_of(g[index]) * m * w_node);
      if (level + 1 < levels.size()) {
        next[2 * position] = m * w_children * w_left;
        next[2 * position + 1] = m * w_children * w_right;
      }
    }
    mass = std::move(next);
  }
  return f;
}

DyadicSequence power_transform(const DyadicSequence& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("power_transform requires p >= 1");
  DyadicSequence out;
  for (const auto& [index, value] : f) out.set(index, std::pow(std::abs(value), p));
  return out;
}

}  // namespace dyadic_tent
