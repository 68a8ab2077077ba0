#include "dyadic_tent/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "dyadic_tent/random.hpp"

namespace dyadic_tent {

ConvexBody::ConvexBody(int dim, double r) : dim_(dim), r_(r) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
  if (!(r >= 1.0)) throw std::invalid_argument("l^r body needs r >= 1");
}

ConvexBody ConvexBody::linf(int dim) { return {dim, std::numeric_limits<double>::infinity()}; }
ConvexBody ConvexBody::l2(int dim) { return {dim, 2.0}; }
ConvexBody ConvexBody::l1(int dim) { return {dim, 1.0}; }

bool ConvexBody::is_box() const { return std::isinf(r_) || dim_ == 1; }

std::string ConvexBody::name() const {
  if (std::isinf(r_)) return "linf";
  if (r_ == 2.0) return "l2";
  if (r_ == 1.0) return "l1";
  return "l" + std::to_string(r_);
}

double ConvexBody::norm(const Point& v) const {
  if (std::isinf(r_)) {
    double m = 0.0;
    for (int i = 0; i < dim_; ++i) m = std::max(m, std::abs(v[i]));
    return m;
  }
  if (r_ == 1.0) {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += std::abs(v[i]);
    return s;
  }
  if (r_ == 2.0) {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += v[i] * v[i];
    return std::sqrt(s);
  }
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) s += std::pow(std::abs(v[i]), r_);
  return std::pow(s, 1.0 / r_);
}

double ConvexBody::distance(const Point& a, const Point& b) const {
  Point d{};
  for (int i = 0; i < dim_; ++i) d[i] = a[i] - b[i];
  return norm(d);
}

double ConvexBody::unit_ball_volume() const {
  // |B_{l^r}^n| = (2 Gamma(1 + 1/r))^n / Gamma(1 + n/r)
  const double inv = std::isinf(r_) ? 0.0 : 1.0 / r_;
  return std::pow(2.0 * std::tgamma(1.0 + inv), dim_) / std::tgamma(1.0 + dim_ * inv);
}

std::vector<double> BallFamily::weights() const {
  std::vector<double> w;
  w.reserve(balls.size());
  for (const auto& b : balls) w.push_back(b.weight);
  return w;
}

void BallFamily::validate() const {
  for (const auto& b : balls) {
    if (!(b.radius > 0.0) || !std::isfinite(b.radius))
      throw std::invalid_argument("ball radius must be positive and finite");
    if (!std::isfinite(b.weight)) throw std::invalid_argument("ball weight must be finite");
    for (int i = 0; i < body.dim(); ++i)
      if (!std::isfinite(b.center[i])) throw std::invalid_argument("ball center must be finite");
  }
}

double volume(const ConvexBody& body, const KBall& ball) {
  return std::pow(ball.radius, body.dim()) * body.unit_ball_volume();
}

bool contains(const ConvexBody& body, const KBall& ball, const Point& x) {
  return body.distance(ball.center, x) <= ball.radius * (1.0 + kGeometryTolerance) + kGeometryTolerance;
}

bool balls_intersect(const ConvexBody& body, const KBall& a, const KBall& b) {
  const double reach = a.radius + b.radius;
  return body.distance(a.center, b.center) <= reach * (1.0 + kGeometryTolerance) + kGeometryTolerance;
}

std::vector<std::vector<std::size_t>> intersection_graph(const BallFamily& family) {
  const auto n = family.size();
  std::vector<std::vector<std::size_t>> adjacency(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (balls_intersect(family.body, family.balls[i], family.balls[j])) {
        adjacency[i].push_back(j);
        adjacency[j].push_back(i);
      }
  return adjacency;
}

namespace {

// Sorted distinct facet coordinates c_i +- r_i along one axis.
std::vector<double> facet_coordinates(const std::vector<KBall>& balls, int axis) {
  std::vector<double> coords;
  coords.reserve(2 * balls.size());
  for (const auto& b : balls) {
    coords.push_back(b.center[axis] - b.radius);
    coords.push_back(b.center[axis] + b.radius);
  }
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  return coords;
}

// Visits every point of the product grid axes[0] x ... x axes[dim-1].
void for_each_grid_point(const std::vector<std::vector<double>>& axes,
                         const std::function<void(const Point&)>& visit) {
  const auto dim = axes.size();
  std::vector<std::size_t> idx(dim, 0);
  for (const auto& a : axes)
    if (a.empty()) return;
  while (true) {
    Point x{};
    for (std::size_t d = 0; d < dim; ++d) x[d] = axes[d][idx[d]];
    visit(x);
    std::size_t d = dim;
    while (d-- > 0) {
      if (++idx[d] < axes[d].size()) break;
      idx[d] = 0;
      if (d == 0) return;
    }
  }
}

double weight_at(const BallFamily& family, const std::vector<double>& weights, const Point& x) {
  double sum = 0.0;
  for (std::size_t i = 0; i < family.size(); ++i)
    if (contains(family.body, family.balls[i], x)) sum += std::abs(weights[i]);
  return sum;
}

Point bounding_low(const BallFamily& family) {
  Point lo{};
  for (int d = 0; d < family.body.dim(); ++d) {
    lo[d] = std::numeric_limits<double>::infinity();
    for (const auto& b : family.balls) lo[d] = std::min(lo[d], b.center[d] - b.radius);
  }
  return lo;
}

Point bounding_high(const BallFamily& family) {
  Point hi{};
  for (int d = 0; d < family.body.dim(); ++d) {
    hi[d] = -std::numeric_limits<double>::infinity();
    for (const auto& b : family.balls) hi[d] = std::max(hi[d], b.center[d] + b.radius);
  }
  return hi;
}

}  // namespace

OverlapResult weighted_overlap(const BallFamily& family, const std::vector<double>& weights) {
  if (weights.size() != family.size()) throw std::invalid_argument("one weight per ball required");
  OverlapResult out;
  if (family.balls.empty()) return out;
  const int dim = family.body.dim();

  auto consider = [&](const Point& x) {
    const double w = weight_at(family, weights, x);
    if (w > out.value) {
      out.value = w;
      out.witness = x;
    }
  };

  if (family.body.is_box()) {
    // The count is piecewise constant and upper semicontinuous; its maximum is
    // attained at a corner of the intersection of the boxes covering the
    // maximizer, and those corners lie on the facet grid.
    std::vector<std::vector<double>> axes;
    for (int d = 0; d < dim; ++d) axes.push_back(facet_coordinates(family.balls, d));
    for_each_grid_point(axes, consider);
    if (out.value > 0.0) {
      // Report the center of the common box of the balls covering the witness.
      Point lo{}, hi{};
      for (int d = 0; d < dim; ++d) {
        lo[d] = -std::numeric_limits<double>::infinity();
        hi[d] = std::numeric_limits<double>::infinity();
      }
      for (const auto& b : family.balls) {
        if (!contains(family.body, b, out.witness)) continue;
        for (int d = 0; d < dim; ++d) {
          lo[d] = std::max(lo[d], b.center[d] - b.radius);
          hi[d] = std::min(hi[d], b.center[d] + b.radius);
        }
      }
      Point mid{};
      for (int d = 0; d < dim; ++d) mid[d] = 0.5 * (lo[d] + hi[d]);
      if (weight_at(family, weights, mid) >= out.value) out.witness = mid;
    }
    return out;
  }

  out.lower_bound = true;
  for (const auto& b : family.balls) consider(b.center);
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      const auto& a = family.balls[i];
      const auto& b = family.balls[j];
      if (!balls_intersect(family.body, a, b)) continue;
      const double t = a.radius / (a.radius + b.radius);
      Point x{};
      for (int d = 0; d < dim; ++d) x[d] = a.center[d] + t * (b.center[d] - a.center[d]);
      consider(x);
    }
  Rng rng(0x5EEDull + family.size());
  const Point lo = bounding_low(family);
  const Point hi = bounding_high(family);
  for (int s = 0; s < 4000; ++s) {
    Point x{};
    for (int d = 0; d < dim; ++d) x[d] = rng.uniform(lo[d], hi[d]);
    consider(x);
  }
  return out;
}

OverlapResult total_overlap(const BallFamily& family) {
  return weighted_overlap(family, std::vector<double>(family.size(), 1.0));
}

OverlapResult t1_discrete_norm(const BallFamily& family) {
  return weighted_overlap(family, family.weights());
}

double essential_overlap(const BallFamily& family, const std::vector<double>& weights) {
  if (!family.body.is_box()) throw std::invalid_argument("essential_overlap needs a box family");
  if (weights.size() != family.size()) throw std::invalid_argument("one weight per ball required");
  std::vector<std::vector<double>> axes;
  for (int d = 0; d < family.body.dim(); ++d) {
    const auto coords = facet_coordinates(family.balls, d);
    std::vector<double> mids;
    for (std::size_t k = 0; k + 1 < coords.size(); ++k) mids.push_back(0.5 * (coords[k] + coords[k + 1]));
    axes.push_back(std::move(mids));
  }
  double best = 0.0;
  for_each_grid_point(axes, [&](const Point& x) { best = std::max(best, weight_at(family, weights, x)); });
  return best;
}

namespace {

bool colorable(const std::vector<std::vector<std::size_t>>& adjacency, const std::vector<std::size_t>& order,
               std::size_t position, int k, std::vector<int>& color) {
  if (position == order.size()) return true;
  const auto v = order[position];
  for (int c = 0; c < k; ++c) {
    bool free = true;
    for (auto u : adjacency[v])
      if (color[u] == c) {
        free = false;
        break;
      }
    if (!free) continue;
    color[v] = c;
    if (colorable(adjacency, order, position + 1, k, color)) return true;
    color[v] = -1;
  }
  return false;
}

int exact_chromatic(const std::vector<std::vector<std::size_t>>& adjacency, int upper) {
  const auto n = adjacency.size();
  if (n == 0) return 0;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return adjacency[a].size() > adjacency[b].size(); });
  for (int k = 1; k < upper; ++k) {
    std::vector<int> color(n, -1);
    if (colorable(adjacency, order, 0, k, color)) return k;
  }
  return upper;
}

int graph_degeneracy(const std::vector<std::vector<std::size_t>>& adjacency) {
  const auto n = adjacency.size();
  std::vector<std::size_t> degree(n);
  for (std::size_t i = 0; i < n; ++i) degree[i] = adjacency[i].size();
  std::vector<bool> removed(n, false);
  std::size_t best = 0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t v = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!removed[i] && (v == n || degree[i] < degree[v])) v = i;
    best = std::max(best, degree[v]);
    removed[v] = true;
    for (auto u : adjacency[v])
      if (!removed[u]) --degree[u];
  }
  return static_cast<int>(best);
}

}  // namespace

Coloring color_family(const BallFamily& family, std::size_t exact_limit) {
  const auto n = family.size();
  const auto adjacency = intersection_graph(family);
  Coloring out;
  out.order.resize(n);
  std::iota(out.order.begin(), out.order.end(), 0);
  std::vector<double> vols(n);
  for (std::size_t i = 0; i < n; ++i) vols[i] = volume(family.body, family.balls[i]);
  std::stable_sort(out.order.begin(), out.order.end(), [&](auto a, auto b) { return vols[a] < vols[b]; });

  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[out.order[i]] = i;
  for (std::size_t i = 0; i < n; ++i) {
    int later = 0;
    for (auto u : adjacency[i])
      if (rank[u] > rank[i]) ++later;
    out.max_back_degree = std::max(out.max_back_degree, later);
  }

  // Color the largest balls first; each ball then sees at most its later
  // neighbours already colored.
  out.color.assign(n, -1);
  for (std::size_t pos = n; pos-- > 0;) {
    const auto v = out.order[pos];
    std::vector<bool> used(n + 1, false);
    for (auto u : adjacency[v])
      if (out.color[u] >= 0) used[static_cast<std::size_t>(out.color[u])] = true;
    int c = 0;
    while (used[static_cast<std::size_t>(c)]) ++c;
    out.color[v] = c;
    out.colors = std::max(out.colors, c + 1);
  }
  out.degeneracy = graph_degeneracy(adjacency);
  if (n <= exact_limit) out.chromatic_number = exact_chromatic(adjacency, out.colors);
  return out;
}

bool is_proper_coloring(const BallFamily& family, const std::vector<int>& color) {
  if (color.size() != family.size()) return false;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (color[i] < 0) return false;
    for (std::size_t j = i + 1; j < family.size(); ++j)
      if (color[i] == color[j] && balls_intersect(family.body, family.balls[i], family.balls[j]))
        return false;
  }
  return true;
}

namespace {

class IndependentSetSearch {
public:
  IndependentSetSearch(const std::vector<std::vector<std::size_t>>& adjacency, std::vector<double> weights)
      : weights_(std::move(weights)) {
    closed_.resize(adjacency.size());
    for (std::size_t i = 0; i < adjacency.size(); ++i) {
      closed_[i] = std::uint32_t{1} << i;
      for (auto j : adjacency[i]) closed_[i] |= std::uint32_t{1} << j;
    }
  }

  SubfamilyResult run() {
    const auto n = weights_.size();
    const std::uint32_t all = n == 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1);
    search(all, 0.0, 0);
    SubfamilyResult out;
    out.value = best_ < 0 ? 0.0 : best_;
    for (auto m = best_set_; m != 0; m &= m - 1) out.members.push_back(std::countr_zero(m));
    return out;
  }

private:
  // Partition the candidates greedily into cliques; an independent set takes
  // at most one ball from each, so the sum of clique maxima bounds the gain.
  double clique_bound(std::uint32_t candidates) const {
    double bound = 0.0;
    while (candidates != 0) {
      const int v = std::countr_zero(candidates);
      std::uint32_t clique = std::uint32_t{1} << v;
      double top = weights_[v];
      for (auto m = candidates & ~clique; m != 0; m &= m - 1) {
        const int u = std::countr_zero(m);
        bool adjacent_to_all = true;
        for (auto c = clique; c != 0; c &= c - 1)
          if (!(closed_[u] >> std::countr_zero(c) & 1u)) {
            adjacent_to_all = false;
            break;
          }
        if (adjacent_to_all) {
          clique |= std::uint32_t{1} << u;
          top = std::max(top, weights_[u]);
        }
      }
      bound += top;
      candidates &= ~clique;
    }
    return bound;
  }

  void search(std::uint32_t candidates, double value, std::uint32_t chosen) {
    if (candidates == 0) {
      if (value > best_) {
        best_ = value;
        best_set_ = chosen;
      }
      return;
    }
    if (value + clique_bound(candidates) <= best_) return;
    const int v = std::countr_zero(candidates);
    const std::uint32_t bit = std::uint32_t{1} << v;
    search(candidates & ~closed_[v], value + weights_[v], chosen | bit);
    search(candidates & ~bit, value, chosen);
  }

  std::vector<double> weights_;
  std::vector<std::uint32_t> closed_;
  double best_ = -1.0;
  std::uint32_t best_set_ = 0;
};

}  // namespace

SubfamilyResult max_weight_disjoint(const BallFamily& family, const std::vector<double>& weights,
                                    std::size_t limit) {
  if (weights.size() != family.size()) throw std::invalid_argument("one weight per ball required");
  if (family.size() > limit || family.size() > 32)
    throw std::length_error("exact disjoint-subfamily search refuses " + std::to_string(family.size()) +
                            " balls (limit " + std::to_string(std::min<std::size_t>(limit, 32)) + ")");
  std::vector<double> abs_weights(weights.size());
  std::transform(weights.begin(), weights.end(), abs_weights.begin(), [](double w) { return std::abs(w); });
  return IndependentSetSearch(intersection_graph(family), std::move(abs_weights)).run();
}

SubfamilyResult s1_discrete_norm(const BallFamily& family, std::size_t limit) {
  return max_weight_disjoint(family, family.weights(), limit);
}

DiscreteDualityReport discrete_duality_check(const BallFamily& family, const std::vector<double>& f,
                                             const std::vector<double>& g) {
  if (f.size() != family.size() || g.size() != family.size())
    throw std::invalid_argument("one f and one g value per ball required");
  DiscreteDualityReport r;
  double pairing = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) pairing += f[i] * g[i];
  r.pairing_abs = std::abs(pairing);
  r.s1 = max_weight_disjoint(family, f).value;
  const auto t1 = weighted_overlap(family, g);
  r.t1 = t1.value;
  r.lower_bound = t1.lower_bound;
  const double denominator = r.s1 * r.t1;
  if (denominator > 0.0) {
    r.ratio = r.pairing_abs / denominator;
  } else if (r.pairing_abs > 0.0) {
    throw std::logic_error("nonzero pairing against a vanishing S^1 or T^1 norm");
  }
  return r;
}

namespace {

// Center plus points on the boundary of the unit K-sphere in a fixed set of directions.
std::vector<Point> sphere_directions(const ConvexBody& body) {
  std::vector<Point> dirs;
  const int dim = body.dim();
  if (dim == 1) return {{1.0, 0, 0}, {-1.0, 0, 0}};
  if (dim == 2) {
    for (int k = 0; k < 32; ++k) {
      const double t = 2.0 * std::numbers::pi * k / 32.0;
      dirs.push_back({std::cos(t), std::sin(t), 0.0});
    }
  } else {
    for (int i = -1; i <= 1; ++i)
      for (int j = -1; j <= 1; ++j)
        for (int k = -1; k <= 1; ++k)
          if (i != 0 || j != 0 || k != 0) dirs.push_back({double(i), double(j), double(k)});
  }
  for (auto& d : dirs) {
    const double n = body.norm(d);
    for (int i = 0; i < dim; ++i) d[i] /= n;
  }
  return dirs;
}

}  // namespace

VitaliResult vitali_select(const BallFamily& family) {
  VitaliResult out;
  const int dim = family.body.dim();
  out.dilation_constant = std::pow(3.0, dim);
  std::vector<std::size_t> order(family.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return family.balls[a].radius > family.balls[b].radius; });
  for (auto i : order) {
    bool disjoint = true;
    for (auto k : out.selected)
      if (balls_intersect(family.body, family.balls[i], family.balls[k])) {
        disjoint = false;
        break;
      }
    if (disjoint) out.selected.push_back(i);
  }

  const auto dirs = sphere_directions(family.body);
  auto covered = [&](const Point& x) {
    for (auto k : out.selected) {
      KBall dilate = family.balls[k];
      dilate.radius *= 3.0;
      if (contains(family.body, dilate, x)) return true;
    }
    return false;
  };
  for (const auto& b : family.balls) {
    std::vector<Point> probes{b.center};
    for (const auto& d : dirs) {
      Point x = b.center;
      for (int i = 0; i < dim; ++i) x[i] += b.radius * d[i];
      probes.push_back(x);
    }
    for (const auto& x : probes) {
      ++out.checked_points;
      if (!covered(x)) out.cover_ok = false;
    }
  }
  return out;
}

double maximal_function(const BallFamily& family, double p, const Point& x) {
  double best = 0.0;
  for (const auto& b : family.balls)
    if (contains(family.body, b, x))
      best = std::max(best, std::abs(b.weight) / std::pow(volume(family.body, b), 1.0 / p));
  return best;
}

double union_measure(const ConvexBody& body, const std::vector<KBall>& balls, bool* exact,
                     std::size_t samples) {
  if (balls.empty()) {
    if (exact) *exact = true;
    return 0.0;
  }
  const int dim = body.dim();
  BallFamily family{body, balls};
  if (body.is_box()) {
    if (exact) *exact = true;
    std::vector<std::vector<double>> coords;
    for (int d = 0; d < dim; ++d) coords.push_back(facet_coordinates(balls, d));
    // Sum the cells of the arrangement whose midpoints are covered.
    std::vector<std::vector<double>> mids(dim), widths(dim);
    for (int d = 0; d < dim; ++d)
      for (std::size_t k = 0; k + 1 < coords[d].size(); ++k) {
        mids[d].push_back(0.5 * (coords[d][k] + coords[d][k + 1]));
        widths[d].push_back(coords[d][k + 1] - coords[d][k]);
      }
    double total = 0.0;
    std::vector<std::size_t> idx(dim, 0);
    for (const auto& m : mids)
      if (m.empty()) return 0.0;
    while (true) {
      Point x{};
      double cell = 1.0;
      for (int d = 0; d < dim; ++d) {
        x[d] = mids[d][idx[d]];
        cell *= widths[d][idx[d]];
      }
      for (const auto& b : balls)
        if (body.distance(b.center, x) <= b.radius) {
          total += cell;
          break;
        }
      int d = dim;
      bool done = false;
      while (d-- > 0) {
        if (++idx[d] < mids[d].size()) break;
        idx[d] = 0;
        if (d == 0) done = true;
      }
      if (done) break;
    }
    return total;
  }

  if (exact) *exact = false;
  const Point lo = bounding_low(family);
  const Point hi = bounding_high(family);
  double box = 1.0;
  for (int d = 0; d < dim; ++d) box *= hi[d] - lo[d];
  Rng rng(0xB0A7ull + balls.size());
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    Point x{};
    for (int d = 0; d < dim; ++d) x[d] = rng.uniform(lo[d], hi[d]);
    for (const auto& b : balls)
      if (body.distance(b.center, x) <= b.radius) {
        ++hits;
        break;
      }
  }
  return box * static_cast<double>(hits) / static_cast<double>(samples);
}

WeakTypeReport maximal_weak_type(const BallFamily& family, double p, double lambda, std::size_t samples) {
  if (!(p >= 1.0)) throw std::invalid_argument("weak-type exponent must satisfy p >= 1");
  if (!(lambda > 0.0)) throw std::invalid_argument("level lambda must be positive");
  WeakTypeReport r;
  r.p = p;
  r.lambda = lambda;
  // {M_p > lambda} is the union of the balls whose own ratio exceeds lambda.
  std::vector<KBall> active;
  for (const auto& b : family.balls)
    if (std::abs(b.weight) / std::pow(volume(family.body, b), 1.0 / p) > lambda) active.push_back(b);
  r.level_set_measure = union_measure(family.body, active, &r.exact, samples);
  r.lhs = std::pow(lambda, p) * r.level_set_measure;

  std::vector<double> powered;
  for (const auto& b : family.balls) powered.push_back(std::pow(std::abs(b.weight), p));
  r.sp_norm_p = max_weight_disjoint(family, powered).value;
  r.bound = std::pow(3.0, family.body.dim()) * r.sp_norm_p;
  r.holds = r.lhs <= r.bound * (1.0 + kGeometryTolerance) + kGeometryTolerance;
  return r;
}

NetReport separated_net(const ConvexBody& body, double a, int steps, std::size_t samples, std::uint64_t seed) {
  if (!(a > 0.0)) throw std::invalid_argument("net radius a must be positive");
  if (steps < 0) throw std::invalid_argument("lattice steps must be non-negative");
  const int dim = body.dim();
  NetReport out;
  out.a = a;
  out.bound_3n = static_cast<std::size_t>(std::pow(3, dim));
  out.bound_5n = static_cast<std::size_t>(std::pow(5, dim));

  const double separation = 0.5 * a;
  std::vector<int> idx(dim, -steps);
  auto coordinate = [&](int i) { return steps == 0 ? 0.0 : a * i / steps; };
  while (true) {
    Point x{};
    for (int d = 0; d < dim; ++d) x[d] = coordinate(idx[d]);
    if (body.norm(x) <= a * (1.0 + kGeometryTolerance)) {
      bool far = true;
      for (const auto& y : out.points)
        if (body.distance(x, y) < separation * (1.0 - kGeometryTolerance)) {
          far = false;
          break;
        }
      if (far) out.points.push_back(x);
    }
    int d = dim;
    bool done = false;
    while (d-- > 0) {
      if (++idx[d] <= steps) break;
      idx[d] = -steps;
      if (d == 0) done = true;
    }
    if (done) break;
  }

  for (std::size_t i = 0; i < out.points.size(); ++i)
    for (std::size_t j = i + 1; j < out.points.size(); ++j)
      if (body.distance(out.points[i], out.points[j]) < separation * (1.0 - kGeometryTolerance))
        out.separated = false;
  out.within_5n = out.points.size() <= out.bound_5n;
  out.exceeds_3n = out.points.size() > out.bound_3n;

  // Rounding a point of B(0,a) toward zero onto the lattice moves it by at most
  // `slack` in K-norm, so the covering argument needs delta + slack < a/2.
  Point corner{};
  for (int d = 0; d < dim; ++d) corner[d] = steps == 0 ? a : a / steps;
  const double slack = body.norm(corner);
  const double delta_max = std::max(0.0, 0.5 * a - slack) * 0.99;

  Rng rng(seed);
  out.samples = samples;
  for (std::size_t s = 0; s < samples; ++s) {
    const double height = rng.uniform(a, 4.0 * a);
    const double delta = rng.uniform(0.0, delta_max);
    Point u{};
    double un = 0.0;
    while (un == 0.0) {
      for (int d = 0; d < dim; ++d) u[d] = rng.uniform(-1.0, 1.0);
      un = body.norm(u);
    }
    const double radius = (delta + height) * (rng.coin() ? 1.0 : rng.uniform());
    Point y{};
    for (int d = 0; d < dim; ++d) y[d] = u[d] / un * radius;
    bool hit = false;
    for (const auto& x : out.points)
      if (body.distance(y, x) <= height * (1.0 + kGeometryTolerance)) {
        hit = true;
        break;
      }
    if (!hit) ++out.cover_failures;
  }
  out.cover_ok = out.cover_failures == 0;
  return out;
}

PiercingReport piercing_heuristic(const BallFamily& family) {
  PiercingReport out;
  if (family.balls.empty()) {
    out.verified = true;
    return out;
  }
  const int dim = family.body.dim();
  for (std::size_t i = 1; i < family.size(); ++i)
    if (volume(family.body, family.balls[i]) < volume(family.body, family.balls[out.anchor])) out.anchor = i;
  const KBall& anchor = family.balls[out.anchor];
  for (std::size_t i = 0; i < family.size(); ++i)
    if (balls_intersect(family.body, anchor, family.balls[i])) out.subfamily.push_back(i);

  // Lattice x1 + t1 Z^n inside B(x1, 3 t1); the anchor center comes first.
  std::vector<Point> candidates{anchor.center};
  std::vector<int> idx(dim, -3);
  while (true) {
    bool origin = true;
    Point k{};
    for (int d = 0; d < dim; ++d) {
      k[d] = idx[d];
      origin = origin && idx[d] == 0;
    }
    if (!origin && family.body.norm(k) <= 3.0 * (1.0 + kGeometryTolerance)) {
      Point x = anchor.center;
      for (int d = 0; d < dim; ++d) x[d] += anchor.radius * idx[d];
      candidates.push_back(x);
    }
    int d = dim;
    bool done = false;
    while (d-- > 0) {
      if (++idx[d] <= 3) break;
      idx[d] = -3;
      if (d == 0) done = true;
    }
    if (done) break;
  }
  out.candidates = candidates.size();

  const auto m = out.subfamily.size();
  std::vector<std::vector<bool>> hits(candidates.size(), std::vector<bool>(m));
  for (std::size_t c = 0; c < candidates.size(); ++c)
    for (std::size_t j = 0; j < m; ++j)
      hits[c][j] = contains(family.body, family.balls[out.subfamily[j]], candidates[c]);

  std::vector<bool> covered(m, false);
  std::vector<std::size_t> chosen;
  std::size_t remaining = m;
  while (remaining > 0) {
    std::size_t best = candidates.size();
    std::size_t best_gain = 0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      std::size_t gain = 0;
      for (std::size_t j = 0; j < m; ++j)
        if (!covered[j] && hits[c][j]) ++gain;
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    if (best_gain == 0) break;
    chosen.push_back(best);
    for (std::size_t j = 0; j < m; ++j)
      if (hits[best][j] && !covered[j]) {
        covered[j] = true;
        --remaining;
      }
  }

  // Drop points that became redundant, latest picks first.
  for (std::size_t pos = chosen.size(); pos-- > 0;) {
    bool redundant = true;
    for (std::size_t j = 0; j < m && redundant; ++j) {
      if (!hits[chosen[pos]][j]) continue;
      bool other = false;
      for (std::size_t q = 0; q < chosen.size(); ++q)
        if (q != pos && hits[chosen[q]][j]) other = true;
      redundant = other;
    }
    if (redundant) chosen.erase(chosen.begin() + static_cast<std::ptrdiff_t>(pos));
  }

  for (auto c : chosen) out.points.push_back(candidates[c]);
  out.verified = true;
  for (auto j : out.subfamily) {
    bool pierced = false;
    for (const auto& x : out.points)
      if (contains(family.body, family.balls[j], x)) pierced = true;
    if (!pierced) out.verified = false;
  }
  return out;
}

}  // namespace dyadic_tent
