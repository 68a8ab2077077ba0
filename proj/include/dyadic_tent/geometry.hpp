#pragma once

// Finite families of K-balls for K the unit ball of l^r in R^n (n <= 3):
// intersection graphs, overlap, coloring, discrete S^1/T^1 norms, Vitali
// selection, the weak-type bound for the non-tangential maximal operator,
// separated nets and piercing sets.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dyadic_tent {

using Point = std::array<double, 3>;

/// Relative slack used by every closed-ball membership test.
inline constexpr double kGeometryTolerance = 1e-12;

/// Unit ball of l^r in R^n.
class ConvexBody {
public:
  /// Throws std::invalid_argument unless 1 <= dim <= 3 and r >= 1 (r may be +inf).
  ConvexBody(int dim, double r);

  static ConvexBody linf(int dim);
  static ConvexBody l2(int dim);
  static ConvexBody l1(int dim);

  int dim() const { return dim_; }
  double exponent() const { return r_; }
  bool is_box() const;
  /// "linf", "l2", "l1", or "l<r>".
  std::string name() const;

  double norm(const Point& v) const;
  double distance(const Point& a, const Point& b) const;
  double unit_ball_volume() const;

private:
  int dim_;
  double r_;
};

struct KBall {
  Point center{};
  double radius = 1.0;
  double weight = 1.0;
};

struct BallFamily {
  ConvexBody body = ConvexBody::linf(1);
  std::vector<KBall> balls;

  std::size_t size() const { return balls.size(); }
  std::vector<double> weights() const;
  /// Throws std::invalid_argument for non-positive radii or non-finite data.
  void validate() const;
};

double volume(const ConvexBody& body, const KBall& ball);
bool contains(const ConvexBody& body, const KBall& ball, const Point& x);
/// Closed balls: true iff ||c1 - c2||_K <= r1 + r2.
bool balls_intersect(const ConvexBody& body, const KBall& a, const KBall& b);

/// adjacency[i] lists j != i whose balls meet ball i.
std::vector<std::vector<std::size_t>> intersection_graph(const BallFamily& family);

struct OverlapResult {
  double value = 0.0;
  Point witness{};
  /// Set for non-box bodies, where the value is the best candidate found.
  bool lower_bound = false;
};

/// max_x sum_B |w_B| 1_B(x): exact on the facet-coordinate grid for boxes.
OverlapResult weighted_overlap(const BallFamily& family, const std::vector<double>& weights);

/// Total overlap O(S): the largest number of balls sharing a point.
OverlapResult total_overlap(const BallFamily& family);

/// Weighted overlap with the family's own weights.
OverlapResult t1_discrete_norm(const BallFamily& family);

/// Essential supremum of sum_B |w_B| 1_B over the open cells of the box
/// arrangement. Box families only.
double essential_overlap(const BallFamily& family, const std::vector<double>& weights);

struct Coloring {
  std::vector<int> color;          ///< color[i] for ball i
  int colors = 0;
  std::vector<std::size_t> order;  ///< nondecreasing volume, ties by index
  int max_back_degree = 0;         ///< max neighbours later in `order`
  int degeneracy = 0;              ///< graph degeneracy (min-degree peeling)
  std::optional<int> chromatic_number;
};

inline constexpr std::size_t kExactChromaticLimit = 16;

/// Greedy coloring in reverse smallest-volume-first order.
Coloring color_family(const BallFamily& family, std::size_t exact_limit = kExactChromaticLimit);

bool is_proper_coloring(const BallFamily& family, const std::vector<int>& color);

inline constexpr std::size_t kIndependentSetLimit = 24;

struct SubfamilyResult {
  double value = 0.0;
  std::vector<std::size_t> members;
};

/// max sum |w_B| over pairwise disjoint subfamilies, by branch and bound.
/// Throws std::length_error above `limit` balls.
SubfamilyResult max_weight_disjoint(const BallFamily& family, const std::vector<double>& weights,
                                    std::size_t limit = kIndependentSetLimit);

/// S^1 norm with the family's own weights.
SubfamilyResult s1_discrete_norm(const BallFamily& family, std::size_t limit = kIndependentSetLimit);

struct DiscreteDualityReport {
  double pairing_abs = 0.0;
  double s1 = 0.0;
  double t1 = 0.0;
  std::optional<double> ratio;  ///< empty when the pairing and a norm both vanish
  bool lower_bound = false;     ///< T^1 came from candidate search, not exact
};

/// |sum f_B g_B| / (||f||_{S^1} ||g||_{T^1}). Throws std::logic_error for a
/// nonzero pairing against a zero norm.
DiscreteDualityReport discrete_duality_check(const BallFamily& family, const std::vector<double>& f,
                                             const std::vector<double>& g);

struct VitaliResult {
  std::vector<std::size_t> selected;
  bool cover_ok = true;
  std::size_t checked_points = 0;
  double dilation_constant = 1.0;  ///< 3^n
};

/// Greedy by nonincreasing radius keeping balls disjoint from those kept; checks
/// that 3-dilates of the kept balls cover each ball's center and sampled boundary.
VitaliResult vitali_select(const BallFamily& family);

/// max over balls containing x of |w_B| / |B|^{1/p}.
double maximal_function(const BallFamily& family, double p, const Point& x);

struct WeakTypeReport {
  double p = 1.0;
  double lambda = 0.0;
  double level_set_measure = 0.0;  ///< |{M_p > lambda}|
  double lhs = 0.0;                ///< lambda^p |{M_p > lambda}|
  double sp_norm_p = 0.0;          ///< ||f||_{S^p}^p
  double bound = 0.0;              ///< 3^n ||f||_{S^p}^p
  bool exact = true;               ///< false when the measure is a Monte Carlo estimate
  bool holds = true;
};

/// Measure of a union of balls: exact cell sweep for boxes, Monte Carlo otherwise.
double union_measure(const ConvexBody& body, const std::vector<KBall>& balls, bool* exact = nullptr,
                     std::size_t samples = 200000);

WeakTypeReport maximal_weak_type(const BallFamily& family, double p, double lambda,
                                 std::size_t samples = 200000);

inline constexpr int kDefaultNetSteps = 20;

struct NetReport {
  double a = 1.0;
  std::vector<Point> points;
  std::size_t samples = 0;
  std::size_t cover_failures = 0;
  bool separated = true;   ///< pairwise distances >= a/2
  bool cover_ok = true;
  std::size_t bound_3n = 0;
  std::size_t bound_5n = 0;
  bool within_5n = true;
  bool exceeds_3n = false;
};

/// Greedy a/2-separated subset of the lattice (a/steps) Z^n inside B(0, a),
/// scanned in lexicographic order, plus a sampled check that its cones cover
/// the truncated enlarged cone {(y,s): ||y|| <= delta + s, s >= a}, delta < a/2.
NetReport separated_net(const ConvexBody& body, double a, int steps = kDefaultNetSteps,
                        std::size_t samples = 2000, std::uint64_t seed = 1);

struct PiercingReport {
  std::size_t anchor = 0;               ///< index of a smallest-volume ball
  std::vector<std::size_t> subfamily;   ///< balls meeting the anchor
  std::size_t candidates = 0;
  std::vector<Point> points;
  bool verified = false;
};

/// Lattice candidates of spacing t1 in B(x1, 3 t1), reduced greedily to a
/// minimal piercing set of the balls meeting the smallest ball B(x1, t1).
PiercingReport piercing_heuristic(const BallFamily& family);

}  // namespace dyadic_tent
