#pragma once

// Dyadic intervals of [0,1), finitely supported sequences indexed by them,
// and disjoint collections (antichains) of such intervals.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace dyadic_tent {

/// Deepest level representable by a DyadicIndex.
inline constexpr unsigned kMaxLevel = 62;

/// Default and hard maximum tree depth for brute-force antichain enumeration.
/// Depth 4 has 458330 antichains; depth 5 has about 2.1e11.
inline constexpr unsigned kDefaultOracleDepth = 4;
inline constexpr unsigned kMaxOracleDepth = 4;

/// The half-open interval [k 2^-j, (k+1) 2^-j).
class DyadicIndex {
public:
  constexpr DyadicIndex() = default;
  DyadicIndex(unsigned level, std::uint64_t position);

  static constexpr DyadicIndex root() { return {}; }

  /// The generation-`level` interval containing the point x in [0,1).
  static DyadicIndex containing(double x, unsigned level);

  unsigned level() const { return level_; }
  std::uint64_t position() const { return position_; }

  double length() const;
  double left() const;
  double right() const;
  double midpoint() const { return 0.5 * (left() + right()); }

  DyadicIndex left_child() const;
  DyadicIndex right_child() const;
  DyadicIndex parent() const;

  /// The ancestor at generation `level` (itself when level == this->level()).
  DyadicIndex ancestor(unsigned level) const;

  bool contains(const DyadicIndex& other) const;
  bool contains_point(double x) const;

  std::string to_string() const;

  auto operator<=>(const DyadicIndex&) const = default;

private:
  unsigned level_ = 0;
  std::uint64_t position_ = 0;
};

enum class Child { left, right };
enum class Step { left_child, right_child, parent };

DyadicIndex navigate(const DyadicIndex& node, Step step);

enum class Relation { equal, first_contains_second, second_contains_first, disjoint };

Relation relate(const DyadicIndex& first, const DyadicIndex& second);

/// Finitely supported real sequence on the dyadic tree. Zero entries are not
/// stored, so support() is exactly the set of nonzero entries.
class DyadicSequence {
public:
  using Storage = std::map<DyadicIndex, double>;

  DyadicSequence() = default;
  DyadicSequence(std::initializer_list<std::pair<const DyadicIndex, double>> init);

  double operator[](const DyadicIndex& index) const;
  void set(const DyadicIndex& index, double value);
  void add(const DyadicIndex& index, double value);

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  /// Deepest level carrying a nonzero entry; 0 for the zero sequence.
  unsigned depth() const;

  /// Entries in (level, position) order.
  const Storage& entries() const { return entries_; }
  Storage::const_iterator begin() const { return entries_.begin(); }
  Storage::const_iterator end() const { return entries_.end(); }

  double max_abs() const;

  bool operator==(const DyadicSequence&) const = default;

private:
  Storage entries_;
};

DyadicSequence operator+(const DyadicSequence& a, const DyadicSequence& b);
DyadicSequence operator*(double scale, const DyadicSequence& a);

/// Agrees with g on levels <= max_level and vanishes deeper.
DyadicSequence restrict(const DyadicSequence& g, unsigned max_level);

/// Pairwise disjoint dyadic intervals, kept sorted in (level, position) order.
class Antichain {
public:
  Antichain() = default;
  /// Throws std::invalid_argument if two members are nested or repeated.
  explicit Antichain(std::vector<DyadicIndex> members);

  const std::vector<DyadicIndex>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  auto operator<=>(const Antichain&) const = default;

private:
  std::vector<DyadicIndex> members_;
};

bool is_antichain(const std::vector<DyadicIndex>& members);

/// Heap numbering of the complete tree: root 0, node (j,k) -> 2^j - 1 + k.
std::uint32_t node_id(const DyadicIndex& index);
DyadicIndex node_from_id(std::uint32_t id);

/// All antichains of the tree restricted to levels <= max_depth, the empty one
/// included, as bitmasks over node_id(). Cached per depth.
const std::vector<std::uint32_t>& antichain_masks(unsigned max_depth,
                                                  unsigned oracle_limit = kDefaultOracleDepth);

Antichain antichain_from_mask(std::uint32_t mask);

/// Every antichain at levels <= max_depth, each exactly once, in a fixed order.
/// Throws std::length_error when max_depth exceeds oracle_limit.
std::vector<Antichain> enumerate_antichains(unsigned max_depth,
                                            unsigned oracle_limit = kDefaultOracleDepth);

/// Number of antichains of a complete tree of the given depth: N(0)=2, N(d)=N(d-1)^2+1.
std::uint64_t antichain_count(unsigned depth);

}  // namespace dyadic_tent
