#include "dyadic_tent/dyadic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace dyadic_tent {

DyadicIndex::DyadicIndex(unsigned level, std::uint64_t position) : level_(level), position_(position) {
  if (level > kMaxLevel)
    throw std::invalid_argument("dyadic level " + std::to_string(level) + " exceeds " +
                                std::to_string(kMaxLevel));
  if (position >= (std::uint64_t{1} << level))
    throw std::invalid_argument("dyadic position " + std::to_string(position) +
                                " out of range at level " + std::to_string(level));
}

DyadicIndex DyadicIndex::containing(double x, unsigned level) {
  if (!(x >= 0.0 && x < 1.0))
    throw std::invalid_argument("point must lie in [0,1)");
  // x * 2^level is exact for binary64 and floor picks the half-open cell.
  auto position = static_cast<std::uint64_t>(std::floor(std::ldexp(x, static_cast<int>(level))));
  return {level, position};
}

double DyadicIndex::length() const { return std::ldexp(1.0, -static_cast<int>(level_)); }
double DyadicIndex::left() const {
  return std::ldexp(static_cast<double>(position_), -static_cast<int>(level_));
}
double DyadicIndex::right() const {
  return std::ldexp(static_cast<double>(position_ + 1), -static_cast<int>(level_));
}

DyadicIndex DyadicIndex::left_child() const { return {level_ + 1, 2 * position_}; }
DyadicIndex DyadicIndex::right_child() const { return {level_ + 1, 2 * position_ + 1}; }

DyadicIndex DyadicIndex::parent() const {
  if (level_ == 0)
    throw std::domain_error("the root interval [0,1) has no parent");
  return {level_ - 1, position_ / 2};
}

DyadicIndex DyadicIndex::ancestor(unsigned level) const {
  if (level > level_)
    throw std::domain_error("ancestor level deeper than the interval itself");
  return {level, position_ >> (level_ - level)};
}

bool DyadicIndex::contains(const DyadicIndex& other) const {
  return other.level_ >= level_ && (other.position_ >> (other.level_ - level_)) == position_;
}

bool DyadicIndex::contains_point(double x) const { return x >= left() && x < right(); }

std::string DyadicIndex::to_string() const {
  return "(" + std::to_string(level_) + "," + std::to_string(position_) + ")";
}

DyadicIndex navigate(const DyadicIndex& node, Step step) {
  switch (step) {
    case Step::left_child: return node.left_child();
    case Step::right_child: return node.right_child();
    case Step::parent: return node.parent();
  }
  throw std::invalid_argument("unknown navigation step");
}

Relation relate(const DyadicIndex& first, const DyadicIndex& second) {
  if (first == second) return Relation::equal;
  if (first.contains(second)) return Relation::first_contains_second;
  if (second.contains(first)) return Relation::second_contains_first;
  return Relation::disjoint;
}

DyadicSequence::DyadicSequence(std::initializer_list<std::pair<const DyadicIndex, double>> init) {
  for (const auto& [index, value] : init) set(index, value);
}

double DyadicSequence::operator[](const DyadicIndex& index) const {
  auto it = entries_.find(index);
  return it == entries_.end() ? 0.0 : it->second;
}

void DyadicSequence::set(const DyadicIndex& index, double value) {
  if (!std::isfinite(value))
    throw std::invalid_argument("sequence entry at " + index.to_string() + " is not finite");
  if (value == 0.0)
    entries_.erase(index);
  else
    entries_[index] = value;
}

void DyadicSequence::add(const DyadicIndex& index, double value) { set(index, (*this)[index] + value); }

unsigned DyadicSequence::depth() const {
  unsigned deepest = 0;
  // Keys are ordered by level first, so the last entry is the deepest.
  if (!entries_.empty()) deepest = entries_.rbegin()->first.level();
  return deepest;
}

double DyadicSequence::max_abs() const {
  double m = 0.0;
  for (const auto& [_, v] : entries_) m = std::max(m, std::abs(v));
  return m;
}

DyadicSequence operator+(const DyadicSequence& a, const DyadicSequence& b) {
  DyadicSequence sum = a;
  for (const auto& [index, value] : b) sum.add(index, value);
  return sum;
}

DyadicSequence operator*(double scale, const DyadicSequence& a) {
  DyadicSequence out;
  for (const auto& [index, value] : a) out.set(index, scale * value);
  return out;
}

DyadicSequence restrict(const DyadicSequence& g, unsigned max_level) {
  DyadicSequence out;
  for (const auto& [index, value] : g) {
    if (index.level() > max_level) break;
    out.set(index, value);
  }
  return out;
}

bool is_antichain(const std::vector<DyadicIndex>& members) {
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (relate(members[i], members[j]) != Relation::disjoint) return false;
  return true;
}

Antichain::Antichain(std::vector<DyadicIndex> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  if (!is_antichain(members_))
    throw std::invalid_argument("antichain members must be pairwise disjoint intervals");
}

std::uint32_t node_id(const DyadicIndex& index) {
  if (index.level() > 31) throw std::length_error("node_id is limited to levels <= 31");
  return static_cast<std::uint32_t>((std::uint64_t{1} << index.level()) - 1 + index.position());
}

DyadicIndex node_from_id(std::uint32_t id) {
  const unsigned level = std::bit_width(std::uint64_t{id} + 1) - 1;
  return {level, std::uint64_t{id} + 1 - (std::uint64_t{1} << level)};
}

namespace {

// Antichains of the subtree rooted at `node`, truncated at max_depth. Each one
// is either {node} or a union of antichains of the two child subtrees.
std::vector<std::uint32_t> subtree_antichains(const DyadicIndex& node, unsigned max_depth) {
  const std::uint32_t self = std::uint32_t{1} << node_id(node);
  if (node.level() == max_depth) return {0u, self};
  const auto left = subtree_antichains(node.left_child(), max_depth);
  const auto right = subtree_antichains(node.right_child(), max_depth);
  std::vector<std::uint32_t> out;
  out.reserve(left.size() * right.size() + 1);
  for (auto l : left)
    for (auto r : right) out.push_back(l | r);
  out.push_back(self);
  return out;
}

void check_oracle_depth(unsigned max_depth, unsigned oracle_limit) {
  if (oracle_limit > kMaxOracleDepth)
    throw std::length_error("oracle limit " + std::to_string(oracle_limit) +
                            " exceeds the supported maximum " + std::to_string(kMaxOracleDepth));
  if (max_depth > oracle_limit)
    throw std::length_error("antichain enumeration depth " + std::to_string(max_depth) +
                            " exceeds the oracle limit " + std::to_string(oracle_limit));
}

}  // namespace

const std::vector<std::uint32_t>& antichain_masks(unsigned max_depth, unsigned oracle_limit) {
  check_oracle_depth(max_depth, oracle_limit);
  static std::mutex mutex;
  static std::vector<std::vector<std::uint32_t>> cache(kMaxOracleDepth + 1);
  std::lock_guard lock(mutex);
  auto& slot = cache[max_depth];
  if (slot.empty()) slot = subtree_antichains(DyadicIndex::root(), max_depth);
  return slot;
}

Antichain antichain_from_mask(std::uint32_t mask) {
  std::vector<DyadicIndex> members;
  while (mask != 0) {
    const auto id = static_cast<std::uint32_t>(std::countr_zero(mask));
    members.push_back(node_from_id(id));
    mask &= mask - 1;
  }
  return Antichain(std::move(members));
}

std::vector<Antichain> enumerate_antichains(unsigned max_depth, unsigned oracle_limit) {
  const auto& masks = antichain_masks(max_depth, oracle_limit);
  std::vector<Antichain> out;
  out.reserve(masks.size());
  for (auto mask : masks) out.push_back(antichain_from_mask(mask));
  return out;
}

std::uint64_t antichain_count(unsigned depth) {
  std::uint64_t n = 2;
  for (unsigned d = 1; d <= depth; ++d) n = n * n + 1;
  return n;
}

}  // namespace dyadic_tent
