#include "dyadic_tent/corpus.hpp"

#include <cmath>

namespace dyadic_tent {

DyadicSequence random_sequence(Rng& rng, unsigned max_depth) {
  const auto depth = static_cast<unsigned>(rng.integer(0, max_depth));
  DyadicSequence g;
  for (unsigned level = 0; level <= depth; ++level)
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << level); ++k) {
      if (rng.uniform() >= 0.7) continue;
      const double v = rng.uniform() < 0.2 ? static_cast<double>(rng.integer(-1, 1)) : rng.uniform(-1.0, 1.0);
      g.set(DyadicIndex(level, k), v);
    }
  return g;
}

DyadicSequence random_nonnegative_sequence(Rng& rng, unsigned max_depth) {
  const auto depth = static_cast<unsigned>(rng.integer(0, max_depth));
  DyadicSequence g;
  for (unsigned level = 0; level <= depth; ++level)
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << level); ++k) g.set(DyadicIndex(level, k), rng.uniform());
  return g;
}

StepFunction random_step_function(Rng& rng, unsigned min_depth, unsigned max_depth) {
  const auto depth = static_cast<unsigned>(rng.integer(min_depth, max_depth));
  std::vector<double> values(std::size_t{1} << depth);
  for (auto& v : values) v = rng.uniform(-1.0, 1.0);
  return {depth, std::move(values)};
}

StepFunction random_mean_zero_step_function(Rng& rng, unsigned min_depth, unsigned max_depth) {
  const auto f = random_step_function(rng, min_depth, max_depth);
  auto expansion = haar_transform(f);
  expansion.mean = 0.0;
  return inverse_haar(expansion, f.depth());
}

BallFamily random_family(Rng& rng, const ConvexBody& body, std::size_t max_balls) {
  BallFamily family{body, {}};
  const auto count = static_cast<std::size_t>(rng.integer(1, static_cast<std::int64_t>(max_balls)));
  for (std::size_t i = 0; i < count; ++i) {
    KBall ball;
    for (int d = 0; d < body.dim(); ++d) ball.center[d] = rng.uniform(0.0, 4.0);
    ball.radius = rng.uniform(0.2, 1.5);
    ball.weight = 1.0 - rng.uniform();
    family.balls.push_back(ball);
  }
  return family;
}

std::vector<ChainAtom> random_atoms(Rng& rng, unsigned depth, std::size_t max_atoms) {
  std::vector<ChainAtom> atoms;
  const auto count = static_cast<std::size_t>(rng.integer(1, static_cast<std::int64_t>(max_atoms)));
  for (std::size_t i = 0; i < count; ++i) {
    ChainAtom atom;
    const auto cell = static_cast<std::uint64_t>(rng.integer(0, (std::int64_t{1} << depth) - 1));
    atom.point = DyadicIndex(depth, cell).left();
    atom.lambda = 1.0 - rng.uniform();
    for (unsigned level = 0; level <= depth; ++level)
      if (rng.uniform() < 0.8) atom.signs[level] = rng.coin() ? 1 : -1;
    if (atom.signs.empty()) atom.signs[depth] = 1;
    atoms.push_back(std::move(atom));
  }
  return atoms;
}

}  // namespace dyadic_tent
