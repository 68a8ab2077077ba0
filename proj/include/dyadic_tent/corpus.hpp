#pragma once

// Random inputs for property runs and empirical-constant experiments.

#include "dyadic_tent/atoms.hpp"
#include "dyadic_tent/dyadic.hpp"
#include "dyadic_tent/geometry.hpp"
#include "dyadic_tent/haar.hpp"
#include "dyadic_tent/random.hpp"

namespace dyadic_tent {

/// Depth uniform in [0, max_depth]; each node nonzero with probability 0.7.
/// A fifth of the values are drawn from {-1, 0, 1} so ties actually occur.
DyadicSequence random_sequence(Rng& rng, unsigned max_depth);

/// Entries uniform in [0, 1) at every node down to a depth in [0, max_depth].
DyadicSequence random_nonnegative_sequence(Rng& rng, unsigned max_depth);

/// Depth uniform in [min_depth, max_depth], values uniform in [-1, 1].
StepFunction random_step_function(Rng& rng, unsigned min_depth, unsigned max_depth);

/// Same with the mean removed.
StepFunction random_mean_zero_step_function(Rng& rng, unsigned min_depth, unsigned max_depth);

/// 1..max_balls balls with centers in [0, 4]^n, radii in [0.2, 1.5] and
/// weights in (0, 1].
BallFamily random_family(Rng& rng, const ConvexBody& body, std::size_t max_balls);

/// Atoms at random dyadic points of level `depth`, each with a random subset
/// of signed levels.
std::vector<ChainAtom> random_atoms(Rng& rng, unsigned depth, std::size_t max_atoms);

}  // namespace dyadic_tent
