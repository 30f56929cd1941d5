#pragma once

#include <cstdint>

#include "sketchsolve/solver.hpp"

namespace sketchsolve {

struct SyntheticProblem {
  Problem problem;
  Vector x_planted;
  /// sigma_j = decay^j, j = 1..d.
  Vector singular_values;
};

/// A = U diag(sigma) V^T with Haar U (n x d), V (d x d);
/// b = A x_planted + 0.01 * noise. Deterministic in seed.
/// Throws BadDimensions.
SyntheticProblem generate_problem(Index n, Index d, double decay, std::uint64_t seed);

}  // namespace sketchsolve
