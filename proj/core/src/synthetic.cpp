#include "sketchsolve/synthetic.hpp"

#include <cmath>

#include "sketchsolve/error.hpp"

namespace sketchsolve {

SyntheticProblem generate_problem(Index n, Index d, double decay, std::uint64_t seed) {
  require(d >= 1 && n >= d, ErrorCode::BadDimensions, "generate_problem: need n >= d >= 1");
  require(decay > 0.0 && decay < 1.0, ErrorCode::BadDimensions,
          "generate_problem: decay must lie in (0, 1)");
  const RngStream root(seed);
  RngStream u_rng = root.substream(0);
  RngStream v_rng = root.substream(1);
  RngStream x_rng = root.substream(2);
  RngStream noise_rng = root.substream(3);

  const DenseMatrix u = qr_thin(gaussian_matrix(n, d, u_rng)).q;
  const DenseMatrix v = qr_thin(gaussian_matrix(d, d, v_rng)).q;
  Vector sigma(d);
  for (Index j = 0; j < d; ++j) sigma[j] = std::pow(decay, static_cast<double>(j + 1));

  DenseMatrix a = u * sigma.asDiagonal() * v.transpose();
  Vector x = gaussian_vector(d, x_rng);
  Vector b = a * x + 0.01 * gaussian_vector(n, noise_rng);
  return {Problem(std::move(a), std::move(b)), std::move(x), std::move(sigma)};
}

}  // namespace sketchsolve
