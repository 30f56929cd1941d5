#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sketchsolve/linalg.hpp"
#include "sketchsolve/rng.hpp"
#include "sketchsolve/sketch.hpp"

namespace sketchsolve {

/// Dense overdetermined least-squares instance min ||Ax - b||^2.
/// Rank is checked at the first factorization, not here.
class Problem {
 public:
  /// Throws BadDimensions, DimensionMismatch, NonFinite.
  Problem(DenseMatrix a, Vector b);

  const DenseMatrix& a() const { return a_; }
  const Vector& b() const { return b_; }
  Index n() const { return a_.rows(); }
  Index d() const { return a_.cols(); }

 private:
  DenseMatrix a_;
  Vector b_;
};

enum class ScheduleMode { OptimalHaar, OptimalGaussian, Custom };

/// Step sizes mu_t and momentum beta_t for the sketched Newton iteration.
///
/// OptimalHaar uses mu = theta1/theta2 at the finite-sample ratios
/// gamma = d/n, xi = m/n; OptimalGaussian uses mu = (1 - d/m)^2. Both have
/// beta = 0. Custom lists repeat their last entry past their length.
class SolverSchedule {
 public:
  struct Step {
    double mu;
    double beta;
  };

  static SolverSchedule optimal_haar() { return SolverSchedule(ScheduleMode::OptimalHaar, {}, {}); }
  static SolverSchedule optimal_gaussian() {
    return SolverSchedule(ScheduleMode::OptimalGaussian, {}, {});
  }
  /// Throws BadSchedule on empty lists or negative / non-finite mu.
  static SolverSchedule custom(std::vector<double> mu, std::vector<double> beta);
  /// OptimalHaar for orthogonal kinds, OptimalGaussian for Gaussian.
  static SolverSchedule optimal_for(SketchKind kind);

  ScheduleMode mode() const { return mode_; }
  Step step(std::size_t t, Index n, Index d, Index m) const;

 private:
  SolverSchedule(ScheduleMode mode, std::vector<double> mu, std::vector<double> beta)
      : mode_(mode), mu_(std::move(mu)), beta_(std::move(beta)) {}

  ScheduleMode mode_;
  std::vector<double> mu_;
  std::vector<double> beta_;
};

enum class InitMode { Zero, IsotropicDelta };

struct IhsConfig {
  SketchKind kind = SketchKind::Srht;
  Index m = 0;
  /// 1: new sketch every iteration; k: every k iterations; 0: never after t = 0.
  Index refresh_period = 1;
  Index max_iters = 10;
  std::uint64_t seed = 0;
  InitMode init = InitMode::Zero;
  /// Stop early when ||A^T(Ax - b)|| / ||A^T b|| <= tol; 0 runs all iterations.
  double tol = 0.0;
};

struct PhaseTimes {
  double sketch = 0.0;
  double factor = 0.0;
  double iterate = 0.0;
};

struct SolveTrace {
  /// ||A(x_t - x*)||^2 when x* was supplied, otherwise ||A^T(A x_t - b)||.
  std::vector<double> errors;
  bool squared_errors = false;
  /// Wall-clock seconds since the solve started, per recorded iterate.
  std::vector<double> cum_seconds;
  Vector x;
  PhaseTimes phases;
  /// Seeds of every sketch the solver drew, in order (replayable via sample()).
  std::vector<std::uint64_t> sketch_seeds;
  bool converged = false;

  Index iterations() const { return static_cast<Index>(errors.size()) - 1; }
};

/// x0 = x* + R^{-1} delta with delta uniform on the unit sphere of R^d and
/// A = QR, so Delta_0 = Q^T A (x0 - x*) is an isotropic unit vector.
Vector isotropic_start(const Problem& p, const Vector& x_star, RngStream& rng);

/// Iterative Hessian sketch:
/// x_{t+1} = x_t - mu_t H_t^{-1} A^T(A x_t - b) + beta_t (x_t - x_{t-1}),
/// H_t = (S_t A)^T (S_t A), S_t refreshed per cfg.refresh_period.
///
/// Randomness: substream 0 of cfg.seed drives the isotropic start,
/// substream 1 draws one operator seed per sketch.
/// Throws BadDimensions, DimensionMismatch, InitRequiresXStar,
/// NotPositiveDefinite (a singular H_t survives one resample).
SolveTrace ihs_solve(const Problem& p, const IhsConfig& cfg, const SolverSchedule& sched,
                     const std::optional<Vector>& x_star = std::nullopt);

/// Conjugate gradient on A^T A x = A^T b without forming A^T A.
SolveTrace cg_solve(const Problem& p, Index max_iters, double tol,
                    const std::optional<Vector>& x_star = std::nullopt,
                    const std::optional<Vector>& x0 = std::nullopt);

/// ceil(d log d), clamped to [d, n].
Index default_pcg_sketch_size(Index n, Index d);

/// Sketch-preconditioned CG: one sketch S, SA = QR, then CG on
/// min_y ||A R^{-1} y - b||^2 and x = R^{-1} y. m = 0 selects
/// default_pcg_sketch_size. Throws RankDeficient.
SolveTrace pcg_solve(const Problem& p, Index m, SketchKind kind, Index max_iters, double tol,
                     std::uint64_t seed, const std::optional<Vector>& x_star = std::nullopt,
                     const std::optional<Vector>& x0 = std::nullopt);

/// Direct QR solve, reported as a two-point trace (x0 = 0, then x*).
SolveTrace direct_solve(const Problem& p, const std::optional<Vector>& x_star = std::nullopt);

}  // namespace sketchsolve
