#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sketchsolve/linalg.hpp"
#include "sketchsolve/rng.hpp"
#include "sketchsolve/sketch.hpp"

namespace sketchsolve {

struct SpectralReport {
  SketchKind kind = SketchKind::Haar;
  Index n = 0, d = 0, m = 0, trials = 0;
  std::uint64_t seed = 0;
  /// Factor applied to eigenvalues of U^T S^T S U before pooling:
  /// n/m for orthogonal kinds, 1 for Gaussian (already E[S^T S] = I).
  double scale = 1.0;
  /// Pooled, sorted, scaled eigenvalues from all trials.
  std::vector<double> eigenvalues;
  double min_unscaled = 0.0;
  double max_unscaled = 0.0;
  /// bins + 1 edges over [0, 1.05 * max], densities normalized to unit mass.
  std::vector<double> histogram_edges;
  std::vector<double> histogram_density;
  /// Means of 1/lambda and 1/lambda^2 over the unscaled eigenvalues.
  double theta1_hat = 0.0;
  double theta2_hat = 0.0;
  /// Against Marchenko-Pastur with shape d/m.
  double ks_to_mp = 0.0;
  /// Against the limiting orthogonal-sketch law; NaN when m == n.
  double ks_to_haar_theory = 0.0;
};

/// Eigenvalues (ascending) of U^T S^T S U for one fresh U (thin QR of an
/// n x d Gaussian) and one fresh sketch. An SRHT draw keeping fewer than d
/// rows is redrawn once.
std::vector<double> sketched_gram_eigenvalues(SketchKind kind, Index n, Index d, Index m,
                                              RngStream& rng);

/// Throws BadDimensions unless d < m <= n (d == m allowed only for m == n)
/// and trials >= 1, or bins < 1.
SpectralReport empirical_spectrum(SketchKind kind, Index n, Index d, Index m, Index trials,
                                  Index bins, RngStream& rng);

struct InverseMoments {
  double theta1 = 0.0;
  double theta2 = 0.0;
  /// xi - gamma < 0.05: the inverse moments are heavy-tailed there.
  bool ill_conditioned = false;
};

InverseMoments inverse_moment_estimates(SketchKind kind, Index n, Index d, Index m, Index trials,
                                        RngStream& rng);

/// max over sample points of |F_n(x) - cdf(x)|, F_n counting ties at x.
/// Throws EmptySamples.
double ks_distance(std::span<const double> sorted_samples, const std::function<double(double)>& cdf);

/// Two-sample sup |F_a - F_b|. Throws EmptySamples.
double ks_two_sample(std::span<const double> sorted_a, std::span<const double> sorted_b);

/// Tabulated CDF of the scaled orthogonal-sketch law: trapezoidal integral
/// of haar_density_rescaled on a grid around its continuous support,
/// normalized to 1 minus the atom at y = 1/xi, plus a jump there.
class HaarTheoryCdf {
 public:
  HaarTheoryCdf(double gamma, double xi, int points = 2000, double eps = 1e-4);
  double operator()(double y) const;
  double density(double y) const;

 private:
  double gamma_, xi_, eps_;
  double atom_;
  std::vector<double> grid_;
  std::vector<double> cdf_;
};

}  // namespace sketchsolve
