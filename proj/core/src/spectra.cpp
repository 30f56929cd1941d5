#include "sketchsolve/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sketchsolve/error.hpp"
#include "sketchsolve/parallel.hpp"
#include "sketchsolve/theory.hpp"

namespace sketchsolve {

namespace {

void validate_sizes(SketchKind kind, Index n, Index d, Index m, Index trials) {
  require(d >= 1 && m <= n && (d < m || m == n), ErrorCode::BadDimensions,
          "spectra: need d < m <= n (d=" + std::to_string(d) + ", m=" + std::to_string(m) +
              ", n=" + std::to_string(n) + ")");
  require(trials >= 1, ErrorCode::BadDimensions, "spectra: trials must be >= 1");
  require(kind != SketchKind::Srht || is_power_of_two(n), ErrorCode::NotPowerOfTwo,
          "spectra: SRHT needs n a power of two");
}

std::vector<std::vector<double>> run_trials(SketchKind kind, Index n, Index d, Index m,
                                            Index trials, RngStream& rng) {
  std::vector<std::vector<double>> per_trial(static_cast<std::size_t>(trials));
  const RngStream root = rng;
  parallel_for(per_trial.size(), [&](std::size_t t) {
    RngStream trial_rng = root.substream(t);
    per_trial[t] = sketched_gram_eigenvalues(kind, n, d, m, trial_rng);
  });
  rng.next_u64();  // advance the caller's stream so repeated calls differ
  return per_trial;
}

}  // namespace

std::vector<double> sketched_gram_eigenvalues(SketchKind kind, Index n, Index d, Index m,
                                              RngStream& rng) {
  const DenseMatrix u = qr_thin(gaussian_matrix(n, d, rng)).q;
  for (int attempt = 0; attempt < 2; ++attempt) {
    const SketchOperator op = sample(kind, m, n, rng);
    if (op.rows() < d) continue;
    const DenseMatrix su = apply(op, u);
    DenseMatrix gram = DenseMatrix::Zero(d, d);
    gram.selfadjointView<Eigen::Lower>().rankUpdate(su.transpose());
    gram = gram.selfadjointView<Eigen::Lower>();
    const Vector ev = sym_eigvals(gram);
    return {ev.data(), ev.data() + ev.size()};
  }
  fail(ErrorCode::RankDeficient, "spectra: sketch kept fewer than d rows twice");
}

SpectralReport empirical_spectrum(SketchKind kind, Index n, Index d, Index m, Index trials,
                                  Index bins, RngStream& rng) {
  validate_sizes(kind, n, d, m, trials);
  require(bins >= 1, ErrorCode::BadDimensions, "spectra: bins must be >= 1");

  SpectralReport rep;
  rep.kind = kind;
  rep.n = n;
  rep.d = d;
  rep.m = m;
  rep.trials = trials;
  rep.seed = rng.key();
  rep.scale = kind == SketchKind::Gaussian ? 1.0 : static_cast<double>(n) / static_cast<double>(m);

  const auto per_trial = run_trials(kind, n, d, m, trials, rng);
  double inv1 = 0.0, inv2 = 0.0;
  rep.eigenvalues.reserve(static_cast<std::size_t>(trials * d));
  for (const auto& ev : per_trial) {
    for (double lambda : ev) {
      inv1 += 1.0 / lambda;
      inv2 += 1.0 / (lambda * lambda);
      rep.eigenvalues.push_back(rep.scale * lambda);
    }
  }
  std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end());
  const double count = static_cast<double>(rep.eigenvalues.size());
  rep.theta1_hat = inv1 / count;
  rep.theta2_hat = inv2 / count;
  rep.min_unscaled = rep.eigenvalues.front() / rep.scale;
  rep.max_unscaled = rep.eigenvalues.back() / rep.scale;

  const double top = 1.05 * std::max(rep.eigenvalues.back(), 1e-300);
  const double width = top / static_cast<double>(bins);
  rep.histogram_edges.resize(static_cast<std::size_t>(bins + 1));
  for (Index i = 0; i <= bins; ++i) rep.histogram_edges[static_cast<std::size_t>(i)] = width * static_cast<double>(i);
  std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
  for (double v : rep.eigenvalues) {
    auto idx = static_cast<Index>(v / width);
    idx = std::clamp<Index>(idx, 0, bins - 1);
    counts[static_cast<std::size_t>(idx)] += 1.0;
  }
  rep.histogram_density.resize(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) rep.histogram_density[i] = counts[i] / (count * width);

  const double shape = static_cast<double>(d) / static_cast<double>(m);
  rep.ks_to_mp = ks_distance(rep.eigenvalues, [shape](double x) { return mp_cdf(x, shape); });
  if (m < n) {
    const HaarTheoryCdf cdf(static_cast<double>(d) / static_cast<double>(n),
                            static_cast<double>(m) / static_cast<double>(n));
    rep.ks_to_haar_theory = ks_distance(rep.eigenvalues, cdf);
  } else {
    rep.ks_to_haar_theory = std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

InverseMoments inverse_moment_estimates(SketchKind kind, Index n, Index d, Index m, Index trials,
                                        RngStream& rng) {
  validate_sizes(kind, n, d, m, trials);
  const auto per_trial = run_trials(kind, n, d, m, trials, rng);
  InverseMoments out;
  double count = 0.0;
  for (const auto& ev : per_trial) {
    for (double lambda : ev) {
      out.theta1 += 1.0 / lambda;
      out.theta2 += 1.0 / (lambda * lambda);
      count += 1.0;
    }
  }
  out.theta1 /= count;
  out.theta2 /= count;
  out.ill_conditioned =
      (static_cast<double>(m) - static_cast<double>(d)) / static_cast<double>(n) < 0.05;
  return out;
}

double ks_distance(std::span<const double> sorted_samples, const std::function<double(double)>& cdf) {
  require(!sorted_samples.empty(), ErrorCode::EmptySamples, "ks_distance: no samples");
  const double n = static_cast<double>(sorted_samples.size());
  double worst = 0.0;
  std::size_t i = 0;
  while (i < sorted_samples.size()) {
    std::size_t j = i;
    while (j < sorted_samples.size() && sorted_samples[j] == sorted_samples[i]) ++j;
    const double empirical = static_cast<double>(j) / n;
    worst = std::max(worst, std::abs(empirical - cdf(sorted_samples[i])));
    i = j;
  }
  return std::min(worst, 1.0);
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  require(!a.empty() && !b.empty(), ErrorCode::EmptySamples, "ks_two_sample: no samples");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double worst = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    worst = std::max(worst, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return worst;
}

HaarTheoryCdf::HaarTheoryCdf(double gamma, double xi, int points, double eps)
    : gamma_(gamma), xi_(xi), eps_(eps), atom_(haar_atom_at_one(AspectRatios(gamma, xi))) {
  const AspectRatios r(gamma, xi);
  require(xi < 1.0, ErrorCode::BadRatios, "haar cdf: needs xi < 1");
  require(points >= 2, ErrorCode::BadConfig, "haar cdf: needs >= 2 grid points");
  auto [lo, hi] = haar_support_edges(r);
  lo /= xi;
  hi /= xi;
  const double pad = 0.02 * (hi - lo);
  const double start = std::max(lo - pad, 1e-9);
  // Keep the spike of the atom at 1/xi out of the continuous table.
  const double stop = atom_ > 0.0 ? std::min(hi + pad, 0.5 * (hi + 1.0 / xi)) : hi + pad;
  grid_.resize(static_cast<std::size_t>(points));
  cdf_.assign(grid_.size(), 0.0);
  const double h = (stop - start) / static_cast<double>(points - 1);
  double prev = haar_density_rescaled(start, r, eps_);
  grid_[0] = start;
  for (std::size_t k = 1; k < grid_.size(); ++k) {
    grid_[k] = start + h * static_cast<double>(k);
    const double cur = haar_density_rescaled(grid_[k], r, eps_);
    cdf_[k] = cdf_[k - 1] + 0.5 * h * (prev + cur);
    prev = cur;
  }
  const double total = cdf_.back();
  require(total > 0.0, ErrorCode::NoConvergence, "haar cdf: zero mass");
  for (double& v : cdf_) v *= (1.0 - atom_) / total;
}

double HaarTheoryCdf::operator()(double y) const {
  if (y <= grid_.front()) return 0.0;
  // Eigenvalues equal to 1 come out of the eigensolver within rounding of it.
  const double jump = y >= (1.0 - 1e-9) / xi_ ? atom_ : 0.0;
  if (y >= grid_.back()) return cdf_.back() + jump;
  const auto it = std::upper_bound(grid_.begin(), grid_.end(), y);
  const auto k = static_cast<std::size_t>(it - grid_.begin());
  const double t = (y - grid_[k - 1]) / (grid_[k] - grid_[k - 1]);
  return cdf_[k - 1] + t * (cdf_[k] - cdf_[k - 1]) + jump;
}

double HaarTheoryCdf::density(double y) const {
  return haar_density_rescaled(y, AspectRatios(gamma_, xi_), eps_);
}

}  // namespace sketchsolve
