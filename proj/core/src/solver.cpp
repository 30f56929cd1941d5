#include "sketchsolve/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "sketchsolve/error.hpp"
#include "sketchsolve/theory.hpp"

namespace sketchsolve {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Records ||A(x - x*)||^2 when x* is known, otherwise ||A^T(Ax - b)||.
class ErrorMeter {
 public:
  ErrorMeter(const Problem& p, const std::optional<Vector>& x_star) : p_(p), x_star_(x_star) {
    if (x_star_) {
      require(x_star_->size() == p.d(), ErrorCode::DimensionMismatch, "x_star length mismatch");
    }
  }

  bool squared_errors() const { return x_star_.has_value(); }

  double operator()(const Vector& x, const Vector& gradient) const {
    if (x_star_) return (p_.a() * (x - *x_star_)).squaredNorm();
    return gradient.norm();
  }

 private:
  const Problem& p_;
  const std::optional<Vector>& x_star_;
};

Vector gradient(const Problem& p, const Vector& x) {
  return p.a().transpose() * (p.a() * x - p.b());
}

struct TraceRecorder {
  SolveTrace& trace;
  const ErrorMeter& meter;
  Clock::time_point start;

  void record(const Vector& x, const Vector& grad) {
    trace.errors.push_back(meter(x, grad));
    trace.cum_seconds.push_back(seconds_since(start));
  }
};

DenseMatrix gram(const DenseMatrix& sa) {
  DenseMatrix h = DenseMatrix::Zero(sa.cols(), sa.cols());
  h.selfadjointView<Eigen::Lower>().rankUpdate(sa.transpose());
  return h.selfadjointView<Eigen::Lower>();
}

// Samples S, forms H = (SA)^T (SA) and factors it. A draw with m~ < d or a
// failed factorization is resampled once from the next seed.
CholeskyFactor sketched_hessian(const Problem& p, SketchKind kind, Index m, RngStream& seeds,
                                SolveTrace& trace) {
  for (int attempt = 0; attempt < 2; ++attempt) {
    auto t0 = Clock::now();
    const std::uint64_t seed = seeds.next_u64();
    trace.sketch_seeds.push_back(seed);
    const SketchOperator op = sample(kind, m, p.n(), seed);
    if (op.rows() < p.d()) {
      trace.phases.sketch += seconds_since(t0);
      continue;
    }
    const DenseMatrix sa = apply(op, p.a());
    trace.phases.sketch += seconds_since(t0);

    t0 = Clock::now();
    try {
      CholeskyFactor factor(gram(sa));
      trace.phases.factor += seconds_since(t0);
      return factor;
    } catch (const Error& e) {
      trace.phases.factor += seconds_since(t0);
      if (e.code() != ErrorCode::NotPositiveDefinite) throw;
    }
  }
  fail(ErrorCode::NotPositiveDefinite, "ihs: sketched Hessian singular after one resample");
}

void validate_common(const Problem& p, Index max_iters) {
  require(max_iters >= 0, ErrorCode::BadConfig, "max_iters must be nonnegative");
  (void)p;
}

}  // namespace

Problem::Problem(DenseMatrix a, Vector b) : a_(std::move(a)), b_(std::move(b)) {
  require(a_.cols() >= 1 && a_.rows() >= a_.cols(), ErrorCode::BadDimensions,
          "problem: need n >= d >= 1");
  require(b_.size() == a_.rows(), ErrorCode::DimensionMismatch,
          "problem: rhs length " + std::to_string(b_.size()) + " != rows " +
              std::to_string(a_.rows()));
  require_finite(a_, "problem matrix");
  require_finite(b_, "problem rhs");
}

SolverSchedule SolverSchedule::custom(std::vector<double> mu, std::vector<double> beta) {
  require(!mu.empty() && !beta.empty(), ErrorCode::BadSchedule,
          "custom schedule needs non-empty mu and beta lists");
  for (double v : mu) {
    require(std::isfinite(v) && v >= 0.0, ErrorCode::BadSchedule, "custom schedule: mu must be >= 0");
  }
  for (double v : beta) {
    require(std::isfinite(v), ErrorCode::BadSchedule, "custom schedule: beta must be finite");
  }
  return SolverSchedule(ScheduleMode::Custom, std::move(mu), std::move(beta));
}

SolverSchedule SolverSchedule::optimal_for(SketchKind kind) {
  return kind == SketchKind::Gaussian ? optimal_gaussian() : optimal_haar();
}

SolverSchedule::Step SolverSchedule::step(std::size_t t, Index n, Index d, Index m) const {
  switch (mode_) {
    case ScheduleMode::OptimalHaar: {
      const TheoryPoint point = closed_forms(AspectRatios::from_sizes(n, d, m));
      return {point.mu_star, 0.0};
    }
    case ScheduleMode::OptimalGaussian: {
      const double slack = 1.0 - static_cast<double>(d) / static_cast<double>(m);
      return {slack * slack, 0.0};
    }
    case ScheduleMode::Custom:
      return {mu_[std::min(t, mu_.size() - 1)], beta_[std::min(t, beta_.size() - 1)]};
  }
  fail(ErrorCode::BadSchedule, "unknown schedule mode");
}

Vector isotropic_start(const Problem& p, const Vector& x_star, RngStream& rng) {
  require(x_star.size() == p.d(), ErrorCode::DimensionMismatch, "x_star length mismatch");
  const ThinQr qr = qr_thin(p.a());
  Vector delta;
  double norm = 0.0;
  do {
    delta = gaussian_vector(p.d(), rng);
    norm = delta.norm();
  } while (norm == 0.0);
  delta /= norm;
  return x_star + qr.r.triangularView<Eigen::Upper>().solve(delta);
}

SolveTrace ihs_solve(const Problem& p, const IhsConfig& cfg, const SolverSchedule& sched,
                     const std::optional<Vector>& x_star) {
  validate_common(p, cfg.max_iters);
  require(cfg.m >= p.d() && cfg.m <= p.n(), ErrorCode::BadDimensions,
          "ihs: need d <= m <= n (m=" + std::to_string(cfg.m) + ")");
  require(cfg.refresh_period >= 0, ErrorCode::BadConfig, "ihs: refresh_period must be >= 0");
  require(cfg.kind != SketchKind::Srht || is_power_of_two(p.n()), ErrorCode::NotPowerOfTwo,
          "ihs: SRHT needs n a power of two");

  const auto start = Clock::now();
  SolveTrace trace;
  const ErrorMeter meter(p, x_star);
  trace.squared_errors = meter.squared_errors();
  TraceRecorder recorder{trace, meter, start};

  RngStream root(cfg.seed);
  Vector x = Vector::Zero(p.d());
  if (cfg.init == InitMode::IsotropicDelta) {
    require(x_star.has_value(), ErrorCode::InitRequiresXStar,
            "ihs: isotropic initialization needs x_star");
    RngStream init_rng = root.substream(0);
    x = isotropic_start(p, *x_star, init_rng);
  }
  RngStream sketch_seeds = root.substream(1);

  const double rhs_scale = std::max((p.a().transpose() * p.b()).norm(), 1e-300);
  Vector x_prev = x;
  Vector grad = gradient(p, x);
  recorder.record(x, grad);

  std::optional<CholeskyFactor> factor;
  for (Index t = 0; t < cfg.max_iters; ++t) {
    if (cfg.tol > 0.0 && grad.norm() <= cfg.tol * rhs_scale) {
      trace.converged = true;
      break;
    }
    const bool refresh = t == 0 || (cfg.refresh_period > 0 && t % cfg.refresh_period == 0);
    if (refresh) factor.emplace(sketched_hessian(p, cfg.kind, cfg.m, sketch_seeds, trace));

    const auto t0 = Clock::now();
    const auto step = sched.step(static_cast<std::size_t>(t), p.n(), p.d(), cfg.m);
    Vector next = x - step.mu * factor->solve(grad);
    if (step.beta != 0.0) next += step.beta * (x - x_prev);
    x_prev = std::move(x);
    x = std::move(next);
    grad = gradient(p, x);
    trace.phases.iterate += seconds_since(t0);
    recorder.record(x, grad);
  }
  if (cfg.tol > 0.0 && grad.norm() <= cfg.tol * rhs_scale) trace.converged = true;
  trace.x = std::move(x);
  return trace;
}

SolveTrace cg_solve(const Problem& p, Index max_iters, double tol,
                    const std::optional<Vector>& x_star, const std::optional<Vector>& x0) {
  validate_common(p, max_iters);
  const auto start = Clock::now();
  SolveTrace trace;
  const ErrorMeter meter(p, x_star);
  trace.squared_errors = meter.squared_errors();
  TraceRecorder recorder{trace, meter, start};

  const DenseMatrix& a = p.a();
  Vector x = x0 ? *x0 : Vector::Zero(p.d());
  require(x.size() == p.d(), ErrorCode::DimensionMismatch, "cg: x0 length mismatch");
  const double rhs_scale = std::max((a.transpose() * p.b()).norm(), 1e-300);

  Vector r = p.b() - a * x;
  Vector s = a.transpose() * r;  // -gradient
  Vector dir = s;
  double s_norm2 = s.squaredNorm();
  recorder.record(x, -s);

  const auto t0 = Clock::now();
  for (Index k = 0; k < max_iters; ++k) {
    if (std::sqrt(s_norm2) <= tol * rhs_scale) {
      trace.converged = true;
      break;
    }
    const Vector q = a * dir;
    const double qq = q.squaredNorm();
    if (qq == 0.0) break;
    const double alpha = s_norm2 / qq;
    x += alpha * dir;
    r -= alpha * q;
    s = a.transpose() * r;
    const double next_norm2 = s.squaredNorm();
    dir = s + (next_norm2 / s_norm2) * dir;
    s_norm2 = next_norm2;
    recorder.record(x, -s);
  }
  if (std::sqrt(s_norm2) <= tol * rhs_scale) trace.converged = true;
  trace.phases.iterate = seconds_since(t0);
  trace.x = std::move(x);
  return trace;
}

Index default_pcg_sketch_size(Index n, Index d) {
  const double target = std::ceil(static_cast<double>(d) * std::log(static_cast<double>(d)));
  return std::clamp(static_cast<Index>(target), d, n);
}

SolveTrace pcg_solve(const Problem& p, Index m, SketchKind kind, Index max_iters, double tol,
                     std::uint64_t seed, const std::optional<Vector>& x_star,
                     const std::optional<Vector>& x0) {
  validate_common(p, max_iters);
  if (m == 0) m = default_pcg_sketch_size(p.n(), p.d());
  require(m >= p.d() && m <= p.n(), ErrorCode::BadDimensions,
          "pcg: need d <= m <= n (m=" + std::to_string(m) + ")");

  const auto start = Clock::now();
  SolveTrace trace;
  const ErrorMeter meter(p, x_star);
  trace.squared_errors = meter.squared_errors();
  TraceRecorder recorder{trace, meter, start};
  const DenseMatrix& a = p.a();

  // One sketch, never refreshed; an SRHT draw with m~ < d is redrawn once.
  RngStream seeds = RngStream(seed).substream(1);
  DenseMatrix sa;
  auto t0 = Clock::now();
  for (int attempt = 0; attempt < 2; ++attempt) {
    const std::uint64_t s = seeds.next_u64();
    trace.sketch_seeds.push_back(s);
    const SketchOperator op = sample(kind, m, p.n(), s);
    if (op.rows() >= p.d()) {
      sa = apply(op, a);
      break;
    }
  }
  require(sa.rows() >= p.d(), ErrorCode::RankDeficient, "pcg: sketch has fewer rows than d");
  trace.phases.sketch = seconds_since(t0);

  t0 = Clock::now();
  const DenseMatrix r_factor = qr_thin(sa).r;
  const auto upper = r_factor.triangularView<Eigen::Upper>();
  trace.phases.factor = seconds_since(t0);

  t0 = Clock::now();
  Vector x = x0 ? *x0 : Vector::Zero(p.d());
  require(x.size() == p.d(), ErrorCode::DimensionMismatch, "pcg: x0 length mismatch");
  const double rhs_scale = std::max((a.transpose() * p.b()).norm(), 1e-300);

  // CG on the normal equations of A R^{-1}, carried out in x = R^{-1} y.
  Vector res = p.b() - a * x;
  Vector normal = a.transpose() * res;                        // -gradient in x
  Vector s = upper.transpose().solve(normal);                 // R^{-T} A^T r
  Vector dir = s;
  double s_norm2 = s.squaredNorm();
  recorder.record(x, -normal);

  for (Index k = 0; k < max_iters; ++k) {
    if (normal.norm() <= tol * rhs_scale) {
      trace.converged = true;
      break;
    }
    const Vector step = upper.solve(dir);
    const Vector q = a * step;
    const double qq = q.squaredNorm();
    if (qq == 0.0) break;
    const double alpha = s_norm2 / qq;
    x += alpha * step;
    res -= alpha * q;
    normal = a.transpose() * res;
    s = upper.transpose().solve(normal);
    const double next_norm2 = s.squaredNorm();
    dir = s + (next_norm2 / s_norm2) * dir;
    s_norm2 = next_norm2;
    recorder.record(x, -normal);
  }
  if (normal.norm() <= tol * rhs_scale) trace.converged = true;
  trace.phases.iterate = seconds_since(t0);
  trace.x = std::move(x);
  return trace;
}

SolveTrace direct_solve(const Problem& p, const std::optional<Vector>& x_star) {
  const auto start = Clock::now();
  SolveTrace trace;
  const ErrorMeter meter(p, x_star);
  trace.squared_errors = meter.squared_errors();
  TraceRecorder recorder{trace, meter, start};

  const Vector zero = Vector::Zero(p.d());
  recorder.record(zero, gradient(p, zero));
  const auto t0 = Clock::now();
  Vector x = direct_lstsq(p.a(), p.b());
  trace.phases.factor = seconds_since(t0);
  recorder.record(x, gradient(p, x));
  trace.converged = true;
  trace.x = std::move(x);
  return trace;
}

}  // namespace sketchsolve
