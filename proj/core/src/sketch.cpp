#include "sketchsolve/sketch.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "sketchsolve/error.hpp"

namespace sketchsolve {

std::string_view to_string(SketchKind kind) {
  switch (kind) {
    case SketchKind::Gaussian: return "gaussian";
    case SketchKind::Haar: return "haar";
    case SketchKind::Srht: return "srht";
  }
  return "unknown";
}

SketchKind parse_sketch_kind(std::string_view name) {
  if (name == "gaussian") return SketchKind::Gaussian;
  if (name == "haar") return SketchKind::Haar;
  if (name == "srht") return SketchKind::Srht;
  fail(ErrorCode::BadConfig, "unknown sketch kind '" + std::string(name) + "'");
}

void fwht_inplace(std::span<double> v) {
  const auto n = static_cast<Index>(v.size());
  require(is_power_of_two(n), ErrorCode::NotPowerOfTwo,
          "fwht: length " + std::to_string(n) + " is not a power of two");
  double* x = v.data();
  for (Index half = 1; half < n; half <<= 1) {
    for (Index block = 0; block < n; block += 2 * half) {
      double* lo = x + block;
      double* hi = lo + half;
      for (Index j = 0; j < half; ++j) {
        const double a = lo[j];
        const double b = hi[j];
        lo[j] = a + b;
        hi[j] = a - b;
      }
    }
  }
}

Index SketchOperator::rows() const {
  if (kind_ == SketchKind::Srht) return static_cast<Index>(srht().kept_rows.size());
  return m_;
}

SketchOperator SketchOperator::srht_from_parts(std::vector<double> signs,
                                               std::vector<Index> permutation,
                                               std::vector<std::uint8_t> keep, Index nominal_m,
                                               std::uint64_t seed) {
  const auto n = static_cast<Index>(signs.size());
  require(is_power_of_two(n), ErrorCode::NotPowerOfTwo, "srht: n must be a power of two");
  require(static_cast<Index>(permutation.size()) == n && static_cast<Index>(keep.size()) == n,
          ErrorCode::BadDimensions, "srht: signs, permutation and mask lengths differ");
  require(nominal_m > 0 && nominal_m <= n, ErrorCode::BadDimensions, "srht: need 0 < m <= n");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (Index p : permutation) {
    require(p >= 0 && p < n && !seen[static_cast<std::size_t>(p)], ErrorCode::BadDimensions,
            "srht: permutation is not a bijection");
    seen[static_cast<std::size_t>(p)] = true;
  }
  for (double s : signs) {
    require(s == 1.0 || s == -1.0, ErrorCode::BadDimensions, "srht: signs must be +-1");
  }
  SrhtPayload payload{std::move(signs), std::move(permutation), std::move(keep), {}};
  for (Index i = 0; i < n; ++i) {
    if (payload.keep[static_cast<std::size_t>(i)] != 0) payload.kept_rows.push_back(i);
  }
  return SketchOperator(SketchKind::Srht, n, nominal_m, seed, std::move(payload));
}

namespace {

SketchOperator::GaussianPayload sample_gaussian(Index m, Index n, RngStream& rng) {
  return {gaussian_matrix(m, n, rng, 1.0 / std::sqrt(static_cast<double>(m)))};
}

// Householder subgroup construction: reflector k comes from a fresh standard
// Gaussian vector of length n - k. This has the law of the Q factor of an
// n x m Gaussian matrix under the nonnegative-R-diagonal convention, without
// the O(n m^2) factorization.
SketchOperator::HaarPayload sample_haar(Index m, Index n, RngStream& rng) {
  SketchOperator::HaarPayload payload{DenseMatrix::Zero(n, m), Vector(m), Vector(m)};
  Vector x;
  Vector essential;
  for (Index k = 0; k < m; ++k) {
    const Index len = n - k;
    x = gaussian_vector(len, rng);
    essential.resize(len - 1);
    double tau = 0.0;
    double beta = 0.0;
    x.makeHouseholder(essential, tau, beta);
    payload.reflectors.col(k).tail(len - 1) = essential;
    payload.tau[k] = tau;
    payload.row_signs[k] = beta < 0.0 ? -1.0 : 1.0;
  }
  return payload;
}

SketchOperator::SrhtPayload sample_srht(Index m, Index n, RngStream& rng) {
  SketchOperator::SrhtPayload payload;
  const auto size = static_cast<std::size_t>(n);
  payload.signs.resize(size);
  for (auto& s : payload.signs) s = rng.sign();

  payload.permutation.resize(size);
  std::iota(payload.permutation.begin(), payload.permutation.end(), Index{0});
  for (std::size_t i = size - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i + 1));
    std::swap(payload.permutation[i], payload.permutation[j]);
  }

  const double keep_probability = static_cast<double>(m) / static_cast<double>(n);
  payload.keep.resize(size);
  for (std::size_t i = 0; i < size; ++i) {
    // m == n must keep every row regardless of rounding in uniform().
    const bool kept = m == n || rng.bernoulli(keep_probability);
    payload.keep[i] = kept ? 1 : 0;
    if (kept) payload.kept_rows.push_back(static_cast<Index>(i));
  }
  return payload;
}

}  // namespace

SketchOperator sample(SketchKind kind, Index m, Index n, std::uint64_t seed) {
  require(m > 0 && n > 0 && m <= n, ErrorCode::BadDimensions,
          "sample: need 0 < m <= n (m=" + std::to_string(m) + ", n=" + std::to_string(n) + ")");
  RngStream rng(seed);
  switch (kind) {
    case SketchKind::Gaussian:
      return SketchOperator(kind, n, m, seed, sample_gaussian(m, n, rng));
    case SketchKind::Haar:
      return SketchOperator(kind, n, m, seed, sample_haar(m, n, rng));
    case SketchKind::Srht: {
      require(is_power_of_two(n), ErrorCode::NotPowerOfTwo,
              "sample: SRHT needs n a power of two (n=" + std::to_string(n) + ")");
      for (int attempt = 0; attempt <= kMaxEmptySketchRetries; ++attempt) {
        RngStream stream = attempt == 0 ? rng : RngStream(seed).substream(attempt);
        auto payload = sample_srht(m, n, stream);
        if (!payload.kept_rows.empty()) {
          return SketchOperator(kind, n, m, seed, std::move(payload));
        }
      }
      fail(ErrorCode::EmptySketch, "sample: SRHT keep-mask empty after retries");
    }
  }
  fail(ErrorCode::BadConfig, "sample: unknown sketch kind");
}

SketchOperator sample(SketchKind kind, Index m, Index n, RngStream& rng) {
  return sample(kind, m, n, rng.next_u64());
}

DenseMatrix apply(const SketchOperator& op, const DenseMatrix& a) {
  require(a.rows() == op.n(), ErrorCode::DimensionMismatch,
          "apply: operator has n=" + std::to_string(op.n()) + " but matrix has " +
              std::to_string(a.rows()) + " rows");
  switch (op.kind()) {
    case SketchKind::Gaussian:
      return op.gaussian().entries * a;
    case SketchKind::Haar: {
      const auto& haar = op.haar();
      DenseMatrix work = a;
      Eigen::HouseholderSequence<DenseMatrix, Vector> reflectors(haar.reflectors, haar.tau);
      work.applyOnTheLeft(reflectors.adjoint());
      return haar.row_signs.asDiagonal() * work.topRows(op.m());
    }
    case SketchKind::Srht: {
      const auto& srht = op.srht();
      const Index n = op.n();
      const double scale = 1.0 / std::sqrt(static_cast<double>(n));
      DenseMatrix work(n, a.cols());
      for (Index j = 0; j < a.cols(); ++j) {
        const double* src = a.col(j).data();
        double* dst = work.col(j).data();
        for (Index i = 0; i < n; ++i) {
          dst[i] = srht.signs[static_cast<std::size_t>(i)] *
                   src[srht.permutation[static_cast<std::size_t>(i)]];
        }
        fwht_inplace(std::span<double>(dst, static_cast<std::size_t>(n)));
      }
      DenseMatrix out(op.rows(), a.cols());
      for (Index r = 0; r < op.rows(); ++r) {
        out.row(r) = scale * work.row(srht.kept_rows[static_cast<std::size_t>(r)]);
      }
      return out;
    }
  }
  fail(ErrorCode::BadConfig, "apply: unknown sketch kind");
}

DenseMatrix dense(const SketchOperator& op) {
  require(op.n() <= kMaxDenseDimension, ErrorCode::TooLarge,
          "dense: n=" + std::to_string(op.n()) + " exceeds " +
              std::to_string(kMaxDenseDimension));
  if (op.kind() == SketchKind::Gaussian) return op.gaussian().entries;
  return apply(op, DenseMatrix::Identity(op.n(), op.n()));
}

}  // namespace sketchsolve
