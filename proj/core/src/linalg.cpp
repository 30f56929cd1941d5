#include "sketchsolve/linalg.hpp"

#include <cmath>
#include <string>

#include "sketchsolve/error.hpp"

namespace sketchsolve {

namespace {

constexpr double kSymmetryTolerance = 1e-12;

void require_square_symmetric(const DenseMatrix& m, std::string_view what) {
  require(m.rows() == m.cols() && m.rows() > 0, ErrorCode::BadDimensions,
          std::string(what) + ": matrix must be square and non-empty");
  require_finite(m, what);
  const double scale = m.norm();
  const double asym = (m - m.transpose()).norm();
  require(asym <= kSymmetryTolerance * scale, ErrorCode::NotSymmetric,
          std::string(what) + ": matrix is not symmetric (relative asymmetry " +
              std::to_string(scale > 0 ? asym / scale : asym) + ")");
}

void check_rank(const DenseMatrix& qr_packed, Index d) {
  const double lead = std::abs(qr_packed(0, 0));
  require(lead > 0.0, ErrorCode::RankDeficient, "qr: leading column is zero");
  for (Index i = 1; i < d; ++i) {
    require(std::abs(qr_packed(i, i)) > kRankTolerance * lead, ErrorCode::RankDeficient,
            "qr: |R_" + std::to_string(i) + std::to_string(i) +
                "| below rank tolerance");
  }
}

}  // namespace

void require_finite(const DenseMatrix& a, std::string_view what) {
  require(a.allFinite(), ErrorCode::NonFinite, std::string(what) + ": non-finite entry");
}

void require_finite(const Vector& v, std::string_view what) {
  require(v.allFinite(), ErrorCode::NonFinite, std::string(what) + ": non-finite entry");
}

ThinQr qr_thin(const DenseMatrix& a) {
  const Index n = a.rows();
  const Index d = a.cols();
  require(d >= 1 && n >= d, ErrorCode::BadDimensions, "qr_thin: need rows >= cols >= 1");
  require_finite(a, "qr_thin");

  Eigen::HouseholderQR<DenseMatrix> qr(a);
  const DenseMatrix& packed = qr.matrixQR();
  check_rank(packed, d);

  ThinQr out;
  out.r = packed.topRows(d).triangularView<Eigen::Upper>();
  out.q = DenseMatrix::Identity(n, d);
  out.q.applyOnTheLeft(qr.householderQ());
  for (Index k = 0; k < d; ++k) {
    if (out.r(k, k) < 0.0) {
      out.r.row(k) *= -1.0;
      out.q.col(k) *= -1.0;
    }
  }
  return out;
}

CholeskyFactor::CholeskyFactor(const DenseMatrix& m) {
  require_square_symmetric(m, "cholesky");
  llt_.compute(m);
  require(llt_.info() == Eigen::Success, ErrorCode::NotPositiveDefinite,
          "cholesky: non-positive pivot");
  // LLT can report success on NaN-producing pivots; check the factor too.
  require(llt_.matrixLLT().diagonal().allFinite() &&
              (llt_.matrixLLT().diagonal().array() > 0.0).all(),
          ErrorCode::NotPositiveDefinite, "cholesky: non-positive pivot");
}

Vector CholeskyFactor::solve(const Vector& g) const {
  require(g.size() == size(), ErrorCode::DimensionMismatch, "cholesky_solve: length mismatch");
  return llt_.solve(g);
}

DenseMatrix CholeskyFactor::solve(const DenseMatrix& g) const {
  require(g.rows() == size(), ErrorCode::DimensionMismatch, "cholesky_solve: row mismatch");
  return llt_.solve(g);
}

Vector cholesky_solve(const DenseMatrix& m, const Vector& g) {
  return CholeskyFactor(m).solve(g);
}

Vector sym_eigvals(const DenseMatrix& m) {
  require_square_symmetric(m, "sym_eigvals");
  const DenseMatrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(sym, Eigen::EigenvaluesOnly);
  require(solver.info() == Eigen::Success, ErrorCode::NoConvergence,
          "sym_eigvals: QR sweeps did not converge");
  return solver.eigenvalues();
}

Vector direct_lstsq(const DenseMatrix& a, const Vector& b) {
  const Index n = a.rows();
  const Index d = a.cols();
  require(d >= 1 && n >= d, ErrorCode::BadDimensions, "direct_lstsq: need rows >= cols >= 1");
  require(b.size() == n, ErrorCode::DimensionMismatch, "direct_lstsq: rhs length mismatch");
  require_finite(a, "direct_lstsq");
  require_finite(b, "direct_lstsq rhs");

  Eigen::HouseholderQR<DenseMatrix> qr(a);
  check_rank(qr.matrixQR(), d);
  Vector qtb = b;
  qtb.applyOnTheLeft(qr.householderQ().adjoint());
  return qr.matrixQR().topLeftCorner(d, d).triangularView<Eigen::Upper>().solve(qtb.head(d));
}

DenseMatrix gaussian_matrix(Index rows, Index cols, RngStream& rng, double stddev) {
  DenseMatrix g(rows, cols);
  double* data = g.data();
  for (Index i = 0; i < g.size(); ++i) data[i] = stddev * rng.normal();
  return g;
}

Vector gaussian_vector(Index size, RngStream& rng, double stddev) {
  Vector v(size);
  for (Index i = 0; i < size; ++i) v[i] = stddev * rng.normal();
  return v;
}

}  // namespace sketchsolve
