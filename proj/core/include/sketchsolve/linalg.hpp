#pragma once

#include <Eigen/Dense>

#include <string_view>

#include "sketchsolve/rng.hpp"

namespace sketchsolve {

// Dense real matrices are Eigen column-major; on-disk files are row-major
// (see matrix_io.hpp).
using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Relative rank tolerance on the diagonal of R: |R_ii| <= tol * |R_00|
/// counts as rank deficient.
inline constexpr double kRankTolerance = 1e-12;

/// Throws NonFinite if any entry is NaN or infinite.
void require_finite(const DenseMatrix& a, std::string_view what);
void require_finite(const Vector& v, std::string_view what);

struct ThinQr {
  DenseMatrix q;  // n x d, orthonormal columns
  DenseMatrix r;  // d x d, upper triangular, nonnegative diagonal
};

/// Householder thin QR of a full-column-rank n x d matrix (n >= d).
ThinQr qr_thin(const DenseMatrix& a);

/// Cholesky factor of a symmetric positive definite matrix, reusable across
/// many right-hand sides.
class CholeskyFactor {
 public:
  explicit CholeskyFactor(const DenseMatrix& m);

  Index size() const { return llt_.rows(); }
  Vector solve(const Vector& g) const;
  DenseMatrix solve(const DenseMatrix& g) const;

 private:
  Eigen::LLT<DenseMatrix> llt_;
};

Vector cholesky_solve(const DenseMatrix& m, const Vector& g);

/// All eigenvalues of a symmetric matrix, ascending.
Vector sym_eigvals(const DenseMatrix& m);

/// argmin_x ||Ax - b||^2 for full-column-rank A (via Householder QR).
Vector direct_lstsq(const DenseMatrix& a, const Vector& b);

DenseMatrix gaussian_matrix(Index rows, Index cols, RngStream& rng, double stddev = 1.0);
Vector gaussian_vector(Index size, RngStream& rng, double stddev = 1.0);

}  // namespace sketchsolve
