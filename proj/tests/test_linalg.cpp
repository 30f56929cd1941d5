#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <set>

#include "sketchsolve/error.hpp"
#include "sketchsolve/linalg.hpp"
#include "sketchsolve/rng.hpp"

using namespace sketchsolve;

namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::Io;
}

// Orthogonal matrix from modified Gram-Schmidt on a Gaussian matrix,
// independent of the Householder path under test.
DenseMatrix gram_schmidt_orthogonal(Index n, RngStream& rng) {
  DenseMatrix q = gaussian_matrix(n, n, rng);
  for (Index j = 0; j < n; ++j) {
    for (Index k = 0; k < j; ++k) q.col(j) -= q.col(k).dot(q.col(j)) * q.col(k);
    q.col(j).normalize();
  }
  return q;
}

}  // namespace

TEST(QrThin, IdentityGivesIdentityFactors) {
  const ThinQr f = qr_thin(DenseMatrix::Identity(3, 3));
  EXPECT_TRUE(f.q.isApprox(DenseMatrix::Identity(3, 3), 1e-15));
  EXPECT_TRUE(f.r.isApprox(DenseMatrix::Identity(3, 3), 1e-15));
}

TEST(QrThin, HandGramSchmidtCase) {
  DenseMatrix a(2, 2);
  a << 1, 1,
       0, 1;
  const ThinQr f = qr_thin(a);
  EXPECT_NEAR((f.q - DenseMatrix::Identity(2, 2)).norm(), 0.0, 1e-15);
  DenseMatrix r(2, 2);
  r << 1, 1,
       0, 1;
  EXPECT_NEAR((f.r - r).norm(), 0.0, 1e-15);
}

TEST(QrThin, RandomReconstructionAndOrthogonality) {
  RngStream rng(11);
  for (auto [n, d] : {std::pair<Index, Index>{64, 8}, {200, 50}, {512, 128}}) {
    const DenseMatrix a = gaussian_matrix(n, d, rng);
    const ThinQr f = qr_thin(a);
    ASSERT_EQ(f.q.rows(), n);
    ASSERT_EQ(f.q.cols(), d);
    ASSERT_EQ(f.r.rows(), d);
    EXPECT_LT((f.q.transpose() * f.q - DenseMatrix::Identity(d, d)).norm(), 1e-12);
    EXPECT_LT((f.q * f.r - a).norm() / a.norm(), 1e-12);
    for (Index i = 0; i < d; ++i) {
      EXPECT_GE(f.r(i, i), 0.0);
      for (Index j = 0; j < i; ++j) EXPECT_EQ(f.r(i, j), 0.0);
    }
  }
}

TEST(QrThin, RankDeficientThrows) {
  DenseMatrix a = DenseMatrix::Zero(5, 2);
  a.col(0) << 1, 2, 3, 4, 5;
  a.col(1) = 2.0 * a.col(0);
  EXPECT_EQ(code_of([&] { qr_thin(a); }), ErrorCode::RankDeficient);
}

TEST(QrThin, RejectsWideAndNonFinite) {
  EXPECT_EQ(code_of([] { qr_thin(DenseMatrix::Ones(2, 3)); }), ErrorCode::BadDimensions);
  DenseMatrix a = DenseMatrix::Identity(3, 3);
  a(1, 2) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(code_of([&] { qr_thin(a); }), ErrorCode::NonFinite);
}

TEST(CholeskySolve, IdentityAndScalar) {
  const Vector g = Vector::LinSpaced(4, -1.0, 2.0);
  EXPECT_EQ(cholesky_solve(DenseMatrix::Identity(4, 4), g), g);
  EXPECT_DOUBLE_EQ(cholesky_solve(DenseMatrix::Constant(1, 1, 4.0), Vector::Constant(1, 2.0))[0], 0.5);
}

// Factor entries on the unit interval below a diagonal in [1, 2].
TEST(CholeskySolve, ConstructedFactorResidual) {
  RngStream rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Index d = 30;
    DenseMatrix l = DenseMatrix::Zero(d, d);
    for (Index i = 0; i < d; ++i) {
      l(i, i) = 1.0 + rng.uniform();
      for (Index j = 0; j < i; ++j) l(i, j) = rng.uniform();
    }
    const DenseMatrix m = l * l.transpose();
    const Vector g = gaussian_vector(d, rng);
    const Vector y = cholesky_solve(m, g);
    EXPECT_LT((m * y - g).norm() / g.norm(), 1e-10);
  }
}

// Gaussian factor entries make M badly conditioned; the solve must still be
// backward stable, ||M y - g|| <= c eps ||M|| ||y||.
TEST(CholeskySolve, BackwardStableOnIllConditionedFactor) {
  RngStream rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const Index d = 30;
    DenseMatrix l = DenseMatrix::Zero(d, d);
    for (Index i = 0; i < d; ++i) {
      l(i, i) = 1.0 + rng.uniform();
      for (Index j = 0; j < i; ++j) l(i, j) = rng.normal();
    }
    const DenseMatrix m = l * l.transpose();
    const Vector g = gaussian_vector(d, rng);
    const Vector y = cholesky_solve(m, g);
    const double scale = std::numeric_limits<double>::epsilon() * m.norm() * y.norm();
    EXPECT_LT((m * y - g).norm(), 10.0 * d * scale);
  }
}

TEST(CholeskySolve, Errors) {
  DenseMatrix indefinite(2, 2);
  indefinite << 1, 2,
                2, 1;
  EXPECT_EQ(code_of([&] { cholesky_solve(indefinite, Vector::Ones(2)); }),
            ErrorCode::NotPositiveDefinite);
  DenseMatrix asym(2, 2);
  asym << 2, 0,
          1, 2;
  EXPECT_EQ(code_of([&] { cholesky_solve(asym, Vector::Ones(2)); }), ErrorCode::NotSymmetric);
  EXPECT_EQ(code_of([] { cholesky_solve(DenseMatrix::Identity(2, 2), Vector::Ones(3)); }),
            ErrorCode::DimensionMismatch);
}

TEST(CholeskyFactor, MatrixSolveMatchesColumnwise) {
  RngStream rng(8);
  const DenseMatrix b = gaussian_matrix(20, 6, rng);
  const DenseMatrix m = b.transpose() * b + DenseMatrix::Identity(6, 6);
  const CholeskyFactor f(m);
  const DenseMatrix rhs = gaussian_matrix(6, 3, rng);
  const DenseMatrix x = f.solve(rhs);
  for (Index j = 0; j < 3; ++j) EXPECT_LT((x.col(j) - f.solve(Vector(rhs.col(j)))).norm(), 1e-14);
}

TEST(SymEigvals, DiagonalAndIdentity) {
  const Vector ev = sym_eigvals(Vector(Eigen::Vector3d(3, 1, 2)).asDiagonal().toDenseMatrix());
  EXPECT_DOUBLE_EQ(ev[0], 1.0);
  EXPECT_DOUBLE_EQ(ev[1], 2.0);
  EXPECT_DOUBLE_EQ(ev[2], 3.0);
  const Vector ones = sym_eigvals(DenseMatrix::Identity(5, 5));
  for (Index i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(ones[i], 1.0);
}

TEST(SymEigvals, PlantedSpectrum) {
  RngStream rng(21);
  const DenseMatrix q = gram_schmidt_orthogonal(3, rng);
  const DenseMatrix m = q * Eigen::Vector3d(4.0, 0.5, 1.0).asDiagonal() * q.transpose();
  const Vector ev = sym_eigvals(m);
  EXPECT_NEAR(ev[0], 0.5, 1e-9);
  EXPECT_NEAR(ev[1], 1.0, 1e-9);
  EXPECT_NEAR(ev[2], 4.0, 1e-9);
}

TEST(SymEigvals, LargerPlantedSpectrumIsSortedAndAccurate) {
  RngStream rng(22);
  const Index d = 60;
  const DenseMatrix q = gram_schmidt_orthogonal(d, rng);
  Vector planted(d);
  for (Index i = 0; i < d; ++i) planted[i] = std::pow(1.1, static_cast<double>((i * 37) % d));
  const DenseMatrix m = q * planted.asDiagonal() * q.transpose();
  const Vector ev = sym_eigvals(m);
  std::sort(planted.data(), planted.data() + d);
  const double scale = planted[d - 1];
  for (Index i = 0; i < d; ++i) EXPECT_NEAR(ev[i], planted[i], 1e-9 * scale);
}

TEST(SymEigvals, RejectsAsymmetric) {
  DenseMatrix a = DenseMatrix::Identity(3, 3);
  a(0, 2) = 1.0;
  EXPECT_EQ(code_of([&] { sym_eigvals(a); }), ErrorCode::NotSymmetric);
}

TEST(DirectLstsq, IdentityAndConsistent) {
  const Vector b = Vector::LinSpaced(6, 1.0, 6.0);
  EXPECT_LT((direct_lstsq(DenseMatrix::Identity(6, 6), b) - b).norm(), 1e-15);

  RngStream rng(3);
  const DenseMatrix a = gaussian_matrix(40, 7, rng);
  const Vector x0 = gaussian_vector(7, rng);
  EXPECT_LT((direct_lstsq(a, a * x0) - x0).norm(), 1e-10 * x0.norm());
}

TEST(DirectLstsq, NormalEquationResidual) {
  RngStream rng(4);
  const DenseMatrix a = gaussian_matrix(128, 16, rng);
  const Vector b = gaussian_vector(128, rng);
  const Vector x = direct_lstsq(a, b);
  const Vector atb = a.transpose() * b;
  EXPECT_LT((a.transpose() * (a * x - b)).norm(), 1e-9 * atb.norm());
}

TEST(DirectLstsq, AgreesWithNormalEquations) {
  RngStream rng(6);
  for (int trial = 0; trial < 5; ++trial) {
    const DenseMatrix a = gaussian_matrix(100, 12, rng);
    const Vector b = gaussian_vector(100, rng);
    const Vector x1 = direct_lstsq(a, b);
    const Vector x2 = cholesky_solve(a.transpose() * a, a.transpose() * b);
    EXPECT_LT((x1 - x2).norm(), 1e-8 * x1.norm());
  }
}

TEST(DirectLstsq, DimensionMismatch) {
  EXPECT_EQ(code_of([] { direct_lstsq(DenseMatrix::Identity(3, 2), Vector::Ones(4)); }),
            ErrorCode::DimensionMismatch);
}

TEST(RngStream, SameSeedSameSequence) {
  RngStream a(123), b(123);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
  RngStream c(123), d(123);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(c.normal(), d.normal());
}

TEST(RngStream, SubstreamsDiffer) {
  const RngStream root(77);
  for (std::uint64_t i = 0; i < 5; ++i) {
    for (std::uint64_t j = i + 1; j < 5; ++j) {
      RngStream a = root.substream(i), b = root.substream(j);
      bool identical = true;
      for (int k = 0; k < 10000; ++k) identical = identical && a.next_u64() == b.next_u64();
      EXPECT_FALSE(identical);
    }
  }
  // The two-argument form names the same substream.
  RngStream a(77, 3), b = root.substream(3);
  for (int k = 0; k < 100; ++k) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(RngStream, UniformAndBelowRanges) {
  RngStream rng(9);
  std::set<std::uint64_t> seen;
  double sum = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    const std::uint64_t k = rng.below(7);
    ASSERT_LT(k, 7u);
    seen.insert(k);
  }
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_NEAR(sum / 20000.0, 0.5, 0.01);
}

TEST(RngStream, NormalMoments) {
  RngStream rng(10);
  const int count = 200000;
  double s1 = 0.0, s2 = 0.0, s4 = 0.0;
  for (int i = 0; i < count; ++i) {
    const double z = rng.normal();
    s1 += z;
    s2 += z * z;
    s4 += z * z * z * z;
  }
  EXPECT_NEAR(s1 / count, 0.0, 0.01);
  EXPECT_NEAR(s2 / count, 1.0, 0.015);
  EXPECT_NEAR(s4 / count, 3.0, 0.08);
}

TEST(RngStream, SignsAreBalanced) {
  RngStream rng(12);
  double total = 0.0;
  for (int i = 0; i < 40000; ++i) total += rng.sign();
  EXPECT_LT(std::abs(total), 4.0 * std::sqrt(40000.0));
}
