#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "sketchsolve/linalg.hpp"
#include "sketchsolve/rng.hpp"

namespace sketchsolve {

enum class SketchKind { Gaussian, Haar, Srht };

std::string_view to_string(SketchKind kind);
/// Accepts "gaussian", "haar", "srht" (case-sensitive). Throws BadConfig.
SketchKind parse_sketch_kind(std::string_view name);

constexpr bool is_power_of_two(Index n) { return n > 0 && (n & (n - 1)) == 0; }

/// In-place unnormalized Walsh-Hadamard transform, Sylvester ordering:
/// H_1 = 1, H_n = [[H_{n/2}, H_{n/2}], [H_{n/2}, -H_{n/2}]]. n log2 n
/// additions. Throws NotPowerOfTwo.
void fwht_inplace(std::span<double> v);

/// Largest ambient dimension dense() will materialize.
inline constexpr Index kMaxDenseDimension = 4096;

/// Retries of an SRHT draw whose keep-mask came out empty.
inline constexpr int kMaxEmptySketchRetries = 8;

/// A sampled random embedding S (m x n, or m~ x n for SRHT).
///
/// Gaussian: explicit entries i.i.d. N(0, 1/m).
/// Haar: orthonormal rows, kept in factored form as m Householder
///   reflectors plus a sign per row: S = diag(s) [I_m 0] H_{m-1} ... H_0.
/// Srht: S = B H_n D P / sqrt(n) with the zero rows of B dropped; kept as
///   the sign vector D, the permutation P (row i of PA is row perm[i] of A)
///   and the Bernoulli(m/n) keep-mask B.
///
/// Immutable after construction; safe to share across threads.
class SketchOperator {
 public:
  struct GaussianPayload {
    DenseMatrix entries;  // m x n
  };
  struct HaarPayload {
    DenseMatrix reflectors;  // n x m, essential parts below the diagonal
    Vector tau;              // m
    Vector row_signs;        // m, entries +-1
  };
  struct SrhtPayload {
    std::vector<double> signs;      // n, entries +-1
    std::vector<Index> permutation; // n
    std::vector<std::uint8_t> keep; // n, 0/1
    std::vector<Index> kept_rows;   // ascending indices with keep == 1
  };

  /// Builds an SRHT operator from explicit parts (for tests and replay).
  /// Throws NotPowerOfTwo, BadDimensions.
  static SketchOperator srht_from_parts(std::vector<double> signs, std::vector<Index> permutation,
                                        std::vector<std::uint8_t> keep, Index nominal_m,
                                        std::uint64_t seed = 0);

  SketchKind kind() const { return kind_; }
  Index n() const { return n_; }
  /// Nominal sketch size m.
  Index m() const { return m_; }
  /// Realized row count: m~ for SRHT, m otherwise.
  Index rows() const;
  std::uint64_t seed() const { return seed_; }

  const GaussianPayload& gaussian() const { return std::get<GaussianPayload>(payload_); }
  const HaarPayload& haar() const { return std::get<HaarPayload>(payload_); }
  const SrhtPayload& srht() const { return std::get<SrhtPayload>(payload_); }

 private:
  using Payload = std::variant<GaussianPayload, HaarPayload, SrhtPayload>;

  SketchOperator(SketchKind kind, Index n, Index m, std::uint64_t seed, Payload payload)
      : kind_(kind), n_(n), m_(m), seed_(seed), payload_(std::move(payload)) {}

  friend SketchOperator sample(SketchKind, Index, Index, std::uint64_t);

  SketchKind kind_;
  Index n_;
  Index m_;
  std::uint64_t seed_;
  Payload payload_;
};

/// Same (kind, m, n, seed) always yields the same operator.
/// Throws BadDimensions, NotPowerOfTwo (Srht), EmptySketch.
SketchOperator sample(SketchKind kind, Index m, Index n, std::uint64_t seed);
/// Draws the operator seed from rng.
SketchOperator sample(SketchKind kind, Index m, Index n, RngStream& rng);

/// S * A. Throws DimensionMismatch.
DenseMatrix apply(const SketchOperator& op, const DenseMatrix& a);

/// Explicit S. Throws TooLarge when n > kMaxDenseDimension.
DenseMatrix dense(const SketchOperator& op);

}  // namespace sketchsolve
