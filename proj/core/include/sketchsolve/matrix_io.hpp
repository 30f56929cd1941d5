#pragma once

#include <filesystem>

#include "sketchsolve/linalg.hpp"

namespace sketchsolve {

enum class MatrixFormat { Csv, Binary };

/// Binary layout: "DMATRX01", rows and cols as u64 little-endian, then
/// rows*cols f64 little-endian values in row-major order.
inline constexpr char kBinaryMagic[9] = "DMATRX01";

/// Detects the format from the magic bytes. CSV: one row per line,
/// comma-separated; blank lines and lines starting with '#' are skipped.
/// Throws Io, Parse.
DenseMatrix read_matrix(const std::filesystem::path& path);

void write_matrix(const std::filesystem::path& path, const DenseMatrix& a, MatrixFormat format);

/// Reads an n x 1 or 1 x n file as a vector.
Vector read_vector(const std::filesystem::path& path);

}  // namespace sketchsolve
