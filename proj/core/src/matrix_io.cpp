#include "sketchsolve/matrix_io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sketchsolve/error.hpp"

namespace sketchsolve {

namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

std::uint64_t to_le(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) return __builtin_bswap64(v);
  return v;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view token, std::size_t line_no) {
  token = trim(token);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    fail(ErrorCode::Parse, "csv line " + std::to_string(line_no) + ": bad number '" +
                               std::string(token) + "'");
  }
  return value;
}

DenseMatrix read_csv(std::istream& in) {
  std::vector<double> values;
  Index cols = -1;
  Index rows = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    Index count = 0;
    std::size_t pos = 0;
    while (true) {
      const auto comma = body.find(',', pos);
      values.push_back(parse_double(body.substr(pos, comma - pos), line_no));
      ++count;
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (cols < 0) cols = count;
    require(count == cols, ErrorCode::Parse,
            "csv line " + std::to_string(line_no) + ": expected " + std::to_string(cols) +
                " fields, got " + std::to_string(count));
    ++rows;
  }
  require(rows > 0, ErrorCode::Parse, "csv: no data rows");
  DenseMatrix a(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) a(i, j) = values[static_cast<std::size_t>(i * cols + j)];
  return a;
}

DenseMatrix read_binary(std::istream& in, std::uintmax_t file_size) {
  char magic[8];
  std::uint64_t header[2];
  in.read(magic, 8);
  in.read(reinterpret_cast<char*>(header), sizeof header);
  require(static_cast<bool>(in), ErrorCode::Parse, "binary matrix: truncated header");
  const std::uint64_t rows = to_le(header[0]);
  const std::uint64_t cols = to_le(header[1]);
  const std::uintmax_t payload = file_size - 24;
  require(cols != 0 && rows != 0 && rows <= payload / 8 / cols && rows * cols * 8 == payload,
          ErrorCode::Parse,
          "binary matrix: declared " + std::to_string(rows) + "x" + std::to_string(cols) +
              " does not match payload of " + std::to_string(payload) + " bytes");
  std::vector<std::uint64_t> raw(rows * cols);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(payload));
  require(static_cast<bool>(in), ErrorCode::Io, "binary matrix: read failed");
  DenseMatrix a(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::uint64_t i = 0; i < rows; ++i)
    for (std::uint64_t j = 0; j < cols; ++j)
      a(static_cast<Index>(i), static_cast<Index>(j)) = std::bit_cast<double>(to_le(raw[i * cols + j]));
  return a;
}

}  // namespace

DenseMatrix read_matrix(const std::filesystem::path& path) {
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  require(!ec, ErrorCode::Io, "cannot stat '" + path.string() + "'");
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::Io, "cannot open '" + path.string() + "'");
  char magic[8] = {};
  if (size >= 8) {
    in.read(magic, 8);
    in.seekg(0);
  }
  if (size >= 8 && std::memcmp(magic, kBinaryMagic, 8) == 0) {
    require(size >= 24, ErrorCode::Parse, "binary matrix: truncated header");
    return read_binary(in, size);
  }
  return read_csv(in);
}

void write_matrix(const std::filesystem::path& path, const DenseMatrix& a, MatrixFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(out), ErrorCode::Io, "cannot write '" + path.string() + "'");
  if (format == MatrixFormat::Binary) {
    out.write(kBinaryMagic, 8);
    const std::uint64_t header[2] = {to_le(static_cast<std::uint64_t>(a.rows())),
                                     to_le(static_cast<std::uint64_t>(a.cols()))};
    out.write(reinterpret_cast<const char*>(header), sizeof header);
    std::vector<std::uint64_t> raw(static_cast<std::size_t>(a.size()));
    for (Index i = 0; i < a.rows(); ++i)
      for (Index j = 0; j < a.cols(); ++j)
        raw[static_cast<std::size_t>(i * a.cols() + j)] = to_le(std::bit_cast<std::uint64_t>(a(i, j)));
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size() * 8));
  } else {
    char buf[32];
    for (Index i = 0; i < a.rows(); ++i) {
      for (Index j = 0; j < a.cols(); ++j) {
        const int len = std::snprintf(buf, sizeof buf, "%.17g", a(i, j));
        if (j > 0) out.put(',');
        out.write(buf, len);
      }
      out.put('\n');
    }
  }
  require(static_cast<bool>(out), ErrorCode::Io, "write failed for '" + path.string() + "'");
}

Vector read_vector(const std::filesystem::path& path) {
  const DenseMatrix a = read_matrix(path);
  require(a.rows() == 1 || a.cols() == 1, ErrorCode::DimensionMismatch,
          "'" + path.string() + "' is not a vector (" + std::to_string(a.rows()) + "x" +
              std::to_string(a.cols()) + ")");
  return Eigen::Map<const Vector>(a.data(), a.size());
}

}  // namespace sketchsolve
