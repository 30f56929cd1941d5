#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "sketchsolve/error.hpp"
#include "sketchsolve/matrix_io.hpp"
#include "sketchsolve/synthetic.hpp"

using namespace sketchsolve;
namespace fs = std::filesystem;

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

class MatrixFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sketchsolve_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  void write_text(const std::string& name, const std::string& text) const {
    std::ofstream(path(name), std::ios::binary) << text;
  }

  std::string read_bytes(const std::string& name) const {
    std::ifstream in(path(name), std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  fs::path dir_;
};

}  // namespace

TEST_F(MatrixFiles, CsvRoundTripIsExact) {
  RngStream rng(1);
  const DenseMatrix a = gaussian_matrix(7, 3, rng) * 1e5;
  write_matrix(path("a.csv"), a, MatrixFormat::Csv);
  const DenseMatrix b = read_matrix(path("a.csv"));
  EXPECT_TRUE((a.array() == b.array()).all());
}

TEST_F(MatrixFiles, CsvCommentsAndWhitespace) {
  write_text("c.csv", "# a comment\n1, 2 ,3\n\n4,5,6\r\n# trailing\n");
  const DenseMatrix a = read_matrix(path("c.csv"));
  ASSERT_EQ(a.rows(), 2);
  ASSERT_EQ(a.cols(), 3);
  EXPECT_EQ(a(0, 0), 1.0);
  EXPECT_EQ(a(0, 2), 3.0);
  EXPECT_EQ(a(1, 1), 5.0);
}

TEST_F(MatrixFiles, CsvErrors) {
  write_text("ragged.csv", "1,2\n3\n");
  EXPECT_EQ(code_of([&] { read_matrix(path("ragged.csv")); }), ErrorCode::Parse);
  write_text("bad.csv", "1,abc\n");
  EXPECT_EQ(code_of([&] { read_matrix(path("bad.csv")); }), ErrorCode::Parse);
  write_text("empty.csv", "# nothing\n");
  EXPECT_EQ(code_of([&] { read_matrix(path("empty.csv")); }), ErrorCode::Parse);
  write_text("nan.csv", "1,nan\n");
  // Parsing succeeds; the Problem constructor rejects non-finite input.
  const DenseMatrix a = read_matrix(path("nan.csv"));
  EXPECT_EQ(code_of([&] { Problem(a.transpose(), Vector::Ones(2)); }), ErrorCode::NonFinite);
  EXPECT_EQ(code_of([&] { read_matrix(path("missing.csv")); }), ErrorCode::Io);
}

TEST_F(MatrixFiles, BinaryLayoutIsBitExact) {
  DenseMatrix a(2, 3);
  a << 1.0, -2.5, 3.0,
       0.125, 1e300, -0.0;
  write_matrix(path("a.bin"), a, MatrixFormat::Binary);
  const std::string bytes = read_bytes("a.bin");
  ASSERT_EQ(bytes.size(), 8u + 16u + 6u * 8u);
  EXPECT_EQ(bytes.substr(0, 8), "DMATRX01");
  auto u64_at = [&](std::size_t off) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(bytes[off + static_cast<std::size_t>(i)]);
    return v;
  };
  EXPECT_EQ(u64_at(8), 2u);
  EXPECT_EQ(u64_at(16), 3u);
  // Row-major payload: the second value is a(0, 1).
  const std::uint64_t second = u64_at(24 + 8);
  double v;
  std::memcpy(&v, &second, 8);
  EXPECT_EQ(v, -2.5);
  const DenseMatrix b = read_matrix(path("a.bin"));
  EXPECT_TRUE((a.array() == b.array()).all());
  EXPECT_TRUE(std::signbit(b(1, 2)));
}

TEST_F(MatrixFiles, BinaryPayloadMismatch) {
  DenseMatrix a = DenseMatrix::Ones(3, 2);
  write_matrix(path("a.bin"), a, MatrixFormat::Binary);
  std::string bytes = read_bytes("a.bin");
  write_text("short.bin", bytes.substr(0, bytes.size() - 8));
  EXPECT_EQ(code_of([&] { read_matrix(path("short.bin")); }), ErrorCode::Parse);
  write_text("long.bin", bytes + std::string(8, '\0'));
  EXPECT_EQ(code_of([&] { read_matrix(path("long.bin")); }), ErrorCode::Parse);
  write_text("header.bin", bytes.substr(0, 12));
  EXPECT_EQ(code_of([&] { read_matrix(path("header.bin")); }), ErrorCode::Parse);
}

TEST_F(MatrixFiles, VectorsFromColumnOrRow) {
  write_text("col.csv", "1\n2\n3\n");
  write_text("row.csv", "1,2,3\n");
  write_text("mat.csv", "1,2\n3,4\n");
  EXPECT_EQ(read_vector(path("col.csv")), Vector(Eigen::Vector3d(1, 2, 3)));
  EXPECT_EQ(read_vector(path("row.csv")), Vector(Eigen::Vector3d(1, 2, 3)));
  EXPECT_EQ(code_of([&] { read_vector(path("mat.csv")); }), ErrorCode::DimensionMismatch);
}

TEST(GenerateProblem, PlantedSpectrumAndCondition) {
  const SyntheticProblem sp = generate_problem(1024, 200, 0.98, 3);
  const Vector ev = sym_eigvals(sp.problem.a().transpose() * sp.problem.a());
  for (Index j = 0; j < 200; ++j) {
    const double expected = std::pow(0.98, 2.0 * static_cast<double>(200 - j));
    EXPECT_NEAR(ev[j], expected, 1e-9 * expected) << j;
  }
  EXPECT_NEAR(std::sqrt(ev[199] / ev[0]), std::pow(0.98, -199.0), 1e-9 * std::pow(0.98, -199.0));
  EXPECT_NEAR(std::pow(0.98, -199.0), 55.7, 0.05);
  EXPECT_NEAR(sp.singular_values[0], 0.98, 1e-15);
}

TEST(GenerateProblem, DeterministicAndNoisy) {
  const SyntheticProblem a = generate_problem(256, 16, 0.9, 4);
  const SyntheticProblem b = generate_problem(256, 16, 0.9, 4);
  EXPECT_TRUE((a.problem.a().array() == b.problem.a().array()).all());
  EXPECT_TRUE((a.problem.b().array() == b.problem.b().array()).all());
  const SyntheticProblem c = generate_problem(256, 16, 0.9, 5);
  EXPECT_FALSE((a.problem.b().array() == c.problem.b().array()).all());
  const Vector resid = a.problem.b() - a.problem.a() * a.x_planted;
  EXPECT_NEAR(resid.norm() / std::sqrt(256.0), 0.01, 0.002);
}

TEST(GenerateProblem, Errors) {
  EXPECT_EQ(code_of([] { generate_problem(10, 20, 0.9, 1); }), ErrorCode::BadDimensions);
  EXPECT_EQ(code_of([] { generate_problem(10, 0, 0.9, 1); }), ErrorCode::BadDimensions);
  EXPECT_EQ(code_of([] { generate_problem(10, 5, 1.0, 1); }), ErrorCode::BadDimensions);
  EXPECT_EQ(code_of([] { generate_problem(10, 5, 0.0, 1); }), ErrorCode::BadDimensions);
}
