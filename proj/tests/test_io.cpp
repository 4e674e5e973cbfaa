#include <sstream>

#include <gtest/gtest.h>

#include "prqi/csv.hpp"
#include "prqi/errors.hpp"
#include "prqi/matrices.hpp"
#include "prqi/matrix_market.hpp"
#include "support.hpp"

using namespace prqi;

namespace {

void expect_same_operator(const HermitianOperator& a, const HermitianOperator& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) EXPECT_EQ(a.entry(i, j), b.entry(i, j)) << i << "," << j;
}

}  // namespace

TEST(MatrixMarket, RoundTripIsExact) {
  for (const auto& a : {generate(MatrixSpec::one_two_one(7)), generate(MatrixSpec::random_symmetric(20, 0.2, 4)),
                        prqi::testing::random_hermitian(6, 3)}) {
    std::stringstream io;
    write_matrix_market(io, a);
    expect_same_operator(a, read_matrix_market(io));
  }
}

TEST(MatrixMarket, StorageChoice) {
  std::istringstream tri(
      "%%MatrixMarket matrix coordinate real symmetric\n"
      "% comment\n"
      "3 3 5\n1 1 2\n2 1 1\n2 2 2\n3 2 1\n3 3 2\n");
  EXPECT_EQ(read_matrix_market(tri).storage(), Storage::tridiagonal);
  std::istringstream arr(
      "%%MatrixMarket matrix array real symmetric\n"
      "2 2\n1\n0.5\n3\n");
  const auto a = read_matrix_market(arr);
  EXPECT_EQ(a.storage(), Storage::dense);
  EXPECT_EQ(a.entry(0, 1), Complex(0.5));
  EXPECT_EQ(a.entry(1, 1), Complex(3.0));
}

TEST(MatrixMarket, UpperTriangleAndGeneralInput) {
  std::istringstream upper(
      "%%MatrixMarket matrix coordinate complex hermitian\n"
      "2 2 3\n1 1 1 0\n1 2 0 1\n2 2 2 0\n");
  const auto a = read_matrix_market(upper);
  EXPECT_EQ(a.entry(0, 1), Complex(0, 1));
  EXPECT_EQ(a.entry(1, 0), Complex(0, -1));

  std::istringstream general(
      "%%MatrixMarket matrix coordinate real general\n"
      "2 2 3\n1 1 1\n1 2 5\n2 1 4\n");
  EXPECT_THROW(read_matrix_market(general), DomainError);
}

TEST(MatrixMarket, Errors) {
  std::istringstream junk("hello\n");
  EXPECT_THROW(read_matrix_market(junk), ParseError);
  std::istringstream rect("%%MatrixMarket matrix coordinate real general\n2 3 0\n");
  EXPECT_THROW(read_matrix_market(rect), DimensionError);
  std::istringstream short_input("%%MatrixMarket matrix coordinate real symmetric\n2 2 3\n1 1 1\n");
  EXPECT_THROW(read_matrix_market(short_input), ParseError);
  std::istringstream pattern("%%MatrixMarket matrix coordinate pattern symmetric\n1 1 1\n1 1\n");
  EXPECT_THROW(read_matrix_market(pattern), ParseError);
}

TEST(Vectors, RoundTripAndPlainText) {
  const ComplexVector x{Complex(1.0, -2.0), Complex(0.1, 0.0), Complex(-3e-300, 7.0)};
  std::stringstream io;
  write_vector(io, x);
  EXPECT_EQ(read_vector(io), x);

  std::istringstream plain("1\n2 0.5\n\n-3\n");
  const auto y = read_vector(plain);
  ASSERT_EQ(y.size(), 3u);
  EXPECT_EQ(y[1], Complex(2.0, 0.5));
}

TEST(Csv, FormatAndEscape) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(CsvWriter::escape("plain"), "plain");
  EXPECT_EQ(CsvWriter::escape("a,b"), "\"a,b\"");
  EXPECT_EQ(CsvWriter::escape("say \"hi\""), "\"say \"\"hi\"\"\"");
  std::ostringstream out;
  CsvWriter w(out);
  w.row({"x", "y"});
  w.row(std::vector<std::string>{"1", "two, three"});
  EXPECT_EQ(out.str(), "x,y\r\n1,\"two, three\"\r\n");
}
