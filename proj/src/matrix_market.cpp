#include "qepsoar/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <vector>

#include "qepsoar/error.hpp"

namespace qepsoar::mm {

namespace {

enum class Field { Real, Complex, Pattern };
enum class Symmetry { General, Symmetric, SkewSymmetric, Hermitian };

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

}  // namespace

SparseMatrix read(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail("empty Matrix Market stream");

  std::istringstream banner(line);
  std::string tag, object, format, field_s, sym_s;
  banner >> tag >> object >> format >> field_s >> sym_s;
  if (tag != "%%MatrixMarket" || lower(object) != "matrix") fail("missing %%MatrixMarket banner");
  if (lower(format) != "coordinate") fail("only coordinate format is supported");

  Field field;
  const std::string f = lower(field_s);
  if (f == "real" || f == "integer" || f == "double") field = Field::Real;
  else if (f == "complex") field = Field::Complex;
  else if (f == "pattern") field = Field::Pattern;
  else fail("unsupported field '" + field_s + "'");

  Symmetry sym;
  const std::string s = lower(sym_s);
  if (s == "general") sym = Symmetry::General;
  else if (s == "symmetric") sym = Symmetry::Symmetric;
  else if (s == "skew-symmetric") sym = Symmetry::SkewSymmetric;
  else if (s == "hermitian") sym = Symmetry::Hermitian;
  else fail("unsupported symmetry '" + sym_s + "'");

  do {
    if (!std::getline(in, line)) fail("missing size line");
  } while (line.empty() || line[0] == '%');

  long long rows = 0, cols = 0, nnz = 0;
  {
    std::istringstream size_line(line);
    if (!(size_line >> rows >> cols >> nnz) || rows < 1 || cols < 1 || nnz < 0) {
      fail("malformed size line");
    }
  }

  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(static_cast<std::size_t>(sym == Symmetry::General ? nnz : 2 * nnz));
  for (long long e = 0; e < nnz; ++e) {
    do {
      if (!std::getline(in, line)) fail("unexpected end of file after " + std::to_string(e) + " entries");
    } while (line.empty() || line[0] == '%');
    std::istringstream entry(line);
    long long i = 0, j = 0;
    double re = 1.0, im = 0.0;
    if (!(entry >> i >> j)) fail("malformed entry line");
    if (field != Field::Pattern && !(entry >> re)) fail("missing value");
    if (field == Field::Complex && !(entry >> im)) fail("missing imaginary part");
    if (i < 1 || i > rows || j < 1 || j > cols) fail("entry index out of range");
    const Complex v(re, im);
    triplets.emplace_back(i - 1, j - 1, v);
    if (i != j) {
      switch (sym) {
        case Symmetry::General: break;
        case Symmetry::Symmetric: triplets.emplace_back(j - 1, i - 1, v); break;
        case Symmetry::SkewSymmetric: triplets.emplace_back(j - 1, i - 1, -v); break;
        case Symmetry::Hermitian: triplets.emplace_back(j - 1, i - 1, std::conj(v)); break;
      }
    }
  }

  SparseMatrix a(rows, cols);
  a.setFromTriplets(triplets.begin(), triplets.end());
  a.makeCompressed();
  return a;
}

SparseMatrix read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  return read(in);
}

void write(std::ostream& out, const SparseMatrix& a) {
  out << "%%MatrixMarket matrix coordinate complex general\n";
  out << a.rows() << ' ' << a.cols() << ' ' << a.nonZeros() << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (Index k = 0; k < a.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) {
      out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value().real() << ' '
          << it.value().imag() << '\n';
    }
  }
}

void write_file(const std::string& path, const SparseMatrix& a) {
  std::ofstream out(path);
  if (!out) fail("cannot write '" + path + "'");
  write(out, a);
}

}  // namespace qepsoar::mm
