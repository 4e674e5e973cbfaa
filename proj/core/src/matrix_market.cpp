#include "prqi/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "prqi/csv.hpp"
#include "prqi/errors.hpp"

namespace prqi {

namespace {

struct Header {
  bool coordinate = true;
  bool complex = false;
  enum class Symmetry { general, symmetric, hermitian } symmetry = Symmetry::general;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

Header parse_header(const std::string& line) {
  std::istringstream ss(line);
  std::string banner, object, format, field, symmetry;
  ss >> banner >> object >> format >> field >> symmetry;
  if (lower(banner) != "%%matrixmarket" || lower(object) != "matrix") {
    throw ParseError("not a Matrix Market matrix header: '" + line + "'");
  }
  Header h;
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (format == "coordinate") {
    h.coordinate = true;
  } else if (format == "array") {
    h.coordinate = false;
  } else {
    throw ParseError("unsupported Matrix Market format '" + format + "'");
  }
  if (field == "real" || field == "integer" || field == "double") {
    h.complex = false;
  } else if (field == "complex") {
    h.complex = true;
  } else {
    throw ParseError("unsupported Matrix Market field '" + field + "'");
  }
  if (symmetry == "general") {
    h.symmetry = Header::Symmetry::general;
  } else if (symmetry == "symmetric") {
    h.symmetry = Header::Symmetry::symmetric;
  } else if (symmetry == "hermitian") {
    h.symmetry = Header::Symmetry::hermitian;
  } else {
    throw ParseError("unsupported Matrix Market symmetry '" + symmetry + "'");
  }
  return h;
}

// Next line that is neither blank nor a comment.
bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '%') continue;
    return true;
  }
  return false;
}

Complex read_value(std::istringstream& ss, bool complex, const std::string& line) {
  double re = 0.0, im = 0.0;
  if (!(ss >> re)) throw ParseError("bad Matrix Market entry: '" + line + "'");
  if (complex && !(ss >> im)) throw ParseError("missing imaginary part: '" + line + "'");
  return {re, im};
}

HermitianOperator from_entries(std::size_t n, const std::map<std::pair<std::size_t, std::size_t>, Complex>& entries,
                               bool dense_storage) {
  // Hermitian check on general input: both triangles must agree.
  double scale = 0.0;
  for (const auto& [key, v] : entries) scale = std::max(scale, std::abs(v));
  std::vector<Triplet> lower_entries;
  bool real = true;
  bool banded = true;
  for (const auto& [key, v] : entries) {
    const auto [i, j] = key;
    if (i < j) {
      const auto it = entries.find({j, i});
      const Complex mirror = it == entries.end() ? Complex{} : it->second;
      if (std::abs(std::conj(v) - mirror) > 1e-12 * (1.0 + scale)) {
        throw DomainError("matrix is not Hermitian at (" + std::to_string(i + 1) + ", " +
                          std::to_string(j + 1) + ")");
      }
      continue;
    }
    if (v.imag() != 0.0) real = false;
    if (i > j + 1) banded = false;
    lower_entries.push_back({i, j, v});
  }
  if (dense_storage) {
    ComplexMatrix m(n, n);
    for (const auto& t : lower_entries) m(t.row, t.col) = t.value;
    return HermitianOperator::dense(m);
  }
  if (real && banded) {
    std::vector<double> d(n, 0.0), e(n > 0 ? n - 1 : 0, 0.0);
    for (const auto& t : lower_entries) {
      if (t.row == t.col) {
        d[t.row] = t.value.real();
      } else {
        e[t.col] = t.value.real();
      }
    }
    return HermitianOperator::tridiagonal(std::move(d), std::move(e));
  }
  return HermitianOperator::sparse(n, lower_entries);
}

template <typename T, typename Fn>
T with_input_file(const std::string& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return fn(in);
}

template <typename Fn>
void with_output_file(const std::string& path, Fn&& fn) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  fn(out);
  if (!out) throw ParseError("write to '" + path + "' failed");
}

}  // namespace

HermitianOperator read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty Matrix Market input");
  const Header h = parse_header(line);
  if (!next_data_line(in, line)) throw ParseError("missing Matrix Market size line");
  std::istringstream size_line(line);
  std::size_t rows = 0, cols = 0, nnz = 0;
  if (!(size_line >> rows >> cols)) throw ParseError("bad size line: '" + line + "'");
  if (h.coordinate && !(size_line >> nnz)) throw ParseError("bad size line: '" + line + "'");
  if (rows != cols || rows == 0) throw DimensionError("Hermitian input must be square and nonempty");
  const std::size_t n = rows;

  std::map<std::pair<std::size_t, std::size_t>, Complex> entries;
  const bool mirrored = h.symmetry != Header::Symmetry::general;
  const bool hermitian = h.symmetry == Header::Symmetry::hermitian;
  const auto mirror = [hermitian](Complex v) { return hermitian ? std::conj(v) : v; };
  const auto store = [&](std::size_t i, std::size_t j, Complex v) {
    if (mirrored && i < j) {
      entries[{j, i}] += mirror(v);  // tolerate upper-triangle listings
    } else {
      entries[{i, j}] += v;
    }
  };

  if (h.coordinate) {
    for (std::size_t k = 0; k < nnz; ++k) {
      if (!next_data_line(in, line)) throw ParseError("fewer entries than declared");
      std::istringstream ss(line);
      std::size_t i = 0, j = 0;
      if (!(ss >> i >> j) || i < 1 || j < 1 || i > n || j > n) {
        throw ParseError("bad coordinate entry: '" + line + "'");
      }
      store(i - 1, j - 1, read_value(ss, h.complex, line));
    }
  } else {
    // Column-major; symmetric arrays list only the lower triangle.
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = mirrored ? j : 0; i < n; ++i) {
        if (!next_data_line(in, line)) throw ParseError("fewer array entries than declared");
        std::istringstream ss(line);
        store(i, j, read_value(ss, h.complex, line));
      }
    }
  }
  if (mirrored) {
    // Complete the upper triangle; complex symmetric input then fails the Hermitian check.
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, Complex>> upper;
    for (const auto& [key, v] : entries) {
      if (key.first != key.second) upper.push_back({{key.second, key.first}, mirror(v)});
    }
    for (auto& [key, v] : upper) entries[key] = v;
  }
  return from_entries(n, entries, !h.coordinate);
}

HermitianOperator read_matrix_market(const std::string& path) {
  return with_input_file<HermitianOperator>(
      path, [](std::istream& in) { return read_matrix_market(in); });
}

void write_matrix_market(std::ostream& out, const HermitianOperator& a) {
  const bool real = a.is_real();
  const auto entries = a.lower_triplets();
  out << "%%MatrixMarket matrix coordinate " << (real ? "real symmetric" : "complex hermitian")
      << '\n';
  out << a.size() << ' ' << a.size() << ' ' << entries.size() << '\n';
  for (const auto& t : entries) {
    out << t.row + 1 << ' ' << t.col + 1 << ' ' << format_double(t.value.real());
    if (!real) out << ' ' << format_double(t.value.imag());
    out << '\n';
  }
}

void write_matrix_market(const std::string& path, const HermitianOperator& a) {
  with_output_file(path, [&](std::ostream& out) { write_matrix_market(out, a); });
}

ComplexVector read_vector(std::istream& in) {
  std::string line;
  std::vector<Complex> values;
  if (in.peek() == '%') {
    std::getline(in, line);
    std::istringstream ss(line);
    std::string banner, object, format, field;
    ss >> banner >> object >> format >> field;
    if (lower(banner) != "%%matrixmarket" || lower(format) != "array") {
      throw ParseError("vector files must be Matrix Market arrays or plain text");
    }
    const bool complex = lower(field) == "complex";
    if (!next_data_line(in, line)) throw ParseError("missing size line");
    std::istringstream size_line(line);
    std::size_t rows = 0, cols = 0;
    if (!(size_line >> rows >> cols) || cols != 1 || rows == 0) {
      throw ParseError("vector arrays must have exactly one column");
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (!next_data_line(in, line)) throw ParseError("fewer vector entries than declared");
      std::istringstream ss(line);
      values.push_back(read_value(ss, complex, line));
    }
    return ComplexVector(std::move(values));
  }
  while (next_data_line(in, line)) {
    std::istringstream ss(line);
    double re = 0.0, im = 0.0;
    if (!(ss >> re)) throw ParseError("bad vector entry: '" + line + "'");
    if (!(ss >> im)) im = 0.0;
    values.emplace_back(re, im);
  }
  if (values.empty()) throw ParseError("empty vector input");
  return ComplexVector(std::move(values));
}

ComplexVector read_vector(const std::string& path) {
  return with_input_file<ComplexVector>(path, [](std::istream& in) { return read_vector(in); });
}

void write_vector(std::ostream& out, const ComplexVector& x) {
  const bool real = x.is_real();
  out << "%%MatrixMarket matrix array " << (real ? "real" : "complex") << " general\n";
  out << x.size() << " 1\n";
  for (const auto& v : x) {
    out << format_double(v.real());
    if (!real) out << ' ' << format_double(v.imag());
    out << '\n';
  }
}

void write_vector(const std::string& path, const ComplexVector& x) {
  with_output_file(path, [&](std::ostream& out) { write_vector(out, x); });
}

}  // namespace prqi
