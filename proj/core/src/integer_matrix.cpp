#include "sandpile/integer_matrix.hpp"

#include "sandpile/errors.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sandpile {

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long x : r) entries_.emplace_back(x);
  }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntegerMatrix IntegerMatrix::without_row_and_column(std::size_t index) const {
  if (index >= rows_ || index >= cols_) throw std::out_of_range("row/column index out of range");
  IntegerMatrix out(rows_ - 1, cols_ - 1);
  for (std::size_t r = 0, ro = 0; r < rows_; ++r) {
    if (r == index) continue;
    for (std::size_t c = 0, co = 0; c < cols_; ++c) {
      if (c == index) continue;
      out(ro, co++) = (*this)(r, c);
    }
    ++ro;
  }
  return out;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
  IntegerMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const BigInt& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        mpz_addmul(out(i, j).get_mpz_t(), aik.get_mpz_t(), b(k, j).get_mpz_t());
    }
  return out;
}

std::vector<BigInt> operator*(std::span<const BigInt> v, const IntegerMatrix& m) {
  if (v.size() != m.rows()) throw std::invalid_argument("vector-matrix dimension mismatch");
  std::vector<BigInt> out(m.cols());
  for (std::size_t k = 0; k < m.rows(); ++k) {
    if (v[k] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_addmul(out[j].get_mpz_t(), v[k].get_mpz_t(), m(k, j).get_mpz_t());
  }
  return out;
}

namespace {

bool next_content_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

BigInt parse_integer(const std::string& token, std::size_t lineno) {
  std::size_t start = (token[0] == '-' || token[0] == '+') ? 1 : 0;
  if (start == token.size()) throw MatrixParseError(lineno, "bad integer '" + token + "'");
  for (std::size_t i = start; i < token.size(); ++i)
    if (token[i] < '0' || token[i] > '9') throw MatrixParseError(lineno, "bad integer '" + token + "'");
  return BigInt(token[0] == '+' ? token.substr(1) : token, 10);
}

}  // namespace

IntegerMatrix read_matrix(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_content_line(in, line, lineno)) throw MatrixParseError(lineno + 1, "missing 'rows cols' header");
  std::istringstream header(line);
  long long rows = -1;
  long long cols = -1;
  std::string extra;
  if (!(header >> rows >> cols) || (header >> extra) || rows <= 0 || cols <= 0)
    throw MatrixParseError(lineno, "header must be two positive integers 'rows cols'");

  IntegerMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (!next_content_line(in, line, lineno))
      throw MatrixParseError(lineno + 1, "expected " + std::to_string(rows) + " rows, found " + std::to_string(r));
    std::istringstream tokens(line);
    std::string tok;
    std::size_t c = 0;
    while (tokens >> tok) {
      if (c == m.cols()) throw MatrixParseError(lineno, "too many entries in row");
      m(r, c++) = parse_integer(tok, lineno);
    }
    if (c != m.cols())
      throw MatrixParseError(lineno, "expected " + std::to_string(cols) + " entries, found " + std::to_string(c));
  }
  if (next_content_line(in, line, lineno)) throw MatrixParseError(lineno, "unexpected content after last row");
  return m;
}

void write_matrix(std::ostream& out, const IntegerMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << m(r, c).get_str();
    out << '\n';
  }
}

std::string to_string(const IntegerMatrix& m) {
  std::string s = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    s += r ? ",[" : "[";
    for (std::size_t c = 0; c < m.cols(); ++c) s += (c ? "," : "") + m(r, c).get_str();
    s += "]";
  }
  return s + "]";
}

}  // namespace sandpile
