#pragma once

#include "sandpile/bigint.hpp"

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace sandpile {

// Dense row-major matrix of arbitrary-precision integers.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols);
  IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntegerMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  BigInt& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<BigInt> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }
  std::span<const BigInt> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }

  std::span<const BigInt> entries() const noexcept { return entries_; }

  IntegerMatrix transpose() const;

  // Copy with row and column `index` removed.
  IntegerMatrix without_row_and_column(std::size_t index) const;

  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> entries_;
};

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);

// Row vector times matrix.
std::vector<BigInt> operator*(std::span<const BigInt> v, const IntegerMatrix& m);

/// Matrix text format: a "rows cols" header line, then `rows` lines of
/// `cols` whitespace-separated decimal integers (any size, optional sign).
/// Blank lines and lines starting with '#' are skipped. Errors raise
/// MatrixParseError with the 1-based line number.
IntegerMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const IntegerMatrix& m);

std::string to_string(const IntegerMatrix& m);

}  // namespace sandpile
