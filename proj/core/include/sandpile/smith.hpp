#pragma once

#include "sandpile/abelian.hpp"
#include "sandpile/integer_matrix.hpp"

#include <span>
#include <vector>

namespace sandpile {

/// Smith Normal Form with unimodular transforms: U * M * V == S.
///
/// S is diagonal with nonnegative entries s_1 | s_2 | ... ; zeros trail.
struct SnfResult {
  IntegerMatrix U;
  IntegerMatrix S;
  IntegerMatrix V;

  // The min(rows, cols) diagonal entries of S.
  std::vector<BigInt> diagonal() const;
  std::size_t rank() const;
};

SnfResult smith_normal_form(const IntegerMatrix& m);

// Diagonal of the Smith form without transforms. Runs in machine integers while
// entry magnitudes allow it and switches to GMP otherwise.
std::vector<BigInt> smith_diagonal(const IntegerMatrix& m);

// Nonzero diagonal entries of the Smith form, in divisor-chain order.
std::vector<BigInt> invariant_factors(const IntegerMatrix& m);

std::size_t rank(const IntegerMatrix& m);

// Z^n modulo the row span of m; ambient_dim must equal m.cols().
AbelianGroup smith_group(const IntegerMatrix& m, std::size_t ambient_dim);

// Torsion part of smith_group.
AbelianGroup finite_part(const IntegerMatrix& m, std::size_t ambient_dim);

// Exact determinant by fraction-free (Bareiss) elimination.
BigInt determinant(const IntegerMatrix& m);

/// Order of v in Z^n / rowspan(m): the least k > 0 with k*v in the row span.
/// Throws InfiniteOrderError when no multiple of v lies in the span.
BigInt cokernel_element_order(const IntegerMatrix& m, std::span<const BigInt> v);

// Same query against a precomputed Smith form of m, for repeated use.
BigInt cokernel_element_order(const SnfResult& snf, std::span<const BigInt> v);

}  // namespace sandpile
