#include "sandpile/smith.hpp"

#include "sandpile/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>

namespace sandpile {

namespace {

template <class T>
struct Dense {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> a;

  Dense(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  void swap_rows(std::size_t i, std::size_t k) {
    if (i == k) return;
    std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(i * cols),
                     a.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols),
                     a.begin() + static_cast<std::ptrdiff_t>(k * cols));
  }
  void swap_cols(std::size_t j, std::size_t k) {
    if (j == k) return;
    for (std::size_t i = 0; i < rows; ++i) std::swap((*this)(i, j), (*this)(i, k));
  }
};

// Scalar primitives shared by the int64 and GMP kernels.
inline bool is_zero(std::int64_t x) { return x == 0; }
inline bool is_zero(const BigInt& x) { return sgn(x) == 0; }
inline std::int64_t magnitude(std::int64_t x) { return x < 0 ? -x : x; }
inline int cmp_abs(std::int64_t x, std::int64_t y) {
  const auto ax = magnitude(x);
  const auto ay = magnitude(y);
  return ax < ay ? -1 : (ax > ay ? 1 : 0);
}
inline int cmp_abs(const BigInt& x, const BigInt& y) { return mpz_cmpabs(x.get_mpz_t(), y.get_mpz_t()); }
inline std::int64_t quotient(std::int64_t x, std::int64_t y) { return x / y; }
inline BigInt quotient(const BigInt& x, const BigInt& y) {
  BigInt q;
  mpz_tdiv_q(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return q;
}
// x -= q * y
inline void submul(std::int64_t& x, std::int64_t q, std::int64_t y) { x -= q * y; }
inline void submul(BigInt& x, const BigInt& q, const BigInt& y) {
  mpz_submul(x.get_mpz_t(), q.get_mpz_t(), y.get_mpz_t());
}

// Largest magnitude for which one row sweep followed by one column sweep
// cannot overflow int64: |x| + 2|x|^2 < 2^63.
constexpr std::int64_t kSnfSafeMagnitude = std::int64_t{1} << 30;
// Bareiss step (a*b - c*d) / e stays below 2^63 when inputs are below 2^31.
constexpr std::int64_t kBareissSafeMagnitude = (std::int64_t{1} << 31) - 1;

struct Transforms {
  Dense<BigInt>* U;
  Dense<BigInt>* V;
};

enum class Outcome { kDone, kNeedsWiderScalar };

/// Diagonalizes the block starting at `t` in place by repeated min-magnitude
/// pivoting: the pivot reduces its column and row, and remainders become the
/// next pivot candidates until both are clear. On return with kDone every
/// entry off the diagonal is zero and the nonzero diagonal entries come first.
/// The int64 instantiation stops early (with `t` at a consistent step) once
/// a block entry exceeds kSnfSafeMagnitude.
template <class T>
Outcome diagonalize(Dense<T>& A, std::size_t& t, std::optional<Transforms> tr) {
  const std::size_t limit = std::min(A.rows, A.cols);
  while (t < limit) {
    std::size_t pi = 0;
    std::size_t pj = 0;
    const T* best = nullptr;
    [[maybe_unused]] bool too_large = false;
    for (std::size_t i = t; i < A.rows; ++i)
      for (std::size_t j = t; j < A.cols; ++j) {
        const T& x = A(i, j);
        if (is_zero(x)) continue;
        if constexpr (std::is_same_v<T, std::int64_t>) {
          if (magnitude(x) > kSnfSafeMagnitude) too_large = true;
        }
        if (best == nullptr || cmp_abs(x, *best) < 0) {
          best = &x;
          pi = i;
          pj = j;
        }
      }
    if (best == nullptr) return Outcome::kDone;
    if constexpr (std::is_same_v<T, std::int64_t>) {
      if (too_large) return Outcome::kNeedsWiderScalar;
    }

    A.swap_rows(t, pi);
    A.swap_cols(t, pj);
    if (tr) {
      tr->U->swap_rows(t, pi);
      tr->V->swap_cols(t, pj);
    }

    bool clean = true;
    const T pivot = A(t, t);
    for (std::size_t i = t + 1; i < A.rows; ++i) {
      if (is_zero(A(i, t))) continue;
      const T q = quotient(A(i, t), pivot);
      if (!is_zero(q)) {
        for (std::size_t j = t; j < A.cols; ++j)
          if (!is_zero(A(t, j))) submul(A(i, j), q, A(t, j));
        if (tr) {
          if constexpr (std::is_same_v<T, BigInt>) {
            auto& U = *tr->U;
            for (std::size_t j = 0; j < U.cols; ++j)
              if (!is_zero(U(t, j))) submul(U(i, j), q, U(t, j));
          }
        }
      }
      if (!is_zero(A(i, t))) clean = false;
    }
    for (std::size_t j = t + 1; j < A.cols; ++j) {
      if (is_zero(A(t, j))) continue;
      const T q = quotient(A(t, j), pivot);
      if (!is_zero(q)) {
        for (std::size_t i = t; i < A.rows; ++i)
          if (!is_zero(A(i, t))) submul(A(i, j), q, A(i, t));
        if (tr) {
          if constexpr (std::is_same_v<T, BigInt>) {
            auto& V = *tr->V;
            for (std::size_t i = 0; i < V.rows; ++i)
              if (!is_zero(V(i, t))) submul(V(i, j), q, V(i, t));
          }
        }
      }
      if (!is_zero(A(t, j))) clean = false;
    }
    if (clean) ++t;
  }
  return Outcome::kDone;
}

Dense<BigInt> to_dense(const IntegerMatrix& m) {
  Dense<BigInt> d(m.rows(), m.cols());
  std::copy(m.entries().begin(), m.entries().end(), d.a.begin());
  return d;
}

IntegerMatrix from_dense(const Dense<BigInt>& d) {
  IntegerMatrix m(d.rows, d.cols);
  for (std::size_t i = 0; i < d.rows; ++i)
    for (std::size_t j = 0; j < d.cols; ++j) m(i, j) = d(i, j);
  return m;
}

std::optional<Dense<std::int64_t>> to_machine(const IntegerMatrix& m) {
  Dense<std::int64_t> d(m.rows(), m.cols());
  for (std::size_t k = 0; k < d.a.size(); ++k) {
    const BigInt& x = m.entries()[k];
    if (!x.fits_slong_p()) return std::nullopt;
    d.a[k] = x.get_si();
  }
  return d;
}

Dense<BigInt> widen(const Dense<std::int64_t>& d) {
  Dense<BigInt> w(d.rows, d.cols);
  for (std::size_t k = 0; k < d.a.size(); ++k) w.a[k] = static_cast<long>(d.a[k]);
  return w;
}

// Diagonal of a fully diagonalized matrix, sign-normalized and turned into a
// divisor chain by gcd/lcm passes.
std::vector<BigInt> chain_from_diagonal(std::vector<BigInt> diag) {
  std::size_t r = 0;
  for (auto& x : diag) {
    if (x < 0) x = -x;
    if (x != 0) ++r;
  }
  for (std::size_t i = 0; i < r; ++i) {
    if (diag[i] == 1) continue;
    for (std::size_t j = i + 1; j < r; ++j) {
      if (mpz_divisible_p(diag[j].get_mpz_t(), diag[i].get_mpz_t())) continue;
      BigInt g = gcd(diag[i], diag[j]);
      diag[j] = diag[i] / g * diag[j];
      diag[i] = std::move(g);
      if (diag[i] == 1) break;
    }
  }
  return diag;
}

}  // namespace

std::vector<BigInt> SnfResult::diagonal() const {
  std::vector<BigInt> d;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
  return d;
}

std::size_t SnfResult::rank() const {
  std::size_t r = 0;
  for (const auto& x : diagonal())
    if (x != 0) ++r;
  return r;
}

std::vector<BigInt> smith_diagonal(const IntegerMatrix& m) {
  const std::size_t n = std::min(m.rows(), m.cols());
  std::vector<BigInt> diag(n);
  std::size_t t = 0;
  if (auto small = to_machine(m)) {
    if (diagonalize(*small, t, std::nullopt) == Outcome::kDone) {
      for (std::size_t i = 0; i < n; ++i) diag[i] = static_cast<long>((*small)(i, i));
      return chain_from_diagonal(std::move(diag));
    }
    Dense<BigInt> wide = widen(*small);
    diagonalize(wide, t, std::nullopt);
    for (std::size_t i = 0; i < n; ++i) diag[i] = wide(i, i);
    return chain_from_diagonal(std::move(diag));
  }
  Dense<BigInt> wide = to_dense(m);
  diagonalize(wide, t, std::nullopt);
  for (std::size_t i = 0; i < n; ++i) diag[i] = wide(i, i);
  return chain_from_diagonal(std::move(diag));
}

SnfResult smith_normal_form(const IntegerMatrix& m) {
  Dense<BigInt> A = to_dense(m);
  Dense<BigInt> U = to_dense(IntegerMatrix::identity(m.rows()));
  Dense<BigInt> V = to_dense(IntegerMatrix::identity(m.cols()));
  std::size_t t = 0;
  diagonalize(A, t, Transforms{&U, &V});

  const std::size_t n = std::min(A.rows, A.cols);
  for (std::size_t i = 0; i < n; ++i) {
    if (A(i, i) >= 0) continue;
    A(i, i) = -A(i, i);
    for (std::size_t j = 0; j < U.cols; ++j) U(i, j) = -U(i, j);
  }
  std::size_t r = 0;
  while (r < n && A(r, r) != 0) ++r;

  // Replace the pair (a, b) at positions (i, j) by (gcd, lcm):
  //   row_i += row_j;  [col_i col_j] *= [[x, -b/g], [y, a/g]] with ax + by = g;
  //   row_j -= (b*y/g) * row_i.
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) {
      const BigInt a = A(i, i);
      const BigInt b = A(j, j);
      if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) continue;
      BigInt g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      const BigInt bg = b / g;
      const BigInt ag = a / g;
      const BigInt f = b * y / g;
      for (std::size_t k = 0; k < U.cols; ++k) U(i, k) += U(j, k);
      for (std::size_t k = 0; k < V.rows; ++k) {
        const BigInt vi = V(k, i);
        const BigInt vj = V(k, j);
        V(k, i) = vi * x + vj * y;
        V(k, j) = vj * ag - vi * bg;
      }
      for (std::size_t k = 0; k < U.cols; ++k) submul(U(j, k), f, U(i, k));
      A(i, i) = g;
      A(j, j) = a * bg;
    }
  }
  return SnfResult{from_dense(U), from_dense(A), from_dense(V)};
}

std::vector<BigInt> invariant_factors(const IntegerMatrix& m) {
  std::vector<BigInt> d = smith_diagonal(m);
  std::erase_if(d, [](const BigInt& x) { return x == 0; });
  return d;
}

std::size_t rank(const IntegerMatrix& m) { return invariant_factors(m).size(); }

AbelianGroup smith_group(const IntegerMatrix& m, std::size_t ambient_dim) {
  if (ambient_dim != m.cols())
    throw std::invalid_argument("ambient dimension " + std::to_string(ambient_dim) + " does not match " +
                                std::to_string(m.cols()) + " columns");
  std::vector<BigInt> factors = invariant_factors(m);
  const std::size_t r = factors.size();
  std::erase_if(factors, [](const BigInt& x) { return x == 1; });
  return AbelianGroup::from_invariant_factors(ambient_dim - r, std::move(factors));
}

AbelianGroup finite_part(const IntegerMatrix& m, std::size_t ambient_dim) {
  return smith_group(m, ambient_dim).torsion();
}

BigInt determinant(const IntegerMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;

  int sign = 1;
  std::size_t k = 0;
  BigInt prev = 1;
  std::optional<Dense<BigInt>> wide;

  // Machine-integer phase: each step is taken only if the active block is small enough.
  if (auto small = to_machine(m)) {
    auto& A = *small;
    std::int64_t prev64 = 1;
    for (; k < n; ++k) {
      std::int64_t biggest = 0;
      for (std::size_t i = k; i < n; ++i)
        for (std::size_t j = k; j < n; ++j) biggest = std::max(biggest, magnitude(A(i, j)));
      if (biggest > kBareissSafeMagnitude) break;
      if (A(k, k) == 0) {
        std::size_t i = k + 1;
        while (i < n && A(i, k) == 0) ++i;
        if (i == n) return 0;
        A.swap_rows(i, k);
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i)
        for (std::size_t j = k + 1; j < n; ++j) A(i, j) = (A(i, j) * A(k, k) - A(i, k) * A(k, j)) / prev64;
      prev64 = A(k, k);
    }
    if (k == n) return BigInt(static_cast<long>(sign * A(n - 1, n - 1)));
    prev = static_cast<long>(prev64);
    wide = widen(A);
  } else {
    wide = to_dense(m);
  }

  auto& A = *wide;
  BigInt tmp;
  for (; k < n; ++k) {
    if (A(k, k) == 0) {
      std::size_t i = k + 1;
      while (i < n && A(i, k) == 0) ++i;
      if (i == n) return 0;
      A.swap_rows(i, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const bool lower_zero = A(i, k) == 0;
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_mul(tmp.get_mpz_t(), A(i, j).get_mpz_t(), A(k, k).get_mpz_t());
        if (!lower_zero) mpz_submul(tmp.get_mpz_t(), A(i, k).get_mpz_t(), A(k, j).get_mpz_t());
        mpz_divexact(A(i, j).get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = A(k, k);
  }
  return sign * A(n - 1, n - 1);
}

BigInt cokernel_element_order(const SnfResult& snf, std::span<const BigInt> v) {
  if (v.size() != snf.V.rows()) throw std::invalid_argument("vector length does not match column count");
  const std::vector<BigInt> w = v * snf.V;
  const std::vector<BigInt> diag = snf.diagonal();
  BigInt order = 1;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const bool has_pivot = i < diag.size() && diag[i] != 0;
    if (!has_pivot) {
      if (w[i] != 0) throw InfiniteOrderError("element has a component outside the span's saturation");
      continue;
    }
    order = lcm(order, diag[i] / gcd(diag[i], w[i]));
  }
  return order;
}

BigInt cokernel_element_order(const IntegerMatrix& m, std::span<const BigInt> v) {
  if (v.size() != m.cols()) throw std::invalid_argument("vector length does not match column count");
  return cokernel_element_order(smith_normal_form(m), v);
}

}  // namespace sandpile
