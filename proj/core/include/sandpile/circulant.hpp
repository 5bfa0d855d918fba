#pragma once

#include "sandpile/abelian.hpp"

#include <cstdint>
#include <vector>

namespace sandpile {

inline constexpr std::uint64_t kDefaultBruteForceCap = std::uint64_t{1} << 20;

/// F_p[x] / (x^n - 1), the ring of n x n circulant matrices over F_p
/// (x plays the role of the cyclic shift). Elements are coefficient vectors
/// of length n, entry i holding the coefficient of x^i.
class PolyModRing {
 public:
  using Element = std::vector<std::uint32_t>;

  // Throws std::invalid_argument unless p is prime and n >= 1.
  PolyModRing(std::int64_t n, std::int64_t p);

  std::int64_t n() const noexcept { return n_; }
  std::int64_t p() const noexcept { return p_; }

  Element zero() const { return Element(static_cast<std::size_t>(n_), 0); }
  Element one() const;
  Element shift() const;  // x

  Element multiply(const Element& a, const Element& b) const;
  Element power(Element a, std::uint64_t e) const;

  // a(1) mod p; circulants with a(1) = 1 fix the all-ones vector.
  std::uint32_t evaluate_at_one(const Element& a) const;

  // gcd(a(x), x^n - 1) = 1 in F_p[x].
  bool is_unit(const Element& a) const;

  // Multiplicative order of a unit, by direct iteration.
  std::uint64_t multiplicative_order(const Element& a) const;

 private:
  std::int64_t n_;
  std::int64_t p_;
};

// Orbit of a residue under multiplication by p.
using Coset = std::vector<std::int64_t>;

// Partition of Z_m into p-cyclotomic cosets, each listed from its least
// element; cosets ordered by least element. Requires gcd(m, p) = 1.
std::vector<Coset> cyclotomic_cosets(std::int64_t m, std::int64_t p);

/// Contribution of one irreducible factor of x^m - 1 (degree r = coset size)
/// to the unit group of F_p[x]/(x^n - 1), n = m p^s: the multiplicative
/// group of F_{p^r} times the one-units of F_{p^r}[t]/(t^{p^s}).
struct CosetFactor {
  Coset coset;
  std::uint64_t degree = 1;
  BigInt teichmuller_order;  // p^r - 1
  AbelianGroup one_unit_part;
};

struct UnitGroupStructure {
  AbelianGroup group;
  std::vector<CosetFactor> factors;
  std::int64_t m = 1;       // p-free part of n
  std::uint64_t s = 0;      // n = m p^s
};

/// Structure of C(n, p), the invertible circulants over F_p.
///
/// The one-unit group of F_{p^r}[t]/(t^{p^s}) is taken to be
/// sum over 1 <= i < p^s, p not dividing i, of (Z_{p^{t_i}})^r with t_i the
/// least t such that i p^t >= p^s. bruteforce_unit_group checks this.
UnitGroupStructure circulant_group(std::int64_t n, std::int64_t p);

// C'(n, p) = { a : a(1) = 1 }; C(n, p) = C'(n, p) x F_p^*.
AbelianGroup circulant_group_fixing_ones(std::int64_t n, std::int64_t p);

// Unit group by enumerating all p^n ring elements. ResourceLimitError if p^n > cap.
AbelianGroup bruteforce_unit_group(std::int64_t n, std::int64_t p, std::uint64_t cap = kDefaultBruteForceCap);

// C'(n, p) / <x> by enumeration.
AbelianGroup quotient_by_shift(std::int64_t n, std::int64_t p, std::uint64_t cap = kDefaultBruteForceCap);

// Number of normal elements of F_{p^n} over F_p, equal to |C(n, p)|.
BigInt count_normal_elements(std::int64_t p, std::int64_t n);

// Normal elements counted directly in F_p[y]/(h) for an irreducible h of degree n.
BigInt bruteforce_count_normal(std::int64_t p, std::int64_t n, std::uint64_t cap = kDefaultBruteForceCap);

}  // namespace sandpile
