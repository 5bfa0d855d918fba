#pragma once

#include "sandpile/abelian.hpp"
#include "sandpile/integer_matrix.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace sandpile {

/// The chain n = n_0 > n_1 > ... > n_k obtained by dividing out gcd(n_i, d)
/// until it becomes 1, so that n = g * m with gcd(m, d) = 1.
struct DSequence {
  std::vector<std::int64_t> chain;  // n_0 .. n_k
  std::vector<std::int64_t> gcds;   // g_0 .. g_{k-1}, each > 1
  std::size_t k = 0;
  std::int64_t m = 1;  // n_k
  std::int64_t g = 1;  // g_0 * ... * g_{k-1}

  // n_i with n_j = n_k for every j > k.
  std::int64_t at(std::size_t i) const { return chain[std::min(i, k)]; }

  // n_i - 2 n_{i+1} + n_{i+2}; the multiplicity of Z_{d^{i+1}} in the sand dune group.
  std::int64_t block_exponent(std::size_t i) const { return at(i) - 2 * at(i + 1) + at(i + 2); }
};

DSequence d_sequence(std::int64_t n, std::int64_t d);

/// Cycles of x -> multiplier * x on the nonzero residues mod `modulus`.
///
/// Each orbit is listed starting at its representative. Representatives are
/// the least orbit element except that every m / p^j (p | m, 1 <= j <= v_p(m))
/// represents its own orbit; distinct such integers have distinct p-adic
/// valuations, or distinct quotients by a unit, so they never share an orbit.
struct OrbitData {
  std::int64_t modulus = 1;
  std::int64_t multiplier = 1;
  std::vector<std::vector<std::int64_t>> orbits;
  std::vector<std::int64_t> representatives;
  std::map<std::int64_t, std::size_t> orbit_sizes;  // representative -> o(v)

  bool is_representative(std::int64_t v) const { return orbit_sizes.contains(v); }
};

OrbitData orbits(std::int64_t m, std::int64_t multiplier);

// Tail length f and cycle length e of v under x -> d x mod n.
struct DType {
  std::uint64_t tail = 0;
  std::uint64_t cycle = 1;
  friend bool operator==(const DType&, const DType&) = default;
};

DType d_type(std::int64_t v, std::int64_t n, std::int64_t d);

/// Correction divisor c(v) (sign = +1) or c'(v) (sign = -1) for the orbit
/// representative v of Z_m under x -> sign*d*x. Nontrivial only at
/// m / pi_p(m) and, when 4 | m and sign*d = 3 mod 4, at m / 2.
BigInt c_value(std::int64_t v, std::int64_t m, std::int64_t d, int sign);

// Sand dune group of DB(n, d), a group containing the sandpile group with index n.
AbelianGroup sand_dune_group(std::int64_t n, std::int64_t d);

// Closed-form sandpile (critical) group of DB(n, d).
AbelianGroup sandpile_group_db(std::int64_t n, std::int64_t d);

/// Closed-form sandpile group of Kautz(n, d). Orbits are taken under
/// x -> -d x and each contributes a cyclic factor of order
/// |(-d)^{o'(v)} - 1| / c'(v).
AbelianGroup sandpile_group_kautz(std::int64_t n, std::int64_t d);

// Relations eps_v = d e_v - e_{dv}, v = 1..n-1, over the basis e_1..e_{n-1} (e_0 = 0).
IntegerMatrix epsilon_relation_matrix(std::int64_t n, std::int64_t d);

// Exact rational coefficients of e_v in the eps basis; keys are the indices w of eps_w.
struct EpsilonCoordinates {
  std::map<std::int64_t, Rational> coefficients;
};

EpsilonCoordinates epsilon_coordinates_of_ev(std::int64_t v, std::int64_t n, std::int64_t d);

/// Order of e_v in the sand dune group: the lcm of the coefficient
/// denominators of its eps-coordinates. This is d^f (d^e - 1) for d-type
/// (f, e), except when the orbit of v ends in 0, where it is d^f.
BigInt order_of_ev(std::int64_t v, std::int64_t n, std::int64_t d);

// Whether sum_v a_v e_v lies in the embedded sandpile group: sum_v v a_v = 0 mod n.
bool membership_in_sandpile(const std::map<std::int64_t, BigInt>& coefficients, std::int64_t n);

}  // namespace sandpile
