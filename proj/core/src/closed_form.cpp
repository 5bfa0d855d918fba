#include "sandpile/closed_form.hpp"

#include "sandpile/number_theory.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sandpile {

namespace {

void require_degree(std::int64_t d) {
  if (d <= 1) throw std::invalid_argument("closed forms need d >= 2, got " + std::to_string(d));
}

void require_size(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("n must be positive, got " + std::to_string(n));
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<__int128>(mod(a, m)) * mod(b, m) % m);
}

// |base^e - 1| for a possibly negative base.
BigInt pow_minus_one_abs(std::int64_t base, std::uint64_t e) {
  BigInt x;
  mpz_ui_pow_ui(x.get_mpz_t(), static_cast<unsigned long>(base < 0 ? -base : base), e);
  if (base < 0 && e % 2 == 1) x = -x;
  x -= 1;
  return abs(x);
}

struct ClosedForm {
  AbelianGroup dune;
  AbelianGroup sandpile;
};

// c for an orbit representative v mod m; `primes` is the factorization of m.
BigInt c_of_representative(std::int64_t v, std::int64_t m, std::int64_t d, int sign,
                           const std::vector<std::pair<std::uint64_t, unsigned>>& primes) {
  const bool exceptional = mod(sign * d, 4) == 3 && m % 4 == 0;
  if (exceptional && v == m / 2) return 2;
  for (auto [p, e] : primes) {
    const auto pi = static_cast<std::int64_t>(pow(p, e).get_ui());
    if (v != m / pi) continue;
    return (p == 2 && exceptional) ? pi / 2 : pi;
  }
  return 1;
}

/// Both groups for multiplier sign*d on Z_m (sign = +1 de Bruijn, -1 Kautz),
/// with the |dune| = n |sandpile| identity checked.
ClosedForm closed_form(std::int64_t n, std::int64_t d, int sign) {
  require_size(n);
  require_degree(d);
  const DSequence seq = d_sequence(n, d);

  std::vector<BigInt> dune;
  std::vector<BigInt> pile;
  for (std::size_t i = 0; i < seq.k; ++i) {
    const std::int64_t exponent = seq.block_exponent(i);
    const std::int64_t floor = i + 1 < seq.k ? 1 : seq.at(i) - seq.at(i + 1);
    if (exponent < 1 || exponent < floor)
      throw std::logic_error("negative block exponent in d-sequence of " + std::to_string(n));
    const BigInt power = pow(static_cast<std::uint64_t>(d), i + 1);
    for (std::int64_t r = 0; r < exponent; ++r) dune.push_back(power);
    pile.push_back(power / seq.gcds[i]);
    for (std::int64_t r = 1; r < exponent; ++r) pile.push_back(power);
  }

  const OrbitData od = orbits(seq.m, sign * d);
  const auto primes = factorize(static_cast<std::uint64_t>(seq.m));
  for (std::int64_t v : od.representatives) {
    const BigInt cyclic = pow_minus_one_abs(sign * d, od.orbit_sizes.at(v));
    const BigInt c = c_of_representative(v, seq.m, d, sign, primes);
    if (!mpz_divisible_p(cyclic.get_mpz_t(), c.get_mpz_t()))
      throw std::logic_error("c(" + std::to_string(v) + ") does not divide the orbit order");
    dune.push_back(cyclic);
    pile.push_back(cyclic / c);
  }

  ClosedForm out{canonicalize(dune), canonicalize(pile)};
  if (order(out.dune) != n * order(out.sandpile))
    throw std::logic_error("closed forms violate |dune| = n |sandpile| for n = " + std::to_string(n) +
                           ", d = " + std::to_string(d));
  return out;
}

}  // namespace

DSequence d_sequence(std::int64_t n, std::int64_t d) {
  require_size(n);
  require_degree(d);
  DSequence s;
  s.chain.push_back(n);
  std::int64_t cur = n;
  for (std::int64_t g = gcd64(cur, d); g > 1; g = gcd64(cur, d)) {
    s.gcds.push_back(g);
    s.g *= g;
    cur /= g;
    s.chain.push_back(cur);
  }
  s.k = s.gcds.size();
  s.m = cur;
  return s;
}

OrbitData orbits(std::int64_t m, std::int64_t multiplier) {
  require_size(m);
  if (gcd64(m, mod(multiplier, m)) != 1 && m != 1)
    throw std::invalid_argument("multiplier " + std::to_string(multiplier) + " is not a unit mod " + std::to_string(m));

  OrbitData od;
  od.modulus = m;
  od.multiplier = multiplier;

  std::vector<bool> mandated(static_cast<std::size_t>(m), false);
  for (auto [p, e] : factorize(static_cast<std::uint64_t>(m))) {
    std::int64_t q = m;
    for (unsigned j = 1; j <= e; ++j) {
      q /= static_cast<std::int64_t>(p);
      mandated[static_cast<std::size_t>(q)] = true;
    }
  }

  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  for (std::int64_t start = 1; start < m; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<std::int64_t> orbit;
    for (std::int64_t x = start; !seen[static_cast<std::size_t>(x)]; x = mulmod(multiplier, x, m)) {
      seen[static_cast<std::size_t>(x)] = true;
      orbit.push_back(x);
    }
    auto rep = std::find_if(orbit.begin(), orbit.end(), [&](std::int64_t x) { return mandated[static_cast<std::size_t>(x)]; });
    if (rep != orbit.end()) {
      if (std::count_if(orbit.begin(), orbit.end(), [&](std::int64_t x) { return mandated[static_cast<std::size_t>(x)]; }) > 1)
        throw std::logic_error("two mandated representatives share an orbit");
      std::rotate(orbit.begin(), rep, orbit.end());
    }
    od.representatives.push_back(orbit.front());
    od.orbit_sizes[orbit.front()] = orbit.size();
    od.orbits.push_back(std::move(orbit));
  }
  return od;
}

DType d_type(std::int64_t v, std::int64_t n, std::int64_t d) {
  require_size(n);
  std::map<std::int64_t, std::uint64_t> first_seen;
  std::int64_t x = mod(v, n);
  for (std::uint64_t step = 0;; ++step) {
    auto [it, inserted] = first_seen.emplace(x, step);
    if (!inserted) return DType{it->second, step - it->second};
    x = mulmod(d, x, n);
  }
}

BigInt c_value(std::int64_t v, std::int64_t m, std::int64_t d, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  require_degree(d);
  const OrbitData od = orbits(m, sign * d);
  if (!od.is_representative(v))
    throw std::invalid_argument(std::to_string(v) + " is not an orbit representative mod " + std::to_string(m));
  return c_of_representative(v, m, d, sign, factorize(static_cast<std::uint64_t>(m)));
}

AbelianGroup sand_dune_group(std::int64_t n, std::int64_t d) { return closed_form(n, d, +1).dune; }

AbelianGroup sandpile_group_db(std::int64_t n, std::int64_t d) { return closed_form(n, d, +1).sandpile; }

AbelianGroup sandpile_group_kautz(std::int64_t n, std::int64_t d) { return closed_form(n, d, -1).sandpile; }

IntegerMatrix epsilon_relation_matrix(std::int64_t n, std::int64_t d) {
  if (n < 2) throw std::invalid_argument("relation matrix needs n >= 2");
  require_degree(d);
  const auto size = static_cast<std::size_t>(n - 1);
  IntegerMatrix m(size, size);
  for (std::int64_t v = 1; v < n; ++v) {
    const auto row = static_cast<std::size_t>(v - 1);
    m(row, row) += static_cast<long>(d);
    const std::int64_t w = mulmod(d, v, n);
    if (w != 0) m(row, static_cast<std::size_t>(w - 1)) -= 1;
  }
  return m;
}

EpsilonCoordinates epsilon_coordinates_of_ev(std::int64_t v, std::int64_t n, std::int64_t d) {
  require_size(n);
  require_degree(d);
  v = mod(v, n);
  if (v == 0) throw std::invalid_argument("e_0 = 0 has no eps-coordinates");

  const DType type = d_type(v, n, d);
  EpsilonCoordinates out;
  std::int64_t x = v;
  // Tail: e_v = sum_{i<f} d^{-i-1} eps_{d^i v} + d^{-f} e_{d^f v}.
  for (std::uint64_t i = 0; i < type.tail; ++i) {
    out.coefficients[x] += Rational(BigInt(1), pow(static_cast<std::uint64_t>(d), i + 1));
    x = mulmod(d, x, n);
  }
  // Cycle through w = d^f v: e_w = sum_{j<e} d^{e-1-j} / (d^e - 1) eps_{d^j w}; eps_0 = 0.
  if (x != 0) {
    const BigInt cycle_denominator = pow(static_cast<std::uint64_t>(d), type.cycle) - 1;
    const BigInt tail_scale = pow(static_cast<std::uint64_t>(d), type.tail);
    for (std::uint64_t j = 0; j < type.cycle; ++j) {
      Rational c(pow(static_cast<std::uint64_t>(d), type.cycle - 1 - j), cycle_denominator * tail_scale);
      c.canonicalize();
      out.coefficients[x] += c;
      x = mulmod(d, x, n);
    }
  }
  for (auto& [w, c] : out.coefficients) c.canonicalize();
  return out;
}

BigInt order_of_ev(std::int64_t v, std::int64_t n, std::int64_t d) {
  BigInt result = 1;
  for (const auto& [w, c] : epsilon_coordinates_of_ev(v, n, d).coefficients)
    result = lcm(result, c.get_den());
  return result;
}

bool membership_in_sandpile(const std::map<std::int64_t, BigInt>& coefficients, std::int64_t n) {
  require_size(n);
  BigInt sum = 0;
  for (const auto& [v, a] : coefficients) sum += BigInt(static_cast<long>(v)) * a;
  return mpz_divisible_ui_p(sum.get_mpz_t(), static_cast<unsigned long>(n)) != 0;
}

}  // namespace sandpile
