#include "sandpile/circulant.hpp"

#include "sandpile/errors.hpp"
#include "sandpile/number_theory.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>
#include <string>

namespace sandpile {

namespace {

void require_prime(std::int64_t p) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
    throw std::invalid_argument(std::to_string(p) + " is not a prime");
}

void require_size(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("n must be positive, got " + std::to_string(n));
}

// p^n, or nullopt-like sentinel 0 when it exceeds cap.
std::uint64_t ring_size(std::int64_t p, std::int64_t n, std::uint64_t cap) {
  std::uint64_t size = 1;
  for (std::int64_t i = 0; i < n; ++i) {
    if (size > cap / static_cast<std::uint64_t>(p))
      throw ResourceLimitError(std::to_string(p) + "^" + std::to_string(n) + " exceeds the brute-force cap " +
                               std::to_string(cap));
    size *= static_cast<std::uint64_t>(p);
  }
  return size;
}

// --- Dense polynomials over F_p, low degree first, no trailing zeros. ---

using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  return static_cast<std::uint32_t>(mod(t, p));
}

Poly poly_rem(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint64_t lead_inv = inverse_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t factor = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - factor) * b[i]) % p);
    trim(a);
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& h, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  }
  Poly out(acc.begin(), acc.end());
  return poly_rem(std::move(out), h, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& h, std::uint32_t p) {
  Poly result{1};
  result = poly_rem(result, h, p);
  base = poly_rem(base, h, p);
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, h, p);
    e >>= 1;
    if (e) base = poly_mulmod(base, base, h, p);
  }
  return result;
}

Poly x_power_n_minus_one(std::int64_t n, std::uint32_t p) {
  Poly f(static_cast<std::size_t>(n) + 1, 0);
  f[0] = p - 1;
  f.back() = 1;
  if (n == 0) f = {};
  return f;
}

// --- Enumeration engines for the brute-force oracles. ---

/// F_2[x]/(x^n - 1) with elements as bit masks; multiplication is a
/// rotate-and-xor per set bit.
class Gf2Engine {
 public:
  using Elem = std::uint64_t;

  explicit Gf2Engine(unsigned n) : n_(n), mask_(n == 64 ? ~0ULL : (1ULL << n) - 1) {}

  Elem from_index(std::uint64_t i) const { return i; }
  Elem one() const { return 1; }
  Elem shift() const { return n_ == 1 ? 1 : 2; }
  bool is_one(Elem a) const { return a == 1; }
  bool is_monomial(Elem a) const { return std::popcount(a) == 1; }
  std::uint32_t eval_one(Elem a) const { return static_cast<std::uint32_t>(std::popcount(a) & 1); }

  Elem mul(Elem a, Elem b) const {
    Elem r = 0;
    while (b != 0) {
      const unsigned k = static_cast<unsigned>(std::countr_zero(b));
      r ^= k == 0 ? a : (((a << k) | (a >> (n_ - k))) & mask_);
      b &= b - 1;
    }
    return r;
  }

  bool is_unit(Elem a) const {
    if (a == 0) return false;
    // gcd with x^n + 1 over GF(2); polynomials as bit masks of degree <= n.
    unsigned __int128 u = (static_cast<unsigned __int128>(1) << n_) | 1;
    unsigned __int128 v = a;
    auto degree = [](unsigned __int128 x) {
      const auto hi = static_cast<std::uint64_t>(x >> 64);
      return hi ? 127 - std::countl_zero(hi) : 63 - std::countl_zero(static_cast<std::uint64_t>(x));
    };
    while (v != 0) {
      while (u != 0 && degree(u) >= degree(v)) u ^= v << (degree(u) - degree(v));
      std::swap(u, v);
    }
    return u == 1;
  }

 private:
  unsigned n_;
  Elem mask_;
};

inline constexpr std::size_t kMaxDigits = 32;

/// F_p[x]/(x^n - 1) for odd p with elements as coefficient arrays.
class PrimeEngine {
 public:
  using Elem = std::array<std::uint32_t, kMaxDigits>;

  PrimeEngine(unsigned n, std::uint32_t p) : n_(n), p_(p), modulus_(x_power_n_minus_one(n, p)) {}

  Elem from_index(std::uint64_t i) const {
    Elem e{};
    for (unsigned k = 0; k < n_; ++k) {
      e[k] = static_cast<std::uint32_t>(i % p_);
      i /= p_;
    }
    return e;
  }
  Elem one() const {
    Elem e{};
    e[0] = 1;
    return e;
  }
  Elem shift() const {
    Elem e{};
    e[1 % n_] = 1;
    return e;
  }
  bool is_one(const Elem& a) const {
    if (a[0] != 1) return false;
    for (unsigned k = 1; k < n_; ++k)
      if (a[k] != 0) return false;
    return true;
  }
  bool is_monomial(const Elem& a) const {
    unsigned nonzero = 0;
    for (unsigned k = 0; k < n_; ++k)
      if (a[k] != 0 && (a[k] != 1 || ++nonzero > 1)) return false;
    return nonzero == 1;
  }
  std::uint32_t eval_one(const Elem& a) const {
    std::uint64_t s = 0;
    for (unsigned k = 0; k < n_; ++k) s += a[k];
    return static_cast<std::uint32_t>(s % p_);
  }

  Elem mul(const Elem& a, const Elem& b) const {
    std::array<std::uint64_t, kMaxDigits> acc{};
    for (unsigned i = 0; i < n_; ++i) {
      const std::uint64_t ai = a[i];
      if (ai == 0) continue;
      unsigned k = i;
      for (unsigned j = 0; j < n_; ++j) {
        acc[k] += ai * b[j];
        if (++k == n_) k = 0;
      }
    }
    Elem r{};
    for (unsigned k = 0; k < n_; ++k) r[k] = static_cast<std::uint32_t>(acc[k] % p_);
    return r;
  }

  bool is_unit(const Elem& a) const {
    Poly pa(a.begin(), a.begin() + n_);
    trim(pa);
    if (pa.empty()) return false;
    return poly_gcd(pa, modulus_, p_).size() == 1;
  }

 private:
  unsigned n_;
  std::uint32_t p_;
  Poly modulus_;
};

template <class Engine>
typename Engine::Elem power(const Engine& R, typename Engine::Elem a, std::uint64_t e) {
  typename Engine::Elem r = R.one();
  while (e > 0) {
    if (e & 1) r = R.mul(r, a);
    e >>= 1;
    if (e) a = R.mul(a, a);
  }
  return r;
}

/// Order of a in G/H given a multiple `annihilator` of the quotient's
/// exponent, where `in_subgroup` tests membership of H. Per prime q the
/// q-part is stripped from the annihilator and then rebuilt one factor at a
/// time until the power lands in H.
template <class Engine, class InSubgroup>
std::uint64_t relative_order(const Engine& R, const typename Engine::Elem& a, std::uint64_t annihilator,
                             const std::vector<std::pair<std::uint64_t, unsigned>>& primes,
                             InSubgroup in_subgroup) {
  std::uint64_t order = annihilator;
  for (auto [q, v] : primes) {
    for (unsigned i = 0; i < v; ++i) order /= q;
    auto b = power(R, a, order);
    while (!in_subgroup(b)) {
      b = power(R, b, q);
      order *= q;
    }
  }
  return order;
}

template <class Engine>
AbelianGroup enumerate_units(const Engine& R, std::uint64_t size) {
  std::vector<std::uint64_t> units;
  for (std::uint64_t i = 0; i < size; ++i)
    if (R.is_unit(R.from_index(i))) units.push_back(i);
  const std::uint64_t count = units.size();
  const auto primes = factorize(count);
  OrderStatistics stats;
  for (std::uint64_t i : units) {
    const auto a = R.from_index(i);
    ++stats[relative_order(R, a, count, primes, [&](const auto& b) { return R.is_one(b); })];
  }
  return from_order_statistics(stats);
}

template <class Engine>
AbelianGroup enumerate_shift_quotient(const Engine& R, std::uint64_t size, std::uint64_t n) {
  // The shift lies in C' and has order exactly n.
  const auto x = R.shift();
  if (R.eval_one(x) != 1 || !R.is_one(power(R, x, n)))
    throw std::logic_error("shift does not have order dividing n");
  for (auto [q, v] : factorize(n))
    if (R.is_one(power(R, x, n / q))) throw std::logic_error("shift has order below n");

  std::vector<std::uint64_t> members;
  for (std::uint64_t i = 0; i < size; ++i) {
    const auto a = R.from_index(i);
    if (R.eval_one(a) == 1 && R.is_unit(a)) members.push_back(i);
  }
  if (members.size() % n != 0) throw std::logic_error("|C'| is not divisible by n");
  const std::uint64_t quotient_order = members.size() / n;
  const auto primes = factorize(quotient_order);
  OrderStatistics per_element;
  for (std::uint64_t i : members) {
    const auto a = R.from_index(i);
    ++per_element[relative_order(R, a, quotient_order, primes, [&](const auto& b) { return R.is_monomial(b); })];
  }
  // Every coset of <x> contributes n elements with the same coset order.
  OrderStatistics stats;
  for (auto [o, c] : per_element) {
    if (c % n != 0) throw std::logic_error("coset order counts are not multiples of n");
    stats[o] = c / n;
  }
  return from_order_statistics(stats);
}

template <class Fn>
auto with_engine(std::int64_t n, std::int64_t p, Fn&& fn) {
  if (p == 2) return fn(Gf2Engine(static_cast<unsigned>(n)));
  return fn(PrimeEngine(static_cast<unsigned>(n), static_cast<std::uint32_t>(p)));
}

void require_enumerable(std::int64_t n, std::int64_t p, std::uint64_t cap) {
  require_size(n);
  require_prime(p);
  ring_size(p, n, cap);
  if (static_cast<std::size_t>(n) > kMaxDigits || (p == 2 && n > 63))
    throw ResourceLimitError("ring dimension too large for enumeration");
}

}  // namespace

// --- PolyModRing ---

PolyModRing::PolyModRing(std::int64_t n, std::int64_t p) : n_(n), p_(p) {
  require_size(n);
  require_prime(p);
}

PolyModRing::Element PolyModRing::one() const {
  Element e = zero();
  e[0] = 1;
  return e;
}

PolyModRing::Element PolyModRing::shift() const {
  Element e = zero();
  e[static_cast<std::size_t>(1 % n_)] = 1;
  return e;
}

PolyModRing::Element PolyModRing::multiply(const Element& a, const Element& b) const {
  const auto n = static_cast<std::size_t>(n_);
  if (a.size() != n || b.size() != n) throw std::invalid_argument("element length differs from n");
  std::vector<std::uint64_t> acc(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      acc[(i + j) % n] = (acc[(i + j) % n] + std::uint64_t{a[i]} * b[j]) % static_cast<std::uint64_t>(p_);
  return Element(acc.begin(), acc.end());
}

PolyModRing::Element PolyModRing::power(Element a, std::uint64_t e) const {
  Element r = one();
  while (e > 0) {
    if (e & 1) r = multiply(r, a);
    e >>= 1;
    if (e) a = multiply(a, a);
  }
  return r;
}

std::uint32_t PolyModRing::evaluate_at_one(const Element& a) const {
  std::uint64_t s = 0;
  for (auto c : a) s += c;
  return static_cast<std::uint32_t>(s % static_cast<std::uint64_t>(p_));
}

bool PolyModRing::is_unit(const Element& a) const {
  Poly pa(a.begin(), a.end());
  trim(pa);
  if (pa.empty()) return false;
  return poly_gcd(pa, x_power_n_minus_one(n_, static_cast<std::uint32_t>(p_)), static_cast<std::uint32_t>(p_)).size() == 1;
}

std::uint64_t PolyModRing::multiplicative_order(const Element& a) const {
  if (!is_unit(a)) throw InfiniteOrderError("element is not a unit");
  const Element id = one();
  Element x = a;
  std::uint64_t k = 1;
  while (x != id) {
    x = multiply(x, a);
    ++k;
  }
  return k;
}

// --- Formula side ---

std::vector<Coset> cyclotomic_cosets(std::int64_t m, std::int64_t p) {
  require_size(m);
  if (p < 2) throw std::invalid_argument("p must be at least 2");
  if (m % p == 0 && m != 1) throw std::invalid_argument(std::to_string(p) + " divides " + std::to_string(m));
  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  std::vector<Coset> out;
  for (std::int64_t start = 0; start < m; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    Coset c;
    for (std::int64_t x = start; !seen[static_cast<std::size_t>(x)]; x = (x * p) % m) {
      seen[static_cast<std::size_t>(x)] = true;
      c.push_back(x);
    }
    out.push_back(std::move(c));
  }
  return out;
}

UnitGroupStructure circulant_group(std::int64_t n, std::int64_t p) {
  require_size(n);
  require_prime(p);
  const auto up = static_cast<std::uint64_t>(p);
  UnitGroupStructure out;
  out.s = valuation(static_cast<std::uint64_t>(n), up);
  out.m = n / static_cast<std::int64_t>(prime_power_part(static_cast<std::uint64_t>(n), up));
  const BigInt ps = pow(up, out.s);
  const std::uint64_t ps_small = ps.get_ui();

  // t_i = least t with i p^t >= p^s, for 1 <= i < p^s with p not dividing i.
  std::vector<BigInt> one_unit_orders;
  for (std::uint64_t i = 1; i < ps_small; ++i) {
    if (i % up == 0) continue;
    std::uint64_t t = 0;
    for (std::uint64_t x = i; x < ps_small; x *= up) ++t;
    one_unit_orders.push_back(pow(up, t));
  }

  std::vector<BigInt> all;
  std::uint64_t dimension = 0;
  for (Coset& c : cyclotomic_cosets(out.m, p)) {
    CosetFactor f;
    f.degree = c.size();
    f.coset = std::move(c);
    f.teichmuller_order = pow(up, f.degree) - 1;
    std::vector<BigInt> repeated;
    for (const auto& o : one_unit_orders)
      for (std::uint64_t r = 0; r < f.degree; ++r) repeated.push_back(o);
    f.one_unit_part = canonicalize(repeated);
    all.push_back(f.teichmuller_order);
    all.insert(all.end(), repeated.begin(), repeated.end());
    dimension += f.degree * ps_small;
    out.factors.push_back(std::move(f));
  }
  if (dimension != static_cast<std::uint64_t>(n)) throw std::logic_error("factor dimensions do not sum to n");
  out.group = canonicalize(all);
  return out;
}

AbelianGroup circulant_group_fixing_ones(std::int64_t n, std::int64_t p) {
  const UnitGroupStructure full = circulant_group(n, p);
  // The factor x - 1 (coset {0}) carries the scalars F_p^*.
  std::vector<BigInt> orders;
  for (const auto& f : full.factors) {
    if (f.coset != Coset{0}) orders.push_back(f.teichmuller_order);
    for (const auto& o : f.one_unit_part.invariant_factors()) orders.push_back(o);
  }
  return canonicalize(orders);
}

AbelianGroup bruteforce_unit_group(std::int64_t n, std::int64_t p, std::uint64_t cap) {
  require_enumerable(n, p, cap);
  const std::uint64_t size = ring_size(p, n, cap);
  return with_engine(n, p, [&](const auto& R) { return enumerate_units(R, size); });
}

AbelianGroup quotient_by_shift(std::int64_t n, std::int64_t p, std::uint64_t cap) {
  require_enumerable(n, p, cap);
  const std::uint64_t size = ring_size(p, n, cap);
  return with_engine(n, p, [&](const auto& R) {
    return enumerate_shift_quotient(R, size, static_cast<std::uint64_t>(n));
  });
}

BigInt count_normal_elements(std::int64_t p, std::int64_t n) { return order(circulant_group(n, p).group); }

namespace {

// Irreducibility of a monic h of degree n: y^{p^n} = y mod h and
// gcd(y^{p^i} - y, h) = 1 for every proper divisor i of n.
bool is_irreducible(const Poly& h, std::int64_t n, std::uint32_t p) {
  const Poly y = poly_rem(Poly{0, 1}, h, p);
  std::vector<Poly> frobenius_powers{y};  // y^{p^i}, i = 0..n
  for (std::int64_t i = 1; i <= n; ++i) frobenius_powers.push_back(poly_powmod(frobenius_powers.back(), p, h, p));
  auto minus_y = [&](Poly a) {
    a.resize(std::max<std::size_t>(a.size(), 2), 0);
    a[1] = (a[1] + p - 1) % p;
    return poly_rem(std::move(a), h, p);
  };
  if (!minus_y(frobenius_powers[static_cast<std::size_t>(n)]).empty()) return false;
  for (std::uint64_t i : divisors(static_cast<std::uint64_t>(n))) {
    if (i == static_cast<std::uint64_t>(n)) continue;
    const Poly g = poly_gcd(minus_y(frobenius_powers[i]), h, p);
    if (g.size() != 1) return false;
  }
  return true;
}

// Rank over F_p of the rows; destroys its input.
std::size_t rank_mod_p(std::vector<std::vector<std::uint32_t>>& rows, std::uint32_t p) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    const std::uint64_t inv = inverse_mod(rows[rank][c], p);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const std::uint64_t f = rows[r][c] * inv % p;
      for (std::size_t k = c; k < cols; ++k)
        rows[r][k] = static_cast<std::uint32_t>((rows[r][k] + (p - f) * rows[rank][k]) % p);
    }
    ++rank;
  }
  return rank;
}

}  // namespace

BigInt bruteforce_count_normal(std::int64_t p, std::int64_t n, std::uint64_t cap) {
  require_size(n);
  require_prime(p);
  const std::uint64_t size = ring_size(p, n, cap);
  const auto up = static_cast<std::uint32_t>(p);
  const auto dim = static_cast<std::size_t>(n);

  // First monic irreducible h of degree n in lexicographic order of its lower coefficients.
  Poly h;
  for (std::uint64_t lower = 0; lower < size && h.empty(); ++lower) {
    Poly cand(dim + 1, 0);
    std::uint64_t x = lower;
    for (std::size_t k = 0; k < dim; ++k) {
      cand[k] = static_cast<std::uint32_t>(x % up);
      x /= up;
    }
    cand[dim] = 1;
    if (is_irreducible(cand, n, up)) h = std::move(cand);
  }
  if (h.empty()) throw std::logic_error("no irreducible polynomial of degree " + std::to_string(n) + " found");

  // Frobenius theta -> theta^p is F_p-linear: column j holds (y^j)^p mod h.
  std::vector<std::vector<std::uint32_t>> frob(dim, std::vector<std::uint32_t>(dim, 0));
  for (std::size_t j = 0; j < dim; ++j) {
    Poly yj(j + 1, 0);
    yj[j] = 1;
    Poly img = poly_powmod(yj, up, h, up);
    for (std::size_t i = 0; i < img.size(); ++i) frob[i][j] = img[i];
  }

  std::uint64_t normal = 0;
  std::vector<std::vector<std::uint32_t>> orbit(dim, std::vector<std::uint32_t>(dim, 0));
  for (std::uint64_t index = 1; index < size; ++index) {
    std::uint64_t x = index;
    for (std::size_t k = 0; k < dim; ++k) {
      orbit[0][k] = static_cast<std::uint32_t>(x % up);
      x /= up;
    }
    for (std::size_t r = 1; r < dim; ++r)
      for (std::size_t i = 0; i < dim; ++i) {
        std::uint64_t s = 0;
        for (std::size_t j = 0; j < dim; ++j) s += std::uint64_t{frob[i][j]} * orbit[r - 1][j];
        orbit[r][i] = static_cast<std::uint32_t>(s % up);
      }
    auto work = orbit;
    if (rank_mod_p(work, up) == dim) ++normal;
  }
  return BigInt(static_cast<unsigned long>(normal));
}

}  // namespace sandpile
