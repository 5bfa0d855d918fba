#include "sandpile/abelian.hpp"

#include "sandpile/errors.hpp"
#include "sandpile/number_theory.hpp"

#include <algorithm>
#include <stdexcept>

namespace sandpile {

namespace {

// Pairwise coprime base of the inputs: every input is a product of powers of
// base elements. Refines by gcd splitting until no two elements share a factor.
std::vector<BigInt> coprime_base(std::vector<BigInt> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  bool refined = true;
  while (refined) {
    refined = false;
    for (std::size_t i = 0; i < values.size() && !refined; ++i) {
      for (std::size_t j = i + 1; j < values.size() && !refined; ++j) {
        BigInt g = gcd(values[i], values[j]);
        if (g == 1) continue;
        BigInt a = values[i] / g;
        BigInt b = values[j] / g;
        values.erase(values.begin() + static_cast<std::ptrdiff_t>(j));
        values.erase(values.begin() + static_cast<std::ptrdiff_t>(i));
        for (BigInt* x : {&a, &b, &g})
          if (*x != 1) values.push_back(std::move(*x));
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        refined = true;
      }
    }
  }
  return values;
}

}  // namespace

AbelianGroup AbelianGroup::from_invariant_factors(std::uint64_t free_rank, std::vector<BigInt> factors) {
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i] < 2) throw std::invalid_argument("invariant factor below 2: " + to_decimal(factors[i]));
    if (i > 0 && factors[i] % factors[i - 1] != 0)
      throw std::invalid_argument("invariant factors do not form a divisor chain");
  }
  AbelianGroup g;
  g.free_rank_ = free_rank;
  g.factors_ = std::move(factors);
  return g;
}

AbelianGroup AbelianGroup::torsion() const {
  AbelianGroup g = *this;
  g.free_rank_ = 0;
  return g;
}

std::string AbelianGroup::to_string() const {
  if (is_trivial()) return "trivial";
  std::string out;
  if (free_rank_ > 0) out = "Z^" + std::to_string(free_rank_);
  for (const auto& f : factors_) {
    if (!out.empty()) out += " x ";
    out += "Z_" + to_decimal(f);
  }
  return out;
}

AbelianGroup canonicalize(std::span<const BigInt> cyclic_orders) {
  std::vector<BigInt> nontrivial;
  for (const auto& c : cyclic_orders) {
    if (c <= 0) throw std::invalid_argument("cyclic order must be positive, got " + to_decimal(c));
    if (c != 1) nontrivial.push_back(c);
  }
  if (nontrivial.empty()) return AbelianGroup::trivial();

  // Per base element b, the partition of exponents of b across the inputs.
  const std::vector<BigInt> base = coprime_base(nontrivial);
  std::vector<std::vector<unsigned>> partitions(base.size());
  std::size_t columns = 0;
  for (const auto& c : nontrivial) {
    BigInt rest = c;
    for (std::size_t j = 0; j < base.size(); ++j) {
      unsigned e = 0;
      while (mpz_divisible_p(rest.get_mpz_t(), base[j].get_mpz_t())) {
        mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), base[j].get_mpz_t());
        ++e;
      }
      if (e > 0) partitions[j].push_back(e);
    }
    if (rest != 1) throw std::logic_error("coprime base does not cover " + to_decimal(c));
  }
  for (auto& part : partitions) {
    std::sort(part.begin(), part.end(), std::greater<>());
    columns = std::max(columns, part.size());
  }

  // Column c of the sorted partitions gives the (columns - c)-th invariant factor.
  std::vector<BigInt> factors(columns, BigInt(1));
  for (std::size_t j = 0; j < base.size(); ++j)
    for (std::size_t c = 0; c < partitions[j].size(); ++c) factors[columns - 1 - c] *= pow(base[j], partitions[j][c]);
  return AbelianGroup::from_invariant_factors(0, std::move(factors));
}

AbelianGroup canonicalize(std::initializer_list<long> cyclic_orders) {
  std::vector<BigInt> v;
  v.reserve(cyclic_orders.size());
  for (long c : cyclic_orders) v.emplace_back(c);
  return canonicalize(v);
}

BigInt order(const AbelianGroup& g) {
  if (!g.is_finite()) throw InfiniteOrderError("group has free rank " + std::to_string(g.free_rank()));
  BigInt r = 1;
  for (const auto& f : g.invariant_factors()) r *= f;
  return r;
}

AbelianGroup direct_sum(const AbelianGroup& g, const AbelianGroup& h) {
  std::vector<BigInt> all = g.invariant_factors();
  all.insert(all.end(), h.invariant_factors().begin(), h.invariant_factors().end());
  AbelianGroup torsion = canonicalize(all);
  return AbelianGroup::from_invariant_factors(g.free_rank() + h.free_rank(), torsion.invariant_factors());
}

namespace {

std::uint64_t checked_u64(const BigInt& x, const char* what) {
  if (!x.fits_ulong_p()) throw std::out_of_range(std::string(what) + " exceeds 64 bits");
  return x.get_ui();
}

// Number of elements of order dividing p^k in the p-part with partition lambda, as an exponent of p.
unsigned torsion_log(const std::vector<unsigned>& lambda, unsigned k) {
  unsigned s = 0;
  for (unsigned part : lambda) s += std::min(part, k);
  return s;
}

std::uint64_t upow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// p-partitions of a finite group, keyed by prime.
std::map<std::uint64_t, std::vector<unsigned>> prime_partitions(const AbelianGroup& g) {
  std::map<std::uint64_t, std::vector<unsigned>> parts;
  for (const auto& f : g.invariant_factors())
    for (auto [p, e] : factorize(checked_u64(f, "invariant factor"))) parts[p].push_back(e);
  return parts;
}

}  // namespace

OrderStatistics order_statistics(const AbelianGroup& g) {
  checked_u64(order(g), "group order");
  // For each prime: count of elements of order exactly p^k.
  OrderStatistics stats{{1, 1}};
  for (const auto& [p, lambda] : prime_partitions(g)) {
    const unsigned top = *std::max_element(lambda.begin(), lambda.end());
    OrderStatistics next;
    for (unsigned k = 0; k <= top; ++k) {
      const std::uint64_t exact =
          upow(p, torsion_log(lambda, k)) - (k == 0 ? 0 : upow(p, torsion_log(lambda, k - 1)));
      const std::uint64_t pk = upow(p, k);
      for (auto [o, c] : stats) next[o * pk] += c * exact;
    }
    stats = std::move(next);
  }
  return stats;
}

AbelianGroup from_order_statistics(const OrderStatistics& counts) {
  std::uint64_t total = 0;
  for (auto [o, c] : counts) {
    if (o == 0) throw MalformedStatisticsError("element order 0");
    if (c == 0) continue;
    total += c;
  }
  auto one = counts.find(1);
  if (one == counts.end() || one->second != 1)
    throw MalformedStatisticsError("exactly one element of order 1 is required");

  std::vector<BigInt> cyclic;
  for (auto [p, v] : factorize(total)) {
    // log_p of the number of elements of order dividing p^k, k = 0..v.
    std::vector<unsigned> logs;
    for (unsigned k = 0;; ++k) {
      const std::uint64_t pk = upow(p, k);
      std::uint64_t n_k = 0;
      for (auto [o, c] : counts)
        if (pk % o == 0) n_k += c;
      unsigned lg = 0;
      std::uint64_t x = n_k;
      while (x % p == 0) {
        x /= p;
        ++lg;
      }
      if (x != 1) throw MalformedStatisticsError("p-torsion count is not a power of " + std::to_string(p));
      logs.push_back(lg);
      if (lg == v) break;
      if (k > 0 && lg == logs[k - 1])
        throw MalformedStatisticsError("p-torsion stalls below the full p-part for p = " + std::to_string(p));
    }
    // conjugate[k-1] = number of parts >= k; must be nonincreasing.
    std::vector<unsigned> conjugate;
    for (std::size_t k = 1; k < logs.size(); ++k) {
      if (logs[k] < logs[k - 1]) throw MalformedStatisticsError("p-torsion counts decrease");
      const unsigned parts = logs[k] - logs[k - 1];
      if (!conjugate.empty() && parts > conjugate.back())
        throw MalformedStatisticsError("p-torsion growth is not a partition");
      conjugate.push_back(parts);
    }
    // Part i has size #{k : conjugate[k-1] > i}.
    const unsigned nparts = conjugate.empty() ? 0 : conjugate.front();
    for (unsigned i = 0; i < nparts; ++i) {
      unsigned size = 0;
      for (unsigned c : conjugate)
        if (c > i) ++size;
      cyclic.push_back(BigInt(upow(p, size)));
    }
  }
  AbelianGroup g = canonicalize(cyclic);

  OrderStatistics nonzero;
  for (auto [o, c] : counts)
    if (c != 0) nonzero[o] = c;
  if (order_statistics(g) != nonzero)
    throw MalformedStatisticsError("order counts are not those of " + g.to_string());
  return g;
}

}  // namespace sandpile
