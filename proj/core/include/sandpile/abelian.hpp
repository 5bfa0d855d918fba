#pragma once

#include "sandpile/bigint.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace sandpile {

/// A finitely generated abelian group Z^r + Z_{d_1} + ... + Z_{d_k} in
/// invariant-factor form: every d_i >= 2 and d_i | d_{i+1}.
///
/// The form is canonical, so two groups are isomorphic exactly when they
/// compare equal. Instances are only produced through the factory functions
/// below, which establish the divisor chain.
class AbelianGroup {
 public:
  AbelianGroup() = default;

  static AbelianGroup trivial() { return {}; }

  // Checks the divisor-chain invariant; throws std::invalid_argument otherwise.
  static AbelianGroup from_invariant_factors(std::uint64_t free_rank, std::vector<BigInt> factors);

  std::uint64_t free_rank() const noexcept { return free_rank_; }
  const std::vector<BigInt>& invariant_factors() const noexcept { return factors_; }

  bool is_finite() const noexcept { return free_rank_ == 0; }
  bool is_trivial() const noexcept { return free_rank_ == 0 && factors_.empty(); }

  // Largest element order of the torsion part (1 for a torsion-free group).
  BigInt exponent() const { return factors_.empty() ? BigInt(1) : factors_.back(); }

  AbelianGroup torsion() const;

  // "trivial", "Z_4", "Z^1 x Z_2 x Z_12".
  std::string to_string() const;

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

 private:
  std::uint64_t free_rank_ = 0;
  std::vector<BigInt> factors_;
};

// Invariant-factor form of the direct sum of cyclic groups Z_{c_i}.
// Inputs equal to 1 are dropped; any input <= 0 is std::invalid_argument.
AbelianGroup canonicalize(std::span<const BigInt> cyclic_orders);
AbelianGroup canonicalize(std::initializer_list<long> cyclic_orders);

// Product of invariant factors; InfiniteOrderError when free_rank > 0.
BigInt order(const AbelianGroup& g);

AbelianGroup direct_sum(const AbelianGroup& g, const AbelianGroup& h);

/// Element-order multiset of a finite group: order -> number of elements.
using OrderStatistics = std::map<std::uint64_t, std::uint64_t>;

/// Reconstructs the unique finite abelian group with the given element-order
/// counts.
///
/// For each prime p of the group order, the number N_k of elements whose order
/// divides p^k equals p^{sum_i min(lambda_i, k)}, where lambda is the p-part
/// partition; the conjugate partition is read off successive differences of
/// log_p N_k. The reconstructed group's statistics are compared against the
/// input in full, so any inconsistency raises MalformedStatisticsError.
AbelianGroup from_order_statistics(const OrderStatistics& counts);

// Element-order counts of a finite group computed from its invariant factors
// (not by enumeration). Requires order(g) to fit in 64 bits.
OrderStatistics order_statistics(const AbelianGroup& g);

}  // namespace sandpile
