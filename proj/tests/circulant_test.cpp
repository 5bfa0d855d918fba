#include "sandpile/circulant.hpp"
#include "sandpile/closed_form.hpp"
#include "sandpile/errors.hpp"

#include <gtest/gtest.h>

using namespace sandpile;

namespace {

AbelianGroup group(std::initializer_list<long> cyclic) { return canonicalize(cyclic); }

}  // namespace

TEST(CyclotomicCosets, Examples) {
  EXPECT_EQ(cyclotomic_cosets(7, 2), (std::vector<Coset>{{0}, {1, 2, 4}, {3, 6, 5}}));
  EXPECT_EQ(cyclotomic_cosets(1, 5), (std::vector<Coset>{{0}}));
  EXPECT_EQ(cyclotomic_cosets(4, 3), (std::vector<Coset>{{0}, {1, 3}, {2}}));
  EXPECT_THROW(cyclotomic_cosets(6, 3), std::invalid_argument);
}

TEST(CyclotomicCosets, PartitionIntoPOrbits) {
  for (std::int64_t p : {2, 3, 5, 7})
    for (std::int64_t m = 1; m <= 80; ++m) {
      if (m % p == 0) continue;
      std::size_t total = 0;
      for (const Coset& c : cyclotomic_cosets(m, p)) {
        total += c.size();
        EXPECT_EQ(*std::min_element(c.begin(), c.end()), c.front());
        for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(c[(i + 1) % c.size()], c[i] * p % m);
      }
      EXPECT_EQ(total, static_cast<std::size_t>(m));
    }
}

TEST(CirculantGroup, Examples) {
  const UnitGroupStructure a = circulant_group(7, 2);
  EXPECT_EQ(a.group, group({7, 7}));
  ASSERT_EQ(a.factors.size(), 3u);
  EXPECT_EQ(a.factors[1].degree, 3u);
  EXPECT_EQ(a.factors[1].teichmuller_order, 7);

  const UnitGroupStructure b = circulant_group(4, 2);
  EXPECT_EQ(b.group, group({4, 2}));
  EXPECT_EQ(b.s, 2u);
  EXPECT_EQ(b.m, 1);
  EXPECT_EQ(b.factors[0].one_unit_part, group({4, 2}));

  EXPECT_EQ(circulant_group(6, 2).group, group({2, 2, 2, 3}));
  EXPECT_THROW(circulant_group(4, 4), std::invalid_argument);
  EXPECT_THROW(circulant_group(4, 9), std::invalid_argument);
}

TEST(CirculantGroup, FixingOnes) {
  EXPECT_EQ(circulant_group_fixing_ones(7, 2), group({7, 7}));
  EXPECT_EQ(circulant_group_fixing_ones(4, 2), group({4, 2}));
  EXPECT_EQ(circulant_group_fixing_ones(3, 3), group({3, 3}));
  EXPECT_EQ(circulant_group_fixing_ones(7, 2), sand_dune_group(7, 2));
}

TEST(CirculantGroup, OrderTimesScalarsIsFull) {
  for (std::int64_t p : {2, 3, 5, 7})
    for (std::int64_t n = 1; n <= 30; ++n) {
      const UnitGroupStructure u = circulant_group(n, p);
      EXPECT_EQ(order(u.group), (p - 1) * order(circulant_group_fixing_ones(n, p)));
      BigInt product = 1;
      for (const auto& f : u.factors) product *= f.teichmuller_order * order(f.one_unit_part);
      EXPECT_EQ(product, order(u.group));
    }
}

TEST(BruteForceUnits, Examples) {
  EXPECT_EQ(bruteforce_unit_group(3, 2), group({3}));
  EXPECT_EQ(bruteforce_unit_group(1, 7), group({6}));
  EXPECT_EQ(bruteforce_unit_group(4, 2), group({4, 2}));
  EXPECT_EQ(bruteforce_unit_group(3, 3), group({2, 3, 3}));
}

TEST(BruteForceUnits, MatchFormulaOnSmallRings) {
  for (auto [p, max_n] : {std::pair{2, 12}, {3, 7}, {5, 5}, {7, 4}})
    for (std::int64_t n = 1; n <= max_n; ++n)
      EXPECT_EQ(bruteforce_unit_group(n, p), circulant_group(n, p).group) << "n=" << n << " p=" << p;
}

TEST(BruteForceUnits, RespectsCap) {
  EXPECT_THROW(bruteforce_unit_group(21, 2), ResourceLimitError);
  EXPECT_THROW(bruteforce_unit_group(10, 2, 1000), ResourceLimitError);
  EXPECT_THROW(quotient_by_shift(13, 3), ResourceLimitError);
  EXPECT_THROW(bruteforce_unit_group(3, 6), std::invalid_argument);
}

TEST(QuotientByShift, Examples) {
  EXPECT_EQ(quotient_by_shift(3, 2), AbelianGroup::trivial());
  EXPECT_EQ(quotient_by_shift(4, 2), group({2}));
  EXPECT_EQ(quotient_by_shift(7, 2), group({7}));
  for (std::int64_t n = 1; n <= 6; ++n) EXPECT_EQ(quotient_by_shift(n, 3), sandpile_group_db(n, 3)) << n;
}

TEST(NormalElements, Examples) {
  EXPECT_EQ(count_normal_elements(2, 3), 3);
  EXPECT_EQ(count_normal_elements(2, 7), 49);
  EXPECT_EQ(count_normal_elements(2, 2), 2);
  EXPECT_EQ(bruteforce_count_normal(2, 3), 3);
  EXPECT_EQ(bruteforce_count_normal(2, 1), 1);
  EXPECT_EQ(bruteforce_count_normal(2, 4), 8);
  EXPECT_EQ(bruteforce_count_normal(5, 1), 4);
  EXPECT_THROW(count_normal_elements(6, 3), std::invalid_argument);
  EXPECT_THROW(bruteforce_count_normal(2, 30), ResourceLimitError);
}

TEST(NormalElements, BruteForceAgreesOnSmallFields) {
  for (auto [p, max_n] : {std::pair{2, 10}, {3, 6}, {5, 4}, {7, 3}})
    for (std::int64_t n = 1; n <= max_n; ++n)
      EXPECT_EQ(bruteforce_count_normal(p, n), count_normal_elements(p, n)) << "p=" << p << " n=" << n;
}

TEST(PolyModRing, ShiftHasOrderN) {
  for (std::int64_t p : {2, 3, 5})
    for (std::int64_t n = 1; n <= 9; ++n) {
      const PolyModRing ring(n, p);
      EXPECT_EQ(ring.evaluate_at_one(ring.shift()), 1u);
      EXPECT_TRUE(ring.is_unit(ring.shift()));
      EXPECT_EQ(ring.multiplicative_order(ring.shift()), static_cast<std::uint64_t>(n));
    }
}

TEST(PolyModRing, UnitsAndArithmetic) {
  const PolyModRing ring(4, 2);
  EXPECT_FALSE(ring.is_unit({1, 1, 0, 0}));  // x + 1 divides x^4 - 1
  EXPECT_TRUE(ring.is_unit({1, 1, 1, 0}));
  EXPECT_EQ(ring.multiply({0, 1, 0, 0}, {0, 0, 0, 1}), ring.one());
  EXPECT_EQ(ring.multiplicative_order({1, 1, 1, 0}), 4u);
  EXPECT_THROW(ring.multiplicative_order(ring.zero()), std::domain_error);
  EXPECT_THROW(PolyModRing(3, 1), std::invalid_argument);
}
