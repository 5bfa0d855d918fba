// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "oracles.hpp"

#include "sandpile/circulant.hpp"
#include "sandpile/closed_form.hpp"
#include "sandpile/graphs.hpp"
#include "sandpile/number_theory.hpp"
#include "sandpile/smith.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace sandpile;

namespace {

// Collects the first few failure descriptions of one criterion.
class Failures {
 public:
  template <class... Args>
  void add(Args&&... parts) {
    ++count_;
    if (count_ > 5) return;
    std::ostringstream s;
    (s << ... << parts);
    messages_.push_back(s.str());
  }
  void check(bool ok, const std::string& what) {
    ++checked_;
    if (!ok) add(what);
  }
  std::size_t count() const { return count_; }
  std::size_t checked() const { return checked_; }
  void count_one() { ++checked_; }
  const std::vector<std::string>& messages() const { return messages_; }

 private:
  std::size_t count_ = 0;
  std::size_t checked_ = 0;
  std::vector<std::string> messages_;
};

std::string inst(const char* fam, std::int64_t n, std::int64_t d) {
  return std::string(fam) + "(" + std::to_string(n) + "," + std::to_string(d) + ")";
}

void expect_group(Failures& f, const std::string& what, const AbelianGroup& expected, const AbelianGroup& actual) {
  f.count_one();
  if (!(expected == actual)) f.add(what, ": expected ", expected.to_string(), ", got ", actual.to_string());
}

void expect_int(Failures& f, const std::string& what, const BigInt& expected, const BigInt& actual) {
  f.count_one();
  if (expected != actual) f.add(what, ": expected ", to_decimal(expected), ", got ", to_decimal(actual));
}

bool fits(std::int64_t p, std::int64_t n, std::uint64_t cap) {
  std::uint64_t size = 1;
  for (std::int64_t i = 0; i < n; ++i) {
    if (size > cap / static_cast<std::uint64_t>(p)) return false;
    size *= static_cast<std::uint64_t>(p);
  }
  return true;
}

constexpr std::uint64_t kCap = std::uint64_t{1} << 20;

void de_bruijn_closed_form(Failures& f) {
  for (std::int64_t n = 2; n <= 64; ++n)
    for (std::int64_t d = 2; d <= 9; ++d)
      expect_group(f, inst("DB", n, d), sandpile_group_snf(build_graph({Family::DeBruijn, n, d}), 0),
                   sandpile_group_db(n, d));
}

void kautz_closed_form(Failures& f) {
  for (std::int64_t n = 2; n <= 64; ++n)
    for (std::int64_t d = 2; d <= 9; ++d)
      expect_group(f, inst("Kautz", n, d), sandpile_group_snf(build_graph({Family::Kautz, n, d}), 0),
                   sandpile_group_kautz(n, d));
  expect_group(f, "Kautz(3,2) spot value", canonicalize({3}), sandpile_group_kautz(3, 2));
}

void sand_dune(Failures& f) {
  for (std::int64_t n = 2; n <= 64; ++n)
    for (std::int64_t d = 2; d <= 9; ++d) {
      const AbelianGroup dune = sand_dune_group(n, d);
      expect_group(f, "dune " + inst("DB", n, d),
                   finite_part(epsilon_relation_matrix(n, d), static_cast<std::size_t>(n - 1)), dune);
      expect_int(f, "|dune| = n|S| " + inst("DB", n, d), order(sandpile_group_db(n, d)) * n, order(dune));
    }
}

void epsilon_orders(Failures& f) {
  for (std::int64_t n = 2; n <= 32; ++n)
    for (std::int64_t d = 2; d <= 5; ++d) {
      const SnfResult snf = smith_normal_form(epsilon_relation_matrix(n, d));
      for (std::int64_t v = 1; v < n; ++v) {
        const auto e = oracle::unit_vector(static_cast<std::size_t>(n - 1), static_cast<std::size_t>(v - 1));
        expect_int(f, "order of e_" + std::to_string(v) + " in dune " + inst("DB", n, d),
                   cokernel_element_order(snf, e), order_of_ev(v, n, d));
      }
    }
  expect_int(f, "order of e_1 in dune DB(4,2)", 4, order_of_ev(1, 4, 2));
  for (std::int64_t v = 1; v < 9; ++v) {
    f.count_one();
    if (9 % order_of_ev(v, 9, 3) != 0) f.add("order of e_", v, " in dune DB(9,3) does not divide 9");
  }
}

void matrix_tree(Failures& f) {
  for (Family family : {Family::DeBruijn, Family::Kautz})
    for (std::int64_t n = 2; n <= 64; ++n)
      for (std::int64_t d = 2; d <= 9; ++d) {
        const Digraph g = build_graph({family, n, d});
        for (std::size_t r = 0; r < static_cast<std::size_t>(n); ++r)
          expect_int(f, inst(to_string(family).c_str(), n, d) + " root " + std::to_string(r),
                     spanning_tree_count(g, r), order(sandpile_group_snf(g, r)));
      }
  expect_int(f, "trees DB(3,2)", 1, spanning_tree_count(build_graph({Family::DeBruijn, 3, 2}), 0));
  expect_int(f, "trees DB(4,3)", 4, spanning_tree_count(build_graph({Family::DeBruijn, 4, 3}), 0));
  expect_int(f, "trees Kautz(3,2)", 3, spanning_tree_count(build_graph({Family::Kautz, 3, 2}), 0));
}

void circulant_vs_graphs(Failures& f) {
  for (std::int64_t p : {2, 3, 5})
    for (std::int64_t n = 1; fits(p, n, kCap); ++n) {
      expect_group(f, "C'" + inst("", n, p), sand_dune_group(n, p), circulant_group_fixing_ones(n, p));
      expect_group(f, "C'/<x>" + inst("", n, p), sandpile_group_db(n, p), quotient_by_shift(n, p, kCap));
    }
  for (std::int64_t p : {2, 3, 5, 7, 11})
    for (std::int64_t n = 1; n <= 64; ++n)
      expect_group(f, "C' formula" + inst("", n, p), sand_dune_group(n, p), circulant_group_fixing_ones(n, p));
}

void unit_group_formula(Failures& f) {
  for (std::int64_t p = 2; p <= 31; ++p) {
    if (!is_prime(static_cast<std::uint64_t>(p))) continue;
    for (std::int64_t n = 1; fits(p, n, kCap); ++n)
      expect_group(f, "C" + inst("", n, p), bruteforce_unit_group(n, p, kCap), circulant_group(n, p).group);
  }
}

void normal_elements(Failures& f) {
  for (std::int64_t p : {2, 3, 5, 7})
    for (std::int64_t n = 1; n <= 64; ++n)
      expect_int(f, "normal count " + inst("", p, n), BigInt(p - 1) * n * order(sandpile_group_db(n, p)),
                 count_normal_elements(p, n));
  for (std::int64_t n = 1; n <= 16; ++n)
    expect_int(f, "brute normal count " + inst("", 2, n), bruteforce_count_normal(2, n, kCap),
               count_normal_elements(2, n));
  for (std::int64_t n = 1; n <= 10; ++n)
    expect_int(f, "brute normal count " + inst("", 3, n), bruteforce_count_normal(3, n, kCap),
               count_normal_elements(3, n));
  expect_int(f, "normal count (2,3)", 3, count_normal_elements(2, 3));
  expect_int(f, "normal count (2,7)", 49, count_normal_elements(2, 7));
}

void smith_self_checks(Failures& f) {
  std::mt19937_64 rng(20240613);
  std::uniform_int_distribution<std::size_t> dim(1, 8);
  for (int iter = 0; iter < 1000; ++iter) {
    const IntegerMatrix m = oracle::random_matrix(rng, dim(rng), dim(rng), -99, 99);
    const SnfResult r = smith_normal_form(m);
    bool ok = r.U * m * r.V == r.S && abs(determinant(r.U)) == 1 && abs(determinant(r.V)) == 1;
    const auto d = r.diagonal();
    for (std::size_t i = 0; i < r.S.rows(); ++i)
      for (std::size_t j = 0; j < r.S.cols(); ++j)
        if (i != j && r.S(i, j) != 0) ok = false;
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
      if (d[i] < 0 || (d[i] == 0 ? d[i + 1] != 0 : d[i + 1] % d[i] != 0)) ok = false;
    f.check(ok, "SNF transform check failed on\n" + to_string(m));
  }
  std::uniform_int_distribution<std::size_t> small(1, 5);
  for (int iter = 0; iter < 300; ++iter) {
    const long bound = iter % 3 == 0 ? 1 : iter % 3 == 1 ? 9 : 99;
    const IntegerMatrix m = oracle::random_matrix(rng, small(rng), small(rng), -bound, bound);
    const auto diag = smith_diagonal(m);
    const auto gcds = oracle::minor_gcds(m);
    BigInt prefix = 1;
    bool ok = diag.size() == gcds.size();
    for (std::size_t k = 0; ok && k < diag.size(); ++k) {
      prefix *= diag[k];
      ok = prefix == gcds[k];
    }
    f.check(ok, "minor gcd mismatch on\n" + to_string(m));
  }
}

struct Criterion {
  const char* title;
  std::function<void(Failures&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"de Bruijn closed form equals SNF, 2<=n<=64, 2<=d<=9", de_bruijn_closed_form},
      {"Kautz closed form equals SNF, 2<=n<=64, 2<=d<=9", kautz_closed_form},
      {"sand dune closed form equals relation cokernel, |dune| = n|S|", sand_dune},
      {"orders of e_v in the sand dune group, n<=32, d<=5", epsilon_orders},
      {"group order equals spanning tree count for every root", matrix_tree},
      {"circulants fixing ones vs sand dune, quotient by shift vs sandpile", circulant_vs_graphs},
      {"unit group formula equals brute force for p^n <= 2^20", unit_group_formula},
      {"normal element count equals (p-1) n |S(n,p)|", normal_elements},
      {"SNF transforms, unimodularity and minor gcds on random matrices", smith_self_checks},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Failures f;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].run(f);
    } catch (const std::exception& e) {
      f.add("exception: ", e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = f.count() == 0;
    if (!pass) ++failed;
    std::printf("[%s] %zu. %s (%zu checks, %.1f s)\n", pass ? "PASS" : "FAIL", i + 1, criteria[i].title,
                f.checked(), secs);
    for (const auto& m : f.messages()) std::printf("       %s\n", m.c_str());
    if (f.count() > f.messages().size())
      std::printf("       ... %zu more failures\n", f.count() - f.messages().size());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
