#include "sandpile/graphs.hpp"

#include "sandpile/errors.hpp"
#include "sandpile/number_theory.hpp"
#include "sandpile/smith.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace sandpile {

std::string to_string(Family f) { return f == Family::DeBruijn ? "db" : "kautz"; }

Family parse_family(const std::string& s) {
  std::string lower = s;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "db" || lower == "debruijn" || lower == "de-bruijn") return Family::DeBruijn;
  if (lower == "kautz") return Family::Kautz;
  throw std::invalid_argument("unknown graph family '" + s + "'");
}

Digraph::Digraph(std::size_t n) : n_(n), adjacency_(n * n, 0) {}

Digraph::Digraph(std::size_t n, std::vector<std::uint64_t> adjacency) : n_(n), adjacency_(std::move(adjacency)) {
  if (adjacency_.size() != n * n) throw std::invalid_argument("adjacency size is not n*n");
}

void Digraph::add_edge(std::size_t v, std::size_t w, std::uint64_t multiplicity) {
  if (v >= n_ || w >= n_) throw std::out_of_range("vertex out of range");
  adjacency_[v * n_ + w] += multiplicity;
}

std::uint64_t Digraph::out_degree(std::size_t v) const {
  std::uint64_t s = 0;
  for (std::size_t w = 0; w < n_; ++w) s += edges(v, w);
  return s;
}

std::uint64_t Digraph::in_degree(std::size_t v) const {
  std::uint64_t s = 0;
  for (std::size_t u = 0; u < n_; ++u) s += edges(u, v);
  return s;
}

Digraph build_graph(const GraphSpec& spec) {
  if (spec.n < 1 || spec.d < 1) throw std::invalid_argument("graph needs n >= 1 and d >= 1");
  const std::int64_t n = spec.n;
  const std::int64_t d = spec.d;
  Digraph g(static_cast<std::size_t>(n));
  for (std::int64_t v = 0; v < n; ++v) {
    const std::int64_t first = spec.family == Family::DeBruijn ? mod(d * v, n) : mod(-d * mod(v + 1, n), n);
    for (std::int64_t i = 0; i < d; ++i)
      g.add_edge(static_cast<std::size_t>(v), static_cast<std::size_t>(mod(first + i, n)));
  }
  return g;
}

IntegerMatrix laplacian(const Digraph& g) {
  const std::size_t n = g.vertex_count();
  IntegerMatrix m(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w = 0; w < n; ++w) m(v, w) = -static_cast<long>(g.edges(v, w));
    m(v, v) += static_cast<unsigned long>(g.in_degree(v));
  }
  return m;
}

IntegerMatrix reduced_laplacian(const Digraph& g, std::size_t root) {
  if (g.vertex_count() < 2) throw EmptyMatrixError("reduced Laplacian of a one-vertex graph is empty");
  if (root >= g.vertex_count()) throw std::out_of_range("root out of range");
  return laplacian(g).without_row_and_column(root);
}

BigInt spanning_tree_count(const Digraph& g, std::size_t root) {
  return determinant(reduced_laplacian(g, root));
}

AbelianGroup sandpile_group_snf(const Digraph& g, std::size_t root) {
  const IntegerMatrix reduced = reduced_laplacian(g, root);
  return finite_part(reduced, reduced.cols());
}

AbelianGroup critical_group_snf(const Digraph& g) {
  const IntegerMatrix lap = laplacian(g);
  return finite_part(lap, lap.cols());
}

bool is_eulerian(const Digraph& g) {
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.in_degree(v) != g.out_degree(v)) return false;
  return true;
}

}  // namespace sandpile
