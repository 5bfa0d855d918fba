#pragma once

#include "sandpile/abelian.hpp"
#include "sandpile/integer_matrix.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sandpile {

enum class Family { DeBruijn, Kautz };

std::string to_string(Family f);
// Accepts "db"/"debruijn" and "kautz" (case-insensitive).
Family parse_family(const std::string& s);

struct GraphSpec {
  Family family = Family::DeBruijn;
  std::int64_t n = 1;
  std::int64_t d = 1;
};

/// Multidigraph on vertices 0..n-1 stored as an edge-multiplicity matrix;
/// adjacency(v, w) is the number of edges v -> w.
class Digraph {
 public:
  explicit Digraph(std::size_t n);
  Digraph(std::size_t n, std::vector<std::uint64_t> adjacency);

  std::size_t vertex_count() const noexcept { return n_; }
  std::uint64_t edges(std::size_t v, std::size_t w) const { return adjacency_[v * n_ + w]; }
  void add_edge(std::size_t v, std::size_t w, std::uint64_t multiplicity = 1);

  std::uint64_t out_degree(std::size_t v) const;
  std::uint64_t in_degree(std::size_t v) const;

  const std::vector<std::uint64_t>& adjacency() const noexcept { return adjacency_; }

 private:
  std::size_t n_;
  std::vector<std::uint64_t> adjacency_;
};

// DB(n,d): v -> d*v + i; Kautz(n,d): v -> -d*(v+1) + i; i = 0..d-1, all mod n.
Digraph build_graph(const GraphSpec& spec);

// D - A with D the diagonal of in-degrees.
IntegerMatrix laplacian(const Digraph& g);

// Laplacian with row and column `root` deleted; EmptyMatrixError for n = 1.
IntegerMatrix reduced_laplacian(const Digraph& g, std::size_t root);

// Number of spanning trees oriented towards `root` (directed Matrix Tree Theorem).
BigInt spanning_tree_count(const Digraph& g, std::size_t root);

AbelianGroup sandpile_group_snf(const Digraph& g, std::size_t root);
AbelianGroup critical_group_snf(const Digraph& g);

bool is_eulerian(const Digraph& g);

}  // namespace sandpile
