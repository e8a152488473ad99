#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace repising {

using Vertex = std::uint32_t;

/// Undirected edge stored canonically with `u < v`.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b);

  friend auto operator<=>(const Edge &, const Edge &) = default;
};

/// Simple undirected graph on dense vertex indices `0..n-1`.
///
/// Edges are kept sorted in canonical order, so an edge's position in
/// `edges()` (its rank) is stable and deterministic. Graphs are immutable
/// once built.
class Graph {
public:
  Graph() = default;
  /// Throws std::invalid_argument on self-loops, duplicates or endpoints
  /// outside the vertex range.
  Graph(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }

  std::span<const Vertex> neighbors(Vertex v) const;
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }
  std::size_t max_degree() const;
  std::size_t min_degree() const;

  bool has_edge(Vertex a, Vertex b) const { return edge_rank(a, b).has_value(); }
  /// Position of edge {a, b} in `edges()`, if present.
  std::optional<std::size_t> edge_rank(Vertex a, Vertex b) const;

  bool is_connected() const;

  friend bool operator==(const Graph &a, const Graph &b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

private:
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  // CSR adjacency, neighbors sorted ascending.
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adjacency_;
};

Graph build_path(std::size_t n);
Graph build_grid(std::size_t rows, std::size_t cols);
Graph build_complete(std::size_t n);
/// Two parallel chains of `columns` vertices joined by a rung in every
/// column. Vertex (column c, row r) has index 2c + r.
Graph build_ladder(std::size_t columns);

/// Index of product vertex (i, k) in G □ F, where k ranges over F.
constexpr std::size_t product_index(std::size_t i, std::size_t k,
                                    std::size_t f_vertices) {
  return i * f_vertices + k;
}

/// Cartesian product G □ F. Vertex (i, k) maps to i·|V_F| + k.
Graph cartesian_product(const Graph &g, const Graph &f);

/// Dense 0/1 adjacency matrix, row-major.
std::vector<std::uint8_t> adjacency_matrix(const Graph &g);

/// Degree sequence sorted descending.
std::vector<std::size_t> degree_sequence(const Graph &g);

} // namespace repising
