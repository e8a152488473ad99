#include "repising/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace repising {

Edge::Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

Graph::Graph(std::size_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  for (std::size_t r = 0; r < edges_.size(); ++r) {
    const Edge &e = edges_[r];
    if (e.u == e.v)
      throw std::invalid_argument("graph: self-loop on vertex " +
                                  std::to_string(e.u));
    if (e.v >= vertex_count_)
      throw std::invalid_argument("graph: edge endpoint " +
                                  std::to_string(e.v) + " out of range");
    if (r > 0 && edges_[r - 1] == e)
      throw std::invalid_argument("graph: duplicate edge (" +
                                  std::to_string(e.u) + ", " +
                                  std::to_string(e.v) + ")");
  }

  std::vector<std::size_t> deg(vertex_count_, 0);
  for (const Edge &e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  offsets_.assign(vertex_count_ + 1, 0);
  for (std::size_t i = 0; i < vertex_count_; ++i)
    offsets_[i + 1] = offsets_[i] + deg[i];
  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const Edge &e : edges_) {
    adjacency_[fill[e.u]++] = e.v;
    adjacency_[fill[e.v]++] = e.u;
  }
  for (std::size_t i = 0; i < vertex_count_; ++i)
    std::sort(adjacency_.begin() + offsets_[i],
              adjacency_.begin() + offsets_[i + 1]);
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
  return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::size_t Graph::max_degree() const {
  std::size_t d = 0;
  for (Vertex v = 0; v < vertex_count_; ++v)
    d = std::max(d, degree(v));
  return d;
}

std::size_t Graph::min_degree() const {
  if (vertex_count_ == 0)
    return 0;
  std::size_t d = degree(0);
  for (Vertex v = 1; v < vertex_count_; ++v)
    d = std::min(d, degree(v));
  return d;
}

std::optional<std::size_t> Graph::edge_rank(Vertex a, Vertex b) const {
  if (a == b)
    return std::nullopt;
  const Edge key(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key)
    return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

bool Graph::is_connected() const {
  if (vertex_count_ <= 1)
    return true;
  std::vector<bool> seen(vertex_count_, false);
  std::vector<Vertex> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : neighbors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == vertex_count_;
}

Graph build_path(std::size_t n) {
  if (n == 0)
    throw std::invalid_argument("build_path: n must be >= 1");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i)
    edges.emplace_back(i, i + 1);
  return Graph(n, std::move(edges));
}

Graph build_grid(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0)
    throw std::invalid_argument("build_grid: dimensions must be >= 1");
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t v = r * cols + c;
      if (c + 1 < cols)
        edges.emplace_back(v, v + 1);
      if (r + 1 < rows)
        edges.emplace_back(v, v + cols);
    }
  }
  return Graph(rows * cols, std::move(edges));
}

Graph build_complete(std::size_t n) {
  if (n == 0)
    throw std::invalid_argument("build_complete: n must be >= 1");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

Graph build_ladder(std::size_t columns) {
  if (columns == 0)
    throw std::invalid_argument("build_ladder: columns must be >= 1");
  return cartesian_product(build_path(columns), build_path(2));
}

Graph cartesian_product(const Graph &g, const Graph &f) {
  const std::size_t nf = f.vertex_count();
  std::vector<Edge> edges;
  edges.reserve(g.edge_count() * nf + g.vertex_count() * f.edge_count());
  for (const Edge &e : g.edges())
    for (std::size_t k = 0; k < nf; ++k)
      edges.emplace_back(product_index(e.u, k, nf), product_index(e.v, k, nf));
  for (std::size_t i = 0; i < g.vertex_count(); ++i)
    for (const Edge &e : f.edges())
      edges.emplace_back(product_index(i, e.u, nf), product_index(i, e.v, nf));
  return Graph(g.vertex_count() * nf, std::move(edges));
}

std::vector<std::uint8_t> adjacency_matrix(const Graph &g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint8_t> adj(n * n, 0);
  for (const Edge &e : g.edges()) {
    adj[e.u * n + e.v] = 1;
    adj[e.v * n + e.u] = 1;
  }
  return adj;
}

std::vector<std::size_t> degree_sequence(const Graph &g) {
  std::vector<std::size_t> seq;
  seq.reserve(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    seq.push_back(g.degree(v));
  std::sort(seq.rbegin(), seq.rend());
  return seq;
}

} // namespace repising
