#pragma once

// Flat adjacency view of an IsingModel used by the solver inner loops.

#include <chrono>
#include <vector>

#include "repising/model.hpp"

namespace repising::detail {

struct Neighbor {
  Vertex vertex;
  double coupling;
};

struct DenseModel {
  std::size_t n = 0;
  std::vector<double> field;
  std::vector<std::vector<Neighbor>> adj;

  explicit DenseModel(const IsingModel &m)
      : n(m.vertex_count()), field(n, 0.0), adj(n) {
    for (const auto &[v, h] : m.fields())
      field[v] = h;
    for (const auto &[e, j] : m.couplings()) {
      adj[e.u].push_back({e.v, j});
      adj[e.v].push_back({e.u, j});
    }
  }
};

class Stopwatch {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

} // namespace repising::detail
