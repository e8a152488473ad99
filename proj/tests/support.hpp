#pragma once

#include <random>

#include "repising/graph.hpp"
#include "repising/model.hpp"

namespace repising::testing {

// Random graph on n vertices with each pair present with probability p,
// J and h uniform in [-1, 1].
inline IsingModel random_model(std::size_t n, double p, std::mt19937_64 &rng,
                               bool fields = true) {
  std::uniform_real_distribution<double> coin(0.0, 1.0), val(-1.0, 1.0);
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (coin(rng) < p)
        edges.emplace_back(a, b);
  IsingModel m(Graph(n, edges));
  for (const Edge &e : m.graph().edges())
    m.set_coupling(e.u, e.v, val(rng));
  if (fields)
    for (std::size_t i = 0; i < n; ++i)
      m.set_field(i, val(rng));
  return m;
}

// Every configuration of n spins.
template <typename Fn> void for_each_config(std::size_t n, Fn fn) {
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits)
    fn(SpinConfig::from_bits(bits, n));
}

} // namespace repising::testing
