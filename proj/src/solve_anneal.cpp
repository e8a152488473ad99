#include <algorithm>
#include <cmath>
#include <random>

#include "dense_model.hpp"
#include "repising/noise.hpp"
#include "repising/solvers.hpp"

namespace repising {

GroundResult solve_anneal(const IsingModel &m, const AnnealOptions &options) {
  const detail::Stopwatch clock;
  const detail::DenseModel dm(m);
  const std::size_t n = dm.n;

  // Temperature scale from the largest possible local field.
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double local = std::abs(dm.field[i]);
    for (const auto &nb : dm.adj[i])
      local += std::abs(nb.coupling);
    scale = std::max(scale, local);
  }
  if (scale == 0.0)
    scale = 1.0;
  const double beta_start = 0.1 / scale;
  const double beta_end = 20.0 / scale;

  GroundResult r;
  r.config = SpinConfig(n);
  r.value = energy(m, r.config);
  std::uint64_t flips = 0;
  const std::size_t restarts = std::max<std::size_t>(options.restarts, 1);

  for (std::size_t run = 0; run < restarts; ++run) {
    std::mt19937_64 rng(hash_words({options.seed, run}));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<int> s(n);
    for (auto &v : s)
      v = (rng() & 1U) ? 1 : -1;
    std::vector<double> local(dm.field);
    for (std::size_t i = 0; i < n; ++i)
      for (const auto &nb : dm.adj[i])
        local[i] += nb.coupling * s[nb.vertex];

    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      e += s[i] * (dm.field[i] + 0.5 * (local[i] - dm.field[i]));
    double best_e = e;
    std::vector<int> best_s = s;

    for (std::size_t sweep = 0; sweep < options.sweeps; ++sweep) {
      const double frac =
          options.sweeps > 1
              ? static_cast<double>(sweep) / static_cast<double>(options.sweeps - 1)
              : 1.0;
      const double beta = beta_start + frac * (beta_end - beta_start);
      for (std::size_t i = 0; i < n; ++i) {
        const double delta = -2.0 * s[i] * local[i];
        if (delta <= 0.0 || unit(rng) < std::exp(-beta * delta)) {
          s[i] = -s[i];
          e += delta;
          ++flips;
          for (const auto &nb : dm.adj[i])
            local[nb.vertex] += 2.0 * nb.coupling * s[i];
          if (e < best_e) {
            best_e = e;
            best_s = s;
          }
        }
      }
    }
    SpinConfig candidate(std::vector<std::int8_t>(best_s.begin(), best_s.end()));
    const double value = energy(m, candidate);
    if (run == 0 || value < r.value) {
      r.value = value;
      r.config = std::move(candidate);
    }
  }
  r.solver = SolverId::anneal;
  r.exact = false;
  r.stats.nodes = flips;
  r.stats.wall_seconds = clock.seconds();
  return r;
}

} // namespace repising
