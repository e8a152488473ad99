#include <bit>
#include <limits>
#include <string>

#include "dense_model.hpp"
#include "repising/errors.hpp"
#include "repising/solvers.hpp"

namespace repising {

GroundResult solve_brute(const IsingModel &m) {
  const detail::Stopwatch clock;
  const std::size_t n = m.vertex_count();
  if (n > kBruteForceLimit)
    throw SolverRefusal("brute force refuses " + std::to_string(n) +
                        " vertices (limit " +
                        std::to_string(kBruteForceLimit) + ")");
  const detail::DenseModel dm(m);

  // local[i] = h_i + Σ_j J_ij s_j; flipping spin i changes E by -2 s_i local[i].
  std::vector<int> s(n, 1);
  std::vector<double> local(dm.field);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto &nb : dm.adj[i])
      local[i] += nb.coupling;
  double e = energy(m, SpinConfig(n));

  double best = e, second = std::numeric_limits<double>::infinity();
  std::uint64_t best_code = 0, degeneracy = 1;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < total; ++step) {
    const auto i = static_cast<std::size_t>(std::countr_zero(step));
    e -= 2.0 * s[i] * local[i];
    s[i] = -s[i];
    for (const auto &nb : dm.adj[i])
      local[nb.vertex] += 2.0 * nb.coupling * s[i];

    if (e < best - kEnergyTolerance) {
      second = best;
      best = e;
      best_code = step ^ (step >> 1);
      degeneracy = 1;
    } else if (e <= best + kEnergyTolerance) {
      ++degeneracy;
      second = std::min(second, e);
      if (e < best) {
        best = e;
        best_code = step ^ (step >> 1);
      }
    } else if (e < second) {
      second = e;
    }
  }

  GroundResult r;
  r.config = SpinConfig::from_bits(best_code, n);
  r.value = energy(m, r.config);
  r.degeneracy = degeneracy;
  if (n > 0)
    r.second_value = second;
  r.solver = SolverId::brute;
  r.stats.nodes = total;
  r.stats.wall_seconds = clock.seconds();
  return r;
}

} // namespace repising
