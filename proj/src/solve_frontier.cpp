#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "dense_model.hpp"
#include "repising/errors.hpp"
#include "repising/solvers.hpp"

namespace repising {

namespace {

// Step at which each vertex can leave the boundary: the position of its
// last neighbour in the order (or its own position if that is later).
std::vector<std::size_t> release_steps(const detail::DenseModel &dm,
                                       const std::vector<std::size_t> &pos) {
  std::vector<std::size_t> last(dm.n);
  for (std::size_t v = 0; v < dm.n; ++v) {
    last[v] = pos[v];
    for (const auto &nb : dm.adj[v])
      last[v] = std::max(last[v], pos[nb.vertex]);
  }
  return last;
}

std::vector<std::size_t> positions(const std::vector<Vertex> &order,
                                   std::size_t n) {
  if (order.size() != n)
    throw ContractViolation("elimination order has " +
                            std::to_string(order.size()) + " entries, model has " +
                            std::to_string(n) + " vertices");
  std::vector<std::size_t> pos(n, n);
  for (std::size_t t = 0; t < n; ++t) {
    const Vertex v = order[t];
    if (v >= n || pos[v] != n)
      throw ContractViolation("elimination order is not a permutation");
    pos[v] = t;
  }
  return pos;
}

std::size_t width_of(const detail::DenseModel &dm,
                     const std::vector<Vertex> &order) {
  const auto pos = positions(order, dm.n);
  const auto last = release_steps(dm, pos);
  // boundary size after step t = #{v : pos[v] <= t < last[v]}
  std::vector<long> delta(dm.n + 1, 0);
  for (std::size_t v = 0; v < dm.n; ++v) {
    if (last[v] > pos[v]) {
      ++delta[pos[v]];
      --delta[last[v]];
    }
  }
  long running = 0, widest = 0;
  for (std::size_t t = 0; t < dm.n; ++t) {
    running += delta[t];
    widest = std::max(widest, running);
  }
  return static_cast<std::size_t>(widest);
}

std::vector<Vertex> bfs_order(const detail::DenseModel &dm) {
  std::vector<Vertex> order;
  order.reserve(dm.n);
  std::vector<bool> seen(dm.n, false);
  while (order.size() < dm.n) {
    // Root: unvisited vertex of minimum degree, lowest index on ties.
    Vertex root = 0;
    std::size_t best_deg = std::numeric_limits<std::size_t>::max();
    for (Vertex v = 0; v < dm.n; ++v) {
      if (!seen[v] && dm.adj[v].size() < best_deg) {
        best_deg = dm.adj[v].size();
        root = v;
      }
    }
    std::deque<Vertex> queue{root};
    seen[root] = true;
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop_front();
      order.push_back(v);
      std::vector<Vertex> next;
      for (const auto &nb : dm.adj[v])
        if (!seen[nb.vertex])
          next.push_back(nb.vertex);
      std::sort(next.begin(), next.end());
      for (Vertex w : next) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  return order;
}

struct Elimination {
  Vertex vertex;
  std::size_t bit;
  std::vector<std::uint64_t> choice; // 1 = spin -1 is optimal
};

struct Step {
  Vertex added;
  std::size_t added_bit;
  std::vector<Elimination> eliminations;
};

} // namespace

std::size_t frontier_width(const IsingModel &m,
                           const std::vector<Vertex> &order) {
  return width_of(detail::DenseModel(m), order);
}

std::vector<Vertex> default_elimination_order(const IsingModel &m) {
  const detail::DenseModel dm(m);
  std::vector<Vertex> natural(dm.n);
  for (Vertex v = 0; v < dm.n; ++v)
    natural[v] = v;
  auto bfs = bfs_order(dm);
  return width_of(dm, bfs) < width_of(dm, natural) ? bfs : natural;
}

GroundResult solve_frontier(const IsingModel &m,
                            const FrontierOptions &options) {
  const detail::Stopwatch clock;
  const detail::DenseModel dm(m);
  const std::vector<Vertex> order =
      options.order ? *options.order : default_elimination_order(m);
  const std::size_t width = width_of(dm, order);
  if (width > options.max_width)
    throw SolverRefusal("frontier width " + std::to_string(width) +
                        " exceeds limit " + std::to_string(options.max_width));

  const auto pos = positions(order, dm.n);
  const auto last = release_steps(dm, pos);
  const bool second_on = options.track_second;
  constexpr double inf = std::numeric_limits<double>::infinity();

  // Bit b of a table index is the spin of frontier[b] (1 means -1).
  std::vector<Vertex> frontier;
  std::vector<double> best{0.0};
  std::vector<double> second{inf};
  std::vector<Step> steps;
  steps.reserve(dm.n);
  std::uint64_t visited = 0;

  std::vector<std::size_t> bit_of(dm.n, 0);
  for (std::size_t t = 0; t < dm.n; ++t) {
    const Vertex v = order[t];
    const std::size_t w = frontier.size();
    const std::size_t size = std::size_t{1} << w;

    // Neighbours already on the boundary contribute J·s_u·s_v.
    std::vector<std::pair<std::size_t, double>> links;
    for (const auto &nb : dm.adj[v])
      if (pos[nb.vertex] < t)
        links.emplace_back(bit_of[nb.vertex], nb.coupling);
    const double h = dm.field[v];

    best.resize(2 * size);
    if (second_on)
      second.resize(2 * size);
    for (std::size_t idx = 0; idx < size; ++idx) {
      double f = h;
      for (const auto &[b, j] : links)
        f += ((idx >> b) & 1U) ? -j : j;
      best[idx | size] = best[idx] - f;
      best[idx] += f;
      if (second_on) {
        second[idx | size] = second[idx] - f;
        second[idx] += f;
      }
    }
    visited += 2 * size;
    frontier.push_back(v);
    bit_of[v] = w;

    Step step{v, w, {}};
    // Drop every boundary vertex whose neighbourhood is now complete.
    for (std::size_t b = frontier.size(); b-- > 0;) {
      const Vertex u = frontier[b];
      if (last[u] > t)
        continue;
      const std::size_t cur = std::size_t{1} << frontier.size();
      const std::size_t half = cur / 2;
      const std::size_t low_mask = (std::size_t{1} << b) - 1;
      Elimination elim{u, b, std::vector<std::uint64_t>((half + 63) / 64, 0)};
      for (std::size_t j = 0; j < half; ++j) {
        const std::size_t i0 = ((j & ~low_mask) << 1) | (j & low_mask);
        const std::size_t i1 = i0 | (std::size_t{1} << b);
        const double b0 = best[i0], b1 = best[i1];
        const bool pick_minus = b1 < b0;
        if (second_on) {
          const double s0 = second[i0], s1 = second[i1];
          second[j] = pick_minus ? std::min(b0, s1) : std::min(s0, b1);
        }
        best[j] = pick_minus ? b1 : b0;
        if (pick_minus)
          elim.choice[j / 64] |= std::uint64_t{1} << (j % 64);
      }
      visited += half;
      best.resize(half);
      if (second_on)
        second.resize(half);
      frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(b));
      for (std::size_t c = b; c < frontier.size(); ++c)
        bit_of[frontier[c]] = c;
      step.eliminations.push_back(std::move(elim));
    }
    steps.push_back(std::move(step));
  }

  // Replay backwards from the empty boundary to recover one optimum.
  SpinConfig config(dm.n);
  std::size_t state = 0;
  for (auto s = steps.rbegin(); s != steps.rend(); ++s) {
    for (auto e = s->eliminations.rbegin(); e != s->eliminations.rend(); ++e) {
      const std::size_t low_mask = (std::size_t{1} << e->bit) - 1;
      const bool minus = (e->choice[state / 64] >> (state % 64)) & 1U;
      state = ((state & ~low_mask) << 1) | (state & low_mask) |
              (minus ? std::size_t{1} << e->bit : 0);
      config.set(e->vertex, minus ? -1 : 1);
    }
    state &= ~(std::size_t{1} << s->added_bit);
  }

  GroundResult r;
  r.config = std::move(config);
  r.value = energy(m, r.config);
  if (second_on && dm.n > 0)
    r.second_value = second[0];
  r.solver = SolverId::frontier;
  r.stats.nodes = visited;
  r.stats.wall_seconds = clock.seconds();
  return r;
}

} // namespace repising
