#include "repising/noise.hpp"

#include <cmath>
#include <numbers>

#include "repising/errors.hpp"

namespace repising {

std::string_view to_string(NoiseDistribution d) {
  return d == NoiseDistribution::uniform ? "uniform" : "gaussian";
}

NoiseDistribution noise_distribution_from_string(std::string_view name) {
  if (name == "uniform")
    return NoiseDistribution::uniform;
  if (name == "gaussian")
    return NoiseDistribution::gaussian;
  throw ParseError("unknown noise distribution \"" + std::string(name) + "\"");
}

double eps_rms(const NoiseSpec &spec) {
  switch (spec.distribution) {
  case NoiseDistribution::uniform:
    return spec.eps_max / std::sqrt(3.0);
  case NoiseDistribution::gaussian:
    return spec.eps_max;
  }
  return 0.0;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_words(std::initializer_list<std::uint64_t> words) {
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  for (std::uint64_t w : words)
    h = mix64(h ^ mix64(w));
  return h;
}

namespace {

// Uniform on the open interval (0, 1) with 53 random bits.
double open_unit(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

} // namespace

double unit_error(NoiseDistribution d, TrialSeed seed, std::uint64_t stream,
                  std::uint64_t index) {
  const std::uint64_t h =
      hash_words({seed.master_seed, seed.trial_index, stream, index});
  const double u = open_unit(h);
  if (d == NoiseDistribution::uniform)
    return 2.0 * u - 1.0;
  // Box-Muller with a second independent word.
  const double u2 = open_unit(mix64(h ^ 0xd1b54a32d192ed03ULL));
  return std::sqrt(-2.0 * std::log(u)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

IsingModel draw_error_model(const IsingModel &m, const NoiseSpec &spec,
                            TrialSeed seed,
                            std::span<const std::uint8_t> penalty_edges) {
  const Graph &g = m.graph();
  if (!penalty_edges.empty() && penalty_edges.size() != g.edge_count())
    throw ContractViolation("draw_error_model: penalty mask has wrong length");
  if (spec.eps_max < 0.0 || !std::isfinite(spec.eps_max))
    throw ContractViolation("draw_error_model: eps_max must be >= 0");

  std::vector<double> je(g.edge_count(), 0.0);
  std::vector<double> he(g.vertex_count(), 0.0);
  double bound = 0.0;
  if (spec.eps_max > 0.0) {
    for (std::size_t r = 0; r < g.edge_count(); ++r) {
      if (!spec.perturb_penalty_links && !penalty_edges.empty() &&
          penalty_edges[r])
        continue;
      je[r] = spec.eps_max *
              unit_error(spec.distribution, seed, kCouplingStream, r);
      bound = std::max(bound, std::abs(je[r]));
    }
    if (spec.perturb_fields) {
      for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        he[v] =
            spec.eps_max * unit_error(spec.distribution, seed, kFieldStream, v);
        bound = std::max(bound, std::abs(he[v]));
      }
    }
  }

  IsingModel out(m.graph_ptr(), std::max(bound, m.e_max()));
  const auto edges = g.edges();
  for (std::size_t r = 0; r < edges.size(); ++r)
    out.set_coupling(edges[r].u, edges[r].v, je[r]);
  for (std::size_t v = 0; v < he.size(); ++v)
    out.set_field(static_cast<Vertex>(v), he[v]);
  return out;
}

} // namespace repising
