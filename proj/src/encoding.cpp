#include "repising/encoding.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "repising/errors.hpp"

namespace repising {

RepetitionEncoding::RepetitionEncoding(Graph code_graph, double j_ferro)
    : code_graph_(std::make_shared<const Graph>(std::move(code_graph))),
      j_ferro_(j_ferro) {
  if (code_graph_->vertex_count() == 0)
    throw ContractViolation("encoding: code graph is empty");
  if (!code_graph_->is_connected())
    throw ContractViolation("encoding: code graph must be connected");
  if (!(j_ferro_ > 0.0) || !std::isfinite(j_ferro_))
    throw ContractViolation("encoding: j_ferro must be positive");
}

RepetitionEncoding make_encoding(const std::string &kind,
                                 const std::vector<std::size_t> &dims,
                                 double j_ferro) {
  auto need = [&](std::size_t n) {
    if (dims.size() != n)
      throw ContractViolation("encoding \"" + kind + "\" expects " +
                              std::to_string(n) + " dimension(s)");
    for (std::size_t d : dims)
      if (d == 0)
        throw ContractViolation("encoding dimensions must be >= 1");
  };
  if (kind == "path") {
    need(1);
    return RepetitionEncoding(build_path(dims[0]), j_ferro);
  }
  if (kind == "grid") {
    need(2);
    return RepetitionEncoding(build_grid(dims[0], dims[1]), j_ferro);
  }
  if (kind == "complete") {
    need(1);
    return RepetitionEncoding(build_complete(dims[0]), j_ferro);
  }
  throw ContractViolation("unknown code graph \"" + kind + "\"");
}

IsingModel encode(const IsingModel &m, const RepetitionEncoding &enc) {
  const Graph &f = enc.code_graph();
  const std::size_t k = enc.k();
  IsingModel out(cartesian_product(m.graph(), f),
                 std::max(m.e_max(), enc.j_ferro()));
  for (const auto &[e, j] : m.couplings())
    for (std::size_t c = 0; c < k; ++c)
      out.set_coupling(product_index(e.u, c, k), product_index(e.v, c, k), j);
  for (const auto &[v, h] : m.fields())
    for (std::size_t c = 0; c < k; ++c)
      out.set_field(product_index(v, c, k), h);
  for (std::size_t i = 0; i < m.vertex_count(); ++i)
    for (const Edge &e : f.edges())
      out.set_coupling(product_index(i, e.u, k), product_index(i, e.v, k),
                       -enc.j_ferro());
  return out;
}

std::vector<std::uint8_t> penalty_edge_mask(const Graph &product,
                                            std::size_t k) {
  if (k == 0 || product.vertex_count() % k != 0)
    throw ContractViolation("penalty_edge_mask: block size does not divide "
                            "the vertex count");
  std::vector<std::uint8_t> mask;
  mask.reserve(product.edge_count());
  for (const Edge &e : product.edges())
    mask.push_back(e.u / k == e.v / k ? 1 : 0);
  return mask;
}

SpinConfig embed_codeword(const SpinConfig &logical, std::size_t k) {
  std::vector<std::int8_t> spins;
  spins.reserve(logical.size() * k);
  for (std::size_t i = 0; i < logical.size(); ++i)
    spins.insert(spins.end(), k, static_cast<std::int8_t>(logical[i]));
  return SpinConfig(std::move(spins));
}

namespace {

void check_block_shape(const SpinConfig &s, std::size_t n_logical,
                       std::size_t k) {
  if (k == 0 || s.size() != n_logical * k)
    throw ContractViolation("config of " + std::to_string(s.size()) +
                            " spins does not split into " +
                            std::to_string(n_logical) + " blocks of " +
                            std::to_string(k));
}

} // namespace

bool is_codeword(const SpinConfig &s, std::size_t n_logical, std::size_t k) {
  check_block_shape(s, n_logical, k);
  for (std::size_t i = 0; i < n_logical; ++i)
    for (std::size_t c = 1; c < k; ++c)
      if (s[i * k + c] != s[i * k])
        return false;
  return true;
}

DecodedState decode(const SpinConfig &s, std::size_t n_logical,
                    std::size_t k) {
  check_block_shape(s, n_logical, k);
  DecodedState out;
  out.logical = SpinConfig(n_logical);
  out.block_margins.resize(n_logical);
  out.in_code_space = true;
  for (std::size_t i = 0; i < n_logical; ++i) {
    int sum = 0;
    for (std::size_t c = 0; c < k; ++c)
      sum += s[i * k + c];
    out.logical.set(i, sum < 0 ? -1 : 1);
    out.block_margins[i] = std::abs(sum);
    if (static_cast<std::size_t>(std::abs(sum)) != k)
      out.in_code_space = false;
  }
  return out;
}

EffectiveModel effective_logical_model(const IsingModel &m,
                                       const RepetitionEncoding &enc,
                                       const NoiseSpec &spec) {
  const double k = static_cast<double>(enc.k());
  const double rms = eps_rms(spec);
  const double penalty_terms =
      static_cast<double>(m.vertex_count() * enc.code_graph().edge_count());

  EffectiveModel out{m.scaled(k)};
  out.coupling_noise_rms = std::sqrt(k) * rms;
  out.field_noise_rms = spec.perturb_fields ? std::sqrt(k) * rms : 0.0;
  out.constant = -enc.j_ferro() * penalty_terms;
  if (spec.perturb_penalty_links)
    out.constant += std::sqrt(penalty_terms) * rms;
  return out;
}

double effective_relative_noise(double e_max, std::size_t k,
                                const NoiseSpec &spec) {
  const double kd = static_cast<double>(k);
  return std::sqrt(kd) * eps_rms(spec) / (kd * e_max);
}

std::vector<std::pair<std::size_t, std::size_t>>
stabilizer_generators(std::size_t n_logical, std::size_t k) {
  if (k == 0)
    throw ContractViolation("stabilizer_generators: k must be >= 1");
  std::vector<std::pair<std::size_t, std::size_t>> checks;
  checks.reserve(n_logical * (k - 1));
  for (std::size_t i = 0; i < n_logical; ++i)
    for (std::size_t c = 1; c < k; ++c)
      checks.emplace_back(product_index(i, 0, k), product_index(i, c, k));
  return checks;
}

bool satisfies_checks(
    const SpinConfig &s,
    const std::vector<std::pair<std::size_t, std::size_t>> &checks) {
  for (const auto &[a, b] : checks) {
    if (a >= s.size() || b >= s.size())
      throw ContractViolation("parity check index out of range");
    if (s[a] * s[b] != 1)
      return false;
  }
  return true;
}

DegreeReport degree_heuristic(const Graph &problem_graph,
                              const RepetitionEncoding &enc) {
  DegreeReport r;
  r.max_problem_degree = problem_graph.max_degree();
  r.min_code_degree = enc.code_graph().min_degree();
  r.satisfied = r.min_code_degree >= r.max_problem_degree;
  return r;
}

} // namespace repising
