#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "repising/graph.hpp"
#include "repising/model.hpp"
#include "repising/noise.hpp"

namespace repising {

/// Repetition code: every logical spin becomes a block of K physical spins
/// tied together by ferromagnetic links along the code graph F.
class RepetitionEncoding {
public:
  /// Throws ContractViolation unless `code_graph` is connected and
  /// `j_ferro` > 0.
  RepetitionEncoding(Graph code_graph, double j_ferro = 1.0);

  const Graph &code_graph() const { return *code_graph_; }
  double j_ferro() const { return j_ferro_; }
  std::size_t k() const { return code_graph_->vertex_count(); }

private:
  std::shared_ptr<const Graph> code_graph_;
  double j_ferro_;
};

/// Builds an encoding from a descriptor: kind "path" (dims {K}), "grid"
/// (dims {rows, cols}) or "complete" (dims {K}).
RepetitionEncoding make_encoding(const std::string &kind,
                                 const std::vector<std::size_t> &dims,
                                 double j_ferro = 1.0);

/// Physical model on G □ F: J_ij copied onto every replica, h_i onto every
/// block member, and -J_F on every intra-block link. No noise is added.
IsingModel encode(const IsingModel &m, const RepetitionEncoding &enc);

/// Flags (by edge rank) the intra-block links of a product graph with block
/// size `k`. Suitable as the penalty mask of draw_error_model.
std::vector<std::uint8_t> penalty_edge_mask(const Graph &product,
                                            std::size_t k);

/// Logical spin `s` embedded as the codeword with every block unanimous.
SpinConfig embed_codeword(const SpinConfig &logical, std::size_t k);

bool is_codeword(const SpinConfig &s, std::size_t n_logical, std::size_t k);

struct DecodedState {
  SpinConfig logical;
  bool in_code_space = false;
  /// |block sum| per block; K for a unanimous block, 0 for a tie.
  std::vector<int> block_margins;
};

/// Majority vote per block. Ties (even K) resolve to +1 with margin 0.
DecodedState decode(const SpinConfig &s, std::size_t n_logical,
                    std::size_t k);

/// Code-space prediction of the noisy encoded model.
struct EffectiveModel {
  /// Couplings K·J_ij and fields K·h_i.
  IsingModel logical;
  /// Predicted RMS of the summed replica error on each logical coupling.
  double coupling_noise_rms = 0.0;
  /// Same for each logical field; zero unless fields are perturbed.
  double field_noise_rms = 0.0;
  /// Energy shift -J_F|V||E_F| + √(|V||E_F|)·ε_RMS (penalty-link noise term
  /// only when those links are perturbed).
  double constant = 0.0;
};

EffectiveModel effective_logical_model(const IsingModel &m,
                                       const RepetitionEncoding &enc,
                                       const NoiseSpec &spec);

/// ε_RMS relative to the logical energy scale inside the code space:
/// √K·ε_RMS / (K·E_max).
double effective_relative_noise(double e_max, std::size_t k,
                                const NoiseSpec &spec);

/// Repetition-code parity checks Z_{i,1} Z_{i,k}, k = 2..K, as pairs of
/// physical indices.
std::vector<std::pair<std::size_t, std::size_t>>
stabilizer_generators(std::size_t n_logical, std::size_t k);

bool satisfies_checks(
    const SpinConfig &s,
    const std::vector<std::pair<std::size_t, std::size_t>> &checks);

struct DegreeReport {
  std::size_t max_problem_degree = 0;
  std::size_t min_code_degree = 0;
  /// min code degree >= max problem degree.
  bool satisfied = false;
};

DegreeReport degree_heuristic(const Graph &problem_graph,
                              const RepetitionEncoding &enc);

} // namespace repising
