#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>

#include "repising/model.hpp"

namespace repising {

enum class NoiseDistribution { uniform, gaussian };

std::string_view to_string(NoiseDistribution d);
NoiseDistribution noise_distribution_from_string(std::string_view name);

/// Control-imprecision model for the error Hamiltonian ΔH.
///
/// For `uniform` each error is drawn from [-eps_max, eps_max]; for
/// `gaussian` eps_max is the standard deviation. All errors have zero mean.
struct NoiseSpec {
  double eps_max = 0.0;
  bool perturb_fields = false;
  bool perturb_penalty_links = true;
  NoiseDistribution distribution = NoiseDistribution::uniform;
};

/// Identifies the random stream of one Monte Carlo trial.
struct TrialSeed {
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;
};

/// Analytic RMS of a single error: a/√3 for uniform[-a, a], σ for gaussian.
double eps_rms(const NoiseSpec &spec);

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);
/// Order-dependent combination of hashed words.
std::uint64_t hash_words(std::initializer_list<std::uint64_t> words);

/// Zero-mean, unit-scale draw for one error term: uniform on [-1, 1] or
/// standard normal. A pure function of its arguments, so a trial's errors do
/// not depend on evaluation order or thread schedule.
double unit_error(NoiseDistribution d, TrialSeed seed, std::uint64_t stream,
                  std::uint64_t index);

inline constexpr std::uint64_t kCouplingStream = 1;
inline constexpr std::uint64_t kFieldStream = 2;

/// Draws ΔH on the hardware graph of `m`: one independent error on every
/// edge (including edges where `m` has no coupling) and, when
/// `perturb_fields`, on every vertex. Edge errors are keyed by edge rank.
///
/// `penalty_edges`, if non-empty, flags edges by rank as encoding links;
/// those are left unperturbed when `perturb_penalty_links` is false.
IsingModel draw_error_model(const IsingModel &m, const NoiseSpec &spec,
                            TrialSeed seed,
                            std::span<const std::uint8_t> penalty_edges = {});

} // namespace repising
