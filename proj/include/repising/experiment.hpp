#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "repising/encoding.hpp"
#include "repising/model.hpp"
#include "repising/noise.hpp"
#include "repising/solvers.hpp"

namespace repising {

/// Ladder builder parameters, or an explicit model.
struct InstanceSpec {
  std::size_t columns = 8;
  std::size_t antiferro_rung = 0;
  std::optional<IsingModel> explicit_model;
};

IsingModel build_instance(const InstanceSpec &spec);

struct EncodingSpec {
  std::string code_graph = "grid";
  std::vector<std::size_t> dims{3, 3};
  double j_ferro = 1.0;

  RepetitionEncoding build() const;
  std::size_t k() const;
  /// "grid3x3", "path9", ...
  std::string label() const;
};

struct ExperimentConfig {
  InstanceSpec instance;
  NoiseSpec noise;
  std::optional<EncodingSpec> encoding;
  std::size_t trials = 1000;
  std::uint64_t master_seed = 1;
  /// Empty means auto_solve's policy.
  std::optional<SolverId> solver;
};

struct TrialRecord {
  std::uint64_t trial_index = 0;
  bool failed = false;
  /// Set only for encoded runs.
  std::optional<bool> in_code_space;
  double perturbed_value = 0.0;
  double logical_energy_of_decode = 0.0;
  double unperturbed_min = 0.0;
  /// The perturbed optimum's runner-up was within 1e-6.
  bool near_degenerate = false;
  SolverId solver = SolverId::brute;
  double wall_seconds = 0.0;
  SpinConfig decoded;
  SpinConfig physical;
};

/// A configured experiment with the unperturbed problem solved once.
/// Trials are independent and may run concurrently.
class Experiment {
public:
  explicit Experiment(ExperimentConfig config);

  const ExperimentConfig &config() const { return config_; }
  const IsingModel &logical() const { return logical_; }
  const IsingModel &physical() const { return physical_; }
  double unperturbed_min() const { return unperturbed_.value; }
  const GroundResult &unperturbed() const { return unperturbed_; }
  std::size_t k() const { return k_; }

  /// The perturbed physical model H_Q + ΔH for trial t.
  IsingModel perturbed_model(std::uint64_t t) const;
  TrialRecord run_trial(std::uint64_t t) const;
  /// Re-solves the trial with a different exact method and checks the
  /// record. Throws std::logic_error on disagreement.
  void audit(const TrialRecord &record) const;

private:
  GroundResult solve(const IsingModel &m) const;

  ExperimentConfig config_;
  IsingModel logical_;
  IsingModel physical_;
  std::size_t k_ = 1;
  std::vector<std::uint8_t> penalty_mask_;
  SolverChoice choice_{SolverId::brute, {}, 0};
  GroundResult unperturbed_;
};

TrialRecord run_trial(const ExperimentConfig &config, std::uint64_t t);

struct SweepCell {
  std::size_t n = 0;
  double eps_max = 0.0;
  /// Noise half-width actually applied (eps_max/√K in rescaled tables).
  double eps_applied = 0.0;
  std::size_t k = 1;
  std::string code = "none";
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::size_t in_code_space = 0;
  std::size_t near_degenerate = 0;
  double failure_rate = 0.0;
  double standard_error = 0.0;
  double code_space_rate = 1.0;
  double mean_wall_seconds = 0.0;
  std::uint64_t seed = 0;
};

struct SweepTable {
  std::vector<SweepCell> cells;
  std::size_t audited = 0;
};

/// Binomial standard error √(p(1−p)/trials).
double binomial_standard_error(double p, std::size_t trials);

struct SweepOptions {
  std::size_t trials = 1000;
  std::uint64_t master_seed = 1;
  NoiseSpec noise;
  std::size_t antiferro_rung = 0;
  std::optional<SolverId> solver;
  std::size_t threads = 1;
  /// Fraction of trials re-verified by an independent solve.
  double audit_fraction = 0.01;
};

/// Seed shared by every eps cell of one (N, code) row, so failure rates
/// along a row come from common random draws.
std::uint64_t row_seed(std::uint64_t master_seed, std::size_t n,
                       const std::optional<EncodingSpec> &encoding);

SweepTable sweep_unencoded(const std::vector<std::size_t> &n_list,
                           const std::vector<double> &eps_list,
                           const SweepOptions &options);

struct EncodedSweep {
  SweepTable encoded;
  /// Unencoded ladder at eps/√K, one cell per (code, eps).
  SweepTable rescaled;
};

EncodedSweep sweep_encoded(std::size_t n,
                           const std::vector<EncodingSpec> &encodings,
                           const std::vector<double> &eps_list,
                           const SweepOptions &options);

/// Columns: N,eps_max,K,failure_rate,std_err,code_space_rate,trials.
/// With `with_applied_eps` an eps_applied column is appended.
std::string sweep_to_csv(const SweepTable &table, bool with_applied_eps = false);

/// Spearman rank correlation between failure_rate and √N·eps_max over all
/// cells. Throws std::domain_error when fewer than two N values are present
/// or either variable is constant.
double collapse_statistic(const SweepTable &table);

/// Spearman correlation with average ranks for ties.
double spearman(const std::vector<double> &x, const std::vector<double> &y);

// ---- worked example --------------------------------------------------------

struct Fig1Options {
  std::size_t columns = 8;
  std::size_t antiferro_rung = 0;
  double eps_max = 0.3;
  std::uint64_t base_seed = 1;
  std::uint64_t budget = 10000;
  EncodingSpec encoding{"grid", {3, 3}, 1.0};
};

struct Fig1Example {
  bool found = false;
  std::uint64_t scanned = 0;
  std::uint64_t trial_index = 0;
  IsingModel problem;
  /// Both members of the unperturbed ground space (config and its flip).
  std::vector<SpinConfig> ground_states;
  double ground_energy = 0.0;
  IsingModel noise;
  TrialRecord unencoded;
  /// Intended (nonzero) couplings left unsatisfied by the erred ground state.
  std::vector<Edge> violated_links;
  TrialRecord encoded;
};

/// Scans trial indices 0..budget-1 for the first noise draw that changes
/// the ladder's ground state, then re-runs that draw's trial index with the
/// encoding.
Fig1Example find_fig1_example(const Fig1Options &options);

} // namespace repising
