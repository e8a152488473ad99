#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "repising/model.hpp"

namespace repising {

enum class SolverId { brute, frontier, bnb, anneal };

std::string_view to_string(SolverId id);
/// Accepts "brute", "frontier", "bnb", "anneal". Throws ParseError.
SolverId solver_id_from_string(std::string_view name);

struct SolverStats {
  /// Configurations, DP table entries or search nodes visited.
  std::uint64_t nodes = 0;
  double wall_seconds = 0.0;
};

struct GroundResult {
  SpinConfig config;
  double value = 0.0;
  /// Number of optimal configurations; brute force only.
  std::optional<std::uint64_t> degeneracy;
  /// Energy of the best configuration other than `config`, when the solver
  /// tracks it. Equal to `value` under degeneracy.
  std::optional<double> second_value;
  SolverId solver = SolverId::brute;
  /// False for heuristic results and budget-truncated searches.
  bool exact = true;
  SolverStats stats;
};

/// Energies within this absolute tolerance count as equal.
inline constexpr double kEnergyTolerance = 1e-9;

inline constexpr std::size_t kBruteForceLimit = 24;

/// Exhaustive Gray-code enumeration. Throws SolverRefusal above 24 vertices.
GroundResult solve_brute(const IsingModel &m);

// ---- frontier dynamic programming ----------------------------------------

inline constexpr std::size_t kDefaultMaxFrontierWidth = 22;

/// Largest boundary (processed vertices that still have unprocessed
/// neighbours) reached while sweeping `order`. Only nonzero couplings count
/// as interactions.
std::size_t frontier_width(const IsingModel &m,
                           const std::vector<Vertex> &order);

/// Picks the narrower of the natural index order (block-major for product
/// graphs) and a BFS order from a minimum-degree root.
std::vector<Vertex> default_elimination_order(const IsingModel &m);

struct FrontierOptions {
  std::optional<std::vector<Vertex>> order;
  std::size_t max_width = kDefaultMaxFrontierWidth;
  bool track_second = true;
};

/// Exact minimisation by sweeping vertices in order and keeping the best
/// (and second best) partial energy per boundary assignment. Throws
/// SolverRefusal if the order's width exceeds `max_width`, and
/// ContractViolation if the order is not a permutation.
GroundResult solve_frontier(const IsingModel &m,
                            const FrontierOptions &options = {});

// ---- weighted MAX-2-SAT ----------------------------------------------------

/// DIMACS-style literal: +v is x_v, -v is ¬x_v, variables 1-based.
using Literal = std::int32_t;

struct Clause {
  std::int64_t weight = 0;
  std::vector<Literal> literals;

  friend bool operator==(const Clause &, const Clause &) = default;
};

/// Weighted MAX-2-SAT instance. For a QUBO reduction the energy of spin
/// config s is offset_numerator/scale − objective(X(s))/scale, where
/// X_i = 1 ⇔ s_i = −1.
struct MaxSatInstance {
  std::size_t var_count = 0;
  std::vector<Clause> clauses;
  std::int64_t offset_numerator = 0;
  std::int64_t scale = 1;

  double offset() const {
    return static_cast<double>(offset_numerator) / static_cast<double>(scale);
  }
  /// Throws ContractViolation on non-positive weights, >2 literals,
  /// repeated variables or out-of-range literals.
  void validate() const;
};

/// Satisfied weight. `assignment[v-1]` is the value of variable v.
std::int64_t objective(const MaxSatInstance &inst,
                       const std::vector<bool> &assignment);

/// Real-valued affine form of a QUBO over X = (1 − s)/2, obtained from the
/// substitution s = 1 − 2X and X_i ∨ X_j = X_i + X_j − X_i X_j:
/// E(s) = constant − [Σ or_coef_e (X_u ∨ X_v) + Σ linear_i X_i].
struct QuboOrForm {
  /// One entry per nonzero coupling, in model edge order: 4·J_uv.
  std::vector<std::pair<Edge, double>> or_coef;
  /// 2·h_i − 2·Σ_j J_ij.
  std::vector<double> linear;
  /// Σ J + Σ h.
  double constant = 0.0;
};

QuboOrForm qubo_or_form(const IsingModel &m);

inline constexpr std::int64_t kDefaultWeightScale = 1'000'000;

/// Rewrites the OR form with positive integer weights (fixed point,
/// denominator `scale`). Negative OR terms use
/// −(a ∨ b) = (a ∨ ¬b) − a − 1 and negative unit terms −a = ¬a − 1, with
/// the constants folded into the offset.
MaxSatInstance qubo_to_max2sat(const IsingModel &m,
                               std::int64_t scale = kDefaultWeightScale);

SpinConfig spins_from_assignment(const std::vector<bool> &assignment);
std::vector<bool> assignment_from_spins(const SpinConfig &s);

struct MaxSatResult {
  std::vector<bool> assignment;
  std::int64_t objective = 0;
  /// False when the node budget ran out before the search completed.
  bool exact = true;
  std::uint64_t nodes = 0;
  double wall_seconds = 0.0;
};

struct BnbOptions {
  /// 0 means unlimited.
  std::uint64_t node_budget = 0;
};

/// Depth-first branch and bound maximising satisfied weight.
MaxSatResult solve_bnb(const MaxSatInstance &inst,
                       const BnbOptions &options = {});

/// Exhaustive maximisation, for instances up to 24 variables.
MaxSatResult solve_maxsat_brute(const MaxSatInstance &inst);

/// QUBO → MAX-2-SAT → branch and bound → spins. `value` is the exact energy
/// of the returned configuration under `m`.
GroundResult solve_via_maxsat(const IsingModel &m,
                              std::int64_t scale = kDefaultWeightScale,
                              const BnbOptions &options = {});

// ---- DIMACS WCNF -------------------------------------------------------------

/// `p wcnf nvars nclauses top` with top = total weight + 1; the offset and
/// scale travel in a `c offset <num> scale <scale>` comment.
std::string write_wcnf(const MaxSatInstance &inst);
/// Throws ParseError with the offending line.
MaxSatInstance read_wcnf(std::string_view text);

// ---- heuristic ---------------------------------------------------------------

struct AnnealOptions {
  std::size_t sweeps = 1000;
  std::size_t restarts = 8;
  std::uint64_t seed = 1;
};

/// Simulated annealing (Metropolis, linear inverse-temperature ramp).
/// Result is flagged non-exact.
GroundResult solve_anneal(const IsingModel &m, const AnnealOptions &options = {});

// ---- policy -----------------------------------------------------------------

inline constexpr std::size_t kAutoBruteLimit = 20;

struct SolverChoice {
  SolverId solver;
  /// Elimination order for the frontier solver.
  std::vector<Vertex> order;
  std::size_t width = 0;
};

/// Brute force up to 20 vertices, else frontier DP if an order of width
/// <= 22 is found, else branch and bound.
SolverChoice select_solver(const IsingModel &m);

GroundResult auto_solve(const IsingModel &m);

/// Runs one solver by id (anneal with default options).
GroundResult solve_with(const IsingModel &m, SolverId id);

} // namespace repising
