#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "dense_model.hpp"
#include "repising/errors.hpp"
#include "repising/solvers.hpp"

namespace repising {

void MaxSatInstance::validate() const {
  if (scale < 1)
    throw ContractViolation("maxsat: scale must be >= 1");
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    const Clause &cl = clauses[c];
    const std::string at = "maxsat: clause " + std::to_string(c);
    if (cl.weight <= 0)
      throw ContractViolation(at + " has non-positive weight");
    if (cl.literals.empty() || cl.literals.size() > 2)
      throw ContractViolation(at + " must have 1 or 2 literals");
    for (Literal l : cl.literals)
      if (l == 0 || static_cast<std::size_t>(std::abs(l)) > var_count)
        throw ContractViolation(at + " has an out-of-range literal");
    if (cl.literals.size() == 2 &&
        std::abs(cl.literals[0]) == std::abs(cl.literals[1]))
      throw ContractViolation(at + " repeats a variable");
  }
}

namespace {

bool literal_true(Literal l, const std::vector<bool> &assignment) {
  const bool value = assignment[static_cast<std::size_t>(std::abs(l)) - 1];
  return l > 0 ? value : !value;
}

} // namespace

std::int64_t objective(const MaxSatInstance &inst,
                       const std::vector<bool> &assignment) {
  if (assignment.size() != inst.var_count)
    throw ContractViolation("objective: assignment length mismatch");
  std::int64_t total = 0;
  for (const Clause &c : inst.clauses)
    for (Literal l : c.literals)
      if (literal_true(l, assignment)) {
        total += c.weight;
        break;
      }
  return total;
}

SpinConfig spins_from_assignment(const std::vector<bool> &assignment) {
  SpinConfig s(assignment.size());
  for (std::size_t i = 0; i < assignment.size(); ++i)
    if (assignment[i])
      s.set(i, -1);
  return s;
}

std::vector<bool> assignment_from_spins(const SpinConfig &s) {
  std::vector<bool> x(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    x[i] = s[i] < 0;
  return x;
}

// ---- QUBO reduction ---------------------------------------------------------

QuboOrForm qubo_or_form(const IsingModel &m) {
  // With s = 1 − 2X:
  //   J s_u s_v = J + 2J X_u + 2J X_v − 4J (X_u ∨ X_v)
  //   h s_i     = h − 2h X_i
  QuboOrForm form;
  form.linear.assign(m.vertex_count(), 0.0);
  for (const auto &[e, j] : m.couplings()) {
    form.or_coef.emplace_back(e, 4.0 * j);
    form.linear[e.u] -= 2.0 * j;
    form.linear[e.v] -= 2.0 * j;
    form.constant += j;
  }
  for (const auto &[v, h] : m.fields()) {
    form.linear[v] += 2.0 * h;
    form.constant += h;
  }
  return form;
}

MaxSatInstance qubo_to_max2sat(const IsingModel &m, std::int64_t scale) {
  if (scale < 1)
    throw ContractViolation("qubo_to_max2sat: scale must be >= 1");
  const QuboOrForm form = qubo_or_form(m);
  const double s = static_cast<double>(scale);
  auto fixed = [s](double x) { return std::llround(x * s); };

  MaxSatInstance inst;
  inst.var_count = m.vertex_count();
  inst.scale = scale;

  // Objective O = Σ w·[clause] + base; energy = constant − O.
  std::int64_t base = 0;
  std::vector<std::int64_t> linear(inst.var_count);
  for (std::size_t i = 0; i < linear.size(); ++i)
    linear[i] = fixed(form.linear[i]);

  for (const auto &[e, c] : form.or_coef) {
    const std::int64_t w = fixed(std::abs(c));
    if (w == 0)
      continue;
    const Literal a = static_cast<Literal>(e.u + 1);
    const Literal b = static_cast<Literal>(e.v + 1);
    if (c > 0) {
      inst.clauses.push_back({w, {a, b}});
    } else {
      // −(a ∨ b) = (a ∨ ¬b) − a − 1
      inst.clauses.push_back({w, {a, -b}});
      linear[e.u] -= w;
      base -= w;
    }
  }
  for (std::size_t i = 0; i < linear.size(); ++i) {
    const Literal a = static_cast<Literal>(i + 1);
    if (linear[i] > 0) {
      inst.clauses.push_back({linear[i], {a}});
    } else if (linear[i] < 0) {
      // −|l| a = |l| ¬a − |l|
      inst.clauses.push_back({-linear[i], {-a}});
      base += linear[i];
    }
  }
  inst.offset_numerator = fixed(form.constant) - base;
  return inst;
}

// ---- branch and bound -------------------------------------------------------

namespace {

class BranchAndBound {
public:
  BranchAndBound(const MaxSatInstance &inst, const BnbOptions &options)
      : inst_(inst), budget_(options.node_budget), n_(inst.var_count),
        occurs_(n_), value_(n_, -1), unit_pos_(n_, 0), unit_neg_(n_, 0),
        false_count_(inst.clauses.size(), 0),
        satisfied_(inst.clauses.size(), false) {
    for (std::size_t c = 0; c < inst.clauses.size(); ++c) {
      const Clause &cl = inst.clauses[c];
      open_weight_ += cl.weight;
      for (Literal l : cl.literals)
        occurs_[var(l)].push_back(c);
      if (cl.literals.size() == 1)
        unit_add(cl.literals[0], cl.weight);
    }
    // Static tie-break order: heaviest variables first.
    std::vector<std::int64_t> heft(n_, 0);
    for (const Clause &cl : inst.clauses)
      for (Literal l : cl.literals)
        heft[var(l)] += cl.weight;
    static_order_.resize(n_);
    std::iota(static_order_.begin(), static_order_.end(), 0);
    std::stable_sort(static_order_.begin(), static_order_.end(),
                     [&](std::size_t a, std::size_t b) {
                       return heft[a] > heft[b];
                     });
  }

  MaxSatResult run(std::vector<bool> start) {
    best_assignment_ = std::move(start);
    best_ = objective(inst_, best_assignment_);
    search();
    MaxSatResult r;
    r.assignment = best_assignment_;
    r.objective = best_;
    r.exact = !out_of_budget_;
    r.nodes = nodes_;
    return r;
  }

private:
  static std::size_t var(Literal l) {
    return static_cast<std::size_t>(std::abs(l)) - 1;
  }

  void unit_add(Literal l, std::int64_t w) {
    (l > 0 ? unit_pos_ : unit_neg_)[var(l)] += w;
  }

  // The literal of binary clause c that is not on variable v.
  Literal other_literal(std::size_t c, std::size_t v) const {
    for (Literal l : inst_.clauses[c].literals)
      if (var(l) != v)
        return l;
    return 0;
  }

  std::int64_t upper_bound() const {
    std::int64_t conflicts = 0;
    for (std::size_t v = 0; v < n_; ++v)
      if (value_[v] < 0)
        conflicts += std::min(unit_pos_[v], unit_neg_[v]);
    return sat_weight_ + open_weight_ - conflicts;
  }

  void assign(std::size_t v, bool val) {
    value_[v] = val ? 1 : 0;
    for (std::size_t c : occurs_[v]) {
      if (satisfied_[c])
        continue;
      const Clause &cl = inst_.clauses[c];
      const std::size_t len = cl.literals.size();
      const bool was_unit = len - false_count_[c] == 1;
      Literal mine = 0;
      for (Literal l : cl.literals)
        if (var(l) == v)
          mine = l;
      if ((mine > 0) == val) {
        satisfied_[c] = true;
        sat_weight_ += cl.weight;
        open_weight_ -= cl.weight;
        if (was_unit)
          unit_add(mine, -cl.weight);
      } else {
        ++false_count_[c];
        if (was_unit) {
          unit_add(mine, -cl.weight);
          open_weight_ -= cl.weight;
        } else {
          unit_add(other_literal(c, v), cl.weight);
        }
      }
      touched_.push_back(c);
    }
  }

  void unassign(std::size_t v, std::size_t touched_mark) {
    const bool val = value_[v] == 1;
    while (touched_.size() > touched_mark) {
      const std::size_t c = touched_.back();
      touched_.pop_back();
      const Clause &cl = inst_.clauses[c];
      Literal mine = 0;
      for (Literal l : cl.literals)
        if (var(l) == v)
          mine = l;
      if ((mine > 0) == val) {
        satisfied_[c] = false;
        sat_weight_ -= cl.weight;
        open_weight_ += cl.weight;
        const bool was_unit = cl.literals.size() - false_count_[c] == 1;
        if (was_unit)
          unit_add(mine, cl.weight);
      } else {
        --false_count_[c];
        const bool was_unit = cl.literals.size() - false_count_[c] == 1;
        if (was_unit) {
          unit_add(mine, cl.weight);
          open_weight_ += cl.weight;
        } else {
          unit_add(other_literal(c, v), -cl.weight);
        }
      }
    }
    value_[v] = -1;
  }

  std::size_t pick_variable() const {
    std::size_t pick = n_;
    std::int64_t heaviest = -1;
    for (std::size_t v : static_order_) {
      if (value_[v] >= 0)
        continue;
      const std::int64_t u = unit_pos_[v] + unit_neg_[v];
      if (u > heaviest) {
        heaviest = u;
        pick = v;
      }
    }
    return pick;
  }

  void search() {
    if (out_of_budget_)
      return;
    ++nodes_;
    if (budget_ != 0 && nodes_ > budget_) {
      out_of_budget_ = true;
      return;
    }
    if (upper_bound() <= best_)
      return;
    const std::size_t v = pick_variable();
    if (v == n_) {
      // Every variable is set; the bound is now exact.
      best_ = sat_weight_;
      for (std::size_t i = 0; i < n_; ++i)
        best_assignment_[i] = value_[i] == 1;
      return;
    }
    const bool first = unit_pos_[v] >= unit_neg_[v];
    for (bool val : {first, !first}) {
      const std::size_t mark = touched_.size();
      assign(v, val);
      search();
      unassign(v, mark);
      if (out_of_budget_)
        return;
    }
  }

  const MaxSatInstance &inst_;
  std::uint64_t budget_;
  std::size_t n_;
  std::vector<std::vector<std::size_t>> occurs_;
  std::vector<int> value_;
  std::vector<std::int64_t> unit_pos_, unit_neg_;
  std::vector<std::size_t> false_count_;
  std::vector<bool> satisfied_;
  std::vector<std::size_t> touched_;
  std::vector<std::size_t> static_order_;
  std::int64_t sat_weight_ = 0, open_weight_ = 0;
  std::int64_t best_ = 0;
  std::vector<bool> best_assignment_;
  std::uint64_t nodes_ = 0;
  bool out_of_budget_ = false;
};

// Greedy start followed by single-flip hill climbing.
std::vector<bool> local_search_start(const MaxSatInstance &inst) {
  std::vector<bool> x(inst.var_count, false);
  std::int64_t current = objective(inst, x);
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t v = 0; v < x.size(); ++v) {
      x[v] = !x[v];
      const std::int64_t trial = objective(inst, x);
      if (trial > current) {
        current = trial;
        improved = true;
      } else {
        x[v] = !x[v];
      }
    }
  }
  return x;
}

} // namespace

MaxSatResult solve_bnb(const MaxSatInstance &inst, const BnbOptions &options) {
  const detail::Stopwatch clock;
  inst.validate();
  BranchAndBound bnb(inst, options);
  MaxSatResult r = bnb.run(local_search_start(inst));
  r.wall_seconds = clock.seconds();
  return r;
}

MaxSatResult solve_maxsat_brute(const MaxSatInstance &inst) {
  const detail::Stopwatch clock;
  inst.validate();
  if (inst.var_count > kBruteForceLimit)
    throw SolverRefusal("maxsat brute force refuses " +
                        std::to_string(inst.var_count) + " variables");
  MaxSatResult r;
  r.objective = std::numeric_limits<std::int64_t>::min();
  std::vector<bool> x(inst.var_count);
  const std::uint64_t total = std::uint64_t{1} << inst.var_count;
  for (std::uint64_t code = 0; code < total; ++code) {
    for (std::size_t v = 0; v < x.size(); ++v)
      x[v] = (code >> v) & 1U;
    const std::int64_t value = objective(inst, x);
    if (value > r.objective) {
      r.objective = value;
      r.assignment = x;
    }
  }
  r.nodes = total;
  r.wall_seconds = clock.seconds();
  return r;
}

GroundResult solve_via_maxsat(const IsingModel &m, std::int64_t scale,
                              const BnbOptions &options) {
  const detail::Stopwatch clock;
  const MaxSatInstance inst = qubo_to_max2sat(m, scale);
  const MaxSatResult sat = solve_bnb(inst, options);
  GroundResult r;
  r.config = spins_from_assignment(sat.assignment);
  r.value = energy(m, r.config);
  r.solver = SolverId::bnb;
  r.exact = sat.exact;
  r.stats.nodes = sat.nodes;
  r.stats.wall_seconds = clock.seconds();
  return r;
}

} // namespace repising
