#include "repising/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

#include "repising/errors.hpp"

namespace repising {

IsingModel build_instance(const InstanceSpec &spec) {
  if (spec.explicit_model)
    return *spec.explicit_model;
  return make_ladder_instance(spec.columns, spec.antiferro_rung);
}

RepetitionEncoding EncodingSpec::build() const {
  return make_encoding(code_graph, dims, j_ferro);
}

std::size_t EncodingSpec::k() const {
  std::size_t k = 1;
  for (std::size_t d : dims)
    k *= d;
  return k;
}

std::string EncodingSpec::label() const {
  std::string out = code_graph;
  for (std::size_t i = 0; i < dims.size(); ++i)
    out += (i == 0 ? "" : "x") + std::to_string(dims[i]);
  return out;
}

namespace {

// Every hardware edge carries a coupling once noise is added, so solver
// selection looks at the full hardware graph.
IsingModel hardware_structure(const IsingModel &m) {
  IsingModel s(m.graph_ptr(), 1.0);
  for (const Edge &e : m.graph().edges())
    s.set_coupling(e.u, e.v, 1.0);
  return s;
}

bool near_degenerate(const GroundResult &r) {
  return r.second_value && *r.second_value - r.value < 1e-6;
}

// Without fields every state ties with its global flip, so a plain second
// best is always degenerate. Pin spin 0 to +1 with a field -M where 2M
// exceeds the energy range; the second best then skips the flip partner.
// Energies are reported against the unpinned model.
GroundResult solve_modulo_flip(const IsingModel &m,
                               const std::function<GroundResult(
                                   const IsingModel &)> &solve) {
  if (!m.fields().empty() || m.vertex_count() == 0)
    return solve(m);
  double range = 0.0;
  for (const auto &[e, j] : m.couplings())
    range += std::abs(j);
  const double pin = range + 1.0;
  IsingModel pinned(m.graph_ptr(), std::max(m.e_max(), pin));
  for (const auto &[e, j] : m.couplings())
    pinned.set_coupling(e.u, e.v, j);
  pinned.set_field(0, -pin);
  GroundResult r = solve(pinned);
  r.value = energy(m, r.config);
  if (r.second_value)
    *r.second_value += pin;
  r.degeneracy.reset();
  return r;
}

} // namespace

Experiment::Experiment(ExperimentConfig config) : config_(std::move(config)) {
  if (config_.trials == 0)
    throw ContractViolation("experiment: trials must be >= 1");
  logical_ = build_instance(config_.instance);
  if (config_.encoding) {
    const RepetitionEncoding enc = config_.encoding->build();
    physical_ = encode(logical_, enc);
    k_ = enc.k();
    penalty_mask_ = penalty_edge_mask(physical_.graph(), k_);
  } else {
    physical_ = logical_;
  }

  const IsingModel structure = hardware_structure(physical_);
  if (config_.solver) {
    choice_ = {*config_.solver, {}, 0};
    if (*config_.solver == SolverId::frontier) {
      choice_.order = default_elimination_order(structure);
      choice_.width = frontier_width(structure, choice_.order);
    }
  } else {
    choice_ = select_solver(structure);
  }
  unperturbed_ = auto_solve(logical_);
}

GroundResult Experiment::solve(const IsingModel &m) const {
  switch (choice_.solver) {
  case SolverId::brute:
    return solve_brute(m);
  case SolverId::frontier: {
    FrontierOptions options;
    options.order = choice_.order;
    return solve_frontier(m, options);
  }
  case SolverId::bnb:
    return solve_via_maxsat(m);
  case SolverId::anneal:
    return solve_anneal(m);
  }
  throw ContractViolation("experiment: unknown solver");
}

IsingModel Experiment::perturbed_model(std::uint64_t t) const {
  const IsingModel noise = draw_error_model(
      physical_, config_.noise, TrialSeed{config_.master_seed, t},
      penalty_mask_);
  return add(physical_, noise);
}

TrialRecord Experiment::run_trial(std::uint64_t t) const {
  GroundResult result;
  try {
    result = solve_modulo_flip(
        perturbed_model(t), [this](const IsingModel &p) { return solve(p); });
  } catch (const SolverRefusal &e) {
    throw SolverRefusal("trial " + std::to_string(t) + ": " + e.what());
  }

  TrialRecord r;
  r.trial_index = t;
  r.perturbed_value = result.value;
  r.solver = result.solver;
  r.wall_seconds = result.stats.wall_seconds;
  r.near_degenerate = near_degenerate(result);
  r.unperturbed_min = unperturbed_.value;
  if (config_.encoding) {
    DecodedState d = decode(result.config, logical_.vertex_count(), k_);
    r.in_code_space = d.in_code_space;
    r.decoded = std::move(d.logical);
  } else {
    r.decoded = result.config;
  }
  r.physical = std::move(result.config);
  r.logical_energy_of_decode = energy(logical_, r.decoded);
  r.failed = r.logical_energy_of_decode > r.unperturbed_min + kEnergyTolerance;
  return r;
}

void Experiment::audit(const TrialRecord &record) const {
  const IsingModel m = perturbed_model(record.trial_index);
  const std::size_t n = m.vertex_count();
  GroundResult check;
  if (record.solver != SolverId::brute && n <= kAutoBruteLimit) {
    check = solve_brute(m);
  } else {
    // Same method family, opposite sweep direction.
    std::vector<Vertex> order = choice_.order.empty()
                                    ? default_elimination_order(m)
                                    : choice_.order;
    std::reverse(order.begin(), order.end());
    if (frontier_width(m, order) > kDefaultMaxFrontierWidth)
      return;
    FrontierOptions options;
    options.order = std::move(order);
    options.track_second = false;
    check = solve_frontier(m, options);
  }
  const double tol = record.solver == SolverId::bnb ? 1e-5 : 1e-9;
  if (std::abs(check.value - record.perturbed_value) > tol)
    throw std::logic_error("audit: trial " +
                           std::to_string(record.trial_index) +
                           " perturbed optimum disagrees between solvers");
  const double e = energy(logical_, record.decoded);
  if (std::abs(e - record.logical_energy_of_decode) > kEnergyTolerance ||
      record.failed != (e > record.unperturbed_min + kEnergyTolerance))
    throw std::logic_error("audit: trial " +
                           std::to_string(record.trial_index) +
                           " failure flag inconsistent with its energy");
}

TrialRecord run_trial(const ExperimentConfig &config, std::uint64_t t) {
  return Experiment(config).run_trial(t);
}

// ---- sweeps -----------------------------------------------------------------

double binomial_standard_error(double p, std::size_t trials) {
  if (trials == 0)
    return 0.0;
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

std::uint64_t row_seed(std::uint64_t master_seed, std::size_t n,
                       const std::optional<EncodingSpec> &encoding) {
  std::uint64_t code = 0;
  if (encoding && encoding->k() > 1) {
    // FNV-1a of the label; stable across platforms.
    code = 0xcbf29ce484222325ULL;
    for (unsigned char ch : encoding->label())
      code = (code ^ ch) * 0x100000001b3ULL;
  }
  return hash_words({master_seed, n, code});
}

namespace {

template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn fn) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count)
        return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error)
          error = std::current_exception();
        next = count;
        return;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back(worker);
    for (auto &th : pool)
      th.join();
  }
  if (error)
    std::rethrow_exception(error);
}

struct CellJob {
  SweepCell cell;
  ExperimentConfig config;
};

SweepTable run_cells(std::vector<CellJob> jobs, const SweepOptions &options) {
  std::vector<std::unique_ptr<Experiment>> experiments(jobs.size());
  parallel_for(jobs.size(), options.threads, [&](std::size_t c) {
    experiments[c] = std::make_unique<Experiment>(jobs[c].config);
  });

  std::vector<std::size_t> first(jobs.size() + 1, 0);
  for (std::size_t c = 0; c < jobs.size(); ++c)
    first[c + 1] = first[c] + jobs[c].config.trials;
  std::vector<TrialRecord> records(first.back());

  std::size_t stride = 0;
  if (options.audit_fraction > 0.0)
    stride = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(1.0 / options.audit_fraction)));
  std::atomic<std::size_t> audited{0};

  parallel_for(records.size(), options.threads, [&](std::size_t i) {
    const std::size_t c =
        static_cast<std::size_t>(std::upper_bound(first.begin(), first.end(), i) -
                                 first.begin()) - 1;
    const std::uint64_t t = i - first[c];
    records[i] = experiments[c]->run_trial(t);
    if (stride != 0 && t % stride == 0) {
      experiments[c]->audit(records[i]);
      ++audited;
    }
  });

  SweepTable table;
  table.audited = audited;
  for (std::size_t c = 0; c < jobs.size(); ++c) {
    SweepCell cell = jobs[c].cell;
    cell.trials = jobs[c].config.trials;
    double wall = 0.0;
    for (std::size_t i = first[c]; i < first[c + 1]; ++i) {
      const TrialRecord &r = records[i];
      cell.failures += r.failed ? 1 : 0;
      cell.in_code_space += r.in_code_space.value_or(true) ? 1 : 0;
      cell.near_degenerate += r.near_degenerate ? 1 : 0;
      wall += r.wall_seconds;
    }
    const double trials = static_cast<double>(cell.trials);
    cell.failure_rate = static_cast<double>(cell.failures) / trials;
    cell.standard_error = binomial_standard_error(cell.failure_rate, cell.trials);
    cell.code_space_rate = static_cast<double>(cell.in_code_space) / trials;
    cell.mean_wall_seconds = wall / trials;
    table.cells.push_back(std::move(cell));
  }
  return table;
}

ExperimentConfig cell_config(std::size_t n, double eps,
                             const std::optional<EncodingSpec> &encoding,
                             const SweepOptions &options) {
  ExperimentConfig cfg;
  cfg.instance.columns = n;
  cfg.instance.antiferro_rung = options.antiferro_rung;
  cfg.noise = options.noise;
  cfg.noise.eps_max = eps;
  cfg.encoding = encoding;
  cfg.trials = options.trials;
  cfg.master_seed = row_seed(options.master_seed, n, encoding);
  cfg.solver = options.solver;
  return cfg;
}

} // namespace

SweepTable sweep_unencoded(const std::vector<std::size_t> &n_list,
                           const std::vector<double> &eps_list,
                           const SweepOptions &options) {
  std::vector<CellJob> jobs;
  for (std::size_t n : n_list) {
    for (double eps : eps_list) {
      CellJob job;
      job.config = cell_config(n, eps, std::nullopt, options);
      job.cell.n = n;
      job.cell.eps_max = eps;
      job.cell.eps_applied = eps;
      job.cell.seed = job.config.master_seed;
      jobs.push_back(std::move(job));
    }
  }
  return run_cells(std::move(jobs), options);
}

EncodedSweep sweep_encoded(std::size_t n,
                           const std::vector<EncodingSpec> &encodings,
                           const std::vector<double> &eps_list,
                           const SweepOptions &options) {
  std::vector<CellJob> encoded, rescaled;
  for (const EncodingSpec &spec : encodings) {
    const std::size_t k = spec.k();
    for (double eps : eps_list) {
      CellJob job;
      job.config = cell_config(n, eps, spec, options);
      job.cell.n = n;
      job.cell.eps_max = eps;
      job.cell.eps_applied = eps;
      job.cell.k = k;
      job.cell.code = spec.label();
      job.cell.seed = job.config.master_seed;
      encoded.push_back(job);

      const double scaled = eps / std::sqrt(static_cast<double>(k));
      CellJob plain;
      plain.config = cell_config(n, scaled, std::nullopt, options);
      plain.cell = job.cell;
      plain.cell.eps_applied = scaled;
      plain.cell.code = "none";
      plain.cell.seed = plain.config.master_seed;
      rescaled.push_back(std::move(plain));
    }
  }
  EncodedSweep out;
  out.encoded = run_cells(std::move(encoded), options);
  out.rescaled = run_cells(std::move(rescaled), options);
  return out;
}

std::string sweep_to_csv(const SweepTable &table, bool with_applied_eps) {
  std::string out = "N,eps_max,K,failure_rate,std_err,code_space_rate,trials";
  out += with_applied_eps ? ",eps_applied\n" : "\n";
  char line[256];
  for (const SweepCell &c : table.cells) {
    std::snprintf(line, sizeof line, "%zu,%.6g,%zu,%.6f,%.6f,%.6f,%zu", c.n,
                  c.eps_max, c.k, c.failure_rate, c.standard_error,
                  c.code_space_rate, c.trials);
    out += line;
    if (with_applied_eps) {
      std::snprintf(line, sizeof line, ",%.6g", c.eps_applied);
      out += line;
    }
    out += '\n';
  }
  return out;
}

// ---- collapse ---------------------------------------------------------------

namespace {

std::vector<double> average_ranks(const std::vector<double> &x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> rank(x.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]])
      ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t)
      rank[idx[t]] = avg;
    i = j + 1;
  }
  return rank;
}

} // namespace

double spearman(const std::vector<double> &x, const std::vector<double> &y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::domain_error("spearman: need two equally long samples");
  const auto rx = average_ranks(x), ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0)
    throw std::domain_error("spearman: correlation undefined for a constant "
                            "variable");
  return sxy / std::sqrt(sxx * syy);
}

double collapse_statistic(const SweepTable &table) {
  std::set<std::size_t> ns;
  std::vector<double> rate, scaled;
  for (const SweepCell &c : table.cells) {
    ns.insert(c.n);
    rate.push_back(c.failure_rate);
    scaled.push_back(std::sqrt(static_cast<double>(c.n)) * c.eps_max);
  }
  if (ns.size() < 2)
    throw std::domain_error("collapse_statistic: need at least two N values");
  return spearman(rate, scaled);
}

// ---- worked example ---------------------------------------------------------

Fig1Example find_fig1_example(const Fig1Options &options) {
  ExperimentConfig cfg;
  cfg.instance.columns = options.columns;
  cfg.instance.antiferro_rung = options.antiferro_rung;
  cfg.noise.eps_max = options.eps_max;
  cfg.noise.distribution = NoiseDistribution::uniform;
  cfg.noise.perturb_fields = false;
  cfg.master_seed = options.base_seed;
  cfg.trials = 1;
  const Experiment plain(cfg);

  Fig1Example out;
  out.problem = plain.logical();
  out.ground_energy = plain.unperturbed_min();
  out.ground_states = {plain.unperturbed().config,
                       plain.unperturbed().config.flipped()};

  for (std::uint64_t t = 0; t < options.budget; ++t) {
    ++out.scanned;
    TrialRecord r = plain.run_trial(t);
    if (!r.failed)
      continue;
    out.found = true;
    out.trial_index = t;
    out.noise = draw_error_model(out.problem, cfg.noise,
                                 TrialSeed{options.base_seed, t});
    for (const auto &[e, j] : out.problem.couplings())
      if (j * r.decoded[e.u] * r.decoded[e.v] > 0.0)
        out.violated_links.push_back(e);
    out.unencoded = std::move(r);

    ExperimentConfig enc_cfg = cfg;
    enc_cfg.encoding = options.encoding;
    out.encoded = Experiment(enc_cfg).run_trial(t);
    break;
  }
  return out;
}

} // namespace repising
