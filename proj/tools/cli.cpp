#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/sha.h>

#include "repising/errors.hpp"
#include "repising/experiment.hpp"
#include "repising/json_io.hpp"
#include "repising/solvers.hpp"
#include "repising/sweep_config.hpp"

namespace repising::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string git_blob_sha1(const std::string &content) {
  const std::string header = "blob " + std::to_string(content.size());
  SHA_CTX ctx;
  SHA1_Init(&ctx);
  SHA1_Update(&ctx, header.data(), header.size() + 1); // includes the NUL
  SHA1_Update(&ctx, content.data(), content.size());
  unsigned char digest[SHA_DIGEST_LENGTH];
  SHA1_Final(digest, &ctx);
  std::ostringstream hex;
  for (unsigned char b : digest)
    hex << std::hex << std::setw(2) << std::setfill('0') << int(b);
  return hex.str();
}

namespace {

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string utc_now() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string spins_string(const SpinConfig &s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i)
    out += s[i] > 0 ? '+' : '-';
  return out;
}

json spins_json(const SpinConfig &s) {
  json arr = json::array();
  for (std::size_t i = 0; i < s.size(); ++i)
    arr.push_back(s[i]);
  return arr;
}

// Ladder vertex (column c, row r) is 2c + r; draw both rows.
std::string ladder_rows(const SpinConfig &s) {
  std::string top, bottom;
  for (std::size_t c = 0; 2 * c + 1 < s.size(); ++c) {
    top += s[2 * c] > 0 ? '+' : '-';
    bottom += s[2 * c + 1] > 0 ? '+' : '-';
  }
  return "  top    " + top + "\n  bottom " + bottom + "\n";
}

// ---- solve ------------------------------------------------------------------

struct SolveArgs {
  std::string instance;
  std::string solver = "auto";
  std::string wcnf;
};

int cmd_solve(const SolveArgs &a, std::ostream &out, std::ostream &err) {
  IsingModel m;
  try {
    m = model_from_json(read_file(a.instance));
  } catch (const ParseError &e) {
    err << "error: " << a.instance << ": " << e.what() << "\n";
    return kInputError;
  }

  GroundResult r;
  try {
    if (a.solver == "auto")
      r = auto_solve(m);
    else
      r = solve_with(m, solver_id_from_string(a.solver));
  } catch (const ParseError &e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const SolverRefusal &e) {
    err << "refused: " << e.what() << "\n";
    return kRefused;
  }

  char value[64];
  std::snprintf(value, sizeof value, "%.12g", r.value);
  out << "solver      " << to_string(r.solver) << (r.exact ? "" : " (heuristic)")
      << "\n";
  out << "value       " << value << "\n";
  out << "config      " << spins_string(r.config) << "\n";
  if (r.degeneracy)
    out << "degeneracy  " << *r.degeneracy << "\n";
  out << "nodes       " << r.stats.nodes << "\n";
  out << "wall_time   " << r.stats.wall_seconds << " s\n";

  if (!a.wcnf.empty()) {
    const MaxSatInstance inst = qubo_to_max2sat(m);
    write_file(a.wcnf, write_wcnf(inst));
    out << "wcnf        " << a.wcnf << "\n";
  }
  return kOk;
}

// ---- sweep ------------------------------------------------------------------

struct SweepArgs {
  std::string config;
  std::string out_dir = ".";
  std::size_t threads = 1;
  std::string mode;
  std::optional<std::uint64_t> seed;
};

int cmd_sweep(const SweepArgs &a, std::ostream &out, std::ostream &err) {
  const std::string started = utc_now();
  SweepConfig cfg;
  try {
    json j = parse_json_text(read_file(a.config));
    // A run manifest carries its config snapshot; rerun from that.
    if (j.is_object() && j.contains("config") && j.contains("tool"))
      j = j["config"];
    cfg = sweep_config_from_json(j);
    if (!a.mode.empty()) {
      if (a.mode != "unencoded" && a.mode != "encoded")
        throw ConfigError({"--mode: expected unencoded or encoded"});
      cfg.mode = a.mode;
    }
    if (a.seed)
      cfg.master_seed = *a.seed;
  } catch (const ParseError &e) {
    err << "error: " << a.config << ": " << e.what() << "\n";
    return kInputError;
  }
  if (a.threads == 0) {
    err << "error: --threads must be >= 1\n";
    return kInputError;
  }

  std::vector<std::pair<std::string, std::string>> files;
  json cells = json::array();
  auto note_cells = [&](const SweepTable &t, const std::string &table) {
    for (const SweepCell &c : t.cells)
      cells.push_back({{"table", table},
                       {"N", c.n},
                       {"K", c.k},
                       {"code", c.code},
                       {"eps_max", c.eps_max},
                       {"eps_applied", c.eps_applied},
                       {"seed", c.seed},
                       {"near_degenerate", c.near_degenerate}});
  };

  try {
    const SweepOptions opts = cfg.options(a.threads);
    if (cfg.mode == "unencoded") {
      const SweepTable t = sweep_unencoded(cfg.n_list, cfg.eps_list, opts);
      files.emplace_back("sweep_unencoded.csv", sweep_to_csv(t));
      note_cells(t, "unencoded");
      try {
        char rho[32];
        std::snprintf(rho, sizeof rho, "%.4f", collapse_statistic(t));
        out << "collapse (Spearman vs sqrt(N)*eps): " << rho << "\n";
      } catch (const std::domain_error &) {
      }
    } else {
      const EncodedSweep s =
          sweep_encoded(cfg.n, cfg.encodings, cfg.eps_list, opts);
      files.emplace_back("sweep_encoded.csv", sweep_to_csv(s.encoded));
      files.emplace_back("sweep_rescaled.csv", sweep_to_csv(s.rescaled, true));
      note_cells(s.encoded, "encoded");
      note_cells(s.rescaled, "rescaled");
    }
  } catch (const SolverRefusal &e) {
    err << "refused: " << e.what() << "\n";
    return kRefused;
  } catch (const ContractViolation &e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  fs::create_directories(a.out_dir);
  json outputs = json::array();
  for (const auto &[name, content] : files) {
    write_file(fs::path(a.out_dir) / name, content);
    outputs.push_back({{"path", name},
                       {"bytes", content.size()},
                       {"sha1", git_blob_sha1(content)}});
    out << "wrote " << (fs::path(a.out_dir) / name).string() << "\n";
  }
  const json manifest = {{"tool", "repising"},
                         {"version", kToolVersion},
                         {"command", "sweep"},
                         {"config", sweep_config_to_json(cfg)},
                         {"threads", a.threads},
                         {"started", started},
                         {"finished", utc_now()},
                         {"outputs", outputs},
                         {"cells", cells}};
  write_file(fs::path(a.out_dir) / "manifest.json", manifest.dump(2) + "\n");
  return kOk;
}

// ---- demo-fig1 -----------------------------------------------------------------

struct DemoArgs {
  std::uint64_t budget = 10000;
  std::uint64_t seed = 1;
  double eps = 0.3;
  std::size_t columns = 8;
  std::string out_dir;
};

int cmd_demo_fig1(const DemoArgs &a, std::ostream &out, std::ostream &err) {
  Fig1Options opt;
  opt.budget = a.budget;
  opt.base_seed = a.seed;
  opt.eps_max = a.eps;
  opt.columns = a.columns;
  Fig1Example ex;
  try {
    ex = find_fig1_example(opt);
  } catch (const ContractViolation &e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  if (!ex.found) {
    err << "no failing noise draw among trial indices 0.." << a.budget - 1
        << " (seed " << a.seed << ")\n";
    return kSearchExhausted;
  }

  char buf[128];
  out << "Faulty ladder: " << a.columns
      << " columns, chains J=-1, antiferromagnetic rung at column "
      << opt.antiferro_rung << "\n";
  std::snprintf(buf, sizeof buf, "%.6g", ex.ground_energy);
  out << "Unperturbed ground space (energy " << buf << "):\n";
  for (const auto &g : ex.ground_states)
    out << ladder_rows(g);
  out << "\nNoise: uniform on [-" << a.eps << ", " << a.eps
      << "] on every hardware edge, no field errors\n";
  out << "First failing draw: seed " << a.seed << ", trial " << ex.trial_index
      << " (" << ex.scanned << " scanned)\n";
  std::snprintf(buf, sizeof buf, "%.6g", ex.unencoded.logical_energy_of_decode);
  out << "Erred ground state (unperturbed energy " << buf << "):\n"
      << ladder_rows(ex.unencoded.decoded);
  out << "Violated intended links:";
  for (const Edge &e : ex.violated_links) {
    std::snprintf(buf, sizeof buf, " (%u,%u) J=%+g noise=%+.3f", e.u, e.v,
                  ex.problem.coupling(e.u, e.v), ex.noise.coupling(e.u, e.v));
    out << buf;
  }
  out << "\n\nEncoded with " << opt.encoding.label() << " (K="
      << opt.encoding.k() << "), same trial:\n"
      << ladder_rows(ex.encoded.decoded);
  out << "  in code space: " << (ex.encoded.in_code_space.value_or(false) ? "yes" : "no")
      << ", decoded state " << (ex.encoded.failed ? "NOT optimal" : "optimal")
      << "\n";

  if (!a.out_dir.empty()) {
    json violated = json::array();
    for (const Edge &e : ex.violated_links)
      violated.push_back({e.u, e.v, ex.problem.coupling(e.u, e.v)});
    json ground = json::array();
    for (const auto &g : ex.ground_states)
      ground.push_back(spins_json(g));
    const json report = {
        {"tool", "repising"},
        {"version", kToolVersion},
        {"command", "demo-fig1"},
        {"columns", a.columns},
        {"eps_max", a.eps},
        {"base_seed", a.seed},
        {"budget", a.budget},
        {"trial_index", ex.trial_index},
        {"scanned", ex.scanned},
        {"problem", model_to_json_value(ex.problem)},
        {"ground_energy", ex.ground_energy},
        {"ground_states", ground},
        {"noise", model_to_json_value(ex.noise)},
        {"erred_ground_state", spins_json(ex.unencoded.decoded)},
        {"erred_unperturbed_energy", ex.unencoded.logical_energy_of_decode},
        {"violated_links", violated},
        {"encoded",
         {{"code", encoding_spec_to_json(opt.encoding)},
          {"decoded", spins_json(ex.encoded.decoded)},
          {"in_code_space", ex.encoded.in_code_space.value_or(false)},
          {"failed", ex.encoded.failed},
          {"logical_energy", ex.encoded.logical_energy_of_decode}}}};
    fs::create_directories(a.out_dir);
    write_file(fs::path(a.out_dir) / "fig1.json", report.dump(2) + "\n");
    out << "wrote " << (fs::path(a.out_dir) / "fig1.json").string() << "\n";
  }
  return kOk;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
  CLI::App app{"Ising ground states under coupling noise, with repetition "
               "encoding"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  SolveArgs solve;
  auto *solve_cmd = app.add_subcommand("solve", "Exact ground state of an "
                                                "instance JSON file");
  solve_cmd->add_option("instance", solve.instance, "Instance JSON")
      ->required();
  solve_cmd
      ->add_option("--solver", solve.solver,
                   "auto, brute, frontier, bnb or anneal")
      ->capture_default_str();
  solve_cmd->add_option("--wcnf", solve.wcnf,
                        "Also write the MAX-2-SAT reduction (DIMACS WCNF)");

  SweepArgs sweep;
  auto *sweep_cmd =
      app.add_subcommand("sweep", "Monte Carlo failure-probability sweep");
  sweep_cmd->add_option("--config", sweep.config, "Sweep config or manifest")
      ->required();
  sweep_cmd->add_option("--out", sweep.out_dir, "Output directory")
      ->capture_default_str();
  sweep_cmd->add_option("--threads", sweep.threads, "Worker threads")
      ->capture_default_str();
  sweep_cmd->add_option("--mode", sweep.mode, "unencoded or encoded");
  sweep_cmd->add_option("--seed", sweep.seed, "Override master_seed");

  DemoArgs demo;
  auto *demo_cmd = app.add_subcommand(
      "demo-fig1", "Find a noise draw that breaks the faulty ladder and "
                   "show the encoded rescue");
  demo_cmd->add_option("--budget", demo.budget, "Trial indices to scan")
      ->capture_default_str();
  demo_cmd->add_option("--seed", demo.seed, "Base seed")->capture_default_str();
  demo_cmd->add_option("--eps", demo.eps, "Noise half-width")
      ->capture_default_str();
  demo_cmd->add_option("--columns", demo.columns, "Ladder columns")
      ->capture_default_str();
  demo_cmd->add_option("--out", demo.out_dir, "Write fig1.json here");

  std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
  try {
    app.parse(std::move(rev));
  } catch (const CLI::CallForHelp &e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion &) {
    out << kToolVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  if (*solve_cmd)
    return cmd_solve(solve, out, err);
  if (*sweep_cmd)
    return cmd_sweep(sweep, out, err);
  return cmd_demo_fig1(demo, out, err);
}

} // namespace repising::cli
