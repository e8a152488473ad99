#include "repising/sweep_config.hpp"

#include <cmath>
#include <set>

namespace repising {

namespace {

std::string join(const std::vector<std::string> &parts) {
  std::string out = "invalid config:";
  for (const auto &p : parts)
    out += "\n  - " + p;
  return out;
}

// Collects problems instead of stopping at the first one.
class Checker {
public:
  void problem(std::string msg) { problems_.push_back(std::move(msg)); }
  const std::vector<std::string> &problems() const { return problems_; }

  void known_keys(const nlohmann::json &obj, const std::string &where,
                  std::initializer_list<const char *> keys) {
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto &[key, _] : obj.items())
      if (!allowed.count(key))
        problem(where + ": unknown key \"" + key + "\"");
  }

  std::optional<std::size_t> positive_int(const nlohmann::json &v,
                                          const std::string &where) {
    if (v.is_number_unsigned() && v.get<std::uint64_t>() >= 1)
      return v.get<std::size_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 1)
      return v.get<std::size_t>();
    problem(where + ": expected a positive integer");
    return std::nullopt;
  }

  std::optional<double> non_negative(const nlohmann::json &v,
                                     const std::string &where) {
    if (v.is_number() && std::isfinite(v.get<double>()) &&
        v.get<double>() >= 0.0)
      return v.get<double>();
    problem(where + ": expected a non-negative number");
    return std::nullopt;
  }

  std::optional<bool> boolean(const nlohmann::json &v,
                              const std::string &where) {
    if (v.is_boolean())
      return v.get<bool>();
    problem(where + ": expected true or false");
    return std::nullopt;
  }

  std::optional<std::string> string(const nlohmann::json &v,
                                    const std::string &where) {
    if (v.is_string())
      return v.get<std::string>();
    problem(where + ": expected a string");
    return std::nullopt;
  }

private:
  std::vector<std::string> problems_;
};

} // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : ParseError(join(problems)), problems_(std::move(problems)) {}

std::vector<double> SweepConfig::default_eps_list() {
  std::vector<double> eps;
  for (int i = 1; i <= 20; ++i)
    eps.push_back(0.05 * i);
  return eps;
}

SweepOptions SweepConfig::options(std::size_t threads) const {
  SweepOptions o;
  o.trials = effective_trials();
  o.master_seed = master_seed;
  o.noise = noise;
  o.antiferro_rung = antiferro_rung;
  o.solver = solver;
  o.threads = threads;
  o.audit_fraction = audit_fraction;
  return o;
}

SweepConfig sweep_config_from_json(const nlohmann::json &j) {
  SweepConfig cfg;
  Checker check;
  if (!j.is_object())
    throw ConfigError({"config: expected a JSON object"});
  check.known_keys(j, "config",
                   {"mode", "n_list", "n", "antiferro_rung", "eps_list",
                    "trials", "master_seed", "noise", "encodings", "solver",
                    "audit_fraction"});

  if (j.contains("mode")) {
    if (auto m = check.string(j["mode"], "mode")) {
      if (*m == "unencoded" || *m == "encoded")
        cfg.mode = *m;
      else
        check.problem("mode: expected \"unencoded\" or \"encoded\"");
    }
  }
  if (j.contains("n_list")) {
    const auto &arr = j["n_list"];
    if (!arr.is_array() || arr.empty()) {
      check.problem("n_list: expected a non-empty array");
    } else {
      cfg.n_list.clear();
      for (std::size_t i = 0; i < arr.size(); ++i)
        if (auto v = check.positive_int(arr[i],
                                        "n_list[" + std::to_string(i) + "]"))
          cfg.n_list.push_back(*v);
    }
  }
  if (j.contains("n"))
    if (auto v = check.positive_int(j["n"], "n"))
      cfg.n = *v;
  if (j.contains("antiferro_rung")) {
    const auto &v = j["antiferro_rung"];
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
      cfg.antiferro_rung = v.get<std::size_t>();
    else
      check.problem("antiferro_rung: expected a non-negative integer");
  }
  if (j.contains("eps_list")) {
    const auto &arr = j["eps_list"];
    if (!arr.is_array() || arr.empty()) {
      check.problem("eps_list: expected a non-empty array");
    } else {
      cfg.eps_list.clear();
      for (std::size_t i = 0; i < arr.size(); ++i)
        if (auto v = check.non_negative(arr[i],
                                        "eps_list[" + std::to_string(i) + "]"))
          cfg.eps_list.push_back(*v);
    }
  }
  if (j.contains("trials"))
    if (auto v = check.positive_int(j["trials"], "trials"))
      cfg.trials = *v;
  if (j.contains("master_seed")) {
    const auto &v = j["master_seed"];
    if (v.is_number_unsigned() ||
        (v.is_number_integer() && v.get<std::int64_t>() >= 0))
      cfg.master_seed = v.get<std::uint64_t>();
    else
      check.problem("master_seed: expected a non-negative integer");
  }
  if (j.contains("noise")) {
    const auto &n = j["noise"];
    if (!n.is_object()) {
      check.problem("noise: expected an object");
    } else {
      check.known_keys(n, "noise",
                       {"distribution", "perturb_fields",
                        "perturb_penalty_links"});
      if (n.contains("distribution")) {
        if (auto d = check.string(n["distribution"], "noise.distribution")) {
          try {
            cfg.noise.distribution = noise_distribution_from_string(*d);
          } catch (const ParseError &e) {
            check.problem(std::string("noise.distribution: ") + e.what());
          }
        }
      }
      if (n.contains("perturb_fields"))
        if (auto b = check.boolean(n["perturb_fields"], "noise.perturb_fields"))
          cfg.noise.perturb_fields = *b;
      if (n.contains("perturb_penalty_links"))
        if (auto b = check.boolean(n["perturb_penalty_links"],
                                   "noise.perturb_penalty_links"))
          cfg.noise.perturb_penalty_links = *b;
    }
  }
  if (j.contains("encodings")) {
    const auto &arr = j["encodings"];
    if (!arr.is_array() || arr.empty()) {
      check.problem("encodings: expected a non-empty array");
    } else {
      cfg.encodings.clear();
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string at = "encodings[" + std::to_string(i) + "]";
        const auto &e = arr[i];
        if (!e.is_object()) {
          check.problem(at + ": expected an object");
          continue;
        }
        check.known_keys(e, at, {"code_graph", "dims", "j_ferro"});
        EncodingSpec spec;
        bool ok = true;
        if (e.contains("code_graph")) {
          auto s = check.string(e["code_graph"], at + ".code_graph");
          ok = ok && s.has_value();
          if (s)
            spec.code_graph = *s;
        }
        if (e.contains("dims")) {
          if (!e["dims"].is_array()) {
            check.problem(at + ".dims: expected an array");
            ok = false;
          } else {
            spec.dims.clear();
            for (std::size_t d = 0; d < e["dims"].size(); ++d) {
              auto v = check.positive_int(
                  e["dims"][d], at + ".dims[" + std::to_string(d) + "]");
              ok = ok && v.has_value();
              if (v)
                spec.dims.push_back(*v);
            }
          }
        }
        if (e.contains("j_ferro")) {
          auto v = check.non_negative(e["j_ferro"], at + ".j_ferro");
          ok = ok && v.has_value();
          if (v)
            spec.j_ferro = *v;
        }
        if (ok) {
          try {
            spec.build();
          } catch (const std::exception &ex) {
            check.problem(at + ": " + ex.what());
          }
        }
        cfg.encodings.push_back(std::move(spec));
      }
    }
  }
  if (j.contains("solver")) {
    if (auto s = check.string(j["solver"], "solver")) {
      if (*s != "auto") {
        try {
          cfg.solver = solver_id_from_string(*s);
        } catch (const ParseError &e) {
          check.problem(std::string("solver: ") + e.what());
        }
      }
    }
  }
  if (j.contains("audit_fraction")) {
    auto v = check.non_negative(j["audit_fraction"], "audit_fraction");
    if (v && *v <= 1.0)
      cfg.audit_fraction = *v;
    else if (v)
      check.problem("audit_fraction: must lie in [0, 1]");
  }

  // Cross-field checks.
  const std::vector<std::size_t> ns =
      cfg.mode == "encoded" ? std::vector<std::size_t>{cfg.n} : cfg.n_list;
  for (std::size_t n : ns)
    if (cfg.antiferro_rung >= n)
      check.problem("antiferro_rung: " + std::to_string(cfg.antiferro_rung) +
                    " is outside a ladder of " + std::to_string(n) +
                    " columns");

  if (!check.problems().empty())
    throw ConfigError(check.problems());
  return cfg;
}

nlohmann::json encoding_spec_to_json(const EncodingSpec &spec) {
  return {{"code_graph", spec.code_graph},
          {"dims", spec.dims},
          {"j_ferro", spec.j_ferro}};
}

nlohmann::json noise_spec_to_json(const NoiseSpec &spec) {
  return {{"distribution", std::string(to_string(spec.distribution))},
          {"perturb_fields", spec.perturb_fields},
          {"perturb_penalty_links", spec.perturb_penalty_links}};
}

nlohmann::json sweep_config_to_json(const SweepConfig &config) {
  nlohmann::json encodings = nlohmann::json::array();
  for (const auto &e : config.encodings)
    encodings.push_back(encoding_spec_to_json(e));
  return {{"mode", config.mode},
          {"n_list", config.n_list},
          {"n", config.n},
          {"antiferro_rung", config.antiferro_rung},
          {"eps_list", config.eps_list},
          {"trials", config.effective_trials()},
          {"master_seed", config.master_seed},
          {"noise", noise_spec_to_json(config.noise)},
          {"encodings", encodings},
          {"solver", config.solver ? std::string(to_string(*config.solver))
                                   : std::string("auto")},
          {"audit_fraction", config.audit_fraction}};
}

} // namespace repising
