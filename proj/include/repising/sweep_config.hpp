#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "repising/errors.hpp"
#include "repising/experiment.hpp"

namespace repising {

/// Every schema problem found in a config, not just the first.
class ConfigError : public ParseError {
public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string> &problems() const { return problems_; }

private:
  std::vector<std::string> problems_;
};

/// Failure-probability sweep over the faulty ladder.
struct SweepConfig {
  /// "unencoded" (N × eps grid) or "encoded" (codes × eps at fixed N).
  std::string mode = "unencoded";
  std::vector<std::size_t> n_list{3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13};
  std::size_t n = 13;
  std::size_t antiferro_rung = 0;
  std::vector<double> eps_list = default_eps_list();
  /// Defaults to 1000 (unencoded) or 400 (encoded).
  std::optional<std::size_t> trials;
  std::uint64_t master_seed = 1;
  NoiseSpec noise;
  std::vector<EncodingSpec> encodings{
      {"grid", {2, 2}, 1.0}, {"grid", {2, 3}, 1.0},
      {"grid", {3, 3}, 1.0}, {"grid", {3, 4}, 1.0}};
  std::optional<SolverId> solver;
  double audit_fraction = 0.01;

  std::size_t effective_trials() const {
    return trials.value_or(mode == "encoded" ? 400 : 1000);
  }
  SweepOptions options(std::size_t threads) const;

  /// 0.05, 0.10, ..., 1.00
  static std::vector<double> default_eps_list();
};

/// Strict parse: unknown keys and invalid values are all reported in one
/// ConfigError. Missing keys take the defaults above.
SweepConfig sweep_config_from_json(const nlohmann::json &j);
/// Full config with every default spelled out.
nlohmann::json sweep_config_to_json(const SweepConfig &config);

nlohmann::json encoding_spec_to_json(const EncodingSpec &spec);
nlohmann::json noise_spec_to_json(const NoiseSpec &spec);

} // namespace repising
