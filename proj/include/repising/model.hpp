#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "repising/graph.hpp"

namespace repising {

/// Assignment of ±1 to every vertex.
class SpinConfig {
public:
  SpinConfig() = default;
  /// All spins +1.
  explicit SpinConfig(std::size_t n) : spins_(n, 1) {}
  /// Throws ContractViolation if any entry is not ±1.
  explicit SpinConfig(std::vector<std::int8_t> spins);

  /// Bit b of `bits` set means spin b is -1.
  static SpinConfig from_bits(std::uint64_t bits, std::size_t n);

  std::size_t size() const { return spins_.size(); }
  int operator[](std::size_t i) const { return spins_[i]; }
  void set(std::size_t i, int value);
  void flip(std::size_t i) { spins_[i] = static_cast<std::int8_t>(-spins_[i]); }
  std::span<const std::int8_t> values() const { return spins_; }

  SpinConfig flipped() const;

  friend bool operator==(const SpinConfig &, const SpinConfig &) = default;

private:
  std::vector<std::int8_t> spins_;
};

/// Classical Ising Hamiltonian H = Σ J_ij s_i s_j + Σ h_i s_i on a hardware
/// graph. Ferromagnetic couplings are negative. Absent entries are zero and
/// are not stored.
class IsingModel {
public:
  IsingModel() = default;
  explicit IsingModel(std::shared_ptr<const Graph> graph, double e_max = 1.0);
  explicit IsingModel(Graph graph, double e_max = 1.0)
      : IsingModel(std::make_shared<const Graph>(std::move(graph)), e_max) {}

  const Graph &graph() const { return *graph_; }
  const std::shared_ptr<const Graph> &graph_ptr() const { return graph_; }
  std::size_t vertex_count() const { return graph_->vertex_count(); }
  double e_max() const { return e_max_; }

  /// Setting an exact zero erases the entry. Throws ContractViolation when
  /// the edge is not in the graph or |value| > e_max.
  void set_coupling(Vertex a, Vertex b, double value);
  void set_field(Vertex i, double value);

  double coupling(Vertex a, Vertex b) const;
  double field(Vertex i) const;

  const std::map<Edge, double> &couplings() const { return couplings_; }
  const std::map<Vertex, double> &fields() const { return fields_; }

  /// Every J and h multiplied by `alpha`; e_max scales by |alpha|.
  IsingModel scaled(double alpha) const;

  friend bool operator==(const IsingModel &a, const IsingModel &b);

private:
  std::shared_ptr<const Graph> graph_ = std::make_shared<const Graph>();
  double e_max_ = 1.0;
  std::map<Edge, double> couplings_;
  std::map<Vertex, double> fields_;
};

/// Σ J_ij s_i s_j + Σ h_i s_i. Throws ContractViolation on length mismatch.
double energy(const IsingModel &m, const SpinConfig &s);

/// Termwise sum on an identical graph. The result's e_max is the largest of
/// both inputs' bounds and every attained magnitude.
IsingModel add(const IsingModel &a, const IsingModel &b);

/// Two ferromagnetic chains (J = -1) of `columns` spins joined by one
/// antiferromagnetic rung (J = +1) at column `antiferro_rung`; the other
/// rungs are hardware edges with zero coupling.
IsingModel make_ladder_instance(std::size_t columns,
                                std::size_t antiferro_rung = 0);

/// Lossless JSON form:
/// {"vertices": n, "edges": [[u,v,J],...], "fields": [[i,h],...], "e_max": x}
/// Every hardware edge is listed, zero-coupling edges with J = 0.
std::string model_to_json(const IsingModel &m, int indent = -1);
/// Throws ParseError (with line/column for syntax errors).
IsingModel model_from_json(std::string_view text);

/// 1-based line and column of byte offset `pos` in `text`.
std::pair<std::size_t, std::size_t> line_column(std::string_view text,
                                                std::size_t pos);

} // namespace repising
