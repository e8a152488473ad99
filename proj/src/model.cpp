#include "repising/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "repising/errors.hpp"
#include "repising/json_io.hpp"

namespace repising {

SpinConfig::SpinConfig(std::vector<std::int8_t> spins)
    : spins_(std::move(spins)) {
  for (std::size_t i = 0; i < spins_.size(); ++i)
    if (spins_[i] != 1 && spins_[i] != -1)
      throw ContractViolation("spin " + std::to_string(i) + " is not +1/-1");
}

SpinConfig SpinConfig::from_bits(std::uint64_t bits, std::size_t n) {
  SpinConfig s(n);
  for (std::size_t i = 0; i < n && i < 64; ++i)
    if ((bits >> i) & 1U)
      s.spins_[i] = -1;
  return s;
}

void SpinConfig::set(std::size_t i, int value) {
  if (value != 1 && value != -1)
    throw ContractViolation("spin value must be +1 or -1");
  spins_.at(i) = static_cast<std::int8_t>(value);
}

SpinConfig SpinConfig::flipped() const {
  SpinConfig s = *this;
  for (auto &v : s.spins_)
    v = static_cast<std::int8_t>(-v);
  return s;
}

IsingModel::IsingModel(std::shared_ptr<const Graph> graph, double e_max)
    : graph_(std::move(graph)), e_max_(e_max) {
  if (!graph_)
    throw ContractViolation("model: null graph");
  if (!(e_max_ > 0.0) || !std::isfinite(e_max_))
    throw ContractViolation("model: e_max must be a positive finite number");
}

void IsingModel::set_coupling(Vertex a, Vertex b, double value) {
  if (!graph_->has_edge(a, b))
    throw ContractViolation("model: (" + std::to_string(a) + ", " +
                            std::to_string(b) + ") is not a hardware edge");
  if (!std::isfinite(value) || std::abs(value) > e_max_)
    throw ContractViolation("model: |J| exceeds e_max on edge (" +
                            std::to_string(a) + ", " + std::to_string(b) + ")");
  if (value == 0.0)
    couplings_.erase(Edge(a, b));
  else
    couplings_[Edge(a, b)] = value;
}

void IsingModel::set_field(Vertex i, double value) {
  if (i >= graph_->vertex_count())
    throw ContractViolation("model: vertex " + std::to_string(i) +
                            " out of range");
  if (!std::isfinite(value) || std::abs(value) > e_max_)
    throw ContractViolation("model: |h| exceeds e_max on vertex " +
                            std::to_string(i));
  if (value == 0.0)
    fields_.erase(i);
  else
    fields_[i] = value;
}

double IsingModel::coupling(Vertex a, Vertex b) const {
  auto it = couplings_.find(Edge(a, b));
  return it == couplings_.end() ? 0.0 : it->second;
}

double IsingModel::field(Vertex i) const {
  auto it = fields_.find(i);
  return it == fields_.end() ? 0.0 : it->second;
}

IsingModel IsingModel::scaled(double alpha) const {
  IsingModel out(graph_, e_max_ * std::max(std::abs(alpha), 1e-300));
  for (const auto &[e, j] : couplings_)
    if (j * alpha != 0.0)
      out.couplings_[e] = j * alpha;
  for (const auto &[v, h] : fields_)
    if (h * alpha != 0.0)
      out.fields_[v] = h * alpha;
  return out;
}

bool operator==(const IsingModel &a, const IsingModel &b) {
  return *a.graph_ == *b.graph_ && a.e_max_ == b.e_max_ &&
         a.couplings_ == b.couplings_ && a.fields_ == b.fields_;
}

double energy(const IsingModel &m, const SpinConfig &s) {
  if (s.size() != m.vertex_count())
    throw ContractViolation("energy: config has " + std::to_string(s.size()) +
                            " spins, model has " +
                            std::to_string(m.vertex_count()) + " vertices");
  double e = 0.0;
  for (const auto &[edge, j] : m.couplings())
    e += j * s[edge.u] * s[edge.v];
  for (const auto &[v, h] : m.fields())
    e += h * s[v];
  return e;
}

IsingModel add(const IsingModel &a, const IsingModel &b) {
  if (a.graph_ptr() != b.graph_ptr() && !(a.graph() == b.graph()))
    throw ContractViolation("add: models live on different graphs");
  std::map<Edge, double> j = a.couplings();
  for (const auto &[e, v] : b.couplings())
    j[e] += v;
  std::map<Vertex, double> h = a.fields();
  for (const auto &[v, x] : b.fields())
    h[v] += x;

  double bound = std::max(a.e_max(), b.e_max());
  for (const auto &[e, v] : j)
    bound = std::max(bound, std::abs(v));
  for (const auto &[v, x] : h)
    bound = std::max(bound, std::abs(x));

  IsingModel out(a.graph_ptr(), bound);
  for (const auto &[e, v] : j)
    out.set_coupling(e.u, e.v, v);
  for (const auto &[v, x] : h)
    out.set_field(v, x);
  return out;
}

IsingModel make_ladder_instance(std::size_t columns,
                                std::size_t antiferro_rung) {
  if (columns == 0)
    throw ContractViolation("ladder: columns must be >= 1");
  if (antiferro_rung >= columns)
    throw ContractViolation("ladder: antiferromagnetic rung " +
                            std::to_string(antiferro_rung) +
                            " outside 0.." + std::to_string(columns - 1));
  IsingModel m(build_ladder(columns), 1.0);
  // Chains are ferromagnetic (J = -1 here, "+1" in the -ΣJ ZZ convention).
  for (std::size_t c = 0; c + 1 < columns; ++c)
    for (std::size_t r = 0; r < 2; ++r)
      m.set_coupling(2 * c + r, 2 * (c + 1) + r, -1.0);
  m.set_coupling(2 * antiferro_rung, 2 * antiferro_rung + 1, 1.0);
  return m;
}

// ---- JSON ----------------------------------------------------------------

std::pair<std::size_t, std::size_t> line_column(std::string_view text,
                                                std::size_t pos) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < pos && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

nlohmann::json parse_json_text(std::string_view text) {
  try {
    return nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error &e) {
    // byte is 1-based and points at the offending character.
    const std::size_t pos = e.byte == 0 ? 0 : e.byte - 1;
    auto [line, col] = line_column(text, pos);
    throw ParseError("JSON syntax error at line " + std::to_string(line) +
                         ", column " + std::to_string(col),
                     line, col);
  }
}

nlohmann::json model_to_json_value(const IsingModel &m) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge &e : m.graph().edges())
    edges.push_back({e.u, e.v, m.coupling(e.u, e.v)});
  nlohmann::json fields = nlohmann::json::array();
  for (const auto &[v, h] : m.fields())
    fields.push_back({v, h});
  return {{"vertices", m.vertex_count()},
          {"edges", edges},
          {"fields", fields},
          {"e_max", m.e_max()}};
}

namespace {

[[noreturn]] void schema_error(const std::string &where,
                               const std::string &msg) {
  throw ParseError(where + ": " + msg);
}

double as_number(const nlohmann::json &j, const std::string &where) {
  if (!j.is_number())
    schema_error(where, "expected a number");
  return j.get<double>();
}

std::size_t as_index(const nlohmann::json &j, const std::string &where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    schema_error(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

} // namespace

IsingModel model_from_json_value(const nlohmann::json &j,
                                 const std::string &where) {
  if (!j.is_object())
    schema_error(where, "expected an object");
  for (const auto &[key, _] : j.items())
    if (key != "vertices" && key != "edges" && key != "fields" &&
        key != "e_max")
      schema_error(where, "unknown key \"" + key + "\"");
  if (!j.contains("vertices"))
    schema_error(where, "missing \"vertices\"");
  const std::size_t n = as_index(j.at("vertices"), where + ".vertices");
  const double e_max =
      j.contains("e_max") ? as_number(j.at("e_max"), where + ".e_max") : 1.0;

  struct Entry {
    std::size_t u, v;
    double value;
  };
  std::vector<Edge> edges;
  std::vector<Entry> couplings;
  if (j.contains("edges")) {
    const auto &arr = j.at("edges");
    if (!arr.is_array())
      schema_error(where, "\"edges\" must be an array");
    for (std::size_t r = 0; r < arr.size(); ++r) {
      const std::string at = where + ".edges[" + std::to_string(r) + "]";
      const auto &e = arr[r];
      if (!e.is_array() || (e.size() != 2 && e.size() != 3))
        schema_error(at, "expected [u, v] or [u, v, J]");
      const std::size_t u = as_index(e[0], at);
      const std::size_t v = as_index(e[1], at);
      if (u >= n || v >= n)
        schema_error(at, "endpoint out of range");
      const double value = e.size() == 3 ? as_number(e[2], at) : 0.0;
      edges.emplace_back(u, v);
      couplings.push_back({u, v, value});
    }
  }
  try {
    IsingModel m(Graph(n, std::move(edges)), e_max);
    for (const Entry &c : couplings)
      m.set_coupling(c.u, c.v, c.value);
    if (j.contains("fields")) {
      const auto &arr = j.at("fields");
      if (!arr.is_array())
        schema_error(where, "\"fields\" must be an array");
      for (std::size_t r = 0; r < arr.size(); ++r) {
        const std::string at = where + ".fields[" + std::to_string(r) + "]";
        const auto &f = arr[r];
        if (!f.is_array() || f.size() != 2)
          schema_error(at, "expected [i, h]");
        m.set_field(as_index(f[0], at), as_number(f[1], at));
      }
    }
    return m;
  } catch (const std::invalid_argument &e) {
    schema_error(where, e.what());
  }
}

std::string model_to_json(const IsingModel &m, int indent) {
  return model_to_json_value(m).dump(indent);
}

IsingModel model_from_json(std::string_view text) {
  return model_from_json_value(parse_json_text(text));
}

} // namespace repising
