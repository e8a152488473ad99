#include <cctype>
#include <charconv>
#include <sstream>
#include <string>

#include "repising/errors.hpp"
#include "repising/solvers.hpp"

namespace repising {

std::string write_wcnf(const MaxSatInstance &inst) {
  inst.validate();
  std::int64_t total = 0;
  for (const Clause &c : inst.clauses)
    total += c.weight;
  std::ostringstream out;
  out << "c QUBO energy = (offset - satisfied weight) / scale\n";
  out << "c offset " << inst.offset_numerator << " scale " << inst.scale
      << "\n";
  out << "p wcnf " << inst.var_count << ' ' << inst.clauses.size() << ' '
      << total + 1 << "\n";
  for (const Clause &c : inst.clauses) {
    out << c.weight;
    for (Literal l : c.literals)
      out << ' ' << l;
    out << " 0\n";
  }
  return out.str();
}

namespace {

bool parse_int(std::string_view token, std::int64_t &out) {
  const char *end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    const std::size_t start = i;
    while (i < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    if (i > start)
      tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

} // namespace

MaxSatInstance read_wcnf(std::string_view text) {
  MaxSatInstance inst;
  bool have_header = false;
  std::int64_t declared_clauses = 0, top = 0;
  std::size_t line_no = 0;
  auto fail = [&](const std::string &msg) -> void {
    throw ParseError("wcnf line " + std::to_string(line_no) + ": " + msg,
                     line_no, 1);
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line = text.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto tokens = split(line);
    if (tokens.empty())
      continue;
    if (tokens[0] == "c") {
      std::int64_t num = 0, scale = 0;
      if (tokens.size() == 5 && tokens[1] == "offset" && tokens[3] == "scale" &&
          parse_int(tokens[2], num) && parse_int(tokens[4], scale)) {
        inst.offset_numerator = num;
        inst.scale = scale;
      }
      continue;
    }
    if (tokens[0] == "p") {
      std::int64_t vars = 0;
      if (have_header)
        fail("duplicate problem line");
      if (tokens.size() != 5 || tokens[1] != "wcnf" ||
          !parse_int(tokens[2], vars) || !parse_int(tokens[3], declared_clauses) ||
          !parse_int(tokens[4], top) || vars < 0 || declared_clauses < 0)
        fail("expected \"p wcnf nvars nclauses top\"");
      inst.var_count = static_cast<std::size_t>(vars);
      have_header = true;
      continue;
    }
    if (!have_header)
      fail("clause before problem line");

    Clause clause;
    if (!parse_int(tokens[0], clause.weight) || clause.weight <= 0)
      fail("clause weight must be a positive integer");
    if (clause.weight >= top)
      fail("hard clauses are not supported");
    bool terminated = false;
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      std::int64_t lit = 0;
      if (!parse_int(tokens[t], lit))
        fail("bad literal \"" + std::string(tokens[t]) + "\"");
      if (lit == 0) {
        terminated = t + 1 == tokens.size();
        if (!terminated)
          fail("tokens after clause terminator");
        break;
      }
      if (static_cast<std::size_t>(lit < 0 ? -lit : lit) > inst.var_count)
        fail("literal " + std::to_string(lit) + " exceeds variable count");
      clause.literals.push_back(static_cast<Literal>(lit));
    }
    if (!terminated)
      fail("clause not terminated by 0");
    if (clause.literals.empty() || clause.literals.size() > 2)
      fail("only 1- and 2-literal clauses are supported");
    inst.clauses.push_back(std::move(clause));
  }
  if (!have_header)
    throw ParseError("wcnf: missing problem line");
  if (static_cast<std::int64_t>(inst.clauses.size()) != declared_clauses)
    throw ParseError("wcnf: header declares " +
                     std::to_string(declared_clauses) + " clauses, found " +
                     std::to_string(inst.clauses.size()));
  try {
    inst.validate();
  } catch (const ContractViolation &e) {
    throw ParseError(std::string("wcnf: ") + e.what());
  }
  return inst;
}

} // namespace repising
