#include <string>

#include "repising/errors.hpp"
#include "repising/solvers.hpp"

namespace repising {

std::string_view to_string(SolverId id) {
  switch (id) {
  case SolverId::brute:
    return "brute";
  case SolverId::frontier:
    return "frontier";
  case SolverId::bnb:
    return "bnb";
  case SolverId::anneal:
    return "anneal";
  }
  return "unknown";
}

SolverId solver_id_from_string(std::string_view name) {
  for (SolverId id : {SolverId::brute, SolverId::frontier, SolverId::bnb,
                      SolverId::anneal})
    if (name == to_string(id))
      return id;
  throw ParseError("unknown solver \"" + std::string(name) + "\"");
}

SolverChoice select_solver(const IsingModel &m) {
  if (m.vertex_count() <= kAutoBruteLimit)
    return {SolverId::brute, {}, 0};
  auto order = default_elimination_order(m);
  const std::size_t width = frontier_width(m, order);
  if (width <= kDefaultMaxFrontierWidth)
    return {SolverId::frontier, std::move(order), width};
  return {SolverId::bnb, {}, width};
}

GroundResult auto_solve(const IsingModel &m) {
  SolverChoice choice = select_solver(m);
  switch (choice.solver) {
  case SolverId::brute:
    return solve_brute(m);
  case SolverId::frontier: {
    FrontierOptions options;
    options.order = std::move(choice.order);
    return solve_frontier(m, options);
  }
  default:
    return solve_via_maxsat(m);
  }
}

GroundResult solve_with(const IsingModel &m, SolverId id) {
  switch (id) {
  case SolverId::brute:
    return solve_brute(m);
  case SolverId::frontier:
    return solve_frontier(m);
  case SolverId::bnb:
    return solve_via_maxsat(m);
  case SolverId::anneal:
    return solve_anneal(m);
  }
  throw ContractViolation("solve_with: unknown solver");
}

} // namespace repising
