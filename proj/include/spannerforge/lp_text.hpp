#ifndef SPANNERFORGE_LP_TEXT_HPP
#define SPANNERFORGE_LP_TEXT_HPP

#include <map>
#include <string>
#include <string_view>

#include "spannerforge/lp.hpp"

namespace spannerforge {

// CPLEX-style LP text: objective, "Subject To", "Bounds", "End". Every variable
// gets a bounds line in declaration order, so parsing restores the exact program.
// Numbers are printed with 17 significant digits.
std::string export_lp_text(const LinearProgram& lp);
// Throws InputError with a line number on malformed input.
LinearProgram parse_lp_text(std::string_view text);

// Solution file exchanged with an external solver: first line is a status word
// (optimal, feasible, infeasible, unbounded), then "name value" lines.
struct ExternalSolution {
    LPStatus status = LPStatus::Infeasible;
    std::map<std::string, double> values;
};
ExternalSolution parse_solution_text(std::string_view text);
std::string format_solution_text(const LinearProgram& lp, const LPSolution& sol);

// Name of the environment variable holding the external solver command.
inline constexpr const char* kExternalSolverEnv = "SPANNERFORGE_LP_CMD";

}  // namespace spannerforge

#endif
