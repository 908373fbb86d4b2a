#ifndef SPANNERFORGE_LP_INTERNAL_HPP
#define SPANNERFORGE_LP_INTERNAL_HPP

#include <string>
#include <vector>

#include "spannerforge/lp.hpp"

namespace spannerforge::detail {

// min cost.x  s.t.  row_lo <= A x <= row_hi,  lo <= x <= hi.  A is column-major.
struct BoundedProblem {
    int m = 0;
    int n = 0;
    std::vector<int> col_start{0};
    std::vector<int> row_index;
    std::vector<double> value;
    std::vector<double> cost, lo, hi;
    std::vector<double> row_lo, row_hi;
};

BoundedProblem to_bounded(const LinearProgram& lp);

struct Reduction {
    enum class Outcome { Reduced, Infeasible } outcome = Outcome::Reduced;
    BoundedProblem reduced;
    std::vector<int> kept_columns;   // reduced column -> original column
    std::vector<double> fixed;       // original column -> fixed value (NaN when kept)
    std::string reason;
};

Reduction presolve(const BoundedProblem& p);

struct SimplexResult {
    LPStatus status = LPStatus::Infeasible;
    std::vector<double> x;
    long iterations = 0;
};

SimplexResult run_simplex(const BoundedProblem& p, long iteration_limit);

LPSolution solve_external(const LinearProgram& lp, const std::string& command);

}  // namespace spannerforge::detail

#endif
