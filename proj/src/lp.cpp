#include "spannerforge/lp.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>

#include "lp_internal.hpp"
#include "spannerforge/errors.hpp"
#include "spannerforge/lp_text.hpp"

namespace spannerforge {

namespace {

bool valid_name(const std::string& s) {
    if (s.empty() || s.size() > 255) return false;
    if (std::isdigit(static_cast<unsigned char>(s[0])) || s[0] == '.') return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '[' ||
              c == ']' || c == '#'))
            return false;
    return true;
}

}  // namespace

std::vector<Term> LinearProgram::canonical(std::vector<Term> terms) const {
    for (const Term& t : terms) {
        if (t.var < 0 || t.var >= num_variables())
            throw InputError("term references undeclared variable " + std::to_string(t.var));
        if (!std::isfinite(t.coef)) throw InputError("non-finite coefficient");
    }
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
    std::vector<Term> out;
    for (const Term& t : terms) {
        if (!out.empty() && out.back().var == t.var) out.back().coef += t.coef;
        else out.push_back(t);
    }
    std::erase_if(out, [](const Term& t) { return t.coef == 0.0; });
    return out;
}

int LinearProgram::add_variable(std::string name, double lo, double hi) {
    if (name.empty()) name = "x" + std::to_string(vars_.size());
    if (!valid_name(name)) throw InputError("invalid variable name '" + name + "'");
    if (std::isnan(lo) || std::isnan(hi) || lo > hi || lo == kInfinity || hi == -kInfinity)
        throw InputError("invalid bounds for variable '" + name + "'");
    if (!by_name_.emplace(name, num_variables()).second)
        throw InputError("duplicate variable name '" + name + "'");
    vars_.push_back({std::move(name), lo, hi});
    return num_variables() - 1;
}

int LinearProgram::add_row(std::vector<Term> terms, Relation rel, double rhs, std::string name) {
    if (!std::isfinite(rhs)) throw InputError("non-finite right-hand side");
    if (name.empty()) name = "c" + std::to_string(rows_.size());
    if (!valid_name(name)) throw InputError("invalid row name '" + name + "'");
    rows_.push_back({std::move(name), canonical(std::move(terms)), rel, rhs});
    return num_rows() - 1;
}

void LinearProgram::set_objective(Sense sense, std::vector<Term> terms) {
    sense_ = sense;
    objective_ = canonical(std::move(terms));
}

void LinearProgram::clear_objective() {
    objective_.clear();
    sense_ = Sense::Minimize;
}

void LinearProgram::set_bounds(int var, double lo, double hi) {
    if (var < 0 || var >= num_variables()) throw InputError("unknown variable index");
    if (std::isnan(lo) || std::isnan(hi) || lo > hi) throw InputError("invalid bounds");
    vars_[var].lo = lo;
    vars_[var].hi = hi;
}

std::size_t LinearProgram::num_nonzeros() const {
    std::size_t nnz = 0;
    for (const Row& r : rows_) nnz += r.terms.size();
    return nnz;
}

std::optional<int> LinearProgram::find_variable(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

bool LinearProgram::operator==(const LinearProgram& other) const {
    return vars_ == other.vars_ && rows_ == other.rows_ && objective_ == other.objective_ &&
           (objective_.empty() || sense_ == other.sense_);
}

const char* to_string(LPStatus s) {
    switch (s) {
        case LPStatus::Optimal: return "optimal";
        case LPStatus::Feasible: return "feasible";
        case LPStatus::Infeasible: return "infeasible";
        case LPStatus::Unbounded: return "unbounded";
    }
    return "unknown";
}

double row_violation(const Row& row, std::span<const double> x) {
    double act = 0.0;
    for (const Term& t : row.terms) act += t.coef * x[t.var];
    switch (row.rel) {
        case Relation::LessEqual: return act - row.rhs;
        case Relation::GreaterEqual: return row.rhs - act;
        case Relation::Equal: return std::abs(act - row.rhs);
    }
    return 0.0;
}

double max_violation(const LinearProgram& lp, std::span<const double> x) {
    if (static_cast<int>(x.size()) != lp.num_variables())
        throw ContractError("max_violation: point has the wrong dimension");
    double worst = 0.0;
    for (int j = 0; j < lp.num_variables(); ++j) {
        const Variable& v = lp.variable(j);
        worst = std::max({worst, v.lo - x[j], x[j] - v.hi});
    }
    for (const Row& r : lp.rows()) worst = std::max(worst, row_violation(r, x));
    return worst;
}

namespace detail {

BoundedProblem to_bounded(const LinearProgram& lp) {
    BoundedProblem p;
    p.m = lp.num_rows();
    p.n = lp.num_variables();
    std::vector<int> count(p.n, 0);
    for (const Row& r : lp.rows())
        for (const Term& t : r.terms) ++count[t.var];
    p.col_start.assign(p.n + 1, 0);
    for (int j = 0; j < p.n; ++j) p.col_start[j + 1] = p.col_start[j] + count[j];
    p.row_index.resize(p.col_start[p.n]);
    p.value.resize(p.col_start[p.n]);
    std::vector<int> fill(p.col_start.begin(), p.col_start.end() - 1);
    for (int i = 0; i < p.m; ++i)
        for (const Term& t : lp.row(i).terms) {
            p.row_index[fill[t.var]] = i;
            p.value[fill[t.var]++] = t.coef;
        }
    p.cost.assign(p.n, 0.0);
    const double sign = lp.sense() == Sense::Maximize ? -1.0 : 1.0;
    for (const Term& t : lp.objective()) p.cost[t.var] = sign * t.coef;
    for (const Variable& v : lp.variables()) {
        p.lo.push_back(v.lo);
        p.hi.push_back(v.hi);
    }
    for (const Row& r : lp.rows()) {
        p.row_lo.push_back(r.rel == Relation::LessEqual ? -kInfinity : r.rhs);
        p.row_hi.push_back(r.rel == Relation::GreaterEqual ? kInfinity : r.rhs);
    }
    return p;
}

}  // namespace detail

LPSolution solve(const LinearProgram& lp, const SolverOptions& options) {
    if (options.allow_external) {
        const char* cmd = std::getenv(kExternalSolverEnv);
        if (cmd && *cmd) {
            LPSolution s = detail::solve_external(lp, cmd);
            if (s.has_point() && s.max_violation > options.tolerance)
                throw NumericalError("external solver returned a point violating constraints by " +
                                     std::to_string(s.max_violation));
            return s;
        }
    }
    const detail::BoundedProblem full = detail::to_bounded(lp);
    LPSolution out;
    out.solver = "simplex";

    detail::Reduction red;
    if (options.presolve) {
        red = detail::presolve(full);
    } else {
        red.reduced = full;
        red.fixed.assign(full.n, std::nan(""));
        for (int j = 0; j < full.n; ++j) red.kept_columns.push_back(j);
    }
    if (red.outcome == detail::Reduction::Outcome::Infeasible) {
        out.status = LPStatus::Infeasible;
        out.solver = "presolve";
        return out;
    }

    long limit = options.iteration_limit;
    if (limit <= 0) limit = 50L * (red.reduced.m + red.reduced.n) + 20000;
    detail::SimplexResult sr = detail::run_simplex(red.reduced, limit);
    out.iterations = sr.iterations;
    out.status = sr.status;
    if (!lp.has_objective() && sr.status == LPStatus::Optimal) out.status = LPStatus::Feasible;
    if (!out.has_point()) return out;

    out.values.assign(full.n, 0.0);
    for (int j = 0; j < full.n; ++j)
        if (!std::isnan(red.fixed[j])) out.values[j] = red.fixed[j];
    for (std::size_t k = 0; k < red.kept_columns.size(); ++k) out.values[red.kept_columns[k]] = sr.x[k];
    // Snap values that sit within rounding noise of a bound.
    for (int j = 0; j < full.n; ++j) {
        const Variable& v = lp.variable(j);
        out.values[j] = std::clamp(out.values[j], v.lo, v.hi);
    }
    for (const Term& t : lp.objective()) out.objective += t.coef * out.values[t.var];
    out.max_violation = max_violation(lp, out.values);
    if (out.max_violation > options.tolerance)
        throw NumericalError("simplex returned a point violating constraints by " +
                             std::to_string(out.max_violation));
    return out;
}

}  // namespace spannerforge
