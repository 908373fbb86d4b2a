#ifndef SPANNERFORGE_LP_HPP
#define SPANNERFORGE_LP_HPP

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace spannerforge {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
// Absolute tolerance on bound and row violations of returned points.
inline constexpr double kLpTolerance = 1e-7;

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Sense { Minimize, Maximize };

struct Term {
    int var = 0;
    double coef = 0.0;
    bool operator==(const Term&) const = default;
};

struct Variable {
    std::string name;
    double lo = 0.0;
    double hi = kInfinity;
    bool operator==(const Variable&) const = default;
};

struct Row {
    std::string name;
    std::vector<Term> terms;  // sorted by variable, merged, no zeros
    Relation rel = Relation::LessEqual;
    double rhs = 0.0;
    bool operator==(const Row&) const = default;
};

class LinearProgram {
public:
    // Names must be unique and valid LP-text identifiers; an empty name becomes "x<index>".
    int add_variable(std::string name, double lo = 0.0, double hi = kInfinity);
    // Duplicate variables are merged; empty names become "c<index>".
    int add_row(std::vector<Term> terms, Relation rel, double rhs, std::string name = {});
    void set_objective(Sense sense, std::vector<Term> terms);
    void clear_objective();
    void set_bounds(int var, double lo, double hi);

    int num_variables() const { return static_cast<int>(vars_.size()); }
    int num_rows() const { return static_cast<int>(rows_.size()); }
    std::size_t num_nonzeros() const;
    const Variable& variable(int j) const { return vars_.at(j); }
    const std::vector<Variable>& variables() const { return vars_; }
    const Row& row(int i) const { return rows_.at(i); }
    const std::vector<Row>& rows() const { return rows_; }
    bool has_objective() const { return !objective_.empty(); }
    Sense sense() const { return sense_; }
    const std::vector<Term>& objective() const { return objective_; }
    std::optional<int> find_variable(const std::string& name) const;

    bool operator==(const LinearProgram& other) const;

private:
    std::vector<Term> canonical(std::vector<Term> terms) const;

    std::vector<Variable> vars_;
    std::vector<Row> rows_;
    std::vector<Term> objective_;
    Sense sense_ = Sense::Minimize;
    std::unordered_map<std::string, int> by_name_;
};

enum class LPStatus { Optimal, Feasible, Infeasible, Unbounded };
const char* to_string(LPStatus s);

struct LPSolution {
    LPStatus status = LPStatus::Infeasible;
    std::vector<double> values;  // indexed like the program's variables; empty when infeasible
    double objective = 0.0;
    double max_violation = 0.0;
    long iterations = 0;
    std::string solver;  // "simplex", "presolve" or "external"

    bool has_point() const { return status == LPStatus::Optimal || status == LPStatus::Feasible; }
};

struct SolverOptions {
    double tolerance = kLpTolerance;
    bool presolve = true;
    // Honour SPANNERFORGE_LP_CMD when it is set.
    bool allow_external = true;
    long iteration_limit = 0;  // 0 picks a size-based limit
};

// Returns an optimal point, or any feasible point when there is no objective.
// Throws NumericalError when the embedded solver cannot certify its answer.
LPSolution solve(const LinearProgram& lp, const SolverOptions& options = {});

// Largest bound or row violation of x; x must have one entry per variable.
double max_violation(const LinearProgram& lp, std::span<const double> x);
// Row activity minus rhs, signed so that positive means violated.
double row_violation(const Row& row, std::span<const double> x);

}  // namespace spannerforge

#endif
