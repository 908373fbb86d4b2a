#ifndef SPANNERFORGE_LP_FACTOR_HPP
#define SPANNERFORGE_LP_FACTOR_HPP

#include <vector>

namespace spannerforge::detail {

// Left-looking sparse LU (Gilbert-Peierls) with threshold partial pivoting of a
// square matrix given by columns. Columns that find no acceptable pivot are
// reported as dependent instead of failing, so the caller can patch the basis.
class SparseLu {
public:
    struct Column {
        std::vector<int> rows;
        std::vector<double> values;
    };

    // cols.size() == k; row indices in [0, k).
    void factor(int k, const std::vector<Column>& cols);

    int size() const { return k_; }
    int rank() const { return static_cast<int>(step_col_.size()); }
    const std::vector<int>& dependent_columns() const { return dependent_; }
    // Rows never chosen as pivots (as many as dependent columns).
    std::vector<int> unpivoted_rows() const;
    std::size_t nonzeros() const { return l_rows_.size() + u_steps_.size() + step_col_.size(); }

    // Solves M z = b in place: b indexed by row on entry, z indexed by column on exit.
    // Only valid at full rank.
    void solve(std::vector<double>& b) const;
    // Solves M^T p = c in place: c indexed by column on entry, p indexed by row on exit.
    void solve_transposed(std::vector<double>& c) const;

private:
    int k_ = 0;
    std::vector<int> step_row_, step_col_;  // pivot row / column of each step
    std::vector<int> row_step_;             // -1 when unpivoted
    std::vector<double> diag_;
    // L column of each step: multipliers at rows pivoted later.
    std::vector<int> l_start_{0}, l_rows_;
    std::vector<double> l_vals_;
    // U column of each step, diagonal excluded: (earlier step, value).
    std::vector<int> u_start_{0}, u_steps_;
    std::vector<double> u_vals_;
    std::vector<int> dependent_;
    mutable std::vector<double> work_;
};

}  // namespace spannerforge::detail

#endif
