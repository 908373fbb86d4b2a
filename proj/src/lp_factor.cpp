#include "lp_factor.hpp"

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCore>
#include <cmath>
#include <utility>

namespace spannerforge::detail {

namespace {

constexpr double kSingularTol = 1e-11;
constexpr double kThreshold = 0.1;

std::vector<int> colamd_order(int k, const std::vector<SparseLu::Column>& cols) {
    std::vector<Eigen::Triplet<double>> trip;
    for (int j = 0; j < k; ++j)
        for (std::size_t t = 0; t < cols[j].rows.size(); ++t) trip.emplace_back(cols[j].rows[t], j, 1.0);
    Eigen::SparseMatrix<double> a(k, k);
    a.setFromTriplets(trip.begin(), trip.end());
    a.makeCompressed();
    Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> perm;
    Eigen::COLAMDOrdering<int> ord;
    ord(a, perm);
    std::vector<int> order(k);
    for (int j = 0; j < k; ++j) order[perm.indices()[j]] = j;
    return order;
}

}  // namespace

void SparseLu::factor(int k, const std::vector<Column>& cols) {
    k_ = k;
    step_row_.clear();
    step_col_.clear();
    row_step_.assign(k, -1);
    diag_.clear();
    l_start_.assign(1, 0);
    l_rows_.clear();
    l_vals_.clear();
    u_start_.assign(1, 0);
    u_steps_.clear();
    u_vals_.clear();
    dependent_.clear();
    if (k == 0) return;

    std::vector<int> row_count(k, 0);
    for (const Column& c : cols)
        for (int r : c.rows) ++row_count[r];

    std::vector<double> x(k, 0.0);
    std::vector<char> mark(k, 0);
    std::vector<int> pattern, topo, stack_row, stack_pos;
    for (int j : colamd_order(k, cols)) {
        // Reach of the column's rows through pivoted rows, in topological order.
        pattern.clear();
        topo.clear();
        for (int r0 : cols[j].rows) {
            if (mark[r0]) continue;
            mark[r0] = 1;
            stack_row.assign(1, r0);
            stack_pos.assign(1, 0);
            while (!stack_row.empty()) {
                const int r = stack_row.back();
                const int s = row_step_[r];
                int& pos = stack_pos.back();
                bool pushed = false;
                if (s >= 0) {
                    while (l_start_[s] + pos < l_start_[s + 1]) {
                        const int c = l_rows_[l_start_[s] + pos++];
                        if (!mark[c]) {
                            mark[c] = 1;
                            stack_row.push_back(c);
                            stack_pos.push_back(0);
                            pushed = true;
                            break;
                        }
                    }
                }
                if (!pushed) {
                    topo.push_back(r);
                    stack_row.pop_back();
                    stack_pos.pop_back();
                }
            }
        }
        double norm = 0.0;
        for (std::size_t t = 0; t < cols[j].rows.size(); ++t) {
            x[cols[j].rows[t]] += cols[j].values[t];
            norm = std::max(norm, std::abs(cols[j].values[t]));
        }
        for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
            const int r = *it;
            mark[r] = 0;
            pattern.push_back(r);
            const int s = row_step_[r];
            if (s < 0 || x[r] == 0.0) continue;
            const double v = x[r];
            for (int t = l_start_[s]; t < l_start_[s + 1]; ++t) x[l_rows_[t]] -= l_vals_[t] * v;
        }

        double amax = 0.0;
        for (int r : pattern)
            if (row_step_[r] < 0) amax = std::max(amax, std::abs(x[r]));
        if (amax <= kSingularTol * std::max(1.0, norm)) {
            dependent_.push_back(j);
            for (int r : pattern) x[r] = 0.0;
            continue;
        }
        int piv = -1;
        for (int r : pattern)
            if (row_step_[r] < 0 && std::abs(x[r]) >= kThreshold * amax &&
                (piv < 0 || row_count[r] < row_count[piv] ||
                 (row_count[r] == row_count[piv] && std::abs(x[r]) > std::abs(x[piv]))))
                piv = r;

        const int step = static_cast<int>(step_col_.size());
        const double d = x[piv];
        for (int r : pattern) {
            const int s = row_step_[r];
            if (s >= 0) {
                if (x[r] != 0.0) {
                    u_steps_.push_back(s);
                    u_vals_.push_back(x[r]);
                }
            } else if (r != piv && x[r] != 0.0) {
                l_rows_.push_back(r);
                l_vals_.push_back(x[r] / d);
            }
            x[r] = 0.0;
        }
        l_start_.push_back(static_cast<int>(l_rows_.size()));
        u_start_.push_back(static_cast<int>(u_steps_.size()));
        step_row_.push_back(piv);
        step_col_.push_back(j);
        row_step_[piv] = step;
        diag_.push_back(d);
    }
}

std::vector<int> SparseLu::unpivoted_rows() const {
    std::vector<int> out;
    for (int r = 0; r < k_; ++r)
        if (row_step_[r] < 0) out.push_back(r);
    return out;
}

void SparseLu::solve(std::vector<double>& b) const {
    const int steps = rank();
    for (int s = 0; s < steps; ++s) {
        const double v = b[step_row_[s]];
        if (v == 0.0) continue;
        for (int t = l_start_[s]; t < l_start_[s + 1]; ++t) b[l_rows_[t]] -= l_vals_[t] * v;
    }
    work_.assign(steps, 0.0);
    for (int s = 0; s < steps; ++s) work_[s] = b[step_row_[s]];
    for (int s = steps - 1; s >= 0; --s) {
        if (work_[s] == 0.0) continue;
        const double z = work_[s] / diag_[s];
        work_[s] = z;
        for (int t = u_start_[s]; t < u_start_[s + 1]; ++t) work_[u_steps_[t]] -= u_vals_[t] * z;
    }
    for (int s = 0; s < steps; ++s) b[step_col_[s]] = work_[s];
}

void SparseLu::solve_transposed(std::vector<double>& c) const {
    const int steps = rank();
    work_.assign(steps, 0.0);
    for (int s = 0; s < steps; ++s) {
        double v = c[step_col_[s]];
        for (int t = u_start_[s]; t < u_start_[s + 1]; ++t) v -= u_vals_[t] * work_[u_steps_[t]];
        work_[s] = v / diag_[s];
    }
    for (int s = steps - 1; s >= 0; --s) {
        double v = work_[s];
        for (int t = l_start_[s]; t < l_start_[s + 1]; ++t) v -= l_vals_[t] * c[l_rows_[t]];
        c[step_row_[s]] = v;
    }
}

}  // namespace spannerforge::detail
