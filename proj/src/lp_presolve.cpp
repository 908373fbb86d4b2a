#include <cmath>
#include <utility>

#include "lp_internal.hpp"

namespace spannerforge::detail {

namespace {

constexpr double kFeasTol = 1e-9;   // decides infeasibility
constexpr double kExactTol = 1e-12; // decides redundancy and forcing

struct Workspace {
    const BoundedProblem& p;
    std::vector<std::vector<std::pair<int, double>>> rows;  // (column, coef)
    std::vector<double> lo, hi, rlo, rhi;
    std::vector<char> row_alive, col_alive;
    std::vector<double> fixed;
    bool infeasible = false;
    std::string reason;

    explicit Workspace(const BoundedProblem& prob)
        : p(prob), rows(prob.m), lo(prob.lo), hi(prob.hi), rlo(prob.row_lo), rhi(prob.row_hi),
          row_alive(prob.m, 1), col_alive(prob.n, 1), fixed(prob.n, std::nan("")) {
        for (int j = 0; j < p.n; ++j)
            for (int k = p.col_start[j]; k < p.col_start[j + 1]; ++k)
                rows[p.row_index[k]].push_back({j, p.value[k]});
    }

    void fail(std::string why) {
        if (!infeasible) reason = std::move(why);
        infeasible = true;
    }

    void fix(int j, double v) {
        if (!col_alive[j]) return;
        col_alive[j] = 0;
        fixed[j] = v;
        lo[j] = hi[j] = v;
        if (v == 0.0) return;
        for (int k = p.col_start[j]; k < p.col_start[j + 1]; ++k) {
            const int i = p.row_index[k];
            if (!row_alive[i]) continue;
            rlo[i] -= p.value[k] * v;
            rhi[i] -= p.value[k] * v;
        }
    }

    // Intersects [lo, hi] of column j with [a, b]; fixes it when the range closes.
    bool tighten(int j, double a, double b) {
        bool changed = false;
        if (a > lo[j]) { lo[j] = a; changed = true; }
        if (b < hi[j]) { hi[j] = b; changed = true; }
        if (lo[j] > hi[j] + kFeasTol) {
            fail("column bounds cross");
            return true;
        }
        if (hi[j] - lo[j] <= kExactTol) fix(j, lo[j]);
        return changed;
    }

    bool process_row(int i) {
        int count = 0, last = -1;
        double last_coef = 0.0;
        double minact = 0.0, maxact = 0.0;
        int mininf = 0, maxinf = 0;
        for (auto [j, a] : rows[i]) {
            if (!col_alive[j]) continue;
            ++count;
            last = j;
            last_coef = a;
            const double at_min = a > 0 ? lo[j] : hi[j];
            const double at_max = a > 0 ? hi[j] : lo[j];
            if (std::isinf(at_min)) ++mininf; else minact += a * at_min;
            if (std::isinf(at_max)) ++maxinf; else maxact += a * at_max;
        }
        if (count == 0) {
            if (rlo[i] > kFeasTol || rhi[i] < -kFeasTol) fail("empty row with nonzero requirement");
            row_alive[i] = 0;
            return true;
        }
        if (count == 1) {
            row_alive[i] = 0;
            double a = rlo[i] / last_coef, b = rhi[i] / last_coef;
            if (last_coef < 0) std::swap(a, b);
            tighten(last, a, b);
            return true;
        }
        if (mininf == 0 && minact > rhi[i] + kFeasTol) { fail("row activity exceeds its upper bound"); return true; }
        if (maxinf == 0 && maxact < rlo[i] - kFeasTol) { fail("row activity below its lower bound"); return true; }
        const bool lo_ok = std::isinf(rlo[i]) || (mininf == 0 && minact >= rlo[i] - kExactTol);
        const bool hi_ok = std::isinf(rhi[i]) || (maxinf == 0 && maxact <= rhi[i] + kExactTol);
        if (lo_ok && hi_ok) {
            row_alive[i] = 0;
            return true;
        }
        // Forcing rows: the only feasible completion puts every column at one bound.
        const bool force_min = mininf == 0 && std::isfinite(rhi[i]) && std::abs(minact - rhi[i]) <= kExactTol;
        const bool force_max = maxinf == 0 && std::isfinite(rlo[i]) && std::abs(maxact - rlo[i]) <= kExactTol;
        if (force_min || force_max) {
            row_alive[i] = 0;
            for (auto [j, a] : rows[i]) {
                if (!col_alive[j]) continue;
                const bool take_lo = force_min ? a > 0 : a < 0;
                fix(j, take_lo ? lo[j] : hi[j]);
            }
            return true;
        }
        return false;
    }

    // A column whose every row tolerates moving it one way, at no cost, goes to that bound.
    bool process_column(int j) {
        bool down_ok = p.cost[j] >= 0 && std::isfinite(lo[j]);
        bool up_ok = p.cost[j] <= 0 && std::isfinite(hi[j]);
        for (int k = p.col_start[j]; k < p.col_start[j + 1] && (down_ok || up_ok); ++k) {
            const int i = p.row_index[k];
            if (!row_alive[i]) continue;
            const double a = p.value[k];
            // Decreasing x lowers activity when a > 0.
            const bool down_safe = a > 0 ? std::isinf(rlo[i]) : std::isinf(rhi[i]);
            const bool up_safe = a > 0 ? std::isinf(rhi[i]) : std::isinf(rlo[i]);
            down_ok = down_ok && down_safe;
            up_ok = up_ok && up_safe;
        }
        if (down_ok) { fix(j, lo[j]); return true; }
        if (up_ok) { fix(j, hi[j]); return true; }
        return false;
    }
};

}  // namespace

Reduction presolve(const BoundedProblem& p) {
    Workspace w(p);
    for (int j = 0; j < p.n && !w.infeasible; ++j)
        if (w.hi[j] - w.lo[j] <= kExactTol) w.fix(j, w.lo[j]);
    bool changed = true;
    for (int pass = 0; changed && !w.infeasible && pass < 100; ++pass) {
        changed = false;
        for (int i = 0; i < p.m && !w.infeasible; ++i)
            if (w.row_alive[i] && w.process_row(i)) changed = true;
        for (int j = 0; j < p.n && !w.infeasible; ++j)
            if (w.col_alive[j] && w.process_column(j)) changed = true;
    }

    Reduction out;
    if (w.infeasible) {
        out.outcome = Reduction::Outcome::Infeasible;
        out.reason = w.reason;
        return out;
    }
    out.fixed = w.fixed;
    std::vector<int> new_row(p.m, -1);
    BoundedProblem& r = out.reduced;
    for (int i = 0; i < p.m; ++i)
        if (w.row_alive[i]) {
            new_row[i] = r.m++;
            r.row_lo.push_back(w.rlo[i]);
            r.row_hi.push_back(w.rhi[i]);
        }
    for (int j = 0; j < p.n; ++j) {
        if (!w.col_alive[j]) continue;
        out.kept_columns.push_back(j);
        for (int k = p.col_start[j]; k < p.col_start[j + 1]; ++k) {
            const int i = new_row[p.row_index[k]];
            if (i < 0) continue;
            r.row_index.push_back(i);
            r.value.push_back(p.value[k]);
        }
        r.col_start.push_back(static_cast<int>(r.row_index.size()));
        r.cost.push_back(p.cost[j]);
        r.lo.push_back(w.lo[j]);
        r.hi.push_back(w.hi[j]);
        ++r.n;
    }
    return out;
}

}  // namespace spannerforge::detail
