// Bounded-variable revised primal simplex. Each row i gets a logical column
// -e_i with bounds [row_lo, row_hi], so A x - s = 0. Rows whose starting logical
// value is out of range get an artificial column; phase one drives those to zero.
//
// The basis is factored as unit columns (logicals, artificials) plus the square
// block of structural columns on the rows the unit columns leave uncovered; only
// that block goes through the sparse LU. Updates are product-form etas, and
// reduced costs are kept current from the pivot row.
#include <algorithm>
#include <cmath>

#include "lp_factor.hpp"
#include "lp_internal.hpp"
#include "spannerforge/errors.hpp"

namespace spannerforge::detail {

namespace {

constexpr double kPrimalTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-7;
constexpr int kRefactorEvery = 100;
constexpr int kStallLimit = 50;

enum class State : char { Basic, Lower, Upper, Zero };

struct Eta {
    int r;
    double pivot;
    std::vector<int> idx;
    std::vector<double> val;
};

class Simplex {
public:
    Simplex(const BoundedProblem& p, long limit) : p_(p), m_(p.m), n_(p.n), limit_(limit) {
        std::vector<int> count(m_, 0);
        for (int k = 0; k < p_.col_start[n_]; ++k) ++count[p_.row_index[k]];
        row_start_.assign(m_ + 1, 0);
        for (int i = 0; i < m_; ++i) row_start_[i + 1] = row_start_[i] + count[i];
        row_col_.resize(row_start_[m_]);
        row_val_.resize(row_start_[m_]);
        std::vector<int> fill(row_start_.begin(), row_start_.end() - 1);
        for (int j = 0; j < n_; ++j)
            for (int k = p_.col_start[j]; k < p_.col_start[j + 1]; ++k) {
                const int i = p_.row_index[k];
                row_col_[fill[i]] = j;
                row_val_[fill[i]++] = p_.value[k];
            }
    }

    SimplexResult run() {
        std::vector<double> start(n_);
        for (int j = 0; j < n_; ++j) start[j] = resting_value(p_.lo[j], p_.hi[j]);
        SimplexResult out;
        for (int attempt = 0; attempt < 4; ++attempt) {
            setup(start);
            Outcome o = solve_phases();
            out.iterations = iterations_;
            // A basis that lost accuracy shows up as out-of-bound basics once refactored.
            if (o == Outcome::Optimal && (!refactor() || !primal_ok())) o = Outcome::Singular;
            if (o == Outcome::Singular) {
                // Restart from the logical basis with basic columns pushed to a bound.
                for (int j = 0; j < n_; ++j) start[j] = snap(j, x_[j]);
                continue;
            }
            out.status = o == Outcome::Optimal ? LPStatus::Optimal
                       : o == Outcome::Infeasible ? LPStatus::Infeasible
                                                  : LPStatus::Unbounded;
            if (out.status == LPStatus::Optimal) out.x.assign(x_.begin(), x_.begin() + n_);
            return out;
        }
        throw NumericalError("simplex: basis kept turning singular");
    }

private:
    enum class Outcome { Optimal, Infeasible, Unbounded, Singular };

    static double resting_value(double lo, double hi) {
        if (std::isfinite(lo)) return lo;
        if (std::isfinite(hi)) return hi;
        return 0.0;
    }

    double snap(int j, double v) const {
        const double lo = p_.lo[j], hi = p_.hi[j];
        if (std::isfinite(lo) && std::isfinite(hi)) return (v - lo <= hi - v) ? lo : hi;
        if (std::isfinite(lo)) return lo;
        if (std::isfinite(hi)) return hi;
        return 0.0;
    }

    bool is_unit(int j) const { return j >= n_; }
    int unit_row(int j) const { return j < n_ + m_ ? j - n_ : art_row_[j - n_ - m_]; }
    double unit_coef(int j) const { return j < n_ + m_ ? -1.0 : art_sign_[j - n_ - m_]; }

    template <class F>
    void for_column(int j, F&& f) const {
        if (j < n_) {
            for (int k = p_.col_start[j]; k < p_.col_start[j + 1]; ++k) f(p_.row_index[k], p_.value[k]);
        } else {
            f(unit_row(j), unit_coef(j));
        }
    }

    void setup(const std::vector<double>& start) {
        art_row_.clear();
        art_sign_.clear();
        const int base = n_ + m_;
        lo_.assign(base, 0.0);
        hi_.assign(base, 0.0);
        x_.assign(base, 0.0);
        state_.assign(base, State::Lower);
        for (int j = 0; j < n_; ++j) {
            lo_[j] = p_.lo[j];
            hi_[j] = p_.hi[j];
            x_[j] = start[j];
            state_[j] = rest_state(j, start[j]);
        }
        std::vector<double> act(m_, 0.0);
        for (int j = 0; j < n_; ++j)
            if (x_[j] != 0.0)
                for_column(j, [&](int i, double a) { act[i] += a * x_[j]; });
        basis_.assign(m_, -1);
        for (int i = 0; i < m_; ++i) {
            const int s = n_ + i;
            lo_[s] = p_.row_lo[i];
            hi_[s] = p_.row_hi[i];
            if (act[i] >= lo_[s] - kPrimalTol && act[i] <= hi_[s] + kPrimalTol) {
                x_[s] = act[i];
                state_[s] = State::Basic;
                basis_[i] = s;
            } else {
                const double bound = act[i] < lo_[s] ? lo_[s] : hi_[s];
                x_[s] = bound;
                state_[s] = bound == lo_[s] ? State::Lower : State::Upper;
                art_row_.push_back(i);
                art_sign_.push_back(bound > act[i] ? 1.0 : -1.0);
            }
        }
        for (std::size_t a = 0; a < art_row_.size(); ++a) {
            const int j = base + static_cast<int>(a);
            const int i = art_row_[a];
            lo_.push_back(0.0);
            hi_.push_back(kInfinity);
            x_.push_back(std::abs(x_[n_ + i] - act[i]));
            state_.push_back(State::Basic);
            basis_[i] = j;
        }
        total_ = static_cast<int>(x_.size());
        cost_.assign(total_, 0.0);
        d_.assign(total_, 0.0);
        refactor_failed_ = !refactor();
    }

    State rest_state(int j, double v) const {
        if (lo_[j] == hi_[j]) return State::Lower;
        if (std::isfinite(lo_[j]) && v == lo_[j]) return State::Lower;
        if (std::isfinite(hi_[j]) && v == hi_[j]) return State::Upper;
        return State::Zero;
    }

    // Rebuilds the factorization from basis_. Dependent structural columns are
    // swapped for logicals of the rows left without a pivot; that moves the
    // primal point, so it fails when the point leaves its bounds.
    bool refactor() {
        etas_.clear();
        eta_nnz_ = 0;
        unit_pos_of_row_.assign(m_, -1);
        struct_pos_.clear();
        factored_ = basis_;
        for (int r = 0; r < m_; ++r)
            if (is_unit(basis_[r])) unit_pos_of_row_[unit_row(basis_[r])] = r;
            else struct_pos_.push_back(r);
        local_row_.assign(m_, -1);
        bump_rows_.clear();
        for (int i = 0; i < m_; ++i)
            if (unit_pos_of_row_[i] < 0) {
                local_row_[i] = static_cast<int>(bump_rows_.size());
                bump_rows_.push_back(i);
            }
        if (bump_rows_.size() != struct_pos_.size()) return false;
        const int k = static_cast<int>(struct_pos_.size());
        std::vector<SparseLu::Column> cols(k);
        for (int c = 0; c < k; ++c)
            for_column(basis_[struct_pos_[c]], [&](int i, double a) {
                if (local_row_[i] >= 0) {
                    cols[c].rows.push_back(local_row_[i]);
                    cols[c].values.push_back(a);
                }
            });
        lu_.factor(k, cols);
        if (lu_.rank() < k) {
            const std::vector<int> free_rows = lu_.unpivoted_rows();
            const std::vector<int> dep = lu_.dependent_columns();
            for (std::size_t t = 0; t < dep.size(); ++t) {
                const int r = struct_pos_[dep[t]];
                const int j = basis_[r];
                x_[j] = snap(j, x_[j]);
                state_[j] = rest_state(j, x_[j]);
                const int i = bump_rows_[free_rows[t]];
                basis_[r] = n_ + i;
                state_[n_ + i] = State::Basic;
            }
            return refactor() && primal_ok();
        }
        recompute_basics();
        recompute_duals();
        return true;
    }

    bool primal_ok() const {
        for (int r = 0; r < m_; ++r) {
            const int b = basis_[r];
            if (x_[b] < lo_[b] - 1e-7 || x_[b] > hi_[b] + 1e-7) return false;
        }
        return true;
    }

    // v: row space in, position space out.
    void ftran(std::vector<double>& v) {
        const int k = static_cast<int>(struct_pos_.size());
        bump_.assign(k, 0.0);
        for (int t = 0; t < k; ++t) bump_[t] = v[bump_rows_[t]];
        lu_.solve(bump_);
        out_.assign(m_, 0.0);
        for (int t = 0; t < k; ++t) {
            const double z = bump_[t];
            const int r = struct_pos_[t];
            out_[r] = z;
            if (z == 0.0) continue;
            for_column(factored_[r], [&](int i, double a) {
                if (local_row_[i] < 0) v[i] -= a * z;
            });
        }
        for (int i = 0; i < m_; ++i) {
            const int r = unit_pos_of_row_[i];
            if (r >= 0) out_[r] = v[i] / unit_coef(factored_[r]);
        }
        v.swap(out_);
        for (const Eta& e : etas_) {
            const double yr = v[e.r] / e.pivot;
            v[e.r] = yr;
            if (yr == 0.0) continue;
            for (std::size_t t = 0; t < e.idx.size(); ++t) v[e.idx[t]] -= e.val[t] * yr;
        }
    }

    // v: position space in, row space out.
    void btran(std::vector<double>& v) {
        for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
            double s = v[it->r];
            for (std::size_t t = 0; t < it->idx.size(); ++t) s -= it->val[t] * v[it->idx[t]];
            v[it->r] = s / it->pivot;
        }
        out_.assign(m_, 0.0);
        for (int i = 0; i < m_; ++i) {
            const int r = unit_pos_of_row_[i];
            if (r >= 0) out_[i] = v[r] / unit_coef(factored_[r]);
        }
        const int k = static_cast<int>(struct_pos_.size());
        bump_.assign(k, 0.0);
        for (int t = 0; t < k; ++t) {
            double s = v[struct_pos_[t]];
            for_column(factored_[struct_pos_[t]], [&](int i, double a) {
                if (local_row_[i] < 0) s -= a * out_[i];
            });
            bump_[t] = s;
        }
        lu_.solve_transposed(bump_);
        for (int t = 0; t < k; ++t) out_[bump_rows_[t]] = bump_[t];
        v.swap(out_);
    }

    void recompute_basics() {
        std::vector<double> rhs(m_, 0.0);
        for (int j = 0; j < total_; ++j)
            if (state_[j] != State::Basic && x_[j] != 0.0)
                for_column(j, [&](int i, double a) { rhs[i] -= a * x_[j]; });
        ftran(rhs);
        for (int r = 0; r < m_; ++r) x_[basis_[r]] = rhs[r];
    }

    void recompute_duals() {
        std::vector<double> pi(m_);
        for (int r = 0; r < m_; ++r) pi[r] = cost_[basis_[r]];
        btran(pi);
        for (int j = 0; j < total_; ++j) {
            if (state_[j] == State::Basic) {
                d_[j] = 0.0;
                continue;
            }
            double d = cost_[j];
            for_column(j, [&](int i, double a) { d -= pi[i] * a; });
            d_[j] = d;
        }
    }

    double objective() const {
        double s = 0.0;
        for (int j = 0; j < total_; ++j)
            if (cost_[j] != 0.0) s += cost_[j] * x_[j];
        return s;
    }

    bool artificials_clear() const {
        for (int j = n_ + m_; j < total_; ++j)
            if (x_[j] > kPrimalTol) return false;
        return true;
    }

    Outcome solve_phases() {
        if (refactor_failed_) return Outcome::Singular;
        if (!art_row_.empty()) {
            for (int j = n_ + m_; j < total_; ++j) cost_[j] = 1.0;
            recompute_duals();
            const Outcome o = iterate(true);
            if (o == Outcome::Singular) return o;
            if (objective() > kPrimalTol * std::max(1.0, static_cast<double>(art_row_.size())))
                return Outcome::Infeasible;
            for (int j = n_ + m_; j < total_; ++j) {
                cost_[j] = 0.0;
                hi_[j] = 0.0;
                if (state_[j] != State::Basic) {
                    x_[j] = 0.0;
                    state_[j] = State::Lower;
                }
            }
        }
        bool has_cost = false;
        for (int j = 0; j < n_; ++j) {
            cost_[j] = p_.cost[j];
            has_cost = has_cost || cost_[j] != 0.0;
        }
        if (!has_cost) return Outcome::Optimal;
        recompute_duals();
        return iterate(false);
    }

    bool eligible(int j) const {
        if (state_[j] == State::Basic || lo_[j] == hi_[j]) return false;
        const double d = d_[j];
        const bool up = (state_[j] == State::Lower || state_[j] == State::Zero) && d < -kDualTol;
        const bool down = (state_[j] == State::Upper || state_[j] == State::Zero) && d > kDualTol;
        return up || down;
    }

    Outcome iterate(bool phase_one) {
        std::vector<double> col(m_), rho(m_), alpha_row(total_, 0.0);
        std::vector<int> touched, nz;
        int stall = 0;
        bool bland = false;
        weight_.assign(total_, 1.0);
        while (true) {
            if (phase_one && artificials_clear()) return Outcome::Optimal;
            if (++iterations_ > limit_) throw NumericalError("simplex: iteration limit reached");
            if ((static_cast<int>(etas_.size()) >= kRefactorEvery ||
                 eta_nnz_ > 4 * (lu_.nonzeros() + static_cast<std::size_t>(m_))) &&
                !refactor())
                return Outcome::Singular;

            // Devex pricing: largest d_j^2 / w_j.
            int q = -1;
            double best = 0.0;
            for (int j = 0; j < total_; ++j) {
                if (!eligible(j)) continue;
                if (bland) {
                    q = j;
                    break;
                }
                const double score = d_[j] * d_[j] / weight_[j];
                if (score > best) {
                    best = score;
                    q = j;
                }
            }
            if (q < 0) {
                // Confirm with fresh duals before declaring optimality.
                if (!refactor()) return Outcome::Singular;
                bool any = false;
                for (int j = 0; j < total_ && !any; ++j) any = eligible(j);
                if (!any) return Outcome::Optimal;
                continue;
            }
            const double dq = d_[q];
            const double dir = dq < 0 ? 1.0 : -1.0;

            std::fill(col.begin(), col.end(), 0.0);
            for_column(q, [&](int i, double a) { col[i] += a; });
            ftran(col);

            nz.clear();
            for (int r = 0; r < m_; ++r)
                if (std::abs(col[r]) > kPivotTol) nz.push_back(r);
                else if (std::abs(col[r]) <= 1e-14) col[r] = 0.0;

            // Ratio test; basic r changes at rate g = -dir * col[r].
            int leave = -1;
            double theta = kInfinity;
            if (!bland) {
                double bound = kInfinity;
                for (int r : nz) {
                    const double g = -dir * col[r];
                    const int b = basis_[r];
                    const double lim = g < 0 ? (x_[b] - lo_[b] + kPrimalTol) / -g
                                             : (hi_[b] + kPrimalTol - x_[b]) / g;
                    bound = std::min(bound, lim);
                }
                double best_g = 0.0;
                for (int r : nz) {
                    const double g = -dir * col[r];
                    const int b = basis_[r];
                    const double ratio = g < 0 ? (x_[b] - lo_[b]) / -g : (hi_[b] - x_[b]) / g;
                    if (ratio <= bound && std::abs(g) > best_g) {
                        best_g = std::abs(g);
                        leave = r;
                        theta = std::max(0.0, ratio);
                    }
                }
            } else {
                for (int r : nz) {
                    const double g = -dir * col[r];
                    const int b = basis_[r];
                    const double ratio = std::max(0.0, g < 0 ? (x_[b] - lo_[b]) / -g : (hi_[b] - x_[b]) / g);
                    if (ratio < theta - 1e-12 || (ratio <= theta + 1e-12 && leave >= 0 && b < basis_[leave])) {
                        theta = std::min(theta, ratio);
                        leave = r;
                    }
                }
            }
            const double range = hi_[q] - lo_[q];
            if (range <= theta) {
                // Bound flip: the entering column crosses its whole range first.
                theta = range;
                leave = -1;
            }
            if (!std::isfinite(theta)) return Outcome::Unbounded;

            if (theta * std::abs(dq) <= 1e-12) {
                if (++stall > kStallLimit) bland = true;
            } else {
                stall = 0;
                bland = false;
            }

            if (theta != 0.0)
                for (int r = 0; r < m_; ++r)
                    if (col[r] != 0.0) x_[basis_[r]] -= dir * theta * col[r];
            x_[q] += dir * theta;

            if (leave < 0) {
                state_[q] = dir > 0 ? State::Upper : State::Lower;
                x_[q] = dir > 0 ? hi_[q] : lo_[q];
                continue;
            }

            // Pivot row e_r^T B^-1 [A -I art] for the reduced-cost update.
            std::fill(rho.begin(), rho.end(), 0.0);
            rho[leave] = 1.0;
            btran(rho);
            touched.clear();
            auto add = [&](int j, double v) {
                if (alpha_row[j] == 0.0) touched.push_back(j);
                alpha_row[j] += v;
                if (alpha_row[j] == 0.0) alpha_row[j] = 1e-300;  // keep it marked
            };
            for (int i = 0; i < m_; ++i) {
                const double ri = rho[i];
                if (ri == 0.0) continue;
                for (int t = row_start_[i]; t < row_start_[i + 1]; ++t) add(row_col_[t], ri * row_val_[t]);
                add(n_ + i, -ri);
            }
            for (std::size_t a = 0; a < art_row_.size(); ++a) {
                const double ri = rho[art_row_[a]];
                if (ri != 0.0) add(n_ + m_ + static_cast<int>(a), ri * art_sign_[a]);
            }
            const double arq = alpha_row[q];
            const bool unstable = std::abs(arq - col[leave]) > 1e-7 * (1.0 + std::abs(col[leave]));

            const int out = basis_[leave];
            const double g = -dir * col[leave];
            x_[out] = g < 0 ? lo_[out] : hi_[out];
            state_[out] = g < 0 ? State::Lower : State::Upper;
            if (out >= n_ + m_) {
                // Artificials never come back.
                hi_[out] = 0.0;
                x_[out] = 0.0;
                state_[out] = State::Lower;
            }
            state_[q] = State::Basic;
            basis_[leave] = q;

            const double theta_d = dq / col[leave];
            const double wq = weight_[q];
            for (int j : touched) {
                if (state_[j] != State::Basic) {
                    d_[j] -= theta_d * alpha_row[j];
                    const double ratio = alpha_row[j] / arq;
                    weight_[j] = std::max(weight_[j], ratio * ratio * wq);
                }
                alpha_row[j] = 0.0;
            }
            weight_[out] = std::max(wq / (arq * arq), 1.0);
            if (weight_[out] > 1e8) std::fill(weight_.begin(), weight_.end(), 1.0);
            d_[out] = -theta_d;
            d_[q] = 0.0;

            Eta e;
            e.r = leave;
            e.pivot = col[leave];
            for (int r = 0; r < m_; ++r)
                if (r != leave && col[r] != 0.0) {
                    e.idx.push_back(r);
                    e.val.push_back(col[r]);
                }
            eta_nnz_ += e.idx.size();
            etas_.push_back(std::move(e));
            if (unstable && !refactor()) return Outcome::Singular;
        }
    }

    const BoundedProblem& p_;
    const int m_, n_;
    const long limit_;
    long iterations_ = 0;
    int total_ = 0;
    bool refactor_failed_ = false;
    std::vector<int> row_start_, row_col_;
    std::vector<double> row_val_;
    std::vector<double> lo_, hi_, x_, cost_, d_, weight_;
    std::vector<State> state_;
    std::vector<int> basis_;
    std::vector<int> factored_;  // basis_ at the last refactor
    std::vector<int> art_row_;
    std::vector<double> art_sign_;
    std::vector<int> unit_pos_of_row_, struct_pos_, local_row_, bump_rows_;
    std::vector<double> bump_, out_;
    SparseLu lu_;
    std::vector<Eta> etas_;
    std::size_t eta_nnz_ = 0;
};

}  // namespace

SimplexResult run_simplex(const BoundedProblem& p, long iteration_limit) {
    return Simplex(p, iteration_limit).run();
}

}  // namespace spannerforge::detail
