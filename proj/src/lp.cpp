#include "nslice/lp.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <stdexcept>

namespace nslice {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr int kRefactorEvery = 100;
constexpr int kStallLimit = 200;  // degenerate iterations before Bland's rule

enum VarState : signed char { kStBasic = 0, kStLower = 1, kStUpper = 2, kStFree = 3 };

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

// Computational form: min c.x s.t. S.x + D.s = b with one slack per row
// (D = diag(+1) for <=/= rows, diag(-1) for >= rows) and bounds on everything.
// Rows are scaled so the largest structural coefficient is 1 in magnitude;
// slack bounds ([0,inf) or [0,0]) are scale invariant.
class Simplex {
public:
    explicit Simplex(const LPModel& model, const SimplexBasis* warm) : model_(model) {
        build();
        if (!init_basis(warm)) init_cold();
        if (!refactorize()) {
            init_cold();
            refactorize();
        }
        compute_basics();
    }

    LPSolution run() {
        LPSolution out;
        const int cap = 50 * (m_ + n_);
        int phase = 1;
        while (true) {
            if (pivots_ > cap) return finish_numerical(out);
            if (phase == 1 && max_violation() <= kFeasTol) {
                phase = 2;
                stall_ = 0;
                best_measure_ = kInf;
            }

            Vector y = prices(phase);
            int enter = -1, dir = 0;
            double enter_rc = 0.0;
            price_entering(phase, y, enter, dir, enter_rc);
            if (enter < 0) {
                if (phase == 1) return finish_infeasible(out, y);
                return finish_optimal(out);
            }

            Vector w = ftran(enter);
            double t = kInf;
            int leave_row = -1;
            signed char leave_side = kStLower;
            ratio_test(phase, enter, dir, w, t, leave_row, leave_side);
            if (t == kInf) {
                if (phase == 2) return finish_unbounded(out);
                return finish_numerical(out);  // phase-1 objective is bounded
            }
            if (!apply_step(enter, dir, w, t, leave_row, leave_side))
                return finish_numerical(out);
            track_stall(phase);
        }
    }

private:
    const LPModel& model_;
    int n_ = 0, m_ = 0, total_ = 0;
    std::vector<double> lower_, upper_, cost_;
    std::vector<std::vector<std::pair<int, double>>> cols_;  // structural, scaled
    std::vector<double> slack_sign_;
    std::vector<double> rhs_;    // scaled
    std::vector<double> scale_;

    std::vector<int> basic_;
    std::vector<signed char> state_;
    std::vector<double> x_;
    Matrix binv_;
    int pivots_ = 0;
    int since_refactor_ = 0;
    bool bland_ = false;
    int stall_ = 0;
    double best_measure_ = kInf;

    void build() {
        n_ = model_.num_vars();
        m_ = model_.num_rows();
        total_ = n_ + m_;
        lower_.resize(total_);
        upper_.resize(total_);
        cost_.assign(total_, 0.0);
        cols_.assign(n_, {});
        slack_sign_.assign(m_, 1.0);
        rhs_.assign(m_, 0.0);
        scale_.assign(m_, 1.0);

        if (static_cast<int>(model_.objective.size()) != n_)
            throw std::invalid_argument("objective size does not match variable count");
        for (int j = 0; j < n_; ++j) {
            const auto& v = model_.variables[j];
            if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper)
                throw std::invalid_argument("bad bounds on variable " + v.name);
            lower_[j] = v.lower;
            upper_[j] = v.upper;
            cost_[j] = model_.objective[j];
        }

        // Accumulate duplicate coefficients, find row scales, transpose to columns.
        std::vector<std::map<int, double>> rows(m_);
        for (int i = 0; i < m_; ++i) {
            for (const auto& [j, a] : model_.constraints[i].coeffs) {
                if (j < 0 || j >= n_)
                    throw std::invalid_argument("constraint references unknown variable");
                if (!std::isfinite(a)) throw std::invalid_argument("non-finite coefficient");
                rows[i][j] += a;
            }
            double amax = 0.0;
            for (const auto& [j, a] : rows[i]) amax = std::max(amax, std::abs(a));
            scale_[i] = amax > 0 ? 1.0 / amax : 1.0;
            rhs_[i] = model_.constraints[i].rhs * scale_[i];
            for (const auto& [j, a] : rows[i])
                if (a != 0.0) cols_[j].push_back({i, a * scale_[i]});

            switch (model_.constraints[i].relation) {
                case Relation::LessEqual:
                    slack_sign_[i] = 1.0;
                    lower_[n_ + i] = 0.0;
                    upper_[n_ + i] = kInf;
                    break;
                case Relation::GreaterEqual:
                    slack_sign_[i] = -1.0;
                    lower_[n_ + i] = 0.0;
                    upper_[n_ + i] = kInf;
                    break;
                case Relation::Equal:
                    slack_sign_[i] = 1.0;
                    lower_[n_ + i] = 0.0;
                    upper_[n_ + i] = 0.0;
                    break;
            }
        }
    }

    void init_cold() {
        basic_.resize(m_);
        state_.assign(total_, kStLower);
        x_.assign(total_, 0.0);
        for (int j = 0; j < n_; ++j) {
            if (std::isfinite(lower_[j])) {
                state_[j] = kStLower;
                x_[j] = lower_[j];
            } else if (std::isfinite(upper_[j])) {
                state_[j] = kStUpper;
                x_[j] = upper_[j];
            } else {
                state_[j] = kStFree;
                x_[j] = 0.0;
            }
        }
        for (int i = 0; i < m_; ++i) {
            basic_[i] = n_ + i;
            state_[n_ + i] = kStBasic;
        }
    }

    bool init_basis(const SimplexBasis* warm) {
        if (!warm || warm->empty()) return false;
        if (static_cast<int>(warm->basic.size()) != m_ ||
            static_cast<int>(warm->state.size()) != total_)
            return false;
        int basics = 0;
        for (int j = 0; j < total_; ++j)
            if (warm->state[j] == kStBasic) ++basics;
        if (basics != m_) return false;
        for (int col : warm->basic)
            if (col < 0 || col >= total_ || warm->state[col] != kStBasic) return false;

        basic_ = warm->basic;
        state_ = warm->state;
        x_.assign(total_, 0.0);
        for (int j = 0; j < total_; ++j) {
            if (state_[j] == kStBasic) continue;
            if (state_[j] == kStLower && std::isfinite(lower_[j]))
                x_[j] = lower_[j];
            else if (state_[j] == kStUpper && std::isfinite(upper_[j]))
                x_[j] = upper_[j];
            else if (std::isfinite(lower_[j])) {
                state_[j] = kStLower;
                x_[j] = lower_[j];
            } else if (std::isfinite(upper_[j])) {
                state_[j] = kStUpper;
                x_[j] = upper_[j];
            } else {
                state_[j] = kStFree;
                x_[j] = 0.0;
            }
        }
        return true;
    }

    bool refactorize() {
        Matrix b = Matrix::Zero(m_, m_);
        for (int r = 0; r < m_; ++r) {
            int j = basic_[r];
            if (j < n_) {
                for (const auto& [row, a] : cols_[j]) b(row, r) = a;
            } else {
                b(j - n_, r) = slack_sign_[j - n_];
            }
        }
        Eigen::PartialPivLU<Matrix> lu(b);
        double dmin = kInf;
        for (int i = 0; i < m_; ++i) dmin = std::min(dmin, std::abs(lu.matrixLU()(i, i)));
        if (m_ > 0 && dmin < 1e-12) return false;
        binv_ = lu.inverse();
        since_refactor_ = 0;
        return true;
    }

    void compute_basics() {
        Vector rbar(m_);
        for (int i = 0; i < m_; ++i) rbar[i] = rhs_[i];
        for (int j = 0; j < total_; ++j) {
            if (state_[j] == kStBasic || x_[j] == 0.0) continue;
            if (j < n_) {
                for (const auto& [row, a] : cols_[j]) rbar[row] -= a * x_[j];
            } else {
                rbar[j - n_] -= slack_sign_[j - n_] * x_[j];
            }
        }
        Vector xb = binv_ * rbar;
        for (int r = 0; r < m_; ++r) x_[basic_[r]] = xb[r];
    }

    double violation_of(int j) const {
        if (x_[j] < lower_[j]) return lower_[j] - x_[j];
        if (x_[j] > upper_[j]) return x_[j] - upper_[j];
        return 0.0;
    }

    double max_violation() const {
        double v = 0.0;
        for (int r = 0; r < m_; ++r) v = std::max(v, violation_of(basic_[r]));
        return v;
    }

    double total_violation() const {
        double v = 0.0;
        for (int r = 0; r < m_; ++r) v += violation_of(basic_[r]);
        return v;
    }

    // Prices y with the phase-1 infeasibility gradient or the true costs.
    Vector prices(int phase) const {
        Vector y = Vector::Zero(m_);
        for (int r = 0; r < m_; ++r) {
            int j = basic_[r];
            double cb;
            if (phase == 1) {
                if (x_[j] < lower_[j] - kFeasTol)
                    cb = -1.0;
                else if (x_[j] > upper_[j] + kFeasTol)
                    cb = 1.0;
                else
                    continue;
            } else {
                cb = cost_[j];
                if (cb == 0.0) continue;
            }
            y += cb * binv_.row(r).transpose();
        }
        return y;
    }

    double reduced_cost(int phase, const Vector& y, int j) const {
        double c = phase == 2 ? cost_[j] : 0.0;
        if (j < n_) {
            for (const auto& [row, a] : cols_[j]) c -= a * y[row];
        } else {
            c -= slack_sign_[j - n_] * y[j - n_];
        }
        return c;
    }

    void price_entering(int phase, const Vector& y, int& enter, int& dir,
                        double& enter_rc) const {
        enter = -1;
        double best = kOptTol;
        for (int j = 0; j < total_; ++j) {
            if (state_[j] == kStBasic) continue;
            if (lower_[j] == upper_[j]) continue;
            double d = reduced_cost(phase, y, j);
            int cand_dir = 0;
            if (state_[j] == kStLower && d < -kOptTol)
                cand_dir = 1;
            else if (state_[j] == kStUpper && d > kOptTol)
                cand_dir = -1;
            else if (state_[j] == kStFree && std::abs(d) > kOptTol)
                cand_dir = d < 0 ? 1 : -1;
            if (cand_dir == 0) continue;
            if (bland_) {  // first eligible index
                enter = j;
                dir = cand_dir;
                enter_rc = d;
                return;
            }
            if (std::abs(d) > best) {
                best = std::abs(d);
                enter = j;
                dir = cand_dir;
                enter_rc = d;
            }
        }
    }

    Vector ftran(int j) const {
        Vector w = Vector::Zero(m_);
        if (j < n_) {
            for (const auto& [row, a] : cols_[j]) w += a * binv_.col(row);
        } else {
            w = slack_sign_[j - n_] * binv_.col(j - n_);
        }
        return w;
    }

    // First-breakpoint ratio test. In phase 1 a basic variable outside its
    // bounds blocks only when moving toward the violated bound; it leaves the
    // basis exactly at that bound.
    void ratio_test(int phase, int enter, int dir, const Vector& w, double& t,
                    int& leave_row, signed char& leave_side) const {
        t = kInf;
        leave_row = -1;
        if (std::isfinite(upper_[enter]) && std::isfinite(lower_[enter]))
            t = upper_[enter] - lower_[enter];  // bound flip
        for (int r = 0; r < m_; ++r) {
            double rate = -dir * w[r];
            if (std::abs(rate) <= kPivotTol) continue;
            int j = basic_[r];
            double tr;
            signed char side;
            if (phase == 1 && x_[j] < lower_[j] - kFeasTol) {
                if (rate <= 0) continue;
                tr = (lower_[j] - x_[j]) / rate;
                side = kStLower;
            } else if (phase == 1 && x_[j] > upper_[j] + kFeasTol) {
                if (rate >= 0) continue;
                tr = (upper_[j] - x_[j]) / rate;
                side = kStUpper;
            } else if (rate < 0) {
                if (!std::isfinite(lower_[j])) continue;
                tr = (lower_[j] - x_[j]) / rate;
                side = kStLower;
            } else {
                if (!std::isfinite(upper_[j])) continue;
                tr = (upper_[j] - x_[j]) / rate;
                side = kStUpper;
            }
            if (tr < 0) tr = 0;
            bool take = tr < t;
            if (bland_ && leave_row >= 0 && tr <= t + 1e-12 && !take)
                take = basic_[r] < basic_[leave_row];  // Bland tie-break
            if (take) {
                t = tr;
                leave_row = r;
                leave_side = side;
            }
        }
    }

    bool apply_step(int enter, int dir, const Vector& w, double t, int leave_row,
                    signed char leave_side) {
        ++pivots_;
        if (leave_row < 0) {
            // bound flip
            for (int r = 0; r < m_; ++r) x_[basic_[r]] -= t * dir * w[r];
            x_[enter] = state_[enter] == kStLower ? upper_[enter] : lower_[enter];
            state_[enter] = state_[enter] == kStLower ? kStUpper : kStLower;
            return true;
        }
        double piv = w[leave_row];
        if (std::abs(piv) < kPivotTol) {
            if (!refactorize()) return false;
            compute_basics();
            return true;  // retry from refreshed state
        }
        for (int r = 0; r < m_; ++r) x_[basic_[r]] -= t * dir * w[r];
        int leave = basic_[leave_row];
        x_[leave] = leave_side == kStLower ? lower_[leave] : upper_[leave];
        state_[leave] = leave_side;
        x_[enter] = x_[enter] + dir * t;
        state_[enter] = kStBasic;
        basic_[leave_row] = enter;

        binv_.row(leave_row) /= piv;
        for (int r = 0; r < m_; ++r) {
            if (r == leave_row) continue;
            double f = w[r];
            if (f != 0.0) binv_.row(r) -= f * binv_.row(leave_row);
        }
        if (++since_refactor_ >= kRefactorEvery) {
            if (!refactorize()) return false;
            compute_basics();
        }
        return true;
    }

    void track_stall(int phase) {
        double measure = phase == 1 ? total_violation() : primal_objective();
        if (measure < best_measure_ - 1e-10) {
            best_measure_ = measure;
            stall_ = 0;
        } else if (++stall_ > kStallLimit) {
            bland_ = true;
        }
    }

    double primal_objective() const {
        double obj = 0.0;
        for (int j = 0; j < n_; ++j) obj += cost_[j] * x_[j];
        return obj;
    }

    void fill_common(LPSolution& out) const {
        out.values.assign(x_.begin(), x_.begin() + n_);
        out.objective_value = primal_objective();
        out.pivots = pivots_;
        out.basis.basic = basic_;
        out.basis.state = state_;
    }

    void export_duals(LPSolution& out, const Vector& y, int phase) const {
        out.duals.resize(m_);
        for (int i = 0; i < m_; ++i) out.duals[i] = y[i] * scale_[i];
        double dual = 0.0;
        for (int i = 0; i < m_; ++i) dual += y[i] * rhs_[i];
        for (int j = 0; j < total_; ++j) {
            if (state_[j] == kStBasic) continue;
            double d = reduced_cost(phase, y, j);
            if (x_[j] != 0.0) dual += d * x_[j];
        }
        out.dual_objective = dual;
    }

    LPSolution& finish_optimal(LPSolution& out) {
        refactorize();
        compute_basics();
        fill_common(out);
        out.status = check_solution() ? LPStatus::Optimal : LPStatus::NumericalFailure;
        if (out.status == LPStatus::Optimal) export_duals(out, prices(2), 2);
        return out;
    }

    LPSolution& finish_infeasible(LPSolution& out, const Vector& y) {
        fill_common(out);
        out.status = LPStatus::Infeasible;
        export_duals(out, y, 1);
        return out;
    }

    LPSolution& finish_unbounded(LPSolution& out) {
        fill_common(out);
        out.status = LPStatus::Unbounded;
        return out;
    }

    LPSolution& finish_numerical(LPSolution& out) {
        fill_common(out);
        out.status = LPStatus::NumericalFailure;
        return out;
    }

    // Residual check against the scaled rows and the variable bounds.
    bool check_solution() const {
        for (int j = 0; j < total_; ++j) {
            if (x_[j] < lower_[j] - kFeasTol || x_[j] > upper_[j] + kFeasTol) return false;
        }
        std::vector<double> activity(m_, 0.0);
        for (int j = 0; j < n_; ++j) {
            if (x_[j] == 0.0) continue;
            for (const auto& [row, a] : cols_[j]) activity[row] += a * x_[j];
        }
        for (int i = 0; i < m_; ++i) {
            double diff = activity[i] - rhs_[i];
            switch (model_.constraints[i].relation) {
                case Relation::LessEqual:
                    if (diff > kFeasTol) return false;
                    break;
                case Relation::GreaterEqual:
                    if (diff < -kFeasTol) return false;
                    break;
                case Relation::Equal:
                    if (std::abs(diff) > kFeasTol) return false;
                    break;
            }
        }
        return true;
    }
};

}  // namespace

LPSolution solve_lp(const LPModel& model, const SimplexBasis* warm) {
    Simplex simplex(model, warm);
    return simplex.run();
}

}  // namespace nslice
