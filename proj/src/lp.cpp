#include "orba/lp.hpp"

#include "orba/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace orba::lp {

namespace {

// Standard-form tableau: min c.y s.t. M y = r, y >= 0, solved with the
// two-phase method. Bland's rule keeps the pivot sequence finite and
// deterministic.
class Simplex {
public:
    Simplex(Mat m, Vec rhs, Vec cost, double tol, double pivot_tol, int max_iters)
        : m_(std::move(m)), rhs_(std::move(rhs)), cost_(std::move(cost)),
          tol_(tol), pivot_tol_(pivot_tol), max_iters_(max_iters) {}

    Status run() {
        const int rows = m_.rows;
        const int n = m_.cols;
        for (int i = 0; i < rows; ++i) {
            if (rhs_[i] < 0.0) {
                rhs_[i] = -rhs_[i];
                for (int j = 0; j < n; ++j) m_.at(i, j) = -m_.at(i, j);
            }
        }
        // Phase 1: artificial basis.
        tab_ = Mat(rows + 1, n + rows + 1);
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < n; ++j) tab_.at(i, j) = m_.at(i, j);
            tab_.at(i, n + i) = 1.0;
            tab_.at(i, n + rows) = rhs_[i];
        }
        basis_.resize(rows);
        for (int i = 0; i < rows; ++i) basis_[i] = n + i;
        num_cols_ = n + rows;
        set_costs_phase1();
        iterate(/*phase1=*/true); // cannot be unbounded: the objective is >= 0
        if (tab_.at(rows, n_rhs_col()) < -tol_ * std::max(1.0, scale_()))
            return Status::Infeasible;
        drive_out_artificials();
        // Phase 2: original costs over structural columns only.
        num_cols_ = n;
        set_costs_phase2();
        if (!iterate(/*phase1=*/false)) return Status::Unbounded;
        return Status::Optimal;
    }

    Vec point() const {
        Vec y(m_.cols, 0.0);
        for (int i = 0; i < m_.rows; ++i)
            if (basis_[i] < m_.cols) y[basis_[i]] = tab_.at(i, n_rhs_col());
        return y;
    }

    double dual_residual() const { return dual_residual_; }

private:
    int n_rhs_col() const { return m_.cols + m_.rows; }

    double scale_() const {
        double s = 0.0;
        for (double v : rhs_) s = std::max(s, std::fabs(v));
        return s;
    }

    void set_costs_phase1() {
        const int rows = m_.rows;
        for (int j = 0; j <= n_rhs_col(); ++j) tab_.at(rows, j) = 0.0;
        for (int i = 0; i < rows; ++i) tab_.at(rows, m_.cols + i) = 1.0;
        reduce_cost_row();
    }

    void set_costs_phase2() {
        const int rows = m_.rows;
        for (int j = 0; j <= n_rhs_col(); ++j) tab_.at(rows, j) = 0.0;
        for (int j = 0; j < m_.cols; ++j) tab_.at(rows, j) = cost_[j];
        reduce_cost_row();
    }

    // Subtracting the basic rows leaves reduced costs in the row and the
    // negated objective in the bottom-right cell.
    void reduce_cost_row() {
        const int rows = m_.rows;
        for (int i = 0; i < rows; ++i) {
            const double c = tab_.at(rows, basis_[i]);
            if (c == 0.0) continue;
            for (int j = 0; j <= n_rhs_col(); ++j)
                tab_.at(rows, j) -= c * tab_.at(i, j);
        }
    }

    void pivot(int row, int col) {
        const int rows = m_.rows;
        const double p = tab_.at(row, col);
        for (int j = 0; j <= n_rhs_col(); ++j) tab_.at(row, j) /= p;
        for (int i = 0; i <= rows; ++i) {
            if (i == row) continue;
            const double f = tab_.at(i, col);
            if (f == 0.0) continue;
            for (int j = 0; j <= n_rhs_col(); ++j)
                tab_.at(i, j) -= f * tab_.at(row, j);
            tab_.at(i, col) = 0.0;
        }
        basis_[row] = col;
    }

    // Returns false for an unbounded phase-2 objective. Phantom reduced
    // costs at roundoff level are dropped rather than misread as rays: the
    // phase-1 objective is bounded below by zero, and in phase 2 a genuine
    // ray carries a reduced cost well clear of the noise floor.
    bool iterate(bool phase1) {
        const int rows = m_.rows;
        int iters = 0;
        dual_residual_ = 0.0;
        const double noise_floor = 1e-6 * std::max(1.0, cost_scale_());
        while (true) {
            if (max_iters_ > 0 && ++iters > max_iters_)
                throw SolverError("simplex iteration cap exceeded");
            // Bland: smallest-index entering column with negative reduced cost.
            int enter = -1;
            for (int j = 0; j < num_cols_; ++j) {
                if (tab_.at(rows, j) < -tol_) { enter = j; break; }
            }
            if (enter < 0) {
                double worst = 0.0;
                for (int j = 0; j < num_cols_; ++j)
                    worst = std::min(worst, tab_.at(rows, j));
                dual_residual_ = -worst;
                return true;
            }
            // Unboundedness is a sign condition; small positive entries are
            // still valid pivots, so eligibility scales with the column.
            double col_max = 0.0;
            for (int i = 0; i < rows; ++i)
                col_max = std::max(col_max, tab_.at(i, enter));
            if (col_max <= pivot_tol_) {
                if (phase1 || tab_.at(rows, enter) >= -noise_floor) {
                    tab_.at(rows, enter) = 0.0;
                    continue;
                }
                return false; // unbounded direction
            }
            const double eligible = std::max(pivot_tol_, 1e-7 * col_max);
            int leave = -1;
            double best_ratio = 0.0;
            for (int i = 0; i < rows; ++i) {
                const double a = tab_.at(i, enter);
                if (a < eligible) continue;
                const double ratio = tab_.at(i, n_rhs_col()) / a;
                if (leave < 0 || ratio < best_ratio - 1e-15 ||
                    (std::fabs(ratio - best_ratio) <= 1e-15 &&
                     basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave < 0) {
                if (phase1 || tab_.at(rows, enter) >= -noise_floor) {
                    tab_.at(rows, enter) = 0.0;
                    continue;
                }
                return false; // unbounded direction
            }
            pivot(leave, enter);
        }
    }

    double cost_scale_() const {
        double s = 0.0;
        for (double c : cost_) s = std::max(s, std::fabs(c));
        return s;
    }

    void drive_out_artificials() {
        const int rows = m_.rows;
        for (int i = 0; i < rows; ++i) {
            if (basis_[i] < m_.cols) continue;
            int col = -1;
            for (int j = 0; j < m_.cols; ++j) {
                if (std::fabs(tab_.at(i, j)) > pivot_tol_) { col = j; break; }
            }
            if (col >= 0) {
                pivot(i, col);
            }
            // A row with no structural pivot is redundant; its artificial
            // stays basic at value ~0, which is harmless for phase 2.
        }
    }

    Mat m_;
    Vec rhs_;
    Vec cost_;
    double tol_;
    double pivot_tol_;
    int max_iters_;
    Mat tab_;
    std::vector<int> basis_;
    int num_cols_ = 0;
    double dual_residual_ = 0.0;
};

struct StandardForm {
    Mat m;   // equality matrix over standard variables
    Vec rhs;
    Vec cost;
    // Mapping back: original x_i = shift_i + sum_j coef * y_j.
    struct BackMap {
        double shift = 0.0;
        int plus = -1;  // y index with +1 coefficient
        int minus = -1; // y index with -1 coefficient
    };
    std::vector<BackMap> back;
    int num_std_vars = 0;
};

StandardForm to_standard_form(const LinearProgram& lp) {
    const int n = lp.num_vars();
    Vec lower = lp.lower.empty() ? Vec(n, -kInf) : lp.lower;
    Vec upper = lp.upper.empty() ? Vec(n, kInf) : lp.upper;
    if (static_cast<int>(lower.size()) != n || static_cast<int>(upper.size()) != n)
        throw ArgumentError("bound vectors must match variable count");

    StandardForm sf;
    sf.back.resize(n);
    int nv = 0;
    struct ExtraRow {
        int var;     // std var index
        double rhs;  // var + slack = rhs
    };
    std::vector<ExtraRow> upper_rows;
    for (int i = 0; i < n; ++i) {
        const double lo = lower[i], hi = upper[i];
        if (lo > hi) throw ArgumentError("variable bound lo > hi");
        if (std::isinf(lo) && std::isinf(hi)) {
            sf.back[i].plus = nv++;
            sf.back[i].minus = nv++;
        } else if (!std::isinf(lo)) {
            sf.back[i].shift = lo;
            sf.back[i].plus = nv++;
            if (!std::isinf(hi)) upper_rows.push_back({sf.back[i].plus, hi - lo});
        } else {
            sf.back[i].shift = hi;
            sf.back[i].minus = nv++;
        }
    }
    const int n_ge = lp.ge_matrix.rows;
    const int n_eq = lp.eq_matrix.rows;
    const int n_up = static_cast<int>(upper_rows.size());
    const int total_rows = n_ge + n_eq + n_up;
    const int total_vars = nv + n_ge + n_up; // surplus for >=, slack for bounds

    sf.m = Mat(total_rows, total_vars);
    sf.rhs.assign(total_rows, 0.0);
    sf.cost.assign(total_vars, 0.0);
    sf.num_std_vars = total_vars;

    auto scatter = [&](int row, int orig_var, double coeff, double& rhs_acc) {
        const auto& bm = sf.back[orig_var];
        rhs_acc -= coeff * bm.shift;
        if (bm.plus >= 0) sf.m.at(row, bm.plus) += coeff;
        if (bm.minus >= 0) sf.m.at(row, bm.minus) -= coeff;
    };

    int row = 0;
    for (int i = 0; i < n_ge; ++i, ++row) {
        double r = lp.ge_rhs[i];
        for (int j = 0; j < n; ++j) {
            const double c = lp.ge_matrix.at(i, j);
            if (c != 0.0) scatter(row, j, c, r);
        }
        sf.m.at(row, nv + i) = -1.0; // surplus
        sf.rhs[row] = r;
    }
    for (int i = 0; i < n_eq; ++i, ++row) {
        double r = lp.eq_rhs[i];
        for (int j = 0; j < n; ++j) {
            const double c = lp.eq_matrix.at(i, j);
            if (c != 0.0) scatter(row, j, c, r);
        }
        sf.rhs[row] = r;
    }
    for (int i = 0; i < n_up; ++i, ++row) {
        sf.m.at(row, upper_rows[i].var) = 1.0;
        sf.m.at(row, nv + n_ge + i) = 1.0; // slack
        sf.rhs[row] = upper_rows[i].rhs;
    }
    for (int i = 0; i < n; ++i) {
        const double c = lp.objective[i];
        if (c == 0.0) continue;
        const auto& bm = sf.back[i];
        if (bm.plus >= 0) sf.cost[bm.plus] += c;
        if (bm.minus >= 0) sf.cost[bm.minus] -= c;
    }
    return sf;
}

double residual_of(const LinearProgram& lp, const Vec& x) {
    double res = 0.0;
    if (lp.ge_matrix.rows > 0) {
        const Vec v = matvec(lp.ge_matrix, x);
        for (int i = 0; i < lp.ge_matrix.rows; ++i)
            res = std::max(res, lp.ge_rhs[i] - v[i]);
    }
    if (lp.eq_matrix.rows > 0) {
        const Vec v = matvec(lp.eq_matrix, x);
        for (int i = 0; i < lp.eq_matrix.rows; ++i)
            res = std::max(res, std::fabs(v[i] - lp.eq_rhs[i]));
    }
    for (std::size_t i = 0; i < lp.lower.size(); ++i)
        if (!std::isinf(lp.lower[i])) res = std::max(res, lp.lower[i] - x[i]);
    for (std::size_t i = 0; i < lp.upper.size(); ++i)
        if (!std::isinf(lp.upper[i])) res = std::max(res, x[i] - lp.upper[i]);
    return res;
}

} // namespace

Solution solve(const LinearProgram& lp, const SolverOptions& opts) {
    const int n = lp.num_vars();
    if (lp.ge_matrix.rows > 0 && lp.ge_matrix.cols != n)
        throw ArgumentError("ge matrix column count mismatch");
    if (lp.eq_matrix.rows > 0 && lp.eq_matrix.cols != n)
        throw ArgumentError("eq matrix column count mismatch");
    if (static_cast<int>(lp.ge_rhs.size()) != lp.ge_matrix.rows ||
        static_cast<int>(lp.eq_rhs.size()) != lp.eq_matrix.rows)
        throw ArgumentError("rhs length mismatch");
    for (double c : lp.objective)
        if (!std::isfinite(c)) throw ArgumentError("non-finite objective coefficient");

    StandardForm sf = to_standard_form(lp);
    if (sf.num_std_vars > opts.max_vars)
        throw SolverError("program exceeds the variable cap (" +
                          std::to_string(sf.num_std_vars) + " > " +
                          std::to_string(opts.max_vars) + ")");

    const int rows = sf.m.rows;
    const int auto_cap = 2000 + 200 * (rows + sf.num_std_vars);
    Simplex sx(sf.m, sf.rhs, sf.cost, opts.tol, opts.pivot_tol,
               opts.max_iters > 0 ? opts.max_iters : auto_cap);

    Solution sol;
    switch (sx.run()) {
        case Status::Infeasible:
            sol.status = Status::Infeasible;
            return sol;
        case Status::Unbounded:
            sol.status = Status::Unbounded;
            return sol;
        case Status::Optimal:
            break;
    }
    const Vec y = sx.point();
    Vec x(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double v = sf.back[i].shift;
        if (sf.back[i].plus >= 0) v += y[sf.back[i].plus];
        if (sf.back[i].minus >= 0) v -= y[sf.back[i].minus];
        x[i] = v;
    }
    sol.status = Status::Optimal;
    sol.point = std::move(x);
    sol.objective = dot(lp.objective, sol.point);
    sol.max_residual = residual_of(lp, sol.point);
    sol.dual_residual = sx.dual_residual();
    return sol;
}

int Builder::add_var(double lo, double hi) {
    lower_.push_back(lo);
    upper_.push_back(hi);
    objective_.push_back(0.0);
    return static_cast<int>(lower_.size()) - 1;
}

std::vector<int> Builder::add_vars(int n, double lo, double hi) {
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = add_var(lo, hi);
    return idx;
}

void Builder::add_ge(const Expr& e) { ge_.push_back(e); }
void Builder::add_eq(const Expr& e) { eq_.push_back(e); }

void Builder::add_objective(int var, double coeff) { objective_[var] += coeff; }

LinearProgram Builder::build() const {
    LinearProgram lp;
    const int n = num_vars();
    lp.objective = objective_;
    lp.lower = lower_;
    lp.upper = upper_;
    lp.ge_matrix = Mat(static_cast<int>(ge_.size()), n);
    lp.ge_rhs.assign(ge_.size(), 0.0);
    for (std::size_t i = 0; i < ge_.size(); ++i) {
        for (const auto& [var, coeff] : ge_[i].terms)
            lp.ge_matrix.at(static_cast<int>(i), var) += coeff;
        lp.ge_rhs[i] = -ge_[i].constant;
    }
    lp.eq_matrix = Mat(static_cast<int>(eq_.size()), n);
    lp.eq_rhs.assign(eq_.size(), 0.0);
    for (std::size_t i = 0; i < eq_.size(); ++i) {
        for (const auto& [var, coeff] : eq_[i].terms)
            lp.eq_matrix.at(static_cast<int>(i), var) += coeff;
        lp.eq_rhs[i] = -eq_[i].constant;
    }
    return lp;
}

} // namespace orba::lp
