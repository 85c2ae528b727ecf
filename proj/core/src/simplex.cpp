#include "conelift/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace conelift {

namespace {

constexpr double kPivotEps = 1e-10;

// Dense tableau simplex with Bland's rule. Rows of (E|f) must have f >= 0
// on entry (caller flips signs). Basis starts at the artificial columns for
// phase one and is reused for phase two.
class Tableau {
public:
    Tableau(const Matrix& E, const Vec& f)
        : m_(E.rows()), n_(E.cols()), t_(m_ + 1, n_ + m_ + 1, 0.0), basis_(m_) {
        for (std::size_t i = 0; i < m_; ++i) {
            double sgn = f[i] < 0.0 ? -1.0 : 1.0;
            for (std::size_t j = 0; j < n_; ++j) t_(i, j) = sgn * E(i, j);
            t_(i, n_ + i) = 1.0;  // artificial
            t_(i, n_ + m_) = sgn * f[i];
            basis_[i] = n_ + i;
        }
    }

    // minimize sum of artificials; returns attained value
    double phase_one(const Config& cfg, bool* iter_ok) {
        Vec cost(n_ + m_, 0.0);
        for (std::size_t j = n_; j < n_ + m_; ++j) cost[j] = 1.0;
        set_objective(cost);
        *iter_ok = run(cfg, n_ + m_);
        return objective_value();
    }

    // minimize c over original variables; artificials barred from the basis
    bool phase_two(const Vec& c, const Config& cfg) {
        Vec cost(n_ + m_, 0.0);
        for (std::size_t j = 0; j < n_; ++j) cost[j] = c[j];
        // drive remaining artificials out where possible
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) continue;
            std::size_t enter = n_ + m_;
            for (std::size_t j = 0; j < n_; ++j)
                if (std::fabs(t_(i, j)) > kPivotEps) {
                    enter = j;
                    break;
                }
            if (enter < n_) pivot(i, enter);
            // else: redundant row, its artificial stays basic at zero
        }
        set_objective(cost);
        return run(cfg, n_);
    }

    double objective_value() const { return -t_(m_, n_ + m_); }

    Vec solution() const {
        Vec z(n_, 0.0);
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < n_) z[basis_[i]] = t_(i, n_ + m_);
        return z;
    }

    bool unbounded = false;

private:
    void set_objective(const Vec& cost) {
        for (std::size_t j = 0; j <= n_ + m_; ++j) t_(m_, j) = 0.0;
        for (std::size_t j = 0; j < n_ + m_; ++j) t_(m_, j) = cost[j];
        for (std::size_t i = 0; i < m_; ++i) {
            double cb = cost[basis_[i]];
            if (cb == 0.0) continue;
            for (std::size_t j = 0; j <= n_ + m_; ++j) t_(m_, j) -= cb * t_(i, j);
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        double p = t_(r, c);
        for (std::size_t j = 0; j <= n_ + m_; ++j) t_(r, j) /= p;
        for (std::size_t i = 0; i <= m_; ++i) {
            if (i == r) continue;
            double f = t_(i, c);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= n_ + m_; ++j) t_(i, j) -= f * t_(r, j);
        }
        basis_[r] = c;
    }

    // Bland's rule; columns >= col_limit are barred. Returns false on
    // iteration-cap overrun.
    bool run(const Config& cfg, std::size_t col_limit) {
        unbounded = false;
        for (int it = 0; it < cfg.simplex_iter_cap; ++it) {
            std::size_t enter = col_limit;
            for (std::size_t j = 0; j < col_limit; ++j)
                if (t_(m_, j) < -kPivotEps) {
                    enter = j;
                    break;
                }
            if (enter == col_limit) return true;  // optimal
            std::size_t leave = m_;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m_; ++i) {
                if (t_(i, enter) > kPivotEps) {
                    double ratio = t_(i, n_ + m_) / t_(i, enter);
                    if (ratio < best - 1e-12 ||
                        (ratio < best + 1e-12 && (leave == m_ || basis_[i] < basis_[leave]))) {
                        best = ratio;
                        leave = i;
                    }
                }
            }
            if (leave == m_) {
                unbounded = true;
                return true;
            }
            pivot(leave, enter);
        }
        return false;
    }

    std::size_t m_, n_;
    Matrix t_;
    std::vector<std::size_t> basis_;
};

}  // namespace

LpResult lp_solve(const Matrix& E, const Vec& f, const Vec& c, const Config& cfg) {
    if (f.size() != E.rows() || c.size() != E.cols())
        throw InvalidInput("lp_solve: dimension mismatch");
    LpResult res;
    if (E.rows() == 0) {
        // no constraints: minimum is 0 at z = 0 unless some cost is negative
        for (double cj : c)
            if (cj < 0.0) {
                res.status = LpResult::Status::Unbounded;
                return res;
            }
        res.status = LpResult::Status::Optimal;
        res.z = Vec(E.cols(), 0.0);
        res.objective = 0.0;
        return res;
    }
    Tableau tab(E, f);
    bool iter_ok = true;
    double scale = std::max(1.0, norm_inf(f));
    double p1 = tab.phase_one(cfg, &iter_ok);
    if (!iter_ok) {
        res.status = LpResult::Status::IterLimit;
        return res;
    }
    if (p1 > 1e-7 * scale) {
        res.status = LpResult::Status::Infeasible;
        return res;
    }
    if (!tab.phase_two(c, cfg)) {
        res.status = LpResult::Status::IterLimit;
        return res;
    }
    if (tab.unbounded) {
        res.status = LpResult::Status::Unbounded;
        return res;
    }
    res.status = LpResult::Status::Optimal;
    res.z = tab.solution();
    res.objective = dot(c, res.z);
    return res;
}

bool lp_feasible_eq_nonneg(const Matrix& E, const Vec& f, Vec* z, const Config& cfg) {
    LpResult r = lp_solve(E, f, Vec(E.cols(), 0.0), cfg);
    if (r.status != LpResult::Status::Optimal) return false;
    if (z) *z = r.z;
    return true;
}

FeasiblePointResult feasible_point(const Matrix& A, const Vec& b,
                                   const std::set<std::size_t>& strict_rows,
                                   const Config& cfg) {
    if (A.rows() != b.size()) throw InvalidInput("feasible_point: row count mismatch");
    if (A.cols() > 64) throw InvalidInput("feasible_point: column count above desk-scale cap of 64");
    for (std::size_t i : strict_rows)
        if (i >= A.rows()) throw InvalidInput("feasible_point: strict row index out of range");

    const std::size_t m = A.rows(), n = A.cols();
    // variables: u(n), v(n) with x = u - v, margin t, slack s_i per row, cap slack
    const std::size_t nt = 2 * n;           // index of t
    const std::size_t ns = 2 * n + 1;       // first row slack
    const std::size_t ncap = ns + m;        // cap slack
    const std::size_t nvars = ncap + 1;

    Matrix E(m + 1, nvars);
    Vec f(m + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        Vec row = A.row(i);
        double rn = norm2(row);
        double rhs = b[i];
        if (rn <= 1e-300) {
            // zero row: 0 >= b_i must hold outright; strict zero rows cannot
            if (rhs > 0.0 || strict_rows.count(i)) {
                return {};  // Infeasible
            }
            // trivially satisfied: encode 0 = 0
            f[i] = 0.0;
            E(i, ns + i) = 1.0;
            continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
            E(i, j) = row[j] / rn;
            E(i, n + j) = -row[j] / rn;
        }
        if (strict_rows.count(i)) E(i, nt) = -1.0;
        E(i, ns + i) = -1.0;
        f[i] = rhs / rn;
    }
    // t + cap = 1
    E(m, nt) = 1.0;
    E(m, ncap) = 1.0;
    f[m] = 1.0;

    Vec c(nvars, 0.0);
    c[nt] = -1.0;  // maximize t

    LpResult lp = lp_solve(E, f, c, cfg);
    FeasiblePointResult res;
    if (lp.status != LpResult::Status::Optimal) return res;
    double t = lp.z[nt];
    if (!strict_rows.empty() && t < cfg.strict_slack) return res;
    res.status = FeasiblePointResult::Status::Feasible;
    res.margin = t;
    res.x.resize(n);
    for (std::size_t j = 0; j < n; ++j) res.x[j] = lp.z[j] - lp.z[n + j];
    return res;
}

}  // namespace conelift
