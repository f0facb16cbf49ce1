#include "xc/lp.hpp"

#include <algorithm>
#include <cassert>

namespace xc {

namespace {

// Dense simplex tableau over exact rationals.
//
// Variables are laid out as [u+ (n)] [u- (n)] [slack (m)] [artificial (k)]
// where x = u+ - u-. Every tableau row i holds its basic variable with
// coefficient 1; the objective row holds reduced costs, with the current
// objective value kept separately.
struct Tableau {
    int m = 0;              // constraint rows
    int ncols = 0;          // total columns excluding rhs
    std::vector<RatVec> t;  // m rows of length ncols+1 (last = rhs)
    RatVec obj;             // length ncols, reduced costs
    Rational value = 0;
    std::vector<int> basis;  // basic column per row

    Rational& rhs(int i) { return t[i][ncols]; }

    void pivot(int row, int col) {
        Rational p = t[row][col];
        for (auto& x : t[row]) x /= p;
        for (int i = 0; i < m; ++i) {
            if (i == row || t[i][col] == 0) continue;
            Rational f = t[i][col];
            for (int j = 0; j <= ncols; ++j) t[i][j] -= f * t[row][j];
        }
        if (obj[col] != 0) {
            Rational f = obj[col];
            for (int j = 0; j < ncols; ++j) obj[j] -= f * t[row][j];
            value += f * t[row][ncols];
        }
        basis[row] = col;
    }

    // Dantzig pricing while the objective moves, pure Bland once a
    // degeneracy streak builds up (Bland cannot cycle, so termination is
    // guaranteed; Dantzig keeps the typical pivot count low). Leaving rule
    // is always minimum ratio with lowest-basic-index ties. Returns false on
    // unboundedness.
    bool run_simplex() {
        int degenerate_streak = 0;
        for (;;) {
            int enter = -1;
            if (degenerate_streak < 24) {
                for (int j = 0; j < ncols; ++j)
                    if (obj[j] > 0 && (enter < 0 || obj[j] > obj[enter])) enter = j;
            } else {
                for (int j = 0; j < ncols; ++j)
                    if (obj[j] > 0) {
                        enter = j;
                        break;
                    }
            }
            if (enter < 0) return true;
            int leave = -1;
            Rational best;
            for (int i = 0; i < m; ++i) {
                if (t[i][enter] <= 0) continue;
                Rational ratio = rhs(i) / t[i][enter];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            degenerate_streak = best == 0 ? degenerate_streak + 1 : 0;
            pivot(leave, enter);
        }
    }
};

}  // namespace

LpResult lp_solve(const RationalMatrix& a, const RatVec& b, const RatVec& objective,
                  LpSense sense) {
    LpProblem p;
    p.ineq_lhs = a;
    p.ineq_rhs = b;
    p.objective = objective;
    p.sense = sense;
    return lp_solve(p);
}

LpResult lp_solve(const LpProblem& prob) {
    const int n = static_cast<int>(prob.objective.size());
    const int m_le = prob.ineq_lhs.rows;
    const int m_eq = prob.eq_lhs.rows;
    if (prob.ineq_lhs.cols != n && m_le > 0)
        throw input_error("lp_solve: inequality system has wrong column count");
    if (static_cast<int>(prob.ineq_rhs.size()) != m_le)
        throw input_error("lp_solve: inequality rhs length mismatch");
    if (m_eq > 0 && prob.eq_lhs.cols != n)
        throw input_error("lp_solve: equality system has wrong column count");
    if (static_cast<int>(prob.eq_rhs.size()) != m_eq)
        throw input_error("lp_solve: equality rhs length mismatch");

    // Expanded row list: the m_le inequalities, then +/- pair per equality.
    const int m = m_le + 2 * m_eq;
    auto exp_row = [&](int i) -> RatVec {
        if (i < m_le) return prob.ineq_lhs.row(i);
        int k = (i - m_le) / 2;
        RatVec r = prob.eq_lhs.row(k);
        if ((i - m_le) % 2 == 1)
            for (auto& x : r) x = -x;
        return r;
    };
    auto exp_rhs = [&](int i) -> Rational {
        if (i < m_le) return prob.ineq_rhs[i];
        int k = (i - m_le) / 2;
        return (i - m_le) % 2 == 0 ? prob.eq_rhs[k] : -prob.eq_rhs[k];
    };

    RatVec c(n);
    for (int j = 0; j < n; ++j)
        c[j] = prob.sense == LpSense::Max ? prob.objective[j] : -prob.objective[j];

    // Column layout: free variables are split x = u+ - u-.
    const int nsplit = prob.nonneg_vars ? n : 2 * n;
    const int col_slack = nsplit;
    std::vector<int> art_rows;
    std::vector<int> flip(m, 1);
    for (int i = 0; i < m; ++i)
        if (exp_rhs(i) < 0) {
            flip[i] = -1;
            art_rows.push_back(i);
        }
    const int col_art = col_slack + m;
    const int ncols = col_art + static_cast<int>(art_rows.size());

    Tableau tab;
    tab.m = m;
    tab.ncols = ncols;
    tab.t.assign(m, RatVec(ncols + 1, Rational(0)));
    tab.basis.assign(m, -1);
    {
        int art_idx = 0;
        for (int i = 0; i < m; ++i) {
            RatVec row = exp_row(i);
            if (static_cast<int>(row.size()) != n)
                throw input_error("lp_solve: ragged constraint row");
            for (int j = 0; j < n; ++j) {
                tab.t[i][j] = flip[i] * row[j];
                if (!prob.nonneg_vars) tab.t[i][n + j] = -flip[i] * row[j];
            }
            tab.t[i][col_slack + i] = flip[i];
            tab.t[i][ncols] = flip[i] * exp_rhs(i);
            if (flip[i] < 0) {
                tab.t[i][col_art + art_idx] = 1;
                tab.basis[i] = col_art + art_idx;
                ++art_idx;
            } else {
                tab.basis[i] = col_slack + i;
            }
        }
    }

    LpResult res;

    // Phase 1: maximize -(sum of artificials).
    if (!art_rows.empty()) {
        tab.obj.assign(ncols, Rational(0));
        for (int a = 0; a < static_cast<int>(art_rows.size()); ++a)
            tab.obj[col_art + a] = -1;
        tab.value = 0;
        for (int i = 0; i < m; ++i) {
            if (tab.basis[i] < col_art) continue;
            for (int j = 0; j < ncols; ++j) tab.obj[j] += tab.t[i][j];
            tab.value -= tab.t[i][ncols];
        }
        bool bounded = tab.run_simplex();
        assert(bounded);
        (void)bounded;
        if (tab.value < 0) {
            // Dual of phase 1 yields the Farkas certificate. The reduced cost
            // of the initial basic column of row i recovers pi_i.
            RatVec y(m);
            int art_idx = 0;
            for (int i = 0; i < m; ++i) {
                Rational pi;
                if (flip[i] < 0) {
                    pi = Rational(-1) - tab.obj[col_art + art_idx];
                    ++art_idx;
                } else {
                    pi = -tab.obj[col_slack + i];
                }
                y[i] = flip[i] * pi;
            }
            // Merge the +/- multipliers of each equality pair.
            RatVec yi(m_le), ye(m_eq);
            for (int i = 0; i < m_le; ++i) yi[i] = y[i];
            for (int k = 0; k < m_eq; ++k) ye[k] = y[m_le + 2 * k] - y[m_le + 2 * k + 1];
            res.status = LpStatus::Infeasible;
            res.farkas_ineq = std::move(yi);
            res.farkas_eq = std::move(ye);
            return res;
        }
        // Drive remaining zero-valued artificials out of the basis.
        for (int i = 0; i < m; ++i) {
            if (tab.basis[i] < col_art) continue;
            int piv = -1;
            for (int j = 0; j < col_art; ++j)
                if (tab.t[i][j] != 0) {
                    piv = j;
                    break;
                }
            if (piv >= 0) tab.pivot(i, piv);
            // Otherwise the row is 0 = 0 (redundant); harmless to keep, the
            // artificial stays basic at value 0 and its column is now frozen.
        }
        for (int a = 0; a < static_cast<int>(art_rows.size()); ++a) {
            // Freeze artificial columns so phase 2 never re-enters them.
            for (int i = 0; i < m; ++i)
                if (tab.basis[i] != col_art + a) tab.t[i][col_art + a] = 0;
        }
    }

    // Phase 2 with the real objective.
    tab.obj.assign(ncols, Rational(0));
    for (int j = 0; j < n; ++j) {
        tab.obj[j] = c[j];
        if (!prob.nonneg_vars) tab.obj[n + j] = -c[j];
    }
    tab.value = 0;
    for (int i = 0; i < m; ++i) {
        int bc = tab.basis[i];
        Rational cb = 0;
        if (bc < n)
            cb = c[bc];
        else if (bc < nsplit)
            cb = -c[bc - n];
        if (cb == 0) continue;
        for (int j = 0; j < ncols; ++j) tab.obj[j] -= cb * tab.t[i][j];
        tab.obj[bc] = 0;
        tab.value += cb * tab.t[i][ncols];
    }
    // Never re-enter artificial columns.
    for (int j = col_art; j < ncols; ++j) tab.obj[j] = 0;

    if (!tab.run_simplex()) {
        res.status = LpStatus::Unbounded;
        return res;
    }

    RatVec x(n, Rational(0));
    for (int i = 0; i < m; ++i) {
        int bc = tab.basis[i];
        if (bc < n)
            x[bc] += tab.t[i][ncols];
        else if (bc < nsplit)
            x[bc - n] -= tab.t[i][ncols];
    }
    res.status = LpStatus::Optimal;
    res.optimum = prob.sense == LpSense::Max ? tab.value : -tab.value;
    res.primal = std::move(x);
    return res;
}

RatVec farkas_decompose(const RationalMatrix& a, const RatVec& b, const RatVec& c,
                        const Rational& delta) {
    if (a.rows != static_cast<int>(b.size())) throw input_error("farkas_decompose: rhs mismatch");
    if (a.cols != static_cast<int>(c.size()))
        throw input_error("farkas_decompose: objective mismatch");

    // c.x <= delta must hold on {Ax <= b}.
    LpResult validity = lp_solve(a, b, c, LpSense::Max);
    if (validity.status == LpStatus::Infeasible)
        throw input_error("farkas_decompose: the system Ax <= b is infeasible");
    if (validity.status == LpStatus::Unbounded || *validity.optimum > delta)
        throw validity_error("farkas_decompose: inequality is not valid for the polytope");

    // Find lambda >= 0 with lambda.A = c, lambda.b = delta, as a feasibility
    // LP in the multipliers.
    const int m = a.rows;
    LpProblem p;
    p.ineq_lhs = RationalMatrix(m, m);
    for (int i = 0; i < m; ++i) p.ineq_lhs.at(i, i) = -1;
    p.ineq_rhs.assign(m, Rational(0));
    p.eq_lhs = RationalMatrix(a.cols + 1, m);
    p.eq_rhs.resize(a.cols + 1);
    for (int j = 0; j < a.cols; ++j) {
        for (int i = 0; i < m; ++i) p.eq_lhs.at(j, i) = a.at(i, j);
        p.eq_rhs[j] = c[j];
    }
    for (int i = 0; i < m; ++i) p.eq_lhs.at(a.cols, i) = b[i];
    p.eq_rhs[a.cols] = delta;
    p.objective.assign(m, Rational(0));

    LpResult r = lp_solve(p);
    if (r.status != LpStatus::Optimal)
        throw input_error(
            "farkas_decompose: no nonnegative decomposition (system is not a polytope of "
            "dimension >= 1, or inequality is unreachable)");
    return *r.primal;
}

}  // namespace xc
