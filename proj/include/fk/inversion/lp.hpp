#pragma once

#include "fk/qalg/numeric.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fk {

enum class Sense { GE, LE, EQ };

struct LPRow {
    std::vector<std::pair<int, Rational>> coeffs;
    Sense sense = Sense::GE;
    Rational rhs = 0;
};

/// minimize objective . x + objective_const subject to rows and variable bounds
struct LinearProgram {
    int num_vars = 0;
    std::vector<std::optional<Rational>> lower, upper;
    std::vector<LPRow> rows;
    std::vector<Rational> objective;
    Rational objective_const = 0;

    explicit LinearProgram(int n = 0) : num_vars(n), lower(n), upper(n), objective(n) {}

    int add_row(std::vector<std::pair<int, Rational>> c, Sense s, Rational rhs) {
        rows.push_back({std::move(c), s, std::move(rhs)});
        return static_cast<int>(rows.size()) - 1;
    }
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
    LPStatus status = LPStatus::Infeasible;
    Rational value = 0;
    std::vector<Rational> x;
    /// multiplier per row: objective = value + sum duals[r] (row_r(x) - rhs_r) + bound terms
    std::vector<Rational> duals;
    /// multiplier of x_j >= lower_j (nonnegative) and of upper_j >= x_j (nonnegative)
    std::vector<Rational> lower_mult, upper_mult;
    /// recession direction with negative objective slope (when unbounded)
    std::vector<Rational> ray;
};

/**
 * Exact two-phase dense simplex over the rationals with Bland's rule.
 */
inline LPResult solve_lp(const LinearProgram& lp) {
    const int n = lp.num_vars;
    // column map: original var -> (column, scale, offset) with x = offset + scale * y (+ second column for free)
    struct VarMap {
        int col = -1, col2 = -1;
        int scale = 1;
        Rational offset = 0;
    };
    std::vector<VarMap> vm(n);
    int ncols = 0;
    std::vector<LPRow> rows = lp.rows;
    for (int j = 0; j < n; ++j) {
        if (lp.lower[j]) {
            vm[j] = {ncols++, -1, 1, *lp.lower[j]};
            if (lp.upper[j]) rows.push_back({{{j, Rational(1)}}, Sense::LE, *lp.upper[j]});
        } else if (lp.upper[j]) {
            vm[j] = {ncols++, -1, -1, *lp.upper[j]};
        } else {
            vm[j] = {ncols, ncols + 1, 1, 0};
            ncols += 2;
        }
    }
    const int m = static_cast<int>(rows.size());
    const int nstruct = ncols;
    // slack columns
    std::vector<int> slack_col(m, -1);
    for (int r = 0; r < m; ++r)
        if (rows[r].sense != Sense::EQ) slack_col[r] = ncols++;
    const int nreal = ncols;
    const int art0 = ncols;
    ncols += m;
    // tableau rows: A | b
    std::vector<std::vector<Rational>> T(m, std::vector<Rational>(ncols + 1));
    std::vector<int> row_sign(m, 1);
    for (int r = 0; r < m; ++r) {
        Rational rhs = rows[r].rhs;
        for (const auto& [j, a] : rows[r].coeffs) {
            const auto& v = vm[j];
            T[r][v.col] += a * v.scale;
            if (v.col2 >= 0) T[r][v.col2] -= a;
            rhs -= a * v.offset;
        }
        if (slack_col[r] >= 0) T[r][slack_col[r]] = rows[r].sense == Sense::GE ? -1 : 1;
        if (rhs < 0) {
            row_sign[r] = -1;
            for (auto& e : T[r]) e = -e;
            rhs = -rhs;
        }
        T[r][ncols] = rhs;
        T[r][art0 + r] = 1;
    }
    // transformed objective
    std::vector<Rational> cost(ncols, Rational(0));
    Rational cconst = lp.objective_const;
    for (int j = 0; j < n; ++j) {
        const auto& v = vm[j];
        cost[v.col] += lp.objective[j] * v.scale;
        if (v.col2 >= 0) cost[v.col2] -= lp.objective[j];
        cconst += lp.objective[j] * v.offset;
    }
    std::vector<int> basis(m);
    for (int r = 0; r < m; ++r) basis[r] = art0 + r;

    auto pivot = [&](int pr, int pc) {
        Rational inv = Rational(1) / T[pr][pc];
        for (auto& e : T[pr])
            if (e != 0) e *= inv;
        for (int r = 0; r < m; ++r) {
            if (r == pr || T[r][pc] == 0) continue;
            Rational f = T[r][pc];
            for (int c = 0; c <= ncols; ++c)
                if (T[pr][c] != 0) T[r][c] -= f * T[pr][c];
        }
        basis[pr] = pc;
    };

    // returns entering column or -1; ray column via out param
    auto run = [&](const std::vector<Rational>& c, int allowed_cols, int& unbounded_col) -> bool {
        unbounded_col = -1;
        while (true) {
            // reduced costs d_j = c_j - c_B . T_j
            int enter = -1;
            for (int j = 0; j < allowed_cols; ++j) {
                bool is_basic = false;
                for (int r = 0; r < m; ++r)
                    if (basis[r] == j) {
                        is_basic = true;
                        break;
                    }
                if (is_basic) continue;
                Rational d = c[j];
                for (int r = 0; r < m; ++r)
                    if (T[r][j] != 0 && c[basis[r]] != 0) d -= c[basis[r]] * T[r][j];
                if (d < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return true;
            int leave = -1;
            Rational best;
            for (int r = 0; r < m; ++r) {
                if (T[r][enter] <= 0) continue;
                Rational ratio = T[r][ncols] / T[r][enter];
                if (leave < 0 || ratio < best || (ratio == best && basis[r] < basis[leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (leave < 0) {
                unbounded_col = enter;
                return false;
            }
            pivot(leave, enter);
        }
    };

    LPResult res;
    // phase 1
    std::vector<Rational> c1(ncols, Rational(0));
    for (int r = 0; r < m; ++r) c1[art0 + r] = 1;
    int ub = -1;
    run(c1, ncols, ub);
    Rational infeas = 0;
    for (int r = 0; r < m; ++r)
        if (basis[r] >= art0) infeas += T[r][ncols];
    if (infeas != 0) {
        res.status = LPStatus::Infeasible;
        return res;
    }
    // drive remaining artificials out of the basis where possible
    for (int r = 0; r < m; ++r) {
        if (basis[r] < art0) continue;
        for (int j = 0; j < nreal; ++j) {
            if (T[r][j] != 0) {
                pivot(r, j);
                break;
            }
        }
    }
    // phase 2 (artificial columns barred from entering)
    std::vector<Rational> c2(ncols, Rational(0));
    for (int j = 0; j < nreal; ++j) c2[j] = cost[j];
    bool ok = run(c2, nreal, ub);
    auto value_of = [&](int col) -> Rational {
        for (int r = 0; r < m; ++r)
            if (basis[r] == col) return T[r][ncols];
        return 0;
    };
    if (!ok) {
        res.status = LPStatus::Unbounded;
        std::vector<Rational> dir(ncols, Rational(0));
        dir[ub] = 1;
        for (int r = 0; r < m; ++r) dir[basis[r]] -= T[r][ub];
        res.ray.assign(n, Rational(0));
        for (int j = 0; j < n; ++j) {
            const auto& v = vm[j];
            res.ray[j] = dir[v.col] * v.scale - (v.col2 >= 0 ? dir[v.col2] : Rational(0));
        }
        return res;
    }
    res.status = LPStatus::Optimal;
    res.x.assign(n, Rational(0));
    for (int j = 0; j < n; ++j) {
        const auto& v = vm[j];
        res.x[j] = v.offset + value_of(v.col) * v.scale - (v.col2 >= 0 ? value_of(v.col2) : Rational(0));
    }
    res.value = cconst;
    for (int j = 0; j < nreal; ++j) res.value += cost[j] * value_of(j);
    // duals y = c_B B^{-1}; B^{-1} sits in the artificial block
    std::vector<Rational> y(m, Rational(0));
    for (int i = 0; i < m; ++i) {
        Rational s = 0;
        for (int r = 0; r < m; ++r)
            if (T[r][art0 + i] != 0 && c2[basis[r]] != 0) s += c2[basis[r]] * T[r][art0 + i];
        y[i] = s * row_sign[i];
    }
    // reduced costs of structural columns
    auto reduced = [&](int col) {
        Rational d = c2[col];
        for (int r = 0; r < m; ++r)
            if (T[r][col] != 0 && c2[basis[r]] != 0) d -= c2[basis[r]] * T[r][col];
        return d;
    };
    res.lower_mult.assign(n, Rational(0));
    res.upper_mult.assign(n, Rational(0));
    const int m_orig = static_cast<int>(lp.rows.size());
    res.duals.assign(y.begin(), y.begin() + m_orig);
    int extra = m_orig;
    for (int j = 0; j < n; ++j) {
        const auto& v = vm[j];
        if (lp.lower[j]) {
            res.lower_mult[j] = reduced(v.col);
            if (lp.upper[j]) {
                // extra row x_j <= U with dual y (nonpositive for LE in a min problem)
                res.upper_mult[j] = -y[extra];
                res.lower_mult[j] += 0;
                ++extra;
            }
        } else if (lp.upper[j]) {
            res.upper_mult[j] = reduced(v.col);
        }
    }
    (void)nstruct;
    return res;
}

}  // namespace fk
