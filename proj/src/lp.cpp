#include "blindcomp/lp.hpp"

#include <algorithm>

#include "blindcomp/errors.hpp"

namespace blindcomp::lp {

namespace {

// Dense tableau simplex over exact rationals with Bland's pivoting rule
// (smallest eligible index enters, smallest-index tie-break on leaving), so
// it terminates without anti-cycling heuristics.
//
// Tableau layout: rows 0..m-1 hold the constraints with the basis inverse
// applied, row m holds reduced costs, column n holds the right-hand side.
struct Tableau {
    std::size_t m, n;
    std::vector<std::vector<Rat>> t;  // (m+1) x (n+1)
    std::vector<std::size_t> basis;   // basic variable of each row

    void pivot(std::size_t row, std::size_t col) {
        const Rat inv = t[row][col];
        for (auto& v : t[row]) v /= inv;
        for (std::size_t r = 0; r <= m; ++r) {
            if (r == row || t[r][col] == 0) continue;
            const Rat f = t[r][col];
            for (std::size_t c = 0; c <= n; ++c) t[r][c] -= f * t[row][c];
        }
        basis[row] = col;
    }

    // Returns false when the current basis is optimal.
    bool step() {
        std::size_t enter = n;
        for (std::size_t c = 0; c < n; ++c)
            if (t[m][c] < 0) {
                enter = c;
                break;
            }
        if (enter == n) return false;

        std::size_t leave = m;
        Rat best_ratio(0);
        for (std::size_t r = 0; r < m; ++r) {
            if (t[r][enter] <= 0) continue;
            const Rat ratio = t[r][n] / t[r][enter];
            if (leave == m || ratio < best_ratio ||
                (ratio == best_ratio && basis[r] < basis[leave])) {
                leave = r;
                best_ratio = ratio;
            }
        }
        if (leave == m) throw InvariantViolation("simplex: unbounded direction");
        pivot(leave, enter);
        return true;
    }
};

}  // namespace

Result solve_min(const std::vector<std::vector<Rat>>& a, const std::vector<Rat>& b,
                 const std::vector<Rat>& c) {
    const std::size_t m = a.size();
    const std::size_t n = c.size();
    for (const auto& row : a)
        if (row.size() != n) throw InvalidInput("solve_min: ragged constraint matrix");
    if (b.size() != m) throw InvalidInput("solve_min: rhs size mismatch");

    // Phase 1: artificial variable per row, rhs made non-negative.
    Tableau tab;
    tab.m = m;
    tab.n = n + m;
    tab.t.assign(m + 1, std::vector<Rat>(tab.n + 1, Rat(0)));
    tab.basis.assign(m, 0);
    for (std::size_t r = 0; r < m; ++r) {
        const bool flip = b[r] < 0;
        for (std::size_t j = 0; j < n; ++j) tab.t[r][j] = flip ? -a[r][j] : a[r][j];
        tab.t[r][tab.n] = flip ? -b[r] : b[r];
        tab.t[r][n + r] = 1;
        tab.basis[r] = n + r;
    }
    for (std::size_t j = 0; j < n; ++j) {
        Rat s(0);
        for (std::size_t r = 0; r < m; ++r) s += tab.t[r][j];
        tab.t[m][j] = -s;  // minimize sum of artificials
    }
    {
        Rat s(0);
        for (std::size_t r = 0; r < m; ++r) s += tab.t[r][tab.n];
        tab.t[m][tab.n] = -s;
    }
    while (tab.step()) {}
    if (tab.t[m][tab.n] != 0) return {Status::Infeasible, Rat(0), {}};

    // Drive surviving artificials out of the basis; degenerate rows allow it
    // whenever any structural column is nonzero, otherwise the row is null.
    for (std::size_t r = 0; r < m; ++r) {
        if (tab.basis[r] < n) continue;
        std::size_t col = n;
        for (std::size_t j = 0; j < n; ++j)
            if (tab.t[r][j] != 0) {
                col = j;
                break;
            }
        if (col < n) tab.pivot(r, col);
    }

    // Phase 2 on the structural columns.
    Tableau t2;
    t2.m = m;
    t2.n = n;
    t2.t.assign(m + 1, std::vector<Rat>(n + 1, Rat(0)));
    t2.basis = tab.basis;
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t j = 0; j < n; ++j) t2.t[r][j] = tab.t[r][j];
        t2.t[r][n] = tab.t[r][tab.n];
    }
    for (std::size_t j = 0; j < n; ++j) t2.t[m][j] = c[j];
    t2.t[m][n] = 0;
    for (std::size_t r = 0; r < m; ++r) {
        if (t2.basis[r] >= n) continue;  // null row kept with artificial basis
        const Rat f = t2.t[m][t2.basis[r]];
        if (f == 0) continue;
        for (std::size_t j = 0; j <= n; ++j) t2.t[m][j] -= f * t2.t[r][j];
    }

    try {
        while (t2.step()) {}
    } catch (const InvariantViolation&) {
        return {Status::Unbounded, Rat(0), {}};
    }

    std::vector<Rat> x(n, Rat(0));
    for (std::size_t r = 0; r < m; ++r)
        if (t2.basis[r] < n) x[t2.basis[r]] = t2.t[r][n];
    Rat value(0);
    for (std::size_t j = 0; j < n; ++j) value += c[j] * x[j];
    return {Status::Optimal, value, std::move(x)};
}

Rat l1_distance_to_hull(const RatDistribution& v, const std::vector<RatDistribution>& ws) {
    if (ws.empty()) throw InvalidInput("l1_distance_to_hull: empty vertex list");
    const std::size_t d = static_cast<std::size_t>(v.dim());
    const std::size_t s = ws.size();
    for (const auto& w : ws)
        if (w.dim() != v.dim()) throw DimensionMismatch("l1_distance_to_hull: vertex dimension mismatch");

    // Variables: r_1..r_s, then t+_1..t+_d, t-_1..t-_d.
    // Rows: per coordinate  sum_i r_i w_i[j] + t+_j - t-_j = v_j;  sum_i r_i = 1.
    const std::size_t n = s + 2 * d;
    std::vector<std::vector<Rat>> a(d + 1, std::vector<Rat>(n, Rat(0)));
    std::vector<Rat> b(d + 1, Rat(0));
    std::vector<Rat> c(n, Rat(0));
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < s; ++i) a[j][i] = ws[i][static_cast<int>(j)];
        a[j][s + j] = 1;
        a[j][s + d + j] = -1;
        b[j] = v[static_cast<int>(j)];
        c[s + j] = 1;
        c[s + d + j] = 1;
    }
    for (std::size_t i = 0; i < s; ++i) a[d][i] = 1;
    b[d] = 1;

    const Result res = solve_min(a, b, c);
    if (res.status != Status::Optimal)
        throw InvariantViolation("l1_distance_to_hull: LP must be feasible and bounded");
    return res.value;
}

}  // namespace blindcomp::lp
