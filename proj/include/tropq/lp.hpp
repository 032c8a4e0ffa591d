#pragma once

// Dense exact-rational simplex, Bland's rule.  Problem sizes here are tiny
// (tens of rows/columns), so a textbook tableau is the right tool.

#include <optional>
#include <vector>

#include "tropq/errors.hpp"
#include "tropq/rational.hpp"

namespace tropq {

struct LpResult {
    Rat objective;
    std::vector<Rat> x;
};

// maximize c.x subject to A x <= b, x >= 0.  Requires b >= 0 (slack basis
// start).  Returns nullopt when unbounded.
inline std::optional<LpResult> simplex_max(const std::vector<std::vector<Rat>>& A,
                                           const std::vector<Rat>& b,
                                           const std::vector<Rat>& c) {
    const int m = (int)A.size();
    const int n = (int)c.size();
    for (const Rat& bi : b)
        if (bi < 0) throw invalid_argument_error("simplex_max: needs b >= 0");

    // tableau rows: m constraints plus objective row; columns: n structural
    // variables, m slacks, rhs
    std::vector<std::vector<Rat>> t(m + 1, std::vector<Rat>(n + m + 1));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) t[i][j] = A[i][j];
        t[i][n + i] = 1;
        t[i][n + m] = b[i];
    }
    for (int j = 0; j < n; ++j) t[m][j] = -c[j];

    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;

    for (;;) {
        int pivot_col = -1;
        for (int j = 0; j < n + m; ++j)
            if (t[m][j] < 0) { pivot_col = j; break; }  // Bland: first negative
        if (pivot_col < 0) break;

        int pivot_row = -1;
        Rat best_ratio;
        for (int i = 0; i < m; ++i) {
            if (t[i][pivot_col] <= 0) continue;
            Rat ratio = t[i][n + m] / t[i][pivot_col];
            if (pivot_row < 0 || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[pivot_row])) {
                pivot_row = i;
                best_ratio = ratio;
            }
        }
        if (pivot_row < 0) return std::nullopt;  // unbounded

        Rat piv = t[pivot_row][pivot_col];
        for (auto& cell : t[pivot_row]) cell /= piv;
        for (int i = 0; i <= m; ++i) {
            if (i == pivot_row) continue;
            Rat f = t[i][pivot_col];
            if (f == 0) continue;
            for (int j = 0; j <= n + m; ++j) t[i][j] -= f * t[pivot_row][j];
        }
        basis[pivot_row] = pivot_col;
    }

    LpResult res;
    res.x.assign(n, Rat(0));
    for (int i = 0; i < m; ++i)
        if (basis[i] < n) res.x[basis[i]] = t[i][n + m];
    res.objective = 0;
    for (int j = 0; j < n; ++j) res.objective += c[j] * res.x[j];
    return res;
}

// Strict feasibility of A x < b over free x: maximize a slack s subject to
// A x + s <= b with s capped at 1.  Feasible iff the optimum is positive.
// Free variables are split into positive and negative parts, which keeps the
// pivoting deterministic and the output reproducible.
inline std::optional<std::vector<Rat>> strict_feasible_point(
    const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b) {
    const int m = (int)A.size();
    const int n = m == 0 ? 0 : (int)A[0].size();
    if (m == 0) return std::vector<Rat>(n, Rat(0));

    // columns: x+ (n), x- (n), s (1)
    std::vector<std::vector<Rat>> A2(m + 1, std::vector<Rat>(2 * n + 1));
    std::vector<Rat> b2(m + 1), c(2 * n + 1);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            A2[i][j] = A[i][j];
            A2[i][n + j] = -A[i][j];
        }
        A2[i][2 * n] = 1;
        b2[i] = b[i];
    }
    A2[m][2 * n] = 1;  // s <= 1
    b2[m] = 1;
    c[2 * n] = 1;

    // b may have negative entries only if the zero point violates a
    // constraint; here b >= 0 always holds for convexity systems (b = 0),
    // but guard anyway.
    for (const Rat& bi : b2)
        if (bi < 0) throw invalid_argument_error("strict_feasible_point: needs b >= 0");

    auto res = simplex_max(A2, b2, c);
    if (!res) throw internal_error("strict_feasible_point: capped LP cannot be unbounded");
    if (res->objective <= 0) return std::nullopt;
    std::vector<Rat> x(n);
    for (int j = 0; j < n; ++j) x[j] = res->x[j] - res->x[n + j];
    return x;
}

}  // namespace tropq
