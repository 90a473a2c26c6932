/**
 * simplex.hpp — dense phase-1 simplex for small linear feasibility
 * problems:  find x ≥ 0 with A·x = b.
 *
 * This is all the LP machinery the project needs (the stochastic
 * degradedness witness search has ≤ a few dozen unknowns), so a dense
 * tableau with Bland's anti-cycling rule is used: deterministic, exact
 * pivoting order, no external solver dependency.
 *
 * Method: rows with negative b are negated, one artificial variable per
 * row forms the starting basis, and the sum of artificials is minimized.
 * At optimum the objective equals the minimal total constraint violation
 * (L1); zero (within tolerance) means the system is feasible and the
 * structural part of the basic solution is a witness.
 */

#ifndef ISAC_SIMPLEX_HPP
#define ISAC_SIMPLEX_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "isac/errors.hpp"

namespace isac {

struct SimplexResult {
    /** Phase-1 optimum: minimal achievable Σ|violation| (0 ⇔ feasible). */
    double infeasibility = 0.0;
    /** Structural solution (meaningful when infeasibility ≈ 0). */
    std::vector<double> x;
    int iterations = 0;
};

/**
 * Solve the phase-1 feasibility problem for A (m×n, row-major) and b.
 * Throws SolverFailure on numerical breakdown (NaN, lost pivot, or
 * iteration cap) — infeasibility is NOT an error, it is reported in the
 * result.
 */
inline SimplexResult simplex_feasibility(const std::vector<double>& A,
                                         std::size_t m, std::size_t n,
                                         const std::vector<double>& b,
                                         double pivot_eps = 1e-11) {
    if (A.size() != m * n || b.size() != m)
        throw SolverFailure("simplex: dimension mismatch");

    const std::size_t cols = n + m + 1;  // structural | artificial | rhs
    const std::size_t rhs = cols - 1;
    // tab[0] = reduced-cost row; tab[1..m] = constraints.
    std::vector<double> tab((m + 1) * cols, 0.0);
    std::vector<std::size_t> basis(m);
    auto at = [&](std::size_t r, std::size_t c) -> double& {
        return tab[r * cols + c];
    };

    for (std::size_t i = 0; i < m; ++i) {
        double sign = b[i] < 0.0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) at(i + 1, j) = sign * A[i * n + j];
        at(i + 1, n + i) = 1.0;
        at(i + 1, rhs) = sign * b[i];
        basis[i] = n + i;
    }
    // Objective: minimize sum of artificials. With the artificial basis the
    // reduced cost of structural column j is −Σ_i A_ij and the objective
    // value is Σ_i b_i (stored negated in the rhs cell).
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += at(i + 1, j);
        at(0, j) = -s;
    }
    {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += at(i + 1, rhs);
        at(0, rhs) = -s;
    }

    SimplexResult res;
    const int max_iter = 200 * static_cast<int>(m + n) + 200;
    while (true) {
        // Bland: entering = smallest structural column that improves.
        // Artificial columns never re-enter.
        std::size_t enter = cols;
        for (std::size_t j = 0; j < n; ++j)
            if (at(0, j) < -pivot_eps) {
                enter = j;
                break;
            }
        if (enter == cols) break;  // optimal

        // Ratio test; Bland tie-break on the smallest basic variable.
        std::size_t leave = 0;
        double best_ratio = 0.0;
        bool found = false;
        for (std::size_t i = 1; i <= m; ++i) {
            double piv = at(i, enter);
            if (piv <= pivot_eps) continue;
            double ratio = at(i, rhs) / piv;
            if (!found || ratio < best_ratio - 0.0 ||
                (ratio == best_ratio && basis[i - 1] < basis[leave - 1])) {
                best_ratio = ratio;
                leave = i;
                found = true;
            }
        }
        if (!found)
            throw SolverFailure(
                "simplex: unbounded pivot column in phase 1 (numerical "
                "breakdown)");

        // Pivot on (leave, enter).
        double piv = at(leave, enter);
        for (std::size_t c = 0; c < cols; ++c) at(leave, c) /= piv;
        for (std::size_t r = 0; r <= m; ++r) {
            if (r == leave) continue;
            double f = at(r, enter);
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < cols; ++c)
                at(r, c) -= f * at(leave, c);
        }
        basis[leave - 1] = enter;

        if (++res.iterations > max_iter)
            throw SolverFailure("simplex: iteration cap exceeded");
        if (!std::isfinite(at(0, rhs)))
            throw SolverFailure("simplex: non-finite objective");
    }

    res.infeasibility = -at(0, rhs);
    if (res.infeasibility < 0.0) res.infeasibility = 0.0;
    res.x.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) {
            double v = at(i + 1, rhs);
            res.x[basis[i]] = v < 0.0 ? 0.0 : v;  // clip pivot residue
        }
    return res;
}

} // namespace isac

#endif // ISAC_SIMPLEX_HPP
