/**
 * estimation.hpp — optimal deterministic per-letter state estimators and
 * expected distortions.
 *
 * The receiver-side estimator for state S_j observes (A,X,Y₁,Y₂) and
 * minimizes the posterior expected distortion cell by cell:
 *
 *     Est_j(a,x,y₁,y₂) = argmin_{s̃ ∈ Ŝ_j} Σ_{s_j} P_{S_j|AXY₁Y₂}(s_j|·) ·
 *                                           d_j(s_j, s̃)
 *
 * with ties broken toward the smallest estimate index and zero-mass cells
 * mapped to index 0 (they carry no distortion). Deterministic estimators
 * suffice for the regions computed here, so randomized ones are not
 * modeled.
 */

#ifndef ISAC_ESTIMATION_HPP
#define ISAC_ESTIMATION_HPP

#include <string>
#include <vector>

#include "isac/channel.hpp"
#include "isac/pmf.hpp"

namespace isac {

/* ================================================================== */
/*  Estimator table                                                    */
/* ================================================================== */

struct EstimatorTable {
    int j = 1;  // which state: 1 or 2
    int A = 0, X = 0, Y1 = 0, Y2 = 0, Shat = 0;
    /** Estimate per (a,x,y₁,y₂), mixed-radix with y₂ fastest. */
    std::vector<int> table;

    std::size_t cell(int a, int x, int y1, int y2) const {
        return ((static_cast<std::size_t>(a) * X + x) * Y1 + y1) * Y2 + y2;
    }
    int at(int a, int x, int y1, int y2) const {
        return table[cell(a, x, y1, y2)];
    }
};

/* ================================================================== */
/*  Posterior cost table                                               */
/* ================================================================== */

/**
 * Unnormalized posterior costs: cost[cell][s̃] = Σ_{s_j} P(a,x,s_j,y₁,y₂)
 * · d_j(s_j,s̃). Expected distortion of any deterministic table is then
 * the sum of its chosen cost per cell — shared by the optimizer, the
 * expected-distortion evaluator, and exhaustive-oracle tests.
 */
struct EstimationCosts {
    int j = 1;
    int A = 0, X = 0, Y1 = 0, Y2 = 0, Shat = 0;
    std::vector<double> cost;  // [(a,x,y₁,y₂) cell × s̃], s̃ fastest
    std::vector<char> occupied;  // cell has mass ≥ kZeroMass

    std::size_t cells() const { return occupied.size(); }
    std::size_t cell_index(int a, int x, int y1, int y2) const {
        return static_cast<std::size_t>(((a * X + x) * Y1 + y1) * Y2 + y2);
    }
    double at(std::size_t cell, int shat) const {
        return cost[cell * static_cast<std::size_t>(Shat) + shat];
    }
};

inline EstimationCosts estimation_costs(const ChannelSpec& ch,
                                        const InputLaw& law, int j) {
    if (j != 1 && j != 2)
        throw AlphabetMismatch("estimation: j must be 1 or 2, got " +
                               std::to_string(j));
    const int S = j == 1 ? ch.S1 : ch.S2;
    const int Shat = j == 1 ? ch.S1hat : ch.S2hat;
    const std::string sname = j == 1 ? "S1" : "S2";

    JointPmf joint = assemble_joint(law, ch);
    JointPmf marg = joint.marginalize({"A", "X", sname, "Y1", "Y2"});

    EstimationCosts ec;
    ec.j = j;
    ec.A = ch.A;
    ec.X = ch.X;
    ec.Y1 = ch.Y1;
    ec.Y2 = ch.Y2;
    ec.Shat = Shat;
    std::size_t ncells = static_cast<std::size_t>(ch.A) * ch.X * ch.Y1 * ch.Y2;
    ec.cost.assign(ncells * static_cast<std::size_t>(Shat), 0.0);
    ec.occupied.assign(ncells, 0);

    std::vector<int> asg(5);
    for (int a = 0; a < ch.A; ++a)
        for (int x = 0; x < ch.X; ++x)
            for (int y1 = 0; y1 < ch.Y1; ++y1)
                for (int y2 = 0; y2 < ch.Y2; ++y2) {
                    std::size_t cell =
                        ((static_cast<std::size_t>(a) * ch.X + x) * ch.Y1 +
                         y1) * ch.Y2 + y2;
                    double total = 0.0;
                    for (int s = 0; s < S; ++s) {
                        asg = {a, x, s, y1, y2};
                        double w = marg.mass_of(asg);
                        total += w;
                        for (int sh = 0; sh < Shat; ++sh)
                            ec.cost[cell * Shat + sh] +=
                                w * (j == 1 ? ch.d1(s, sh) : ch.d2(s, sh));
                    }
                    if (total >= kZeroMass) ec.occupied[cell] = 1;
                }
    return ec;
}

/* ================================================================== */
/*  Operations                                                         */
/* ================================================================== */

/** Synthesize the optimal deterministic estimator for state j ∈ {1,2}. */
inline EstimatorTable optimal_estimator(const ChannelSpec& ch,
                                        const InputLaw& law, int j) {
    EstimationCosts ec = estimation_costs(ch, law, j);
    EstimatorTable est;
    est.j = j;
    est.A = ec.A;
    est.X = ec.X;
    est.Y1 = ec.Y1;
    est.Y2 = ec.Y2;
    est.Shat = ec.Shat;
    est.table.assign(ec.cells(), 0);
    for (std::size_t cell = 0; cell < ec.cells(); ++cell) {
        if (!ec.occupied[cell]) continue;  // zero-mass cell keeps index 0
        int best = 0;
        double best_cost = ec.at(cell, 0);
        for (int sh = 1; sh < ec.Shat; ++sh)
            if (ec.at(cell, sh) < best_cost) {  // strict: ties keep smaller
                best_cost = ec.at(cell, sh);
                best = sh;
            }
        est.table[cell] = best;
    }
    return est;
}

/** E[d_j(S_j, est(A,X,Y₁,Y₂))] under the assembled single-letter joint. */
inline double expected_distortion(const ChannelSpec& ch, const InputLaw& law,
                                  const EstimatorTable& est) {
    if (est.A != ch.A || est.X != ch.X || est.Y1 != ch.Y1 || est.Y2 != ch.Y2)
        throw AlphabetMismatch("expected_distortion: estimator domain does "
                               "not match channel");
    if (est.Shat != (est.j == 1 ? ch.S1hat : ch.S2hat))
        throw AlphabetMismatch("expected_distortion: estimate alphabet "
                               "mismatch");
    EstimationCosts ec = estimation_costs(ch, law, est.j);
    if (est.table.size() != ec.cells())
        throw AlphabetMismatch("expected_distortion: estimator table has " +
                               std::to_string(est.table.size()) +
                               " cells, expected " +
                               std::to_string(ec.cells()));
    double d = 0.0;
    for (std::size_t cell = 0; cell < ec.cells(); ++cell) {
        int choice = est.table[cell];
        if (choice < 0 || choice >= est.Shat)
            throw AlphabetMismatch(
                "expected_distortion: table entry " + std::to_string(choice) +
                " outside the estimate alphabet");
        d += ec.at(cell, choice);
    }
    return d;
}

/** Convenience: distortion of the optimal estimator for state j. */
inline double optimal_distortion(const ChannelSpec& ch, const InputLaw& law,
                                 int j) {
    return expected_distortion(ch, law, optimal_estimator(ch, law, j));
}

} // namespace isac

#endif // ISAC_ESTIMATION_HPP
