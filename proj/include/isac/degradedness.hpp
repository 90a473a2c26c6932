/**
 * degradedness.hpp — degradation-order checks for ISAC channels.
 *
 * A channel (with a fixed input law P_AX) is physically degraded when the
 * joint factors as
 *
 *     P_{AX} · P_{S₁|A} · P_{Y₁|S₁X} · P_{Y₂S₂|Y₁S₁},
 *
 * i.e. the eavesdropper's pair (Y₂,S₂) is a noisy function of the
 * legitimate pair (Y₁,S₁) only. Reverse physical degradedness swaps the
 * roles of the two terminals. Stochastic degradedness only asks for the
 * marginals to admit such a representation: there must exist a kernel
 * T(y₂,s₂|y₁,s₁) with
 *
 *     P_{Y₂S₂|AX} = Σ_{y₁,s₁} P_{Y₁S₁|AX} · T     on supp(P_AX),
 *
 * which is a linear feasibility problem solved here with the in-repo
 * phase-1 simplex.
 *
 * The physical check verifies the three conditional independences the
 * factorization is equivalent to:
 *   (i)   I(S₁;X|A) = 0                (state kernel splits off P_{S₁|A})
 *   (ii)  P_{Y₂S₂|Y₁S₁AX} constant in (a,x) on supported rows
 *   (iii) I(Y₁;A|S₁,X) = 0             (output factor must not see A)
 * Condition (iii) is genuinely independent of the first two: a channel
 * whose Y₁ leaks the action (e.g. S₁ constant, Y₁ a copy of an
 * A-dependent S₂) satisfies (i)+(ii) but does not factor.
 */

#ifndef ISAC_DEGRADEDNESS_HPP
#define ISAC_DEGRADEDNESS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "isac/channel.hpp"
#include "isac/pmf.hpp"
#include "isac/simplex.hpp"

namespace isac {

/* ================================================================== */
/*  Report type                                                        */
/* ================================================================== */

/**
 * Witness kernel T(y₂,s₂|y₁,s₁): rows indexed by (y₁,s₁) with s₁ fastest,
 * columns by (y₂,s₂) with s₂ fastest.
 */
struct StochasticWitness {
    int rows = 0, cols = 0;
    std::vector<double> T;

    double at(int y1, int s1, int y2, int s2, int S1, int S2) const {
        return T[static_cast<std::size_t>(y1 * S1 + s1) * cols + y2 * S2 + s2];
    }
};

struct DegradednessReport {
    bool physically_degraded = false;
    double pd_residual = 0.0;
    bool reversely_degraded = false;
    double rpd_residual = 0.0;
    bool stochastically_degraded = false;
    double lp_residual = 0.0;
    std::optional<StochasticWitness> witness;
};

namespace detail {

/** Joint over (A,X,S1,S2,Y1,Y2); any auxiliary V is marginalized away. */
inline JointPmf physical_joint(const InputLaw& law, const ChannelSpec& ch) {
    JointPmf j = assemble_joint(law, ch);
    if (!law.has_aux()) return j;
    return j.marginalize({"A", "X", "S1", "S2", "Y1", "Y2"});
}

/**
 * Max deviation of P(out|mid,A,X) from the pooled P(out|mid) over
 * supported conditioning rows — 0 iff the kernel is constant in (a,x).
 */
inline double kernel_constancy_residual(const JointPmf& j,
                                        const std::vector<std::string>& out,
                                        const std::vector<std::string>& mid) {
    std::vector<std::string> mid_ax(mid);
    mid_ax.push_back("A");
    mid_ax.push_back("X");
    ConditionalKernel full = j.condition(out, mid_ax);
    ConditionalKernel pooled = j.condition(out, mid);
    // Row index layout of `full` is (mid..., a, x) with x fastest, so the
    // pooled row index is the full row index divided by |A||X|.
    std::size_t ax_cells = full.given_cells() / pooled.given_cells();
    double worst = 0.0;
    for (std::size_t g = 0; g < full.given_cells(); ++g) {
        if (!full.row_defined(g)) continue;
        std::size_t gp = g / ax_cells;
        for (std::size_t t = 0; t < full.target_cells(); ++t) {
            double dev = std::abs(full.prob(g, t) - pooled.prob(gp, t));
            if (dev > worst) worst = dev;
        }
    }
    return worst;
}

} // namespace detail

/* ================================================================== */
/*  Physical / reverse checks                                          */
/* ================================================================== */

/**
 * Physically degraded? Returns (decision, residual) where the residual is
 * the max of the three condition residuals (conditional MIs in bits and
 * the kernel-constancy deviation).
 */
inline std::pair<bool, double> check_physically_degraded(
    const ChannelSpec& ch, const InputLaw& law, double tol = 1e-9) {
    if (!(tol > 0.0)) throw DomainError("check_physically_degraded: tol ≤ 0");
    JointPmf j = detail::physical_joint(law, ch);
    double r1 = j.conditional_mutual_information({"S1"}, {"X"}, {"A"});
    double r2 = detail::kernel_constancy_residual(j, {"Y2", "S2"},
                                                  {"Y1", "S1"});
    double r3 = j.conditional_mutual_information({"Y1"}, {"A"}, {"S1", "X"});
    double residual = std::max(r1, std::max(r2, r3));
    return {residual <= tol, residual};
}

/** Mirror image with the terminals swapped: is (Y₁,S₁) the degraded one? */
inline std::pair<bool, double> check_reversely_degraded(
    const ChannelSpec& ch, const InputLaw& law, double tol = 1e-9) {
    if (!(tol > 0.0)) throw DomainError("check_reversely_degraded: tol ≤ 0");
    JointPmf j = detail::physical_joint(law, ch);
    double r1 = j.conditional_mutual_information({"S2"}, {"X"}, {"A"});
    double r2 = detail::kernel_constancy_residual(j, {"Y1", "S1"},
                                                  {"Y2", "S2"});
    double r3 = j.conditional_mutual_information({"Y2"}, {"A"}, {"S2", "X"});
    double residual = std::max(r1, std::max(r2, r3));
    return {residual <= tol, residual};
}

/* ================================================================== */
/*  Stochastic check (LP feasibility)                                  */
/* ================================================================== */

/**
 * Max violation of the witness equations for a given T: reproduction of
 * P_{Y₂S₂|AX} on supported (a,x) plus row-stochasticity of T itself.
 */
inline double witness_residual(const ChannelSpec& ch, const InputLaw& law,
                               const StochasticWitness& w) {
    JointPmf j = detail::physical_joint(law, ch);
    JointPmf pax = j.marginalize({"A", "X"});
    ConditionalKernel k1 = j.condition({"Y1", "S1"}, {"A", "X"});
    ConditionalKernel k2 = j.condition({"Y2", "S2"}, {"A", "X"});
    const int R = ch.Y1 * ch.S1, C = ch.Y2 * ch.S2;
    if (w.rows != R || w.cols != C)
        throw AlphabetMismatch("witness_residual: witness dimensions");

    double worst = 0.0;
    for (int r = 0; r < R; ++r) {
        double sum = 0.0;
        for (int c = 0; c < C; ++c) sum += w.T[static_cast<std::size_t>(r) * C + c];
        double dev = std::abs(sum - 1.0);
        if (dev > worst) worst = dev;
    }
    for (std::size_t g = 0; g < k1.given_cells(); ++g) {
        if (pax.masses()[g] < kMassTol) continue;  // unsupported (a,x)
        for (int c = 0; c < C; ++c) {
            double lhs = 0.0;
            for (int r = 0; r < R; ++r)
                lhs += k1.prob(g, static_cast<std::size_t>(r)) *
                       w.T[static_cast<std::size_t>(r) * C + c];
            double dev = std::abs(lhs - k2.prob(g, static_cast<std::size_t>(c)));
            if (dev > worst) worst = dev;
        }
    }
    return worst;
}

struct StochasticResult {
    bool degraded = false;
    double residual = 0.0;  // witness residual when feasible, else LP gap
    std::optional<StochasticWitness> witness;
};

/**
 * Search for a stochastic-degradedness witness with the phase-1 simplex.
 * Infeasibility is a negative result, not an error; SolverFailure only
 * signals numerical breakdown.
 */
inline StochasticResult check_stochastically_degraded(const ChannelSpec& ch,
                                                      const InputLaw& law,
                                                      double tol = 1e-9) {
    if (!(tol > 0.0))
        throw DomainError("check_stochastically_degraded: tol ≤ 0");
    JointPmf j = detail::physical_joint(law, ch);
    JointPmf pax = j.marginalize({"A", "X"});
    ConditionalKernel k1 = j.condition({"Y1", "S1"}, {"A", "X"});
    ConditionalKernel k2 = j.condition({"Y2", "S2"}, {"A", "X"});

    const int R = ch.Y1 * ch.S1, C = ch.Y2 * ch.S2;
    const std::size_t n = static_cast<std::size_t>(R) * C;
    std::vector<std::size_t> supported;
    for (std::size_t g = 0; g < pax.cell_count(); ++g)
        if (pax.masses()[g] >= kMassTol) supported.push_back(g);

    const std::size_t m = supported.size() * static_cast<std::size_t>(C) +
                          static_cast<std::size_t>(R);
    std::vector<double> A(m * n, 0.0);
    std::vector<double> b(m, 0.0);
    std::size_t row = 0;
    for (std::size_t g : supported)
        for (int c = 0; c < C; ++c, ++row) {
            for (int r = 0; r < R; ++r)
                A[row * n + static_cast<std::size_t>(r) * C + c] =
                    k1.prob(g, static_cast<std::size_t>(r));
            b[row] = k2.prob(g, static_cast<std::size_t>(c));
        }
    for (int r = 0; r < R; ++r, ++row) {
        for (int c = 0; c < C; ++c)
            A[row * n + static_cast<std::size_t>(r) * C + c] = 1.0;
        b[row] = 1.0;
    }

    SimplexResult lp = simplex_feasibility(A, m, n, b);
    StochasticResult out;
    StochasticWitness w{R, C, lp.x};
    double residual = witness_residual(ch, law, w);
    if (residual <= tol) {
        out.degraded = true;
        out.residual = residual;
        out.witness = std::move(w);
    } else {
        out.degraded = false;
        out.residual = std::max(residual, lp.infeasibility);
    }
    return out;
}

/** Run all three checks and bundle the results. */
inline DegradednessReport degradedness_report(const ChannelSpec& ch,
                                              const InputLaw& law,
                                              double tol = 1e-9) {
    DegradednessReport rep;
    auto [pd, pd_res] = check_physically_degraded(ch, law, tol);
    rep.physically_degraded = pd;
    rep.pd_residual = pd_res;
    auto [rpd, rpd_res] = check_reversely_degraded(ch, law, tol);
    rep.reversely_degraded = rpd;
    rep.rpd_residual = rpd_res;
    StochasticResult st = check_stochastically_degraded(ch, law, tol);
    rep.stochastically_degraded = st.degraded;
    rep.lp_residual = st.residual;
    rep.witness = std::move(st.witness);
    return rep;
}

} // namespace isac

#endif // ISAC_DEGRADEDNESS_HPP
