/**
 * simulate.hpp — Monte-Carlo sampling of a channel + input law, and
 * empirical re-estimation of the distortion floors.
 *
 * Sampling is counter-based: draw i is a deterministic function of
 * (seed, i) through SplitMix64, so a batch is reproducible bit-for-bit
 * regardless of threading or platform. Each draw picks a joint cell of
 * (A,X,S₁,S₂,Y₁,Y₂) by inverse-CDF lookup against the assembled joint
 * distribution (the auxiliary V, when present, is marginalized out — it
 * does not affect the physical channel statistics).
 */

#ifndef ISAC_SIMULATE_HPP
#define ISAC_SIMULATE_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include "isac/channel.hpp"
#include "isac/estimation.hpp"
#include "isac/pmf.hpp"
#include "isac/rng.hpp"

namespace isac {

/* ================================================================== */
/*  Sample batches                                                     */
/* ================================================================== */

/**
 * Counts of joint symbols (a,x,s₁,s₂,y₁,y₂) over n i.i.d. draws.
 * Cell order is the usual mixed radix with the last variable fastest.
 */
struct SampleBatch {
    long long n = 0;
    std::uint64_t seed = 0;
    int A = 0, X = 0, S1 = 0, S2 = 0, Y1 = 0, Y2 = 0;
    std::vector<long long> counts;
    /** Exact cell probabilities the batch was drawn from. */
    std::vector<double> probabilities;

    std::size_t cells() const { return counts.size(); }
    std::size_t flat(int a, int x, int s1, int s2, int y1, int y2) const {
        return static_cast<std::size_t>(
            ((((a * X + x) * S1 + s1) * S2 + s2) * Y1 + y1) * Y2 + y2);
    }
};

/** Draw n i.i.d. samples of (A,X,S₁,S₂,Y₁,Y₂). */
inline SampleBatch sample(const ChannelSpec& ch, const InputLaw& law,
                          long long n, std::uint64_t seed) {
    if (n < 0) throw DomainError("sample: negative sample count");
    JointPmf joint = assemble_joint(law, ch);
    if (law.has_aux())
        joint = joint.marginalize({"A", "X", "S1", "S2", "Y1", "Y2"});

    SampleBatch b;
    b.n = n;
    b.seed = seed;
    b.A = ch.A;
    b.X = ch.X;
    b.S1 = ch.S1;
    b.S2 = ch.S2;
    b.Y1 = ch.Y1;
    b.Y2 = ch.Y2;
    b.probabilities = joint.masses();
    b.counts.assign(b.probabilities.size(), 0);

    std::vector<double> cdf(b.probabilities.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < cdf.size(); ++i) {
        acc += b.probabilities[i];
        cdf[i] = acc;
    }

    SplitMix64 gen(seed);
    const std::size_t last = cdf.size() - 1;
    for (long long i = 0; i < n; ++i) {
        double u = gen.unit(static_cast<std::uint64_t>(i));
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
        if (idx > last) idx = last;  // u beyond accumulated total (≈1)
        ++b.counts[idx];
    }
    return b;
}

/* ================================================================== */
/*  Empirical functionals                                              */
/* ================================================================== */

/** Empirical per-cell frequencies counts/n. */
inline std::vector<double> empirical_frequencies(const SampleBatch& b) {
    std::vector<double> f(b.counts.size(), 0.0);
    if (b.n == 0) return f;
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = static_cast<double>(b.counts[i]) / static_cast<double>(b.n);
    return f;
}

/** L1 distance between empirical frequencies and the exact joint. */
inline double empirical_l1_gap(const SampleBatch& b) {
    std::vector<double> f = empirical_frequencies(b);
    double l1 = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        l1 += std::abs(f[i] - b.probabilities[i]);
    return l1;
}

/**
 * Average distortion of an estimator table over the batch:
 * (1/n)·Σ counts(a,x,s₁,s₂,y₁,y₂) · d_j(s_j, est(a,x,y₁,y₂)).
 */
inline double empirical_distortion(const SampleBatch& b, const ChannelSpec& ch,
                                   const EstimatorTable& est) {
    if (est.j != 1 && est.j != 2)
        throw AlphabetMismatch("empirical_distortion: estimator side must be 1 or 2");
    if (est.A != b.A || est.X != b.X || est.Y1 != b.Y1 || est.Y2 != b.Y2)
        throw AlphabetMismatch(
            "empirical_distortion: estimator/batch alphabet mismatch");
    if (b.n == 0) return 0.0;
    double total = 0.0;
    for (int a = 0; a < b.A; ++a)
        for (int x = 0; x < b.X; ++x)
            for (int s1 = 0; s1 < b.S1; ++s1)
                for (int s2 = 0; s2 < b.S2; ++s2)
                    for (int y1 = 0; y1 < b.Y1; ++y1)
                        for (int y2 = 0; y2 < b.Y2; ++y2) {
                            long long c = b.counts[b.flat(a, x, s1, s2, y1, y2)];
                            if (c == 0) continue;
                            int shat = est.at(a, x, y1, y2);
                            double d = (est.j == 1) ? ch.d1(s1, shat)
                                                    : ch.d2(s2, shat);
                            total += static_cast<double>(c) * d;
                        }
    return total / static_cast<double>(b.n);
}

/* ================================================================== */
/*  One-stop report                                                    */
/* ================================================================== */

struct SimulationReport {
    long long n = 0;
    std::uint64_t seed = 0;
    double analytic_d1 = 0.0, analytic_d2 = 0.0;
    double empirical_d1 = 0.0, empirical_d2 = 0.0;
    double l1_gap = 0.0;
};

/**
 * Sample once, run both optimal estimators over the batch, and compare
 * against the exact distortion floors and the exact joint law.
 */
inline SimulationReport simulate_report(const ChannelSpec& ch,
                                        const InputLaw& law, long long n,
                                        std::uint64_t seed) {
    SimulationReport rep;
    rep.n = n;
    rep.seed = seed;
    SampleBatch b = sample(ch, law, n, seed);
    EstimatorTable e1 = optimal_estimator(ch, law, 1);
    EstimatorTable e2 = optimal_estimator(ch, law, 2);
    rep.analytic_d1 = expected_distortion(ch, law, e1);
    rep.analytic_d2 = expected_distortion(ch, law, e2);
    rep.empirical_d1 = empirical_distortion(b, ch, e1);
    rep.empirical_d2 = empirical_distortion(b, ch, e2);
    rep.l1_gap = empirical_l1_gap(b);
    return rep;
}

} // namespace isac

#endif // ISAC_SIMULATE_HPP
