/**
 * binary_example.hpp — closed-form secrecy-distortion quantities for the
 * binary multiplicative-Bernoulli example, plus the independent entropy
 * oracle and a term-by-term reconciliation between the two.
 *
 * Shorthand: ∗ is binary convolution, H_b binary entropy, and
 *
 *     m  = p∗q            (the action marginal P(A=1))
 *     lm = λ∗m            (the state marginal P(S₁=0))
 *     c₀ = 1 − α(1−lm)    (the sensed-state marginal P(S₂=0))
 *     ql = q∗λ            (P(S₁=1|X=1))
 *
 * The five aggregates of the full-secrecy rate are stored separately so a
 * mismatch localizes to a single displayed expression:
 *
 *     term_r1p1 = H(S₁|Y₂,S₂)          = c₀·H_b(lm/c₀)
 *     term_r1p2 = H(Y₁|S₁,Y₂,S₂)       = (1−α)(1−lm)·H_b(p·ql/(1−lm))
 *     term_r1p3 = H(S₁|Y₁,Y₂,S₂,X,A)
 *               = (1−p)(1−q)(1−α+αλ)·H_b(λ/(1−α+λα))
 *                 + (1−p)q(1−αλ)·H_b((1−λ)/(1−αλ))
 *     term_r2p1 = H(X,A)
 *     term_r2p2 = H(X,A|Y₁,S₁)
 *               = −Σ_{x,a} J(x,a)·log₂(J(x,a)/lm)
 *                 + (1−p)(1−ql)·H_b(qλ/(1−ql)) + p·ql·H_b(q(1−λ)/ql),
 *     with J(x,a) = P_{XA}(x,a)·P(S₁=0|A=a)
 *
 * and r_max = min(term_r1p1 + term_r1p2 − term_r1p3,
 *                 term_r2p1 − term_r2p2).
 *
 * Distortion floors: d₁ = (1−p)·min{λ, 1−λ},
 * d₂ = (1−p)·[(1−q)·min{1−α+αλ, α−αλ} + q·min{1−αλ, αλ}].
 *
 * Two textual variants of the term_r1p2 argument circulate — p(q∗λ) and
 * p(1−q∗λ); they coincide at q = ½ and only the former matches the
 * oracle in general (it is P(X=1, S₁=1)). reconcile() evaluates both and
 * names the survivor. It also reports the deviation of the "coefficient-
 * free" H_b((1−λ)/(1−αλ)) form of term_r1p1, which agrees with the oracle
 * only when m = 1 (the missing coefficient is c₀ with argument lm/c₀).
 */

#ifndef ISAC_BINARY_EXAMPLE_HPP
#define ISAC_BINARY_EXAMPLE_HPP

#include <algorithm>
#include <string>

#include "isac/channel.hpp"
#include "isac/degradedness.hpp"
#include "isac/estimation.hpp"
#include "isac/pmf.hpp"

namespace isac {

/* ================================================================== */
/*  Result types                                                       */
/* ================================================================== */

struct Lemma1Point {
    double r_max = 0.0;
    double d1_min = 0.0, d2_min = 0.0;
    double term_r1p1 = 0.0, term_r1p2 = 0.0, term_r1p3 = 0.0;
    double term_r2p1 = 0.0, term_r2p2 = 0.0;

    double first_min_term() const { return term_r1p1 + term_r1p2 - term_r1p3; }
    double second_min_term() const { return term_r2p1 - term_r2p2; }
};

namespace detail {

/** coef·H_b(num/den) with the 0-coefficient limit (den → 0) mapped to 0. */
inline double weighted_hb(double coef, double num, double den) {
    if (coef <= kZeroMass) return 0.0;
    double ratio = num / den;
    if (ratio < 0.0) ratio = 0.0;
    if (ratio > 1.0) ratio = 1.0;  // float noise at the simplex boundary
    return coef * binary_entropy(ratio);
}

/** −x·log₂(x/y) with the x → 0 limit mapped to 0. */
inline double neg_xlog_ratio(double x, double y) {
    if (x <= kZeroMass) return 0.0;
    return -x * std::log2(x / y);
}

} // namespace detail

/* ================================================================== */
/*  Closed form                                                        */
/* ================================================================== */

/**
 * Evaluate the closed-form expressions above. Degenerate denominators are
 * covered by the vanishing coefficients (see detail::weighted_hb), so the
 * whole parameter cube [0,1]⁴ is in domain.
 */
inline Lemma1Point lemma1_closed_form(const BinaryParams& bp) {
    bp.validate();
    const double l = bp.lambda, al = bp.alpha, p = bp.p, q = bp.q;
    const double m = convolve(p, q);
    const double lm = convolve(l, m);
    const double c0 = 1.0 - al * (1.0 - lm);
    const double ql = convolve(q, l);

    Lemma1Point out;
    out.term_r1p1 = detail::weighted_hb(c0, lm, c0);
    out.term_r1p2 =
        detail::weighted_hb((1 - al) * (1 - lm), p * ql, 1 - lm);
    out.term_r1p3 =
        detail::weighted_hb((1 - p) * (1 - q) * (1 - al + al * l), l,
                            1 - al + l * al) +
        detail::weighted_hb((1 - p) * q * (1 - al * l), 1 - l, 1 - al * l);
    out.term_r2p1 = xlog2x((1 - p) * (1 - q)) + xlog2x(p * q) +
                    xlog2x((1 - p) * q) + xlog2x(p * (1 - q));
    out.term_r2p2 =
        detail::neg_xlog_ratio((1 - p) * (1 - q) * l, lm) +
        detail::neg_xlog_ratio(p * q * l, lm) +
        detail::neg_xlog_ratio((1 - p) * q * (1 - l), lm) +
        detail::neg_xlog_ratio(p * (1 - q) * (1 - l), lm) +
        detail::weighted_hb((1 - p) * (1 - ql), q * l, 1 - ql) +
        detail::weighted_hb(p * ql, q * (1 - l), ql);

    out.r_max =
        std::max(0.0, std::min(out.first_min_term(), out.second_min_term()));
    out.d1_min = (1 - p) * std::min(l, 1 - l);
    out.d2_min = (1 - p) * ((1 - q) * std::min(1 - al + al * l, al - al * l) +
                            q * std::min(1 - al * l, al * l));
    return out;
}

/** term_r1p2 under the alternative textual argument p(1−q∗λ). */
inline double lemma1_r1p2_appendix_variant(const BinaryParams& bp) {
    bp.validate();
    const double lm = convolve(bp.lambda, convolve(bp.p, bp.q));
    const double ql = convolve(bp.q, bp.lambda);
    return detail::weighted_hb((1 - bp.alpha) * (1 - lm), bp.p * (1 - ql),
                               1 - lm);
}

/* ================================================================== */
/*  Entropy oracle                                                     */
/* ================================================================== */

/**
 * The same quantities computed with no closed forms at all: assemble the
 * 64-cell joint, take entropies, and run the optimal estimators.
 */
inline Lemma1Point lemma1_oracle(const BinaryParams& bp) {
    auto [ch, law] = binary_example_channel(bp);
    JointPmf j = assemble_joint(law, ch);

    Lemma1Point out;
    out.term_r1p1 = j.conditional_entropy({"S1"}, {"Y2", "S2"});
    out.term_r1p2 = j.conditional_entropy({"Y1"}, {"S1", "Y2", "S2"});
    out.term_r1p3 =
        j.conditional_entropy({"S1"}, {"Y1", "Y2", "S2", "X", "A"});
    out.term_r2p1 = j.entropy({"X", "A"});
    out.term_r2p2 = j.conditional_entropy({"X", "A"}, {"Y1", "S1"});
    out.r_max =
        std::max(0.0, std::min(out.first_min_term(), out.second_min_term()));
    out.d1_min = optimal_distortion(ch, law, 1);
    out.d2_min = optimal_distortion(ch, law, 2);
    return out;
}

/* ================================================================== */
/*  Reconciliation                                                     */
/* ================================================================== */

struct Lemma1Reconcile {
    BinaryParams params;
    Lemma1Point closed, oracle;
    double gap_r1p1 = 0.0, gap_r1p2 = 0.0, gap_r1p3 = 0.0;
    double gap_r2p1 = 0.0, gap_r2p2 = 0.0;
    double gap_r = 0.0, gap_d1 = 0.0, gap_d2 = 0.0;
    /** Largest of all gaps above. */
    double max_gap = 0.0;
    /** |variant − oracle term_r1p2| for the two textual arguments. */
    double variant_main_gap = 0.0, variant_appendix_gap = 0.0;
    /** Which r1p2 argument agrees with the oracle at these parameters. */
    std::string survivor;
    /** Deviation of the coefficient-free H_b((1−λ)/(1−αλ)) r1p1 form. */
    double displayed_r1p1_gap = 0.0;

    bool ok(double tol) const { return max_gap <= tol; }
};

inline Lemma1Reconcile reconcile(const BinaryParams& bp, double tol = 1e-9) {
    Lemma1Reconcile r;
    r.params = bp;
    r.closed = lemma1_closed_form(bp);
    r.oracle = lemma1_oracle(bp);
    r.gap_r1p1 = std::abs(r.closed.term_r1p1 - r.oracle.term_r1p1);
    r.gap_r1p2 = std::abs(r.closed.term_r1p2 - r.oracle.term_r1p2);
    r.gap_r1p3 = std::abs(r.closed.term_r1p3 - r.oracle.term_r1p3);
    r.gap_r2p1 = std::abs(r.closed.term_r2p1 - r.oracle.term_r2p1);
    r.gap_r2p2 = std::abs(r.closed.term_r2p2 - r.oracle.term_r2p2);
    r.gap_r = std::abs(r.closed.r_max - r.oracle.r_max);
    r.gap_d1 = std::abs(r.closed.d1_min - r.oracle.d1_min);
    r.gap_d2 = std::abs(r.closed.d2_min - r.oracle.d2_min);
    r.max_gap = std::max({r.gap_r1p1, r.gap_r1p2, r.gap_r1p3, r.gap_r2p1,
                          r.gap_r2p2, r.gap_r, r.gap_d1, r.gap_d2});

    r.variant_main_gap = r.gap_r1p2;  // shipped closed form IS the main text
    r.variant_appendix_gap =
        std::abs(lemma1_r1p2_appendix_variant(bp) - r.oracle.term_r1p2);
    bool main_ok = r.variant_main_gap <= tol;
    bool appendix_ok = r.variant_appendix_gap <= tol;
    if (main_ok && appendix_ok)
        r.survivor = "both (arguments coincide here)";
    else if (main_ok)
        r.survivor = "p(q*lambda)";
    else if (appendix_ok)
        r.survivor = "p(1-q*lambda)";
    else
        r.survivor = "neither";

    {
        const double den = 1.0 - bp.alpha * bp.lambda;
        double displayed = 0.0;
        if (den > kZeroMass) {
            double arg = std::clamp((1.0 - bp.lambda) / den, 0.0, 1.0);
            displayed = binary_entropy(arg);
        }
        r.displayed_r1p1_gap = std::abs(displayed - r.oracle.term_r1p1);
    }
    return r;
}

/* ================================================================== */
/*  Explicit degradedness witness                                      */
/* ================================================================== */

/**
 * The hand-built stochastic-degradedness witness of the example:
 * s₁ = 0 forces (y₂,s₂) = (0,0); s₁ = 1 draws s₂ ~ Bern(α) and sets
 * y₂ = s₂·y₁. Reproduces P_{Y₂S₂|AX} exactly for every (λ,α,p,q).
 */
inline StochasticWitness binary_example_witness(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw DomainError("binary_example_witness: alpha outside [0,1]");
    StochasticWitness w;
    w.rows = 4;  // (y₁,s₁), s₁ fastest
    w.cols = 4;  // (y₂,s₂), s₂ fastest
    w.T.assign(16, 0.0);
    auto set = [&](int y1, int s1, int y2, int s2, double v) {
        w.T[static_cast<std::size_t>(y1 * 2 + s1) * 4 + y2 * 2 + s2] = v;
    };
    for (int y1 = 0; y1 < 2; ++y1) {
        set(y1, 0, 0, 0, 1.0);               // s₁ = 0 ⇒ (0,0)
        set(y1, 1, 0, 0, 1.0 - alpha);       // s₂ = 0 ⇒ y₂ = 0
        set(y1, 1, y1, 1, alpha);            // s₂ = 1 ⇒ y₂ = y₁
    }
    return w;
}

} // namespace isac

#endif // ISAC_BINARY_EXAMPLE_HPP
