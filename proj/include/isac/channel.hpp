/**
 * channel.hpp — ISAC channel specifications and single-letter joint
 * assembly.
 *
 * A ChannelSpec is the memoryless state-dependent channel of the model:
 * the action A steers the state pair (S₁,S₂) through the state kernel
 * P_{S₁S₂|A}, and the input X together with the states produces the
 * outputs (Y₁,Y₂) through the output kernel P_{Y₁Y₂|S₁S₂X}. Per-letter
 * distortion metrics d₁, d₂ grade state estimates over the estimate
 * alphabets Ŝ₁, Ŝ₂.
 *
 * An InputLaw is either P_{AX} (full-secrecy mode, no auxiliary variable)
 * or P_{VAX} (partial-secrecy mode with auxiliary alphabet 𝒱).
 *
 * Kernel tables are dense row-major with mixed-radix ordering, last
 * variable fastest:
 *   state_kernel  : row a                cols (s₁,s₂), s₂ fastest
 *   output_kernel : row (s₁,s₂,x), x fastest
 *                                        cols (y₁,y₂), y₂ fastest
 *   distortion_j  : row s_j              cols ŝ_j
 *   InputLaw.mass : (a,x) x fastest, or (v,a,x) x fastest
 *
 * The assembled joint uses the canonical variable order
 * (V?,A,X,S₁,S₂,Y₁,Y₂) so serialized pmfs are bit-stable.
 */

#ifndef ISAC_CHANNEL_HPP
#define ISAC_CHANNEL_HPP

#include <string>
#include <utility>
#include <vector>

#include "isac/errors.hpp"
#include "isac/pmf.hpp"

namespace isac {

/* ================================================================== */
/*  Channel specification                                              */
/* ================================================================== */

struct ChannelSpec {
    int A = 0, X = 0, S1 = 0, S2 = 0, Y1 = 0, Y2 = 0;
    int S1hat = 0, S2hat = 0;
    std::vector<double> state_kernel;   // |A| rows × |S1||S2| cols
    std::vector<double> output_kernel;  // |S1||S2||X| rows × |Y1||Y2| cols
    std::vector<double> distortion1;    // |S1| × |S1hat|
    std::vector<double> distortion2;    // |S2| × |S2hat|

    double state_prob(int s1, int s2, int a) const {
        return state_kernel[static_cast<std::size_t>(a) * (S1 * S2) +
                            static_cast<std::size_t>(s1) * S2 + s2];
    }
    double output_prob(int y1, int y2, int s1, int s2, int x) const {
        std::size_t row = (static_cast<std::size_t>(s1) * S2 + s2) * X + x;
        return output_kernel[row * (Y1 * Y2) +
                             static_cast<std::size_t>(y1) * Y2 + y2];
    }
    double d1(int s1, int s1hat) const {
        return distortion1[static_cast<std::size_t>(s1) * S1hat + s1hat];
    }
    double d2(int s2, int s2hat) const {
        return distortion2[static_cast<std::size_t>(s2) * S2hat + s2hat];
    }

    /**
     * Validate sizes, row-stochasticity (1 ± kMassTol), non-negativity,
     * and distortion finiteness. Throws ParseError naming the offending
     * field and row.
     */
    void validate() const {
        auto positive = [](int n, const char* name) {
            if (n < 1)
                throw ParseError(std::string("alphabet '") + name +
                                 "' must be ≥ 1");
        };
        positive(A, "A");
        positive(X, "X");
        positive(S1, "S1");
        positive(S2, "S2");
        positive(Y1, "Y1");
        positive(Y2, "Y2");
        positive(S1hat, "S1hat");
        positive(S2hat, "S2hat");
        check_kernel(state_kernel, static_cast<std::size_t>(A),
                     static_cast<std::size_t>(S1) * S2, "state_kernel");
        check_kernel(output_kernel,
                     static_cast<std::size_t>(S1) * S2 * X,
                     static_cast<std::size_t>(Y1) * Y2, "output_kernel");
        check_metric(distortion1, static_cast<std::size_t>(S1) * S1hat,
                     "distortion1");
        check_metric(distortion2, static_cast<std::size_t>(S2) * S2hat,
                     "distortion2");
    }

private:
    static void check_kernel(const std::vector<double>& k, std::size_t rows,
                             std::size_t cols, const char* name) {
        if (k.size() != rows * cols)
            throw ParseError(std::string(name) + ": expected " +
                             std::to_string(rows) + "×" + std::to_string(cols) +
                             " entries, got " + std::to_string(k.size()));
        for (std::size_t r = 0; r < rows; ++r) {
            double sum = 0.0;
            for (std::size_t c = 0; c < cols; ++c) {
                double v = k[r * cols + c];
                if (!(v >= 0.0) || !std::isfinite(v))
                    throw ParseError(std::string(name) + " row " +
                                     std::to_string(r) +
                                     ": negative or non-finite entry");
                sum += v;
            }
            if (std::abs(sum - 1.0) > kMassTol)
                throw ParseError(std::string(name) + " row " +
                                 std::to_string(r) + " sums to " +
                                 std::to_string(sum) + ", expected 1");
        }
    }
    static void check_metric(const std::vector<double>& m, std::size_t cells,
                             const char* name) {
        if (m.size() != cells)
            throw ParseError(std::string(name) + ": wrong size");
        for (double v : m)
            if (!(v >= 0.0) || !std::isfinite(v))
                throw ParseError(std::string(name) +
                                 ": entries must be finite and ≥ 0");
    }
};

/* ================================================================== */
/*  Input law                                                          */
/* ================================================================== */

struct InputLaw {
    /** Auxiliary alphabet size; 0 means full-secrecy mode (no V). */
    int V = 0;
    int A = 0, X = 0;
    /** P_{AX} over (a,x) x fastest, or P_{VAX} over (v,a,x) x fastest. */
    std::vector<double> mass;

    bool has_aux() const { return V > 0; }

    double p_ax(int a, int x) const {
        return mass[static_cast<std::size_t>(a) * X + x];
    }
    double p_vax(int v, int a, int x) const {
        return mass[(static_cast<std::size_t>(v) * A + a) * X + x];
    }

    void validate() const {
        if (A < 1 || X < 1 || V < 0)
            throw ParseError("input_law: invalid alphabet sizes");
        std::size_t cells = static_cast<std::size_t>(std::max(V, 1)) * A * X;
        if (mass.size() != cells)
            throw ParseError("input_law: expected " + std::to_string(cells) +
                             " entries, got " + std::to_string(mass.size()));
        double sum = 0.0;
        for (double v : mass) {
            if (!(v >= 0.0) || !std::isfinite(v))
                throw ParseError("input_law: negative or non-finite entry");
            sum += v;
        }
        if (std::abs(sum - 1.0) > kMassTol)
            throw ParseError("input_law sums to " + std::to_string(sum) +
                             ", expected 1");
    }
};

/* ================================================================== */
/*  Joint assembly                                                     */
/* ================================================================== */

/**
 * Assemble the single-letter joint
 *   mass(v,a,x,s₁,s₂,y₁,y₂) =
 *     P_{VAX}(v,a,x) · P_{S₁S₂|A}(s₁,s₂|a) · P_{Y₁Y₂|S₁S₂X}(y₁,y₂|s₁,s₂,x)
 * over canonical variables (V,A,X,S1,S2,Y1,Y2); V is omitted when the law
 * is in full-secrecy mode. By construction the result respects the Markov
 * chain V − (A,X) − (S₁,S₂,Y₁,Y₂).
 */
inline JointPmf assemble_joint(const InputLaw& law, const ChannelSpec& ch) {
    if (law.A != ch.A || law.X != ch.X)
        throw AlphabetMismatch(
            "assemble_joint: input law alphabets (A=" + std::to_string(law.A) +
            ", X=" + std::to_string(law.X) + ") do not match channel (A=" +
            std::to_string(ch.A) + ", X=" + std::to_string(ch.X) + ")");
    law.validate();
    ch.validate();

    const int V = std::max(law.V, 1);
    std::vector<VarId> vars;
    if (law.has_aux()) vars.push_back({"V", law.V});
    vars.push_back({"A", ch.A});
    vars.push_back({"X", ch.X});
    vars.push_back({"S1", ch.S1});
    vars.push_back({"S2", ch.S2});
    vars.push_back({"Y1", ch.Y1});
    vars.push_back({"Y2", ch.Y2});

    std::vector<double> mass;
    mass.reserve(static_cast<std::size_t>(V) * ch.A * ch.X * ch.S1 * ch.S2 *
                 ch.Y1 * ch.Y2);
    for (int v = 0; v < V; ++v)
        for (int a = 0; a < ch.A; ++a)
            for (int x = 0; x < ch.X; ++x) {
                double pax = law.has_aux() ? law.p_vax(v, a, x)
                                           : law.p_ax(a, x);
                for (int s1 = 0; s1 < ch.S1; ++s1)
                    for (int s2 = 0; s2 < ch.S2; ++s2) {
                        double ps = pax * ch.state_prob(s1, s2, a);
                        for (int y1 = 0; y1 < ch.Y1; ++y1)
                            for (int y2 = 0; y2 < ch.Y2; ++y2)
                                mass.push_back(
                                    ps * ch.output_prob(y1, y2, s1, s2, x));
                    }
            }
    return JointPmf(std::move(vars), std::move(mass));
}

/* ================================================================== */
/*  Binary multiplicative-Bernoulli example                            */
/* ================================================================== */

/** Parameters (λ, α) of the state kernel and (p, q) of the input law. */
struct BinaryParams {
    double lambda = 0.0, alpha = 0.0, p = 0.0, q = 0.0;

    void validate() const {
        auto in01 = [](double v, const char* name) {
            if (!(v >= 0.0 && v <= 1.0))
                throw DomainError(std::string("binary example parameter ") +
                                  name + " = " + std::to_string(v) +
                                  " outside [0,1]");
        };
        in01(lambda, "lambda");
        in01(alpha, "alpha");
        in01(p, "p");
        in01(q, "q");
    }
};

/**
 * The binary ISAC channel with multiplicative Bernoulli states and its
 * input law. Outputs are the deterministic products Y₁ = S₁·X, Y₂ = S₂·X;
 * the state kernel is
 *
 *     P_{S₁S₂|A}(0,0|0) = λ        P_{S₁S₂|A}(1,0|0) = (1−λ)(1−α)
 *     P_{S₁S₂|A}(0,1|0) = 0        P_{S₁S₂|A}(1,1|0) = (1−λ)α
 *     P_{S₁S₂|A}(0,0|1) = 1−λ      P_{S₁S₂|A}(1,0|1) = λ(1−α)
 *     P_{S₁S₂|A}(0,1|1) = 0        P_{S₁S₂|A}(1,1|1) = λα
 *
 * (so S₂ = S₁·Bernoulli(α) with the flip probability of S₁ steered by A),
 * the input law is
 *
 *     P_{XA}(0,0) = (1−p)(1−q)     P_{XA}(1,0) = pq
 *     P_{XA}(0,1) = (1−p)q         P_{XA}(1,1) = p(1−q)
 *
 * (marginally X ~ Bern(p), A ~ Bern(p∗q)), and both distortion metrics
 * are Hamming.
 */
inline std::pair<ChannelSpec, InputLaw> binary_example_channel(
    const BinaryParams& bp) {
    bp.validate();
    const double l = bp.lambda, al = bp.alpha, p = bp.p, q = bp.q;

    ChannelSpec ch;
    ch.A = ch.X = ch.S1 = ch.S2 = ch.Y1 = ch.Y2 = 2;
    ch.S1hat = ch.S2hat = 2;

    // state_kernel rows a ∈ {0,1}; cols (s1,s2) with s2 fastest.
    ch.state_kernel = {
        l,       0.0, (1 - l) * (1 - al), (1 - l) * al,  // a = 0
        1 - l,   0.0, l * (1 - al),       l * al,        // a = 1
    };

    // output_kernel rows (s1,s2,x) with x fastest; deterministic products.
    ch.output_kernel.assign(static_cast<std::size_t>(8) * 4, 0.0);
    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2)
            for (int x = 0; x < 2; ++x) {
                std::size_t row = static_cast<std::size_t>(s1 * 2 + s2) * 2 + x;
                int y1 = s1 * x, y2 = s2 * x;
                ch.output_kernel[row * 4 + y1 * 2 + y2] = 1.0;
            }

    ch.distortion1 = {0.0, 1.0, 1.0, 0.0};  // Hamming
    ch.distortion2 = {0.0, 1.0, 1.0, 0.0};

    InputLaw law;
    law.V = 0;
    law.A = law.X = 2;
    law.mass = {
        (1 - p) * (1 - q), p * q,        // a = 0: x = 0, 1
        (1 - p) * q,       p * (1 - q),  // a = 1: x = 0, 1
    };
    return {ch, law};
}

} // namespace isac

#endif // ISAC_CHANNEL_HPP
