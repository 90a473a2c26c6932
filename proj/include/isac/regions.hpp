/**
 * regions.hpp — rate/distortion bounds of the four coding theorems and
 * region sweeps over input laws.
 *
 * Partial secrecy (auxiliary V, law P_VAX):
 *   Theorem 1 (physically degraded):
 *     R₁ ≤ I(V;Y₁,S₁)
 *     R₂ ≤ min{ R₂′, I(V;Y₁,S₁) − R₁ },
 *     R₂′ = H(Y₁,S₁|Y₂,S₂) − H(S₁|Y₁,Y₂,S₂,V)
 *   Theorem 2 (reversely degraded): R₂′ replaced by H(Y₁|Y₂,S₂).
 *   The pre-simplification secrecy rate is
 *     R_sec = [H(V|Y₂,S₂) − H(V|Y₁,S₁)]⁺ + H(Y₁|Y₂,S₂,V),
 *   which collapses to R₂′ on physically degraded channels and to
 *   H(Y₁|Y₂,S₂) on reversely degraded ones.
 *
 * Full secrecy (no V, law P_AX):
 *   Theorem 3: R ≤ min{ H(Y₁,S₁|Y₂,S₂) − H(S₁|Y₁,Y₂,S₂,X,A),
 *                       I(X,A;Y₁,S₁) }
 *   Theorem 4: R ≤ min{ H(Y₁|Y₂,S₂), I(X,A;Y₁,S₁) }
 *
 * In all modes the distortion floor is the optimal-estimator distortion
 * pair. Degradedness preconditions are warnings, not errors: the bounds
 * are well-defined formulas on any channel, so reports simply carry the
 * degradedness flag for the direction the theorem assumes.
 */

#ifndef ISAC_REGIONS_HPP
#define ISAC_REGIONS_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isac/channel.hpp"
#include "isac/degradedness.hpp"
#include "isac/estimation.hpp"
#include "isac/pmf.hpp"
#include "isac/rng.hpp"
#include "isac/util.hpp"

namespace isac {

/* ================================================================== */
/*  Bounds                                                             */
/* ================================================================== */

struct TheoremBounds {
    int theorem = 0;       // mode tag: 1..4
    double r1_max = 0.0;   // I(V;Y₁,S₁) or I(X,A;Y₁,S₁)
    double r2_prime = 0.0; // theorem-specific second cap (see header)
    double r_sec = 0.0;    // pre-simplification secrecy rate (V modes)
    double sum_cap = 0.0;  // R₁+R₂ cap = r1_max
    double rate = 0.0;     // min(r2_prime, r1_max): max R₂ at R₁=0, or R
    double d1_min = 0.0, d2_min = 0.0;
    bool degradedness_ok = false;   // direction the theorem assumes
    double degradedness_residual = 0.0;
};

/** |𝒱| may not exceed min{|𝒳||𝒜|, |𝒴₁||𝒮₁|, |𝒴₂||𝒮₂|} + 1. */
inline int cardinality_bound(const ChannelSpec& ch) {
    return std::min(ch.X * ch.A, std::min(ch.Y1 * ch.S1, ch.Y2 * ch.S2)) + 1;
}

namespace detail {

inline void require_aux(const InputLaw& law, const ChannelSpec& ch,
                        const char* who) {
    if (!law.has_aux())
        throw DomainError(std::string(who) +
                          ": partial-secrecy mode needs an auxiliary V "
                          "in the input law");
    if (law.V > cardinality_bound(ch))
        throw CardinalityExceeded(std::string(who) + ": |V| = " +
                                  std::to_string(law.V) +
                                  " exceeds the bound " +
                                  std::to_string(cardinality_bound(ch)));
}

inline void require_no_aux(const InputLaw& law, const char* who) {
    if (law.has_aux())
        throw DomainError(std::string(who) +
                          ": full-secrecy mode takes a plain P_AX law");
}

inline double clamp_rate(double r) { return r < 0.0 ? 0.0 : r; }

inline double rsec_from_joint(const JointPmf& j) {
    double bracket = j.conditional_entropy({"V"}, {"Y2", "S2"}) -
                     j.conditional_entropy({"V"}, {"Y1", "S1"});
    if (bracket < 0.0) bracket = 0.0;  // [·]⁺ exactly as written
    return bracket + j.conditional_entropy({"Y1"}, {"Y2", "S2", "V"});
}

inline void fill_distortions(TheoremBounds& b, const ChannelSpec& ch,
                             const InputLaw& law) {
    b.d1_min = optimal_distortion(ch, law, 1);
    b.d2_min = optimal_distortion(ch, law, 2);
}

} // namespace detail

/* ================================================================== */
/*  Secrecy rate (pre-simplification form)                             */
/* ================================================================== */

/** R_sec = [H(V|Y₂,S₂) − H(V|Y₁,S₁)]⁺ + H(Y₁|Y₂,S₂,V). */
inline double rsec_general(const InputLaw& law, const ChannelSpec& ch) {
    detail::require_aux(law, ch, "rsec_general");
    return detail::rsec_from_joint(assemble_joint(law, ch));
}

/* ================================================================== */
/*  Theorem evaluations                                                */
/* ================================================================== */

inline TheoremBounds theorem1_bounds(const InputLaw& law,
                                     const ChannelSpec& ch) {
    detail::require_aux(law, ch, "theorem1_bounds");
    JointPmf j = assemble_joint(law, ch);
    TheoremBounds b;
    b.theorem = 1;
    b.r1_max = j.mutual_information({"V"}, {"Y1", "S1"});
    b.r2_prime = detail::clamp_rate(
        j.conditional_entropy({"Y1", "S1"}, {"Y2", "S2"}) -
        j.conditional_entropy({"S1"}, {"Y1", "Y2", "S2", "V"}));
    b.r_sec = detail::rsec_from_joint(j);
    b.sum_cap = b.r1_max;
    b.rate = std::min(b.r2_prime, b.r1_max);
    detail::fill_distortions(b, ch, law);
    auto [ok, res] = check_physically_degraded(ch, law);
    b.degradedness_ok = ok;
    b.degradedness_residual = res;
    return b;
}

inline TheoremBounds theorem2_bounds(const InputLaw& law,
                                     const ChannelSpec& ch) {
    detail::require_aux(law, ch, "theorem2_bounds");
    JointPmf j = assemble_joint(law, ch);
    TheoremBounds b;
    b.theorem = 2;
    b.r1_max = j.mutual_information({"V"}, {"Y1", "S1"});
    b.r2_prime = j.conditional_entropy({"Y1"}, {"Y2", "S2"});
    b.r_sec = detail::rsec_from_joint(j);
    b.sum_cap = b.r1_max;
    b.rate = std::min(b.r2_prime, b.r1_max);
    detail::fill_distortions(b, ch, law);
    auto [ok, res] = check_reversely_degraded(ch, law);
    b.degradedness_ok = ok;
    b.degradedness_residual = res;
    return b;
}

inline TheoremBounds theorem3_rate(const InputLaw& law,
                                   const ChannelSpec& ch) {
    detail::require_no_aux(law, "theorem3_rate");
    JointPmf j = assemble_joint(law, ch);
    TheoremBounds b;
    b.theorem = 3;
    b.r1_max = j.mutual_information({"A", "X"}, {"Y1", "S1"});
    b.r2_prime = detail::clamp_rate(
        j.conditional_entropy({"Y1", "S1"}, {"Y2", "S2"}) -
        j.conditional_entropy({"S1"}, {"Y1", "Y2", "S2", "X", "A"}));
    b.r_sec = b.r2_prime;
    b.sum_cap = b.r1_max;
    b.rate = std::min(b.r2_prime, b.r1_max);
    detail::fill_distortions(b, ch, law);
    auto [ok, res] = check_physically_degraded(ch, law);
    b.degradedness_ok = ok;
    b.degradedness_residual = res;
    return b;
}

inline TheoremBounds theorem4_rate(const InputLaw& law,
                                   const ChannelSpec& ch) {
    detail::require_no_aux(law, "theorem4_rate");
    JointPmf j = assemble_joint(law, ch);
    TheoremBounds b;
    b.theorem = 4;
    b.r1_max = j.mutual_information({"A", "X"}, {"Y1", "S1"});
    b.r2_prime = j.conditional_entropy({"Y1"}, {"Y2", "S2"});
    b.r_sec = b.r2_prime;
    b.sum_cap = b.r1_max;
    b.rate = std::min(b.r2_prime, b.r1_max);
    detail::fill_distortions(b, ch, law);
    auto [ok, res] = check_reversely_degraded(ch, law);
    b.degradedness_ok = ok;
    b.degradedness_residual = res;
    return b;
}

/** Dispatch by theorem id 1..4. */
inline TheoremBounds theorem_bounds(int theorem, const InputLaw& law,
                                    const ChannelSpec& ch) {
    switch (theorem) {
        case 1: return theorem1_bounds(law, ch);
        case 2: return theorem2_bounds(law, ch);
        case 3: return theorem3_rate(law, ch);
        case 4: return theorem4_rate(law, ch);
        default:
            throw DomainError("theorem id must be 1..4, got " +
                              std::to_string(theorem));
    }
}

/* ================================================================== */
/*  Sweeps                                                             */
/* ================================================================== */

struct SweepConfig {
    /**
     * Lattice resolution. Binary (p,q) mode: points per axis, step
     * 1/(grid−1). Generic modes: simplex lattice denominator (masses
     * k/grid). 0 disables the lattice part.
     */
    int grid = 0;
    /** Number of seeded random laws appended after the lattice. */
    int samples = 0;
    std::uint64_t seed = 0;
    /**
     * When set and theorem ∈ {3,4}: sweep the binary example's (p,q)
     * square at this (λ,α) instead of generic laws.
     */
    std::optional<BinaryParams> binary;
};

struct RegionPoint {
    std::vector<double> params;  // flattened law parameters
    TheoremBounds bounds;
    bool pareto = false;
};

struct SweepResult {
    int theorem = 0;
    std::vector<std::string> param_names;
    std::vector<RegionPoint> points;  // sorted by params, lexicographic
};

namespace detail {

/** All length-d non-negative integer vectors summing to denom, lex order. */
inline void simplex_lattice(int d, int denom,
                            const std::function<void(const std::vector<int>&)>&
                                emit) {
    std::vector<int> v(static_cast<std::size_t>(d), 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == d - 1) {
            v[static_cast<std::size_t>(pos)] = left;
            emit(v);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            v[static_cast<std::size_t>(pos)] = k;
            rec(pos + 1, left - k);
        }
    };
    if (d >= 1) rec(0, denom);
}

inline std::vector<double> dirichlet1(Stream& s, std::size_t d) {
    std::vector<double> v(d);
    double sum = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        // Exponential spacings: Dirichlet(1,...,1) is the flat simplex law.
        double u = s.next_unit();
        v[i] = -std::log(1.0 - u);
        sum += v[i];
    }
    for (double& x : v) x /= sum;
    return v;
}

inline void mark_pareto(std::vector<RegionPoint>& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const TheoremBounds& a = pts[i].bounds;
        bool dominated = false;
        for (std::size_t k = 0; k < pts.size() && !dominated; ++k) {
            if (k == i) continue;
            const TheoremBounds& b = pts[k].bounds;
            bool weak = b.rate >= a.rate && b.d1_min <= a.d1_min &&
                        b.d2_min <= a.d2_min;
            bool strict = b.rate > a.rate || b.d1_min < a.d1_min ||
                          b.d2_min < a.d2_min;
            dominated = weak && strict;
        }
        pts[i].pareto = !dominated;
    }
}

} // namespace detail

/**
 * Enumerate input laws per the config, evaluate the chosen theorem on
 * every law (in parallel, ISAC_REGION_THREADS workers), sort by parameter
 * tuple, and mark the Pareto frontier in (rate↑, d₁↓, d₂↓) with
 * strict-in-one / weak-in-all dominance (ties kept).
 */
inline SweepResult sweep_region(const ChannelSpec& ch, int theorem,
                                const SweepConfig& cfg) {
    if (theorem < 1 || theorem > 4)
        throw DomainError("sweep_region: theorem id must be 1..4");
    if (cfg.grid < 0 || cfg.samples < 0)
        throw DomainError("sweep_region: grid/samples must be ≥ 0");

    SweepResult out;
    out.theorem = theorem;
    const bool full_secrecy = theorem >= 3;
    const bool binary_mode = full_secrecy && cfg.binary.has_value();
    Stream stream(cfg.seed);

    std::vector<std::vector<double>> laws;       // flattened parameters
    std::vector<InputLaw> law_objs;
    const std::size_t kMaxLaws = 2'000'000;

    auto push_binary = [&](double p, double q) {
        BinaryParams bp = *cfg.binary;
        bp.p = p;
        bp.q = q;
        laws.push_back({p, q});
        law_objs.push_back(binary_example_channel(bp).second);
    };

    if (binary_mode) {
        out.param_names = {"p", "q"};
        if (cfg.grid == 1) {
            push_binary(0.5, 0.5);
        } else if (cfg.grid >= 2) {
            for (int i = 0; i < cfg.grid; ++i)
                for (int k = 0; k < cfg.grid; ++k)
                    push_binary(static_cast<double>(i) / (cfg.grid - 1),
                                static_cast<double>(k) / (cfg.grid - 1));
        }
        for (int s = 0; s < cfg.samples; ++s) {
            double p = stream.next_unit();
            double q = stream.next_unit();
            push_binary(p, q);
        }
    } else if (full_secrecy) {
        const std::size_t d = static_cast<std::size_t>(ch.A) * ch.X;
        for (std::size_t i = 0; i < d; ++i)
            out.param_names.push_back("law" + std::to_string(i));
        auto push_law = [&](std::vector<double> mass) {
            InputLaw law;
            law.V = 0;
            law.A = ch.A;
            law.X = ch.X;
            law.mass = mass;
            laws.push_back(std::move(mass));
            law_objs.push_back(std::move(law));
        };
        if (cfg.grid >= 1)
            detail::simplex_lattice(
                static_cast<int>(d), cfg.grid, [&](const std::vector<int>& k) {
                    if (laws.size() >= kMaxLaws)
                        throw DomainError("sweep_region: lattice too large");
                    std::vector<double> mass(d);
                    for (std::size_t i = 0; i < d; ++i)
                        mass[i] = static_cast<double>(k[i]) / cfg.grid;
                    push_law(std::move(mass));
                });
        for (int s = 0; s < cfg.samples; ++s)
            push_law(detail::dirichlet1(stream, d));
    } else {
        const int V = cardinality_bound(ch);
        const std::size_t dax = static_cast<std::size_t>(ch.A) * ch.X;
        const std::size_t d = static_cast<std::size_t>(V) * dax;
        for (std::size_t i = 0; i < d; ++i)
            out.param_names.push_back("law" + std::to_string(i));
        auto push_law = [&](std::vector<double> mass) {
            InputLaw law;
            law.V = V;
            law.A = ch.A;
            law.X = ch.X;
            law.mass = mass;
            laws.push_back(std::move(mass));
            law_objs.push_back(std::move(law));
        };
        if (cfg.grid >= 1)
            detail::simplex_lattice(
                V, cfg.grid, [&](const std::vector<int>& k) {
                    if (laws.size() >= kMaxLaws)
                        throw DomainError("sweep_region: lattice too large");
                    // P_V from the lattice; P_{AX|V=v} rows Dirichlet(1).
                    std::vector<double> mass(d);
                    for (int v = 0; v < V; ++v) {
                        std::vector<double> row =
                            detail::dirichlet1(stream, dax);
                        double pv = static_cast<double>(
                                        k[static_cast<std::size_t>(v)]) /
                                    cfg.grid;
                        for (std::size_t i = 0; i < dax; ++i)
                            mass[static_cast<std::size_t>(v) * dax + i] =
                                pv * row[i];
                    }
                    push_law(std::move(mass));
                });
        for (int s = 0; s < cfg.samples; ++s) {
            std::vector<double> pv =
                detail::dirichlet1(stream, static_cast<std::size_t>(V));
            std::vector<double> mass(d);
            for (int v = 0; v < V; ++v) {
                std::vector<double> row = detail::dirichlet1(stream, dax);
                for (std::size_t i = 0; i < dax; ++i)
                    mass[static_cast<std::size_t>(v) * dax + i] =
                        pv[static_cast<std::size_t>(v)] * row[i];
            }
            push_law(std::move(mass));
        }
    }

    if (laws.empty())
        throw EmptySweep("sweep_region: configuration yields no input laws");

    out.points.resize(laws.size());
    parallel_for(laws.size(), [&](std::size_t i) {
        out.points[i].params = laws[i];
        out.points[i].bounds = theorem_bounds(theorem, law_objs[i], ch);
    });

    std::stable_sort(out.points.begin(), out.points.end(),
                     [](const RegionPoint& a, const RegionPoint& b) {
                         return a.params < b.params;
                     });
    detail::mark_pareto(out.points);
    return out;
}

/* ================================================================== */
/*  CSV serialization                                                  */
/* ================================================================== */

/** Byte-deterministic CSV: header then one row per sweep point. */
inline std::string region_csv(const SweepResult& r) {
    std::string s;
    for (const std::string& n : r.param_names) {
        s += n;
        s += ',';
    }
    s += "r1_max,r2_prime_or_rsec,rate,d1_min,d2_min,pareto\n";
    for (const RegionPoint& p : r.points) {
        for (double v : p.params) {
            s += format_float(v);
            s += ',';
        }
        s += format_float(p.bounds.r1_max);
        s += ',';
        s += format_float(p.bounds.r2_prime);
        s += ',';
        s += format_float(p.bounds.rate);
        s += ',';
        s += format_float(p.bounds.d1_min);
        s += ',';
        s += format_float(p.bounds.d2_min);
        s += ',';
        s += p.pareto ? '1' : '0';
        s += '\n';
    }
    return s;
}

} // namespace isac

#endif // ISAC_REGIONS_HPP
