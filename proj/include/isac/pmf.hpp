/**
 * pmf.hpp — dense finite joint probability mass functions and the
 * information measures built on them (all logarithms base 2, results in
 * bits).
 *
 * A JointPmf stores an ordered list of named variables and one dense mass
 * array indexed mixed-radix with the LAST variable fastest. Alphabets in
 * this project are tiny (≤ a handful of symbols per variable, ≤ 7
 * variables), so dense storage keeps every operation exact, allocation
 * cheap, and iteration order — hence floating point accumulation order —
 * fully deterministic.
 *
 * Conventions:
 *   - 0·log 0 := 0; cells with mass < kZeroMass are treated as exact zeros
 *     inside entropy sums (avoids -inf noise from denormal residue).
 *   - Entropies are clamped to ≥ 0; mutual informations within -1e-12 of
 *     zero are clamped to exactly 0.
 *   - Conditioning rows whose marginal mass is below kZeroMass are flagged
 *     "undefined" and never fabricated (no uniform filling): downstream
 *     factorization checks skip them, matching support-only semantics.
 */

#ifndef ISAC_PMF_HPP
#define ISAC_PMF_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "isac/errors.hpp"

namespace isac {

/* ================================================================== */
/*  Numeric policy constants                                           */
/* ================================================================== */

/** Cells below this mass are exact zeros for entropy / support purposes. */
inline constexpr double kZeroMass = 1e-15;

/** A pmf must sum to 1 within this tolerance. */
inline constexpr double kMassTol = 1e-12;

/** Hard cap on dense cell count (sanity guard against runaway products). */
inline constexpr std::size_t kMaxCells = 10'000'000;

/* ================================================================== */
/*  Scalar helpers                                                     */
/* ================================================================== */

/** -x·log₂x with the 0·log 0 := 0 convention. */
inline double xlog2x(double x) {
    if (x < kZeroMass) return 0.0;
    return -x * std::log2(x);
}

/** Shannon entropy (bits) of a raw mass container; clamps to ≥ 0. */
template <class Container>
inline double entropy_of_masses(const Container& masses) {
    double h = 0.0;
    for (double m : masses) h += xlog2x(m);
    return h < 0.0 ? 0.0 : h;
}

/** Binary entropy H_b(x) in bits, H_b(0) = H_b(1) = 0. */
inline double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("binary_entropy: argument " + std::to_string(x) +
                          " outside [0,1]");
    return xlog2x(x) + xlog2x(1.0 - x);
}

/** Binary convolution a∗b = (1−a)b + a(1−b). */
inline double convolve(double a, double b) {
    if (!(a >= 0.0 && a <= 1.0))
        throw DomainError("convolve: first argument " + std::to_string(a) +
                          " outside [0,1]");
    if (!(b >= 0.0 && b <= 1.0))
        throw DomainError("convolve: second argument " + std::to_string(b) +
                          " outside [0,1]");
    return (1.0 - a) * b + a * (1.0 - b);
}

/* ================================================================== */
/*  Variable identity                                                  */
/* ================================================================== */

/** A named finite-alphabet variable. Symbols are 0..alphabet_size-1. */
struct VarId {
    std::string name;
    int alphabet_size = 0;
};

/* ================================================================== */
/*  Conditional kernel                                                 */
/* ================================================================== */

/**
 * Result of JointPmf::condition(target, given): one pmf row over the
 * target assignment per given assignment. Rows below the zero-mass
 * threshold are undefined; querying them throws.
 */
class ConditionalKernel {
public:
    ConditionalKernel(std::vector<VarId> target_vars,
                      std::vector<VarId> given_vars,
                      std::vector<double> rows, std::vector<char> defined,
                      std::size_t target_cells, std::size_t given_cells)
        : target_vars_(std::move(target_vars)),
          given_vars_(std::move(given_vars)), rows_(std::move(rows)),
          defined_(std::move(defined)), target_cells_(target_cells),
          given_cells_(given_cells) {}

    std::size_t given_cells() const { return given_cells_; }
    std::size_t target_cells() const { return target_cells_; }
    const std::vector<VarId>& target_vars() const { return target_vars_; }
    const std::vector<VarId>& given_vars() const { return given_vars_; }

    /** True when the conditioning assignment has positive marginal mass. */
    bool row_defined(std::size_t given_index) const {
        return defined_.at(given_index) != 0;
    }

    /** P(target = t | given = g); throws DomainError on undefined rows. */
    double prob(std::size_t given_index, std::size_t target_index) const {
        if (!row_defined(given_index))
            throw DomainError("condition: row " + std::to_string(given_index) +
                              " has zero conditioning mass (undefined)");
        return rows_.at(given_index * target_cells_ + target_index);
    }

    /** Entropy (bits) of one defined row. */
    double row_entropy(std::size_t given_index) const {
        double h = 0.0;
        for (std::size_t t = 0; t < target_cells_; ++t)
            h += xlog2x(prob(given_index, t));
        return h < 0.0 ? 0.0 : h;
    }

private:
    std::vector<VarId> target_vars_;
    std::vector<VarId> given_vars_;
    std::vector<double> rows_;   // row-major: [given][target]
    std::vector<char> defined_;  // one flag per given assignment
    std::size_t target_cells_;
    std::size_t given_cells_;
};

/* ================================================================== */
/*  Joint pmf                                                          */
/* ================================================================== */

class JointPmf {
public:
    /**
     * Build from an ordered variable list and a dense mass array indexed
     * mixed-radix with the last variable fastest. Validates alphabet
     * sizes, name uniqueness, non-negativity, finiteness, array length,
     * and total mass 1 ± kMassTol.
     */
    JointPmf(std::vector<VarId> vars, std::vector<double> mass)
        : vars_(std::move(vars)), mass_(std::move(mass)) {
        if (vars_.empty()) throw DomainError("JointPmf: no variables");
        std::size_t cells = 1;
        for (const VarId& v : vars_) {
            if (v.alphabet_size < 1)
                throw DomainError("JointPmf: variable '" + v.name +
                                  "' has alphabet size " +
                                  std::to_string(v.alphabet_size));
            if (v.name.empty())
                throw DomainError("JointPmf: empty variable name");
            if (cells > kMaxCells / static_cast<std::size_t>(v.alphabet_size))
                throw DomainError("JointPmf: cell count exceeds hard cap");
            cells *= static_cast<std::size_t>(v.alphabet_size);
        }
        for (std::size_t i = 0; i < vars_.size(); ++i)
            for (std::size_t j = i + 1; j < vars_.size(); ++j)
                if (vars_[i].name == vars_[j].name)
                    throw DomainError("JointPmf: duplicate variable name '" +
                                      vars_[i].name + "'");
        if (mass_.size() != cells)
            throw DomainError("JointPmf: mass array has " +
                              std::to_string(mass_.size()) + " cells, expected " +
                              std::to_string(cells));
        double sum = 0.0;
        for (double m : mass_) {
            if (!std::isfinite(m) || m < 0.0)
                throw DomainError("JointPmf: negative or non-finite mass");
            sum += m;
        }
        if (std::abs(sum - 1.0) > kMassTol)
            throw DomainError("JointPmf: total mass " + std::to_string(sum) +
                              " not 1 within tolerance");
        strides_.assign(vars_.size(), 1);
        for (std::size_t i = vars_.size(); i-- > 1;)
            strides_[i - 1] =
                strides_[i] * static_cast<std::size_t>(vars_[i].alphabet_size);
    }

    const std::vector<VarId>& vars() const { return vars_; }
    const std::vector<double>& masses() const { return mass_; }
    std::size_t cell_count() const { return mass_.size(); }

    /** Position of a variable by name; throws UnknownVariable. */
    std::size_t var_index(const std::string& name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i].name == name) return i;
        throw UnknownVariable(name);
    }

    /** Flat cell index of a full assignment (one symbol per variable). */
    std::size_t flat_index(const std::vector<int>& assignment) const {
        if (assignment.size() != vars_.size())
            throw DomainError("flat_index: assignment arity mismatch");
        std::size_t idx = 0;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (assignment[i] < 0 || assignment[i] >= vars_[i].alphabet_size)
                throw DomainError("flat_index: symbol out of range for '" +
                                  vars_[i].name + "'");
            idx += static_cast<std::size_t>(assignment[i]) * strides_[i];
        }
        return idx;
    }

    /** Symbol of variable position `var` inside flat cell `flat`. */
    int symbol_at(std::size_t flat, std::size_t var) const {
        return static_cast<int>((flat / strides_[var]) %
                                static_cast<std::size_t>(vars_[var].alphabet_size));
    }

    double mass_at(std::size_t flat) const { return mass_.at(flat); }
    double mass_of(const std::vector<int>& assignment) const {
        return mass_.at(flat_index(assignment));
    }

    /* -------------------------------------------------------------- */
    /*  Marginalization and conditioning                              */
    /* -------------------------------------------------------------- */

    /** Marginal pmf over `keep`, variable order following `keep`. */
    JointPmf marginalize(const std::vector<std::string>& keep) const {
        std::vector<std::size_t> pos = positions_of(keep);
        std::vector<VarId> kept;
        kept.reserve(pos.size());
        std::size_t cells = 1;
        for (std::size_t p : pos) {
            kept.push_back(vars_[p]);
            cells *= static_cast<std::size_t>(vars_[p].alphabet_size);
        }
        // strides of the output pmf (last kept variable fastest)
        std::vector<std::size_t> out_stride(pos.size(), 1);
        for (std::size_t i = pos.size(); i-- > 1;)
            out_stride[i - 1] = out_stride[i] *
                static_cast<std::size_t>(vars_[pos[i]].alphabet_size);
        std::vector<double> out(cells, 0.0);
        for (std::size_t f = 0; f < mass_.size(); ++f) {
            if (mass_[f] == 0.0) continue;
            std::size_t idx = 0;
            for (std::size_t i = 0; i < pos.size(); ++i)
                idx += static_cast<std::size_t>(symbol_at(f, pos[i])) *
                       out_stride[i];
            out[idx] += mass_[f];
        }
        return JointPmf(std::move(kept), std::move(out));
    }

    /**
     * Conditional kernel P(target | given). Rows are indexed by the given
     * assignment (mixed-radix, last `given` variable fastest), columns by
     * the target assignment likewise.
     */
    ConditionalKernel condition(const std::vector<std::string>& target,
                                const std::vector<std::string>& given) const {
        require_disjoint(target, given);
        std::vector<std::string> order;
        order.reserve(given.size() + target.size());
        order.insert(order.end(), given.begin(), given.end());
        order.insert(order.end(), target.begin(), target.end());
        JointPmf marg = marginalize(order);
        std::size_t gcells = 1, tcells = 1;
        std::vector<VarId> gvars, tvars;
        for (std::size_t i = 0; i < given.size(); ++i) {
            gvars.push_back(marg.vars()[i]);
            gcells *= static_cast<std::size_t>(marg.vars()[i].alphabet_size);
        }
        for (std::size_t i = given.size(); i < order.size(); ++i) {
            tvars.push_back(marg.vars()[i]);
            tcells *= static_cast<std::size_t>(marg.vars()[i].alphabet_size);
        }
        std::vector<double> rows(gcells * tcells, 0.0);
        std::vector<char> defined(gcells, 0);
        for (std::size_t g = 0; g < gcells; ++g) {
            double rowsum = 0.0;
            for (std::size_t t = 0; t < tcells; ++t)
                rowsum += marg.masses()[g * tcells + t];
            if (rowsum < kZeroMass) continue;  // undefined, support-only
            defined[g] = 1;
            for (std::size_t t = 0; t < tcells; ++t)
                rows[g * tcells + t] = marg.masses()[g * tcells + t] / rowsum;
        }
        return ConditionalKernel(std::move(tvars), std::move(gvars),
                                 std::move(rows), std::move(defined), tcells,
                                 gcells);
    }

    /* -------------------------------------------------------------- */
    /*  Information measures (bits)                                   */
    /* -------------------------------------------------------------- */

    /** H(over): entropy of the marginal on `over`; clamped to ≥ 0. */
    double entropy(const std::vector<std::string>& over) const {
        if (over.size() == vars_.size()) {
            // Fast path: the marginal over all variables is the pmf itself
            // (entropy does not depend on variable order).
            bool all = true;
            try {
                for (const std::string& n : over) (void)var_index(n);
            } catch (const UnknownVariable&) {
                all = false;
            }
            std::vector<std::string> sorted_over(over);
            std::sort(sorted_over.begin(), sorted_over.end());
            if (all &&
                std::adjacent_find(sorted_over.begin(), sorted_over.end()) ==
                    sorted_over.end())
                return entropy_of_masses(mass_);
        }
        return entropy_of_masses(marginalize(over).masses());
    }

    /** H(target | given) = H(target, given) − H(given); clamped to ≥ 0. */
    double conditional_entropy(const std::vector<std::string>& target,
                               const std::vector<std::string>& given) const {
        require_disjoint(target, given);
        if (given.empty()) return entropy(target);
        std::vector<std::string> both(target);
        both.insert(both.end(), given.begin(), given.end());
        double h = entropy(both) - entropy(given);
        return h < 0.0 ? 0.0 : h;
    }

    /** I(left; right) = H(left) + H(right) − H(left, right). */
    double mutual_information(const std::vector<std::string>& left,
                              const std::vector<std::string>& right) const {
        require_disjoint(left, right);
        std::vector<std::string> both(left);
        both.insert(both.end(), right.begin(), right.end());
        double i = entropy(left) + entropy(right) - entropy(both);
        return (i < 0.0 && i >= -1e-12) ? 0.0 : i;
    }

    /** I(left; right | given) via the four-entropy identity. */
    double conditional_mutual_information(
        const std::vector<std::string>& left,
        const std::vector<std::string>& right,
        const std::vector<std::string>& given) const {
        require_disjoint(left, right);
        require_disjoint(left, given);
        require_disjoint(right, given);
        if (given.empty()) return mutual_information(left, right);
        std::vector<std::string> lg(left), rg(right), lrg(left);
        lg.insert(lg.end(), given.begin(), given.end());
        rg.insert(rg.end(), given.begin(), given.end());
        lrg.insert(lrg.end(), right.begin(), right.end());
        lrg.insert(lrg.end(), given.begin(), given.end());
        double i = entropy(lg) + entropy(rg) - entropy(lrg) - entropy(given);
        return (i < 0.0 && i >= -1e-12) ? 0.0 : i;
    }

private:
    std::vector<std::size_t> positions_of(
        const std::vector<std::string>& names) const {
        std::vector<std::size_t> pos;
        pos.reserve(names.size());
        for (const std::string& n : names) pos.push_back(var_index(n));
        for (std::size_t i = 0; i < pos.size(); ++i)
            for (std::size_t j = i + 1; j < pos.size(); ++j)
                if (pos[i] == pos[j])
                    throw DomainError("duplicate variable in selection: '" +
                                      names[i] + "'");
        return pos;
    }

    void require_disjoint(const std::vector<std::string>& a,
                          const std::vector<std::string>& b) const {
        for (const std::string& x : a)
            for (const std::string& y : b)
                if (x == y) throw OverlappingSets(x);
    }

    std::vector<VarId> vars_;
    std::vector<double> mass_;
    std::vector<std::size_t> strides_;  // last variable fastest
};

} // namespace isac

#endif // ISAC_PMF_HPP
