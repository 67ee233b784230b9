#pragma once

/**
 * @file valuation.hpp
 * @brief Value sequences gamma_0 = 1, gamma_1, ..., gamma_L and the semigroup
 * they generate.
 *
 * m̄_l is the least q >= 1 with q*gamma_l in G(gamma_0, ..., gamma_{l-1}) and
 * d(l) = m̄_1 * ... * m̄_{l-1} is the Y-degree of the l-th key polynomial. A
 * sequence is admissible when gamma_{l+1} > m̄_l * gamma_l for l >= 1. Every
 * semigroup element then has exactly one expansion
 *
 *     l*gamma_0 + j_1*gamma_1 + ... + j_r*gamma_r,   0 <= j_k < m̄_k,
 *
 * which is what slices and expand_value() report.
 */

#include "error.hpp"
#include "numtheory.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vsg {

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw DomainError("degree product exceeds 64-bit range");
    return r;
}

}  // namespace detail

/// m̄ for the last entry of `prefix` (prefix holds gamma_0 .. gamma_l, l >= 1).
inline std::int64_t mbar(std::span<const Rational> prefix) {
    if (prefix.size() < 2) throw DomainError("mbar needs gamma_0 and at least one more value");
    Rational g = rational_group_generator(prefix.first(prefix.size() - 1));
    return to_int64((prefix.back() / g).den());
}

inline std::int64_t mbar(std::initializer_list<Rational> prefix) {
    return mbar(std::span<const Rational>(prefix.begin(), prefix.size()));
}

struct DerivedIndices {
    std::vector<std::int64_t> mbars;    ///< m̄_1 .. m̄_L
    std::vector<std::int64_t> degrees;  ///< d(1) .. d(L)
    std::vector<std::size_t> sigma;     ///< sigma(0) = 0 < sigma(1) < ... (indices with m̄ > 1)
    std::vector<Rational> betas;        ///< gamma_{sigma(l)}
    std::vector<std::int64_t> nbars;    ///< m̄_{sigma(l)} for l >= 1
};

/// A validated, truncated value sequence. Build through validate_sequence().
struct ValueSequence {
    std::vector<Rational> gammas;
    DerivedIndices indices;
    std::vector<std::string> warnings;

    /// L, the index of the last known gamma.
    [[nodiscard]] std::size_t depth() const { return gammas.size() - 1; }
    [[nodiscard]] const Rational& gamma(std::size_t l) const { return gammas.at(l); }
    /// m̄_l for 1 <= l <= L.
    [[nodiscard]] std::int64_t mbar(std::size_t l) const { return indices.mbars.at(l - 1); }
    /// d(l) for 1 <= l <= L + 1.
    [[nodiscard]] std::int64_t degree(std::size_t l) const {
        if (l == 0 || l > depth() + 1) throw DomainError("d(" + std::to_string(l) + ") is outside the known range");
        if (l == depth() + 1) return l == 1 ? 1 : detail::checked_mul(indices.degrees.back(), indices.mbars.back());
        return indices.degrees[l - 1];
    }
    /// Values strictly below gamma_{L+1} are certain; the best proven lower
    /// bound for gamma_{L+1} is m̄_L * gamma_L (nothing is known when L = 0).
    [[nodiscard]] Rational next_gamma_lower_bound() const {
        if (depth() == 0) return Rational(0);
        return Rational(static_cast<long>(mbar(depth()))) * gammas.back();
    }
    /// The sequence truncated to gamma_0 .. gamma_k.
    [[nodiscard]] ValueSequence prefix(std::size_t k) const;
};

inline ValueSequence validate_sequence(std::vector<Rational> gammas) {
    if (gammas.empty()) throw DomainError("value sequence is empty");
    if (gammas.front() != Rational(1)) throw DomainError("gamma_0 must be 1, got " + gammas.front().str());
    for (std::size_t l = 0; l < gammas.size(); ++l)
        if (gammas[l].sign() <= 0)
            throw DomainError("gamma_" + std::to_string(l) + " = " + gammas[l].str() + " is not positive");

    ValueSequence seq;
    seq.gammas = std::move(gammas);
    const std::size_t L = seq.depth();
    auto& idx = seq.indices;
    idx.sigma.push_back(0);
    idx.betas.push_back(seq.gammas[0]);
    std::int64_t d = 1;
    for (std::size_t l = 1; l <= L; ++l) {
        std::int64_t mb = vsg::mbar(std::span<const Rational>(seq.gammas).first(l + 1));
        idx.mbars.push_back(mb);
        idx.degrees.push_back(d);
        d = detail::checked_mul(d, mb);
        if (mb > 1) {
            idx.sigma.push_back(l);
            idx.betas.push_back(seq.gammas[l]);
            idx.nbars.push_back(mb);
        }
        if (l >= 2) {
            Rational bound = Rational(static_cast<long>(idx.mbars[l - 2])) * seq.gammas[l - 1];
            if (seq.gammas[l] <= bound)
                throw DomainError("growth condition violated at l=" + std::to_string(l - 1) + ": gamma_" +
                                  std::to_string(l) + " = " + seq.gammas[l].str() + " <= m̄_" +
                                  std::to_string(l - 1) + "*gamma_" + std::to_string(l - 1) + " = " + bound.str());
        }
    }
    if (L >= 1 && idx.mbars.back() == 1)
        seq.warnings.push_back("m̄_" + std::to_string(L) +
                               " = 1: a non-discrete valuation needs infinitely many m̄ > 1, which a truncation "
                               "cannot certify");
    return seq;
}

inline ValueSequence ValueSequence::prefix(std::size_t k) const {
    if (k > depth()) throw DomainError("prefix longer than sequence");
    return validate_sequence(std::vector<Rational>(gammas.begin(), gammas.begin() + static_cast<std::ptrdiff_t>(k) + 1));
}

/// l*gamma_0 + sum j_k*gamma_k with bounded digits; trailing zero digits are trimmed.
struct ExpansionTerm {
    std::int64_t l = 0;
    std::vector<std::int64_t> js;

    [[nodiscard]] Rational value(const ValueSequence& seq) const {
        Rational v(static_cast<long>(l));
        for (std::size_t k = 0; k < js.size(); ++k) v += Rational(static_cast<long>(js[k])) * seq.gamma(k + 1);
        return v;
    }

    void trim() {
        while (!js.empty() && js.back() == 0) js.pop_back();
    }

    friend bool operator==(const ExpansionTerm&, const ExpansionTerm&) = default;
};

struct SliceEntry {
    Rational value;
    ExpansionTerm term;

    friend bool operator==(const SliceEntry&, const SliceEntry&) = default;
};

struct SemigroupSlice {
    std::vector<SliceEntry> entries;  ///< ascending by value
    Rational complete_up_to;          ///< membership is certain for values <= this

    [[nodiscard]] std::vector<Rational> values() const {
        std::vector<Rational> out;
        out.reserve(entries.size());
        for (const auto& e : entries) out.push_back(e.value);
        return out;
    }
};

/// Every semigroup value <= bound reachable with gamma_0..gamma_L, each with
/// its bounded-digit expansion.
inline SemigroupSlice semigroup_slice(const ValueSequence& seq, const Rational& bound) {
    SemigroupSlice slice;
    const std::size_t L = seq.depth();
    std::vector<std::int64_t> digits(L, 0);

    auto emit = [&](const Rational& partial) {
        Integer max_l = ((bound - partial) / seq.gamma(0)).floor();
        for (Integer l = 0; l <= max_l; ++l) {
            ExpansionTerm term{to_int64(l), digits};
            term.trim();
            slice.entries.push_back({partial + Rational(l), std::move(term)});
        }
    };
    // Depth-first over digits j_L, ..., j_1.
    auto recurse = [&](auto&& self, std::size_t k, const Rational& partial) -> void {
        if (k == 0) {
            emit(partial);
            return;
        }
        for (std::int64_t jk = 0; jk < seq.mbar(k); ++jk) {
            Rational next = partial + Rational(static_cast<long>(jk)) * seq.gamma(k);
            if (next > bound) break;
            digits[k - 1] = jk;
            self(self, k - 1, next);
        }
        digits[k - 1] = 0;
    };
    if (bound.sign() >= 0) recurse(recurse, L, Rational(0));

    std::sort(slice.entries.begin(), slice.entries.end(),
              [](const SliceEntry& a, const SliceEntry& b) { return a.value < b.value; });
    for (std::size_t k = 1; k < slice.entries.size(); ++k)
        if (slice.entries[k].value == slice.entries[k - 1].value)
            throw DefectError("two bounded expansions share the value " + slice.entries[k].value.str());
    slice.complete_up_to = std::min(bound, seq.next_gamma_lower_bound());
    return slice;
}

/// The unique bounded-digit expansion of v, if v is in the truncated semigroup.
/// Digits are forced top-down: j_k is the only residue mod m̄_k that keeps the
/// remainder inside G(gamma_0, ..., gamma_{k-1}).
inline std::optional<ExpansionTerm> expand_value(const Rational& v, const ValueSequence& seq) {
    if (v.sign() < 0) return std::nullopt;
    const std::size_t L = seq.depth();
    std::vector<std::int64_t> digits(L, 0);
    Rational rest = v;
    for (std::size_t k = L; k >= 1; --k) {
        auto lower = std::span<const Rational>(seq.gammas).first(k);
        bool found = false;
        for (std::int64_t jk = 0; jk < seq.mbar(k); ++jk) {
            Rational candidate = rest - Rational(static_cast<long>(jk)) * seq.gamma(k);
            if (group_membership(candidate, lower)) {
                digits[k - 1] = jk;
                rest = candidate;
                found = true;
                break;
            }
        }
        if (!found || rest.sign() < 0) return std::nullopt;
    }
    if (!rest.is_integer() || rest.sign() < 0) return std::nullopt;
    ExpansionTerm term{to_int64(rest.num()), std::move(digits)};
    term.trim();
    return term;
}

}  // namespace vsg
