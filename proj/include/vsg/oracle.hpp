#pragma once

/**
 * @file oracle.hpp
 * @brief Brute-force reference computations for tests and --verify.
 *
 * Nothing here calls the fast paths it is meant to check: subgroups come from
 * closures inside Z/m x Z/n, invariance is tested on every group element with
 * rational angles instead of delta exponents, and m̄ comes from reachability
 * in Z/D rather than from a gcd.
 */

#include "error.hpp"
#include "groups.hpp"
#include "numtheory.hpp"
#include "qpoly.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

namespace vsg::oracle {

/// Element (u, v) of Z/m x Z/n packed as u*n + v.
using ElementSet = std::vector<std::int64_t>;

inline constexpr std::int64_t max_group_size = 10'000;

inline ElementSet closure_in_ambient(std::int64_t m, std::int64_t n, const std::vector<std::int64_t>& gens) {
    std::vector<char> seen(static_cast<std::size_t>(m * n), 0);
    std::vector<std::int64_t> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        auto cur = stack.back();
        stack.pop_back();
        for (auto g : gens) {
            std::int64_t u = (cur / n + g / n) % m, v = (cur % n + g % n) % n;
            std::int64_t next = u * n + v;
            if (!seen[static_cast<std::size_t>(next)]) {
                seen[static_cast<std::size_t>(next)] = 1;
                stack.push_back(next);
            }
        }
    }
    ElementSet out;
    for (std::int64_t e = 0; e < m * n; ++e)
        if (seen[static_cast<std::size_t>(e)]) out.push_back(e);
    return out;
}

/// Every subgroup of Z/m x Z/n, each as a sorted packed element list.
/// Subgroups of a product of two cyclic groups need at most two generators,
/// so joins of pairs of cyclic subgroups reach all of them.
inline std::vector<ElementSet> brute_subgroups(std::int64_t m, std::int64_t n) {
    if (m < 1 || n < 1) throw DomainError("m and n must be positive");
    if (m * n > max_group_size) throw DomainError("brute_subgroups: m*n exceeds 10^4");
    std::set<ElementSet> cyclic;
    std::vector<std::int64_t> generator_of;
    for (std::int64_t e = 0; e < m * n; ++e) {
        if (cyclic.insert(closure_in_ambient(m, n, {e})).second) generator_of.push_back(e);
    }
    std::set<ElementSet> all(cyclic.begin(), cyclic.end());
    for (std::size_t a = 0; a < generator_of.size(); ++a)
        for (std::size_t b = a + 1; b < generator_of.size(); ++b)
            all.insert(closure_in_ambient(m, n, {generator_of[a], generator_of[b]}));
    return {all.begin(), all.end()};
}

/// Packed ambient image of H(i,j,t,x), built from its defining congruence.
inline ElementSet ambient_elements(const SubgroupParams& p) {
    std::set<std::int64_t> out;
    for (std::int64_t a = 0; a < p.m(); ++a)
        for (std::int64_t b = 0; b < p.n(); ++b)
            if (((b - a * p.x) % p.t + p.t) % p.t == 0) out.insert((a * p.i % p.m()) * p.n() + (b * p.j % p.n()));
    return {out.begin(), out.end()};
}

/// Least q >= 1 with q*gamma_l in G(gamma_0..gamma_{l-1}), gamma_0 = 1,
/// by walking the cyclic group G/Z inside (1/D)Z/Z = Z/D.
inline std::int64_t brute_mbar(const std::vector<Rational>& prefix) {
    if (prefix.size() < 2 || prefix.front() != Rational(1)) throw DomainError("brute_mbar needs gamma_0 = 1 and gamma_l");
    Integer D = 1;
    for (const auto& g : prefix) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), g.den().get_mpz_t());
    if (D > 1'000'000) throw DomainError("brute_mbar: common denominator exceeds 10^6");
    const std::int64_t d = D.get_si();
    auto residue = [&](const Rational& g) {
        Integer a = g.num() * (D / g.den());
        Integer r;
        mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), D.get_mpz_t());
        return r.get_si();
    };
    std::vector<char> reach(static_cast<std::size_t>(d), 0);
    std::vector<std::int64_t> stack{0};
    reach[0] = 1;
    std::vector<std::int64_t> steps;
    for (std::size_t k = 0; k + 1 < prefix.size(); ++k) steps.push_back(residue(prefix[k]));
    while (!stack.empty()) {
        auto cur = stack.back();
        stack.pop_back();
        for (auto s : steps) {
            auto next = (cur + s) % d;
            if (!reach[static_cast<std::size_t>(next)]) {
                reach[static_cast<std::size_t>(next)] = 1;
                stack.push_back(next);
            }
        }
    }
    const std::int64_t last = residue(prefix.back());
    for (std::int64_t q = 1; q <= d; ++q)
        if (reach[static_cast<std::size_t>(q * last % d)]) return q;
    throw DefectError("brute_mbar: no multiple reached");
}

/// X^r Y^s is fixed by (alpha^{a i}, beta^{b j}) iff r*a*i*w1/m + s*b*j*w2/n is an integer.
inline bool monomial_fixed(std::int64_t r, std::int64_t s, std::int64_t a, std::int64_t b, const SubgroupParams& p,
                           const RootContext& ctx) {
    Rational angle = Rational(Integer(r) * a * p.i * ctx.w1, Integer(p.m())) + Rational(Integer(s) * b * p.j * ctx.w2, Integer(p.n()));
    return angle.is_integer();
}

inline bool invariant_by_exhaustion(const QPolynomial& f, const SubgroupParams& p, const RootContext& ctx) {
    for (std::int64_t a = 0; a < p.M * p.t; ++a)
        for (std::int64_t b = 0; b < p.N * p.t; ++b) {
            if (((b - a * p.x) % p.t + p.t) % p.t != 0) continue;
            for (const auto& [mono, c] : f.terms())
                if (!monomial_fixed(mono.first, mono.second, a, b, p, ctx)) return false;
        }
    return true;
}

/// Exhaustive eigen test: one common scalar per group element across the support.
inline bool eigen_by_exhaustion(const QPolynomial& f, const SubgroupParams& p, const RootContext& ctx) {
    if (f.is_zero()) throw DomainError("eigenfunction undefined for 0");
    const auto& first = f.terms().begin()->first;
    for (std::int64_t a = 0; a < p.M * p.t; ++a)
        for (std::int64_t b = 0; b < p.N * p.t; ++b) {
            if (((b - a * p.x) % p.t + p.t) % p.t != 0) continue;
            for (const auto& [mono, c] : f.terms()) {
                Rational diff = Rational(Integer(mono.first - first.first) * a * p.i * ctx.w1, Integer(p.m())) +
                                Rational(Integer(mono.second - first.second) * b * p.j * ctx.w2, Integer(p.n()));
                if (!diff.is_integer()) return false;
            }
        }
    return true;
}

/// Values <= bound of products X^l Y^{j_1} Q_2^{j_2} ... (j_k < m̄_k) whose
/// full monomial expansion is fixed by every element of H.
inline std::vector<Rational> brute_invariant_values(const SubgroupParams& p, const RootContext& ctx,
                                                    const GeneratingSequence& gs, const Rational& bound) {
    const auto& gammas = gs.seq.gammas;
    const std::size_t L = gammas.size() - 1;
    std::vector<std::int64_t> mbars;
    for (std::size_t k = 1; k <= L; ++k)
        mbars.push_back(brute_mbar(std::vector<Rational>(gammas.begin(), gammas.begin() + static_cast<std::ptrdiff_t>(k) + 1)));
    std::set<Rational> out;
    std::vector<std::int64_t> js(L, 0);
    if (bound.sign() < 0) return {};
    while (true) {
        Rational base(0);
        for (std::size_t k = 0; k < L; ++k) base += Rational(static_cast<long>(js[k])) * gammas[k + 1];
        if (base <= bound) {
            QPolynomial prod = QPolynomial::Y(L >= 1 ? js[0] : 0);
            for (std::size_t k = 1; k < L; ++k)
                for (std::int64_t e = 0; e < js[k]; ++e) prod = prod * gs.q(k + 1);
            for (std::int64_t l = 0; base + Rational(static_cast<long>(l)) <= bound; ++l)
                if (invariant_by_exhaustion(prod.shifted(l, 0), p, ctx)) out.insert(base + Rational(static_cast<long>(l)));
        }
        std::size_t k = 0;
        while (k < L && ++js[k] == mbars[k]) js[k++] = 0;
        if (k == L) break;
    }
    return {out.begin(), out.end()};
}

}  // namespace vsg::oracle
