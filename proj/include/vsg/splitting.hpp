#pragma once

/**
 * @file splitting.hpp
 * @brief Value-group index of nu restricted to the invariant ring, truncated
 * at depth L, and the non-splitting certificate it yields.
 *
 * Gamma_full = G(gamma_0..gamma_L) = g*Z. The restricted group is the value
 * image of the lattice of exponent vectors (l, j_1, ..., j_L) whose products
 * are invariant. Writing v_k = gamma_k / g and c_k for the two eigenvalue
 * exponents of Q_k, the rows (v_k, c_k) together with (0, mn, 0), (0, 0, mn)
 * reduce to a pivot (1, c*) plus rows (0, C0); the restricted group is then
 * e*g*Z with e the order of c* in Z^2 / C0.
 *
 * Since e*f*r = MNt and MNt divides e, a truncated index equal to MNt is
 * conclusive. A smaller index only means the depth is insufficient.
 */

#include "error.hpp"
#include "groups.hpp"
#include "invariants.hpp"
#include "numtheory.hpp"
#include "qpoly.hpp"
#include "valuation.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vsg {

struct SplittingReport {
    std::size_t depth = 0;            ///< L, last gamma index used
    Rational gamma_full;              ///< generator of G(gamma_0..gamma_L)
    Rational gamma_restricted;        ///< generator of the restricted value group at depth L
    std::int64_t e_truncated = 1;     ///< gamma_restricted / gamma_full
    std::optional<std::int64_t> e_enumerated;  ///< same index from bounded invariant tuples, when affordable
    std::optional<std::int64_t> f0;   ///< order of [gamma_0]; empty means undetermined at this depth
    std::optional<std::int64_t> f1;   ///< order of [gamma_1]
    std::int64_t MNt = 1;
    bool eigen_consistent = true;
    bool certified = false;
    /// e, f, r as forced by the degree equation (only meaningful when certified).
    std::int64_t e = 0, f = 0, r = 0;
};

namespace detail {

/// Order of c in Z^2 / span(rows); rows contain (mn, 0) and (0, mn).
inline std::int64_t order_in_quotient(std::array<Integer, 2> c, std::vector<std::array<Integer, 2>> rows) {
    // Hermite normal form of a rank-2 lattice: [[h11, h12], [0, h22]].
    Integer h11 = 0, h12 = 0, h22 = 0;
    std::vector<Integer> second;  // second coordinates of rows with zero first coordinate
    std::array<Integer, 2> pivot{0, 0};
    for (auto& row : rows) {
        if (row[0] == 0) {
            second.push_back(row[1]);
            continue;
        }
        if (pivot[0] == 0) {
            pivot = row;
            continue;
        }
        Integer g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), pivot[0].get_mpz_t(), row[0].get_mpz_t());
        std::array<Integer, 2> combined{g, s * pivot[1] + t * row[1]};
        Integer kp = row[0] / g, kr = pivot[0] / g;
        second.push_back(kp * pivot[1] - kr * row[1]);
        pivot = combined;
    }
    if (pivot[0] < 0) pivot = {-pivot[0], -pivot[1]};
    h11 = pivot[0];
    for (const auto& v : second) mpz_gcd(h22.get_mpz_t(), h22.get_mpz_t(), v.get_mpz_t());
    if (h11 == 0 || h22 == 0) throw DefectError("congruence lattice is not of full rank");
    mpz_fdiv_r(h12.get_mpz_t(), pivot[1].get_mpz_t(), h22.get_mpz_t());
    auto member = [&](const Integer& a, const Integer& b) {
        if (a % h11 != 0) return false;
        Integer rem = b - (a / h11) * h12;
        return rem % h22 == 0;
    };
    const Integer limit = h11 * h22;
    for (Integer e = 1; e <= limit; ++e)
        if (member(e * c[0], e * c[1])) return to_int64(e);
    throw DefectError("element order exceeds the quotient order");
}

}  // namespace detail

/// Bounded enumeration of invariant tuples (l <= m, j_k < m̄_k) and the
/// index of the group their values generate. Empty if there are more than
/// `limit` tuples.
inline std::optional<std::int64_t> enumerated_index(const SubgroupParams& params, const RootContext& ctx,
                                                    const ValueSequence& seq, std::int64_t limit = 2'000'000) {
    const std::size_t L = seq.depth();
    std::int64_t tuples = params.m() + 1;
    for (std::size_t k = 1; k <= L; ++k) {
        if (tuples > limit / seq.mbar(k)) return std::nullopt;
        tuples *= seq.mbar(k);
    }
    std::vector<Rational> values;
    std::vector<std::int64_t> js(L, 0);
    const auto& degrees = seq.indices.degrees;
    Rational g;
    bool any = false;
    auto fold = [&](const Rational& v) {
        if (v.is_zero()) return;
        g = any ? rational_group_generator({g, v}) : v;
        any = true;
    };
    while (true) {
        Rational base(0);
        for (std::size_t k = 0; k < L; ++k) base += Rational(static_cast<long>(js[k])) * seq.gamma(k + 1);
        for (std::int64_t l = 0; l <= params.m(); ++l)
            if (eigen_condition(l, js, params, ctx, degrees)) fold(base + Rational(static_cast<long>(l)));
        std::size_t k = 0;
        while (k < L && ++js[k] == seq.mbar(k + 1)) js[k++] = 0;
        if (k == L) break;
    }
    if (!any) throw DefectError("no nonzero invariant value found");
    const Rational full = rational_group_generator(seq.gammas);
    const Rational ratio = g / full;
    if (!ratio.is_integer()) throw DefectError("restricted group is not contained in the full group");
    return to_int64(ratio.num());
}

/// depth L <= seq.depth(); the sequence is truncated to gamma_0..gamma_L.
inline SplittingReport splitting_report(const SubgroupParams& params, const RootContext& ctx, const ValueSequence& full_seq,
                                        std::size_t depth) {
    check_context(params, ctx);
    if (params.quotient_gcd() != params.t) throw DomainError("splitting needs gcd(m/i, n/j) = t");
    if (depth > full_seq.depth())
        throw DomainError("depth " + std::to_string(depth) + " exceeds the supplied sequence (L = " +
                          std::to_string(full_seq.depth()) + ")");
    const ValueSequence seq = full_seq.prefix(depth);
    SplittingReport rep;
    rep.depth = depth;
    rep.MNt = subgroup_order(params);
    rep.gamma_full = rational_group_generator(seq.gammas);

    const auto gs = build_generating_sequence(seq, {}, 0);
    const auto eig = recursive_eigen_reports(gs, params, ctx);
    for (std::size_t k = 2; k <= depth; ++k)
        if (!eig[k].is_eigen) rep.eigen_consistent = false;

    const std::int64_t mn = ctx.order();
    const auto gens = generating_pair(params);
    auto congruence = [&](std::size_t k) -> std::array<Integer, 2> {
        const std::int64_t r = k == 0 ? 1 : 0;
        const std::int64_t s = k == 0 ? 0 : floor_mod(seq.degree(k), mn);
        return {Integer(delta_exponent(r, s, gens.first.a, gens.first.b, params.i, params.j, ctx)),
                Integer(delta_exponent(r, s, gens.second.a, gens.second.b, params.i, params.j, ctx))};
    };

    // Column-0 elimination over the rows (v_k, c_k).
    Integer pv = 0;
    std::array<Integer, 2> pc{0, 0};
    std::vector<std::array<Integer, 2>> rest;
    for (std::size_t k = 0; k <= depth; ++k) {
        Rational vk = seq.gamma(k) / rep.gamma_full;
        Integer v = vk.num();
        auto c = congruence(k);
        if (pv == 0) {
            pv = v;
            pc = c;
            continue;
        }
        Integer g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), pv.get_mpz_t(), v.get_mpz_t());
        std::array<Integer, 2> combined{s * pc[0] + t * c[0], s * pc[1] + t * c[1]};
        Integer kp = v / g, kr = pv / g;
        rest.push_back({kp * pc[0] - kr * c[0], kp * pc[1] - kr * c[1]});
        pv = g;
        pc = combined;
    }
    if (pv == -1) pc = {-pc[0], -pc[1]};
    else if (pv != 1) throw DefectError("normalized values do not generate Z");
    for (auto& row : rest)
        for (auto& x : row) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), Integer(mn).get_mpz_t());
    for (auto& x : pc) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), Integer(mn).get_mpz_t());
    rest.push_back({Integer(mn), Integer(0)});
    rest.push_back({Integer(0), Integer(mn)});

    rep.e_truncated = detail::order_in_quotient(pc, rest);
    rep.gamma_restricted = Rational(static_cast<long>(rep.e_truncated)) * rep.gamma_full;
    if (rep.e_truncated > rep.MNt) throw DefectError("truncated index exceeds |H|");

    if (rep.eigen_consistent) {
        rep.e_enumerated = enumerated_index(params, ctx, seq);
        if (rep.e_enumerated && *rep.e_enumerated != rep.e_truncated)
            throw DefectError("lattice index " + std::to_string(rep.e_truncated) + " disagrees with enumerated index " +
                              std::to_string(*rep.e_enumerated));
    }

    auto order_of = [&](const Rational& v) -> std::optional<std::int64_t> {
        Integer k = (v / rep.gamma_restricted).den();
        if (k > rep.MNt) return std::nullopt;
        return to_int64(k);
    };
    rep.f0 = order_of(seq.gamma(0));
    if (depth >= 1) rep.f1 = order_of(seq.gamma(1));

    rep.certified = rep.eigen_consistent && rep.e_truncated == rep.MNt;
    if (rep.certified) {
        rep.e = rep.MNt;
        rep.f = 1;
        rep.r = 1;
    }
    return rep;
}

}  // namespace vsg
