#pragma once

/**
 * @file invariants.hpp
 * @brief The invariant semigroup S^A(nu) for A = K[X,Y]^H, the finite
 * generation trichotomy, the two witness constructions and the congruence
 * invariants that every eigen generating sequence with t > 1 satisfies.
 *
 * If every Q_k is an eigenfunction for H, then (a,b) in H scales Q_k by
 * beta^{d(k)*b*j}, so a product X^l Y^{j_1} Q_2^{j_2} ... is invariant iff
 * alpha^{l*a*i} * beta^{b*j*sum j_k d(k)} = 1 for both generators of H.
 */

#include "error.hpp"
#include "groups.hpp"
#include "numtheory.hpp"
#include "qpoly.hpp"
#include "valuation.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace vsg {

/// alpha^{l*a*i} * beta^{b*j*sum_k j_k d(k)} = 1 for both generators (a,b).
inline bool eigen_condition(std::int64_t l, std::span<const std::int64_t> js, const SubgroupParams& params,
                            const RootContext& ctx, std::span<const std::int64_t> degrees) {
    if (js.size() > degrees.size()) throw DomainError("more digits than known degrees d(k)");
    const std::int64_t mn = ctx.order();
    std::int64_t s = 0;
    for (std::size_t k = 0; k < js.size(); ++k)
        s = static_cast<std::int64_t>((static_cast<__int128>(js[k]) * floor_mod(degrees[k], mn) + s) % mn);
    const auto gens = generating_pair(params);
    for (const auto& g : {gens.first, gens.second})
        if (delta_exponent(l, s, g.a, g.b, params.i, params.j, ctx) != 0) return false;
    return true;
}

inline SemigroupSlice invariant_semigroup_slice(const SubgroupParams& params, const RootContext& ctx,
                                                const ValueSequence& seq, const Rational& bound) {
    check_context(params, ctx);
    SemigroupSlice all = semigroup_slice(seq, bound);
    SemigroupSlice out;
    out.complete_up_to = all.complete_up_to;
    for (auto& entry : all.entries)
        if (eigen_condition(entry.term.l, entry.term.js, params, ctx, seq.indices.degrees)) out.entries.push_back(std::move(entry));
    return out;
}

// =============================================================================
// Finite generation
// =============================================================================

enum class Verdict { NoEigenGenSeq, FinitelyGenerated, NotFinitelyGenerated };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::NoEigenGenSeq: return "NoEigenGenSeq";
        case Verdict::FinitelyGenerated: return "FinitelyGenerated";
        case Verdict::NotFinitelyGenerated: return "NotFinitelyGenerated";
    }
    return "?";
}

struct FGDecision {
    Verdict verdict = Verdict::NoEigenGenSeq;
    std::int64_t gcd = 1;  ///< gcd(m/i, n/j)
    std::int64_t t = 1;
    /// FinitelyGenerated: least N with Q_N invariant among the supplied Q's.
    std::optional<std::int64_t> witness_N;
    /// j = n: every Q_l is invariant, so N = 1 regardless of the sequence.
    bool witness_guaranteed = false;
    /// NotFinitelyGenerated: every checked (l, d(l)) with (n/j) not dividing d(l).
    std::vector<std::pair<std::int64_t, std::int64_t>> divisibility_failures;
    /// Sequence-level evidence, present when a sequence was supplied.
    bool evidence_checked = false;
    bool evidence_consistent = true;
    std::vector<std::string> evidence_notes;
};

/// Theorem-driven verdict; a supplied sequence only contributes evidence and
/// never overrides it. Q indices up to min(depth, L + 1) are examined.
inline FGDecision decide_finite_generation(const SubgroupParams& params, const RootContext& ctx,
                                           const std::optional<ValueSequence>& seq, std::size_t depth) {
    check_context(params, ctx);
    FGDecision dec;
    dec.gcd = params.quotient_gcd();
    dec.t = params.t;
    if (dec.gcd != params.t)
        dec.verdict = Verdict::NoEigenGenSeq;
    else if (params.t == 1)
        dec.verdict = Verdict::FinitelyGenerated;
    else
        dec.verdict = Verdict::NotFinitelyGenerated;
    if (dec.verdict == Verdict::FinitelyGenerated && params.j == params.n()) {
        dec.witness_guaranteed = true;
        dec.witness_N = 1;
    }
    if (!seq) return dec;

    dec.evidence_checked = true;
    const auto gs = build_generating_sequence(*seq, {}, 0);
    const auto reports = recursive_eigen_reports(gs, params, ctx);
    const std::size_t top = std::min(depth, gs.top());
    auto note = [&](std::string s) {
        dec.evidence_consistent = false;
        dec.evidence_notes.push_back(std::move(s));
    };

    if (dec.verdict == Verdict::NoEigenGenSeq) {
        if (gs.top() >= 2 && !reports[2].is_eigen)
            dec.evidence_notes.push_back("Q_2 = " + gs.recursion_string(1) + " is not an eigenfunction for H");
        else
            note("supplied sequence has eigen Q_2, contradicting gcd(m/i, n/j) != t");
        return dec;
    }

    for (std::size_t l = 2; l <= top; ++l)
        if (!reports[l].is_eigen) {
            note("Q_" + std::to_string(l) + " is not an eigenfunction for H");
            break;
        }

    const std::int64_t nj = params.n_over_j();
    if (dec.verdict == Verdict::FinitelyGenerated) {
        for (std::size_t l = 1; l <= top; ++l) {
            if (!reports[l].is_eigen || !reports[l].is_invariant) continue;
            if (!dec.witness_N) dec.witness_N = static_cast<std::int64_t>(l);
            if (!divides(nj, gs.seq.degree(l)))
                throw DefectError("Q_" + std::to_string(l) + " invariant but n/j does not divide d(l)");
        }
        if (dec.witness_guaranteed) dec.witness_N = 1;
        if (dec.witness_N) {
            for (auto l = static_cast<std::size_t>(*dec.witness_N); l <= top; ++l)
                if (!reports[l].is_invariant) note("Q_" + std::to_string(l) + " is not invariant past the witness");
        } else if (dec.evidence_consistent) {
            dec.evidence_notes.push_back("no invariant Q_N with N <= " + std::to_string(top) + "; increase depth");
        }
        return dec;
    }

    for (std::size_t l = 2; l <= top; ++l) {
        const std::int64_t d = gs.seq.degree(l);
        if (divides(nj, d))
            note("n/j divides d(" + std::to_string(l) + ") = " + std::to_string(d));
        else
            dec.divisibility_failures.emplace_back(static_cast<std::int64_t>(l), d);
    }
    return dec;
}

// =============================================================================
// Constructions
// =============================================================================

struct ConstructionTrace {
    bool t_is_one = true;
    SubgroupParams params;
    RootContext ctx;
    std::size_t depth = 0;  ///< gammas gamma_0 .. gamma_{depth-1}, key polynomials Q_0 .. Q_depth
    // t = 1
    std::vector<std::int64_t> q;  ///< q_1 .. q_{depth-1}
    std::vector<Integer> c;       ///< c_1 .. c_{depth-1}
    // t > 1
    std::int64_t r = 0;
    std::int64_t s = 0;
    std::int64_t d = 1;                 ///< gcd(w1, w2)
    std::vector<std::int64_t> r_l;      ///< r_1 .. r_{depth-1}
    std::vector<Integer> a;             ///< a_1 .. a_{depth-1}
    std::vector<Integer> b;             ///< b_1 .. b_{depth-1}
    ValueSequence seq;
    GeneratingSequence gs;
    std::vector<EigenReport> eigen;     ///< per Q_l, from the recursion
};

namespace detail {

inline void finish_trace(ConstructionTrace& tr, std::vector<Rational> gammas, std::size_t work_budget) {
    tr.seq = validate_sequence(std::move(gammas));
    tr.gs = build_generating_sequence(tr.seq, {}, work_budget);
    tr.eigen = recursive_eigen_reports(tr.gs, tr.params, tr.ctx);
    for (std::size_t l = 0; l < tr.eigen.size(); ++l) {
        if (!tr.eigen[l].is_eigen) throw DefectError("constructed Q_" + std::to_string(l) + " is not an eigenfunction");
        if (l < tr.gs.expanded_count()) {
            auto direct = eigen_report(tr.gs.qs[l], tr.params, tr.ctx);
            if (!direct.is_eigen || direct.exponents != tr.eigen[l].exponents)
                throw DefectError("expanded Q_" + std::to_string(l) + " disagrees with its recursion eigenvalue");
        }
    }
}

inline void require_depth(std::size_t depth) {
    if (depth < 2) throw DomainError("construction depth must be at least 2");
}

}  // namespace detail

inline ConstructionTrace construct_valuation_t1(const SubgroupParams& params, const RootContext& ctx, std::size_t depth,
                                                std::size_t work_budget = default_expansion_budget) {
    detail::require_depth(depth);
    check_context(params, ctx);
    if (params.t != 1 || params.quotient_gcd() != 1) throw DomainError("construct_valuation_t1 needs t = 1 and gcd(m/i, n/j) = 1");
    if (params.j == params.n())
        throw DomainError("construction refused: j = n, so H acts trivially on Y and q_1 = n/j = 1; "
                          "the semigroup is finitely generated with witness N = 1");
    ConstructionTrace tr;
    tr.t_is_one = true;
    tr.params = params;
    tr.ctx = ctx;
    tr.depth = depth;
    const std::int64_t mi = params.m_over_i(), nj = params.n_over_j();
    tr.q.push_back(nj);
    tr.c.push_back(Integer(mi));
    auto later = primes_in_ap(1, 1, {mi, nj}, depth - 2);
    for (std::size_t k = 0; k + 2 < depth; ++k) {
        const std::int64_t ql = later[k];
        Integer lower = Integer(ql) * tr.c.back();
        Integer cl = (lower / mi + 1) * mi;  // smallest multiple of m/i above q_l*c_{l-1}
        while (cl % ql == 0) cl += mi;
        tr.q.push_back(ql);
        tr.c.push_back(cl);
    }
    std::vector<Rational> gammas{Rational(1)};
    for (std::size_t k = 0; k < tr.q.size(); ++k) gammas.push_back(Rational(tr.c[k], Integer(tr.q[k])));
    detail::finish_trace(tr, std::move(gammas), work_budget);
    for (std::size_t l = 1; l < depth; ++l) {
        if (tr.seq.mbar(l) != tr.q[l - 1]) throw DefectError("m̄_" + std::to_string(l) + " differs from q_" + std::to_string(l));
        const auto& ce = tr.gs.recursion_exponents[l - 1];
        if (Integer(ce[0]) != tr.c[l - 1] || std::any_of(ce.begin() + 1, ce.end(), [](std::int64_t v) { return v != 0; }))
            throw DefectError("Q_" + std::to_string(l + 1) + " recursion is not Q_l^{q_l} - X^{c_l}");
    }
    return tr;
}

inline ConstructionTrace construct_valuation_t1(const SubgroupParams& params, std::size_t depth) {
    return construct_valuation_t1(params, RootContext::make(params.m(), params.n()), depth);
}

/// Minimal positive (r, s) with r*x - s*t = 1.
inline std::pair<std::int64_t, std::int64_t> bezout_rs(std::int64_t x, std::int64_t t) {
    std::int64_t r = t == 1 ? 1 : mod_inverse(x, t);
    if (r == 0) r = t;
    if ((r * x - 1) / t < 1) r += t;
    return {r, (r * x - 1) / t};
}

inline ConstructionTrace construct_valuation_tgt1(const SubgroupParams& params, const RootContext& ctx, std::size_t depth,
                                                  std::size_t work_budget = default_expansion_budget) {
    detail::require_depth(depth);
    check_context(params, ctx);
    if (params.t <= 1 || params.quotient_gcd() != params.t)
        throw DomainError("construct_valuation_tgt1 needs t > 1 and gcd(m/i, n/j) = t");
    ConstructionTrace tr;
    tr.t_is_one = false;
    tr.params = params;
    tr.ctx = ctx;
    tr.depth = depth;
    const std::int64_t t = params.t, M = params.M, N = params.N;
    std::tie(tr.r, tr.s) = bezout_rs(params.x, t);
    tr.d = std::gcd(ctx.w1, ctx.w2);

    // Primes r_l = r (mod t) avoiding M, N, w1, w2; from l = 2 on also r_l must not divide r.
    const std::size_t need = depth - 1;
    for (std::size_t want = need; tr.r_l.size() < need; want += need) {
        tr.r_l.clear();
        for (auto p : primes_in_ap(tr.r, t, {M, N, ctx.w1, ctx.w2}, want)) {
            if (!tr.r_l.empty() && tr.r % p == 0) continue;
            tr.r_l.push_back(p);
            if (tr.r_l.size() == need) break;
        }
    }

    const Integer w2d(ctx.w2 / tr.d), w1d(ctx.w1 / tr.d), bigR(tr.r);
    tr.b.push_back(Integer(0));
    tr.a.push_back(Integer(M) * w2d);
    Integer r_pow(1);  // r^{l-1}
    for (std::size_t l = 1; l < need; ++l) {
        // b_{l+1}: smallest nonnegative multiple of lcm(r_{l+1}, t) exceeding r_{l+1}(r^{l-1} + b_l) - r^l
        const Integer next_prime(tr.r_l[l]);
        Integer step;
        mpz_lcm(step.get_mpz_t(), next_prime.get_mpz_t(), Integer(t).get_mpz_t());
        Integer floor_val = next_prime * (r_pow + tr.b.back()) - r_pow * bigR;
        Integer bnext = floor_val < 0 ? Integer(0) : Integer((floor_val / step + 1) * step);
        r_pow *= bigR;
        tr.b.push_back(bnext);
        tr.a.push_back(Integer(M) * (r_pow + bnext) * w2d);
    }
    std::vector<Rational> gammas{Rational(1)};
    gammas.push_back(Rational(tr.a[0], Integer(tr.r_l[0]) * Integer(N) * w1d));
    for (std::size_t l = 1; l < need; ++l) gammas.push_back(Rational(tr.a[l], Integer(tr.r_l[l])));
    detail::finish_trace(tr, std::move(gammas), work_budget);

    const Integer mbar1 = Integer(tr.r_l[0]) * Integer(N) * w1d;
    if (Integer(tr.seq.mbar(1)) != mbar1) throw DefectError("m̄_1 differs from r_1*N*w1/d");
    for (std::size_t l = 2; l < depth; ++l)
        if (tr.seq.mbar(l) != tr.r_l[l - 1]) throw DefectError("m̄_" + std::to_string(l) + " differs from r_" + std::to_string(l));
    for (std::size_t l = 1; l < depth; ++l) {
        const auto& ce = tr.gs.recursion_exponents[l - 1];
        if (Integer(ce[0]) != tr.a[l - 1] || std::any_of(ce.begin() + 1, ce.end(), [](std::int64_t v) { return v != 0; }))
            throw DefectError("Q_" + std::to_string(l + 1) + " recursion is not Q_l^{r_l} - X^{a_l}");
    }
    return tr;
}

// =============================================================================
// Structure invariants for t > 1
// =============================================================================

struct StructureCheck {
    std::string name;
    std::int64_t k = 0;      ///< gamma index the check concerns (0 when global)
    std::int64_t p = 0;      ///< prime used, when relevant
    bool passed = false;
    std::string detail;
};

struct StructureReport {
    enum class Branch { NotApplicable, PrimeNotDividingN, EveryPrimeDividesN };
    Branch branch = Branch::NotApplicable;
    std::string note;
    std::vector<StructureCheck> checks;

    [[nodiscard]] bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const StructureCheck& c) { return c.passed; });
    }
};

inline std::string to_string(StructureReport::Branch b) {
    switch (b) {
        case StructureReport::Branch::NotApplicable: return "not applicable";
        case StructureReport::Branch::PrimeNotDividingN: return "prime p | t with p not dividing N";
        case StructureReport::Branch::EveryPrimeDividesN: return "every prime of t divides N";
    }
    return "?";
}

namespace detail {

inline std::int64_t mod_of(const Integer& z, std::int64_t p) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(p));
    return r.get_si();
}

inline bool coprime(const Integer& a, std::int64_t b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), Integer(b).get_mpz_t());
    return g == 1;
}

}  // namespace detail

/// Checks the congruence conclusions that any eigen generating sequence for
/// H with t > 1 must satisfy, on gamma_1 .. gamma_{min(depth, L)}.
inline StructureReport verify_structure_invariants(const SubgroupParams& params, const RootContext& ctx,
                                                   const ValueSequence& seq, std::size_t depth) {
    check_context(params, ctx);
    StructureReport rep;
    if (params.t == 1) {
        rep.note = "t = 1";
        return rep;
    }
    if (params.quotient_gcd() != params.t) {
        rep.note = "gcd(m/i, n/j) != t, so no eigen generating sequence exists";
        return rep;
    }
    const std::int64_t t = params.t, M = params.M, N = params.N, x = params.x;
    const std::size_t K = std::min(depth, seq.depth());
    auto add = [&](std::string name, std::size_t k, std::int64_t p, bool ok, std::string detail) {
        rep.checks.push_back({std::move(name), static_cast<std::int64_t>(k), p, ok, std::move(detail)});
    };

    std::vector<std::int64_t> lonely;  // primes of t not dividing N
    for (auto p : prime_factors(t))
        if (N % p != 0) lonely.push_back(p);

    if (!lonely.empty()) {
        rep.branch = StructureReport::Branch::PrimeNotDividingN;
        for (auto p : lonely) {
            const std::int64_t N1 = mod_inverse(N, p);
            const std::int64_t w1bar = mod_inverse(ctx.w1, p);
            const std::int64_t coef = floor_mod(M % p * N1 % p * (x % p) % p * (ctx.w2 % p) % p * w1bar, p);
            for (std::size_t k = 1; k <= K; ++k) {
                const auto& g = seq.gamma(k);
                add("(p, m̄_k) = 1", k, p, seq.mbar(k) % p != 0, "m̄_" + std::to_string(k) + " = " + std::to_string(seq.mbar(k)));
                add("(p, den gamma_k) = 1", k, p, detail::mod_of(g.den(), p) != 0, "gamma_" + std::to_string(k) + " = " + g.str());
                const std::int64_t lhs = detail::mod_of(g.num(), p);
                const std::int64_t rhs =
                    floor_mod(detail::mod_of(g.den(), p) * coef % p * floor_mod(seq.degree(k), p), p);
                add("num gamma_k = den gamma_k * M N_1 x w2 w̄1 d(k) mod p", k, p, lhs == rhs,
                    std::to_string(lhs) + " vs " + std::to_string(rhs) + " mod " + std::to_string(p));
            }
        }
        return rep;
    }

    rep.branch = StructureReport::Branch::EveryPrimeDividesN;
    std::int64_t Nbar = N;
    while (std::gcd(Nbar, x) != 1) Nbar /= std::gcd(Nbar, x);
    const std::int64_t Nprime = N / Nbar;
    if (K < 1) return rep;
    const Rational& g1 = seq.gamma(1);
    const Integer a1 = g1.num(), b1 = g1.den();
    const bool m_div = a1 % M == 0, nbar_div = b1 % Nbar == 0;
    add("gamma_1 = M*u / (N̄*r')", 1, 0, m_div && nbar_div,
        "gamma_1 = " + g1.str() + ", M = " + std::to_string(M) + ", N̄ = " + std::to_string(Nbar));
    if (!(m_div && nbar_div)) return rep;
    const Integer u = a1 / M, rp = b1 / Nbar;
    add("(u, N̄) = 1", 1, 0, detail::coprime(u, Nbar), "u = " + u.get_str());
    add("(u, t) = 1", 1, 0, detail::coprime(u, t), "u = " + u.get_str());
    {
        Integer g;
        mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), rp.get_mpz_t());
        add("(u, r') = 1", 1, 0, g == 1, "r' = " + rp.get_str());
    }
    add("(M, r') = 1", 1, 0, detail::coprime(rp, M), "r' = " + rp.get_str());
    {
        const std::int64_t rinv = mod_inverse(x, t);
        const std::int64_t w2bar = mod_inverse(ctx.w2, t);
        const std::int64_t rhs =
            floor_mod(static_cast<std::int64_t>(static_cast<__int128>(rinv) * detail::mod_of(u, t) % t * (ctx.w1 % t) % t *
                                                w2bar % t * (Nprime % t) % t),
                      t);
        const std::int64_t lhs = detail::mod_of(rp, t);
        add("r' = r*u*w1*w̄2*N' mod t", 1, 0, lhs == rhs, std::to_string(lhs) + " vs " + std::to_string(rhs) + " mod " + std::to_string(t));
    }
    Integer prefix_mbar(1);  // m̄_2 ... m̄_{k-1}
    Integer all_mbar(seq.mbar(1));
    for (std::size_t k = 2; k <= K; ++k) {
        all_mbar *= seq.mbar(k);
        add("(t, m̄_k) = 1", k, 0, std::gcd(seq.mbar(k), t) == 1, "m̄_" + std::to_string(k) + " = " + std::to_string(seq.mbar(k)));
        Rational lambda = (seq.gamma(k) - Rational(Integer(Integer(M) * u * prefix_mbar))) * Rational(all_mbar) /
                          Rational(Integer(Integer(M) * Nbar * t));
        add("gamma_k = M u m̄_2..m̄_{k-1} + M N̄ t lambda / (m̄_1..m̄_k)", k, 0, lambda.is_integer(),
            "lambda_" + std::to_string(k) + " = " + lambda.str());
        prefix_mbar *= seq.mbar(k);
    }
    return rep;
}

}  // namespace vsg
