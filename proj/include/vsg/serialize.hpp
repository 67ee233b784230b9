#pragma once

/**
 * @file serialize.hpp
 * @brief JSON encodings. Rationals are "p/q" strings, polynomials are lists of
 * {"r","s","c"} ordered by (r, s).
 */

#include "groups.hpp"
#include "invariants.hpp"
#include "numtheory.hpp"
#include "qpoly.hpp"
#include "splitting.hpp"
#include "valuation.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace vsg::json {

using nlohmann::json;

inline json rational(const Rational& r) { return r.str(); }

inline json rationals(const std::vector<Rational>& v) {
    json out = json::array();
    for (const auto& r : v) out.push_back(r.str());
    return out;
}

inline json integers(const std::vector<Integer>& v) {
    json out = json::array();
    for (const auto& z : v) out.push_back(z.fits_slong_p() ? json(z.get_si()) : json(z.get_str()));
    return out;
}

inline json subgroup(const SubgroupParams& p) {
    return {{"m", p.m()}, {"n", p.n()}, {"i", p.i}, {"j", p.j}, {"t", p.t},
            {"x", p.x}, {"M", p.M},     {"N", p.N}, {"order", subgroup_order(p)}};
}

inline json polynomial(const QPolynomial& f) {
    json out = json::array();
    for (const auto& [mono, c] : f.terms()) out.push_back({{"r", mono.first}, {"s", mono.second}, {"c", c.str()}});
    return out;
}

inline QPolynomial polynomial_from(const json& j) {
    QPolynomial f;
    for (const auto& term : j)
        f += QPolynomial::monomial(term.at("r").get<std::int64_t>(), term.at("s").get<std::int64_t>(),
                                   Rational::parse(term.at("c").get<std::string>()));
    return f;
}

inline json slice(const SemigroupSlice& s) {
    json entries = json::array();
    for (const auto& e : s.entries) entries.push_back({{"value", e.value.str()}, {"l", e.term.l}, {"js", e.term.js}});
    return {{"entries", entries}, {"complete_up_to", s.complete_up_to.str()}};
}

inline json value_sequence(const ValueSequence& seq) {
    return {{"gammas", rationals(seq.gammas)},
            {"mbars", seq.indices.mbars},
            {"degrees", seq.indices.degrees},
            {"sigma", seq.indices.sigma},
            {"warnings", seq.warnings}};
}

inline json generating_sequence(const GeneratingSequence& gs) {
    json qs = json::array();
    for (std::size_t l = 0; l <= gs.top(); ++l) {
        json q = {{"index", l}};
        if (l >= 2) q["recursion"] = gs.recursion_string(l - 1);
        if (l < gs.expanded_count()) {
            q["text"] = to_string(gs.qs[l]);
            q["terms"] = polynomial(gs.qs[l]);
        } else {
            q["expanded"] = false;
        }
        qs.push_back(q);
    }
    return {{"sequence", value_sequence(gs.seq)},
            {"lambdas", rationals(gs.lambdas)},
            {"recursion_exponents", gs.recursion_exponents},
            {"qs", qs}};
}

inline json eigen(const EigenReport& r) {
    json out = {{"is_eigen", r.is_eigen}, {"is_invariant", r.is_invariant}};
    if (r.is_eigen) out["exponents"] = r.exponents;
    return out;
}

inline json decision(const FGDecision& d) {
    json out = {{"verdict", to_string(d.verdict)}, {"gcd", d.gcd}, {"t", d.t}};
    if (d.witness_N) out["witness_N"] = *d.witness_N;
    if (d.witness_guaranteed) out["witness_guaranteed"] = true;
    if (d.verdict == Verdict::NotFinitelyGenerated && d.evidence_checked) {
        json fails = json::array();
        for (const auto& [l, dl] : d.divisibility_failures) fails.push_back({l, dl});
        out["divisibility_failures"] = fails;
    }
    if (d.evidence_checked) out["evidence"] = {{"consistent", d.evidence_consistent}, {"notes", d.evidence_notes}};
    return out;
}

inline json trace(const ConstructionTrace& tr) {
    json out = {{"case", tr.t_is_one ? "t=1" : "t>1"},
                {"subgroup", subgroup(tr.params)},
                {"w1", tr.ctx.w1},
                {"w2", tr.ctx.w2},
                {"depth", tr.depth},
                {"gammas", rationals(tr.seq.gammas)},
                {"mbars", tr.seq.indices.mbars},
                {"degrees", tr.seq.indices.degrees}};
    if (tr.t_is_one) {
        out["q"] = tr.q;
        out["c"] = integers(tr.c);
    } else {
        out["r"] = tr.r;
        out["s"] = tr.s;
        out["d"] = tr.d;
        out["r_l"] = tr.r_l;
        out["a"] = integers(tr.a);
        out["b"] = integers(tr.b);
    }
    json qs = json::array();
    for (std::size_t l = 0; l <= tr.gs.top(); ++l) {
        json q = {{"index", l}, {"eigen", eigen(tr.eigen[l])}};
        if (l >= 2) q["recursion"] = tr.gs.recursion_string(l - 1);
        if (l < tr.gs.expanded_count()) q["text"] = to_string(tr.gs.qs[l]);
        qs.push_back(q);
    }
    out["qs"] = qs;
    return out;
}

inline json structure(const StructureReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        json item = {{"name", c.name}, {"k", c.k}, {"passed", c.passed}, {"detail", c.detail}};
        if (c.p != 0) item["p"] = c.p;
        checks.push_back(item);
    }
    json out = {{"branch", to_string(r.branch)}, {"passed", r.passed()}, {"checks", checks}};
    if (!r.note.empty()) out["note"] = r.note;
    return out;
}

inline json splitting(const SplittingReport& r) {
    auto opt = [](const std::optional<std::int64_t>& v) { return v ? json(*v) : json("undetermined at this depth"); };
    json out = {{"depth", r.depth},
                {"gamma_full", r.gamma_full.str()},
                {"gamma_restricted", r.gamma_restricted.str()},
                {"e_truncated", r.e_truncated},
                {"f0", opt(r.f0)},
                {"f1", opt(r.f1)},
                {"MNt", r.MNt},
                {"eigen_consistent", r.eigen_consistent},
                {"certified", r.certified}};
    if (r.e_enumerated) out["e_enumerated"] = *r.e_enumerated;
    if (r.certified) out["consequence"] = {{"e", r.e}, {"f", r.f}, {"r", r.r}};
    return out;
}

}  // namespace vsg::json
