// Command-line front end for the vsg library.
//
// Exit codes: 0 success, 1 domain error, 2 usage error, 3 oracle disagreement
// or internal defect, 4 splitting report inconclusive.

#include <vsg/oracle.hpp>
#include <vsg/serialize.hpp>
#include <vsg/vsg.hpp>

#include "CLI11.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace vsg;

constexpr int exit_domain = 1;
constexpr int exit_usage = 2;
constexpr int exit_defect = 3;
constexpr int exit_inconclusive = 4;

class OracleMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    bool json = false;
    bool verify = false;
    std::int64_t m = 0, n = 0;
    std::string subgroup;
    std::int64_t w1 = 1, w2 = 1;
    std::string gammas, lambdas, poly, trace_file, bound = "10";
    std::optional<std::size_t> depth;
    std::vector<std::int64_t> positional;
};

void expect(bool ok, const std::string& what) {
    if (!ok) throw OracleMismatch("oracle disagreement: " + what);
}

SubgroupParams parse_subgroup(const Options& o) {
    if (o.m < 1 || o.n < 1) throw DomainError("--m and --n are required and must be positive");
    std::vector<std::int64_t> q;
    std::stringstream ss(o.subgroup);
    std::string item;
    while (std::getline(ss, item, ',')) q.push_back(to_int64(Integer(item)));
    if (q.size() != 4) throw DomainError("--subgroup expects i,j,t,x");
    return validate_params(o.m, o.n, q[0], q[1], q[2], q[3]);
}

RootContext context(const Options& o) { return RootContext::make(o.m, o.n, o.w1, o.w2); }

std::vector<Rational> lambdas_of(const Options& o) {
    return o.lambdas.empty() ? std::vector<Rational>{} : parse_rational_list(o.lambdas);
}

void print_warnings(const ValueSequence& seq) {
    for (const auto& w : seq.warnings) std::cerr << "warning: " << w << "\n";
}

std::string join(const std::vector<std::int64_t>& v) {
    std::string out;
    for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + std::to_string(v[k]);
    return out;
}

std::string join(const std::vector<Rational>& v) {
    std::string out;
    for (std::size_t k = 0; k < v.size(); ++k) out += (k ? ", " : "") + v[k].str();
    return out;
}

void verify_mbars(const ValueSequence& seq) {
    for (std::size_t l = 1; l <= seq.depth(); ++l) {
        std::vector<Rational> prefix(seq.gammas.begin(), seq.gammas.begin() + static_cast<std::ptrdiff_t>(l) + 1);
        expect(oracle::brute_mbar(prefix) == seq.mbar(l), "m̄_" + std::to_string(l));
    }
}

void verify_expanded_eigen(const GeneratingSequence& gs, const std::vector<EigenReport>& reports, const SubgroupParams& p,
                           const RootContext& ctx) {
    for (std::size_t l = 0; l < gs.expanded_count(); ++l)
        expect(oracle::eigen_by_exhaustion(gs.qs[l], p, ctx) == reports[l].is_eigen, "eigen status of Q_" + std::to_string(l));
}

// A sequence for decide-fg / splitting: explicit gammas, a construct trace,
// or an automatic construction of the given depth.
struct SequenceSource {
    std::optional<ValueSequence> seq;
    std::string origin;
};

SequenceSource sequence_for(const Options& o, const SubgroupParams& p, const RootContext& ctx, std::size_t construct_depth) {
    if (!o.gammas.empty()) return {validate_sequence(parse_rational_list(o.gammas)), "supplied"};
    if (!o.trace_file.empty()) {
        std::ifstream in(o.trace_file);
        if (!in) throw DomainError("cannot read trace file " + o.trace_file);
        json tr = json::parse(in);
        std::vector<Rational> g;
        for (const auto& v : tr.at("gammas")) g.push_back(Rational::parse(v.get<std::string>()));
        return {validate_sequence(std::move(g)), "trace"};
    }
    if (p.quotient_gcd() != p.t) return {std::nullopt, "none"};
    if (p.t == 1) {
        if (p.j == p.n()) return {std::nullopt, "none"};
        return {construct_valuation_t1(p, ctx, construct_depth, 0).seq, "constructed"};
    }
    return {construct_valuation_tgt1(p, ctx, construct_depth, 0).seq, "constructed"};
}

int cmd_subgroups(const Options& o) {
    if (o.positional.size() != 2) throw CLI::ValidationError("subgroups", "expects <m> <n>");
    const auto m = o.positional[0], n = o.positional[1];
    auto subs = enumerate_subgroups(m, n);
    if (o.verify) {
        auto brute = oracle::brute_subgroups(m, n);
        expect(brute.size() == subs.size(), "subgroup count");
        std::set<oracle::ElementSet> fast;
        for (const auto& s : subs) fast.insert(oracle::ambient_elements(s));
        expect(fast == std::set<oracle::ElementSet>(brute.begin(), brute.end()), "subgroup element sets");
    }
    if (o.json) {
        json out = json::array();
        for (const auto& s : subs) out.push_back(vsg::json::subgroup(s));
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::cout << "i\tj\tt\tx\tM\tN\torder\n";
    for (const auto& s : subs)
        std::cout << s.i << '\t' << s.j << '\t' << s.t << '\t' << s.x << '\t' << s.M << '\t' << s.N << '\t'
                  << subgroup_order(s) << "\n";
    return 0;
}

int cmd_order(const Options& o) {
    if (o.positional.size() != 6) throw CLI::ValidationError("order", "expects <m> <n> <i> <j> <t> <x>");
    const auto& a = o.positional;
    auto p = validate_params(a[0], a[1], a[2], a[3], a[4], a[5]);
    const auto order = subgroup_order(p);
    if (o.verify) {
        expect(static_cast<std::int64_t>(list_elements(p).size()) == order, "element count");
        expect(static_cast<std::int64_t>(oracle::ambient_elements(p).size()) == order, "ambient element count");
    }
    if (o.json)
        std::cout << json{{"subgroup", vsg::json::subgroup(p)}, {"order", order}}.dump(2) << "\n";
    else
        std::cout << order << "\n";
    return 0;
}

void print_slice(const SemigroupSlice& s) {
    std::cout << "value\tl\tjs\n";
    for (const auto& e : s.entries) std::cout << e.value << '\t' << e.term.l << "\t[" << join(e.term.js) << "]\n";
    std::cout << "complete up to " << s.complete_up_to << "\n";
}

int cmd_semigroup(const Options& o) {
    auto seq = validate_sequence(parse_rational_list(o.gammas));
    print_warnings(seq);
    auto slice = semigroup_slice(seq, Rational::parse(o.bound));
    if (o.verify) {
        verify_mbars(seq);
        for (const auto& e : slice.entries) {
            expect(e.term.value(seq) == e.value, "expansion of " + e.value.str());
            auto back = expand_value(e.value, seq);
            expect(back && *back == e.term, "expand_value of " + e.value.str());
        }
    }
    if (o.json)
        std::cout << vsg::json::slice(slice).dump(2) << "\n";
    else
        print_slice(slice);
    return 0;
}

int cmd_invariant_semigroup(const Options& o) {
    auto p = parse_subgroup(o);
    auto ctx = context(o);
    auto seq = validate_sequence(parse_rational_list(o.gammas));
    print_warnings(seq);
    const auto bound = Rational::parse(o.bound);
    auto slice = invariant_semigroup_slice(p, ctx, seq, bound);
    if (o.verify) {
        auto gs = build_generating_sequence(seq);
        expect(oracle::brute_invariant_values(p, ctx, gs, bound) == slice.values(), "invariant values");
    }
    if (o.json)
        std::cout << vsg::json::slice(slice).dump(2) << "\n";
    else
        print_slice(slice);
    return 0;
}

int cmd_genseq(const Options& o) {
    auto seq = validate_sequence(parse_rational_list(o.gammas));
    print_warnings(seq);
    auto gs = build_generating_sequence(seq, lambdas_of(o));
    if (o.verify) {
        verify_mbars(seq);
        for (std::size_t l = 1; l < gs.expanded_count(); ++l) {
            expect(gs.qs[l].is_monic_in_y(), "Q_" + std::to_string(l) + " monic");
            expect(gs.qs[l].deg_y() == seq.degree(l), "deg_Y Q_" + std::to_string(l));
        }
    }
    if (o.json) {
        std::cout << vsg::json::generating_sequence(gs).dump(2) << "\n";
        return 0;
    }
    std::cout << "m̄ = [" << join(seq.indices.mbars) << "], d = [" << join(seq.indices.degrees) << "]\n";
    std::cout << "Q_0 = X\nQ_1 = Y\n";
    for (std::size_t l = 2; l <= gs.top(); ++l) {
        std::cout << "Q_" << l << " = " << gs.recursion_string(l - 1);
        if (l < gs.expanded_count() && l >= 3) std::cout << "\n    = " << to_string(gs.qs[l]);
        if (l == 2 && l < gs.expanded_count() && to_string(gs.qs[l]) != gs.recursion_string(1))
            std::cout << " = " << to_string(gs.qs[l]);
        if (l >= gs.expanded_count()) std::cout << "   (not expanded)";
        std::cout << "\n";
    }
    return 0;
}

int cmd_eigen(const Options& o) {
    auto p = parse_subgroup(o);
    auto ctx = context(o);
    auto f = parse_polynomial(o.poly);
    auto rep = eigen_report(f, p, ctx);
    if (o.verify) {
        expect(oracle::eigen_by_exhaustion(f, p, ctx) == rep.is_eigen, "eigen status");
        expect(oracle::invariant_by_exhaustion(f, p, ctx) == rep.is_invariant, "invariance");
    }
    if (o.json) {
        std::cout << vsg::json::eigen(rep).dump(2) << "\n";
        return 0;
    }
    std::cout << to_string(f) << ": " << (rep.is_invariant ? "invariant" : rep.is_eigen ? "eigenfunction" : "not an eigenfunction");
    if (rep.is_eigen) std::cout << " (delta exponents " << join(rep.exponents) << " mod " << ctx.order() << ")";
    std::cout << "\n";
    return 0;
}

int cmd_value(const Options& o) {
    auto seq = validate_sequence(parse_rational_list(o.gammas));
    print_warnings(seq);
    auto gs = build_generating_sequence(seq, lambdas_of(o));
    auto f = parse_polynomial(o.poly);
    auto terms = q_adic_expansion(f, gs);
    if (o.verify) expect(recombine(terms, gs) == f, "Q-adic expansion recombination");
    auto v = valuation_of(f, gs);
    if (o.json) {
        json ts = json::array();
        for (const auto& t : terms) ts.push_back({{"m", t.y_degree}, {"coeff", vsg::json::polynomial(t.coeff)}, {"js", t.js}});
        std::cout << json{{"value", v.str()}, {"expansion", ts}}.dump(2) << "\n";
        return 0;
    }
    for (const auto& t : terms) std::cout << "m=" << t.y_degree << "\t(" << to_string(t.coeff) << ") * js [" << join(t.js) << "]\n";
    std::cout << "nu = " << v << "\n";
    return 0;
}

int cmd_decide_fg(const Options& o) {
    auto p = parse_subgroup(o);
    auto ctx = context(o);
    const std::size_t depth = o.depth.value_or(4);
    auto src = sequence_for(o, p, ctx, depth);
    auto dec = decide_finite_generation(p, ctx, src.seq, depth);
    if (o.verify && src.seq) {
        auto gs = build_generating_sequence(*src.seq);
        verify_expanded_eigen(gs, recursive_eigen_reports(gs, p, ctx), p, ctx);
    }
    if (o.json) {
        std::cout << vsg::json::decision(dec).dump(2) << "\n";
        return 0;
    }
    std::cout << "verdict: " << to_string(dec.verdict) << "\n";
    std::cout << "gcd(m/i, n/j) = " << dec.gcd << ", t = " << dec.t << "\n";
    if (src.seq) std::cout << "sequence (" << src.origin << "): " << join(src.seq->gammas) << "\n";
    if (dec.witness_N) std::cout << "witness N = " << *dec.witness_N << (dec.witness_guaranteed ? " (j = n)" : "") << "\n";
    for (const auto& [l, d] : dec.divisibility_failures) std::cout << "n/j does not divide d(" << l << ") = " << d << "\n";
    for (const auto& note : dec.evidence_notes) std::cout << "note: " << note << "\n";
    if (!dec.evidence_consistent) std::cout << "evidence inconsistent with the verdict\n";
    return 0;
}

int cmd_construct(const Options& o) {
    auto p = parse_subgroup(o);
    auto ctx = context(o);
    const std::size_t depth = o.depth.value_or(4);
    auto tr = p.t == 1 ? construct_valuation_t1(p, ctx, depth) : construct_valuation_tgt1(p, ctx, depth);
    if (o.verify) {
        verify_mbars(tr.seq);
        verify_expanded_eigen(tr.gs, tr.eigen, p, ctx);
    }
    if (o.json) {
        std::cout << vsg::json::trace(tr).dump(2) << "\n";
        return 0;
    }
    if (tr.t_is_one) {
        std::cout << "case t = 1\nq = [" << join(tr.q) << "]\nc = [";
        for (std::size_t k = 0; k < tr.c.size(); ++k) std::cout << (k ? "," : "") << tr.c[k];
        std::cout << "]\n";
    } else {
        std::cout << "case t > 1\n(r, s) = (" << tr.r << ", " << tr.s << "), d = " << tr.d << "\nr_l = [" << join(tr.r_l) << "]\n";
        std::cout << "a = [";
        for (std::size_t k = 0; k < tr.a.size(); ++k) std::cout << (k ? "," : "") << tr.a[k];
        std::cout << "]\nb = [";
        for (std::size_t k = 0; k < tr.b.size(); ++k) std::cout << (k ? "," : "") << tr.b[k];
        std::cout << "]\n";
    }
    std::cout << "gamma = [" << join(tr.seq.gammas) << "]\n";
    std::cout << "Q_0 = X\nQ_1 = Y\n";
    for (std::size_t l = 2; l <= tr.gs.top(); ++l) std::cout << "Q_" << l << " = " << tr.gs.recursion_string(l - 1) << "\n";
    return 0;
}

int cmd_structure(const Options& o) {
    auto p = parse_subgroup(o);
    auto ctx = context(o);
    auto src = sequence_for(o, p, ctx, o.depth.value_or(4));
    if (!src.seq) throw DomainError("no sequence available for this subgroup");
    auto rep = verify_structure_invariants(p, ctx, *src.seq, o.depth.value_or(src.seq->depth()));
    if (o.json) {
        std::cout << vsg::json::structure(rep).dump(2) << "\n";
        return 0;
    }
    std::cout << "branch: " << to_string(rep.branch) << (rep.note.empty() ? "" : " (" + rep.note + ")") << "\n";
    for (const auto& c : rep.checks)
        std::cout << (c.passed ? "pass" : "FAIL") << "\tk=" << c.k << (c.p ? "\tp=" + std::to_string(c.p) : "") << "\t" << c.name
                  << "\t" << c.detail << "\n";
    return 0;
}

int cmd_splitting(const Options& o) {
    auto p = parse_subgroup(o);
    auto ctx = context(o);
    const std::size_t construct_depth = o.depth ? *o.depth + 1 : 4;
    auto src = sequence_for(o, p, ctx, construct_depth);
    if (!src.seq) throw DomainError("splitting needs an eigen generating sequence; none exists for this subgroup");
    const std::size_t depth = o.depth.value_or(src.seq->depth());
    auto rep = splitting_report(p, ctx, *src.seq, depth);
    if (o.verify) {
        auto enumerated = enumerated_index(p, ctx, src.seq->prefix(depth));
        if (enumerated) expect(*enumerated == rep.e_truncated, "enumerated index");
    }
    if (o.json) {
        std::cout << vsg::json::splitting(rep).dump(2) << "\n";
    } else {
        auto opt = [](const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : std::string("undetermined at this depth"); };
        std::cout << "depth L = " << rep.depth << "\n";
        std::cout << "Gamma_full = (" << rep.gamma_full << ")Z, Gamma_restricted = (" << rep.gamma_restricted << ")Z\n";
        std::cout << "e_truncated = " << rep.e_truncated << ", MNt = " << rep.MNt << "\n";
        std::cout << "f0 = " << opt(rep.f0) << ", f1 = " << opt(rep.f1) << "\n";
        if (rep.certified)
            std::cout << "certified: e = " << rep.e << ", f = " << rep.f << ", r = " << rep.r << " (unique extension, no splitting)\n";
        else
            std::cout << "inconclusive at this depth" << (rep.eigen_consistent ? "" : " (sequence is not eigen for H)") << "\n";
    }
    return rep.certified ? 0 : exit_inconclusive;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Valuation semigroups under diagonal abelian group actions"};
    app.require_subcommand(1);
    Options o;
    app.add_flag("--json", o.json, "machine-readable output")->configurable(false);
    app.add_flag("--verify", o.verify, "cross-check against brute-force oracles")->configurable(false);

    auto sub_opts = [&](CLI::App* c, bool subgroup, bool gammas) {
        c->fallthrough();
        if (subgroup) {
            c->add_option("--m", o.m, "order of alpha")->required();
            c->add_option("--n", o.n, "order of beta")->required();
            c->add_option("--subgroup", o.subgroup, "i,j,t,x")->required();
            c->add_option("--w1", o.w1, "alpha = delta^(w1*n)");
            c->add_option("--w2", o.w2, "beta = delta^(w2*m)");
        }
        if (gammas) c->add_option("--gammas", o.gammas, "comma separated gamma_0,gamma_1,...");
    };

    auto* subgroups = app.add_subcommand("subgroups", "enumerate H(i,j,t,x) in U_m x U_n");
    subgroups->add_option("values", o.positional, "<m> <n>")->expected(2)->required();
    subgroups->fallthrough();
    auto* order = app.add_subcommand("order", "order of H(i,j,t,x)");
    order->add_option("values", o.positional, "<m> <n> <i> <j> <t> <x>")->expected(6)->required();
    order->fallthrough();

    auto* semigroup = app.add_subcommand("semigroup", "semigroup slice with bounded expansions");
    sub_opts(semigroup, false, true);
    semigroup->get_option("--gammas")->required();
    semigroup->add_option("--bound", o.bound, "largest value listed");

    auto* inv = app.add_subcommand("invariant-semigroup", "values of invariant products");
    sub_opts(inv, true, true);
    inv->get_option("--gammas")->required();
    inv->add_option("--bound", o.bound, "largest value listed");

    auto* genseq = app.add_subcommand("genseq", "key polynomials Q_l");
    sub_opts(genseq, false, true);
    genseq->get_option("--gammas")->required();
    genseq->add_option("--lambdas", o.lambdas, "nonzero rationals lambda_1,...");

    auto* eigen = app.add_subcommand("eigen", "eigenfunction test");
    sub_opts(eigen, true, false);
    eigen->add_option("--poly", o.poly, "e.g. \"Y^3 - X\"")->required();

    auto* value = app.add_subcommand("value", "valuation of a polynomial");
    sub_opts(value, false, true);
    value->get_option("--gammas")->required();
    value->add_option("--poly", o.poly, "e.g. \"Y^3 + X\"")->required();
    value->add_option("--lambdas", o.lambdas, "nonzero rationals lambda_1,...");

    auto* decide = app.add_subcommand("decide-fg", "finite generation over the invariant semigroup");
    sub_opts(decide, true, true);
    decide->add_option("--trace", o.trace_file, "JSON written by construct --json");
    decide->add_option("--depth", o.depth, "Q indices examined / construction depth (default 4)");

    auto* construct = app.add_subcommand("construct", "build a witness valuation");
    sub_opts(construct, true, false);
    construct->add_option("--depth", o.depth, "number of gammas (default 4)");

    auto* structure = app.add_subcommand("structure", "congruence invariants for t > 1");
    sub_opts(structure, true, true);
    structure->add_option("--trace", o.trace_file, "JSON written by construct --json");
    structure->add_option("--depth", o.depth, "last gamma index checked");

    auto* split = app.add_subcommand("splitting", "value-group index and non-splitting certificate");
    sub_opts(split, true, true);
    split->add_option("--trace", o.trace_file, "JSON written by construct --json");
    split->add_option("--depth", o.depth, "last gamma index L used");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        if (*subgroups) return cmd_subgroups(o);
        if (*order) return cmd_order(o);
        if (*semigroup) return cmd_semigroup(o);
        if (*inv) return cmd_invariant_semigroup(o);
        if (*genseq) return cmd_genseq(o);
        if (*eigen) return cmd_eigen(o);
        if (*value) return cmd_value(o);
        if (*decide) return cmd_decide_fg(o);
        if (*construct) return cmd_construct(o);
        if (*structure) return cmd_structure(o);
        if (*split) return cmd_splitting(o);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const OracleMismatch& e) {
        std::cerr << e.what() << "\n";
        return exit_defect;
    } catch (const DefectError& e) {
        std::cerr << "internal defect: " << e.what() << "\n";
        return exit_defect;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_domain;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: bad trace file: " << e.what() << "\n";
        return exit_domain;
    }
    return exit_usage;
}
