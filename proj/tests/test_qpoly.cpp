#include <vsg/oracle.hpp>
#include <vsg/qpoly.hpp>

#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace vsg;

namespace {

Rational q(const char* s) { return Rational::parse(s); }
QPolynomial P(const char* s) { return parse_polynomial(s); }
ValueSequence seq_of(const char* text) { return validate_sequence(parse_rational_list(text)); }

SubgroupParams diagonal() { return validate_params(2, 2, 1, 1, 2, 1); }

}  // namespace

TEST(Polynomial, ParseAndPrint) {
    EXPECT_EQ(to_string(P("Y^2 - X^3")), "Y^2 - X^3");
    EXPECT_EQ(to_string(P("-X^3 + Y^2")), "Y^2 - X^3");
    EXPECT_EQ(to_string(P("2XY^3 + 3/2*X^2*Y + 1")), "2*X*Y^3 + 3/2*X^2*Y + 1");
    EXPECT_EQ(to_string(P("x y - x y")), "0");
    EXPECT_EQ(P("X*X*Y"), QPolynomial::monomial(2, 1));
    EXPECT_EQ(P("6/4 X"), QPolynomial::monomial(1, 0, q("3/2")));
    EXPECT_THROW(P(""), DomainError);
    EXPECT_THROW(P("X +"), DomainError);
    EXPECT_THROW(P("X^"), DomainError);
    EXPECT_THROW(P("X Z"), DomainError);
    EXPECT_THROW(P("X*"), DomainError);
}

TEST(Polynomial, Accessors) {
    auto f = P("X^2 Y^3 + 5 Y^3 + X^4 Y + 7 X");
    EXPECT_EQ(f.deg_y(), 3);
    EXPECT_EQ(f.ord_x(), 0);
    EXPECT_EQ(f.leading_y_coefficient(), P("X^2 + 5"));
    EXPECT_FALSE(f.is_monic_in_y());
    EXPECT_TRUE(P("Y^2 - X^3").is_monic_in_y());
    EXPECT_EQ(f.y_coefficient(1), P("X^4"));
    EXPECT_EQ(f.coefficient(1, 0), Rational(7));
    EXPECT_EQ(QPolynomial().deg_y(), -1);
    EXPECT_EQ(f.shifted(1, 1), P("X^3 Y^4 + 5 X Y^4 + X^5 Y^2 + 7 X^2 Y"));
    EXPECT_THROW(QPolynomial::monomial(-1, 0), DomainError);
}

TEST(Polynomial, RingAxiomsOnRandomInputs) {
    std::mt19937 rng(31337);
    for (int trial = 0; trial < 100; ++trial) {
        auto a = vsg::testing::random_polynomial(rng, 4, 4, 4);
        auto b = vsg::testing::random_polynomial(rng, 4, 4, 4);
        auto c = vsg::testing::random_polynomial(rng, 4, 4, 4);
        ASSERT_EQ(a * (b + c), a * b + a * c);
        ASSERT_EQ((a * b) * c, a * (b * c));
        ASSERT_EQ(a * b, b * a);
        ASSERT_TRUE((a - a).is_zero());
        QPolynomial cube = a * a * a;
        ASSERT_EQ(pow(a, 3), cube);
        ASSERT_EQ(pow(a, 0), QPolynomial(Rational(1)));
    }
}

TEST(Polynomial, PowWithinBudget) {
    auto f = P("X + Y + 1");
    EXPECT_FALSE(pow_within(f, 20, 10).has_value());
    EXPECT_TRUE(pow_within(f, 2, 10).has_value());
    EXPECT_THROW(pow(f, -1), DomainError);
}

TEST(GeneratingSequence, Examples) {
    auto g1 = build_generating_sequence(seq_of("1,3/2"));
    EXPECT_EQ(to_string(g1.q(2)), "Y^2 - X^3");
    EXPECT_EQ(g1.recursion_string(1), "Y^2 - X^3");

    auto g2 = build_generating_sequence(seq_of("1,2/3,12/5"));
    EXPECT_EQ(to_string(g2.q(2)), "Y^3 - X^2");
    EXPECT_EQ(g2.recursion_string(2), "Q_2^5 - X^12");
    EXPECT_EQ(g2.q(3), pow(g2.q(2), 5) - QPolynomial::X(12));

    auto g3 = build_generating_sequence(seq_of("1,1/3,13/5"));
    EXPECT_EQ(to_string(g3.q(2)), "Y^3 - X");
    EXPECT_EQ(g3.recursion_string(2), "Q_2^5 - X^13");
    EXPECT_TRUE(g3.fully_expanded());
    EXPECT_EQ(g3.top(), 3u);
    EXPECT_EQ(g3.q(3).deg_y(), 15);
}

TEST(GeneratingSequence, MixedRecursionAndLambdas) {
    // m̄_2 * 13/4 = 13/2 = 5 + 3/2, so Q_3 = Q_2^2 - lambda_2 X^5 Y.
    auto gs = build_generating_sequence(seq_of("1,3/2,13/4"), {Rational(2), q("-1/3")});
    EXPECT_EQ(gs.recursion_exponents[1], (std::vector<std::int64_t>{5, 1}));
    EXPECT_EQ(gs.recursion_string(1), "Y^2 - 2*X^3");
    EXPECT_EQ(gs.recursion_string(2), "Q_2^2 + 1/3*X^5*Y");
    EXPECT_EQ(gs.q(3), pow(gs.q(2), 2) + QPolynomial::monomial(5, 1, q("1/3")));
    EXPECT_THROW(build_generating_sequence(seq_of("1,3/2"), {Rational(0)}), DomainError);
    EXPECT_THROW(build_generating_sequence(seq_of("1,3/2"), {Rational(1), Rational(1)}), DomainError);
}

TEST(GeneratingSequence, BudgetStopsExpansionButKeepsRecursion) {
    auto gs = build_generating_sequence(seq_of("1,1/3,13/5"), {}, 0);
    EXPECT_EQ(gs.expanded_count(), 2u);
    EXPECT_EQ(gs.recursion_exponents.size(), 2u);
    EXPECT_THROW((void)gs.q(2), DomainError);
}

TEST(Eigen, Examples) {
    auto p = diagonal();
    auto ctx = RootContext::make(2, 2);
    auto xy = eigen_report(P("XY"), p, ctx);
    EXPECT_TRUE(xy.is_eigen);
    EXPECT_TRUE(xy.is_invariant);
    auto q2 = eigen_report(P("Y^3 - X"), p, ctx);
    EXPECT_TRUE(q2.is_eigen);
    EXPECT_FALSE(q2.is_invariant);
    EXPECT_EQ(q2.exponents, (std::vector<std::int64_t>{2, 0}));  // delta^2 = -1
    EXPECT_FALSE(eigen_report(P("X + Y^2"), p, ctx).is_eigen);
    try {
        eigen_report(QPolynomial(), p, ctx);
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_STREQ(e.what(), "eigenfunction undefined for 0");
    }
    EXPECT_THROW(eigen_report(P("X"), p, RootContext::make(2, 3)), DomainError);
}

TEST(Eigen, MatchesExhaustiveOracle) {
    std::mt19937 rng(5150);
    for (int trial = 0; trial < 400; ++trial) {
        std::int64_t m = std::uniform_int_distribution<std::int64_t>(1, 8)(rng);
        std::int64_t n = std::uniform_int_distribution<std::int64_t>(1, 8)(rng);
        auto subs = enumerate_subgroups(m, n);
        auto p = subs[std::uniform_int_distribution<std::size_t>(0, subs.size() - 1)(rng)];
        std::int64_t w1 = 1, w2 = 1;
        do w1 = std::uniform_int_distribution<std::int64_t>(1, m)(rng); while (std::gcd(w1, m) != 1);
        do w2 = std::uniform_int_distribution<std::int64_t>(1, n)(rng); while (std::gcd(w2, n) != 1);
        auto ctx = RootContext::make(m, n, w1, w2);
        // Build mostly eigen candidates: a monomial times shifts by invariant steps, plus noise.
        QPolynomial f = QPolynomial::monomial(rng() % 5, rng() % 5);
        if (rng() % 2) f += QPolynomial::monomial(f.terms().begin()->first.first + m * (rng() % 2),
                                                  f.terms().begin()->first.second + n * (rng() % 2), Rational(3));
        if (rng() % 3 == 0) f += vsg::testing::random_polynomial(rng, 6, 6, 2);
        if (f.is_zero()) continue;
        auto rep = eigen_report(f, p, ctx);
        ASSERT_EQ(rep.is_eigen, oracle::eigen_by_exhaustion(f, p, ctx)) << to_string(f) << " " << to_string(p);
        if (rep.is_eigen) {
            ASSERT_EQ(rep.is_invariant, oracle::invariant_by_exhaustion(f, p, ctx));
        }
    }
}

TEST(Eigen, RecursionAgreesWithExpansion) {
    std::mt19937 rng(8080);
    int compared = 0;
    for (int trial = 0; trial < 200; ++trial) {
        auto seq = vsg::testing::random_sequence(rng, 2, 4);
        auto gs = build_generating_sequence(seq, {}, 20000);
        std::int64_t m = std::uniform_int_distribution<std::int64_t>(1, 6)(rng);
        std::int64_t n = std::uniform_int_distribution<std::int64_t>(1, 6)(rng);
        auto subs = enumerate_subgroups(m, n);
        auto p = subs[std::uniform_int_distribution<std::size_t>(0, subs.size() - 1)(rng)];
        auto ctx = RootContext::make(m, n);
        auto rec = recursive_eigen_reports(gs, p, ctx);
        ASSERT_EQ(rec.size(), gs.top() + 1);
        for (std::size_t l = 0; l < gs.expanded_count(); ++l) {
            auto direct = eigen_report(gs.q(l), p, ctx);
            ASSERT_EQ(rec[l].is_eigen, direct.is_eigen) << "Q_" << l;
            if (direct.is_eigen) {
                ASSERT_EQ(rec[l].exponents, direct.exponents);
            }
            ++compared;
        }
    }
    EXPECT_GT(compared, 600);
}

TEST(QAdic, Examples) {
    auto gs = build_generating_sequence(seq_of("1,3/2"));
    auto terms = q_adic_expansion(P("Y^3 + X"), gs);
    ASSERT_EQ(terms.size(), 3u);
    EXPECT_EQ(terms[0].y_degree, 3);
    EXPECT_EQ(terms[0].js, (std::vector<std::int64_t>{1, 1}));
    EXPECT_EQ(terms[0].coeff, P("1"));
    EXPECT_EQ(terms[1].y_degree, 1);
    EXPECT_EQ(terms[1].coeff, P("X^3"));
    EXPECT_EQ(terms[2].y_degree, 0);
    EXPECT_EQ(terms[2].coeff, P("X"));
    EXPECT_EQ(recombine(terms, gs), P("Y^3 + X"));

    auto single = q_adic_expansion(gs.q(2), gs);
    ASSERT_EQ(single.size(), 1u);
    EXPECT_EQ(single[0].y_degree, 2);
    auto x5 = q_adic_expansion(P("X^5"), gs);
    ASSERT_EQ(x5.size(), 1u);
    EXPECT_EQ(x5[0].y_degree, 0);
}

TEST(QAdic, InsufficientDepthNamesTheDegree) {
    auto gs = build_generating_sequence(seq_of("1,1/3,13/5"), {}, 0);
    try {
        q_adic_expansion(P("Y^4"), gs);
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("d(2) = 3"), std::string::npos);
    }
}

TEST(QAdic, RecombinesRandomPolynomials) {
    std::mt19937 rng(2718);
    for (const char* text : {"1,3/2", "1,2/3,12/5", "1,3/2,13/4"}) {
        auto gs = build_generating_sequence(seq_of(text));
        const std::int64_t dl = gs.seq.degree(gs.seq.depth() + 1);
        for (int trial = 0; trial < 40; ++trial) {
            auto f = vsg::testing::random_polynomial(rng, 6, 2 * dl, 6);
            auto terms = q_adic_expansion(f, gs);
            ASSERT_EQ(recombine(terms, gs), f) << to_string(f);
            for (const auto& t : terms)
                for (std::size_t k = 0; k + 1 < t.js.size(); ++k) ASSERT_LT(t.js[k], gs.seq.mbar(k + 1));
        }
    }
}

TEST(Valuation, Examples) {
    auto gs = build_generating_sequence(seq_of("1,3/2"));
    EXPECT_EQ(valuation_of(P("Y^3 + X"), gs), Rational(1));
    EXPECT_EQ(valuation_of(P("X^7"), gs), Rational(7));
    EXPECT_EQ(valuation_of(P("X^2 Y"), gs), q("7/2"));
    try {
        valuation_of(QPolynomial(), gs);
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_STREQ(e.what(), "ν(0) undefined");
    }
    // nu(Q_2) = gamma_2 lies beyond this truncation.
    EXPECT_THROW(valuation_of(gs.q(2), gs), DomainError);
    auto deeper = build_generating_sequence(seq_of("1,3/2,13/4"));
    EXPECT_EQ(valuation_of(deeper.q(2), deeper), q("13/4"));
}

TEST(Valuation, MonomialsAndMultiplicativity) {
    std::mt19937 rng(1618);
    for (const char* text : {"1,3/2,13/4", "1,2/3,12/5", "1,1/3,13/5"}) {
        auto gs = build_generating_sequence(seq_of(text));
        const std::int64_t d = gs.seq.degree(gs.seq.depth());
        for (std::int64_t r = 0; r < 5; ++r)
            for (std::int64_t s = 0; s < d; ++s)
                ASSERT_EQ(valuation_of(QPolynomial::monomial(r, s), gs), Rational(r) + Rational(s) * gs.seq.gamma(1));
        for (std::size_t l = 2; l <= gs.seq.depth(); ++l) ASSERT_EQ(valuation_of(gs.q(l), gs), gs.seq.gamma(l));
        int checked = 0;
        for (int trial = 0; trial < 60; ++trial) {
            auto f = vsg::testing::random_polynomial(rng, 4, d - 1, 3);
            auto g = vsg::testing::random_polynomial(rng, 4, d - 1, 3);
            if (f.is_zero() || g.is_zero()) continue;
            Rational vf, vg, vfg;
            try {
                vf = valuation_of(f, gs);
                vg = valuation_of(g, gs);
                vfg = valuation_of(f * g, gs);
            } catch (const DomainError&) {
                continue;  // undetermined at this depth
            }
            ASSERT_EQ(vfg, vf + vg) << to_string(f) << " * " << to_string(g);
            ++checked;
        }
        EXPECT_GT(checked, 20) << text;
    }
}
