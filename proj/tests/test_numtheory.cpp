#include <vsg/numtheory.hpp>

#include <gtest/gtest.h>

#include <random>
#include <algorithm>

using namespace vsg;

namespace {

bool trial_division_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// For reduced fractions p_k/q_k the generated group is (gcd p_k / lcm q_k) Z.
Rational generator_from_reduced_parts(const std::vector<Rational>& values) {
    Integer g = 0, l = 1;
    for (const auto& v : values) {
        if (v.is_zero()) continue;
        Integer p = abs(v.num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), p.get_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.den().get_mpz_t());
    }
    return Rational(g, l);
}

}  // namespace

TEST(Rational, ParseAndPrintReduced) {
    EXPECT_EQ(Rational::parse("6/4").str(), "3/2");
    EXPECT_EQ(Rational::parse(" -10/5 ").str(), "-2");
    EXPECT_EQ(Rational::parse("+7").str(), "7");
    EXPECT_EQ(Rational::parse("0/9").str(), "0");
    EXPECT_EQ(Rational::parse("13/5").den(), 5);
}

TEST(Rational, ParseRejectsMalformedInput) {
    EXPECT_THROW(Rational::parse("1/0"), DomainError);
    EXPECT_THROW(Rational::parse("abc"), DomainError);
    EXPECT_THROW(Rational::parse("1/-2"), DomainError);
    EXPECT_THROW(Rational::parse(""), DomainError);
    EXPECT_THROW(Rational::parse("1.5"), DomainError);
}

TEST(Rational, ArithmeticAndOrdering) {
    Rational a = Rational::parse("1/3"), b = Rational::parse("1/6");
    EXPECT_EQ(a + b, Rational::parse("1/2"));
    EXPECT_EQ(a - b, b);
    EXPECT_EQ(a * b, Rational::parse("1/18"));
    EXPECT_EQ(a / b, Rational(2));
    EXPECT_LT(b, a);
    EXPECT_EQ(Rational::parse("-7/2").floor(), -4);
    EXPECT_EQ(Rational::parse("7/2").floor(), 3);
    EXPECT_THROW(a / Rational(0), DomainError);
}

TEST(Rational, ParseList) {
    auto v = parse_rational_list("1,3/2,13/4");
    ASSERT_EQ(v.size(), 3u);
    EXPECT_EQ(v[1], Rational::parse("3/2"));
    EXPECT_THROW(parse_rational_list("1,,2"), DomainError);
}

TEST(IntegerHelpers, FloorModAndInverse) {
    EXPECT_EQ(floor_mod(-1, 5), 4);
    EXPECT_EQ(floor_mod(10, 5), 0);
    for (std::int64_t m = 2; m <= 40; ++m)
        for (std::int64_t a = -m; a < 2 * m; ++a) {
            if (std::gcd(a, m) != 1) {
                EXPECT_THROW(mod_inverse(a, m), DomainError);
                continue;
            }
            EXPECT_EQ(floor_mod(a * mod_inverse(a, m), m), 1) << a << " mod " << m;
        }
    EXPECT_EQ(mod_inverse(5, 1), 0);
}

TEST(IntegerHelpers, PrimeFactorsMatchTrialDivision) {
    for (std::int64_t n = 1; n <= 2000; ++n) {
        std::vector<std::int64_t> expect;
        for (std::int64_t p = 2; p <= n; ++p)
            if (n % p == 0 && trial_division_prime(p)) expect.push_back(p);
        EXPECT_EQ(prime_factors(n), expect) << n;
    }
}

TEST(IntegerHelpers, ToInt64RejectsOverflow) {
    Integer big("123456789012345678901234567890");
    EXPECT_THROW(to_int64(big), DomainError);
    EXPECT_EQ(to_int64(Integer(-42)), -42);
}

TEST(Primes, IsPrimeMatchesTrialDivision) {
    for (std::int64_t n = 0; n < 20000; ++n) EXPECT_EQ(is_prime(static_cast<std::uint64_t>(n)), trial_division_prime(n)) << n;
    EXPECT_TRUE(is_prime(2305843009213693951ULL));    // 2^61 - 1
    EXPECT_FALSE(is_prime(3215031751ULL));            // strong pseudoprime to bases 2, 3, 5, 7
    EXPECT_FALSE(is_prime(2305843009213693953ULL));
}

TEST(Primes, ArithmeticProgressionMatchesSieve) {
    std::mt19937 rng(20240611);
    for (int trial = 0; trial < 200; ++trial) {
        std::int64_t modulus = std::uniform_int_distribution<std::int64_t>(1, 12)(rng);
        std::int64_t residue = std::uniform_int_distribution<std::int64_t>(0, modulus - 1)(rng);
        if (std::gcd(residue, modulus) != 1) continue;
        std::int64_t avoid = std::uniform_int_distribution<std::int64_t>(1, 60)(rng);
        auto got = primes_in_ap(residue, modulus, {avoid}, 6);
        std::vector<std::int64_t> expect;
        for (std::int64_t p = 2; expect.size() < 6; ++p)
            if (trial_division_prime(p) && p % modulus == residue % modulus && avoid % p != 0) expect.push_back(p);
        EXPECT_EQ(got, expect) << residue << " mod " << modulus << " avoiding " << avoid;
    }
}

TEST(Primes, ArithmeticProgressionErrors) {
    EXPECT_THROW(primes_in_ap(2, 4, {}, 1), DomainError);
    EXPECT_THROW(primes_in_ap(1, 0, {}, 1), DomainError);
    EXPECT_THROW(primes_in_ap(1, 2, {}, 100, 50), DomainError);
}

TEST(RationalGroups, GeneratorAndMembership) {
    EXPECT_EQ(rational_group_generator({Rational(1), Rational::parse("3/2")}), Rational::parse("1/2"));
    EXPECT_EQ(rational_group_generator({Rational(1), Rational::parse("2/3"), Rational::parse("12/5")}),
              Rational::parse("1/15"));
    EXPECT_EQ(rational_group_generator({Rational(0), Rational(4), Rational(6)}), Rational(2));
    EXPECT_THROW(rational_group_generator({Rational(0)}), DomainError);
    std::vector<Rational> gens{Rational(1), Rational::parse("1/3")};
    EXPECT_TRUE(group_membership(Rational::parse("5/3"), gens));
    EXPECT_FALSE(group_membership(Rational::parse("1/2"), gens));
}

TEST(RationalGroups, GeneratorMatchesReducedPartsOracle) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> num(-40, 40), den(1, 30), count(1, 4);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Rational> values;
        for (int k = count(rng); k > 0; --k) values.emplace_back(Integer(num(rng)), Integer(den(rng)));
        if (std::all_of(values.begin(), values.end(), [](const Rational& v) { return v.is_zero(); })) continue;
        EXPECT_EQ(rational_group_generator(values), generator_from_reduced_parts(values));
    }
}

TEST(Roots, ContextValidation) {
    EXPECT_NO_THROW(RootContext::make(4, 6, 3, 5));
    EXPECT_THROW(RootContext::make(4, 6, 2, 1), DomainError);
    EXPECT_THROW(RootContext::make(4, 6, 1, 3), DomainError);
    EXPECT_THROW(RootContext::make(4, 6, 5, 1), DomainError);
    EXPECT_THROW(RootContext::make(0, 6), DomainError);
    EXPECT_EQ(RootContext::make(4, 6).order(), 24);
}

// beta^p = alpha^q iff p*w2/n - q*w1/m is an integer.
TEST(Roots, RootsEqualMatchesAngles) {
    for (std::int64_t m = 1; m <= 8; ++m)
        for (std::int64_t n = 1; n <= 8; ++n)
            for (std::int64_t w1 = 1; w1 <= m; ++w1)
                for (std::int64_t w2 = 1; w2 <= n; ++w2) {
                    if (std::gcd(w1, m) != 1 || std::gcd(w2, n) != 1) continue;
                    auto ctx = RootContext::make(m, n, w1, w2);
                    for (std::int64_t p = -3; p < 2 * n; ++p)
                        for (std::int64_t q = -3; q < 2 * m; ++q) {
                            Rational angle = Rational(Integer(p * w2), Integer(n)) - Rational(Integer(q * w1), Integer(m));
                            ASSERT_EQ(roots_equal(p, q, ctx), angle.is_integer());
                        }
                }
}

TEST(Roots, DeltaExponentMatchesAngles) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        std::int64_t m = std::uniform_int_distribution<std::int64_t>(1, 12)(rng);
        std::int64_t n = std::uniform_int_distribution<std::int64_t>(1, 12)(rng);
        std::int64_t w1 = 1, w2 = 1;
        do w1 = std::uniform_int_distribution<std::int64_t>(1, m)(rng); while (std::gcd(w1, m) != 1);
        do w2 = std::uniform_int_distribution<std::int64_t>(1, n)(rng); while (std::gcd(w2, n) != 1);
        auto ctx = RootContext::make(m, n, w1, w2);
        std::uniform_int_distribution<std::int64_t> small(-20, 20);
        std::int64_t r = small(rng), s = small(rng), a = small(rng), b = small(rng);
        std::int64_t i = std::uniform_int_distribution<std::int64_t>(1, m)(rng);
        std::int64_t j = std::uniform_int_distribution<std::int64_t>(1, n)(rng);
        // alpha^(r a i) beta^(s b j) = exp(2 pi i (r a i w1 / m + s b j w2 / n)) = delta^e with delta = exp(2 pi i/(mn)).
        Rational angle = Rational(Integer(r * a * i * w1), Integer(m)) + Rational(Integer(s * b * j * w2), Integer(n));
        Rational scaled = angle * Rational(m * n);
        ASSERT_TRUE(scaled.is_integer());
        std::int64_t expect = floor_mod(scaled.num().get_si(), m * n);
        ASSERT_EQ(delta_exponent(r, s, a, b, i, j, ctx), expect);
    }
}
