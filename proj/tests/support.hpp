#pragma once

#include <vsg/vsg.hpp>

#include <random>
#include <vector>

namespace vsg::testing {

/// Admissible sequence gamma_0..gamma_L with denominators <= max_den.
/// Each gamma_{l+1} sits just above m̄_l*gamma_l.
inline ValueSequence random_sequence(std::mt19937& rng, std::size_t L, long max_den = 6) {
    std::uniform_int_distribution<long> den(1, max_den);
    std::vector<Rational> g{Rational(1)};
    if (L >= 1) {
        long b = den(rng);
        long a = std::uniform_int_distribution<long>(1, 3 * b)(rng);
        g.push_back(Rational(Integer(a), Integer(b)));
    }
    for (std::size_t l = 1; l < L; ++l) {
        auto seq = validate_sequence(g);
        Rational floor_val = Rational(static_cast<long>(seq.mbar(l))) * g.back();
        long b = den(rng);
        Integer a = (floor_val * Rational(b)).floor() + 1 + std::uniform_int_distribution<long>(0, 2 * b)(rng);
        g.push_back(Rational(a, Integer(b)));
    }
    return validate_sequence(g);
}

/// Random polynomial with deg_X <= max_x, deg_Y <= max_y and small integer coefficients.
inline QPolynomial random_polynomial(std::mt19937& rng, std::int64_t max_x, std::int64_t max_y, int terms) {
    std::uniform_int_distribution<std::int64_t> rx(0, max_x), ry(0, max_y);
    std::uniform_int_distribution<long> coeff(-5, 5);
    QPolynomial f;
    for (int k = 0; k < terms; ++k) f += QPolynomial::monomial(rx(rng), ry(rng), Rational(coeff(rng)));
    return f;
}

/// Sum over d1 | m, d2 | n of gcd(d1, d2): the number of subgroups of Z/m x Z/n.
inline std::int64_t subgroup_count_formula(std::int64_t m, std::int64_t n) {
    std::int64_t total = 0;
    for (std::int64_t d1 = 1; d1 <= m; ++d1)
        for (std::int64_t d2 = 1; d2 <= n; ++d2)
            if (m % d1 == 0 && n % d2 == 0) total += std::gcd(d1, d2);
    return total;
}

}  // namespace vsg::testing
