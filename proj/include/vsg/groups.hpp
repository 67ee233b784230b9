#pragma once

/**
 * @file groups.hpp
 * @brief Subgroups H(i,j,t,x) of U_m x U_n.
 *
 * Every subgroup of U_m x U_n is
 *
 *     H(i,j,t,x) = { (alpha^(a*i), beta^(b*j)) : b = a*x (mod t) }
 *
 * for a unique quadruple with i | m, j | n, t | m/i, t | n/j, gcd(x,t) = 1 and
 * 1 <= x <= t. With m/i = M*t and n/j = N*t, an element is uniquely named by
 * an exponent pair (a, b) in [0, M*t) x [0, N*t) satisfying the congruence, so
 * the group has M*N*t elements.
 */

#include "error.hpp"
#include "numtheory.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace vsg {

struct GroupSpec {
    std::int64_t m = 1;
    std::int64_t n = 1;

    friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

/// Canonical exponent pair (a, b) standing for (alpha^(a*i), beta^(b*j)).
struct GroupElement {
    std::int64_t a = 0;
    std::int64_t b = 0;

    friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

struct SubgroupParams {
    GroupSpec spec;
    std::int64_t i = 1;
    std::int64_t j = 1;
    std::int64_t t = 1;
    std::int64_t x = 1;
    std::int64_t M = 1;  ///< (m/i)/t
    std::int64_t N = 1;  ///< (n/j)/t

    [[nodiscard]] std::int64_t m() const { return spec.m; }
    [[nodiscard]] std::int64_t n() const { return spec.n; }
    [[nodiscard]] std::int64_t m_over_i() const { return spec.m / i; }
    [[nodiscard]] std::int64_t n_over_j() const { return spec.n / j; }
    /// gcd(m/i, n/j); equals t exactly when eigen generating sequences exist.
    [[nodiscard]] std::int64_t quotient_gcd() const { return std::gcd(m_over_i(), n_over_j()); }

    friend bool operator==(const SubgroupParams&, const SubgroupParams&) = default;
};

inline SubgroupParams validate_params(std::int64_t m, std::int64_t n, std::int64_t i, std::int64_t j, std::int64_t t,
                                      std::int64_t x) {
    if (m < 1 || n < 1 || i < 1 || j < 1 || t < 1 || x < 1)
        throw DomainError("m, n, i, j, t, x must all be positive");
    if (m % i != 0) throw DomainError("i does not divide m");
    if (n % j != 0) throw DomainError("j does not divide n");
    if ((m / i) % t != 0) throw DomainError("t does not divide m/i");
    if ((n / j) % t != 0) throw DomainError("t does not divide n/j");
    if (x > t) throw DomainError("x must satisfy 1 <= x <= t");
    if (std::gcd(x, t) != 1) throw DomainError("gcd(x, t) != 1");
    return SubgroupParams{GroupSpec{m, n}, i, j, t, x, (m / i) / t, (n / j) / t};
}

inline std::vector<std::int64_t> divisors(std::int64_t v) {
    std::vector<std::int64_t> out;
    for (std::int64_t d = 1; d <= v; ++d)
        if (v % d == 0) out.push_back(d);
    return out;
}

/// All quadruples, lexicographic in (i, j, t, x).
inline std::vector<SubgroupParams> enumerate_subgroups(std::int64_t m, std::int64_t n) {
    if (m < 1 || n < 1) throw DomainError("m and n must be positive");
    std::vector<SubgroupParams> out;
    for (auto i : divisors(m)) {
        for (auto j : divisors(n)) {
            for (auto t : divisors(std::gcd(m / i, n / j))) {
                for (std::int64_t x = 1; x <= t; ++x) {
                    if (std::gcd(x, t) == 1) out.push_back(validate_params(m, n, i, j, t, x));
                }
            }
        }
    }
    return out;
}

inline std::int64_t subgroup_order(const SubgroupParams& p) { return p.M * p.N * p.t; }

/// Canonical elements sorted by (a, b).
inline std::vector<GroupElement> list_elements(const SubgroupParams& p) {
    std::vector<GroupElement> out;
    out.reserve(static_cast<std::size_t>(subgroup_order(p)));
    for (std::int64_t a = 0; a < p.M * p.t; ++a)
        for (std::int64_t b = floor_mod(a * p.x, p.t); b < p.N * p.t; b += p.t) out.push_back({a, b});
    return out;
}

inline GroupElement canonical(const SubgroupParams& p, std::int64_t a, std::int64_t b) {
    return {floor_mod(a, p.M * p.t), floor_mod(b, p.N * p.t)};
}

/// Image of a canonical element in Z/m x Z/n (exponents of alpha and beta).
inline std::pair<std::int64_t, std::int64_t> ambient_exponents(const SubgroupParams& p, const GroupElement& e) {
    return {floor_mod(e.a * p.i, p.m()), floor_mod(e.b * p.j, p.n())};
}

namespace detail {

inline std::set<GroupElement> closure(const SubgroupParams& p, const std::vector<GroupElement>& gens) {
    std::set<GroupElement> seen{{0, 0}};
    std::vector<GroupElement> frontier{{0, 0}};
    while (!frontier.empty()) {
        auto cur = frontier.back();
        frontier.pop_back();
        for (const auto& g : gens) {
            auto next = canonical(p, cur.a + g.a, cur.b + g.b);
            if (seen.insert(next).second) frontier.push_back(next);
        }
    }
    return seen;
}

}  // namespace detail

/// Two elements generating H: (1, x) and (0, t), reduced. When t = 1 the
/// congruence is vacuous and the pair is (1, 0), (0, 1) instead.
inline std::pair<GroupElement, GroupElement> generating_pair(const SubgroupParams& p) {
    std::pair<GroupElement, GroupElement> gens =
        p.t == 1 ? std::pair{canonical(p, 1, 0), canonical(p, 0, 1)} : std::pair{canonical(p, 1, p.x), canonical(p, 0, p.t)};
    auto generated = detail::closure(p, {gens.first, gens.second});
    auto elements = list_elements(p);
    if (generated.size() != elements.size() || !std::equal(elements.begin(), elements.end(), generated.begin()))
        throw DefectError("generating pair does not generate H(" + std::to_string(p.i) + "," + std::to_string(p.j) +
                          "," + std::to_string(p.t) + "," + std::to_string(p.x) + ")");
    return gens;
}

/// Orders of the cyclic groups <alpha^(it)> <= <alpha^i> and <beta^(jt)> <= <beta^j>,
/// plus the exponent x of the quotient isomorphism alpha^i -> beta^(xj).
struct GoursatData {
    std::int64_t inner_first = 1;
    std::int64_t outer_first = 1;
    std::int64_t inner_second = 1;
    std::int64_t outer_second = 1;
    std::int64_t x = 1;

    friend bool operator==(const GoursatData&, const GoursatData&) = default;
};

inline GoursatData goursat_tuple(const SubgroupParams& p) {
    return {p.m() / (p.i * p.t), p.m() / p.i, p.n() / (p.j * p.t), p.n() / p.j, p.x};
}

inline std::string to_string(const SubgroupParams& p) {
    return "H(" + std::to_string(p.i) + "," + std::to_string(p.j) + "," + std::to_string(p.t) + "," +
           std::to_string(p.x) + ") in U_" + std::to_string(p.m()) + " x U_" + std::to_string(p.n());
}

}  // namespace vsg
