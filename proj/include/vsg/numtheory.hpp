#pragma once

/**
 * @file numtheory.hpp
 * @brief Exact arithmetic kernel.
 *
 * Everything downstream is exact: values of the valuation are rationals
 * (GMP-backed, always reduced), group data are machine integers, and roots of
 * unity are never materialised. A root alpha^p * beta^q is tracked as an
 * exponent of a primitive (m*n)-th root delta, with alpha = delta^(w1*n) and
 * beta = delta^(w2*m), so every identity between roots becomes an integer
 * congruence modulo m*n.
 */

#include "error.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vsg {

using Integer = mpz_class;

// =============================================================================
// Rational
// =============================================================================

/// Arbitrary precision rational, stored reduced with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
    Rational(const Integer& num, const Integer& den) {
        if (den == 0) throw DomainError("rational with zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    explicit Rational(const Integer& v) : q_(v) {}
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    /// Parses "p" or "p/q" (optional leading sign, decimal digits).
    static Rational parse(std::string_view text) {
        auto trim = [](std::string_view s) {
            while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
            return s;
        };
        text = trim(text);
        auto valid_int = [](std::string_view s) {
            if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
            return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
        };
        auto to_int = [](std::string_view s) {
            if (!s.empty() && s.front() == '+') s.remove_prefix(1);
            return Integer(std::string(s));
        };
        auto slash = text.find('/');
        if (slash == std::string_view::npos) {
            if (!valid_int(text)) throw DomainError("malformed rational '" + std::string(text) + "'");
            return Rational(to_int(text));
        }
        auto num = trim(text.substr(0, slash));
        auto den = trim(text.substr(slash + 1));
        if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+')
            throw DomainError("malformed rational '" + std::string(text) + "'");
        return Rational(to_int(num), to_int(den));
    }

    [[nodiscard]] Integer num() const { return q_.get_num(); }
    [[nodiscard]] Integer den() const { return q_.get_den(); }
    [[nodiscard]] bool is_zero() const { return sgn(q_) == 0; }
    [[nodiscard]] bool is_integer() const { return q_.get_den() == 1; }
    [[nodiscard]] int sign() const { return sgn(q_); }
    [[nodiscard]] const mpq_class& raw() const { return q_; }

    /// "p/q", with "/q" omitted when q = 1.
    [[nodiscard]] std::string str() const {
        if (is_integer()) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    /// Largest integer <= this.
    [[nodiscard]] Integer floor() const {
        Integer r;
        mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
        return r;
    }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw DomainError("division by zero rational");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class q_;
};

inline Rational operator*(const Integer& k, const Rational& r) { return Rational(k) * r; }

/// Parses a comma separated list such as "1,3/2,13/4".
inline std::vector<Rational> parse_rational_list(std::string_view text) {
    std::vector<Rational> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.push_back(Rational::parse(piece));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

// =============================================================================
// Integer helpers
// =============================================================================

/// Mathematical modulo: result in [0, m) for m > 0.
constexpr std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

/// Inverse of a modulo m, assuming gcd(a, m) = 1 and m >= 1.
inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    if (m == 1) return 0;
    std::int64_t old_r = floor_mod(a, m), r = m, old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * s; old_s = s; s = tmp;
    }
    if (old_r != 1) throw DomainError("no modular inverse: gcd(" + std::to_string(a) + ", " + std::to_string(m) + ") != 1");
    return floor_mod(old_s, m);
}

inline bool divides(std::int64_t d, std::int64_t v) { return d != 0 && v % d == 0; }

inline std::int64_t to_int64(const Integer& z) {
    if (!z.fits_slong_p()) throw DomainError("integer " + z.get_str() + " exceeds 64-bit range");
    return z.get_si();
}

/// Distinct prime factors in increasing order.
inline std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// =============================================================================
// Subgroups of Q
// =============================================================================

/// Positive g with sum(values * Z) = g * Z. Zeros are skipped.
inline Rational rational_group_generator(std::span<const Rational> values) {
    Integer common_den = 1;
    bool any = false;
    for (const auto& v : values) {
        if (v.is_zero()) continue;
        any = true;
        mpz_lcm(common_den.get_mpz_t(), common_den.get_mpz_t(), v.den().get_mpz_t());
    }
    if (!any) throw DomainError("trivial group has no generator");
    Integer g = 0;
    for (const auto& v : values) {
        if (v.is_zero()) continue;
        Integer scaled = v.num() * (common_den / v.den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled.get_mpz_t());
    }
    return Rational(g, common_den);
}

inline Rational rational_group_generator(std::initializer_list<Rational> values) {
    return rational_group_generator(std::span<const Rational>(values.begin(), values.size()));
}

/// True iff v lies in the subgroup of Q generated by `values`.
inline bool group_membership(const Rational& v, std::span<const Rational> values) {
    Rational g = rational_group_generator(values);
    return (v / g).is_integer();
}

// =============================================================================
// Primes
// =============================================================================

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

}  // namespace detail

/// Deterministic Miller-Rabin; the first twelve prime bases are exact for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    constexpr std::uint64_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto p : bases) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (auto a : bases) {
        std::uint64_t x = detail::pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = detail::mul_mod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

inline constexpr std::int64_t default_prime_ceiling = 10'000'000;

/// The `count` smallest primes p = residue (mod modulus) that share no factor
/// with any entry of `coprime_to`, in increasing order. Searching past
/// `ceiling` is an error rather than a silent truncation.
inline std::vector<std::int64_t> primes_in_ap(std::int64_t residue, std::int64_t modulus,
                                              std::span<const std::int64_t> coprime_to, std::size_t count,
                                              std::int64_t ceiling = default_prime_ceiling) {
    if (modulus <= 0) throw DomainError("modulus must be positive");
    if (std::gcd(residue, modulus) != 1) throw DomainError("progression contains at most one prime");
    std::vector<std::int64_t> out;
    out.reserve(count);
    for (std::int64_t p = floor_mod(residue, modulus); out.size() < count; p += modulus) {
        if (p > ceiling)
            throw DomainError("prime search ceiling " + std::to_string(ceiling) + " exceeded after " +
                              std::to_string(out.size()) + " of " + std::to_string(count) + " primes");
        if (!is_prime(static_cast<std::uint64_t>(p))) continue;
        bool ok = std::all_of(coprime_to.begin(), coprime_to.end(), [p](std::int64_t c) { return c % p != 0; });
        if (ok) out.push_back(p);
    }
    return out;
}

inline std::vector<std::int64_t> primes_in_ap(std::int64_t residue, std::int64_t modulus,
                                              std::initializer_list<std::int64_t> coprime_to, std::size_t count,
                                              std::int64_t ceiling = default_prime_ceiling) {
    return primes_in_ap(residue, modulus, std::span<const std::int64_t>(coprime_to.begin(), coprime_to.size()),
                        count, ceiling);
}

// =============================================================================
// Roots of unity via delta exponents
// =============================================================================

/// Choice of primitive roots: alpha = delta^(w1*n), beta = delta^(w2*m).
struct RootContext {
    std::int64_t m = 1;
    std::int64_t n = 1;
    std::int64_t w1 = 1;
    std::int64_t w2 = 1;

    static RootContext make(std::int64_t m, std::int64_t n, std::int64_t w1 = 1, std::int64_t w2 = 1) {
        if (m < 1 || n < 1) throw DomainError("m and n must be positive");
        if (w1 < 1 || w1 > m) throw DomainError("w1 must lie in [1, m]");
        if (w2 < 1 || w2 > n) throw DomainError("w2 must lie in [1, n]");
        if (std::gcd(w1, m) != 1) throw DomainError("gcd(w1, m) != 1");
        if (std::gcd(w2, n) != 1) throw DomainError("gcd(w2, n) != 1");
        return RootContext{m, n, w1, w2};
    }

    [[nodiscard]] std::int64_t order() const { return m * n; }
};

/// beta^p == alpha^q, i.e. p*w2*m - q*w1*n = 0 (mod m*n).
inline bool roots_equal(std::int64_t p, std::int64_t q, const RootContext& ctx) {
    const std::int64_t mn = ctx.order();
    std::int64_t lhs = floor_mod(floor_mod(p, mn) * ctx.w2 % mn * ctx.m, mn);
    std::int64_t rhs = floor_mod(floor_mod(q, mn) * ctx.w1 % mn * ctx.n, mn);
    return lhs == rhs;
}

/// Exponent e in [0, m*n) with alpha^(r*a*i) * beta^(s*b*j) = delta^e.
inline std::int64_t delta_exponent(std::int64_t r, std::int64_t s, std::int64_t a, std::int64_t b, std::int64_t i,
                                   std::int64_t j, const RootContext& ctx) {
    using i128 = __int128;
    const i128 mn = ctx.order();
    i128 e = static_cast<i128>(r) * a % mn * i % mn * ctx.w1 % mn * ctx.n % mn;
    e += static_cast<i128>(s) * b % mn * j % mn * ctx.w2 % mn * ctx.m % mn;
    e %= mn;
    if (e < 0) e += mn;
    return static_cast<std::int64_t>(e);
}

}  // namespace vsg
