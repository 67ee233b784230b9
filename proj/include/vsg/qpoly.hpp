#pragma once

/**
 * @file qpoly.hpp
 * @brief Sparse polynomials in Q[X,Y], key polynomials Q_l, eigenfunction
 * tests and valuation of polynomials through Q-adic expansion.
 *
 * Key polynomials follow the recursion
 *
 *     Q_0 = X,  Q_1 = Y,
 *     Q_{l+1} = Q_l^{m̄_l} - lambda_l * X^{c_0} Y^{c_1} Q_2^{c_2} ... Q_{l-1}^{c_{l-1}},
 *
 * where m̄_l*gamma_l = sum c_k*gamma_k is the bounded expansion. Monomial
 * expansion of deep Q_l blows up quickly, so the recursion is always kept and
 * full expansion is attempted only within a work budget.
 */

#include "error.hpp"
#include "groups.hpp"
#include "numtheory.hpp"
#include "valuation.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vsg {

/// Exponent pair (r, s) of X^r Y^s.
using Monomial = std::pair<std::int64_t, std::int64_t>;

class QPolynomial {
public:
    using Terms = std::map<Monomial, Rational>;

    QPolynomial() = default;
    explicit QPolynomial(const Rational& c) {
        if (!c.is_zero()) terms_[{0, 0}] = c;
    }

    static QPolynomial monomial(std::int64_t r, std::int64_t s, const Rational& c = Rational(1)) {
        if (r < 0 || s < 0) throw DomainError("negative exponent in monomial");
        QPolynomial p;
        if (!c.is_zero()) p.terms_[{r, s}] = c;
        return p;
    }
    static QPolynomial X(std::int64_t r = 1) { return monomial(r, 0); }
    static QPolynomial Y(std::int64_t s = 1) { return monomial(0, s); }

    [[nodiscard]] const Terms& terms() const { return terms_; }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }

    [[nodiscard]] Rational coefficient(std::int64_t r, std::int64_t s) const {
        auto it = terms_.find({r, s});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Largest Y exponent; -1 for the zero polynomial.
    [[nodiscard]] std::int64_t deg_y() const {
        std::int64_t d = -1;
        for (const auto& [mono, c] : terms_) d = std::max(d, mono.second);
        return d;
    }

    /// Smallest X exponent; -1 for the zero polynomial.
    [[nodiscard]] std::int64_t ord_x() const {
        std::int64_t d = -1;
        for (const auto& [mono, c] : terms_)
            if (d < 0 || mono.first < d) d = mono.first;
        return d;
    }

    /// Coefficient of Y^deg_y, as a polynomial in X.
    [[nodiscard]] QPolynomial leading_y_coefficient() const {
        QPolynomial out;
        const auto d = deg_y();
        for (const auto& [mono, c] : terms_)
            if (mono.second == d) out.terms_[{mono.first, 0}] = c;
        return out;
    }

    [[nodiscard]] bool is_monic_in_y() const {
        if (is_zero()) return false;
        auto lead = leading_y_coefficient();
        return lead.size() == 1 && lead.terms_.begin()->first.first == 0 && lead.terms_.begin()->second == Rational(1);
    }

    /// Terms with Y exponent exactly s, returned with the Y power stripped.
    [[nodiscard]] QPolynomial y_coefficient(std::int64_t s) const {
        QPolynomial out;
        for (const auto& [mono, c] : terms_)
            if (mono.second == s) out.terms_[{mono.first, 0}] = c;
        return out;
    }

    QPolynomial& operator+=(const QPolynomial& o) {
        for (const auto& [mono, c] : o.terms_) add_term(mono, c);
        return *this;
    }
    QPolynomial& operator-=(const QPolynomial& o) {
        for (const auto& [mono, c] : o.terms_) add_term(mono, -c);
        return *this;
    }
    QPolynomial& operator*=(const QPolynomial& o) { return *this = *this * o; }

    friend QPolynomial operator+(QPolynomial a, const QPolynomial& b) { return a += b; }
    friend QPolynomial operator-(QPolynomial a, const QPolynomial& b) { return a -= b; }
    friend QPolynomial operator-(const QPolynomial& a) { return QPolynomial() - a; }
    friend QPolynomial operator*(const QPolynomial& a, const QPolynomial& b) {
        QPolynomial out;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) out.add_term({ma.first + mb.first, ma.second + mb.second}, ca * cb);
        return out;
    }
    friend QPolynomial operator*(const Rational& k, const QPolynomial& p) {
        if (k.is_zero()) return {};
        QPolynomial out = p;
        for (auto& [mono, c] : out.terms_) c *= k;
        return out;
    }

    friend bool operator==(const QPolynomial&, const QPolynomial&) = default;

    /// Multiplies out X^r Y^s * p without touching coefficients.
    [[nodiscard]] QPolynomial shifted(std::int64_t r, std::int64_t s) const {
        QPolynomial out;
        for (const auto& [mono, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), Monomial{mono.first + r, mono.second + s}, c);
        return out;
    }

private:
    void add_term(const Monomial& mono, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(mono, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Terms terms_;
};

/// p^e, or nothing if some intermediate product would cost more than
/// `work_budget` term multiplications.
inline std::optional<QPolynomial> pow_within(const QPolynomial& p, std::int64_t e, std::size_t work_budget) {
    if (e < 0) throw DomainError("negative polynomial power");
    QPolynomial result(Rational(1));
    QPolynomial base = p;
    auto mul = [&](const QPolynomial& a, const QPolynomial& b) -> std::optional<QPolynomial> {
        if (a.size() != 0 && b.size() > work_budget / a.size()) return std::nullopt;
        return a * b;
    };
    while (e > 0) {
        if (e & 1) {
            auto r = mul(result, base);
            if (!r) return std::nullopt;
            result = std::move(*r);
        }
        e >>= 1;
        if (e > 0) {
            auto b = mul(base, base);
            if (!b) return std::nullopt;
            base = std::move(*b);
        }
    }
    return result;
}

inline QPolynomial pow(const QPolynomial& p, std::int64_t e) {
    return *pow_within(p, e, static_cast<std::size_t>(-1));
}

/// Terms ordered by descending Y exponent, then descending X exponent,
/// e.g. "Y^2 - X^3" or "3/2*X^2*Y + 1".
inline std::string to_string(const QPolynomial& p) {
    if (p.is_zero()) return "0";
    std::vector<std::pair<Monomial, Rational>> ordered(p.terms().begin(), p.terms().end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.first.second != b.first.second) return a.first.second > b.first.second;
        return a.first.first > b.first.first;
    });
    std::string out;
    for (std::size_t k = 0; k < ordered.size(); ++k) {
        const auto& [mono, c] = ordered[k];
        Rational mag = c.sign() < 0 ? -c : c;
        if (k == 0) {
            if (c.sign() < 0) out += "-";
        } else {
            out += c.sign() < 0 ? " - " : " + ";
        }
        std::string vars;
        auto var = [&](char name, std::int64_t e) {
            if (e == 0) return;
            if (!vars.empty()) vars += "*";
            vars += name;
            if (e > 1) vars += "^" + std::to_string(e);
        };
        var('X', mono.first);
        var('Y', mono.second);
        if (vars.empty())
            out += mag.str();
        else if (mag == Rational(1))
            out += vars;
        else
            out += mag.str() + "*" + vars;
    }
    return out;
}

namespace detail {

class PolyParser {
public:
    explicit PolyParser(std::string_view text) : s_(text) {}

    QPolynomial parse() {
        skip();
        if (pos_ == s_.size()) fail("empty polynomial");
        QPolynomial out;
        bool first = true;
        while (true) {
            skip();
            if (pos_ == s_.size()) break;
            int sign = 1;
            if (s_[pos_] == '+' || s_[pos_] == '-') {
                sign = s_[pos_] == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            out += Rational(sign) * term();
        }
        return out;
    }

private:
    QPolynomial term() {
        Rational coeff(1);
        std::int64_t r = 0, s = 0;
        bool any = false;
        while (true) {
            skip();
            if (pos_ == s_.size()) break;
            char c = s_[pos_];
            if (any && c == '*') {
                ++pos_;
                skip();
                if (pos_ == s_.size()) fail("dangling '*'");
                c = s_[pos_];
            } else if (any && !(c == 'X' || c == 'Y' || c == 'x' || c == 'y' || std::isdigit(static_cast<unsigned char>(c)))) {
                break;
            }
            if (c == 'X' || c == 'x' || c == 'Y' || c == 'y') {
                ++pos_;
                std::int64_t e = exponent();
                (c == 'X' || c == 'x' ? r : s) += e;
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                coeff *= number();
            } else {
                fail(std::string("unexpected character '") + c + "'");
            }
            any = true;
        }
        if (!any) fail("missing term");
        return QPolynomial::monomial(r, s, coeff);
    }

    std::int64_t exponent() {
        skip();
        if (pos_ == s_.size() || s_[pos_] != '^') return 1;
        ++pos_;
        skip();
        auto digits = take_digits();
        if (digits.empty()) fail("missing exponent after '^'");
        return to_int64(Integer(std::string(digits)));
    }

    Rational number() {
        auto num = take_digits();
        std::size_t save = pos_;
        skip();
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            skip();
            auto den = take_digits();
            if (den.empty()) fail("missing denominator");
            return Rational::parse(std::string(num) + "/" + std::string(den));
        }
        pos_ = save;
        return Rational::parse(num);
    }

    std::string_view take_digits() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return s_.substr(start, pos_ - start);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw DomainError("malformed polynomial at position " + std::to_string(pos_) + ": " + what);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses sums of terms like "3/2*X^2*Y", "- X^3", "Y^2". Juxtaposition
/// ("2XY^3") is read as multiplication.
inline QPolynomial parse_polynomial(std::string_view text) { return detail::PolyParser(text).parse(); }

// =============================================================================
// Generating sequences
// =============================================================================

inline constexpr std::size_t default_expansion_budget = 4'000'000;

struct GeneratingSequence {
    ValueSequence seq;
    std::vector<Rational> lambdas;  ///< lambda_1 .. lambda_L
    /// Q_0 .. Q_{L+1} fully expanded, possibly cut short when the expansion
    /// budget ran out; use expanded_count() before indexing deep levels.
    std::vector<QPolynomial> qs;
    /// recursion_exponents[l-1] = (c_0, ..., c_{l-1}) for Q_{l+1}.
    std::vector<std::vector<std::int64_t>> recursion_exponents;

    /// Index of the last key polynomial, L + 1.
    [[nodiscard]] std::size_t top() const { return seq.depth() + 1; }
    [[nodiscard]] std::size_t expanded_count() const { return qs.size(); }
    [[nodiscard]] bool fully_expanded() const { return qs.size() == top() + 1; }
    [[nodiscard]] const QPolynomial& q(std::size_t l) const {
        if (l >= qs.size())
            throw DomainError("Q_" + std::to_string(l) + " was not expanded (monomial expansion budget exceeded)");
        return qs[l];
    }

    /// Recursion of Q_{l+1} for l >= 1 as text, e.g. "Q_2^5 - X^12".
    [[nodiscard]] std::string recursion_string(std::size_t l) const {
        const auto& c = recursion_exponents.at(l - 1);
        auto qname = [](std::size_t k) -> std::string {
            if (k == 0) return "X";
            if (k == 1) return "Y";
            return "Q_" + std::to_string(k);
        };
        auto power = [&](std::size_t k, std::int64_t e) -> std::string {
            std::string base = qname(k);
            return e == 1 ? base : base + "^" + std::to_string(e);
        };
        std::string out = power(l, seq.mbar(l));
        std::string prod;
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k] == 0) continue;
            if (!prod.empty()) prod += "*";
            prod += power(k, c[k]);
        }
        if (prod.empty()) prod = "1";
        const Rational& lam = lambdas.at(l - 1);
        if (lam.sign() < 0)
            out += " + ";
        else
            out += " - ";
        Rational mag = lam.sign() < 0 ? -lam : lam;
        if (mag != Rational(1)) out += mag.str() + "*";
        return out + prod;
    }
};

/// Builds Q_0 .. Q_{L+1}. Missing lambdas default to 1.
inline GeneratingSequence build_generating_sequence(const ValueSequence& seq, std::vector<Rational> lambdas = {},
                                                    std::size_t work_budget = default_expansion_budget) {
    const std::size_t L = seq.depth();
    if (lambdas.size() > L) throw DomainError("more lambdas than levels");
    while (lambdas.size() < L) lambdas.emplace_back(1);
    for (const auto& lam : lambdas)
        if (lam.is_zero()) throw DomainError("lambda must be nonzero");

    GeneratingSequence gs;
    gs.seq = seq;
    gs.lambdas = std::move(lambdas);
    gs.qs = {QPolynomial::X(), QPolynomial::Y()};
    bool expanding = true;
    for (std::size_t l = 1; l <= L; ++l) {
        Rational target = Rational(static_cast<long>(seq.mbar(l))) * seq.gamma(l);
        auto term = expand_value(target, seq.prefix(l - 1));
        if (!term)
            throw DomainError("inconsistent sequence: m̄_" + std::to_string(l) + "*gamma_" + std::to_string(l) + " = " +
                              target.str() + " has no bounded expansion over gamma_0..gamma_" + std::to_string(l - 1));
        std::vector<std::int64_t> c(l, 0);
        c[0] = term->l;
        for (std::size_t k = 0; k < term->js.size(); ++k) c[k + 1] = term->js[k];
        gs.recursion_exponents.push_back(c);

        if (!expanding) continue;
        auto lead = pow_within(gs.qs[l], seq.mbar(l), work_budget);
        std::optional<QPolynomial> tail = QPolynomial::monomial(c[0], l >= 2 ? c[1] : 0, gs.lambdas[l - 1]);
        for (std::size_t k = 2; k < l && tail; ++k) {
            if (c[k] == 0) continue;
            auto factor = pow_within(gs.qs[k], c[k], work_budget);
            if (!factor || (tail->size() != 0 && factor->size() > work_budget / tail->size())) {
                tail.reset();
                break;
            }
            tail = *tail * *factor;
        }
        if (!lead || !tail) {
            expanding = false;
            continue;
        }
        gs.qs.push_back(*lead - *tail);
    }
    return gs;
}

// =============================================================================
// Eigenfunctions
// =============================================================================

struct EigenReport {
    bool is_eigen = false;
    /// delta-exponent of the eigenvalue under each generating_pair element (empty unless eigen)
    std::vector<std::int64_t> exponents;
    bool is_invariant = false;
};

/// Per-generator delta exponents of the monomial X^r Y^s.
inline std::pair<std::int64_t, std::int64_t> monomial_exponents(std::int64_t r, std::int64_t s, const SubgroupParams& params,
                                                                const RootContext& ctx,
                                                                const std::pair<GroupElement, GroupElement>& gens) {
    return {delta_exponent(r, s, gens.first.a, gens.first.b, params.i, params.j, ctx),
            delta_exponent(r, s, gens.second.a, gens.second.b, params.i, params.j, ctx)};
}

inline void check_context(const SubgroupParams& params, const RootContext& ctx) {
    if (params.m() != ctx.m || params.n() != ctx.n) throw DomainError("root context does not match (m, n) of the subgroup");
}

inline EigenReport eigen_report(const QPolynomial& f, const SubgroupParams& params, const RootContext& ctx) {
    if (f.is_zero()) throw DomainError("eigenfunction undefined for 0");
    check_context(params, ctx);
    const auto gens = generating_pair(params);
    EigenReport rep;
    std::optional<std::pair<std::int64_t, std::int64_t>> common;
    for (const auto& [mono, c] : f.terms()) {
        auto e = monomial_exponents(mono.first, mono.second, params, ctx, gens);
        if (!common)
            common = e;
        else if (*common != e)
            return rep;
    }
    rep.is_eigen = true;
    rep.exponents = {common->first, common->second};
    rep.is_invariant = common->first == 0 && common->second == 0;
    return rep;
}

/// Eigen status of Q_0 .. Q_{L+1} read off the recursion instead of the
/// expansion: Q_{l+1} is an eigenfunction exactly when Q_l is one and
/// Q_l^{m̄_l} and the subtracted product scale by the same root of unity.
inline std::vector<EigenReport> recursive_eigen_reports(const GeneratingSequence& gs, const SubgroupParams& params,
                                                        const RootContext& ctx) {
    check_context(params, ctx);
    const auto gens = generating_pair(params);
    const std::int64_t mn = ctx.order();
    using Exps = std::pair<std::int64_t, std::int64_t>;
    std::vector<std::optional<Exps>> exps;
    exps.push_back(monomial_exponents(1, 0, params, ctx, gens));
    exps.push_back(monomial_exponents(0, 1, params, ctx, gens));
    auto scale = [mn](const Exps& e, std::int64_t k) {
        return Exps{static_cast<std::int64_t>(static_cast<__int128>(e.first) * k % mn),
                    static_cast<std::int64_t>(static_cast<__int128>(e.second) * k % mn)};
    };
    for (std::size_t l = 1; l < gs.top(); ++l) {
        const auto& c = gs.recursion_exponents[l - 1];
        std::optional<Exps> out;
        bool ok = exps[l].has_value();
        for (std::size_t k = 0; k < c.size() && ok; ++k)
            if (c[k] != 0 && !exps[k]) ok = false;
        if (ok) {
            Exps lead = scale(*exps[l], gs.seq.mbar(l));
            Exps tail{0, 0};
            for (std::size_t k = 0; k < c.size(); ++k) {
                if (c[k] == 0) continue;
                auto part = scale(*exps[k], c[k]);
                tail = {(tail.first + part.first) % mn, (tail.second + part.second) % mn};
            }
            if (lead == tail) out = lead;
        }
        exps.push_back(out);
    }
    std::vector<EigenReport> reports;
    for (const auto& e : exps) {
        EigenReport rep;
        if (e) {
            rep.is_eigen = true;
            rep.exponents = {e->first, e->second};
            rep.is_invariant = e->first == 0 && e->second == 0;
        }
        reports.push_back(rep);
    }
    return reports;
}

// =============================================================================
// Q-adic expansion and valuation
// =============================================================================

/// coeff(X) * Y^{j_1} Q_2^{j_2} ... Q_{L+1}^{j_{L+1}}.
struct QAdicTerm {
    QPolynomial coeff;              ///< polynomial in X only
    std::vector<std::int64_t> js;   ///< j_1 .. j_{L+1}
    std::int64_t y_degree = 0;      ///< sum j_k d(k)
};

namespace detail {

/// f = quotient * q + remainder with deg_Y(remainder) < deg_Y(q); q monic in Y.
inline std::pair<QPolynomial, QPolynomial> divide_monic_y(QPolynomial f, const QPolynomial& q) {
    if (!q.is_monic_in_y()) throw DefectError("division by a polynomial that is not monic in Y");
    const std::int64_t d = q.deg_y();
    QPolynomial quotient;
    while (f.deg_y() >= d) {
        const std::int64_t s = f.deg_y();
        QPolynomial lead = f.y_coefficient(s).shifted(0, s - d);
        quotient += lead;
        f -= lead * q;
    }
    return {std::move(quotient), std::move(f)};
}

inline void qadic_recurse(const QPolynomial& f, std::size_t k, const GeneratingSequence& gs,
                          std::vector<std::int64_t>& digits, std::vector<QAdicTerm>& out) {
    if (f.is_zero()) return;
    if (k == 1) {
        for (std::int64_t s = f.deg_y(); s >= 0; --s) {
            auto coeff = f.y_coefficient(s);
            if (coeff.is_zero()) continue;
            digits[0] = s;
            out.push_back({std::move(coeff), digits, 0});
        }
        digits[0] = 0;
        return;
    }
    // Base-Q_k digits of f, lowest first.
    std::vector<QPolynomial> parts;
    QPolynomial rest = f;
    while (!rest.is_zero()) {
        auto [quo, rem] = divide_monic_y(rest, gs.q(k));
        parts.push_back(std::move(rem));
        rest = std::move(quo);
    }
    for (std::size_t e = parts.size(); e-- > 0;) {
        digits[k - 1] = static_cast<std::int64_t>(e);
        qadic_recurse(parts[e], k - 1, gs, digits, out);
    }
    digits[k - 1] = 0;
}

}  // namespace detail

/// Unique expansion f = sum f_m with digits j_k < m̄_k for k <= L and an
/// unbounded top digit on Q_{L+1}; terms sorted by descending Y-degree.
inline std::vector<QAdicTerm> q_adic_expansion(const QPolynomial& f, const GeneratingSequence& gs) {
    const std::size_t top = gs.top();
    std::size_t start = top;
    while (start > 1 && f.deg_y() < gs.seq.degree(start)) --start;
    if (start >= gs.expanded_count())
        throw DomainError("insufficient depth: expansion needs Q_" + std::to_string(start) + " of Y-degree d(" +
                          std::to_string(start) + ") = " + std::to_string(gs.seq.degree(start)) +
                          ", which was not expanded");
    std::vector<std::int64_t> digits(top, 0);
    std::vector<QAdicTerm> out;
    detail::qadic_recurse(f, start, gs, digits, out);
    for (auto& t : out) {
        t.y_degree = 0;
        for (std::size_t k = 0; k < top; ++k) t.y_degree += t.js[k] * gs.seq.degree(k + 1);
    }
    std::sort(out.begin(), out.end(), [](const QAdicTerm& a, const QAdicTerm& b) { return a.y_degree > b.y_degree; });
    return out;
}

/// Multiplies the expansion back out.
inline QPolynomial recombine(const std::vector<QAdicTerm>& terms, const GeneratingSequence& gs) {
    QPolynomial out;
    for (const auto& t : terms) {
        QPolynomial prod = t.coeff;
        for (std::size_t k = 0; k < t.js.size(); ++k)
            if (t.js[k] != 0) prod = prod * pow(gs.q(k + 1), t.js[k]);
        out += prod;
    }
    return out;
}

/// nu(f) = min over expansion terms. Terms that use Q_{L+1} only have the
/// lower bound gamma_{L+1} > m̄_L*gamma_L; if such a term could undercut the
/// known minimum the value is undetermined at this depth.
inline Rational valuation_of(const QPolynomial& f, const GeneratingSequence& gs) {
    if (f.is_zero()) throw DomainError("ν(0) undefined");
    const auto& seq = gs.seq;
    const std::size_t L = seq.depth();
    std::optional<Rational> known;
    std::optional<Rational> weakest_bound;
    for (const auto& t : q_adic_expansion(f, gs)) {
        Rational v(static_cast<long>(t.coeff.ord_x()));
        for (std::size_t k = 1; k <= L; ++k) v += Rational(static_cast<long>(t.js[k - 1])) * seq.gamma(k);
        const std::int64_t top_digit = t.js[L];
        if (top_digit == 0) {
            if (known && *known == v) throw DefectError("two expansion terms share the value " + v.str());
            if (!known || v < *known) known = v;
        } else {
            Rational bound = v + Rational(static_cast<long>(top_digit)) * seq.next_gamma_lower_bound();
            if (!weakest_bound || bound < *weakest_bound) weakest_bound = bound;
        }
    }
    if (!known || (weakest_bound && *weakest_bound < *known))
        throw DomainError("valuation undetermined at this depth: a term involving Q_" + std::to_string(L + 1) +
                          " may attain the minimum; supply more gammas");
    return *known;
}

}  // namespace vsg
