#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>

#include "mcj/errors.hpp"

namespace mcj {

using Rational = mpq_class;

// Exponent in quarter units: a key e represents q^(e/4).
using Exp = long long;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string rational_str(const Rational& r) { return r.get_str(); }

// Exact sparse Laurent polynomial in q^(1/4) with rational coefficients.
class LaurentPoly {
  public:
    LaurentPoly() = default;

    static LaurentPoly zero() { return LaurentPoly(); }

    static LaurentPoly constant(const Rational& c) { return monomial(c, 0); }

    static LaurentPoly one() { return constant(1); }

    // c * q^(quarters/4)
    static LaurentPoly monomial(const Rational& c, Exp quarters) {
        LaurentPoly p;
        if (c != 0) p.terms_[quarters] = c;
        return p;
    }

    static LaurentPoly q_power(Exp quarters) { return monomial(1, quarters); }

    bool is_zero() const { return terms_.empty(); }

    const std::map<Exp, Rational>& terms() const { return terms_; }

    bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

    LaurentPoly operator-() const {
        LaurentPoly p;
        for (const auto& [e, c] : terms_) p.terms_[e] = -c;
        return p;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly p;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) p.add_term(ea + eb, ca * cb);
        return p;
    }

    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    // Multiply by q^(dq/4).
    LaurentPoly shifted(Exp dq) const {
        LaurentPoly p;
        for (const auto& [e, c] : terms_) p.terms_[e + dq] = c;
        return p;
    }

    LaurentPoly scaled(const Rational& r) const {
        LaurentPoly p;
        if (r == 0) return p;
        for (const auto& [e, c] : terms_) p.terms_[e] = c * r;
        return p;
    }

    // Quotient a/b when the remainder is zero; InexactDivision otherwise.
    static LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b) {
        if (b.is_zero()) throw DivisionByZero("exact_div: divisor is zero");
        if (a.is_zero()) return zero();
        const Exp qmax = a.high_quarters() - b.high_quarters();
        const Exp blow = b.low_quarters();
        LaurentPoly r = a, quo;
        while (!r.is_zero()) {
            const Exp e = r.low_quarters() - blow;
            if (e > qmax) throw InexactDivision("exact_div: nonzero remainder");
            const Rational c = r.lead_low() / b.lead_low();
            quo.terms_[e] = c;
            r -= b.shifted(e).scaled(c);
        }
        return quo;
    }

    Exp low_quarters() const {
        require_nonzero();
        return terms_.begin()->first;
    }

    Exp high_quarters() const {
        require_nonzero();
        return terms_.rbegin()->first;
    }

    // Degrees in q units (quarters / 4), exact rationals.
    Rational d_minus() const { return make_rational(low_quarters(), 4); }
    Rational d_plus() const { return make_rational(high_quarters(), 4); }

    const Rational& lead_low() const {
        require_nonzero();
        return terms_.begin()->second;
    }

    const Rational& lead_high() const {
        require_nonzero();
        return terms_.rbegin()->second;
    }

    // Value at q = 1.
    Rational eval_one() const {
        Rational s = 0;
        for (const auto& [e, c] : terms_) s += c;
        return s;
    }

    bool integer_coefficients() const {
        for (const auto& [e, c] : terms_)
            if (c.get_den() != 1) return false;
        return true;
    }

    std::string render() const {
        if (is_zero()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            const bool neg = c < 0;
            const Rational mag = neg ? Rational(-c) : c;
            if (first) {
                if (neg) out += "-";
                first = false;
            } else {
                out += neg ? " - " : " + ";
            }
            if (e == 0) {
                out += rational_str(mag);
            } else {
                if (mag != 1) out += rational_str(mag) + "*";
                out += "q^(" + exp_str(e) + ")";
            }
        }
        return out;
    }

    static LaurentPoly parse(const std::string& text);

  private:
    std::map<Exp, Rational> terms_;

    void require_nonzero() const {
        if (terms_.empty()) throw UndefinedDegree("degree of the zero polynomial");
    }

    void add_term(Exp e, const Rational& c) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (c != 0) terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    static std::string exp_str(Exp quarters) {
        long long g = std::gcd(quarters < 0 ? -quarters : quarters, 4LL);
        long long num = quarters / g, den = 4 / g;
        std::string s = std::to_string(num);
        if (den != 1) s += "/" + std::to_string(den);
        return s;
    }
};

struct DegreeBounds {
    Rational d_minus;
    Rational d_plus;
    Rational lead_minus;
    Rational lead_plus;
};

inline DegreeBounds degree_bounds(const LaurentPoly& p) {
    return {p.d_minus(), p.d_plus(), p.lead_low(), p.lead_high()};
}

namespace detail {

// Ordinary top-down polynomial remainder; callers pass inputs already
// shifted to low exponent 0 (so these are plain polynomials in q^(1/4)).
inline LaurentPoly poly_mod(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r = a;
    const Exp bh = b.high_quarters();
    while (!r.is_zero() && r.high_quarters() >= bh) {
        const Exp shift = r.high_quarters() - bh;
        r -= b.shifted(shift).scaled(r.lead_high() / b.lead_high());
    }
    return r;
}

// GCD up to units; canonicalized to low exponent 0 and low coefficient 1.
inline LaurentPoly poly_gcd(LaurentPoly a, LaurentPoly b) {
    auto canon = [](LaurentPoly p) {
        if (p.is_zero()) return p;
        p = p.shifted(-p.low_quarters());
        return p.scaled(1 / p.lead_low());
    };
    a = canon(a);
    b = canon(b);
    while (!b.is_zero()) {
        LaurentPoly r = canon(poly_mod(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

}  // namespace detail

// Quotient of Laurent polynomials kept in a canonical reduced form:
// gcd removed, denominator shifted to low exponent 0 and scaled to low
// coefficient 1.  A polynomial value therefore always has denominator 1,
// and equality is plain field-by-field comparison.
class LaurentFraction {
  public:
    LaurentFraction() : num_(LaurentPoly::zero()), den_(LaurentPoly::one()) {}

    explicit LaurentFraction(LaurentPoly p) : num_(std::move(p)), den_(LaurentPoly::one()) {}

    LaurentFraction(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DivisionByZero("LaurentFraction: zero denominator");
        normalize();
    }

    static LaurentFraction zero() { return LaurentFraction(); }
    static LaurentFraction one() { return LaurentFraction(LaurentPoly::one()); }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_ == LaurentPoly::one(); }

    const LaurentPoly& to_poly() const {
        if (!is_poly()) throw InexactDivision("fraction value is not a Laurent polynomial");
        return num_;
    }

    bool operator==(const LaurentFraction& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const LaurentFraction& o) const { return !(*this == o); }

    friend LaurentFraction operator+(const LaurentFraction& a, const LaurentFraction& b) {
        return LaurentFraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }

    friend LaurentFraction operator-(const LaurentFraction& a, const LaurentFraction& b) {
        return LaurentFraction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }

    LaurentFraction operator-() const {
        LaurentFraction r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend LaurentFraction operator*(const LaurentFraction& a, const LaurentFraction& b) {
        return LaurentFraction(a.num_ * b.num_, a.den_ * b.den_);
    }

    friend LaurentFraction operator/(const LaurentFraction& a, const LaurentFraction& b) {
        if (b.is_zero()) throw DivisionByZero("fraction division by zero");
        return LaurentFraction(a.num_ * b.den_, a.den_ * b.num_);
    }

    LaurentFraction& operator+=(const LaurentFraction& o) { return *this = *this + o; }
    LaurentFraction& operator-=(const LaurentFraction& o) { return *this = *this - o; }
    LaurentFraction& operator*=(const LaurentFraction& o) { return *this = *this * o; }
    LaurentFraction& operator/=(const LaurentFraction& o) { return *this = *this / o; }

    // Degrees per the fraction extension d[f1/f2] = d[f1] - d[f2]
    // (representative-independent).
    Rational d_minus() const {
        require_nonzero();
        return num_.d_minus() - den_.d_minus();
    }

    Rational d_plus() const {
        require_nonzero();
        return num_.d_plus() - den_.d_plus();
    }

    Rational lead_low() const {
        require_nonzero();
        return num_.lead_low() / den_.lead_low();
    }

    Rational lead_high() const {
        require_nonzero();
        return num_.lead_high() / den_.lead_high();
    }

    std::string render() const {
        if (is_poly()) return num_.render();
        return "(" + num_.render() + ") / (" + den_.render() + ")";
    }

  private:
    LaurentPoly num_, den_;

    void require_nonzero() const {
        if (num_.is_zero()) throw UndefinedDegree("degree of the zero fraction");
    }

    void normalize() {
        if (num_.is_zero()) {
            den_ = LaurentPoly::one();
            return;
        }
        LaurentPoly g = detail::poly_gcd(num_, den_);
        if (!(g == LaurentPoly::one())) {
            num_ = LaurentPoly::exact_div(num_, g);
            den_ = LaurentPoly::exact_div(den_, g);
        }
        const Exp s = den_.low_quarters();
        const Rational c = den_.lead_low();
        if (s != 0) {
            num_ = num_.shifted(-s);
            den_ = den_.shifted(-s);
        }
        if (c != 1) {
            num_ = num_.scaled(1 / c);
            den_ = den_.scaled(1 / c);
        }
    }
};

inline DegreeBounds degree_bounds(const LaurentFraction& f) {
    return {f.d_minus(), f.d_plus(), f.lead_low(), f.lead_high()};
}

// ---------------------------------------------------------------------------
// Parser for the canonical text form, e.g. "q^(-1/2) + q^(1/2)", "-1 + q^(3/4)",
// "3/2*q^(2) - q".
// ---------------------------------------------------------------------------
namespace detail {

class PolyParser {
  public:
    explicit PolyParser(const std::string& s) : s_(s) {}

    LaurentPoly run() {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError("empty polynomial text", pos_);
        LaurentPoly p;
        bool neg = consume_sign();
        for (;;) {
            term(p, neg);
            skip_ws();
            if (pos_ >= s_.size()) break;
            if (s_[pos_] == '+') {
                ++pos_;
                neg = false;
            } else if (match_minus()) {
                neg = true;
            } else {
                throw ParseError("expected '+' or '-' between terms", pos_);
            }
            skip_ws();
        }
        return p;
    }

  private:
    const std::string& s_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
    }

    bool match_minus() {
        if (pos_ < s_.size() && s_[pos_] == '-') {
            ++pos_;
            return true;
        }
        // U+2212 MINUS SIGN (three UTF-8 bytes)
        if (pos_ + 2 < s_.size() && static_cast<unsigned char>(s_[pos_]) == 0xE2 &&
            static_cast<unsigned char>(s_[pos_ + 1]) == 0x88 &&
            static_cast<unsigned char>(s_[pos_ + 2]) == 0x92) {
            pos_ += 3;
            return true;
        }
        return false;
    }

    bool consume_sign() {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '+') {
            ++pos_;
            skip_ws();
            return false;
        }
        if (match_minus()) {
            skip_ws();
            return true;
        }
        return false;
    }

    mpz_class integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError("expected digits", pos_);
        return mpz_class(s_.substr(start, pos_ - start));
    }

    Rational unsigned_rational() {
        mpz_class n = integer();
        mpz_class d = 1;
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            d = integer();
            if (d == 0) throw ParseError("zero denominator", pos_);
        }
        Rational r(n, d);
        r.canonicalize();
        return r;
    }

    Rational signed_rational() {
        bool neg = false;
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '+') {
            ++pos_;
        } else if (match_minus()) {
            neg = true;
        }
        Rational r = unsigned_rational();
        return neg ? Rational(-r) : r;
    }

    // exponent as quarter units; accepts "(r)" or bare "r"
    Exp exponent() {
        skip_ws();
        Rational r;
        if (pos_ < s_.size() && s_[pos_] == '(') {
            ++pos_;
            r = signed_rational();
            skip_ws();
            if (pos_ >= s_.size() || s_[pos_] != ')')
                throw ParseError("expected ')' after exponent", pos_);
            ++pos_;
        } else {
            r = signed_rational();
        }
        Rational quarters = r * 4;
        if (quarters.get_den() != 1)
            throw ParseError("exponent off the quarter-integer grid", pos_);
        if (!quarters.get_num().fits_slong_p())
            throw ParseError("exponent out of range", pos_);
        return quarters.get_num().get_si();
    }

    void term(LaurentPoly& p, bool neg) {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError("expected a term", pos_);
        Rational coeff = 1;
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            coeff = unsigned_rational();
            have_coeff = true;
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '*') {
                ++pos_;
                skip_ws();
            } else if (pos_ < s_.size() && s_[pos_] == 'q') {
                throw ParseError("expected '*' between coefficient and q", pos_);
            }
        }
        Exp e = 0;
        if (pos_ < s_.size() && s_[pos_] == 'q') {
            ++pos_;
            if (pos_ < s_.size() && s_[pos_] == '^') {
                ++pos_;
                if (pos_ < s_.size() && s_[pos_] == '^')
                    throw ParseError("duplicated '^'", pos_);
                e = exponent();
            } else {
                e = 4;
            }
        } else if (!have_coeff) {
            throw ParseError("expected coefficient or q-power", pos_);
        }
        if (neg) coeff = -coeff;
        p += LaurentPoly::monomial(coeff, e);
    }
};

}  // namespace detail

inline LaurentPoly LaurentPoly::parse(const std::string& text) {
    detail::PolyParser parser(text);
    LaurentPoly p = parser.run();
    // canonical zero: "0" parses to one term with coefficient 0, already pruned
    return p;
}

}  // namespace mcj
