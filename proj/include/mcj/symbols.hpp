#pragma once

// Quantum integers, factorials, loop values, theta and tetrahedral network
// symbols, half-twist coefficients, and their closed-form degree predictions.
//
// Conventions: [n] = (q^(n/2) - q^(-n/2)) / (q^(1/2) - q^(-1/2)) expanded as a
// Laurent polynomial, <n> = (-1)^n [n+1].  Theta and tet values are ratios of
// products of quantum factorials; they are genuinely fractional for some
// admissible inputs (e.g. tet with all labels 2 has a pole at q = -1), so the
// public evaluators return canonical LaurentFraction values.

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mcj/errors.hpp"
#include "mcj/laurent.hpp"

namespace mcj {

using Color = long long;

inline bool is_admissible(Color s, Color t, Color u) {
    if (s < 0 || t < 0 || u < 0) return false;
    if ((s + t + u) % 2 != 0) return false;
    const Color lo = s > t ? s - t : t - s;
    return lo <= u && u <= s + t;
}

// Triple of edge colors meeting at a trivalent vertex.
struct AdmissibleTriple {
    Color s, t, u;

    AdmissibleTriple(Color s_, Color t_, Color u_) : s(s_), t(t_), u(u_) {
        if (!is_admissible(s, t, u)) {
            throw Inadmissible("inadmissible triple (" + std::to_string(s) + ", " +
                               std::to_string(t) + ", " + std::to_string(u) + ")");
        }
    }
};

// Labels of the tetrahedral symbol displayed as <[A B E; D C F]> (top row
// A, B, E; bottom row D, C, F).  Construction validates admissibility of all
// four faces: the four vertex sums must be even and max a_j <= min b_i.
struct TetLabels {
    Color A, B, C, D, E, F;
    std::array<Color, 4> a;  // half vertex sums
    std::array<Color, 3> b;  // half "square" sums
    Color Sigma;
    Color M;  // min b_i

    TetLabels(Color A_, Color B_, Color C_, Color D_, Color E_, Color F_)
        : A(A_), B(B_), C(C_), D(D_), E(E_), F(F_) {
        for (Color lab : {A, B, C, D, E, F}) {
            if (lab < 0) throw Inadmissible("negative tetrahedral label");
        }
        const Color v1 = A + B + E, v2 = B + D + F, v3 = C + D + E, v4 = A + C + F;
        if (v1 % 2 || v2 % 2 || v3 % 2 || v4 % 2) {
            throw Inadmissible("tetrahedral vertex sum is odd: " + describe());
        }
        a = {v1 / 2, v2 / 2, v3 / 2, v4 / 2};
        Sigma = A + B + C + D + E + F;
        b = {(Sigma - A - D) / 2, (Sigma - E - F) / 2, (Sigma - B - C) / 2};
        M = *std::min_element(b.begin(), b.end());
        if (*std::max_element(a.begin(), a.end()) > M) {
            throw Inadmissible("empty tetrahedral summation range: " + describe());
        }
    }

    // Display-order factory: rows(top1, top2, top3, bot1, bot2, bot3).
    static TetLabels rows(Color t1, Color t2, Color t3, Color b1, Color b2, Color b3) {
        return TetLabels(t1, t2, b2, b1, t3, b3);
    }

    std::array<Color, 6> key() const { return {A, B, C, D, E, F}; }

    std::string describe() const {
        return "<[" + std::to_string(A) + " " + std::to_string(B) + " " + std::to_string(E) +
               "; " + std::to_string(D) + " " + std::to_string(C) + " " + std::to_string(F) +
               "]>";
    }
};

// ---------------------------------------------------------------------------
// Quantum integers and factorials (memoized, safe for concurrent use).

inline LaurentPoly quantum_integer(Color m) {
    if (m < 0) throw Inadmissible("quantum integer of negative index");
    static std::mutex mu;
    static std::vector<LaurentPoly> cache{LaurentPoly::zero(), LaurentPoly::one()};
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<Color>(cache.size()) <= m) {
        const Color n = static_cast<Color>(cache.size());
        LaurentPoly p;
        for (Color t = 0; t < n; ++t) {
            p += LaurentPoly::monomial(1, 2 * (n - 1) - 4 * t);
        }
        cache.push_back(std::move(p));
    }
    return cache[static_cast<std::size_t>(m)];
}

inline LaurentPoly quantum_factorial(Color m) {
    if (m < 0) throw Inadmissible("quantum factorial of negative index");
    static std::mutex mu;
    static std::vector<LaurentPoly> cache{LaurentPoly::one()};
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<Color>(cache.size()) <= m) {
        const Color n = static_cast<Color>(cache.size());
        cache.push_back(cache.back() * quantum_integer(n));
    }
    return cache[static_cast<std::size_t>(m)];
}

// <n> = (-1)^n [n+1].
inline LaurentPoly loop_value(Color n) {
    if (n < 0) throw Inadmissible("loop value of negative color");
    LaurentPoly p = quantum_integer(n + 1);
    return n % 2 ? -p : p;
}

// ([n], [n]!, <n>).
inline std::tuple<LaurentPoly, LaurentPoly, LaurentPoly> quantum_basics(Color n) {
    return {quantum_integer(n), quantum_factorial(n), loop_value(n)};
}

// ---------------------------------------------------------------------------
// Factor vectors: exact factorizations sign * prod_m [m]^e_m * prod(polys).
// The double-sum engine works with these so that all division happens once,
// against a common denominator, at the very end.

namespace detail {

using FactorVector = std::map<Color, long long>;  // m -> exponent of [m]

inline void fv_add_factorial(FactorVector& fv, Color m, long long sgn = 1) {
    for (Color t = 2; t <= m; ++t) fv[t] += sgn;  // [0]! = [1]! = 1
}

inline void fv_add_integer(FactorVector& fv, Color m, long long sgn = 1) {
    if (m >= 2) fv[m] += sgn;
}

inline void fv_merge(FactorVector& fv, const FactorVector& other, long long sgn = 1) {
    for (const auto& [m, e] : other) fv[m] += sgn * e;
}

// Expand into an unreduced (numerator, denominator) pair of polynomials.
inline std::pair<LaurentPoly, LaurentPoly> fv_expand(int sign, const FactorVector& fv,
                                                     const std::vector<LaurentPoly>& polys = {}) {
    LaurentPoly num = LaurentPoly::constant(sign);
    LaurentPoly den = LaurentPoly::one();
    for (const auto& [m, e] : fv) {
        for (long long r = 0; r < (e > 0 ? e : -e); ++r) {
            if (e > 0) {
                num *= quantum_integer(m);
            } else {
                den *= quantum_integer(m);
            }
        }
    }
    for (const auto& p : polys) num *= p;
    return {std::move(num), std::move(den)};
}

// d_{+/-} of sign * prod [m]^e * prod(polys), in q units.  Degrees are
// additive over factors because leading terms of products never cancel.
inline std::pair<Rational, Rational> fv_degree_bounds(const FactorVector& fv,
                                                      const std::vector<LaurentPoly>& polys = {}) {
    Rational top(0);
    for (const auto& [m, e] : fv) {
        top += make_rational(e * (m - 1), 2);
    }
    Rational dm = -top, dp = top;
    for (const auto& p : polys) {
        dm += p.d_minus();
        dp += p.d_plus();
    }
    return {dm, dp};
}

// theta as (sign, factor vector).
inline std::pair<int, FactorVector> theta_factors(const AdmissibleTriple& t) {
    const Color i = (t.t + t.u - t.s) / 2;
    const Color j = (t.u + t.s - t.t) / 2;
    const Color k = (t.s + t.t - t.u) / 2;
    const int sign = (i + j + k) % 2 ? -1 : 1;
    FactorVector fv;
    fv_add_factorial(fv, i + j + k + 1);
    fv_add_factorial(fv, i);
    fv_add_factorial(fv, j);
    fv_add_factorial(fv, k);
    fv_add_factorial(fv, t.s, -1);
    fv_add_factorial(fv, t.t, -1);
    fv_add_factorial(fv, t.u, -1);
    return {sign, std::move(fv)};
}

// tet as (factor vector, alternating core sum S).  Every term of S is an
// exact polynomial: [s+1]! / (prod [b_i-s]! prod [s-a_j]!) is [s+1] times a
// quantum multinomial coefficient (the seven part sizes add up to s).
inline std::pair<FactorVector, LaurentPoly> tet_factors(const TetLabels& l) {
    FactorVector fv;
    for (Color bi : l.b) {
        for (Color aj : l.a) {
            fv_add_factorial(fv, bi - aj);
        }
    }
    for (Color lab : {l.A, l.B, l.C, l.D, l.E, l.F}) {
        fv_add_factorial(fv, lab, -1);
    }
    LaurentPoly S;
    const Color lo = *std::max_element(l.a.begin(), l.a.end());
    for (Color s = lo; s <= l.M; ++s) {
        LaurentPoly den = LaurentPoly::one();
        for (Color bi : l.b) den *= quantum_factorial(bi - s);
        for (Color aj : l.a) den *= quantum_factorial(s - aj);
        const LaurentPoly term = LaurentPoly::exact_div(quantum_factorial(s + 1), den);
        S += s % 2 ? -term : term;
    }
    return {std::move(fv), std::move(S)};
}

// Half-twist coefficient as (sign, exponent in quarter units).
inline std::pair<int, Exp> twist_delta_parts(Color u, Color s, Color t) {
    if (!is_admissible(s, t, u)) {
        throw Inadmissible("inadmissible twist coefficient (" + std::to_string(u) + "; " +
                           std::to_string(s) + ", " + std::to_string(t) + ")");
    }
    const Color num = u * u - s * s - t * t + 2 * u - 2 * s - 2 * t;
    const int sign = ((s + t + u) / 2) % 2 ? -1 : 1;
    return {sign, static_cast<Exp>(-num / 2)};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public evaluators (memoized on integer keys, safe for concurrent use).

inline LaurentFraction theta(const AdmissibleTriple& t) {
    static std::mutex mu;
    static std::map<std::array<Color, 3>, LaurentFraction> cache;
    const std::array<Color, 3> key{t.s, t.t, t.u};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const auto [sign, fv] = detail::theta_factors(t);
    auto [num, den] = detail::fv_expand(sign, fv);
    LaurentFraction value(num, den);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, std::move(value)).first->second;
}

inline LaurentFraction tet(const TetLabels& l) {
    static std::mutex mu;
    static std::map<std::array<Color, 6>, LaurentFraction> cache;
    const auto key = l.key();
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const auto [fv, S] = detail::tet_factors(l);
    auto [num, den] = detail::fv_expand(1, fv, {S});
    LaurentFraction value(num, den);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, std::move(value)).first->second;
}

// delta(u; s, t): single signed monomial on the quarter grid.
inline LaurentPoly twist_delta(Color u, Color s, Color t) {
    const auto [sign, e] = detail::twist_delta_parts(u, s, t);
    return LaurentPoly::monomial(sign, e);
}

inline LaurentPoly twist_delta_inverse(Color u, Color s, Color t) {
    const auto [sign, e] = detail::twist_delta_parts(u, s, t);
    return LaurentPoly::monomial(sign, -e);
}

// ---------------------------------------------------------------------------
// Closed-form degree predictions (q units), without computing the symbol.

// d_{+/-}[<n>] = +/- n/2.
inline std::pair<Rational, Rational> predicted_symbol_degrees(Color n) {
    if (n < 0) throw Inadmissible("loop value of negative color");
    const Rational d = make_rational(n, 2);
    return {-d, d};
}

// d_{+/-}[theta(s,t,u)] = +/- (s+t+u)/4.
inline std::pair<Rational, Rational> predicted_symbol_degrees(const AdmissibleTriple& t) {
    const Rational d = make_rational(t.s + t.t + t.u, 4);
    return {-d, d};
}

// d_{+/-}[tet] from the closed-form lemma, including the M = min b_i part.
inline std::pair<Rational, Rational> predicted_symbol_degrees(const TetLabels& l) {
    const Color sq = l.A * l.A + l.B * l.B + l.C * l.C + l.D * l.D + l.E * l.E + l.F * l.F;
    Rational val(0);
    val += -Rational(static_cast<long>(l.Sigma * l.Sigma));
    val -= make_rational(sq - l.Sigma, 2);
    Color bsum = 0;
    for (Color bi : l.b) bsum += bi * (bi - 1);
    val += make_rational(3 * bsum, 2);
    for (Color aj : l.a) val += Rational(static_cast<long>(aj * (aj + 1)));
    val += Rational(static_cast<long>(-3 * l.M * l.M + l.M * (1 + 2 * l.Sigma)));
    const Rational d = val / 2;
    return {-d, d};
}

}  // namespace mcj
