#pragma once
// The satellite double sum: exact normalized colored Jones polynomials of
// Mazur doubles, the per-term degree formulas, normalization transitions on
// polynomial sequences, leading-sign bookkeeping, and verification of the
// degree predictions against the assembled polynomials.

#include <mcj/degrees.hpp>
#include <mcj/errors.hpp>
#include <mcj/knotdata.hpp>
#include <mcj/laurent.hpp>
#include <mcj/symbols.hpp>

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace mcj {

// -------------------------------------------------------------------------
// Term indices
// -------------------------------------------------------------------------

// Index of one term g(j, k, l) of the double sum at color n.
struct MazurTermIndex {
    long long j, k, l, n;

    MazurTermIndex(long long j_, long long k_, long long l_, long long n_)
        : j(j_), k(k_), l(l_), n(n_) {
        if (!valid(j, k, l, n))
            throw Inadmissible("inadmissible double-sum index (j=" + std::to_string(j) +
                               ", k=" + std::to_string(k) + ", l=" + std::to_string(l) +
                               "; n=" + std::to_string(n) + ")");
    }

    static bool valid(long long j, long long k, long long l, long long n) {
        if (n < 0 || j < 0 || k < 0 || l < 0) return false;
        if (j > n || k > n || j > 2 * k) return false;
        const long long lo = std::llabs(2 * k - n);
        return lo <= l && l <= 2 * k + n && (n + l) % 2 == 0;
    }
};

// Every valid index at color n, in (k, j, l) loop order.
inline std::vector<MazurTermIndex> mazur_indices(long long n) {
    std::vector<MazurTermIndex> out;
    for (long long k = 0; k <= n; ++k)
        for (long long j = 0; j <= std::min(n, 2 * k); ++j)
            for (long long l = std::llabs(2 * k - n); l <= 2 * k + n; l += 2)
                out.emplace_back(j, k, l, n);
    return out;
}

// -------------------------------------------------------------------------
// g-terms
// -------------------------------------------------------------------------

namespace detail {

// One g-term in factored form: sign * q^(mono/4) * prod [m]^fv[m] * prod polys.
struct GTermParts {
    int sign = 1;
    Exp mono = 0;
    FactorVector fv;
    std::vector<LaurentPoly> polys;
};

inline GTermParts g_term_parts(const MazurTermIndex& idx, const LaurentPoly& jl) {
    const long long n = idx.n, j = idx.j, k = idx.k, l = idx.l;
    GTermParts t;

    // <2k> / theta(n, n, 2k)
    fv_add_integer(t.fv, 2 * k + 1);
    {
        const auto [s, f] = theta_factors(AdmissibleTriple(n, n, 2 * k));
        t.sign *= s;
        fv_merge(t.fv, f, -1);
    }
    // <2j> / theta(n, n, 2j)
    fv_add_integer(t.fv, 2 * j + 1);
    {
        const auto [s, f] = theta_factors(AdmissibleTriple(n, n, 2 * j));
        t.sign *= s;
        fv_merge(t.fv, f, -1);
    }
    // tet(2k, 2k, 2j; n, n, n) / theta(2k, 2k, 2j)
    {
        const auto [f, core] = tet_factors(TetLabels::rows(2 * k, 2 * k, 2 * j, n, n, n));
        fv_merge(t.fv, f);
        t.polys.push_back(core);
        const auto [s, ft] = theta_factors(AdmissibleTriple(2 * k, 2 * k, 2 * j));
        t.sign *= s;
        fv_merge(t.fv, ft, -1);
    }
    // delta(2j; n, n)^2 / delta(2k; n, n): the squared sign drops out and the
    // inverse of the remaining sign equals itself.
    {
        const auto [sj, ej] = twist_delta_parts(2 * j, n, n);
        const auto [sk, ek] = twist_delta_parts(2 * k, n, n);
        (void)sj;
        t.mono += 2 * ej - ek;
        t.sign *= sk;
    }
    // framing correction q^(-(3/4) n (n+2))
    t.mono += -3 * n * (n + 2);
    // <l> / theta(2k, n, l)
    if (l % 2) t.sign = -t.sign;
    fv_add_integer(t.fv, l + 1);
    {
        const auto [s, f] = theta_factors(AdmissibleTriple(2 * k, n, l));
        t.sign *= s;
        fv_merge(t.fv, f, -1);
    }
    // tet(2k, 2k, 2j; n, n, l)
    {
        const auto [f, core] = tet_factors(TetLabels::rows(2 * k, 2 * k, 2 * j, n, n, l));
        fv_merge(t.fv, f);
        t.polys.push_back(core);
    }
    // companion factor J'_{K, l}
    t.polys.push_back(jl);
    return t;
}

inline std::vector<GTermParts> collect_g_terms(const KnotProfile& K, long long n) {
    std::vector<GTermParts> terms;
    for (const MazurTermIndex& idx : mazur_indices(n))
        terms.push_back(g_term_parts(idx, provider_eval(K, idx.l)));
    return terms;
}

// Clears every negative [m]-exponent against the common denominator
// prod [m]^(D_m), sums, and divides once by prod [m]^(D_m) * [n+1].
inline LaurentPoly assemble_mazur_sum(const std::vector<GTermParts>& terms, long long n) {
    FactorVector common;  // m -> D_m = max over terms of -e_m
    for (const GTermParts& t : terms)
        for (const auto& [m, e] : t.fv)
            if (e < 0 && -e > common[m]) common[m] = -e;

    LaurentPoly total;
    for (const GTermParts& t : terms) {
        LaurentPoly p = LaurentPoly::monomial(t.sign, t.mono);
        for (const auto& [m, d] : common) {
            auto it = t.fv.find(m);
            const long long e = d + (it == t.fv.end() ? 0 : it->second);
            for (long long r = 0; r < e; ++r) p *= quantum_integer(m);
        }
        for (const auto& [m, e] : t.fv) {
            if (common.count(m)) continue;  // already applied above
            for (long long r = 0; r < e; ++r) p *= quantum_integer(m);
        }
        for (const LaurentPoly& poly : t.polys) p *= poly;
        total += p;
    }

    LaurentPoly den = quantum_integer(n + 1);
    for (const auto& [m, d] : common)
        for (long long r = 0; r < d; ++r) den *= quantum_integer(m);
    LaurentPoly result = LaurentPoly::exact_div(total, den);
    if (!result.integer_coefficients())
        throw InexactDivision("assembled satellite sum has non-integer coefficients");
    return result;
}

}  // namespace detail

// g(j, k, l; q) as an exact fraction, including the companion factor J'_{K,l}.
inline LaurentFraction g_term(const MazurTermIndex& idx, const KnotProfile& K) {
    const detail::GTermParts t = detail::g_term_parts(idx, provider_eval(K, idx.l));
    auto [num, den] = detail::fv_expand(t.sign, t.fv, t.polys);
    return LaurentFraction(num.shifted(t.mono), den);
}

// J'_{M(K), n}(q): sums every admissible g-term and strips the normalization
// prefactor exactly.  The companion provider must cover colors up to 3n.
inline LaurentPoly mazur_normalized_cj(const KnotProfile& K, long long n) {
    if (n < 0) throw MissingColor("satellite color must be nonnegative");
    return detail::assemble_mazur_sum(detail::collect_g_terms(K, n), n);
}

// -------------------------------------------------------------------------
// Per-term degree formulas
// -------------------------------------------------------------------------

namespace detail {

// d_+ of tet(2k, 2k, 2j; n, n, l) in closed form (two branches).
inline Rational mazur_tet_top_degree(long long n, long long j, long long k, long long l) {
    if (2 * j <= n - l + 2 * k) return make_rational(2 * j + 2 * k + l + n, 4);
    const long long quad =
        -j * j + 2 * j * k - k * k + 2 * k - j * l + k * l + j * n - k * n;
    return (Rational(static_cast<long>(quad)) + make_rational(-l * l + 2 * n * l - n * n, 4) +
            Rational(static_cast<long>(n))) /
           2;
}

}  // namespace detail

// (d_-, d_+) of g(j, k, l; q) in q units, given the degrees of J'_{K,l}.
inline std::pair<Rational, Rational> predicted_g_degrees(const MazurTermIndex& idx,
                                                         const Rational& jl_d_minus,
                                                         const Rational& jl_d_plus) {
    const long long n = idx.n, j = idx.j, k = idx.k, l = idx.l;
    const Rational base = make_rational(-2 * j - 2 * j * j + k + k * k - 2 * n - n * n, 2);
    const Rational odd =
        Rational(static_cast<long>(-k)) + make_rational(-5 * n, 4) + make_rational(l, 4);
    const Rational tet_l = detail::mazur_tet_top_degree(n, j, k, l);
    const Rational tet_n = detail::mazur_tet_top_degree(n, j, k, n);
    return {base - odd + jl_d_minus - tet_l - tet_n, base + odd + jl_d_plus + tet_l + tet_n};
}

// -------------------------------------------------------------------------
// Normalization transitions on polynomial sequences
// -------------------------------------------------------------------------

// <n> J'_{K,n} = (-1)^n J_{K,n+1}, i.e. J_{K,n+1} = [n+1] J'_{K,n}.
inline LaurentPoly unnormalize_cj(const LaurentPoly& normalized, long long n) {
    if (n < 0) throw MissingColor("color must be nonnegative");
    return normalized * quantum_integer(n + 1);
}

inline LaurentPoly normalize_cj(const LaurentPoly& unnormalized, long long n) {
    if (n < 0) throw MissingColor("color must be nonnegative");
    return LaurentPoly::exact_div(unnormalized, quantum_integer(n + 1));
}

// -------------------------------------------------------------------------
// Leading signs
// -------------------------------------------------------------------------

// Sign of the coefficient of the maximum-degree term.
inline int leading_sign(const LaurentPoly& p) { return p.lead_high() > 0 ? 1 : -1; }

// Window check of the leading-sign relation between a Mazur double and its
// companion.  In the J'-normalization on both sides the relation is
// prefactor-free: the sign of the top term of J'_{M(K),n} equals the sign of
// the top term of J'_{K,3n} on classes with alpha > 0 and of J'_{K,n} on
// classes with alpha <= 0.  (Restoring the <n> prefactors on both sides
// introduces matching factors (-1)^(3n) and (-1)^n.)
struct SignConditionReport {
    long long lo = 0, hi = 0;
    std::vector<long long> colors;            // n over the window
    std::vector<long long> companion_colors;  // 3n or n, by the class branch
    std::vector<int> pattern_signs;           // top sign of J'_{M(K),n}
    std::vector<int> companion_signs;         // top sign of J'_{K, companion}
    bool relation_holds = false;
    bool parity_stable = false;  // pattern signs constant on each residue class

    std::string render() const {
        std::ostringstream out;
        out << "sign condition over n = " << lo << ".." << hi << "\n";
        for (std::size_t i = 0; i < colors.size(); ++i) {
            out << "  n=" << colors[i] << ": sign " << (pattern_signs[i] > 0 ? "+1" : "-1")
                << ", companion color " << companion_colors[i] << " sign "
                << (companion_signs[i] > 0 ? "+1" : "-1") << "\n";
        }
        out << "  relation holds: " << (relation_holds ? "yes" : "no") << "\n";
        out << "  parity stable: " << (parity_stable ? "yes" : "no") << "\n";
        return out.str();
    }
};

inline SignConditionReport check_sign_condition(const KnotProfile& K, long long lo,
                                                long long hi) {
    if (lo < 0 || lo > hi) throw EmptyWindow("sign-condition window is empty");
    KnotProfile knot = K;
    if (!knot.fitted_max()) {
        const long long top = knot.max_color() < 0 ? 7 : std::min<long long>(7, knot.max_color());
        fit_profile_degrees(knot, 0, top);
    }
    const QuasiQuadratic primed_max = to_primed_max(*knot.fitted_max()).widened();

    SignConditionReport report;
    report.lo = lo;
    report.hi = hi;
    for (long long n = lo; n <= hi; ++n) {
        const bool alpha_positive = primed_max.class_for(n).a > 0;
        const long long companion = alpha_positive ? 3 * n : n;
        report.colors.push_back(n);
        report.companion_colors.push_back(companion);
        report.pattern_signs.push_back(leading_sign(mazur_normalized_cj(knot, n)));
        report.companion_signs.push_back(leading_sign(provider_eval(knot, companion)));
    }
    report.relation_holds = report.pattern_signs == report.companion_signs;
    report.parity_stable = true;
    for (std::size_t i = 0; i < report.colors.size(); ++i)
        for (std::size_t m = i + 2; m < report.colors.size(); m += 2)
            if (report.pattern_signs[i] != report.pattern_signs[m]) report.parity_stable = false;
    return report;
}

// -------------------------------------------------------------------------
// Degree-prediction verification
// -------------------------------------------------------------------------

struct VerificationRow {
    long long n = 0;
    Rational computed;
    Rational predicted;
    bool match = false;
};

struct VerificationReport {
    DegreeSide side = DegreeSide::Max;
    long long lo = 0, hi = 0;
    QuasiQuadratic companion_profile;  // fitted unprimed input profile of K
    QuasiQuadratic predicted_profile;  // predicted profile of J'_{M(K),n}
    std::vector<std::string> warnings;
    std::vector<std::string> branches;
    std::vector<VerificationRow> rows;
    long long agreement_onset = -1;  // first n of the all-matching window tail
    bool hypotheses_satisfied = false;

    std::string render() const {
        std::ostringstream out;
        out << "verify " << (side == DegreeSide::Max ? "max" : "min") << " degrees over n = "
            << lo << ".." << hi << "\n";
        out << "  companion profile: " << companion_profile.describe() << "\n";
        out << "  predicted profile: " << predicted_profile.describe() << "\n";
        for (const std::string& b : branches) out << "  branch: " << b << "\n";
        for (const VerificationRow& r : rows) {
            out << "  n=" << r.n << ": computed " << rational_str(r.computed) << ", predicted "
                << rational_str(r.predicted) << (r.match ? "" : "  << mismatch") << "\n";
        }
        if (agreement_onset >= 0) {
            out << "  agreement onset: " << agreement_onset << "\n";
        } else {
            out << "  agreement onset: none within window\n";
        }
        if (!hypotheses_satisfied) {
            out << "  hypothesis flags (prediction out of scope, not a failure):\n";
            for (const std::string& w : warnings) out << "    - " << w << "\n";
        }
        return out.str();
    }
};

inline VerificationReport verify_prediction(const KnotProfile& K, DegreeSide side, long long lo,
                                            long long hi) {
    if (lo < 0 || lo > hi) throw EmptyWindow("verification window is empty");
    KnotProfile knot = K;
    if (!knot.fitted_max() || !knot.fitted_min()) {
        const long long top = knot.max_color() < 0 ? 7 : std::min<long long>(7, knot.max_color());
        fit_profile_degrees(knot, 0, top);
    }

    VerificationReport report;
    report.side = side;
    report.lo = lo;
    report.hi = hi;
    if (side == DegreeSide::Max) {
        report.companion_profile = *knot.fitted_max();
        MaxPrediction p = predict_max(report.companion_profile);
        report.predicted_profile = to_primed_max(p.predicted);
        report.warnings = p.warnings;
        report.branches = p.branches;
    } else {
        report.companion_profile = *knot.fitted_min();
        MinPrediction p = predict_min(report.companion_profile);
        report.predicted_profile = to_primed_min(p.predicted);
        report.warnings = p.warnings;
        report.branches = p.branches;
    }
    report.hypotheses_satisfied = report.warnings.empty();

    for (long long n = lo; n <= hi; ++n) {
        const LaurentPoly jp = mazur_normalized_cj(knot, n);
        VerificationRow row;
        row.n = n;
        row.computed = side == DegreeSide::Max ? jp.d_plus() : jp.d_minus();
        row.predicted = report.predicted_profile.eval(n);
        row.match = row.computed == row.predicted;
        report.rows.push_back(row);
    }
    for (auto it = report.rows.rbegin(); it != report.rows.rend() && it->match; ++it)
        report.agreement_onset = it->n;
    return report;
}

}  // namespace mcj
