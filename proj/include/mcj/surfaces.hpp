#pragma once
// The surface catalog for the [2,1,4] two-bridge link presentation of the
// Mazur pattern: seven weighted branched-surface families, weight solving for
// a target boundary slope, glued-surface arithmetic, and verification of the
// Euler-characteristic/boundary ratio against predicted degree data.
//
// Coordinate conventions.  Catalog slopes and boundary counts come in pairs
// indexed by the two link components.  A satellite-oriented record designates
// one component as the pattern boundary (the satellite torus T_M) and the
// other as the companion boundary (T_K).  Slopes on the companion side are
// converted to solid-torus coordinates by inversion p/q -> q/p, because the
// preferred meridian-longitude pair of the solid torus is the longitude-
// meridian pair of the removed component.  Which component plays which role
// is a choice made per weight-solving case, never a global convention, and is
// recorded in the SurfaceRecord.

#include <mcj/degrees.hpp>
#include <mcj/errors.hpp>
#include <mcj/laurent.hpp>

#include <array>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>

namespace mcj {

// -------------------------------------------------------------------------
// Catalog rows
// -------------------------------------------------------------------------

enum class SurfacePath { Gamma1, Gamma2, Gamma3, Gamma4, Gamma5, Gamma6, Gamma7 };

inline std::string to_string(SurfacePath p) {
    return "gamma_" + std::to_string(static_cast<int>(p) + 1);
}

// A boundary-slope entry: a finite rational slope, a meridian (the surface
// meets the component in meridional circles), or no intersection at all.
struct SlopeEntry {
    enum class Kind { Finite, Meridian, Disjoint };
    Kind kind = Kind::Finite;
    Rational value;  // meaningful only when kind == Finite

    static SlopeEntry finite(const Rational& v) { return {Kind::Finite, v}; }
    static SlopeEntry meridian() { return {Kind::Meridian, Rational()}; }
    static SlopeEntry disjoint() { return {Kind::Disjoint, Rational()}; }

    bool is_finite() const { return kind == Kind::Finite; }
    bool operator==(const SlopeEntry& o) const {
        return kind == o.kind && (kind != Kind::Finite || value == o.value);
    }

    // Solid-torus view of a companion-side slope: p/q -> q/p.
    SlopeEntry inverted() const {
        switch (kind) {
            case Kind::Disjoint: return disjoint();
            case Kind::Meridian: return finite(Rational(0));
            case Kind::Finite:
                if (value == 0) return meridian();
                return finite(1 / value);
        }
        return disjoint();  // unreachable
    }

    std::string render() const {
        switch (kind) {
            case Kind::Finite: return rational_str(value);
            case Kind::Meridian: return "meridian";
            case Kind::Disjoint: return "disjoint";
        }
        return "";
    }
};

namespace detail {

// Closed forms of one catalog row.  Slopes are u*(beta/alpha) + v on the
// first component and u*(alpha/beta) + v on the second (or constants);
// boundary counts are gcd(mult*other, weight) or a bare weight.
struct SlopeForm {
    enum class Kind { BetaOverAlpha, AlphaOverBeta, Constant };
    Kind kind;
    long long u = 0, v = 0;
};

struct CountForm {
    enum class Kind { GcdBetaAlpha, GcdAlphaBeta, Alpha, Beta };
    Kind kind;
    long long mult = 1;  // gcd(mult * <other weight>, <weight>)
};

struct CatalogRow {
    const char* word;
    long long chi_alpha, chi_beta;  // chi = chi_alpha * alpha + chi_beta * beta
    SlopeForm slope_1, slope_2;
    CountForm count_1, count_2;
};

inline const std::array<CatalogRow, 7>& catalog_rows() {
    using SK = SlopeForm::Kind;
    using CK = CountForm::Kind;
    static const std::array<CatalogRow, 7> rows = {{
        {"ADAADAADA", -2, -2, {SK::BetaOverAlpha, 3, 0}, {SK::AlphaOverBeta, 3, 0},
         {CK::GcdBetaAlpha, 3}, {CK::GcdAlphaBeta, 3}},
        {"ADAADDA", -2, 0, {SK::BetaOverAlpha, -1, 0}, {SK::AlphaOverBeta, -1, 0},
         {CK::GcdBetaAlpha, 1}, {CK::GcdAlphaBeta, 1}},
        {"ADAABBA", -1, -1, {SK::BetaOverAlpha, 1, -2}, {SK::AlphaOverBeta, 1, -2},
         {CK::GcdBetaAlpha, 1}, {CK::GcdAlphaBeta, 1}},
        {"ADAADAADA", -2, -2, {SK::BetaOverAlpha, 1, 0}, {SK::AlphaOverBeta, 1, 0},
         {CK::GcdBetaAlpha, 1}, {CK::GcdAlphaBeta, 1}},
        {"ADCDDA", -2, 1, {SK::BetaOverAlpha, -3, 0}, {SK::AlphaOverBeta, -3, -2},
         {CK::GcdBetaAlpha, 3}, {CK::GcdAlphaBeta, 3}},
        {"ADCBBA", -1, 0, {SK::BetaOverAlpha, -1, -2}, {SK::AlphaOverBeta, -1, -4},
         {CK::GcdBetaAlpha, 1}, {CK::GcdAlphaBeta, 1}},
        {"ABBCBBA", -1, 0, {SK::Constant, 0, -5}, {SK::Constant, 0, -3},
         {CK::Alpha, 1}, {CK::Beta, 1}},
    }};
    return rows;
}

inline long long eval_count(const CountForm& f, long long alpha, long long beta) {
    switch (f.kind) {
        case CountForm::Kind::GcdBetaAlpha: return std::gcd(f.mult * beta, alpha);
        case CountForm::Kind::GcdAlphaBeta: return std::gcd(f.mult * alpha, beta);
        case CountForm::Kind::Alpha: return alpha;
        case CountForm::Kind::Beta: return beta;
    }
    return 0;
}

inline SlopeEntry eval_slope(const SlopeForm& f, long long alpha, long long beta,
                             long long count) {
    if (count == 0) return SlopeEntry::disjoint();
    switch (f.kind) {
        case SlopeForm::Kind::Constant:
            return SlopeEntry::finite(Rational(static_cast<long>(f.v)));
        case SlopeForm::Kind::BetaOverAlpha:
            if (alpha == 0) return SlopeEntry::meridian();
            return SlopeEntry::finite(make_rational(f.u * beta, alpha) +
                                      Rational(static_cast<long>(f.v)));
        case SlopeForm::Kind::AlphaOverBeta:
            if (beta == 0) return SlopeEntry::meridian();
            return SlopeEntry::finite(make_rational(f.u * alpha, beta) +
                                      Rational(static_cast<long>(f.v)));
    }
    return SlopeEntry::disjoint();
}

}  // namespace detail

// -------------------------------------------------------------------------
// Weighted surfaces
// -------------------------------------------------------------------------

struct SurfaceRecord {
    SurfacePath path = SurfacePath::Gamma1;
    std::string branch_pattern;
    long long alpha = 0, beta = 0;  // normalized so alpha >= beta
    bool swapped = false;           // inputs had alpha < beta; pairs exchanged
    long long chi = 0;
    SlopeEntry slope_1, slope_2;    // per link component, canonical framings
    long long count_1 = 0, count_2 = 0;

    // Satellite orientation, set by solve_weights: which component is the
    // pattern boundary T_M (the other is the companion boundary T_K).
    // 0 means the record is a plain catalog entry with no designated role.
    int pattern_component = 0;
    std::optional<Rational> torus_slope;      // slope on T_K, solid-torus coords
    std::optional<SlopeEntry> satellite_slope;  // slope on T_M

    long long count_on_pattern() const { return pattern_component == 1 ? count_1 : count_2; }
    long long count_on_companion() const { return pattern_component == 1 ? count_2 : count_1; }

    std::string render() const {
        std::ostringstream out;
        out << to_string(path) << " [" << branch_pattern << "]  (alpha, beta) = (" << alpha
            << ", " << beta << ")";
        if (swapped) out << " [components exchanged]";
        out << "\n  chi = " << chi << "\n  slopes (" << slope_1.render() << ", "
            << slope_2.render() << ")\n  boundary counts (" << count_1 << ", " << count_2
            << ")\n";
        if (pattern_component != 0) {
            out << "  pattern boundary on component " << pattern_component << ": slope "
                << satellite_slope->render() << ", companion-side slope "
                << rational_str(*torus_slope) << "\n";
        }
        return out.str();
    }
};

inline SurfaceRecord catalog_eval(SurfacePath path, long long alpha, long long beta) {
    if (alpha < 0 || beta < 0 || (alpha == 0 && beta == 0))
        throw InvalidWeights("surface weights must be nonnegative and not both zero (got " +
                             std::to_string(alpha) + ", " + std::to_string(beta) + ")");
    SurfaceRecord rec;
    rec.path = path;
    rec.swapped = alpha < beta;
    rec.alpha = rec.swapped ? beta : alpha;
    rec.beta = rec.swapped ? alpha : beta;

    const detail::CatalogRow& row =
        detail::catalog_rows()[static_cast<std::size_t>(static_cast<int>(path))];
    rec.branch_pattern = row.word;
    rec.chi = row.chi_alpha * rec.alpha + row.chi_beta * rec.beta;
    const long long c1 = detail::eval_count(row.count_1, rec.alpha, rec.beta);
    const long long c2 = detail::eval_count(row.count_2, rec.alpha, rec.beta);
    const SlopeEntry s1 = detail::eval_slope(row.slope_1, rec.alpha, rec.beta, c1);
    const SlopeEntry s2 = detail::eval_slope(row.slope_2, rec.alpha, rec.beta, c2);
    // Exchanging the components exchanges both pairs.
    rec.count_1 = rec.swapped ? c2 : c1;
    rec.count_2 = rec.swapped ? c1 : c2;
    rec.slope_1 = rec.swapped ? s2 : s1;
    rec.slope_2 = rec.swapped ? s1 : s2;
    return rec;
}

// -------------------------------------------------------------------------
// Weight solving
// -------------------------------------------------------------------------

// Chooses a catalog path and even weights realizing the target slope 4a on
// the companion boundary, per branch of the degree analysis:
//
//   max side, a >= 1/12:        gamma_1 with (alpha, beta) = (24r, 2s),
//                               pattern boundary on component 2
//   max side, 0 < a < 1/12:     gamma_1 with (alpha, beta) = (2s, 24r),
//                               pattern boundary on component 1
//   max side, -1/4 <= a <= 0:   gamma_2 with (alpha, beta) = (2s, -8r),
//                               pattern boundary on component 1
//   max side, a < -1/4:         no catalog surface (see addendum_check)
//   min side, a* >= -1/12:      gamma_7 with (alpha, beta) = (2, 0),
//                               disjoint from the companion boundary
//   min side, a* < -1/12:       gamma_5 with (alpha, beta) = (-24r, 2s),
//                               pattern boundary on component 2
//
// Weights are even so that the carried surface is orientable.
inline SurfaceRecord solve_weights(const Rational& a, DegreeSide side) {
    const long long r = static_cast<long long>(a.get_num().get_si());
    const long long s = static_cast<long long>(a.get_den().get_si());

    SurfaceRecord rec;
    if (side == DegreeSide::Max) {
        if (a >= make_rational(1, 12)) {
            rec = catalog_eval(SurfacePath::Gamma1, 24 * r, 2 * s);
            rec.pattern_component = 2;
        } else if (a > 0) {
            rec = catalog_eval(SurfacePath::Gamma1, 2 * s, 24 * r);
            rec.pattern_component = 1;
        } else if (a >= make_rational(-1, 4)) {
            rec = catalog_eval(SurfacePath::Gamma2, 2 * s, -8 * r);
            rec.pattern_component = 1;
        } else {
            throw NoCatalogSurface("no catalog surface realizes a maximum-side slope with a < -1/4 "
                                   "(a = " + rational_str(a) + ")");
        }
    } else {
        if (a >= make_rational(-1, 12)) {
            rec = catalog_eval(SurfacePath::Gamma7, 2, 0);
            rec.pattern_component = 1;
        } else {
            rec = catalog_eval(SurfacePath::Gamma5, -24 * r, 2 * s);
            rec.pattern_component = 2;
        }
    }

    const SlopeEntry& pattern_slope =
        rec.pattern_component == 1 ? rec.slope_1 : rec.slope_2;
    const SlopeEntry& companion_slope =
        rec.pattern_component == 1 ? rec.slope_2 : rec.slope_1;
    rec.satellite_slope = pattern_slope;
    if (rec.path == SurfacePath::Gamma7) {
        rec.torus_slope = Rational();  // disjoint; no companion-side slope
    } else {
        const SlopeEntry inv = companion_slope.inverted();
        rec.torus_slope = inv.value;
        if (!inv.is_finite() || inv.value != 4 * a)
            throw NoCatalogSurface("internal: solved weights do not realize the slope 4a");
    }
    return rec;
}

// -------------------------------------------------------------------------
// Companion certificates and glued surfaces
// -------------------------------------------------------------------------

// Arithmetic data of a companion Jones surface: boundary slope 4a = p/q
// reduced, Euler characteristic, and boundary-component count, satisfying the
// ratio relation chi / (|dF| q) = 2b (maximum side) or -2b* (minimum side).
struct JonesSurfaceCertificate {
    Rational slope;       // 4a, reduced
    long long q = 1;      // denominator of the reduced slope: s / gcd(4, s)
    Rational chi;
    long long boundary_count = 1;
    DegreeSide side = DegreeSide::Max;
    Rational a, b;  // the quadratic and linear degree coefficients certified

    std::string render() const {
        std::ostringstream out;
        out << "companion surface: slope " << rational_str(slope) << " (q = " << q
            << "), chi = " << rational_str(chi) << ", |boundary| = " << boundary_count;
        return out.str();
    }
};

// Builds the minimal consistent certificate for degree coefficients (a, b):
// chi is back-solved from the ratio relation.
inline JonesSurfaceCertificate make_certificate(const Rational& a, const Rational& b,
                                                long long boundary_count, DegreeSide side) {
    if (boundary_count <= 0)
        throw InvalidWeights("certificate boundary count must be positive");
    JonesSurfaceCertificate cert;
    cert.side = side;
    cert.a = a;
    cert.b = b;
    cert.slope = 4 * a;
    const long long s = static_cast<long long>(a.get_den().get_si());
    cert.q = s / std::gcd(4LL, s);
    cert.boundary_count = boundary_count;
    const Rational ratio = side == DegreeSide::Max ? 2 * b : -2 * b;
    cert.chi = ratio * Rational(static_cast<long>(boundary_count)) *
               Rational(static_cast<long>(cert.q));
    return cert;
}

struct GluedSurface {
    long long m = 0;  // copies of the companion surface
    long long n = 1;  // copies of the pattern surface
    Rational chi;
    long long boundary_count = 0;
    SlopeEntry slope;   // on the satellite boundary
    long long q = 1;    // denominator of that slope
    Rational ratio;     // chi / (boundary_count * q)
};

struct SSCVerdict {
    GluedSurface glued;
    Rational expected;  // predicted 2b_M (max side) or -2b*_M (min side)
    bool verified = false;

    std::string render() const {
        std::ostringstream out;
        out << "glued surface: " << glued.m << " companion + " << glued.n
            << " pattern copies, chi = " << rational_str(glued.chi) << ", |boundary| = "
            << glued.boundary_count << ", slope " << glued.slope.render() << " (q = " << glued.q
            << ")\n  ratio = " << rational_str(glued.ratio) << ", expected "
            << rational_str(expected) << (verified ? "  [verified]" : "  [MISMATCH]") << "\n";
        return out.str();
    }
};

// Glues m companion copies to n pattern copies along the companion torus and
// compares the Euler-characteristic/boundary ratio of the result against the
// predicted value.  The pattern record must be satellite-oriented.  A pattern
// disjoint from the companion torus (the gamma_7 family) glues nothing and
// uses the pattern surface alone.
inline SSCVerdict glue_and_verify_SS(const JonesSurfaceCertificate& companion,
                                     const SurfaceRecord& pattern, const Rational& predicted) {
    if (pattern.pattern_component != 1 && pattern.pattern_component != 2)
        throw UnsolvableMatching("pattern record lacks a satellite orientation");
    if (!pattern.satellite_slope->is_finite())
        throw UnsolvableMatching("satellite-boundary slope is not finite");

    SSCVerdict verdict;
    GluedSurface& g = verdict.glued;
    const long long on_companion = pattern.count_on_companion();
    if (on_companion == 0) {
        g.m = 0;
        g.n = 1;
    } else {
        if (companion.boundary_count <= 0)
            throw UnsolvableMatching("companion surface has no boundary to glue");
        if (companion.slope != *pattern.torus_slope)
            throw UnsolvableMatching("companion slope " + rational_str(companion.slope) +
                                     " does not match the pattern's companion-side slope " +
                                     rational_str(*pattern.torus_slope));
        const long long common = std::gcd(companion.boundary_count, on_companion);
        g.m = on_companion / common;
        g.n = companion.boundary_count / common;
    }

    g.chi = Rational(static_cast<long>(g.m)) * companion.chi +
            Rational(static_cast<long>(g.n)) * Rational(static_cast<long>(pattern.chi));
    g.boundary_count = g.n * pattern.count_on_pattern();
    g.slope = *pattern.satellite_slope;
    g.q = static_cast<long long>(g.slope.value.get_den().get_si());
    g.ratio = g.chi / (Rational(static_cast<long>(g.boundary_count)) *
                       Rational(static_cast<long>(g.q)));
    verdict.expected = predicted;
    verdict.verified = g.ratio == predicted;
    return verdict;
}

// -------------------------------------------------------------------------
// The steep max-side regime
// -------------------------------------------------------------------------

// For a < -1/4 the only catalog family with reciprocal slope pair under
// inversion glues to a ratio of 2b + 8a, while the degree analysis demands
// 2b - 2.  The two agree only at a = -1/4, so strictly below that boundary a
// glued catalog surface can never certify the predicted ratio.
struct AddendumReport {
    Rational glued_ratio;      // 2b + 8a via the glue pipeline
    Rational predicted_ratio;  // 2b - 2 from the degree analysis
    bool contradiction = false;

    std::string render() const {
        std::ostringstream out;
        out << "glued ratio " << rational_str(glued_ratio) << " vs predicted "
            << rational_str(predicted_ratio)
            << (contradiction ? ": contradiction (no glued catalog surface certifies the ratio)"
                              : ": consistent (boundary case)")
            << "\n";
        return out.str();
    }
};

inline AddendumReport addendum_check(const Rational& a, const Rational& b) {
    if (a > make_rational(-1, 4))
        throw OutOfRegime("the steep-regime analysis needs a <= -1/4 (a = " + rational_str(a) +
                          ")");
    const long long r = static_cast<long long>(a.get_num().get_si());
    const long long s = static_cast<long long>(a.get_den().get_si());

    SurfaceRecord rec = catalog_eval(SurfacePath::Gamma2, -8 * r, 2 * s);
    rec.pattern_component = 2;
    rec.satellite_slope = rec.slope_2;
    rec.torus_slope = rec.slope_1.inverted().value;

    JonesSurfaceCertificate cert = make_certificate(a, b, 1, DegreeSide::Max);
    const Rational predicted = 2 * b - 2;
    SSCVerdict verdict = glue_and_verify_SS(cert, rec, predicted);

    AddendumReport report;
    report.glued_ratio = verdict.glued.ratio;
    report.predicted_ratio = predicted;
    report.contradiction = !verdict.verified;
    return report;
}

}  // namespace mcj
