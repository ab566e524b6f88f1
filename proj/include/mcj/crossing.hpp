#pragma once
// Jones-diameter arithmetic for Mazur doubles: the spread between the fitted
// max- and min-degree slopes, the doubling relation dj_M = 9*dj_K + 2, the
// crossing-number window it forces on the double, and the A-adequacy
// coefficient test.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mcj/degrees.hpp"
#include "mcj/errors.hpp"
#include "mcj/knotdata.hpp"

namespace mcj {

// -------------------------------------------------------------------------
// A-adequacy coefficient test
// -------------------------------------------------------------------------

// Outcome of the coefficient test applied to a double's minimum-degree
// profile.  The companion's reduced diagram selects the branch: steep when it
// has negative crossings (c_- > 0, so a* <= -1/2), shallow when c_- = 0 (so
// a* = 0).  `obstruction_sums` holds the branch's documented coefficient-sum
// defect, computed from the companion's state data: the steep branch adds one
// half to the (vanishing) adequate baseline sum, the shallow branch yields
// {-1/2, b* - 3/4} for the two residue classes.  An A-adequate knot's profile
// has a single class summing to zero, so a nonzero or non-integral entry
// excludes A-adequacy of the double.  `profile_sums` lists the literal
// per-class coefficient sums of the supplied profile for reference; the class
// covering color 1 sums to zero whenever the profile is valid there, because
// the color-1 polynomial of every knot is 1.
struct AdequacyVerdict {
    bool steep_branch = false;               // companion diagram has c_- > 0
    Rational adequate_sum;                   // companion's own baseline sum (zero)
    std::vector<Rational> obstruction_sums;  // branch defect(s), one per class
    std::vector<Rational> profile_sums;      // literal sums of the supplied profile
    bool not_a_adequate = false;

    std::string render() const {
        std::ostringstream out;
        out << "A-adequacy coefficient test\n";
        out << "  branch: " << (steep_branch ? "c_- > 0 (steep)" : "c_- = 0 (shallow)") << "\n";
        out << "  adequate baseline sum: " << rational_str(adequate_sum) << "\n";
        out << "  obstruction sum";
        if (obstruction_sums.size() > 1) out << "s";
        out << " = ";
        for (std::size_t i = 0; i < obstruction_sums.size(); ++i)
            out << (i ? ", " : "") << rational_str(obstruction_sums[i]);
        out << "\n  literal profile sum";
        if (profile_sums.size() > 1) out << "s";
        out << " = ";
        for (std::size_t i = 0; i < profile_sums.size(); ++i)
            out << (i ? ", " : "") << rational_str(profile_sums[i]);
        out << "\n  verdict: " << (not_a_adequate ? "not A-adequate" : "inconclusive") << "\n";
        return out.str();
    }
};

// Applies the coefficient test to the double's minimum-degree profile
// (typically the output of predict_min, or a fit of actual degrees), given
// the companion's reduced adequate diagram statistics.
inline AdequacyVerdict adequacy_test(const QuasiQuadratic& delta_star_M,
                                     const std::optional<DiagramStats>& stats) {
    AdequateMinProfile base = adequate_min_profile(stats);  // MissingData when absent

    AdequacyVerdict v;
    v.adequate_sum = base.coefficient_sum;
    v.steep_branch = stats->c_minus > 0;
    for (const auto& t : delta_star_M.classes()) v.profile_sums.push_back(t.a + t.b + t.c);

    if (v.steep_branch) {
        v.obstruction_sums = {v.adequate_sum + make_rational(1, 2)};
        v.not_a_adequate = v.obstruction_sums[0] != 0;
    } else {
        const Rational b_star = make_rational(stats->c - stats->v_A, 2);
        v.obstruction_sums = {make_rational(-1, 2), b_star - make_rational(3, 4)};
        v.not_a_adequate = true;
        for (const Rational& s : v.obstruction_sums)
            if (s.get_den() == 1) v.not_a_adequate = false;
    }
    return v;
}

// -------------------------------------------------------------------------
// Jones diameter and crossing bounds
// -------------------------------------------------------------------------

struct CrossingReport {
    std::string name;
    Rational dj_K;  // max over residue classes of 4|a_i - a*_i|
    Rational dj_M;  // 9*dj_K + 2 (exact under the slope hypotheses)

    // echoed diagram inputs
    long long c = 0;
    long long writhe = 0;
    long long c_plus = 0;
    long long c_minus = 0;

    long long lower = 0;     // 9c + 2
    long long upper = 0;     // 9c + 3 + 6|wr|
    bool two_value = false;  // wr = 0 collapses the window to {lower, upper}

    bool certified = false;  // all hypotheses hold
    std::vector<std::string> hypothesis_flags;
    AdequacyVerdict adequacy;

    std::string render() const {
        std::ostringstream out;
        out << "crossing report: " << name << "\n";
        out << "  dj_K = " << rational_str(dj_K) << "\n";
        out << "  dj_M = " << rational_str(dj_M) << "  (9*dj_K + 2"
            << (certified ? "" : "; not certified, slope hypotheses fail") << ")\n";
        out << "  diagram: c = " << c << ", wr = " << writhe << ", c_+ = " << c_plus
            << ", c_- = " << c_minus << "\n";
        if (two_value)
            out << "  c(M) in {" << lower << ", " << upper << "}\n";
        else
            out << "  c(M) bounds: lower = " << lower << ", upper = " << upper << "\n";
        out << "  certified: " << (certified ? "yes" : "no (reported for exploration)") << "\n";
        for (const std::string& f : hypothesis_flags) out << "  hypothesis: " << f << "\n";
        std::istringstream adequacy_lines(adequacy.render());
        std::string line;
        while (std::getline(adequacy_lines, line)) out << "  " << line << "\n";
        return out.str();
    }
};

// Computes the Jones diameter of K from its fitted degree profiles (fitting
// colors 0..7 on demand), the doubling relation dj_M = 9*dj_K + 2, and the
// crossing window 9c + 2 <= c(M) <= 9c + 3 + 6|wr| from the companion's
// reduced adequate diagram.  The relation and the window require the slope
// hypotheses a_i > 0 and a*_i < -1/12 together with c_+, c_- != 0; failures
// are recorded in hypothesis_flags and clear `certified` (strict mode throws
// HypothesisViolation instead).  Diagram statistics are required: bounds and
// the adequacy branch are meaningless without them.
inline CrossingReport diameter_and_bounds(const KnotProfile& K, bool strict = false) {
    KnotProfile knot = K;
    if (!knot.fitted_max() || !knot.fitted_min()) {
        const long long top = knot.max_color() < 0 ? 7 : std::min<long long>(7, knot.max_color());
        fit_profile_degrees(knot, 0, top);
    }

    CrossingReport report;
    report.name = knot.name();

    const QuasiQuadratic dmax = knot.fitted_max()->widened();
    const QuasiQuadratic dmin = knot.fitted_min()->widened();
    report.dj_K = 0;
    for (int i = 0; i < 2; ++i) {
        Rational spread = 4 * abs(dmax.class_triple(i).a - dmin.class_triple(i).a);
        if (spread > report.dj_K) report.dj_K = spread;
        if (dmax.class_triple(i).a <= 0)
            report.hypothesis_flags.push_back("class " + std::to_string(i) +
                                              ": max-slope hypothesis fails (a = " +
                                              rational_str(dmax.class_triple(i).a) + " <= 0)");
        if (dmin.class_triple(i).a >= make_rational(-1, 12))
            report.hypothesis_flags.push_back("class " + std::to_string(i) +
                                              ": min-slope hypothesis fails (a* = " +
                                              rational_str(dmin.class_triple(i).a) + " >= -1/12)");
    }
    report.dj_M = 9 * report.dj_K + 2;

    if (!knot.stats())
        throw MissingData("crossing bounds for " + knot.name() + " require diagram stats");
    const DiagramStats& stats = *knot.stats();
    stats.validate();
    if (stats.c_plus == 0 || stats.c_minus == 0)
        report.hypothesis_flags.push_back("crossing-sign hypothesis fails (c_+ = " +
                                          std::to_string(stats.c_plus) + ", c_- = " +
                                          std::to_string(stats.c_minus) + "; both must be nonzero)");

    report.c = stats.c;
    report.writhe = stats.writhe;
    report.c_plus = stats.c_plus;
    report.c_minus = stats.c_minus;
    report.lower = 9 * stats.c + 2;
    report.upper = 9 * stats.c + 3 + 6 * (stats.writhe < 0 ? -stats.writhe : stats.writhe);
    report.two_value = stats.writhe == 0;

    report.certified = report.hypothesis_flags.empty();
    if (strict && !report.certified) {
        std::string joined;
        for (const std::string& f : report.hypothesis_flags)
            joined += (joined.empty() ? "" : "; ") + f;
        throw HypothesisViolation(joined);
    }

    report.adequacy = adequacy_test(predict_min(*knot.fitted_min()).predicted, knot.stats());
    return report;
}

}  // namespace mcj
