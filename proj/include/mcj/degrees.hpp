#pragma once
// Quasi-quadratic degree sequences: exact fitting, the primed/unprimed
// normalization change of variables, mirror profiles, and the closed-form
// predictions for the extreme colored-Jones degrees of a Mazur double.
//
// Conventions:
//   - A quasi-quadratic of period p evaluates at color n with the coefficient
//     triple of residue class i = n mod p.  Periods 1 and 2 are supported.
//   - "Unprimed" coefficients (a, b, c) describe degrees of J_{K,n};
//     "primed" coefficients describe degrees of the normalized J'_{K,n}.
//     The two are related by
//         delta'(n)  = delta(n+1)  - n/2          (max side)
//         delta'*(n) = delta*(n+1) + n/2          (min side)
//     and their inverses.  For period 2 the change of variables swaps the
//     residue classes, because it reads the input at color n+1 (or n-1).

#include <mcj/errors.hpp>
#include <mcj/laurent.hpp>

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace mcj {

// Which extreme degree of a Laurent polynomial a statement concerns.
enum class DegreeSide { Max, Min };

// -------------------------------------------------------------------------
// QuasiQuadratic
// -------------------------------------------------------------------------

class QuasiQuadratic {
  public:
    struct Triple {
        Rational a, b, c;
        bool operator==(const Triple& o) const { return a == o.a && b == o.b && c == o.c; }
    };

    QuasiQuadratic() : period_(1), classes_(1), onset_(0) {}

    QuasiQuadratic(int period, std::vector<Triple> classes, long long onset = 0)
        : period_(period), classes_(std::move(classes)), onset_(onset) {
        if (period_ != 1 && period_ != 2)
            throw Unsupported("quasi-quadratic period must be 1 or 2, got " + std::to_string(period_));
        if (static_cast<int>(classes_.size()) != period_)
            throw Unsupported("quasi-quadratic needs one coefficient triple per residue class");
        if (onset_ < 0) throw Unsupported("quasi-quadratic onset must be nonnegative");
    }

    static QuasiQuadratic single(const Rational& a, const Rational& b, const Rational& c,
                                 long long onset = 0) {
        return QuasiQuadratic(1, {Triple{a, b, c}}, onset);
    }

    static QuasiQuadratic alternating(const Triple& even_class, const Triple& odd_class,
                                      long long onset = 0) {
        return QuasiQuadratic(2, {even_class, odd_class}, onset);
    }

    int period() const { return period_; }
    long long onset() const { return onset_; }
    void set_onset(long long n) { onset_ = n; }
    const std::vector<Triple>& classes() const { return classes_; }

    const Triple& class_triple(int i) const { return classes_.at(static_cast<std::size_t>(i)); }
    const Triple& class_for(long long n) const {
        long long i = n % period_;
        if (i < 0) i += period_;
        return classes_[static_cast<std::size_t>(i)];
    }

    Rational eval(long long n) const {
        const Triple& t = class_for(n);
        Rational nn(static_cast<long>(n));
        return t.a * nn * nn + t.b * nn + t.c;
    }

    QuasiQuadratic negated() const {
        std::vector<Triple> neg;
        neg.reserve(classes_.size());
        for (const Triple& t : classes_) neg.push_back(Triple{-t.a, -t.b, -t.c});
        return QuasiQuadratic(period_, std::move(neg), onset_);
    }

    // The same function presented with period 2 (duplicating the single class).
    QuasiQuadratic widened() const {
        if (period_ == 2) return *this;
        return QuasiQuadratic(2, {classes_[0], classes_[0]}, onset_);
    }

    bool same_coefficients(const QuasiQuadratic& o) const {
        return widened().classes() == o.widened().classes();
    }
    bool operator==(const QuasiQuadratic& o) const {
        return period_ == o.period_ && classes_ == o.classes_ && onset_ == o.onset_;
    }
    bool operator!=(const QuasiQuadratic& o) const { return !(*this == o); }

    std::string describe() const {
        std::ostringstream out;
        for (int i = 0; i < period_; ++i) {
            if (i) out << "; ";
            if (period_ == 2) out << "class " << i << " (n " << (i == 0 ? "even" : "odd") << "): ";
            const Triple& t = classes_[static_cast<std::size_t>(i)];
            out << rational_str(t.a) << " n^2 + " << rational_str(t.b) << " n + "
                << rational_str(t.c);
        }
        out << " [onset " << onset_ << "]";
        return out.str();
    }

  private:
    int period_;
    std::vector<Triple> classes_;
    long long onset_;
};

// -------------------------------------------------------------------------
// Exact fitting
// -------------------------------------------------------------------------

// Fits the unique quasi-quadratic through a maximal tail of the samples.
// For each residue class the quadratic through the three largest sample
// points is extended backwards while earlier samples keep matching; the fit
// is "stable" only if at least four samples per class lie on it.  The onset
// is the smallest sampled n from which every class matches.
inline QuasiQuadratic fit_quasi(const std::vector<std::pair<long long, Rational>>& samples,
                                int period = 1) {
    if (period != 1 && period != 2)
        throw Unsupported("fit_quasi supports periods 1 and 2, got " + std::to_string(period));

    std::vector<std::map<long long, Rational>> by_class(static_cast<std::size_t>(period));
    for (const auto& [n, value] : samples) {
        if (n < 0) throw NoStableFit("fit_quasi: negative sample index");
        auto& cls = by_class[static_cast<std::size_t>(n % period)];
        auto [it, inserted] = cls.emplace(n, value);
        if (!inserted && it->second != value)
            throw NoStableFit("fit_quasi: conflicting duplicate samples at n = " + std::to_string(n));
    }

    std::vector<QuasiQuadratic::Triple> triples;
    bool any_mismatch = false;
    long long largest_mismatch = -1;
    for (int i = 0; i < period; ++i) {
        const auto& cls = by_class[static_cast<std::size_t>(i)];
        if (cls.size() < 4)
            throw NoStableFit("fit_quasi: residue class " + std::to_string(i) +
                              " has fewer than 4 samples");

        std::vector<std::pair<long long, Rational>> pts(cls.begin(), cls.end());
        const auto& [n1, d1] = pts[pts.size() - 3];
        const auto& [n2, d2] = pts[pts.size() - 2];
        const auto& [n3, d3] = pts[pts.size() - 1];

        // Divided differences of the quadratic through the last three points.
        Rational r1(static_cast<long>(n1)), r2(static_cast<long>(n2)), r3(static_cast<long>(n3));
        Rational s12 = (d2 - d1) / (r2 - r1);
        Rational s23 = (d3 - d2) / (r3 - r2);
        Rational a = (s23 - s12) / (r3 - r1);
        Rational b = s12 - a * (r1 + r2);
        Rational c = d1 - a * r1 * r1 - b * r1;
        QuasiQuadratic::Triple t{a, b, c};

        std::size_t tail_start = pts.size() - 3;
        auto matches = [&](std::size_t idx) {
            Rational n(static_cast<long>(pts[idx].first));
            return t.a * n * n + t.b * n + t.c == pts[idx].second;
        };
        while (tail_start > 0 && matches(tail_start - 1)) --tail_start;

        if (pts.size() - tail_start < 4)
            throw NoStableFit("fit_quasi: last three samples of class " + std::to_string(i) +
                              " are not confirmed by a fourth point");

        triples.push_back(t);
        if (tail_start > 0) {
            any_mismatch = true;
            largest_mismatch = std::max(largest_mismatch, pts[tail_start - 1].first);
        }
    }

    // The onset is the first sample of the maximal tail (across all classes)
    // on which the fit is exact.
    long long onset = -1;
    for (const auto& cls : by_class)
        for (const auto& [n, value] : cls)
            if (!any_mismatch || n > largest_mismatch)
                if (onset < 0 || n < onset) onset = n;
    return QuasiQuadratic(period, std::move(triples), onset);
}

// -------------------------------------------------------------------------
// Mirror profiles
// -------------------------------------------------------------------------

struct DegreePair {
    QuasiQuadratic max_side;  // delta   (or delta')
    QuasiQuadratic min_side;  // delta*  (or delta'*)
};

// Mirroring a knot swaps and negates the extreme degrees:
// delta_mirror = -delta*, delta*_mirror = -delta.  An involution.
inline DegreePair mirror_profile(const DegreePair& p) {
    return DegreePair{p.min_side.negated(), p.max_side.negated()};
}

// -------------------------------------------------------------------------
// Normalization transitions (coefficient form)
// -------------------------------------------------------------------------

namespace detail {

// Applies n -> n + step to the argument of a quasi-quadratic and adds
// (extra_a n^2 + extra_b n + extra_c); used by all four transitions below.
// Reading the input at n + step swaps residue classes when |step| is odd.
inline QuasiQuadratic shift_argument(const QuasiQuadratic& q, long long step,
                                     const Rational& extra_b, const Rational& extra_c,
                                     long long onset) {
    std::vector<QuasiQuadratic::Triple> out(static_cast<std::size_t>(q.period()));
    Rational st(static_cast<long>(step));
    for (int i = 0; i < q.period(); ++i) {
        long long src = ((i + step) % q.period() + q.period()) % q.period();
        const auto& t = q.class_triple(static_cast<int>(src));
        // (a, b, c) at n + step:  a n^2 + (2 a step + b) n + (a step^2 + b step + c)
        out[static_cast<std::size_t>(i)] =
            QuasiQuadratic::Triple{t.a, 2 * t.a * st + t.b + extra_b,
                                   t.a * st * st + t.b * st + t.c + extra_c};
    }
    return QuasiQuadratic(q.period(), std::move(out), onset);
}

}  // namespace detail

// delta'(n) = delta(n+1) - n/2
inline QuasiQuadratic to_primed_max(const QuasiQuadratic& q) {
    return detail::shift_argument(q, 1, make_rational(-1, 2), 0, std::max(0LL, q.onset() - 1));
}
// delta(n) = delta'(n-1) + n/2 - 1/2
inline QuasiQuadratic to_unprimed_max(const QuasiQuadratic& q) {
    return detail::shift_argument(q, -1, make_rational(1, 2), make_rational(-1, 2), q.onset() + 1);
}
// delta'*(n) = delta*(n+1) + n/2
inline QuasiQuadratic to_primed_min(const QuasiQuadratic& q) {
    return detail::shift_argument(q, 1, make_rational(1, 2), 0, std::max(0LL, q.onset() - 1));
}
// delta*(n) = delta'*(n-1) - n/2 + 1/2
inline QuasiQuadratic to_unprimed_min(const QuasiQuadratic& q) {
    return detail::shift_argument(q, -1, make_rational(-1, 2), make_rational(1, 2), q.onset() + 1);
}

// -------------------------------------------------------------------------
// Predicted degrees of a Mazur double
// -------------------------------------------------------------------------

// Auxiliary data for the minimum-degree analysis: the two quadratic
// envelopes h_A, h_B in the summation variable l, the branch gates that
// decide their monotonicity, and the additive constants of the shallow
// branch in both normalizations.
struct MinDegreeAuxiliary {
    struct Quad {
        Rational a, b, c;
        Rational eval(long long l) const {
            Rational r(static_cast<long>(l));
            return a * r * r + b * r + c;
        }
    };

    std::vector<Quad> h_A;      // per residue class of l; h_A(0) = 0 by definition
    Quad h_B;                   // built from the odd-class primed coefficients
    std::vector<Rational> gate_h_A;  // 12 alpha*_i + 1 per class
    Rational gate_h_B;               // 8 alpha*_1 + 1
    Rational C0, C1;    // constants of the shallow branch, unprimed normalization
    Rational Cp0, Cp1;  // same constants, primed normalization (Cp0 = 0)

    Rational h_A_at(int cls, long long l) const {
        if (l == 0) return 0;
        return h_A.at(static_cast<std::size_t>(cls)).eval(l);
    }
};

struct MaxPrediction {
    QuasiQuadratic predicted;
    std::vector<std::string> branches;  // per residue class
    std::vector<std::string> warnings;  // hypothesis violations (prediction still emitted)
};

struct MinPrediction {
    QuasiQuadratic predicted;
    MinDegreeAuxiliary aux;
    std::vector<std::string> branches;
    std::vector<std::string> warnings;
};

namespace detail {

inline MinDegreeAuxiliary make_min_auxiliary(const QuasiQuadratic& unprimed) {
    QuasiQuadratic primed = to_primed_min(unprimed).widened();
    MinDegreeAuxiliary aux;
    for (int i = 0; i < 2; ++i) {
        const auto& t = primed.class_triple(i);
        aux.h_A.push_back({t.a + make_rational(1, 12), t.b - make_rational(1, 3), t.c});
        aux.gate_h_A.push_back(12 * t.a + 1);
    }
    const auto& odd = primed.class_triple(1);
    aux.h_B = {odd.a + make_rational(1, 8), odd.b - make_rational(1, 2), odd.c};
    aux.gate_h_B = 8 * odd.a + 1;
    aux.Cp0 = 0;
    aux.Cp1 = odd.a + odd.b + odd.c - make_rational(1, 4);
    aux.C0 = aux.Cp0 + make_rational(5, 4);
    aux.C1 = aux.Cp1 + make_rational(5, 4);
    return aux;
}

}  // namespace detail

// Predicted maximum degree of J_{M(K),n} from the maximum degree of J_{K,n}.
// Pass primed coefficients with normalized = true to predict delta'_{M(K)}
// (for which the steep branch collapses to (9 alpha, 3 beta, gamma)).
inline MaxPrediction predict_max(const QuasiQuadratic& delta_K, bool normalized = false) {
    QuasiQuadratic unprimed = normalized ? to_unprimed_max(delta_K) : delta_K;

    MaxPrediction result;
    std::vector<QuasiQuadratic::Triple> out;
    for (int i = 0; i < unprimed.period(); ++i) {
        const auto& t = unprimed.class_triple(i);
        if (t.b > 0)
            result.warnings.push_back("class " + std::to_string(i) +
                                      ": hypothesis b <= 0 fails (b = " + rational_str(t.b) + ")");
        if (t.b == 0 && t.a == 0)
            result.warnings.push_back("class " + std::to_string(i) +
                                      ": hypothesis (b = 0 implies a != 0) fails");
        if (t.a > 0) {
            out.push_back({9 * t.a, -12 * t.a + 3 * t.b - 1, 4 * t.a - 2 * t.b + t.c + 1});
            result.branches.push_back("class " + std::to_string(i) + ": a > 0");
        } else {
            out.push_back({t.a, t.b - 1, t.c + 1});
            result.branches.push_back("class " + std::to_string(i) + ": a <= 0");
        }
    }
    QuasiQuadratic predicted(unprimed.period(), std::move(out), 0);
    result.predicted = normalized ? to_primed_max(predicted) : predicted;
    return result;
}

// Predicted minimum degree of J_{M(K),n} from the minimum degree of J_{K,n}.
// eventual_only marks inputs whose quasi-quadratic form is known only for
// sufficiently large n; the shallow branch (a* >= -1/12) then has no valid
// prediction and raises InvalidBranch.
inline MinPrediction predict_min(const QuasiQuadratic& delta_star_K, bool normalized = false,
                                 bool eventual_only = false) {
    QuasiQuadratic unprimed = normalized ? to_unprimed_min(delta_star_K) : delta_star_K;

    MinPrediction result;
    result.aux = detail::make_min_auxiliary(unprimed);

    const Rational threshold = make_rational(-1, 12);
    QuasiQuadratic wide = unprimed.widened();
    const auto& odd = wide.class_triple(1);
    if (odd.a + odd.b + odd.c < 0)
        result.warnings.push_back("hypothesis a*_1 + b*_1 + c*_1 >= 0 fails (sum = " +
                                  rational_str(odd.a + odd.b + odd.c) + ")");

    bool any_shallow = false;
    for (int i = 0; i < unprimed.period(); ++i) {
        const auto& t = unprimed.class_triple(i);
        if (t.b < 0)
            result.warnings.push_back("class " + std::to_string(i) +
                                      ": hypothesis b* >= 0 fails (b* = " + rational_str(t.b) + ")");
        if (t.a == threshold && t.b == 0)
            result.warnings.push_back("class " + std::to_string(i) +
                                      ": hypothesis (a* = -1/12 implies b* != 0) fails");
        if (t.a >= threshold) any_shallow = true;
    }

    // The shallow branch alternates its constant with the parity of n, so the
    // output always has period 2 when it participates.
    int out_period = any_shallow ? 2 : unprimed.period();
    std::vector<QuasiQuadratic::Triple> out;
    for (int i = 0; i < out_period; ++i) {
        const auto& t = wide.class_triple(out_period == 2 ? i : 0);
        bool steep = t.a < threshold;
        if (!steep && eventual_only) {
            if (t.a > threshold)
                throw InvalidBranch(
                    "class " + std::to_string(i) +
                    ": a* > -1/12 requires the quasi-quadratic form for all n >= 2, "
                    "not just eventually");
            // a* = -1/12 exactly: the eventually-only statement extends the
            // steep formula to this boundary; the all-n analysis uses the
            // shallow branch instead, and the two disagree unless b* = 0.
            steep = true;
            result.warnings.push_back("class " + std::to_string(i) +
                                      ": a* = -1/12 boundary under eventual-only data; "
                                      "using the steep formula");
        }
        if (steep) {
            out.push_back({9 * t.a - make_rational(1, 2), -12 * t.a + 3 * t.b - make_rational(1, 2),
                           4 * t.a - 2 * t.b + t.c + 1});
            result.branches.push_back("class " + std::to_string(i) + ": a* < -1/12");
        } else {
            const Rational& C = (i == 0) ? result.aux.C1 : result.aux.C0;  // C_{i+1 mod 2}
            out.push_back({make_rational(-5, 4), make_rational(1, 2), make_rational(-1, 2) + C});
            result.branches.push_back("class " + std::to_string(i) + ": a* >= -1/12 (constant " +
                                      ((i == 0) ? "C_1" : "C_0") + " = " +
                                      rational_str((i == 0) ? result.aux.C1 : result.aux.C0) + ")");
        }
    }
    QuasiQuadratic predicted(out_period, std::move(out), 0);
    result.predicted = normalized ? to_primed_min(predicted) : predicted;
    return result;
}

}  // namespace mcj
