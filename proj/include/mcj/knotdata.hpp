#pragma once
// Companion-knot data: normalized colored-Jones providers J'_{K,l}(q),
// diagram statistics, degree fitting over a color window, and the
// minimum-degree profile of a reduced A-adequate diagram.

#include <mcj/degrees.hpp>
#include <mcj/errors.hpp>
#include <mcj/laurent.hpp>
#include <mcj/symbols.hpp>

#include <cctype>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace mcj {

// -------------------------------------------------------------------------
// Diagram statistics
// -------------------------------------------------------------------------

struct DiagramStats {
    long long c = 0;        // crossing number of the diagram
    long long c_plus = 0;   // positive crossings
    long long c_minus = 0;  // negative crossings
    long long writhe = 0;   // c_plus - c_minus
    long long v_A = 0;      // circles of the all-A state
    long long v_B = 0;      // circles of the all-B state

    void validate() const {
        if (c != c_plus + c_minus)
            throw Unsupported("diagram stats must satisfy c = c_+ + c_-");
        if (writhe != c_plus - c_minus)
            throw Unsupported("diagram stats must satisfy wr = c_+ - c_-");
        if (c < 0 || v_A <= 0 || v_B <= 0)
            throw Unsupported("diagram stats out of range");
    }
};

// Minimum-degree profile of a reduced A-adequate diagram, together with the
// sanity values the degree analysis relies on.
struct AdequateMinProfile {
    QuasiQuadratic profile;     // delta*_K, period 1
    Rational coefficient_sum;   // a* + b* + c*; zero for consistent stats
    bool two_a_star_integral;   // whether 2 a* is an integer
};

inline AdequateMinProfile adequate_min_profile(const std::optional<DiagramStats>& stats) {
    if (!stats) throw MissingData("adequate_min_profile requires diagram stats");
    stats->validate();
    Rational a = make_rational(-stats->c_minus, 2);
    Rational b = make_rational(stats->c - stats->v_A, 2);
    Rational c = make_rational(stats->v_A - stats->c_plus, 2);
    Rational two_a = 2 * a;
    return AdequateMinProfile{QuasiQuadratic::single(a, b, c), a + b + c,
                              two_a.get_den() == 1};
}

// -------------------------------------------------------------------------
// Providers
// -------------------------------------------------------------------------

enum class ProviderKind { Unknot, Torus2, FigureEight, Table };

namespace detail {

// c-factor of the cyclotomic expansion: q^(m/2) - q^(-m/2).
inline LaurentPoly habiro_factor(long long m) {
    return LaurentPoly::monomial(1, 2 * m) + LaurentPoly::monomial(-1, -2 * m);
}

inline LaurentPoly reversed_exponents(const LaurentPoly& p) {
    LaurentPoly out;
    for (const auto& [e, coeff] : p.terms()) out += LaurentPoly::monomial(coeff, -e);
    return out;
}

// J'_{4_1,l}(q) by the cyclotomic expansion
//   sum_{k=0..l} prod_{j=1..k} (q^{(l+1+j)/2}-q^{-(l+1+j)/2})(q^{(l+1-j)/2}-q^{-(l+1-j)/2}).
inline LaurentPoly figure_eight_normalized(long long l) {
    static std::map<long long, LaurentPoly> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(l);
    if (it != cache.end()) return it->second;
    LaurentPoly result = LaurentPoly::one();
    LaurentPoly product = LaurentPoly::one();
    for (long long k = 1; k <= l; ++k) {
        product = product * habiro_factor(l + 1 + k) * habiro_factor(l + 1 - k);
        result += product;
    }
    cache.emplace(l, result);
    return result;
}

// J'_{T(2,Q),l}(q) for odd Q with |Q| >= 3, by the residue expansion of the
// torus-knot formula in 0-framing: twist monomials delta(2c; l, l) supply
// both the per-term shifts and the overall framing correction.
inline LaurentPoly torus2_normalized(long long Q, long long l) {
    static std::map<std::pair<long long, long long>, LaurentPoly> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(Q, l);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const long long P = Q < 0 ? -Q : Q;  // compute the positive knot, mirror after
    const auto [s0, e0] = twist_delta_parts(0, l, l);
    LaurentPoly num;
    for (long long c = 0; c <= l; ++c) {
        const auto [sc, ec] = twist_delta_parts(2 * c, l, l);
        num += quantum_integer(2 * c + 1).shifted(P * ec).scaled(P % 2 ? sc : 1);
    }
    num = num.shifted(P * e0).scaled(P % 2 ? s0 : 1);
    LaurentPoly result = LaurentPoly::exact_div(num, quantum_integer(l + 1));
    if (l % 2) result = result.scaled(-1);
    if (Q < 0) result = reversed_exponents(result);
    cache.emplace(key, result);
    return result;
}

}  // namespace detail

// -------------------------------------------------------------------------
// KnotProfile
// -------------------------------------------------------------------------

class KnotProfile {
  public:
    static KnotProfile unknot() {
        KnotProfile k;
        k.name_ = "unknot";
        k.kind_ = ProviderKind::Unknot;
        k.stats_ = DiagramStats{0, 0, 0, 0, 1, 1};
        return k;
    }

    static KnotProfile torus(long long p, long long q) {
        if (p != 2 || q % 2 == 0 || (q >= -1 && q <= 1))
            throw Unsupported("torus provider supports T(2,q) for odd |q| >= 3");
        KnotProfile k;
        k.name_ = "torus(2," + std::to_string(q) + ")";
        k.kind_ = ProviderKind::Torus2;
        k.torus_q_ = q;
        return k;
    }

    static KnotProfile figure_eight() {
        KnotProfile k;
        k.name_ = "figure-eight";
        k.kind_ = ProviderKind::FigureEight;
        // reduced alternating (hence adequate) standard diagram
        k.stats_ = DiagramStats{4, 2, 2, 0, 3, 3};
        return k;
    }

    static KnotProfile trefoil() {
        KnotProfile k = torus(2, 3);
        k.name_ = "trefoil";
        // standard positive diagram: adequate, writhe +3
        k.stats_ = DiagramStats{3, 3, 0, 3, 2, 3};
        return k;
    }

    static KnotProfile from_table_file(const std::string& path, const std::string& name = "");

    // Accepts "unknot", "trefoil", "figure-eight", or "torus(2,q)".
    static KnotProfile builtin(const std::string& name);

    // Structured profile document (JSON): fields name, provider, optional
    // stats {c, c_plus, c_minus, writhe, v_A, v_B}.  Table paths resolve
    // relative to the document.
    static KnotProfile from_json_file(const std::string& path);

    const std::string& name() const { return name_; }
    ProviderKind provider_kind() const { return kind_; }
    long long torus_q() const { return torus_q_; }
    const std::optional<DiagramStats>& stats() const { return stats_; }
    void set_stats(const DiagramStats& s) {
        s.validate();
        stats_ = s;
    }

    // Largest color the provider can serve (unbounded providers return -1).
    long long max_color() const {
        return kind_ == ProviderKind::Table ? static_cast<long long>(table_.size()) - 1 : -1;
    }

    const std::optional<QuasiQuadratic>& fitted_max() const { return fitted_max_; }
    const std::optional<QuasiQuadratic>& fitted_min() const { return fitted_min_; }
    void set_fitted(QuasiQuadratic delta, QuasiQuadratic delta_star) {
        fitted_max_ = std::move(delta);
        fitted_min_ = std::move(delta_star);
    }

  private:
    friend LaurentPoly provider_eval(const KnotProfile&, long long);

    std::string name_;
    ProviderKind kind_ = ProviderKind::Unknot;
    long long torus_q_ = 0;
    std::map<long long, LaurentPoly> table_;
    std::optional<DiagramStats> stats_;
    std::optional<QuasiQuadratic> fitted_max_;  // delta_K   (unprimed)
    std::optional<QuasiQuadratic> fitted_min_;  // delta*_K  (unprimed)
};

// J'_{K,l}(q): the colored Jones polynomial normalized to 1 on the unknot,
// indexed so that J'_{K,0} = 1 and J'_{K,1} is the Jones polynomial.
inline LaurentPoly provider_eval(const KnotProfile& K, long long l) {
    if (l < 0) throw MissingColor("colored-Jones color must be nonnegative");
    switch (K.provider_kind()) {
        case ProviderKind::Unknot:
            return LaurentPoly::one();
        case ProviderKind::Torus2:
            return detail::torus2_normalized(K.torus_q(), l);
        case ProviderKind::FigureEight:
            return detail::figure_eight_normalized(l);
        case ProviderKind::Table: {
            auto it = K.table_.find(l);
            if (it == K.table_.end())
                throw MissingColor("table provider for " + K.name() + " has no color " +
                                   std::to_string(l));
            return it->second;
        }
    }
    throw Unsupported("unreachable provider kind");
}

// Fits the degree quasi-polynomials of K over colors [lo, hi] and stores the
// result on the profile in the unprimed normalization.  The provider data is
// the normalized sequence, so the raw fits are primed and are converted.
inline void fit_profile_degrees(KnotProfile& K, long long lo, long long hi, int period = 2) {
    std::vector<std::pair<long long, Rational>> max_samples, min_samples;
    for (long long l = lo; l <= hi; ++l) {
        LaurentPoly jp = provider_eval(K, l);
        if (jp.is_zero()) throw UndefinedDegree("J'_K vanished during degree fitting");
        max_samples.emplace_back(l, jp.d_plus());
        min_samples.emplace_back(l, jp.d_minus());
    }
    QuasiQuadratic primed_max = fit_quasi(max_samples, period);
    QuasiQuadratic primed_min = fit_quasi(min_samples, period);
    K.set_fitted(to_unprimed_max(primed_max), to_unprimed_min(primed_min));
}

// -------------------------------------------------------------------------
// Profile documents
// -------------------------------------------------------------------------

inline KnotProfile KnotProfile::from_table_file(const std::string& path, const std::string& name) {
    std::ifstream in(path);
    if (!in) throw MissingData("cannot open colored-Jones table " + path);
    KnotProfile k;
    k.kind_ = ProviderKind::Table;
    k.name_ = name.empty() ? "table(" + path + ")" : name;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw ParseError("table line " + std::to_string(line_no) + " lacks 'l:' prefix", 0);
        long long l;
        try {
            std::size_t used = 0;
            l = std::stoll(line.substr(0, colon), &used);
            while (used < colon && std::isspace(static_cast<unsigned char>(line[used]))) ++used;
            if (used != colon) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ParseError("table line " + std::to_string(line_no) + " has a malformed color",
                             0);
        }
        if (l < 0 || k.table_.count(l))
            throw ParseError("table line " + std::to_string(line_no) + " repeats or misuses color",
                             0);
        k.table_.emplace(l, LaurentPoly::parse(line.substr(colon + 1)));
    }
    if (k.table_.empty() || k.table_.begin()->first != 0 ||
        k.table_.rbegin()->first + 1 != static_cast<long long>(k.table_.size()))
        throw ParseError("table must cover a contiguous color range starting at 0", 0);
    if (k.table_.at(0) != LaurentPoly::one())
        throw ParseError("table must have J'_0 = 1", 0);
    return k;
}

inline KnotProfile KnotProfile::builtin(const std::string& name) {
    if (name == "unknot") return unknot();
    if (name == "trefoil") return trefoil();
    if (name == "figure-eight") return figure_eight();
    if (name.rfind("torus(", 0) == 0 && name.back() == ')') {
        std::string body = name.substr(6, name.size() - 7);
        auto comma = body.find(',');
        if (comma != std::string::npos) {
            try {
                long long p = std::stoll(body.substr(0, comma));
                long long q = std::stoll(body.substr(comma + 1));
                KnotProfile k = torus(p, q);
                if (p == 2 && q == 3) k.stats_ = DiagramStats{3, 3, 0, 3, 2, 3};
                return k;
            } catch (const std::invalid_argument&) {
            } catch (const std::out_of_range&) {
            }
        }
    }
    throw Unsupported("unknown builtin knot '" + name + "'");
}

inline KnotProfile KnotProfile::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MissingData("cannot open knot profile " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("knot profile is not valid JSON: ") + e.what(), 0);
    }
    if (!doc.is_object() || !doc.contains("provider"))
        throw ParseError("knot profile needs a 'provider' field", 0);

    std::string provider = doc["provider"].get<std::string>();
    KnotProfile k;
    if (provider.rfind("table(", 0) == 0 && provider.back() == ')') {
        std::string table_path = provider.substr(6, provider.size() - 7);
        if (!table_path.empty() && table_path[0] != '/') {
            auto slash = path.find_last_of('/');
            if (slash != std::string::npos) table_path = path.substr(0, slash + 1) + table_path;
        }
        k = from_table_file(table_path);
    } else {
        k = builtin(provider);
    }
    if (doc.contains("name")) k.name_ = doc["name"].get<std::string>();

    if (doc.contains("stats")) {
        const auto& s = doc["stats"];
        DiagramStats st;
        try {
            st.c = s.at("c").get<long long>();
            st.c_plus = s.at("c_plus").get<long long>();
            st.c_minus = s.at("c_minus").get<long long>();
            st.writhe = s.contains("writhe") ? s["writhe"].get<long long>()
                                             : st.c_plus - st.c_minus;
            st.v_A = s.at("v_A").get<long long>();
            st.v_B = s.at("v_B").get<long long>();
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("knot profile stats malformed: ") + e.what(), 0);
        }
        st.validate();
        k.stats_ = st;
    }
    return k;
}

}  // namespace mcj
