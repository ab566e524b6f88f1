#pragma once
// Kauffman-bracket state sum on planar diagrams: an independent oracle for
// the Jones polynomial at the lowest color.
//
// Diagram file format: one crossing per line as "a b c d s", where a, b, c,
// d are the arc labels around the crossing counterclockwise starting at the
// incoming under-strand arc, and s in {+1, -1} is the crossing sign.  Blank
// lines and lines starting with '#' are ignored.  With this labeling the
// under-strand occupies {a, c} and the over-strand {b, d}; an A-smoothing
// joins {a, d} and {b, c}, a B-smoothing joins {a, b} and {c, d}.

#include <mcj/errors.hpp>
#include <mcj/laurent.hpp>

#include <cstddef>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace mcj {

struct PDCrossing {
    long long a = 0, b = 0, c = 0, d = 0;
    int sign = 1;
};

namespace detail {

class ArcUnion {
  public:
    explicit ArcUnion(std::size_t n) : parent_(n) { reset(); }

    void reset() { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t v) {
        while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
        return v;
    }

    void join(std::size_t u, std::size_t v) { parent_[find(u)] = find(v); }

    std::size_t components() {
        std::size_t n = 0;
        for (std::size_t v = 0; v < parent_.size(); ++v)
            if (find(v) == v) ++n;
        return n;
    }

  private:
    std::vector<std::size_t> parent_;
};

}  // namespace detail

class PlanarDiagram {
  public:
    // 2^c resolutions keep the exact state sum tractable up to this size.
    static constexpr std::size_t kMaxCrossings = 24;

    PlanarDiagram() = default;

    explicit PlanarDiagram(std::vector<PDCrossing> crossings)
        : crossings_(std::move(crossings)) {
        if (crossings_.size() > kMaxCrossings)
            throw TooManyCrossings("diagram has " + std::to_string(crossings_.size()) +
                                   " crossings; the state-sum cap is " +
                                   std::to_string(kMaxCrossings));
        std::map<long long, int> uses;
        for (const PDCrossing& x : crossings_) {
            if (x.sign != 1 && x.sign != -1)
                throw Unsupported("crossing sign must be +1 or -1");
            for (long long arc : {x.a, x.b, x.c, x.d}) ++uses[arc];
        }
        for (const auto& [arc, n] : uses)
            if (n != 2)
                throw Unsupported("arc label " + std::to_string(arc) + " appears " +
                                  std::to_string(n) + " times; every arc must appear twice");
    }

    static PlanarDiagram parse(const std::string& text) {
        std::vector<PDCrossing> rows;
        std::istringstream in(text);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty() || line[0] == '#') continue;
            std::istringstream fields(line);
            PDCrossing x;
            std::string tail;
            if (!(fields >> x.a >> x.b >> x.c >> x.d >> x.sign) || (fields >> tail))
                throw ParseError("diagram line " + std::to_string(line_no) +
                                     " is not 'a b c d sign'",
                                 line_no);
            if (x.sign != 1 && x.sign != -1)
                throw ParseError("diagram line " + std::to_string(line_no) +
                                     " has sign outside {+1, -1}",
                                 line_no);
            rows.push_back(x);
        }
        return PlanarDiagram(std::move(rows));
    }

    static PlanarDiagram load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw MissingData("cannot open diagram file " + path);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return parse(buffer.str());
    }

    std::string serialize() const {
        std::string out;
        for (const PDCrossing& x : crossings_) {
            out += std::to_string(x.a) + " " + std::to_string(x.b) + " " +
                   std::to_string(x.c) + " " + std::to_string(x.d) + " " +
                   (x.sign > 0 ? "+1" : "-1") + "\n";
        }
        return out;
    }

    const std::vector<PDCrossing>& crossings() const { return crossings_; }
    std::size_t size() const { return crossings_.size(); }

    long long writhe() const {
        long long w = 0;
        for (const PDCrossing& x : crossings_) w += x.sign;
        return w;
    }

    // Link components, tracing strands through crossings (the under-strand
    // connects a to c, the over-strand b to d).  A crossing-free diagram
    // denotes a round circle and counts as one component.
    std::size_t component_count() const {
        if (crossings_.empty()) return 1;
        detail::ArcUnion uf(arc_index().size());
        const auto& index = arc_index();
        for (const PDCrossing& x : crossings_) {
            uf.join(index.at(x.a), index.at(x.c));
            uf.join(index.at(x.b), index.at(x.d));
        }
        return uf.components();
    }

    const std::map<long long, std::size_t>& arc_index() const {
        if (arc_index_.empty() && !crossings_.empty()) {
            for (const PDCrossing& x : crossings_)
                for (long long arc : {x.a, x.b, x.c, x.d})
                    arc_index_.emplace(arc, arc_index_.size());
        }
        return arc_index_;
    }

  private:
    std::vector<PDCrossing> crossings_;
    mutable std::map<long long, std::size_t> arc_index_;
};

// Bracket state sum with A = q^(-1/4) and loop value d = -A^2 - A^(-2);
// the round circle has bracket 1.
inline LaurentPoly kauffman_bracket(const PlanarDiagram& D) {
    const auto& xs = D.crossings();
    const std::size_t c = xs.size();
    if (c > PlanarDiagram::kMaxCrossings)
        throw TooManyCrossings("diagram exceeds the state-sum cap");
    if (c == 0) return LaurentPoly::one();

    const auto& index = D.arc_index();
    struct Slots {
        std::size_t a, b, cc, d;
    };
    std::vector<Slots> slots;
    slots.reserve(c);
    for (const PDCrossing& x : xs)
        slots.push_back({index.at(x.a), index.at(x.b), index.at(x.c), index.at(x.d)});

    // Tally states by (#A - #B, loops): the polynomial assembly afterwards
    // touches each distinct pair once.
    std::vector<long long> tally((2 * c + 1) * (c + 1), 0);
    detail::ArcUnion uf(index.size());
    for (std::size_t mask = 0; mask < (std::size_t{1} << c); ++mask) {
        uf.reset();
        std::size_t n_b = 0;
        for (std::size_t i = 0; i < c; ++i) {
            if (mask & (std::size_t{1} << i)) {
                ++n_b;  // B-smoothing: {a, b}, {c, d}
                uf.join(slots[i].a, slots[i].b);
                uf.join(slots[i].cc, slots[i].d);
            } else {  // A-smoothing: {a, d}, {b, c}
                uf.join(slots[i].a, slots[i].d);
                uf.join(slots[i].b, slots[i].cc);
            }
        }
        const std::size_t loops = uf.components();
        const std::size_t diff = c - n_b - n_b + c;  // (#A - #B) + c
        ++tally[diff * (c + 1) + (loops - 1)];
    }

    std::vector<LaurentPoly> d_power(c + 1);
    d_power[0] = LaurentPoly::one();
    const LaurentPoly d_loop =
        LaurentPoly::monomial(-1, 2) + LaurentPoly::monomial(-1, -2);
    for (std::size_t i = 1; i <= c; ++i) d_power[i] = d_power[i - 1] * d_loop;

    LaurentPoly sum;
    for (std::size_t diff = 0; diff <= 2 * c; ++diff)
        for (std::size_t l = 0; l <= c; ++l) {
            const long long count = tally[diff * (c + 1) + l];
            if (count == 0) continue;
            // A^(#A - #B) = q^(-(#A - #B)/4)
            const Exp shift = -(static_cast<Exp>(diff) - static_cast<Exp>(c));
            sum += d_power[l].shifted(shift).scaled(make_rational(count));
        }
    return sum;
}

// Writhe-normalized bracket (-A)^(-3 wr) <D> of a knot diagram: the Jones
// polynomial, matching provider_eval(K, 1) for the builtin knots.
inline LaurentPoly jones_at_n1(const PlanarDiagram& D, long long wr) {
    if (D.component_count() != 1)
        throw Unsupported("jones_at_n1 requires a knot diagram (one component)");
    // (-A)^(-3 wr) = (-1)^wr q^(3 wr / 4)
    LaurentPoly shifted = kauffman_bracket(D).shifted(3 * wr);
    return wr % 2 == 0 ? shifted : shifted.scaled(-1);
}

inline LaurentPoly jones_at_n1(const PlanarDiagram& D) {
    return jones_at_n1(D, D.writhe());
}

}  // namespace mcj
