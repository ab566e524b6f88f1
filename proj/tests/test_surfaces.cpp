#include <catch2/catch_amalgamated.hpp>

#include <mcj/surfaces.hpp>

#include <numeric>
#include <random>

using namespace mcj;

namespace {

Rational rq(long num, long den = 1) { return make_rational(num, den); }

SlopeEntry fin(long num, long den = 1) { return SlopeEntry::finite(rq(num, den)); }

}  // namespace

TEST_CASE("catalog rows evaluate to their closed forms") {
    SECTION("twice-punctured torus family") {
        SurfaceRecord r = catalog_eval(SurfacePath::Gamma7, 2, 0);
        CHECK(r.branch_pattern == "ABBCBBA");
        CHECK(r.chi == -2);
        CHECK(r.slope_1 == fin(-5));
        CHECK(r.slope_2.kind == SlopeEntry::Kind::Disjoint);
        CHECK(r.count_1 == 2);
        CHECK(r.count_2 == 0);
    }

    SECTION("first family at heavy weights") {
        SurfaceRecord r = catalog_eval(SurfacePath::Gamma1, 24, 2);
        CHECK(r.branch_pattern == "ADAADAADA");
        CHECK(r.chi == -52);
        CHECK(r.slope_1 == fin(1, 4));
        CHECK(r.slope_2 == fin(36));
        CHECK(r.count_1 == 6);
        CHECK(r.count_2 == 2);
    }

    SECTION("second family at balanced weights") {
        SurfaceRecord r = catalog_eval(SurfacePath::Gamma2, 16, 8);
        CHECK(r.chi == -32);
        CHECK(r.slope_1 == fin(-1, 2));
        CHECK(r.slope_2 == fin(-2));
        CHECK(r.count_1 == 8);
        CHECK(r.count_2 == 8);
    }

    SECTION("remaining rows at a generic weight pair") {
        SurfaceRecord g3 = catalog_eval(SurfacePath::Gamma3, 6, 2);
        CHECK(g3.branch_pattern == "ADAABBA");
        CHECK(g3.chi == -8);
        CHECK(g3.slope_1 == fin(-5, 3));
        CHECK(g3.slope_2 == fin(1));
        CHECK(g3.count_1 == 2);
        CHECK(g3.count_2 == 2);

        SurfaceRecord g4 = catalog_eval(SurfacePath::Gamma4, 6, 2);
        CHECK(g4.branch_pattern == "ADAADAADA");
        CHECK(g4.chi == -16);
        CHECK(g4.slope_1 == fin(1, 3));
        CHECK(g4.slope_2 == fin(3));
        CHECK(g4.count_1 == 2);
        CHECK(g4.count_2 == 2);

        SurfaceRecord g5 = catalog_eval(SurfacePath::Gamma5, 24, 2);
        CHECK(g5.branch_pattern == "ADCDDA");
        CHECK(g5.chi == -46);
        CHECK(g5.slope_1 == fin(-1, 4));
        CHECK(g5.slope_2 == fin(-38));
        CHECK(g5.count_1 == 6);
        CHECK(g5.count_2 == 2);

        SurfaceRecord g6 = catalog_eval(SurfacePath::Gamma6, 6, 2);
        CHECK(g6.branch_pattern == "ADCBBA");
        CHECK(g6.chi == -6);
        CHECK(g6.slope_1 == fin(-7, 3));
        CHECK(g6.slope_2 == fin(-7));
        CHECK(g6.count_1 == 2);
        CHECK(g6.count_2 == 2);
    }

    SECTION("vanishing second weight gives meridians except the last row") {
        SurfaceRecord g1 = catalog_eval(SurfacePath::Gamma1, 4, 0);
        CHECK(g1.slope_2.kind == SlopeEntry::Kind::Meridian);
        CHECK(g1.count_2 == 12);
        CHECK(g1.slope_1 == fin(0));

        SurfaceRecord g7 = catalog_eval(SurfacePath::Gamma7, 4, 0);
        CHECK(g7.slope_2.kind == SlopeEntry::Kind::Disjoint);
        CHECK(g7.count_2 == 0);
        CHECK(g7.slope_1 == fin(-5));
        CHECK(g7.chi == -4);
    }

    SECTION("weight validation") {
        CHECK_THROWS_AS(catalog_eval(SurfacePath::Gamma1, 0, 0), InvalidWeights);
        CHECK_THROWS_AS(catalog_eval(SurfacePath::Gamma3, -2, 4), InvalidWeights);
        CHECK_THROWS_AS(catalog_eval(SurfacePath::Gamma3, 2, -4), InvalidWeights);
    }

    SECTION("swapped weights exchange both pairs") {
        SurfaceRecord direct = catalog_eval(SurfacePath::Gamma5, 24, 2);
        SurfaceRecord swapped = catalog_eval(SurfacePath::Gamma5, 2, 24);
        CHECK(swapped.swapped);
        CHECK(swapped.alpha == 24);
        CHECK(swapped.beta == 2);
        CHECK(swapped.chi == direct.chi);
        CHECK(swapped.slope_1 == direct.slope_2);
        CHECK(swapped.slope_2 == direct.slope_1);
        CHECK(swapped.count_1 == direct.count_2);
        CHECK(swapped.count_2 == direct.count_1);
    }
}

TEST_CASE("catalog forms are weight-homogeneous") {
    std::mt19937_64 rng(411);
    std::uniform_int_distribution<long long> weight(0, 40), factor(1, 9);
    const std::array<SurfacePath, 7> paths = {
        SurfacePath::Gamma1, SurfacePath::Gamma2, SurfacePath::Gamma3, SurfacePath::Gamma4,
        SurfacePath::Gamma5, SurfacePath::Gamma6, SurfacePath::Gamma7};
    for (SurfacePath p : paths) {
        for (int trial = 0; trial < 50; ++trial) {
            long long alpha = weight(rng), beta = weight(rng);
            if (alpha == 0 && beta == 0) alpha = 1;
            const long long k = factor(rng);
            SurfaceRecord base = catalog_eval(p, alpha, beta);
            SurfaceRecord scaled = catalog_eval(p, k * alpha, k * beta);
            REQUIRE(scaled.chi == k * base.chi);
            REQUIRE(scaled.count_1 == k * base.count_1);
            REQUIRE(scaled.count_2 == k * base.count_2);
            REQUIRE(scaled.slope_1 == base.slope_1);
            REQUIRE(scaled.slope_2 == base.slope_2);
        }
    }
}

TEST_CASE("weight solving per slope branch") {
    SECTION("steep positive slope") {
        SurfaceRecord r = solve_weights(rq(1, 6), DegreeSide::Max);
        CHECK(r.path == SurfacePath::Gamma1);
        CHECK(r.alpha == 24);
        CHECK(r.beta == 12);
        CHECK(r.pattern_component == 2);
        CHECK(*r.torus_slope == rq(2, 3));            // 4a
        CHECK(*r.satellite_slope == fin(6));          // 36a
    }

    SECTION("shallow positive slope") {
        SurfaceRecord r = solve_weights(rq(1, 24), DegreeSide::Max);
        CHECK(r.path == SurfacePath::Gamma1);
        CHECK(r.alpha == 48);
        CHECK(r.beta == 24);
        CHECK(r.pattern_component == 1);
        CHECK(*r.torus_slope == rq(1, 6));
        CHECK(*r.satellite_slope == fin(3, 2));       // 36a
    }

    SECTION("branch boundary lands in the steep case") {
        SurfaceRecord r = solve_weights(rq(1, 12), DegreeSide::Max);
        CHECK(r.path == SurfacePath::Gamma1);
        CHECK(r.alpha == 24);
        CHECK(r.beta == 24);
        CHECK(r.pattern_component == 2);
    }

    SECTION("mildly negative slope") {
        SurfaceRecord r = solve_weights(rq(-1, 8), DegreeSide::Max);
        CHECK(r.path == SurfacePath::Gamma2);
        CHECK(r.alpha == 16);
        CHECK(r.beta == 8);
        CHECK(r.pattern_component == 1);
        CHECK(*r.torus_slope == rq(-1, 2));
        CHECK(*r.satellite_slope == fin(-1, 2));      // 4a
    }

    SECTION("zero slope uses meridian inversion") {
        SurfaceRecord r = solve_weights(rq(0), DegreeSide::Max);
        CHECK(r.path == SurfacePath::Gamma2);
        CHECK(r.alpha == 2);
        CHECK(r.beta == 0);
        CHECK(*r.torus_slope == rq(0));
        CHECK(*r.satellite_slope == fin(0));
    }

    SECTION("steeply negative max slope has no catalog surface") {
        CHECK_THROWS_AS(solve_weights(rq(-1, 2), DegreeSide::Max), NoCatalogSurface);
        CHECK_THROWS_AS(solve_weights(rq(-3, 8), DegreeSide::Max), NoCatalogSurface);
    }

    SECTION("shallow minimum slope") {
        SurfaceRecord r = solve_weights(rq(-1, 12), DegreeSide::Min);
        CHECK(r.path == SurfacePath::Gamma7);
        CHECK(r.alpha == 2);
        CHECK(r.beta == 0);
        CHECK(r.pattern_component == 1);
        CHECK(*r.satellite_slope == fin(-5));
        CHECK(r.count_on_companion() == 0);
    }

    SECTION("steep minimum slope") {
        SurfaceRecord r = solve_weights(rq(-1), DegreeSide::Min);
        CHECK(r.path == SurfacePath::Gamma5);
        CHECK(r.alpha == 24);
        CHECK(r.beta == 2);
        CHECK(r.pattern_component == 2);
        CHECK(*r.torus_slope == rq(-4));
        CHECK(*r.satellite_slope == fin(-38));        // 36a - 2
    }
}

TEST_CASE("companion certificates") {
    JonesSurfaceCertificate cert = make_certificate(rq(1, 6), rq(-1), 1, DegreeSide::Max);
    CHECK(cert.slope == rq(2, 3));
    CHECK(cert.q == 3);
    CHECK(cert.chi == rq(-6));  // 2b * 1 * q
    CHECK(cert.chi / (rq(cert.boundary_count) * rq(cert.q)) == 2 * cert.b);

    JonesSurfaceCertificate min_cert = make_certificate(rq(-1), rq(1), 1, DegreeSide::Min);
    CHECK(min_cert.slope == rq(-4));
    CHECK(min_cert.q == 1);
    CHECK(min_cert.chi == rq(-2));  // -2b* * 1 * q

    CHECK_THROWS_AS(make_certificate(rq(1, 6), rq(-1), 0, DegreeSide::Max), InvalidWeights);
}

TEST_CASE("glued-surface ratios match the degree predictions") {
    SECTION("steep positive branch") {
        const Rational a = rq(1, 6), b = rq(-1);
        SurfaceRecord pattern = solve_weights(a, DegreeSide::Max);
        JonesSurfaceCertificate cert = make_certificate(a, b, 1, DegreeSide::Max);
        const Rational predicted = 2 * (-12 * a + 3 * b - 1);
        SSCVerdict v = glue_and_verify_SS(cert, pattern, predicted);
        CHECK(v.verified);
        CHECK(v.glued.ratio == rq(-12));
        CHECK(v.glued.m == 12);
        CHECK(v.glued.n == 1);
        CHECK(v.glued.chi == rq(-144));
        CHECK(v.glued.boundary_count == 12);
        CHECK(v.glued.q == 1);
    }

    SECTION("mildly negative branch") {
        const Rational a = rq(-1, 8), b = rq(-2);
        SurfaceRecord pattern = solve_weights(a, DegreeSide::Max);
        JonesSurfaceCertificate cert = make_certificate(a, b, 1, DegreeSide::Max);
        SSCVerdict v = glue_and_verify_SS(cert, pattern, 2 * (b - 1));
        CHECK(v.verified);
        CHECK(v.glued.ratio == rq(-6));
        CHECK(v.glued.q == 2);
    }

    SECTION("steep minimum branch") {
        const Rational a = rq(-1), b = rq(1);
        SurfaceRecord pattern = solve_weights(a, DegreeSide::Min);
        JonesSurfaceCertificate cert = make_certificate(a, b, 1, DegreeSide::Min);
        const Rational predicted = -2 * (-12 * a + 3 * b - rq(1, 2));
        SSCVerdict v = glue_and_verify_SS(cert, pattern, predicted);
        CHECK(v.verified);
        CHECK(v.glued.ratio == rq(-29));
        CHECK(v.glued.m == 6);
        CHECK(v.glued.n == 1);
    }

    SECTION("shallow minimum branch needs no companion") {
        SurfaceRecord pattern = solve_weights(rq(0), DegreeSide::Min);
        JonesSurfaceCertificate cert = make_certificate(rq(0), rq(1, 2), 3, DegreeSide::Min);
        SSCVerdict v = glue_and_verify_SS(cert, pattern, rq(-1));  // -2 b*_M, b*_M = 1/2
        CHECK(v.verified);
        CHECK(v.glued.m == 0);
        CHECK(v.glued.n == 1);
        CHECK(v.glued.chi == rq(-2));
        CHECK(v.glued.boundary_count == 2);
        CHECK(v.glued.q == 1);
        CHECK(v.glued.ratio == rq(-1));
    }

    SECTION("mismatched boundary slopes cannot glue") {
        SurfaceRecord pattern = solve_weights(rq(1, 6), DegreeSide::Max);
        JonesSurfaceCertificate cert = make_certificate(rq(1, 3), rq(-1), 1, DegreeSide::Max);
        CHECK_THROWS_AS(glue_and_verify_SS(cert, pattern, rq(0)), UnsolvableMatching);
    }

    SECTION("plain catalog records cannot glue") {
        SurfaceRecord bare = catalog_eval(SurfacePath::Gamma1, 24, 2);
        JonesSurfaceCertificate cert = make_certificate(rq(1, 6), rq(-1), 1, DegreeSide::Max);
        CHECK_THROWS_AS(glue_and_verify_SS(cert, bare, rq(0)), UnsolvableMatching);
    }
}

TEST_CASE("glued ratios across random slopes") {
    std::mt19937_64 rng(52114);
    std::uniform_int_distribution<long long> small(1, 24), den(1, 12), half(0, 8),
        boundary(1, 8), scale(2, 5);

    auto check_branch = [&](const Rational& a, const Rational& b, DegreeSide side,
                            const Rational& expected) {
        SurfaceRecord pattern = solve_weights(a, side);
        const long long count = boundary(rng);
        JonesSurfaceCertificate cert = make_certificate(a, b, count, side);
        SSCVerdict v = glue_and_verify_SS(cert, pattern, expected);
        REQUIRE(v.verified);
        REQUIRE(v.glued.ratio == expected);

        // Gluing against k parallel copies of the companion surface scales
        // the solved copy counts but leaves the ratio unchanged.
        JonesSurfaceCertificate parallel =
            make_certificate(a, b, count * scale(rng), side);
        SSCVerdict v2 = glue_and_verify_SS(parallel, pattern, expected);
        REQUIRE(v2.glued.ratio == v.glued.ratio);
    };

    SECTION("steep positive slopes") {
        int done = 0;
        while (done < 100) {
            const Rational a = make_rational(small(rng), den(rng));
            if (a < rq(1, 12)) continue;
            const Rational b = make_rational(-half(rng), 2);
            check_branch(a, b, DegreeSide::Max, 2 * (-12 * a + 3 * b - 1));
            ++done;
        }
    }

    SECTION("shallow positive slopes") {
        int done = 0;
        while (done < 100) {
            const Rational a = make_rational(small(rng) % 3 + 1, den(rng) + 36);
            if (a >= rq(1, 12)) continue;
            const Rational b = make_rational(-half(rng), 2);
            check_branch(a, b, DegreeSide::Max, 2 * (-12 * a + 3 * b - 1));
            ++done;
        }
    }

    SECTION("mildly negative slopes") {
        int done = 0;
        while (done < 100) {
            const Rational a = make_rational(-(small(rng) % 4), den(rng) + 12);
            if (a < rq(-1, 4)) continue;
            const Rational b = make_rational(-half(rng), 2);
            check_branch(a, b, DegreeSide::Max, 2 * (b - 1));
            ++done;
        }
    }

    SECTION("steep negative minimum slopes") {
        int done = 0;
        while (done < 100) {
            const Rational a = make_rational(-small(rng) - 1, den(rng));
            if (a >= rq(-1, 12)) continue;
            const Rational b = make_rational(half(rng), 2);
            check_branch(a, b, DegreeSide::Min,
                         -2 * (-12 * a + 3 * b - rq(1, 2)));
            ++done;
        }
    }

    SECTION("shallow minimum slopes") {
        for (int done = 0; done < 100; ++done) {
            const Rational a = make_rational(-(small(rng) % 2), den(rng) + 12);
            const Rational b = make_rational(half(rng), 2);
            check_branch(a, b, DegreeSide::Min, rq(-1));
        }
    }
}

TEST_CASE("the steep max-side regime forces a boundary slope") {
    SECTION("interior slopes contradict") {
        AddendumReport r = addendum_check(rq(-1, 2), rq(-1));
        CHECK(r.contradiction);
        CHECK(r.glued_ratio == 2 * rq(-1) + 8 * rq(-1, 2));  // 2b + 8a
        CHECK(r.predicted_ratio == rq(-4));                  // 2b - 2
    }

    SECTION("the boundary slope is consistent") {
        AddendumReport r = addendum_check(rq(-1, 4), rq(-1));
        CHECK_FALSE(r.contradiction);
        CHECK(r.glued_ratio == r.predicted_ratio);
    }

    SECTION("shallow slopes are out of regime") {
        CHECK_THROWS_AS(addendum_check(rq(-1, 8), rq(-1)), OutOfRegime);
        CHECK_THROWS_AS(addendum_check(rq(0), rq(-1)), OutOfRegime);
    }

    SECTION("randomized dichotomy") {
        std::mt19937_64 rng(77);
        std::uniform_int_distribution<long long> num(1, 30), den(1, 12), half(0, 8);
        int done = 0;
        while (done < 100) {
            const Rational a = make_rational(-num(rng), den(rng));
            if (a > rq(-1, 4)) continue;
            const Rational b = make_rational(-half(rng), 2);
            AddendumReport r = addendum_check(a, b);
            REQUIRE(r.glued_ratio == 2 * b + 8 * a);
            REQUIRE(r.contradiction == (a != rq(-1, 4)));
            ++done;
        }
    }
}
