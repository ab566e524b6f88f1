#include <catch2/catch_amalgamated.hpp>

#include <mcj/knotdata.hpp>

#include <filesystem>
#include <fstream>
#include <string>

using namespace mcj;

namespace {

Rational rq(long num, long den = 1) { return make_rational(num, den); }

LaurentPoly P(const std::string& text) { return LaurentPoly::parse(text); }

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << contents;
    out.close();
    return path;
}

}  // namespace

TEST_CASE("unknot provider is identically one") {
    KnotProfile k = KnotProfile::unknot();
    CHECK(k.name() == "unknot");
    CHECK(k.provider_kind() == ProviderKind::Unknot);
    CHECK(k.max_color() == -1);
    REQUIRE(k.stats().has_value());
    CHECK(k.stats()->c == 0);
    CHECK(k.stats()->v_A == 1);
    for (long long l = 0; l <= 5; ++l) CHECK(provider_eval(k, l) == LaurentPoly::one());
    CHECK_THROWS_AS(provider_eval(k, -1), MissingColor);
}

TEST_CASE("figure-eight provider matches the cyclotomic expansion") {
    KnotProfile k = KnotProfile::figure_eight();
    CHECK(provider_eval(k, 0) == LaurentPoly::one());
    // Jones polynomial of the figure-eight knot.
    CHECK(provider_eval(k, 1) == P("q^(-2) - q^(-1) + 1 - q^(1) + q^(2)"));
    // Second color, expanded by hand from the two cyclotomic products.
    CHECK(provider_eval(k, 2) ==
          P("q^(-6) - q^(-5) - q^(-4) + 2*q^(-3) - q^(-2) - q^(-1) + 3 "
            "- q^(1) - q^(2) + 2*q^(3) - q^(4) - q^(5) + q^(6)"));

    SECTION("degrees, value at q = 1, and amphichirality") {
        for (long long l = 0; l <= 6; ++l) {
            LaurentPoly jp = provider_eval(k, l);
            CHECK(jp.d_plus() == rq(l * l + l));
            CHECK(jp.d_minus() == rq(-(l * l + l)));
            CHECK(jp.integer_coefficients());
            if (l <= 5) CHECK(jp.eval_one() == 1);
            // 4_1 is amphichiral: the sequence is palindromic in q <-> 1/q.
            CHECK(detail::reversed_exponents(jp) == jp);
        }
    }
}

TEST_CASE("torus-knot provider") {
    KnotProfile k = KnotProfile::torus(2, 3);
    CHECK(k.name() == "torus(2,3)");
    CHECK(k.torus_q() == 3);
    CHECK(provider_eval(k, 0) == LaurentPoly::one());
    // Jones polynomial of the right-handed trefoil.
    CHECK(provider_eval(k, 1) == P("q^(1) + q^(3) - q^(4)"));
    CHECK(provider_eval(k, 2) ==
          P("q^(2) + q^(5) - q^(7) + q^(8) - q^(9) - q^(10) + q^(11)"));

    SECTION("degrees and value at q = 1") {
        for (long long l = 0; l <= 6; ++l) {
            LaurentPoly jp = provider_eval(k, l);
            CHECK(jp.d_minus() == rq(l));
            CHECK(jp.d_plus() == rq(3 * l * l + 5 * l, 2));
            CHECK(jp.integer_coefficients());
            if (l <= 5) CHECK(jp.eval_one() == 1);
        }
    }

    SECTION("mirror image reverses exponents") {
        KnotProfile m = KnotProfile::torus(2, -3);
        CHECK(m.name() == "torus(2,-3)");
        for (long long l = 0; l <= 4; ++l)
            CHECK(provider_eval(m, l) == detail::reversed_exponents(provider_eval(k, l)));
    }

    SECTION("higher odd torus knots") {
        KnotProfile c5 = KnotProfile::torus(2, 5);
        // Jones polynomial of the right-handed (2,5) torus knot.
        CHECK(provider_eval(c5, 1) == P("q^(2) + q^(4) - q^(5) + q^(6) - q^(7)"));
        // Standard positive 5-crossing diagram: all-A state has two circles,
        // so the degree profile is d- = 2l, d+ = (5/2)l^2 + (9/2)l.
        for (long long l = 0; l <= 4; ++l) {
            LaurentPoly jp = provider_eval(c5, l);
            CHECK(jp.d_minus() == rq(2 * l));
            CHECK(jp.d_plus() == rq(5 * l * l + 9 * l, 2));
        }
    }

    SECTION("only T(2, odd q) with |q| >= 3 is supported") {
        CHECK_THROWS_AS(KnotProfile::torus(3, 5), Unsupported);
        CHECK_THROWS_AS(KnotProfile::torus(2, 4), Unsupported);
        CHECK_THROWS_AS(KnotProfile::torus(2, 1), Unsupported);
        CHECK_THROWS_AS(KnotProfile::torus(2, -1), Unsupported);
        CHECK_THROWS_AS(KnotProfile::torus(2, 0), Unsupported);
    }
}

TEST_CASE("degree fitting over a color window") {
    SECTION("trefoil") {
        KnotProfile k = KnotProfile::trefoil();
        CHECK(k.name() == "trefoil");
        REQUIRE(k.stats().has_value());
        CHECK_FALSE(k.fitted_max().has_value());
        fit_profile_degrees(k, 0, 7);
        REQUIRE(k.fitted_max().has_value());
        REQUIRE(k.fitted_min().has_value());
        CHECK(k.fitted_max()->same_coefficients(
            QuasiQuadratic::single(rq(3, 2), rq(0), rq(-3, 2))));
        CHECK(k.fitted_min()->same_coefficients(
            QuasiQuadratic::single(rq(0), rq(1, 2), rq(-1, 2))));
        CHECK(k.fitted_max()->onset() == 1);

        // Unnormalized degrees recovered through J_{K,n} = [n] J'_{K,n-1}.
        for (long long n = 1; n <= 5; ++n) {
            LaurentPoly jp = provider_eval(k, n - 1);
            CHECK(k.fitted_max()->eval(n) == rq(n - 1, 2) + jp.d_plus());
            CHECK(k.fitted_min()->eval(n) == rq(-(n - 1), 2) + jp.d_minus());
        }
    }

    SECTION("figure-eight, cross-validated against the adequate diagram") {
        KnotProfile k = KnotProfile::figure_eight();
        fit_profile_degrees(k, 0, 7);
        CHECK(k.fitted_max()->same_coefficients(
            QuasiQuadratic::single(rq(1), rq(-1, 2), rq(-1, 2))));
        CHECK(k.fitted_min()->same_coefficients(
            QuasiQuadratic::single(rq(-1), rq(1, 2), rq(1, 2))));
        AdequateMinProfile diag = adequate_min_profile(k.stats());
        CHECK(diag.profile.same_coefficients(*k.fitted_min()));
    }

    SECTION("unknot") {
        KnotProfile k = KnotProfile::unknot();
        fit_profile_degrees(k, 0, 5, 1);
        CHECK(k.fitted_max()->same_coefficients(
            QuasiQuadratic::single(rq(0), rq(1, 2), rq(-1, 2))));
        CHECK(k.fitted_min()->same_coefficients(
            QuasiQuadratic::single(rq(0), rq(-1, 2), rq(1, 2))));
        AdequateMinProfile diag = adequate_min_profile(k.stats());
        CHECK(diag.profile.same_coefficients(*k.fitted_min()));
    }

    SECTION("windows with too few samples per class are rejected") {
        KnotProfile k = KnotProfile::trefoil();
        CHECK_THROWS_AS(fit_profile_degrees(k, 0, 5), NoStableFit);
    }
}

TEST_CASE("reduced adequate diagrams pin the minimum-degree profile") {
    SECTION("worked example") {
        DiagramStats s{6, 3, 3, 0, 4, 5};
        AdequateMinProfile p = adequate_min_profile(s);
        CHECK(p.profile.class_triple(0) ==
              QuasiQuadratic::Triple{rq(-3, 2), rq(1), rq(1, 2)});
        CHECK(p.coefficient_sum == 0);
        CHECK(p.two_a_star_integral);
    }

    SECTION("positive diagrams have vanishing leading coefficient") {
        AdequateMinProfile p = adequate_min_profile(KnotProfile::trefoil().stats());
        CHECK(p.profile.class_triple(0) ==
              QuasiQuadratic::Triple{rq(0), rq(1, 2), rq(-1, 2)});
        CHECK(p.coefficient_sum == 0);
    }

    SECTION("missing stats") {
        CHECK_THROWS_AS(adequate_min_profile(std::nullopt), MissingData);
        KnotProfile k = KnotProfile::torus(2, 5);
        CHECK_THROWS_AS(adequate_min_profile(k.stats()), MissingData);
    }

    SECTION("inconsistent stats are rejected") {
        CHECK_THROWS_AS(adequate_min_profile(DiagramStats{4, 1, 2, -1, 3, 3}), Unsupported);
        CHECK_THROWS_AS(adequate_min_profile(DiagramStats{4, 2, 2, 1, 3, 3}), Unsupported);
        CHECK_THROWS_AS(adequate_min_profile(DiagramStats{4, 2, 2, 0, 0, 3}), Unsupported);
    }
}

TEST_CASE("table-file providers") {
    KnotProfile fig8 = KnotProfile::figure_eight();
    std::string good;
    good += "# colored Jones table, one color per line\n";
    good += "\n";
    for (long long l = 0; l <= 4; ++l)
        good += std::to_string(l) + ": " + provider_eval(fig8, l).render() + "\n";
    auto good_path = temp_file("mcj_kd_table_good.txt", good);

    SECTION("round trip against the generating provider") {
        KnotProfile k = KnotProfile::from_table_file(good_path.string());
        CHECK(k.provider_kind() == ProviderKind::Table);
        CHECK(k.name() == "table(" + good_path.string() + ")");
        CHECK(k.max_color() == 4);
        for (long long l = 0; l <= 4; ++l)
            CHECK(provider_eval(k, l) == provider_eval(fig8, l));
        CHECK_THROWS_AS(provider_eval(k, 5), MissingColor);
        CHECK_THROWS_AS(provider_eval(k, -1), MissingColor);

        KnotProfile named = KnotProfile::from_table_file(good_path.string(), "my-knot");
        CHECK(named.name() == "my-knot");

        fit_profile_degrees(k, 0, 4, 1);
        CHECK(k.fitted_min()->same_coefficients(
            QuasiQuadratic::single(rq(-1), rq(1, 2), rq(1, 2))));
    }

    SECTION("malformed tables") {
        auto check_parse_error = [](const std::string& name, const std::string& body) {
            auto path = temp_file(name, body);
            CHECK_THROWS_AS(KnotProfile::from_table_file(path.string()), ParseError);
        };
        check_parse_error("mcj_kd_no_colon.txt", "0: 1\n1 q^(1)\n");
        check_parse_error("mcj_kd_bad_color.txt", "0: 1\nx: q^(1)\n");
        check_parse_error("mcj_kd_repeat.txt", "0: 1\n1: q^(1)\n1: q^(2)\n");
        check_parse_error("mcj_kd_negative.txt", "-1: q^(-1)\n0: 1\n");
        check_parse_error("mcj_kd_gap.txt", "0: 1\n2: q^(2)\n");
        check_parse_error("mcj_kd_no_zero.txt", "1: q^(1)\n2: q^(2)\n");
        check_parse_error("mcj_kd_zero_not_one.txt", "0: q^(1)\n1: q^(2)\n");
        check_parse_error("mcj_kd_empty.txt", "# nothing here\n");
        check_parse_error("mcj_kd_bad_poly.txt", "0: 1\n1: q^(1) + +\n");
        CHECK_THROWS_AS(KnotProfile::from_table_file("/nonexistent/table.txt"), MissingData);
    }
}

TEST_CASE("builtin knot names") {
    CHECK(KnotProfile::builtin("unknot").provider_kind() == ProviderKind::Unknot);
    CHECK(KnotProfile::builtin("figure-eight").provider_kind() == ProviderKind::FigureEight);

    KnotProfile t = KnotProfile::builtin("trefoil");
    CHECK(t.provider_kind() == ProviderKind::Torus2);
    CHECK(t.torus_q() == 3);
    CHECK(t.stats().has_value());

    KnotProfile t23 = KnotProfile::builtin("torus(2,3)");
    CHECK(t23.torus_q() == 3);
    CHECK(t23.stats().has_value());  // standard positive diagram is known
    CHECK(provider_eval(t23, 1) == provider_eval(t, 1));

    KnotProfile t25 = KnotProfile::builtin("torus(2,5)");
    CHECK(t25.torus_q() == 5);
    CHECK_FALSE(t25.stats().has_value());

    CHECK(KnotProfile::builtin("torus(2,-3)").torus_q() == -3);

    CHECK_THROWS_AS(KnotProfile::builtin("granny"), Unsupported);
    CHECK_THROWS_AS(KnotProfile::builtin("torus(2,4)"), Unsupported);
    CHECK_THROWS_AS(KnotProfile::builtin("torus(2,x)"), Unsupported);
    CHECK_THROWS_AS(KnotProfile::builtin("torus(2)"), Unsupported);
}

TEST_CASE("json profile documents") {
    SECTION("builtin provider with explicit stats") {
        auto path = temp_file("mcj_kd_doc_builtin.json", R"({
            "name": "my-figure-eight",
            "provider": "figure-eight",
            "stats": {"c": 4, "c_plus": 2, "c_minus": 2, "v_A": 3, "v_B": 3}
        })");
        KnotProfile k = KnotProfile::from_json_file(path.string());
        CHECK(k.name() == "my-figure-eight");
        CHECK(k.provider_kind() == ProviderKind::FigureEight);
        REQUIRE(k.stats().has_value());
        CHECK(k.stats()->writhe == 0);  // defaulted from c_plus - c_minus
        CHECK(adequate_min_profile(k.stats()).profile.class_triple(0) ==
              QuasiQuadratic::Triple{rq(-1), rq(1, 2), rq(1, 2)});
    }

    SECTION("table provider resolves relative to the document") {
        KnotProfile t = KnotProfile::trefoil();
        std::string table;
        for (long long l = 0; l <= 3; ++l)
            table += std::to_string(l) + ": " + provider_eval(t, l).render() + "\n";
        temp_file("mcj_kd_rel_table.txt", table);
        auto doc = temp_file("mcj_kd_doc_table.json",
                             R"json({"provider": "table(mcj_kd_rel_table.txt)"})json");
        KnotProfile k = KnotProfile::from_json_file(doc.string());
        CHECK(k.max_color() == 3);
        CHECK(provider_eval(k, 1) == P("q^(1) + q^(3) - q^(4)"));
    }

    SECTION("malformed documents") {
        auto bad_json = temp_file("mcj_kd_doc_bad.json", "{ not json");
        CHECK_THROWS_AS(KnotProfile::from_json_file(bad_json.string()), ParseError);

        auto no_provider = temp_file("mcj_kd_doc_no_provider.json", R"({"name": "x"})");
        CHECK_THROWS_AS(KnotProfile::from_json_file(no_provider.string()), ParseError);

        auto bad_stats = temp_file("mcj_kd_doc_bad_stats.json", R"({
            "provider": "unknot",
            "stats": {"c": "four", "c_plus": 2, "c_minus": 2, "v_A": 3, "v_B": 3}
        })");
        CHECK_THROWS_AS(KnotProfile::from_json_file(bad_stats.string()), ParseError);

        auto inconsistent = temp_file("mcj_kd_doc_inconsistent.json", R"({
            "provider": "unknot",
            "stats": {"c": 5, "c_plus": 2, "c_minus": 2, "v_A": 3, "v_B": 3}
        })");
        CHECK_THROWS_AS(KnotProfile::from_json_file(inconsistent.string()), Unsupported);

        auto unknown = temp_file("mcj_kd_doc_unknown.json", R"({"provider": "granny"})");
        CHECK_THROWS_AS(KnotProfile::from_json_file(unknown.string()), Unsupported);

        CHECK_THROWS_AS(KnotProfile::from_json_file("/nonexistent/doc.json"), MissingData);
    }
}
