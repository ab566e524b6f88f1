// Command-line surface for the colored-Jones toolkit.
//
// Exit codes: 0 success, 1 computation/verification failure, 2 usage error.
// The environment variable MCJ_N_CAP (default 12) bounds every requested
// color / window endpoint; requests beyond the cap are usage errors.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcj/mcj.hpp"

namespace {

using nlohmann::json;

long long color_cap() {
    if (const char* env = std::getenv("MCJ_N_CAP")) {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end != nullptr && *end == '\0' && v > 0) return v;
    }
    return 12;
}

// Builtin name, profile document (.json), or colored-Jones table path.
mcj::KnotProfile resolve_knot(const std::string& name) {
    const bool pathlike = name.find('/') != std::string::npos || name.ends_with(".json") ||
                          name.ends_with(".txt");
    if (!pathlike) return mcj::KnotProfile::builtin(name);
    if (name.ends_with(".json")) return mcj::KnotProfile::from_json_file(name);
    return mcj::KnotProfile::from_table_file(name);
}

mcj::Rational parse_rational(const std::string& text) {
    try {
        mcj::Rational v(text);
        if (v.get_den() == 0) throw mcj::ParseError("zero denominator", 0);
        v.canonicalize();
        return v;
    } catch (const std::invalid_argument&) {
        throw mcj::ParseError("not a rational: " + text, 0);
    }
}

mcj::DegreeSide parse_side(const std::string& side) {
    if (side == "max") return mcj::DegreeSide::Max;
    if (side == "min") return mcj::DegreeSide::Min;
    throw mcj::Unsupported("side must be 'max' or 'min', got '" + side + "'");
}

json qq_json(const mcj::QuasiQuadratic& q) {
    json classes = json::array();
    for (const auto& t : q.classes())
        classes.push_back({{"a", mcj::rational_str(t.a)},
                           {"b", mcj::rational_str(t.b)},
                           {"c", mcj::rational_str(t.c)}});
    return {{"period", q.period()}, {"onset", q.onset()}, {"classes", classes}};
}

json record_json(const mcj::SurfaceRecord& rec) {
    return {{"path", mcj::to_string(rec.path)},
            {"branch_pattern", rec.branch_pattern},
            {"alpha", rec.alpha},
            {"beta", rec.beta},
            {"swapped", rec.swapped},
            {"chi", rec.chi},
            {"slope_1", rec.slope_1.render()},
            {"slope_2", rec.slope_2.render()},
            {"count_1", rec.count_1},
            {"count_2", rec.count_2}};
}

void emit(const std::string& format, const std::string& text, const json& payload) {
    if (format == "json")
        std::cout << payload.dump(2) << "\n";
    else
        std::cout << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact colored-Jones computations for Mazur doubles"};
    app.require_subcommand(1);

    std::string format = "text";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    std::string knot, side = "max", diagram, a_text, b_text;
    long long n = 0, lo = 0, hi = 7;
    int period = 2;
    long long alpha = 0, beta = 0, boundary = 1;
    bool eventual_only = false, strict = false, jones = false;

    CLI::App* cmd_cj = app.add_subcommand("cj", "evaluate J'_{K,n}");
    cmd_cj->add_option("--knot", knot, "builtin name or profile/table path")->required();
    cmd_cj->add_option("--n", n, "color")->required();

    CLI::App* cmd_mz = app.add_subcommand("mazur-cj", "evaluate J'_{M(K),n} for the Mazur double");
    cmd_mz->add_option("--knot", knot, "companion: builtin name or profile/table path")->required();
    cmd_mz->add_option("--n", n, "color")->required();

    CLI::App* cmd_fit = app.add_subcommand("fit", "fit the degree quasi-quadratics of K");
    cmd_fit->add_option("--knot", knot)->required();
    cmd_fit->add_option("--lo", lo, "window start")->capture_default_str();
    cmd_fit->add_option("--hi", hi, "window end")->capture_default_str();
    cmd_fit->add_option("--period", period, "residue period (1 or 2)")->capture_default_str();

    CLI::App* cmd_pred = app.add_subcommand("predict", "predict the double's degree profile");
    cmd_pred->add_option("--knot", knot)->required();
    cmd_pred->add_option("--side", side, "max or min")->required();
    cmd_pred->add_option("--lo", lo, "fitting window start")->capture_default_str();
    cmd_pred->add_option("--hi", hi, "fitting window end")->capture_default_str();
    cmd_pred->add_flag("--eventual-only", eventual_only,
                       "treat the fitted profile as eventually valid only");

    CLI::App* cmd_ver = app.add_subcommand("verify", "compare predicted vs computed degrees");
    cmd_ver->add_option("--knot", knot)->required();
    cmd_ver->add_option("--side", side, "max or min")->required();
    cmd_ver->add_option("--lo", lo, "first color")->required();
    cmd_ver->add_option("--hi", hi, "last color")->required();

    CLI::App* cmd_sur = app.add_subcommand("surfaces", "evaluate the surface catalog at weights");
    cmd_sur->add_option("--alpha", alpha)->required();
    cmd_sur->add_option("--beta", beta)->required();

    CLI::App* cmd_ssc = app.add_subcommand("ssc", "solve, certify, and glue a Jones surface");
    cmd_ssc->add_option("--a", a_text, "slope coefficient a (rational)")->required();
    cmd_ssc->add_option("--b", b_text, "linear coefficient b (rational)")->required();
    cmd_ssc->add_option("--side", side, "max or min")->required();
    cmd_ssc->add_option("--boundary", boundary, "companion surface boundary count")
        ->capture_default_str();

    CLI::App* cmd_cross = app.add_subcommand("crossing", "diameter and crossing bounds of M(K)");
    cmd_cross->add_option("--knot", knot)->required();
    cmd_cross->add_flag("--strict", strict, "fail on hypothesis violations");

    CLI::App* cmd_br = app.add_subcommand("bracket", "Kauffman bracket state sum of a diagram");
    cmd_br->add_option("--diagram", diagram, "planar diagram file")->required();
    cmd_br->add_flag("--jones", jones, "writhe-normalized Jones polynomial at n = 1");

    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const long long cap = color_cap();
    if ((cmd_cj->parsed() || cmd_mz->parsed()) && (n < 0 || n > cap)) {
        std::cerr << "usage error: color " << n << " outside [0, " << cap
                  << "] (raise MCJ_N_CAP to extend)\n";
        return 2;
    }
    if ((cmd_fit->parsed() || cmd_pred->parsed() || cmd_ver->parsed()) &&
        (lo < 0 || hi > cap || lo > hi)) {
        std::cerr << "usage error: window [" << lo << ", " << hi << "] outside [0, " << cap
                  << "] (raise MCJ_N_CAP to extend)\n";
        return 2;
    }

    try {
        if (cmd_cj->parsed()) {
            mcj::KnotProfile K = resolve_knot(knot);
            mcj::LaurentPoly p = mcj::provider_eval(K, n);
            emit(format, p.render() + "\n",
                 {{"command", "cj"}, {"knot", K.name()}, {"n", n}, {"polynomial", p.render()}});
        } else if (cmd_mz->parsed()) {
            mcj::KnotProfile K = resolve_knot(knot);
            mcj::LaurentPoly p = mcj::mazur_normalized_cj(K, n);
            emit(format, p.render() + "\n",
                 {{"command", "mazur-cj"},
                  {"knot", K.name()},
                  {"n", n},
                  {"polynomial", p.render()}});
        } else if (cmd_fit->parsed()) {
            mcj::KnotProfile K = resolve_knot(knot);
            mcj::fit_profile_degrees(K, lo, hi, period);
            std::string text = "fit " + K.name() + " over n = " + std::to_string(lo) + ".." +
                               std::to_string(hi) + "\n  delta  = " + K.fitted_max()->describe() +
                               "\n  delta* = " + K.fitted_min()->describe() + "\n";
            emit(format, text,
                 {{"command", "fit"},
                  {"knot", K.name()},
                  {"lo", lo},
                  {"hi", hi},
                  {"delta", qq_json(*K.fitted_max())},
                  {"delta_star", qq_json(*K.fitted_min())}});
        } else if (cmd_pred->parsed()) {
            mcj::KnotProfile K = resolve_knot(knot);
            const mcj::DegreeSide s = parse_side(side);
            if (!K.fitted_max() || !K.fitted_min()) mcj::fit_profile_degrees(K, lo, hi);
            std::string text;
            json payload = {{"command", "predict"}, {"knot", K.name()}, {"side", side}};
            if (s == mcj::DegreeSide::Max) {
                mcj::MaxPrediction pred = mcj::predict_max(*K.fitted_max());
                text = "predicted delta_M  = " + pred.predicted.describe() + "\n";
                for (const auto& b : pred.branches) text += "  branch: " + b + "\n";
                for (const auto& w : pred.warnings) text += "  warning: " + w + "\n";
                payload["predicted"] = qq_json(pred.predicted);
                payload["branches"] = pred.branches;
                payload["warnings"] = pred.warnings;
            } else {
                mcj::MinPrediction pred = mcj::predict_min(*K.fitted_min(), false, eventual_only);
                text = "predicted delta*_M = " + pred.predicted.describe() + "\n";
                for (const auto& b : pred.branches) text += "  branch: " + b + "\n";
                for (const auto& w : pred.warnings) text += "  warning: " + w + "\n";
                payload["predicted"] = qq_json(pred.predicted);
                payload["branches"] = pred.branches;
                payload["warnings"] = pred.warnings;
            }
            emit(format, text, payload);
        } else if (cmd_ver->parsed()) {
            mcj::KnotProfile K = resolve_knot(knot);
            const mcj::DegreeSide s = parse_side(side);
            mcj::VerificationReport rep = mcj::verify_prediction(K, s, lo, hi);
            json rows = json::array();
            for (const auto& r : rep.rows)
                rows.push_back({{"n", r.n},
                                {"computed", mcj::rational_str(r.computed)},
                                {"predicted", mcj::rational_str(r.predicted)},
                                {"match", r.match}});
            emit(format, rep.render(),
                 {{"command", "verify"},
                  {"knot", K.name()},
                  {"side", side},
                  {"rows", rows},
                  {"agreement_onset", rep.agreement_onset},
                  {"hypotheses_satisfied", rep.hypotheses_satisfied},
                  {"warnings", rep.warnings}});
            // Predictions are eventual statements: failure means no agreeing
            // window tail at all while the hypotheses hold.
            if (rep.hypotheses_satisfied && rep.agreement_onset < 0) return 1;
        } else if (cmd_sur->parsed()) {
            static const mcj::SurfacePath kPaths[] = {
                mcj::SurfacePath::Gamma1, mcj::SurfacePath::Gamma2, mcj::SurfacePath::Gamma3,
                mcj::SurfacePath::Gamma4, mcj::SurfacePath::Gamma5, mcj::SurfacePath::Gamma6,
                mcj::SurfacePath::Gamma7};
            std::string text;
            json records = json::array();
            for (mcj::SurfacePath p : kPaths) {
                mcj::SurfaceRecord rec = mcj::catalog_eval(p, alpha, beta);
                text += rec.render() + "\n";
                records.push_back(record_json(rec));
            }
            emit(format, text,
                 {{"command", "surfaces"}, {"alpha", alpha}, {"beta", beta},
                  {"records", records}});
        } else if (cmd_ssc->parsed()) {
            const mcj::DegreeSide s = parse_side(side);
            const mcj::Rational a = parse_rational(a_text);
            const mcj::Rational b = parse_rational(b_text);
            if (s == mcj::DegreeSide::Max && a < mcj::make_rational(-1, 4)) {
                mcj::AddendumReport rep = mcj::addendum_check(a, b);
                emit(format, rep.render(),
                     {{"command", "ssc"},
                      {"regime", "steep max-side addendum"},
                      {"glued_ratio", mcj::rational_str(rep.glued_ratio)},
                      {"predicted_ratio", mcj::rational_str(rep.predicted_ratio)},
                      {"contradiction", rep.contradiction}});
                return 0;
            }
            mcj::SurfaceRecord record = mcj::solve_weights(a, s);
            mcj::QuasiQuadratic profile = mcj::QuasiQuadratic::single(a, b, 0);
            const mcj::QuasiQuadratic predicted_profile =
                s == mcj::DegreeSide::Max ? mcj::predict_max(profile).predicted
                                          : mcj::predict_min(profile).predicted;
            const mcj::Rational linear = predicted_profile.widened().class_triple(0).b;
            const mcj::Rational predicted =
                (s == mcj::DegreeSide::Max ? 2 : -2) * linear;
            mcj::JonesSurfaceCertificate cert = mcj::make_certificate(a, b, boundary, s);
            mcj::SSCVerdict verdict = mcj::glue_and_verify_SS(cert, record, predicted);
            emit(format, record.render() + cert.render() + "\n" + verdict.render(),
                 {{"command", "ssc"},
                  {"record", record_json(record)},
                  {"predicted_ratio", mcj::rational_str(predicted)},
                  {"glued_ratio", mcj::rational_str(verdict.glued.ratio)},
                  {"verified", verdict.verified}});
            return verdict.verified ? 0 : 1;
        } else if (cmd_cross->parsed()) {
            mcj::CrossingReport rep = mcj::diameter_and_bounds(resolve_knot(knot), strict);
            json flags = rep.hypothesis_flags;
            json adequacy = {{"steep_branch", rep.adequacy.steep_branch},
                             {"not_a_adequate", rep.adequacy.not_a_adequate}};
            json sums = json::array();
            for (const auto& s : rep.adequacy.obstruction_sums)
                sums.push_back(mcj::rational_str(s));
            adequacy["obstruction_sums"] = sums;
            emit(format, rep.render(),
                 {{"command", "crossing"},
                  {"knot", rep.name},
                  {"dj_K", mcj::rational_str(rep.dj_K)},
                  {"dj_M", mcj::rational_str(rep.dj_M)},
                  {"lower", rep.lower},
                  {"upper", rep.upper},
                  {"two_value", rep.two_value},
                  {"certified", rep.certified},
                  {"hypothesis_flags", flags},
                  {"adequacy", adequacy}});
        } else if (cmd_br->parsed()) {
            mcj::PlanarDiagram D = mcj::PlanarDiagram::load(diagram);
            if (jones) {
                mcj::LaurentPoly p = mcj::jones_at_n1(D);
                emit(format, p.render() + "\n",
                     {{"command", "bracket"},
                      {"diagram", diagram},
                      {"jones", p.render()},
                      {"writhe", D.writhe()}});
            } else {
                mcj::LaurentPoly p = mcj::kauffman_bracket(D);
                emit(format, p.render() + "\n",
                     {{"command", "bracket"},
                      {"diagram", diagram},
                      {"bracket", p.render()},
                      {"writhe", D.writhe()}});
            }
        }
    } catch (const mcj::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
