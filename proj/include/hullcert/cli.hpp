#pragma once

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hullcert/json_io.hpp"

namespace hullcert::cli {

/// Machine-readable verification report. Every verified item embeds the
/// exact values and witnesses it relied on, so a report can be re-checked
/// without re-running the tool. Reports are byte-identical across runs for
/// the same inputs; the optional timing field is emitted only on request
/// so the default output stays deterministic.
struct Report {
    Json body = Json::object();
    int verified = 0;
    int falsified = 0;
    int inconclusive = 0;

    void item(Json j, const std::string& status) {
        j["status"] = status;
        if (status == "verified")
            ++verified;
        else if (status == "falsified")
            ++falsified;
        else
            ++inconclusive;
        body["items"].push_back(std::move(j));
    }

    std::string verdict() const {
        if (falsified > 0) return "falsified";
        if (inconclusive > 0) return "inconclusive";
        return "verified";
    }

    int exit_code() const {
        if (falsified > 0) return 1;
        if (inconclusive > 0) return 3;
        return 0;
    }

    void finalize(const std::string& command, SpaceModel model, Json parameters) {
        body["command"] = command;
        body["counts"] = Json{{"falsified", falsified}, {"inconclusive", inconclusive}, {"verified", verified}};
        body["model"] = to_string(model);
        body["parameters"] = std::move(parameters);
        body["verdict"] = verdict();
    }
};

inline Report cmd_biorth(SpaceModel model, int max_index) {
    if (max_index < 1) throw validation_error("--max-index must be >= 1");
    Report rep;
    rep.body["items"] = Json::array();
    const Rational half = rat(1, 2);
    for (int i = 1; i <= max_index; ++i) {
        DualFunctional ei = biorth_functional(model, i);
        for (int j = 1; j <= max_index; ++j) {
            Rational v = evaluate_x(ei, basis_vector(model, j));
            bool ok = (i > j) ? (v == 0) : (v == 1 && v > half);
            rep.item({{"i", i}, {"j", j}, {"value", to_string(v)}, {"expect", i > j ? "0" : "1"}},
                     ok ? "verified" : "falsified");
        }
    }
    rep.finalize("biorth", model, Json{{"max_index", max_index}});
    return rep;
}

inline Report cmd_generators(SpaceModel model, int depth) {
    if (depth < 2) throw validation_error("--depth must be >= 2");
    Report rep;
    rep.body["items"] = Json::array();
    rep.body["generators"] = Json::array();
    for (int k = 1; k < depth; ++k) {
        for (int n = k + 1; n <= depth; ++n) {
            GeneratorChain chain({k, n});
            AugPoint point = generator_point(model, chain);
            rep.body["generators"].push_back({{"chain", to_json(chain)}, {"point", to_json(point)}});
            for (int i = 1; i <= depth; ++i) {
                Rational closed = extended_functional_value(i, chain);
                Rational direct = evaluate(extended_functional(model, i), point);
                std::string region = i <= k ? "low" : (i <= n ? "middle" : "high");
                bool ok = closed == direct;
                if (i <= k)
                    ok = ok && closed >= 1;
                else if (i <= n)
                    ok = ok && closed >= rat(1, k);
                else
                    ok = ok && closed == rat(1, n);
                rep.item({{"i", i}, {"k", k}, {"n", n}, {"region", region}, {"value", to_string(closed)}},
                         ok ? "verified" : "falsified");
            }
        }
    }
    rep.finalize("generators", model, Json{{"depth", depth}});
    return rep;
}

inline Report cmd_distance(SpaceModel model, const AugPoint& point, int depth, int budget,
                           const std::string& dump_lp_path) {
    Report rep;
    rep.body["items"] = Json::array();
    TruncatedHull hull = build_truncated_hull(model, 1, depth);
    if (!dump_lp_path.empty()) {
        std::ofstream out(dump_lp_path);
        if (!out) throw validation_error("cannot open --dump-lp path");
        out << format_lp(dist_lp_problem(point, hull.generators));
    }

    DistanceBracket bracket = distance_bracket(point, hull, budget);
    rep.body["bracket"] = to_json(bracket);
    rep.item({{"check", "bracket_order"}, {"lo", to_string(bracket.lo)}, {"hi", to_string(bracket.hi)}},
             bracket.lo <= bracket.hi ? "verified" : "falsified");
    if (bracket.lo_witness) {
        rep.item({{"check", "positivity_certificate"}, {"certificate", to_json(*bracket.lo_witness)}},
                 verify_certificate(*bracket.lo_witness) ? "verified" : "falsified");
    } else {
        rep.item({{"check", "positivity_certificate"},
                  {"note", "certificate search exhausted; no claim about membership in the closed hull"}},
                 "inconclusive");
    }
    rep.finalize("distance", model, Json{{"depth", depth}, {"budget", budget}, {"point", to_json(point)}});
    return rep;
}

inline Report cmd_unbounded(SpaceModel model, const Rational& bound, const Rational& eps) {
    UnboundednessWitness w = build_unbounded_reciprocal_witness(model, bound, eps);
    Report rep;
    rep.body["items"] = Json::array();
    rep.body["witness"] = to_json(w);
    rep.item({{"check", "diameter"}, {"value", to_string(w.diameter)}, {"eps", to_string(eps)},
              {"cap_4_over_k0", to_string(rat(4, w.k0))}},
             (w.diameter < eps && w.diameter <= rat(4, w.k0)) ? "verified" : "falsified");
    Rational best_reciprocal(0);
    for (const auto& f : w.facts) {
        bool ok = f.distance_lower > 0 && f.distance_upper == rat(1, f.n) && f.reciprocal_lower == Rational(f.n);
        if (f.reciprocal_lower > best_reciprocal) best_reciprocal = f.reciprocal_lower;
        rep.item({{"check", "point"},
                  {"n", f.n},
                  {"distance_upper", to_string(f.distance_upper)},
                  {"distance_lower", to_string(f.distance_lower)},
                  {"reciprocal_lower", to_string(f.reciprocal_lower)}},
                 ok ? "verified" : "falsified");
    }
    rep.item({{"check", "reciprocal_exceeds_bound"}, {"best", to_string(best_reciprocal)},
              {"bound", to_string(bound)}},
             best_reciprocal > bound ? "verified" : "falsified");
    rep.finalize("unbounded", model, Json{{"bound", to_string(bound)}, {"eps", to_string(eps)}});
    return rep;
}

inline Report cmd_nested_from(const NestedSublevelReport& r, SpaceModel model, int depth, const Rational& eps) {
    Report rep;
    rep.body["items"] = Json::array();
    rep.body["report"] = to_json(r);
    rep.item({{"check", "center_positivity"}, {"lower", to_string(r.center_lower)}},
             r.center_lower > 0 ? "verified" : "falsified");
    for (const auto& row : r.rows) {
        bool ok = row.distance_to_center <= eps && row.upper <= row.level && row.lower > 0;
        rep.item({{"check", "row"},
                  {"n", row.n},
                  {"distance_to_center", to_string(row.distance_to_center)},
                  {"distance_upper", to_string(row.upper)},
                  {"distance_lower", to_string(row.lower)}},
                 ok ? "verified" : "falsified");
    }
    rep.finalize("nested", model, Json{{"depth", depth}, {"eps", to_string(eps)}});
    return rep;
}

inline Report cmd_nested(SpaceModel model, int depth, const Rational& eps) {
    return cmd_nested_from(build_nested_sublevel_report(model, depth, eps), model, depth, eps);
}

inline std::string nested_csv(const NestedSublevelReport& r) {
    std::ostringstream out;
    out << "n,distance_to_center,distance_upper,distance_lower\n";
    for (const auto& row : r.rows)
        out << row.n << "," << to_string(row.distance_to_center) << "," << to_string(row.upper) << ","
            << to_string(row.lower) << "\n";
    return out.str();
}

inline Report cmd_iterated(SpaceModel model, int order, const std::vector<Rational>& eps_list) {
    IteratedSmallSetsReport r = build_iterated_small_sets(model, order, eps_list);
    Report rep;
    rep.body["items"] = Json::array();
    rep.body["report"] = to_json(r);
    for (std::size_t j = 0; j < r.levels.size(); ++j) {
        const auto& level = r.levels[j];
        bool nested_ok = true;
        if (j + 1 < r.levels.size()) {
            for (const auto& deeper : r.levels[j + 1].points) {
                bool found = false;
                for (const auto& pt : level.points) found = found || pt == deeper;
                nested_ok = nested_ok && found;
            }
        }
        rep.item({{"check", "level"},
                  {"level", level.level},
                  {"points", static_cast<int>(level.points.size())},
                  {"diameter", to_string(level.diameter)},
                  {"eps", to_string(level.eps)},
                  {"contains_next_level", nested_ok}},
                 (level.diameter < level.eps && nested_ok) ? "verified" : "falsified");
    }
    for (const auto& ib : r.innermost)
        rep.item({{"check", "innermost_bound"}, {"chain", to_json(ib.chain)},
                  {"distance_upper", to_string(ib.upper)}},
                 "verified");
    Json eps_json = Json::array();
    for (const auto& e : eps_list) eps_json.push_back(to_string(e));
    rep.finalize("iterated", model, Json{{"p", order}, {"eps", eps_json}});
    return rep;
}

inline Report cmd_renorm(SpaceModel model, const std::vector<int>& depths, const Rational& eps, int budget) {
    Report rep;
    rep.body["items"] = Json::array();
    Certificate origin_cert = find_certificate(aug_zero(model));
    RenormParams params = derive_renorm_params(model, origin_cert, canonical_origin_upper(model));
    rep.body["params"] = to_json(params);

    const int main_depth = depths.back();
    DualNormBracket dual = dual_norm_bracket(params, main_depth, budget);
    rep.body["dual_norm_bracket"] = to_json(dual);
    rep.item({{"check", "dual_norm_bracket"}, {"lo", to_string(dual.lo)}, {"hi", to_string(dual.hi)},
              {"width", to_string(dual.hi - dual.lo)}},
             (dual.lo <= dual.hi && dual.hi - dual.lo <= rat(1, main_depth)) ? "verified" : "falsified");

    NonAttainmentReport gaps = build_non_attainment_report(params, depths, budget);
    rep.body["non_attainment"] = to_json(gaps);
    for (const auto& row : gaps.rows)
        rep.item({{"check", "gap"}, {"depth", row.depth}, {"gap", to_string(row.gap)},
                  {"certified_lower", to_string(row.argmin_certified_lower)}},
                 (row.gap > 0 && row.gap <= row.gap_cap && row.argmin_certified_lower > 0) ? "verified"
                                                                                           : "falsified");

    AlmostMaximizingReport amax = build_almost_maximizing_set(params, eps, main_depth);
    rep.body["almost_maximizing"] = to_json(amax);
    rep.item({{"check", "almost_maximizing"},
              {"diameter", to_string(amax.diameter)},
              {"diameter_bound", to_string(amax.diameter_bound)},
              {"sup_y_star", to_string(amax.sup_y_star)},
              {"target", to_string(params.beta - rat(1, main_depth))}},
             (amax.diameter <= amax.diameter_bound && amax.sup_y_star >= params.beta - rat(1, main_depth))
                 ? "verified"
                 : "falsified");

    // sample manifest of the inner approximation at the main depth
    TruncatedHull hull = build_truncated_hull(model, 1, main_depth);
    InnerApprox approx = make_inner_approx(params, hull, default_renorm_samples(model, budget));
    Json manifest = Json::array();
    for (std::size_t i = 0; i < approx.samples.size(); ++i)
        manifest.push_back({{"sample", to_json(approx.samples[i])},
                            {"distance", to_string(approx.sample_dist[i])}});
    rep.body["sample_manifest"] = manifest;

    Json depths_json = Json::array();
    for (int d : depths) depths_json.push_back(d);
    rep.finalize("renorm", model,
                 Json{{"budget", budget}, {"depths", depths_json}, {"eps", to_string(eps)}});
    return rep;
}

inline int emit(const Report& rep, const std::string& out_path, const std::string& format,
                const std::string& csv_payload, bool timing, double seconds) {
    std::string text;
    if (format == "csv") {
        if (csv_payload.empty()) throw validation_error("--format csv is not available for this command");
        text = csv_payload;
    } else {
        Json body = rep.body;
        if (timing) body["timing_seconds"] = seconds;
        text = body.dump(2) + "\n";
    }
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw validation_error("cannot open --out path");
        out << text;
    }
    return rep.exit_code();
}

inline int run(int argc, const char* const* argv) {
    CLI::App app{"certified exact computations on two nonreflexive sequence-space models"};
    app.require_subcommand(1);

    std::string model_str = "c0", out_path, format = "json", point_path, dump_lp_path;
    std::string eps_str = "1/10", bound_str = "1000";
    std::vector<std::string> eps_list_str;
    std::vector<int> depths = {5, 10, 20};
    int max_index = 100, depth = 10, budget = 0, order = 2, renorm_budget = 4;
    bool timing = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--model", model_str, "space model")->check(CLI::IsMember({"c0", "l1"}));
        cmd->add_option("--out", out_path, "write the report here instead of stdout");
        cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
        cmd->add_flag("--timing", timing, "include wall-clock timing in the report");
    };

    CLI::App* biorth = app.add_subcommand("biorth", "sweep the biorthogonal system values");
    add_common(biorth);
    biorth->add_option("--max-index", max_index, "sweep i, j up to this index");

    CLI::App* generators = app.add_subcommand("generators", "sweep the generator functional inequalities");
    add_common(generators);
    generators->add_option("--depth", depth, "sweep indices and chains up to this depth");

    CLI::App* distance = app.add_subcommand("distance", "bracket the hull distance of a point");
    add_common(distance);
    distance->add_option("--point", point_path, "JSON point file")->required();
    distance->add_option("--depth", depth, "truncation depth for the upper bound");
    distance->add_option("--budget", budget, "certificate search budget (0 = automatic)");
    distance->add_option("--dump-lp", dump_lp_path, "write the distance LP in text form");

    CLI::App* unbounded = app.add_subcommand("unbounded",
                                             "small-diameter set where the reciprocal distance exceeds a bound");
    add_common(unbounded);
    unbounded->add_option("--bound", bound_str, "reciprocal target, rational p/q");
    unbounded->add_option("--eps", eps_str, "diameter target, rational p/q");

    CLI::App* nested = app.add_subcommand("nested", "nested sublevel-set demonstration");
    add_common(nested);
    nested->add_option("--depth", depth, "number of sublevels");
    nested->add_option("--eps", eps_str, "ball radius, rational p/q");

    CLI::App* iterated = app.add_subcommand("iterated", "iterated small-diameter families");
    add_common(iterated);
    iterated->add_option("--p", order, "iteration order");
    iterated->add_option("--eps", eps_list_str, "per-level diameter targets, rational p/q each");

    CLI::App* renorm = app.add_subcommand("renorm", "equivalent-norm construction and its certificates");
    add_common(renorm);
    renorm->add_option("--depth", depths, "surrogate depths, strictly increasing");
    renorm->add_option("--eps", eps_str, "almost-maximizing diameter target");
    renorm->add_option("--budget", renorm_budget, "sample budget for inner approximations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        SpaceModel model = model_from_string(model_str);
        auto start = std::chrono::steady_clock::now();
        Report rep;
        std::string csv_payload;
        if (app.got_subcommand(biorth)) {
            rep = cmd_biorth(model, max_index);
        } else if (app.got_subcommand(generators)) {
            rep = cmd_generators(model, depth);
        } else if (app.got_subcommand(distance)) {
            std::ifstream in(point_path);
            if (!in) throw validation_error("cannot open point file '" + point_path + "'");
            Json j = Json::parse(in, nullptr, true);
            rep = cmd_distance(model, aug_point_from_json(model, j), depth, budget, dump_lp_path);
        } else if (app.got_subcommand(unbounded)) {
            rep = cmd_unbounded(model, parse_rational(bound_str), parse_rational(eps_str));
        } else if (app.got_subcommand(nested)) {
            NestedSublevelReport r = build_nested_sublevel_report(model, depth, parse_rational(eps_str));
            csv_payload = nested_csv(r);
            rep = cmd_nested_from(r, model, depth, parse_rational(eps_str));
        } else if (app.got_subcommand(iterated)) {
            std::vector<Rational> eps_list;
            for (const auto& s : eps_list_str) eps_list.push_back(parse_rational(s));
            rep = cmd_iterated(model, order, eps_list);
        } else if (app.got_subcommand(renorm)) {
            rep = cmd_renorm(model, depths, parse_rational(eps_str), renorm_budget);
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return emit(rep, out_path, format, csv_payload, timing, seconds);
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const internal_soundness_error& e) {
        std::cerr << "soundness failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

inline int run(const std::vector<std::string>& args) {
    std::vector<std::string> storage = args;
    storage.insert(storage.begin(), "hullcert");
    std::vector<const char*> argv;
    argv.reserve(storage.size());
    for (const auto& s : storage) argv.push_back(s.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

} // namespace hullcert::cli
