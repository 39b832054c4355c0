#pragma once

#include <json.hpp>

#include <string>

#include "hullcert/certificates.hpp"
#include "hullcert/renorm.hpp"
#include "hullcert/witnesses.hpp"

namespace hullcert {

using Json = nlohmann::json;

// Shared wire formats: rationals as "p/q" strings ("p" when q = 1), sparse
// vectors as objects mapping index strings to rational strings. Every module
// report uses these; display never rounds.

inline Json to_json(const Rational& q) { return to_string(q); }

inline Rational rational_from_json(const Json& j) {
    if (!j.is_string()) throw validation_error("rational must be a JSON string like \"3/4\"");
    return parse_rational(j.get<std::string>());
}

inline Json to_json(const SparseVector& v) {
    Json obj = Json::object();
    for (const auto& [i, q] : v.coords()) obj[std::to_string(i)] = to_string(q);
    return obj;
}

inline SpaceModel model_from_string(const std::string& s) {
    if (s == "c0") return SpaceModel::C0Summing;
    if (s == "l1") return SpaceModel::L1Tail;
    throw validation_error("unknown model '" + s + "' (expected c0 or l1)");
}

inline SparseVector sparse_vector_from_json(SpaceModel model, const Json& j) {
    if (!j.is_object()) throw validation_error("sparse vector must be a JSON object");
    SparseVector v(model);
    for (auto it = j.begin(); it != j.end(); ++it) {
        int index = 0;
        try {
            std::size_t pos = 0;
            index = std::stoi(it.key(), &pos);
            if (pos != it.key().size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw validation_error("sparse vector key is not an index: '" + it.key() + "'");
        }
        v.add_to(index, rational_from_json(it.value()));
    }
    return v;
}

inline Json to_json(const AugPoint& p) {
    Json j;
    j["model"] = to_string(p.model());
    j["t"] = to_string(p.t);
    j["x"] = to_json(p.x);
    return j;
}

/// Point files: {"x": {...}, "t": "p/q", "model": "c0"}. The t and model
/// fields are optional; a present model must agree with the requested one.
inline AugPoint aug_point_from_json(SpaceModel model, const Json& j) {
    if (!j.is_object()) throw validation_error("point must be a JSON object");
    if (j.contains("model") && model_from_string(j.at("model").get<std::string>()) != model)
        throw model_mismatch_error("point file model does not match the requested model");
    SparseVector x = sparse_vector_from_json(model, j.contains("x") ? j.at("x") : Json::object());
    Rational t = j.contains("t") ? rational_from_json(j.at("t")) : Rational(0);
    return AugPoint(std::move(x), std::move(t));
}

inline Json to_json(const GeneratorChain& c) {
    Json arr = Json::array();
    for (int k : c.indices) arr.push_back(k);
    return arr;
}

inline Json to_json(const Certificate& cert) {
    Json j;
    j["bound"] = to_string(cert.bound());
    j["dual_norm_bound"] = to_string(cert.dual_norm_bound());
    j["model"] = to_string(cert.model());
    Json terms = Json::array();
    for (const auto& t : cert.terms()) terms.push_back({{"coeff", to_string(t.coeff)}, {"index", t.index}});
    j["terms"] = terms;
    return j;
}

/// Re-verifies on load, so deserialized certificates carry the same
/// guarantee as freshly built ones.
inline Certificate certificate_from_json(const Json& j) {
    SpaceModel model = model_from_string(j.at("model").get<std::string>());
    std::vector<CertificateTerm> terms;
    for (const auto& t : j.at("terms"))
        terms.push_back({parse_rational(t.at("coeff").get<std::string>()), t.at("index").get<int>()});
    Certificate cert = Certificate::make(model, std::move(terms), rational_from_json(j.at("bound")));
    if (j.contains("dual_norm_bound") &&
        rational_from_json(j.at("dual_norm_bound")) != cert.dual_norm_bound())
        throw validation_error("certificate dual_norm_bound does not match its terms");
    return cert;
}

inline Json to_json(const DistanceBracket& b) {
    Json j;
    j["depth"] = b.depth;
    j["hi"] = to_string(b.hi);
    Json hiw = Json::array();
    for (const auto& [chain, weight] : b.hi_witness)
        hiw.push_back({{"chain", to_json(chain)}, {"weight", to_string(weight)}});
    j["hi_witness"] = hiw;
    j["lo"] = to_string(b.lo);
    j["lo_witness"] = b.lo_witness ? to_json(*b.lo_witness) : Json();
    return j;
}

inline Json to_json(const UnboundednessWitness& w) {
    Json j;
    j["bound"] = to_string(w.bound);
    j["diameter"] = to_string(w.diameter);
    j["diameter_cap"] = to_string(rat(4, w.k0));
    j["eps"] = to_string(w.eps);
    j["k0"] = w.k0;
    j["model"] = to_string(w.model);
    Json pts = Json::array();
    for (std::size_t i = 0; i < w.points.size(); ++i) {
        const auto& f = w.facts[i];
        pts.push_back({{"point", to_json(w.points[i])},
                       {"n", f.n},
                       {"distance_upper", to_string(f.distance_upper)},
                       {"upper_witness_chain", to_json(f.upper_witness)},
                       {"reciprocal_lower", to_string(f.reciprocal_lower)},
                       {"positivity_certificate", to_json(f.positivity)},
                       {"distance_lower", to_string(f.distance_lower)}});
    }
    j["points"] = pts;
    return j;
}

inline Json to_json(const NestedSublevelRow& r) {
    return Json{{"n", r.n},
                {"y", to_json(r.y)},
                {"distance_to_center", to_string(r.distance_to_center)},
                {"level", to_string(r.level)},
                {"distance_upper", to_string(r.upper)},
                {"witness_chain", to_json(r.witness)},
                {"positivity_certificate", to_json(r.positivity)},
                {"distance_lower", to_string(r.lower)}};
}

inline Json to_json(const NestedSublevelReport& r) {
    Json j;
    j["center"] = to_json(r.center);
    j["center_distance_lower"] = to_string(r.center_lower);
    j["center_positivity_certificate"] = to_json(r.center_positivity);
    j["depth"] = r.depth;
    j["eps"] = to_string(r.eps);
    j["k0"] = r.k0;
    j["model"] = to_string(r.model);
    j["scope_note"] =
        "distance sublevel sets are nested by definition; the certified positive lower bounds at the "
        "queried points are the pointwise form of the empty-intersection statement";
    Json rows = Json::array();
    for (const auto& row : r.rows) rows.push_back(to_json(row));
    j["rows"] = rows;
    return j;
}

inline Json to_json(const IteratedSmallSetsReport& r) {
    Json j;
    Json eps = Json::array();
    for (const auto& e : r.eps_list) eps.push_back(to_string(e));
    j["eps_list"] = eps;
    j["fixed_indices"] = r.fixed_indices;
    j["model"] = to_string(r.model);
    j["order"] = r.order;
    Json levels = Json::array();
    for (const auto& level : r.levels) {
        Json pts = Json::array();
        for (const auto& p : level.points) pts.push_back(to_json(p));
        levels.push_back({{"level", level.level},
                          {"fixed_prefix", level.fixed_prefix},
                          {"points", pts},
                          {"diameter", to_string(level.diameter)},
                          {"eps", to_string(level.eps)}});
    }
    j["levels"] = levels;
    Json inner = Json::array();
    for (const auto& ib : r.innermost)
        inner.push_back({{"chain", to_json(ib.chain)},
                         {"point", to_json(ib.point)},
                         {"distance_upper", to_string(ib.upper)}});
    j["innermost"] = inner;
    return j;
}

inline Json to_json(const RenormParams& p) {
    Json j;
    j["alpha"] = to_string(p.alpha);
    j["beta"] = to_string(p.beta);
    j["k"] = to_string(p.lipschitz_k);
    j["model"] = to_string(p.model);
    j["origin_certificate"] = to_json(p.origin_cert);
    j["origin_lower"] = to_string(p.origin_lower);
    j["outer_radius"] = to_string(p.outer_radius);
    j["r"] = to_string(p.r);
    j["rho"] = to_string(p.rho);
    j["u0"] = to_string(p.u0);
    return j;
}

inline Json to_json(const DualNormBracket& b) {
    return Json{{"depth", b.depth},
                {"hi", to_string(b.hi)},
                {"lo", to_string(b.lo)},
                {"lo_sample", to_json(b.lo_sample)},
                {"lo_sample_distance", to_string(b.lo_sample_dist)}};
}

inline Json to_json(const NonAttainmentReport& r) {
    Json rows = Json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"depth", row.depth},
                        {"min_y_star", to_string(row.min_y_star)},
                        {"gap", to_string(row.gap)},
                        {"gap_cap", to_string(row.gap_cap)},
                        {"argmin_sample", to_json(row.argmin_sample)},
                        {"argmin_certified_lower", to_string(row.argmin_certified_lower)}});
    return Json{{"rows", rows}};
}

inline Json to_json(const AlmostMaximizingReport& r) {
    Json j;
    j["depth"] = r.depth;
    j["diameter"] = to_string(r.diameter);
    j["diameter_bound"] = to_string(r.diameter_bound);
    j["effective_depth"] = r.effective_depth;
    j["eps"] = to_string(r.eps);
    j["family_note"] = r.family_note;
    j["k0"] = r.k0;
    Json members = Json::array();
    for (std::size_t i = 0; i < r.members.size(); ++i)
        members.push_back({{"member", to_json(r.members[i])},
                           {"n", r.window[i]},
                           {"sample_distance", to_string(r.dist_values[i])}});
    j["members"] = members;
    j["sup_y_star"] = to_string(r.sup_y_star);
    return j;
}

inline Json to_json(const GaugeBracket& b) {
    return Json{{"budget", b.budget}, {"depth", b.depth},     {"hi", to_string(b.hi)},
                {"lo", to_string(b.lo)}, {"lower_route", b.lower_route}, {"widened", b.widened}};
}

} // namespace hullcert
