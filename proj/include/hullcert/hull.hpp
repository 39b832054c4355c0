#pragma once

#include <set>
#include <vector>

#include "hullcert/functional.hpp"
#include "hullcert/lp.hpp"
#include "hullcert/space.hpp"

namespace hullcert {

/// Result of an exact nearest-point computation against a finite hull:
/// the distance and the convex combination attaining it.
struct DistResult {
    Rational value{0};
    std::vector<Rational> lambda; // aligned with the generator list
};

struct MembershipResult {
    bool member{false};
    std::vector<Rational> lambda; // witness combination when member
};

namespace detail {

// Working-coordinate reduction: both model norms decompose coordinate-wise
// (sup of |.| for c0, sum of |.| for l1), and every coordinate outside the
// union of the supports of q and the generators contributes |0 - 0| = 0 to
// the residual q - sum(lambda_k g_k) no matter what lambda is. Restricting
// the norm rows to the support union is therefore exact, not a truncation.
// `extra` lets tests add dummy coordinates and confirm invariance.
inline std::vector<int> working_coords(const AugPoint& q, const std::vector<AugPoint>& generators,
                                       const std::vector<int>& extra) {
    std::set<int> coords;
    for (const auto& [i, v] : q.x.coords()) coords.insert(i);
    for (const auto& g : generators)
        for (const auto& [i, v] : g.x.coords()) coords.insert(i);
    for (int i : extra) {
        if (i < 1) throw validation_error("dummy coordinate index must be >= 1");
        coords.insert(i);
    }
    return {coords.begin(), coords.end()};
}

inline void validate_generators(const AugPoint& q, const std::vector<AugPoint>& generators) {
    if (generators.empty()) throw validation_error("empty generator list");
    for (const auto& g : generators) require_same_model(q.model(), g.model(), "hull query");
}

} // namespace detail

/// Builds the exact LP for min over convex combinations of
/// aug_norm(q - sum lambda_k g_k). Variables are the lambdas followed by,
/// for the l1 model, one slack per working coordinate, and finally the
/// norm value s. Exposed separately so the instance can be dumped or handed
/// to an independent solver.
inline LPProblem dist_lp_problem(const AugPoint& q, const std::vector<AugPoint>& generators,
                                 const std::vector<int>& extra_coords = {}) {
    detail::validate_generators(q, generators);
    const std::vector<int> coords = detail::working_coords(q, generators, extra_coords);
    const int K = static_cast<int>(generators.size());
    const int C = static_cast<int>(coords.size());
    const bool sup_model = q.model() == SpaceModel::C0Summing;

    const int n = sup_model ? K + 1 : K + C + 1; // lambdas [, u_w] , s
    const int s_col = n - 1;
    LPProblem p;
    p.sense = Objective::Minimize;
    p.objective.assign(n, Rational(0));
    p.objective[s_col] = Rational(1);

    auto residual_row = [&](int coord_or_t, bool is_t) {
        // coefficients of sum lambda_k g_k at this coordinate
        std::vector<Rational> row(n, Rational(0));
        for (int k = 0; k < K; ++k)
            row[k] = is_t ? generators[k].t : generators[k].x.at(coord_or_t);
        return row;
    };

    auto add_abs_bound = [&](std::vector<Rational> row, const Rational& qv, int slack_col) {
        // |qv - row . vars| <= slack  becomes two linear rows
        std::vector<Rational> upper = row;
        upper[slack_col] += Rational(1);
        p.constraints.push_back({std::move(upper), Relation::GreaterEq, qv});
        std::vector<Rational> lower = std::move(row);
        lower[slack_col] -= Rational(1);
        p.constraints.push_back({std::move(lower), Relation::LessEq, qv});
    };

    if (sup_model) {
        for (int c = 0; c < C; ++c) add_abs_bound(residual_row(coords[c], false), q.x.at(coords[c]), s_col);
        add_abs_bound(residual_row(0, true), q.t, s_col);
    } else {
        for (int c = 0; c < C; ++c) add_abs_bound(residual_row(coords[c], false), q.x.at(coords[c]), K + c);
        std::vector<Rational> sum_u(n, Rational(0));
        for (int c = 0; c < C; ++c) sum_u[K + c] = Rational(1);
        sum_u[s_col] = Rational(-1);
        p.constraints.push_back({std::move(sum_u), Relation::LessEq, Rational(0)});
        add_abs_bound(residual_row(0, true), q.t, s_col);
    }

    std::vector<Rational> simplex_row(n, Rational(0));
    for (int k = 0; k < K; ++k) simplex_row[k] = Rational(1);
    p.constraints.push_back({std::move(simplex_row), Relation::Equal, Rational(1)});
    // default bounds: every variable >= 0, which is exactly what lambdas,
    // slacks and the norm value need
    return p;
}

/// Exact distance from q to conv(generators) in the model norm of the
/// product space. The witness combination is re-verified by substitution:
/// the residual norm at the returned lambda equals the reported value.
inline DistResult dist_to_hull(const AugPoint& q, const std::vector<AugPoint>& generators,
                               const std::vector<int>& extra_coords = {}) {
    LPSolution sol = solve_lp(dist_lp_problem(q, generators, extra_coords));
    if (sol.status != LPStatus::Optimal)
        throw internal_soundness_error("distance LP must be feasible and bounded");
    DistResult r;
    r.value = sol.value;
    r.lambda.assign(sol.witness.begin(), sol.witness.begin() + static_cast<long>(generators.size()));

    AugPoint combo = aug_zero(q.model());
    Rational total(0);
    for (std::size_t k = 0; k < generators.size(); ++k) {
        if (r.lambda[k] < 0) throw internal_soundness_error("negative weight in distance witness");
        combo = combo + r.lambda[k] * generators[k];
        total += r.lambda[k];
    }
    if (total != 1) throw internal_soundness_error("distance witness weights do not sum to 1");
    if (aug_norm(q - combo) != r.value)
        throw internal_soundness_error("distance witness does not attain the LP value");
    return r;
}

/// Minkowski gauge of conv(generators) at z, as the LP
///   min sum theta_j  s.t.  sum theta_j g_j = z (coordinate-wise), theta >= 0.
/// Requires the generator list to be closed under negation, which makes the
/// LP value the gauge of the symmetric hull; Infeasible signals that z is
/// outside the cone spanned on the working support.
inline LPSolution gauge_of_hull(const AugPoint& z, const std::vector<AugPoint>& generators) {
    detail::validate_generators(z, generators);
    for (const auto& g : generators) {
        bool found = false;
        for (const auto& h : generators)
            if (h == -g) {
                found = true;
                break;
            }
        if (!found) throw validation_error("gauge generator list must be closed under negation");
    }

    const std::vector<int> coords = detail::working_coords(z, generators, {});
    const int K = static_cast<int>(generators.size());
    LPProblem p;
    p.sense = Objective::Minimize;
    p.objective.assign(K, Rational(1));
    for (int i : coords) {
        std::vector<Rational> row(K, Rational(0));
        for (int k = 0; k < K; ++k) row[k] = generators[k].x.at(i);
        p.constraints.push_back({std::move(row), Relation::Equal, z.x.at(i)});
    }
    std::vector<Rational> trow(K, Rational(0));
    for (int k = 0; k < K; ++k) trow[k] = generators[k].t;
    p.constraints.push_back({std::move(trow), Relation::Equal, z.t});

    LPSolution sol = solve_lp(p);
    if (sol.status == LPStatus::Unbounded)
        throw internal_soundness_error("gauge LP cannot be unbounded");
    if (sol.status == LPStatus::Optimal) {
        AugPoint combo = aug_zero(z.model());
        for (int k = 0; k < K; ++k) combo = combo + sol.witness[k] * generators[k];
        if (!(combo == z)) throw internal_soundness_error("gauge witness does not reproduce the point");
    }
    return sol;
}

/// z in conv(generators), exactly: dist_to_hull(z, generators) == 0.
inline MembershipResult membership_in_hull(const AugPoint& z, const std::vector<AugPoint>& generators) {
    DistResult d = dist_to_hull(z, generators);
    if (d.value == 0) return {true, std::move(d.lambda)};
    return {false, {}};
}

} // namespace hullcert
