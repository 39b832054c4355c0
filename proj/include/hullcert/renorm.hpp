#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "hullcert/certificates.hpp"

namespace hullcert {

/// Parameters of the equivalent norm whose unit ball is
/// C = closed conv(D u -D), D = { (x, dist(x, hull) - beta) : ||x|| <= r }.
///
/// All entries are derived from one exact upper bound u0 >= dist(0, hull)
/// and one positivity certificate at the origin, by the canonical choices
/// alpha = u0 + 1, r = alpha + 4, beta = u0 + r + 1. They guarantee:
///   - alpha > dist(0, hull), so {dist < alpha} is nonempty;
///   - {dist < alpha} lies in B(0, r): every generator has norm <= 4, so
///     dist(x, hull) >= ||x|| - 4 and dist < alpha forces ||x|| < alpha + 4;
///   - beta > sup dist over B(0, r), because dist is 1-Lipschitz and
///     dist(0) <= u0 gives dist <= u0 + r < beta on the ball.
struct RenormParams {
    SpaceModel model;
    Rational u0;
    Certificate origin_cert;
    Rational origin_lower; // certified dist(0, hull) >= this > 0
    Rational alpha;
    Rational r;
    Rational beta;
    Rational rho;          // rho * unit ball of the product norm lies in C
    Rational lipschitz_k;  // |.| <= K ||.||, K = 1/rho
    Rational outer_radius; // ||.|| <= R on C, so ||z||/R <= |z|
};

/// Canonical exact upper bound for dist(0, hull): the norm of the first
/// generator, max(2 + 2, 1/2) = 4 in both models.
inline Rational canonical_origin_upper(SpaceModel model) {
    return aug_norm(generator_point(model, GeneratorChain({1, 2})));
}

inline RenormParams derive_renorm_params(SpaceModel model, const Certificate& origin_cert, const Rational& u0) {
    require_same_model(model, origin_cert.model(), "renorm parameters");
    AugPoint origin = aug_zero(model);
    Rational lower = distance_lower_bound(origin, origin_cert); // throws if the certificate does not apply
    if (lower <= 0) throw validation_error("origin certificate must certify a positive distance");
    if (u0 < lower) throw validation_error("u0 is below the certified lower bound at the origin");
    RenormParams p{model, u0, origin_cert, lower, u0 + 1, u0 + 5, Rational(2) * u0 + 6,
                   Rational(0), Rational(0), Rational(0)};
    // beta - alpha = r here, and r >= 5, so the inner radius is capped by the
    // A-side requirement ||x|| < 1 (dist(x) <= u0 + ||x|| < alpha).
    Rational beta_minus_alpha = p.beta - p.alpha;
    p.rho = beta_minus_alpha < 1 ? beta_minus_alpha : Rational(1);
    p.lipschitz_k = Rational(1) / p.rho;
    p.outer_radius = p.r > p.beta ? p.r : p.beta;
    return p;
}

/// Finitely generated inner approximation of C. The members of D are not
/// exactly computable (they need the true distance function), so samples
/// are lifted with the exact truncated-hull surrogate d instead:
///
///   generator at sample x:  (x, d(x) - beta),  plus its negation.
///
/// Containment in the true C is a vertical-segment argument: (x, t) lies in
/// C whenever dist(x) - beta <= t <= beta - dist(-x), because the endpoints
/// are a D-point and a (-D)-point over the same x and C is convex. The lift
/// satisfies the lower end since d >= dist (the truncated hull is a subset),
/// and the upper end because d(x) + d(-x) <= 2(u0 + r) < 2 beta; both
/// inequalities are checked exactly per sample at construction.
struct InnerApprox {
    int depth = 0;
    std::vector<SparseVector> samples;  // closed under negation
    std::vector<Rational> sample_dist;  // exact d per sample
    std::vector<AugPoint> generators;   // lifted samples, then their negations
};

inline InnerApprox make_inner_approx(const RenormParams& params, const TruncatedHull& hull,
                                     const std::vector<SparseVector>& samples) {
    if (hull.model != params.model || hull.order != 1)
        throw validation_error("inner approximation needs the order-1 hull of the same model");
    InnerApprox approx;
    approx.depth = hull.depth;
    for (const auto& s : samples) {
        bool seen = false;
        for (const auto& q : approx.samples) seen = seen || q == s;
        if (!seen) approx.samples.push_back(s);
    }
    for (const auto& s : samples) {
        SparseVector neg = -s;
        bool seen = false;
        for (const auto& q : approx.samples) seen = seen || q == neg;
        if (!seen) approx.samples.push_back(std::move(neg));
    }

    std::vector<Rational> dist_of(approx.samples.size());
    for (std::size_t i = 0; i < approx.samples.size(); ++i) {
        const SparseVector& s = approx.samples[i];
        if (model_norm(s) > params.r) throw validation_error("inner-approximation sample outside B(0, r)");
        dist_of[i] = dist_to_hull(AugPoint(s, Rational(0)), hull.generators).value;
        if (dist_of[i] <= 0)
            throw internal_soundness_error("surrogate distance vanished on an X sample");
    }
    // vertical-segment obligation, exact
    for (std::size_t i = 0; i < approx.samples.size(); ++i) {
        SparseVector neg = -approx.samples[i];
        std::size_t j = 0;
        while (!(approx.samples[j] == neg)) ++j;
        Rational sum = dist_of[i] + dist_of[j];
        if (!(sum <= Rational(2) * (params.u0 + params.r)) || !(params.u0 + params.r < params.beta))
            throw internal_soundness_error("vertical-segment membership obligation failed");
    }
    approx.sample_dist = dist_of;
    for (std::size_t i = 0; i < approx.samples.size(); ++i)
        approx.generators.emplace_back(approx.samples[i], dist_of[i] - params.beta);
    for (std::size_t i = 0; i < approx.samples.size(); ++i)
        approx.generators.push_back(-approx.generators[i]);
    for (const auto& g : approx.generators)
        if (!(abs(g.t) < params.beta))
            throw internal_soundness_error("inner generator reached |t| = beta");
    return approx;
}

/// Deterministic depth-independent sample family for inner approximations:
/// the origin and the first few working basis vectors (negations are added
/// by the symmetric closure).
inline std::vector<SparseVector> default_renorm_samples(SpaceModel model, int budget) {
    std::vector<SparseVector> samples{SparseVector(model)};
    for (int j = 1; j <= std::max(1, budget); ++j) samples.push_back(basis_vector(model, j));
    return samples;
}

/// Two-sided bracket for the new dual norm of the height functional
/// y*((x, t)) = t.
///
/// Upper end: beta, symbolically — C lies in {t >= dist(x) - beta} and is
/// symmetric, so |t| <= beta on C. Lower end: the lifted sample
/// 2 e_{N-1} + (2/(N-1)) e_N has exact surrogate distance 1/N (every
/// truncated-hull point has t >= 1/N, and the generator (N-1, N) attains
/// it), and y* at the negated lift equals beta - 1/N. Width exactly 1/N.
struct DualNormBracket {
    Rational lo;
    Rational hi;
    int depth = 0;
    SparseVector lo_sample;
    Rational lo_sample_dist;
};

namespace detail {

inline SparseVector deep_pair_sample(SpaceModel model, int depth) {
    return Rational(2) * basis_vector(model, depth - 1) + rat(2, depth - 1) * basis_vector(model, depth);
}

} // namespace detail

inline DualNormBracket dual_norm_bracket(const RenormParams& params, int depth, int budget = 4) {
    if (depth < 2) throw validation_error("depth must be >= 2");
    TruncatedHull hull = build_truncated_hull(params.model, 1, depth);
    SparseVector x_m = detail::deep_pair_sample(params.model, depth);

    std::vector<SparseVector> samples = default_renorm_samples(params.model, budget);
    samples.push_back(x_m);
    InnerApprox approx = make_inner_approx(params, hull, samples);

    Rational d(0);
    for (std::size_t i = 0; i < approx.samples.size(); ++i)
        if (approx.samples[i] == x_m) d = approx.sample_dist[i];
    if (d != rat(1, depth))
        throw internal_soundness_error("deep pair sample must have surrogate distance exactly 1/depth");
    return DualNormBracket{params.beta - d, params.beta, depth, std::move(x_m), std::move(d)};
}

/// Per-depth strict-minimum facts for y* over the inner approximation: the
/// exact minimum over the generators (cross-checked against an LP over
/// their hull), its strictly positive gap above -beta, and a certificate
/// transported from the minimizing sample.
struct NonAttainmentRow {
    int depth;
    Rational min_y_star;
    Rational gap;          // min_y_star + beta = min sample distance
    Rational gap_cap;      // 1/depth
    SparseVector argmin_sample;
    Rational argmin_certified_lower; // 0 < this <= gap
};

struct NonAttainmentReport {
    std::vector<NonAttainmentRow> rows; // one per requested depth, gaps nonincreasing
};

inline NonAttainmentReport build_non_attainment_report(const RenormParams& params,
                                                       const std::vector<int>& depths, int budget = 4) {
    if (depths.empty()) throw validation_error("need at least one depth");
    for (std::size_t i = 0; i + 1 < depths.size(); ++i)
        if (depths[i] >= depths[i + 1]) throw validation_error("depths must be strictly increasing");

    NonAttainmentReport report;
    for (int depth : depths) {
        if (depth < 2) throw validation_error("depth must be >= 2");
        TruncatedHull hull = build_truncated_hull(params.model, 1, depth);
        std::vector<SparseVector> samples = default_renorm_samples(params.model, budget);
        samples.push_back(detail::deep_pair_sample(params.model, depth));
        InnerApprox approx = make_inner_approx(params, hull, samples);

        std::size_t argmin = 0;
        for (std::size_t i = 1; i < approx.samples.size(); ++i)
            if (approx.sample_dist[i] < approx.sample_dist[argmin]) argmin = i;
        Rational gap = approx.sample_dist[argmin];
        Rational min_y = gap - params.beta;

        // the same minimum through an LP over the hull of the generators
        LPProblem lp;
        lp.objective.reserve(approx.generators.size());
        for (const auto& g : approx.generators) lp.objective.push_back(g.t);
        std::vector<Rational> simplex_row(approx.generators.size(), Rational(1));
        lp.constraints.push_back({std::move(simplex_row), Relation::Equal, Rational(1)});
        LPSolution sol = solve_lp(lp);
        if (sol.status != LPStatus::Optimal || sol.value != min_y)
            throw internal_soundness_error("hull LP disagrees with the generator minimum of y*");

        if (!(min_y > -params.beta) || !(gap > 0))
            throw internal_soundness_error("non-attainment gap must be strictly positive");
        if (!(gap <= rat(1, depth)))
            throw internal_soundness_error("non-attainment gap exceeded 1/depth");

        Certificate cert = find_certificate(AugPoint(approx.samples[argmin], Rational(0)));
        Rational lower = distance_lower_bound(AugPoint(approx.samples[argmin], Rational(0)), cert);
        if (!(lower > 0) || !(gap >= lower))
            throw internal_soundness_error("certificate transport failed at the minimizing sample");

        report.rows.push_back({depth, std::move(min_y), std::move(gap), rat(1, depth),
                               approx.samples[argmin], std::move(lower)});
    }
    for (std::size_t i = 0; i + 1 < report.rows.size(); ++i)
        if (report.rows[i].gap < report.rows[i + 1].gap)
            throw internal_soundness_error("non-attainment gaps must be nonincreasing in depth");
    return report;
}

/// The almost-maximizing set for y*: a small-diameter family lifted into C
/// and negated. Every member is certified inside the unit ball, the exact
/// product-norm diameter stays below eps/K (so the |.|-diameter stays below
/// eps), and y* climbs to within 1/depth of its dual norm beta.
struct AlmostMaximizingReport {
    Rational eps;
    int depth = 0;
    int effective_depth = 0; // raised to cover the generator window when k0 >= depth
    int k0 = 0;
    std::vector<int> window; // n values of the underlying small-diameter family
    std::vector<AugPoint> members;
    std::vector<Rational> dist_values; // surrogate distances of the unlifted points
    Rational diameter;
    Rational diameter_bound; // eps / K
    Rational sup_y_star;
    std::string family_note;
};

inline AlmostMaximizingReport build_almost_maximizing_set(const RenormParams& params, const Rational& eps,
                                                          int depth, int window_size = 5) {
    if (eps <= 0) throw validation_error("eps must be positive");
    if (depth < 2) throw validation_error("depth must be >= 2");
    if (window_size < 1) throw validation_error("window size must be >= 1");

    AlmostMaximizingReport report;
    report.eps = eps;
    report.depth = depth;
    int k0 = static_cast<int>(next_integer_above(Rational(4) * params.lipschitz_k / eps));
    report.k0 = k0 = std::max(k0, 2);

    if (k0 < depth) {
        for (int n = std::max(k0 + 1, depth - window_size + 1); n <= depth; ++n)
            report.window.push_back(n);
    } else {
        for (int n = k0 + 1; n <= k0 + window_size; ++n) report.window.push_back(n);
    }
    report.effective_depth = std::max(depth, report.window.back());

    TruncatedHull hull = build_truncated_hull(params.model, 1, report.effective_depth);
    std::vector<SparseVector> samples;
    for (int n : report.window)
        samples.push_back(Rational(2) * basis_vector(params.model, k0) + rat(2, k0) * basis_vector(params.model, n));
    InnerApprox approx = make_inner_approx(params, hull, samples);

    Rational min_d(0);
    for (std::size_t i = 0; i < report.window.size(); ++i) {
        const Rational& d = approx.sample_dist[i];
        if (!(d <= rat(1, report.window[i])))
            throw internal_soundness_error("window sample drifted above its 1/n bound");
        report.members.push_back(-AugPoint(approx.samples[i], d - params.beta));
        report.dist_values.push_back(d);
        if (i == 0 || d < min_d) min_d = d;
    }
    if (min_d != rat(1, report.effective_depth))
        throw internal_soundness_error("deepest window sample must attain 1/effective_depth exactly");

    report.diameter = exact_diameter(report.members);
    report.diameter_bound = eps / params.lipschitz_k;
    if (!(report.diameter <= report.diameter_bound))
        throw internal_soundness_error("almost-maximizing set diameter exceeds eps/K");
    report.sup_y_star = params.beta - min_d;
    if (!(report.sup_y_star >= params.beta - rat(1, depth)))
        throw internal_soundness_error("sup y* fell below beta - 1/depth");
    report.family_note =
        "members enumerate n in the window; the full family { -(2e_k0 + (2/k0)e_n, dist - beta) : n > k0 } "
        "pushes sup y* to beta in the limit";
    return report;
}

/// Exact upper bound for sup over the true C of a representable functional.
/// sup_C g = max(sup_D g, sup_D(-g)), and on D = {(x, dist(x) - beta)}:
///   sup_D g <= -g_t beta + sup_{||x|| <= r} [ g_X(x) + g_t dist(x) ],
/// where dist is replaced by its Lipschitz majorant u0 + ||x|| when g_t >= 0
/// and by the certificate minorant max(0, (b - h(x))/w) when g_t < 0. The
/// supremum of an affine functional over the r-ball is value-at-0 plus
/// r times the X*-norm, all exact.
inline Rational sup_hull_upper_bound(const DualFunctional& g, const RenormParams& params) {
    require_same_model(g.model(), params.model, "sup bound");
    DualFunctional h_x = params.origin_cert.functional().with_aug(Rational(0));
    const Rational& b = params.origin_cert.bound();
    const Rational& w = params.origin_cert.dual_norm_bound();

    auto sup_d = [&](const DualFunctional& f) -> Rational {
        DualFunctional f_x = f.with_aug(Rational(0));
        const Rational& ft = f.aug_coeff();
        Rational base = -ft * params.beta;
        if (ft >= 0) return base + ft * params.u0 + params.r * (xstar_norm(f_x) + ft);
        // ft < 0: use dist >= 0 and dist >= (b - h(x))/w, keep the smaller bound
        Rational via_zero = params.r * xstar_norm(f_x);
        DualFunctional shifted = f_x + (-(ft / w)) * h_x;
        Rational via_cert = ft * (b / w) + params.r * xstar_norm(shifted);
        return base + (via_zero < via_cert ? via_zero : via_cert);
    };
    Rational a = sup_d(g);
    Rational c = sup_d(-g);
    return a > c ? a : c;
}

/// Certified bracket for the new norm |z| (the gauge of C).
///
/// Upper: the gauge of the inner approximation (a subset of C, so its gauge
/// dominates |z|), capped by the crude K ||z||; when the inner LP is
/// infeasible (z leaves the sampled support) the crude cap alone is used
/// and the bracket is flagged widened. Lower: the best of ||z|| / R and the
/// duality bounds g(z) / sup_C(g) over a small deterministic family of
/// functionals.
struct GaugeBracket {
    Rational lo;
    Rational hi;
    bool widened = false;
    std::string lower_route;
    int depth = 0;
    int budget = 0;
};

inline GaugeBracket gauge_bracket(const AugPoint& z, const RenormParams& params, int depth, int budget = 4) {
    require_same_model(z.model(), params.model, "gauge bracket");
    if (depth < 2) throw validation_error("depth must be >= 2");
    GaugeBracket bracket;
    bracket.depth = depth;
    bracket.budget = budget;
    if (aug_norm(z) == 0) {
        bracket.lower_route = "zero";
        return bracket;
    }

    TruncatedHull hull = build_truncated_hull(params.model, 1, depth);
    InnerApprox approx = make_inner_approx(params, hull, default_renorm_samples(params.model, budget));
    Rational hi = params.lipschitz_k * aug_norm(z);
    LPSolution inner = gauge_of_hull(z, approx.generators);
    if (inner.status == LPStatus::Optimal) {
        if (inner.value < hi) hi = inner.value;
    } else {
        bracket.widened = true;
    }
    bracket.hi = hi;

    Rational lo = aug_norm(z) / params.outer_radius;
    bracket.lower_route = "norm/R";
    auto try_lower = [&](const DualFunctional& g, const std::string& name) {
        Rational gz = evaluate(g, z);
        if (gz <= 0) return;
        Rational up = sup_hull_upper_bound(g, params);
        if (up <= 0) return;
        Rational candidate = gz / up;
        if (candidate > lo) {
            lo = candidate;
            bracket.lower_route = name;
        }
    };
    DualFunctional height = DualFunctional::zero(params.model).with_aug(Rational(1));
    try_lower(height, "y*");
    try_lower(-height, "-y*");
    for (int i = 1; i <= budget; ++i) {
        DualFunctional f = extended_functional(params.model, i);
        try_lower(f, "f_" + std::to_string(i));
        try_lower(-f, "-f_" + std::to_string(i));
        DualFunctional e = biorth_functional(params.model, i);
        try_lower(e, "e*_" + std::to_string(i));
        try_lower(-e, "-e*_" + std::to_string(i));
    }
    bracket.lo = lo;
    if (bracket.lo > bracket.hi)
        throw internal_soundness_error("gauge bracket crossed");
    return bracket;
}

} // namespace hullcert
