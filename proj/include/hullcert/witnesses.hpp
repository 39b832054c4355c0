#pragma once

#include <vector>

#include "hullcert/certificates.hpp"
#include "hullcert/generators.hpp"

namespace hullcert {

/// A set M of certified small diameter on which the reciprocal of the hull
/// distance exceeds a requested bound: each point carries an exact distance
/// upper bound 1/n (witnessed by one generator, re-verified by substitution)
/// and a positive certified lower bound, so 1/distance is well defined and
/// >= n at that point.
struct UnboundednessWitness {
    SpaceModel model;
    Rational bound;
    Rational eps;
    int k0 = 0;
    int n_lo = 0;
    int n_hi = 0;
    std::vector<AugPoint> points;
    Rational diameter{0};

    struct PointFacts {
        int n;
        Rational distance_upper;    // 1/n, via the explicit generator
        GeneratorChain upper_witness;
        Rational reciprocal_lower;  // n
        Certificate positivity;
        Rational distance_lower;    // > 0
    };
    std::vector<PointFacts> facts;
};

inline UnboundednessWitness build_unbounded_reciprocal_witness(SpaceModel model, const Rational& bound,
                                                               const Rational& eps) {
    if (bound <= 0 || eps <= 0) throw validation_error("bound and eps must be positive");
    UnboundednessWitness w{model, bound, eps, 0, 0, 0, {}, Rational(0), {}};
    w.k0 = static_cast<int>(next_integer_above(Rational(4) / eps));
    const int window = 10;
    BigInt base = BigInt(w.k0) > ceil_rational(bound) ? BigInt(w.k0) : ceil_rational(bound);
    w.n_lo = static_cast<int>(base) + 1;
    w.n_hi = w.n_lo + window - 1;
    w.points = build_small_diameter_set(model, w.k0, w.n_lo, w.n_hi);
    w.diameter = exact_diameter(w.points);
    if (!(w.diameter < eps) || !(w.diameter <= rat(4, w.k0)))
        throw internal_soundness_error("small-diameter set exceeds its bound");
    for (int n = w.n_lo; n <= w.n_hi; ++n) {
        const AugPoint& pt = w.points[static_cast<std::size_t>(n - w.n_lo)];
        GeneratorChain chain({w.k0, n});
        Rational upper = rat(1, n);
        if (aug_norm(pt - generator_point(model, chain)) != upper)
            throw internal_soundness_error("generator witness does not attain 1/n");
        Certificate cert = find_certificate(pt);
        Rational lower = distance_lower_bound(pt, cert);
        if (lower <= 0) throw internal_soundness_error("positivity certificate produced a nonpositive bound");
        if (Rational(n) <= bound)
            throw internal_soundness_error("witness window does not clear the requested bound");
        w.facts.push_back({n, std::move(upper), std::move(chain), Rational(n), std::move(cert), std::move(lower)});
    }
    return w;
}

/// One row of the nested sublevel-set demonstration: a point y_n within eps
/// of the center whose hull distance is certified <= 1/n by an explicit
/// generator, together with a positive certified lower bound at y_n.
struct NestedSublevelRow {
    int n;
    AugPoint y;
    Rational distance_to_center; // exactly 2/k0
    Rational level;              // 1/n
    Rational upper;              // 1/max(n, k0+1) <= level
    GeneratorChain witness;
    Certificate positivity;
    Rational lower;
};

/// Sublevel sets {distance <= 1/n} are nested by definition and each row
/// shows the center lands within eps of the n-th one; the positive lower
/// bounds at the center and every row point are the pointwise form of the
/// empty-intersection statement: a point with certified distance >= lo > 0
/// lies outside every sublevel deeper than 1/lo.
struct NestedSublevelReport {
    SpaceModel model;
    int depth = 0;
    Rational eps;
    int k0 = 0;
    AugPoint center;
    Certificate center_positivity;
    Rational center_lower;
    std::vector<NestedSublevelRow> rows;
};

inline NestedSublevelReport build_nested_sublevel_report(SpaceModel model, int depth, const Rational& eps) {
    if (eps <= 0) throw validation_error("eps must be positive");
    if (depth < 2) throw validation_error("depth must be >= 2");
    const int k0 = static_cast<int>(next_integer_above(Rational(2) / eps));
    AugPoint center(Rational(2) * basis_vector(model, k0), Rational(0));
    Certificate center_cert = find_certificate(center);
    Rational center_lower = distance_lower_bound(center, center_cert);
    NestedSublevelReport report{model, depth, eps, k0, center, std::move(center_cert), std::move(center_lower), {}};
    for (int n = 1; n <= depth; ++n) {
        const int m = std::max(n, k0 + 1);
        AugPoint y(Rational(2) * basis_vector(model, k0) + rat(2, k0) * basis_vector(model, m), Rational(0));
        Rational dist_center = aug_norm(center - y);
        if (dist_center != rat(2, k0) || !(dist_center <= eps))
            throw internal_soundness_error("sublevel witness strayed from the center");
        GeneratorChain chain({k0, m});
        Rational upper = rat(1, m);
        if (aug_norm(y - generator_point(model, chain)) != upper || !(upper <= rat(1, n)))
            throw internal_soundness_error("sublevel witness does not reach level 1/n");
        Certificate cert = find_certificate(y);
        Rational lower = distance_lower_bound(y, cert);
        report.rows.push_back({n, std::move(y), std::move(dist_center), rat(1, n), std::move(upper),
                               std::move(chain), std::move(cert), std::move(lower)});
    }
    return report;
}

/// Nested family with iterated small diameters: level j fixes the first j
/// chain indices; each level's point set contains the next level's, the
/// exact diameter of level j is below eps_list[j-1], and the innermost
/// points carry distance upper bounds 1/m -> 0 along their enumeration,
/// each witnessed by a single order-p generator.
struct IteratedLevel {
    int level;                      // 1-based
    std::vector<int> fixed_prefix;  // K_1..K_level
    std::vector<AugPoint> points;
    Rational diameter{0};
    Rational eps{0};
};

struct InnermostBound {
    GeneratorChain chain;
    AugPoint point;
    Rational upper;
};

struct IteratedSmallSetsReport {
    SpaceModel model;
    int order = 1;
    std::vector<Rational> eps_list;
    std::vector<int> fixed_indices;
    std::vector<IteratedLevel> levels;
    std::vector<InnermostBound> innermost;
};

namespace detail {

inline void increasing_tuples(const std::vector<int>& window, int size, std::vector<int>& current,
                              std::size_t start, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(current.size()) == size) {
        out.push_back(current);
        return;
    }
    for (std::size_t i = start; i < window.size(); ++i) {
        current.push_back(window[i]);
        increasing_tuples(window, size, current, i + 1, out);
        current.pop_back();
    }
}

} // namespace detail

inline IteratedSmallSetsReport build_iterated_small_sets(SpaceModel model, int order,
                                                         const std::vector<Rational>& eps_list) {
    if (order < 1) throw validation_error("order must be >= 1");
    if (static_cast<int>(eps_list.size()) != order)
        throw validation_error("eps list must have one entry per level");
    for (const auto& e : eps_list)
        if (e <= 0) throw validation_error("eps values must be positive");

    IteratedSmallSetsReport report{model, order, eps_list, {}, {}, {}};
    const int p = order;

    // K_j small enough that the level-j diameter bound (4 + 8(p-j))/K_j
    // (valid in both models) clears eps_j; for j = p this is the 4/k0 rule
    // of the one-level construction.
    for (int j = 1; j <= p; ++j) {
        Rational budget = Rational(4 + 8 * (p - j));
        int kj = static_cast<int>(next_integer_above(budget / eps_list[static_cast<std::size_t>(j - 1)]));
        if (!report.fixed_indices.empty()) kj = std::max(kj, report.fixed_indices.back() + 1);
        report.fixed_indices.push_back(kj);
    }

    auto x_part_point = [&](std::vector<int> chain) {
        AugPoint g = generator_point(model, GeneratorChain(std::move(chain)));
        return AugPoint(g.x, Rational(0));
    };

    // innermost enumeration: a short window plus one deep index, so the
    // 1/m bounds visibly decay
    const int kp = report.fixed_indices.back();
    std::vector<int> innermost_tails = {kp + 1, kp + 2, kp + 3, kp + 100};
    std::vector<AugPoint> inner_points;
    for (int m : innermost_tails) {
        std::vector<int> chain = report.fixed_indices;
        chain.push_back(m);
        GeneratorChain gc(chain);
        AugPoint pt = x_part_point(chain);
        Rational upper = rat(1, m);
        if (aug_norm(pt - generator_point(model, gc)) != upper)
            throw internal_soundness_error("innermost witness does not attain 1/m");
        inner_points.push_back(pt);
        report.innermost.push_back({std::move(gc), std::move(pt), std::move(upper)});
    }

    std::vector<AugPoint> accumulated = inner_points;
    std::vector<IteratedLevel> reversed;
    for (int j = p; j >= 1; --j) {
        if (j < p) {
            // widen: all tuples of the remaining free indices from a small
            // window just above K_j
            const int free = p + 1 - j;
            std::vector<int> window;
            for (int v = report.fixed_indices[static_cast<std::size_t>(j - 1)] + 1,
                     cnt = 0; cnt < free + 2; ++v, ++cnt)
                window.push_back(v);
            std::vector<std::vector<int>> tuples;
            std::vector<int> current;
            detail::increasing_tuples(window, free, current, 0, tuples);
            for (const auto& tail : tuples) {
                std::vector<int> chain(report.fixed_indices.begin(),
                                       report.fixed_indices.begin() + j);
                chain.insert(chain.end(), tail.begin(), tail.end());
                AugPoint pt = x_part_point(std::move(chain));
                bool present = false;
                for (const auto& q : accumulated) present = present || q == pt;
                if (!present) accumulated.push_back(std::move(pt));
            }
        }
        IteratedLevel level;
        level.level = j;
        level.fixed_prefix.assign(report.fixed_indices.begin(), report.fixed_indices.begin() + j);
        level.points = accumulated;
        level.diameter = exact_diameter(level.points);
        level.eps = eps_list[static_cast<std::size_t>(j - 1)];
        if (!(level.diameter < level.eps))
            throw internal_soundness_error("iterated level diameter exceeds its bound");
        reversed.push_back(std::move(level));
    }
    for (auto it = reversed.rbegin(); it != reversed.rend(); ++it) report.levels.push_back(std::move(*it));
    return report;
}

} // namespace hullcert
