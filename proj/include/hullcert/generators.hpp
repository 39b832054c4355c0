#pragma once

#include <span>
#include <vector>

#include "hullcert/functional.hpp"
#include "hullcert/space.hpp"

namespace hullcert {

/// Strictly increasing index chain (k_1 < ... < k_{p+1}) naming one hull
/// generator. Order p = length - 1; p = 1 is the main two-index family,
/// p >= 2 its multi-index generalization, and a single index gives the
/// simplified family (2 e_k, 1/k).
struct GeneratorChain {
    std::vector<int> indices;

    explicit GeneratorChain(std::vector<int> idx) : indices(std::move(idx)) {
        if (indices.empty()) throw validation_error("empty generator chain");
        int prev = 0;
        for (int k : indices) {
            if (k <= prev) throw validation_error("generator chain must be strictly increasing and >= 1");
            prev = k;
        }
    }

    int order() const { return static_cast<int>(indices.size()) - 1; }
    int first() const { return indices.front(); }
    int last() const { return indices.back(); }

    friend bool operator==(const GeneratorChain& a, const GeneratorChain& b) { return a.indices == b.indices; }
    friend bool operator<(const GeneratorChain& a, const GeneratorChain& b) { return a.indices < b.indices; }
};

/// The generator named by a chain (k_1, ..., k_{p+1}):
///   x = 2 e_{k_1} + sum_{j=2}^{p+1} (2/k_{j-1}) e_{k_j},   t = 1/k_{p+1}.
/// For order 1 this is 2 e_k + (2/k) e_n plus 1/n on the extra coordinate.
inline AugPoint generator_point(SpaceModel model, const GeneratorChain& chain) {
    SparseVector x = Rational(2) * basis_vector(model, chain.indices[0]);
    for (std::size_t j = 1; j < chain.indices.size(); ++j)
        x = x + rat(2, chain.indices[j - 1]) * basis_vector(model, chain.indices[j]);
    return AugPoint(std::move(x), rat(1, chain.last()));
}

/// Closed-form value of the i-th extended functional on a generator:
///   f_i(x_chain) = 2*[i <= k_1] + sum_{j>=2} (2/k_{j-1})*[i <= k_j] + 1/k_{p+1}.
/// The indicator form holds in both models because both biorthogonal systems
/// take the exact values 0/1 on the working basis, so the closed form is
/// model-independent and is cross-checked against direct evaluation in tests.
inline Rational extended_functional_value(int i, const GeneratorChain& chain) {
    if (i < 1) throw validation_error("functional index must be >= 1");
    Rational v = i <= chain.indices[0] ? Rational(2) : Rational(0);
    for (std::size_t j = 1; j < chain.indices.size(); ++j)
        if (i <= chain.indices[j]) v += rat(2, chain.indices[j - 1]);
    return v + rat(1, chain.last());
}

/// All generators of a given order with chains inside 1..depth; exact upper
/// bounds for the infinite hull come from these truncations, which are
/// nested in depth.
struct TruncatedHull {
    SpaceModel model;
    int order = 1;
    int depth = 0;
    std::vector<GeneratorChain> chains;   // lexicographic
    std::vector<AugPoint> generators;     // aligned with chains
};

inline TruncatedHull build_truncated_hull(SpaceModel model, int order, int depth) {
    if (order < 1) throw validation_error("hull order must be >= 1");
    if (depth < order + 1) throw validation_error("hull depth must be at least order + 1");
    TruncatedHull hull{model, order, depth, {}, {}};
    const int len = order + 1;
    std::vector<int> chain(len);
    for (int i = 0; i < len; ++i) chain[i] = i + 1;
    for (;;) {
        hull.chains.emplace_back(chain);
        hull.generators.push_back(generator_point(model, hull.chains.back()));
        int pos = len - 1;
        while (pos >= 0 && chain[pos] == depth - (len - 1 - pos)) --pos;
        if (pos < 0) break;
        ++chain[pos];
        for (int i = pos + 1; i < len; ++i) chain[i] = chain[i - 1] + 1;
    }
    return hull;
}

/// Max pairwise distance of a finite point set, exact. O(n^2) rational
/// norms; the sets this library builds stay small.
inline Rational exact_diameter(std::span<const AugPoint> points) {
    Rational d(0);
    for (std::size_t a = 0; a < points.size(); ++a)
        for (std::size_t b = a + 1; b < points.size(); ++b) {
            Rational v = aug_norm(points[a] - points[b]);
            if (v > d) d = v;
        }
    return d;
}

/// The family { 2 e_{k0} + (2/k0) e_n : n in [n_lo, n_hi] } as points of X
/// (t = 0). Every pair is (2/k0)(e_n - e_m) apart, so the exact diameter is
/// 2/k0 in the c0 model and 4/k0 in the l1 model, both within the 4/k0
/// bound.
inline std::vector<AugPoint> build_small_diameter_set(SpaceModel model, int k0, int n_lo, int n_hi) {
    if (k0 < 1) throw validation_error("k0 must be >= 1");
    if (n_lo <= k0) throw validation_error("small-diameter range must lie strictly above k0");
    if (n_hi < n_lo) throw validation_error("empty small-diameter range");
    std::vector<AugPoint> points;
    points.reserve(static_cast<std::size_t>(n_hi - n_lo + 1));
    for (int n = n_lo; n <= n_hi; ++n) {
        SparseVector x = Rational(2) * basis_vector(model, k0) + rat(2, k0) * basis_vector(model, n);
        points.emplace_back(std::move(x), Rational(0));
    }
    return points;
}

/// The simplified single-index family (2 e_k, 1/k), k = 1..N. Its hull
/// already brings the distance function arbitrarily close to zero:
/// (2 e_k, 0) is within 1/k of the k-th generator.
inline std::vector<AugPoint> build_single_index_generators(SpaceModel model, int N) {
    if (N < 1) throw validation_error("family size must be >= 1");
    std::vector<AugPoint> points;
    points.reserve(static_cast<std::size_t>(N));
    for (int k = 1; k <= N; ++k) points.push_back(generator_point(model, GeneratorChain({k})));
    return points;
}

} // namespace hullcert
