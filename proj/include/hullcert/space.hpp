#pragma once

#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hullcert/rational.hpp"

namespace hullcert {

/// The two concrete nonreflexive sequence-space models.
///
/// C0Summing: X = c0. The working basis e_j is the summing basis
/// (1,...,1,0,...) of sup-norm 1, paired with the coordinate functionals.
///
/// L1Tail: X = l1. The working basis e_j is the standard unit vector u_j of
/// l1-norm 1, paired with the tail-sum functionals x -> sum_{l >= i} x_l.
///
/// Both pairings satisfy e*_i(e_j) = 0 for i > j and = 1 for i <= j.
enum class SpaceModel { C0Summing, L1Tail };

inline std::string to_string(SpaceModel m) {
    return m == SpaceModel::C0Summing ? "c0" : "l1";
}

inline void require_same_model(SpaceModel a, SpaceModel b, const char* what) {
    if (a != b) throw model_mismatch_error(std::string(what) + ": values from different space models");
}

/// Finite-support vector in the model space X, stored in the standard
/// unit-vector coordinates of the model (not in the working basis e_j).
/// Zero entries are never stored; iteration order is index-ascending.
class SparseVector {
public:
    explicit SparseVector(SpaceModel model) : model_(model) {}

    SparseVector(SpaceModel model, std::initializer_list<std::pair<const int, Rational>> entries)
        : model_(model), coords_(entries) {
        prune();
        validate();
    }

    static SparseVector from_entries(SpaceModel model, const std::vector<std::pair<int, Rational>>& entries) {
        SparseVector v(model);
        for (const auto& [i, q] : entries) v.add_to(i, q);
        return v;
    }

    SpaceModel model() const { return model_; }
    const std::map<int, Rational>& coords() const { return coords_; }
    bool is_zero() const { return coords_.empty(); }

    Rational at(int index) const {
        auto it = coords_.find(index);
        return it == coords_.end() ? Rational(0) : it->second;
    }

    std::vector<int> support() const {
        std::vector<int> s;
        s.reserve(coords_.size());
        for (const auto& [i, q] : coords_) s.push_back(i);
        return s;
    }

    int max_support_index() const { return coords_.empty() ? 0 : coords_.rbegin()->first; }

    SparseVector& add_to(int index, const Rational& value) {
        if (index < 1) throw validation_error("vector index must be >= 1");
        auto it = coords_.find(index);
        if (it == coords_.end()) {
            if (value != 0) coords_.emplace(index, value);
        } else {
            it->second += value;
            if (it->second == 0) coords_.erase(it);
        }
        return *this;
    }

    friend SparseVector operator+(const SparseVector& a, const SparseVector& b) {
        require_same_model(a.model_, b.model_, "vector sum");
        SparseVector r = a;
        for (const auto& [i, q] : b.coords_) r.add_to(i, q);
        return r;
    }

    friend SparseVector operator-(const SparseVector& a, const SparseVector& b) {
        require_same_model(a.model_, b.model_, "vector difference");
        SparseVector r = a;
        for (const auto& [i, q] : b.coords_) r.add_to(i, -q);
        return r;
    }

    friend SparseVector operator*(const Rational& s, const SparseVector& v) {
        SparseVector r(v.model_);
        if (s == 0) return r;
        for (const auto& [i, q] : v.coords_) r.coords_.emplace(i, s * q);
        return r;
    }

    SparseVector operator-() const { return Rational(-1) * *this; }

    friend bool operator==(const SparseVector& a, const SparseVector& b) {
        return a.model_ == b.model_ && a.coords_ == b.coords_;
    }

private:
    void prune() {
        for (auto it = coords_.begin(); it != coords_.end();)
            it = (it->second == 0) ? coords_.erase(it) : std::next(it);
    }
    void validate() const {
        if (!coords_.empty() && coords_.begin()->first < 1)
            throw validation_error("vector index must be >= 1");
    }

    SpaceModel model_;
    std::map<int, Rational> coords_;
};

/// Norm of the model space: sup-norm for C0Summing, l1-norm for L1Tail.
inline Rational model_norm(const SparseVector& v) {
    Rational n(0);
    if (v.model() == SpaceModel::C0Summing) {
        for (const auto& [i, q] : v.coords()) {
            Rational a = abs(q);
            if (a > n) n = a;
        }
    } else {
        for (const auto& [i, q] : v.coords()) n += abs(q);
    }
    return n;
}

/// Point of the product X (+) R. The norm is max(||x||, |t|); x in X is
/// identified with (x, 0), and (0, 1) plays the role of the extra direction.
struct AugPoint {
    SparseVector x;
    Rational t{0};

    explicit AugPoint(SparseVector x_, Rational t_ = Rational(0)) : x(std::move(x_)), t(std::move(t_)) {}

    SpaceModel model() const { return x.model(); }

    friend AugPoint operator+(const AugPoint& a, const AugPoint& b) { return AugPoint(a.x + b.x, a.t + b.t); }
    friend AugPoint operator-(const AugPoint& a, const AugPoint& b) { return AugPoint(a.x - b.x, a.t - b.t); }
    friend AugPoint operator*(const Rational& s, const AugPoint& p) { return AugPoint(s * p.x, s * p.t); }
    AugPoint operator-() const { return AugPoint(-x, -t); }
    friend bool operator==(const AugPoint& a, const AugPoint& b) { return a.x == b.x && a.t == b.t; }
};

inline AugPoint aug_zero(SpaceModel model) { return AugPoint(SparseVector(model)); }

inline Rational aug_norm(const AugPoint& p) {
    Rational nx = model_norm(p.x);
    Rational nt = abs(p.t);
    return nx >= nt ? nx : nt;
}

/// The j-th working basis vector of the model, in standard coordinates.
/// C0Summing: ones at 1..j (summing basis); L1Tail: the unit vector u_j.
/// Both have model_norm exactly 1.
inline SparseVector basis_vector(SpaceModel model, int j) {
    if (j < 1) throw validation_error("basis index must be >= 1");
    SparseVector v(model);
    if (model == SpaceModel::C0Summing) {
        for (int i = 1; i <= j; ++i) v.add_to(i, Rational(1));
    } else {
        v.add_to(j, Rational(1));
    }
    return v;
}

} // namespace hullcert
