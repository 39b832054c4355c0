#pragma once

#include <map>
#include <vector>

#include "hullcert/space.hpp"

namespace hullcert {

/// Exactly representable element of (X (+) R)*.
///
/// C0Summing: the X-part lives in l1 and is a finite coefficient map.
/// L1Tail: the X-part lives in l-infinity; the representable closure needed
/// here is the eventually-constant sequences, stored as a finite prefix plus
/// a tail value (the tail-sum functionals e*_i and their combinations are of
/// this form, and the encoding is closed under linear combination).
///
/// The dual of the max norm on the product is the sum, so
/// dual_norm(g) = ||X-part||_{X*} + |aug_coeff|.
class DualFunctional {
public:
    static DualFunctional c0_functional(std::map<int, Rational> coeffs, Rational aug = Rational(0)) {
        DualFunctional g(SpaceModel::C0Summing);
        g.ell1_ = std::move(coeffs);
        for (auto it = g.ell1_.begin(); it != g.ell1_.end();)
            it = (it->second == 0) ? g.ell1_.erase(it) : std::next(it);
        if (!g.ell1_.empty() && g.ell1_.begin()->first < 1)
            throw validation_error("functional coefficient index must be >= 1");
        g.aug_ = std::move(aug);
        return g;
    }

    static DualFunctional l1_functional(std::vector<Rational> prefix, Rational tail, Rational aug = Rational(0)) {
        DualFunctional g(SpaceModel::L1Tail);
        g.prefix_ = std::move(prefix);
        g.tail_ = std::move(tail);
        g.aug_ = std::move(aug);
        g.shrink_prefix();
        return g;
    }

    static DualFunctional zero(SpaceModel model) { return DualFunctional(model); }

    SpaceModel model() const { return model_; }
    const Rational& aug_coeff() const { return aug_; }
    const std::map<int, Rational>& ell1_coeffs() const { return ell1_; }
    const std::vector<Rational>& prefix() const { return prefix_; }
    const Rational& tail_value() const { return tail_; }

    /// Coefficient against the standard coordinate (not the working basis).
    Rational coefficient(int index) const {
        if (index < 1) throw validation_error("coefficient index must be >= 1");
        if (model_ == SpaceModel::C0Summing) {
            auto it = ell1_.find(index);
            return it == ell1_.end() ? Rational(0) : it->second;
        }
        if (static_cast<std::size_t>(index) <= prefix_.size()) return prefix_[index - 1];
        return tail_;
    }

    DualFunctional with_aug(Rational aug) const {
        DualFunctional g = *this;
        g.aug_ = std::move(aug);
        return g;
    }

    friend DualFunctional operator+(const DualFunctional& a, const DualFunctional& b) {
        require_same_model(a.model_, b.model_, "functional sum");
        DualFunctional r = a;
        if (r.model_ == SpaceModel::C0Summing) {
            for (const auto& [i, q] : b.ell1_) {
                auto it = r.ell1_.find(i);
                if (it == r.ell1_.end()) {
                    if (q != 0) r.ell1_.emplace(i, q);
                } else {
                    it->second += q;
                    if (it->second == 0) r.ell1_.erase(it);
                }
            }
        } else {
            if (b.prefix_.size() > r.prefix_.size()) r.prefix_.resize(b.prefix_.size(), r.tail_);
            for (std::size_t i = 0; i < r.prefix_.size(); ++i)
                r.prefix_[i] += (i < b.prefix_.size()) ? b.prefix_[i] : b.tail_;
            r.tail_ += b.tail_;
            r.shrink_prefix();
        }
        r.aug_ += b.aug_;
        return r;
    }

    friend DualFunctional operator*(const Rational& s, const DualFunctional& g) {
        DualFunctional r(g.model_);
        if (s == 0) return r;
        if (g.model_ == SpaceModel::C0Summing) {
            for (const auto& [i, q] : g.ell1_) r.ell1_.emplace(i, s * q);
        } else {
            r.prefix_.reserve(g.prefix_.size());
            for (const auto& q : g.prefix_) r.prefix_.push_back(s * q);
            r.tail_ = s * g.tail_;
        }
        r.aug_ = s * g.aug_;
        return r;
    }

    DualFunctional operator-() const { return Rational(-1) * *this; }

    friend bool operator==(const DualFunctional& a, const DualFunctional& b) {
        return a.model_ == b.model_ && a.ell1_ == b.ell1_ && a.prefix_ == b.prefix_ &&
               a.tail_ == b.tail_ && a.aug_ == b.aug_;
    }

private:
    explicit DualFunctional(SpaceModel model) : model_(model) {}

    void shrink_prefix() {
        while (!prefix_.empty() && prefix_.back() == tail_) prefix_.pop_back();
    }

    SpaceModel model_;
    std::map<int, Rational> ell1_;    // C0Summing X-part
    std::vector<Rational> prefix_;    // L1Tail X-part, values at 1..len
    Rational tail_{0};                // L1Tail X-part, value beyond the prefix
    Rational aug_{0};
};

/// X*-norm of the X-part: l1-sum for the c0 model, sup (= max, the sequence
/// is eventually constant) for the l1 model.
inline Rational xstar_norm(const DualFunctional& g) {
    Rational n(0);
    if (g.model() == SpaceModel::C0Summing) {
        for (const auto& [i, q] : g.ell1_coeffs()) n += abs(q);
    } else {
        for (const auto& q : g.prefix()) {
            Rational a = abs(q);
            if (a > n) n = a;
        }
        Rational a = abs(g.tail_value());
        if (a > n) n = a;
    }
    return n;
}

inline Rational dual_norm(const DualFunctional& g) { return xstar_norm(g) + abs(g.aug_coeff()); }

/// Exact pairing of the X-part with a finite-support vector.
inline Rational evaluate_x(const DualFunctional& g, const SparseVector& v) {
    require_same_model(g.model(), v.model(), "functional evaluation");
    Rational r(0);
    for (const auto& [i, q] : v.coords()) r += g.coefficient(i) * q;
    return r;
}

inline Rational evaluate(const DualFunctional& g, const AugPoint& p) {
    return evaluate_x(g, p.x) + g.aug_coeff() * p.t;
}

/// The i-th functional of the biorthogonal system: the coordinate functional
/// for C0Summing, the tail indicator for L1Tail. On the working basis it
/// takes the value 0 when i > j and 1 when i <= j; its aug coefficient is 0.
inline DualFunctional biorth_functional(SpaceModel model, int i) {
    if (i < 1) throw validation_error("functional index must be >= 1");
    if (model == SpaceModel::C0Summing) return DualFunctional::c0_functional({{i, Rational(1)}});
    return DualFunctional::l1_functional(std::vector<Rational>(i - 1, Rational(0)), Rational(1));
}

/// Extends a functional on X to the product by fixing its value on (0, 1).
/// Requires a plain X-functional (zero aug coefficient); the dual norm of the
/// result is dual_norm(g) + |aug|.
inline DualFunctional extend_to_product(const DualFunctional& g, const Rational& aug) {
    if (g.aug_coeff() != 0)
        throw validation_error("extend_to_product expects a functional with zero aug coefficient");
    return g.with_aug(aug);
}

/// The product extension of the i-th biorthogonal functional taking the
/// value 1 on (0, 1). Dual norm exactly 2.
inline DualFunctional extended_functional(SpaceModel model, int i) {
    return extend_to_product(biorth_functional(model, i), Rational(1));
}

} // namespace hullcert
