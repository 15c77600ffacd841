#ifndef CARNOT_VECTOR_HPP
#define CARNOT_VECTOR_HPP

#include <cmath>
#include <vector>

#include "carnot/algebra.hpp"
#include "carnot/error.hpp"
#include "carnot/rational.hpp"

namespace carnot {

// The two scalar towers. A value lives entirely in one tower; mixing is a
// compile error by construction.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static Rational from_rational(const Rational& q) { return q; }
    static Rational from_int(long v) { return Rational(v); }
};

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static double from_rational(const Rational& q) { return to_double(q); }
    static double from_int(long v) { return static_cast<double>(v); }
};

// Element of the Lie algebra in the adapted basis.
template <class S>
class LieVector {
public:
    LieVector(AlgebraPtr alg, std::vector<S> coeffs) : alg_(std::move(alg)), c_(std::move(coeffs)) {
        if (!alg_) usage_error("LieVector requires an algebra");
        if (static_cast<int>(c_.size()) != alg_->dim()) usage_error("coefficient count does not match algebra dimension");
    }

    static LieVector zero(const AlgebraPtr& alg) { return LieVector(alg, std::vector<S>(alg->dim(), S(0))); }

    static LieVector basis(const AlgebraPtr& alg, int j) {
        std::vector<S> c(alg->dim(), S(0));
        if (j < 0 || j >= alg->dim()) usage_error("basis index out of range");
        c[j] = S(1);
        return LieVector(alg, std::move(c));
    }

    const AlgebraPtr& algebra() const { return alg_; }
    const std::vector<S>& coeffs() const { return c_; }
    const S& operator[](int j) const { return c_[j]; }
    S& operator[](int j) { return c_[j]; }
    int dim() const { return alg_->dim(); }

    bool is_zero() const {
        for (const auto& v : c_)
            if (v != S(0)) return false;
        return true;
    }

    // Zero outside layer 1, i.e. an element of V_1.
    bool is_horizontal() const {
        for (int j = alg_->horizontal_dim(); j < dim(); ++j)
            if (c_[j] != S(0)) return false;
        return true;
    }

    LieVector layer_project(int l) const {
        std::vector<S> out(dim(), S(0));
        for (int j = alg_->layer_offset(l); j < alg_->layer_offset(l) + alg_->layer_dim(l); ++j) out[j] = c_[j];
        return LieVector(alg_, std::move(out));
    }

    int lowest_nonzero_layer() const {  // 0 when the vector is zero
        for (int j = 0; j < dim(); ++j)
            if (c_[j] != S(0)) return alg_->layer_of(j);
        return 0;
    }

    // Norm induced by the inner product making X_1..X_m orthonormal on V_1.
    double omega() const {
        double s = 0;
        for (int j = 0; j < alg_->horizontal_dim(); ++j) {
            double v = to_double(c_[j]);
            s += v * v;
        }
        return std::sqrt(s);
    }

    LieVector operator+(const LieVector& o) const {
        require_same_algebra(o);
        std::vector<S> out(c_);
        for (int j = 0; j < dim(); ++j) out[j] += o.c_[j];
        return LieVector(alg_, std::move(out));
    }

    LieVector operator-(const LieVector& o) const {
        require_same_algebra(o);
        std::vector<S> out(c_);
        for (int j = 0; j < dim(); ++j) out[j] -= o.c_[j];
        return LieVector(alg_, std::move(out));
    }

    LieVector operator-() const {
        std::vector<S> out(c_);
        for (auto& v : out) v = -v;
        return LieVector(alg_, std::move(out));
    }

    LieVector scaled(const S& f) const {
        std::vector<S> out(c_);
        for (auto& v : out) v *= f;
        return LieVector(alg_, std::move(out));
    }

    bool operator==(const LieVector& o) const { return alg_.get() == o.alg_.get() ? c_ == o.c_ : (require_same_algebra(o), c_ == o.c_); }
    bool operator!=(const LieVector& o) const { return !(*this == o); }

    void require_same_algebra(const LieVector& o) const {
        if (alg_.get() == o.alg_.get()) return;
        if (!alg_->same_as(*o.alg_)) usage_error("algebra mismatch between operands");
    }

private:
    AlgebraPtr alg_;
    std::vector<S> c_;
};

// [X, Y] through the structure constants; bilinear, exact in the rational tower.
template <class S>
LieVector<S> bracket(const LieVector<S>& x, const LieVector<S>& y) {
    x.require_same_algebra(y);
    const auto& alg = *x.algebra();
    std::vector<S> out(alg.dim(), S(0));
    for (int i = 0; i < alg.dim(); ++i) {
        if (x[i] == S(0)) continue;
        for (int j = 0; j < alg.dim(); ++j) {
            if (y[j] == S(0)) continue;
            for (const auto& [k, c] : alg.basis_bracket(i, j)) out[k] += x[i] * y[j] * ScalarTraits<S>::from_rational(c);
        }
    }
    return LieVector<S>(x.algebra(), std::move(out));
}

}  // namespace carnot

#endif
