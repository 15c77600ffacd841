#ifndef CARNOT_GROUP_HPP
#define CARNOT_GROUP_HPP

#include <cmath>
#include <vector>

#include "carnot/bch.hpp"
#include "carnot/error.hpp"
#include "carnot/vector.hpp"

namespace carnot {

// Point of the group in exponential coordinates: the tuple (x_1..x_n) stands
// for exp(x_1 X_1 + ... + x_n X_n). Same storage as a LieVector, different
// reading; conversions are explicit and free.
template <class S>
class GroupPoint {
public:
    explicit GroupPoint(LieVector<S> log) : log_(std::move(log)) {}
    GroupPoint(AlgebraPtr alg, std::vector<S> coords) : log_(std::move(alg), std::move(coords)) {}

    static GroupPoint identity(const AlgebraPtr& alg) { return GroupPoint(LieVector<S>::zero(alg)); }
    static GroupPoint exp(const LieVector<S>& v) { return GroupPoint(v); }

    const LieVector<S>& log() const { return log_; }
    const AlgebraPtr& algebra() const { return log_.algebra(); }
    const std::vector<S>& coords() const { return log_.coeffs(); }
    const S& operator[](int j) const { return log_[j]; }
    int dim() const { return log_.dim(); }
    bool is_identity() const { return log_.is_zero(); }

    bool operator==(const GroupPoint& o) const { return log_ == o.log_; }
    bool operator!=(const GroupPoint& o) const { return !(*this == o); }

private:
    LieVector<S> log_;
};

template <class S>
GroupPoint<S> multiply(const GroupPoint<S>& x, const GroupPoint<S>& y) {
    return GroupPoint<S>(bch(x.log(), y.log()));
}

// exp(X)^{-1} = exp(-X): every bracket term of bch(X,-X) vanishes.
template <class S>
GroupPoint<S> inverse(const GroupPoint<S>& x) {
    return GroupPoint<S>(-x.log());
}

template <class S>
GroupPoint<S> conjugate(const GroupPoint<S>& x, const GroupPoint<S>& y) {
    return multiply(multiply(inverse(x), y), x);  // x^{-1} y x
}

template <class S>
GroupPoint<S> group_commutator(const GroupPoint<S>& x, const GroupPoint<S>& y) {
    return multiply(multiply(x, y), multiply(inverse(x), inverse(y)));
}

// delta_lambda scales coordinate j by lambda^{d_j}; a group automorphism.
template <class S>
GroupPoint<S> dilate(const S& lambda, const GroupPoint<S>& x) {
    if (!(lambda > S(0))) usage_error("dilation factor must be positive");
    std::vector<S> out = x.coords();
    const auto& alg = *x.algebra();
    for (int j = 0; j < x.dim(); ++j) {
        S f(1);
        for (int p = 0; p < alg.layer_of(j); ++p) f *= lambda;
        out[j] *= f;
    }
    return GroupPoint<S>(x.algebra(), std::move(out));
}

template <class S>
LieVector<S> dilate(const S& lambda, const LieVector<S>& v) {
    return dilate(lambda, GroupPoint<S>(v)).log();
}

// Homogeneous norm (sum_i |x^i|^{2 sigma / i})^{1/(2 sigma)} with sigma = step!.
// Each block power 2 sigma / i is even, so |x^i|^{2 sigma/i} = (sum of squares)^{sigma/i}
// needs no square root. On the first Heisenberg group this is ((x^2+y^2)^2 + t^2)^{1/4}.
template <class S>
double hom_norm(const GroupPoint<S>& x) {
    const auto& alg = *x.algebra();
    const int s = alg.step();
    long sigma = 1;
    for (int i = 2; i <= s; ++i) sigma *= i;
    auto ipow = [](double b, long e) {
        double r = 1;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    };
    double total = 0;
    for (int l = 1; l <= s; ++l) {
        double ss = 0;
        for (int j = alg.layer_offset(l); j < alg.layer_offset(l) + alg.layer_dim(l); ++j) {
            double v = to_double(x[j]);
            ss += v * v;
        }
        if (ss > 0) total += ipow(ss, sigma / l);
    }
    if (total == 0) return 0;
    return std::pow(total, 1.0 / (2.0 * static_cast<double>(sigma)));
}

template <class S>
double hom_distance(const GroupPoint<S>& x, const GroupPoint<S>& y) {
    return hom_norm(multiply(inverse(x), y));
}

// First m coordinates. Additive under multiplication: the group operation is
// Euclidean in the first layer.
template <class S>
std::vector<S> project_horizontal(const GroupPoint<S>& x) {
    const int m = x.algebra()->horizontal_dim();
    return std::vector<S>(x.coords().begin(), x.coords().begin() + m);
}

// Left-invariant frame: X_j(x) is the coefficient of t in bch(log x, t X_j),
// a polynomial of degree <= step in t, extracted by exact interpolation on
// the nodes t = 0..step.
template <class S>
LieVector<S> vector_field(int j, const GroupPoint<S>& x) {
    const auto& alg = x.algebra();
    if (j < 0 || j >= alg->horizontal_dim()) usage_error("vector_field index must name a horizontal basis element");
    const int s = alg->step();

    // weight w_k = coefficient of t^1 in the k-th Lagrange basis polynomial
    std::vector<Rational> weights(s + 1);
    for (int k = 0; k <= s; ++k) {
        std::vector<Rational> poly{Rational(1)};  // product of (t - t_j)/(t_k - t_j)
        Rational denom(1);
        for (int t = 0; t <= s; ++t) {
            if (t == k) continue;
            std::vector<Rational> next(poly.size() + 1, Rational(0));
            for (std::size_t d = 0; d < poly.size(); ++d) {
                next[d] += poly[d] * Rational(-t);
                next[d + 1] += poly[d];
            }
            poly = std::move(next);
            denom *= Rational(k - t);
        }
        weights[k] = poly.size() > 1 ? poly[1] / denom : Rational(0);
    }

    LieVector<S> acc = LieVector<S>::zero(alg);
    for (int k = 0; k <= s; ++k) {
        if (weights[k] == 0) continue;
        LieVector<S> step_dir = LieVector<S>::basis(alg, j).scaled(ScalarTraits<S>::from_int(k));
        LieVector<S> val = bch(x.log(), step_dir);
        const S w = ScalarTraits<S>::from_rational(weights[k]);
        for (int d = 0; d < acc.dim(); ++d) acc[d] += w * val[d];
    }
    return acc;
}

}  // namespace carnot

#endif
