#ifndef CARNOT_RNG_HPP
#define CARNOT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "carnot/group.hpp"
#include "carnot/rational.hpp"
#include "carnot/vector.hpp"

namespace carnot {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Deterministic random stream. Distribution mappings are hand-rolled on top of
// mt19937_64 so reports are reproducible across standard library versions.
// derive() gives independent substreams, one per sample, so parallel loops and
// rejection sampling stay deterministic and order-independent.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : gen_(splitmix64(seed)) {}

    static RandomStream derive(std::uint64_t seed, std::uint64_t index) {
        return RandomStream(splitmix64(seed ^ splitmix64(index + 0x51ed2701u)));
    }

    double uniform() {  // [0, 1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    long uniform_int(long lo, long hi) {  // inclusive ends
        return lo + static_cast<long>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0;
        while (u1 == 0) u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

    Rational rational(long max_num = 9, long max_den = 9) {
        return Rational(uniform_int(-max_num, max_num), uniform_int(1, max_den));
    }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0;
};

// ---- sampling helpers --------------------------------------------------------

inline GroupPoint<double> random_box_point(const AlgebraPtr& alg, RandomStream& rs) {
    std::vector<double> c(alg->dim());
    for (auto& v : c) v = rs.uniform(-1.0, 1.0);
    return GroupPoint<double>(alg, std::move(c));
}

// Point with hom_norm exactly (up to rounding) `radius`, direction from a box sample.
inline GroupPoint<double> random_sphere_point(const AlgebraPtr& alg, RandomStream& rs, double radius = 1.0) {
    for (;;) {
        auto p = random_box_point(alg, rs);
        double n = hom_norm(p);
        if (n > 1e-8) return dilate(radius / n, p);
    }
}

// Roughly uniform in the hom-norm ball: rejection from the coordinate box.
inline GroupPoint<double> random_ball_point(const AlgebraPtr& alg, RandomStream& rs, double radius = 1.0) {
    for (;;) {
        auto p = random_box_point(alg, rs);
        if (hom_norm(p) <= 1.0) return dilate(radius, p);
    }
}

inline LieVector<double> random_horizontal(const AlgebraPtr& alg, RandomStream& rs) {
    std::vector<double> c(alg->dim(), 0.0);
    for (int j = 0; j < alg->horizontal_dim(); ++j) c[j] = rs.normal();
    return LieVector<double>(alg, std::move(c));
}

inline GroupPoint<Rational> random_rational_point(const AlgebraPtr& alg, RandomStream& rs, long max_num = 9,
                                                  long max_den = 9) {
    std::vector<Rational> c(alg->dim());
    for (auto& v : c) v = rs.rational(max_num, max_den);
    return GroupPoint<Rational>(alg, std::move(c));
}

inline LieVector<Rational> random_rational_horizontal(const AlgebraPtr& alg, RandomStream& rs, long max_num = 9,
                                                      long max_den = 9) {
    std::vector<Rational> c(alg->dim(), Rational(0));
    for (int j = 0; j < alg->horizontal_dim(); ++j) c[j] = rs.rational(max_num, max_den);
    return LieVector<Rational>(alg, std::move(c));
}

}  // namespace carnot

#endif
