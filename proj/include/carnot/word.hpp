#ifndef CARNOT_WORD_HPP
#define CARNOT_WORD_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "carnot/error.hpp"
#include "carnot/group.hpp"
#include "carnot/vector.hpp"

namespace carnot {

// Finite product of horizontal one-parameter exponentials: step j moves
// x -> x * exp(t_j E_j) with E_j in V_1.
template <class S>
struct WordStep {
    S t;
    LieVector<S> dir;
};

template <class S>
class HorizontalWord {
public:
    HorizontalWord() = default;
    explicit HorizontalWord(std::vector<WordStep<S>> steps) : steps_(std::move(steps)) {
        for (const auto& s : steps_)
            if (!s.dir.is_horizontal()) usage_error("horizontal word step direction must lie in V_1");
    }

    const std::vector<WordStep<S>>& steps() const { return steps_; }
    int size() const { return static_cast<int>(steps_.size()); }
    bool empty() const { return steps_.empty(); }

    void append(S t, LieVector<S> dir) {
        if (!dir.is_horizontal()) usage_error("horizontal word step direction must lie in V_1");
        steps_.push_back({std::move(t), std::move(dir)});
    }

    HorizontalWord concat(const HorizontalWord& o) const {
        std::vector<WordStep<S>> all(steps_);
        all.insert(all.end(), o.steps_.begin(), o.steps_.end());
        return HorizontalWord(std::move(all));
    }

    // Exact group inverse of the flow: reversed order, negated amplitudes.
    HorizontalWord inverted() const {
        std::vector<WordStep<S>> all(steps_.rbegin(), steps_.rend());
        for (auto& s : all) s.t = -s.t;
        return HorizontalWord(std::move(all));
    }

    // delta_lambda(exp(tE)) = exp(lambda t E) for horizontal E.
    HorizontalWord dilated(const S& lambda) const {
        std::vector<WordStep<S>> all(steps_);
        for (auto& s : all) s.t *= lambda;
        return HorizontalWord(std::move(all));
    }

    // Drops steps that move nothing.
    HorizontalWord pruned() const {
        std::vector<WordStep<S>> all;
        for (const auto& s : steps_)
            if (s.t != S(0) && !s.dir.is_zero()) all.push_back(s);
        return HorizontalWord(std::move(all));
    }

    double max_amplitude() const {
        double m = 0;
        for (const auto& s : steps_) m = std::max(m, std::abs(to_double(s.t)));
        return m;
    }

private:
    std::vector<WordStep<S>> steps_;
};

// Endpoint of the piecewise-constant-control flow started at x. Constant
// segments integrate exactly to right multiplication by exp(t_j E_j).
template <class S>
GroupPoint<S> flow(const GroupPoint<S>& x, const HorizontalWord<S>& word) {
    GroupPoint<S> cur = x;
    for (const auto& s : word.steps())
        cur = multiply(cur, GroupPoint<S>::exp(s.dir.scaled(s.t)));
    return cur;
}

// L(gamma) = sum |t_j| * omega(E_j); additive under concatenation.
template <class S>
double word_length(const HorizontalWord<S>& word) {
    double len = 0;
    for (const auto& s : word.steps()) len += std::abs(to_double(s.t)) * s.dir.omega();
    return len;
}

}  // namespace carnot

#endif
