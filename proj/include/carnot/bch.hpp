#ifndef CARNOT_BCH_HPP
#define CARNOT_BCH_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <vector>

#include "carnot/error.hpp"
#include "carnot/rational.hpp"
#include "carnot/vector.hpp"

namespace carnot {

// One grouped term of the Baker-Campbell-Hausdorff series: coeff times the
// right-nested bracket of `word` (letters 0 = X, 1 = Y).
struct BchTerm {
    Rational coeff;
    std::vector<std::uint8_t> word;
};

constexpr int kMaxBchOrder = 16;

namespace detail {

inline Rational factorial(int n) {
    Rational r(1);
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// Dynkin's formula: sum over sequences of blocks (p_i, q_i), p_i + q_i >= 1,
// of (-1)^{k-1} / (k * n * prod p_i! q_i!) times the right-nested bracket of
// the word X^{p1} Y^{q1} ... X^{pk} Y^{qk}, with n the word length. Terms are
// grouped by word; words with equal trailing letters vanish identically.
inline std::vector<BchTerm> build_bch_terms(int max_order) {
    std::map<std::vector<std::uint8_t>, Rational> grouped;
    std::vector<std::pair<int, int>> blocks;
    std::vector<std::uint8_t> word;

    auto flush = [&] {
        const int n = static_cast<int>(word.size());
        if (n < 2 || word[n - 1] == word[n - 2]) return;
        Rational denom = Rational(static_cast<int>(blocks.size())) * n;
        for (const auto& [p, q] : blocks) denom *= factorial(p) * factorial(q);
        grouped[word] += Rational(blocks.size() % 2 == 1 ? 1 : -1) / denom;
    };

    std::function<void(int)> rec = [&](int remaining) {
        if (!blocks.empty()) flush();
        if (remaining == 0) return;
        for (int p = 0; p <= remaining; ++p)
            for (int q = (p == 0 ? 1 : 0); p + q <= remaining; ++q) {
                blocks.emplace_back(p, q);
                word.insert(word.end(), p, std::uint8_t{0});
                word.insert(word.end(), q, std::uint8_t{1});
                rec(remaining - p - q);
                word.resize(word.size() - p - q);
                blocks.pop_back();
            }
    };
    rec(max_order);

    std::vector<BchTerm> out;
    for (auto& [w, c] : grouped)
        if (c != 0) out.push_back({c, w});
    std::sort(out.begin(), out.end(),
              [](const BchTerm& a, const BchTerm& b) { return a.word.size() < b.word.size(); });
    return out;
}

}  // namespace detail

// Cached per order; lock-free after first use of each order.
inline const std::vector<BchTerm>& bch_terms(int max_order) {
    if (max_order < 2 || max_order > kMaxBchOrder) usage_error("bch order out of supported range [2,16]");
    static std::array<std::once_flag, kMaxBchOrder + 1> flags;
    static std::array<std::vector<BchTerm>, kMaxBchOrder + 1> tables;
    std::call_once(flags[max_order], [&] { tables[max_order] = detail::build_bch_terms(max_order); });
    return tables[max_order];
}

// X <> Y with brackets of length > max_order discarded. The default order is
// the algebra step, where truncation is exact because longer brackets vanish.
template <class S>
LieVector<S> bch(const LieVector<S>& x, const LieVector<S>& y, int max_order = -1) {
    x.require_same_algebra(y);
    const int step = x.algebra()->step();
    const int order = max_order < 0 ? step : max_order;
    LieVector<S> out = x + y;
    if (order < 2 || step < 2) return out;
    if (order == 2 || step == 2) {
        // Closed form; degree > 2 terms fall outside the truncation order or
        // are brackets of length > step, which the structure constants kill.
        auto b = bracket(x, y);
        const S half = S(1) / S(2);
        for (int j = 0; j < out.dim(); ++j) out[j] += half * b[j];
        return out;
    }
    for (const auto& term : bch_terms(order)) {
        LieVector<S> acc = term.word.back() ? y : x;
        bool zero = false;
        for (int i = static_cast<int>(term.word.size()) - 2; i >= 0; --i) {
            acc = bracket(term.word[i] ? y : x, acc);
            if (acc.is_zero()) { zero = true; break; }
        }
        if (zero) continue;
        const S c = ScalarTraits<S>::from_rational(term.coeff);
        for (int j = 0; j < out.dim(); ++j) out[j] += c * acc[j];
    }
    return out;
}

}  // namespace carnot

#endif
