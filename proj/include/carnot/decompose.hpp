#ifndef CARNOT_DECOMPOSE_HPP
#define CARNOT_DECOMPOSE_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "carnot/error.hpp"
#include "carnot/group.hpp"
#include "carnot/linalg.hpp"
#include "carnot/word.hpp"

namespace carnot {

namespace detail {

// Word realizing the left-normed bracket of the given entries with per-slot
// amplitudes: flow(0, w) = exp(prod(a) * [E_q, ..., [E_2, E_1]...] + R) with R
// supported in layers > q. Entries are listed innermost first. For q = step
// the remainder R vanishes and the word is exact.
template <class S>
HorizontalWord<S> bracket_word_rec(const std::vector<LieVector<S>>& entries, const std::vector<S>& amps, int k) {
    if (k == 1) {
        HorizontalWord<S> w;
        w.append(amps[0], entries[0]);
        return w;
    }
    HorizontalWord<S> inner = bracket_word_rec(entries, amps, k - 1);
    HorizontalWord<S> w;
    w.append(amps[k - 1], entries[k - 1]);
    w = w.concat(inner);
    w.append(-amps[k - 1], entries[k - 1]);
    return w.concat(inner.inverted());
}

template <class S>
HorizontalWord<S> bracket_word_amps(const std::vector<LieVector<S>>& entries, const std::vector<S>& amps) {
    if (entries.empty() || entries.size() != amps.size()) usage_error("bracket word needs matching entries and amplitudes");
    for (const auto& e : entries)
        if (!e.is_horizontal()) usage_error("bracket word entries must lie in V_1");
    return bracket_word_rec(entries, amps, static_cast<int>(entries.size()));
}

}  // namespace detail

// Commutator word for the top layer: q must equal the step so the remainder
// of the group-commutator expansion vanishes and flow(0, w) = exp([E_q,...,[E_2,E_1]...])
// exactly. Entries innermost first. Word size is 3 * 2^{q-1} - 2.
template <class S>
HorizontalWord<S> bracket_word(const std::vector<LieVector<S>>& entries) {
    if (entries.empty()) usage_error("bracket word needs at least one entry");
    const int q = static_cast<int>(entries.size());
    const int s = entries.front().algebra()->step();
    if (q != s)
        usage_error("bracket word is exact only at the top layer (got " + std::to_string(q) + " entries, step is " +
                     std::to_string(s) + ")");
    return detail::bracket_word_amps(entries, std::vector<S>(entries.size(), S(1)));
}

// ---- basis bracket table ----------------------------------------------------

// Expression of a non-horizontal basis element as a combination of left-normed
// brackets of horizontal basis elements. tuple holds 0-based horizontal
// indices, innermost first.
struct BracketCombo {
    Rational coeff;
    std::vector<int> tuple;
};

class BasisBracketTable {
public:
    explicit BasisBracketTable(AlgebraPtr alg) : alg_(std::move(alg)) { build(); }

    const AlgebraPtr& algebra() const { return alg_; }
    // Empty for horizontal k.
    const std::vector<BracketCombo>& expansion(int k) const { return rows_[k]; }
    bool empty() const {
        for (const auto& r : rows_)
            if (!r.empty()) return false;
        return true;
    }

    static LieVector<Rational> bracket_value(const AlgebraPtr& alg, const std::vector<int>& tuple) {
        LieVector<Rational> v = LieVector<Rational>::basis(alg, tuple[0]);
        for (std::size_t i = 1; i < tuple.size(); ++i) v = bracket(LieVector<Rational>::basis(alg, tuple[i]), v);
        return v;
    }

private:
    void build() {
        const int n = alg_->dim();
        const int m = alg_->horizontal_dim();
        rows_.assign(n, {});
        for (int l = 2; l <= alg_->step(); ++l) build_layer(l, m);
    }

    void build_layer(int l, int m) {
        const int off = alg_->layer_offset(l);
        const int ml = alg_->layer_dim(l);

        // Greedy independent family of left-normed brackets spanning V_l.
        std::vector<std::vector<int>> tuples;
        std::vector<std::vector<Rational>> cols;  // layer-l coordinates
        std::vector<int> tuple(l, 0);
        RatMatrix echelon;
        while (true) {
            auto v = bracket_value(alg_, tuple);
            std::vector<Rational> col(ml);
            bool nonzero = false;
            for (int j = 0; j < ml; ++j) {
                col[j] = v[off + j];
                nonzero = nonzero || col[j] != 0;
            }
            if (nonzero) {
                RatMatrix trial = echelon;
                trial.push_back(col);
                if (rank(trial) > static_cast<int>(tuples.size())) {
                    echelon = std::move(trial);
                    tuples.push_back(tuple);
                    cols.push_back(std::move(col));
                    if (static_cast<int>(tuples.size()) == ml) break;
                }
            }
            // next tuple in lex order
            int pos = l - 1;
            while (pos >= 0 && tuple[pos] == m - 1) tuple[pos--] = 0;
            if (pos < 0) break;
            ++tuple[pos];
        }
        if (static_cast<int>(tuples.size()) != ml)
            check_error("generation axiom violated: left-normed horizontal brackets do not span layer " +
                        std::to_string(l));

        for (int k = off; k < off + ml; ++k) {
            std::vector<Rational> rhs(ml, Rational(0));
            rhs[k - off] = 1;
            auto sol = solve_columns(cols, rhs);
            if (!sol) invariant_error("basis bracket solve inconsistent despite full rank");
            for (std::size_t a = 0; a < tuples.size(); ++a)
                if ((*sol)[a] != 0) rows_[k].push_back({(*sol)[a], tuples[a]});
        }
    }

    AlgebraPtr alg_;
    std::vector<std::vector<BracketCombo>> rows_;
};

inline BasisBracketTable basis_bracket_table(const AlgebraPtr& alg) { return BasisBracketTable(alg); }

// ---- splitting --------------------------------------------------------------

struct SplitResult {
    HorizontalWord<Rational> word;  // directions drawn from {U, V} only
    int n_steps = 0;
    double max_rho = 0;
    bool exact = false;
};

namespace detail {

// Tagged recursion over the step: a step is (rho, which of U/V). Projection to
// the quotient keeps V_1 coordinates, so tags lift verbatim.
inline void split_sum_rec(const AlgebraPtr& alg, const LieVector<Rational>& u, const LieVector<Rational>& v,
                          std::vector<std::pair<Rational, bool>>& word) {
    const int s = alg->step();
    if (s == 1) {
        word.push_back({Rational(1), false});
        word.push_back({Rational(1), true});
        return;
    }
    auto qalg = std::make_shared<StratifiedAlgebra>(alg->quotient_drop_top());
    const int qn = qalg->dim();
    auto restrict_vec = [&](const LieVector<Rational>& x) {
        return LieVector<Rational>(qalg, std::vector<Rational>(x.coeffs().begin(), x.coeffs().begin() + qn));
    };
    split_sum_rec(qalg, restrict_vec(u), restrict_vec(v), word);

    // Lift and compute the layer-s defect Z: exp(U+V+Z) = prod exp(rho_i U_i).
    GroupPoint<Rational> p = GroupPoint<Rational>::identity(alg);
    for (const auto& [rho, is_v] : word)
        p = multiply(p, GroupPoint<Rational>::exp((is_v ? v : u).scaled(rho)));
    LieVector<Rational> z = p.log() - u - v;
    for (int j = 0; j < alg->layer_offset(s); ++j)
        if (z[j] != 0) invariant_error("splitting defect has support below the top layer");
    if (z.is_zero()) return;

    // Solve -Z over left-normed length-s brackets with entries in {U, V}.
    std::vector<std::vector<int>> tuples;  // 0 = U, 1 = V, innermost first
    std::vector<std::vector<Rational>> cols;
    const int off = alg->layer_offset(s);
    const int ms = alg->layer_dim(s);
    for (int mask = 0; mask < (1 << s); ++mask) {
        std::vector<int> tuple(s);
        for (int i = 0; i < s; ++i) tuple[i] = (mask >> i) & 1;
        LieVector<Rational> b = tuple[0] ? v : u;
        for (int i = 1; i < s; ++i) b = bracket(tuple[i] ? v : u, b);
        std::vector<Rational> col(ms);
        bool nonzero = false;
        for (int j = 0; j < ms; ++j) {
            col[j] = b[off + j];
            nonzero = nonzero || col[j] != 0;
        }
        if (!nonzero) continue;
        tuples.push_back(std::move(tuple));
        cols.push_back(std::move(col));
    }
    std::vector<Rational> rhs(ms);
    for (int j = 0; j < ms; ++j) rhs[j] = -z[off + j];
    auto sol = solve_columns(cols, rhs);
    if (!sol) invariant_error("splitting residual not in the span of left-normed {U,V} brackets");

    for (std::size_t a = 0; a < tuples.size(); ++a) {
        if ((*sol)[a] == 0) continue;
        // Word for eta * [W_s, ..., [W_2, W_1]...]; eta absorbed in the innermost slot.
        std::vector<std::pair<Rational, bool>> tagged;
        std::function<void(int)> emit = [&](int k) {
            if (k == 1) {
                tagged.push_back({(*sol)[a], tuples[a][0] == 1});
                return;
            }
            std::size_t begin = tagged.size();
            tagged.push_back({Rational(1), tuples[a][k - 1] == 1});
            emit(k - 1);
            std::size_t end = tagged.size();
            tagged.push_back({Rational(-1), tuples[a][k - 1] == 1});
            for (std::size_t i = end; i-- > begin + 1;) tagged.push_back({-tagged[i].first, tagged[i].second});
        };
        emit(s);
        word.insert(word.end(), tagged.begin(), tagged.end());
    }
}

}  // namespace detail

// exp(U+V) as a product of exponentials in the two directions U and V alone.
// Exactness is verified by rational flow; failure is an internal invariant
// violation, never a data error.
inline SplitResult split_sum(const LieVector<Rational>& u, const LieVector<Rational>& v) {
    u.require_same_algebra(v);
    if (!u.is_horizontal() || !v.is_horizontal()) usage_error("split_sum arguments must lie in V_1");
    const AlgebraPtr& alg = u.algebra();

    SplitResult res;
    const int m = alg->horizontal_dim();

    // Degenerate case first: V = kappa U (or either zero) collapses to a
    // one-parameter subgroup.
    bool dependent = false;
    Rational kappa(0);
    if (u.is_zero() || v.is_zero()) {
        dependent = true;
    } else {
        int pivot = -1;
        for (int j = 0; j < m; ++j)
            if (u[j] != 0) { pivot = j; break; }
        Rational ratio = v[pivot] / u[pivot];
        dependent = true;
        for (int j = 0; j < m; ++j)
            if (v[j] != u[j] * ratio) { dependent = false; break; }
        kappa = ratio;
    }
    if (dependent) {
        if (u.is_zero() && v.is_zero()) {
            res.exact = true;
            return res;
        }
        if (u.is_zero()) res.word.append(Rational(1), v);
        else res.word.append(Rational(1) + kappa, u);
    } else {
        std::vector<std::pair<Rational, bool>> tagged;
        detail::split_sum_rec(alg, u, v, tagged);
        for (const auto& [rho, is_v] : tagged)
            if (rho != 0) res.word.append(rho, is_v ? v : u);
    }

    GroupPoint<Rational> target = GroupPoint<Rational>::exp(u + v);
    if (flow(GroupPoint<Rational>::identity(alg), res.word) != target)
        invariant_error("split_sum endpoint differs from exp(U+V)");
    res.exact = true;
    res.n_steps = res.word.size();
    res.max_rho = res.word.max_amplitude();
    return res;
}

// ---- path decomposition ------------------------------------------------------

struct PathResult {
    HorizontalWord<Rational> word;  // directions are +/- horizontal basis elements, t_j >= 0
    Rational total_t;               // sum of the step amplitudes, exact
    double ratio_to_norm = 0;       // total_t / hom_norm(h)
    int n_steps = 0;
    Rational scale;                 // normalization gauge actually used
    bool scale_is_covariant = true; // whether the default gauge commutes with rational dilations at this input
};

// Normalization gauge. Exactly 1-homogeneous under rational dilations whenever
// the first layer is nonzero (max of |coord|), or when the leading lower-layer
// coefficient is a perfect power. Falls back to a dyadic approximation of the
// homogeneous norm otherwise.
inline Rational default_path_scale(const GroupPoint<Rational>& h, bool* covariant = nullptr) {
    const auto& alg = *h.algebra();
    if (covariant) *covariant = true;
    Rational best(0);
    for (int j = 0; j < alg.horizontal_dim(); ++j) {
        Rational a = h[j] < 0 ? Rational(-h[j]) : Rational(h[j]);
        if (a > best) best = a;
    }
    if (best > 0) return best;
    const int l = h.log().lowest_nonzero_layer();
    if (l == 0) return Rational(1);
    for (int j = alg.layer_offset(l); j < alg.layer_offset(l) + alg.layer_dim(l); ++j) {
        Rational a = h[j] < 0 ? Rational(-h[j]) : Rational(h[j]);
        if (a > best) best = a;
    }
    Rational root;
    if (exact_root(best, static_cast<unsigned>(l), root)) return root;
    if (covariant) *covariant = false;
    return rational_from_double(std::pow(to_double(best), 1.0 / l));
}

// h = exp(t_1 E_1) ... exp(t_M E_M) with E_j in {+/- X_1 .. +/- X_m} and
// t_j >= 0, exact. Peels layer by layer; each layer-l coefficient is realized
// by a commutator word whose overflow into higher layers is absorbed by the
// subsequent sweeps, terminating exactly at the top layer.
inline PathResult path_decompose(const GroupPoint<Rational>& h, std::optional<Rational> scale = std::nullopt,
                                 const BasisBracketTable* table = nullptr) {
    const AlgebraPtr& alg = h.algebra();
    const int m = alg->horizontal_dim();
    PathResult res;
    res.scale = scale ? *scale : default_path_scale(h, &res.scale_is_covariant);
    if (res.scale <= 0) usage_error("path decomposition scale must be positive");
    if (h.is_identity()) {
        res.total_t = 0;
        return res;
    }

    std::optional<BasisBracketTable> own;
    if (!table) {
        own.emplace(alg);
        table = &*own;
    }

    HorizontalWord<Rational> word;
    for (int j = 0; j < m; ++j)
        if (h[j] != 0) word.append(h[j], LieVector<Rational>::basis(alg, j));

    const Rational& u = res.scale;
    for (int l = 2; l <= alg->step(); ++l) {
        GroupPoint<Rational> cur = flow(GroupPoint<Rational>::identity(alg), word);
        LieVector<Rational> z = multiply(inverse(cur), h).log();
        for (int j = 0; j < alg->layer_offset(l); ++j)
            if (z[j] != 0) invariant_error("path residual has support below the active layer");
        const Rational u_pow = pow_int(u, l - 1);
        for (int k = alg->layer_offset(l); k < alg->layer_offset(l) + alg->layer_dim(l); ++k) {
            if (z[k] == 0) continue;
            for (const auto& combo : table->expansion(k)) {
                Rational amp = z[k] * combo.coeff;
                if (amp == 0) continue;
                std::vector<LieVector<Rational>> entries;
                std::vector<Rational> amps;
                for (std::size_t i = 0; i < combo.tuple.size(); ++i) {
                    entries.push_back(LieVector<Rational>::basis(alg, combo.tuple[i]));
                    amps.push_back(i == 0 ? Rational(amp / u_pow) : u);
                }
                word = word.concat(detail::bracket_word_amps(entries, amps));
            }
        }
    }

    if (flow(GroupPoint<Rational>::identity(alg), word) != h) invariant_error("path decomposition endpoint mismatch");

    // Fold signs so every amplitude is nonnegative and drop no-op steps.
    HorizontalWord<Rational> canon;
    Rational total(0);
    for (const auto& s : word.steps()) {
        if (s.t == 0) continue;
        if (s.t < 0) canon.append(-s.t, -s.dir);
        else canon.append(s.t, s.dir);
        total += canon.steps().back().t;
    }
    res.word = std::move(canon);
    res.total_t = total;
    res.n_steps = res.word.size();
    const double hn = hom_norm(h);
    res.ratio_to_norm = hn > 0 ? to_double(total) / hn : 0.0;
    return res;
}

}  // namespace carnot

#endif
