#ifndef CARNOT_ALGEBRA_HPP
#define CARNOT_ALGEBRA_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "carnot/error.hpp"
#include "carnot/linalg.hpp"
#include "carnot/rational.hpp"

namespace carnot {

// One explicitly given structure constant c_{ij}^k, all indices 0-based.
struct BracketEntry {
    int i, j, k;
    Rational c;
};

struct ValidationCheck {
    std::string axiom;    // antisymmetry | jacobi | grading | generation
    bool passed = true;
    std::string witness;  // 1-based description of the first failure, empty when passed
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool all_passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
    }
    const ValidationCheck& check(const std::string& axiom) const {
        for (const auto& c : checks)
            if (c.axiom == axiom) return c;
        invariant_error("unknown validation axiom: " + axiom);
    }
};

// A stratified Lie algebra given by structure constants in an adapted basis.
// Immutable after construction; construction checks shape only, the
// stratification axioms are the job of validate().
class StratifiedAlgebra {
public:
    StratifiedAlgebra(int step, std::vector<int> layer_dims, std::vector<BracketEntry> entries,
                      std::string name = "custom")
        : step_(step), layer_dims_(std::move(layer_dims)), raw_(std::move(entries)), name_(std::move(name)) {
        if (step_ < 1) usage_error("algebra step must be >= 1");
        if (static_cast<int>(layer_dims_.size()) != step_) usage_error("layer_dims size must equal step");
        offsets_.assign(step_ + 1, 0);
        for (int i = 0; i < step_; ++i) {
            if (layer_dims_[i] < 1) usage_error("layer dimensions must be positive");
            offsets_[i + 1] = offsets_[i] + layer_dims_[i];
        }
        n_ = offsets_[step_];
        layer_of_.resize(n_);
        for (int l = 1; l <= step_; ++l)
            for (int j = offsets_[l - 1]; j < offsets_[l]; ++j) layer_of_[j] = l;
        for (const auto& e : raw_) {
            if (e.i < 0 || e.i >= n_ || e.j < 0 || e.j >= n_ || e.k < 0 || e.k >= n_)
                usage_error("bracket entry index out of range");
        }
        build_table();
    }

    int step() const { return step_; }
    int dim() const { return n_; }
    int horizontal_dim() const { return layer_dims_[0]; }
    int layer_dim(int l) const { return layer_dims_[l - 1]; }      // l is 1-based
    int layer_offset(int l) const { return offsets_[l - 1]; }      // start index of layer l
    int layer_of(int j) const { return layer_of_[j]; }             // homogeneity d_j, 1-based
    const std::string& name() const { return name_; }
    const std::vector<int>& layer_dims() const { return layer_dims_; }
    const std::vector<BracketEntry>& raw_entries() const { return raw_; }

    // Effective expansion of [X_i, X_j]; entries explicitly given win, the
    // transposed pair supplies the antisymmetric completion otherwise.
    const std::vector<std::pair<int, Rational>>& basis_bracket(int i, int j) const {
        return table_[static_cast<std::size_t>(i) * n_ + j];
    }

    bool same_as(const StratifiedAlgebra& o) const {
        return step_ == o.step_ && layer_dims_ == o.layer_dims_ && canonical_entries() == o.canonical_entries();
    }

    std::uint64_t hash() const {
        std::uint64_t h = 1469598103934665603ull;
        auto mix = [&h](std::uint64_t v) {
            h ^= v;
            h *= 1099511628211ull;
        };
        mix(static_cast<std::uint64_t>(step_));
        for (int d : layer_dims_) mix(static_cast<std::uint64_t>(d));
        for (const auto& [key, c] : canonical_entries()) {
            mix(static_cast<std::uint64_t>(key));
            for (char ch : format_rational(c)) mix(static_cast<unsigned char>(ch));
        }
        return h;
    }

    ValidationReport validate() const;
    StratifiedAlgebra quotient_drop_top() const;

private:
    void build_table() {
        table_.assign(static_cast<std::size_t>(n_) * n_, {});
        std::vector<char> has_explicit(static_cast<std::size_t>(n_) * n_, 0);
        for (const auto& e : raw_) {
            auto& cell = table_[static_cast<std::size_t>(e.i) * n_ + e.j];
            bool merged = false;
            for (auto& [k, c] : cell)
                if (k == e.k) { c += e.c; merged = true; break; }
            if (!merged) cell.emplace_back(e.k, e.c);
            has_explicit[static_cast<std::size_t>(e.i) * n_ + e.j] = 1;
        }
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                std::size_t ij = static_cast<std::size_t>(i) * n_ + j;
                std::size_t ji = static_cast<std::size_t>(j) * n_ + i;
                if (!has_explicit[ij] && has_explicit[ji]) {
                    for (const auto& [k, c] : table_[ji]) table_[ij].emplace_back(k, -c);
                }
            }
        for (auto& cell : table_) {
            std::sort(cell.begin(), cell.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            cell.erase(std::remove_if(cell.begin(), cell.end(), [](const auto& p) { return p.second == 0; }),
                       cell.end());
        }
    }

    std::map<std::uint64_t, Rational> canonical_entries() const {
        std::map<std::uint64_t, Rational> out;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                for (const auto& [k, c] : basis_bracket(i, j))
                    out[(static_cast<std::uint64_t>(i) * n_ + j) * n_ + k] = c;
        return out;
    }

    int step_;
    std::vector<int> layer_dims_;
    std::vector<BracketEntry> raw_;
    std::string name_;
    int n_ = 0;
    std::vector<int> offsets_;   // h_0..h_s
    std::vector<int> layer_of_;  // d_j per 0-based index
    std::vector<std::vector<std::pair<int, Rational>>> table_;
};

using AlgebraPtr = std::shared_ptr<const StratifiedAlgebra>;

inline ValidationReport StratifiedAlgebra::validate() const {
    ValidationReport rep;

    ValidationCheck anti{"antisymmetry"};
    for (int i = 0; i < n_ && anti.passed; ++i)
        for (int j = 0; j < n_ && anti.passed; ++j) {
            std::map<int, Rational> sum;
            for (const auto& [k, c] : basis_bracket(i, j)) sum[k] += c;
            for (const auto& [k, c] : basis_bracket(j, i)) sum[k] += c;
            for (const auto& [k, c] : sum)
                if (c != 0) {
                    anti.passed = false;
                    anti.witness = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                                   std::to_string(k + 1) + ")";
                    break;
                }
        }
    rep.checks.push_back(anti);

    ValidationCheck grading{"grading"};
    for (int i = 0; i < n_ && grading.passed; ++i)
        for (int j = 0; j < n_ && grading.passed; ++j)
            for (const auto& [k, c] : basis_bracket(i, j))
                if (layer_of_[i] + layer_of_[j] != layer_of_[k]) {
                    grading.passed = false;
                    grading.witness = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                                      std::to_string(k + 1) + ")";
                    break;
                }
    rep.checks.push_back(grading);

    ValidationCheck jacobi{"jacobi"};
    auto bracket_vec = [this](const std::vector<Rational>& a, const std::vector<Rational>& b) {
        std::vector<Rational> out(n_, Rational(0));
        for (int i = 0; i < n_; ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; j < n_; ++j) {
                if (b[j] == 0) continue;
                for (const auto& [k, c] : basis_bracket(i, j)) out[k] += a[i] * b[j] * c;
            }
        }
        return out;
    };
    for (int i = 0; i < n_ && jacobi.passed; ++i)
        for (int j = i + 1; j < n_ && jacobi.passed; ++j)
            for (int k = j + 1; k < n_ && jacobi.passed; ++k) {
                std::vector<Rational> ei(n_, Rational(0)), ej(n_, Rational(0)), ek(n_, Rational(0));
                ei[i] = 1;
                ej[j] = 1;
                ek[k] = 1;
                auto s1 = bracket_vec(ei, bracket_vec(ej, ek));
                auto s2 = bracket_vec(ej, bracket_vec(ek, ei));
                auto s3 = bracket_vec(ek, bracket_vec(ei, ej));
                for (int t = 0; t < n_; ++t)
                    if (s1[t] + s2[t] + s3[t] != 0) {
                        jacobi.passed = false;
                        jacobi.witness = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                                         std::to_string(k + 1) + ")";
                        break;
                    }
            }
    rep.checks.push_back(jacobi);

    // Generation: span{[X_a, X_b] : d_a = 1, d_b = l-1} must be all of V_l.
    ValidationCheck gen{"generation"};
    for (int l = 2; l <= step_ && gen.passed; ++l) {
        RatMatrix rows;
        for (int a = 0; a < layer_dims_[0]; ++a)
            for (int b = offsets_[l - 2]; b < offsets_[l - 1]; ++b) {
                std::vector<Rational> row(layer_dims_[l - 1], Rational(0));
                for (const auto& [k, c] : basis_bracket(a, b))
                    if (layer_of_[k] == l) row[k - offsets_[l - 1]] = c;
                rows.push_back(std::move(row));
            }
        if (rank(rows) != layer_dims_[l - 1]) {
            gen.passed = false;
            gen.witness = "layer " + std::to_string(l) + " not generated by [V1,V" + std::to_string(l - 1) + "]";
        }
    }
    rep.checks.push_back(gen);
    return rep;
}

inline StratifiedAlgebra StratifiedAlgebra::quotient_drop_top() const {
    if (step_ < 2) usage_error("cannot drop the top layer of a step-1 algebra");
    std::vector<int> dims(layer_dims_.begin(), layer_dims_.end() - 1);
    int q = offsets_[step_ - 1];
    std::vector<BracketEntry> kept;
    for (const auto& e : raw_)
        if (e.i < q && e.j < q && e.k < q) kept.push_back(e);
    return StratifiedAlgebra(step_ - 1, std::move(dims), std::move(kept), name_ + "/quotient");
}

// ---- presets ---------------------------------------------------------------

inline AlgebraPtr preset_abelian(int n) {
    if (n < 1) usage_error("abelian(n) requires n >= 1");
    return std::make_shared<StratifiedAlgebra>(1, std::vector<int>{n}, std::vector<BracketEntry>{},
                                               "abelian(" + std::to_string(n) + ")");
}

// heisenberg(n): 2n horizontal generators, one center; [X_i, X_{n+i}] = X_{2n+1}.
inline AlgebraPtr preset_heisenberg(int n) {
    if (n < 1) usage_error("heisenberg(n) requires n >= 1");
    std::vector<BracketEntry> e;
    for (int i = 0; i < n; ++i) e.push_back({i, n + i, 2 * n, Rational(1)});
    return std::make_shared<StratifiedAlgebra>(2, std::vector<int>{2 * n, 1}, std::move(e),
                                               "heisenberg(" + std::to_string(n) + ")");
}

// free_step2(m): [X_i, X_j] = X_{pair(i,j)} for i < j, pairs ordered lexicographically.
inline AlgebraPtr preset_free_step2(int m) {
    if (m < 2) usage_error("free_step2(m) requires m >= 2");
    std::vector<BracketEntry> e;
    int k = m;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) e.push_back({i, j, k++, Rational(1)});
    return std::make_shared<StratifiedAlgebra>(2, std::vector<int>{m, m * (m - 1) / 2}, std::move(e),
                                               "free_step2(" + std::to_string(m) + ")");
}

// engel: step 3, dims (2,1,1); [X1,X2] = X3, [X1,X3] = X4.
inline AlgebraPtr preset_engel() {
    std::vector<BracketEntry> e{{0, 1, 2, Rational(1)}, {0, 2, 3, Rational(1)}};
    return std::make_shared<StratifiedAlgebra>(3, std::vector<int>{2, 1, 1}, std::move(e), "engel");
}

inline AlgebraPtr preset(const std::string& name, int param = 0) {
    if (name == "abelian") return preset_abelian(param > 0 ? param : 3);
    if (name == "heisenberg") return preset_heisenberg(param > 0 ? param : 1);
    if (name == "free_step2") return preset_free_step2(param > 0 ? param : 3);
    if (name == "engel") return preset_engel();
    usage_error("unknown preset: '" + name + "'");
}

}  // namespace carnot

#endif
