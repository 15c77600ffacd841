#ifndef CARNOT_OPTIMIZE_HPP
#define CARNOT_OPTIMIZE_HPP

#include <algorithm>
#include <functional>
#include <vector>

#include "carnot/rng.hpp"

namespace carnot {

using Objective = std::function<double(const std::vector<double>&)>;

struct NelderMeadOptions {
    int max_evals = 2000;
    double initial_step = 0.25;
    double f_tol = 1e-12;
};

struct OptResult {
    std::vector<double> x;
    double f = 0;
    int evals = 0;
};

// Plain Nelder-Mead simplex minimization. Deterministic given the start point.
inline OptResult nelder_mead(const Objective& f, std::vector<double> start, NelderMeadOptions opt = {}) {
    const int n = static_cast<int>(start.size());
    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return f(x);
    };

    std::vector<std::vector<double>> pts(n + 1, start);
    std::vector<double> fv(n + 1);
    for (int i = 0; i < n; ++i) pts[i + 1][i] += (start[i] != 0.0 ? 0.1 * std::abs(start[i]) : 0.0) + opt.initial_step;
    for (int i = 0; i <= n; ++i) fv[i] = eval(pts[i]);

    while (evals < opt.max_evals) {
        std::vector<int> order(n + 1);
        for (int i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        {
            std::vector<std::vector<double>> p2(n + 1);
            std::vector<double> f2(n + 1);
            for (int i = 0; i <= n; ++i) {
                p2[i] = pts[order[i]];
                f2[i] = fv[order[i]];
            }
            pts = std::move(p2);
            fv = std::move(f2);
        }
        if (fv[n] - fv[0] < opt.f_tol) break;

        std::vector<double> centroid(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int d = 0; d < n; ++d) centroid[d] += pts[i][d] / n;

        auto blend = [&](double alpha) {
            std::vector<double> x(n);
            for (int d = 0; d < n; ++d) x[d] = centroid[d] + alpha * (pts[n][d] - centroid[d]);
            return x;
        };

        auto xr = blend(-1.0);
        double fr = eval(xr);
        if (fr < fv[0]) {
            auto xe = blend(-2.0);
            double fe = eval(xe);
            if (fe < fr) {
                pts[n] = xe;
                fv[n] = fe;
            } else {
                pts[n] = xr;
                fv[n] = fr;
            }
        } else if (fr < fv[n - 1]) {
            pts[n] = xr;
            fv[n] = fr;
        } else {
            auto xc = blend(fr < fv[n] ? -0.5 : 0.5);
            double fc = eval(xc);
            if (fc < std::min(fr, fv[n])) {
                pts[n] = xc;
                fv[n] = fc;
            } else {
                for (int i = 1; i <= n; ++i) {
                    for (int d = 0; d < n; ++d) pts[i][d] = pts[0][d] + 0.5 * (pts[i][d] - pts[0][d]);
                    fv[i] = eval(pts[i]);
                }
            }
        }
    }

    int best = 0;
    for (int i = 1; i <= n; ++i)
        if (fv[i] < fv[best]) best = i;
    return {pts[best], fv[best], evals};
}

// One pass of central-difference descent with backtracking; used to polish a
// Nelder-Mead result.
inline OptResult fd_polish(const Objective& f, std::vector<double> x, int iterations = 20, double h = 1e-5) {
    const int n = static_cast<int>(x.size());
    int evals = 0;
    auto eval = [&](const std::vector<double>& p) {
        ++evals;
        return f(p);
    };
    double fx = eval(x);
    for (int it = 0; it < iterations; ++it) {
        std::vector<double> g(n);
        double gnorm = 0;
        for (int d = 0; d < n; ++d) {
            auto xp = x, xm = x;
            xp[d] += h;
            xm[d] -= h;
            g[d] = (eval(xp) - eval(xm)) / (2 * h);
            gnorm += g[d] * g[d];
        }
        gnorm = std::sqrt(gnorm);
        if (gnorm < 1e-14) break;
        double step = 1.0;
        bool improved = false;
        for (int bt = 0; bt < 12; ++bt) {
            std::vector<double> trial(n);
            for (int d = 0; d < n; ++d) trial[d] = x[d] - step * g[d] / gnorm;
            double ft = eval(trial);
            if (ft < fx) {
                x = std::move(trial);
                fx = ft;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) break;
    }
    return {x, fx, evals};
}

}  // namespace carnot

#endif
