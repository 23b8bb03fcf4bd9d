// Copyright 2026 The Collide Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "collide/optimize.hpp"

#include <algorithm>
#include <numeric>

#include "collide/error.hpp"

namespace collide {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                             const NelderMeadOptions& options) {
    const std::size_t n = x0.size();
    if (n == 0) {
        throw InvalidArgument("nelder_mead: empty parameter vector");
    }
    const double dn = static_cast<double>(n);
    const double alpha = 1.0;
    const double beta = 1.0 + 2.0 / dn;
    const double gamma = 0.75 - 0.5 / dn;
    const double delta = 1.0 - 1.0 / dn;

    std::size_t evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return f(x);
    };

    std::vector<std::vector<double>> pts(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) {
        pts[i + 1][i] += options.initial_step;
    }
    std::vector<double> vals(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        vals[i] = eval(pts[i]);
    }
    std::vector<std::size_t> idx(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);
    bool converged = false;

    while (evals < options.max_evaluations) {
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = idx.front();
        const std::size_t worst = idx.back();
        const std::size_t second = idx[n - 1];
        if (vals[worst] - vals[best] < options.tolerance) {
            converged = true;
            break;
        }
        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            const auto& p = pts[idx[k]];
            for (std::size_t i = 0; i < n; ++i) {
                centroid[i] += p[i] / dn;
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            trial[i] = centroid[i] + alpha * (centroid[i] - pts[worst][i]);
        }
        const double fr = eval(trial);
        if (fr < vals[best]) {
            for (std::size_t i = 0; i < n; ++i) {
                trial2[i] = centroid[i] + beta * (trial[i] - centroid[i]);
            }
            const double fe = eval(trial2);
            if (fe < fr) {
                pts[worst] = trial2;
                vals[worst] = fe;
            } else {
                pts[worst] = trial;
                vals[worst] = fr;
            }
            continue;
        }
        if (fr < vals[second]) {
            pts[worst] = trial;
            vals[worst] = fr;
            continue;
        }
        const bool outside = fr < vals[worst];
        for (std::size_t i = 0; i < n; ++i) {
            trial2[i] = outside ? centroid[i] + gamma * (trial[i] - centroid[i])
                                : centroid[i] - gamma * (centroid[i] - pts[worst][i]);
        }
        const double fc = eval(trial2);
        if (fc < (outside ? fr : vals[worst])) {
            pts[worst] = trial2;
            vals[worst] = fc;
            continue;
        }
        for (std::size_t k = 1; k <= n; ++k) {
            auto& p = pts[idx[k]];
            for (std::size_t i = 0; i < n; ++i) {
                p[i] = pts[best][i] + delta * (p[i] - pts[best][i]);
            }
            vals[idx[k]] = eval(p);
        }
    }
    const auto best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    return NelderMeadResult{pts[best], vals[best], evals, converged};
}

}  // namespace collide
