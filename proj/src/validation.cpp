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

#include "collide/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "collide/dynamics.hpp"
#include "collide/error.hpp"
#include "collide/measures.hpp"
#include "collide/oracles.hpp"

namespace collide {

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw InvalidArgument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

HaarCheckRow haar_check(std::size_t dim, std::size_t draws, std::uint64_t seed, PhiRule rule) {
    if (dim < 2) throw InvalidArgument("haar_check: N must be >= 2");
    if (draws < kHaarMinDraws) throw InvalidArgument("haar_check: draws must be >= 1000");
    HaarCheckRow row;
    row.dim = dim;
    row.draws = draws;
    // Separate streams: sampler on 0, Ginibre oracle on 1.
    RandomSource hr(RngStream{seed, 0});
    RandomSource gr(RngStream{seed, 1});
    std::vector<double> h1, hn, g1, gn;
    double sum = 0.0, sq = 0.0;
    for (std::size_t k = 0; k < draws; ++k) {
        const auto u = sample_haar_unitary(dim, hr, rule);
        row.max_unitarity_error = std::max(row.max_unitarity_error, UnitaryMatrix::unitarity_defect(u.matrix()));
        const double x = std::norm(u.matrix()(0, 0));
        h1.push_back(x);
        hn.push_back(std::norm(u.matrix()(dim - 1, dim - 1)));
        sum += x;
        sq += x * x;
        const auto g = ginibre_qr_haar(dim, gr);
        g1.push_back(std::norm(g.matrix()(0, 0)));
        gn.push_back(std::norm(g.matrix()(dim - 1, dim - 1)));
    }
    const double n = static_cast<double>(draws);
    row.moment = sum / n;
    row.moment_se = std::sqrt(std::max(0.0, sq / n - row.moment * row.moment) / (n - 1.0));
    row.ks_first = ks_two_sample(h1, g1);
    row.ks_last = ks_two_sample(hn, gn);
    row.unitarity_ok = row.max_unitarity_error < kHaarUnitarityTolerance;
    row.moment_ok = std::abs(row.moment - 1.0 / static_cast<double>(dim)) < kHaarMomentSigmas * row.moment_se;
    row.ks_ok = row.ks_first < kHaarKsThreshold && row.ks_last < kHaarKsThreshold;
    return row;
}

namespace {

double wrap_angle(double x) {
    x = std::fmod(x, 2.0 * std::numbers::pi);
    return x < 0.0 ? x + 2.0 * std::numbers::pi : x;
}

EnvironmentLayout layout(std::size_t l, std::size_t r, bool purifier) {
    EnvironmentLayout lay;
    lay.dim_left = l;
    lay.dim_right = r;
    lay.purifier = purifier;
    return lay;
}

}  // namespace

std::vector<OracleDeviation> oracle_equivalence(std::size_t draws, std::uint64_t seed, bool corrupt_dynamics) {
    if (draws < 1) throw InvalidArgument("oracle_equivalence: draws must be >= 1");
    std::vector<OracleDeviation> out{{"evolved_density_matrix_single", 0.0},
                                     {"conc_single", 0.0},
                                     {"conc_mixed_ancilla", 0.0},
                                     {"conc_eRA_two_env", 0.0},
                                     {"biased_three_qubit_state", 0.0}};
    auto bump = [&](std::size_t k, double d) { out[k].max_deviation = std::max(out[k].max_deviation, d); };
    const std::array<std::size_t, 2> first_pair{0, 1};
    const std::array<std::size_t, 2> a_right{1, 2};
    for (std::size_t k = 0; k < draws; ++k) {
        RandomSource rng(RngStream{seed, k});
        const double tau = 0.05 + 2.0 * rng.uniform();
        const CouplingSpec iso{tau, 1.0, std::nullopt};

        // One environment qubit, one isotropic collision.
        {
            const auto lay = layout(1, 0, false);
            const auto p = prepare_environments(lay, AncillaPrep::ground(), rng);
            const auto s = run_protocol(p.state, standard_schedule(1, CollisionOrder::left_first, iso, lay));
            const auto& r = p.left_angles->rotations[0];
            const auto rho = DensityMatrix::pure(s.amplitudes());
            bump(0, rho.matrix().max_abs_diff(
                        oracles::evolved_density_matrix_single(r.phi, r.psi, r.chi, wrap_angle(tau)).matrix()));
            bump(1, std::abs(concurrence(rho).value - oracles::conc_single(r.phi, tau)));
        }
        // Mixed ancilla, purified on P.
        {
            const double rho0 = rng.uniform();
            const auto lay = layout(1, 0, true);
            const auto p = prepare_environments(lay, AncillaPrep::mixed(rho0), rng);
            const auto s = run_protocol(p.state, standard_schedule(1, CollisionOrder::left_first, iso, lay));
            bump(2, std::abs(concurrence(partial_trace(s, first_pair)).value -
                             oracles::conc_mixed_ancilla(p.left_angles->rotations[0].phi, rho0, tau)));
        }
        // Two single-qubit environments, E_R struck first.
        {
            const auto lay = layout(1, 1, false);
            const auto p = prepare_environments(lay, AncillaPrep::ground(), rng);
            const auto s = run_protocol(p.state, standard_schedule(1, CollisionOrder::right_first, iso, lay));
            bump(3, std::abs(concurrence(partial_trace(s, a_right)).value -
                             oracles::conc_eRA_two_env(p.right_angles->rotations[0].phi, tau)));
        }
        // Biased coupling from |000>, e_L struck first.
        {
            const double lambda = -5.0 + 10.0 * rng.uniform();
            const double t = 2.0 * (1.0 - rng.uniform());  // (0, 2]
            const auto lay = layout(1, 1, false);
            const CouplingSpec biased{t, lambda + (corrupt_dynamics ? 1e-3 : 0.0), std::nullopt};
            const auto s = run_protocol(PureState::zero(lay.make_register()),
                                        standard_schedule(1, CollisionOrder::left_first, biased, lay));
            const auto ref = oracles::biased_three_qubit_state(lambda, t);
            double d = 0.0;
            for (std::size_t i = 0; i < 8; ++i) d = std::max(d, std::abs(s.amplitude(i) - ref.amplitude(i)));
            bump(4, d);
        }
    }
    return out;
}

}  // namespace collide
