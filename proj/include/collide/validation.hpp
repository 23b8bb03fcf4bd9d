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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "collide/haar.hpp"

namespace collide {

/// Thresholds of the Haar sampler audit.
constexpr double kHaarUnitarityTolerance = 1e-10;
constexpr double kHaarKsThreshold = 0.03;
constexpr double kHaarMomentSigmas = 3.0;
constexpr std::size_t kHaarMinDraws = 1000;

struct HaarCheckRow {
    std::size_t dim = 0;
    std::size_t draws = 0;
    double max_unitarity_error = 0.0;
    double moment = 0.0;     ///< empirical E|U_11|^2
    double moment_se = 0.0;
    double ks_first = 0.0;   ///< two-sample D of |U_11|^2 against Ginibre QR
    double ks_last = 0.0;    ///< same for |U_NN|^2
    bool unitarity_ok = false;
    bool moment_ok = false;
    bool ks_ok = false;
    bool passed() const { return unitarity_ok && moment_ok && ks_ok; }
};

HaarCheckRow haar_check(std::size_t dim, std::size_t draws, std::uint64_t seed, PhiRule rule = PhiRule::haar);

double ks_two_sample(std::vector<double> a, std::vector<double> b);

struct OracleDeviation {
    std::string oracle;
    double max_deviation = 0.0;
};

constexpr double kOracleTolerance = 1e-10;

/// Pipeline (haar + dynamics + qstate + measures) against every closed-form
/// oracle over `draws` random parameter sets. `corrupt_dynamics` perturbs
/// lambda by 1e-3 in the three-qubit check only (negative control).
std::vector<OracleDeviation> oracle_equivalence(std::size_t draws, std::uint64_t seed, bool corrupt_dynamics = false);

}  // namespace collide
