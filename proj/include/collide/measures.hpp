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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "collide/qstate.hpp"

namespace collide {

struct ConcurrenceResult {
    double value = 0.0;
    /// Eigenvalues of rho (s2 s2) rho* (s2 s2), descending and clamped at 0.
    std::array<double, 4> spin_flip_eigenvalues{};
};

/// Wootters concurrence of a two-qubit state.
ConcurrenceResult concurrence(const DensityMatrix& rho);

struct NegativityResult {
    double value = 0.0;
    std::vector<double> negative_pt_eigenvalues;
    bool multiple_negative() const { return negative_pt_eigenvalues.size() > 1; }
};

/// max(0, -2 * sum of negative eigenvalues of the partial transpose on `cut`).
NegativityResult negativity(const DensityMatrix& rho, std::span<const std::size_t> cut);

struct TripartiteNegativityResult {
    double value = 0.0;
    /// per_cut[k]: qubit k against the other two.
    std::array<NegativityResult, 3> per_cut;
};

/// Geometric mean of the three one-versus-two negativities of a three-qubit state.
TripartiteNegativityResult tripartite_negativity(const DensityMatrix& rho);

/// ZYZ Euler angles u = Rz(a) Ry(b) Rz(c) of one local rotation.
struct LocalRotation {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    Matrix matrix() const;
};

struct WitnessOptions {
    std::size_t restarts = 20;
    double tolerance = 1e-8;
    std::size_t max_evaluations = 2000;
    std::uint64_t seed = 0x5eed'91e5ULL;
};

struct WitnessResult {
    /// <3/4 - |GHZ><GHZ|> at the best local frame; negative certifies GHZ class.
    double expectation = 0.0;
    double best_overlap = 0.0;
    std::array<LocalRotation, 3> optimizer_angles{};
};

/// Maximizes the GHZ overlap over u1 (x) u2 (x) u3 with multi-start simplex search.
WitnessResult ghz_witness(const DensityMatrix& rho, const WitnessOptions& options = {});

/// <GHZ| U rho U^dagger |GHZ> for U = u1 (x) u2 (x) u3.
double ghz_overlap(const Matrix& rho, const std::array<LocalRotation, 3>& rotations);

/// Trace-norm distance between a two-qubit state and the product of its marginals.
double factorization_distance(const DensityMatrix& rho);

struct BlochDecomposition {
    std::array<double, 3> beta_1{};  ///< Bloch vector of the first qubit
    std::array<double, 3> beta_2{};  ///< Bloch vector of the second qubit
    std::array<std::array<double, 3>, 3> chi{};
    Matrix reconstruct() const;
};

BlochDecomposition bloch_decomposition(const DensityMatrix& rho);

struct GraphClass {
    enum class Kind { triangle, no_bonds, two_way, single_bond, unclassified };
    using Pair = std::pair<std::size_t, std::size_t>;

    Kind kind = Kind::unclassified;
    std::vector<Pair> bonds;
    bool tripartite = false;
    std::vector<Pair> classically_correlated_pairs;
    /// Pair negativities for (0,1), (0,2), (1,2), the tripartite negativity
    /// and the factorization distances used for the decision.
    std::array<double, 3> pair_negativity{};
    std::array<double, 3> pair_factorization{};
    double tripartite_value = 0.0;
};

constexpr double kDefaultBondThreshold = 1e-6;
constexpr double kDefaultTripartiteThreshold = 1e-6;
constexpr double kClassicalCorrelationThreshold = 1e-8;

/// Entangled-graph class of a three-qubit state: a = triangle (W-like),
/// b = no bonds, c = two bonds with the third pair only classically correlated,
/// d = single bond without tripartite entanglement.
GraphClass classify_graph(const DensityMatrix& rho, double eps_bond = kDefaultBondThreshold,
                          double eps_tri = kDefaultTripartiteThreshold);

std::string to_string(GraphClass::Kind kind);

}  // namespace collide
