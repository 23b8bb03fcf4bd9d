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
#include <span>
#include <vector>

#include "collide/qstate.hpp"
#include "collide/rng.hpp"

namespace collide {

/// One two-level rotation R^(i,j) of the Hurwitz construction (1-based i < j).
struct EulerRotation {
    std::size_t i = 1;
    std::size_t j = 2;
    double phi = 0.0;  ///< [0, pi/2]
    double psi = 0.0;  ///< [0, 2 pi)
    double chi = 0.0;  ///< [0, 2 pi); nonzero only when i == 1
};

/// Angles for one N x N unitary  U = e^{i alpha} E_1 E_2 ... E_{N-1},
/// E_k = R^(k,k+1) R^(k-1,k+1) ... R^(1,k+1).
/// `rotations` lists the factors in that left-to-right order.
struct EulerAngleSet {
    std::size_t dim = 2;
    std::vector<EulerRotation> rotations;
    double alpha = 0.0;

    /// Throws InvalidArgument unless the schedule, angle ranges and chi
    /// placement are exactly those of a dim x dim Hurwitz decomposition.
    void validate() const;
    /// FNV-1a over the raw angle bits; used to tag sample records.
    std::uint64_t digest() const;
};

/// How phi is drawn. Only `haar` yields the Haar measure; the others exist so
/// the validation tooling can demonstrate that it rejects wrong samplers.
enum class PhiRule {
    haar,           ///< CDF 1 - cos^(2i) phi, i the rotation's first index
    arcsin_power,   ///< phi = arcsin(xi^(1/(2i))); agrees with haar only for N = 2
    uniform_angle,  ///< phi uniform on [0, pi/2]
};

/// Inverse CDF mapping a uniform xi in [0, 1] to phi for a rotation with the
/// given first index. For `haar`: phi = arccos((1 - xi)^(1/(2i))).
double phi_from_uniform(double xi, std::size_t first_index, PhiRule rule = PhiRule::haar);

EulerAngleSet sample_euler_angles(std::size_t dim, RandomSource& rng, PhiRule rule = PhiRule::haar);
EulerAngleSet sample_euler_angles(std::size_t dim, RngStream stream, PhiRule rule = PhiRule::haar);

/// The 2x2 block [[e^{i psi} cos phi, e^{i chi} sin phi], [-e^{-i chi} sin phi, e^{-i psi} cos phi]].
Matrix rotation_block(double phi, double psi, double chi);

UnitaryMatrix compose_unitary(const EulerAngleSet& angles);

/// In-place v <- U v for the unitary described by `angles`, at O(N^2) cost
/// instead of materializing U.
void apply_hurwitz(const EulerAngleSet& angles, std::span<Complex> v);

UnitaryMatrix sample_haar_unitary(std::size_t dim, RandomSource& rng, PhiRule rule = PhiRule::haar);
UnitaryMatrix sample_haar_unitary(std::size_t dim, RngStream stream, PhiRule rule = PhiRule::haar);

/// Independent reference sampler: QR of a complex Ginibre matrix with the
/// column phases fixed by R_ii / |R_ii|.
UnitaryMatrix ginibre_qr_haar(std::size_t dim, RandomSource& rng);
UnitaryMatrix ginibre_qr_haar(std::size_t dim, RngStream stream);

}  // namespace collide
