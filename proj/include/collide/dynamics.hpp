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
#include <optional>
#include <string>
#include <vector>

#include "collide/haar.hpp"
#include "collide/qstate.hpp"
#include "collide/rng.hpp"

namespace collide {

/// Ancilla-environment coupling H = J [s1 s1 + lambda (s2 s2 + s3 s3)], or the
/// general sum J_k s_k s_k when `j_vector` is set. `tau` is the rescaled time Jt.
struct CouplingSpec {
    double tau = 1.0;
    double lambda = 1.0;
    std::optional<std::array<double, 3>> j_vector;

    /// (J1, J2, J3) / J actually used.
    std::array<double, 3> couplings() const;
    void validate() const;
};

/// Eigenvalues (units of J) on the Bell states ordered (Phi+, Phi-, Psi+, Psi-).
std::array<double, 4> heisenberg_bell_spectrum(const CouplingSpec& coupling);
Matrix heisenberg_hamiltonian(const CouplingSpec& coupling);
/// Exact exp(-i H tau) from the Bell-basis spectral decomposition.
UnitaryMatrix heisenberg_unitary(const CouplingSpec& coupling);

struct AncillaPrep {
    enum class Kind { ground, superposition, mixed };
    Kind kind = Kind::ground;
    double theta = 0.0;      ///< superposition: cos(theta/2)|0> + e^{i phase} sin(theta/2)|1>
    double phase = 0.0;
    double rho0 = 1.0;       ///< mixed: diag(rho0, 1 - rho0)

    static AncillaPrep ground() { return {}; }
    static AncillaPrep superposition(double theta, double phase);
    static AncillaPrep mixed(double rho0);
    bool needs_purifier() const { return kind == Kind::mixed; }
    void validate() const;
};

/// Qubit layout eL1..eLm, A, [P], eR1..eRn. The designated collision qubit of
/// each environment is 1-based within that environment; 0 means "last".
struct EnvironmentLayout {
    std::size_t dim_left = 0;
    std::size_t dim_right = 0;
    bool purifier = false;
    std::size_t left_target = 0;
    std::size_t right_target = 0;

    QubitRegister make_register() const;
    std::size_t num_qubits() const { return dim_left + dim_right + 1 + (purifier ? 1 : 0); }
    std::size_t ancilla_index() const { return dim_left; }
    std::size_t left_index() const;   ///< register index of the struck e_L qubit
    std::size_t right_index() const;  ///< register index of the struck e_R qubit
    std::string left_label() const;
    std::string right_label() const;
    std::vector<std::size_t> left_indices() const;
    std::vector<std::size_t> right_indices() const;
    void validate() const;
};

enum class EnvironmentPrep {
    haar,    ///< independent Haar samples on each environment
    ground,  ///< deterministic |0...0>, no draws
};

struct PreparedState {
    PureState state;
    std::optional<EulerAngleSet> left_angles;
    std::optional<EulerAngleSet> right_angles;
};

/// (U_L (x) a (x) U_R)|0...0>, drawing U_L before U_R from `rng`. A mixed
/// ancilla is purified as sqrt(rho0)|0_A 0_P> + sqrt(1-rho0)|1_A 1_P>.
PreparedState prepare_environments(const EnvironmentLayout& layout, const AncillaPrep& ancilla,
                                   RandomSource& rng, EnvironmentPrep prep = EnvironmentPrep::haar);

/// Label-checked variant: `reg` must contain "A", and "P" exactly when the
/// ancilla is mixed.
PureState prepare_environments(const QubitRegister& reg, const AncillaPrep& ancilla, RandomSource& rng);

struct CollisionEvent {
    std::string ancilla;
    std::string target;
    CouplingSpec coupling;
};

struct CollisionSchedule {
    std::vector<CollisionEvent> events;
};

enum class CollisionOrder { right_first, left_first };

/// `rounds` repetitions of (A, e_first), (A, e_second), always on the
/// designated qubits. A missing environment contributes no events.
CollisionSchedule standard_schedule(std::size_t rounds, CollisionOrder order, const CouplingSpec& coupling,
                                    const EnvironmentLayout& layout);

/// Applies the events in order.
PureState run_protocol(const PureState& initial, const CollisionSchedule& schedule);

}  // namespace collide
