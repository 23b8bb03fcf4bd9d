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

#include "collide/dynamics.hpp"

#include <cmath>
#include <numbers>

#include "collide/error.hpp"

namespace collide {

namespace {

// Columns: Phi+, Phi-, Psi+, Psi- in the computational basis |00>,|01>,|10>,|11>.
const Matrix& bell_basis() {
    constexpr double r = (1.0 / std::numbers::sqrt2);
    static const Matrix b{
        {r, r, 0.0, 0.0},
        {0.0, 0.0, r, r},
        {0.0, 0.0, r, -r},
        {r, -r, 0.0, 0.0},
    };
    return b;
}

std::vector<Complex> kron(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    std::vector<Complex> out(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i * b.size() + j] = a[i] * b[j];
        }
    }
    return out;
}

std::vector<Complex> environment_vector(std::size_t qubits, RandomSource& rng, EnvironmentPrep prep,
                                        std::optional<EulerAngleSet>& angles_out) {
    std::vector<Complex> v(std::size_t{1} << qubits);
    v[0] = 1.0;
    if (qubits == 0 || prep == EnvironmentPrep::ground) {
        return v;
    }
    auto angles = sample_euler_angles(v.size(), rng);
    apply_hurwitz(angles, v);
    angles_out = std::move(angles);
    return v;
}

bool same_coupling(const CouplingSpec& a, const CouplingSpec& b) {
    return a.tau == b.tau && a.lambda == b.lambda && a.j_vector == b.j_vector;
}

}  // namespace

std::array<double, 3> CouplingSpec::couplings() const {
    if (j_vector) {
        return *j_vector;
    }
    return {1.0, lambda, lambda};
}

void CouplingSpec::validate() const {
    if (!std::isfinite(tau) || !std::isfinite(lambda)) {
        throw InvalidArgument("CouplingSpec: tau and lambda must be finite");
    }
    if (j_vector) {
        for (double j : *j_vector) {
            if (!std::isfinite(j)) {
                throw InvalidArgument("CouplingSpec: j_vector entries must be finite");
            }
        }
    }
}

std::array<double, 4> heisenberg_bell_spectrum(const CouplingSpec& coupling) {
    const auto [j1, j2, j3] = coupling.couplings();
    return {j1 - j2 + j3, -j1 + j2 + j3, j1 + j2 - j3, -j1 - j2 - j3};
}

Matrix heisenberg_hamiltonian(const CouplingSpec& coupling) {
    coupling.validate();
    const auto j = coupling.couplings();
    Matrix h(4, 4);
    for (int k = 0; k < 3; ++k) {
        h += Complex(j[k]) * tensor_product(pauli(k + 1), pauli(k + 1));
    }
    return h;
}

UnitaryMatrix heisenberg_unitary(const CouplingSpec& coupling) {
    coupling.validate();
    const auto e = heisenberg_bell_spectrum(coupling);
    const Matrix& b = bell_basis();
    Matrix u(4, 4);
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            Complex acc = 0.0;
            for (std::size_t k = 0; k < 4; ++k) {
                acc += b(r, k) * std::polar(1.0, -e[k] * coupling.tau) * std::conj(b(c, k));
            }
            u(r, c) = acc;
        }
    }
    return UnitaryMatrix(std::move(u));
}

// ---------------------------------------------------------------------------

AncillaPrep AncillaPrep::superposition(double theta, double phase) {
    AncillaPrep p;
    p.kind = Kind::superposition;
    p.theta = theta;
    p.phase = phase;
    return p;
}

AncillaPrep AncillaPrep::mixed(double rho0) {
    AncillaPrep p;
    p.kind = Kind::mixed;
    p.rho0 = rho0;
    return p;
}

void AncillaPrep::validate() const {
    if (kind == Kind::mixed && !(rho0 >= 0.0 && rho0 <= 1.0)) {
        throw InvalidArgument("AncillaPrep: rho0 must lie in [0, 1]");
    }
    if (kind == Kind::superposition && (!std::isfinite(theta) || !std::isfinite(phase))) {
        throw InvalidArgument("AncillaPrep: superposition angles must be finite");
    }
}

// ---------------------------------------------------------------------------

void EnvironmentLayout::validate() const {
    if (left_target > dim_left || right_target > dim_right) {
        throw InvalidArgument("EnvironmentLayout: designated qubit outside its environment");
    }
    if (num_qubits() > 60) {
        throw InvalidArgument("EnvironmentLayout: register too large");
    }
}

QubitRegister EnvironmentLayout::make_register() const {
    validate();
    std::vector<std::string> labels;
    for (std::size_t k = 1; k <= dim_left; ++k) {
        labels.push_back("eL" + std::to_string(k));
    }
    labels.emplace_back("A");
    if (purifier) {
        labels.emplace_back("P");
    }
    for (std::size_t k = 1; k <= dim_right; ++k) {
        labels.push_back("eR" + std::to_string(k));
    }
    return QubitRegister(std::move(labels));
}

std::size_t EnvironmentLayout::left_index() const {
    if (dim_left == 0) {
        throw InvalidArgument("EnvironmentLayout: no left environment");
    }
    return (left_target == 0 ? dim_left : left_target) - 1;
}

std::size_t EnvironmentLayout::right_index() const {
    if (dim_right == 0) {
        throw InvalidArgument("EnvironmentLayout: no right environment");
    }
    return dim_left + 1 + (purifier ? 1 : 0) + (right_target == 0 ? dim_right : right_target) - 1;
}

std::string EnvironmentLayout::left_label() const {
    return "eL" + std::to_string(left_index() + 1);
}

std::string EnvironmentLayout::right_label() const {
    return "eR" + std::to_string(right_index() - dim_left - (purifier ? 1 : 0));
}

std::vector<std::size_t> EnvironmentLayout::left_indices() const {
    std::vector<std::size_t> v;
    for (std::size_t k = 0; k < dim_left; ++k) {
        v.push_back(k);
    }
    return v;
}

std::vector<std::size_t> EnvironmentLayout::right_indices() const {
    std::vector<std::size_t> v;
    const std::size_t first = dim_left + 1 + (purifier ? 1 : 0);
    for (std::size_t k = 0; k < dim_right; ++k) {
        v.push_back(first + k);
    }
    return v;
}

// ---------------------------------------------------------------------------

PreparedState prepare_environments(const EnvironmentLayout& layout, const AncillaPrep& ancilla,
                                   RandomSource& rng, EnvironmentPrep prep) {
    layout.validate();
    ancilla.validate();
    if (ancilla.needs_purifier() != layout.purifier) {
        throw InvalidArgument(ancilla.needs_purifier()
                                  ? "prepare_environments: mixed ancilla requires a purifier qubit"
                                  : "prepare_environments: purifier qubit present without mixed ancilla");
    }
    std::optional<EulerAngleSet> left_angles;
    std::optional<EulerAngleSet> right_angles;
    const auto left = environment_vector(layout.dim_left, rng, prep, left_angles);
    const auto right = environment_vector(layout.dim_right, rng, prep, right_angles);

    std::vector<Complex> anc;
    switch (ancilla.kind) {
        case AncillaPrep::Kind::ground:
            anc = {1.0, 0.0};
            break;
        case AncillaPrep::Kind::superposition:
            anc = {std::cos(0.5 * ancilla.theta), std::polar(std::sin(0.5 * ancilla.theta), ancilla.phase)};
            break;
        case AncillaPrep::Kind::mixed:
            anc = {std::sqrt(ancilla.rho0), 0.0, 0.0, std::sqrt(1.0 - ancilla.rho0)};
            break;
    }
    auto amps = kron(kron(left, anc), right);
    return PreparedState{PureState(layout.make_register(), std::move(amps)), std::move(left_angles),
                         std::move(right_angles)};
}

PureState prepare_environments(const QubitRegister& reg, const AncillaPrep& ancilla, RandomSource& rng) {
    const auto a = reg.find("A");
    if (!a) {
        throw InvalidArgument("prepare_environments: register has no ancilla 'A'");
    }
    const bool has_p = reg.contains("P");
    if (ancilla.needs_purifier() && !has_p) {
        throw InvalidArgument("prepare_environments: mixed ancilla requires a purifier qubit 'P'");
    }
    EnvironmentLayout layout;
    layout.dim_left = *a;
    layout.purifier = has_p;
    layout.dim_right = reg.size() - *a - 1 - (has_p ? 1 : 0);
    if (layout.make_register() != reg) {
        throw InvalidArgument("prepare_environments: register labels do not follow eL.., A, [P], eR..");
    }
    return prepare_environments(layout, ancilla, rng).state;
}

// ---------------------------------------------------------------------------

CollisionSchedule standard_schedule(std::size_t rounds, CollisionOrder order, const CouplingSpec& coupling,
                                    const EnvironmentLayout& layout) {
    if (rounds < 1) {
        throw InvalidArgument("standard_schedule: rounds must be >= 1");
    }
    coupling.validate();
    std::vector<std::string> per_round;
    const bool has_left = layout.dim_left > 0;
    const bool has_right = layout.dim_right > 0;
    if (order == CollisionOrder::right_first) {
        if (has_right) per_round.push_back(layout.right_label());
        if (has_left) per_round.push_back(layout.left_label());
    } else {
        if (has_left) per_round.push_back(layout.left_label());
        if (has_right) per_round.push_back(layout.right_label());
    }
    if (per_round.empty()) {
        throw InvalidArgument("standard_schedule: layout has no environment to collide with");
    }
    CollisionSchedule s;
    for (std::size_t r = 0; r < rounds; ++r) {
        for (const auto& target : per_round) {
            s.events.push_back({"A", target, coupling});
        }
    }
    return s;
}

PureState run_protocol(const PureState& initial, const CollisionSchedule& schedule) {
    const auto& reg = initial.reg();
    std::vector<Complex> amps(initial.amplitudes().begin(), initial.amplitudes().end());
    std::optional<CouplingSpec> cached_spec;
    std::optional<UnitaryMatrix> cached_u;
    for (const auto& ev : schedule.events) {
        const auto a = reg.find(ev.ancilla);
        const auto t = reg.find(ev.target);
        if (!a || !t) {
            throw InvalidArgument("run_protocol: event references qubit '" + (!a ? ev.ancilla : ev.target) +
                                  "' absent from the register");
        }
        if (*a == *t) {
            throw InvalidArgument("run_protocol: ancilla and target coincide");
        }
        if (!cached_spec || !same_coupling(*cached_spec, ev.coupling)) {
            cached_u = heisenberg_unitary(ev.coupling);
            cached_spec = ev.coupling;
        }
        const std::array<std::size_t, 2> targets{*a, *t};
        detail::apply_unitary_inplace(amps, initial.num_qubits(), cached_u->matrix(), targets);
    }
    return initial.evolved(std::move(amps));
}

}  // namespace collide
