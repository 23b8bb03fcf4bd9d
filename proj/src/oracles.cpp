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

#include "collide/oracles.hpp"

#include <cmath>
#include <numbers>

#include "collide/error.hpp"

namespace collide::oracles {

namespace {

using namespace std::complex_literals;

void check_phi(double phi) {
    if (!(phi >= 0.0 && phi <= 0.5 * std::numbers::pi)) {
        throw InvalidArgument("oracle: phi must lie in [0, pi/2]");
    }
}

void check_angle(double x, const char* name) {
    if (!(x >= 0.0 && x < 2.0 * std::numbers::pi)) {
        throw InvalidArgument(std::string("oracle: ") + name + " must lie in [0, 2pi)");
    }
}

Matrix single_matrix(double phi, double psi, double chi, double tau, bool published) {
    check_phi(phi);
    check_angle(psi, "psi");
    check_angle(chi, "chi");
    check_angle(tau, "tau");
    const double c2 = std::cos(2.0 * tau);
    const double s2 = std::sin(2.0 * tau);
    const double s4 = std::sin(4.0 * tau);
    const double cp = std::cos(phi);
    const double sp = std::sin(phi);
    const double s2p = std::sin(2.0 * phi);
    const double c2p = std::cos(2.0 * phi);
    const Complex ph = std::exp(Complex(0.0, -2.0 * tau + psi + chi));

    Matrix m(4, 4);
    m(0, 0) = cp * cp;
    m(0, 1) = -0.5i * ph * s2 * s2p;
    m(0, 2) = -0.5 * ph * c2 * s2p;
    m(1, 0) = 0.5i * std::conj(ph) * s2 * s2p;
    m(1, 1) = sp * sp * s2 * s2;
    m(1, 2) = -0.5i * s4 * sp * sp;
    m(2, 0) = -0.5 * std::conj(ph) * c2 * (published ? c2p : s2p);
    m(2, 1) = 0.5i * s4 * sp * sp;
    m(2, 2) = c2 * c2 * sp * sp;
    return m;
}

std::vector<Complex> three_qubit(double lambda, double tau, bool published) {
    const double minus = tau - lambda * tau;
    const double plus = tau + lambda * tau;
    const double c = std::cos(minus);
    const double s = std::sin(minus);
    const Complex ph = std::exp(Complex(0.0, -2.0 * lambda * tau));
    std::vector<Complex> amps(8);
    amps[0b000] = ph * c * c;
    amps[0b011] = ph * c * (-1.0i * s);
    amps[0b101] = -s * std::sin(plus);
    amps[0b110] = (published ? 1.0i : -1.0i) * s * std::cos(plus);
    return amps;
}

}  // namespace

DensityMatrix evolved_density_matrix_single(double phi, double psi, double chi, double tau) {
    return DensityMatrix(single_matrix(phi, psi, chi, tau, false), DensityMatrix::Check::structural);
}

Matrix published_density_matrix_single(double phi, double psi, double chi, double tau) {
    return single_matrix(phi, psi, chi, tau, true);
}

double conc_single(double phi, double tau) {
    check_phi(phi);
    const double s = std::sin(phi);
    return s * s * std::abs(std::sin(4.0 * tau));
}

double avg_conc_single(double tau) { return 0.5 * std::abs(std::sin(4.0 * tau)); }

double conc_mixed_ancilla(double phi, double rho0, double tau) {
    check_phi(phi);
    if (!(rho0 >= 0.0 && rho0 <= 1.0)) {
        throw InvalidArgument("oracle: rho0 must lie in [0, 1]");
    }
    return 0.5 * std::abs((-1.0 + (2.0 * rho0 - 1.0) * std::cos(2.0 * phi)) * std::sin(4.0 * tau));
}

double conc_eRA_two_env(double phi_right, double tau) {
    check_phi(phi_right);
    const double s = std::sin(phi_right);
    return std::abs(s * s * std::cos(2.0 * tau) * std::sin(4.0 * tau));
}

double avg_conc_eRA(double tau) { return 0.5 * std::abs(std::cos(2.0 * tau) * std::sin(4.0 * tau)); }

PureState biased_three_qubit_state(double lambda, double tau) {
    if (!std::isfinite(lambda) || !std::isfinite(tau)) {
        throw InvalidArgument("oracle: lambda and tau must be finite");
    }
    return PureState(QubitRegister({"eL1", "A", "eR1"}), three_qubit(lambda, tau, false));
}

std::vector<Complex> published_three_qubit_amplitudes(double lambda, double tau) {
    return three_qubit(lambda, tau, true);
}

}  // namespace collide::oracles
