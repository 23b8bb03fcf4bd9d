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

#include <vector>

#include "collide/qstate.hpp"

// Closed-form results for the single- and two-environment collision models,
// used as golden references for the simulation pipeline. Qubit order follows
// the simulator: (e, A) for one environment, (e_L, A, e_R) for two.
namespace collide::oracles {

/// (e, A) state after a Haar-prepared e (angles phi, psi, chi) and one
/// isotropic collision of duration tau, starting from |0>_A.
DensityMatrix evolved_density_matrix_single(double phi, double psi, double chi, double tau);

/// The same matrix with its (3,1) entry as originally typeset,
/// -1/2 e^{2i tau - i(psi+chi)} cos(2 tau) cos(2 phi). Not Hermitian; kept to
/// document the correction.
Matrix published_density_matrix_single(double phi, double psi, double chi, double tau);

/// sin^2(phi) |sin 4 tau|.
double conc_single(double phi, double tau);
/// Haar average of conc_single: |sin 4 tau| / 2.
double avg_conc_single(double tau);
/// Concurrence for an ancilla prepared as diag(rho0, 1 - rho0).
double conc_mixed_ancilla(double phi, double rho0, double tau);
/// e_R - A concurrence after one e_R collision followed by one e_L collision.
double conc_eRA_two_env(double phi_right, double tau);
/// Haar average |cos 2 tau sin 4 tau| / 2.
double avg_conc_eRA(double tau);

/// |000> on (e_L, A, e_R) after an e_L - A then an e_R - A collision under
/// H = J[s1 s1 + lambda (s2 s2 + s3 s3)].
PureState biased_three_qubit_state(double lambda, double tau);

/// Same expression with the sign of the |1>_{eL}|10>_{A eR} amplitude as
/// originally typeset (+i instead of -i).
std::vector<Complex> published_three_qubit_amplitudes(double lambda, double tau);

}  // namespace collide::oracles
