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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "collide/matrix.hpp"

namespace collide {

/// Ordered set of named qubits. Register index 0 is the most significant bit
/// of every basis-state index (big-endian), in every module.
class QubitRegister {
  public:
    QubitRegister() = default;
    explicit QubitRegister(std::vector<std::string> labels);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t index) const { return labels_.at(index); }

    /// Index of `label`; throws InvalidArgument when absent.
    std::size_t index_of(const std::string& label) const;
    std::optional<std::size_t> find(const std::string& label) const;
    bool contains(const std::string& label) const { return find(label).has_value(); }

    bool operator==(const QubitRegister&) const = default;

  private:
    std::vector<std::string> labels_;
};

/// Normalized statevector over a register.
class PureState {
  public:
    static constexpr double kNormTolerance = 1e-10;
    static constexpr double kRenormalizeDrift = 1e-12;

    /// Throws InvalidArgument when the amplitude count is not 2^n or the norm
    /// deviates from 1 by more than kNormTolerance.
    PureState(QubitRegister reg, std::vector<Complex> amplitudes);

    /// |0...0> over `reg`.
    static PureState zero(QubitRegister reg);

    const QubitRegister& reg() const { return reg_; }
    std::size_t num_qubits() const { return reg_.size(); }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    Complex amplitude(std::size_t basis_index) const { return amplitudes_.at(basis_index); }

    double norm() const;
    /// Number of renormalizations applied along this state's history.
    std::size_t renormalizations() const { return renormalizations_; }

    /// Successor state over the same register. Renormalizes only when the norm
    /// drifts by more than kRenormalizeDrift, and counts it.
    PureState evolved(std::vector<Complex> amplitudes) const;

  private:
    PureState() = default;

    QubitRegister reg_;
    std::vector<Complex> amplitudes_;
    std::size_t renormalizations_ = 0;
};

/// Square matrix with U^dagger U = I within 1e-10 elementwise.
class UnitaryMatrix {
  public:
    static constexpr double kTolerance = 1e-10;

    explicit UnitaryMatrix(Matrix m);

    std::size_t dim() const { return m_.rows(); }
    const Matrix& matrix() const { return m_; }
    operator const Matrix&() const { return m_; }
    /// Max elementwise deviation of U^dagger U from the identity.
    static double unitarity_defect(const Matrix& m);

  private:
    Matrix m_;
};

/// Hermitian, positive semidefinite, unit-trace matrix of power-of-two size.
class DensityMatrix {
  public:
    static constexpr double kTolerance = 1e-10;

    enum class Check {
        full,        ///< Hermiticity, trace and spectrum.
        structural,  ///< Hermiticity and trace only; used where PSD holds by construction.
    };

    explicit DensityMatrix(Matrix m, Check check = Check::full);

    static DensityMatrix pure(std::span<const Complex> psi);

    std::size_t dim() const { return m_.rows(); }
    std::size_t num_qubits() const { return num_qubits_; }
    const Matrix& matrix() const { return m_; }
    operator const Matrix&() const { return m_; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  private:
    Matrix m_;
    std::size_t num_qubits_ = 0;
};

struct EigenSystem {
    std::vector<double> values;  ///< descending
    Matrix vectors;              ///< column k pairs with values[k]
};

namespace detail {
/// In-place kernel behind apply_local_unitary; no validation.
void apply_unitary_inplace(std::span<Complex> amplitudes, std::size_t num_qubits, const Matrix& u,
                           std::span<const std::size_t> targets);
}  // namespace detail

/// Returns log2(dim) or throws when dim is not a positive power of two.
std::size_t qubits_for_dim(std::size_t dim);

/// Applies a 2^k x 2^k unitary to the ordered `targets`; targets[0] is the most
/// significant bit of the unitary's local index.
PureState apply_local_unitary(const PureState& state, const UnitaryMatrix& u,
                              std::span<const std::size_t> targets);

/// Reduced density matrix on `keep`, ordered by ascending register index.
DensityMatrix partial_trace(const PureState& state, std::span<const std::size_t> keep);

/// Reduced matrix of an n-qubit density matrix on `keep` (ascending order).
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);

/// Transposes the qubits in `subsystem` of an n-qubit matrix. The result is
/// Hermitian whenever the input is, but not necessarily PSD.
Matrix partial_transpose(const Matrix& rho, std::span<const std::size_t> subsystem,
                         std::size_t num_qubits);

/// Cyclic Jacobi on the real-symmetric embedding [[Re, -Im], [Im, Re]].
std::vector<double> hermitian_eigenvalues(const Matrix& m);
EigenSystem hermitian_eigensystem(const Matrix& m);

}  // namespace collide
