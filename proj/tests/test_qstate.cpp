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

#include <Eigen/Dense>
#include <array>
#include <cmath>

#include "collide/error.hpp"
#include "collide/qstate.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace collide;
using namespace collide::testing;

namespace {

QubitRegister reg_of(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < n; ++k) {
        labels.push_back("q" + std::to_string(k));
    }
    return QubitRegister(labels);
}

// Independent reference: Eigen's self-adjoint solver, sorted descending.
std::vector<double> eigen_reference(const Matrix& m) {
    const auto d = static_cast<Eigen::Index>(m.rows());
    Eigen::MatrixXcd e(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            e(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(e);
    std::vector<double> v(solver.eigenvalues().data(), solver.eigenvalues().data() + d);
    std::sort(v.rbegin(), v.rend());
    return v;
}

}  // namespace

TEST_CASE("tensor_product follows the Kronecker index rule") {
    CHECK(tensor_product(Matrix::identity(2), Matrix::identity(2)).max_abs_diff(Matrix::identity(4)) == 0.0);

    const Matrix xx = tensor_product(pauli(1), pauli(1));
    Matrix anti(4, 4);
    for (std::size_t i = 0; i < 4; ++i) {
        anti(i, 3 - i) = 1.0;
    }
    CHECK(xx.max_abs_diff(anti) == 0.0);

    const Matrix p0 = Matrix::outer(basis(2, 0));
    const std::array<double, 4> diag{1.0, -1.0, 0.0, 0.0};
    CHECK(tensor_product(p0, pauli(3)).max_abs_diff(Matrix::diagonal(diag)) == 0.0);

    RandomSource rng({3, 0});
    const Matrix a = random_hermitian(2, rng);
    const Matrix b = random_hermitian(3, rng);
    const Matrix ab = tensor_product(a, b);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 3; ++k)
                for (std::size_t l = 0; l < 3; ++l) CHECK(ab(i * 3 + k, j * 3 + l) == a(i, j) * b(k, l));
}

TEST_CASE("apply_local_unitary") {
    const UnitaryMatrix x(pauli(1));
    SUBCASE("identity leaves any state unchanged") {
        RandomSource rng({1, 1});
        PureState s(reg_of(3), random_vector(8, rng));
        const std::array<std::size_t, 2> t{2, 0};
        const auto out = apply_local_unitary(s, UnitaryMatrix(Matrix::identity(4)), t);
        for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(out.amplitude(i) - s.amplitude(i)) < 1e-15);
    }
    SUBCASE("X on qubit 0 of |00> gives |10> (big-endian)") {
        const std::array<std::size_t, 1> t{0};
        const auto out = apply_local_unitary(PureState::zero(reg_of(2)), x, t);
        CHECK(out.amplitude(0b10) == Complex(1.0));
    }
    SUBCASE("SWAP maps |01> to |10>") {
        Matrix swap(4, 4);
        swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1.0;
        const std::array<std::size_t, 2> t{0, 1};
        const auto out = apply_local_unitary(PureState(reg_of(2), basis(4, 0b01)), UnitaryMatrix(swap), t);
        CHECK(out.amplitude(0b10) == Complex(1.0));
    }
    SUBCASE("target order selects the local bit significance") {
        // CNOT with control = first target.
        Matrix cnot(4, 4);
        cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
        const std::array<std::size_t, 2> t{2, 0};
        const auto out = apply_local_unitary(PureState(reg_of(3), basis(8, 0b001)), UnitaryMatrix(cnot), t);
        CHECK(out.amplitude(0b101) == Complex(1.0));
    }
    SUBCASE("norm is preserved by random unitaries") {
        RandomSource rng({1, 2});
        PureState s(reg_of(5), random_vector(32, rng));
        for (int k = 0; k < 50; ++k) {
            const std::array<std::size_t, 2> t{static_cast<std::size_t>(k % 5), static_cast<std::size_t>((k + 2) % 5)};
            s = apply_local_unitary(s, sample_haar_unitary(4, rng), t);
        }
        CHECK(std::abs(s.norm() - 1.0) < 1e-10);
    }
    SUBCASE("rejects bad targets") {
        const auto s = PureState::zero(reg_of(2));
        const std::array<std::size_t, 2> dup{1, 1};
        const std::array<std::size_t, 1> out_of_range{2};
        const std::array<std::size_t, 2> pair{0, 1};
        CHECK_THROWS_AS(apply_local_unitary(s, UnitaryMatrix(Matrix::identity(4)), dup), InvalidArgument);
        CHECK_THROWS_AS(apply_local_unitary(s, x, out_of_range), InvalidArgument);
        CHECK_THROWS_AS(apply_local_unitary(s, x, pair), InvalidArgument);
    }
}

TEST_CASE("PureState and matrix wrappers validate their invariants") {
    CHECK_THROWS_AS(PureState(reg_of(1), {1.0, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(PureState(reg_of(2), {1.0, 0.0}), InvalidArgument);
    CHECK_THROWS_AS(QubitRegister({"a", "a"}), InvalidArgument);
    CHECK_THROWS_AS(UnitaryMatrix(Matrix{{1.0, 1.0}, {0.0, 1.0}}), InvalidArgument);
    CHECK_THROWS_AS(DensityMatrix(Matrix{{1.5, 0.0}, {0.0, -0.5}}), InvalidArgument);
    CHECK_THROWS_AS(DensityMatrix(Matrix{{0.5, 0.1}, {0.0, 0.5}}), InvalidArgument);
    CHECK_THROWS_AS(DensityMatrix(Matrix::identity(3)), InvalidArgument);
}

TEST_CASE("renormalization happens only beyond the drift threshold") {
    const auto s = PureState::zero(reg_of(1));
    const auto same = s.evolved({1.0 + 1e-14, 0.0});
    CHECK(same.renormalizations() == 0);
    const auto fixed = s.evolved({1.0 + 1e-9, 0.0});
    CHECK(fixed.renormalizations() == 1);
    CHECK(std::abs(fixed.norm() - 1.0) < 1e-15);
    CHECK_THROWS_AS(s.evolved({2.0, 0.0}), NumericalError);
}

TEST_CASE("partial_trace") {
    SUBCASE("Bell marginal is maximally mixed") {
        const PureState bell(reg_of(2), bell_phi_plus());
        const std::array<std::size_t, 1> keep{0};
        CHECK(partial_trace(bell, keep).matrix().max_abs_diff(0.5 * Matrix::identity(2)) < 1e-15);
    }
    SUBCASE("|000> keeping {0,2} is |00><00|") {
        const std::array<std::size_t, 2> keep{0, 2};
        CHECK(partial_trace(PureState::zero(reg_of(3)), keep).matrix().max_abs_diff(Matrix::outer(basis(4, 0))) ==
              0.0);
    }
    SUBCASE("GHZ two-qubit marginal is a classical mixture") {
        const std::array<std::size_t, 2> keep{1, 2};
        Matrix expected(4, 4);
        expected(0, 0) = expected(3, 3) = 0.5;
        CHECK(partial_trace(PureState(reg_of(3), ghz3()), keep).matrix().max_abs_diff(expected) < 1e-15);
    }
    SUBCASE("product states reduce to their factors") {
        RandomSource rng({4, 4});
        const auto a = random_vector(2, rng);
        const auto b = random_vector(4, rng);
        const auto c = random_vector(2, rng);
        std::vector<Complex> psi;
        for (auto x : a)
            for (auto y : b)
                for (auto z : c) psi.push_back(x * y * z);
        const PureState s(reg_of(4), psi);
        const std::array<std::size_t, 2> mid{1, 2};
        CHECK(partial_trace(s, mid).matrix().max_abs_diff(Matrix::outer(b)) < 1e-14);
        const std::array<std::size_t, 2> ends{3, 0};
        CHECK(partial_trace(s, ends).matrix().max_abs_diff(tensor_product(Matrix::outer(a), Matrix::outer(c))) <
              1e-14);
    }
    SUBCASE("trace and positivity on random states") {
        RandomSource rng({4, 5});
        for (int k = 0; k < 20; ++k) {
            const PureState s(reg_of(6), random_vector(64, rng));
            const std::array<std::size_t, 3> keep{1, 3, 4};
            const auto rho = partial_trace(s, keep);
            CHECK(std::abs(rho.matrix().trace() - 1.0) < 1e-10);
            CHECK(hermitian_eigenvalues(rho.matrix()).back() > -1e-10);
            // Density-matrix route agrees with the statevector route.
            const auto full = DensityMatrix::pure(s.amplitudes());
            CHECK(partial_trace(full, keep).matrix().max_abs_diff(rho.matrix()) < 1e-14);
        }
    }
    SUBCASE("rejects empty keep set") {
        CHECK_THROWS_AS(partial_trace(PureState::zero(reg_of(2)), std::span<const std::size_t>{}), InvalidArgument);
    }
}

TEST_CASE("partial_transpose") {
    SUBCASE("Bell state spectrum after transposition") {
        const auto rho = DensityMatrix::pure(bell_phi_plus());
        const std::array<std::size_t, 1> cut{1};
        const Matrix pt = partial_transpose(rho.matrix(), cut, 2);
        // Oracle: independent solver.
        const auto ref = eigen_reference(pt);
        const auto ev = hermitian_eigenvalues(pt);
        const std::array<double, 4> expected{0.5, 0.5, 0.5, -0.5};
        for (std::size_t k = 0; k < 4; ++k) {
            CHECK(std::abs(ref[k] - expected[k]) < 1e-12);
            CHECK(std::abs(ev[k] - expected[k]) < 1e-12);
        }
    }
    SUBCASE("product state gets its factor transposed") {
        RandomSource rng({5, 1});
        const auto a = random_density(1, 2, rng);
        const auto b = random_density(1, 2, rng);
        const std::array<std::size_t, 1> cut{1};
        const Matrix pt = partial_transpose(tensor_product(a.matrix(), b.matrix()), cut, 2);
        CHECK(pt.max_abs_diff(tensor_product(a.matrix(), b.matrix().transpose())) == 0.0);
        CHECK(hermitian_eigenvalues(pt).back() > -1e-12);
    }
    SUBCASE("diagonal matrices are fixed points") {
        const std::array<double, 8> d{0.1, 0.2, 0.05, 0.15, 0.1, 0.1, 0.2, 0.1};
        const std::array<std::size_t, 2> cut{0, 2};
        const Matrix m = Matrix::diagonal(d);
        CHECK(partial_transpose(m, cut, 3).max_abs_diff(m) == 0.0);
    }
    SUBCASE("involution, trace and Hermiticity on random states") {
        RandomSource rng({5, 2});
        for (int k = 0; k < 20; ++k) {
            const auto rho = random_density(3, 3, rng);
            const std::array<std::size_t, 1> cut{static_cast<std::size_t>(k % 3)};
            const Matrix pt = partial_transpose(rho.matrix(), cut, 3);
            CHECK(pt.hermiticity_defect() < 1e-10);
            CHECK(std::abs(pt.trace() - rho.matrix().trace()) < 1e-15);
            CHECK(partial_transpose(pt, cut, 3).max_abs_diff(rho.matrix()) == 0.0);
        }
    }
    SUBCASE("rejects empty or full subsystem") {
        const Matrix m = Matrix::identity(4);
        const std::array<std::size_t, 2> full{0, 1};
        CHECK_THROWS_AS(partial_transpose(m, std::span<const std::size_t>{}, 2), InvalidArgument);
        CHECK_THROWS_AS(partial_transpose(m, full, 2), InvalidArgument);
    }
}

TEST_CASE("hermitian eigensolver") {
    SUBCASE("simple spectra") {
        const auto z = hermitian_eigenvalues(pauli(3));
        CHECK(z[0] == doctest::Approx(1.0));
        CHECK(z[1] == doctest::Approx(-1.0));
        const auto half = hermitian_eigenvalues(0.5 * Matrix::identity(2));
        CHECK(std::abs(half[0] - 0.5) < 1e-15);
        CHECK(std::abs(half[1] - 0.5) < 1e-15);
    }
    SUBCASE("random Hermitian matrices up to dim 16") {
        RandomSource rng({6, 1});
        for (std::size_t d : {1U, 2U, 3U, 4U, 7U, 8U, 16U}) {
            for (int k = 0; k < 5; ++k) {
                const Matrix m = random_hermitian(d, rng);
                const auto es = hermitian_eigensystem(m);
                double sum = 0.0;
                for (std::size_t i = 0; i < d; ++i) {
                    sum += es.values[i];
                    if (i + 1 < d) CHECK(es.values[i] >= es.values[i + 1]);
                }
                CHECK(std::abs(sum - m.trace().real()) < 1e-9 * static_cast<double>(d));
                Matrix rebuilt(d, d);
                for (std::size_t i = 0; i < d; ++i) {
                    std::vector<Complex> v(d);
                    for (std::size_t r = 0; r < d; ++r) v[r] = es.vectors(r, i);
                    rebuilt += Complex(es.values[i]) * Matrix::outer(v);
                }
                CHECK(rebuilt.max_abs_diff(m) < 1e-8);
                const auto ref = eigen_reference(m);
                for (std::size_t i = 0; i < d; ++i) CHECK(std::abs(ref[i] - es.values[i]) < 1e-10);
            }
        }
    }
    SUBCASE("degenerate spectra still give a complete eigenbasis") {
        RandomSource rng({6, 2});
        const Matrix u = sample_haar_unitary(8, rng).matrix();
        const std::array<double, 8> d{0.5, 0.5, 0.5, 0.25, 0.25, 0.0, 0.0, -0.5};
        const Matrix m = u * Matrix::diagonal(d) * u.adjoint();
        const auto es = hermitian_eigensystem(m);
        const Matrix v = es.vectors;
        CHECK((v.adjoint() * v).max_abs_diff(Matrix::identity(8)) < 1e-9);
        CHECK((v * Matrix::diagonal(es.values) * v.adjoint()).max_abs_diff(m) < 1e-9);
    }
    SUBCASE("rejects non-Hermitian input") {
        CHECK_THROWS_AS(hermitian_eigenvalues(Matrix{{1.0, 1.0}, {0.0, 1.0}}), InvalidArgument);
    }
}
