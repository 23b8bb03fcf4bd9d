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

#include <cmath>
#include <numbers>
#include <vector>

#include "collide/haar.hpp"
#include "collide/matrix.hpp"
#include "collide/qstate.hpp"
#include "collide/rng.hpp"

namespace collide::testing {

inline std::vector<Complex> random_vector(std::size_t dim, RandomSource& rng) {
    std::vector<Complex> v(dim);
    double n = 0.0;
    for (auto& z : v) {
        z = Complex(rng.normal(), rng.normal());
        n += std::norm(z);
    }
    for (auto& z : v) {
        z /= std::sqrt(n);
    }
    return v;
}

inline Matrix random_hermitian(std::size_t dim, RandomSource& rng) {
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = rng.normal();
        for (std::size_t j = i + 1; j < dim; ++j) {
            m(i, j) = Complex(rng.normal(), rng.normal());
            m(j, i) = std::conj(m(i, j));
        }
    }
    return m;
}

/// Random mixed state of rank `rank` on `qubits` qubits.
inline DensityMatrix random_density(std::size_t qubits, std::size_t rank, RandomSource& rng) {
    const std::size_t d = std::size_t{1} << qubits;
    Matrix m(d, d);
    for (std::size_t r = 0; r < rank; ++r) {
        const double w = rng.uniform() + 0.1;
        auto v = random_vector(d, rng);
        m += Complex(w) * Matrix::outer(v);
    }
    m *= 1.0 / m.trace().real();
    return DensityMatrix(m);
}

inline std::vector<Complex> basis(std::size_t dim, std::size_t k) {
    std::vector<Complex> v(dim);
    v[k] = 1.0;
    return v;
}

inline std::vector<Complex> bell_phi_plus() {
    constexpr double r = (1.0 / std::numbers::sqrt2);
    return {r, 0.0, 0.0, r};
}

inline std::vector<Complex> ghz3() {
    constexpr double r = (1.0 / std::numbers::sqrt2);
    std::vector<Complex> v(8);
    v[0] = r;
    v[7] = r;
    return v;
}

inline std::vector<Complex> w3() {
    const double r = 1.0 / std::sqrt(3.0);
    std::vector<Complex> v(8);
    v[1] = r;
    v[2] = r;
    v[4] = r;
    return v;
}

inline Matrix random_local_unitary(RandomSource& rng) { return sample_haar_unitary(2, rng).matrix(); }

inline Matrix conjugate_by(const Matrix& u, const Matrix& rho) { return u * rho * u.adjoint(); }

}  // namespace collide::testing
