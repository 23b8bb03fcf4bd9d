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

#include "collide/haar.hpp"

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <cstring>
#include <numbers>

#include "collide/error.hpp"

namespace collide {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

void require_dim(std::size_t dim) {
    if (dim < 2) {
        throw InvalidArgument("Haar sampling requires dimension >= 2, got " + std::to_string(dim));
    }
}

}  // namespace

double phi_from_uniform(double xi, std::size_t first_index, PhiRule rule) {
    if (first_index == 0 || !(xi >= 0.0 && xi <= 1.0)) {
        throw InvalidArgument("phi_from_uniform: need first_index >= 1 and xi in [0, 1]");
    }
    const double power = 1.0 / (2.0 * static_cast<double>(first_index));
    switch (rule) {
        case PhiRule::haar:
            return std::acos(std::pow(1.0 - xi, power));
        case PhiRule::arcsin_power:
            return std::asin(std::pow(xi, power));
        case PhiRule::uniform_angle:
            return kHalfPi * xi;
    }
    throw InvalidArgument("unknown PhiRule");
}

void EulerAngleSet::validate() const {
    if (dim < 2) {
        throw InvalidArgument("EulerAngleSet: dim must be >= 2");
    }
    if (rotations.size() != dim * (dim - 1) / 2) {
        throw InvalidArgument("EulerAngleSet: expected N(N-1)/2 rotations");
    }
    if (!(alpha >= 0.0 && alpha < kTwoPi)) {
        throw InvalidArgument("EulerAngleSet: alpha outside [0, 2pi)");
    }
    std::size_t r = 0;
    for (std::size_t k = 1; k < dim; ++k) {
        for (std::size_t i = k; i >= 1; --i, ++r) {
            const auto& rot = rotations[r];
            if (rot.i != i || rot.j != k + 1) {
                throw InvalidArgument("EulerAngleSet: rotation schedule out of order");
            }
            if (!(rot.phi >= 0.0 && rot.phi <= kHalfPi)) {
                throw InvalidArgument("EulerAngleSet: phi outside [0, pi/2]");
            }
            if (!(rot.psi >= 0.0 && rot.psi < kTwoPi) || !(rot.chi >= 0.0 && rot.chi < kTwoPi)) {
                throw InvalidArgument("EulerAngleSet: psi/chi outside [0, 2pi)");
            }
            if (i != 1 && rot.chi != 0.0) {
                throw InvalidArgument("EulerAngleSet: chi is only carried by rotations with first index 1");
            }
        }
    }
}

std::uint64_t EulerAngleSet::digest() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](double x) {
        const auto bits = std::bit_cast<std::uint64_t>(x);
        for (int b = 0; b < 8; ++b) {
            h ^= (bits >> (8 * b)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    };
    mix(static_cast<double>(dim));
    for (const auto& r : rotations) {
        mix(r.phi);
        mix(r.psi);
        mix(r.chi);
    }
    mix(alpha);
    return h;
}

EulerAngleSet sample_euler_angles(std::size_t dim, RandomSource& rng, PhiRule rule) {
    require_dim(dim);
    EulerAngleSet set;
    set.dim = dim;
    set.rotations.reserve(dim * (dim - 1) / 2);
    for (std::size_t k = 1; k < dim; ++k) {
        for (std::size_t i = k; i >= 1; --i) {
            EulerRotation rot;
            rot.i = i;
            rot.j = k + 1;
            rot.phi = phi_from_uniform(rng.uniform(), i, rule);
            rot.psi = kTwoPi * rng.uniform();
            rot.chi = i == 1 ? kTwoPi * rng.uniform() : 0.0;
            set.rotations.push_back(rot);
        }
    }
    set.alpha = kTwoPi * rng.uniform();
    return set;
}

EulerAngleSet sample_euler_angles(std::size_t dim, RngStream stream, PhiRule rule) {
    RandomSource rng(stream);
    return sample_euler_angles(dim, rng, rule);
}

Matrix rotation_block(double phi, double psi, double chi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    return Matrix{{std::polar(c, psi), std::polar(s, chi)}, {-std::polar(s, -chi), std::polar(c, -psi)}};
}

UnitaryMatrix compose_unitary(const EulerAngleSet& angles) {
    angles.validate();
    const std::size_t n = angles.dim;
    Matrix m = std::polar(1.0, angles.alpha) * Matrix::identity(n);
    // Right-multiply by each factor: only columns i and j change.
    for (const auto& rot : angles.rotations) {
        const std::size_t a = rot.i - 1;
        const std::size_t b = rot.j - 1;
        const Matrix blk = rotation_block(rot.phi, rot.psi, rot.chi);
        for (std::size_t r = 0; r < n; ++r) {
            const Complex ma = m(r, a);
            const Complex mb = m(r, b);
            m(r, a) = ma * blk(0, 0) + mb * blk(1, 0);
            m(r, b) = ma * blk(0, 1) + mb * blk(1, 1);
        }
    }
    return UnitaryMatrix(std::move(m));
}

void apply_hurwitz(const EulerAngleSet& angles, std::span<Complex> v) {
    angles.validate();
    if (v.size() != angles.dim) {
        throw InvalidArgument("apply_hurwitz: vector length does not match unitary dimension");
    }
    for (auto it = angles.rotations.rbegin(); it != angles.rotations.rend(); ++it) {
        const std::size_t a = it->i - 1;
        const std::size_t b = it->j - 1;
        const Matrix blk = rotation_block(it->phi, it->psi, it->chi);
        const Complex va = v[a];
        const Complex vb = v[b];
        v[a] = blk(0, 0) * va + blk(0, 1) * vb;
        v[b] = blk(1, 0) * va + blk(1, 1) * vb;
    }
    const Complex phase = std::polar(1.0, angles.alpha);
    for (auto& z : v) {
        z *= phase;
    }
}

UnitaryMatrix sample_haar_unitary(std::size_t dim, RandomSource& rng, PhiRule rule) {
    return compose_unitary(sample_euler_angles(dim, rng, rule));
}

UnitaryMatrix sample_haar_unitary(std::size_t dim, RngStream stream, PhiRule rule) {
    RandomSource rng(stream);
    return sample_haar_unitary(dim, rng, rule);
}

UnitaryMatrix ginibre_qr_haar(std::size_t dim, RandomSource& rng) {
    require_dim(dim);
    const auto n = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXcd z(n, n);
    // Row-major fill keeps the draw order independent of Eigen's storage order.
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            const double re = rng.normal();
            const double im = rng.normal();
            z(r, c) = Complex(re, im) * (1.0 / std::numbers::sqrt2);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd& packed = qr.matrixQR();
    Matrix u(dim, dim);
    for (Eigen::Index c = 0; c < n; ++c) {
        const Complex rcc = packed(c, c);
        const Complex phase = std::abs(rcc) > 0.0 ? rcc / std::abs(rcc) : Complex(1.0);
        for (Eigen::Index r = 0; r < n; ++r) {
            u(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = q(r, c) * phase;
        }
    }
    return UnitaryMatrix(std::move(u));
}

UnitaryMatrix ginibre_qr_haar(std::size_t dim, RngStream stream) {
    RandomSource rng(stream);
    return ginibre_qr_haar(dim, rng);
}

}  // namespace collide
