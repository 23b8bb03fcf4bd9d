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

#include "collide/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "collide/error.hpp"
#include "collide/optimize.hpp"
#include "collide/rng.hpp"

namespace collide {

namespace {

constexpr double kSpectrumFloor = 1e-14;      // rank cutoff for the square-root factor
constexpr double kNegativeNoiseFloor = 1e-13;  // PT eigenvalues above -floor count as zero

void require_qubits(const DensityMatrix& rho, std::size_t n, const char* what) {
    if (rho.num_qubits() != n) {
        throw InvalidArgument(std::string(what) + ": expected a " + std::to_string(n) + "-qubit density matrix");
    }
}

const Matrix& sigma_yy() {
    static const Matrix yy = tensor_product(pauli(2), pauli(2));
    return yy;
}

double real_trace_product(const Matrix& a, const Matrix& b) {
    // Re tr(a b) without forming the product.
    double t = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            t += (a(i, k) * b(k, i)).real();
        }
    }
    return t;
}

}  // namespace

ConcurrenceResult concurrence(const DensityMatrix& rho) {
    require_qubits(rho, 2, "concurrence");
    // rho = W W^dagger with W = V sqrt(D) restricted to the support. The square
    // roots of the spin-flip spectrum are the singular values of W^T (s2 s2) W,
    // read off from the Hermitian dilation [[0, T], [T^dagger, 0]] so no
    // square root of a near-zero eigenvalue is ever taken.
    const auto es = hermitian_eigensystem(rho.matrix());
    std::vector<std::size_t> support;
    for (std::size_t k = 0; k < 4; ++k) {
        if (es.values[k] > kSpectrumFloor) {
            support.push_back(k);
        }
    }
    const std::size_t r = support.size();
    Matrix w(4, r);
    for (std::size_t c = 0; c < r; ++c) {
        const double s = std::sqrt(es.values[support[c]]);
        for (std::size_t i = 0; i < 4; ++i) {
            w(i, c) = s * es.vectors(i, support[c]);
        }
    }
    const Matrix t = w.transpose() * sigma_yy() * w;
    Matrix dilation(2 * r, 2 * r);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            dilation(i, r + j) = t(i, j);
            dilation(r + j, i) = std::conj(t(i, j));
        }
    }
    const auto ev = hermitian_eigenvalues(dilation);
    std::array<double, 4> sv{};
    for (std::size_t k = 0; k < r; ++k) {
        sv[k] = std::max(0.0, ev[k]);
    }
    ConcurrenceResult out;
    for (std::size_t k = 0; k < 4; ++k) {
        out.spin_flip_eigenvalues[k] = sv[k] * sv[k];
    }
    out.value = std::clamp(sv[0] - sv[1] - sv[2] - sv[3], 0.0, 1.0);
    return out;
}

NegativityResult negativity(const DensityMatrix& rho, std::span<const std::size_t> cut) {
    const Matrix pt = partial_transpose(rho.matrix(), cut, rho.num_qubits());
    const auto ev = hermitian_eigenvalues(pt);
    NegativityResult out;
    double sum = 0.0;
    for (double x : ev) {
        if (x < -kNegativeNoiseFloor) {
            out.negative_pt_eigenvalues.push_back(x);
            sum += x;
        }
    }
    out.value = std::max(0.0, -2.0 * sum);
    return out;
}

TripartiteNegativityResult tripartite_negativity(const DensityMatrix& rho) {
    require_qubits(rho, 3, "tripartite_negativity");
    TripartiteNegativityResult out;
    double product = 1.0;
    for (std::size_t k = 0; k < 3; ++k) {
        const std::array<std::size_t, 1> cut{k};
        out.per_cut[k] = negativity(rho, cut);
        product *= out.per_cut[k].value;
    }
    out.value = product > 0.0 ? std::cbrt(product) : 0.0;
    return out;
}

// ---------------------------------------------------------------------------

Matrix LocalRotation::matrix() const {
    // Rz(a) Ry(b) Rz(c) with Rz(x) = diag(e^{-ix/2}, e^{ix/2}).
    const double cb = std::cos(0.5 * b);
    const double sb = std::sin(0.5 * b);
    return Matrix{
        {std::polar(cb, -0.5 * (a + c)), -std::polar(sb, -0.5 * (a - c))},
        {std::polar(sb, 0.5 * (a - c)), std::polar(cb, 0.5 * (a + c))},
    };
}

double ghz_overlap(const Matrix& rho, const std::array<LocalRotation, 3>& rotations) {
    // w = (u1 (x) u2 (x) u3)^dagger |GHZ>; overlap = w^dagger rho w.
    std::array<std::array<Complex, 2>, 3> g0{};
    std::array<std::array<Complex, 2>, 3> g1{};
    for (std::size_t q = 0; q < 3; ++q) {
        const Matrix u = rotations[q].matrix();
        for (std::size_t r = 0; r < 2; ++r) {
            g0[q][r] = std::conj(u(0, r));
            g1[q][r] = std::conj(u(1, r));
        }
    }
    std::array<Complex, 8> w{};
    for (std::size_t i = 0; i < 8; ++i) {
        const std::size_t b0 = (i >> 2) & 1U;
        const std::size_t b1 = (i >> 1) & 1U;
        const std::size_t b2 = i & 1U;
        w[i] = (1.0 / std::numbers::sqrt2) * (g0[0][b0] * g0[1][b1] * g0[2][b2] + g1[0][b0] * g1[1][b1] * g1[2][b2]);
    }
    double f = 0.0;
    for (std::size_t i = 0; i < 8; ++i) {
        Complex row = 0.0;
        for (std::size_t j = 0; j < 8; ++j) {
            row += rho(i, j) * w[j];
        }
        f += (std::conj(w[i]) * row).real();
    }
    return f;
}

WitnessResult ghz_witness(const DensityMatrix& rho, const WitnessOptions& options) {
    require_qubits(rho, 3, "ghz_witness");
    if (options.restarts < 1) {
        throw InvalidArgument("ghz_witness: restarts must be >= 1");
    }
    const Matrix& m = rho.matrix();
    auto unpack = [](const std::vector<double>& x) {
        return std::array<LocalRotation, 3>{LocalRotation{x[0], x[1], x[2]}, LocalRotation{x[3], x[4], x[5]},
                                            LocalRotation{x[6], x[7], x[8]}};
    };
    auto objective = [&](const std::vector<double>& x) { return -ghz_overlap(m, unpack(x)); };

    NelderMeadOptions nm;
    nm.tolerance = options.tolerance;
    nm.max_evaluations = options.max_evaluations;
    RandomSource rng(RngStream{options.seed, 0});

    WitnessResult best;
    best.best_overlap = -1.0;
    for (std::size_t r = 0; r < options.restarts; ++r) {
        std::vector<double> x0(9, 0.0);
        if (r > 0) {
            for (auto& x : x0) {
                x = 2.0 * std::numbers::pi * rng.uniform();
            }
        }
        const auto res = nelder_mead(objective, x0, nm);
        const double overlap = -res.value;
        if (overlap > best.best_overlap) {
            best.best_overlap = overlap;
            best.optimizer_angles = unpack(res.x);
        }
    }
    best.best_overlap = std::clamp(best.best_overlap, 0.0, 1.0);
    best.expectation = 0.75 - best.best_overlap;
    return best;
}

// ---------------------------------------------------------------------------

double factorization_distance(const DensityMatrix& rho) {
    require_qubits(rho, 2, "factorization_distance");
    const std::array<std::size_t, 1> first{0};
    const std::array<std::size_t, 1> second{1};
    const auto r1 = partial_trace(rho, first);
    const auto r2 = partial_trace(rho, second);
    const Matrix diff = rho.matrix() - tensor_product(r1.matrix(), r2.matrix());
    double norm = 0.0;
    for (double x : hermitian_eigenvalues(diff)) {
        norm += std::abs(x);
    }
    return norm;
}

BlochDecomposition bloch_decomposition(const DensityMatrix& rho) {
    require_qubits(rho, 2, "bloch_decomposition");
    BlochDecomposition out;
    const Matrix& m = rho.matrix();
    for (int k = 0; k < 3; ++k) {
        out.beta_1[k] = real_trace_product(m, tensor_product(pauli(k + 1), pauli(0)));
        out.beta_2[k] = real_trace_product(m, tensor_product(pauli(0), pauli(k + 1)));
        for (int l = 0; l < 3; ++l) {
            out.chi[k][l] = real_trace_product(m, tensor_product(pauli(k + 1), pauli(l + 1)));
        }
    }
    return out;
}

Matrix BlochDecomposition::reconstruct() const {
    Matrix m = tensor_product(pauli(0), pauli(0));
    for (int k = 0; k < 3; ++k) {
        m += Complex(beta_2[k]) * tensor_product(pauli(0), pauli(k + 1));
        m += Complex(beta_1[k]) * tensor_product(pauli(k + 1), pauli(0));
        for (int l = 0; l < 3; ++l) {
            m += Complex(chi[k][l]) * tensor_product(pauli(k + 1), pauli(l + 1));
        }
    }
    m *= 0.25;
    return m;
}

// ---------------------------------------------------------------------------

GraphClass classify_graph(const DensityMatrix& rho, double eps_bond, double eps_tri) {
    require_qubits(rho, 3, "classify_graph");
    if (!(eps_bond > 0.0) || !(eps_tri > 0.0)) {
        throw InvalidArgument("classify_graph: thresholds must be positive");
    }
    GraphClass g;
    const std::array<GraphClass::Pair, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
    const std::array<std::size_t, 1> first{0};
    for (std::size_t p = 0; p < 3; ++p) {
        const std::array<std::size_t, 2> keep{pairs[p].first, pairs[p].second};
        const auto marginal = partial_trace(rho, keep);
        g.pair_negativity[p] = negativity(marginal, first).value;
        g.pair_factorization[p] = factorization_distance(marginal);
        if (g.pair_negativity[p] > eps_bond) {
            g.bonds.push_back(pairs[p]);
        } else if (g.pair_factorization[p] > kClassicalCorrelationThreshold) {
            g.classically_correlated_pairs.push_back(pairs[p]);
        }
    }
    g.tripartite_value = tripartite_negativity(rho).value;
    g.tripartite = g.tripartite_value > eps_tri;

    switch (g.bonds.size()) {
        case 3:
            g.kind = g.tripartite ? GraphClass::Kind::triangle : GraphClass::Kind::unclassified;
            break;
        case 2:
            g.kind = g.tripartite && g.classically_correlated_pairs.size() == 1 ? GraphClass::Kind::two_way
                                                                               : GraphClass::Kind::unclassified;
            break;
        case 1:
            g.kind = g.tripartite ? GraphClass::Kind::unclassified : GraphClass::Kind::single_bond;
            break;
        default:
            g.kind = GraphClass::Kind::no_bonds;
            break;
    }
    return g;
}

std::string to_string(GraphClass::Kind kind) {
    switch (kind) {
        case GraphClass::Kind::triangle: return "a";
        case GraphClass::Kind::no_bonds: return "b";
        case GraphClass::Kind::two_way: return "c";
        case GraphClass::Kind::single_bond: return "d";
        case GraphClass::Kind::unclassified: return "unclassified";
    }
    return "unclassified";
}

}  // namespace collide
