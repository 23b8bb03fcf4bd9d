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

#include "collide/qstate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "collide/error.hpp"

namespace collide {

namespace {

double squared_norm(std::span<const Complex> v) {
    double s = 0.0;
    for (const auto& z : v) {
        s += std::norm(z);
    }
    return s;
}

// Bit mask of register indices under the big-endian convention.
std::size_t mask_of(std::span<const std::size_t> qubits, std::size_t num_qubits) {
    std::size_t mask = 0;
    for (auto q : qubits) {
        mask |= std::size_t{1} << (num_qubits - 1 - q);
    }
    return mask;
}

void check_qubit_list(std::span<const std::size_t> qubits, std::size_t num_qubits, const char* what) {
    std::unordered_set<std::size_t> seen;
    for (auto q : qubits) {
        if (q >= num_qubits) {
            throw InvalidArgument(std::string(what) + ": qubit index " + std::to_string(q) +
                                  " outside register of " + std::to_string(num_qubits));
        }
        if (!seen.insert(q).second) {
            throw InvalidArgument(std::string(what) + ": duplicate qubit index " + std::to_string(q));
        }
    }
}

// Cyclic Jacobi for a dense real symmetric n x n matrix (row-major `a`).
// Returns eigenvalues in the diagonal of `a`; eigenvectors (columns) in `v` when requested.
void jacobi_symmetric(std::vector<double>& a, std::size_t n, std::vector<double>* v) {
    constexpr int kMaxSweeps = 100;
    constexpr double kOffTolerance = 1e-14;
    if (v != nullptr) {
        v->assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            (*v)[i * n + i] = 1.0;
        }
    }
    double fro = 0.0;
    for (double x : a) {
        fro += x * x;
    }
    const double threshold = kOffTolerance * std::max(1.0, std::sqrt(fro));
    for (int sweep = 0; sweep <= kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = 0; q < n; ++q) {
                if (p != q) {
                    off += a[p * n + q] * a[p * n + q];
                }
            }
        }
        if (std::sqrt(off) < threshold) {
            return;
        }
        if (sweep == kMaxSweeps) {
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) {
                    continue;
                }
                const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k * n + p];
                    const double akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p * n + k];
                    const double aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                if (v != nullptr) {
                    auto& vv = *v;
                    for (std::size_t k = 0; k < n; ++k) {
                        const double vkp = vv[k * n + p];
                        const double vkq = vv[k * n + q];
                        vv[k * n + p] = c * vkp - s * vkq;
                        vv[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
    throw NumericalError("hermitian eigensolver: Jacobi did not converge in 100 sweeps");
}

EigenSystem solve_hermitian(const Matrix& m, bool want_vectors) {
    if (!m.square() || m.rows() == 0) {
        throw InvalidArgument("hermitian eigensolver: matrix must be square and nonempty");
    }
    if (!m.all_finite()) {
        throw InvalidArgument("hermitian eigensolver: non-finite entries");
    }
    if (m.hermiticity_defect() > 1e-8) {
        throw InvalidArgument("hermitian eigensolver: matrix is not Hermitian within 1e-8");
    }
    const std::size_t d = m.rows();
    const std::size_t n = 2 * d;
    std::vector<double> s(n * n);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            // Symmetrize so the embedding is exactly symmetric.
            const Complex h = 0.5 * (m(i, j) + std::conj(m(j, i)));
            s[i * n + j] = h.real();
            s[(i + d) * n + (j + d)] = h.real();
            s[i * n + (j + d)] = -h.imag();
            s[(i + d) * n + j] = h.imag();
        }
    }
    std::vector<double> v;
    jacobi_symmetric(s, n, want_vectors ? &v : nullptr);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return s[x * n + x] > s[y * n + y]; });

    EigenSystem out;
    out.values.resize(d);
    for (std::size_t k = 0; k < d; ++k) {
        out.values[k] = 0.5 * (s[order[2 * k] * n + order[2 * k]] + s[order[2 * k + 1] * n + order[2 * k + 1]]);
    }
    if (!want_vectors) {
        return out;
    }

    // Each complex eigenvector shows up twice in the embedding, as (x; y) and
    // (-y; x). Within each cluster of (numerically) equal values, pick complex
    // vectors greedily by largest residual against those already chosen.
    out.vectors = Matrix(d, d);
    const double scale = std::max(1.0, std::abs(s[order[0] * n + order[0]]));
    const double cluster_tol = 1e-10 * scale;
    std::size_t filled = 0;
    std::size_t begin = 0;
    while (begin < n) {
        std::size_t end = begin + 1;
        while (end < n && s[order[end - 1] * n + order[end - 1]] - s[order[end] * n + order[end]] < cluster_tol) {
            ++end;
        }
        std::vector<std::vector<Complex>> candidates;
        for (std::size_t r = begin; r < end; ++r) {
            std::vector<Complex> z(d);
            for (std::size_t i = 0; i < d; ++i) {
                z[i] = Complex(v[i * n + order[r]], v[(i + d) * n + order[r]]);
            }
            candidates.push_back(std::move(z));
        }
        const std::size_t wanted = (end - begin) / 2;
        std::vector<std::vector<Complex>> chosen;
        for (std::size_t pick = 0; pick < wanted && filled < d; ++pick) {
            double best_norm = -1.0;
            std::vector<Complex> best;
            for (const auto& c : candidates) {
                auto r = c;
                for (const auto& q : chosen) {
                    Complex proj = 0.0;
                    for (std::size_t i = 0; i < d; ++i) {
                        proj += std::conj(q[i]) * r[i];
                    }
                    for (std::size_t i = 0; i < d; ++i) {
                        r[i] -= proj * q[i];
                    }
                }
                const double nr = std::sqrt(squared_norm(r));
                if (nr > best_norm) {
                    best_norm = nr;
                    best = std::move(r);
                }
            }
            for (auto& z : best) {
                z /= best_norm;
            }
            for (std::size_t i = 0; i < d; ++i) {
                out.vectors(i, filled) = best[i];
            }
            chosen.push_back(std::move(best));
            ++filled;
        }
        begin = end;
    }
    if (filled != d) {
        throw NumericalError("hermitian eigensolver: could not extract a complete eigenbasis");
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------

QubitRegister::QubitRegister(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) {
        throw InvalidArgument("QubitRegister: at least one qubit required");
    }
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_) {
        if (!seen.insert(l).second) {
            throw InvalidArgument("QubitRegister: duplicate label '" + l + "'");
        }
    }
}

std::optional<std::size_t> QubitRegister::find(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t QubitRegister::index_of(const std::string& label) const {
    if (auto i = find(label)) {
        return *i;
    }
    throw InvalidArgument("QubitRegister: no qubit labelled '" + label + "'");
}

// ---------------------------------------------------------------------------

PureState::PureState(QubitRegister reg, std::vector<Complex> amplitudes)
    : reg_(std::move(reg)), amplitudes_(std::move(amplitudes)) {
    if (reg_.size() == 0 || reg_.size() >= 8 * sizeof(std::size_t) - 1) {
        throw InvalidArgument("PureState: unsupported register size");
    }
    if (amplitudes_.size() != (std::size_t{1} << reg_.size())) {
        throw InvalidArgument("PureState: expected 2^n amplitudes");
    }
    for (const auto& z : amplitudes_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw InvalidArgument("PureState: non-finite amplitude");
        }
    }
    if (std::abs(norm() - 1.0) > kNormTolerance) {
        throw InvalidArgument("PureState: amplitudes are not normalized");
    }
}

PureState PureState::zero(QubitRegister reg) {
    std::vector<Complex> amps(std::size_t{1} << reg.size());
    amps[0] = 1.0;
    return PureState(std::move(reg), std::move(amps));
}

double PureState::norm() const { return std::sqrt(squared_norm(amplitudes_)); }

PureState PureState::evolved(std::vector<Complex> amplitudes) const {
    if (amplitudes.size() != amplitudes_.size()) {
        throw InvalidArgument("PureState::evolved: amplitude count changed");
    }
    PureState next;
    next.reg_ = reg_;
    next.amplitudes_ = std::move(amplitudes);
    next.renormalizations_ = renormalizations_;
    const double nrm = next.norm();
    if (!std::isfinite(nrm)) {
        throw NumericalError("PureState::evolved: non-finite norm");
    }
    if (std::abs(nrm - 1.0) > kRenormalizeDrift) {
        if (std::abs(nrm - 1.0) > 1e-6) {
            throw NumericalError("PureState::evolved: norm drift " + std::to_string(nrm - 1.0) +
                                 " indicates a non-unitary update");
        }
        for (auto& z : next.amplitudes_) {
            z /= nrm;
        }
        ++next.renormalizations_;
    }
    return next;
}

// ---------------------------------------------------------------------------

UnitaryMatrix::UnitaryMatrix(Matrix m) : m_(std::move(m)) {
    if (!m_.square() || m_.rows() == 0) {
        throw InvalidArgument("UnitaryMatrix: matrix must be square and nonempty");
    }
    if (!m_.all_finite()) {
        throw InvalidArgument("UnitaryMatrix: non-finite entries");
    }
    if (unitarity_defect(m_) > kTolerance) {
        throw InvalidArgument("UnitaryMatrix: U^dagger U deviates from identity beyond 1e-10");
    }
}

double UnitaryMatrix::unitarity_defect(const Matrix& m) {
    return (m.adjoint() * m).max_abs_diff(Matrix::identity(m.rows()));
}

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(Matrix m, Check check) : m_(std::move(m)) {
    if (!m_.square()) {
        throw InvalidArgument("DensityMatrix: matrix must be square");
    }
    num_qubits_ = qubits_for_dim(m_.rows());
    if (!m_.all_finite()) {
        throw InvalidArgument("DensityMatrix: non-finite entries");
    }
    if (m_.hermiticity_defect() > kTolerance) {
        throw InvalidArgument("DensityMatrix: not Hermitian within 1e-10");
    }
    if (std::abs(m_.trace() - Complex(1.0)) > kTolerance) {
        throw InvalidArgument("DensityMatrix: trace differs from 1 beyond 1e-10");
    }
    if (check == Check::full) {
        const auto ev = hermitian_eigenvalues(m_);
        if (ev.back() < -kTolerance) {
            throw InvalidArgument("DensityMatrix: negative eigenvalue " + std::to_string(ev.back()));
        }
    }
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> psi) {
    if (std::abs(squared_norm(psi) - 1.0) > kTolerance) {
        throw InvalidArgument("DensityMatrix::pure: vector is not normalized");
    }
    return DensityMatrix(Matrix::outer(psi), Check::structural);
}

// ---------------------------------------------------------------------------

std::size_t qubits_for_dim(std::size_t dim) {
    if (dim == 0 || !std::has_single_bit(dim)) {
        throw InvalidArgument("dimension " + std::to_string(dim) + " is not a positive power of two");
    }
    return static_cast<std::size_t>(std::countr_zero(dim));
}

namespace detail {

void apply_unitary_inplace(std::span<Complex> amplitudes, std::size_t num_qubits, const Matrix& u,
                           std::span<const std::size_t> targets) {
    const std::size_t k = targets.size();
    const std::size_t local = std::size_t{1} << k;
    std::vector<std::size_t> offset(local, 0);
    for (std::size_t l = 0; l < local; ++l) {
        for (std::size_t j = 0; j < k; ++j) {
            if ((l >> (k - 1 - j)) & 1U) {
                offset[l] |= std::size_t{1} << (num_qubits - 1 - targets[j]);
            }
        }
    }
    const std::size_t mask = mask_of(targets, num_qubits);
    std::vector<Complex> in(local);
    for (std::size_t base = 0; base < amplitudes.size(); ++base) {
        if ((base & mask) != 0) {
            continue;
        }
        for (std::size_t l = 0; l < local; ++l) {
            in[l] = amplitudes[base | offset[l]];
        }
        for (std::size_t r = 0; r < local; ++r) {
            Complex acc = 0.0;
            for (std::size_t c = 0; c < local; ++c) {
                acc += u(r, c) * in[c];
            }
            amplitudes[base | offset[r]] = acc;
        }
    }
}

}  // namespace detail

PureState apply_local_unitary(const PureState& state, const UnitaryMatrix& u,
                              std::span<const std::size_t> targets) {
    if (targets.empty()) {
        throw InvalidArgument("apply_local_unitary: empty target list");
    }
    check_qubit_list(targets, state.num_qubits(), "apply_local_unitary");
    if (u.dim() != (std::size_t{1} << targets.size())) {
        throw InvalidArgument("apply_local_unitary: unitary dimension does not match 2^|targets|");
    }
    std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
    detail::apply_unitary_inplace(amps, state.num_qubits(), u.matrix(), targets);
    return state.evolved(std::move(amps));
}

DensityMatrix partial_trace(const PureState& state, std::span<const std::size_t> keep) {
    if (keep.empty()) {
        throw InvalidArgument("partial_trace: keep set must be nonempty");
    }
    const std::size_t n = state.num_qubits();
    check_qubit_list(keep, n, "partial_trace");
    std::vector<std::size_t> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    const std::size_t k = kept.size();
    const std::size_t dk = std::size_t{1} << k;
    const std::size_t dr = std::size_t{1} << (n - k);

    std::vector<std::size_t> rest;
    for (std::size_t q = 0; q < n; ++q) {
        if (!std::binary_search(kept.begin(), kept.end(), q)) {
            rest.push_back(q);
        }
    }
    // Amplitudes reshaped to a dk x dr matrix; rho = M M^dagger.
    std::vector<Complex> m(dk * dr);
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        std::size_t a = 0;
        for (std::size_t j = 0; j < k; ++j) {
            a = (a << 1) | ((i >> (n - 1 - kept[j])) & 1U);
        }
        std::size_t r = 0;
        for (std::size_t j = 0; j < rest.size(); ++j) {
            r = (r << 1) | ((i >> (n - 1 - rest[j])) & 1U);
        }
        m[a * dr + r] = amps[i];
    }
    Matrix rho(dk, dk);
    for (std::size_t a = 0; a < dk; ++a) {
        for (std::size_t b = a; b < dk; ++b) {
            Complex acc = 0.0;
            for (std::size_t r = 0; r < dr; ++r) {
                acc += m[a * dr + r] * std::conj(m[b * dr + r]);
            }
            rho(a, b) = acc;
            rho(b, a) = std::conj(acc);
        }
        rho(a, a) = rho(a, a).real();
    }
    // Trace equals the squared norm, which PureState keeps within 1e-10 of one.
    return DensityMatrix(std::move(rho), DensityMatrix::Check::structural);
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
    if (keep.empty()) {
        throw InvalidArgument("partial_trace: keep set must be nonempty");
    }
    const std::size_t n = rho.num_qubits();
    check_qubit_list(keep, n, "partial_trace");
    std::vector<std::size_t> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    const std::size_t k = kept.size();
    const std::size_t dk = std::size_t{1} << k;
    const std::size_t keep_mask = mask_of(kept, n);
    auto local_index = [&](std::size_t i) {
        std::size_t a = 0;
        for (std::size_t j = 0; j < k; ++j) {
            a = (a << 1) | ((i >> (n - 1 - kept[j])) & 1U);
        }
        return a;
    };
    Matrix out(dk, dk);
    const std::size_t d = rho.dim();
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if ((i & ~keep_mask) == (j & ~keep_mask)) {
                out(local_index(i), local_index(j)) += rho(i, j);
            }
        }
    }
    return DensityMatrix(std::move(out), DensityMatrix::Check::structural);
}

Matrix partial_transpose(const Matrix& rho, std::span<const std::size_t> subsystem, std::size_t num_qubits) {
    if (!rho.square() || rho.rows() != (std::size_t{1} << num_qubits)) {
        throw InvalidArgument("partial_transpose: matrix shape does not match register");
    }
    if (subsystem.empty() || subsystem.size() >= num_qubits) {
        throw InvalidArgument("partial_transpose: subsystem must be a proper nonempty subset");
    }
    check_qubit_list(subsystem, num_qubits, "partial_transpose");
    const std::size_t mask = mask_of(subsystem, num_qubits);
    const std::size_t d = rho.rows();
    Matrix out(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const std::size_t ii = (i & ~mask) | (j & mask);
            const std::size_t jj = (j & ~mask) | (i & mask);
            out(i, j) = rho(ii, jj);
        }
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const Matrix& m) { return solve_hermitian(m, false).values; }

EigenSystem hermitian_eigensystem(const Matrix& m) { return solve_hermitian(m, true); }

}  // namespace collide
