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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace collide {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Sizes in this project stay small (<= 256 rows),
/// so there is no expression-template machinery; every operation returns a value.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);
    Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static Matrix identity(std::size_t dim);
    static Matrix diagonal(std::span<const double> values);
    /// |v><v| for a column vector v.
    static Matrix outer(std::span<const Complex> v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Complex> data() const { return data_; }
    std::span<Complex> data() { return data_; }

    Matrix adjoint() const;
    Matrix transpose() const;
    Matrix conjugate() const;
    Complex trace() const;

    /// Largest elementwise modulus of (this - other).
    double max_abs_diff(const Matrix& other) const;
    /// Largest elementwise modulus of (this - this^dagger).
    double hermiticity_defect() const;
    bool all_finite() const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(Complex s);

    std::vector<Complex> apply(std::span<const Complex> v) const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Complex s, Matrix a);

/// Kronecker product: (a (x) b)[i*db + k, j*db + l] = a[i,j] * b[k,l].
Matrix tensor_product(const Matrix& a, const Matrix& b);

/// Pauli matrices sigma_0..sigma_3 (identity, x, y, z).
const Matrix& pauli(int k);

}  // namespace collide
