// Copyright 2026 The rainbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rainbound::linalg {

// Dense row-major matrix. Sized for K x p sensitivity matrices and p x p FIMs
// (p <= 4), so no expression templates or blocking.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<double> column(std::size_t c) const;
  void set_column(std::size_t c, std::span<const double> values);
  Matrix transpose() const;
  // Principal submatrix over the given row/column indices.
  Matrix submatrix(std::span<const std::size_t> indices) const;
  // Columns selected by index, all rows kept.
  Matrix select_columns(std::span<const std::size_t> indices) const;

  std::span<const double> data() const noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& m);

// A^T A without forming the transpose.
Matrix gram(const Matrix& a);

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

bool is_symmetric(const Matrix& m, double tol);
bool all_finite(const Matrix& m);

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotation, ascending.
// Converges when the off-diagonal Frobenius norm drops below tol * ||A||_F.
std::vector<double> symmetric_eigenvalues(const Matrix& m, double tol = 1e-12, int max_sweeps = 100);

// Inverse of a symmetric positive definite matrix via Cholesky.
// Throws NumericError when the matrix is not positive definite.
Matrix spd_inverse(const Matrix& m);

// Solve A x = b for symmetric positive definite A.
std::vector<double> spd_solve(const Matrix& a, std::span<const double> b);

}  // namespace rainbound::linalg
