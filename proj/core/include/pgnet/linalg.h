// Copyright 2026 The pgnet Authors.
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

#ifndef PGNET_LINALG_H_
#define PGNET_LINALG_H_

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace pgnet {

using Vector = std::vector<double>;

// Dense row-major matrix. Sizes in this library are desk-scale (n <= ~500).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix Identity(std::size_t n);
  static Matrix FromRowMajor(std::size_t rows, std::size_t cols,
                             std::span<const double> values);
  static Matrix Diagonal(std::span<const double> diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  const std::vector<double>& data() const { return data_; }

  Matrix transpose() const;
  Vector operator*(std::span<const double> x) const;
  Matrix operator*(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;

  bool is_symmetric(double tol = 0.0) const;
  double max_abs() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double norm_inf(std::span<const double> v);
double norm2(std::span<const double> v);
double dot(std::span<const double> a, std::span<const double> b);
// max_i |a_i - b_i|
double distance_inf(std::span<const double> a, std::span<const double> b);

// LU factorisation with partial (row) pivoting, PA = LU.
class LuDecomposition {
 public:
  // Throws ComputationError when a pivot magnitude falls below
  // pivot_threshold * max|A|.
  explicit LuDecomposition(const Matrix& a, double pivot_threshold = 1e-12);

  Vector solve(std::span<const double> b) const;
  Matrix inverse() const;
  // kappa_1(A) = |A|_1 |A^-1|_1, computed from the explicit inverse.
  double condition_number_1() const;
  double determinant() const;

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
  int sign_ = 1;
  double norm1_ = 0.0;
};

struct SymmetricEigenvalues {
  Vector values;  // ascending
  int sweeps = 0;
};

// Cyclic Jacobi rotations; converges when the off-diagonal Frobenius mass
// drops below tol times the matrix Frobenius norm.
SymmetricEigenvalues jacobi_eigenvalues(const Matrix& sym, double tol = 1e-12,
                                        int max_sweeps = 100);

struct PowerIterationResult {
  double sigma_max = 0.0;
  int iterations = 0;
};

// Largest singular value by power iteration on M^T M from the all-ones
// vector. Stops when the eigen-residual of M^T M is below tol (relative);
// throws ComputationError after max_iter iterations.
PowerIterationResult power_sigma_max(const Matrix& m, double tol = 1e-10,
                                     int max_iter = 10000);

struct SpectralBounds {
  double sigma_max = 0.0;
  // Extreme eigenvalues (min, max) when the input is symmetric.
  std::optional<std::pair<double, double>> sym_eigs;
};

// Power iteration, falling back to Jacobi on M^T M when it stalls at the
// iteration cap.
SpectralBounds spectral_bounds(const Matrix& m, double tol = 1e-10);

}  // namespace pgnet

#endif  // PGNET_LINALG_H_
