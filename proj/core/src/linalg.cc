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

#include "pgnet/linalg.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pgnet/error.h"

namespace pgnet {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidArgument("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::Identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::FromRowMajor(std::size_t rows, std::size_t cols,
                            std::span<const double> values) {
  if (values.size() != rows * cols) {
    throw InvalidArgument("expected " + std::to_string(rows * cols) +
                          " entries, got " + std::to_string(values.size()));
  }
  Matrix m(rows, cols);
  std::copy(values.begin(), values.end(), m.data_.begin());
  return m;
}

Matrix Matrix::Diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Vector Matrix::operator*(std::span<const double> x) const {
  if (x.size() != cols_) throw InvalidArgument("matrix-vector size mismatch");
  Vector y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const double* r = data_.data() + i * cols_;
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += r[j] * x[j];
    y[i] = s;
  }
  return y;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw InvalidArgument("matrix product mismatch");
  Matrix p(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) p(i, j) += a * other(k, j);
    }
  return p;
}

Matrix Matrix::operator-(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw InvalidArgument("matrix difference mismatch");
  Matrix d(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k)
    d.data_[k] = data_[k] - other.data_[k];
  return d;
}

bool Matrix::is_symmetric(double tol) const {
  if (!square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
  return true;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double norm_inf(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double distance_inf(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

LuDecomposition::LuDecomposition(const Matrix& a, double pivot_threshold)
    : lu_(a), perm_(a.rows()) {
  if (!a.square()) throw InvalidArgument("LU needs a square matrix");
  const std::size_t n = a.rows();
  std::iota(perm_.begin(), perm_.end(), 0);
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n; ++i) col += std::abs(a(i, j));
    norm1_ = std::max(norm1_, col);
  }
  const double floor = pivot_threshold * std::max(a.max_abs(), 1e-300);

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu_(i, k)) > std::abs(lu_(p, k))) p = i;
    if (std::abs(lu_(p, k)) <= floor) {
      throw ComputationError("singular matrix: pivot " + std::to_string(k) +
                             " below threshold");
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
      std::swap(perm_[k], perm_[p]);
      sign_ = -sign_;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      lu_(i, k) /= lu_(k, k);
      const double l = lu_(i, k);
      if (l == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= l * lu_(k, j);
    }
  }
}

Vector LuDecomposition::solve(std::span<const double> b) const {
  const std::size_t n = lu_.rows();
  if (b.size() != n) throw InvalidArgument("LU solve size mismatch");
  Vector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[perm_[i]];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * y[j];
    y[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = y[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * y[j];
    y[i] = s / lu_(i, i);
  }
  return y;
}

Matrix LuDecomposition::inverse() const {
  const std::size_t n = lu_.rows();
  Matrix inv(n, n);
  Vector e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    const Vector c = solve(e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = c[i];
    e[j] = 0.0;
  }
  return inv;
}

double LuDecomposition::condition_number_1() const {
  const Matrix inv = inverse();
  double inv_norm = 0.0;
  for (std::size_t j = 0; j < inv.cols(); ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < inv.rows(); ++i) col += std::abs(inv(i, j));
    inv_norm = std::max(inv_norm, col);
  }
  return norm1_ * inv_norm;
}

double LuDecomposition::determinant() const {
  double det = sign_;
  for (std::size_t i = 0; i < lu_.rows(); ++i) det *= lu_(i, i);
  return det;
}

SymmetricEigenvalues jacobi_eigenvalues(const Matrix& sym, double tol,
                                        int max_sweeps) {
  if (!sym.square()) throw InvalidArgument("Jacobi needs a square matrix");
  const std::size_t n = sym.rows();
  Matrix a = sym;
  // Symmetrise to absorb roundoff in inputs that are symmetric in exact
  // arithmetic.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double m = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = a(j, i) = m;
    }

  double total = 0.0;
  for (double v : a.data()) total += v * v;
  const double target = tol * std::sqrt(total);

  SymmetricEigenvalues out;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * a(i, j) * a(i, j);
    if (std::sqrt(off) <= target) {
      out.sweeps = sweep;
      break;
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
    if (sweep + 1 == max_sweeps)
      throw ComputationError("Jacobi eigenvalue iteration did not converge");
  }
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = a(i, i);
  std::sort(out.values.begin(), out.values.end());
  return out;
}

namespace {

// y = M^T (M v)
Vector gram_apply(const Matrix& m, const Matrix& mt, std::span<const double> v) {
  return mt * (m * v);
}

}  // namespace

PowerIterationResult power_sigma_max(const Matrix& m, double tol,
                                     int max_iter) {
  PowerIterationResult out;
  const std::size_t n = m.cols();
  if (n == 0 || m.max_abs() == 0.0) return out;
  const Matrix mt = m.transpose();

  Vector v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  Vector y = gram_apply(m, mt, v);
  if (norm2(y) == 0.0) {
    // The all-ones start lies in the null space; restart from the unit
    // vector of the heaviest column.
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, j) * m(i, j);
      if (s > best_norm) best_norm = s, best = j;
    }
    std::fill(v.begin(), v.end(), 0.0);
    v[best] = 1.0;
    y = gram_apply(m, mt, v);
  }

  for (int it = 1; it <= max_iter; ++it) {
    const double lambda = dot(v, y);
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - lambda * v[i];
      res += r * r;
    }
    res = std::sqrt(res);
    const double ny = norm2(y);
    if (res <= tol * std::max(lambda, 1e-300)) {
      out.sigma_max = std::sqrt(std::max(lambda, 0.0));
      out.iterations = it;
      return out;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = y[i] / ny;
    y = gram_apply(m, mt, v);
  }
  throw ComputationError("power iteration did not converge in " +
                         std::to_string(max_iter) + " iterations");
}

SpectralBounds spectral_bounds(const Matrix& m, double tol) {
  for (double v : m.data())
    if (!std::isfinite(v)) throw InvalidArgument("non-finite matrix entry");
  SpectralBounds out;
  try {
    out.sigma_max = power_sigma_max(m, tol).sigma_max;
  } catch (const ComputationError&) {
    // Nearly tied top singular values stall the power method; the Gram
    // matrix spectrum settles it.
    const Vector gram = jacobi_eigenvalues(m.transpose() * m, 1e-14).values;
    out.sigma_max = std::sqrt(std::max(gram.back(), 0.0));
  }
  if (m.square() && m.is_symmetric()) {
    const auto eig = jacobi_eigenvalues(m, 1e-12);
    if (!eig.values.empty())
      out.sym_eigs = std::make_pair(eig.values.front(), eig.values.back());
  }
  return out;
}

}  // namespace pgnet
