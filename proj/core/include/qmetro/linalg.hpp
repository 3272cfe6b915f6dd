// Copyright 2026 The qmetro Authors.
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

#include <complex>
#include <cstddef>
#include <vector>

namespace qmetro {

using Complex = std::complex<double>;

/// Dense row-major complex square matrix for small (dim <= 64) problems.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
  CMatrix(std::size_t dim, std::vector<Complex> row_major);

  static CMatrix identity(std::size_t dim);
  static CMatrix diagonal(const std::vector<Complex>& diag);

  std::size_t dim() const noexcept { return dim_; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * dim_ + c];
  }
  const std::vector<Complex>& data() const noexcept { return data_; }

  CMatrix adjoint() const;
  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(Complex s);

  /// Largest |a_ij - conj(a_ji)|.
  double hermiticity_defect() const;
  /// Largest entry of |U^dagger U - I|.
  double unitarity_defect() const;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(Complex s, CMatrix a);

/// Largest absolute entry of a - b.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

struct HermitianEigen {
  std::vector<double> values;  ///< ascending
  CMatrix vectors;             ///< column j is the eigenvector of values[j]
};

/// Cyclic complex Jacobi sweeps until the off-diagonal Frobenius norm falls
/// below tol * ||A||_F (absolute 1e-300 floor). Input must be Hermitian.
HermitianEigen hermitian_eigen(const CMatrix& a, double tol = 1e-14,
                               int max_sweeps = 100);

/// V f(lambda) V^dagger for a Hermitian eigendecomposition.
CMatrix hermitian_function(const HermitianEigen& eig,
                           Complex (*f)(double, double), double param);

}  // namespace qmetro
