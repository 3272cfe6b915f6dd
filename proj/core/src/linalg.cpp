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

#include "qmetro/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qmetro/errors.hpp"

namespace qmetro {

CMatrix::CMatrix(std::size_t dim, std::vector<Complex> row_major)
    : dim_(dim), data_(std::move(row_major)) {
  if (data_.size() != dim * dim) throw SizeError("matrix data size != dim^2");
}

CMatrix CMatrix::identity(std::size_t dim) {
  CMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(const std::vector<Complex>& diag) {
  CMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (o.dim_ != dim_) throw SizeError("matrix dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (o.dim_ != dim_) throw SizeError("matrix dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
  for (auto& x : data_) x *= s;
  return *this;
}

double CMatrix::hermiticity_defect() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = r; c < dim_; ++c) {
      worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    }
  }
  return worst;
}

double CMatrix::unitarity_defect() const {
  return max_abs_diff(adjoint() * (*this), identity(dim_));
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(Complex s, CMatrix a) { return a *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != b.dim()) throw SizeError("matrix dimension mismatch");
  const std::size_t n = a.dim();
  CMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != b.dim()) throw SizeError("matrix dimension mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  }
  return worst;
}

HermitianEigen hermitian_eigen(const CMatrix& input, double tol, int max_sweeps) {
  const std::size_t n = input.dim();
  CMatrix a = input;
  CMatrix v = CMatrix::identity(n);

  double frob = 0.0;
  for (const auto& x : a.data()) frob += std::norm(x);
  frob = std::sqrt(frob);
  const double threshold = std::max(tol * frob, 1e-300);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        if (r != c) s += std::norm(a(r, c));
      }
    }
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < max_sweeps && off_norm() > threshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag < 1e-300) continue;
        // Write a_pq = |a_pq| e^{i alpha}; the rotation below zeroes it.
        const Complex phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = 0.5 * std::atan2(2.0 * mag, aqq - app);
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        // Columns: J = [[c, s e^{i alpha}], [-s e^{-i alpha}, c]] acting on (p, q).
        const Complex jpq = s * phase;
        const Complex jqp = -s * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * c + akq * jqp;
          a(k, q) = akp * jpq + akq * c;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * c + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * c;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  HermitianEigen out{std::vector<double>(n), CMatrix(n)};
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]).real();
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = v(k, order[j]);
  }
  return out;
}

CMatrix hermitian_function(const HermitianEigen& eig,
                           Complex (*f)(double, double), double param) {
  const std::size_t n = eig.values.size();
  std::vector<Complex> fl(n);
  for (std::size_t j = 0; j < n; ++j) fl[j] = f(eig.values[j], param);
  CMatrix out(n);
  const CMatrix& v = eig.vectors;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      Complex s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += v(r, j) * fl[j] * std::conj(v(c, j));
      out(r, c) = s;
    }
  }
  return out;
}

}  // namespace qmetro
