// Copyright 2026 The Grable Authors
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

#include "grable/dense.h"

#include <algorithm>

namespace grable {

void Matrix::SetZero() { std::fill(data_.begin(), data_.end(), 0.0); }

Matrix Matrix::Transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

void AddProduct(const Matrix& x, const Matrix& w, Matrix& out, bool skip_zero_rows) {
  const std::size_t k_dim = x.cols();
  const std::size_t n_out = out.cols();
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const double* xr = x.data().data() + r * k_dim;
    if (skip_zero_rows && std::all_of(xr, xr + k_dim, [](double v) { return v == 0.0; })) {
      continue;
    }
    double* o = out.data().data() + r * n_out;
    for (std::size_t k = 0; k < k_dim; ++k) {
      const double a = xr[k];
      if (a == 0.0) continue;
      const double* wk = w.data().data() + k * n_out;
      for (std::size_t c = 0; c < n_out; ++c) o[c] += a * wk[c];
    }
  }
}

void AddTransposedProduct(const Matrix& x, const Matrix& dy, Matrix& grad_w) {
  const std::size_t n_out = dy.cols();
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const double* d = dy.data().data() + r * n_out;
    for (std::size_t k = 0; k < x.cols(); ++k) {
      const double a = x(r, k);
      if (a == 0.0) continue;
      double* g = grad_w.data().data() + k * n_out;
      for (std::size_t c = 0; c < n_out; ++c) g[c] += a * d[c];
    }
  }
}

void Axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace grable
