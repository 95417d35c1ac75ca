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

#ifndef GRABLE_DENSE_H_
#define GRABLE_DENSE_H_

#include <cstddef>
#include <span>
#include <vector>

namespace grable {

// Row-major dense matrix of doubles.
//
// The product kernels accumulate every output element in a fixed order that
// does not depend on the number of rows, so a row's result is bitwise
// identical whether it is computed alone or inside a larger batch.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  void SetZero();
  Matrix Transposed() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// out(r, :) += x(r, :) * w for every r, with w shaped (x.cols, out.cols).
// Rows of x that are entirely zero are skipped when `skip_zero_rows`.
void AddProduct(const Matrix& x, const Matrix& w, Matrix& out,
                bool skip_zero_rows = false);

// grad_w += x^T * dy.
void AddTransposedProduct(const Matrix& x, const Matrix& dy, Matrix& grad_w);

// y += alpha * x over equal-length spans.
void Axpy(double alpha, std::span<const double> x, std::span<double> y);

}  // namespace grable

#endif  // GRABLE_DENSE_H_
