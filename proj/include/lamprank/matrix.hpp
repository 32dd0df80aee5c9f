/*
 * Copyright 2026 the lamprank authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LAMPRANK_MATRIX_HPP
#define LAMPRANK_MATRIX_HPP

#include "lamprank/field.hpp"

namespace lamprank {

// Dense matrix over an exact field.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(unsigned rows, unsigned cols, const FieldContextPtr& K);
  static ExactMatrix identity(unsigned n, const FieldContextPtr& K);

  unsigned rows() const { return rows_; }
  unsigned cols() const { return cols_; }
  const FieldContextPtr& field() const { return field_; }
  const FieldElement& at(unsigned i, unsigned j) const { return data_[i * cols_ + j]; }
  FieldElement& at(unsigned i, unsigned j) { return data_[i * cols_ + j]; }

  ExactMatrix operator+(const ExactMatrix& o) const;
  ExactMatrix operator-(const ExactMatrix& o) const;
  ExactMatrix operator*(const ExactMatrix& o) const;
  ExactMatrix scaled(const FieldElement& c) const;
  ExactMatrix conj_transpose() const;
  ExactMatrix pow(unsigned e) const;
  bool is_zero() const;
  bool operator==(const ExactMatrix& o) const;
  std::string to_string() const;

 private:
  unsigned rows_ = 0, cols_ = 0;
  FieldContextPtr field_;
  std::vector<FieldElement> data_;
};

// Exact rank. Rationals and cyclotomic entries go through fraction-free
// (Bareiss) elimination to control coefficient growth; finite fields use plain
// elimination.
unsigned matrix_rank(const ExactMatrix& M);

// Rank with an early exit for triangular matrices with nowhere-zero diagonal.
unsigned matrix_rank_banded_hint(const ExactMatrix& M);

// Pattern check: A strictly lower triangular n x n with A_ij = 0 whenever
// i <= n-r and j >= r+1 (1-based), i.e. only the bottom-left corner beyond the
// first r columns may be populated. PatternViolated if the input breaks it.
// Returns whether A^(2r+1) = 0 (always true for valid inputs).
bool nilpotency_check(const ExactMatrix& A, unsigned r);

}  // namespace lamprank

#endif
