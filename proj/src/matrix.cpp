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

#include "lamprank/matrix.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>

namespace lamprank {

ExactMatrix::ExactMatrix(unsigned rows, unsigned cols, const FieldContextPtr& K)
    : rows_(rows), cols_(cols), field_(K),
      data_(static_cast<std::size_t>(rows) * cols, K->zero()) {}

ExactMatrix ExactMatrix::identity(unsigned n, const FieldContextPtr& K) {
  ExactMatrix m(n, n, K);
  for (unsigned i = 0; i < n; ++i) m.at(i, i) = K->one();
  return m;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(Err::IndexOutOfRange, "matrix shape mismatch");
  ExactMatrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = r.data_[i] + o.data_[i];
  return r;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(Err::IndexOutOfRange, "matrix shape mismatch");
  ExactMatrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = r.data_[i] - o.data_[i];
  return r;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
  if (cols_ != o.rows_) fail(Err::IndexOutOfRange, "matrix shape mismatch");
  ExactMatrix r(rows_, o.cols_, field_);
  for (unsigned i = 0; i < rows_; ++i)
    for (unsigned k = 0; k < cols_; ++k) {
      const FieldElement& a = at(i, k);
      if (a.is_zero()) continue;
      for (unsigned j = 0; j < o.cols_; ++j) {
        const FieldElement& b = o.at(k, j);
        if (b.is_zero()) continue;
        r.at(i, j) = r.at(i, j) + a * b;
      }
    }
  return r;
}

ExactMatrix ExactMatrix::scaled(const FieldElement& c) const {
  ExactMatrix r = *this;
  for (auto& x : r.data_) x = x * c;
  return r;
}

ExactMatrix ExactMatrix::conj_transpose() const {
  ExactMatrix r(cols_, rows_, field_);
  for (unsigned i = 0; i < rows_; ++i)
    for (unsigned j = 0; j < cols_; ++j) r.at(j, i) = at(i, j).conj();
  return r;
}

ExactMatrix ExactMatrix::pow(unsigned e) const {
  if (rows_ != cols_) fail(Err::IndexOutOfRange, "powers need a square matrix");
  ExactMatrix r = identity(rows_, field_);
  for (unsigned i = 0; i < e; ++i) r = r * (*this);
  return r;
}

bool ExactMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const FieldElement& x) { return x.is_zero(); });
}

bool ExactMatrix::operator==(const ExactMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (!(data_[i] == o.data_[i])) return false;
  return true;
}

std::string ExactMatrix::to_string() const {
  std::string s = "[";
  for (unsigned i = 0; i < rows_; ++i) {
    s += i ? "; " : "";
    for (unsigned j = 0; j < cols_; ++j) {
      if (j) s += ", ";
      s += at(i, j).to_string();
    }
  }
  return s + "]";
}

namespace {

// Machine-word fraction-free elimination; bails out to exact arithmetic when an
// intermediate minor leaves the guarded range.
std::optional<unsigned> rank_bareiss_small(std::vector<long long> a, unsigned rows,
                                           unsigned cols) {
  using i128 = __int128;
  constexpr long long kLim = 1ll << 62;
  auto at = [&](unsigned i, unsigned j) -> long long& { return a[i * cols + j]; };
  unsigned rank = 0;
  long long prev = 1;
  for (unsigned col = 0; col < cols && rank < rows; ++col) {
    unsigned pivot = rows;
    for (unsigned i = rank; i < rows; ++i)
      if (at(i, col) != 0) {
        pivot = i;
        break;
      }
    if (pivot == rows) continue;
    if (pivot != rank)
      for (unsigned j = 0; j < cols; ++j) std::swap(at(pivot, j), at(rank, j));
    long long p = at(rank, col);
    for (unsigned i = rank + 1; i < rows; ++i) {
      long long head = at(i, col);
      for (unsigned j = col; j < cols; ++j) {
        i128 v = static_cast<i128>(p) * at(i, j) - static_cast<i128>(head) * at(rank, j);
        v /= prev;  // exact by the minor identity
        if (v >= kLim || v <= -kLim) return std::nullopt;
        at(i, j) = static_cast<long long>(v);
      }
    }
    prev = p;
    ++rank;
  }
  return rank;
}

unsigned rank_bareiss_mpz(std::vector<Int> a, unsigned rows, unsigned cols) {
  auto at = [&](unsigned i, unsigned j) -> Int& { return a[i * cols + j]; };
  unsigned rank = 0;
  Int prev(1);
  for (unsigned col = 0; col < cols && rank < rows; ++col) {
    unsigned pivot = rows;
    for (unsigned i = rank; i < rows; ++i)
      if (at(i, col) != 0) {
        pivot = i;
        break;
      }
    if (pivot == rows) continue;
    if (pivot != rank)
      for (unsigned j = 0; j < cols; ++j) std::swap(at(pivot, j), at(rank, j));
    Int p = at(rank, col);
    for (unsigned i = rank + 1; i < rows; ++i) {
      Int head = at(i, col);
      for (unsigned j = col; j < cols; ++j) {
        Int v = p * at(i, j) - head * at(rank, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        at(i, j) = std::move(v);
      }
    }
    prev = p;
    ++rank;
  }
  return rank;
}

// Rational entries: clear denominators per row, then eliminate over the
// integers (machine words while they last).
unsigned rank_rational(const ExactMatrix& M) {
  unsigned rows = M.rows(), cols = M.cols();
  std::vector<Int> z(static_cast<std::size_t>(rows) * cols);
  bool small = true;
  for (unsigned i = 0; i < rows; ++i) {
    Int lcm(1);
    for (unsigned j = 0; j < cols; ++j) {
      const Rat& r = M.at(i, j).rational_value();
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), r.get_den().get_mpz_t());
    }
    for (unsigned j = 0; j < cols; ++j) {
      const Rat& r = M.at(i, j).rational_value();
      Int v = r.get_num() * (lcm / r.get_den());
      if (!v.fits_slong_p() || std::llabs(v.get_si()) >= (1ll << 31)) small = false;
      z[i * cols + j] = std::move(v);
    }
  }
  if (small) {
    std::vector<long long> w(z.size());
    for (std::size_t k = 0; k < z.size(); ++k) w[k] = z[k].get_si();
    if (auto r = rank_bareiss_small(std::move(w), rows, cols)) return *r;
  }
  return rank_bareiss_mpz(std::move(z), rows, cols);
}

// Fraction-free elimination: after step k every entry is a (k+1)x(k+1) minor of
// the input, and the division by the previous pivot is exact in the base ring.
unsigned rank_bareiss(ExactMatrix M) {
  unsigned rows = M.rows(), cols = M.cols();
  unsigned rank = 0;
  FieldElement prev = M.field()->one();
  for (unsigned col = 0; col < cols && rank < rows; ++col) {
    unsigned pivot = rows;
    for (unsigned i = rank; i < rows; ++i)
      if (!M.at(i, col).is_zero()) {
        pivot = i;
        break;
      }
    if (pivot == rows) continue;
    if (pivot != rank)
      for (unsigned j = 0; j < cols; ++j) std::swap(M.at(pivot, j), M.at(rank, j));
    const FieldElement p = M.at(rank, col);
    for (unsigned i = rank + 1; i < rows; ++i) {
      FieldElement head = M.at(i, col);
      for (unsigned j = col; j < cols; ++j)
        M.at(i, j) = (p * M.at(i, j) - head * M.at(rank, j)) / prev;
    }
    prev = p;
    ++rank;
  }
  return rank;
}

unsigned rank_plain(ExactMatrix M) {
  unsigned rows = M.rows(), cols = M.cols();
  unsigned rank = 0;
  for (unsigned col = 0; col < cols && rank < rows; ++col) {
    unsigned pivot = rows;
    for (unsigned i = rank; i < rows; ++i)
      if (!M.at(i, col).is_zero()) {
        pivot = i;
        break;
      }
    if (pivot == rows) continue;
    if (pivot != rank)
      for (unsigned j = 0; j < cols; ++j) std::swap(M.at(pivot, j), M.at(rank, j));
    FieldElement inv = M.at(rank, col).inverse();
    for (unsigned i = rank + 1; i < rows; ++i) {
      if (M.at(i, col).is_zero()) continue;
      FieldElement f = M.at(i, col) * inv;
      for (unsigned j = col; j < cols; ++j) M.at(i, j) = M.at(i, j) - f * M.at(rank, j);
    }
    ++rank;
  }
  return rank;
}

}  // namespace

unsigned matrix_rank(const ExactMatrix& M) {
  if (M.rows() == 0 || M.cols() == 0) return 0;
  FieldKind k = M.field()->kind();
  if (k == FieldKind::PrimeField || k == FieldKind::FrobeniusField) return rank_plain(M);
  if (k == FieldKind::Rational) return rank_rational(M);
  return rank_bareiss(M);
}

unsigned matrix_rank_banded_hint(const ExactMatrix& M) {
  if (M.rows() != M.cols()) return matrix_rank(M);
  unsigned n = M.rows();
  bool lower = true, upper = true, diag_full = true;
  for (unsigned i = 0; i < n && (lower || upper); ++i) {
    if (M.at(i, i).is_zero()) {
      diag_full = false;
      break;
    }
    for (unsigned j = i + 1; j < n; ++j) {
      if (lower && !M.at(i, j).is_zero()) lower = false;
      if (upper && !M.at(j, i).is_zero()) upper = false;
      if (!lower && !upper) break;
    }
  }
  if (diag_full && (lower || upper)) return n;
  return matrix_rank(M);
}

bool nilpotency_check(const ExactMatrix& A, unsigned r) {
  if (A.rows() != A.cols()) fail(Err::PatternViolated, "pattern needs a square matrix");
  unsigned n = A.rows();
  if (r == 0 || r >= n) fail(Err::PatternViolated, "need 0 < r < n");
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      bool allowed = j < i;                       // strictly lower triangular
      if (i + 1 <= n - r && j + 1 >= r + 1) allowed = false;  // 1-based corner condition
      if (!allowed && !A.at(i, j).is_zero())
        fail(Err::PatternViolated, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                       ") breaks the corner pattern");
    }
  return A.pow(2 * r + 1).is_zero();
}

}  // namespace lamprank
