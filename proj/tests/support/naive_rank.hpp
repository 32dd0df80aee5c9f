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

#ifndef LAMPRANK_TESTS_NAIVE_RANK_HPP
#define LAMPRANK_TESTS_NAIVE_RANK_HPP

#include "lamprank/matrix.hpp"

namespace test_support {

// Textbook Gauss-Jordan elimination with field division; deliberately kept
// independent of the production elimination path.
inline unsigned naive_rank(lamprank::ExactMatrix M) {
  using lamprank::FieldElement;
  unsigned rank = 0;
  for (unsigned col = 0; col < M.cols() && rank < M.rows(); ++col) {
    unsigned pivot = M.rows();
    for (unsigned i = rank; i < M.rows(); ++i)
      if (!M.at(i, col).is_zero()) {
        pivot = i;
        break;
      }
    if (pivot == M.rows()) continue;
    for (unsigned j = 0; j < M.cols(); ++j) std::swap(M.at(pivot, j), M.at(rank, j));
    FieldElement inv = M.at(rank, col).inverse();
    for (unsigned j = 0; j < M.cols(); ++j) M.at(rank, j) = M.at(rank, j) * inv;
    for (unsigned i = 0; i < M.rows(); ++i) {
      if (i == rank || M.at(i, col).is_zero()) continue;
      FieldElement f = M.at(i, col);
      for (unsigned j = 0; j < M.cols(); ++j) M.at(i, j) = M.at(i, j) - f * M.at(rank, j);
    }
    ++rank;
  }
  return rank;
}

}  // namespace test_support

#endif
