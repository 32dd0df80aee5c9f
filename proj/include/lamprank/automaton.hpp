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

#ifndef LAMPRANK_AUTOMATON_HPP
#define LAMPRANK_AUTOMATON_HPP

#include "lamprank/series.hpp"

namespace lamprank {

// Linear representation of a noncommutative rational series: coefficient of a
// word w equals entry * mu(w) * exit.
class WeightedAutomaton {
 public:
  WeightedAutomaton(unsigned dim, unsigned letters, const FieldContextPtr& K);

  static WeightedAutomaton constant(const FieldElement& c, unsigned letters);
  static WeightedAutomaton letter(unsigned index, unsigned letters, const FieldContextPtr& K);

  unsigned dimension() const { return dim_; }
  unsigned letter_count() const { return letters_; }
  const FieldContextPtr& field() const { return field_; }
  ExactMatrix& entry() { return entry_; }
  ExactMatrix& exit() { return exit_; }
  ExactMatrix& transition(unsigned a) { return trans_[a]; }
  const ExactMatrix& transition(unsigned a) const { return trans_[a]; }

  FieldElement coefficient(const std::vector<unsigned>& word) const;

  WeightedAutomaton operator+(const WeightedAutomaton& o) const;  // direct sum
  WeightedAutomaton cauchy(const WeightedAutomaton& o) const;     // concatenation product
  WeightedAutomaton hadamard(const WeightedAutomaton& o) const;   // tensor construction
  WeightedAutomaton star() const;  // (1 - r)^(-1); NotProper unless coefficient of the
                                   // empty word vanishes

 private:
  unsigned dim_, letters_;
  FieldContextPtr field_;
  ExactMatrix entry_;                // 1 x dim
  std::vector<ExactMatrix> trans_;   // dim x dim per letter
  ExactMatrix exit_;                 // dim x 1
};

// Evaluate the series into the special-term algebra: letters map to pure terms
// (injectively) and words with total degree <= max_degree accumulate.
SpecialSeries automaton_to_special(const WeightedAutomaton& r,
                                   const std::vector<PureTerm>& letter_terms,
                                   const ComponentSetPtr& cs);

}  // namespace lamprank

#endif
