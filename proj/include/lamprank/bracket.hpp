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

#ifndef LAMPRANK_BRACKET_HPP
#define LAMPRANK_BRACKET_HPP

#include "lamprank/blocks.hpp"
#include "lamprank/group_algebra.hpp"

namespace lamprank {

// Rigorous lower/upper bounds for the canonical Sylvester rank, with full
// provenance. The raw bracket satisfies upper - lower =
// ambient * tail_mass + 2 * substitution_error before clamping into [0, k].
struct RankBracket {
  Rat lower, upper;
  unsigned ambient = 1;  // k for k x k matrices
  int level = -1;
  int cutoff = 0;
  Rat covered_mass, tail_mass, substitution_error;
  std::size_t component_count = 0;
  long wall_ms = 0;

  Rat width() const { return upper - lower; }
  bool contains(const Rat& v) const { return lower <= v && v <= upper; }
};

// Number of worker threads; 0 = hardware concurrency. Results are independent
// of the thread count: per-component terms are folded in component order.
RankBracket sylvester_bracket(const CrossedMatrix& a, const ComponentSetPtr& cs,
                              unsigned threads = 1);
RankBracket sylvester_bracket(const CrossedElement& a, const ComponentSetPtr& cs,
                              unsigned threads = 1);

// dim ker A = k - rank(A): the bracket [k - upper, k - lower] for matrices
// over the lamplighter group algebra, routed through the transform.
RankBracket betti_bracket(const std::vector<std::vector<GroupAlgebraElement>>& A,
                          const SchemePtr& scheme, int cutoff, unsigned threads = 1);

struct ConvergeResult {
  RankBracket bracket;
  bool budget_exceeded = false;
  std::string note;
};

// Refine until the bracket width reaches the target: the level rises while the
// rewrite error alone blocks the target, the cutoff grows otherwise. Successive
// brackets at a fixed level are nested.
ConvergeResult converge(const CrossedMatrix& a, const Rat& target_width, int max_level,
                        int max_cutoff, const SchemePtr& initial_scheme, unsigned threads = 1,
                        int start_cutoff = 8);

// Same driver for group-algebra input (the scheme is rebuilt per level).
ConvergeResult converge_group(const std::vector<std::vector<GroupAlgebraElement>>& A,
                              const Rat& target_width, int start_level, int max_level,
                              int start_cutoff, int max_cutoff, LampConvention convention,
                              unsigned threads, bool betti);

}  // namespace lamprank

#endif
