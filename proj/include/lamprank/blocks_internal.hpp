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

#ifndef LAMPRANK_BLOCKS_INTERNAL_HPP
#define LAMPRANK_BLOCKS_INTERNAL_HPP

#include "lamprank/blocks.hpp"

namespace lamprank {

// Pieces shared between the block builders and the bracket engine.

struct MonomialCertificate {
  bool in_base = false;        // coefficient lies in the degree-zero subalgebra
  bool exact = false;          // monomial lies in the generated subalgebra as is
  bool substitutable = false;  // the shift rewrite lands it there
};

MonomialCertificate certify_monomial(const LocallyConstantFn& f, int d,
                                     const PartitionScheme& scheme);
bool ideal_condition_holds(const LocallyConstantFn& f, int d, const PartitionScheme& scheme);

std::vector<Clopen> component_translates(const PartitionScheme& scheme, const WComponent& comp);
FieldElement eval_on_translate(const LocallyConstantFn& f, const Clopen& C);

// Dense block of one component; with `substitute` the out-of-range diagonal
// contributions are dropped (shift-rewrite semantics) instead of rejected.
ExactMatrix component_block(const CrossedMatrix& a, const PartitionScheme& scheme,
                            const WComponent& comp, bool substitute);

// Exact rank of one substituted component block, with sparsity shortcuts.
unsigned component_rank(const CrossedMatrix& a, const PartitionScheme& scheme,
                        const WComponent& comp);

}  // namespace lamprank

#endif
