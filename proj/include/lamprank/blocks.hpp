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

#ifndef LAMPRANK_BLOCKS_HPP
#define LAMPRANK_BLOCKS_HPP

#include "lamprank/crossed.hpp"
#include "lamprank/matrix.hpp"
#include "lamprank/scheme.hpp"

namespace lamprank {

// Square matrix over the crossed product (k = 1 for single elements).
class CrossedMatrix {
 public:
  CrossedMatrix(unsigned k, const SpaceSpec& spec, const FieldContextPtr& K);
  static CrossedMatrix scalar(CrossedElement a) {
    CrossedMatrix m(1, a.space(), a.field());
    m.at(0, 0) = std::move(a);
    return m;
  }

  unsigned size() const { return k_; }
  const SpaceSpec& space() const { return spec_; }
  const FieldContextPtr& field() const { return field_; }
  CrossedElement& at(unsigned i, unsigned j) { return entries_[i * k_ + j]; }
  const CrossedElement& at(unsigned i, unsigned j) const { return entries_[i * k_ + j]; }

  CrossedMatrix operator*(const CrossedMatrix& o) const;
  CrossedMatrix operator+(const CrossedMatrix& o) const;
  CrossedMatrix star() const;

 private:
  unsigned k_;
  SpaceSpec spec_;
  FieldContextPtr field_;
  std::vector<CrossedElement> entries_;
};

// Image of an element under the block representation: one exact k|W| x k|W|
// matrix per enumerated component. Missing components are unevaluated, never
// assumed zero.
class BlockElement {
 public:
  BlockElement(ComponentSetPtr cs, unsigned k, FieldContextPtr K);
  static BlockElement identity(const ComponentSetPtr& cs, unsigned k, const FieldContextPtr& K);

  const ComponentSetPtr& component_set() const { return cs_; }
  unsigned ambient_size() const { return k_; }
  const FieldContextPtr& field() const { return field_; }
  ExactMatrix& block(std::size_t idx) { return blocks_[idx]; }
  const ExactMatrix& block(std::size_t idx) const { return blocks_[idx]; }
  std::size_t count() const { return blocks_.size(); }

  BlockElement operator+(const BlockElement& o) const;
  BlockElement operator-(const BlockElement& o) const;
  BlockElement operator*(const BlockElement& o) const;
  BlockElement star() const;
  bool operator==(const BlockElement& o) const;
  bool is_zero() const;

 private:
  void check_compatible(const BlockElement& o) const;
  ComponentSetPtr cs_;
  unsigned k_;
  FieldContextPtr field_;
  std::vector<ExactMatrix> blocks_;
};

// chi(T^i(W)) t^(i-j), the (i,j) matrix unit of the component W.
CrossedElement matrix_unit(const ComponentSet& cs, std::size_t comp_idx, unsigned i, unsigned j,
                           const FieldContextPtr& K);

// Exact membership of a locally constant function in the degree-zero
// subalgebra generated by the scheme's partial isometries. Sound and complete
// for the lamplighter and odometer schemes; conservative for custom schemes.
bool in_base_subalgebra(const LocallyConstantFn& f, const PartitionScheme& scheme);

// Strict block representation: every monomial must lie in the generated
// subalgebra (NotRepresentableAtLevel otherwise).
BlockElement represent(const CrossedElement& a, const ComponentSetPtr& cs);
BlockElement represent(const CrossedMatrix& a, const ComponentSetPtr& cs);

struct SubstitutedBlocks {
  BlockElement blocks;
  Rat substitution_error;  // sum over substituted monomials of |d| mu(E)
};

// Representation after rewriting t^d -> (chi(X\E) t)^d monomial-by-monomial
// where needed. Exactly representable monomials contribute no error.
SubstitutedBlocks represent_substituted(const CrossedMatrix& a, const ComponentSetPtr& cs);

// The approximant itself as a crossed element, with its rank-error bound.
std::pair<CrossedElement, Rat> approximant(const CrossedElement& a, const SchemePtr& scheme);

// Transport of blocks across nested schemes: each component of the finer
// scheme decomposes into return-time segments matching coarse components, and
// the output block is their block-diagonal assembly.
BlockElement refine_embedding(const ComponentSetPtr& coarse, const ComponentSetPtr& fine,
                              const BlockElement& x);

}  // namespace lamprank

#endif
