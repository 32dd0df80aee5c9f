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

#ifndef LAMPRANK_SERIES_HPP
#define LAMPRANK_SERIES_HPP

#include "lamprank/blocks.hpp"

namespace lamprank {

// Truncated skew power series sum b_i t^i, 0 <= i <= order, with the i-th
// coefficient supported away from E, T(E), ..., T^(i-1)(E).
class SkewSeries {
 public:
  SkewSeries(SchemePtr scheme, FieldContextPtr K, int order);

  static SkewSeries zero(SchemePtr scheme, FieldContextPtr K, int order);
  static SkewSeries one(SchemePtr scheme, FieldContextPtr K, int order);
  static SkewSeries constant(SchemePtr scheme, const FieldElement& c, int order);
  // s = chi(X \ E) t, the positive-part generator.
  static SkewSeries generator(SchemePtr scheme, FieldContextPtr K, int order);
  static SkewSeries monomial(SchemePtr scheme, LocallyConstantFn f, int degree, int order);

  const SchemePtr& scheme() const { return scheme_; }
  const FieldContextPtr& field() const { return field_; }
  int order() const { return order_; }
  const LocallyConstantFn& coefficient(int i) const;
  bool is_zero() const;

  SkewSeries operator+(const SkewSeries& o) const;
  SkewSeries operator-(const SkewSeries& o) const;
  SkewSeries operator*(const SkewSeries& o) const;  // truncated at order
  SkewSeries scaled(const FieldElement& c) const;
  SkewSeries pow(unsigned e) const;

  // Inverse up to the truncation order; NotInvertibleConstantTerm unless the
  // degree-zero coefficient is nowhere zero.
  SkewSeries inverse() const;

  // Lower-triangular block image (h_W . x)_W over enumerated components.
  BlockElement project_blocks(const ComponentSetPtr& cs) const;

  bool operator==(const SkewSeries& o) const;
  std::string to_string() const;

 private:
  void set(int i, LocallyConstantFn f);  // validates the support constraint
  SchemePtr scheme_;
  FieldContextPtr field_;
  int order_;
  std::vector<LocallyConstantFn> coeffs_;
};

// The degree-i special supports: clopens S with
// S = T^(i-1)(Z'_(i-1)) cap ... cap Z'_0 and E cap T^(-i)(S) cap T^(-i-1)(E)
// nonempty, in bijection with components of length i+1. Degree 0 holds the
// single unit support S_0 cup T^(-1)(S_1) when E cap T^(-1)(E) is nonempty.
std::vector<Clopen> special_sets(const SchemePtr& scheme, int degree);

// The special support attached to one component (degree = length - 1 for
// lengths >= 2; the degree-0 unit support for length 1).
Clopen special_set_of_component(const SchemePtr& scheme, const WComponent& w);

// Series supported on special terms, keyed by component index of a ComponentSet.
class SpecialSeries {
 public:
  SpecialSeries(ComponentSetPtr cs, FieldContextPtr K);
  static SpecialSeries unit(const ComponentSetPtr& cs, const FieldContextPtr& K);  // all-ones

  const ComponentSetPtr& component_set() const { return cs_; }
  const FieldContextPtr& field() const { return field_; }
  const std::vector<FieldElement>& coefficients() const { return coeffs_; }
  FieldElement& coefficient(std::size_t idx) { return coeffs_[idx]; }
  const FieldElement& coefficient(std::size_t idx) const { return coeffs_[idx]; }

  SpecialSeries operator+(const SpecialSeries& o) const;
  SpecialSeries hadamard(const SpecialSeries& o) const;  // coefficient-wise product
  SpecialSeries conj() const;
  SpecialSeries relative_inverse() const;  // invert nonzero coefficients
  bool operator==(const SpecialSeries& o) const;

  // Re-embed as a skew series sum lambda_S chi(S) t^(|W|-1).
  SkewSeries to_series(int order) const;

  // The central block element (lambda_(S(W)) h_W)_W.
  BlockElement to_central_blocks() const;

  std::string to_string() const;

 private:
  ComponentSetPtr cs_;
  FieldContextPtr field_;
  std::vector<FieldElement> coeffs_;  // aligned with cs->components()
};

// Corner projection of a skew series onto special terms: the coefficient at W
// is the bottom-left entry of the W block. Idempotent and linear.
SpecialSeries project_special(const SkewSeries& x, const ComponentSetPtr& cs);

// A pure term of the lamplighter special-term monoid, n >= 1.
struct PureTerm {
  Clopen support;
  int degree = 0;
  bool operator==(const PureTerm& o) const { return degree == o.degree && support == o.support; }
};

// Unique factorization of a special term into pure terms (product order).
// NotSpecial if S is not special for the scheme; LevelZeroUnsupported at n = 0.
std::vector<PureTerm> factor_pure(const Clopen& S, const SchemePtr& scheme);

// All pure terms of degree <= max_degree in deterministic order.
std::vector<PureTerm> pure_terms_up_to(const SchemePtr& scheme, int max_degree);

// Series-mode expression parser; grammar atoms: rational, s, S("word"),
// a(i)/e(i)/f(i), cyl(a:b,"w"), inv(expr).
SkewSeries parse_series_expression(const std::string& text, const SchemePtr& scheme,
                                   const FieldContextPtr& K, int order);

}  // namespace lamprank

#endif
