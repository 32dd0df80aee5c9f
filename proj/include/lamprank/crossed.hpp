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

#ifndef LAMPRANK_CROSSED_HPP
#define LAMPRANK_CROSSED_HPP

#include <map>

#include "lamprank/locfn.hpp"

namespace lamprank {

// Element of the crossed product C_K(X) x_T Z: a finitely supported map
// degree -> locally constant coefficient, with t*f = (f o T^(-1))*t.
class CrossedElement {
 public:
  CrossedElement() = default;
  CrossedElement(SpaceSpec spec, FieldContextPtr field) : spec_(spec), field_(std::move(field)) {}

  static CrossedElement zero(const SpaceSpec& spec, const FieldContextPtr& K);
  static CrossedElement one(const SpaceSpec& spec, const FieldContextPtr& K);
  static CrossedElement monomial(LocallyConstantFn f, int degree);
  static CrossedElement shift_generator(const SpaceSpec& spec, const FieldContextPtr& K);

  const SpaceSpec& space() const { return spec_; }
  const FieldContextPtr& field() const { return field_; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::map<int, LocallyConstantFn>& coefficients() const { return coeffs_; }
  LocallyConstantFn coefficient(int degree) const;

  CrossedElement operator+(const CrossedElement& o) const;
  CrossedElement operator-(const CrossedElement& o) const;
  CrossedElement operator*(const CrossedElement& o) const;
  CrossedElement scaled(const FieldElement& c) const;
  CrossedElement star() const;  // (f t^d)* = (conj(f) o T^(-d)) t^(-d)
  CrossedElement pow(unsigned e) const;

  bool operator==(const CrossedElement& o) const;
  std::string to_string() const;

 private:
  void set(int degree, LocallyConstantFn f);
  // transport of a coefficient across t^k for either geometry
  LocallyConstantFn transported(const LocallyConstantFn& f, int k) const;

  SpaceSpec spec_;
  FieldContextPtr field_;
  std::map<int, LocallyConstantFn> coeffs_;
};

}  // namespace lamprank

#endif
