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

#ifndef LAMPRANK_LOCFN_HPP
#define LAMPRANK_LOCFN_HPP

#include <map>
#include <optional>

#include "lamprank/clopen.hpp"
#include "lamprank/field.hpp"

namespace lamprank {

// A locally constant function X -> K in canonical form: minimal window plus a
// word -> value map with zero values absent. This is the orthogonal form
// sum lambda_i chi(K_i) with pairwise disjoint cylinders K_i.
class LocallyConstantFn {
 public:
  LocallyConstantFn() = default;
  static LocallyConstantFn zero(const SpaceSpec& spec, const FieldContextPtr& K);
  static LocallyConstantFn constant(const SpaceSpec& spec, FieldElement value);
  static LocallyConstantFn indicator(const Clopen& U, const FieldContextPtr& K);

  const SpaceSpec& space() const { return spec_; }
  const FieldContextPtr& field() const { return field_; }
  bool is_zero() const { return values_.empty(); }
  bool is_constant() const;  // includes zero
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  int width() const { return values_.empty() || hi_ < lo_ ? 0 : hi_ - lo_ + 1; }
  const std::map<std::uint64_t, FieldElement>& values() const { return values_; }

  LocallyConstantFn operator+(const LocallyConstantFn& o) const;
  LocallyConstantFn operator-(const LocallyConstantFn& o) const;
  LocallyConstantFn operator*(const LocallyConstantFn& o) const;  // pointwise
  LocallyConstantFn scaled(const FieldElement& c) const;
  LocallyConstantFn conj() const;

  // f o T^(-k), i.e. the coefficient transport along the shift: supp moves to T^k(supp).
  LocallyConstantFn shift_transport(int k) const;
  // Same for the odometer: k = +1 or -1 steps.
  LocallyConstantFn odometer_transport(bool forward) const;

  Clopen support() const;
  // Value on a cylinder if constant there; nullopt otherwise. The cylinder is a
  // single-word clopen or any clopen; constancy is checked exactly.
  std::optional<FieldElement> value_on(const Clopen& C) const;

  // Expand to the given window (values on all words, zeros included as absent).
  LocallyConstantFn expanded(int new_lo, int new_hi) const;

  bool operator==(const LocallyConstantFn& o) const;
  std::string to_string() const;

 private:
  void canonicalize();
  SpaceSpec spec_;
  FieldContextPtr field_;
  int lo_ = 0, hi_ = -1;
  std::map<std::uint64_t, FieldElement> values_;
};

}  // namespace lamprank

#endif
