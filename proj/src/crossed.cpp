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

#include "lamprank/crossed.hpp"

namespace lamprank {

CrossedElement CrossedElement::zero(const SpaceSpec& spec, const FieldContextPtr& K) {
  return CrossedElement(spec, K);
}

CrossedElement CrossedElement::one(const SpaceSpec& spec, const FieldContextPtr& K) {
  CrossedElement a(spec, K);
  a.set(0, LocallyConstantFn::constant(spec, K->one()));
  return a;
}

CrossedElement CrossedElement::monomial(LocallyConstantFn f, int degree) {
  CrossedElement a(f.space(), f.field());
  a.set(degree, std::move(f));
  return a;
}

CrossedElement CrossedElement::shift_generator(const SpaceSpec& spec, const FieldContextPtr& K) {
  CrossedElement a(spec, K);
  a.set(1, LocallyConstantFn::constant(spec, K->one()));
  return a;
}

void CrossedElement::set(int degree, LocallyConstantFn f) {
  if (f.is_zero())
    coeffs_.erase(degree);
  else
    coeffs_[degree] = std::move(f);
}

LocallyConstantFn CrossedElement::coefficient(int degree) const {
  auto it = coeffs_.find(degree);
  if (it != coeffs_.end()) return it->second;
  return LocallyConstantFn::zero(spec_, field_);
}

LocallyConstantFn CrossedElement::transported(const LocallyConstantFn& f, int k) const {
  if (k == 0) return f;
  if (spec_.geometry == Geometry::TwoSidedShift) return f.shift_transport(k);
  LocallyConstantFn g = f;
  for (int i = 0; i < (k > 0 ? k : -k); ++i) g = g.odometer_transport(k > 0);
  return g;
}

CrossedElement CrossedElement::operator+(const CrossedElement& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (spec_ != o.spec_) fail(Err::SpaceMismatch, "crossed elements over different spaces");
  CrossedElement r = *this;
  for (const auto& [d, f] : o.coeffs_) r.set(d, r.coefficient(d) + f);
  return r;
}

CrossedElement CrossedElement::operator-(const CrossedElement& o) const {
  return *this + o.scaled(o.field_ ? o.field_->from_int(-1)
                                   : FieldContext::rationals()->from_int(-1));
}

CrossedElement CrossedElement::operator*(const CrossedElement& o) const {
  if (spec_ != o.spec_) fail(Err::SpaceMismatch, "crossed elements over different spaces");
  CrossedElement r(spec_, field_ ? field_ : o.field_);
  // (f t^i)(g t^j) = f * (g o T^(-i)) t^(i+j)
  for (const auto& [i, f] : coeffs_)
    for (const auto& [j, g] : o.coeffs_) {
      LocallyConstantFn term = f * transported(g, i);
      if (!term.is_zero()) r.set(i + j, r.coefficient(i + j) + term);
    }
  return r;
}

CrossedElement CrossedElement::scaled(const FieldElement& c) const {
  CrossedElement r(spec_, field_);
  if (c.is_zero()) return r;
  for (const auto& [d, f] : coeffs_) r.set(d, f.scaled(c));
  return r;
}

CrossedElement CrossedElement::star() const {
  CrossedElement r(spec_, field_);
  for (const auto& [d, f] : coeffs_) r.set(-d, transported(f.conj(), -d));
  return r;
}

CrossedElement CrossedElement::pow(unsigned e) const {
  CrossedElement r = one(spec_, field_);
  for (unsigned i = 0; i < e; ++i) r = r * (*this);
  return r;
}

bool CrossedElement::operator==(const CrossedElement& o) const {
  if (spec_ != o.spec_) return false;
  if (coeffs_.size() != o.coeffs_.size()) return false;
  auto it = o.coeffs_.begin();
  for (const auto& [d, f] : coeffs_) {
    if (it->first != d || !(it->second == f)) return false;
    ++it;
  }
  return true;
}

std::string CrossedElement::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [d, f] : coeffs_) {
    if (!first) s += " + ";
    first = false;
    s += "(" + f.to_string() + ")";
    if (d != 0) s += "*t^" + std::to_string(d);
  }
  return s;
}

}  // namespace lamprank
