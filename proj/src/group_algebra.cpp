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

#include "lamprank/group_algebra.hpp"

#include <algorithm>

namespace lamprank {

namespace {
const SpaceSpec kLampSpace{2, Geometry::TwoSidedShift};
}

// (A, j) * (B, k) = (A xor (B - j), j + k): conjugation by t lowers lamp indices.
LampGroupElement LampGroupElement::operator*(const LampGroupElement& o) const {
  LampGroupElement r;
  r.shift = shift + o.shift;
  std::vector<int> moved;
  moved.reserve(o.lamps.size());
  for (int i : o.lamps) moved.push_back(i - shift);
  std::sort(moved.begin(), moved.end());
  std::set_symmetric_difference(lamps.begin(), lamps.end(), moved.begin(), moved.end(),
                                std::back_inserter(r.lamps));
  return r;
}

LampGroupElement LampGroupElement::inverse() const {
  LampGroupElement r;
  r.shift = -shift;
  r.lamps.reserve(lamps.size());
  for (int i : lamps) r.lamps.push_back(i + shift);
  std::sort(r.lamps.begin(), r.lamps.end());
  return r;
}

std::string LampGroupElement::to_string() const {
  std::string s;
  for (int i : lamps) s += "a(" + std::to_string(i) + ")";
  if (shift != 0) s += "t^" + std::to_string(shift);
  if (s.empty()) s = "1";
  return s;
}

GroupAlgebraElement GroupAlgebraElement::one(const FieldContextPtr& K) {
  GroupAlgebraElement x(K);
  x.add_term(LampGroupElement::identity(), K->one());
  return x;
}

GroupAlgebraElement GroupAlgebraElement::group_element(const FieldContextPtr& K,
                                                       LampGroupElement g) {
  GroupAlgebraElement x(K);
  x.add_term(g, K->one());
  return x;
}

void GroupAlgebraElement::add_term(const LampGroupElement& g, const FieldElement& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(g);
  if (it == terms_.end()) {
    terms_.emplace(g, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

GroupAlgebraElement GroupAlgebraElement::operator+(const GroupAlgebraElement& o) const {
  GroupAlgebraElement r = *this;
  if (!r.field_) r.field_ = o.field_;
  for (const auto& [g, c] : o.terms_) r.add_term(g, c);
  return r;
}

GroupAlgebraElement GroupAlgebraElement::operator-(const GroupAlgebraElement& o) const {
  GroupAlgebraElement r = *this;
  if (!r.field_) r.field_ = o.field_;
  for (const auto& [g, c] : o.terms_) r.add_term(g, -c);
  return r;
}

GroupAlgebraElement GroupAlgebraElement::operator*(const GroupAlgebraElement& o) const {
  GroupAlgebraElement r(field_ ? field_ : o.field_);
  for (const auto& [g, c] : terms_)
    for (const auto& [h, d] : o.terms_) r.add_term(g * h, c * d);
  return r;
}

GroupAlgebraElement GroupAlgebraElement::scaled(const FieldElement& c) const {
  GroupAlgebraElement r(field_);
  for (const auto& [g, d] : terms_) r.add_term(g, d * c);
  return r;
}

GroupAlgebraElement GroupAlgebraElement::star() const {
  GroupAlgebraElement r(field_);
  for (const auto& [g, c] : terms_) r.add_term(g.inverse(), c.conj());
  return r;
}

GroupAlgebraElement GroupAlgebraElement::pow(long e) const {
  if (e < 0) {
    if (terms_.size() != 1)
      fail(Err::SyntaxError, "negative powers are only defined for group monomials");
    const auto& [g, c] = *terms_.begin();
    GroupAlgebraElement inv(field_);
    inv.add_term(g.inverse(), c.inverse());
    return inv.pow(-e);
  }
  GroupAlgebraElement r = one(field_ ? field_ : FieldContext::rationals());
  for (long i = 0; i < e; ++i) r = r * (*this);
  return r;
}

bool GroupAlgebraElement::operator==(const GroupAlgebraElement& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  auto it = o.terms_.begin();
  for (const auto& [g, c] : terms_) {
    if (!(it->first == g) || !(it->second == c)) return false;
    ++it;
  }
  return true;
}

std::string GroupAlgebraElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [g, c] : terms_) {
    if (!first) s += " + ";
    first = false;
    s += c.to_string() + "*" + g.to_string();
  }
  return s;
}

CrossedElement fourier(const GroupAlgebraElement& x) {
  const FieldContextPtr& K = x.field();
  if (!K) fail(Err::ContextMismatch, "group algebra element without a field context");
  if (K->characteristic() == 2)
    fail(Err::CharacteristicError, "the transform needs characteristic different from 2");
  CrossedElement out = CrossedElement::zero(kLampSpace, K);
  for (const auto& [g, c] : x.terms()) {
    // prod over lamps of (chi[x_i=0] - chi[x_i=1]); as a word function the value
    // at w is (-1)^(number of lamp coordinates set to 1).
    LocallyConstantFn f = LocallyConstantFn::constant(kLampSpace, c);
    if (!g.lamps.empty()) {
      int lo = g.lamps.front(), hi = g.lamps.back();
      int width = hi - lo + 1;
      std::vector<std::uint64_t> plus_words, minus_words;
      for (std::uint64_t w = 0; w < (std::uint64_t(1) << width); ++w) {
        int ones = 0;
        for (int i : g.lamps)
          if (word_symbol(w, i - lo, width, 1) == 1) ++ones;
        (ones % 2 == 0 ? plus_words : minus_words).push_back(w);
      }
      f = LocallyConstantFn::indicator(
              Clopen::from_words(kLampSpace, lo, hi, std::move(plus_words)), K)
              .scaled(c) +
          LocallyConstantFn::indicator(
              Clopen::from_words(kLampSpace, lo, hi, std::move(minus_words)), K)
              .scaled(-c);
    }
    out = out + CrossedElement::monomial(f, g.shift);
  }
  return out;
}

GroupAlgebraElement inverse_fourier(const CrossedElement& x) {
  const FieldContextPtr& K = x.field();
  if (!K) fail(Err::ContextMismatch, "crossed element without a field context");
  if (x.space().alphabet != 2 || x.space().geometry != Geometry::TwoSidedShift)
    fail(Err::CharacteristicError, "inverse transform is defined over the two-sided 2-shift");
  if (K->characteristic() == 2)
    fail(Err::CharacteristicError, "the transform needs characteristic different from 2");
  GroupAlgebraElement out(K);
  FieldElement half = K->from_rational(Rat(1, 2));
  for (const auto& [d, f] : x.coefficients()) {
    if (f.is_zero()) continue;
    if (f.width() == 0) {
      out.add_term(LampGroupElement::translation(d), f.values().begin()->second);
      continue;
    }
    int lo = f.lo(), width = f.width();
    for (const auto& [w, v] : f.values()) {
      // chi of the cylinder [eps_lo ... eps_hi] -> prod (1 + (-1)^eps a_i)/2
      GroupAlgebraElement prod = GroupAlgebraElement::one(K);
      for (int i = 0; i < width; ++i) {
        GroupAlgebraElement factor = GroupAlgebraElement::one(K);
        FieldElement sign = word_symbol(w, i, width, 1) == 0 ? K->one() : K->from_int(-1);
        factor.add_term(LampGroupElement::lamp(lo + i), sign);
        prod = prod * factor.scaled(half);
      }
      prod = prod * GroupAlgebraElement::group_element(K, LampGroupElement::translation(d));
      out = out + prod.scaled(v);
    }
  }
  return out;
}

LaurentMatrix::LaurentMatrix(FieldContextPtr K, unsigned l)
    : field_(std::move(K)), l_(l), entries_(static_cast<std::size_t>(l) * l) {}

LaurentMatrix LaurentMatrix::identity(const FieldContextPtr& K, unsigned l) {
  LaurentMatrix m(K, l);
  for (unsigned i = 0; i < l; ++i) m.add_to_entry(i, i, 0, K->one());
  return m;
}

const std::map<int, FieldElement>& LaurentMatrix::entry(unsigned i, unsigned j) const {
  return entries_[static_cast<std::size_t>(i) * l_ + j];
}

void LaurentMatrix::add_to_entry(unsigned i, unsigned j, int power, const FieldElement& c) {
  if (c.is_zero()) return;
  auto& e = entries_[static_cast<std::size_t>(i) * l_ + j];
  auto it = e.find(power);
  if (it == e.end()) {
    e.emplace(power, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) e.erase(it);
}

LaurentMatrix LaurentMatrix::operator+(const LaurentMatrix& o) const {
  if (l_ != o.l_) fail(Err::IndexOutOfRange, "matrix size mismatch");
  LaurentMatrix r = *this;
  for (unsigned i = 0; i < l_; ++i)
    for (unsigned j = 0; j < l_; ++j)
      for (const auto& [p, c] : o.entry(i, j)) r.add_to_entry(i, j, p, c);
  return r;
}

LaurentMatrix LaurentMatrix::operator*(const LaurentMatrix& o) const {
  if (l_ != o.l_) fail(Err::IndexOutOfRange, "matrix size mismatch");
  LaurentMatrix r(field_, l_);
  for (unsigned i = 0; i < l_; ++i)
    for (unsigned k = 0; k < l_; ++k) {
      const auto& a = entry(i, k);
      if (a.empty()) continue;
      for (unsigned j = 0; j < l_; ++j) {
        const auto& b = o.entry(k, j);
        for (const auto& [p, c] : a)
          for (const auto& [q, d] : b) r.add_to_entry(i, j, p + q, c * d);
      }
    }
  return r;
}

LaurentMatrix LaurentMatrix::star() const {
  LaurentMatrix r(field_, l_);
  for (unsigned i = 0; i < l_; ++i)
    for (unsigned j = 0; j < l_; ++j)
      for (const auto& [p, c] : entry(i, j)) r.add_to_entry(j, i, -p, c.conj());
  return r;
}

bool LaurentMatrix::operator==(const LaurentMatrix& o) const {
  if (l_ != o.l_) return false;
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (entries_[k].size() != o.entries_[k].size()) return false;
    auto it = o.entries_[k].begin();
    for (const auto& [p, c] : entries_[k]) {
      if (it->first != p || !(it->second == c)) return false;
      ++it;
    }
  }
  return true;
}

bool LaurentMatrix::is_zero() const {
  for (const auto& e : entries_)
    if (!e.empty()) return false;
  return true;
}

std::string LaurentMatrix::to_string() const {
  std::string s = "[";
  for (unsigned i = 0; i < l_; ++i) {
    s += i == 0 ? "[" : ", [";
    for (unsigned j = 0; j < l_; ++j) {
      if (j) s += ", ";
      const auto& e = entry(i, j);
      if (e.empty()) {
        s += "0";
        continue;
      }
      bool first = true;
      for (const auto& [p, c] : e) {
        if (!first) s += "+";
        first = false;
        s += c.to_string();
        if (p != 0) s += "*s^" + std::to_string(p);
      }
    }
    s += "]";
  }
  return s + "]";
}

LaurentMatrix quotient_at_orbit(const CrossedElement& a, const PeriodicPoint& y) {
  if (a.space().geometry != Geometry::TwoSidedShift)
    fail(Err::GeometryMismatch, "orbit quotients need the two-sided shift");
  const FieldContextPtr& K = a.field();
  unsigned l = y.period();
  // cyclic image of t: subdiagonal ones plus s in the upper-right corner
  LaurentMatrix tmat(K, l);
  for (unsigned i = 0; i + 1 < l; ++i) tmat.add_to_entry(i + 1, i, 0, K->one());
  tmat.add_to_entry(0, l - 1, 1, K->one());
  LaurentMatrix tinv = tmat.star();  // t is sent to a unitary: inverse = star
  LaurentMatrix out(K, l);
  for (const auto& [d, f] : a.coefficients()) {
    LaurentMatrix diag(K, l);
    for (unsigned j = 0; j < l; ++j) {
      // value of f at T^j(y): read the periodic word across f's window
      FieldElement v = K->zero();
      if (f.width() == 0) {
        if (!f.values().empty()) v = f.values().begin()->second;
      } else {
        int width = f.width();
        std::uint64_t w = 0;
        for (int i = 0; i < width; ++i)
          w = word_set_symbol(w, i, width, a.space().bits_per_symbol(),
                              y.symbol_at(f.lo() + i + static_cast<long>(j)));
        auto it = f.values().find(w);
        if (it != f.values().end()) v = it->second;
      }
      diag.add_to_entry(j, j, 0, v);
    }
    LaurentMatrix power = LaurentMatrix::identity(K, l);
    for (int k = 0; k < (d > 0 ? d : -d); ++k) power = power * (d > 0 ? tmat : tinv);
    out = out + diag * power;
  }
  return out;
}

}  // namespace lamprank
