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

#include "lamprank/locfn.hpp"

#include <algorithm>

namespace lamprank {

namespace {
constexpr std::size_t kMaxEntries = std::size_t(1) << 22;
}

LocallyConstantFn LocallyConstantFn::zero(const SpaceSpec& spec, const FieldContextPtr& K) {
  LocallyConstantFn f;
  f.spec_ = spec;
  f.field_ = K;
  return f;
}

LocallyConstantFn LocallyConstantFn::constant(const SpaceSpec& spec, FieldElement value) {
  LocallyConstantFn f;
  f.spec_ = spec;
  f.field_ = value.context();
  if (!value.is_zero()) f.values_.emplace(0, std::move(value));
  f.lo_ = 0;
  f.hi_ = -1;
  return f;
}

LocallyConstantFn LocallyConstantFn::indicator(const Clopen& U, const FieldContextPtr& K) {
  LocallyConstantFn f;
  f.spec_ = U.space();
  f.field_ = K;
  if (U.is_empty()) return f;
  if (U.is_full()) return constant(U.space(), K->one());
  f.lo_ = U.lo();
  f.hi_ = U.hi();
  for (std::uint64_t w : U.words()) f.values_.emplace(w, K->one());
  return f;
}

bool LocallyConstantFn::is_constant() const {
  return values_.empty() || (hi_ < lo_ && values_.size() == 1);
}

void LocallyConstantFn::canonicalize() {
  for (auto it = values_.begin(); it != values_.end();)
    it = it->second.is_zero() ? values_.erase(it) : std::next(it);
  if (values_.empty()) {
    lo_ = 0;
    hi_ = -1;
    return;
  }
  unsigned q = spec_.alphabet;
  unsigned bps = spec_.bits_per_symbol();
  bool changed = true;
  while (changed && hi_ >= lo_) {
    changed = false;
    for (int side = 0; side < 2 && hi_ >= lo_; ++side) {
      int width = hi_ - lo_ + 1;
      int col = side == 0 ? 0 : width - 1;
      int shift = (width - 1 - col) * static_cast<int>(bps);
      // column removable iff every residual appears with all q symbols, same value
      std::map<std::uint64_t, std::pair<FieldElement, unsigned>> groups;
      bool ok = true;
      for (const auto& [w, v] : values_) {
        std::uint64_t high = (w >> (shift + bps)) << shift;
        std::uint64_t low = w & ((std::uint64_t(1) << shift) - 1);
        std::uint64_t res = high | low;
        auto [it, inserted] = groups.emplace(res, std::make_pair(v, 1u));
        if (!inserted) {
          if (!(it->second.first == v)) {
            ok = false;
            break;
          }
          it->second.second++;
        }
      }
      if (ok)
        for (const auto& [res, pv] : groups)
          if (pv.second != q) ok = false;
      if (ok) {
        std::map<std::uint64_t, FieldElement> next;
        for (auto& [res, pv] : groups) next.emplace(res, pv.first);
        values_ = std::move(next);
        if (col == 0)
          ++lo_;
        else
          --hi_;
        changed = true;
      }
    }
  }
  if (hi_ < lo_ && !values_.empty()) {
    // constant function
    auto v = values_.begin()->second;
    values_.clear();
    values_.emplace(0, std::move(v));
    lo_ = 0;
    hi_ = -1;
  }
}

LocallyConstantFn LocallyConstantFn::expanded(int new_lo, int new_hi) const {
  if (values_.empty()) return *this;
  bool constant_fn = hi_ < lo_;
  int cur_lo = constant_fn ? new_lo : lo_;
  int cur_hi = constant_fn ? new_lo - 1 : hi_;
  int lo = std::min(new_lo, cur_lo);
  int hi = std::max(new_hi, cur_hi);
  unsigned q = spec_.alphabet;
  unsigned bps = spec_.bits_per_symbol();
  if ((hi - lo + 1) * static_cast<int>(bps) > 62)
    fail(Err::CutoffTooLargeForMemory, "function window exceeds word capacity");
  std::map<std::uint64_t, FieldElement> out = values_;
  int right = hi - cur_hi;
  for (int r = 0; r < right; ++r) {
    std::map<std::uint64_t, FieldElement> next;
    if (out.size() * q > kMaxEntries)
      fail(Err::CutoffTooLargeForMemory, "function expansion exceeds the entry budget");
    for (const auto& [w, v] : out)
      for (unsigned s = 0; s < q; ++s) next.emplace((w << bps) | s, v);
    out = std::move(next);
  }
  int width_now = (cur_hi - cur_lo + 1) + right;
  int left = cur_lo - lo;
  for (int l = 0; l < left; ++l) {
    std::map<std::uint64_t, FieldElement> next;
    if (out.size() * q > kMaxEntries)
      fail(Err::CutoffTooLargeForMemory, "function expansion exceeds the entry budget");
    for (const auto& [w, v] : out)
      for (unsigned s = 0; s < q; ++s)
        next.emplace((static_cast<std::uint64_t>(s) << ((width_now + l) * bps)) | w, v);
    out = std::move(next);
  }
  LocallyConstantFn f;
  f.spec_ = spec_;
  f.field_ = field_;
  f.lo_ = lo;
  f.hi_ = hi;
  f.values_ = std::move(out);
  return f;
}

namespace {
std::pair<LocallyConstantFn, LocallyConstantFn> common(const LocallyConstantFn& a,
                                                       const LocallyConstantFn& b) {
  if (a.space() != b.space()) fail(Err::SpaceMismatch, "functions on different spaces");
  if (a.field() && b.field() && !a.field()->same_as(*b.field()))
    fail(Err::ContextMismatch, "functions over different fields");
  if (a.is_zero() || b.is_zero()) return {a, b};
  bool ac = a.width() == 0, bc = b.width() == 0;
  int lo, hi;
  if (ac && bc) {
    lo = 0;
    hi = -1;
    return {a, b};
  }
  if (ac) {
    lo = b.lo();
    hi = b.hi();
  } else if (bc) {
    lo = a.lo();
    hi = a.hi();
  } else {
    lo = std::min(a.lo(), b.lo());
    hi = std::max(a.hi(), b.hi());
  }
  return {a.expanded(lo, hi), b.expanded(lo, hi)};
}
}  // namespace

LocallyConstantFn LocallyConstantFn::operator+(const LocallyConstantFn& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  auto [a, b] = common(*this, o);
  LocallyConstantFn f;
  f.spec_ = spec_;
  f.field_ = field_ ? field_ : o.field_;
  f.lo_ = a.lo_;
  f.hi_ = a.hi_;
  f.values_ = a.values_;
  for (const auto& [w, v] : b.values_) {
    auto it = f.values_.find(w);
    if (it == f.values_.end())
      f.values_.emplace(w, v);
    else
      it->second = it->second + v;
  }
  f.canonicalize();
  return f;
}

LocallyConstantFn LocallyConstantFn::operator-(const LocallyConstantFn& o) const {
  return *this + o.scaled(o.field_ ? o.field_->from_int(-1)
                                   : FieldContext::rationals()->from_int(-1));
}

LocallyConstantFn LocallyConstantFn::operator*(const LocallyConstantFn& o) const {
  if (is_zero()) return *this;
  if (o.is_zero()) return o;
  auto [a, b] = common(*this, o);
  LocallyConstantFn f;
  f.spec_ = spec_;
  f.field_ = field_;
  f.lo_ = a.lo_;
  f.hi_ = a.hi_;
  for (const auto& [w, v] : a.values_) {
    auto it = b.values_.find(w);
    if (it != b.values_.end()) f.values_.emplace(w, v * it->second);
  }
  f.canonicalize();
  return f;
}

LocallyConstantFn LocallyConstantFn::scaled(const FieldElement& c) const {
  LocallyConstantFn f = *this;
  if (c.is_zero()) {
    f.values_.clear();
    f.lo_ = 0;
    f.hi_ = -1;
    return f;
  }
  for (auto& [w, v] : f.values_) v = v * c;
  return f;
}

LocallyConstantFn LocallyConstantFn::conj() const {
  LocallyConstantFn f = *this;
  for (auto& [w, v] : f.values_) v = v.conj();
  return f;
}

LocallyConstantFn LocallyConstantFn::shift_transport(int k) const {
  if (spec_.geometry != Geometry::TwoSidedShift)
    fail(Err::GeometryMismatch, "shift transport needs the two-sided shift");
  if (values_.empty() || hi_ < lo_ || k == 0) return *this;
  LocallyConstantFn f = *this;
  f.lo_ -= k;
  f.hi_ -= k;
  return f;
}

LocallyConstantFn LocallyConstantFn::odometer_transport(bool forward) const {
  if (spec_.geometry != Geometry::OneSidedOdometer)
    fail(Err::GeometryMismatch, "odometer transport needs the one-sided geometry");
  if (values_.empty() || hi_ < lo_) return *this;
  // f o T^(-1) maps word w to the value of f at T^(-1)(w); equivalently the new
  // function assigns f's value at u to the word T(u).
  LocallyConstantFn a = lo_ == 1 ? *this : expanded(1, hi_);
  int width = a.hi_ - a.lo_ + 1;
  LocallyConstantFn f;
  f.spec_ = spec_;
  f.field_ = field_;
  f.lo_ = a.lo_;
  f.hi_ = a.hi_;
  for (const auto& [w, v] : a.values_) {
    Clopen cyl = Clopen::cylinder(spec_, 1, width, w);
    Clopen img = cyl.odometer(forward);
    std::uint64_t target = img.expanded(1, width).words().at(0);
    f.values_.emplace(target, v);
  }
  f.canonicalize();
  return f;
}

Clopen LocallyConstantFn::support() const {
  if (values_.empty()) return Clopen::empty_set(spec_);
  if (hi_ < lo_) return Clopen::full_space(spec_);
  std::vector<std::uint64_t> ws;
  ws.reserve(values_.size());
  for (const auto& [w, v] : values_) ws.push_back(w);
  return Clopen::from_words(spec_, lo_, hi_, std::move(ws));
}

std::optional<FieldElement> LocallyConstantFn::value_on(const Clopen& C) const {
  if (C.is_empty()) return std::nullopt;
  FieldElement zero = field_ ? field_->zero() : FieldContext::rationals()->zero();
  if (values_.empty()) return zero;
  if (hi_ < lo_) return values_.begin()->second;  // constant
  if (C.space() != spec_) fail(Err::SpaceMismatch, "cylinder from a different space");
  int lo = std::min(lo_, C.is_full() ? lo_ : C.lo());
  int hi = std::max(hi_, C.is_full() ? hi_ : C.hi());
  Clopen big = C.expanded(lo, hi);
  unsigned bps = spec_.bits_per_symbol();
  int width = hi - lo + 1;
  int off = lo_ - lo;
  int fwidth = hi_ - lo_ + 1;
  std::optional<FieldElement> seen;
  for (std::uint64_t w : big.words()) {
    std::uint64_t sub = 0;
    for (int i = 0; i < fwidth; ++i)
      sub = word_set_symbol(sub, i, fwidth, bps, word_symbol(w, off + i, width, bps));
    auto it = values_.find(sub);
    const FieldElement& v = it == values_.end() ? zero : it->second;
    if (!seen)
      seen = v;
    else if (!(*seen == v))
      return std::nullopt;
  }
  return seen;
}

bool LocallyConstantFn::operator==(const LocallyConstantFn& o) const {
  if (spec_ != o.spec_) return false;
  if (lo_ != o.lo_ || hi_ != o.hi_) return false;
  if (values_.size() != o.values_.size()) return false;
  auto it = o.values_.begin();
  for (const auto& [w, v] : values_) {
    if (it->first != w || !(it->second == v)) return false;
    ++it;
  }
  return true;
}

std::string LocallyConstantFn::to_string() const {
  if (values_.empty()) return "0";
  if (hi_ < lo_) return values_.begin()->second.to_string();
  std::string s;
  bool first = true;
  unsigned bps = spec_.bits_per_symbol();
  for (const auto& [w, v] : values_) {
    if (!first) s += " + ";
    first = false;
    s += v.to_string() + "*chi[" + std::to_string(lo_) + ":" +
         word_string(w, hi_ - lo_ + 1, bps) + "]";
  }
  return s;
}

}  // namespace lamprank
