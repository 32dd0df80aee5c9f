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

#include "lamprank/clopen.hpp"

#include <algorithm>
#include <bit>

namespace lamprank {

namespace {
constexpr int kMaxWindowBits = 62;
constexpr std::size_t kMaxWords = std::size_t(1) << 24;

void check_capacity(int width, unsigned bps) {
  if (width * static_cast<int>(bps) > kMaxWindowBits)
    fail(Err::CutoffTooLargeForMemory,
         "window of " + std::to_string(width) + " coordinates exceeds word capacity");
}
}  // namespace

unsigned SpaceSpec::bits_per_symbol() const {
  unsigned b = 1;
  while ((1u << b) < alphabet) ++b;
  return b;
}

std::uint64_t word_symbol(std::uint64_t w, int pos, int width, unsigned bps) {
  int shift = (width - 1 - pos) * static_cast<int>(bps);
  return (w >> shift) & ((std::uint64_t(1) << bps) - 1);
}

std::uint64_t word_set_symbol(std::uint64_t w, int pos, int width, unsigned bps, std::uint64_t s) {
  int shift = (width - 1 - pos) * static_cast<int>(bps);
  std::uint64_t mask = ((std::uint64_t(1) << bps) - 1) << shift;
  return (w & ~mask) | (s << shift);
}

std::string word_string(std::uint64_t w, int width, unsigned bps) {
  std::string s;
  for (int i = 0; i < width; ++i) {
    std::uint64_t d = word_symbol(w, i, width, bps);
    s.push_back(d < 10 ? char('0' + d) : char('a' + d - 10));
  }
  return s;
}

std::uint64_t word_parse(const std::string& text, unsigned q) {
  std::uint64_t w = 0;
  SpaceSpec spec{q, Geometry::TwoSidedShift};
  unsigned bps = spec.bits_per_symbol();
  check_capacity(static_cast<int>(text.size()), bps);
  for (char c : text) {
    unsigned d;
    if (c >= '0' && c <= '9')
      d = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'z')
      d = static_cast<unsigned>(c - 'a' + 10);
    else
      fail(Err::SyntaxError, std::string("bad symbol '") + c + "' in word");
    if (d >= q) fail(Err::SyntaxError, "symbol out of alphabet range in word " + text);
    w = (w << bps) | d;
  }
  return w;
}

Clopen Clopen::empty_set(const SpaceSpec& spec) {
  Clopen c;
  c.spec_ = spec;
  return c;
}

Clopen Clopen::full_space(const SpaceSpec& spec) {
  Clopen c;
  c.spec_ = spec;
  c.lo_ = 0;
  c.hi_ = -1;
  c.words_ = {0};
  return c;
}

Clopen Clopen::cylinder(const SpaceSpec& spec, int lo, int hi, std::uint64_t word) {
  return from_words(spec, lo, hi, {word});
}

Clopen Clopen::cylinder(const SpaceSpec& spec, int lo, int hi, const std::string& word) {
  if (hi - lo + 1 != static_cast<int>(word.size()))
    fail(Err::SyntaxError, "cylinder word length does not match window");
  return from_words(spec, lo, hi, {word_parse(word, spec.alphabet)});
}

Clopen Clopen::from_words(const SpaceSpec& spec, int lo, int hi,
                          std::vector<std::uint64_t> words) {
  if (hi >= lo) {
    if (lo < spec.min_coordinate() && spec.geometry == Geometry::OneSidedOdometer)
      fail(Err::GeometryMismatch, "one-sided window must start at coordinate 1 or later");
    check_capacity(hi - lo + 1, spec.bits_per_symbol());
  }
  Clopen c;
  c.spec_ = spec;
  c.lo_ = lo;
  c.hi_ = hi;
  c.words_ = std::move(words);
  c.canonicalize();
  return c;
}

void Clopen::canonicalize() {
  std::sort(words_.begin(), words_.end());
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
  if (words_.empty()) {
    lo_ = 0;
    hi_ = -1;
    return;
  }
  unsigned q = spec_.alphabet;
  unsigned bps = spec_.bits_per_symbol();
  // Trim boundary columns on which membership does not depend.
  bool changed = true;
  while (changed && hi_ >= lo_) {
    changed = false;
    int width = hi_ - lo_ + 1;
    for (int side = 0; side < 2; ++side) {
      if (hi_ < lo_) break;
      int col = side == 0 ? 0 : width - 1;
      // group words by their residual (word with this column erased);
      // the column is removable iff every residual occurs with all q symbols.
      std::vector<std::uint64_t> residual;
      residual.reserve(words_.size());
      for (std::uint64_t w : words_) {
        int shift = (width - 1 - col) * static_cast<int>(bps);
        std::uint64_t high = (w >> (shift + bps)) << shift;
        std::uint64_t low = w & ((std::uint64_t(1) << shift) - 1);
        residual.push_back(high | low);
      }
      std::vector<std::uint64_t> sorted = residual;
      std::sort(sorted.begin(), sorted.end());
      sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
      if (sorted.size() * q == words_.size()) {
        words_ = std::move(sorted);
        if (col == 0)
          ++lo_;
        else
          --hi_;
        width = hi_ - lo_ + 1;
        changed = true;
      }
    }
  }
  if (hi_ < lo_) {
    // reduced to the full space
    lo_ = 0;
    hi_ = -1;
    words_ = {0};
  } else {
    std::sort(words_.begin(), words_.end());
  }
}

Clopen Clopen::expanded(int new_lo, int new_hi) const {
  if (is_empty()) return *this;
  int cur_lo = is_full() ? new_lo : lo_;
  int cur_hi = is_full() ? new_lo - 1 : hi_;
  int lo = std::min(new_lo, cur_lo);
  int hi = std::max(new_hi, cur_hi);
  if (is_full()) {
    cur_lo = lo;
    cur_hi = lo - 1;
  }
  unsigned bps = spec_.bits_per_symbol();
  check_capacity(hi - lo + 1, bps);
  int left = cur_lo - lo;
  int right = hi - cur_hi;
  unsigned q = spec_.alphabet;
  std::vector<std::uint64_t> out = words_;
  // add free columns on the right
  for (int r = 0; r < right; ++r) {
    std::vector<std::uint64_t> next;
    next.reserve(out.size() * q);
    if (out.size() * q > kMaxWords)
      fail(Err::CutoffTooLargeForMemory, "clopen expansion exceeds the word-set budget");
    for (std::uint64_t w : out)
      for (unsigned s = 0; s < q; ++s) next.push_back((w << bps) | s);
    out = std::move(next);
  }
  // add free columns on the left
  int width_now = (cur_hi - cur_lo + 1) + right;
  for (int l = 0; l < left; ++l) {
    std::vector<std::uint64_t> next;
    next.reserve(out.size() * q);
    if (out.size() * q > kMaxWords)
      fail(Err::CutoffTooLargeForMemory, "clopen expansion exceeds the word-set budget");
    for (std::uint64_t w : out)
      for (unsigned s = 0; s < q; ++s)
        next.push_back((static_cast<std::uint64_t>(s) << ((width_now + l) * bps)) | w);
    out = std::move(next);
  }
  Clopen c;
  c.spec_ = spec_;
  c.lo_ = lo;
  c.hi_ = hi;
  c.words_ = std::move(out);
  std::sort(c.words_.begin(), c.words_.end());
  return c;  // deliberately not re-trimmed: caller often wants this exact window
}

namespace {
std::pair<Clopen, Clopen> on_common_window(const Clopen& a, const Clopen& b) {
  if (a.space() != b.space()) fail(Err::SpaceMismatch, "clopens from different spaces");
  if (a.is_empty() || b.is_empty()) return {a, b};
  int lo, hi;
  if (a.is_full() && b.is_full()) return {a, b};
  if (a.is_full()) {
    lo = b.lo();
    hi = b.hi();
  } else if (b.is_full()) {
    lo = a.lo();
    hi = a.hi();
  } else {
    lo = std::min(a.lo(), b.lo());
    hi = std::max(a.hi(), b.hi());
  }
  return {a.expanded(lo, hi), b.expanded(lo, hi)};
}
}  // namespace

Clopen Clopen::intersect(const Clopen& o) const {
  if (is_empty()) return *this;
  if (o.is_empty()) return o;
  auto [a, b] = on_common_window(*this, o);
  std::vector<std::uint64_t> out;
  std::set_intersection(a.words_.begin(), a.words_.end(), b.words_.begin(), b.words_.end(),
                        std::back_inserter(out));
  return from_words(spec_, a.lo_, a.hi_, std::move(out));
}

Clopen Clopen::unite(const Clopen& o) const {
  if (is_empty()) return o;
  if (o.is_empty()) return *this;
  auto [a, b] = on_common_window(*this, o);
  std::vector<std::uint64_t> out;
  std::set_union(a.words_.begin(), a.words_.end(), b.words_.begin(), b.words_.end(),
                 std::back_inserter(out));
  return from_words(spec_, a.lo_, a.hi_, std::move(out));
}

Clopen Clopen::difference(const Clopen& o) const {
  if (is_empty() || o.is_empty()) return *this;
  auto [a, b] = on_common_window(*this, o);
  std::vector<std::uint64_t> out;
  std::set_difference(a.words_.begin(), a.words_.end(), b.words_.begin(), b.words_.end(),
                      std::back_inserter(out));
  return from_words(spec_, a.lo_, a.hi_, std::move(out));
}

Clopen Clopen::complement() const { return full_space(spec_).difference(*this); }

bool Clopen::contains(const Clopen& o) const { return o.difference(*this).is_empty(); }

bool Clopen::operator==(const Clopen& o) const {
  if (spec_ != o.spec_) return false;
  return lo_ == o.lo_ && hi_ == o.hi_ && words_ == o.words_;  // canonical forms compare directly
}

Clopen Clopen::shift(int k) const {
  if (spec_.geometry != Geometry::TwoSidedShift)
    fail(Err::GeometryMismatch, "shift images need the two-sided shift; use the odometer step");
  if (is_empty() || is_full() || k == 0) return *this;
  Clopen c = *this;
  c.lo_ -= k;
  c.hi_ -= k;
  return c;
}

Clopen Clopen::odometer(bool forward) const {
  if (spec_.geometry != Geometry::OneSidedOdometer)
    fail(Err::GeometryMismatch, "odometer step needs the one-sided odometer geometry");
  if (spec_.alphabet != 2) fail(Err::GeometryMismatch, "the odometer is defined for alphabet 2");
  if (is_empty() || is_full()) return *this;
  // The step is a bijection on cylinders over the full window [1, hi].
  Clopen a = lo_ == 1 ? *this : expanded(1, hi_);
  int width = a.hi_ - a.lo_ + 1;
  std::vector<std::uint64_t> out;
  out.reserve(a.words_.size());
  for (std::uint64_t w : a.words_) {
    std::uint64_t v = w;
    if (forward) {
      // add 1 at coordinate 1 with carry toward higher coordinates
      int pos = 0;
      while (pos < width && word_symbol(v, pos, width, 1) == 1) {
        v = word_set_symbol(v, pos, width, 1, 0);
        ++pos;
      }
      if (pos < width) v = word_set_symbol(v, pos, width, 1, 1);
      // all-ones word wraps to all-zeros
    } else {
      int pos = 0;
      while (pos < width && word_symbol(v, pos, width, 1) == 0) {
        v = word_set_symbol(v, pos, width, 1, 1);
        ++pos;
      }
      if (pos < width) v = word_set_symbol(v, pos, width, 1, 0);
    }
    out.push_back(v);
  }
  return from_words(spec_, a.lo_, a.hi_, std::move(out));
}

Rat Clopen::measure() const {
  if (is_empty()) return Rat(0);
  Rat denom(1);
  mpz_ui_pow_ui(denom.get_den().get_mpz_t(), spec_.alphabet,
                static_cast<unsigned long>(width()));
  Rat r = Rat(static_cast<unsigned long>(words_.size())) * denom;
  r.canonicalize();
  return r;
}

std::vector<std::string> Clopen::word_strings() const {
  std::vector<std::string> out;
  out.reserve(words_.size());
  for (std::uint64_t w : words_) out.push_back(word_string(w, width(), spec_.bits_per_symbol()));
  return out;
}

std::string Clopen::to_string() const {
  if (is_empty()) return "{}";
  if (is_full()) return "X";
  std::string s = "cyl(" + std::to_string(lo_) + ":" + std::to_string(hi_) + ", {";
  bool first = true;
  for (const auto& w : word_strings()) {
    if (!first) s += ",";
    first = false;
    s += w;
  }
  return s + "})";
}

PeriodicPoint::PeriodicPoint(const SpaceSpec& spec, const std::string& word)
    : spec_(spec), word_(word) {
  if (spec.geometry != Geometry::TwoSidedShift)
    fail(Err::GeometryMismatch, "periodic points live in the two-sided shift");
  if (word_.empty()) fail(Err::SyntaxError, "periodic point needs a nonempty word");
  for (char c : word_)
    if (static_cast<unsigned>(c - '0') >= spec.alphabet)
      fail(Err::SyntaxError, "periodic word symbol out of range");
  // least period check
  std::size_t l = word_.size();
  for (std::size_t d = 1; d < l; ++d) {
    if (l % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = 0; i < l; ++i)
      if (word_[i] != word_[i % d]) periodic = false;
    if (periodic) fail(Err::SyntaxError, "periodic word is not primitive; least period " +
                                             std::to_string(d));
  }
}

unsigned PeriodicPoint::symbol_at(long i) const {
  long l = static_cast<long>(word_.size());
  long m = ((i % l) + l) % l;
  return static_cast<unsigned>(word_[static_cast<std::size_t>(m)] - '0');
}

bool eval_at(const Clopen& U, const PeriodicPoint& y, long j) {
  if (U.space().geometry != Geometry::TwoSidedShift)
    fail(Err::GeometryMismatch, "eval_at needs the two-sided shift");
  if (U.is_empty()) return false;
  if (U.is_full()) return true;
  // (T^j y)_i = y_(i+j)
  int width = U.width();
  unsigned bps = U.space().bits_per_symbol();
  std::uint64_t w = 0;
  for (int i = 0; i < width; ++i)
    w = word_set_symbol(w, i, width, bps, y.symbol_at(U.lo() + i + j));
  return std::binary_search(U.words().begin(), U.words().end(), w);
}

}  // namespace lamprank
