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

#ifndef LAMPRANK_CLOPEN_HPP
#define LAMPRANK_CLOPEN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lamprank/rational.hpp"

namespace lamprank {

enum class Geometry { TwoSidedShift, OneSidedOdometer };

struct SpaceSpec {
  unsigned alphabet = 2;  // q >= 2
  Geometry geometry = Geometry::TwoSidedShift;

  bool operator==(const SpaceSpec& o) const = default;
  unsigned bits_per_symbol() const;
  int min_coordinate() const { return geometry == Geometry::OneSidedOdometer ? 1 : INT32_MIN; }
};

// Words over a coordinate window are packed big-endian (leftmost coordinate in
// the most significant digits) so that numeric order equals lexicographic order.
std::uint64_t word_symbol(std::uint64_t w, int pos, int width, unsigned bps);
std::uint64_t word_set_symbol(std::uint64_t w, int pos, int width, unsigned bps, std::uint64_t s);
std::string word_string(std::uint64_t w, int width, unsigned bps);
std::uint64_t word_parse(const std::string& text, unsigned q);

// A clopen subset of the shift/odometer space in canonical window + word-set form.
// Canonical: sorted deduplicated words; boundary columns on which the set does
// not depend are trimmed; the full space has the empty window, the empty set an
// empty word set.
class Clopen {
 public:
  Clopen() = default;  // empty set of the default space
  static Clopen empty_set(const SpaceSpec& spec);
  static Clopen full_space(const SpaceSpec& spec);
  static Clopen cylinder(const SpaceSpec& spec, int lo, int hi, std::uint64_t word);
  static Clopen cylinder(const SpaceSpec& spec, int lo, int hi, const std::string& word);
  static Clopen from_words(const SpaceSpec& spec, int lo, int hi,
                           std::vector<std::uint64_t> words);

  const SpaceSpec& space() const { return spec_; }
  bool is_empty() const { return words_.empty(); }
  bool is_full() const { return !words_.empty() && width() == 0; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  int width() const { return words_.empty() ? 0 : hi_ - lo_ + 1; }
  const std::vector<std::uint64_t>& words() const { return words_; }

  Clopen intersect(const Clopen& o) const;
  Clopen unite(const Clopen& o) const;
  Clopen difference(const Clopen& o) const;
  Clopen complement() const;
  bool contains(const Clopen& o) const;  // o subset of this
  bool operator==(const Clopen& o) const;
  bool disjoint_from(const Clopen& o) const { return intersect(o).is_empty(); }

  // T^k: a constraint at coordinate i moves to coordinate i-k (two-sided shift only).
  Clopen shift(int k) const;
  // Odometer step (one-sided): binary carry-over addition, or its inverse.
  Clopen odometer(bool forward) const;

  Rat measure() const;  // |words| / q^width, uniform Bernoulli

  // Expand to a window containing [new_lo, new_hi] (no-op coordinates become free).
  Clopen expanded(int new_lo, int new_hi) const;

  std::vector<std::string> word_strings() const;
  std::string to_string() const;

 private:
  void canonicalize();
  SpaceSpec spec_;
  int lo_ = 0, hi_ = -1;
  std::vector<std::uint64_t> words_;
};

// Periodic point of the two-sided shift: x_i = w_(i mod l), underlined phase at 0.
class PeriodicPoint {
 public:
  PeriodicPoint(const SpaceSpec& spec, const std::string& word);
  unsigned period() const { return static_cast<unsigned>(word_.size()); }
  unsigned symbol_at(long i) const;
  const std::string& word() const { return word_; }
  const SpaceSpec& space() const { return spec_; }

 private:
  SpaceSpec spec_;
  std::string word_;  // digits, least period enforced
};

// 1 if T^j(y) lies in U (two-sided geometry).
bool eval_at(const Clopen& U, const PeriodicPoint& y, long j);

}  // namespace lamprank

#endif
