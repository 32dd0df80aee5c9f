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

#ifndef LAMPRANK_SCHEME_HPP
#define LAMPRANK_SCHEME_HPP

#include <memory>
#include <optional>

#include "lamprank/clopen.hpp"

namespace lamprank {

enum class SchemeKind { Lamplighter, Odometer, Custom };

// Marked-cylinder convention for the lamplighter base sets: Ones is the
// all-ones center block, Zeros the symbol-swapped variant.
enum class LampConvention { Ones, Zeros };

// A base clopen E plus an ordered clopen partition of its complement.
class PartitionScheme {
 public:
  PartitionScheme(SpaceSpec spec, Clopen E, std::vector<Clopen> parts,
                  SchemeKind kind = SchemeKind::Custom, int level = -1,
                  LampConvention convention = LampConvention::Ones);

  const SpaceSpec& space() const { return spec_; }
  const Clopen& base() const { return E_; }
  const std::vector<Clopen>& parts() const { return parts_; }
  SchemeKind kind() const { return kind_; }
  int level() const { return level_; }
  LampConvention convention() const { return convention_; }
  Rat base_measure() const { return E_.measure(); }

  // T^k(U) in the scheme's geometry (odometer for one-sided spaces).
  Clopen forward_image(const Clopen& U, int k) const;

 private:
  SpaceSpec spec_;
  Clopen E_;
  std::vector<Clopen> parts_;
  SchemeKind kind_;
  int level_;
  LampConvention convention_;
};

using SchemePtr = std::shared_ptr<const PartitionScheme>;

// Level-n lamplighter scheme: E = the (2n+1)-wide marked block, parts = the
// remaining full-window cylinders in lexicographic word order.
SchemePtr lamplighter_scheme(unsigned n, LampConvention convention = LampConvention::Ones);

// Level-n odometer scheme on the one-sided space: E = [0...0] (n zeros).
SchemePtr odometer_scheme(unsigned n);

// One return-word component: the clopen
// E cap T^-1(Z_1) cap ... cap T^-(k-1)(Z_(k-1)) cap T^-k(E), nonempty.
struct WComponent {
  std::vector<int> label;  // part indices Z_1 .. Z_(k-1)
  int length = 0;          // k
  Clopen set;
  Rat measure;
};

class ComponentSet {
 public:
  ComponentSet(SchemePtr scheme, int cutoff, std::vector<WComponent> comps);

  const SchemePtr& scheme() const { return scheme_; }
  int cutoff() const { return cutoff_; }
  const std::vector<WComponent>& components() const { return comps_; }
  std::size_t size() const { return comps_.size(); }
  const Rat& covered_mass() const { return covered_; }
  const Rat& tail_mass() const { return tail_; }

  // index of the component with the given label, if enumerated
  std::optional<std::size_t> find(const std::vector<int>& label) const;

 private:
  SchemePtr scheme_;
  int cutoff_;
  std::vector<WComponent> comps_;
  Rat covered_, tail_;
};

using ComponentSetPtr = std::shared_ptr<const ComponentSet>;

// All nonempty components of length <= cutoff, ordered by (length, label).
// Pattern fast paths are used for the lamplighter/odometer schemes unless
// force_generic is set; the generic search prunes on empty partial
// intersections.
ComponentSetPtr enumerate_components(const SchemePtr& scheme, int cutoff,
                                     bool force_generic = false,
                                     std::size_t max_components = 16u << 20);

// m-step Fibonacci numbers with seeds 0, 1, 1, 2, 4, ..., 2^(m-3).
Int macci(unsigned m, unsigned k);

// Exact covered mass of the level-n lamplighter quasi-partition up to the
// cutoff, from the closed-form summation rules; equals the enumerated value.
Rat lamplighter_covered_mass_closed_form(unsigned n, int cutoff);
inline Rat tail_mass_closed_form(unsigned n, int cutoff) {
  return Rat(1) - lamplighter_covered_mass_closed_form(n, cutoff);
}

}  // namespace lamprank

#endif
