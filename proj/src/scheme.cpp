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

#include "lamprank/scheme.hpp"

#include <algorithm>

namespace lamprank {

PartitionScheme::PartitionScheme(SpaceSpec spec, Clopen E, std::vector<Clopen> parts,
                                 SchemeKind kind, int level, LampConvention convention)
    : spec_(spec), E_(std::move(E)), parts_(std::move(parts)), kind_(kind), level_(level),
      convention_(convention) {
  if (E_.is_empty()) fail(Err::ConfigError, "base clopen must be nonempty");
  if (E_.is_full())
    fail(Err::ConfigError,
         "degenerate scheme: E = X leaves an empty partition and no shift approximant");
  Clopen whole = E_;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i].is_empty()) fail(Err::ConfigError, "partition parts must be nonempty");
    if (!whole.disjoint_from(parts_[i]))
      fail(Err::ConfigError, "partition parts must be pairwise disjoint and miss E");
    whole = whole.unite(parts_[i]);
  }
  if (!whole.is_full()) fail(Err::ConfigError, "parts must partition the complement of E");
}

Clopen PartitionScheme::forward_image(const Clopen& U, int k) const {
  if (spec_.geometry == Geometry::TwoSidedShift) return U.shift(k);
  Clopen v = U;
  for (int i = 0; i < (k > 0 ? k : -k); ++i) v = v.odometer(k > 0);
  return v;
}

SchemePtr lamplighter_scheme(unsigned n, LampConvention convention) {
  SpaceSpec spec{2, Geometry::TwoSidedShift};
  int lo = -static_cast<int>(n), hi = static_cast<int>(n);
  int width = 2 * static_cast<int>(n) + 1;
  std::uint64_t marked = convention == LampConvention::Ones
                             ? (std::uint64_t(1) << width) - 1
                             : 0;
  Clopen E = Clopen::cylinder(spec, lo, hi, marked);
  std::vector<Clopen> parts;
  parts.reserve((std::size_t(1) << width) - 1);
  for (std::uint64_t w = 0; w < (std::uint64_t(1) << width); ++w)
    if (w != marked) parts.push_back(Clopen::cylinder(spec, lo, hi, w));
  return std::make_shared<PartitionScheme>(spec, std::move(E), std::move(parts),
                                           SchemeKind::Lamplighter, static_cast<int>(n),
                                           convention);
}

SchemePtr odometer_scheme(unsigned n) {
  if (n == 0) fail(Err::ConfigError, "odometer levels start at 1");
  SpaceSpec spec{2, Geometry::OneSidedOdometer};
  Clopen E = Clopen::cylinder(spec, 1, static_cast<int>(n), std::uint64_t(0));
  std::vector<Clopen> parts;
  for (std::uint64_t w = 1; w < (std::uint64_t(1) << n); ++w)
    parts.push_back(Clopen::cylinder(spec, 1, static_cast<int>(n), w));
  return std::make_shared<PartitionScheme>(spec, std::move(E), std::move(parts),
                                           SchemeKind::Odometer, static_cast<int>(n));
}

ComponentSet::ComponentSet(SchemePtr scheme, int cutoff, std::vector<WComponent> comps)
    : scheme_(std::move(scheme)), cutoff_(cutoff), comps_(std::move(comps)) {
  std::sort(comps_.begin(), comps_.end(), [](const WComponent& a, const WComponent& b) {
    if (a.length != b.length) return a.length < b.length;
    return a.label < b.label;
  });
  covered_ = Rat(0);
  for (const auto& w : comps_) covered_ += Rat(w.length) * w.measure;
  covered_.canonicalize();
  tail_ = Rat(1) - covered_;
  tail_.canonicalize();
}

std::optional<std::size_t> ComponentSet::find(const std::vector<int>& label) const {
  int len = static_cast<int>(label.size()) + 1;
  auto it = std::lower_bound(comps_.begin(), comps_.end(), label,
                             [len](const WComponent& a, const std::vector<int>& lb) {
                               if (a.length != len) return a.length < len;
                               return a.label < lb;
                             });
  if (it == comps_.end() || it->length != len || it->label != label) return std::nullopt;
  return static_cast<std::size_t>(it - comps_.begin());
}

namespace {

void enumerate_generic(const PartitionScheme& scheme, int cutoff, std::size_t max_components,
                       std::vector<WComponent>& out) {
  const auto& parts = scheme.parts();
  // Depth-first over label words, pruning empty partial intersections.
  struct Frame {
    Clopen partial;
    std::vector<int> label;
  };
  std::vector<Frame> stack;
  stack.push_back({scheme.base(), {}});
  while (!stack.empty()) {
    Frame fr = std::move(stack.back());
    stack.pop_back();
    int k = static_cast<int>(fr.label.size()) + 1;
    // completion: close the excursion with a return to E
    Clopen ret = fr.partial.intersect(scheme.forward_image(scheme.base(), -k));
    if (!ret.is_empty()) {
      if (out.size() >= max_components)
        fail(Err::CutoffTooLargeForMemory, "component budget exceeded; lower the cutoff");
      out.push_back({fr.label, k, ret, ret.measure()});
    }
    if (k >= cutoff) continue;
    for (int z = static_cast<int>(parts.size()) - 1; z >= 0; --z) {
      Clopen next = fr.partial.intersect(scheme.forward_image(parts[static_cast<std::size_t>(z)], -k));
      if (next.is_empty()) continue;
      Frame child;
      child.partial = std::move(next);
      child.label = fr.label;
      child.label.push_back(z);
      stack.push_back(std::move(child));
    }
  }
}

// Lamplighter fast path from the three word shapes: the length-1 component is
// the (2n+2)-wide marked block; length m+1 has a single flipped symbol; longer
// components are marked-block, flip, free block with bounded marked runs, flip,
// marked-block.
void enumerate_lamplighter(const PartitionScheme& scheme, int cutoff,
                           std::size_t max_components, std::vector<WComponent>& out) {
  int n = scheme.level();
  int m = 2 * n + 1;
  const SpaceSpec& spec = scheme.space();
  std::uint64_t marked_sym = scheme.convention() == LampConvention::Ones ? 1 : 0;
  auto emit = [&](int k, std::uint64_t word) {
    // component word over window [-n, n+k]
    int width = 2 * n + k + 1;
    if (out.size() >= max_components)
      fail(Err::CutoffTooLargeForMemory, "component budget exceeded; lower the cutoff");
    WComponent c;
    c.length = k;
    c.set = Clopen::cylinder(spec, -n, n + k, word);
    c.measure = c.set.measure();
    c.label.reserve(static_cast<std::size_t>(k) - 1);
    for (int j = 1; j < k; ++j) {
      // part index of the window [j-n, j+n] pattern: lexicographic rank among
      // non-base words, i.e. the numeric value adjusted for the removed base word
      std::uint64_t pat = 0;
      for (int i = 0; i < m; ++i)
        pat = (pat << 1) | word_symbol(word, j + i, width, 1);
      std::uint64_t base = scheme.convention() == LampConvention::Ones
                               ? (std::uint64_t(1) << m) - 1
                               : 0;
      c.label.push_back(static_cast<int>(pat > base ? pat - 1 : pat));
    }
    out.push_back(std::move(c));
  };

  auto all_marked = [&](int len) {
    std::uint64_t w = 0;
    for (int i = 0; i < len; ++i) w = (w << 1) | marked_sym;
    return w;
  };

  if (cutoff >= 1) emit(1, all_marked(2 * n + 2));
  if (cutoff >= m + 1) {
    // marked^(m) flip marked^(m), total width m + (m+1)
    std::uint64_t w = all_marked(m);
    w = (w << 1) | (1 - marked_sym);
    for (int i = 0; i < m; ++i) w = (w << 1) | marked_sym;
    emit(m + 1, w);
  }
  // k = m + 1 + (l + 1) for free blocks of length l >= 0 with runs of the marked
  // symbol bounded by 2n = m - 1.
  for (int k = m + 2; k <= cutoff; ++k) {
    int l = k - m - 2;
    // enumerate free blocks recursively in lexicographic order
    std::vector<std::pair<std::uint64_t, int>> stack;  // (block bits, filled)
    std::vector<std::uint64_t> blocks;
    struct Gen {
      int l, run_cap;
      std::uint64_t marked_sym;
      std::vector<std::uint64_t>* out;
      void go(std::uint64_t bits, int filled, int run) {
        if (filled == l) {
          out->push_back(bits);
          return;
        }
        for (std::uint64_t s = 0; s <= 1; ++s) {
          int nrun = s == marked_sym ? run + 1 : 0;
          if (nrun > run_cap) continue;
          go((bits << 1) | s, filled + 1, nrun);
        }
      }
    } gen{l, m - 1, marked_sym, &blocks};
    gen.go(0, 0, 0);
    for (std::uint64_t block : blocks) {
      std::uint64_t w = all_marked(m);
      w = (w << 1) | (1 - marked_sym);
      w = (w << l) | block;
      w = (w << 1) | (1 - marked_sym);
      for (int i = 0; i < m; ++i) w = (w << 1) | marked_sym;
      emit(k, w);
    }
  }
}

void enumerate_odometer(const PartitionScheme& scheme, int cutoff,
                        std::vector<WComponent>& out) {
  int n = scheme.level();
  int len = 1 << n;
  if (cutoff < len) return;
  // a single component: the base itself, visiting T^l(E) in order
  WComponent c;
  c.length = len;
  c.set = scheme.base();
  c.measure = c.set.measure();
  Clopen img = scheme.base();
  for (int j = 1; j < len; ++j) {
    img = img.odometer(true);
    std::uint64_t w = img.expanded(1, n).words().at(0);
    std::uint64_t base = 0;
    c.label.push_back(static_cast<int>(w > base ? w - 1 : w));
  }
  out.push_back(std::move(c));
}

}  // namespace

ComponentSetPtr enumerate_components(const SchemePtr& scheme, int cutoff, bool force_generic,
                                     std::size_t max_components) {
  if (cutoff < 1) fail(Err::ConfigError, "cutoff must be at least 1");
  std::vector<WComponent> comps;
  if (!force_generic && scheme->kind() == SchemeKind::Lamplighter)
    enumerate_lamplighter(*scheme, cutoff, max_components, comps);
  else if (!force_generic && scheme->kind() == SchemeKind::Odometer)
    enumerate_odometer(*scheme, cutoff, comps);
  else
    enumerate_generic(*scheme, cutoff, max_components, comps);
  return std::make_shared<ComponentSet>(scheme, cutoff, std::move(comps));
}

Int macci(unsigned m, unsigned k) {
  if (m == 0) fail(Err::ConfigError, "step count m must be positive");
  if (m == 1) return Int(k >= 1 ? 1 : 0);
  std::vector<Int> fib(std::max(k + 1, m), Int(0));
  if (k >= 1 || fib.size() > 1) fib[1] = 1;
  for (unsigned j = 2; j < m && j < fib.size(); ++j) {
    Int v = 1;
    mpz_ui_pow_ui(v.get_mpz_t(), 2, j - 2);
    fib[j] = v;
  }
  for (unsigned j = m; j <= k; ++j) {
    Int s = 0;
    for (unsigned i = 1; i <= m; ++i) s += fib[j - i];
    fib[j] = s;
  }
  return fib[k];
}

Rat lamplighter_covered_mass_closed_form(unsigned n, int cutoff) {
  unsigned m = 2 * n + 1;
  Rat covered(0);
  if (cutoff >= 1) covered += pow2(-static_cast<long>(m) - 1);
  for (int k = 1; m + static_cast<unsigned>(k) <= static_cast<unsigned>(cutoff); ++k) {
    Rat term = Rat(Int(m + static_cast<unsigned>(k)) * macci(m, static_cast<unsigned>(k)));
    term *= pow2(-2 * static_cast<long>(m) - k);
    covered += term;
  }
  covered.canonicalize();
  return covered;
}

}  // namespace lamprank
