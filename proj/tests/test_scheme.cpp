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

#include <doctest.h>

#include <map>

#include "lamprank/scheme.hpp"

using namespace lamprank;

namespace {
// Brute-force oracle: count binary strings with runs of ones of bounded length.
long bounded_run_strings(unsigned length, unsigned max_run) {
  long count = 0;
  for (std::uint64_t w = 0; w < (std::uint64_t(1) << length); ++w) {
    unsigned run = 0, best = 0;
    for (unsigned i = 0; i < length; ++i) {
      run = (w >> i) & 1 ? run + 1 : 0;
      best = std::max(best, run);
    }
    if (best <= max_run) ++count;
  }
  return count;
}
}  // namespace

TEST_CASE("lamplighter scheme shape") {
  SchemePtr s0 = lamplighter_scheme(0);
  CHECK(s0->base() == Clopen::cylinder(s0->space(), 0, 0, "1"));
  REQUIRE(s0->parts().size() == 1);
  CHECK(s0->parts()[0] == Clopen::cylinder(s0->space(), 0, 0, "0"));

  SchemePtr s1 = lamplighter_scheme(1);
  CHECK(s1->parts().size() == 7);
  CHECK(s1->base() == Clopen::cylinder(s1->space(), -1, 1, "111"));
  CHECK(s1->base_measure() == Rat(1, 8));

  for (unsigned n = 0; n <= 2; ++n)
    CHECK(lamplighter_scheme(n)->base_measure() == pow2(-(2 * static_cast<long>(n) + 1)));

  // symbol-swapped convention
  SchemePtr z0 = lamplighter_scheme(0, LampConvention::Zeros);
  CHECK(z0->base() == Clopen::cylinder(z0->space(), 0, 0, "0"));
  CHECK(z0->parts()[0] == Clopen::cylinder(z0->space(), 0, 0, "1"));
}

TEST_CASE("odometer scheme shape") {
  CHECK_THROWS_AS(odometer_scheme(0), Error);
  SchemePtr o1 = odometer_scheme(1);
  CHECK(o1->parts().size() == 1);
  SchemePtr o2 = odometer_scheme(2);
  CHECK(o2->parts().size() == 3);
  // Z_(n,l) = T^l(E_n) reproduces the partition
  Clopen img = o2->base();
  std::vector<Clopen> seen;
  for (int l = 1; l <= 3; ++l) {
    img = img.odometer(true);
    seen.push_back(img);
  }
  for (const auto& z : o2->parts()) {
    bool found = false;
    for (const auto& s : seen)
      if (s == z) found = true;
    CHECK(found);
  }
  CHECK(img.odometer(true) == o2->base());
}

TEST_CASE("degenerate scheme is rejected") {
  SpaceSpec spec{2, Geometry::TwoSidedShift};
  CHECK_THROWS_AS(PartitionScheme(spec, Clopen::full_space(spec), {}), Error);
  CHECK_THROWS_AS(PartitionScheme(spec, Clopen::empty_set(spec), {}), Error);
  // parts must partition the complement
  CHECK_THROWS_AS(PartitionScheme(spec, Clopen::cylinder(spec, 0, 0, "1"), {}), Error);
}

TEST_CASE("level-0 components: one per length with dyadic measures") {
  ComponentSetPtr cs = enumerate_components(lamplighter_scheme(0), 5);
  REQUIRE(cs->size() == 5);
  for (int d = 1; d <= 5; ++d) {
    const WComponent& w = cs->components()[static_cast<std::size_t>(d - 1)];
    CHECK(w.length == d);
    CHECK(w.measure == pow2(-(d + 1)));
    // oracle: rebuild the clopen by brute-force intersections
    SchemePtr s0 = lamplighter_scheme(0);
    Clopen brute = s0->base();
    for (int j = 1; j < d; ++j) brute = brute.intersect(s0->parts()[0].shift(-j));
    brute = brute.intersect(s0->base().shift(-d));
    CHECK(w.set == brute);
    CHECK(w.measure == brute.measure());
  }
}

TEST_CASE("odometer components: a single one of length 2^n") {
  for (unsigned n = 1; n <= 4; ++n) {
    ComponentSetPtr cs = enumerate_components(odometer_scheme(n), 1 << n);
    REQUIRE(cs->size() == 1);
    CHECK(cs->components()[0].length == (1 << n));
    CHECK(cs->components()[0].set == odometer_scheme(n)->base());
    CHECK(cs->covered_mass() == Rat(1));
  }
  // below the length the set is empty
  CHECK(enumerate_components(odometer_scheme(2), 3)->size() == 0);
}

TEST_CASE("level-1 component counts follow the three-step numbers") {
  ComponentSetPtr cs = enumerate_components(lamplighter_scheme(1), 6 + 3);
  std::map<int, long> by_len;
  for (const auto& w : cs->components()) ++by_len[w.length];
  CHECK(by_len[1] == 1);
  for (unsigned k = 1; k <= 6; ++k)
    CHECK(Int(by_len[static_cast<int>(3 + k)]) == macci(3, k));
}

TEST_CASE("generic enumeration agrees with the pattern fast path") {
  for (unsigned n = 0; n <= 1; ++n) {
    int cutoff = n == 0 ? 9 : 8;
    ComponentSetPtr fast = enumerate_components(lamplighter_scheme(n), cutoff);
    ComponentSetPtr gen = enumerate_components(lamplighter_scheme(n), cutoff, true);
    REQUIRE(fast->size() == gen->size());
    for (std::size_t i = 0; i < fast->size(); ++i) {
      CHECK(fast->components()[i].label == gen->components()[i].label);
      CHECK(fast->components()[i].set == gen->components()[i].set);
      CHECK(fast->components()[i].measure == gen->components()[i].measure);
    }
  }
  ComponentSetPtr ofast = enumerate_components(odometer_scheme(2), 4);
  ComponentSetPtr ogen = enumerate_components(odometer_scheme(2), 4, true);
  REQUIRE(ofast->size() == ogen->size());
  CHECK(ofast->components()[0].set == ogen->components()[0].set);
  CHECK(ofast->components()[0].label == ogen->components()[0].label);
}

TEST_CASE("translates of enumerated components are pairwise disjoint") {
  SchemePtr s1 = lamplighter_scheme(1);
  ComponentSetPtr cs = enumerate_components(s1, 6);
  std::vector<Clopen> translates;
  for (const auto& w : cs->components()) {
    Clopen img = w.set;
    for (int j = 0; j < w.length; ++j) {
      if (j > 0) img = img.shift(1);
      translates.push_back(img);
    }
  }
  for (std::size_t i = 0; i < translates.size(); ++i)
    for (std::size_t j = i + 1; j < translates.size(); ++j)
      CHECK(translates[i].disjoint_from(translates[j]));
}

TEST_CASE("m-step numbers") {
  CHECK(macci(3, 0) == 0);
  CHECK(macci(3, 1) == 1);
  CHECK(macci(3, 2) == 1);
  CHECK(macci(3, 6) == 13);
  for (unsigned m = 4; m <= 7; ++m) CHECK(macci(m, 3) == 2);
  for (unsigned k = 1; k <= 10; ++k) CHECK(macci(1, k) == 1);
  // oracle: strings with bounded runs
  for (unsigned m = 1; m <= 5; ++m)
    for (unsigned k = 2; k <= 12; ++k)
      CHECK(macci(m, k) == Int(bounded_run_strings(k - 2, m - 1)));
}

TEST_CASE("closed-form covered mass equals enumeration") {
  for (unsigned n = 0; n <= 1; ++n)
    for (int L = 1; L <= (n == 0 ? 16 : 10); ++L)
      CHECK(enumerate_components(lamplighter_scheme(n), L)->covered_mass() ==
            lamplighter_covered_mass_closed_form(n, L));
  // the level-0 tail at the cutoff examples
  CHECK(tail_mass_closed_form(0, 1) == Rat(3, 4));
  // partial sums decrease strictly toward zero
  Rat prev(2);
  for (int L = 1; L <= 24; ++L) {
    Rat t = tail_mass_closed_form(0, L);
    CHECK(t < prev);
    prev = t;
  }
  CHECK(prev < Rat(1, 1000000));
}

TEST_CASE("component lookup by label") {
  ComponentSetPtr cs = enumerate_components(lamplighter_scheme(0), 5);
  CHECK(cs->find({0, 0}).has_value());
  CHECK(cs->components()[*cs->find({0, 0})].length == 3);
  CHECK(!cs->find({1}).has_value());
}

TEST_CASE("component budget guard") {
  CHECK_THROWS_AS(enumerate_components(lamplighter_scheme(1), 20, false, 100), Error);
}
