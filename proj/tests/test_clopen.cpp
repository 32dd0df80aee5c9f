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

#include <random>

#include "lamprank/clopen.hpp"

using namespace lamprank;

namespace {
const SpaceSpec kShift{2, Geometry::TwoSidedShift};
const SpaceSpec kOdo{2, Geometry::OneSidedOdometer};

Clopen random_clopen(std::mt19937_64& rng, const SpaceSpec& spec) {
  int lo = spec.geometry == Geometry::OneSidedOdometer ? 1 : -2 + static_cast<int>(rng() % 3);
  int width = 1 + static_cast<int>(rng() % 3);
  std::vector<std::uint64_t> words;
  for (std::uint64_t w = 0; w < (std::uint64_t(1) << width); ++w)
    if (rng() % 2) words.push_back(w);
  return Clopen::from_words(spec, lo, lo + width - 1, std::move(words));
}
}  // namespace

TEST_CASE("disjoint cylinders intersect to the empty set") {
  Clopen c0 = Clopen::cylinder(kShift, 0, 0, "0");
  Clopen c1 = Clopen::cylinder(kShift, 0, 0, "1");
  CHECK(c0.intersect(c1).is_empty());
  CHECK(c0.unite(c1).is_full());
  CHECK(c1.complement() == c0);
}

TEST_CASE("intersection across shifted windows") {
  // window {0,1} word 11 as intersection of [1] at 0 and [1] at 1
  Clopen e0 = Clopen::cylinder(kShift, 0, 0, "1");
  Clopen w0 = e0.intersect(e0.shift(-1));
  CHECK(w0 == Clopen::cylinder(kShift, 0, 1, "11"));
  CHECK(w0.measure() == Rat(1, 4));
}

TEST_CASE("canonical form trims free boundary columns") {
  // all words with x1 free: reduces to the window {0}
  Clopen c = Clopen::from_words(kShift, 0, 1, {0b00, 0b01});
  CHECK(c.lo() == 0);
  CHECK(c.hi() == 0);
  CHECK(c == Clopen::cylinder(kShift, 0, 0, "0"));
  // idempotent under further ops
  CHECK(c.intersect(c) == c);
}

TEST_CASE("shift acts on windows and preserves measure") {
  Clopen u = Clopen::cylinder(kShift, 0, 0, "0");
  Clopen tu = u.shift(1);
  CHECK(tu.lo() == -1);
  CHECK(tu.hi() == -1);
  Clopen tinv = u.shift(-1);
  CHECK(tinv.lo() == 1);
  Clopen u3 = Clopen::cylinder(kShift, 0, 2, "101");
  CHECK(u3.shift(5).measure() == Rat(1, 8));
  CHECK(u3.measure() == Rat(1, 8));
}

TEST_CASE("odometer images step cylinders with carry") {
  Clopen c00 = Clopen::cylinder(kOdo, 1, 2, "00");
  Clopen c10 = Clopen::cylinder(kOdo, 1, 2, "10");
  Clopen c01 = Clopen::cylinder(kOdo, 1, 2, "01");
  Clopen c11 = Clopen::cylinder(kOdo, 1, 2, "11");
  CHECK(c00.odometer(true) == c10);
  CHECK(c10.odometer(true) == c01);
  CHECK(c11.odometer(true) == c00);
  CHECK(c00.odometer(false) == c11);
  // carry verified on refined cylinders of length 3
  Clopen c110 = Clopen::cylinder(kOdo, 1, 3, "110");
  CHECK(c110.odometer(true) == Clopen::cylinder(kOdo, 1, 3, "001"));
  // geometry errors
  CHECK_THROWS_AS(c00.shift(1), Error);
  CHECK_THROWS_AS(Clopen::cylinder(kShift, 0, 0, "1").odometer(true), Error);
}

TEST_CASE("measures") {
  CHECK(Clopen::full_space(kShift).measure() == Rat(1));
  CHECK(Clopen::empty_set(kShift).measure() == Rat(0));
  CHECK(Clopen::cylinder(kShift, 0, 0, "0").measure() == Rat(1, 2));
  CHECK(Clopen::cylinder(kShift, -1, 1, "101").measure() == Rat(1, 8));
}

TEST_CASE("measure satisfies inclusion exclusion") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    Clopen a = random_clopen(rng, kShift);
    Clopen b = random_clopen(rng, kShift);
    CHECK(a.measure() + b.measure() == a.unite(b).measure() + a.intersect(b).measure());
    CHECK(a.complement().measure() == Rat(1) - a.measure());
  }
}

TEST_CASE("shift is a boolean algebra automorphism") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    Clopen a = random_clopen(rng, kShift);
    Clopen b = random_clopen(rng, kShift);
    int j = static_cast<int>(rng() % 5) - 2;
    int k = static_cast<int>(rng() % 5) - 2;
    CHECK(a.intersect(b).shift(k) == a.shift(k).intersect(b.shift(k)));
    CHECK(a.shift(j).shift(k) == a.shift(j + k));
  }
}

TEST_CASE("equality matches word-set semantics on a common window") {
  // same set described over different windows
  Clopen a = Clopen::cylinder(kShift, 0, 0, "1");
  Clopen b = Clopen::from_words(kShift, 0, 1, {0b10, 0b11});
  CHECK(a == b);
  CHECK(b.contains(Clopen::cylinder(kShift, 0, 1, "10")));
  CHECK(!Clopen::cylinder(kShift, 0, 1, "10").contains(b));
}

TEST_CASE("periodic points") {
  PeriodicPoint fixed(kShift, "1");
  CHECK(fixed.period() == 1);
  CHECK_THROWS_AS(PeriodicPoint(kShift, "0101"), Error);  // not primitive
  PeriodicPoint p01(kShift, "01");
  CHECK(p01.symbol_at(0) == 0);
  CHECK(p01.symbol_at(1) == 1);
  CHECK(p01.symbol_at(-1) == 1);

  Clopen u0 = Clopen::cylinder(kShift, 0, 0, "0");
  CHECK(!eval_at(u0, fixed, 0));
  CHECK(eval_at(u0, p01, 0));
  CHECK(!eval_at(u0, p01, 1));

  PeriodicPoint p101(kShift, "101");
  Clopen u101 = Clopen::cylinder(kShift, 0, 2, "101");
  CHECK(eval_at(u101, p101, 0));
  CHECK(!eval_at(u101, p101, 1));
  CHECK(eval_at(u101, p101, 3));
}

TEST_CASE("word capacity guard") {
  CHECK_THROWS_AS(Clopen::cylinder(kShift, 0, 80, std::uint64_t(0)), Error);
}
