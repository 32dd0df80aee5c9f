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

#include "lamprank/group_algebra.hpp"
#include "lamprank/parser.hpp"

using namespace lamprank;

namespace {
const SpaceSpec kShift{2, Geometry::TwoSidedShift};
const FieldContextPtr Q = FieldContext::rationals();

CrossedElement indicator_elt(const Clopen& u, int degree = 0) {
  return CrossedElement::monomial(LocallyConstantFn::indicator(u, Q), degree);
}

GroupAlgebraElement random_group(std::mt19937_64& rng) {
  GroupAlgebraElement acc(Q);
  int terms = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < terms; ++i) {
    LampGroupElement g;
    for (int l = 0; l < static_cast<int>(rng() % 3); ++l) {
      int pos = static_cast<int>(rng() % 5) - 2;
      auto it = std::lower_bound(g.lamps.begin(), g.lamps.end(), pos);
      if (it == g.lamps.end() || *it != pos) g.lamps.insert(it, pos);
    }
    g.shift = static_cast<int>(rng() % 5) - 2;
    Rat c(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 2));
    c.canonicalize();
    acc.add_term(g, Q->from_rational(c));
  }
  return acc;
}
}  // namespace

TEST_CASE("lamp group law") {
  LampGroupElement t = LampGroupElement::translation(1);
  LampGroupElement a0 = LampGroupElement::lamp(0);
  // t a_i t^-1 = a_(i-1)
  LampGroupElement conj = t * a0 * t.inverse();
  CHECK(conj == LampGroupElement::lamp(-1));
  CHECK((a0 * a0) == LampGroupElement::identity());
  LampGroupElement g = a0 * LampGroupElement::lamp(3) * t;
  CHECK(g * g.inverse() == LampGroupElement::identity());
}

TEST_CASE("crossed commutation relation") {
  // t chi_U t^-1 = chi_T(U)
  Clopen u0 = Clopen::cylinder(kShift, 0, 0, "0");
  CrossedElement t = CrossedElement::shift_generator(kShift, Q);
  CrossedElement tinv = t.star();
  CHECK(t * tinv == CrossedElement::one(kShift, Q));
  CrossedElement lhs = t * indicator_elt(u0) * tinv;
  CHECK(lhs == indicator_elt(u0.shift(1)));
}

TEST_CASE("star of a partial isometry") {
  // (chi_E t)* = chi_(T^-1 E) t^-1
  Clopen e = Clopen::cylinder(kShift, 0, 0, "1");
  CrossedElement s = indicator_elt(e, 1);
  CrossedElement st = s.star();
  CHECK(st.coefficient(-1) == LocallyConstantFn::indicator(e.shift(-1), Q));
  // s* s is the indicator of T^-1(E) at degree zero; it is an idempotent
  CrossedElement sts = st * s;
  CHECK(sts == indicator_elt(e.shift(-1)));
  CHECK(sts * sts == sts);
}

TEST_CASE("crossed algebra identities on random elements") {
  std::mt19937_64 rng(5);
  auto random_crossed = [&] {
    CrossedElement acc(kShift, Q);
    for (int t = 0; t < 1 + static_cast<int>(rng() % 2); ++t) {
      int lo = static_cast<int>(rng() % 3) - 1;
      int width = 1 + static_cast<int>(rng() % 2);
      std::vector<std::uint64_t> words;
      for (std::uint64_t w = 0; w < (std::uint64_t(1) << width); ++w)
        if (rng() % 2) words.push_back(w);
      Clopen u = Clopen::from_words(kShift, lo, lo + width - 1, std::move(words));
      int d = static_cast<int>(rng() % 5) - 2;
      Rat c(static_cast<long>(rng() % 5) - 2);
      acc = acc + indicator_elt(u, d).scaled(Q->from_rational(c));
    }
    return acc;
  };
  for (int i = 0; i < 150; ++i) {
    CrossedElement a = random_crossed(), b = random_crossed(), c = random_crossed();
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b).star() == b.star() * a.star());
    CHECK(a.star().star() == a);
  }
}

TEST_CASE("parser handles the grammar") {
  GroupAlgebraElement s = parse_group_expression("(1/2)*(1+a(0))*t", Q);
  GroupAlgebraElement manual(Q);
  manual.add_term(LampGroupElement::translation(1), Q->from_rational(Rat(1, 2)));
  LampGroupElement a0t = LampGroupElement::lamp(0) * LampGroupElement::translation(1);
  manual.add_term(a0t, Q->from_rational(Rat(1, 2)));
  CHECK(s == manual);

  CHECK(parse_group_expression("t*t^-1", Q) == GroupAlgebraElement::one(Q));
  CHECK(parse_group_expression("a(3)*a(3)", Q) == GroupAlgebraElement::one(Q));
  CHECK(parse_group_expression("e(1) + f(1)", Q) == GroupAlgebraElement::one(Q));
  CHECK(parse_group_expression("e(0)*f(0)", Q).is_zero());
  CHECK(parse_group_expression("-t + t", Q).is_zero());
  CHECK(parse_group_expression("t^2'", Q) ==
        parse_group_expression("t^-2", Q));  // ' binds after ^
  // cylinder atoms expand to idempotents
  GroupAlgebraElement cyl = parse_group_expression("cyl(0:1,\"01\")", Q);
  CHECK(cyl * cyl == cyl);
  CHECK(cyl == parse_group_expression("e(0)*f(1)", Q));
}

TEST_CASE("parser reports positions and bad characteristics") {
  try {
    parse_group_expression("t + * 2", Q);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::SyntaxError);
    CHECK(std::string(e.what()).find("position") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_group_expression("q", Q), Error);
  CHECK_THROWS_AS(parse_group_expression("(t", Q), Error);
  auto F2 = FieldContext::prime_field(2);
  CHECK_THROWS_AS(parse_group_expression("e(0)", F2), Error);
}

TEST_CASE("matrix expressions") {
  auto M = parse_group_matrix("[[t, 0], [e(0), 1]]", Q);
  CHECK(M.size() == 2);
  CHECK(M[0][0] == parse_group_expression("t", Q));
  CHECK(M[1][1] == GroupAlgebraElement::one(Q));
  CHECK_THROWS_AS(parse_group_matrix("[[t, 0]]", Q), Error);  // not square
  auto single = parse_group_matrix("t + 1", Q);
  CHECK(single.size() == 1);
}

TEST_CASE("transform of the canonical idempotent and unit") {
  GroupAlgebraElement e0 = parse_group_expression("e(0)", Q);
  CrossedElement img = fourier(e0);
  CHECK(img == indicator_elt(Clopen::cylinder(kShift, 0, 0, "0")));
  CHECK(fourier(GroupAlgebraElement::one(Q)) == CrossedElement::one(kShift, Q));
  // s = (1/2)(1+a0)t maps to chi([x0=0]) t
  CrossedElement s = fourier(parse_group_expression("(1/2)*(1+a(0))*t", Q));
  CHECK(s == indicator_elt(Clopen::cylinder(kShift, 0, 0, "0"), 1));
  // ss* is an idempotent, cross-check the *-structure transfer
  CrossedElement p = s * s.star();
  CHECK(p * p == p);
}

TEST_CASE("transform is a star isomorphism on random elements") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    GroupAlgebraElement x = random_group(rng), y = random_group(rng);
    CHECK(fourier(x * y) == fourier(x) * fourier(y));
    CHECK(fourier(x + y) == fourier(x) + fourier(y));
    CHECK(fourier(x.star()) == fourier(x).star());
    CHECK(inverse_fourier(fourier(x)) == x);
    CrossedElement z = fourier(y);
    CHECK(fourier(inverse_fourier(z)) == z);
  }
}

TEST_CASE("inverse transform on cylinders") {
  // chi([x0=0]) -> (1+a0)/2
  CrossedElement chi0 = indicator_elt(Clopen::cylinder(kShift, 0, 0, "0"));
  CHECK(inverse_fourier(chi0) == parse_group_expression("e(0)", Q));
  CrossedElement chix = CrossedElement::one(kShift, Q);
  CHECK(inverse_fourier(chix) == GroupAlgebraElement::one(Q));
  CrossedElement chi01 = indicator_elt(Clopen::cylinder(kShift, 0, 1, "01"));
  CHECK(inverse_fourier(chi01) == parse_group_expression("e(0)*f(1)", Q));
}

TEST_CASE("orbit quotients") {
  PeriodicPoint ones(kShift, "1");
  PeriodicPoint p01(kShift, "01");
  SUBCASE("functions evaluate along the orbit") {
    CrossedElement chi0 = indicator_elt(Clopen::cylinder(kShift, 0, 0, "0"));
    CHECK(quotient_at_orbit(chi0, ones).is_zero());
    LaurentMatrix m = quotient_at_orbit(chi0, p01);
    LaurentMatrix expect(Q, 2);
    expect.add_to_entry(0, 0, 0, Q->one());  // x0 = 0 at phase 0 only
    CHECK(m == expect);
  }
  SUBCASE("the shift maps to the cyclic matrix with a corner") {
    CrossedElement t = CrossedElement::shift_generator(kShift, Q);
    LaurentMatrix m = quotient_at_orbit(t, p01);
    LaurentMatrix expect(Q, 2);
    expect.add_to_entry(1, 0, 0, Q->one());
    expect.add_to_entry(0, 1, 1, Q->one());
    CHECK(m == expect);
    CHECK(quotient_at_orbit(CrossedElement::one(kShift, Q), p01) ==
          LaurentMatrix::identity(Q, 2));
  }
  SUBCASE("multiplicative and star compatible on random elements") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
      CrossedElement a = fourier(random_group(rng));
      CrossedElement b = fourier(random_group(rng));
      PeriodicPoint y(kShift, (i % 2) ? "01" : "011");
      CHECK(quotient_at_orbit(a * b, y) == quotient_at_orbit(a, y) * quotient_at_orbit(b, y));
      CHECK(quotient_at_orbit(a.star(), y) == quotient_at_orbit(a, y).star());
    }
  }
}
