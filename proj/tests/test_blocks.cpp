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

#include "lamprank/blocks.hpp"
#include "lamprank/blocks_internal.hpp"
#include "lamprank/parser.hpp"

using namespace lamprank;

namespace {
const FieldContextPtr Q = FieldContext::rationals();

CrossedElement indicator_elt(const Clopen& u, int degree = 0) {
  return CrossedElement::monomial(LocallyConstantFn::indicator(u, Q), degree);
}

CrossedElement shift_edge(const SchemePtr& s) {
  // chi(X \ E) t, the canonical partial isometry
  return indicator_elt(s->base().complement(), 1);
}
}  // namespace

TEST_CASE("matrix units") {
  SchemePtr s0 = lamplighter_scheme(0);
  ComponentSetPtr cs = enumerate_components(s0, 4);
  std::size_t w3 = *cs->find({0, 0});  // length-3 component
  SUBCASE("e_00 is the component indicator") {
    CHECK(matrix_unit(*cs, w3, 0, 0, Q) == indicator_elt(cs->components()[w3].set));
  }
  SUBCASE("full relation table on a length-3 component") {
    for (unsigned i = 0; i < 3; ++i)
      for (unsigned j = 0; j < 3; ++j)
        for (unsigned t = 0; t < 3; ++t)
          for (unsigned s = 0; s < 3; ++s) {
            CrossedElement prod = matrix_unit(*cs, w3, i, j, Q) * matrix_unit(*cs, w3, t, s, Q);
            if (j == t)
              CHECK(prod == matrix_unit(*cs, w3, i, s, Q));
            else
              CHECK(prod.is_zero());
          }
  }
  SUBCASE("h_W is an idempotent commuting with the generators on blocks") {
    CrossedElement h(s0->space(), Q);
    for (unsigned i = 0; i < 3; ++i)
      h = h + matrix_unit(*cs, w3, i, i, Q);
    CHECK(h * h == h);
    CrossedElement gen = shift_edge(s0);
    ComponentSetPtr big = enumerate_components(s0, 6);
    CHECK(represent(h * gen, big) == represent(gen * h, big));
  }
  CHECK_THROWS_AS(matrix_unit(*cs, w3, 3, 0, Q), Error);
}

TEST_CASE("blocks of the canonical generators") {
  SchemePtr s0 = lamplighter_scheme(0);
  ComponentSetPtr cs = enumerate_components(s0, 5);
  SUBCASE("chi(X\\E)t produces the lower shift in every block") {
    BlockElement b = represent(shift_edge(s0), cs);
    for (std::size_t i = 0; i < cs->size(); ++i) {
      unsigned len = static_cast<unsigned>(cs->components()[i].length);
      for (unsigned r = 0; r < len; ++r)
        for (unsigned c = 0; c < len; ++c)
          CHECK(b.block(i).at(r, c) == (r == c + 1 ? Q->one() : Q->zero()));
    }
  }
  SUBCASE("chi(E) occupies the top-left corner in every block") {
    BlockElement b = represent(indicator_elt(s0->base()), cs);
    for (std::size_t i = 0; i < cs->size(); ++i) {
      unsigned len = static_cast<unsigned>(cs->components()[i].length);
      for (unsigned r = 0; r < len; ++r)
        for (unsigned c = 0; c < len; ++c)
          CHECK(b.block(i).at(r, c) == (r == 0 && c == 0 ? Q->one() : Q->zero()));
    }
  }
  SUBCASE("path-graph ranks for the symmetrized generator") {
    // blocks of s + s* at level 0 are N + N^T: rank d-1 when d is odd, d when even
    CrossedElement s = fourier(parse_group_expression("(1/2)*(1+a(0))*t", Q));
    CrossedElement a = s + s.star();
    BlockElement b = represent(a, cs);
    for (std::size_t i = 0; i < cs->size(); ++i) {
      unsigned d = static_cast<unsigned>(cs->components()[i].length);
      CHECK(matrix_rank(b.block(i)) == (d % 2 == 1 ? d - 1 : d));
    }
  }
}

TEST_CASE("representation certifies membership at the level") {
  SchemePtr s0 = lamplighter_scheme(0);
  ComponentSetPtr cs = enumerate_components(s0, 4);
  // raw t has a unit coefficient meeting E: not representable without rewriting
  CHECK_THROWS_AS(represent(CrossedElement::shift_generator(s0->space(), Q), cs), Error);
  // a lamp far outside the window needs a deeper level
  CrossedElement far = fourier(parse_group_expression("a(3)", Q));
  CHECK_THROWS_AS(represent(far, cs), Error);
  SchemePtr s3 = lamplighter_scheme(3);
  ComponentSetPtr cs3 = enumerate_components(s3, 8);
  CHECK(represent(far, cs3).count() == cs3->size());  // well defined at level 3
}

TEST_CASE("substituted representation and the approximant") {
  SchemePtr s0 = lamplighter_scheme(0);
  ComponentSetPtr cs = enumerate_components(s0, 6);
  CrossedElement t = CrossedElement::shift_generator(s0->space(), Q);
  SUBCASE("t rewrites to the edge with error mu(E)") {
    auto [approx, err] = approximant(t, s0);
    CHECK(approx == shift_edge(s0));
    CHECK(err == Rat(1, 2));
    auto sub = represent_substituted(CrossedMatrix::scalar(t), cs);
    CHECK(sub.substitution_error == Rat(1, 2));
    CHECK(sub.blocks == represent(shift_edge(s0), cs));
  }
  SUBCASE("representable input is untouched") {
    CrossedElement a = shift_edge(s0) + indicator_elt(s0->base());
    auto [approx, err] = approximant(a, s0);
    CHECK(approx == a);
    CHECK(err == Rat(0));
  }
  SUBCASE("1 + t keeps a unipotent block family") {
    CrossedElement a = CrossedElement::one(s0->space(), Q) + t;
    auto [approx, err] = approximant(a, s0);
    CHECK(err == Rat(1, 2));
    BlockElement b = represent(approx, cs);
    for (std::size_t i = 0; i < cs->size(); ++i)
      CHECK(matrix_rank(b.block(i)) == b.block(i).rows());
  }
  SUBCASE("higher powers accumulate degree-weighted errors") {
    CrossedElement a = t * t + t.star();
    auto [approx, err] = approximant(a, s0);
    (void)approx;
    CHECK(err == Rat(2) * Rat(1, 2) + Rat(1) * Rat(1, 2));
  }
}

TEST_CASE("membership test matches the generated subalgebra") {
  SchemePtr s0 = lamplighter_scheme(0);
  // chi[x1=0] lies at level 0 (it is the coefficient of the adjoint generator)
  auto chi = [&](int lo, int hi, const char* w) {
    return LocallyConstantFn::indicator(Clopen::cylinder(s0->space(), lo, hi, w), Q);
  };
  CHECK(in_base_subalgebra(chi(1, 1, "0"), *s0));
  CHECK(in_base_subalgebra(chi(0, 1, "00"), *s0));
  CHECK(in_base_subalgebra(chi(0, 1, "11"), *s0));  // inclusion-exclusion over generators
  CHECK(!in_base_subalgebra(chi(-1, 0, "11"), *s0));  // left edge is out of reach
  CHECK(!in_base_subalgebra(chi(3, 3, "0"), *s0));    // needs passage through x1, x2
  CHECK(in_base_subalgebra(chi(3, 3, "0") * chi(1, 2, "00"), *s0));  // reachable along zeros
  SchemePtr o2 = odometer_scheme(2);
  CHECK(in_base_subalgebra(chi(1, 2, "01"), *o2));
  LocallyConstantFn too_wide =
      LocallyConstantFn::indicator(Clopen::cylinder(o2->space(), 1, 3, "010"), Q);
  CHECK(!in_base_subalgebra(too_wide, *o2));
}

TEST_CASE("block representation is a star homomorphism") {
  std::mt19937_64 rng(31);
  SchemePtr s1 = lamplighter_scheme(1);
  ComponentSetPtr cs = enumerate_components(s1, 7);
  auto random_elt = [&] {
    CrossedElement acc(s1->space(), Q);
    for (int t = 0; t < 2; ++t) {
      CrossedElement prod = CrossedElement::one(s1->space(), Q);
      for (int f = 0; f < 1 + static_cast<int>(rng() % 3); ++f) {
        std::size_t z = rng() % s1->parts().size();
        CrossedElement gen = indicator_elt(s1->parts()[z], 1);
        prod = prod * (rng() % 2 ? gen : gen.star());
      }
      Rat c(static_cast<long>(rng() % 5) - 2);
      acc = acc + prod.scaled(Q->from_rational(c));
    }
    return acc;
  };
  for (int i = 0; i < 60; ++i) {
    CrossedElement a = random_elt(), b = random_elt();
    CHECK(represent(a * b, cs) == represent(a, cs) * represent(b, cs));
    CHECK(represent(a + b, cs) == represent(a, cs) + represent(b, cs));
    CHECK(represent(a.star(), cs) == represent(a, cs).star());
  }
}

TEST_CASE("refinement embeddings") {
  SUBCASE("odometer doubles blocks") {
    ComponentSetPtr coarse = enumerate_components(odometer_scheme(1), 2);
    ComponentSetPtr fine = enumerate_components(odometer_scheme(2), 4);
    BlockElement x(coarse, 1, Q);
    x.block(0).at(0, 0) = Q->from_int(1);
    x.block(0).at(0, 1) = Q->from_int(2);
    x.block(0).at(1, 0) = Q->from_int(3);
    x.block(0).at(1, 1) = Q->from_int(4);
    BlockElement y = refine_embedding(coarse, fine, x);
    REQUIRE(y.block(0).rows() == 4);
    for (unsigned i = 0; i < 4; ++i)
      for (unsigned j = 0; j < 4; ++j) {
        FieldElement expect = (i / 2 == j / 2) ? x.block(0).at(i % 2, j % 2) : Q->zero();
        CHECK(y.block(0).at(i, j) == expect);
      }
  }
  SUBCASE("identity maps to identity") {
    ComponentSetPtr coarse = enumerate_components(lamplighter_scheme(0), 8);
    ComponentSetPtr fine = enumerate_components(lamplighter_scheme(1), 8);
    BlockElement one = BlockElement::identity(coarse, 1, Q);
    CHECK(refine_embedding(coarse, fine, one) == BlockElement::identity(fine, 1, Q));
  }
  SUBCASE("commuting diagram for the canonical generator") {
    SchemePtr c = lamplighter_scheme(0), f = lamplighter_scheme(1);
    ComponentSetPtr ccs = enumerate_components(c, 8);
    ComponentSetPtr fcs = enumerate_components(f, 8);
    CrossedElement a = shift_edge(c);
    CHECK(refine_embedding(ccs, fcs, represent(a, ccs)) == represent(a, fcs));
  }
  SUBCASE("nestedness is checked") {
    ComponentSetPtr a = enumerate_components(lamplighter_scheme(1), 6);
    ComponentSetPtr b = enumerate_components(lamplighter_scheme(0), 6);
    BlockElement x = BlockElement::identity(a, 1, Q);
    CHECK_THROWS_AS(refine_embedding(a, b, x), Error);  // wrong direction
  }
  SUBCASE("missing coarse component is reported") {
    // coarse cutoff too small to cover the segments of fine components
    ComponentSetPtr coarse = enumerate_components(lamplighter_scheme(0), 2);
    ComponentSetPtr fine = enumerate_components(lamplighter_scheme(1), 5);
    BlockElement x = BlockElement::identity(coarse, 1, Q);
    CHECK_THROWS_AS(refine_embedding(coarse, fine, x), Error);
  }
}
