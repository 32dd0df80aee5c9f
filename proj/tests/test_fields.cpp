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

#include "lamprank/field.hpp"

using namespace lamprank;

TEST_CASE("rational arithmetic is exact and canonical") {
  auto Q = FieldContext::rationals();
  FieldElement a = Q->from_rational(Rat(1, 2));
  FieldElement b = Q->from_rational(Rat(1, 3));
  CHECK((a + b).to_string() == "5/6");
  CHECK((a * b).to_string() == "1/6");
  CHECK((a - a).is_zero());
  CHECK_THROWS_AS(a / Q->zero(), Error);
}

TEST_CASE("context mismatch is rejected") {
  auto Q = FieldContext::rationals();
  auto F7 = FieldContext::prime_field(7);
  CHECK_THROWS_AS(Q->one() + F7->one(), Error);
}

TEST_CASE("cyclotomic basics") {
  auto C2 = FieldContext::cyclotomic(2);
  FieldElement z2 = C2->primitive_root_of_unity(2);
  CHECK((z2 * z2).is_one());

  auto C4 = FieldContext::cyclotomic(4);
  FieldElement z4 = C4->primitive_root_of_unity(4);
  CHECK((z4.conj() * z4).is_one());
  CHECK(z4.pow(4).is_one());
  for (int k = 1; k < 4; ++k) CHECK(!z4.pow(k).is_one());

  // Phi_12 has degree 4
  auto C12 = FieldContext::cyclotomic(12);
  CHECK(C12->degree() == 4);
  FieldElement z12 = C12->primitive_root_of_unity(12);
  CHECK(z12.pow(12).is_one());
  for (int k = 1; k < 12; ++k) CHECK(!z12.pow(k).is_one());
}

TEST_CASE("field spec strings parse") {
  CHECK(FieldContext::parse("Q")->kind() == FieldKind::Rational);
  CHECK(FieldContext::parse("Q(zeta_6)")->cyclotomic_order() == 6);
  CHECK(FieldContext::parse("GF(7)")->prime() == 7);
  auto F = FieldContext::parse("GF(3^4;frob)");
  CHECK(F->kind() == FieldKind::FrobeniusField);
  CHECK(F->degree() == 4);
  CHECK_THROWS_AS(FieldContext::parse("GF(4)"), Error);
  CHECK_THROWS_AS(FieldContext::parse("GF(3^3;frob)"), Error);
  CHECK_THROWS_AS(FieldContext::parse("Z"), Error);
}

TEST_CASE("positive definiteness flags") {
  CHECK(FieldContext::rationals()->positive_definite_involution());
  CHECK(FieldContext::cyclotomic(8)->positive_definite_involution());
  CHECK(!FieldContext::prime_field(5)->positive_definite_involution());
  CHECK(!FieldContext::frobenius_field(3, 1)->positive_definite_involution());
}

TEST_CASE("involutions are field automorphisms of order two") {
  std::mt19937_64 rng(7);
  std::vector<FieldContextPtr> fields = {FieldContext::rationals(), FieldContext::cyclotomic(5),
                                         FieldContext::prime_field(11),
                                         FieldContext::frobenius_field(3, 2)};
  for (const auto& K : fields) {
    auto rand_elt = [&] {
      FieldElement e = K->from_int(static_cast<long>(rng() % 13) - 6);
      // mix in a root of unity when one exists to leave the prime field
      if (K->kind() == FieldKind::Cyclotomic)
        e = e + K->primitive_root_of_unity(5).pow(static_cast<long>(rng() % 5));
      if (K->kind() == FieldKind::FrobeniusField)
        e = e + K->primitive_root_of_unity(8).pow(static_cast<long>(rng() % 8));
      return e;
    };
    for (int i = 0; i < 50; ++i) {
      FieldElement x = rand_elt(), y = rand_elt();
      CHECK(x.conj().conj() == x);
      CHECK((x * y).conj() == x.conj() * y.conj());
      CHECK((x + y).conj() == x.conj() + y.conj());
    }
  }
}

TEST_CASE("frobenius involution is x -> x^(p^n)") {
  auto F = FieldContext::frobenius_field(3, 1);  // GF(9), involution x -> x^3
  FieldElement g = F->primitive_root_of_unity(8);
  CHECK(g.conj() == g.pow(3));
  // proper: x conj(x) = 0 only at 0
  for (long k = 0; k < 8; ++k) CHECK(!(g.pow(k) * g.pow(k).conj()).is_zero());
}

TEST_CASE("compatible root families") {
  SUBCASE("N=2 over Q") {
    auto fam = compatible_roots(2, FieldContext::rationals());
    CHECK(fam.at(1).is_one());
    CHECK(fam.at(2) == FieldContext::rationals()->from_int(-1));
  }
  SUBCASE("N=4 over Q(zeta_4)") {
    auto C4 = FieldContext::cyclotomic(4);
    auto fam = compatible_roots(4, C4);
    CHECK(fam.at(2) == fam.at(4).pow(2));
    CHECK(fam.at(2) == C4->from_int(-1));  // zeta_4^2 = -1
  }
  SUBCASE("N=6 over Q(zeta_6): all pairwise equations") {
    auto C6 = FieldContext::cyclotomic(6);
    auto fam = compatible_roots(6, C6);
    CHECK(fam.at(6).pow(3) == fam.at(2));
    CHECK(fam.at(6).pow(2) == fam.at(3));
    for (unsigned d : {1u, 2u, 3u, 6u})
      for (unsigned e : {1u, 2u, 3u, 6u}) {
        if (6 % (d * e) != 0) continue;
        CHECK(fam.at(d * e).pow(d) == fam.at(e));
      }
  }
  SUBCASE("finite fields") {
    auto F13 = FieldContext::prime_field(13);
    auto fam = compatible_roots(12, F13);
    for (unsigned d : {1u, 2u, 3u, 4u, 6u, 12u}) {
      CHECK(fam.at(d).pow(static_cast<long>(d)).is_one());
      for (unsigned k = 1; k < d; ++k) CHECK(!fam.at(d).pow(static_cast<long>(k)).is_one());
    }
    auto F9 = FieldContext::frobenius_field(3, 1);  // multiplicative order 8
    auto fam8 = compatible_roots(8, F9);
    CHECK(fam8.at(8).pow(2) == fam8.at(4));
    CHECK(fam8.at(8).conj() == fam8.at(8).pow(3));
  }
  SUBCASE("failures") {
    CHECK_THROWS_AS(compatible_roots(3, FieldContext::rationals()), Error);
    CHECK_THROWS_AS(compatible_roots(7, FieldContext::prime_field(7)), Error);
    CHECK_THROWS_AS(compatible_roots(5, FieldContext::prime_field(13)), Error);
  }
}

TEST_CASE("frobenius modulus is deterministic") {
  auto a = FieldContext::frobenius_field(3, 1);
  auto b = FieldContext::frobenius_field(3, 1);
  CHECK(a->frobenius_modulus() == b->frobenius_modulus());
}

TEST_CASE("rational literal parsing") {
  CHECK(parse_rational("5/6") == Rat(5, 6));
  CHECK(parse_rational("-3") == Rat(-3));
  CHECK(parse_rational("0.25") == Rat(1, 4));
  CHECK(parse_rational("1e-6") == Rat(1, 1000000));
  CHECK(parse_rational("2.5e2") == Rat(250));
  CHECK_THROWS_AS(parse_rational("abc"), Error);
}

TEST_CASE("primality helper") {
  CHECK(miller_rabin_is_prime(2));
  CHECK(miller_rabin_is_prime(1000000007ull));
  CHECK(!miller_rabin_is_prime(1));
  CHECK(!miller_rabin_is_prime(561));  // Carmichael
}
