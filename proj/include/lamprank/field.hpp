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

#ifndef LAMPRANK_FIELD_HPP
#define LAMPRANK_FIELD_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "lamprank/rational.hpp"

namespace lamprank {

class FieldElement;
class FieldContext;
using FieldContextPtr = std::shared_ptr<const FieldContext>;

enum class FieldKind { Rational, Cyclotomic, PrimeField, FrobeniusField };

// Exact coefficient field with involution.
//
//   Rational        Q with the identity involution
//   Cyclotomic(N)   Q(zeta_N), residues mod the N-th cyclotomic polynomial,
//                   involution zeta -> zeta^(N-1) = zeta^(-1)
//   PrimeField(p)   F_p, identity involution
//   FrobeniusField(p,n)  F_{p^(2n)} mod a fixed irreducible polynomial,
//                   involution x -> x^(p^n)
class FieldContext : public std::enable_shared_from_this<FieldContext> {
 public:
  static FieldContextPtr rationals();
  static FieldContextPtr cyclotomic(unsigned N);
  static FieldContextPtr prime_field(std::uint64_t p);
  static FieldContextPtr frobenius_field(std::uint64_t p, unsigned n);

  // Spec strings: Q | Q(zeta_N) | GF(p) | GF(p^2n;frob)
  static FieldContextPtr parse(const std::string& spec);

  FieldKind kind() const { return kind_; }
  std::uint64_t characteristic() const;
  bool positive_definite_involution() const { return positive_definite_; }
  std::string description() const;

  unsigned cyclotomic_order() const { return cyclo_n_; }
  unsigned degree() const;  // dimension over the prime field / Q
  std::uint64_t prime() const { return prime_; }
  unsigned frobenius_half_degree() const { return frob_n_; }
  const std::vector<std::uint64_t>& frobenius_modulus() const { return frob_modulus_; }
  const std::vector<Rat>& cyclotomic_modulus() const { return cyclo_modulus_; }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(long v) const;
  FieldElement from_rational(const Rat& r) const;  // CharacteristicError if den not invertible

  // A primitive N-th root of unity in this field; NoPrimitiveRoot if none exists,
  // CharacteristicDividesOrder if char(K) | N.
  FieldElement primitive_root_of_unity(unsigned N) const;

  bool same_as(const FieldContext& other) const;

 private:
  FieldContext() = default;
  friend class FieldElement;

  FieldKind kind_ = FieldKind::Rational;
  unsigned cyclo_n_ = 0;
  std::vector<Rat> cyclo_modulus_;  // monic Phi_N, index = power, leading coeff included
  std::uint64_t prime_ = 0;
  unsigned frob_n_ = 0;
  std::vector<std::uint64_t> frob_modulus_;  // monic irreducible of degree 2n over F_p
  bool positive_definite_ = true;
};

class FieldElement {
 public:
  FieldElement() = default;  // zero of Q, for container use

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;  // DivisionByZero
  FieldElement inverse() const;
  FieldElement conj() const;
  FieldElement pow(long e) const;  // negative e inverts first

  bool is_zero() const;
  bool is_one() const;
  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  // Total order used only for deterministic containers/serialization.
  bool less_than(const FieldElement& o) const;

  const FieldContextPtr& context() const { return ctx_; }
  std::string to_string() const;

  // Rational-kind accessor (Internal error on other kinds).
  const Rat& rational_value() const;

 private:
  friend class FieldContext;
  using Rep = std::variant<Rat, std::vector<Rat>, std::uint64_t, std::vector<std::uint64_t>>;

  FieldElement(FieldContextPtr ctx, Rep rep) : ctx_(std::move(ctx)), rep_(std::move(rep)) {}
  void check_same_context(const FieldElement& o) const;

  FieldContextPtr ctx_;
  Rep rep_ = Rat(0);
};

// The family { xi_d = xi_N^(N/d) : d | N }; satisfies xi_(d*e)^d = xi_e whenever d*e | N.
std::map<unsigned, FieldElement> compatible_roots(unsigned N, const FieldContextPtr& ctx);

// Exact polynomial helpers shared with tests.
std::vector<Int> cyclotomic_polynomial(unsigned N);
bool miller_rabin_is_prime(std::uint64_t n);

}  // namespace lamprank

#endif
