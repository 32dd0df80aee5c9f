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

#ifndef LAMPRANK_GROUP_ALGEBRA_HPP
#define LAMPRANK_GROUP_ALGEBRA_HPP

#include <map>
#include <vector>

#include "lamprank/crossed.hpp"

namespace lamprank {

// Element of the restricted wreath product of Z_2 by Z in normal form
// (prod of lamp generators at absolute positions) * t^shift.
struct LampGroupElement {
  std::vector<int> lamps;  // sorted, distinct
  int shift = 0;

  static LampGroupElement identity() { return {}; }
  static LampGroupElement lamp(int i) { return {{i}, 0}; }
  static LampGroupElement translation(int j) { return {{}, j}; }

  LampGroupElement operator*(const LampGroupElement& o) const;
  LampGroupElement inverse() const;
  bool operator==(const LampGroupElement& o) const = default;
  auto operator<=>(const LampGroupElement& o) const = default;
  std::string to_string() const;
};

// Finitely supported map group -> K with involution (c g)* = conj(c) g^(-1).
class GroupAlgebraElement {
 public:
  GroupAlgebraElement() = default;
  explicit GroupAlgebraElement(FieldContextPtr K) : field_(std::move(K)) {}
  static GroupAlgebraElement zero(const FieldContextPtr& K) { return GroupAlgebraElement(K); }
  static GroupAlgebraElement one(const FieldContextPtr& K);
  static GroupAlgebraElement group_element(const FieldContextPtr& K, LampGroupElement g);

  const FieldContextPtr& field() const { return field_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<LampGroupElement, FieldElement>& terms() const { return terms_; }

  GroupAlgebraElement operator+(const GroupAlgebraElement& o) const;
  GroupAlgebraElement operator-(const GroupAlgebraElement& o) const;
  GroupAlgebraElement operator*(const GroupAlgebraElement& o) const;
  GroupAlgebraElement scaled(const FieldElement& c) const;
  GroupAlgebraElement star() const;
  GroupAlgebraElement pow(long e) const;  // negative exponents for invertible monomials only

  bool operator==(const GroupAlgebraElement& o) const;
  std::string to_string() const;

  void add_term(const LampGroupElement& g, const FieldElement& c);

 private:
  FieldContextPtr field_;
  std::map<LampGroupElement, FieldElement> terms_;
};

// The *-isomorphism onto the crossed product over {0,1}^Z:
// a_i -> chi(U_i) - chi(X \ U_i) with U_i = [x_i = 0], t -> t.
CrossedElement fourier(const GroupAlgebraElement& x);
GroupAlgebraElement inverse_fourier(const CrossedElement& x);

// l x l matrices over the Laurent polynomial ring K[s, s^(-1)], with s* = s^(-1).
class LaurentMatrix {
 public:
  LaurentMatrix(FieldContextPtr K, unsigned l);
  static LaurentMatrix identity(const FieldContextPtr& K, unsigned l);

  unsigned size() const { return l_; }
  const std::map<int, FieldElement>& entry(unsigned i, unsigned j) const;
  void add_to_entry(unsigned i, unsigned j, int power, const FieldElement& c);

  LaurentMatrix operator+(const LaurentMatrix& o) const;
  LaurentMatrix operator*(const LaurentMatrix& o) const;
  LaurentMatrix star() const;  // conjugate transpose with s -> s^(-1)
  bool operator==(const LaurentMatrix& o) const;
  bool is_zero() const;
  std::string to_string() const;

 private:
  FieldContextPtr field_;
  unsigned l_;
  std::vector<std::map<int, FieldElement>> entries_;  // row-major; maps power-of-s -> coeff
};

// Evaluation of the crossed product along the finite orbit of a periodic point:
// functions go to diag(f(y), ..., f(T^(l-1) y)), the shift to the cyclic matrix
// with an s in the corner.
LaurentMatrix quotient_at_orbit(const CrossedElement& a, const PeriodicPoint& y);

}  // namespace lamprank

#endif
