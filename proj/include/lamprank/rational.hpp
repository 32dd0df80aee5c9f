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

#ifndef LAMPRANK_RATIONAL_HPP
#define LAMPRANK_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

#include "lamprank/errors.hpp"

namespace lamprank {

using Int = mpz_class;
using Rat = mpq_class;

// "p/q" in lowest terms, denominator always printed.
inline std::string rat_string(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline double rat_double(const Rat& r) { return r.get_d(); }

// Accepts "p", "p/q" and simple decimal/scientific literals such as "1e-6" or "0.25".
Rat parse_rational(const std::string& text);

inline Rat pow2(long e) {
  Rat r(1);
  if (e >= 0)
    mpz_ui_pow_ui(r.get_num().get_mpz_t(), 2, static_cast<unsigned long>(e));
  else
    mpz_ui_pow_ui(r.get_den().get_mpz_t(), 2, static_cast<unsigned long>(-e));
  r.canonicalize();
  return r;
}

}  // namespace lamprank

#endif
