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

#ifndef LAMPRANK_PARSER_HPP
#define LAMPRANK_PARSER_HPP

#include <string>
#include <vector>

#include "lamprank/group_algebra.hpp"

namespace lamprank {

// Grammar:
//   expr   := ["-"] term { ("+"|"-") term }
//   term   := factor { "*" factor }
//   factor := atom [ "^" sint ] [ "'" ]
//   atom   := rational | "t" | "a(" sint ")" | "e(" sint ")" | "f(" sint ")"
//           | "cyl(" sint ":" sint "," word ")" | "(" expr ")"
// e(i) = (1 + a_i)/2, f(i) = (1 - a_i)/2, postfix ' is the involution.
GroupAlgebraElement parse_group_expression(const std::string& text, const FieldContextPtr& K);

// "[[e11, e12], [e21, e22]]": a square matrix of expressions. A bare expression
// parses as the 1x1 matrix.
std::vector<std::vector<GroupAlgebraElement>> parse_group_matrix(const std::string& text,
                                                                 const FieldContextPtr& K);

}  // namespace lamprank

#endif
