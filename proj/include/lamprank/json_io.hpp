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

#ifndef LAMPRANK_JSON_IO_HPP
#define LAMPRANK_JSON_IO_HPP

#include <json.hpp>

#include "lamprank/bracket.hpp"
#include "lamprank/group_algebra.hpp"

namespace lamprank {

using Json = nlohmann::ordered_json;

Json rat_json(const Rat& r);  // {"exact":"p/q","decimal":<double>}
Json bracket_json(const RankBracket& b);
Json clopen_json(const Clopen& c);           // {window:[a,b], words:[...]}
Json locfn_json(const LocallyConstantFn& f);
Json crossed_json(const CrossedElement& a);
Json components_json(const ComponentSet& cs);
Json laurent_json(const LaurentMatrix& m);

}  // namespace lamprank

#endif
