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

#ifndef LAMPRANK_VERIFY_HPP
#define LAMPRANK_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace lamprank {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string details;
  long wall_ms = 0;
};

struct VerifyOptions {
  bool quick = false;       // smaller case counts for interactive runs
  std::uint64_t seed = 20260810;
  unsigned threads = 0;     // 0 = hardware concurrency
};

// The quantitative checks, in order; every tolerance is pinned in code.
std::vector<CriterionResult> run_verification(const VerifyOptions& opts);

}  // namespace lamprank

#endif
