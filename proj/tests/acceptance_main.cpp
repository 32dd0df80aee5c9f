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

// Acceptance suite: runs every quantitative criterion at full sample counts
// and prints one pass/fail line per criterion. Nonzero exit on any failure.
//
//   acceptance [--quick] [--seed N]

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "lamprank/verify.hpp"

int main(int argc, char** argv) {
  lamprank::VerifyOptions opts;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) {
      opts.quick = true;
    } else if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
      opts.seed = std::strtoull(argv[++i], nullptr, 10);
    } else {
      std::fprintf(stderr, "usage: acceptance [--quick] [--seed N]\n");
      return 2;
    }
  }
  if (const char* env = std::getenv("LAMPRANK_TEST_SEED"))
    opts.seed = std::strtoull(env, nullptr, 10);

  auto results = lamprank::run_verification(opts);
  bool all = true;
  for (const auto& r : results) {
    std::printf("[%s] %d. %s (%ld ms)%s%s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.wall_ms, r.details.empty() ? "" : " -- ", r.details.c_str());
    all = all && r.pass;
  }
  std::printf("%s\n", all ? "ACCEPTANCE: all criteria passed"
                          : "ACCEPTANCE: FAILURES PRESENT");
  return all ? 0 : 1;
}
