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

#ifndef LAMPRANK_SESSION_HPP
#define LAMPRANK_SESSION_HPP

#include <optional>
#include <string>

#include "lamprank/bracket.hpp"
#include "lamprank/verify.hpp"

namespace lamprank {

// Run configuration shared by the C API and the CLI.
struct RunConfig {
  std::string field_spec = "Q";
  std::string system = "lamplighter";  // lamplighter | odometer
  int level = 0;
  int cutoff = 24;
  Rat target_width = parse_rational("1e-6");
  unsigned threads = 0;  // 0 = all available
  std::string format = "json";
  LampConvention convention = LampConvention::Ones;
  int max_level = 8;
  int max_cutoff = 40;
  std::uint64_t seed = 20260810;

  // Accepts a JSON object; unknown keys are rejected. The thread count may be
  // overridden by the LAMPRANK_THREADS environment variable.
  static RunConfig from_json(const std::string& json_text);
  void validate() const;
};

struct CommandResult {
  std::string json;
  bool budget_exceeded = false;
};

class Session {
 public:
  explicit Session(const std::string& config_json);

  const RunConfig& config() const { return cfg_; }

  // width: empty = single shot at (level, cutoff); otherwise the convergence
  // driver refines until the bracket is at most this wide.
  CommandResult rank(const std::string& expr, const std::string& width, bool betti);
  CommandResult components();
  CommandResult macci_row(unsigned m, unsigned upto) const;
  CommandResult fourier_of(const std::string& expr) const;
  CommandResult series(const std::string& op, const std::string& expr_a,
                       const std::string& expr_b) const;
  CommandResult quotient(const std::string& expr, const std::string& periodic_word) const;
  CommandResult verify(bool quick) const;
  CommandResult demo() const;

 private:
  SchemePtr make_scheme(int level) const;
  FieldContextPtr field_;
  RunConfig cfg_;
};

}  // namespace lamprank

#endif
