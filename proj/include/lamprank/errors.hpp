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

#ifndef LAMPRANK_ERRORS_HPP
#define LAMPRANK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lamprank {

enum class Err {
  DivisionByZero,
  ContextMismatch,
  NoPrimitiveRoot,
  CharacteristicDividesOrder,
  SpaceMismatch,
  GeometryMismatch,
  SyntaxError,
  CharacteristicError,
  CutoffTooLargeForMemory,
  IndexOutOfRange,
  NotRepresentableAtLevel,
  SchemesNotNested,
  SegmentNotFound,
  SupportViolation,
  NotInvertibleConstantTerm,
  CutoffMismatch,
  SchemeMismatch,
  NotSpecial,
  LevelZeroUnsupported,
  NotProper,
  DegreeOverflow,
  PatternViolated,
  BudgetExceeded,
  ConfigError,
  Internal,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

}  // namespace lamprank

#endif
