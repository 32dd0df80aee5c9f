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

#include "lamprank.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "lamprank/session.hpp"

using lamprank::CommandResult;
using lamprank::Err;
using lamprank::Error;
using lamprank::Session;

struct lr_session {
  Session impl;
  std::string last_error;
  explicit lr_session(const char* config) : impl(config ? config : "") {}
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

lr_status status_of(Err code) {
  switch (code) {
    case Err::ConfigError:
      return LR_ERR_CONFIG;
    case Err::SyntaxError:
      return LR_ERR_SYNTAX;
    case Err::NotRepresentableAtLevel:
      return LR_ERR_NOT_REPRESENTABLE;
    case Err::BudgetExceeded:
      return LR_ERR_BUDGET;
    case Err::CutoffTooLargeForMemory:
      return LR_ERR_MEMORY;
    case Err::Internal:
      return LR_ERR_INTERNAL;
    default:
      return LR_ERR_DOMAIN;
  }
}

template <typename Fn>
lr_status guarded(lr_session* s, char** json_out, Fn&& fn) {
  if (!s) return LR_ERR_CONFIG;
  if (json_out) *json_out = nullptr;
  s->last_error.clear();
  try {
    CommandResult r = fn();
    if (json_out) *json_out = dup_string(r.json);
    if (r.budget_exceeded) {
      s->last_error = "budget exhausted; best available result returned";
      return LR_ERR_BUDGET;
    }
    return LR_OK;
  } catch (const Error& e) {
    s->last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    s->last_error = e.what();
    return LR_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* lr_version(void) { return "lamprank 1.0.0"; }

lr_session* lr_session_create(const char* config_json, char** err_out) {
  if (err_out) *err_out = nullptr;
  try {
    return new lr_session(config_json);
  } catch (const Error& e) {
    if (err_out) *err_out = dup_string(e.what());
    return nullptr;
  } catch (const std::exception& e) {
    if (err_out) *err_out = dup_string(e.what());
    return nullptr;
  }
}

void lr_session_destroy(lr_session* s) { delete s; }

const char* lr_last_error(const lr_session* s) {
  return s ? s->last_error.c_str() : "null session";
}

lr_status lr_rank(lr_session* s, const char* expr, const char* width, char** json_out) {
  return guarded(s, json_out, [&] {
    return s->impl.rank(expr ? expr : "", width ? width : "", /*betti=*/false);
  });
}

lr_status lr_betti(lr_session* s, const char* expr, const char* width, char** json_out) {
  return guarded(s, json_out, [&] {
    return s->impl.rank(expr ? expr : "", width ? width : "", /*betti=*/true);
  });
}

lr_status lr_components(lr_session* s, char** json_out) {
  return guarded(s, json_out, [&] { return s->impl.components(); });
}

lr_status lr_macci(lr_session* s, unsigned m, unsigned upto, char** json_out) {
  return guarded(s, json_out, [&] { return s->impl.macci_row(m, upto); });
}

lr_status lr_fourier(lr_session* s, const char* expr, char** json_out) {
  return guarded(s, json_out, [&] { return s->impl.fourier_of(expr ? expr : ""); });
}

lr_status lr_series(lr_session* s, const char* op, const char* expr_a, const char* expr_b,
                    char** json_out) {
  return guarded(s, json_out, [&] {
    return s->impl.series(op ? op : "", expr_a ? expr_a : "", expr_b ? expr_b : "");
  });
}

lr_status lr_quotient(lr_session* s, const char* expr, const char* periodic_word,
                      char** json_out) {
  return guarded(s, json_out, [&] {
    return s->impl.quotient(expr ? expr : "", periodic_word ? periodic_word : "");
  });
}

lr_status lr_verify(lr_session* s, int quick, char** json_out) {
  lr_status st = guarded(s, json_out, [&] { return s->impl.verify(quick != 0); });
  // verification failures surface as a budget-style status with the report intact
  return st;
}

lr_status lr_demo_gz(lr_session* s, char** json_out) {
  return guarded(s, json_out, [&] { return s->impl.demo(); });
}

void lr_string_free(char* s) { std::free(s); }

}  // extern "C"
