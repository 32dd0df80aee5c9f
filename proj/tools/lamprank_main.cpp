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

// Command-line front end. All computation goes through the shared C API.

#include <cstdio>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lamprank.h"

namespace {

using nlohmann::json;

struct Options {
  std::string field = "Q";
  std::string system = "lamplighter";
  int level = 0;
  int cutoff = 24;
  unsigned threads = 0;
  std::string convention = "ones";
  std::string format = "json";
  int max_level = 8;
  int max_cutoff = 40;
  std::uint64_t seed = 20260810;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--field", o.field, "coefficient field: Q, Q(zeta_N), GF(p), GF(p^2n;frob)");
  cmd->add_option("--system", o.system, "dynamical system: lamplighter|odometer");
  cmd->add_option("--level,-n", o.level, "approximation level");
  cmd->add_option("--cutoff,-L", o.cutoff, "component length cutoff");
  cmd->add_option("--threads", o.threads, "worker threads (0 = all; env LAMPRANK_THREADS overrides)");
  cmd->add_option("--convention", o.convention, "marked-block convention: ones|zeros");
  cmd->add_option("--format", o.format, "output format: json|csv");
  cmd->add_option("--max-level", o.max_level, "level budget for --width runs");
  cmd->add_option("--max-cutoff", o.max_cutoff, "cutoff budget for --width runs");
  cmd->add_option("--seed", o.seed, "sampling seed (verify)");
}

std::string config_json(const Options& o) {
  json j;
  j["field"] = o.field;
  j["system"] = o.system;
  j["level"] = o.level;
  j["cutoff"] = o.cutoff;
  j["threads"] = o.threads;
  j["convention"] = o.convention;
  j["format"] = o.format;
  j["max_level"] = o.max_level;
  j["max_cutoff"] = o.max_cutoff;
  j["seed"] = o.seed;
  return j.dump();
}

struct SessionHandle {
  lr_session* s = nullptr;
  ~SessionHandle() { lr_session_destroy(s); }
};

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { lr_string_free(p); }
};

int open_session(const Options& o, SessionHandle& h) {
  OwnedString err;
  h.s = lr_session_create(config_json(o).c_str(), &err.p);
  if (!h.s) {
    std::cerr << "error: " << (err.p ? err.p : "session creation failed") << "\n";
    return 1;
  }
  return 0;
}

void print_bracket_csv(const json& j) {
  std::cout << "lower,upper,lower_decimal,upper_decimal,level,cutoff,components,covered_mass,"
               "substitution_error,wall_ms\n";
  std::cout << j["lower"].get<std::string>() << "," << j["upper"].get<std::string>() << ","
            << j["lower_decimal"] << "," << j["upper_decimal"] << "," << j["level"] << ","
            << j["cutoff"] << "," << j["components"] << ","
            << j["covered_mass"].get<std::string>() << ","
            << j["substitution_error"].get<std::string>() << "," << j["wall_ms"] << "\n";
}

int emit(const Options& o, lr_status st, const char* out, lr_session* s,
         const char* csv_kind = nullptr) {
  if (st != LR_OK && st != LR_ERR_BUDGET) {
    std::cerr << "error: " << lr_last_error(s) << "\n";
    return 1;
  }
  if (!out) return st == LR_OK ? 0 : 2;
  if (o.format == "csv" && csv_kind) {
    json j = json::parse(out);
    if (std::string(csv_kind) == "bracket") {
      print_bracket_csv(j);
    } else if (std::string(csv_kind) == "components") {
      std::cout << "word,length,measure\n";
      for (const auto& c : j["components"])
        std::cout << c["word"].get<std::string>() << "," << c["length"] << ","
                  << c["measure"].get<std::string>() << "\n";
    } else if (std::string(csv_kind) == "macci") {
      bool first = true;
      for (const auto& v : j["values"]) {
        if (!first) std::cout << ",";
        first = false;
        std::cout << v.get<std::string>();
      }
      std::cout << "\n";
    } else {
      std::cout << out << "\n";
    }
  } else {
    std::cout << out << "\n";
  }
  if (st == LR_ERR_BUDGET) {
    std::cerr << "warning: " << lr_last_error(s) << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact rank brackets and kernel dimensions over crossed product algebras"};
  app.require_subcommand(1);
  Options o;

  std::string expr, width, op, expr2, point;
  unsigned m = 3, upto = 8;
  bool quick = false;

  auto* rank = app.add_subcommand("rank", "rank bracket of a group-algebra expression");
  add_common(rank, o);
  rank->add_option("--expr,-e", expr, "expression, e.g. \"(1/2)*(1+a(0))*t\"")->required();
  rank->add_option("--width,-w", width, "refine until the bracket is at most this wide");

  auto* betti = app.add_subcommand("betti", "kernel-dimension bracket (ambient minus rank)");
  add_common(betti, o);
  betti->add_option("--expr,-e", expr, "expression or [[..],[..]] matrix")->required();
  betti->add_option("--width,-w", width, "refine until the bracket is at most this wide");

  auto* comp = app.add_subcommand("components", "return-word components of the quasi-partition");
  add_common(comp, o);

  auto* mac = app.add_subcommand("macci", "m-step Fibonacci numbers");
  add_common(mac, o);
  mac->add_option("--m", m, "step count")->required();
  mac->add_option("--upto", upto, "largest index");

  auto* fou = app.add_subcommand("fourier", "transform a group-algebra expression");
  add_common(fou, o);
  fou->add_option("--expr,-e", expr, "expression")->required();

  auto* ser = app.add_subcommand("series", "skew power series operations");
  add_common(ser, o);
  ser->add_option("op", op, "invert | project | hadamard | factor")->required();
  ser->add_option("--expr,-e", expr, "series expression (atoms: rationals, s, S(word), "
                                     "a/e/f(i), cyl(a:b,\"w\"), inv(..))")
      ->required();
  ser->add_option("--expr2", expr2, "second expression (hadamard)");

  auto* quo = app.add_subcommand("quotient", "evaluate along a finite shift orbit");
  add_common(quo, o);
  quo->add_option("--expr,-e", expr, "expression")->required();
  quo->add_option("--point,-p", point, "primitive periodic word, e.g. \"01\"")->required();

  auto* ver = app.add_subcommand("verify", "run the full quantitative verification suite");
  add_common(ver, o);
  ver->add_flag("--quick", quick, "smaller sample counts");

  auto* demo = app.add_subcommand("demo-gz", "reproduce the classical 1/3 kernel dimension");
  add_common(demo, o);

  CLI11_PARSE(app, argc, argv);

  try {
    SessionHandle h;
    if (int rc = open_session(o, h)) return rc;
    OwnedString out;
    if (rank->parsed()) {
      lr_status st = lr_rank(h.s, expr.c_str(), width.empty() ? nullptr : width.c_str(), &out.p);
      return emit(o, st, out.p, h.s, "bracket");
    }
    if (betti->parsed()) {
      lr_status st = lr_betti(h.s, expr.c_str(), width.empty() ? nullptr : width.c_str(), &out.p);
      return emit(o, st, out.p, h.s, "bracket");
    }
    if (comp->parsed()) {
      lr_status st = lr_components(h.s, &out.p);
      return emit(o, st, out.p, h.s, "components");
    }
    if (mac->parsed()) {
      lr_status st = lr_macci(h.s, m, upto, &out.p);
      return emit(o, st, out.p, h.s, "macci");
    }
    if (fou->parsed()) {
      lr_status st = lr_fourier(h.s, expr.c_str(), &out.p);
      return emit(o, st, out.p, h.s);
    }
    if (ser->parsed()) {
      lr_status st = lr_series(h.s, op.c_str(), expr.c_str(),
                               expr2.empty() ? nullptr : expr2.c_str(), &out.p);
      return emit(o, st, out.p, h.s);
    }
    if (quo->parsed()) {
      lr_status st = lr_quotient(h.s, expr.c_str(), point.c_str(), &out.p);
      return emit(o, st, out.p, h.s);
    }
    if (ver->parsed()) {
      lr_status st = lr_verify(h.s, quick ? 1 : 0, &out.p);
      if (!out.p) {
        std::cerr << "error: " << lr_last_error(h.s) << "\n";
        return 1;
      }
      json j = json::parse(out.p);
      for (const auto& c : j["criteria"]) {
        std::printf("[%s] %2d  %-55s %6lld ms  %s\n",
                    c["pass"].get<bool>() ? "PASS" : "FAIL", c["id"].get<int>(),
                    c["name"].get<std::string>().c_str(),
                    static_cast<long long>(c["wall_ms"].get<long>()),
                    c["details"].get<std::string>().c_str());
      }
      bool all = j["all_pass"].get<bool>();
      std::printf("%s\n", all ? "all criteria passed" : "SOME CRITERIA FAILED");
      return all ? 0 : 1;
    }
    if (demo->parsed()) {
      lr_status st = lr_demo_gz(h.s, &out.p);
      return emit(o, st, out.p, h.s);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
