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

#include "lamprank/session.hpp"

#include <cstdlib>

#include "lamprank/json_io.hpp"
#include "lamprank/parser.hpp"
#include "lamprank/series.hpp"

namespace lamprank {

RunConfig RunConfig::from_json(const std::string& json_text) {
  RunConfig cfg;
  if (!json_text.empty()) {
    Json j;
    try {
      j = Json::parse(json_text);
    } catch (const std::exception& e) {
      fail(Err::ConfigError, std::string("bad config JSON: ") + e.what());
    }
    if (!j.is_object()) fail(Err::ConfigError, "config must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& key = it.key();
      try {
        if (key == "field")
          cfg.field_spec = it.value().get<std::string>();
        else if (key == "system")
          cfg.system = it.value().get<std::string>();
        else if (key == "level")
          cfg.level = it.value().get<int>();
        else if (key == "cutoff")
          cfg.cutoff = it.value().get<int>();
        else if (key == "width")
          cfg.target_width = parse_rational(it.value().is_string()
                                                ? it.value().get<std::string>()
                                                : it.value().dump());
        else if (key == "threads")
          cfg.threads = it.value().get<unsigned>();
        else if (key == "format")
          cfg.format = it.value().get<std::string>();
        else if (key == "convention")
          cfg.convention = it.value().get<std::string>() == "zeros" ? LampConvention::Zeros
                                                                    : LampConvention::Ones;
        else if (key == "max_level")
          cfg.max_level = it.value().get<int>();
        else if (key == "max_cutoff")
          cfg.max_cutoff = it.value().get<int>();
        else if (key == "seed")
          cfg.seed = it.value().get<std::uint64_t>();
        else
          fail(Err::ConfigError, "unknown config key: " + key);
      } catch (const Error&) {
        throw;
      } catch (const std::exception& e) {
        fail(Err::ConfigError, "bad value for config key " + key + ": " + e.what());
      }
    }
  }
  if (const char* env = std::getenv("LAMPRANK_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0') cfg.threads = static_cast<unsigned>(v);
  }
  cfg.validate();
  return cfg;
}

void RunConfig::validate() const {
  if (system != "lamplighter" && system != "odometer")
    fail(Err::ConfigError, "system must be lamplighter or odometer");
  if (level < 0 || (system == "odometer" && level < 1))
    fail(Err::ConfigError, "level out of range for " + system);
  if (cutoff < 1) fail(Err::ConfigError, "cutoff must be at least 1");
  if (target_width <= 0) fail(Err::ConfigError, "width must be positive");
  if (format != "json" && format != "csv") fail(Err::ConfigError, "format must be json or csv");
  FieldContext::parse(field_spec);  // throws on bad specs
}

Session::Session(const std::string& config_json) : cfg_(RunConfig::from_json(config_json)) {
  field_ = FieldContext::parse(cfg_.field_spec);
}

SchemePtr Session::make_scheme(int level) const {
  if (cfg_.system == "odometer") return odometer_scheme(static_cast<unsigned>(level));
  return lamplighter_scheme(static_cast<unsigned>(level), cfg_.convention);
}

namespace {

RankBracket complement(RankBracket b) {
  Rat k_rat(b.ambient);
  Rat lo = k_rat - b.upper, hi = k_rat - b.lower;
  b.lower = lo;
  b.upper = hi;
  return b;
}

// Lamp-free expressions (Laurent polynomials in t) transfer to any system.
CrossedMatrix shift_polynomial_matrix(const std::vector<std::vector<GroupAlgebraElement>>& A,
                                      const SpaceSpec& spec, const FieldContextPtr& K) {
  unsigned k = static_cast<unsigned>(A.size());
  CrossedMatrix M(k, spec, K);
  for (unsigned r = 0; r < k; ++r)
    for (unsigned c = 0; c < k; ++c) {
      CrossedElement e(spec, K);
      for (const auto& [g, coeff] : A[r][c].terms()) {
        if (!g.lamps.empty())
          fail(Err::ConfigError,
               "lamp generators have no meaning for this system; use shift polynomials");
        e = e + CrossedElement::monomial(LocallyConstantFn::constant(spec, coeff), g.shift);
      }
      M.at(r, c) = e;
    }
  return M;
}

}  // namespace

CommandResult Session::rank(const std::string& expr, const std::string& width, bool betti) {
  auto A = parse_group_matrix(expr, field_);
  unsigned k = static_cast<unsigned>(A.size());
  CrossedMatrix M = cfg_.system == "odometer"
                        ? shift_polynomial_matrix(
                              A, SpaceSpec{2, Geometry::OneSidedOdometer}, field_)
                        : [&] {
                            CrossedMatrix T(k, SpaceSpec{2, Geometry::TwoSidedShift}, field_);
                            for (unsigned r = 0; r < k; ++r)
                              for (unsigned c = 0; c < k; ++c) T.at(r, c) = fourier(A[r][c]);
                            return T;
                          }();
  Json j;
  bool exceeded = false;
  if (width.empty()) {
    SchemePtr scheme = make_scheme(cfg_.level);
    RankBracket b =
        sylvester_bracket(M, enumerate_components(scheme, cfg_.cutoff), cfg_.threads);
    if (betti) b = complement(b);
    j = bracket_json(b);
  } else {
    Rat w = parse_rational(width);
    ConvergeResult r = converge(M, w, cfg_.max_level, cfg_.max_cutoff,
                                make_scheme(std::max(cfg_.level, cfg_.system == "odometer" ? 1 : 0)),
                                cfg_.threads, std::min(cfg_.cutoff, 8));
    if (betti) r.bracket = complement(r.bracket);
    j = bracket_json(r.bracket);
    j["budget_exceeded"] = r.budget_exceeded;
    if (!r.note.empty()) j["note"] = r.note;
    exceeded = r.budget_exceeded;
  }
  j["expr"] = expr;
  j["field"] = field_->description();
  j["positive_definite_involution"] = field_->positive_definite_involution();
  j["kind"] = betti ? "kernel_dimension" : "rank";
  return {j.dump(2), exceeded};
}

CommandResult Session::components() {
  SchemePtr scheme = make_scheme(cfg_.level);
  ComponentSetPtr cs = enumerate_components(scheme, cfg_.cutoff);
  Json j = components_json(*cs);
  j["system"] = cfg_.system;
  j["level"] = cfg_.level;
  if (cfg_.system == "lamplighter") {
    j["closed_form_covered_mass"] =
        rat_string(lamplighter_covered_mass_closed_form(static_cast<unsigned>(cfg_.level),
                                                        cfg_.cutoff));
  }
  return {j.dump(2), false};
}

CommandResult Session::macci_row(unsigned m, unsigned upto) const {
  Json vals = Json::array();
  for (unsigned k = 0; k < upto; ++k) vals.push_back(macci(m, k).get_str());
  Json j;
  j["m"] = m;
  j["values"] = vals;
  return {j.dump(2), false};
}

CommandResult Session::fourier_of(const std::string& expr) const {
  GroupAlgebraElement x = parse_group_expression(expr, field_);
  CrossedElement y = fourier(x);
  Json j = crossed_json(y);
  j["expr"] = expr;
  j["pretty"] = y.to_string();
  return {j.dump(2), false};
}

CommandResult Session::series(const std::string& op, const std::string& expr_a,
                              const std::string& expr_b) const {
  SchemePtr scheme = make_scheme(cfg_.level);
  int order = cfg_.cutoff - 1;
  Json j;
  j["op"] = op;
  if (op == "invert") {
    SkewSeries x = parse_series_expression(expr_a, scheme, field_, order);
    SkewSeries y = x.inverse();
    j["result"] = y.to_string();
  } else if (op == "project") {
    SkewSeries x = parse_series_expression(expr_a, scheme, field_, order);
    ComponentSetPtr cs = enumerate_components(scheme, cfg_.cutoff);
    j["result"] = project_special(x, cs).to_string();
  } else if (op == "hadamard") {
    if (expr_b.empty()) fail(Err::ConfigError, "hadamard needs two expressions");
    ComponentSetPtr cs = enumerate_components(scheme, cfg_.cutoff);
    SpecialSeries a =
        project_special(parse_series_expression(expr_a, scheme, field_, order), cs);
    SpecialSeries b =
        project_special(parse_series_expression(expr_b, scheme, field_, order), cs);
    j["result"] = a.hadamard(b).to_string();
  } else if (op == "factor") {
    SkewSeries x = parse_series_expression(expr_a, scheme, field_, order);
    // expect a single special monomial
    int deg = -1;
    for (int i = 0; i <= x.order(); ++i)
      if (!x.coefficient(i).is_zero()) {
        if (deg >= 0) fail(Err::NotSpecial, "factor expects a single special term");
        deg = i;
      }
    if (deg <= 0) fail(Err::NotSpecial, "factor expects a special term of positive degree");
    Clopen S = x.coefficient(deg).support();
    auto factors = factor_pure(S, scheme);
    Json list = Json::array();
    for (const auto& f : factors) {
      Json e;
      e["word"] = f.support.word_strings().front();
      e["degree"] = f.degree;
      list.push_back(e);
    }
    j["result"] = list;
  } else {
    fail(Err::ConfigError, "unknown series op: " + op + " (invert|project|hadamard|factor)");
  }
  return {j.dump(2), false};
}

CommandResult Session::quotient(const std::string& expr, const std::string& periodic_word) const {
  GroupAlgebraElement x = parse_group_expression(expr, field_);
  CrossedElement y = fourier(x);
  PeriodicPoint p(SpaceSpec{2, Geometry::TwoSidedShift}, periodic_word);
  LaurentMatrix m = quotient_at_orbit(y, p);
  Json j = laurent_json(m);
  j["expr"] = expr;
  j["period"] = p.period();
  j["pretty"] = m.to_string();
  return {j.dump(2), false};
}

CommandResult Session::verify(bool quick) const {
  VerifyOptions opts;
  opts.quick = quick;
  opts.seed = cfg_.seed;
  opts.threads = cfg_.threads;
  auto results = run_verification(opts);
  Json list = Json::array();
  bool all = true;
  for (const auto& r : results) {
    Json e;
    e["id"] = r.id;
    e["name"] = r.name;
    e["pass"] = r.pass;
    e["details"] = r.details;
    e["wall_ms"] = r.wall_ms;
    list.push_back(e);
    all = all && r.pass;
  }
  Json j;
  j["criteria"] = list;
  j["all_pass"] = all;
  return {j.dump(2), !all};
}

CommandResult Session::demo() const {
  // the classical kernel-dimension computation, end to end
  FieldContextPtr K = FieldContext::rationals();
  auto A = parse_group_matrix("(1/2)*(1+a(0))*t + ((1/2)*(1+a(0))*t)'", K);
  RankBracket b = betti_bracket(A, lamplighter_scheme(0, cfg_.convention), 30, cfg_.threads);
  Json j;
  j["element"] = "s + s', s = (1/2)(1+a(0))t";
  j["kernel_dimension_bracket"] = bracket_json(b);
  j["contains_one_third"] = b.contains(Rat(1, 3));
  return {j.dump(2), false};
}

}  // namespace lamprank
