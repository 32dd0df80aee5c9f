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

// Exercises the shared-library surface the way an external client would:
// only lamprank.h, opaque handles and JSON strings.

#include <doctest.h>

#include <json.hpp>
#include <string>

#include "lamprank.h"

using nlohmann::json;

namespace {
struct Sess {
  lr_session* s = nullptr;
  explicit Sess(const char* cfg) {
    char* err = nullptr;
    s = lr_session_create(cfg, &err);
    if (err) lr_string_free(err);
  }
  ~Sess() { lr_session_destroy(s); }
};

struct Out {
  char* p = nullptr;
  ~Out() { lr_string_free(p); }
  json parsed() const { return json::parse(p); }
};
}  // namespace

TEST_CASE("session creation and config validation") {
  CHECK(std::string(lr_version()).find("lamprank") == 0);
  Sess ok("{\"field\":\"Q\",\"level\":0,\"cutoff\":8}");
  CHECK(ok.s != nullptr);

  char* err = nullptr;
  lr_session* bad = lr_session_create("{\"field\":\"Zp\"}", &err);
  CHECK(bad == nullptr);
  REQUIRE(err != nullptr);
  CHECK(std::string(err).find("field") != std::string::npos);
  lr_string_free(err);

  lr_session* bad2 = lr_session_create("{\"nope\":1}", &err);
  CHECK(bad2 == nullptr);
  lr_string_free(err);
}

TEST_CASE("rank and kernel brackets through the C surface") {
  Sess s("{\"cutoff\":12}");
  REQUIRE(s.s);
  Out out;
  CHECK(lr_rank(s.s, "e(0)", nullptr, &out.p) == LR_OK);
  json j = out.parsed();
  CHECK(j["level"] == 0);
  double lo = j["lower_decimal"].get<double>();
  double hi = j["upper_decimal"].get<double>();
  CHECK(lo <= 0.5);
  CHECK(0.5 <= hi);

  Out out2;
  CHECK(lr_betti(s.s, "(1/2)*(1+a(0))*t + ((1/2)*(1+a(0))*t)'", "1e-4", &out2.p) == LR_OK);
  json j2 = out2.parsed();
  CHECK(j2["lower_decimal"].get<double>() <= 1.0 / 3);
  CHECK(1.0 / 3 <= j2["upper_decimal"].get<double>());
  CHECK(j2["budget_exceeded"] == false);
}

TEST_CASE("error paths set messages and statuses") {
  Sess s("");
  REQUIRE(s.s);
  Out out;
  CHECK(lr_rank(s.s, "t + * 2", nullptr, &out.p) == LR_ERR_SYNTAX);
  CHECK(out.p == nullptr);
  CHECK(std::string(lr_last_error(s.s)).find("position") != std::string::npos);

  Out out2;
  CHECK(lr_quotient(s.s, "t", "0101", &out2.p) == LR_ERR_SYNTAX);  // not primitive

  // budget exhaustion still returns the best bracket
  Sess tight("{\"max_level\":0,\"max_cutoff\":6}");
  Out out3;
  lr_status st = lr_rank(tight.s, "t", "1e-6", &out3.p);
  CHECK(st == LR_ERR_BUDGET);
  REQUIRE(out3.p != nullptr);
  CHECK(out3.parsed()["budget_exceeded"] == true);
}

TEST_CASE("components, macci, fourier, series and quotient round trips") {
  Sess s("{\"level\":0,\"cutoff\":6}");
  REQUIRE(s.s);
  Out comp;
  CHECK(lr_components(s.s, &comp.p) == LR_OK);
  json cj = comp.parsed();
  CHECK(cj["count"] == 6);
  CHECK(cj["components"][0]["word"] == "11");
  CHECK(cj["components"][0]["measure"] == "1/4");
  CHECK(cj["covered_mass"] == cj["closed_form_covered_mass"]);

  Out mac;
  CHECK(lr_macci(s.s, 3, 8, &mac.p) == LR_OK);
  json mj = mac.parsed();
  REQUIRE(mj["values"].size() == 8);
  CHECK(mj["values"][7] == "24");

  Out fou;
  CHECK(lr_fourier(s.s, "e(0)", &fou.p) == LR_OK);
  CHECK(fou.parsed()["terms"][0]["degree"] == 0);

  Out ser;
  CHECK(lr_series(s.s, "invert", "1 - s", nullptr, &ser.p) == LR_OK);
  CHECK(ser.parsed()["result"].get<std::string>().find("t^5") != std::string::npos);
  Out bad;
  CHECK(lr_series(s.s, "frobnicate", "1", nullptr, &bad.p) == LR_ERR_CONFIG);

  Out quo;
  CHECK(lr_quotient(s.s, "t", "01", &quo.p) == LR_OK);
  CHECK(quo.parsed()["size"] == 2);

  Out demo;
  CHECK(lr_demo_gz(s.s, &demo.p) == LR_OK);
  CHECK(demo.parsed()["contains_one_third"] == true);
}

TEST_CASE("odometer sessions work through the C surface") {
  Sess s("{\"system\":\"odometer\",\"level\":3,\"cutoff\":8}");
  REQUIRE(s.s);
  Out comp;
  CHECK(lr_components(s.s, &comp.p) == LR_OK);
  json cj = comp.parsed();
  CHECK(cj["count"] == 1);
  CHECK(cj["components"][0]["length"] == 8);
  Out rnk;
  CHECK(lr_rank(s.s, "1 + t", nullptr, &rnk.p) == LR_OK);
  CHECK(rnk.parsed()["tail_mass"] == "0/1");
  Out bad;
  CHECK(lr_rank(s.s, "a(0)", nullptr, &bad.p) == LR_ERR_CONFIG);
}
