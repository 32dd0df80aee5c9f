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

#include "lamprank/json_io.hpp"

namespace lamprank {

Json rat_json(const Rat& r) {
  Json j;
  j["exact"] = rat_string(r);
  j["decimal"] = rat_double(r);
  return j;
}

Json bracket_json(const RankBracket& b) {
  Json j;
  j["lower"] = rat_string(b.lower);
  j["upper"] = rat_string(b.upper);
  j["lower_decimal"] = rat_double(b.lower);
  j["upper_decimal"] = rat_double(b.upper);
  j["width"] = rat_string(b.width());
  j["ambient"] = b.ambient;
  j["level"] = b.level;
  j["cutoff"] = b.cutoff;
  j["components"] = b.component_count;
  j["covered_mass"] = rat_string(b.covered_mass);
  j["tail_mass"] = rat_string(b.tail_mass);
  j["substitution_error"] = rat_string(b.substitution_error);
  j["wall_ms"] = b.wall_ms;
  return j;
}

Json clopen_json(const Clopen& c) {
  Json j;
  if (c.is_empty()) {
    j["window"] = Json::array();
    j["words"] = Json::array();
    return j;
  }
  if (c.is_full()) {
    j["window"] = Json::array();
    j["words"] = Json::array({""});
    return j;
  }
  j["window"] = Json::array({c.lo(), c.hi()});
  j["words"] = c.word_strings();
  return j;
}

Json locfn_json(const LocallyConstantFn& f) {
  Json j;
  if (f.width() == 0) {
    j["window"] = Json::array();
    j["values"] =
        f.is_zero() ? Json::object()
                    : Json::object({{"", f.values().begin()->second.to_string()}});
    return j;
  }
  j["window"] = Json::array({f.lo(), f.hi()});
  Json vals = Json::object();
  unsigned bps = f.space().bits_per_symbol();
  for (const auto& [w, v] : f.values())
    vals[word_string(w, f.width(), bps)] = v.to_string();
  j["values"] = vals;
  return j;
}

Json crossed_json(const CrossedElement& a) {
  Json terms = Json::array();
  for (const auto& [d, f] : a.coefficients()) {
    Json t;
    t["degree"] = d;
    t["coefficient"] = locfn_json(f);
    terms.push_back(t);
  }
  Json j;
  j["terms"] = terms;
  return j;
}

Json components_json(const ComponentSet& cs) {
  Json list = Json::array();
  for (const auto& w : cs.components()) {
    Json c;
    c["word"] = w.set.is_full() ? "" : w.set.word_strings().front();
    c["length"] = w.length;
    c["measure"] = rat_string(w.measure);
    Json label = Json::array();
    for (int z : w.label) label.push_back(z);
    c["label"] = label;
    list.push_back(c);
  }
  Json j;
  j["cutoff"] = cs.cutoff();
  j["count"] = cs.size();
  j["components"] = list;
  j["covered_mass"] = rat_string(cs.covered_mass());
  j["tail_mass"] = rat_string(cs.tail_mass());
  return j;
}

Json laurent_json(const LaurentMatrix& m) {
  Json rows = Json::array();
  for (unsigned i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (unsigned j = 0; j < m.size(); ++j) {
      Json entry = Json::array();
      for (const auto& [p, c] : m.entry(i, j))
        entry.push_back(Json::array({p, c.to_string()}));
      row.push_back(entry);
    }
    rows.push_back(row);
  }
  Json j;
  j["size"] = m.size();
  j["entries"] = rows;
  return j;
}

}  // namespace lamprank
