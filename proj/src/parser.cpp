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

#include "lamprank/parser.hpp"

#include <cctype>

#include "lamprank/series.hpp"

namespace lamprank {

namespace {

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool accept(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!accept(c))
      fail(Err::SyntaxError, std::string("expected '") + c + "' (" + what + ") at position " +
                                 std::to_string(pos) + " in \"" + text + "\"");
  }
  [[noreturn]] void error(const std::string& msg) {
    fail(Err::SyntaxError, msg + " at position " + std::to_string(pos) + " in \"" + text + "\"");
  }
  long integer() {
    skip_ws();
    std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
      error("expected an integer");
    return std::stol(text.substr(start, pos - start));
  }
  Rat rational() {
    long num = integer();
    if (accept('/')) {
      long den = integer();
      if (den == 0) error("zero denominator");
      Rat r(num, den);
      r.canonicalize();
      return r;
    }
    return Rat(num);
  }
  std::string quoted_word() {
    skip_ws();
    bool quoted = accept('"');
    std::size_t start = pos;
    while (pos < text.size() && (text[pos] == '0' || text[pos] == '1' ||
                                 std::isalnum(static_cast<unsigned char>(text[pos]))))
      ++pos;
    std::string w = text.substr(start, pos - start);
    if (quoted) expect('"', "closing quote");
    if (w.empty()) error("expected a word of symbols");
    return w;
  }
};

// ---------- group-algebra expressions ----------

class GroupParser {
 public:
  GroupParser(const std::string& text, FieldContextPtr K) : cur_{text}, K_(std::move(K)) {}

  GroupAlgebraElement parse() {
    GroupAlgebraElement e = expr();
    if (!cur_.eof()) cur_.error("trailing input");
    return e;
  }

  std::vector<std::vector<GroupAlgebraElement>> parse_matrix() {
    cur_.skip_ws();
    if (cur_.peek() != '[') return {{parse()}};
    cur_.expect('[', "matrix opener");
    std::vector<std::vector<GroupAlgebraElement>> rows;
    do {
      cur_.expect('[', "row opener");
      std::vector<GroupAlgebraElement> row;
      do row.push_back(expr());
      while (cur_.accept(','));
      cur_.expect(']', "row closer");
      rows.push_back(std::move(row));
    } while (cur_.accept(','));
    cur_.expect(']', "matrix closer");
    if (!cur_.eof()) cur_.error("trailing input");
    for (const auto& r : rows)
      if (r.size() != rows.size()) cur_.error("matrix of expressions must be square");
    return rows;
  }

 private:
  GroupAlgebraElement expr() {
    bool neg = cur_.accept('-');
    GroupAlgebraElement acc = term();
    if (neg) acc = acc.scaled(K_->from_int(-1));
    for (;;) {
      if (cur_.accept('+'))
        acc = acc + term();
      else if (cur_.accept('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  GroupAlgebraElement term() {
    GroupAlgebraElement acc = factor();
    while (cur_.accept('*')) acc = acc * factor();
    return acc;
  }

  GroupAlgebraElement factor() {
    GroupAlgebraElement a = atom();
    if (cur_.accept('^')) {
      long e = cur_.integer();
      a = a.pow(e);
    }
    if (cur_.accept('\'')) a = a.star();
    return a;
  }

  GroupAlgebraElement half_shifted(int i, bool plus) {
    if (K_->characteristic() == 2)
      fail(Err::CharacteristicError,
           "e(i)/f(i) need 1/2, which does not exist in characteristic 2");
    GroupAlgebraElement x = GroupAlgebraElement::one(K_);
    x.add_term(LampGroupElement::lamp(i), plus ? K_->one() : K_->from_int(-1));
    return x.scaled(K_->from_rational(Rat(1, 2)));
  }

  GroupAlgebraElement atom() {
    cur_.skip_ws();
    char c = cur_.peek();
    if (c == '(') {
      cur_.expect('(', "group");
      GroupAlgebraElement e = expr();
      cur_.expect(')', "closing parenthesis");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') {
      return GroupAlgebraElement::one(K_).scaled(K_->from_rational(cur_.rational()));
    }
    if (cur_.accept('t')) return GroupAlgebraElement::group_element(K_, LampGroupElement::translation(1));
    if (cur_.accept('a')) {
      cur_.expect('(', "lamp index");
      long i = cur_.integer();
      cur_.expect(')', "lamp index");
      return GroupAlgebraElement::group_element(K_, LampGroupElement::lamp(static_cast<int>(i)));
    }
    if (cur_.accept('e')) {
      cur_.expect('(', "index");
      long i = cur_.integer();
      cur_.expect(')', "index");
      return half_shifted(static_cast<int>(i), true);
    }
    if (cur_.accept('f')) {
      cur_.expect('(', "index");
      long i = cur_.integer();
      cur_.expect(')', "index");
      return half_shifted(static_cast<int>(i), false);
    }
    if (cur_.text.compare(cur_.pos, 4, "cyl(") == 0) {
      cur_.pos += 4;
      long a = cur_.integer();
      cur_.expect(':', "window");
      long b = cur_.integer();
      cur_.expect(',', "cylinder word");
      std::string w = cur_.quoted_word();
      cur_.expect(')', "cylinder");
      if (b - a + 1 != static_cast<long>(w.size())) cur_.error("cylinder word length mismatch");
      if (K_->characteristic() == 2)
        fail(Err::CharacteristicError, "cylinder idempotents need characteristic different from 2");
      GroupAlgebraElement prod = GroupAlgebraElement::one(K_);
      FieldElement half = K_->from_rational(Rat(1, 2));
      for (long i = 0; i < static_cast<long>(w.size()); ++i) {
        char sym = w[static_cast<std::size_t>(i)];
        if (sym != '0' && sym != '1') cur_.error("cylinder words are binary");
        GroupAlgebraElement factor = GroupAlgebraElement::one(K_);
        factor.add_term(LampGroupElement::lamp(static_cast<int>(a + i)),
                        sym == '0' ? K_->one() : K_->from_int(-1));
        prod = prod * factor.scaled(half);
      }
      return prod;
    }
    cur_.error("expected an atom (rational, t, a(i), e(i), f(i), cyl(...) or parentheses)");
  }

  Cursor cur_;
  FieldContextPtr K_;
};

// ---------- series expressions ----------

class SeriesParser {
 public:
  SeriesParser(const std::string& text, SchemePtr scheme, FieldContextPtr K, int order)
      : cur_{text}, scheme_(std::move(scheme)), K_(std::move(K)), order_(order) {}

  SkewSeries parse() {
    SkewSeries e = expr();
    if (!cur_.eof()) cur_.error("trailing input");
    return e;
  }

 private:
  SkewSeries expr() {
    bool neg = cur_.accept('-');
    SkewSeries acc = term();
    if (neg) acc = acc.scaled(K_->from_int(-1));
    for (;;) {
      if (cur_.accept('+'))
        acc = acc + term();
      else if (cur_.accept('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  SkewSeries term() {
    SkewSeries acc = factor();
    while (cur_.accept('*')) acc = acc * factor();
    return acc;
  }

  SkewSeries factor() {
    SkewSeries a = atom();
    if (cur_.accept('^')) {
      long e = cur_.integer();
      if (e < 0) {
        a = a.inverse();
        e = -e;
      }
      a = a.pow(static_cast<unsigned>(e));
    }
    return a;
  }

  LocallyConstantFn degree_zero_indicator(int i, bool zero_side) {
    Clopen u = Clopen::cylinder(scheme_->space(), i, i, zero_side ? std::uint64_t(0) : 1);
    return LocallyConstantFn::indicator(u, K_);
  }

  SkewSeries atom() {
    cur_.skip_ws();
    char c = cur_.peek();
    if (c == '(') {
      cur_.expect('(', "group");
      SkewSeries e = expr();
      cur_.expect(')', "closing parenthesis");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+')
      return SkewSeries::constant(scheme_, K_->from_rational(cur_.rational()), order_);
    if (cur_.text.compare(cur_.pos, 4, "inv(") == 0) {
      cur_.pos += 4;
      SkewSeries e = expr();
      cur_.expect(')', "inv");
      return e.inverse();
    }
    if (cur_.text.compare(cur_.pos, 4, "cyl(") == 0) {
      cur_.pos += 4;
      long a = cur_.integer();
      cur_.expect(':', "window");
      long b = cur_.integer();
      cur_.expect(',', "cylinder word");
      std::string w = cur_.quoted_word();
      cur_.expect(')', "cylinder");
      Clopen u = Clopen::cylinder(scheme_->space(), static_cast<int>(a), static_cast<int>(b), w);
      return SkewSeries::monomial(scheme_, LocallyConstantFn::indicator(u, K_), 0, order_);
    }
    if (cur_.text.compare(cur_.pos, 2, "S(") == 0) {
      cur_.pos += 2;
      std::string w = cur_.quoted_word();
      cur_.expect(')', "special term");
      return special_literal(w);
    }
    if (cur_.accept('s'))
      return SkewSeries::generator(scheme_, K_, order_);
    if (cur_.accept('a')) {
      cur_.expect('(', "index");
      long i = cur_.integer();
      cur_.expect(')', "index");
      LocallyConstantFn f =
          degree_zero_indicator(static_cast<int>(i), true) -
          degree_zero_indicator(static_cast<int>(i), false);
      return SkewSeries::monomial(scheme_, f, 0, order_);
    }
    if (cur_.accept('e')) {
      cur_.expect('(', "index");
      long i = cur_.integer();
      cur_.expect(')', "index");
      return SkewSeries::monomial(scheme_, degree_zero_indicator(static_cast<int>(i), true), 0,
                                  order_);
    }
    if (cur_.accept('f')) {
      cur_.expect('(', "index");
      long i = cur_.integer();
      cur_.expect(')', "index");
      return SkewSeries::monomial(scheme_, degree_zero_indicator(static_cast<int>(i), false), 0,
                                  order_);
    }
    cur_.error("expected an atom (rational, s, S(word), a/e/f(i), cyl(...), inv(...))");
  }

  // S(word): the special term whose full support cylinder carries this word;
  // the degree is the word length minus twice the level.
  SkewSeries special_literal(const std::string& w) {
    if (scheme_->kind() != SchemeKind::Lamplighter)
      fail(Err::NotSpecial, "S(word) literals are defined for lamplighter schemes");
    int n = scheme_->level();
    int degree = static_cast<int>(w.size()) - 2 * n;
    if (degree < 0) cur_.error("special word shorter than the marked blocks");
    if (degree == 0) {
      // the unit support
      auto ws = special_sets(scheme_, 0);
      if (ws.empty()) cur_.error("no degree-zero special support at this level");
      return SkewSeries::monomial(scheme_, LocallyConstantFn::indicator(ws.front(), K_), 0,
                                  order_);
    }
    Clopen S = Clopen::cylinder(scheme_->space(), -n - degree + 1, n, w);
    // validate: the attached component must be nonempty and the shape special
    Clopen W = scheme_->base()
                   .intersect(scheme_->forward_image(S, -degree))
                   .intersect(scheme_->forward_image(scheme_->base(), -degree - 1));
    if (W.is_empty()) fail(Err::NotSpecial, "word does not define a special support: " + w);
    if (degree > order_) fail(Err::DegreeOverflow, "special degree exceeds the truncation order");
    return SkewSeries::monomial(scheme_, LocallyConstantFn::indicator(S, K_), degree, order_);
  }

  Cursor cur_;
  SchemePtr scheme_;
  FieldContextPtr K_;
  int order_;
};

}  // namespace

GroupAlgebraElement parse_group_expression(const std::string& text, const FieldContextPtr& K) {
  return GroupParser(text, K).parse();
}

std::vector<std::vector<GroupAlgebraElement>> parse_group_matrix(const std::string& text,
                                                                 const FieldContextPtr& K) {
  return GroupParser(text, K).parse_matrix();
}

SkewSeries parse_series_expression(const std::string& text, const SchemePtr& scheme,
                                   const FieldContextPtr& K, int order) {
  return SeriesParser(text, scheme, K, order).parse();
}

}  // namespace lamprank
