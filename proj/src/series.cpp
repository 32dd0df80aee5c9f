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

#include "lamprank/series.hpp"

#include <algorithm>

#include "lamprank/blocks_internal.hpp"

namespace lamprank {

SkewSeries::SkewSeries(SchemePtr scheme, FieldContextPtr K, int order)
    : scheme_(std::move(scheme)), field_(std::move(K)), order_(order) {
  if (order_ < 0) fail(Err::ConfigError, "truncation order must be nonnegative");
  coeffs_.assign(static_cast<std::size_t>(order_) + 1,
                 LocallyConstantFn::zero(scheme_->space(), field_));
}

SkewSeries SkewSeries::zero(SchemePtr scheme, FieldContextPtr K, int order) {
  return SkewSeries(std::move(scheme), std::move(K), order);
}

SkewSeries SkewSeries::one(SchemePtr scheme, FieldContextPtr K, int order) {
  SkewSeries x(scheme, K, order);
  x.coeffs_[0] = LocallyConstantFn::constant(scheme->space(), K->one());
  return x;
}

SkewSeries SkewSeries::constant(SchemePtr scheme, const FieldElement& c, int order) {
  SkewSeries x(scheme, c.context(), order);
  x.coeffs_[0] = LocallyConstantFn::constant(scheme->space(), c);
  return x;
}

SkewSeries SkewSeries::generator(SchemePtr scheme, FieldContextPtr K, int order) {
  SkewSeries x(scheme, K, order);
  if (order >= 1)
    x.set(1, LocallyConstantFn::indicator(scheme->base().complement(), K));
  return x;
}

SkewSeries SkewSeries::monomial(SchemePtr scheme, LocallyConstantFn f, int degree, int order) {
  SkewSeries x(scheme, f.field(), order);
  if (degree < 0) fail(Err::ConfigError, "skew series live in nonnegative degrees");
  if (degree <= order) x.set(degree, std::move(f));
  return x;
}

void SkewSeries::set(int i, LocallyConstantFn f) {
  if (i < 0 || i > order_) fail(Err::IndexOutOfRange, "degree outside the truncation order");
  if (!ideal_condition_holds(f, i, *scheme_))
    fail(Err::SupportViolation,
         "degree-" + std::to_string(i) + " coefficient meets a forward image of the base set");
  coeffs_[static_cast<std::size_t>(i)] = std::move(f);
}

const LocallyConstantFn& SkewSeries::coefficient(int i) const {
  if (i < 0 || i > order_) fail(Err::IndexOutOfRange, "degree outside the truncation order");
  return coeffs_[static_cast<std::size_t>(i)];
}

bool SkewSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const LocallyConstantFn& f) { return f.is_zero(); });
}

namespace {
void check_same(const SkewSeries& a, const SkewSeries& b) {
  if (a.scheme() != b.scheme()) fail(Err::SchemeMismatch, "series over different schemes");
  if (a.order() != b.order()) fail(Err::CutoffMismatch, "series with different truncation orders");
}
}  // namespace

SkewSeries SkewSeries::operator+(const SkewSeries& o) const {
  check_same(*this, o);
  SkewSeries r(scheme_, field_, order_);
  for (int i = 0; i <= order_; ++i)
    r.set(i, coeffs_[static_cast<std::size_t>(i)] + o.coeffs_[static_cast<std::size_t>(i)]);
  return r;
}

SkewSeries SkewSeries::operator-(const SkewSeries& o) const {
  return *this + o.scaled(field_->from_int(-1));
}

SkewSeries SkewSeries::operator*(const SkewSeries& o) const {
  check_same(*this, o);
  SkewSeries r(scheme_, field_, order_);
  const SpaceSpec& spec = scheme_->space();
  for (int i = 0; i <= order_; ++i) {
    const LocallyConstantFn& a = coeffs_[static_cast<std::size_t>(i)];
    if (a.is_zero()) continue;
    for (int j = 0; i + j <= order_; ++j) {
      const LocallyConstantFn& b = o.coeffs_[static_cast<std::size_t>(j)];
      if (b.is_zero()) continue;
      LocallyConstantFn moved = spec.geometry == Geometry::TwoSidedShift
                                    ? b.shift_transport(i)
                                    : [&] {
                                        LocallyConstantFn g = b;
                                        for (int l = 0; l < i; ++l) g = g.odometer_transport(true);
                                        return g;
                                      }();
      LocallyConstantFn term = a * moved;
      if (!term.is_zero())
        r.set(i + j, r.coeffs_[static_cast<std::size_t>(i + j)] + term);
    }
  }
  return r;
}

SkewSeries SkewSeries::scaled(const FieldElement& c) const {
  SkewSeries r(scheme_, field_, order_);
  for (int i = 0; i <= order_; ++i) r.coeffs_[static_cast<std::size_t>(i)] =
      coeffs_[static_cast<std::size_t>(i)].scaled(c);
  return r;
}

SkewSeries SkewSeries::pow(unsigned e) const {
  SkewSeries r = one(scheme_, field_, order_);
  for (unsigned i = 0; i < e; ++i) r = r * (*this);
  return r;
}

SkewSeries SkewSeries::inverse() const {
  const LocallyConstantFn& b0 = coeffs_[0];
  // invertible in the degree-zero algebra iff nowhere zero
  bool invertible = !b0.is_zero();
  if (invertible && b0.width() > 0) {
    std::size_t expect = 1;
    for (int i = 0; i < b0.width(); ++i) expect *= scheme_->space().alphabet;
    invertible = b0.values().size() == expect;  // zero values are absent in canonical form
  }
  if (!invertible)
    fail(Err::NotInvertibleConstantTerm,
         "the constant term vanishes somewhere; no inverse in the skew series ring");
  LocallyConstantFn b0inv = b0;
  {
    std::map<std::uint64_t, FieldElement> inv_vals;
    for (const auto& [w, v] : b0.values()) inv_vals.emplace(w, v.inverse());
    LocallyConstantFn acc = LocallyConstantFn::zero(scheme_->space(), field_);
    // rebuild through indicators to keep the canonical form
    if (b0.width() == 0) {
      acc = LocallyConstantFn::constant(scheme_->space(), b0.values().begin()->second.inverse());
    } else {
      for (const auto& [w, v] : inv_vals)
        acc = acc + LocallyConstantFn::indicator(
                        Clopen::cylinder(scheme_->space(), b0.lo(), b0.hi(), w), field_)
                        .scaled(v);
    }
    b0inv = acc;
  }
  // x = b0 (1 - y) with ord(y) >= 1; x^(-1) = (sum y^j) b0^(-1)
  SkewSeries b0inv_series = SkewSeries::monomial(scheme_, b0inv, 0, order_);
  SkewSeries y = one(scheme_, field_, order_) - (b0inv_series * (*this));
  SkewSeries acc = one(scheme_, field_, order_);
  SkewSeries p = y;
  for (int j = 1; j <= order_; ++j) {
    if (p.is_zero()) break;
    acc = acc + p;
    if (j < order_) p = p * y;
  }
  return acc * b0inv_series;
}

BlockElement SkewSeries::project_blocks(const ComponentSetPtr& cs) const {
  if (cs->scheme() != scheme_) fail(Err::SchemeMismatch, "component set from a different scheme");
  int max_len = 0;
  for (const auto& w : cs->components()) max_len = std::max(max_len, w.length);
  if (order_ < max_len - 1)
    fail(Err::CutoffMismatch, "truncation order " + std::to_string(order_) +
                                  " cannot fill blocks of length " + std::to_string(max_len));
  CrossedMatrix m(1, scheme_->space(), field_);
  CrossedElement e(scheme_->space(), field_);
  for (int i = 0; i <= order_; ++i)
    if (!coeffs_[static_cast<std::size_t>(i)].is_zero())
      e = e + CrossedElement::monomial(coeffs_[static_cast<std::size_t>(i)], i);
  m.at(0, 0) = e;
  BlockElement out(cs, 1, field_);
  for (std::size_t idx = 0; idx < cs->size(); ++idx)
    out.block(idx) = component_block(m, *scheme_, cs->components()[idx], /*substitute=*/false);
  return out;
}

bool SkewSeries::operator==(const SkewSeries& o) const {
  if (scheme_ != o.scheme_ || order_ != o.order_) return false;
  for (int i = 0; i <= order_; ++i)
    if (!(coeffs_[static_cast<std::size_t>(i)] == o.coeffs_[static_cast<std::size_t>(i)]))
      return false;
  return true;
}

std::string SkewSeries::to_string() const {
  std::string s;
  bool first = true;
  for (int i = 0; i <= order_; ++i) {
    if (coeffs_[static_cast<std::size_t>(i)].is_zero()) continue;
    if (!first) s += " + ";
    first = false;
    s += "(" + coeffs_[static_cast<std::size_t>(i)].to_string() + ")";
    if (i > 0) s += "*t^" + std::to_string(i);
  }
  return first ? "0" : s;
}

// ---------- special sets ----------

std::vector<Clopen> special_sets(const SchemePtr& scheme, int degree) {
  if (degree < 0) fail(Err::ConfigError, "special degrees are nonnegative");
  const Clopen& E = scheme->base();
  if (degree == 0) {
    Clopen EE = E.intersect(scheme->forward_image(E, -1));
    if (EE.is_empty()) return {};
    Clopen S0 = E, S1 = E;
    for (const auto& z : scheme->parts()) {
      if (!z.disjoint_from(scheme->forward_image(E, -1))) S0 = S0.unite(z);
      if (!scheme->forward_image(z, -1).disjoint_from(E)) S1 = S1.unite(z);
    }
    return {S0.unite(scheme->forward_image(S1, -1))};
  }
  ComponentSetPtr cs = enumerate_components(scheme, degree + 1);
  std::vector<Clopen> out;
  for (const auto& w : cs->components())
    if (w.length == degree + 1) out.push_back(special_set_of_component(scheme, w));
  return out;
}

Clopen special_set_of_component(const SchemePtr& scheme, const WComponent& w) {
  if (w.length == 1) {
    auto ws = special_sets(scheme, 0);
    if (ws.empty())
      fail(Err::NotSpecial, "no degree-zero special support: E misses its backward image");
    return ws.front();
  }
  int i = w.length - 1;
  // S(W) = Z_i cap T(Z_(i-1)) cap ... cap T^(i-1)(Z_1)
  Clopen S = Clopen::full_space(scheme->space());
  for (int l = 0; l < i; ++l) {
    const Clopen& z = scheme->parts().at(static_cast<std::size_t>(w.label[static_cast<std::size_t>(i - 1 - l)]));
    S = S.intersect(scheme->forward_image(z, l));
  }
  return S;
}

// ---------- special series ----------

SpecialSeries::SpecialSeries(ComponentSetPtr cs, FieldContextPtr K)
    : cs_(std::move(cs)), field_(std::move(K)) {
  coeffs_.assign(cs_->size(), field_->zero());
}

SpecialSeries SpecialSeries::unit(const ComponentSetPtr& cs, const FieldContextPtr& K) {
  SpecialSeries s(cs, K);
  for (auto& c : s.coeffs_) c = K->one();
  return s;
}

namespace {
void check_same_cs(const SpecialSeries& a, const SpecialSeries& b) {
  if (a.component_set() != b.component_set())
    fail(Err::SchemeMismatch, "special series over different component sets");
}
}  // namespace

SpecialSeries SpecialSeries::operator+(const SpecialSeries& o) const {
  check_same_cs(*this, o);
  SpecialSeries r = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = coeffs_[i] + o.coeffs_[i];
  return r;
}

SpecialSeries SpecialSeries::hadamard(const SpecialSeries& o) const {
  check_same_cs(*this, o);
  SpecialSeries r = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = coeffs_[i] * o.coeffs_[i];
  return r;
}

SpecialSeries SpecialSeries::conj() const {
  SpecialSeries r = *this;
  for (auto& c : r.coeffs_) c = c.conj();
  return r;
}

SpecialSeries SpecialSeries::relative_inverse() const {
  SpecialSeries r = *this;
  for (auto& c : r.coeffs_)
    if (!c.is_zero()) c = c.inverse();
  return r;
}

bool SpecialSeries::operator==(const SpecialSeries& o) const {
  if (cs_ != o.cs_) return false;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (!(coeffs_[i] == o.coeffs_[i])) return false;
  return true;
}

SkewSeries SpecialSeries::to_series(int order) const {
  SkewSeries x(cs_->scheme(), field_, order);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    const WComponent& w = cs_->components()[i];
    int degree = w.length - 1;
    if (degree > order)
      fail(Err::CutoffMismatch, "special coefficient of degree " + std::to_string(degree) +
                                    " does not fit the truncation order");
    Clopen S = special_set_of_component(cs_->scheme(), w);
    x = x + SkewSeries::monomial(cs_->scheme(),
                                 LocallyConstantFn::indicator(S, field_).scaled(coeffs_[i]),
                                 degree, order);
  }
  return x;
}

BlockElement SpecialSeries::to_central_blocks() const {
  BlockElement b(cs_, 1, field_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    unsigned len = static_cast<unsigned>(cs_->components()[i].length);
    b.block(i) = ExactMatrix::identity(len, field_).scaled(coeffs_[i]);
  }
  return b;
}

std::string SpecialSeries::to_string() const {
  std::string s;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    if (!first) s += " + ";
    first = false;
    const WComponent& w = cs_->components()[i];
    s += coeffs_[i].to_string() + "*S(" + w.set.word_strings().front() + ")";
    if (w.length > 1) s += "*t^" + std::to_string(w.length - 1);
  }
  return first ? "0" : s;
}

SpecialSeries project_special(const SkewSeries& x, const ComponentSetPtr& cs) {
  if (cs->scheme() != x.scheme())
    fail(Err::SchemeMismatch, "component set from a different scheme");
  SpecialSeries out(cs, x.field());
  const PartitionScheme& scheme = *cs->scheme();
  for (std::size_t i = 0; i < cs->size(); ++i) {
    const WComponent& w = cs->components()[i];
    int d = w.length - 1;
    if (d > x.order())
      fail(Err::CutoffMismatch, "truncation order too small for a component of length " +
                                    std::to_string(w.length));
    // bottom-left block entry: the degree-(len-1) coefficient on T^(len-1)(W)
    Clopen top = scheme.forward_image(w.set, d);
    out.coefficient(i) = eval_on_translate(x.coefficient(d), top);
  }
  return out;
}

// ---------- pure terms for the lamplighter ----------

namespace {

struct SpecialWordView {
  int degree;                 // i
  std::vector<unsigned> mid;  // the flexible block between the forced flips (may be empty)
};

// Validate the special shape at level n and pull out the star block.
SpecialWordView parse_special_word(const Clopen& S, const PartitionScheme& scheme) {
  int n = scheme.level();
  unsigned marked = scheme.convention() == LampConvention::Ones ? 1 : 0;
  if (S.is_empty() || S.is_full() || S.words().size() != 1)
    fail(Err::NotSpecial, "special supports are single cylinders");
  int width = S.width();
  int degree = width - 2 * n;
  if (degree <= 0 || S.lo() != -n - degree + 1 || S.hi() != n)
    fail(Err::NotSpecial, "support window does not match any special degree");
  std::uint64_t w = S.words().front();
  auto sym = [&](int pos) { return word_symbol(w, pos, width, 1); };
  for (int p = 0; p < 2 * n; ++p)
    if (sym(p) != marked || sym(width - 1 - p) != marked)
      fail(Err::NotSpecial, "special supports start and end with the marked block");
  if (degree == 2 * n + 1) {
    if (sym(2 * n) != 1 - marked) fail(Err::NotSpecial, "expected a single flip in the middle");
    return {degree, {}};
  }
  if (degree < 2 * n + 2) fail(Err::NotSpecial, "no special support has this degree");
  if (sym(2 * n) != 1 - marked || sym(width - 1 - 2 * n) != 1 - marked)
    fail(Err::NotSpecial, "expected flips around the free block");
  SpecialWordView v;
  v.degree = degree;
  int run = 0;
  for (int p = 2 * n + 1; p < width - 2 * n - 1; ++p) {
    unsigned s = static_cast<unsigned>(sym(p));
    run = s == marked ? run + 1 : 0;
    if (run > 2 * n) fail(Err::NotSpecial, "free block carries an overlong marked run");
    v.mid.push_back(s);
  }
  return v;
}

Clopen pure_support(const PartitionScheme& scheme, const std::vector<unsigned>& mid, bool seam) {
  int n = scheme.level();
  unsigned marked = scheme.convention() == LampConvention::Ones ? 1 : 0;
  std::vector<unsigned> word;
  for (int p = 0; p < 2 * n; ++p) word.push_back(marked);
  word.push_back(1 - marked);
  if (!seam) {
    for (unsigned s : mid) word.push_back(s);
    word.push_back(1 - marked);
  }
  for (int p = 0; p < 2 * n; ++p) word.push_back(marked);
  std::uint64_t bits = 0;
  for (unsigned s : word) bits = (bits << 1) | s;
  int width = static_cast<int>(word.size());
  int degree = width - 2 * n;
  return Clopen::cylinder(scheme.space(), -n - degree + 1, n, bits);
}

}  // namespace

std::vector<PureTerm> factor_pure(const Clopen& S, const SchemePtr& scheme) {
  if (scheme->kind() != SchemeKind::Lamplighter)
    fail(Err::NotSpecial, "pure factorization is defined for the lamplighter schemes");
  if (scheme->level() == 0)
    fail(Err::LevelZeroUnsupported,
         "at level 0 the special algebra is a one-variable power series ring; "
         "factorization is trivial there and not exposed");
  int n = scheme->level();
  unsigned marked = scheme->convention() == LampConvention::Ones ? 1 : 0;
  SpecialWordView v = parse_special_word(S, *scheme);
  // middle block in splice form: 0 mid 0 (single 0 for the seam element)
  std::vector<unsigned> M;
  M.push_back(1 - marked);
  if (v.degree >= 2 * n + 2) {
    for (unsigned s : v.mid) M.push_back(s);
    M.push_back(1 - marked);
  }
  // cut at maximal marked runs of length exactly 2n; boundaries of M are flips
  std::vector<std::pair<int, int>> pieces;  // [from, to) ranges of M
  int piece_start = 0;
  int run_start = -1, run_len = 0;
  auto flush_run = [&](int pos) {
    if (run_len == 2 * n) {
      pieces.emplace_back(piece_start, run_start);
      piece_start = pos;
    }
    run_start = -1;
    run_len = 0;
  };
  for (int p = 0; p < static_cast<int>(M.size()); ++p) {
    if (M[static_cast<std::size_t>(p)] == marked) {
      if (run_len == 0) run_start = p;
      ++run_len;
    } else {
      flush_run(p);
    }
  }
  flush_run(static_cast<int>(M.size()));
  pieces.emplace_back(piece_start, static_cast<int>(M.size()));

  std::vector<PureTerm> factors;
  for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) {  // product order
    int from = it->first, to = it->second;
    if (to - from == 1) {
      factors.push_back({pure_support(*scheme, {}, /*seam=*/true), 2 * n + 1});
    } else {
      std::vector<unsigned> mid(M.begin() + from + 1, M.begin() + to - 1);
      factors.push_back(
          {pure_support(*scheme, mid, /*seam=*/false), static_cast<int>(mid.size()) + 2 * n + 2});
    }
  }
  return factors;
}

std::vector<PureTerm> pure_terms_up_to(const SchemePtr& scheme, int max_degree) {
  if (scheme->kind() != SchemeKind::Lamplighter || scheme->level() == 0)
    fail(Err::LevelZeroUnsupported, "pure terms need a lamplighter scheme with level >= 1");
  int n = scheme->level();
  unsigned marked = scheme->convention() == LampConvention::Ones ? 1 : 0;
  std::vector<PureTerm> out;
  if (2 * n + 1 <= max_degree) out.push_back({pure_support(*scheme, {}, true), 2 * n + 1});
  for (int d = 2 * n + 2; d <= max_degree; ++d) {
    int l = d - 2 * n - 2;
    std::vector<std::vector<unsigned>> blocks;
    struct Gen {
      int l, cap;
      unsigned marked;
      std::vector<std::vector<unsigned>>* out;
      std::vector<unsigned> cur;
      void go(int filled, int run) {
        if (filled == l) {
          out->push_back(cur);
          return;
        }
        for (unsigned s = 0; s <= 1; ++s) {
          int nrun = s == marked ? run + 1 : 0;
          if (nrun > cap) continue;
          cur.push_back(s);
          go(filled + 1, nrun);
          cur.pop_back();
        }
      }
    } gen{l, 2 * n - 1, marked, &blocks, {}};
    gen.go(0, 0);
    for (const auto& mid : blocks) out.push_back({pure_support(*scheme, mid, false), d});
  }
  return out;
}

}  // namespace lamprank
