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

#include "lamprank/blocks.hpp"

#include <algorithm>
#include <cstdlib>
#include <unordered_map>

#include "lamprank/blocks_internal.hpp"

namespace lamprank {

CrossedMatrix::CrossedMatrix(unsigned k, const SpaceSpec& spec, const FieldContextPtr& K)
    : k_(k), spec_(spec), field_(K),
      entries_(static_cast<std::size_t>(k) * k, CrossedElement::zero(spec, K)) {
  if (k == 0) fail(Err::IndexOutOfRange, "matrix size must be positive");
}

CrossedMatrix CrossedMatrix::operator*(const CrossedMatrix& o) const {
  if (k_ != o.k_) fail(Err::IndexOutOfRange, "matrix size mismatch");
  CrossedMatrix r(k_, spec_, field_);
  for (unsigned i = 0; i < k_; ++i)
    for (unsigned l = 0; l < k_; ++l)
      for (unsigned j = 0; j < k_; ++j) r.at(i, j) = r.at(i, j) + at(i, l) * o.at(l, j);
  return r;
}

CrossedMatrix CrossedMatrix::operator+(const CrossedMatrix& o) const {
  if (k_ != o.k_) fail(Err::IndexOutOfRange, "matrix size mismatch");
  CrossedMatrix r = *this;
  for (unsigned i = 0; i < k_; ++i)
    for (unsigned j = 0; j < k_; ++j) r.at(i, j) = r.at(i, j) + o.at(i, j);
  return r;
}

CrossedMatrix CrossedMatrix::star() const {
  CrossedMatrix r(k_, spec_, field_);
  for (unsigned i = 0; i < k_; ++i)
    for (unsigned j = 0; j < k_; ++j) r.at(i, j) = at(j, i).star();
  return r;
}

BlockElement::BlockElement(ComponentSetPtr cs, unsigned k, FieldContextPtr K)
    : cs_(std::move(cs)), k_(k), field_(std::move(K)) {
  blocks_.reserve(cs_->size());
  for (const auto& w : cs_->components())
    blocks_.emplace_back(k_ * static_cast<unsigned>(w.length), k_ * static_cast<unsigned>(w.length),
                         field_);
}

BlockElement BlockElement::identity(const ComponentSetPtr& cs, unsigned k,
                                    const FieldContextPtr& K) {
  BlockElement b(cs, k, K);
  for (std::size_t i = 0; i < b.count(); ++i)
    b.block(i) = ExactMatrix::identity(b.block(i).rows(), K);
  return b;
}

void BlockElement::check_compatible(const BlockElement& o) const {
  if (cs_ != o.cs_ || k_ != o.k_)
    fail(Err::SchemeMismatch, "block elements over different component sets");
}

BlockElement BlockElement::operator+(const BlockElement& o) const {
  check_compatible(o);
  BlockElement r = *this;
  for (std::size_t i = 0; i < blocks_.size(); ++i) r.blocks_[i] = blocks_[i] + o.blocks_[i];
  return r;
}

BlockElement BlockElement::operator-(const BlockElement& o) const {
  check_compatible(o);
  BlockElement r = *this;
  for (std::size_t i = 0; i < blocks_.size(); ++i) r.blocks_[i] = blocks_[i] - o.blocks_[i];
  return r;
}

BlockElement BlockElement::operator*(const BlockElement& o) const {
  check_compatible(o);
  BlockElement r = *this;
  for (std::size_t i = 0; i < blocks_.size(); ++i) r.blocks_[i] = blocks_[i] * o.blocks_[i];
  return r;
}

BlockElement BlockElement::star() const {
  BlockElement r = *this;
  for (std::size_t i = 0; i < blocks_.size(); ++i) r.blocks_[i] = blocks_[i].conj_transpose();
  return r;
}

bool BlockElement::operator==(const BlockElement& o) const {
  if (cs_ != o.cs_ || k_ != o.k_) return false;
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    if (!(blocks_[i] == o.blocks_[i])) return false;
  return true;
}

bool BlockElement::is_zero() const {
  return std::all_of(blocks_.begin(), blocks_.end(),
                     [](const ExactMatrix& m) { return m.is_zero(); });
}

CrossedElement matrix_unit(const ComponentSet& cs, std::size_t comp_idx, unsigned i, unsigned j,
                           const FieldContextPtr& K) {
  const WComponent& w = cs.components().at(comp_idx);
  if (i >= static_cast<unsigned>(w.length) || j >= static_cast<unsigned>(w.length))
    fail(Err::IndexOutOfRange, "matrix unit index exceeds the component length");
  const PartitionScheme& scheme = *cs.scheme();
  Clopen ti = scheme.forward_image(w.set, static_cast<int>(i));
  return CrossedElement::monomial(LocallyConstantFn::indicator(ti, K),
                                  static_cast<int>(i) - static_cast<int>(j));
}

// ---------- component translates and fast evaluation ----------

std::vector<Clopen> component_translates(const PartitionScheme& scheme, const WComponent& comp) {
  std::vector<Clopen> ts;
  ts.reserve(static_cast<std::size_t>(comp.length));
  ts.push_back(comp.set);
  for (int i = 1; i < comp.length; ++i) ts.push_back(scheme.forward_image(ts.back(), 1));
  return ts;
}

FieldElement eval_on_translate(const LocallyConstantFn& f, const Clopen& C) {
  auto v = f.value_on(C);
  if (!v)
    fail(Err::NotRepresentableAtLevel,
         "coefficient is not constant on a component translate; raise the level");
  return *v;
}

namespace {

// Allocation-free evaluation on a single-word translate whose window covers
// the coefficient window; falls back to the exact general path otherwise.
FieldElement eval_fast(const LocallyConstantFn& f, const Clopen& C, const FieldElement& zero) {
  if (f.is_zero()) return zero;
  if (f.width() == 0) return f.values().begin()->second;
  if (C.words().size() == 1 && !C.is_full() && f.lo() >= C.lo() && f.hi() <= C.hi()) {
    unsigned bps = C.space().bits_per_symbol();
    int offset = f.lo() - C.lo();
    int fw = f.width();
    int shift = (C.width() - offset - fw) * static_cast<int>(bps);
    std::uint64_t sub =
        (C.words()[0] >> shift) & ((std::uint64_t(1) << (fw * static_cast<int>(bps))) - 1);
    auto it = f.values().find(sub);
    return it == f.values().end() ? zero : it->second;
  }
  return eval_on_translate(f, C);
}

}  // namespace

// ---------- membership in the degree-zero generated subalgebra ----------

namespace {

constexpr int kCertWindowCap = 16;

// Membership for the lamplighter scheme via class refinement: two words are
// inseparable by the generated subalgebra iff they agree on every admissible
// subwindow on which either restriction avoids a full marked block.
bool in_base_lamplighter(const LocallyConstantFn& f, const PartitionScheme& scheme) {
  int n = scheme.level();
  int m = 2 * n + 1;
  std::uint64_t marked = scheme.convention() == LampConvention::Ones ? 1 : 0;
  int A = std::min(f.lo(), -n);
  int B = std::max(f.hi(), n + 1);
  int width = B - A + 1;
  if (width > kCertWindowCap) return f.lo() >= -n && f.hi() <= n;  // conservative fallback
  std::size_t total = std::size_t(1) << width;

  // longest marked run ending at each position, per word
  std::vector<std::uint32_t> cls(total, 0);
  std::uint32_t ncls = 1;
  std::vector<int> run(static_cast<std::size_t>(width));
  std::vector<std::uint32_t> next_cls(total);
  for (int a = 0; a < width; ++a) {
    for (int b = a + m - 1; b < width; ++b) {
      // admissible windows: [a,b] covering the scheme window, in coordinates
      int lo = A + a, hi = A + b;
      bool family1 = lo <= -n && hi >= n;
      bool family2 = lo == -n + 1 && hi >= n + 1;
      if (!family1 && !family2) continue;
      std::unordered_map<std::uint64_t, std::uint32_t> renum;
      renum.reserve(total / 4);
      std::uint32_t fresh = 0;
      for (std::size_t w = 0; w < total; ++w) {
        // longest marked run ending at p, computed incrementally per word
        int best = 0, cur = 0;
        bool dirty = false;
        for (int p = a; p <= b; ++p) {
          cur = word_symbol(w, p, width, 1) == marked ? cur + 1 : 0;
          if (cur > best) best = cur;
          if (cur >= m) {
            dirty = true;
            break;
          }
        }
        std::uint64_t key;
        if (dirty) {
          key = 0;
        } else {
          std::uint64_t sub = (w >> (width - 1 - b)) & ((std::uint64_t(1) << (b - a + 1)) - 1);
          key = sub + 1;
        }
        std::uint64_t comb = (static_cast<std::uint64_t>(cls[w]) << 32) | key;
        auto [it, inserted] = renum.emplace(comb, fresh);
        if (inserted) ++fresh;
        next_cls[w] = it->second;
      }
      cls.swap(next_cls);
      ncls = fresh;
    }
  }
  (void)ncls;
  (void)run;

  // constancy of f on each class (absent words carry the value zero)
  LocallyConstantFn g = f.expanded(A, B);
  FieldElement zero = f.field()->zero();
  std::vector<int> seen_class(total, -1);
  std::vector<FieldElement> rep_value;
  std::unordered_map<std::uint32_t, std::size_t> rep_index;
  for (std::size_t w = 0; w < total; ++w) {
    auto it = g.values().find(w);
    const FieldElement& v = it == g.values().end() ? zero : it->second;
    auto [rit, inserted] = rep_index.emplace(cls[w], rep_value.size());
    if (inserted) {
      rep_value.push_back(v);
    } else if (!(rep_value[rit->second] == v)) {
      return false;
    }
  }
  return true;
}

bool in_base_odometer(const LocallyConstantFn& f, const PartitionScheme& scheme) {
  return f.width() == 0 || (f.lo() >= 1 && f.hi() <= scheme.level());
}

bool in_base_custom(const LocallyConstantFn& f, const PartitionScheme& scheme) {
  if (f.is_zero() || f.width() == 0) return true;
  // When all parts and the base are cylinders over one common window, every
  // function on that window lies in the generated subalgebra.
  const Clopen& E = scheme.base();
  if (E.is_full() || E.is_empty()) return false;
  int lo = E.lo(), hi = E.hi();
  for (const auto& z : scheme.parts())
    if (z.is_full() || z.lo() < lo || z.hi() > hi) return false;
  return f.lo() >= lo && f.hi() <= hi;
}

}  // namespace

bool in_base_subalgebra(const LocallyConstantFn& f, const PartitionScheme& scheme) {
  if (f.is_zero() || f.width() == 0) return true;
  switch (scheme.kind()) {
    case SchemeKind::Lamplighter:
      return in_base_lamplighter(f, scheme);
    case SchemeKind::Odometer:
      return in_base_odometer(f, scheme);
    case SchemeKind::Custom:
      return in_base_custom(f, scheme);
  }
  return false;
}

bool ideal_condition_holds(const LocallyConstantFn& f, int d, const PartitionScheme& scheme) {
  if (d == 0 || f.is_zero()) return true;
  Clopen supp = f.support();
  if (d > 0) {
    for (int l = 0; l < d; ++l)
      if (!supp.disjoint_from(scheme.forward_image(scheme.base(), l))) return false;
  } else {
    for (int l = 1; l <= -d; ++l)
      if (!supp.disjoint_from(scheme.forward_image(scheme.base(), -l))) return false;
  }
  return true;
}

MonomialCertificate certify_monomial(const LocallyConstantFn& f, int d,
                                     const PartitionScheme& scheme) {
  MonomialCertificate cert;
  cert.in_base = in_base_subalgebra(f, scheme);
  cert.exact = cert.in_base && ideal_condition_holds(f, d, scheme);
  cert.substitutable = d == 0 ? cert.exact : cert.in_base;
  return cert;
}

// ---------- block construction ----------

ExactMatrix component_block(const CrossedMatrix& a, const PartitionScheme& scheme,
                            const WComponent& comp, bool substitute) {
  unsigned k = a.size();
  unsigned len = static_cast<unsigned>(comp.length);
  const FieldContextPtr& K = a.field();
  FieldElement zero = K->zero();
  ExactMatrix M(k * len, k * len, K);
  std::vector<Clopen> translates = component_translates(scheme, comp);
  for (unsigned r = 0; r < k; ++r)
    for (unsigned c = 0; c < k; ++c) {
      const CrossedElement& e = a.at(r, c);
      for (const auto& [d, fd] : e.coefficients()) {
        for (unsigned i = 0; i < len; ++i) {
          long j = static_cast<long>(i) - d;
          if (j < 0 || j >= static_cast<long>(len)) {
            if (substitute) continue;
            FieldElement v = eval_fast(fd, translates[i], zero);
            if (!v.is_zero())
              fail(Err::NotRepresentableAtLevel,
                   "monomial of degree " + std::to_string(d) +
                       " leaves the block range; use the shift approximant or raise the level");
            continue;
          }
          FieldElement v = eval_fast(fd, translates[i], zero);
          if (v.is_zero()) continue;
          unsigned row = r * len + i;
          unsigned col = c * len + static_cast<unsigned>(j);
          M.at(row, col) = M.at(row, col) + v;
        }
      }
    }
  return M;
}

// Rank of one component block with sparsity shortcuts for scalar elements:
// a single occupied subdiagonal has rank equal to its nonzero count, and a
// triangular profile with a filled diagonal has full rank.
unsigned component_rank(const CrossedMatrix& a, const PartitionScheme& scheme,
                        const WComponent& comp) {
  if (a.size() != 1) return matrix_rank_banded_hint(component_block(a, scheme, comp, true));
  const CrossedElement& e = a.at(0, 0);
  unsigned len = static_cast<unsigned>(comp.length);
  const FieldContextPtr& K = a.field();
  FieldElement zero = K->zero();
  std::vector<Clopen> translates = component_translates(scheme, comp);
  std::vector<std::pair<int, std::vector<FieldElement>>> bands;
  for (const auto& [d, fd] : e.coefficients()) {
    std::vector<FieldElement> band;
    bool any = false;
    long i_lo = std::max<long>(0, d);
    long i_hi = std::min<long>(len - 1, static_cast<long>(len) - 1 + d);
    for (long i = i_lo; i <= i_hi; ++i) {
      FieldElement v = eval_fast(fd, translates[static_cast<std::size_t>(i)], zero);
      if (!v.is_zero()) any = true;
      band.push_back(std::move(v));
    }
    if (any) bands.emplace_back(d, std::move(band));
  }
  if (bands.empty()) return 0;
  if (bands.size() == 1) {
    unsigned nz = 0;
    for (const auto& v : bands[0].second)
      if (!v.is_zero()) ++nz;
    return nz;
  }
  bool has_diag_full = false, upper_only = true, lower_only = true;
  for (const auto& [d, band] : bands) {
    if (d == 0) {
      has_diag_full = band.size() == len &&
                      std::none_of(band.begin(), band.end(),
                                   [](const FieldElement& v) { return v.is_zero(); });
    } else if (d > 0) {
      upper_only = false;
    } else {
      lower_only = false;
    }
  }
  if (has_diag_full && (upper_only || lower_only)) return len;
  ExactMatrix M(len, len, K);
  for (const auto& [d, band] : bands) {
    long i_lo = std::max<long>(0, d);
    for (std::size_t idx = 0; idx < band.size(); ++idx) {
      long i = i_lo + static_cast<long>(idx);
      M.at(static_cast<unsigned>(i), static_cast<unsigned>(i - d)) = band[idx];
    }
  }
  return matrix_rank(M);
}

BlockElement represent(const CrossedMatrix& a, const ComponentSetPtr& cs) {
  const PartitionScheme& scheme = *cs->scheme();
  for (unsigned r = 0; r < a.size(); ++r)
    for (unsigned c = 0; c < a.size(); ++c)
      for (const auto& [d, fd] : a.at(r, c).coefficients()) {
        MonomialCertificate cert = certify_monomial(fd, d, scheme);
        if (!cert.exact)
          fail(Err::NotRepresentableAtLevel,
               "coefficient at degree " + std::to_string(d) +
                   " is outside the level-" + std::to_string(scheme.level()) +
                   " subalgebra; raise the level or use the approximant");
      }
  BlockElement out(cs, a.size(), a.field());
  for (std::size_t idx = 0; idx < cs->size(); ++idx)
    out.block(idx) = component_block(a, scheme, cs->components()[idx], /*substitute=*/false);
  return out;
}

BlockElement represent(const CrossedElement& a, const ComponentSetPtr& cs) {
  return represent(CrossedMatrix::scalar(a), cs);
}

SubstitutedBlocks represent_substituted(const CrossedMatrix& a, const ComponentSetPtr& cs) {
  const PartitionScheme& scheme = *cs->scheme();
  Rat err(0);
  Rat muE = scheme.base_measure();
  for (unsigned r = 0; r < a.size(); ++r)
    for (unsigned c = 0; c < a.size(); ++c)
      for (const auto& [d, fd] : a.at(r, c).coefficients()) {
        MonomialCertificate cert = certify_monomial(fd, d, scheme);
        if (cert.exact) continue;
        if (!cert.substitutable)
          fail(Err::NotRepresentableAtLevel,
               "coefficient at degree " + std::to_string(d) +
                   " is outside the level-" + std::to_string(scheme.level()) +
                   " subalgebra even after substitution; raise the level");
        err += Rat(std::abs(d)) * muE;
      }
  err.canonicalize();
  SubstitutedBlocks out{BlockElement(cs, a.size(), a.field()), err};
  for (std::size_t idx = 0; idx < cs->size(); ++idx)
    out.blocks.block(idx) = component_block(a, scheme, cs->components()[idx], /*substitute=*/true);
  return out;
}

std::pair<CrossedElement, Rat> approximant(const CrossedElement& a, const SchemePtr& scheme) {
  const SpaceSpec& spec = a.space();
  const FieldContextPtr& K = a.field();
  CrossedElement out(spec, K);
  Rat err(0);
  Rat muE = scheme->base_measure();
  for (const auto& [d, fd] : a.coefficients()) {
    MonomialCertificate cert = certify_monomial(fd, d, *scheme);
    if (cert.exact || d == 0) {
      out = out + CrossedElement::monomial(fd, d);
      continue;
    }
    // t^d -> (chi(X\E) t)^d, i.e. multiply the coefficient by the d-step
    // avoidance indicator.
    Clopen avoid = Clopen::full_space(spec);
    if (d > 0)
      for (int l = 0; l < d; ++l)
        avoid = avoid.difference(scheme->forward_image(scheme->base(), l));
    else
      for (int l = 1; l <= -d; ++l)
        avoid = avoid.difference(scheme->forward_image(scheme->base(), -l));
    LocallyConstantFn g = fd * LocallyConstantFn::indicator(avoid, K);
    if (!g.is_zero()) out = out + CrossedElement::monomial(g, d);
    err += Rat(std::abs(d)) * muE;
  }
  err.canonicalize();
  return {out, err};
}

// ---------- refinement across nested schemes ----------

BlockElement refine_embedding(const ComponentSetPtr& coarse, const ComponentSetPtr& fine,
                              const BlockElement& x) {
  const PartitionScheme& cs = *coarse->scheme();
  const PartitionScheme& fs = *fine->scheme();
  if (x.component_set() != coarse) fail(Err::SchemeMismatch, "blocks are not over the coarse set");
  if (cs.space() != fs.space()) fail(Err::SchemesNotNested, "schemes live on different spaces");
  if (!cs.base().contains(fs.base()))
    fail(Err::SchemesNotNested, "the finer base set must be contained in the coarser one");
  for (const auto& z : fs.parts()) {
    bool inside = cs.base().contains(z);
    for (const auto& zc : cs.parts())
      if (zc.contains(z)) inside = true;
    if (!inside) fail(Err::SchemesNotNested, "a finer part straddles the coarse partition");
  }

  unsigned k = x.ambient_size();
  BlockElement out(fine, k, x.field());
  for (std::size_t idx = 0; idx < fine->size(); ++idx) {
    const WComponent& wp = fine->components()[idx];
    std::vector<Clopen> translates = component_translates(fs, wp);
    // return times to the coarse base set
    std::vector<int> returns;
    for (int i = 0; i < wp.length; ++i) {
      if (cs.base().contains(translates[static_cast<std::size_t>(i)])) returns.push_back(i);
      else if (!cs.base().disjoint_from(translates[static_cast<std::size_t>(i)]))
        fail(Err::SchemesNotNested, "a translate straddles the coarse base set");
    }
    if (returns.empty() || returns.front() != 0)
      fail(Err::SchemesNotNested, "fine component does not start inside the coarse base");
    returns.push_back(wp.length);
    unsigned flen = static_cast<unsigned>(wp.length);
    ExactMatrix& target = out.block(idx);
    for (std::size_t s = 0; s + 1 < returns.size(); ++s) {
      int r0 = returns[s], r1 = returns[s + 1];
      int seg_len = r1 - r0;
      // identify the coarse component along this segment by its label word
      std::vector<int> label;
      label.reserve(static_cast<std::size_t>(seg_len) - 1);
      for (int l = 1; l < seg_len; ++l) {
        const Clopen& tr = translates[static_cast<std::size_t>(r0 + l)];
        int zidx = -1;
        for (std::size_t z = 0; z < cs.parts().size(); ++z)
          if (cs.parts()[z].contains(tr)) {
            zidx = static_cast<int>(z);
            break;
          }
        if (zidx < 0) fail(Err::SchemesNotNested, "a translate straddles a coarse part");
        label.push_back(zidx);
      }
      auto ci = coarse->find(label);
      if (!ci)
        fail(Err::SegmentNotFound, "a segment of length " + std::to_string(seg_len) +
                                       " exceeds the coarse cutoff; raise it");
      const ExactMatrix& src = x.block(*ci);
      unsigned slen = static_cast<unsigned>(seg_len);
      for (unsigned rr = 0; rr < k; ++rr)
        for (unsigned cc = 0; cc < k; ++cc)
          for (unsigned i = 0; i < slen; ++i)
            for (unsigned j = 0; j < slen; ++j)
              target.at(rr * flen + static_cast<unsigned>(r0) + i,
                        cc * flen + static_cast<unsigned>(r0) + j) =
                  src.at(rr * slen + i, cc * slen + j);
    }
  }
  return out;
}

}  // namespace lamprank
