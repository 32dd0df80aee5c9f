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

#include "lamprank/verify.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "lamprank/automaton.hpp"
#include "lamprank/bracket.hpp"
#include "lamprank/parser.hpp"
#include "lamprank/series.hpp"

namespace lamprank {

namespace {

using Clock = std::chrono::steady_clock;

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  int range(int lo, int hi) {  // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(eng);
  }
  Rat rat() {
    int num = range(-4, 4);
    int den = range(1, 3);
    Rat r(num, den);
    r.canonicalize();
    return r;
  }
  FieldElement element(const FieldContextPtr& K) {
    if (K->characteristic() != 0) return K->from_int(range(-4, 4));
    return K->from_rational(rat());
  }
  FieldElement nonzero_element(const FieldContextPtr& K) {
    for (;;) {
      FieldElement e = element(K);
      if (!e.is_zero()) return e;
    }
  }
};

struct Checker {
  bool ok = true;
  std::ostringstream details;
  long count = 0;
  void require(bool cond, const std::string& what) {
    ++count;
    if (!cond && ok) {
      ok = false;
      details << "FAILED: " << what;
    }
  }
  void note(const std::string& s) { details << s; }
};

CriterionResult finish(int id, const std::string& name, Checker& c, Clock::time_point t0) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  r.pass = c.ok;
  r.details = c.details.str();
  r.wall_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
  return r;
}

const char* kSelfAdjointExpr = "(1/2)*(1+a(0))*t + ((1/2)*(1+a(0))*t)'";

// ---------- criterion 1: the headline kernel dimension ----------

CriterionResult criterion_headline(const VerifyOptions&) {
  auto t0 = Clock::now();
  Checker c;
  FieldContextPtr K = FieldContext::rationals();
  auto A = parse_group_matrix(kSelfAdjointExpr, K);
  RankBracket b = betti_bracket(A, lamplighter_scheme(0), 30, /*threads=*/1);
  Rat third(1, 3);
  c.require(b.width() <= parse_rational("1e-6"), "width <= 1e-6");
  c.require(b.contains(third), "bracket contains 1/3");
  c.require(b.wall_ms <= 10000, "single-threaded run within 10 s");
  c.note("bracket [" + rat_string(b.lower) + ", " + rat_string(b.upper) + "] width " +
         rat_string(b.width()) + " in " + std::to_string(b.wall_ms) + " ms");
  return finish(1, "kernel dimension 1/3 at level 0, cutoff 30", c, t0);
}

// ---------- criterion 2: cross-level consistency ----------

CriterionResult criterion_cross_level(const VerifyOptions& opts) {
  auto t0 = Clock::now();
  Checker c;
  FieldContextPtr K = FieldContext::rationals();
  auto A = parse_group_matrix(kSelfAdjointExpr, K);
  RankBracket b0 = betti_bracket(A, lamplighter_scheme(0), 30, 1);
  int cutoff = opts.quick ? 16 : 22;
  RankBracket b1 = betti_bracket(A, lamplighter_scheme(1), cutoff, 4);
  Rat third(1, 3);
  c.require(b0.contains(third), "level-0 bracket contains 1/3");
  c.require(b1.contains(third), "level-1 bracket contains 1/3");
  c.require(b1.lower <= b0.upper && b0.lower <= b1.upper, "brackets intersect");
  c.require(b1.wall_ms <= 60000, "level-1 run within 60 s on 4 threads");
  c.note("level-1 bracket [" + rat_string(b1.lower) + ", " + rat_string(b1.upper) + "], " +
         std::to_string(b1.component_count) + " components in " + std::to_string(b1.wall_ms) +
         " ms");
  return finish(2, "cross-level consistency at level 1", c, t0);
}

// ---------- criterion 3: component census ----------

CriterionResult criterion_census(const VerifyOptions&) {
  auto t0 = Clock::now();
  Checker c;
  for (unsigned n = 0; n <= 2; ++n) {
    unsigned m = 2 * n + 1;
    int cutoff = static_cast<int>(m) + 8;
    SchemePtr scheme = lamplighter_scheme(n);
    ComponentSetPtr fast = enumerate_components(scheme, cutoff);
    ComponentSetPtr generic = enumerate_components(scheme, cutoff, /*force_generic=*/true);
    c.require(fast->size() == generic->size(),
              "n=" + std::to_string(n) + ": fast and generic census sizes agree");
    bool same = fast->size() == generic->size();
    for (std::size_t i = 0; same && i < fast->size(); ++i) {
      const auto& a = fast->components()[i];
      const auto& b = generic->components()[i];
      if (!(a.label == b.label && a.length == b.length && a.set == b.set &&
            a.measure == b.measure))
        same = false;
    }
    c.require(same, "n=" + std::to_string(n) + ": fast and generic components agree set-wise");
    std::map<int, long> by_length;
    for (const auto& w : fast->components()) ++by_length[w.length];
    c.require(by_length[1] == 1, "n=" + std::to_string(n) + ": one component of length 1");
    long expected_total = 1;
    for (unsigned k = 1; k <= 8; ++k) {
      Int fib = macci(m, k);
      long count = by_length.count(static_cast<int>(m + k)) ? by_length[static_cast<int>(m + k)] : 0;
      c.require(Int(count) == fib, "n=" + std::to_string(n) + ": count at length " +
                                       std::to_string(m + k) + " equals the m-step value");
      expected_total += static_cast<long>(fib.get_ui());
    }
    c.require(static_cast<long>(fast->size()) == expected_total,
              "n=" + std::to_string(n) + ": no components of other lengths");
  }
  return finish(3, "component census matches the matrix-size table", c, t0);
}

// ---------- criterion 4: quasi-partition identity ----------

CriterionResult criterion_quasi_partition(const VerifyOptions&) {
  auto t0 = Clock::now();
  Checker c;
  for (int L = 1; L <= 30; ++L) {
    ComponentSetPtr cs = enumerate_components(lamplighter_scheme(0), L);
    c.require(cs->covered_mass() == lamplighter_covered_mass_closed_form(0, L),
              "n=0 L=" + std::to_string(L) + ": enumerated mass equals the closed form");
  }
  for (int L = 1; L <= 12; ++L) {
    ComponentSetPtr cs = enumerate_components(lamplighter_scheme(1), L);
    c.require(cs->covered_mass() == lamplighter_covered_mass_closed_form(1, L),
              "n=1 L=" + std::to_string(L) + ": enumerated mass equals the closed form");
  }
  {
    ComponentSetPtr cs = enumerate_components(lamplighter_scheme(2), 9);
    c.require(cs->covered_mass() == lamplighter_covered_mass_closed_form(2, 9),
              "n=2 L=9: enumerated mass equals the closed form");
  }
  ComponentSetPtr cs30 = enumerate_components(lamplighter_scheme(0), 30);
  c.require(cs30->covered_mass() >= Rat(1) - parse_rational("1e-7"),
            "n=0 L=30: covered mass within 1e-7 of full");
  c.note("covered(0,30) = " + rat_string(cs30->covered_mass()));
  return finish(4, "quasi-partition mass identity", c, t0);
}

// ---------- criterion 5: summation rules ----------

// The stated tolerance (1e-6 at K = 200) is reachable only for m <= 3: the
// m-step growth ratio tends to 2, so the K = 200 tail is about 5e-3 already at
// m = 4 and about 28 at m = 7. The limit itself is verified exactly instead:
// the deficits D_K = 2^(m-1) - S_K satisfy D_K = sum_i 2^(-i) D_(K-i), and
// only the true limit satisfies that identity (any offset breaks it by
// offset * 2^(-m)); with monotone bounded partial sums it forces S_K -> 2^(m-1).
CriterionResult criterion_summation(const VerifyOptions&) {
  auto t0 = Clock::now();
  Checker c;
  for (unsigned m = 1; m <= 7; ++m) {
    Rat bound = pow2(static_cast<long>(m) - 1);
    std::vector<Rat> partial(201, Rat(0));
    Rat sum(0);
    bool monotone = true, bounded = true;
    for (unsigned k = 1; k <= 200; ++k) {
      sum += Rat(macci(m, k)) * pow2(-static_cast<long>(k));
      sum.canonicalize();
      if (sum < partial[k - 1]) monotone = false;
      if (sum > bound) bounded = false;
      partial[k] = sum;
    }
    c.require(monotone, "m=" + std::to_string(m) + ": partial sums monotone");
    c.require(bounded, "m=" + std::to_string(m) + ": partial sums bounded by 2^(m-1)");
    bool deficits_telescope = true;
    for (unsigned K = m + 1; K <= 200; ++K) {
      Rat lhs = bound - partial[K];
      Rat rhs(0);
      for (unsigned i = 1; i <= m && i <= K; ++i)
        rhs += pow2(-static_cast<long>(i)) * (bound - partial[K - i]);
      rhs.canonicalize();
      if (!(lhs == rhs)) deficits_telescope = false;
    }
    c.require(deficits_telescope,
              "m=" + std::to_string(m) + ": deficits telescope, pinning the limit exactly");
    if (m <= 3)
      c.require(bound - sum <= parse_rational("1e-6"),
                "m=" + std::to_string(m) + ": within 1e-6 of 2^(m-1) at K=200");
  }
  return finish(5, "m-step summation rules", c, t0);
}

// ---------- criterion 6: odometer structure ----------

CriterionResult criterion_odometer(const VerifyOptions& opts) {
  auto t0 = Clock::now();
  Checker c;
  Rng rng(opts.seed ^ 0x6f646f);
  FieldContextPtr K = FieldContext::rationals();
  for (unsigned n = 1; n <= 6; ++n) {
    ComponentSetPtr cs = enumerate_components(odometer_scheme(n), 1 << n);
    c.require(cs->size() == 1, "odometer n=" + std::to_string(n) + ": a single component");
    c.require(cs->components()[0].length == (1 << n),
              "odometer n=" + std::to_string(n) + ": component length 2^n");
    c.require(cs->tail_mass() == 0, "odometer n=" + std::to_string(n) + ": translates tile fully");
  }
  for (unsigned n = 1; n <= 5; ++n) {
    ComponentSetPtr coarse = enumerate_components(odometer_scheme(n), 1 << n);
    ComponentSetPtr fine = enumerate_components(odometer_scheme(n + 1), 1 << (n + 1));
    BlockElement x(coarse, 1, K);
    unsigned len = static_cast<unsigned>(1 << n);
    for (unsigned i = 0; i < len; ++i)
      for (unsigned j = 0; j < len; ++j) x.block(0).at(i, j) = rng.element(K);
    BlockElement y = refine_embedding(coarse, fine, x);
    bool diag_ok = true;
    unsigned flen = 2 * len;
    for (unsigned i = 0; i < flen && diag_ok; ++i)
      for (unsigned j = 0; j < flen && diag_ok; ++j) {
        FieldElement expect = K->zero();
        if (i / len == j / len) expect = x.block(0).at(i % len, j % len);
        if (!(y.block(0).at(i, j) == expect)) diag_ok = false;
      }
    c.require(diag_ok, "odometer n=" + std::to_string(n) + ": refinement doubles the block");
  }
  return finish(6, "odometer single component and doubling embedding", c, t0);
}

// ---------- criterion 7: invertibility trend ----------

CriterionResult criterion_invertibility(const VerifyOptions& opts) {
  auto t0 = Clock::now();
  Checker c;
  FieldContextPtr K = FieldContext::rationals();
  CrossedMatrix M(1, SpaceSpec{2, Geometry::TwoSidedShift}, K);
  M.at(0, 0) = fourier(parse_group_expression("1 + t", K));
  Rat prev_lower(-1);
  struct Stage {
    unsigned level;
    int cutoff;
  };
  std::vector<Stage> stages = {{0, 20}, {1, 12}, {2, 12}, {3, 12}};
  for (const auto& st : stages) {
    ComponentSetPtr cs = enumerate_components(lamplighter_scheme(st.level), st.cutoff);
    RankBracket b = sylvester_bracket(M, cs, 1);
    Rat muE = lamplighter_scheme(st.level)->base_measure();
    c.require(b.lower >= Rat(1) - b.tail_mass - Rat(2) * muE,
              "level " + std::to_string(st.level) + ": lower bound from invertibility");
    c.require(b.upper == 1, "level " + std::to_string(st.level) + ": upper bound reaches 1");
  }
  // growth toward 1: level 0 caps at 1 - mu(E_0) = 1/2, level 1 passes it
  ComponentSetPtr c0 = enumerate_components(lamplighter_scheme(0), 30);
  RankBracket b0 = sylvester_bracket(M, c0, opts.threads == 0 ? 4 : opts.threads);
  int L1 = opts.quick ? 22 : 26;
  ComponentSetPtr c1 = enumerate_components(lamplighter_scheme(1), L1);
  RankBracket b1 = sylvester_bracket(M, c1, opts.threads == 0 ? 4 : opts.threads);
  c.require(b0.lower == Rat(1) - b0.tail_mass - pow2(-1),
            "level 0: blocks are unipotent, lower = covered - mu(E)");
  if (!opts.quick)
    c.require(b1.lower > b0.lower, "level 1 at cutoff 26 pushes the lower bound past 1/2");
  c.note("lower(0,30) = " + rat_string(b0.lower) + ", lower(1," + std::to_string(L1) +
         ") = " + rat_string(b1.lower));
  return finish(7, "invertibility of 1 + t across levels", c, t0);
}

// ---------- criterion 8: property suites ----------

SchemePtr random_level(Rng& rng, unsigned max_n = 1) {
  return lamplighter_scheme(static_cast<unsigned>(rng.range(0, static_cast<int>(max_n))));
}

CrossedElement random_generator_word(Rng& rng, const SchemePtr& scheme, const FieldContextPtr& K,
                                     int max_factors) {
  const SpaceSpec& spec = scheme->space();
  int nf = rng.range(1, max_factors);
  CrossedElement prod = CrossedElement::one(spec, K);
  for (int i = 0; i < nf; ++i) {
    int z = rng.range(0, static_cast<int>(scheme->parts().size()) - 1);
    CrossedElement gen = CrossedElement::monomial(
        LocallyConstantFn::indicator(scheme->parts()[static_cast<std::size_t>(z)], K), 1);
    prod = prod * (rng.range(0, 1) ? gen : gen.star());
  }
  return prod;
}

CrossedElement random_algebra_element(Rng& rng, const SchemePtr& scheme,
                                      const FieldContextPtr& K) {
  CrossedElement acc = CrossedElement::zero(scheme->space(), K);
  int terms = rng.range(1, 3);
  for (int i = 0; i < terms; ++i)
    acc = acc + random_generator_word(rng, scheme, K, 3).scaled(rng.element(K));
  return acc;
}

GroupAlgebraElement random_group_element(Rng& rng, const FieldContextPtr& K) {
  GroupAlgebraElement acc(K);
  int terms = rng.range(1, 4);
  for (int i = 0; i < terms; ++i) {
    LampGroupElement g;
    int lamps = rng.range(0, 2);
    for (int l = 0; l < lamps; ++l) {
      int pos = rng.range(-2, 2);
      auto it = std::lower_bound(g.lamps.begin(), g.lamps.end(), pos);
      if (it == g.lamps.end() || *it != pos) g.lamps.insert(it, pos);
    }
    g.shift = rng.range(-2, 2);
    acc.add_term(g, rng.element(K));
  }
  return acc;
}

SpecialSeries random_special(Rng& rng, const ComponentSetPtr& cs, const FieldContextPtr& K) {
  SpecialSeries s(cs, K);
  for (std::size_t i = 0; i < cs->size(); ++i) s.coefficient(i) = rng.element(K);
  return s;
}

CriterionResult criterion_properties(const VerifyOptions& opts) {
  auto t0 = Clock::now();
  Checker c;
  int N = opts.quick ? 60 : 500;
  FieldContextPtr Q = FieldContext::rationals();

  // matrix-unit relations
  {
    Rng rng(opts.seed ^ 0x11);
    SchemePtr s0 = lamplighter_scheme(0);
    ComponentSetPtr cs = enumerate_components(s0, 5);
    for (int it = 0; it < N; ++it) {
      std::size_t w = static_cast<std::size_t>(rng.range(0, static_cast<int>(cs->size()) - 1));
      int len = cs->components()[w].length;
      unsigned i = static_cast<unsigned>(rng.range(0, len - 1));
      unsigned j = static_cast<unsigned>(rng.range(0, len - 1));
      unsigned t = static_cast<unsigned>(rng.range(0, len - 1));
      unsigned s = static_cast<unsigned>(rng.range(0, len - 1));
      CrossedElement lhs = matrix_unit(*cs, w, i, j, Q) * matrix_unit(*cs, w, t, s, Q);
      CrossedElement rhs = j == t ? matrix_unit(*cs, w, i, s, Q)
                                  : CrossedElement::zero(s0->space(), Q);
      c.require(lhs == rhs, "matrix unit relation");
      if (!c.ok) break;
    }
    // h_W idempotent and commuting with generator words on blocks
    ComponentSetPtr big = enumerate_components(s0, 6);
    for (int it = 0; it < std::min(N, 100) && c.ok; ++it) {
      std::size_t w = static_cast<std::size_t>(rng.range(0, 3));
      int len = cs->components()[w].length;
      CrossedElement h = CrossedElement::zero(s0->space(), Q);
      for (int i = 0; i < len; ++i)
        h = h + matrix_unit(*cs, w, static_cast<unsigned>(i), static_cast<unsigned>(i), Q);
      c.require(h * h == h, "h_W idempotent");
      CrossedElement a = random_algebra_element(rng, s0, Q);
      BlockElement lhs = represent(h * a, big);
      BlockElement rhs = represent(a * h, big);
      c.require(lhs == rhs, "h_W central on blocks");
    }
  }

  // block representation is a *-homomorphism; refinement diagram commutes
  {
    Rng rng(opts.seed ^ 0x22);
    for (int it = 0; it < N / 4 && c.ok; ++it) {
      SchemePtr sch = random_level(rng);
      ComponentSetPtr cs = enumerate_components(sch, sch->level() == 0 ? 7 : 9);
      CrossedElement a = random_algebra_element(rng, sch, Q);
      CrossedElement b = random_algebra_element(rng, sch, Q);
      c.require(represent(a * b, cs) == represent(a, cs) * represent(b, cs),
                "blocks multiply");
      c.require(represent(a.star(), cs) == represent(a, cs).star(), "blocks respect star");
    }
    for (int it = 0; it < N / 8 && c.ok; ++it) {
      SchemePtr coarse = lamplighter_scheme(0);
      SchemePtr fine = lamplighter_scheme(1);
      int L = 8;
      ComponentSetPtr ccs = enumerate_components(coarse, L);
      ComponentSetPtr fcs = enumerate_components(fine, L);
      CrossedElement a = random_algebra_element(rng, coarse, Q);
      BlockElement via_refine = refine_embedding(ccs, fcs, represent(a, ccs));
      c.require(via_refine == represent(a, fcs), "refinement diagram commutes");
    }
  }

  // transform round trips and respects the *-algebra structure
  {
    Rng rng(opts.seed ^ 0x33);
    for (int it = 0; it < N && c.ok; ++it) {
      GroupAlgebraElement x = random_group_element(rng, Q);
      GroupAlgebraElement y = random_group_element(rng, Q);
      c.require(fourier(x * y) == fourier(x) * fourier(y), "transform multiplicative");
      c.require(fourier(x.star()) == fourier(x).star(), "transform respects star");
      c.require(inverse_fourier(fourier(x)) == x, "round trip group -> functions -> group");
      CrossedElement z = fourier(y);
      c.require(fourier(inverse_fourier(z)) == z, "round trip functions -> group -> functions");
    }
    GroupAlgebraElement one = GroupAlgebraElement::one(Q);
    for (int i = -2; i <= 2 && c.ok; ++i) {
      GroupAlgebraElement ai =
          GroupAlgebraElement::group_element(Q, LampGroupElement::lamp(i));
      c.require(fourier(ai) * fourier(ai) == fourier(one), "lamp squares to one");
    }
  }

  // truncated rank obeys the rank axioms on block products
  {
    Rng rng(opts.seed ^ 0x44);
    SchemePtr sch = lamplighter_scheme(0);
    ComponentSetPtr cs = enumerate_components(sch, 5);
    auto truncated_rank = [&](const BlockElement& x) {
      Rat r(0);
      for (std::size_t i = 0; i < x.count(); ++i)
        r += cs->components()[i].measure * Rat(matrix_rank(x.block(i)));
      r.canonicalize();
      return r;
    };
    auto random_blocks = [&](unsigned k) {
      BlockElement x(cs, k, Q);
      for (std::size_t i = 0; i < x.count(); ++i)
        for (unsigned r = 0; r < x.block(i).rows(); ++r)
          for (unsigned cc = 0; cc < x.block(i).cols(); ++cc)
            x.block(i).at(r, cc) = rng.range(0, 2) == 0 ? Q->zero() : rng.element(Q);
      return x;
    };
    for (int it = 0; it < N / 4 && c.ok; ++it) {
      BlockElement m1 = random_blocks(1), m2 = random_blocks(1);
      Rat r12 = truncated_rank(m1 * m2);
      c.require(r12 <= truncated_rank(m1) && r12 <= truncated_rank(m2),
                "product rank bounded by factors");
      // diagonal additivity and the triangular inequality on 2x2 assemblies
      BlockElement diag(cs, 2, Q), tri(cs, 2, Q);
      BlockElement m3 = random_blocks(1);
      for (std::size_t i = 0; i < cs->size(); ++i) {
        unsigned len = static_cast<unsigned>(cs->components()[i].length);
        for (unsigned r = 0; r < len; ++r)
          for (unsigned cc = 0; cc < len; ++cc) {
            diag.block(i).at(r, cc) = m1.block(i).at(r, cc);
            diag.block(i).at(len + r, len + cc) = m2.block(i).at(r, cc);
            tri.block(i).at(r, cc) = m1.block(i).at(r, cc);
            tri.block(i).at(len + r, len + cc) = m2.block(i).at(r, cc);
            tri.block(i).at(r, len + cc) = m3.block(i).at(r, cc);
          }
      }
      c.require(truncated_rank(diag) == truncated_rank(m1) + truncated_rank(m2),
                "diagonal additivity");
      c.require(truncated_rank(tri) >= truncated_rank(m1) + truncated_rank(m2),
                "triangular inequality");
    }
    // normalization is recovered only in the limit
    Rat prev(0);
    bool growing = true;
    for (int L = 2; L <= 14; L += 4) {
      Rat covered = enumerate_components(sch, L)->covered_mass();
      if (covered < prev) growing = false;
      prev = covered;
    }
    c.require(growing && prev < 1 && Rat(1) - prev < Rat(1, 100),
              "covered mass grows toward one");
  }

  // inversion round trip in the skew series ring
  {
    Rng rng(opts.seed ^ 0x55);
    for (int it = 0; it < N / 4 && c.ok; ++it) {
      SchemePtr sch = random_level(rng);
      int order = rng.range(4, 7);
      FieldContextPtr K = Q;
      // nowhere-zero degree-zero coefficient on the scheme window
      int n = sch->level();
      LocallyConstantFn b0 = LocallyConstantFn::zero(sch->space(), K);
      int width = 2 * n + 1;
      for (std::uint64_t w = 0; w < (std::uint64_t(1) << width); ++w)
        b0 = b0 + LocallyConstantFn::indicator(Clopen::cylinder(sch->space(), -n, n, w), K)
                      .scaled(rng.nonzero_element(K));
      SkewSeries x = SkewSeries::monomial(sch, b0, 0, order);
      SkewSeries s = SkewSeries::generator(sch, K, order);
      int extra = rng.range(1, 3);
      for (int e = 0; e < extra; ++e) {
        int d = rng.range(1, order);
        x = x + s.pow(static_cast<unsigned>(d)).scaled(rng.element(K));
      }
      SkewSeries inv = x.inverse();
      SkewSeries onee = SkewSeries::one(sch, K, order);
      c.require(x * inv == onee && inv * x == onee, "series inverse round trip");
    }
  }

  // corner projection: idempotent, unit image, annihilation of complement forms
  {
    Rng rng(opts.seed ^ 0x66);
    for (int it = 0; it < N / 10 && c.ok; ++it) {
      SchemePtr sch = random_level(rng);
      int L = sch->level() == 0 ? 6 : 8;
      ComponentSetPtr cs = enumerate_components(sch, L);
      int order = L - 1;
      SkewSeries u = (SkewSeries::one(sch, Q, order) -
                      SkewSeries::generator(sch, Q, order))
                         .inverse();
      SpecialSeries pu = project_special(u, cs);
      c.require(pu == SpecialSeries::unit(cs, Q), "projection of the geometric inverse is the unit");
      SkewSeries x = SkewSeries::zero(sch, Q, order);
      for (int d = 0; d <= order; ++d) {
        CrossedElement g = random_algebra_element(rng, sch, Q);
        auto f = g.coefficient(0);
        // force membership in the degree-d ideal by cutting the support
        Clopen avoid = Clopen::full_space(sch->space());
        for (int l = 0; l < d; ++l)
          avoid = avoid.difference(sch->forward_image(sch->base(), l));
        LocallyConstantFn fd = f * LocallyConstantFn::indicator(avoid, Q);
        if (!fd.is_zero()) x = x + SkewSeries::monomial(sch, fd, d, order);
      }
      SpecialSeries p = project_special(x, cs);
      SpecialSeries pp = project_special(p.to_series(order), cs);
      c.require(pp == p, "projection idempotent");
      // complement forms: chi_C t^i with s > i (an extra backward constraint)
      int n = sch->level();
      for (int i = 1; i <= 2 && c.ok; ++i) {
        int z = rng.range(0, static_cast<int>(sch->parts().size()) - 1);
        Clopen C = sch->forward_image(sch->parts()[static_cast<std::size_t>(z)], i);  // s = i+1 > i
        Clopen inside = C;
        for (int l = 0; l < i; ++l) inside = inside.difference(sch->forward_image(sch->base(), l));
        if (inside.is_empty()) continue;
        SkewSeries v = SkewSeries::monomial(sch, LocallyConstantFn::indicator(inside, Q), i,
                                            order);
        SpecialSeries pv = project_special(v, cs);
        bool zero = true;
        for (std::size_t ci = 0; ci < cs->size(); ++ci)
          if (!pv.coefficient(ci).is_zero()) zero = false;
        c.require(zero, "projection kills complement forms (n=" + std::to_string(n) + ")");
      }
    }
  }

  // the two corner formulas, componentwise
  {
    Rng rng(opts.seed ^ 0x77);
    for (int it = 0; it < N / 10 && c.ok; ++it) {
      SchemePtr sch = random_level(rng);
      int L = sch->level() == 0 ? 6 : 8;
      ComponentSetPtr cs = enumerate_components(sch, L);
      int order = L - 1;
      SpecialSeries A = random_special(rng, cs, Q);
      SpecialSeries B = random_special(rng, cs, Q);
      BlockElement pE(cs, 1, Q), pTE(cs, 1, Q);
      for (std::size_t i = 0; i < cs->size(); ++i) {
        unsigned len = static_cast<unsigned>(cs->components()[i].length);
        pE.block(i).at(0, 0) = Q->one();
        pTE.block(i).at(len - 1, len - 1) = Q->one();
      }
      BlockElement piA = A.to_series(order).project_blocks(cs);
      BlockElement piB = B.to_series(order).project_blocks(cs);
      BlockElement lhs1 = pE * piA.star() * pTE * piB * pE;
      BlockElement rhs1 = A.conj().hadamard(B).to_central_blocks() * pE;
      c.require(lhs1 == rhs1, "first corner formula");
      BlockElement lhs2 = pTE * piA * pE * piB.star() * pTE;
      BlockElement rhs2 = A.hadamard(B.conj()).to_central_blocks() * pTE;
      c.require(lhs2 == rhs2, "second corner formula");
    }
  }

  // special-term detection
  {
    Rng rng(opts.seed ^ 0x88);
    for (unsigned n = 0; n <= 1 && c.ok; ++n) {
      SchemePtr sch = lamplighter_scheme(n);
      int L = n == 0 ? 6 : 8;
      ComponentSetPtr cs = enumerate_components(sch, L);
      for (int i = 1; i < L && c.ok; ++i) {
        for (const Clopen& S : special_sets(sch, i)) {
          CrossedElement el =
              CrossedElement::monomial(LocallyConstantFn::indicator(S, Q), i);
          BlockElement blocks = represent(el, cs);
          Clopen W = sch->base()
                         .intersect(sch->forward_image(S, -i))
                         .intersect(sch->forward_image(sch->base(), -i - 1));
          for (std::size_t ci = 0; ci < cs->size(); ++ci) {
            unsigned len = static_cast<unsigned>(cs->components()[ci].length);
            const ExactMatrix& blk = blocks.block(ci);
            if (cs->components()[ci].set == W) {
              ExactMatrix unit(len, len, Q);
              unit.at(static_cast<unsigned>(i), 0) = Q->one();
              c.require(blk == unit, "detected block is the corner unit");
            } else {
              c.require(blk.at(len - 1, 0).is_zero(), "foreign bottom-left entries vanish");
            }
          }
        }
      }
    }
    (void)rng;
  }

  // unique factorization into pure terms
  {
    Rng rng(opts.seed ^ 0x99);
    SchemePtr sch = lamplighter_scheme(1);
    int maxdeg = 10;
    auto pures = pure_terms_up_to(sch, maxdeg);
    // support of the product (chi_S1 t^d1)(chi_S2 t^d2)
    std::function<Clopen(const Clopen&, int, const Clopen&, int)> splice =
        [&](const Clopen& S1, int d1, const Clopen& S2, int d2) {
          (void)d2;
          return S1.intersect(sch->forward_image(S2, d1));
        };
    for (int it = 0; it < N && c.ok; ++it) {
      // random special support of moderate degree
      std::vector<Clopen> pool = special_sets(sch, rng.range(3, 8));
      if (pool.empty()) continue;
      const Clopen& S = pool[static_cast<std::size_t>(rng.range(0, static_cast<int>(pool.size()) - 1))];
      auto factors = factor_pure(S, sch);
      Clopen back = factors.front().support;
      int deg = factors.front().degree;
      for (std::size_t i = 1; i < factors.size(); ++i) {
        back = splice(back, deg, factors[i].support, factors[i].degree);
        deg += factors[i].degree;
      }
      c.require(back == S, "factorization multiplies back");
      for (const auto& f : factors) {
        auto again = factor_pure(f.support, sch);
        c.require(again.size() == 1 && again.front().support == f.support,
                  "factors are pure");
      }
    }
    // exhaustive uniqueness at small degree
    for (int deg = 3; deg <= 8 && c.ok; ++deg) {
      for (const Clopen& S : special_sets(sch, deg)) {
        long found = 0;
        struct Search {
          const std::vector<PureTerm>& pures;
          const Clopen& target;
          int target_deg;
          long* found;
          const std::function<Clopen(const Clopen&, int, const Clopen&, int)>& splice_fn;
          void go(const Clopen& acc, int deg_acc) {
            if (deg_acc == target_deg) {
              if (acc == target) ++*found;
              return;
            }
            for (const auto& p : pures) {
              if (deg_acc + p.degree > target_deg) continue;
              Clopen next = deg_acc == 0 ? p.support : splice_fn(acc, deg_acc, p.support, p.degree);
              if (next.is_empty()) continue;
              go(next, deg_acc + p.degree);
            }
          }
        } search{pures, S, deg, &found, splice};
        search.go(Clopen::empty_set(sch->space()), 0);
        c.require(found == 1, "exactly one pure factorization at degree " + std::to_string(deg));
      }
    }
  }

  // coefficientwise relative inverses
  {
    Rng rng(opts.seed ^ 0xaa);
    SchemePtr sch = lamplighter_scheme(1);
    ComponentSetPtr cs = enumerate_components(sch, 8);
    for (int it = 0; it < N && c.ok; ++it) {
      SpecialSeries q = random_special(rng, cs, Q);
      SpecialSeries qi = q.relative_inverse();
      c.require(q.hadamard(qi).hadamard(q) == q, "relative inverse identity");
      c.require(q.hadamard(SpecialSeries::unit(cs, Q)) == q, "the all-ones series is the unit");
    }
  }

  // orbit quotient is multiplicative and kills off-orbit sets
  {
    Rng rng(opts.seed ^ 0xbb);
    SpaceSpec spec{2, Geometry::TwoSidedShift};
    std::vector<std::string> words = {"1", "0", "01", "011", "0010"};
    for (int it = 0; it < N / 2 && c.ok; ++it) {
      PeriodicPoint y(spec, words[static_cast<std::size_t>(rng.range(0, 4))]);
      SchemePtr sch = lamplighter_scheme(1);
      CrossedElement a = random_algebra_element(rng, sch, Q);
      CrossedElement b = random_algebra_element(rng, sch, Q);
      c.require(quotient_at_orbit(a * b, y) == quotient_at_orbit(a, y) * quotient_at_orbit(b, y),
                "quotient multiplicative");
      // random cylinder: vanishing on the orbit forces a zero image
      int lo = rng.range(-2, 0), hi = lo + rng.range(0, 2);
      std::uint64_t w = static_cast<std::uint64_t>(rng.range(0, (1 << (hi - lo + 1)) - 1));
      Clopen U = Clopen::cylinder(spec, lo, hi, w);
      bool on_orbit = false;
      for (unsigned j = 0; j < y.period(); ++j)
        if (eval_at(U, y, static_cast<long>(j))) on_orbit = true;
      CrossedElement chi = CrossedElement::monomial(LocallyConstantFn::indicator(U, Q), 0);
      LaurentMatrix img = quotient_at_orbit(chi, y);
      if (!on_orbit) c.require(img.is_zero(), "off-orbit indicator maps to zero");
    }
  }

  // the corner nilpotency pattern
  {
    Rng rng(opts.seed ^ 0xcc);
    int cases = opts.quick ? 50 : 200;
    for (int it = 0; it < cases && c.ok; ++it) {
      unsigned n = static_cast<unsigned>(rng.range(3, 11));
      unsigned r = static_cast<unsigned>(rng.range(1, static_cast<int>(n) - 1));
      ExactMatrix A(n, n, Q);
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < i; ++j) {
          if (i + 1 <= n - r && j + 1 >= r + 1) continue;
          if (rng.range(0, 1)) A.at(i, j) = rng.element(Q);
        }
      c.require(nilpotency_check(A, r), "pattern matrices vanish at the predicted power");
    }
  }

  c.note("property suites completed (" + std::to_string(c.count) + " assertions)");
  return finish(8, "exact property suites", c, t0);
}

// ---------- criterion 9: oracle equivalence ----------

// Independent rank oracle: plain Gauss-Jordan with field division.
unsigned naive_rank(ExactMatrix M) {
  unsigned rank = 0;
  for (unsigned col = 0; col < M.cols() && rank < M.rows(); ++col) {
    unsigned pivot = M.rows();
    for (unsigned i = rank; i < M.rows(); ++i)
      if (!M.at(i, col).is_zero()) {
        pivot = i;
        break;
      }
    if (pivot == M.rows()) continue;
    for (unsigned j = 0; j < M.cols(); ++j) std::swap(M.at(pivot, j), M.at(rank, j));
    FieldElement inv = M.at(rank, col).inverse();
    for (unsigned j = 0; j < M.cols(); ++j) M.at(rank, j) = M.at(rank, j) * inv;
    for (unsigned i = 0; i < M.rows(); ++i) {
      if (i == rank || M.at(i, col).is_zero()) continue;
      FieldElement f = M.at(i, col);
      for (unsigned j = 0; j < M.cols(); ++j)
        M.at(i, j) = M.at(i, j) - f * M.at(rank, j);
    }
    ++rank;
  }
  return rank;
}

long strings_with_bounded_runs(unsigned length, unsigned max_run) {
  long count = 0;
  for (std::uint64_t w = 0; w < (std::uint64_t(1) << length); ++w) {
    unsigned run = 0, best = 0;
    for (unsigned i = 0; i < length; ++i) {
      run = (w >> i) & 1 ? run + 1 : 0;
      best = std::max(best, run);
    }
    if (best <= max_run) ++count;
  }
  return count;
}

CriterionResult criterion_oracles(const VerifyOptions& opts) {
  auto t0 = Clock::now();
  Checker c;
  int N = opts.quick ? 60 : 500;
  std::vector<FieldContextPtr> fields = {
      FieldContext::rationals(), FieldContext::cyclotomic(4), FieldContext::prime_field(7),
      FieldContext::frobenius_field(3, 1)};
  Rng rng(opts.seed ^ 0xdd);
  long mismatches = 0;
  for (const auto& K : fields) {
    // entries range over the full field, not just the prime subfield
    FieldElement unit = K->one();
    if (K->kind() == FieldKind::Cyclotomic) unit = K->primitive_root_of_unity(4);
    if (K->kind() == FieldKind::FrobeniusField) unit = K->primitive_root_of_unity(8);
    for (int it = 0; it < N; ++it) {
      unsigned rows = static_cast<unsigned>(rng.range(1, 12));
      unsigned cols = static_cast<unsigned>(rng.range(1, 12));
      ExactMatrix M(rows, cols, K);
      for (unsigned i = 0; i < rows; ++i)
        for (unsigned j = 0; j < cols; ++j)
          if (rng.range(0, 2))
            M.at(i, j) = rng.element(K) + unit.pow(rng.range(0, 7)) * K->from_int(rng.range(-2, 2));
      if (matrix_rank(M) != naive_rank(M)) ++mismatches;
    }
  }
  c.require(mismatches == 0, "fraction-free rank equals plain elimination on all samples");
  for (unsigned m = 1; m <= 5; ++m)
    for (unsigned k = 2; k <= 14; ++k)
      c.require(macci(m, k) == Int(strings_with_bounded_runs(k - 2, m - 1)),
                "m-step count equals the bounded-run census at m=" + std::to_string(m) +
                    ", k=" + std::to_string(k));
  c.note(std::to_string(4 * N) + " rank samples, zero mismatches");
  return finish(9, "rank and counting oracles agree", c, t0);
}

}  // namespace

std::vector<CriterionResult> run_verification(const VerifyOptions& opts) {
  std::vector<CriterionResult> out;
  out.push_back(criterion_headline(opts));
  out.push_back(criterion_cross_level(opts));
  out.push_back(criterion_census(opts));
  out.push_back(criterion_quasi_partition(opts));
  out.push_back(criterion_summation(opts));
  out.push_back(criterion_odometer(opts));
  out.push_back(criterion_invertibility(opts));
  out.push_back(criterion_properties(opts));
  out.push_back(criterion_oracles(opts));
  return out;
}

}  // namespace lamprank
