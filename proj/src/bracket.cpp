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

#include "lamprank/bracket.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "lamprank/blocks_internal.hpp"
#include "lamprank/group_algebra.hpp"

namespace lamprank {

namespace {

unsigned resolve_threads(unsigned threads) {
  if (threads != 0) return threads;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Deterministic data-parallel fold: workers grab component indices from a
// shared counter, per-component contributions land in a slot array, and the
// final sum runs in component order on one thread.
std::vector<Rat> ranks_weighted(const CrossedMatrix& a, const ComponentSetPtr& cs,
                                unsigned threads) {
  const PartitionScheme& scheme = *cs->scheme();
  std::size_t count = cs->size();
  std::vector<Rat> slot(count, Rat(0));
  std::atomic<std::size_t> cursor{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    try {
      for (;;) {
        std::size_t idx = cursor.fetch_add(1);
        if (idx >= count || failed.load()) break;
        const WComponent& comp = cs->components()[idx];
        slot[idx] = comp.measure * Rat(component_rank(a, scheme, comp));
      }
    } catch (const Error& e) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      failed.store(true);
      if (failure.empty()) failure = e.what();
    }
  };
  unsigned nt = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(count, 1));
  if (nt <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failed.load()) fail(Err::NotRepresentableAtLevel, failure);
  return slot;
}

}  // namespace

RankBracket sylvester_bracket(const CrossedMatrix& a, const ComponentSetPtr& cs,
                              unsigned threads) {
  auto t0 = std::chrono::steady_clock::now();
  const PartitionScheme& scheme = *cs->scheme();
  // Certify monomials up front: exact ones cost nothing, the rest are rewritten
  // through the shift generator at |d| mu(E) rank error each.
  Rat err(0);
  Rat muE = scheme.base_measure();
  for (unsigned r = 0; r < a.size(); ++r)
    for (unsigned c = 0; c < a.size(); ++c)
      for (const auto& [d, fd] : a.at(r, c).coefficients()) {
        MonomialCertificate cert = certify_monomial(fd, d, scheme);
        if (cert.exact) continue;
        if (!cert.substitutable)
          fail(Err::NotRepresentableAtLevel,
               "coefficient at degree " + std::to_string(d) + " is outside the level-" +
                   std::to_string(scheme.level()) + " subalgebra; raise the level");
        err += Rat(std::abs(d)) * muE;
      }
  err.canonicalize();

  std::vector<Rat> slots = ranks_weighted(a, cs, threads);
  Rat partial(0);
  for (const Rat& s : slots) partial += s;  // fixed component order
  partial.canonicalize();

  RankBracket b;
  b.ambient = a.size();
  b.level = scheme.level();
  b.cutoff = cs->cutoff();
  b.covered_mass = cs->covered_mass();
  b.tail_mass = cs->tail_mass();
  b.substitution_error = err;
  b.component_count = cs->size();
  b.lower = partial - err;
  b.upper = partial + Rat(a.size()) * cs->tail_mass() + err;
  if (b.lower < 0) b.lower = Rat(0);
  Rat k_rat(a.size());
  if (b.upper > k_rat) b.upper = k_rat;
  b.lower.canonicalize();
  b.upper.canonicalize();
  auto t1 = std::chrono::steady_clock::now();
  b.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  return b;
}

RankBracket sylvester_bracket(const CrossedElement& a, const ComponentSetPtr& cs,
                              unsigned threads) {
  return sylvester_bracket(CrossedMatrix::scalar(a), cs, threads);
}

namespace {

CrossedMatrix transform_matrix(const std::vector<std::vector<GroupAlgebraElement>>& A) {
  if (A.empty() || A.size() != A[0].size())
    fail(Err::ConfigError, "expected a nonempty square matrix of expressions");
  unsigned k = static_cast<unsigned>(A.size());
  FieldContextPtr K;
  for (const auto& row : A)
    for (const auto& e : row)
      if (e.field()) K = e.field();
  if (!K) fail(Err::ConfigError, "matrix without a field context");
  SpaceSpec spec{2, Geometry::TwoSidedShift};
  CrossedMatrix M(k, spec, K);
  for (unsigned i = 0; i < k; ++i) {
    if (A[i].size() != k) fail(Err::ConfigError, "ragged matrix of expressions");
    for (unsigned j = 0; j < k; ++j)
      if (!A[i][j].is_zero()) M.at(i, j) = fourier(A[i][j]);
  }
  return M;
}

RankBracket complement_bracket(RankBracket b) {
  Rat k_rat(b.ambient);
  Rat new_lower = k_rat - b.upper;
  Rat new_upper = k_rat - b.lower;
  b.lower = new_lower;
  b.upper = new_upper;
  b.lower.canonicalize();
  b.upper.canonicalize();
  return b;
}

}  // namespace

RankBracket betti_bracket(const std::vector<std::vector<GroupAlgebraElement>>& A,
                          const SchemePtr& scheme, int cutoff, unsigned threads) {
  CrossedMatrix M = transform_matrix(A);
  ComponentSetPtr cs = enumerate_components(scheme, cutoff);
  return complement_bracket(sylvester_bracket(M, cs, threads));
}

namespace {

SchemePtr next_level_scheme(const SchemePtr& scheme) {
  int level = scheme->level();
  if (scheme->kind() == SchemeKind::Lamplighter)
    return lamplighter_scheme(static_cast<unsigned>(level + 1), scheme->convention());
  if (scheme->kind() == SchemeKind::Odometer)
    return odometer_scheme(static_cast<unsigned>(level + 1));
  fail(Err::BudgetExceeded, "custom schemes cannot be refined automatically");
}

constexpr std::size_t kConvergeComponentBudget = std::size_t(4) << 20;

}  // namespace

// The width budget splits as k*tail + 2*substitution_error. Only a finer level
// shrinks the rewrite error, only a larger cutoff shrinks the tail, so the
// level rises first whenever the rewrite error alone already blocks the
// target, and the cutoff grows otherwise.
ConvergeResult converge(const CrossedMatrix& a, const Rat& target_width, int max_level,
                        int max_cutoff, const SchemePtr& initial_scheme, unsigned threads,
                        int start_cutoff) {
  if (target_width <= 0) fail(Err::ConfigError, "target width must be positive");
  SchemePtr scheme = initial_scheme;
  int cutoff = std::max(1, std::min(start_cutoff, max_cutoff));
  if (scheme->kind() == SchemeKind::Odometer)
    cutoff = std::min(max_cutoff, std::max(cutoff, 1 << scheme->level()));
  RankBracket best;
  bool have_best = false;
  std::string note;
  for (;;) {
    bool capped = cutoff >= max_cutoff;
    bool not_representable = false;
    bool have_bracket = false;
    RankBracket b;
    try {
      ComponentSetPtr cs =
          enumerate_components(scheme, cutoff, false, kConvergeComponentBudget);
      b = sylvester_bracket(a, cs, threads);
      have_bracket = true;
    } catch (const Error& e) {
      if (e.code() == Err::NotRepresentableAtLevel) {
        not_representable = true;
        note = e.what();
      } else if (e.code() == Err::CutoffTooLargeForMemory) {
        capped = true;
        note = e.what();
      } else {
        throw;
      }
    }
    if (have_bracket) {
      if (!have_best || b.width() <= best.width()) {
        best = b;
        have_best = true;
      }
      if (b.width() <= target_width) return {b, false, ""};
    }
    bool level_blocks =
        not_representable ||
        (have_bracket && Rat(2) * b.substitution_error >= target_width);
    if (level_blocks) {
      if (scheme->level() >= max_level) {
        if (!have_best) fail(Err::BudgetExceeded, "level budget exhausted: " + note);
        return {best, true, "level budget exhausted"};
      }
      scheme = next_level_scheme(scheme);
      if (scheme->kind() == SchemeKind::Odometer)
        cutoff = std::min(max_cutoff, std::max(cutoff, 1 << scheme->level()));
      continue;
    }
    if (capped) {
      if (!have_best) fail(Err::BudgetExceeded, "cutoff budget exhausted: " + note);
      return {best, true, "cutoff budget exhausted"};
    }
    cutoff = std::min(max_cutoff, cutoff + std::max(4, cutoff / 2));
  }
}

ConvergeResult converge_group(const std::vector<std::vector<GroupAlgebraElement>>& A,
                              const Rat& target_width, int start_level, int max_level,
                              int start_cutoff, int max_cutoff, LampConvention convention,
                              unsigned threads, bool betti) {
  CrossedMatrix M = transform_matrix(A);
  SchemePtr scheme = lamplighter_scheme(static_cast<unsigned>(std::max(0, start_level)),
                                        convention);
  ConvergeResult r = converge(M, target_width, max_level, max_cutoff, scheme, threads,
                              std::min(start_cutoff, 8));
  if (betti) r.bracket = complement_bracket(r.bracket);
  return r;
}

}  // namespace lamprank
