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

#include "lamprank/automaton.hpp"

namespace lamprank {

WeightedAutomaton::WeightedAutomaton(unsigned dim, unsigned letters, const FieldContextPtr& K)
    : dim_(dim), letters_(letters), field_(K), entry_(1, dim, K), exit_(dim, 1, K) {
  if (dim == 0) fail(Err::ConfigError, "automaton dimension must be positive");
  trans_.assign(letters, ExactMatrix(dim, dim, K));
}

WeightedAutomaton WeightedAutomaton::constant(const FieldElement& c, unsigned letters) {
  WeightedAutomaton r(1, letters, c.context());
  r.entry_.at(0, 0) = c;
  r.exit_.at(0, 0) = c.context()->one();
  return r;
}

WeightedAutomaton WeightedAutomaton::letter(unsigned index, unsigned letters,
                                            const FieldContextPtr& K) {
  if (index >= letters) fail(Err::IndexOutOfRange, "letter index out of range");
  WeightedAutomaton r(2, letters, K);
  r.entry_.at(0, 0) = K->one();
  r.trans_[index].at(0, 1) = K->one();
  r.exit_.at(1, 0) = K->one();
  return r;
}

FieldElement WeightedAutomaton::coefficient(const std::vector<unsigned>& word) const {
  ExactMatrix v = entry_;
  for (unsigned a : word) {
    if (a >= letters_) fail(Err::IndexOutOfRange, "letter index out of range");
    v = v * trans_[a];
  }
  return (v * exit_).at(0, 0);
}

WeightedAutomaton WeightedAutomaton::operator+(const WeightedAutomaton& o) const {
  if (letters_ != o.letters_) fail(Err::ConfigError, "automata over different alphabets");
  WeightedAutomaton r(dim_ + o.dim_, letters_, field_);
  for (unsigned j = 0; j < dim_; ++j) r.entry_.at(0, j) = entry_.at(0, j);
  for (unsigned j = 0; j < o.dim_; ++j) r.entry_.at(0, dim_ + j) = o.entry_.at(0, j);
  for (unsigned i = 0; i < dim_; ++i) r.exit_.at(i, 0) = exit_.at(i, 0);
  for (unsigned i = 0; i < o.dim_; ++i) r.exit_.at(dim_ + i, 0) = o.exit_.at(i, 0);
  for (unsigned a = 0; a < letters_; ++a) {
    for (unsigned i = 0; i < dim_; ++i)
      for (unsigned j = 0; j < dim_; ++j) r.trans_[a].at(i, j) = trans_[a].at(i, j);
    for (unsigned i = 0; i < o.dim_; ++i)
      for (unsigned j = 0; j < o.dim_; ++j)
        r.trans_[a].at(dim_ + i, dim_ + j) = o.trans_[a].at(i, j);
  }
  return r;
}

// Product representation: a block-triangular system that hands control from the
// left factor to the right one after any prefix.
WeightedAutomaton WeightedAutomaton::cauchy(const WeightedAutomaton& o) const {
  if (letters_ != o.letters_) fail(Err::ConfigError, "automata over different alphabets");
  WeightedAutomaton r(dim_ + o.dim_, letters_, field_);
  FieldElement my_eps = (entry_ * exit_).at(0, 0);
  for (unsigned j = 0; j < dim_; ++j) r.entry_.at(0, j) = entry_.at(0, j);
  for (unsigned j = 0; j < o.dim_; ++j) r.entry_.at(0, dim_ + j) = my_eps * o.entry_.at(0, j);
  for (unsigned i = 0; i < o.dim_; ++i) r.exit_.at(dim_ + i, 0) = o.exit_.at(i, 0);
  for (unsigned a = 0; a < letters_; ++a) {
    for (unsigned i = 0; i < dim_; ++i)
      for (unsigned j = 0; j < dim_; ++j) r.trans_[a].at(i, j) = trans_[a].at(i, j);
    for (unsigned i = 0; i < o.dim_; ++i)
      for (unsigned j = 0; j < o.dim_; ++j)
        r.trans_[a].at(dim_ + i, dim_ + j) = o.trans_[a].at(i, j);
    // jump: read a in the left factor, exit it, enter the right factor
    ExactMatrix jump = trans_[a] * exit_ * o.entry_;  // dim x o.dim
    for (unsigned i = 0; i < dim_; ++i)
      for (unsigned j = 0; j < o.dim_; ++j) r.trans_[a].at(i, dim_ + j) = jump.at(i, j);
  }
  return r;
}

WeightedAutomaton WeightedAutomaton::hadamard(const WeightedAutomaton& o) const {
  if (letters_ != o.letters_) fail(Err::ConfigError, "automata over different alphabets");
  WeightedAutomaton r(dim_ * o.dim_, letters_, field_);
  auto idx = [&](unsigned i, unsigned j) { return i * o.dim_ + j; };
  for (unsigned i = 0; i < dim_; ++i)
    for (unsigned j = 0; j < o.dim_; ++j) {
      r.entry_.at(0, idx(i, j)) = entry_.at(0, i) * o.entry_.at(0, j);
      r.exit_.at(idx(i, j), 0) = exit_.at(i, 0) * o.exit_.at(j, 0);
    }
  for (unsigned a = 0; a < letters_; ++a)
    for (unsigned i = 0; i < dim_; ++i)
      for (unsigned j = 0; j < o.dim_; ++j)
        for (unsigned k = 0; k < dim_; ++k)
          for (unsigned l = 0; l < o.dim_; ++l)
            r.trans_[a].at(idx(i, j), idx(k, l)) = trans_[a].at(i, k) * o.trans_[a].at(j, l);
  return r;
}

WeightedAutomaton WeightedAutomaton::star() const {
  FieldElement eps = (entry_ * exit_).at(0, 0);
  if (!eps.is_zero())
    fail(Err::NotProper, "star needs a proper series (zero coefficient at the empty word)");
  // proper part iterated: transitions mu(a) (I + exit*entry), then 1 + that
  WeightedAutomaton plus(dim_, letters_, field_);
  plus.entry_ = entry_;
  plus.exit_ = exit_;
  ExactMatrix bump = ExactMatrix::identity(dim_, field_) + exit_ * entry_;
  for (unsigned a = 0; a < letters_; ++a) plus.trans_[a] = trans_[a] * bump;
  return constant(field_->one(), letters_) + plus;
}

SpecialSeries automaton_to_special(const WeightedAutomaton& r,
                                   const std::vector<PureTerm>& letter_terms,
                                   const ComponentSetPtr& cs) {
  if (letter_terms.size() != r.letter_count())
    fail(Err::ConfigError, "need one pure term per letter");
  for (std::size_t i = 0; i < letter_terms.size(); ++i)
    for (std::size_t j = i + 1; j < letter_terms.size(); ++j)
      if (letter_terms[i] == letter_terms[j])
        fail(Err::ConfigError, "the letter-to-pure-term map must be injective");
  const SchemePtr& scheme = cs->scheme();
  if (scheme->kind() != SchemeKind::Lamplighter || scheme->level() == 0)
    fail(Err::LevelZeroUnsupported, "pure-term images need a lamplighter scheme with level >= 1");
  int max_degree = cs->cutoff() - 1;
  for (const auto& t : letter_terms)
    if (t.degree <= 0) fail(Err::DegreeOverflow, "pure terms have positive degree");

  SpecialSeries out(cs, r.field());
  // include the empty word at the degree-0 unit term
  int order = max_degree;
  SkewSeries acc = SkewSeries::zero(scheme, r.field(), order);
  {
    FieldElement c = r.coefficient({});
    if (!c.is_zero()) {
      SpecialSeries u(cs, r.field());
      for (std::size_t i = 0; i < cs->size(); ++i)
        if (cs->components()[i].length == 1) u.coefficient(i) = c;
      acc = acc + u.to_series(order);
    }
  }
  // depth-first over words with total degree bounded by the cutoff
  struct Walker {
    const WeightedAutomaton& r;
    const std::vector<PureTerm>& terms;
    const SchemePtr& scheme;
    int order;
    SkewSeries* acc;
    std::vector<unsigned> word;
    void go(const SkewSeries& prefix, int degree) {
      for (unsigned a = 0; a < r.letter_count(); ++a) {
        int nd = degree + terms[a].degree;
        if (nd > order) continue;
        word.push_back(a);
        SkewSeries next =
            prefix * SkewSeries::monomial(scheme,
                                          LocallyConstantFn::indicator(terms[a].support,
                                                                       r.field()),
                                          terms[a].degree, order);
        FieldElement c = r.coefficient(word);
        if (!c.is_zero()) *acc = *acc + next.scaled(c);
        go(next, nd);
        word.pop_back();
      }
    }
  } walker{r, letter_terms, scheme, order, &acc, {}};
  walker.go(SkewSeries::one(scheme, r.field(), order), 0);
  return project_special(acc, cs);
}

}  // namespace lamprank
