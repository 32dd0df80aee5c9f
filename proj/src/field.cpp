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

#include "lamprank/field.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace lamprank {

namespace {

// ---------- small number theory ----------

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n) {
  std::vector<std::uint64_t> fs;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      fs.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

std::vector<Int> prime_factors_mpz(Int n) {
  std::vector<Int> fs;
  for (Int p = 2; p * p <= n; p += 1) {
    if (n % p == 0) {
      fs.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

std::vector<unsigned> divisors_of(unsigned n) {
  std::vector<unsigned> ds;
  for (unsigned d = 1; d <= n; ++d)
    if (n % d == 0) ds.push_back(d);
  return ds;
}

// ---------- integer polynomial helpers (dense, index = power) ----------

using ZPoly = std::vector<Int>;

void ztrim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly c(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

// Exact division of integer polynomials (remainder known to be zero, monic divisor).
ZPoly zdiv_exact(ZPoly num, const ZPoly& den) {
  ztrim(num);
  ZPoly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Int(0));
  while (num.size() >= den.size() && !num.empty()) {
    Int c = num.back() / den.back();
    std::size_t shift = num.size() - den.size();
    q[shift] = c;
    for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
    ztrim(num);
  }
  return q;
}

// ---------- rational polynomial arithmetic mod a fixed monic modulus ----------

using QPoly = std::vector<Rat>;

void qtrim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly qreduce(QPoly a, const QPoly& mod) {
  qtrim(a);
  std::size_t d = mod.size() - 1;  // modulus degree, monic
  while (a.size() > d) {
    Rat c = a.back();
    std::size_t shift = a.size() - 1 - d;
    for (std::size_t i = 0; i < mod.size(); ++i) a[shift + i] -= c * mod[i];
    qtrim(a);
  }
  return a;
}

QPoly qmulmod(const QPoly& a, const QPoly& b, const QPoly& mod) {
  if (a.empty() || b.empty()) return {};
  QPoly c(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return qreduce(std::move(c), mod);
}

// Extended Euclid in Q[x]: returns (g, u) with u*a = g mod m, g = gcd(a, m) normalized monic.
std::pair<QPoly, QPoly> qhalf_ext_gcd(QPoly a, QPoly m) {
  QPoly r0 = std::move(m), r1 = std::move(a);
  QPoly u0 = {}, u1 = {Rat(1)};
  qtrim(r0);
  qtrim(r1);
  while (!r1.empty()) {
    // divide r0 by r1
    QPoly q;
    QPoly rem = r0;
    if (rem.size() >= r1.size()) q.assign(rem.size() - r1.size() + 1, Rat(0));
    while (rem.size() >= r1.size() && !rem.empty()) {
      Rat c = rem.back() / r1.back();
      std::size_t shift = rem.size() - r1.size();
      q[shift] = c;
      for (std::size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= c * r1[i];
      qtrim(rem);
    }
    // (r0, r1) = (r1, rem); (u0, u1) = (u1, u0 - q*u1)
    QPoly qu1;
    if (!q.empty() && !u1.empty()) {
      qu1.assign(q.size() + u1.size() - 1, Rat(0));
      for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < u1.size(); ++j) qu1[i + j] += q[i] * u1[j];
    }
    QPoly nu(std::max(u0.size(), qu1.size()), Rat(0));
    for (std::size_t i = 0; i < u0.size(); ++i) nu[i] += u0[i];
    for (std::size_t i = 0; i < qu1.size(); ++i) nu[i] -= qu1[i];
    qtrim(nu);
    r0 = std::move(r1);
    r1 = std::move(rem);
    u0 = std::move(u1);
    u1 = std::move(nu);
  }
  if (!r0.empty() && r0.back() != 1) {
    Rat lead = r0.back();
    for (auto& c : r0) c /= lead;
    for (auto& c : u0) c /= lead;
  }
  return {r0, u0};
}

// ---------- F_p[x] arithmetic ----------

using PPoly = std::vector<std::uint64_t>;

void ptrim(PPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PPoly pmul(const PPoly& a, const PPoly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  PPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!b[j]) continue;
      c[i + j] = (c[i + j] + mulmod_u64(a[i], b[j], p)) % p;
    }
  }
  return c;
}

PPoly pmod(PPoly a, const PPoly& m, std::uint64_t p) {
  ptrim(a);
  std::uint64_t lead_inv = powmod_u64(m.back(), p - 2, p);
  while (a.size() >= m.size() && !a.empty()) {
    std::uint64_t c = mulmod_u64(a.back(), lead_inv, p);
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
      std::uint64_t sub = mulmod_u64(c, m[i], p);
      a[shift + i] = (a[shift + i] + p - sub) % p;
    }
    ptrim(a);
  }
  return a;
}

PPoly pmulmod(const PPoly& a, const PPoly& b, const PPoly& m, std::uint64_t p) {
  return pmod(pmul(a, b, p), m, p);
}

PPoly ppowmod(PPoly base, Int e, const PPoly& m, std::uint64_t p) {
  PPoly r = {1};
  base = pmod(std::move(base), m, p);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = pmulmod(r, base, m, p);
    base = pmulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

PPoly pgcd(PPoly a, PPoly b, std::uint64_t p) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    PPoly r = pmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Extended Euclid in F_p[x]: u with u*a = 1 mod m (a invertible mod m).
PPoly pinvmod(const PPoly& a, const PPoly& m, std::uint64_t p) {
  PPoly r0 = m, r1 = pmod(a, m, p);
  PPoly u0 = {}, u1 = {1};
  while (!r1.empty()) {
    // divide r0 by r1
    PPoly rem = r0, q;
    std::uint64_t lead_inv = powmod_u64(r1.back(), p - 2, p);
    if (rem.size() >= r1.size()) q.assign(rem.size() - r1.size() + 1, 0);
    while (rem.size() >= r1.size() && !rem.empty()) {
      std::uint64_t c = mulmod_u64(rem.back(), lead_inv, p);
      std::size_t shift = rem.size() - r1.size();
      q[shift] = c;
      for (std::size_t i = 0; i < r1.size(); ++i) {
        std::uint64_t sub = mulmod_u64(c, r1[i], p);
        rem[shift + i] = (rem[shift + i] + p - sub) % p;
      }
      ptrim(rem);
    }
    PPoly qu1 = pmul(q, u1, p);
    PPoly nu(std::max(u0.size(), qu1.size()), 0);
    for (std::size_t i = 0; i < u0.size(); ++i) nu[i] = u0[i];
    for (std::size_t i = 0; i < qu1.size(); ++i) nu[i] = (nu[i] + p - qu1[i]) % p;
    ptrim(nu);
    r0 = std::move(r1);
    r1 = std::move(rem);
    u0 = std::move(u1);
    u1 = std::move(nu);
  }
  if (r0.size() != 1) fail(Err::DivisionByZero, "element not invertible in the extension field");
  std::uint64_t inv_lead = powmod_u64(r0[0], p - 2, p);
  for (auto& c : u0) c = mulmod_u64(c, inv_lead, p);
  ptrim(u0);
  return u0;
}

bool poly_is_irreducible(const PPoly& f, std::uint64_t p) {
  // f monic of degree d: irreducible iff x^(p^d) = x mod f and
  // gcd(x^(p^(d/q)) - x, f) = 1 for every prime q | d.
  std::size_t d = f.size() - 1;
  PPoly x = {0, 1};
  Int pd;
  mpz_ui_pow_ui(pd.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(d));
  PPoly xpd = ppowmod(x, pd, f, p);
  PPoly diff = xpd;
  if (diff.empty()) diff = {0};
  if (diff.size() < 2) diff.resize(2, 0);
  diff[1] = (diff[1] + p - 1) % p;
  ptrim(diff);
  if (!diff.empty()) return false;
  for (std::uint64_t q : prime_factors_u64(d)) {
    Int pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(d / q));
    PPoly xq = ppowmod(x, pk, f, p);
    PPoly g = xq;
    if (g.size() < 2) g.resize(2, 0);
    g[1] = (g[1] + p - 1) % p;
    ptrim(g);
    g = pgcd(f, g, p);
    if (g.size() != 1) return false;
  }
  return true;
}

// Deterministic modulus: scan candidates x^(2n) + c, c enumerated in base p
// (little-endian digits = coefficients), take the first irreducible one.
PPoly least_irreducible(std::uint64_t p, unsigned deg) {
  for (Int code = 0;; ++code) {
    PPoly f(deg + 1, 0);
    f[deg] = 1;
    Int c = code;
    for (unsigned i = 0; i < deg && c > 0; ++i) {
      Int digit = c % static_cast<unsigned long>(p);
      f[i] = digit.get_ui();
      c /= static_cast<unsigned long>(p);
    }
    if (poly_is_irreducible(f, p)) return f;
  }
}

}  // namespace

// ---------- cyclotomic polynomials ----------

std::vector<Int> cyclotomic_polynomial(unsigned N) {
  // Phi_N = (x^N - 1) / prod_{d | N, d < N} Phi_d
  ZPoly num(N + 1, Int(0));
  num[0] = -1;
  num[N] = 1;
  for (unsigned d : divisors_of(N)) {
    if (d == N) continue;
    ZPoly phid_z;
    for (const Int& c : cyclotomic_polynomial(d)) phid_z.push_back(c);
    num = zdiv_exact(std::move(num), phid_z);
  }
  return num;
}

bool miller_rabin_is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a % n, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// ---------- FieldContext ----------

FieldContextPtr FieldContext::rationals() {
  auto ctx = std::shared_ptr<FieldContext>(new FieldContext());
  ctx->kind_ = FieldKind::Rational;
  ctx->positive_definite_ = true;
  return ctx;
}

FieldContextPtr FieldContext::cyclotomic(unsigned N) {
  if (N == 0) fail(Err::ConfigError, "cyclotomic order must be positive");
  auto ctx = std::shared_ptr<FieldContext>(new FieldContext());
  ctx->kind_ = FieldKind::Cyclotomic;
  ctx->cyclo_n_ = N;
  for (const Int& c : cyclotomic_polynomial(N)) ctx->cyclo_modulus_.push_back(Rat(c));
  ctx->positive_definite_ = true;
  return ctx;
}

FieldContextPtr FieldContext::prime_field(std::uint64_t p) {
  if (p >= (1ull << 62) || !miller_rabin_is_prime(p))
    fail(Err::ConfigError, "GF(p) requires a prime p below 2^62");
  auto ctx = std::shared_ptr<FieldContext>(new FieldContext());
  ctx->kind_ = FieldKind::PrimeField;
  ctx->prime_ = p;
  // Identity involution in characteristic p: sums of squares can vanish.
  ctx->positive_definite_ = false;
  return ctx;
}

FieldContextPtr FieldContext::frobenius_field(std::uint64_t p, unsigned n) {
  if (n == 0) fail(Err::ConfigError, "GF(p^2n;frob) requires n >= 1");
  if (p >= (1ull << 31) || !miller_rabin_is_prime(p))
    fail(Err::ConfigError, "GF(p^2n;frob) requires a prime p below 2^31");
  if (2.0 * n * std::log2(static_cast<double>(p)) > 62.0)
    fail(Err::ConfigError, "extension field too large: need p^(2n) < 2^62");
  auto ctx = std::shared_ptr<FieldContext>(new FieldContext());
  ctx->kind_ = FieldKind::FrobeniusField;
  ctx->prime_ = p;
  ctx->frob_n_ = n;
  ctx->frob_modulus_ = least_irreducible(p, 2 * n);
  // Proper involution, but hermitian norms are surjective onto F_{p^n}:
  // x*x + y*y = 0 has nonzero solutions, so not positive definite.
  ctx->positive_definite_ = false;
  return ctx;
}

FieldContextPtr FieldContext::parse(const std::string& spec) {
  std::string s;
  for (char c : spec)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s == "Q") return rationals();
  if (s.rfind("Q(zeta_", 0) == 0 && s.back() == ')') {
    unsigned N = 0;
    try {
      N = static_cast<unsigned>(std::stoul(s.substr(7, s.size() - 8)));
    } catch (...) {
      fail(Err::ConfigError, "bad cyclotomic field spec: " + spec);
    }
    return cyclotomic(N);
  }
  if (s.rfind("GF(", 0) == 0 && s.back() == ')') {
    std::string body = s.substr(3, s.size() - 4);
    auto caret = body.find('^');
    if (caret == std::string::npos) {
      try {
        return prime_field(std::stoull(body));
      } catch (const Error&) {
        throw;
      } catch (...) {
        fail(Err::ConfigError, "bad prime field spec: " + spec);
      }
    }
    auto semi = body.find(';');
    if (semi == std::string::npos || body.substr(semi + 1) != "frob")
      fail(Err::ConfigError, "extension fields need the ;frob involution tag: " + spec);
    try {
      std::uint64_t p = std::stoull(body.substr(0, caret));
      unsigned two_n = static_cast<unsigned>(std::stoul(body.substr(caret + 1, semi - caret - 1)));
      if (two_n == 0 || two_n % 2 != 0)
        fail(Err::ConfigError, "GF(p^2n;frob) needs an even exponent: " + spec);
      return frobenius_field(p, two_n / 2);
    } catch (const Error&) {
      throw;
    } catch (...) {
      fail(Err::ConfigError, "bad extension field spec: " + spec);
    }
  }
  fail(Err::ConfigError, "unknown field spec: " + spec +
                             " (expected Q, Q(zeta_N), GF(p) or GF(p^2n;frob))");
}

std::uint64_t FieldContext::characteristic() const {
  return (kind_ == FieldKind::Rational || kind_ == FieldKind::Cyclotomic) ? 0 : prime_;
}

unsigned FieldContext::degree() const {
  switch (kind_) {
    case FieldKind::Rational:
    case FieldKind::PrimeField:
      return 1;
    case FieldKind::Cyclotomic:
      return static_cast<unsigned>(cyclo_modulus_.size() - 1);
    case FieldKind::FrobeniusField:
      return 2 * frob_n_;
  }
  return 1;
}

std::string FieldContext::description() const {
  switch (kind_) {
    case FieldKind::Rational:
      return "Q";
    case FieldKind::Cyclotomic:
      return "Q(zeta_" + std::to_string(cyclo_n_) + ")";
    case FieldKind::PrimeField:
      return "GF(" + std::to_string(prime_) + ")";
    case FieldKind::FrobeniusField:
      return "GF(" + std::to_string(prime_) + "^" + std::to_string(2 * frob_n_) + ";frob)";
  }
  return "?";
}

bool FieldContext::same_as(const FieldContext& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case FieldKind::Rational:
      return true;
    case FieldKind::Cyclotomic:
      return cyclo_n_ == other.cyclo_n_;
    case FieldKind::PrimeField:
      return prime_ == other.prime_;
    case FieldKind::FrobeniusField:
      return prime_ == other.prime_ && frob_n_ == other.frob_n_;
  }
  return false;
}

FieldElement FieldContext::zero() const { return from_int(0); }
FieldElement FieldContext::one() const { return from_int(1); }

FieldElement FieldContext::from_int(long v) const {
  auto self = shared_from_this();
  switch (kind_) {
    case FieldKind::Rational:
      return FieldElement(self, Rat(v));
    case FieldKind::Cyclotomic: {
      QPoly p;
      if (v != 0) p.push_back(Rat(v));
      return FieldElement(self, p);
    }
    case FieldKind::PrimeField: {
      long m = v % static_cast<long>(prime_);
      if (m < 0) m += static_cast<long>(prime_);
      return FieldElement(self, static_cast<std::uint64_t>(m));
    }
    case FieldKind::FrobeniusField: {
      long m = v % static_cast<long>(prime_);
      if (m < 0) m += static_cast<long>(prime_);
      PPoly p;
      if (m != 0) p.push_back(static_cast<std::uint64_t>(m));
      return FieldElement(self, p);
    }
  }
  fail(Err::Internal, "unreachable");
}

FieldElement FieldContext::from_rational(const Rat& r) const {
  auto self = shared_from_this();
  switch (kind_) {
    case FieldKind::Rational:
      return FieldElement(self, r);
    case FieldKind::Cyclotomic: {
      QPoly p;
      if (r != 0) p.push_back(r);
      return FieldElement(self, p);
    }
    case FieldKind::PrimeField:
    case FieldKind::FrobeniusField: {
      Int num = r.get_num(), den = r.get_den();
      Int pz(static_cast<unsigned long>(prime_));
      Int den_mod = den % pz;
      if (den_mod == 0)
        fail(Err::CharacteristicError,
             "denominator divisible by the characteristic " + std::to_string(prime_));
      Int num_mod = num % pz;
      if (num_mod < 0) num_mod += pz;
      std::uint64_t inv = powmod_u64(den_mod.get_ui(), prime_ - 2, prime_);
      std::uint64_t val = mulmod_u64(num_mod.get_ui(), inv, prime_);
      if (kind_ == FieldKind::PrimeField) return FieldElement(self, val);
      PPoly p;
      if (val != 0) p.push_back(val);
      return FieldElement(self, p);
    }
  }
  fail(Err::Internal, "unreachable");
}

FieldElement FieldContext::primitive_root_of_unity(unsigned N) const {
  auto self = shared_from_this();
  if (N == 0) fail(Err::ConfigError, "root order must be positive");
  if (characteristic() != 0 && N % characteristic() == 0)
    fail(Err::CharacteristicDividesOrder,
         "characteristic " + std::to_string(characteristic()) + " divides " + std::to_string(N));
  switch (kind_) {
    case FieldKind::Rational: {
      if (N == 1) return one();
      if (N == 2) return from_int(-1);
      fail(Err::NoPrimitiveRoot, "Q has no primitive " + std::to_string(N) + "-th root of unity");
    }
    case FieldKind::Cyclotomic: {
      if (N == 1) return one();
      if (cyclo_n_ % N == 0) {
        QPoly x = {Rat(0), Rat(1)};
        FieldElement zeta(self, qreduce(x, cyclo_modulus_));
        return zeta.pow(static_cast<long>(cyclo_n_ / N));
      }
      if (N == 2) return from_int(-1);
      fail(Err::NoPrimitiveRoot,
           description() + " has no primitive " + std::to_string(N) + "-th root of unity");
    }
    case FieldKind::PrimeField: {
      if ((prime_ - 1) % N != 0)
        fail(Err::NoPrimitiveRoot, std::to_string(N) + " does not divide p-1");
      auto factors = prime_factors_u64(N);
      for (std::uint64_t g = 1; g < prime_; ++g) {
        std::uint64_t cand = powmod_u64(g, (prime_ - 1) / N, prime_);
        bool primitive = cand != 0;
        for (std::uint64_t q : factors)
          if (powmod_u64(cand, N / q, prime_) == 1) primitive = false;
        if (primitive) return FieldElement(self, cand);
      }
      fail(Err::NoPrimitiveRoot, "no primitive root found");
    }
    case FieldKind::FrobeniusField: {
      Int order;
      mpz_ui_pow_ui(order.get_mpz_t(), static_cast<unsigned long>(prime_), 2 * frob_n_);
      order -= 1;
      if (order % static_cast<unsigned long>(N) != 0)
        fail(Err::NoPrimitiveRoot, std::to_string(N) + " does not divide p^(2n)-1");
      Int cof = order / static_cast<unsigned long>(N);
      auto factors = prime_factors_u64(N);
      // Enumerate elements deterministically by their coefficient encoding.
      for (Int code = 1;; ++code) {
        PPoly g;
        Int c = code;
        for (unsigned i = 0; i < 2 * frob_n_ && c > 0; ++i) {
          Int digit = c % static_cast<unsigned long>(prime_);
          g.push_back(digit.get_ui());
          c /= static_cast<unsigned long>(prime_);
        }
        if (c > 0) fail(Err::NoPrimitiveRoot, "exhausted field elements");
        ptrim(g);
        if (g.empty()) continue;
        PPoly cand = ppowmod(g, cof, frob_modulus_, prime_);
        if (cand.empty()) continue;
        bool primitive = true;
        for (std::uint64_t q : factors) {
          PPoly probe = ppowmod(cand, Int(static_cast<unsigned long>(N / q)), frob_modulus_, prime_);
          if (probe.size() == 1 && probe[0] == 1) primitive = false;
        }
        {
          PPoly full = ppowmod(cand, Int(static_cast<unsigned long>(N)), frob_modulus_, prime_);
          if (!(full.size() == 1 && full[0] == 1)) primitive = false;
        }
        if (primitive) return FieldElement(self, cand);
      }
    }
  }
  fail(Err::Internal, "unreachable");
}

// ---------- FieldElement ----------

void FieldElement::check_same_context(const FieldElement& o) const {
  if (!ctx_ || !o.ctx_ || !ctx_->same_as(*o.ctx_))
    fail(Err::ContextMismatch, "operands from different field contexts");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same_context(o);
  switch (ctx_->kind()) {
    case FieldKind::Rational:
      return FieldElement(ctx_, std::get<Rat>(rep_) + std::get<Rat>(o.rep_));
    case FieldKind::Cyclotomic: {
      const auto& a = std::get<QPoly>(rep_);
      const auto& b = std::get<QPoly>(o.rep_);
      QPoly c(std::max(a.size(), b.size()), Rat(0));
      for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
      for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
      qtrim(c);
      return FieldElement(ctx_, c);
    }
    case FieldKind::PrimeField:
      return FieldElement(ctx_, (std::get<std::uint64_t>(rep_) + std::get<std::uint64_t>(o.rep_)) %
                                    ctx_->prime());
    case FieldKind::FrobeniusField: {
      const auto& a = std::get<PPoly>(rep_);
      const auto& b = std::get<PPoly>(o.rep_);
      PPoly c(std::max(a.size(), b.size()), 0);
      for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i];
      for (std::size_t i = 0; i < b.size(); ++i) c[i] = (c[i] + b[i]) % ctx_->prime();
      ptrim(c);
      return FieldElement(ctx_, c);
    }
  }
  fail(Err::Internal, "unreachable");
}

FieldElement FieldElement::operator-() const {
  if (!ctx_) return FieldElement();
  switch (ctx_->kind()) {
    case FieldKind::Rational:
      return FieldElement(ctx_, Rat(-std::get<Rat>(rep_)));
    case FieldKind::Cyclotomic: {
      QPoly c = std::get<QPoly>(rep_);
      for (auto& x : c) x = -x;
      return FieldElement(ctx_, c);
    }
    case FieldKind::PrimeField: {
      std::uint64_t v = std::get<std::uint64_t>(rep_);
      return FieldElement(ctx_, v == 0 ? 0 : ctx_->prime() - v);
    }
    case FieldKind::FrobeniusField: {
      PPoly c = std::get<PPoly>(rep_);
      for (auto& x : c) x = x == 0 ? 0 : ctx_->prime() - x;
      return FieldElement(ctx_, c);
    }
  }
  fail(Err::Internal, "unreachable");
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same_context(o);
  switch (ctx_->kind()) {
    case FieldKind::Rational:
      return FieldElement(ctx_, std::get<Rat>(rep_) * std::get<Rat>(o.rep_));
    case FieldKind::Cyclotomic:
      return FieldElement(
          ctx_, qmulmod(std::get<QPoly>(rep_), std::get<QPoly>(o.rep_), ctx_->cyclotomic_modulus()));
    case FieldKind::PrimeField:
      return FieldElement(ctx_, mulmod_u64(std::get<std::uint64_t>(rep_),
                                           std::get<std::uint64_t>(o.rep_), ctx_->prime()));
    case FieldKind::FrobeniusField:
      return FieldElement(ctx_, pmulmod(std::get<PPoly>(rep_), std::get<PPoly>(o.rep_),
                                        ctx_->frobenius_modulus(), ctx_->prime()));
  }
  fail(Err::Internal, "unreachable");
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) fail(Err::DivisionByZero, "inverse of zero");
  switch (ctx_->kind()) {
    case FieldKind::Rational:
      return FieldElement(ctx_, Rat(1) / std::get<Rat>(rep_));
    case FieldKind::Cyclotomic: {
      auto [g, u] = qhalf_ext_gcd(std::get<QPoly>(rep_), ctx_->cyclotomic_modulus());
      if (g.size() != 1) fail(Err::DivisionByZero, "non-invertible cyclotomic residue");
      return FieldElement(ctx_, qreduce(std::move(u), ctx_->cyclotomic_modulus()));
    }
    case FieldKind::PrimeField:
      return FieldElement(
          ctx_, powmod_u64(std::get<std::uint64_t>(rep_), ctx_->prime() - 2, ctx_->prime()));
    case FieldKind::FrobeniusField:
      return FieldElement(
          ctx_, pinvmod(std::get<PPoly>(rep_), ctx_->frobenius_modulus(), ctx_->prime()));
  }
  fail(Err::Internal, "unreachable");
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  check_same_context(o);
  return *this * o.inverse();
}

FieldElement FieldElement::conj() const {
  if (!ctx_) return *this;
  switch (ctx_->kind()) {
    case FieldKind::Rational:
    case FieldKind::PrimeField:
      return *this;
    case FieldKind::Cyclotomic: {
      // zeta -> zeta^(N-1): substitute x^(N-1) into the residue.
      const auto& mod = ctx_->cyclotomic_modulus();
      const auto& a = std::get<QPoly>(rep_);
      QPoly x = {Rat(0), Rat(1)};
      QPoly xk = {Rat(1)};  // x^(k*(N-1)) mod Phi_N, k = 0
      QPoly xe = x;
      // x^(N-1) mod Phi_N by repeated multiplication (N is small in practice)
      QPoly xn1 = {Rat(1)};
      for (unsigned i = 0; i + 1 < ctx_->cyclotomic_order(); ++i) xn1 = qmulmod(xn1, xe, mod);
      QPoly r;
      for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] != 0) {
          QPoly term = xk;
          for (auto& c : term) c *= a[k];
          if (r.size() < term.size()) r.resize(term.size(), Rat(0));
          for (std::size_t i = 0; i < term.size(); ++i) r[i] += term[i];
        }
        xk = qmulmod(xk, xn1, mod);
      }
      qtrim(r);
      return FieldElement(ctx_, qreduce(std::move(r), mod));
    }
    case FieldKind::FrobeniusField: {
      // x -> x^(p^n): apply the p-power map n times.
      PPoly v = std::get<PPoly>(rep_);
      for (unsigned i = 0; i < ctx_->frobenius_half_degree(); ++i)
        v = ppowmod(v, Int(static_cast<unsigned long>(ctx_->prime())), ctx_->frobenius_modulus(),
                    ctx_->prime());
      return FieldElement(ctx_, v);
    }
  }
  fail(Err::Internal, "unreachable");
}

FieldElement FieldElement::pow(long e) const {
  FieldElement base = *this;
  if (e < 0) {
    base = base.inverse();
    e = -e;
  }
  FieldElement r = ctx_ ? ctx_->one() : FieldContext::rationals()->one();
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

bool FieldElement::is_zero() const {
  if (!ctx_) return std::get<Rat>(rep_) == 0;
  switch (ctx_->kind()) {
    case FieldKind::Rational:
      return std::get<Rat>(rep_) == 0;
    case FieldKind::Cyclotomic:
      return std::get<QPoly>(rep_).empty();
    case FieldKind::PrimeField:
      return std::get<std::uint64_t>(rep_) == 0;
    case FieldKind::FrobeniusField:
      return std::get<PPoly>(rep_).empty();
  }
  return false;
}

bool FieldElement::is_one() const {
  if (!ctx_) return std::get<Rat>(rep_) == 1;
  switch (ctx_->kind()) {
    case FieldKind::Rational:
      return std::get<Rat>(rep_) == 1;
    case FieldKind::Cyclotomic: {
      const auto& p = std::get<QPoly>(rep_);
      return p.size() == 1 && p[0] == 1;
    }
    case FieldKind::PrimeField:
      return std::get<std::uint64_t>(rep_) == 1;
    case FieldKind::FrobeniusField: {
      const auto& p = std::get<PPoly>(rep_);
      return p.size() == 1 && p[0] == 1;
    }
  }
  return false;
}

bool FieldElement::operator==(const FieldElement& o) const {
  if (!ctx_ && !o.ctx_) return std::get<Rat>(rep_) == std::get<Rat>(o.rep_);
  check_same_context(o);
  return rep_ == o.rep_;
}

bool FieldElement::less_than(const FieldElement& o) const {
  check_same_context(o);
  switch (ctx_->kind()) {
    case FieldKind::Rational:
      return std::get<Rat>(rep_) < std::get<Rat>(o.rep_);
    case FieldKind::Cyclotomic: {
      const auto& a = std::get<QPoly>(rep_);
      const auto& b = std::get<QPoly>(o.rep_);
      if (a.size() != b.size()) return a.size() < b.size();
      for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
      return false;
    }
    case FieldKind::PrimeField:
      return std::get<std::uint64_t>(rep_) < std::get<std::uint64_t>(o.rep_);
    case FieldKind::FrobeniusField:
      return std::get<PPoly>(rep_) < std::get<PPoly>(o.rep_);
  }
  return false;
}

const Rat& FieldElement::rational_value() const {
  if (ctx_ && ctx_->kind() != FieldKind::Rational)
    fail(Err::Internal, "rational_value on a non-rational field element");
  return std::get<Rat>(rep_);
}

std::string FieldElement::to_string() const {
  if (!ctx_) return rat_string(std::get<Rat>(rep_));
  switch (ctx_->kind()) {
    case FieldKind::Rational:
      return rat_string(std::get<Rat>(rep_));
    case FieldKind::Cyclotomic: {
      const auto& p = std::get<QPoly>(rep_);
      if (p.empty()) return "0";
      std::ostringstream os;
      bool first = true;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << rat_string(p[i]);
        if (i >= 1) os << "*z";
        if (i >= 2) os << "^" << i;
      }
      return os.str();
    }
    case FieldKind::PrimeField:
      return std::to_string(std::get<std::uint64_t>(rep_));
    case FieldKind::FrobeniusField: {
      const auto& p = std::get<PPoly>(rep_);
      if (p.empty()) return "0";
      std::ostringstream os;
      bool first = true;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << p[i];
        if (i >= 1) os << "*u";
        if (i >= 2) os << "^" << i;
      }
      return os.str();
    }
  }
  return "?";
}

// ---------- compatible families ----------

std::map<unsigned, FieldElement> compatible_roots(unsigned N, const FieldContextPtr& ctx) {
  FieldElement xi = ctx->primitive_root_of_unity(N);
  std::map<unsigned, FieldElement> fam;
  for (unsigned d = 1; d <= N; ++d)
    if (N % d == 0) fam.emplace(d, xi.pow(static_cast<long>(N / d)));
  return fam;
}

// ---------- parsing helpers ----------

Rat parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) fail(Err::ConfigError, "empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      Rat r(Int(s.substr(0, slash), 10), Int(s.substr(slash + 1), 10));
      r.canonicalize();
      return r;
    }
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find('E') == std::string::npos) {
      return Rat(Int(s, 10));
    }
    // decimal / scientific: mantissa * 10^exp
    std::string mant = s;
    long exp10 = 0;
    auto epos = s.find_first_of("eE");
    if (epos != std::string::npos) {
      mant = s.substr(0, epos);
      exp10 = std::stol(s.substr(epos + 1));
    }
    auto dot = mant.find('.');
    if (dot != std::string::npos) {
      exp10 -= static_cast<long>(mant.size() - dot - 1);
      mant.erase(dot, 1);
    }
    if (mant.empty() || mant == "-" || mant == "+") fail(Err::ConfigError, "bad rational: " + text);
    Rat r{Int(mant, 10)};
    Rat scale;
    mpz_ui_pow_ui(scale.get_num().get_mpz_t(), 10,
                  static_cast<unsigned long>(exp10 >= 0 ? exp10 : -exp10));
    scale.canonicalize();
    if (exp10 >= 0)
      r *= scale;
    else
      r /= scale;
    r.canonicalize();
    return r;
  } catch (const Error&) {
    throw;
  } catch (...) {
    fail(Err::ConfigError, "bad rational literal: " + text);
  }
}

const char* err_name(Err e) {
  switch (e) {
    case Err::DivisionByZero: return "DivisionByZero";
    case Err::ContextMismatch: return "ContextMismatch";
    case Err::NoPrimitiveRoot: return "NoPrimitiveRoot";
    case Err::CharacteristicDividesOrder: return "CharacteristicDividesOrder";
    case Err::SpaceMismatch: return "SpaceMismatch";
    case Err::GeometryMismatch: return "GeometryMismatch";
    case Err::SyntaxError: return "SyntaxError";
    case Err::CharacteristicError: return "CharacteristicError";
    case Err::CutoffTooLargeForMemory: return "CutoffTooLargeForMemory";
    case Err::IndexOutOfRange: return "IndexOutOfRange";
    case Err::NotRepresentableAtLevel: return "NotRepresentableAtLevel";
    case Err::SchemesNotNested: return "SchemesNotNested";
    case Err::SegmentNotFound: return "SegmentNotFound";
    case Err::SupportViolation: return "SupportViolation";
    case Err::NotInvertibleConstantTerm: return "NotInvertibleConstantTerm";
    case Err::CutoffMismatch: return "CutoffMismatch";
    case Err::SchemeMismatch: return "SchemeMismatch";
    case Err::NotSpecial: return "NotSpecial";
    case Err::LevelZeroUnsupported: return "LevelZeroUnsupported";
    case Err::NotProper: return "NotProper";
    case Err::DegreeOverflow: return "DegreeOverflow";
    case Err::PatternViolated: return "PatternViolated";
    case Err::BudgetExceeded: return "BudgetExceeded";
    case Err::ConfigError: return "ConfigError";
    case Err::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace lamprank
