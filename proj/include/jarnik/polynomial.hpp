#pragma once

#include <utility>
#include <vector>

#include "jarnik/rational.hpp"

namespace jarnik {

/// Dense univariate polynomial over Q, coefficients from low to high degree.
/// The zero polynomial is the empty vector; leading coefficients are never zero.
using QPoly = std::vector<Rational>;

namespace poly {

inline void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int degree(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

inline QPoly from_integers(const std::vector<Integer>& coeffs) {
  QPoly p(coeffs.begin(), coeffs.end());
  trim(p);
  return p;
}

inline QPoly add(const QPoly& a, const QPoly& b) {
  QPoly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  trim(out);
  return out;
}

inline QPoly sub(const QPoly& a, const QPoly& b) {
  QPoly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

inline QPoly scale(const QPoly& a, const Rational& c) {
  if (c == 0) return {};
  QPoly out(a);
  for (auto& x : out) x *= c;
  return out;
}

inline QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

/// Returns (quotient, remainder) with a = q*b + r and deg r < deg b.
inline std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.empty()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  QPoly r(a);
  trim(r);
  if (r.size() < b.size()) return {{}, r};
  QPoly q(r.size() - b.size() + 1);
  const Rational& lead = b.back();
  for (std::size_t shift = r.size() - b.size() + 1; shift-- > 0;) {
    const Rational& top = r[shift + b.size() - 1];
    if (top == 0) continue;
    Rational c = top / lead;
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] -= c * b[j];
  }
  trim(q);
  trim(r);
  return {q, r};
}

inline QPoly mod(const QPoly& a, const QPoly& b) { return divmod(a, b).second; }

inline QPoly monic(const QPoly& p) {
  if (p.empty()) return p;
  return scale(p, Rational(1) / p.back());
}

inline QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

/// Extended Euclid: returns (g, u) with u*a = g (mod m), g = gcd(a, m) monic.
inline std::pair<QPoly, QPoly> gcd_inverse(const QPoly& a, const QPoly& m) {
  QPoly r0 = m, r1 = a;
  QPoly s0, s1{Rational(1)};
  trim(r1);
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1);
    QPoly s = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.empty()) return {{}, {}};
  Rational inv_lead = Rational(1) / r0.back();
  return {scale(r0, inv_lead), scale(s0, inv_lead)};
}

inline QPoly derivative(const QPoly& p) {
  if (p.size() <= 1) return {};
  QPoly out(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = p[i] * static_cast<long>(i);
  trim(out);
  return out;
}

inline Rational eval(const QPoly& p, const Rational& x) {
  Rational acc(0);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

inline int sign(const Rational& r) { return sgn(r); }

/// Canonical Sturm chain p, p', -rem(p, p'), ...
inline std::vector<QPoly> sturm_chain(const QPoly& p) {
  std::vector<QPoly> chain;
  if (p.empty()) return chain;
  chain.push_back(p);
  QPoly d = derivative(p);
  if (d.empty()) return chain;
  chain.push_back(d);
  while (true) {
    QPoly r = mod(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    chain.push_back(scale(r, Rational(-1)));
  }
  return chain;
}

inline int sign_variations(const std::vector<QPoly>& chain, const Rational& x) {
  int count = 0;
  int last = 0;
  for (const auto& q : chain) {
    int s = sign(eval(q, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

/// Number of distinct real roots in the half-open interval (lo, hi].
inline int count_roots(const QPoly& p, const Rational& lo, const Rational& hi) {
  auto chain = sturm_chain(p);
  if (chain.empty()) return 0;
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}

inline bool is_squarefree(const QPoly& p) { return degree(gcd(p, derivative(p))) <= 0; }

/// Searches for a rational root of an integer polynomial via the rational root theorem.
/// Coefficients are expected to be desk-scale; divisors are found by trial division.
inline bool has_rational_root(const std::vector<Integer>& coeffs) {
  std::vector<Integer> c(coeffs);
  while (!c.empty() && c.back() == 0) c.pop_back();
  if (c.size() <= 1) return false;
  if (c.front() == 0) return true;
  if (c.size() == 2) return true;
  auto divisors = [](Integer n) {
    if (n < 0) n = -n;
    std::vector<Integer> out;
    for (Integer d = 1; d * d <= n; ++d) {
      if (n % d == 0) {
        out.push_back(d);
        if (d * d != n) out.push_back(n / d);
      }
    }
    return out;
  };
  QPoly p = from_integers(c);
  for (const auto& num : divisors(c.front())) {
    for (const auto& den : divisors(c.back())) {
      Rational cand(num, den);
      cand.canonicalize();
      if (eval(p, cand) == 0 || eval(p, Rational(-cand)) == 0) return true;
    }
  }
  return false;
}

}  // namespace poly
}  // namespace jarnik
