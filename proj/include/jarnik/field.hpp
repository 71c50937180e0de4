#pragma once

// Exact arithmetic in a real number field Q(theta).
//
// theta is fixed by an integer minimal polynomial together with a rational
// interval that isolates one of its real roots. Elements are polynomials in
// theta of degree < deg(minpoly), kept reduced. Signs are decided by interval
// evaluation on a refined isolating interval; exact zeros are recognised
// symbolically through gcd(element, minpoly), so no numeric threshold is ever
// used to declare equality.

#include <cmath>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "jarnik/polynomial.hpp"
#include "jarnik/rational.hpp"

namespace jarnik {

struct RationalInterval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
};

class FieldContext;
using FieldPtr = std::shared_ptr<const FieldContext>;

class FieldContext {
  struct Token {};

 public:
  FieldContext(Token, std::vector<Integer> minpoly, Rational lo, Rational hi)
      : minpoly_(std::move(minpoly)),
        minpoly_q_(poly::from_integers(minpoly_)),
        lo_(std::move(lo)),
        hi_(std::move(hi)),
        sign_at_lo_(sgn(poly::eval(minpoly_q_, lo_))),
        cache_lo_(lo_),
        cache_hi_(hi_) {}

  FieldContext(const FieldContext&) = delete;
  FieldContext& operator=(const FieldContext&) = delete;

  /// Validates and builds a field. Throws RationalRoot, NotSquarefree or NotIsolating.
  static FieldPtr make(std::vector<Integer> minpoly, const Rational& lo, const Rational& hi) {
    while (!minpoly.empty() && minpoly.back() == 0) minpoly.pop_back();
    if (minpoly.size() < 2) throw Error(ErrorCode::InvalidArgument, "minimal polynomial must be nonconstant");
    if (!(lo < hi)) throw Error(ErrorCode::NotIsolating, "interval must satisfy lo < hi");
    if (poly::has_rational_root(minpoly)) throw Error(ErrorCode::RationalRoot, "minimal polynomial has a rational root");
    QPoly p = poly::from_integers(minpoly);
    if (!poly::is_squarefree(p)) throw Error(ErrorCode::NotSquarefree, "minimal polynomial has a repeated factor");
    int roots = poly::count_roots(p, lo, hi);
    if (roots != 1) {
      throw Error(ErrorCode::NotIsolating,
                  "interval contains " + std::to_string(roots) + " roots, expected exactly one");
    }
    return std::make_shared<const FieldContext>(Token{}, std::move(minpoly), lo, hi);
  }

  const std::vector<Integer>& minpoly() const { return minpoly_; }
  const QPoly& minpoly_q() const { return minpoly_q_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  int degree() const { return static_cast<int>(minpoly_.size()) - 1; }

  /// Degree <= 3 without rational roots implies irreducible over Q, hence the
  /// power basis 1, theta, ..., theta^(n-1) is Q-linearly independent.
  bool irreducible_known() const { return degree() <= 3; }

  /// Isolating interval of width at most 2^-bits. Refinements are cached;
  /// the isolated root never changes.
  RationalInterval theta_enclosure(unsigned bits) const {
    std::lock_guard<std::mutex> lock(mutex_);
    Rational limit(1);
    mpq_div_2exp(limit.get_mpq_t(), limit.get_mpq_t(), bits);
    while (cache_hi_ - cache_lo_ > limit) {
      Rational mid = (cache_lo_ + cache_hi_) / 2;
      int s = sgn(poly::eval(minpoly_q_, mid));
      if (s == sign_at_lo_) {
        cache_lo_ = mid;
      } else {
        cache_hi_ = mid;
      }
    }
    return {cache_lo_, cache_hi_};
  }

  bool same_as(const FieldContext& other) const {
    if (this == &other) return true;
    if (minpoly_ != other.minpoly_) return false;
    Rational lo = std::max(lo_, other.lo_);
    Rational hi = std::min(hi_, other.hi_);
    if (!(lo < hi)) return false;
    return poly::count_roots(minpoly_q_, lo, hi) == 1;
  }

  nlohmann::json to_json() const {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : minpoly_) {
      if (c.fits_slong_p()) {
        coeffs.push_back(c.get_si());
      } else {
        coeffs.push_back(c.get_str());
      }
    }
    return {{"minpoly", coeffs}, {"interval", {format_rational(lo_), format_rational(hi_)}}};
  }

  static FieldPtr from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("minpoly") || !j.contains("interval")) {
      throw Error(ErrorCode::ParseError, "field needs 'minpoly' and 'interval'");
    }
    std::vector<Integer> coeffs;
    for (const auto& c : j.at("minpoly")) {
      if (c.is_number_integer()) {
        coeffs.emplace_back(static_cast<long>(c.get<long long>()));
      } else if (c.is_string()) {
        Rational r = parse_rational(c.get<std::string>());
        if (r.get_den() != 1) throw Error(ErrorCode::ParseError, "minpoly coefficients must be integers");
        coeffs.push_back(r.get_num());
      } else {
        throw Error(ErrorCode::ParseError, "bad minpoly coefficient");
      }
    }
    const auto& iv = j.at("interval");
    if (!iv.is_array() || iv.size() != 2) throw Error(ErrorCode::ParseError, "interval must be [lo, hi]");
    auto read = [](const nlohmann::json& v) {
      return v.is_string() ? parse_rational(v.get<std::string>()) : parse_rational(v.dump());
    };
    return make(std::move(coeffs), read(iv[0]), read(iv[1]));
  }

 private:
  std::vector<Integer> minpoly_;
  QPoly minpoly_q_;
  Rational lo_;
  Rational hi_;
  int sign_at_lo_;
  mutable std::mutex mutex_;
  mutable Rational cache_lo_;
  mutable Rational cache_hi_;
};

/// field_make: the validated constructor.
inline FieldPtr field_make(std::vector<Integer> minpoly, const Rational& lo, const Rational& hi) {
  return FieldContext::make(std::move(minpoly), lo, hi);
}

namespace detail {

inline RationalInterval interval_mul(const RationalInterval& a, const RationalInterval& b) {
  Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return {std::min(std::min(p1, p2), std::min(p3, p4)), std::max(std::max(p1, p2), std::max(p3, p4))};
}

inline RationalInterval horner(const QPoly& p, const RationalInterval& x) {
  if (p.empty()) return {Rational(0), Rational(0)};
  RationalInterval acc{p.back(), p.back()};
  for (std::size_t i = p.size() - 1; i-- > 0;) {
    acc = interval_mul(acc, x);
    acc.lo += p[i];
    acc.hi += p[i];
  }
  return acc;
}

}  // namespace detail

class AlgebraicNumber {
 public:
  AlgebraicNumber() = default;
  AlgebraicNumber(int v) : AlgebraicNumber(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  AlgebraicNumber(long v) : AlgebraicNumber(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  AlgebraicNumber(const Rational& v) {  // NOLINT(google-explicit-constructor)
    if (v != 0) coeffs_.push_back(v);
  }
  AlgebraicNumber(const Integer& v) : AlgebraicNumber(Rational(v)) {}  // NOLINT(google-explicit-constructor)

  AlgebraicNumber(FieldPtr field, QPoly coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    poly::trim(coeffs_);
    reduce();
  }

  static AlgebraicNumber theta(const FieldPtr& field) { return AlgebraicNumber(field, QPoly{Rational(0), Rational(1)}); }

  const FieldPtr& field() const { return field_; }
  const QPoly& coeffs() const { return coeffs_; }

  bool is_rational() const { return coeffs_.size() <= 1; }

  Rational rational_value() const {
    if (!is_rational()) throw Error(ErrorCode::InvalidArgument, "element is not rational");
    return coeffs_.empty() ? Rational(0) : coeffs_[0];
  }

  /// Structural equality of the reduced representations.
  bool identical(const AlgebraicNumber& o) const { return coeffs_ == o.coeffs_; }

  bool is_zero() const {
    if (coeffs_.empty()) return true;
    if (is_rational() || field_->irreducible_known()) return false;
    return sign() == 0;
  }

  /// Enclosure of the value with width at most 2^-bits.
  RationalInterval enclosure(unsigned bits) const {
    if (is_rational()) {
      Rational v = rational_value();
      return {v, v};
    }
    Rational limit(1);
    mpq_div_2exp(limit.get_mpq_t(), limit.get_mpq_t(), bits);
    unsigned prec = bits + 8;
    while (true) {
      RationalInterval t = field_->theta_enclosure(prec);
      RationalInterval e = detail::horner(coeffs_, t);
      if (e.width() <= limit) return e;
      prec += 16;
    }
  }

  int sign() const {
    if (coeffs_.empty()) return 0;
    if (is_rational()) return sgn(coeffs_[0]);
    bool checked_zero = false;
    for (unsigned bits = 64;; bits *= 2) {
      RationalInterval e = enclosure(bits);
      if (e.lo > 0) return 1;
      if (e.hi < 0) return -1;
      if (!checked_zero) {
        checked_zero = true;
        if (field_->irreducible_known()) continue;
        QPoly g = poly::gcd(coeffs_, field_->minpoly_q());
        if (poly::degree(g) >= 1 && poly::count_roots(g, field_->lo(), field_->hi()) == 1) return 0;
      }
    }
  }

  double to_double() const {
    if (is_rational()) return rational_value().get_d();
    return enclosure(64).midpoint().get_d();
  }

  Integer floor() const {
    if (is_rational()) return floor_q(rational_value());
    for (unsigned bits = 32;; bits *= 2) {
      RationalInterval e = enclosure(bits);
      Integer fl = floor_q(e.lo);
      Integer fh = floor_q(e.hi);
      if (fl == fh) return fl;
      if (e.width() < 1) {
        int s = (*this - AlgebraicNumber(fh)).sign();
        return s >= 0 ? fh : Integer(fh - 1);
      }
    }
  }

  Integer ceil() const { return -((-*this).floor()); }

  std::string to_decimal(int digits) const {
    if (is_rational()) return jarnik::to_decimal(rational_value(), digits);
    auto bits = static_cast<unsigned>(std::ceil(digits * 3.3219280948873623)) + 16;
    return jarnik::to_decimal(enclosure(bits).midpoint(), digits);
  }

  AlgebraicNumber inverse() const {
    if (coeffs_.empty()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    if (is_rational()) return AlgebraicNumber(Rational(1) / coeffs_[0]);
    const QPoly& m = field_->minpoly_q();
    auto [g, u] = poly::gcd_inverse(coeffs_, m);
    if (poly::degree(g) == 0) return AlgebraicNumber(field_, u);
    if (sign() == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    // theta is a root of m/g; invert modulo that factor.
    QPoly h = poly::divmod(m, g).first;
    auto [g2, u2] = poly::gcd_inverse(poly::mod(coeffs_, h), h);
    return AlgebraicNumber(field_, u2);
  }

  AlgebraicNumber operator-() const {
    AlgebraicNumber out(*this);
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }

  AlgebraicNumber& operator+=(const AlgebraicNumber& o) {
    adopt(o);
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    poly::trim(coeffs_);
    return *this;
  }

  AlgebraicNumber& operator-=(const AlgebraicNumber& o) {
    adopt(o);
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    poly::trim(coeffs_);
    return *this;
  }

  AlgebraicNumber& operator*=(const AlgebraicNumber& o) {
    adopt(o);
    if (o.is_rational()) {
      if (o.coeffs_.empty()) {
        coeffs_.clear();
      } else {
        for (auto& c : coeffs_) c *= o.coeffs_[0];
      }
      return *this;
    }
    if (is_rational()) {
      Rational c = rational_value();
      coeffs_ = o.coeffs_;
      for (auto& x : coeffs_) x *= c;
      poly::trim(coeffs_);
      return *this;
    }
    coeffs_ = poly::mul(coeffs_, o.coeffs_);
    reduce();
    return *this;
  }

  AlgebraicNumber& operator/=(const AlgebraicNumber& o) {
    if (o.is_rational()) {
      if (o.coeffs_.empty()) throw Error(ErrorCode::DivisionByZero, "division by zero");
      adopt(o);
      for (auto& c : coeffs_) c /= o.coeffs_[0];
      return *this;
    }
    return *this *= o.inverse();
  }

  friend AlgebraicNumber operator+(AlgebraicNumber a, const AlgebraicNumber& b) { return a += b; }
  friend AlgebraicNumber operator-(AlgebraicNumber a, const AlgebraicNumber& b) { return a -= b; }
  friend AlgebraicNumber operator*(AlgebraicNumber a, const AlgebraicNumber& b) { return a *= b; }
  friend AlgebraicNumber operator/(AlgebraicNumber a, const AlgebraicNumber& b) { return a /= b; }

  friend int compare(const AlgebraicNumber& a, const AlgebraicNumber& b) { return (a - b).sign(); }
  friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (a.identical(b)) return true;
    return compare(a, b) == 0;
  }
  friend bool operator!=(const AlgebraicNumber& a, const AlgebraicNumber& b) { return !(a == b); }
  friend bool operator<(const AlgebraicNumber& a, const AlgebraicNumber& b) { return compare(a, b) < 0; }
  friend bool operator<=(const AlgebraicNumber& a, const AlgebraicNumber& b) { return compare(a, b) <= 0; }
  friend bool operator>(const AlgebraicNumber& a, const AlgebraicNumber& b) { return compare(a, b) > 0; }
  friend bool operator>=(const AlgebraicNumber& a, const AlgebraicNumber& b) { return compare(a, b) >= 0; }

  AlgebraicNumber pow(unsigned e) const {
    AlgebraicNumber out(1);
    AlgebraicNumber b(*this);
    while (e > 0) {
      if (e & 1U) out *= b;
      b *= b;
      e >>= 1U;
    }
    return out;
  }

  /// Coefficient array of "p/q" strings, lowest power of theta first.
  nlohmann::json to_json() const {
    nlohmann::json out = nlohmann::json::array();
    if (coeffs_.empty()) out.push_back("0");
    for (const auto& c : coeffs_) out.push_back(format_rational(c));
    return out;
  }

  /// Accepts a coefficient array or a single rational (string or integer).
  static AlgebraicNumber from_json(const nlohmann::json& j, const FieldPtr& field) {
    auto read = [](const nlohmann::json& v) {
      if (v.is_string()) return parse_rational(v.get<std::string>());
      if (v.is_number_integer()) return Rational(static_cast<long>(v.get<long long>()));
      throw Error(ErrorCode::ParseError, "field coefficient must be a string or integer");
    };
    if (!j.is_array()) return AlgebraicNumber(read(j));
    QPoly c;
    for (const auto& v : j) c.push_back(read(v));
    poly::trim(c);
    if (c.size() > 1 && !field) throw Error(ErrorCode::ParseError, "irrational element without a field");
    if (c.size() <= 1) return AlgebraicNumber(c.empty() ? Rational(0) : c[0]);
    return AlgebraicNumber(field, std::move(c));
  }

 private:
  void reduce() {
    if (!field_ || static_cast<int>(coeffs_.size()) <= field_->degree()) return;
    coeffs_ = poly::mod(coeffs_, field_->minpoly_q());
  }

  void adopt(const AlgebraicNumber& o) {
    if (!o.field_ || o.field_ == field_) return;
    if (!field_) {
      field_ = o.field_;
      return;
    }
    if (!field_->same_as(*o.field_)) throw Error(ErrorCode::FieldMismatch, "operands live in different fields");
  }

  FieldPtr field_;
  QPoly coeffs_;
};

using Alg = AlgebraicNumber;

inline int alg_sign(const AlgebraicNumber& x) { return x.sign(); }

inline AlgebraicNumber abs(const AlgebraicNumber& x) { return x.sign() < 0 ? -x : x; }
inline AlgebraicNumber max(const AlgebraicNumber& a, const AlgebraicNumber& b) { return a < b ? b : a; }
inline AlgebraicNumber min(const AlgebraicNumber& a, const AlgebraicNumber& b) { return b < a ? b : a; }

struct NearestInteger {
  Integer n;
  AlgebraicNumber frac_dist;
};

/// Nearest integer and the distance to it. Ties (distance exactly 1/2) go to the smaller integer.
inline NearestInteger alg_nearest_int(const AlgebraicNumber& x) {
  Integer n = x.floor();
  AlgebraicNumber frac = x - AlgebraicNumber(n);
  if (compare(frac, AlgebraicNumber(Rational(1, 2))) > 0) return {n + 1, AlgebraicNumber(1) - frac};
  return {n, frac};
}

/// ||x||, the distance to the nearest integer.
inline AlgebraicNumber dist_to_nearest_int(const AlgebraicNumber& x) { return alg_nearest_int(x).frac_dist; }

using AlgVector = std::vector<AlgebraicNumber>;

inline nlohmann::json to_json(const AlgVector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : v) out.push_back(x.to_json());
  return out;
}

inline AlgVector alg_vector_from_json(const nlohmann::json& j, const FieldPtr& field) {
  AlgVector out;
  for (const auto& x : j) out.push_back(AlgebraicNumber::from_json(x, field));
  return out;
}

/// Sup-norm of a vector, exact.
inline AlgebraicNumber sup_norm(const AlgVector& v) {
  AlgebraicNumber best(0);
  for (const auto& x : v) {
    AlgebraicNumber a = abs(x);
    if (a > best) best = a;
  }
  return best;
}

}  // namespace jarnik
