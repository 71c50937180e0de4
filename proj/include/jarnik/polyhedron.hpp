#pragma once

// Exact polyhedral queries over the ordered field Q(theta) by Fourier-Motzkin
// elimination. Equalities are substituted away first; Chernikov's rule prunes
// combinations built from too many parents.

#include <bitset>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jarnik/field.hpp"

namespace jarnik {

enum class Relation { GreaterEqual, Equal };

/// coeffs . x + constant  (>= 0 | == 0)
struct AffineConstraint {
  AlgVector coeffs;
  AlgebraicNumber constant;
  Relation relation = Relation::GreaterEqual;
};

struct FourierMotzkinOptions {
  std::size_t max_vars = 8;
  std::size_t max_constraints = 200000;
};

class Polyhedron {
 public:
  explicit Polyhedron(std::size_t num_vars) : num_vars_(num_vars) {}

  std::size_t num_vars() const { return num_vars_; }
  const std::vector<AffineConstraint>& constraints() const { return constraints_; }

  void add(AffineConstraint c) {
    if (c.coeffs.size() != num_vars_) throw Error(ErrorCode::InvalidArgument, "constraint arity mismatch");
    constraints_.push_back(std::move(c));
  }
  void add_ge(AlgVector coeffs, AlgebraicNumber constant) {
    add({std::move(coeffs), std::move(constant), Relation::GreaterEqual});
  }
  /// coeffs . x + constant <= 0
  void add_le(AlgVector coeffs, AlgebraicNumber constant) {
    for (auto& c : coeffs) c = -c;
    add({std::move(coeffs), -constant, Relation::GreaterEqual});
  }
  void add_eq(AlgVector coeffs, AlgebraicNumber constant) {
    add({std::move(coeffs), std::move(constant), Relation::Equal});
  }

 private:
  std::size_t num_vars_;
  std::vector<AffineConstraint> constraints_;
};

namespace detail {

constexpr std::size_t kMaxParents = 512;

struct FmRow {
  AlgVector coeffs;
  AlgebraicNumber constant;
  std::bitset<kMaxParents> parents;
};

inline std::string row_key(const AlgVector& coeffs) {
  std::string key;
  for (const auto& c : coeffs) {
    key += "[";
    for (const auto& x : c.coeffs()) key += x.get_str() + ",";
    key += "]";
  }
  return key;
}

/// Scales so the first nonzero coefficient is +-1; keeps only the tightest row per direction.
inline std::optional<std::vector<FmRow>> normalize_rows(std::vector<FmRow> rows) {
  std::map<std::string, std::size_t> seen;
  std::vector<FmRow> out;
  for (auto& r : rows) {
    std::size_t lead = r.coeffs.size();
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
      if (!r.coeffs[i].is_zero()) {
        lead = i;
        break;
      }
    }
    if (lead == r.coeffs.size()) {
      if (r.constant.sign() < 0) return std::nullopt;
      continue;
    }
    AlgebraicNumber scale = abs(r.coeffs[lead]).inverse();
    if (!(scale.is_rational() && scale.rational_value() == 1)) {
      for (auto& c : r.coeffs) c *= scale;
      r.constant *= scale;
    }
    std::string key = row_key(r.coeffs);
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(key, out.size());
      out.push_back(std::move(r));
    } else if (r.constant < out[it->second].constant) {
      out[it->second] = std::move(r);
    }
  }
  return out;
}

struct FmSystem {
  std::vector<FmRow> rows;
  std::vector<bool> eliminated;
  std::size_t eliminated_count = 0;
};

/// Substitutes every equality; returns nullopt if an equality is inconsistent.
inline std::optional<FmSystem> build_system(const Polyhedron& p, const FourierMotzkinOptions& opts,
                                            std::optional<std::size_t> keep) {
  if (p.num_vars() > opts.max_vars) {
    throw Error(ErrorCode::DimensionTooLarge,
                std::to_string(p.num_vars()) + " variables exceeds limit " + std::to_string(opts.max_vars));
  }
  std::vector<AffineConstraint> eqs, ineqs;
  for (const auto& c : p.constraints()) (c.relation == Relation::Equal ? eqs : ineqs).push_back(c);
  FmSystem sys;
  sys.eliminated.assign(p.num_vars(), false);
  while (!eqs.empty()) {
    AffineConstraint e = eqs.back();
    eqs.pop_back();
    std::size_t var = p.num_vars();
    for (std::size_t i = 0; i < p.num_vars(); ++i) {
      if (!e.coeffs[i].is_zero() && !(keep && *keep == i)) {
        var = i;
        break;
      }
    }
    if (var == p.num_vars()) {
      for (std::size_t i = 0; i < p.num_vars(); ++i) {
        if (!e.coeffs[i].is_zero()) var = i;
      }
    }
    if (var == p.num_vars()) {
      if (!e.constant.is_zero()) return std::nullopt;
      continue;
    }
    // x_var = -(sum_{i != var} c_i x_i + constant) / c_var
    AlgebraicNumber inv = e.coeffs[var].inverse();
    auto substitute = [&](AffineConstraint& c) {
      if (c.coeffs[var].is_zero()) return;
      AlgebraicNumber f = c.coeffs[var] * inv;
      for (std::size_t i = 0; i < p.num_vars(); ++i) c.coeffs[i] -= f * e.coeffs[i];
      c.constant -= f * e.constant;
      c.coeffs[var] = AlgebraicNumber(0);
    };
    if (keep && *keep == var) {
      // The kept variable is pinned: record both directions as inequalities.
      ineqs.push_back({e.coeffs, e.constant, Relation::GreaterEqual});
      AffineConstraint neg = e;
      for (auto& c : neg.coeffs) c = -c;
      neg.constant = -neg.constant;
      ineqs.push_back(neg);
      for (auto& c : eqs) substitute(c);
      continue;
    }
    for (auto& c : eqs) substitute(c);
    for (auto& c : ineqs) substitute(c);
    sys.eliminated[var] = true;
  }
  if (ineqs.size() > kMaxParents) throw Error(ErrorCode::DimensionTooLarge, "too many constraints");
  for (std::size_t i = 0; i < ineqs.size(); ++i) {
    FmRow r{ineqs[i].coeffs, ineqs[i].constant, {}};
    r.parents.set(i);
    sys.rows.push_back(std::move(r));
  }
  auto norm = normalize_rows(std::move(sys.rows));
  if (!norm) return std::nullopt;
  sys.rows = std::move(*norm);
  return sys;
}

/// Eliminates one variable; returns false on detected infeasibility.
inline bool eliminate(FmSystem& sys, std::size_t var, const FourierMotzkinOptions& opts) {
  std::vector<FmRow> pos, neg, rest;
  for (auto& r : sys.rows) {
    int s = r.coeffs[var].sign();
    if (s > 0) {
      pos.push_back(std::move(r));
    } else if (s < 0) {
      neg.push_back(std::move(r));
    } else {
      rest.push_back(std::move(r));
    }
  }
  ++sys.eliminated_count;
  sys.eliminated[var] = true;
  for (const auto& p : pos) {
    for (const auto& n : neg) {
      auto parents = p.parents | n.parents;
      if (parents.count() > sys.eliminated_count + 1) continue;
      // (-n_var) * p + (p_var) * n cancels var; both multipliers positive.
      AlgebraicNumber a = -n.coeffs[var];
      const AlgebraicNumber& b = p.coeffs[var];
      FmRow r;
      r.coeffs.resize(p.coeffs.size());
      for (std::size_t i = 0; i < p.coeffs.size(); ++i) r.coeffs[i] = a * p.coeffs[i] + b * n.coeffs[i];
      r.coeffs[var] = AlgebraicNumber(0);
      r.constant = a * p.constant + b * n.constant;
      r.parents = parents;
      rest.push_back(std::move(r));
      if (rest.size() > opts.max_constraints) {
        throw Error(ErrorCode::DimensionTooLarge, "Fourier-Motzkin constraint budget exceeded");
      }
    }
  }
  auto norm = normalize_rows(std::move(rest));
  if (!norm) return false;
  sys.rows = std::move(*norm);
  return true;
}

inline std::size_t pick_variable(const FmSystem& sys, std::optional<std::size_t> keep) {
  std::size_t best = sys.eliminated.size();
  std::size_t best_cost = 0;
  for (std::size_t v = 0; v < sys.eliminated.size(); ++v) {
    if (sys.eliminated[v] || (keep && *keep == v)) continue;
    std::size_t np = 0, nn = 0;
    for (const auto& r : sys.rows) {
      int s = r.coeffs[v].sign();
      if (s > 0) ++np;
      if (s < 0) ++nn;
    }
    std::size_t cost = np * nn;
    if (best == sys.eliminated.size() || cost < best_cost) {
      best = v;
      best_cost = cost;
    }
  }
  return best;
}

}  // namespace detail

/// Exact feasibility of a system of affine equalities and inequalities.
inline bool polyhedron_feasible(const Polyhedron& p, const FourierMotzkinOptions& opts = {}) {
  auto sys = detail::build_system(p, opts, std::nullopt);
  if (!sys) return false;
  while (true) {
    std::size_t v = detail::pick_variable(*sys, std::nullopt);
    if (v == sys->eliminated.size()) return true;
    if (!detail::eliminate(*sys, v, opts)) return false;
  }
}

struct Minimum {
  bool feasible = false;
  bool bounded = false;
  AlgebraicNumber value;
};

/// Minimum of variable `var` over the polyhedron (projection onto that axis).
inline Minimum polyhedron_minimize(const Polyhedron& p, std::size_t var, const FourierMotzkinOptions& opts = {}) {
  auto sys = detail::build_system(p, opts, var);
  if (!sys) return {};
  while (true) {
    std::size_t v = detail::pick_variable(*sys, var);
    if (v == sys->eliminated.size()) break;
    if (!detail::eliminate(*sys, v, opts)) return {};
  }
  std::optional<AlgebraicNumber> lower, upper;
  for (const auto& r : sys->rows) {
    int s = r.coeffs[var].sign();
    // After normalisation the coefficient is +-1: x >= -c or x <= c.
    if (s > 0) {
      AlgebraicNumber b = -r.constant / r.coeffs[var];
      if (!lower || b > *lower) lower = b;
    } else if (s < 0) {
      AlgebraicNumber b = r.constant / (-r.coeffs[var]);
      if (!upper || b < *upper) upper = b;
    }
  }
  if (lower && upper && *lower > *upper) return {};
  Minimum m;
  m.feasible = true;
  if (lower) {
    m.bounded = true;
    m.value = *lower;
  }
  return m;
}

}  // namespace jarnik
