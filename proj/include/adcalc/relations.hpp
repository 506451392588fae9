/*
 * Copyright (C) 2026 The adcalc Authors.
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

#pragma once

// Bounded search for integer polynomial relations P(values) == 0 mod p^M.
//
// A found relation is only a congruence to finite precision; an empty result means no
// relation exists within the searched degree and height, nothing more.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "adcalc/error.hpp"
#include "adcalc/lattice.hpp"
#include "adcalc/zq.hpp"

namespace adcalc {

enum class SearchMode { Exhaustive, Lattice };

inline std::string to_string(SearchMode mode) { return mode == SearchMode::Exhaustive ? "exhaustive" : "lattice"; }

struct SearchBudget {
  std::size_t max_monomials = 64;
  Int max_height = 1'000'000;
  std::uint64_t max_exhaustive = 5'000'000;   ///< (2H + 1)^C cap in exhaustive mode
  std::uint64_t max_enumeration = 2'000'000;  ///< search-tree nodes in lattice mode
};

struct RelationQuery {
  std::vector<ZqElement> values;
  unsigned degree = 1;
  Int height = 1;
  SearchMode mode = SearchMode::Lattice;
  std::optional<int> precision;  ///< M; defaults to the smallest value precision
  SearchBudget budget{};
};

using Monomial = std::vector<unsigned>;

/// An integer polynomial with P(values) == 0 mod p^verified_precision.
struct RelationCertificate {
  std::vector<Monomial> monomials;  ///< non-zero terms only, highest first
  std::vector<Int> coeffs;
  int verified_precision = 0;
  unsigned degree_bound = 0;
  Int height_bound = 0;
  int search_precision = 0;
  SearchMode mode = SearchMode::Lattice;
  std::string status = "proven-congruence";

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& m : monomials) {
      unsigned t = 0;
      for (auto e : m) t += e;
      d = std::max(d, t);
    }
    return d;
  }
  Int height() const {
    Int h = 0;
    for (const auto& c : coeffs) h = std::max(h, Int(abs(c)));
    return h;
  }
};

struct ProbeResult {
  std::optional<RelationCertificate> certificate;
  unsigned degree_bound = 0;
  Int height_bound = 0;
  int search_precision = 0;
  SearchMode mode = SearchMode::Lattice;
  /// Whether p^M carries at least twice the information of the coefficient box searched.
  bool signal_floor_met = true;
};

/// All exponent vectors in `arity` variables of total degree <= degree, ordered by degree,
/// then lexicographically descending within a degree (x^2, xy, y^2, ...).
inline std::vector<Monomial> monomials(std::size_t arity, unsigned degree) {
  std::vector<Monomial> out;
  for (unsigned d = 0; d <= degree; ++d) {
    Monomial cur(arity, 0);
    std::function<void(std::size_t, unsigned)> fill = [&](std::size_t i, unsigned left) {
      if (i + 1 == arity) {
        cur[i] = left;
        out.push_back(cur);
        return;
      }
      for (unsigned e = left + 1; e-- > 0;) {
        cur[i] = e;
        fill(i + 1, left - e);
      }
    };
    fill(0, d);
  }
  return out;
}

inline unsigned total_degree(const Monomial& m) {
  unsigned t = 0;
  for (auto e : m) t += e;
  return t;
}

inline ZqElement evaluate(const std::vector<Monomial>& monos, const std::vector<Int>& coeffs,
                          const std::vector<ZqElement>& values, int prec) {
  const ParamsRef& params = values.front().params();
  ZqElement acc = ZqElement::zero(params, prec);
  for (std::size_t t = 0; t < monos.size(); ++t) {
    if (coeffs[t] == 0) continue;
    ZqElement term = ZqElement::one(params, prec);
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (monos[t][i] != 0) term *= values[i].with_precision(prec).pow(Int(monos[t][i]));
    }
    acc += coeffs[t] * term;
  }
  return acc;
}

/// Re-evaluates the certificate modulo p^k.
inline bool verify_relation(const RelationCertificate& cert, const std::vector<ZqElement>& values, int k) {
  if (values.empty() || k < 1) return false;
  int common = values.front().precision();
  for (const auto& v : values) {
    if (!v.params()->same_ring(*values.front().params())) return false;
    common = std::min(common, v.precision());
  }
  if (k > common) return false;
  for (const auto& m : cert.monomials) {
    if (m.size() != values.size()) return false;
  }
  return evaluate(cert.monomials, cert.coeffs, values, k).is_zero();
}

namespace detail {

// Selection order: degree, then height, then coefficients read from the highest monomial
// down. Signs are normalised so the highest non-zero coefficient is positive.
struct Candidate {
  unsigned degree;
  Int height;
  std::vector<Int> coeffs;  // in monomial order

  bool better_than(const Candidate& other) const {
    if (degree != other.degree) return degree < other.degree;
    if (height != other.height) return height < other.height;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
      if (coeffs[i] != other.coeffs[i]) return coeffs[i] < other.coeffs[i];
    }
    return false;
  }
};

class RelationSearch {
 public:
  RelationSearch(const std::vector<Monomial>& monos, const std::vector<RawElement>& monomial_values, Int modulus,
                 Int height)
      : monos_(monos), values_(monomial_values), modulus_(std::move(modulus)), height_(std::move(height)) {}

  void consider(std::vector<Int> c) {
    std::size_t top = c.size();
    for (std::size_t i = c.size(); i-- > 0;) {
      if (c[i] != 0) {
        top = i;
        break;
      }
    }
    if (top == c.size()) return;
    Int h = 0;
    for (const auto& x : c) {
      h = std::max(h, Int(abs(x)));
      if (h > height_) return;
    }
    const std::size_t f = values_.front().size();
    for (std::size_t coord = 0; coord < f; ++coord) {
      Int acc = 0;
      for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j] != 0) acc += c[j] * values_[j][coord];
      }
      if (integer::mod(acc, modulus_) != 0) return;
    }
    if (c[top] < 0) {
      for (auto& x : c) x = -x;
    }
    unsigned deg = 0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j] != 0) deg = std::max(deg, total_degree(monos_[j]));
    }
    Candidate cand{deg, h, std::move(c)};
    if (!best_ || cand.better_than(*best_)) best_ = std::move(cand);
  }

  const std::optional<Candidate>& best() const { return best_; }

 private:
  const std::vector<Monomial>& monos_;
  const std::vector<RawElement>& values_;
  Int modulus_;
  Int height_;
  std::optional<Candidate> best_;
};

inline Int box_size(const Int& height, std::size_t count) {
  return integer::pow(2 * height + 1, static_cast<unsigned>(count));
}

}  // namespace detail

inline ProbeResult find_relation(const RelationQuery& query) {
  if (query.values.empty()) fail(ErrorKind::DomainError, "no values to probe");
  const ParamsRef& params = query.values.front().params();
  int common = params->precision();
  for (const auto& v : query.values) {
    if (!v.params()->same_ring(*params)) fail(ErrorKind::MixedParams, "values over different rings");
    common = std::min(common, v.precision());
  }
  const int prec = query.precision.value_or(common);
  if (prec < 1 || prec > common) fail(ErrorKind::PrecisionExhausted, "search precision exceeds value precision");
  if (query.height < 1) fail(ErrorKind::DomainError, "height bound must be positive");
  if (query.degree < 1) fail(ErrorKind::DomainError, "degree bound must be positive");

  const auto all = monomials(query.values.size(), query.degree);
  const auto& budget = query.budget;
  if (all.size() > budget.max_monomials) {
    fail(ErrorKind::BudgetExceeded, std::to_string(all.size()) + " monomials exceed the budget of " +
                                        std::to_string(budget.max_monomials));
  }
  if (query.height > budget.max_height) fail(ErrorKind::BudgetExceeded, "height bound exceeds the budget");
  if (query.mode == SearchMode::Exhaustive && detail::box_size(query.height, all.size()) > budget.max_exhaustive) {
    fail(ErrorKind::BudgetExceeded, "exhaustive box exceeds the budget");
  }

  ProbeResult result;
  result.degree_bound = query.degree;
  result.height_bound = query.height;
  result.search_precision = prec;
  result.mode = query.mode;
  const double box_bits = static_cast<double>(all.size()) * std::log2(2.0 * static_cast<double>(query.height) + 1.0);
  const double value_bits = prec * params->f() * std::log2(static_cast<double>(params->p()));
  result.signal_floor_met = value_bits >= 2.0 * box_bits;

  const Int modulus = params->p_power(prec);
  std::vector<RawElement> monomial_values;
  for (const auto& m : all) {
    ZqElement term = ZqElement::one(params, prec);
    for (std::size_t i = 0; i < query.values.size(); ++i) {
      if (m[i] != 0) term *= query.values[i].with_precision(prec).pow(Int(m[i]));
    }
    monomial_values.push_back(term.coeffs());
  }

  // Degree by degree: the first degree with any relation holds the best one.
  for (unsigned d = 1; d <= query.degree; ++d) {
    std::size_t count = 0;
    while (count < all.size() && total_degree(all[count]) <= d) ++count;
    const std::vector<Monomial> monos(all.begin(), all.begin() + count);
    const std::vector<RawElement> vals(monomial_values.begin(), monomial_values.begin() + count);
    detail::RelationSearch search(monos, vals, modulus, query.height);

    if (query.mode == SearchMode::Exhaustive) {
      std::vector<Int> c(count, -query.height);
      while (true) {
        search.consider(c);
        std::size_t i = 0;
        while (i < count && c[i] == query.height) c[i++] = -query.height;
        if (i == count) break;
        ++c[i];
      }
    } else {
      std::vector<lattice::Vector> rows(params->f(), lattice::Vector(count));
      for (std::size_t j = 0; j < count; ++j) {
        for (int coord = 0; coord < params->f(); ++coord) rows[coord][j] = vals[j][coord];
      }
      const lattice::Basis basis = lattice::kernel_mod(rows, count, modulus);
      const Int bound = query.height * query.height * Int(count);
      const bool complete = lattice::enumerate_short(basis, bound, budget.max_enumeration,
                                                     [&](const lattice::Vector& v) { search.consider(v); });
      if (!complete) fail(ErrorKind::BudgetExceeded, "short-vector enumeration exceeded the budget");
    }

    if (const auto& best = search.best()) {
      RelationCertificate cert;
      for (std::size_t j = count; j-- > 0;) {
        if (best->coeffs[j] != 0) {
          cert.monomials.push_back(monos[j]);
          cert.coeffs.push_back(best->coeffs[j]);
        }
      }
      cert.verified_precision =
          valuation(evaluate(cert.monomials, cert.coeffs, query.values, common)).value;
      cert.degree_bound = query.degree;
      cert.height_bound = query.height;
      cert.search_precision = prec;
      cert.mode = query.mode;
      result.certificate = std::move(cert);
      return result;
    }
  }
  return result;
}

/// Lowest-degree, then lowest-height integer relation satisfied by u.
inline ProbeResult minimal_polynomial(const ZqElement& u, unsigned degree, Int height = 16,
                                      SearchMode mode = SearchMode::Lattice, SearchBudget budget = {}) {
  RelationQuery query;
  query.values = {u};
  query.degree = degree;
  query.height = std::move(height);
  query.mode = mode;
  query.budget = budget;
  return find_relation(query);
}

}  // namespace adcalc
