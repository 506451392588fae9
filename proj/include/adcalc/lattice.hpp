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

// Integer lattices: kernels of congruence systems, LLL reduction and exact
// short-vector enumeration. All arithmetic is exact (integers and rationals).

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <tuple>
#include <utility>
#include <vector>

#include "adcalc/error.hpp"
#include "adcalc/integer.hpp"

namespace adcalc::lattice {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;
using Vector = std::vector<Int>;
/// Basis vectors are rows.
using Basis = std::vector<Vector>;

inline Int dot(const Vector& a, const Vector& b) {
  Int acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline void axpy(Vector& y, const Int& a, const Vector& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

// Extended gcd: returns (g, x, y) with x a + y b = g >= 0.
inline std::tuple<Int, Int, Int> xgcd(const Int& a, const Int& b) {
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

/// Gram-Schmidt data of a basis.
struct GramSchmidt {
  std::vector<std::vector<Rational>> mu;
  std::vector<Rational> norms;  ///< |b*_i|^2

  explicit GramSchmidt(const Basis& b) : mu(b.size(), std::vector<Rational>(b.size())), norms(b.size()) {
    const std::size_t n = b.size();
    std::vector<std::vector<Rational>> star(n);
    for (std::size_t i = 0; i < n; ++i) {
      star[i].assign(b[i].begin(), b[i].end());
      for (std::size_t j = 0; j < i; ++j) {
        Rational num = 0;
        for (std::size_t t = 0; t < b[i].size(); ++t) num += Rational(b[i][t]) * star[j][t];
        mu[i][j] = num / norms[j];
        for (std::size_t t = 0; t < b[i].size(); ++t) star[i][t] -= mu[i][j] * star[j][t];
      }
      Rational nn = 0;
      for (const auto& x : star[i]) nn += x * x;
      norms[i] = nn;
      mu[i][i] = 1;
    }
  }
};

inline Int round_nearest(const Rational& x) {
  // floor(x + 1/2)
  const Rational shifted = x + Rational(1, 2);
  Int q = boost::multiprecision::numerator(shifted) / boost::multiprecision::denominator(shifted);
  if (q * boost::multiprecision::denominator(shifted) > boost::multiprecision::numerator(shifted)) --q;
  return q;
}

inline Int floor_of(const Rational& x) {
  Int q = boost::multiprecision::numerator(x) / boost::multiprecision::denominator(x);
  if (q * boost::multiprecision::denominator(x) > boost::multiprecision::numerator(x)) --q;
  return q;
}

/// LLL reduction with quality parameter 99/100, exact rational arithmetic. The input rows
/// must be linearly independent.
inline Basis lll(Basis b) {
  const std::size_t n = b.size();
  if (n < 2) return b;
  const Rational quality(99, 100);
  GramSchmidt gs(b);
  auto& mu = gs.mu;
  auto& norms = gs.norms;

  auto reduce = [&](std::size_t k, std::size_t l) {
    if (abs(mu[k][l]) * 2 <= 1) return;
    const Int q = round_nearest(mu[k][l]);
    axpy(b[k], -q, b[l]);
    mu[k][l] -= Rational(q);
    for (std::size_t i = 0; i < l; ++i) mu[k][i] -= Rational(q) * mu[l][i];
  };

  std::size_t k = 1;
  while (k < n) {
    reduce(k, k - 1);
    if (norms[k] < (quality - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1]) {
      const Rational m = mu[k][k - 1];
      const Rational merged = norms[k] + m * m * norms[k - 1];
      std::swap(b[k], b[k - 1]);
      for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
      mu[k][k - 1] = m * norms[k - 1] / merged;
      norms[k] = norms[k - 1] * norms[k] / merged;
      norms[k - 1] = merged;
      for (std::size_t i = k + 1; i < n; ++i) {
        const Rational t = mu[i][k];
        mu[i][k] = mu[i][k - 1] - m * t;
        mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
      }
      if (k > 1) --k;
    } else {
      for (std::size_t l = k - 1; l-- > 0;) reduce(k, l);
      ++k;
    }
  }
  return b;
}

/// Basis of {c in Z^C : sum_j c_j * rows[i][j] == 0 mod modulus for every i}.
inline Basis kernel_mod(const std::vector<Vector>& rows, std::size_t dim, const Int& modulus) {
  Basis basis(dim, Vector(dim, 0));
  for (std::size_t i = 0; i < dim; ++i) basis[i][i] = 1;

  for (const auto& row : rows) {
    std::vector<Int> s(dim);
    for (std::size_t j = 0; j < dim; ++j) s[j] = integer::mod(dot(row, basis[j]), modulus);
    // Unimodular elimination concentrating the row's value on basis[0].
    for (std::size_t j = 1; j < dim; ++j) {
      if (s[j] == 0) continue;
      if (s[0] == 0) {
        std::swap(s[0], s[j]);
        std::swap(basis[0], basis[j]);
        continue;
      }
      const auto [g, x, y] = xgcd(s[0], s[j]);
      Vector first = basis[0];
      Vector fresh(dim, 0);
      axpy(fresh, x, basis[0]);
      axpy(fresh, y, basis[j]);
      Vector other(dim, 0);
      axpy(other, s[j] / g, first);
      axpy(other, -(s[0] / g), basis[j]);
      basis[0] = std::move(fresh);
      basis[j] = std::move(other);
      s[0] = g;
      s[j] = 0;
    }
    const Int g = boost::multiprecision::gcd(s[0], modulus);
    const Int factor = modulus / (g == 0 ? modulus : g);
    for (auto& c : basis[0]) c *= factor;
    basis = lll(std::move(basis));
  }
  return basis;
}

/// Calls visit(v) for every non-zero lattice vector with |v|^2 <= bound. Returns false if
/// more than max_nodes search nodes would be needed.
inline bool enumerate_short(const Basis& b, const Int& bound, std::uint64_t max_nodes,
                            const std::function<void(const Vector&)>& visit) {
  const std::size_t n = b.size();
  if (n == 0) return true;
  const GramSchmidt gs(b);
  std::vector<Int> x(n, 0);
  std::uint64_t nodes = 0;
  const Rational radius(bound);

  // Level i fixes x_i given x_{i+1..n-1}; `remaining` is the unused part of the bound.
  std::function<bool(std::size_t, const Rational&)> descend = [&](std::size_t i, const Rational& remaining) -> bool {
    Rational center = 0;
    for (std::size_t j = i + 1; j < n; ++j) center -= gs.mu[j][i] * Rational(x[j]);
    auto cost = [&](const Int& xi) {
      const Rational d = Rational(xi) - center;
      return d * d * gs.norms[i];
    };
    const Int start = floor_of(center);
    auto visit_value = [&](const Int& xi) -> bool {
      if (++nodes > max_nodes) return false;
      x[i] = xi;
      const Rational left = remaining - cost(xi);
      if (i == 0) {
        if (std::any_of(x.begin(), x.end(), [](const Int& c) { return c != 0; })) {
          Vector v(b[0].size(), 0);
          for (std::size_t j = 0; j < n; ++j) {
            if (x[j] != 0) axpy(v, x[j], b[j]);
          }
          visit(v);
        }
        return true;
      }
      return descend(i - 1, left);
    };
    for (Int xi = start; cost(xi) <= remaining; --xi) {
      if (!visit_value(xi)) return false;
    }
    for (Int xi = start + 1; cost(xi) <= remaining; ++xi) {
      if (!visit_value(xi)) return false;
    }
    x[i] = 0;
    return true;
  };
  return descend(n - 1, radius);
}

}  // namespace adcalc::lattice
