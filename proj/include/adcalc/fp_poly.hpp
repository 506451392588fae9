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

// Dense polynomials over the prime field F_p, coefficients stored lowest degree first.

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "adcalc/integer.hpp"

namespace adcalc::fp {

using Poly = std::vector<std::uint64_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline Poly add(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
  trim(r);
  return r;
}

inline Poly sub(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
  trim(r);
  return r;
}

inline Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = (r[i + j] + integer::mulmod64(a[i], b[j], p)) % p;
    }
  }
  trim(r);
  return r;
}

/// Quotient and remainder of a by a non-zero b.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b, std::uint64_t p) {
  trim(a);
  const int db = degree(b);
  const std::uint64_t lead_inv = integer::powmod64(b.back(), p - 2, p);
  if (degree(a) < db) return {{}, a};
  Poly q(a.size() - b.size() + 1, 0);
  for (int i = degree(a); i >= db; --i) {
    const std::uint64_t c = integer::mulmod64(a[i], lead_inv, p);
    q[i - db] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) {
      a[i - db + j] = (a[i - db + j] + p - integer::mulmod64(c, b[j], p)) % p;
    }
  }
  trim(a);
  trim(q);
  return {q, a};
}

inline Poly rem(const Poly& a, const Poly& b, std::uint64_t p) { return divmod(a, b, p).second; }

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint64_t p) {
  return rem(mul(a, b, p), m, p);
}

inline Poly powmod(Poly base, Int exp, const Poly& m, std::uint64_t p) {
  Poly result{1};
  result = rem(result, m, p);
  base = rem(base, m, p);
  while (exp > 0) {
    if ((exp & 1) != 0) result = mulmod(result, base, m, p);
    base = mulmod(base, base, m, p);
    exp >>= 1;
  }
  return result;
}

/// Monic gcd.
inline Poly gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  const std::uint64_t inv = integer::powmod64(a.back(), p - 2, p);
  for (auto& c : a) c = integer::mulmod64(c, inv, p);
  return a;
}

inline Poly derivative(const Poly& a, std::uint64_t p) {
  Poly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(integer::mulmod64(a[i], i % p, p));
  trim(r);
  return r;
}

inline std::uint64_t eval(const Poly& a, std::uint64_t x, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = (integer::mulmod64(acc, x, p) + *it) % p;
  return acc;
}

/// Irreducibility over F_p: gcd(x^{p^i} - x, m) = 1 for i <= deg/2.
inline bool is_irreducible(Poly m, std::uint64_t p) {
  trim(m);
  const int n = degree(m);
  if (n < 1) return false;
  if (n == 1) return true;
  const Poly x{0, 1};
  Poly power = x;
  for (int i = 1; i <= n / 2; ++i) {
    power = powmod(power, Int(p), m, p);
    if (degree(gcd(m, sub(power, x, p), p)) != 0) return false;
  }
  return true;
}

}  // namespace adcalc::fp
