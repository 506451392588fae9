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

// Conway polynomials by direct search: the first polynomial, in Conway's
// ordering, that is primitive and norm-compatible with every proper subfield.

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "adcalc/error.hpp"
#include "adcalc/fp_poly.hpp"
#include "adcalc/integer.hpp"

namespace adcalc {

namespace detail {

inline constexpr std::uint64_t kMaxConwayFieldSize = 1'000'000'000'000ULL;

inline std::uint64_t checked_prime_power(std::uint64_t p, int f) {
  std::uint64_t q = 1;
  for (int i = 0; i < f; ++i) {
    if (q > kMaxConwayFieldSize / p) {
      fail(ErrorKind::DomainError, "p^f too large for a default defining polynomial; supply one explicitly");
    }
    q *= p;
  }
  return q;
}

inline bool is_primitive(const fp::Poly& m, std::uint64_t p, std::uint64_t q) {
  const fp::Poly x{0, 1};
  for (std::uint64_t r : integer::prime_factors(q - 1)) {
    if (fp::powmod(x, Int((q - 1) / r), m, p) == fp::Poly{1}) return false;
  }
  return true;
}

// C_d(x^{(q-1)/(p^d-1)}) == 0 in F_p[x]/(m).
inline bool is_norm_compatible(const fp::Poly& m, const fp::Poly& sub, std::uint64_t p, std::uint64_t q,
                               std::uint64_t qd) {
  const fp::Poly y = fp::powmod(fp::Poly{0, 1}, Int((q - 1) / (qd - 1)), m, p);
  fp::Poly acc;
  for (auto it = sub.rbegin(); it != sub.rend(); ++it) {
    acc = fp::add(fp::mulmod(acc, y, m, p), fp::Poly{*it}, p);
  }
  return acc.empty();
}

}  // namespace detail

/// The Conway polynomial C_{p,f}, monic, lowest-degree coefficient first.
inline fp::Poly conway_polynomial(std::uint64_t p, int f) {
  static std::mutex cache_mutex;
  static std::map<std::pair<std::uint64_t, int>, fp::Poly> cache;
  {
    std::lock_guard lock(cache_mutex);
    if (auto it = cache.find({p, f}); it != cache.end()) return it->second;
  }
  const std::uint64_t q = detail::checked_prime_power(p, f);

  std::map<int, fp::Poly> subfields;
  for (int d = 1; d < f; ++d) {
    if (f % d == 0) subfields[d] = conway_polynomial(p, d);
  }

  // Candidate index t encodes (a_{f-1}, ..., a_0) in base p, most significant first;
  // the polynomial is x^f + sum_i (-1)^{f-i} a_i x^i.
  for (std::uint64_t t = 0; t < q; ++t) {
    fp::Poly m(f + 1, 0);
    m[f] = 1;
    std::uint64_t rest = t;
    for (int i = 0; i < f; ++i) {
      const std::uint64_t a = rest % p;
      rest /= p;
      m[i] = ((f - i) % 2 == 0) ? a : (p - a) % p;
    }
    if (m[0] == 0) continue;
    if (!fp::is_irreducible(m, p) || !detail::is_primitive(m, p, q)) continue;
    bool compatible = true;
    for (const auto& [d, sub] : subfields) {
      if (!detail::is_norm_compatible(m, sub, p, q, detail::checked_prime_power(p, d))) {
        compatible = false;
        break;
      }
    }
    if (!compatible) continue;
    std::lock_guard lock(cache_mutex);
    cache[{p, f}] = m;
    return m;
  }
  fail(ErrorKind::Inconsistent, "no Conway polynomial found for p=" + std::to_string(p) + ", f=" + std::to_string(f));
}

/// Default defining polynomial: x for f = 1 (plain Z/p^N), the Conway polynomial otherwise.
inline fp::Poly default_defining_polynomial(std::uint64_t p, int f) {
  if (f == 1) return {0, 1};
  return conway_polynomial(p, f);
}

}  // namespace adcalc
