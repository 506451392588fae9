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

// Test-only oracles. None of these share code paths with the library routines they check:
// series are summed in exact rationals with a generous fixed term count, field facts are
// established by brute force.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <vector>

#include "adcalc/adcalc.hpp"

namespace oracle {

using adcalc::Int;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;
using RationalPoly = std::vector<Rational>;

inline Int mod(const Int& x, const Int& m) {
  Int r = x % m;
  return r < 0 ? r + m : r;
}

inline Int modinv(Int a, const Int& m) {
  // Bezout by brute recursion on the textbook identities.
  Int g = m, x = 0, x1 = 1, a1 = mod(a, m);
  while (a1 != 0) {
    Int q = g / a1;
    Int t = g - q * a1;
    g = a1;
    a1 = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  return mod(x, m);
}

/// A p-integral rational reduced modulo p^k.
inline Int reduce(const Rational& r, const Int& pk) {
  const Int num = boost::multiprecision::numerator(r);
  const Int den = boost::multiprecision::denominator(r);
  return mod(num * modinv(den, pk), pk);
}

// Multiplication in Q[x]/(m), m monic with integer coefficients (lowest first).
inline RationalPoly mulmod(const RationalPoly& a, const RationalPoly& b, const std::vector<Int>& m) {
  const std::size_t f = m.size() - 1;
  RationalPoly prod(2 * f - 1, Rational(0));
  for (std::size_t i = 0; i < f; ++i)
    for (std::size_t j = 0; j < f; ++j) prod[i + j] += a[i] * b[j];
  for (std::size_t k = 2 * f - 1; k-- > f;) {
    const Rational c = prod[k];
    for (std::size_t j = 0; j <= f; ++j) prod[k - f + j] -= c * Rational(m[j]);
  }
  prod.resize(f);
  return prod;
}

/// sum_{n=0}^{terms} x^n / n! in exact rationals, then reduced mod p^prec.
inline std::vector<Int> exp_series(const adcalc::ZqElement& x, int terms) {
  const auto& params = *x.params();
  const std::size_t f = params.f();
  RationalPoly power(f, Rational(0)), acc(f, Rational(0)), xr(f);
  power[0] = 1;
  for (std::size_t i = 0; i < f; ++i) xr[i] = Rational(x.coeffs()[i]);
  Int factorial = 1;
  for (int n = 0; n <= terms; ++n) {
    if (n > 0) {
      power = mulmod(power, xr, params.modulus());
      factorial *= n;
    }
    for (std::size_t i = 0; i < f; ++i) acc[i] += power[i] / Rational(factorial);
  }
  std::vector<Int> out;
  for (const auto& c : acc) out.push_back(reduce(c, x.modulus()));
  return out;
}

/// sum_{n=1}^{terms} (-1)^{n-1} (u-1)^n / n in exact rationals, reduced mod p^prec.
inline std::vector<Int> log_series(const adcalc::ZqElement& u, int terms) {
  const auto& params = *u.params();
  const std::size_t f = params.f();
  RationalPoly power(f, Rational(0)), acc(f, Rational(0)), xr(f);
  power[0] = 1;
  for (std::size_t i = 0; i < f; ++i) xr[i] = Rational(u.coeffs()[i]);
  xr[0] -= 1;
  for (int n = 1; n <= terms; ++n) {
    power = mulmod(power, xr, params.modulus());
    const Rational sign = (n % 2 == 1) ? Rational(1) : Rational(-1);
    for (std::size_t i = 0; i < f; ++i) acc[i] += sign * power[i] / Rational(n);
  }
  std::vector<Int> out;
  for (const auto& c : acc) out.push_back(reduce(c, u.modulus()));
  return out;
}

/// Does the degree-d polynomial (lowest first, monic) have a root in F_p?
inline bool has_root_mod_p(const std::vector<std::uint64_t>& m, std::uint64_t p) {
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t acc = 0;
    for (auto it = m.rbegin(); it != m.rend(); ++it) acc = (acc * x + *it) % p;
    if (acc == 0) return true;
  }
  return false;
}

/// Multiplicative order of a non-zero residue by repeated multiplication.
inline std::uint64_t order(const adcalc::FqElement& a) {
  adcalc::FqElement x = a;
  std::uint64_t k = 1;
  const auto one = adcalc::FqElement::one(a.params());
  while (!(x == one)) {
    x = x * a;
    ++k;
  }
  return k;
}

/// All units of Z_q / p^N (small rings only), by coefficient enumeration.
inline std::vector<adcalc::ZqElement> all_units(const adcalc::ParamsRef& params) {
  const Int pn = params->p_power(params->precision());
  const int f = params->f();
  Int total = 1;
  for (int i = 0; i < f; ++i) total *= pn;
  std::vector<adcalc::ZqElement> out;
  for (Int idx = 0; idx < total; ++idx) {
    adcalc::RawElement raw;
    Int rest = idx;
    for (int i = 0; i < f; ++i) {
      raw.push_back(rest % pn);
      rest /= pn;
    }
    adcalc::ZqElement u(params, raw, params->precision());
    if (u.is_unit()) out.push_back(u);
  }
  return out;
}

}  // namespace oracle
