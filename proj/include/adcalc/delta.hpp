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

#include <algorithm>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "adcalc/error.hpp"
#include "adcalc/zq.hpp"

namespace adcalc {

/// delta(u) = (phi(u) - u^p) / p. Loses one digit of precision.
inline ZqElement fermat_quotient(const ZqElement& u) {
  if (u.precision() < 2) fail(ErrorKind::PrecisionExhausted, "fermat quotient needs precision >= 2");
  return divide_by_p_power(frobenius(u) - u.pow(Int(u.params()->p())), 1);
}

/// [u, delta u, ..., delta^r u]; entry i is known to prec - i digits.
struct DeltaJet {
  std::vector<ZqElement> entries;

  int order() const { return static_cast<int>(entries.size()) - 1; }
  const ZqElement& operator[](std::size_t i) const { return entries[i]; }
};

inline DeltaJet delta_jet(const ZqElement& u, int order) {
  if (order < 0) fail(ErrorKind::DomainError, "jet order must be non-negative");
  if (u.precision() < order + 1) {
    fail(ErrorKind::PrecisionExhausted, "jet of order " + std::to_string(order) + " needs precision >= " +
                                            std::to_string(order + 1));
  }
  DeltaJet jet{{u}};
  for (int i = 0; i < order; ++i) jet.entries.push_back(fermat_quotient(jet.entries.back()));
  return jet;
}

namespace detail {

inline void require_odd_prime(const ParamsRef& params, const char* what) {
  if (params->p() == 2) fail(ErrorKind::UnsupportedPrime, std::string(what) + " is not supported for p = 2");
}

// floor(log_p n) for n >= 1.
inline int floor_log(std::uint64_t n, std::uint64_t p) {
  int k = 0;
  for (std::uint64_t m = n; m >= p; m /= p) ++k;
  return k;
}

// sum_{n>=1} (-1)^{n-1} p^{shift(n)} x^n / n modulo p^prec, over the terms whose valuation
// bound n * vx + shift(n) - v_p(n) lies below prec. With shift = 0 this is log(1 + x).
template <class Shift>
RawElement log_series(const ParamsRef& params, const RawElement& x, int vx, int prec, Shift shift) {
  const std::uint64_t p = params->p();
  std::vector<std::uint64_t> terms;
  int extra = 0;
  for (std::uint64_t n = 1;; ++n) {
    // n * vx - floor(log_p n) + shift(n) is non-decreasing in n for vx >= 1 or shift(n) = n - 1.
    const long bound = static_cast<long>(n) * vx + shift(n) - floor_log(n, p);
    if (bound >= prec) break;
    terms.push_back(n);
    extra = std::max(extra, integer::valuation(n, p));
  }
  const Int work = params->p_power(prec + extra);
  const Int target = params->p_power(prec);
  RawElement acc(params->f());
  RawElement power = params->reduce(params->one(), work);
  std::uint64_t last = 0;
  for (std::uint64_t n : terms) {
    for (; last < n; ++last) power = params->mul(power, x, work);
    const int v = integer::valuation(n, p);
    const Int unit = Int(n) / params->p_power(v);
    const int s = shift(n);
    RawElement term = power;
    // (p^s / p^v) * x^n; x^n carries at least n * vx >= v factors of p when s < v.
    if (s >= v) {
      term = params->scale(term, params->p_power(s - v), work);
    } else {
      for (auto& c : term) c /= params->p_power(v - s);
    }
    Int coef = integer::inverse(unit, target);
    if (n % 2 == 0) coef = target - coef;
    acc = params->add(acc, params->scale(term, coef, target), target);
  }
  return acc;
}

}  // namespace detail

/// p-adic logarithm on 1 + pZ_q (p odd).
inline ZqElement padic_log(const ZqElement& u) {
  detail::require_odd_prime(u.params(), "padic_log");
  const ZqElement x = u - ZqElement::one(u.params(), u.precision());
  if (valuation(x).value < 1) fail(ErrorKind::DomainError, "log requires u == 1 mod p");
  return ZqElement(u.params(), detail::log_series(u.params(), x.coeffs(), 1, u.precision(), [](std::uint64_t) { return 0; }),
                   u.precision());
}

/// p-adic exponential on pZ_q (p odd).
inline ZqElement padic_exp(const ZqElement& x) {
  const auto& params = x.params();
  detail::require_odd_prime(params, "padic_exp");
  if (valuation(x).value < 1) fail(ErrorKind::DomainError, "exp requires valuation >= 1");
  const std::uint64_t p = params->p();
  const int prec = x.precision();

  // v(x^n / n!) >= n - v_p(n!) >= (n (p - 2) + 1) / (p - 1); past n_max every term vanishes.
  const std::uint64_t n_max = (static_cast<std::uint64_t>(prec) * (p - 1) + p - 3) / (p - 2) + 1;
  int extra = 0;
  std::vector<std::uint64_t> terms;
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    const int vf = integer::factorial_valuation(n, p);
    if (static_cast<long>(n) - vf < prec) {
      terms.push_back(n);
      extra = std::max(extra, vf);
    }
  }
  const Int work = params->p_power(prec + extra);
  const Int target = params->p_power(prec);
  RawElement acc(params->f());
  RawElement power = params->reduce(params->one(), work);
  Int factorial_unit = 1;  // n! with all factors of p removed, modulo p^prec
  std::uint64_t last = 0;
  for (std::uint64_t n : terms) {
    for (; last < n; ++last) {
      power = params->mul(power, x.coeffs(), work);
      std::uint64_t m = last + 1;
      while (m % p == 0) m /= p;
      factorial_unit = factorial_unit * m % target;
    }
    RawElement term = power;
    const Int pv = params->p_power(integer::factorial_valuation(n, p));
    for (auto& c : term) c /= pv;
    acc = params->add(acc, params->scale(term, integer::inverse(factorial_unit, target), target), target);
  }
  return ZqElement(params, std::move(acc), prec);
}

/// psi(u) = (1/p) log(phi(u) / u^p), computed through the logarithm.
inline ZqElement psi_via_log(const ZqElement& u) {
  detail::require_odd_prime(u.params(), "psi");
  if (!u.is_unit()) fail(ErrorKind::NonUnit, "psi is defined on units");
  if (u.precision() < 2) fail(ErrorKind::PrecisionExhausted, "psi needs precision >= 2");
  const ZqElement ratio = frobenius(u) * inv(u).pow(Int(u.params()->p()));
  return divide_by_p_power(padic_log(ratio), 1);
}

/// psi(u) = sum_{n>=1} (-1)^{n-1} (p^{n-1}/n) (delta u / u^p)^n.
inline ZqElement psi_via_series(const ZqElement& u) {
  detail::require_odd_prime(u.params(), "psi");
  if (!u.is_unit()) fail(ErrorKind::NonUnit, "psi is defined on units");
  if (u.precision() < 2) fail(ErrorKind::PrecisionExhausted, "psi needs precision >= 2");
  const ZqElement y = fermat_quotient(u) * inv(u.pow(Int(u.params()->p())));
  const int prec = y.precision();
  return ZqElement(u.params(),
                   detail::log_series(u.params(), y.coeffs(), 0, prec,
                                      [](std::uint64_t n) { return static_cast<int>(n) - 1; }),
                   prec);
}

/// The homomorphism psi: Z_q^x -> Z_q. Both routes are evaluated and must agree.
inline ZqElement psi(const ZqElement& u) {
  ZqElement by_log = psi_via_log(u);
  if (!(by_log == psi_via_series(u))) fail(ErrorKind::Inconsistent, "psi routes disagree");
  return by_log;
}

// ---------------------------------------------------------------------------
// delta-functions given by finite restricted-series data.

struct SeriesTerm {
  std::vector<unsigned> exponents;
  ZqElement coeff;
};

/// F in (order + 1) * arity variables. Variable index j * arity + i stands for delta^j u_i.
///
/// With `base_denominator` set, each first-order variable delta u_i is replaced by
/// delta u_i / u_i^p, which is how psi's defining series is written.
struct RestrictedSeries {
  int order = 0;
  int arity = 1;
  std::vector<SeriesTerm> terms;
  bool base_denominator = false;

  int variable_count() const { return (order + 1) * arity; }

  void validate() const {
    if (order < 0 || arity < 1) fail(ErrorKind::DomainError, "series needs order >= 0 and arity >= 1");
    std::set<std::vector<unsigned>> seen;
    for (const auto& t : terms) {
      if (static_cast<int>(t.exponents.size()) != variable_count()) {
        fail(ErrorKind::ArityMismatch, "multi-index length differs from (order + 1) * arity");
      }
      if (!seen.insert(t.exponents).second) fail(ErrorKind::DomainError, "repeated multi-index in series");
    }
  }
};

inline ZqElement eval_delta_function(const RestrictedSeries& series, std::span<const ZqElement> args) {
  series.validate();
  if (static_cast<int>(args.size()) != series.arity) {
    fail(ErrorKind::ArityMismatch, "expected " + std::to_string(series.arity) + " arguments");
  }
  if (args.empty()) fail(ErrorKind::ArityMismatch, "no arguments");
  const ParamsRef& params = args.front().params();

  std::vector<ZqElement> vars;
  vars.reserve(series.variable_count());
  std::vector<DeltaJet> jets;
  int prec = params->precision();
  for (const auto& u : args) {
    if (!u.params()->same_ring(*params)) fail(ErrorKind::ParamsMismatch, "arguments over different rings");
    if (series.base_denominator && !u.is_unit()) fail(ErrorKind::NonUnit, "denominator argument is not a unit");
    jets.push_back(delta_jet(u, series.order));
    prec = std::min(prec, jets.back().entries.back().precision());
  }
  for (const auto& t : series.terms) prec = std::min(prec, t.coeff.precision());

  for (int j = 0; j <= series.order; ++j) {
    for (int i = 0; i < series.arity; ++i) {
      ZqElement v = jets[i][j].with_precision(prec);
      if (series.base_denominator && j == 1) v = v * inv(args[i].pow(Int(params->p()))).with_precision(prec);
      vars.push_back(std::move(v));
    }
  }

  ZqElement acc = ZqElement::zero(params, prec);
  for (const auto& t : series.terms) {
    ZqElement term = t.coeff.with_precision(prec);
    for (int k = 0; k < series.variable_count(); ++k) {
      if (t.exponents[k] != 0) term = term * vars[k].pow(Int(t.exponents[k]));
    }
    acc += term;
  }
  return acc;
}

/// psi's defining series, sum (-1)^{n-1} (p^{n-1}/n) X^n in X = delta u / u^p, truncated
/// so that evaluation is exact modulo p^{N-1}.
inline RestrictedSeries psi_series(const ParamsRef& params) {
  detail::require_odd_prime(params, "psi");
  const std::uint64_t p = params->p();
  const int prec = params->precision();
  const Int mod = params->p_power(prec);
  RestrictedSeries series{1, 1, {}, true};
  for (std::uint64_t n = 1; static_cast<long>(n) - 1 - detail::floor_log(n, p) < prec - 1; ++n) {
    const int v = integer::valuation(n, p);
    Int c = params->p_power(static_cast<int>(n) - 1 - v) * integer::inverse(Int(n) / params->p_power(v), mod);
    if (n % 2 == 0) c = -c;
    series.terms.push_back({{0u, static_cast<unsigned>(n)}, ZqElement::from_integer(params, c, prec)});
  }
  return series;
}

}  // namespace adcalc
