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
#include <string>
#include <utility>
#include <vector>

#include "adcalc/error.hpp"
#include "adcalc/fq.hpp"
#include "adcalc/params.hpp"

namespace adcalc {

/// An element of Z_q known modulo p^prec, 1 <= prec <= N.
///
/// Coefficients are canonical representatives in [0, p^prec) of the polynomial-basis
/// coordinates. Binary operations run at the smaller of the two precisions.
class ZqElement {
 public:
  ZqElement(ParamsRef params, RawElement coeffs, int prec) : params_(std::move(params)), prec_(prec) {
    if (prec_ < 1 || prec_ > params_->precision()) {
      fail(ErrorKind::PrecisionExhausted, "element precision " + std::to_string(prec_) + " outside [1, " +
                                              std::to_string(params_->precision()) + "]");
    }
    coeffs_ = params_->reduce(std::move(coeffs), modulus());
  }

  static ZqElement zero(ParamsRef params) {
    const int n = params->precision();
    return zero(std::move(params), n);
  }
  static ZqElement zero(ParamsRef params, int prec) { return ZqElement(params, RawElement(params->f()), prec); }
  static ZqElement one(ParamsRef params) {
    const int n = params->precision();
    return one(std::move(params), n);
  }
  static ZqElement one(ParamsRef params, int prec) { return ZqElement(params, params->one(), prec); }
  static ZqElement from_integer(ParamsRef params, const Int& value) {
    const int n = params->precision();
    return from_integer(std::move(params), value, n);
  }
  static ZqElement from_integer(ParamsRef params, const Int& value, int prec) {
    RawElement raw(params->f());
    raw[0] = value;
    return ZqElement(params, std::move(raw), prec);
  }
  /// The class g of the variable.
  static ZqElement generator(ParamsRef params) {
    const int n = params->precision();
    RawElement raw = params->generator();
    return ZqElement(std::move(params), std::move(raw), n);
  }
  /// Lift with coefficients in [0, p); not the Teichmuller lift.
  static ZqElement lift(const FqElement& a, int prec) {
    RawElement raw;
    for (auto c : a.coeffs()) raw.emplace_back(c);
    return ZqElement(a.params(), std::move(raw), prec);
  }

  const ParamsRef& params() const noexcept { return params_; }
  int precision() const noexcept { return prec_; }
  const RawElement& coeffs() const noexcept { return coeffs_; }
  Int modulus() const { return params_->p_power(prec_); }

  FqElement residue() const {
    std::vector<std::uint64_t> r;
    const Int p(params_->p());
    for (const auto& c : coeffs_) r.push_back(static_cast<std::uint64_t>(c % p));
    return FqElement(params_, std::move(r));
  }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Int& c) { return c == 0; });
  }
  bool is_unit() const { return !residue().is_zero(); }

  /// The same element viewed at a lower precision k <= prec.
  ZqElement with_precision(int k) const {
    if (k > prec_) fail(ErrorKind::PrecisionExhausted, "cannot raise precision of a known value");
    return ZqElement(params_, coeffs_, k);
  }

  friend ZqElement operator+(const ZqElement& a, const ZqElement& b) {
    const int k = common_precision(a, b);
    return ZqElement(a.params_, a.params_->add(a.coeffs_, b.coeffs_, a.params_->p_power(k)), k);
  }
  friend ZqElement operator-(const ZqElement& a, const ZqElement& b) {
    const int k = common_precision(a, b);
    return ZqElement(a.params_, a.params_->sub(a.coeffs_, b.coeffs_, a.params_->p_power(k)), k);
  }
  friend ZqElement operator*(const ZqElement& a, const ZqElement& b) {
    const int k = common_precision(a, b);
    return ZqElement(a.params_, a.params_->mul(a.coeffs_, b.coeffs_, a.params_->p_power(k)), k);
  }
  friend ZqElement operator*(const Int& c, const ZqElement& a) {
    return ZqElement(a.params_, a.params_->scale(a.coeffs_, c, a.modulus()), a.prec_);
  }
  ZqElement operator-() const { return ZqElement(params_, params_->sub(RawElement(params_->f()), coeffs_, modulus()), prec_); }

  ZqElement& operator+=(const ZqElement& b) { return *this = *this + b; }
  ZqElement& operator-=(const ZqElement& b) { return *this = *this - b; }
  ZqElement& operator*=(const ZqElement& b) { return *this = *this * b; }

  ZqElement pow(const Int& exp) const {
    if (exp < 0) return inv(*this).pow(-exp);
    return ZqElement(params_, params_->pow(coeffs_, exp, modulus()), prec_);
  }

  friend ZqElement inv(const ZqElement& u) {
    if (!u.is_unit()) fail(ErrorKind::NonUnit, "inverse of an element of positive valuation");
    return ZqElement(u.params_, u.params_->inverse(u.coeffs_, u.prec_), u.prec_);
  }

  /// Congruence modulo p^min(prec_a, prec_b).
  friend bool operator==(const ZqElement& a, const ZqElement& b) {
    const int k = common_precision(a, b);
    return a.with_precision(k).coeffs_ == b.with_precision(k).coeffs_;
  }

  /// Same precision and same representative.
  friend bool identical(const ZqElement& a, const ZqElement& b) {
    return a.params_->same_ring(*b.params_) && a.prec_ == b.prec_ && a.coeffs_ == b.coeffs_;
  }

  static int common_precision(const ZqElement& a, const ZqElement& b) {
    if (!a.params_->same_ring(*b.params_)) fail(ErrorKind::ParamsMismatch, "elements over different rings");
    return std::min(a.prec_, b.prec_);
  }

 private:
  ParamsRef params_;
  int prec_;
  RawElement coeffs_;
};

/// Result of comparing two elements of possibly different precision.
struct Comparison {
  bool equal;
  int precision;  ///< the modulus exponent the comparison was made at
};

inline Comparison compare(const ZqElement& a, const ZqElement& b) {
  return {a == b, ZqElement::common_precision(a, b)};
}

/// p-adic valuation. When u vanishes at its precision only a lower bound is known.
struct Valuation {
  int value;
  bool exact;  ///< false means "at least value" (u == 0 mod p^prec)

  friend bool operator==(const Valuation&, const Valuation&) = default;
};

inline Valuation valuation(const ZqElement& u) {
  if (u.is_zero()) return {u.precision(), false};
  int v = u.precision();
  for (const auto& c : u.coeffs()) v = std::min(v, integer::valuation(c, u.params()->p(), u.precision()));
  return {v, true};
}

/// Exact division by p^k; u must be divisible. The result loses k digits of precision.
inline ZqElement divide_by_p_power(const ZqElement& u, int k) {
  if (k == 0) return u;
  if (u.precision() <= k) fail(ErrorKind::PrecisionExhausted, "division by p^k exhausts the precision");
  const Int pk = u.params()->p_power(k);
  RawElement out;
  for (const auto& c : u.coeffs()) {
    if (c % pk != 0) fail(ErrorKind::DomainError, "element is not divisible by p^" + std::to_string(k));
    out.push_back(c / pk);
  }
  return ZqElement(u.params(), std::move(out), u.precision() - k);
}

/// p^k * u, which is known to k more digits (capped at N).
inline ZqElement multiply_by_p_power(const ZqElement& u, int k) {
  const int prec = std::min(u.precision() + k, u.params()->precision());
  return ZqElement(u.params(), u.params()->scale(u.coeffs(), u.params()->p_power(k), u.params()->p_power(prec)), prec);
}

/// The Frobenius lift phi(sum a_i g^i) = sum a_i phi(g)^i.
inline ZqElement frobenius(const ZqElement& u) {
  return ZqElement(u.params(), u.params()->frobenius(u.coeffs(), u.precision()), u.precision());
}

inline ZqElement frobenius_inv(const ZqElement& u) {
  return ZqElement(u.params(), u.params()->frobenius_inverse(u.coeffs(), u.precision()), u.precision());
}

/// phi^n for any integer n; phi has order f.
inline ZqElement frobenius_pow(const ZqElement& u, long n) {
  const long f = u.params()->f();
  long r = ((n % f) + f) % f;
  ZqElement out = u;
  if (r <= f / 2) {
    for (long i = 0; i < r; ++i) out = frobenius(out);
  } else {
    for (long i = r; i < f; ++i) out = frobenius_inv(out);
  }
  return out;
}

/// The Teichmuller lift: omega(a)^q = omega(a), omega(a) = a mod p.
inline ZqElement teichmuller(const FqElement& a, int prec) {
  return ZqElement(a.params(), a.params()->teichmuller(a.poly()), prec);
}

inline ZqElement teichmuller(const FqElement& a) { return teichmuller(a, a.params()->precision()); }

/// Expansion u = sum_i omega(c_i) p^i with residues c_i, one digit per unit of precision.
struct TeichmullerDigits {
  ParamsRef params;
  std::vector<FqElement> digits;

  int precision() const { return static_cast<int>(digits.size()); }
};

inline TeichmullerDigits digits(const ZqElement& u) {
  TeichmullerDigits out{u.params(), {}};
  const int prec = u.precision();
  ZqElement rest = u;
  for (int i = 0; i < prec; ++i) {
    FqElement c = rest.residue();
    out.digits.push_back(c);
    if (i + 1 == prec) break;
    rest = divide_by_p_power(rest - teichmuller(c, rest.precision()), 1);
  }
  return out;
}

inline ZqElement from_digits(const TeichmullerDigits& d) {
  const int prec = d.precision();
  if (prec < 1) fail(ErrorKind::PrecisionExhausted, "empty digit expansion");
  // Horner in p.
  RawElement raw(d.params->f());
  const Int mod = d.params->p_power(prec);
  for (int i = prec - 1; i >= 0; --i) {
    raw = d.params->scale(raw, Int(d.params->p()), mod);
    raw = d.params->add(raw, d.params->teichmuller(d.digits[i].poly()), mod);
  }
  return ZqElement(d.params, std::move(raw), prec);
}

}  // namespace adcalc
