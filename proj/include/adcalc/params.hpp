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
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "adcalc/conway.hpp"
#include "adcalc/error.hpp"
#include "adcalc/fp_poly.hpp"
#include "adcalc/integer.hpp"

namespace adcalc {

/// Coefficients of an element of Z_q / p^k in the basis 1, g, ..., g^{f-1}.
using RawElement = std::vector<Int>;

/// Largest prime accepted; residue-field products must fit in 64 bits.
inline constexpr std::uint64_t kMaxPrime = (1ULL << 31) - 1;

class PadicParams;
using ParamsRef = std::shared_ptr<const PadicParams>;

/// The ambient ring Z_q / p^N with q = p^f, presented as (Z/p^N)[x]/(m).
///
/// Construction validates the prime and the defining polynomial and builds the
/// Frobenius tables eagerly; after that the object is immutable apart from the
/// internally synchronised Teichmuller cache, so it may be shared across threads.
class PadicParams {
 public:
  static ParamsRef create(std::uint64_t p, int f, int precision,
                          std::optional<std::vector<Int>> modulus = std::nullopt);

  std::uint64_t p() const noexcept { return p_; }
  int f() const noexcept { return f_; }
  int precision() const noexcept { return precision_; }
  /// Monic defining polynomial, lowest degree first, f + 1 entries.
  const std::vector<Int>& modulus() const noexcept { return modulus_; }
  const fp::Poly& residue_modulus() const noexcept { return residue_modulus_; }
  /// q = p^f, the size of the residue field.
  const Int& q() const noexcept { return q_; }

  /// p^k for any k >= 0.
  Int p_power(int k) const {
    if (k >= 0 && k < static_cast<int>(p_powers_.size())) return p_powers_[k];
    return integer::pow(Int(p_), static_cast<unsigned>(k));
  }

  bool same_ring(const PadicParams& other) const {
    return this == &other ||
           (p_ == other.p_ && f_ == other.f_ && precision_ == other.precision_ && modulus_ == other.modulus_);
  }

  // Raw arithmetic modulo (m, mod). Inputs need not be reduced; outputs are in [0, mod).
  RawElement reduce(RawElement a, const Int& mod) const;
  RawElement add(const RawElement& a, const RawElement& b, const Int& mod) const;
  RawElement sub(const RawElement& a, const RawElement& b, const Int& mod) const;
  RawElement mul(const RawElement& a, const RawElement& b, const Int& mod) const;
  RawElement scale(const RawElement& a, const Int& c, const Int& mod) const;
  RawElement pow(RawElement base, Int exp, const Int& mod) const;
  /// Inverse of a unit modulo p^k (Newton lift from the residue field).
  RawElement inverse(const RawElement& a, int k) const;
  RawElement residue_inverse(const fp::Poly& a) const;
  RawElement one() const;
  /// The class g of the variable.
  RawElement generator() const;

  /// phi(a) and phi^{-1}(a) modulo p^k through the cached power tables.
  RawElement frobenius(const RawElement& a, int k) const { return apply_table(frobenius_table_, a, k); }
  RawElement frobenius_inverse(const RawElement& a, int k) const {
    return apply_table(frobenius_inverse_table_, a, k);
  }

  /// Teichmuller lift of a residue (coefficients in [0, p)) at full precision N.
  RawElement teichmuller(const fp::Poly& residue) const;

 private:
  PadicParams() = default;
  RawElement apply_table(const std::vector<RawElement>& table, const RawElement& a, int k) const;
  void build_frobenius();

  std::uint64_t p_ = 0;
  int f_ = 0;
  int precision_ = 0;
  Int q_;
  std::vector<Int> modulus_;
  fp::Poly residue_modulus_;
  std::vector<Int> p_powers_;
  std::vector<RawElement> frobenius_table_;          // phi(g)^i, i < f
  std::vector<RawElement> frobenius_inverse_table_;  // phi^{-1}(g)^i, i < f

  mutable std::mutex teichmuller_mutex_;
  mutable std::map<fp::Poly, RawElement> teichmuller_cache_;
};

inline ParamsRef make_params(std::uint64_t p, int f, int precision,
                             std::optional<std::vector<Int>> modulus = std::nullopt) {
  return PadicParams::create(p, f, precision, std::move(modulus));
}

// ---------------------------------------------------------------------------

inline ParamsRef PadicParams::create(std::uint64_t p, int f, int precision,
                                     std::optional<std::vector<Int>> modulus) {
  if (!integer::is_prime(p)) fail(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (p > kMaxPrime) fail(ErrorKind::DomainError, "primes above 2^31 - 1 are not supported");
  if (f < 1) fail(ErrorKind::DomainError, "residue degree must be at least 1");
  if (precision < 2) fail(ErrorKind::PrecisionTooSmall, "working precision must be at least 2");

  std::shared_ptr<PadicParams> params(new PadicParams());
  params->p_ = p;
  params->f_ = f;
  params->precision_ = precision;
  params->q_ = integer::pow(Int(p), static_cast<unsigned>(f));
  for (int k = 0; k <= precision; ++k) params->p_powers_.push_back(integer::pow(Int(p), static_cast<unsigned>(k)));
  const Int& pN = params->p_powers_.back();

  if (modulus) {
    auto& m = *modulus;
    if (static_cast<int>(m.size()) != f + 1) {
      fail(ErrorKind::ReduciblePolynomial, "defining polynomial must have degree exactly f");
    }
    for (auto& c : m) c = integer::mod(c, pN);
    if (m.back() != 1) fail(ErrorKind::ReduciblePolynomial, "defining polynomial must be monic");
    params->modulus_ = m;
  } else {
    for (std::uint64_t c : default_defining_polynomial(p, f)) params->modulus_.emplace_back(c);
  }
  for (const auto& c : params->modulus_) {
    params->residue_modulus_.push_back(static_cast<std::uint64_t>(integer::mod(c, Int(p))));
  }
  if (!fp::is_irreducible(params->residue_modulus_, p)) {
    fail(ErrorKind::ReduciblePolynomial, "defining polynomial is reducible modulo p");
  }
  // Irreducible over a finite field already implies separable; checked anyway as the
  // Frobenius Newton lift divides by m'.
  if (fp::degree(fp::gcd(params->residue_modulus_, fp::derivative(params->residue_modulus_, p), p)) != 0) {
    fail(ErrorKind::ReduciblePolynomial, "defining polynomial is not separable modulo p");
  }
  params->build_frobenius();
  return params;
}

inline RawElement PadicParams::reduce(RawElement a, const Int& mod) const {
  a.resize(f_);
  for (auto& c : a) c = integer::mod(c, mod);
  return a;
}

inline RawElement PadicParams::add(const RawElement& a, const RawElement& b, const Int& mod) const {
  RawElement r(f_);
  for (int i = 0; i < f_; ++i) r[i] = integer::mod(a[i] + b[i], mod);
  return r;
}

inline RawElement PadicParams::sub(const RawElement& a, const RawElement& b, const Int& mod) const {
  RawElement r(f_);
  for (int i = 0; i < f_; ++i) r[i] = integer::mod(a[i] - b[i], mod);
  return r;
}

inline RawElement PadicParams::scale(const RawElement& a, const Int& c, const Int& mod) const {
  RawElement r(f_);
  for (int i = 0; i < f_; ++i) r[i] = integer::mod(a[i] * c, mod);
  return r;
}

inline RawElement PadicParams::mul(const RawElement& a, const RawElement& b, const Int& mod) const {
  std::vector<Int> prod(2 * f_ - 1);
  for (int i = 0; i < f_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < f_; ++j) prod[i + j] += a[i] * b[j];
  }
  for (int k = 2 * f_ - 2; k >= f_; --k) {
    const Int c = integer::mod(prod[k], mod);
    if (c == 0) continue;
    for (int j = 0; j < f_; ++j) prod[k - f_ + j] -= c * modulus_[j];
  }
  prod.resize(f_);
  return reduce(std::move(prod), mod);
}

inline RawElement PadicParams::pow(RawElement base, Int exp, const Int& mod) const {
  RawElement result = reduce(one(), mod);
  while (exp > 0) {
    if ((exp & 1) != 0) result = mul(result, base, mod);
    exp >>= 1;
    if (exp > 0) base = mul(base, base, mod);
  }
  return result;
}

inline RawElement PadicParams::one() const {
  RawElement r(f_);
  r[0] = 1;
  return r;
}

inline RawElement PadicParams::generator() const {
  RawElement g(f_);
  if (f_ == 1) {
    g[0] = integer::mod(-modulus_[0], p_powers_.back());
  } else {
    g[1] = 1;
  }
  return g;
}

inline RawElement PadicParams::residue_inverse(const fp::Poly& a) const {
  fp::Poly r = fp::rem(a, residue_modulus_, p_);
  if (r.empty()) fail(ErrorKind::NonUnit, "element is not a unit (zero modulo p)");
  const fp::Poly inv = fp::powmod(r, q_ - 2, residue_modulus_, p_);
  RawElement out(f_);
  for (std::size_t i = 0; i < inv.size(); ++i) out[i] = inv[i];
  return out;
}

inline RawElement PadicParams::inverse(const RawElement& a, int k) const {
  fp::Poly residue;
  for (const auto& c : a) residue.push_back(static_cast<std::uint64_t>(integer::mod(c, Int(p_))));
  fp::trim(residue);
  RawElement x = residue_inverse(residue);
  // Newton: x <- x (2 - a x) doubles the number of correct digits.
  for (int known = 1; known < k;) {
    known = std::min(2 * known, k);
    const Int mod = p_power(known);
    RawElement ax = mul(a, x, mod);
    RawElement two_minus = sub(scale(one(), Int(2), mod), ax, mod);
    x = mul(x, two_minus, mod);
  }
  return reduce(std::move(x), p_power(k));
}

inline RawElement PadicParams::apply_table(const std::vector<RawElement>& table, const RawElement& a, int k) const {
  const Int mod = p_power(k);
  std::vector<Int> acc(f_);
  for (int i = 0; i < f_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < f_; ++j) acc[j] += a[i] * table[i][j];
  }
  return reduce(std::move(acc), mod);
}

inline void PadicParams::build_frobenius() {
  const Int& pN = p_powers_.back();
  const RawElement g = generator();

  // Hensel/Newton lift of the root of m congruent to g^p: y <- y - m(y) / m'(y).
  RawElement y = pow(g, Int(p_), pN);
  auto eval_modulus = [&](const RawElement& at) {
    RawElement acc(f_);
    for (int i = f_; i >= 0; --i) {
      acc = mul(acc, at, pN);
      acc[0] = integer::mod(acc[0] + modulus_[i], pN);
    }
    return acc;
  };
  auto eval_derivative = [&](const RawElement& at) {
    RawElement acc(f_);
    for (int i = f_; i >= 1; --i) {
      acc = mul(acc, at, pN);
      acc[0] = integer::mod(acc[0] + modulus_[i] * i, pN);
    }
    return acc;
  };
  for (int iter = 0; iter < 2 * precision_ + 8; ++iter) {
    const RawElement value = eval_modulus(y);
    if (std::all_of(value.begin(), value.end(), [](const Int& c) { return c == 0; })) break;
    y = sub(y, mul(value, inverse(eval_derivative(y), precision_), pN), pN);
  }

  auto power_table = [&](const RawElement& image) {
    std::vector<RawElement> table{reduce(one(), pN)};
    for (int i = 1; i < f_; ++i) table.push_back(mul(table.back(), image, pN));
    return table;
  };
  frobenius_table_ = power_table(y);

  // phi has order f on Z_q, so phi^{-1}(g) = phi^{f-1}(g).
  RawElement inv_image = g;
  for (int i = 0; i < f_ - 1; ++i) inv_image = frobenius(inv_image, precision_);
  frobenius_inverse_table_ = power_table(inv_image);
}

inline RawElement PadicParams::teichmuller(const fp::Poly& residue) const {
  fp::Poly key = fp::rem(residue, residue_modulus_, p_);
  {
    std::lock_guard lock(teichmuller_mutex_);
    if (auto it = teichmuller_cache_.find(key); it != teichmuller_cache_.end()) return it->second;
  }
  const Int& pN = p_powers_.back();
  RawElement x(f_);
  for (std::size_t i = 0; i < key.size(); ++i) x[i] = key[i];
  if (!key.empty()) {
    // x <- x^q gains one p-adic digit per step; stops once stable.
    for (int iter = 0; iter <= precision_; ++iter) {
      RawElement next = pow(x, q_, pN);
      if (next == x) break;
      x = std::move(next);
    }
  }
  std::lock_guard lock(teichmuller_mutex_);
  teichmuller_cache_.emplace(std::move(key), x);
  return x;
}

}  // namespace adcalc
