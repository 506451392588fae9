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
#include <utility>
#include <vector>

#include "adcalc/error.hpp"
#include "adcalc/fp_poly.hpp"
#include "adcalc/params.hpp"

namespace adcalc {

/// An element of the residue field F_q = F_p[x]/(m mod p), stored as f coefficients in [0, p).
class FqElement {
 public:
  FqElement(ParamsRef params, std::vector<std::uint64_t> coeffs) : params_(std::move(params)) {
    const auto p = params_->p();
    fp::Poly poly;
    for (auto c : coeffs) poly.push_back(c % p);
    fp::trim(poly);
    set(fp::rem(poly, params_->residue_modulus(), p));
  }

  static FqElement zero(ParamsRef params) { return FqElement(std::move(params), {}); }
  static FqElement one(ParamsRef params) { return FqElement(std::move(params), {1}); }
  static FqElement from_integer(ParamsRef params, std::int64_t value) {
    const auto p = static_cast<std::int64_t>(params->p());
    const auto r = static_cast<std::uint64_t>(((value % p) + p) % p);
    return FqElement(std::move(params), {r});
  }
  /// Decodes index = sum c_i p^i; indices 0..q-1 enumerate the field.
  static FqElement from_index(ParamsRef params, std::uint64_t index) {
    std::vector<std::uint64_t> coeffs;
    for (int i = 0; i < params->f(); ++i) {
      coeffs.push_back(index % params->p());
      index /= params->p();
    }
    return FqElement(std::move(params), std::move(coeffs));
  }

  const ParamsRef& params() const noexcept { return params_; }
  /// Exactly f coefficients.
  const std::vector<std::uint64_t>& coeffs() const noexcept { return coeffs_; }
  fp::Poly poly() const {
    fp::Poly r(coeffs_.begin(), coeffs_.end());
    fp::trim(r);
    return r;
  }
  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](auto c) { return c == 0; });
  }
  std::uint64_t index() const {
    std::uint64_t idx = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) idx = idx * params_->p() + *it;
    return idx;
  }

  friend FqElement operator+(const FqElement& a, const FqElement& b) {
    check(a, b);
    return FqElement(a.params_, fp::add(a.poly(), b.poly(), a.params_->p()), Reduced{});
  }
  friend FqElement operator-(const FqElement& a, const FqElement& b) {
    check(a, b);
    return FqElement(a.params_, fp::sub(a.poly(), b.poly(), a.params_->p()), Reduced{});
  }
  friend FqElement operator*(const FqElement& a, const FqElement& b) {
    check(a, b);
    const auto& m = a.params_->residue_modulus();
    return FqElement(a.params_, fp::mulmod(a.poly(), b.poly(), m, a.params_->p()), Reduced{});
  }
  FqElement operator-() const { return zero(params_) - *this; }

  friend bool operator==(const FqElement& a, const FqElement& b) {
    return a.params_->same_ring(*b.params_) && a.coeffs_ == b.coeffs_;
  }

  FqElement pow(const Int& exp) const {
    return FqElement(params_, fp::powmod(poly(), exp, params_->residue_modulus(), params_->p()), Reduced{});
  }
  FqElement inverse() const {
    if (is_zero()) fail(ErrorKind::NonUnit, "zero has no inverse in F_q");
    return pow(params_->q() - 2);
  }
  /// Residue Frobenius a -> a^p.
  FqElement frobenius() const { return pow(Int(params_->p())); }
  /// Absolute trace to F_p: a + a^p + ... + a^{p^{f-1}}.
  std::uint64_t trace() const {
    FqElement acc = zero(params_);
    FqElement term = *this;
    for (int i = 0; i < params_->f(); ++i) {
      acc = acc + term;
      term = term.frobenius();
    }
    return acc.coeffs_[0];
  }

 private:
  struct Reduced {};
  FqElement(ParamsRef params, fp::Poly reduced, Reduced) : params_(std::move(params)) { set(reduced); }

  void set(const fp::Poly& reduced) {
    coeffs_.assign(params_->f(), 0);
    for (std::size_t i = 0; i < reduced.size(); ++i) coeffs_[i] = reduced[i];
  }

  static void check(const FqElement& a, const FqElement& b) {
    if (!a.params_->same_ring(*b.params_)) fail(ErrorKind::ParamsMismatch, "residue field elements over different rings");
  }

  ParamsRef params_;
  std::vector<std::uint64_t> coeffs_;
};

}  // namespace adcalc
