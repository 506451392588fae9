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

// Seeded sampling. Only the raw mt19937_64 stream is used (its output is fixed by the
// standard), so sequences are identical across platforms and standard libraries.

#include <cstdint>
#include <random>
#include <vector>

#include "adcalc/fq.hpp"
#include "adcalc/zq.hpp"

namespace adcalc {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, bound), bound >= 1, by rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  FqElement residue(const ParamsRef& params) {
    std::vector<std::uint64_t> c;
    for (int i = 0; i < params->f(); ++i) c.push_back(below(params->p()));
    return FqElement(params, std::move(c));
  }

  FqElement nonzero_residue(const ParamsRef& params) {
    for (;;) {
      FqElement a = residue(params);
      if (!a.is_zero()) return a;
    }
  }

  /// Uniform element of Z_q / p^prec, drawn digit by digit in base p.
  ZqElement element(const ParamsRef& params, int prec) {
    RawElement raw(params->f());
    for (auto& c : raw) {
      Int acc = 0;
      for (int k = 0; k < prec; ++k) acc = acc * params->p() + below(params->p());
      c = acc;
    }
    return ZqElement(params, std::move(raw), prec);
  }
  ZqElement element(const ParamsRef& params) { return element(params, params->precision()); }

  ZqElement unit(const ParamsRef& params, int prec) {
    for (;;) {
      ZqElement u = element(params, prec);
      if (u.is_unit()) return u;
    }
  }
  ZqElement unit(const ParamsRef& params) { return unit(params, params->precision()); }

  /// Uniform element of p Z_q / p^prec.
  ZqElement multiple_of_p(const ParamsRef& params, int prec) {
    return multiply_by_p_power(element(params, prec - 1), 1).with_precision(prec);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace adcalc
