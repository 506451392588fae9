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

// Solves psi(u) = beta over Z_9 / 3^12 and prints the solution family.

#include <iostream>

#include "adcalc/adcalc.hpp"
#include "adcalc/serialize.hpp"

int main() {
  using namespace adcalc;
  const ParamsRef params = make_params(3, 2, 12);
  const ZqElement beta = ZqElement::generator(params) + ZqElement::from_integer(params, 4);
  const ExponentialProblem problem = ExponentialProblem::from_beta(beta);
  const SolutionFamily family = solve_exponential(problem);

  std::cout << "base: " << json::element(family.base).dump() << "\n";
  for (const auto& u : family.members()) {
    const ExponentialCertificate cert = verify_exponential(u, problem);
    std::cout << (cert.ok() ? "ok  " : "FAIL") << " delta-form residual valuation " << cert.delta_form << "\n";
  }
  // alpha, the coefficient of the equivalent form delta u = alpha u^p.
  std::cout << "alpha: " << json::element(problem.alpha).dump() << "\n";
}
