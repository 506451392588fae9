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

// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit if any fails.
//
//   acceptance                    run all criteria
//   acceptance --update-fixtures  rewrite the CLI golden outputs, then run

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "adcalc/adcalc.hpp"
#include "cli_fixtures.hpp"
#include "oracles.hpp"

using namespace adcalc;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Tally {
  long checks = 0;
  long failures = 0;
  std::string first;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      if (failures == 0) first = what;
      ++failures;
    }
  }
  Outcome outcome(const std::string& summary) const {
    std::string d = summary + ", " + std::to_string(checks) + " checks, " + std::to_string(failures) + " failures";
    if (failures > 0) d += " (first: " + first + ")";
    return {failures == 0, d};
  }
};

const std::vector<std::uint64_t> kPrimes{3, 5, 7};

Int binomial(std::uint64_t n, std::uint64_t k) {
  Int r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// 1. Digits round-trip and digit-wise Frobenius.
Outcome digits_frobenius() {
  auto params = make_params(5, 3, 20);
  Rng rng(101);
  Tally t;
  for (int i = 0; i < 200; ++i) {
    const ZqElement u = rng.unit(params);
    TeichmullerDigits d = digits(u);
    t.check(identical(from_digits(d), u), "round-trip #" + std::to_string(i));
    for (auto& c : d.digits) c = c.frobenius();
    t.check(identical(from_digits(d), frobenius(u)), "digit-wise Frobenius #" + std::to_string(i));
  }
  return t.outcome("p=5 f=3 N=20, 200 units");
}

// 2. phi^f = id and phi(u) = u^p mod p.
Outcome automorphism_laws() {
  Tally t;
  for (auto p : kPrimes) {
    for (int f = 1; f <= 3; ++f) {
      auto params = make_params(p, f, 16);
      Rng rng(200 + 10 * p + f);
      for (int i = 0; i < 200; ++i) {
        const ZqElement u = rng.element(params);
        const std::string tag = std::to_string(p) + "^" + std::to_string(f) + " #" + std::to_string(i);
        t.check(identical(frobenius_pow(u, f), u), "phi^f " + tag);
        t.check(frobenius(u).with_precision(1) == u.pow(Int(p)).with_precision(1), "phi mod p " + tag);
      }
    }
  }
  return t.outcome("(p, f) in {3,5,7}x{1,2,3}, N=16, 200 elements each");
}

// 3. Sum and product rules for delta modulo p^{N-1}.
Outcome delta_identities() {
  Tally t;
  const int n = 16;
  for (auto p : kPrimes) {
    for (int f = 1; f <= 3; ++f) {
      auto params = make_params(p, f, n);
      Rng rng(300 + 10 * p + f);
      const Int P(p);
      for (int i = 0; i < 200; ++i) {
        const ZqElement u = rng.element(params), v = rng.element(params);
        const ZqElement du = fermat_quotient(u), dv = fermat_quotient(v);
        ZqElement cross = ZqElement::zero(params);
        for (std::uint64_t k = 1; k < p; ++k) cross += (binomial(p, k) / P) * (u.pow(Int(k)) * v.pow(Int(p - k)));
        const ZqElement sum_rule = fermat_quotient(u + v) - (du + dv - cross);
        const ZqElement product_rule =
            fermat_quotient(u * v) - (u.pow(P) * dv + v.pow(P) * du + P * (du * dv));
        const std::string tag = std::to_string(p) + "^" + std::to_string(f) + " #" + std::to_string(i);
        t.check(sum_rule.with_precision(n - 1).is_zero(), "sum rule " + tag);
        t.check(product_rule.with_precision(n - 1).is_zero(), "product rule " + tag);
      }
    }
  }
  return t.outcome("(p, f) in {3,5,7}x{1,2,3}, N=16, 200 pairs each, mod p^15");
}

// 4. psi is a homomorphism; both computation paths agree.
Outcome psi_homomorphism() {
  const int n = 16;
  auto params = make_params(5, 2, n);
  Rng rng(400);
  Tally t;
  for (int i = 0; i < 200; ++i) {
    const ZqElement u = rng.unit(params), v = rng.unit(params);
    t.check((psi(u * v) - psi(u) - psi(v)).with_precision(n - 2).is_zero(), "homomorphism #" + std::to_string(i));
    t.check((psi_via_log(u) - psi_via_series(u)).with_precision(n - 1).is_zero(), "paths #" + std::to_string(i));
  }
  return t.outcome("p=5 f=2 N=16, 200 unit pairs, homomorphism mod p^14, paths mod p^15");
}

// 5. Closed-form base solution satisfies all three forms; every Teichmuller multiple verifies.
Outcome exponential_closed_form() {
  const int n = 12;
  Tally t;
  std::map<std::pair<std::uint64_t, int>, ParamsRef> rings;
  for (auto p : kPrimes)
    for (int f = 1; f <= 2; ++f) rings[{p, f}] = make_params(p, f, n);
  Rng rng(500);
  long members = 0;
  for (int i = 0; i < 100; ++i) {
    const auto p = kPrimes[i % 3];
    const int f = 1 + (i / 3) % 2;
    const ParamsRef& params = rings[{p, f}];
    const ExponentialProblem problem = ExponentialProblem::from_beta(rng.element(params));
    const SolutionFamily family = solve_exponential(problem);
    const ZqElement& u = family.base;
    const Int P(p);
    const std::string tag = std::to_string(p) + "^" + std::to_string(f) + " #" + std::to_string(i);
    t.check((frobenius(u) - problem.epsilon * u.pow(P)).with_precision(n - 1).is_zero(), "phi form " + tag);
    t.check((fermat_quotient(u) - problem.alpha * u.pow(P)).with_precision(n - 1).is_zero(), "delta form " + tag);
    t.check((psi(u) - problem.beta).with_precision(n - 1).is_zero(), "psi form " + tag);
    t.check(family.constants.size() + 1 == static_cast<std::size_t>(params->q()), "constant count " + tag);
    for (const auto& m : family.members()) {
      const ExponentialCertificate cert = verify_exponential(m, problem);
      t.check(cert.ok() && cert.target >= n - 1, "member " + tag);
      ++members;
    }
  }
  return t.outcome("100 beta over p in {3,5,7}, f in {1,2}, N=12, " + std::to_string(members) + " members");
}

// 6. Brute force over all units of Z/81 against the solver's family.
Outcome exhaustive_cross_check() {
  auto params = make_params(3, 1, 4);
  const auto units = oracle::all_units(params);
  Tally t;
  t.check(units.size() == 54, "unit count");
  Rng rng(600);
  for (int i = 0; i < 20; ++i) {
    const ZqElement alpha = rng.element(params, 3);
    std::set<Int> brute;
    for (const auto& u : units) {
      if ((fermat_quotient(u) - alpha * u.pow(3)).is_zero()) brute.insert(u.coeffs()[0]);
    }
    std::set<Int> solved;
    for (const auto& u : solve_exponential(ExponentialProblem::from_alpha(alpha)).members()) {
      solved.insert(u.with_precision(4).coeffs()[0]);
    }
    t.check(brute == solved && !brute.empty(), "alpha #" + std::to_string(i));
  }
  return t.outcome("p=3 f=1 N=4, 54 units, 20 alpha");
}

// 7. Difference equation at toy scale.
Outcome difference_equation() {
  Tally t;
  // (a) Full solution sets over Z_9 / 27 by enumeration, for eps = 1 and for norm-one eps.
  auto toy = make_params(3, 2, 3);
  const auto units = oracle::all_units(toy);
  std::set<std::vector<Int>> zp_units;
  for (const auto& u : units) {
    if (u.coeffs()[1] == 0) zp_units.insert(u.coeffs());
  }
  t.check(zp_units.size() == 18, "Z_p unit count");
  Rng rng(700);
  std::vector<ZqElement> eps_list{ZqElement::one(toy)};
  for (int i = 0; i < 5; ++i) {
    const ZqElement v = rng.unit(toy);
    eps_list.push_back(frobenius(v) * inv(v));
  }
  for (std::size_t e = 0; e < eps_list.size(); ++e) {
    const ZqElement& eps = eps_list[e];
    std::set<std::vector<Int>> brute;
    for (const auto& u : units) {
      if (frobenius(u) == eps * u) brute.insert(u.coeffs());
    }
    const DifferenceResult r = solve_difference(eps);
    const ZqElement* u0 = std::get_if<ZqElement>(&r);
    t.check(u0 != nullptr, "eps #" + std::to_string(e) + " solvable");
    if (!u0) continue;
    std::set<std::vector<Int>> orbit;
    for (const auto& c : zp_units) orbit.insert((*u0 * ZqElement(toy, c, 3)).coeffs());
    t.check(brute == orbit, "eps #" + std::to_string(e) + " solution set is u0 * Z_p^x");
    if (e == 0) t.check(brute == zp_units, "eps = 1 gives exactly the Z_p units");
  }

  // (b) Mod-p obstruction exactly for the non-squares of F_9.
  auto f9 = make_params(3, 2, 10);
  std::set<std::uint64_t> squares;
  for (std::uint64_t i = 1; i < 9; ++i) {
    const FqElement a = FqElement::from_index(f9, i);
    squares.insert((a * a).index());
  }
  for (std::uint64_t i = 1; i < 9; ++i) {
    const FqElement e = FqElement::from_index(f9, i);
    const DifferenceResult r = solve_difference(ZqElement::lift(e, 10));
    const auto* o = std::get_if<Obstruction>(&r);
    const bool mod_p = o && o->stage == Obstruction::Stage::ModP && o->recheck();
    t.check(mod_p == !squares.count(i), "residue " + std::to_string(i));
  }
  t.check(!squares.count(FqElement(f9, {0, 1}).index()), "generator is a non-square");

  // (c) Norm different from one never yields a solution.
  auto ring = make_params(3, 2, 6);
  int drawn = 0;
  while (drawn < 100) {
    const ZqElement eps = rng.unit(ring);
    if (frobenius_norm(eps) == ZqElement::one(ring)) continue;
    ++drawn;
    const DifferenceResult r = solve_difference(eps);
    const auto* o = std::get_if<Obstruction>(&r);
    t.check(o != nullptr && o->recheck(), "norm != 1 #" + std::to_string(drawn));
  }
  return t.outcome("enumeration over Z_9/27 for 6 eps, F_9 residues, 100 eps with norm != 1");
}

// 8. Matrix solver residual and the 1x1 case against the scalar family.
Outcome matrix_solver() {
  auto params = make_params(5, 1, 10);
  Rng rng(800);
  Tally t;
  for (int i = 0; i < 50; ++i) {
    MatrixOverZq beta{2, {}};
    for (int k = 0; k < 4; ++k) beta.entries.push_back(rng.element(params));
    const MatrixOverZq u = solve_matrix_linear(beta);
    bool ok = true;
    for (const auto& e : matrix_residual(beta, u).entries) ok = ok && e.with_precision(9).is_zero();
    t.check(ok, "2x2 #" + std::to_string(i));

    const ZqElement& alpha = beta.entries[0];
    const SolutionFamily family = solve_exponential(ExponentialProblem::from_alpha(alpha));
    for (const auto& zeta : family.constants) {
      const MatrixOverZq one = solve_matrix_linear(MatrixOverZq{1, {alpha}}, ResidueMatrix{1, {zeta.residue()}});
      t.check((one.entries[0] - zeta * family.base).with_precision(9).is_zero(), "1x1 #" + std::to_string(i));
    }
  }
  return t.outcome("p=5 N=10, 50 random 2x2 beta mod 5^9, 1x1 against all 4 family members");
}

// 9. Teichmuller anchors.
Outcome teichmuller_anchors() {
  Tally t;
  auto p5 = make_params(5, 1, 20);
  t.check(teichmuller(FqElement::from_integer(p5, 2)).with_precision(2).coeffs()[0] == 7, "omega(2) mod 25");
  for (auto p : kPrimes) {
    for (int f = 1; f <= 3; ++f) {
      auto params = make_params(p, f, 20);
      const std::string tag = std::to_string(p) + "^" + std::to_string(f);
      t.check(identical(teichmuller(FqElement::from_integer(params, -1)), ZqElement::from_integer(params, -1)),
              "omega(-1) " + tag);
      const Int q1 = params->q() - 1;
      for (std::uint64_t i = 1; i < params->q(); ++i) {
        t.check(identical(teichmuller(FqElement::from_index(params, i)).pow(q1), ZqElement::one(params)),
                "omega^(q-1) " + tag + " #" + std::to_string(i));
      }
    }
  }
  return t.outcome("omega(2)=7 mod 25, omega(-1)=-1, all omega(a)^(q-1)=1 for (p, f) in {3,5,7}x{1,2,3}, N=20");
}

// 10. Relation probe.
Outcome relation_probe() {
  Tally t;
  auto f9 = make_params(3, 2, 20);
  const ZqElement w = teichmuller(FqElement(f9, {0, 1}));
  const ProbeResult r = find_relation({{w}, 4, 1});
  t.check(r.certificate && r.certificate->monomials == std::vector<Monomial>{{4}, {0}} &&
              r.certificate->coeffs == std::vector<Int>{1, 1},
          "x^4 + 1 for omega(g)");
  if (r.certificate) t.check(verify_relation(*r.certificate, {w}, r.certificate->verified_precision), "x^4 + 1 re-verifies");

  auto ring = make_params(5, 2, 40);
  Rng rng(1000);
  int none = 0;
  for (int i = 0; i < 100; ++i) {
    const ZqElement u = rng.unit(ring);
    const ProbeResult probe = find_relation({{u}, 2, 10});
    if (!probe.certificate) {
      ++none;
    } else {
      t.check(verify_relation(*probe.certificate, {u}, probe.certificate->verified_precision),
              "random certificate re-verifies");
    }
  }
  t.check(none >= 95, "None for " + std::to_string(none) + " of 100 random units");

  // Shared-budget queries: tiny precision forces spurious relations, roots of unity and
  // integers give genuine ones.
  auto small = make_params(5, 1, 3);
  auto mid = make_params(3, 2, 4);
  int agree = 0, with_relation = 0;
  for (int i = 0; i < 50; ++i) {
    RelationQuery q;
    switch (i % 5) {
      case 0: q = {{rng.unit(small)}, 2, 2}; break;
      case 1: q = {{rng.unit(small), rng.element(small)}, 1, 2}; break;
      case 2: q = {{teichmuller(rng.nonzero_residue(mid))}, 4, 1}; break;
      case 3: q = {{rng.unit(mid)}, 2, 1}; break;
      default: q = {{ZqElement::from_integer(small, static_cast<long>(rng.below(7)) - 3)}, 1, 3}; break;
    }
    RelationQuery ql = q, qe = q;
    ql.mode = SearchMode::Lattice;
    qe.mode = SearchMode::Exhaustive;
    const ProbeResult a = find_relation(ql), b = find_relation(qe);
    bool same = a.certificate.has_value() == b.certificate.has_value();
    if (same && a.certificate) {
      same = a.certificate->monomials == b.certificate->monomials && a.certificate->coeffs == b.certificate->coeffs;
      t.check(verify_relation(*a.certificate, q.values, a.certificate->verified_precision), "lattice certificate");
      t.check(verify_relation(*b.certificate, q.values, b.certificate->verified_precision), "exhaustive certificate");
      ++with_relation;
    }
    agree += same;
    t.check(same, "modes agree on query #" + std::to_string(i));
  }
  return t.outcome("x^4+1 found, None for " + std::to_string(none) + "/100, modes agree on " + std::to_string(agree) +
                   "/50 (" + std::to_string(with_relation) + " with a relation)");
}

// 11. exp and log are inverse on their domains.
Outcome exp_log_inversion() {
  Tally t;
  for (auto p : kPrimes) {
    Rng rng(1100 + p);
    std::vector<ParamsRef> rings{make_params(p, 1, 16), make_params(p, 2, 16)};
    for (int i = 0; i < 200; ++i) {
      const ParamsRef& params = rings[i % 2];
      const ZqElement x = rng.multiple_of_p(params, 16);
      const ZqElement u = ZqElement::one(params) + rng.multiple_of_p(params, 16);
      const std::string tag = "p=" + std::to_string(p) + " #" + std::to_string(i);
      t.check(identical(padic_log(padic_exp(x)), x), "log(exp x) " + tag);
      t.check(identical(padic_exp(padic_log(u)), u), "exp(log u) " + tag);
    }
  }
  return t.outcome("p in {3,5,7}, f in {1,2}, N=16, 200 samples per prime, exact at N");
}

// 12. CLI golden fixtures.
Outcome cli_goldens() {
  Tally t;
  const auto cases = fixtures::load_cases();
  const std::set<std::string> subcommands{"digits", "delta", "jet", "log", "exp", "psi", "solve-mult",
                                          "solve-diff", "solve-matrix", "constants", "relations", "verify"};
  std::set<std::string> covered;
  std::set<int> codes;
  for (const auto& c : cases) {
    for (const auto& a : c.args) {
      if (subcommands.count(a)) {
        covered.insert(a);
        break;
      }
    }
    const auto first = fixtures::run(c);
    const auto second = fixtures::run(c);
    const std::string golden = fixtures::read_file(fixtures::golden_path(c));
    t.check(first.out == second.out && first.exit_code == second.exit_code, c.name + " deterministic");
    t.check(first.out == golden, c.name + " matches golden");
    t.check(first.exit_code == c.exit_code, c.name + " exit " + std::to_string(first.exit_code));
    codes.insert(first.exit_code);
  }
  t.check(cases.size() >= 12, "fixture count");
  t.check(covered == subcommands, "every subcommand has a fixture");
  t.check(codes == std::set<int>{0, 2, 3, 4, 5}, "every exit code exercised");
  return t.outcome(std::to_string(cases.size()) + " fixtures, " + std::to_string(covered.size()) +
                   " subcommands, exit codes {0,2,3,4,5}");
}

void update_fixtures() {
  for (const auto& c : fixtures::load_cases()) {
    const auto r = fixtures::run(c);
    std::ofstream(fixtures::golden_path(c), std::ios::binary) << r.out;
    std::cerr << c.name << ": exit " << r.exit_code << (r.err.empty() ? "" : ", " + r.err);
    if (r.err.empty()) std::cerr << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1 && std::string(argv[1]) == "--update-fixtures") update_fixtures();

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"digit/Frobenius compatibility", digits_frobenius},
      {"automorphism laws", automorphism_laws},
      {"delta identities", delta_identities},
      {"psi homomorphism", psi_homomorphism},
      {"exponential equation closed form", exponential_closed_form},
      {"exhaustive cross-check", exhaustive_cross_check},
      {"difference equation", difference_equation},
      {"matrix solver", matrix_solver},
      {"Teichmuller anchors", teichmuller_anchors},
      {"relation probe", relation_probe},
      {"exp/log inversion", exp_log_inversion},
      {"CLI determinism and exit codes", cli_goldens},
  };

  int failed = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << ": " << o.detail
              << " [" << timing << "]" << std::endl;
    failed += !o.pass;
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed in " << total << "s"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
