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

// Command-line front end. `run` is the whole program; main() only forwards argv, so the
// golden-fixture tests drive it in-process.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "adcalc/adcalc.hpp"
#include "adcalc/serialize.hpp"

namespace adcalc::cli {

using Json = json::Json;

enum ExitCode : int {
  kOk = 0,
  kDomainError = 2,
  kUnsolvable = 3,
  kPrecisionExhausted = 4,
  kBudgetExceeded = 5,
};

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PrecisionExhausted: return kPrecisionExhausted;
    case ErrorKind::BudgetExceeded: return kBudgetExceeded;
    default: return kDomainError;
  }
}

struct Config {
  std::uint64_t p = 0;
  int f = 1;
  int prec = 20;
  std::optional<std::string> poly;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::size_t budget_monomials = 64;
  std::string budget_height = "1000000";
};

namespace detail {

inline Json read_json(const std::string& arg, std::istream& in) {
  std::string text;
  if (arg == "-") {
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  } else {
    Json parsed = Json::parse(arg, nullptr, false);
    if (!parsed.is_discarded()) return parsed;
    std::ifstream file(arg);
    if (!file) fail(ErrorKind::ParseError, "neither JSON nor a readable file: " + arg);
    std::stringstream buf;
    buf << file.rdbuf();
    text = buf.str();
  }
  Json parsed = Json::parse(text, nullptr, false);
  if (parsed.is_discarded()) fail(ErrorKind::ParseError, "malformed JSON input");
  return parsed;
}

inline std::vector<ZqElement> element_list(const ParamsRef& params, const Json& j) {
  if (!j.is_array()) fail(ErrorKind::ParseError, "expected an array of elements");
  std::vector<ZqElement> out;
  for (const auto& e : j) out.push_back(json::element(params, e));
  return out;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
  CLI::App app{"Exact arithmetic differential calculus over truncated unramified p-adic rings"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--p", cfg.p, "prime p")->required();
  app.add_option("--f", cfg.f, "residue degree f")->capture_default_str();
  app.add_option("--prec", cfg.prec, "working precision N (arithmetic modulo p^N)")->capture_default_str();
  app.add_option("--poly", cfg.poly, "defining polynomial as a JSON array, lowest degree first");
  app.add_option("--seed", cfg.seed, "seed for randomized subcommands");
  app.add_option("--format", cfg.format, "element output format")->check(CLI::IsMember({"json", "digits"}))
      ->capture_default_str();
  app.add_option("--budget-monomials", cfg.budget_monomials, "relation search: maximum monomial count")
      ->capture_default_str();
  app.add_option("--budget-height", cfg.budget_height, "relation search: maximum height bound")
      ->capture_default_str();

  std::string element_arg;
  auto* digits_cmd = app.add_subcommand("digits", "Teichmuller digits of an element, or the element of a digit object");
  digits_cmd->add_option("element", element_arg)->required();
  auto* delta_cmd = app.add_subcommand("delta", "Fermat quotient delta(u) = (phi(u) - u^p) / p");
  delta_cmd->add_option("element", element_arg)->required();
  int jet_order = 1;
  auto* jet_cmd = app.add_subcommand("jet", "delta-jet [u, delta u, ..., delta^r u]");
  jet_cmd->add_option("element", element_arg)->required();
  jet_cmd->add_option("--order", jet_order)->capture_default_str();
  auto* log_cmd = app.add_subcommand("log", "p-adic logarithm on 1 + pZ_q");
  log_cmd->add_option("element", element_arg)->required();
  auto* exp_cmd = app.add_subcommand("exp", "p-adic exponential on pZ_q");
  exp_cmd->add_option("element", element_arg)->required();
  auto* psi_cmd = app.add_subcommand("psi", "psi(u) = (1/p) log(phi(u) / u^p)");
  psi_cmd->add_option("element", element_arg)->required();

  std::optional<std::string> beta_arg, alpha_arg;
  auto* mult_cmd = app.add_subcommand("solve-mult", "solve psi(u) = beta (equivalently delta u = alpha u^p)");
  auto* beta_opt = mult_cmd->add_option("--beta", beta_arg);
  mult_cmd->add_option("--alpha", alpha_arg)->excludes(beta_opt);

  std::string eps_arg;
  auto* diff_cmd = app.add_subcommand("solve-diff", "solve phi(u) = eps u");
  diff_cmd->add_option("--eps", eps_arg)->required();

  std::string matrix_beta_arg;
  std::optional<std::string> seed_matrix_arg;
  auto* matrix_cmd = app.add_subcommand("solve-matrix", "solve delta u = beta u^(p) from a seed in GL_n(F_q)");
  matrix_cmd->add_option("--beta", matrix_beta_arg)->required();
  matrix_cmd->add_option("--u0", seed_matrix_arg, "seed matrix of residues (default: identity)");

  auto* constants_cmd = app.add_subcommand("constants", "the q - 1 Teichmuller units (delta u = 0)");

  std::string values_arg;
  unsigned degree = 1;
  std::string height = "1";
  std::string mode = "lattice";
  std::optional<int> search_prec;
  std::optional<int> random_trials;
  bool minimal = false;
  auto* rel_cmd = app.add_subcommand("relations", "bounded integer-relation search among values");
  auto* values_opt = rel_cmd->add_option("--values", values_arg, "JSON array of elements");
  rel_cmd->add_option("--degree", degree)->capture_default_str();
  rel_cmd->add_option("--height", height)->capture_default_str();
  rel_cmd->add_option("--mode", mode)->check(CLI::IsMember({"lattice", "exhaustive"}))->capture_default_str();
  rel_cmd->add_option("--precision", search_prec, "search precision M");
  rel_cmd->add_flag("--minimal", minimal, "minimal polynomial of the single value");
  rel_cmd->add_option("--random-trials", random_trials, "probe this many seeded random units instead")
      ->excludes(values_opt);

  std::optional<std::string> cert_arg, solution_arg, property_arg;
  std::optional<int> verify_k;
  int trials = 100;
  auto* verify_cmd = app.add_subcommand("verify", "verify a relation, a solution, or seeded properties");
  verify_cmd->add_option("--relation", cert_arg, "relation certificate (with --values)");
  verify_cmd->add_option("--values", values_arg);
  verify_cmd->add_option("--k", verify_k);
  verify_cmd->add_option("--solution", solution_arg, "candidate solution (with --beta)");
  verify_cmd->add_option("--beta", beta_arg);
  verify_cmd->add_option("--property", property_arg, "ring|frobenius|delta|psi|explog|all");
  verify_cmd->add_option("--trials", trials)->capture_default_str();

  try {
    // CLI11 consumes its argument vector from the back.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }

  try {
    std::optional<std::vector<Int>> poly;
    if (cfg.poly) {
      poly.emplace();
      for (const auto& c : detail::read_json(*cfg.poly, in)) poly->push_back(json::int_from_json(c));
    }
    const ParamsRef params = make_params(cfg.p, cfg.f, cfg.prec, poly);
    auto render = [&](const ZqElement& u) {
      return cfg.format == "digits" ? json::digits(digits(u)) : json::element(u);
    };
    auto read_element = [&](const std::string& arg) { return json::element(params, detail::read_json(arg, in)); };
    auto require_seed = [&]() -> std::uint64_t {
      if (!cfg.seed) fail(ErrorKind::DomainError, "randomized subcommands require an explicit --seed");
      return *cfg.seed;
    };
    SearchBudget budget;
    budget.max_monomials = cfg.budget_monomials;
    budget.max_height = Int(cfg.budget_height);

    Json result;
    int code = kOk;

    if (*digits_cmd) {
      const Json input = detail::read_json(element_arg, in);
      if (input.is_object() && input.contains("digits")) {
        result = json::element(from_digits(json::digits(params, input)));
      } else {
        result = json::digits(digits(json::element(params, input)));
      }
    } else if (*delta_cmd) {
      result = render(fermat_quotient(read_element(element_arg)));
    } else if (*jet_cmd) {
      Json entries = Json::array();
      for (const auto& e : delta_jet(read_element(element_arg), jet_order).entries) entries.push_back(render(e));
      result = Json{{"order", jet_order}, {"jet", entries}};
    } else if (*log_cmd) {
      result = render(padic_log(read_element(element_arg)));
    } else if (*exp_cmd) {
      result = render(padic_exp(read_element(element_arg)));
    } else if (*psi_cmd) {
      result = render(psi(read_element(element_arg)));
    } else if (*mult_cmd) {
      if (!beta_arg && !alpha_arg) fail(ErrorKind::DomainError, "solve-mult needs --beta or --alpha");
      const ExponentialProblem problem = beta_arg ? ExponentialProblem::from_beta(read_element(*beta_arg))
                                                  : ExponentialProblem::from_alpha(read_element(*alpha_arg));
      const SolutionFamily family = solve_exponential(problem);
      Json members = Json::array();
      for (const auto& u : family.members()) members.push_back(render(u));
      const ExponentialCertificate cert = verify_exponential(family.base, problem);
      Json cert_json = json::exponential_certificate(cert);
      cert_json["constants_count"] = family.constants.size();
      result = Json{{"problem", Json{{"beta", render(problem.beta)},
                                     {"epsilon", render(problem.epsilon)},
                                     {"alpha", render(problem.alpha)}}},
                    {"base", render(family.base)},
                    {"members", members},
                    {"certificate", cert_json}};
    } else if (*diff_cmd) {
      const ZqElement eps = read_element(eps_arg);
      const DifferenceResult solved = solve_difference(eps);
      if (const auto* u = std::get_if<ZqElement>(&solved)) {
        result = Json{{"solution", render(*u)}, {"norm_is_one", true}};
      } else {
        result = Json{{"obstruction", json::obstruction(std::get<Obstruction>(solved))}};
        code = kUnsolvable;
      }
    } else if (*matrix_cmd) {
      const MatrixOverZq beta = json::matrix(params, detail::read_json(matrix_beta_arg, in));
      const ResidueMatrix seed = seed_matrix_arg
                                     ? json::residue_matrix(params, detail::read_json(*seed_matrix_arg, in))
                                     : ResidueMatrix::identity(params, beta.n);
      const MatrixOverZq u = solve_matrix_linear(beta, seed);
      Json seed_json = Json::array();
      for (std::size_t i = 0; i < seed.n; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < seed.n; ++j) row.push_back(json::residue(seed.entries[i * seed.n + j]));
        seed_json.push_back(row);
      }
      result = Json{{"solution", json::matrix(u)},
                    {"seed", seed_json},
                    {"residual_precision", matrix_residual_precision(beta, u)}};
    } else if (*constants_cmd) {
      Json list = Json::array();
      for (const auto& z : enumerate_constants(params)) list.push_back(render(z));
      result = Json{{"count", list.size()}, {"constants", list}};
    } else if (*rel_cmd) {
      const SearchMode search_mode = mode == "exhaustive" ? SearchMode::Exhaustive : SearchMode::Lattice;
      if (random_trials) {
        Rng rng(require_seed());
        const int prec = search_prec.value_or(params->precision());
        int none = 0;
        Json found = Json::array();
        for (int t = 0; t < *random_trials; ++t) {
          RelationQuery query{{rng.unit(params, prec)}, degree, Int(height), search_mode, prec, budget};
          const ProbeResult r = find_relation(query);
          if (r.certificate) {
            found.push_back(Json{{"trial", t}, {"relation", json::certificate(*r.certificate)}});
          } else {
            ++none;
          }
        }
        result = Json{{"trials", *random_trials}, {"none", none}, {"found", found}};
      } else {
        if (values_arg.empty()) fail(ErrorKind::DomainError, "relations needs --values or --random-trials");
        const auto values = detail::element_list(params, detail::read_json(values_arg, in));
        if (minimal && values.size() != 1) fail(ErrorKind::DomainError, "--minimal takes exactly one value");
        RelationQuery query{values, degree, Int(height), search_mode, search_prec, budget};
        result = json::probe(find_relation(query));
      }
    } else if (*verify_cmd) {
      if (cert_arg) {
        const RelationCertificate cert = json::certificate(detail::read_json(*cert_arg, in));
        const auto values = detail::element_list(params, detail::read_json(values_arg, in));
        int common = values.empty() ? 0 : values.front().precision();
        for (const auto& v : values) common = std::min(common, v.precision());
        const int k = verify_k.value_or(cert.verified_precision > 0 ? std::min(cert.verified_precision, common) : common);
        result = Json{{"verified", verify_relation(cert, values, k)}, {"k", k}};
      } else if (solution_arg) {
        if (!beta_arg) fail(ErrorKind::DomainError, "verify --solution needs --beta");
        const ExponentialCertificate cert =
            verify_exponential(read_element(*solution_arg), ExponentialProblem::from_beta(read_element(*beta_arg)));
        result = json::exponential_certificate(cert);
      } else if (property_arg) {
        // Fetch the seed first: a throw inside a json initializer list leaks the built entries.
        const std::uint64_t seed = require_seed();
        result = Json{{"seed", seed}, {"trials", trials}, {"properties", Json::array()}};
        Rng rng(seed);
        const std::string& which = *property_arg;
        auto add = [&](const std::string& name, auto&& check) {
          if (which != "all" && which != name) return;
          int failures = 0;
          for (int t = 0; t < trials; ++t) {
            if (!check()) ++failures;
          }
          result["properties"].push_back(Json{{"name", name}, {"failures", failures}});
        };
        const Int p(params->p());
        const int n = params->precision();
        add("ring", [&] {
          const ZqElement a = rng.element(params), b = rng.element(params), c = rng.element(params);
          return (a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c && a * b == b * a;
        });
        add("frobenius", [&] {
          const ZqElement a = rng.element(params), b = rng.element(params);
          return frobenius(a * b) == frobenius(a) * frobenius(b) && frobenius(a + b) == frobenius(a) + frobenius(b) &&
                 frobenius_pow(a, params->f()) == a && frobenius_inv(frobenius(a)) == a &&
                 frobenius(a).with_precision(1) == a.pow(p).with_precision(1);
        });
        add("delta", [&] {
          const ZqElement a = rng.element(params), b = rng.element(params);
          const ZqElement da = fermat_quotient(a), db = fermat_quotient(b);
          return fermat_quotient(a * b) == a.pow(p) * db + b.pow(p) * da + p * (da * db) &&
                 frobenius(a) == a.pow(p) + p * da;
        });
        if (params->p() != 2) {
          add("psi", [&] {
            const ZqElement a = rng.unit(params), b = rng.unit(params);
            return (psi(a * b) - psi(a) - psi(b)).with_precision(n - 1).is_zero();
          });
          add("explog", [&] {
            const ZqElement x = rng.multiple_of_p(params, n);
            const ZqElement u = ZqElement::one(params) + rng.multiple_of_p(params, n);
            return identical(padic_log(padic_exp(x)), x) && identical(padic_exp(padic_log(u)), u);
          });
        }
        if (result["properties"].empty()) fail(ErrorKind::DomainError, "unknown property: " + which);
      } else {
        fail(ErrorKind::DomainError, "verify needs --relation, --solution or --property");
      }
    }

    out << result.dump(2) << "\n";
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
}

inline int run(int argc, char** argv) {
  return run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr, std::cin);
}

}  // namespace adcalc::cli
