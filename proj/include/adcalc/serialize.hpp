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

// JSON forms of elements, digit expansions, series, certificates and obstructions.
// Large integers travel as decimal strings; keys keep a fixed order so output is stable.

#include <json.hpp>

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "adcalc/delta.hpp"
#include "adcalc/error.hpp"
#include "adcalc/relations.hpp"
#include "adcalc/solvers.hpp"
#include "adcalc/zq.hpp"

namespace adcalc::json {

using Json = nlohmann::ordered_json;

inline Json int_to_json(const Int& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(x);
  }
  return x.str();
}

inline Int int_from_json(const Json& j) {
  try {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) return Int(j.get<std::string>());
  } catch (const std::exception&) {
  }
  fail(ErrorKind::ParseError, "expected an integer or decimal string, got " + j.dump());
}

inline Json element(const ZqElement& u) {
  const auto& params = *u.params();
  Json poly = Json::array();
  for (const auto& c : params.modulus()) poly.push_back(int_to_json(c));
  Json coeffs = Json::array();
  for (const auto& c : u.coeffs()) coeffs.push_back(c.str());
  return Json{{"p", params.p()}, {"f", params.f()}, {"prec", u.precision()}, {"poly", poly}, {"coeffs", coeffs}};
}

namespace detail {

inline void check_ring(const ParamsRef& params, const Json& j) {
  if (j.contains("p") && j.at("p").get<std::uint64_t>() != params->p()) {
    fail(ErrorKind::ParamsMismatch, "element has a different prime");
  }
  if (j.contains("f") && j.at("f").get<int>() != params->f()) {
    fail(ErrorKind::ParamsMismatch, "element has a different residue degree");
  }
  if (j.contains("poly")) {
    const auto& poly = j.at("poly");
    if (!poly.is_array() || poly.size() != params->modulus().size()) {
      fail(ErrorKind::ParamsMismatch, "element has a different defining polynomial");
    }
    for (std::size_t i = 0; i < poly.size(); ++i) {
      if (integer::mod(int_from_json(poly[i]), params->p_power(params->precision())) != params->modulus()[i]) {
        fail(ErrorKind::ParamsMismatch, "element has a different defining polynomial");
      }
    }
  }
}

}  // namespace detail

/// Accepts the canonical object, an array of up to f coefficients, or a bare integer.
/// The short forms are read at the working precision N.
inline ZqElement element(const ParamsRef& params, const Json& j) {
  try {
    int prec = params->precision();
    const Json* coeffs = &j;
    if (j.is_object()) {
      detail::check_ring(params, j);
      if (!j.contains("coeffs")) fail(ErrorKind::ParseError, "element object lacks \"coeffs\"");
      if (j.contains("prec")) prec = j.at("prec").get<int>();
      coeffs = &j.at("coeffs");
    }
    RawElement raw(params->f());
    if (coeffs->is_array()) {
      if (coeffs->size() > static_cast<std::size_t>(params->f())) {
        fail(ErrorKind::ParseError, "more than f coefficients");
      }
      for (std::size_t i = 0; i < coeffs->size(); ++i) raw[i] = int_from_json((*coeffs)[i]);
    } else {
      raw[0] = int_from_json(*coeffs);
    }
    return ZqElement(params, std::move(raw), prec);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, e.what());
  }
}

inline Json residue(const FqElement& a) {
  Json out = Json::array();
  for (auto c : a.coeffs()) out.push_back(c);
  return out;
}

inline FqElement residue(const ParamsRef& params, const Json& j) {
  try {
    std::vector<std::uint64_t> c;
    auto take = [&](const Json& x) {
      const Int v = integer::mod(int_from_json(x), Int(params->p()));
      c.push_back(static_cast<std::uint64_t>(v));
    };
    if (j.is_array()) {
      if (j.size() > static_cast<std::size_t>(params->f())) fail(ErrorKind::ParseError, "more than f residues");
      for (const auto& x : j) take(x);
    } else {
      take(j);
    }
    return FqElement(params, std::move(c));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, e.what());
  }
}

inline Json digits(const TeichmullerDigits& d) {
  Json ds = Json::array();
  for (const auto& c : d.digits) ds.push_back(residue(c));
  return Json{{"p", d.params->p()}, {"f", d.params->f()}, {"prec", d.precision()}, {"digits", ds}};
}

inline TeichmullerDigits digits(const ParamsRef& params, const Json& j) {
  try {
    detail::check_ring(params, j);
    TeichmullerDigits d{params, {}};
    for (const auto& c : j.at("digits")) d.digits.push_back(residue(params, c));
    if (j.contains("prec") && j.at("prec").get<int>() != d.precision()) {
      fail(ErrorKind::ParseError, "digit count differs from prec");
    }
    return d;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, e.what());
  }
}

inline Json series(const RestrictedSeries& s) {
  Json terms = Json::array();
  for (const auto& t : s.terms) terms.push_back(Json{{"exponents", t.exponents}, {"coeff", element(t.coeff)}});
  Json out{{"order", s.order}, {"arity", s.arity}, {"terms", terms}};
  if (s.base_denominator) out["base_denominator"] = true;
  return out;
}

inline RestrictedSeries series(const ParamsRef& params, const Json& j) {
  try {
    RestrictedSeries s;
    s.order = j.at("order").get<int>();
    s.arity = j.at("arity").get<int>();
    s.base_denominator = j.value("base_denominator", false);
    for (const auto& t : j.at("terms")) {
      s.terms.push_back({t.at("exponents").get<std::vector<unsigned>>(), element(params, t.at("coeff"))});
    }
    s.validate();
    return s;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, e.what());
  }
}

inline Json certificate(const RelationCertificate& c) {
  Json coeffs = Json::array();
  for (const auto& x : c.coeffs) coeffs.push_back(int_to_json(x));
  return Json{{"monomials", c.monomials},
              {"coeffs", coeffs},
              {"verified_precision", c.verified_precision},
              {"bounds", Json{{"d", c.degree_bound}, {"H", int_to_json(c.height_bound)}, {"M", c.search_precision}}},
              {"mode", to_string(c.mode)},
              {"status", c.status}};
}

inline RelationCertificate certificate(const Json& j) {
  try {
    RelationCertificate c;
    c.monomials = j.at("monomials").get<std::vector<Monomial>>();
    for (const auto& x : j.at("coeffs")) c.coeffs.push_back(int_from_json(x));
    if (c.coeffs.size() != c.monomials.size()) fail(ErrorKind::ParseError, "coeffs and monomials differ in length");
    c.verified_precision = j.value("verified_precision", 0);
    if (j.contains("bounds")) {
      const auto& b = j.at("bounds");
      c.degree_bound = b.value("d", 0u);
      if (b.contains("H")) c.height_bound = int_from_json(b.at("H"));
      c.search_precision = b.value("M", 0);
    }
    c.mode = j.value("mode", std::string("lattice")) == "exhaustive" ? SearchMode::Exhaustive : SearchMode::Lattice;
    return c;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, e.what());
  }
}

inline Json probe(const ProbeResult& r) {
  Json out{{"relation", r.certificate ? certificate(*r.certificate) : Json(nullptr)},
           {"bounds", Json{{"d", r.degree_bound}, {"H", int_to_json(r.height_bound)}, {"M", r.search_precision}}},
           {"mode", to_string(r.mode)},
           {"signal_floor_met", r.signal_floor_met}};
  if (!r.certificate) out["note"] = "no relation within the searched bounds; this is not a transcendence proof";
  return out;
}

inline Json exponential_certificate(const ExponentialCertificate& c) {
  return Json{{"ok", c.ok()},
              {"target", c.target},
              {"residuals", Json{{"phi", c.phi_form}, {"delta", c.delta_form}, {"psi", c.psi_form}}},
              {"family_member", c.family_member}};
}

inline Json obstruction(const Obstruction& o) {
  Json out{{"stage", o.stage == Obstruction::Stage::ModP ? "mod-p" : "lift-step"}};
  if (o.stage == Obstruction::Stage::Lift) out["step"] = o.step;
  out["witness"] = residue(o.witness);
  if (o.stage == Obstruction::Stage::Lift) out["trace"] = o.trace;
  return out;
}

inline Json matrix(const MatrixOverZq& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.n; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.n; ++j) row.push_back(element(m.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline MatrixOverZq matrix(const ParamsRef& params, const Json& j) {
  if (!j.is_array() || j.empty()) fail(ErrorKind::ParseError, "matrix must be a non-empty array of rows");
  MatrixOverZq m{j.size(), {}};
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != m.n) fail(ErrorKind::ParseError, "matrix must be square");
    for (const auto& e : row) m.entries.push_back(element(params, e));
  }
  return m;
}

inline ResidueMatrix residue_matrix(const ParamsRef& params, const Json& j) {
  if (!j.is_array() || j.empty()) fail(ErrorKind::ParseError, "matrix must be a non-empty array of rows");
  ResidueMatrix m{j.size(), {}};
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != m.n) fail(ErrorKind::ParseError, "matrix must be square");
    for (const auto& e : row) m.entries.push_back(residue(params, e));
  }
  return m;
}

}  // namespace adcalc::json
