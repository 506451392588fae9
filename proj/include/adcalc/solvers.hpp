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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "adcalc/delta.hpp"
#include "adcalc/error.hpp"
#include "adcalc/zq.hpp"

namespace adcalc {

/// Largest residue field enumerated by the solvers.
inline constexpr std::uint64_t kMaxEnumeratedField = 1ULL << 22;

/// The q - 1 Teichmuller units of Z_q (all u with delta u = 0), ordered by residue index.
inline std::vector<ZqElement> enumerate_constants(const ParamsRef& params, int prec) {
  if (params->q() > kMaxEnumeratedField) fail(ErrorKind::DomainError, "residue field too large to enumerate");
  const auto q = static_cast<std::uint64_t>(params->q());
  std::vector<ZqElement> out;
  out.reserve(q - 1);
  for (std::uint64_t idx = 1; idx < q; ++idx) out.push_back(teichmuller(FqElement::from_index(params, idx), prec));
  return out;
}

inline std::vector<ZqElement> enumerate_constants(const ParamsRef& params) {
  return enumerate_constants(params, params->precision());
}

// ---------------------------------------------------------------------------
// psi(u) = beta  <=>  phi(u) = eps u^p  <=>  delta u = alpha u^p,  eps = exp(p beta) = 1 + p alpha.

struct ExponentialProblem {
  ZqElement beta;
  ZqElement epsilon;
  ZqElement alpha;

  static ExponentialProblem from_beta(const ZqElement& beta) {
    detail::require_odd_prime(beta.params(), "the exponential equation");
    if (beta.precision() < 2) fail(ErrorKind::PrecisionExhausted, "beta needs precision >= 2");
    ZqElement eps = padic_exp(multiply_by_p_power(beta, 1));
    ZqElement alpha = divide_by_p_power(eps - ZqElement::one(beta.params()), 1);
    return {beta, std::move(eps), std::move(alpha)};
  }

  static ExponentialProblem from_alpha(const ZqElement& alpha) {
    detail::require_odd_prime(alpha.params(), "the exponential equation");
    ZqElement eps = ZqElement::one(alpha.params()) + multiply_by_p_power(alpha, 1);
    if (eps.precision() < 2) fail(ErrorKind::PrecisionExhausted, "eps = 1 + p alpha needs precision >= 2");
    ZqElement beta = divide_by_p_power(padic_log(eps), 1);
    return {std::move(beta), std::move(eps), alpha};
  }
};

struct SolutionFamily {
  ZqElement base;
  std::vector<ZqElement> constants;

  std::vector<ZqElement> members() const {
    std::vector<ZqElement> out;
    out.reserve(constants.size());
    for (const auto& zeta : constants) out.push_back(zeta * base);
    return out;
  }
};

/// Achieved precision of each equivalent form for a candidate solution.
struct ExponentialCertificate {
  int target = 0;         ///< required for the delta and psi forms; the phi form needs target + 1
  int phi_form = 0;       ///< v(phi(u) - eps u^p)
  int delta_form = 0;     ///< v(delta u - alpha u^p)
  int psi_form = 0;       ///< v(psi(u) - beta)
  int family_member = 0;  ///< v(delta(u / base)), u / base Teichmuller to this precision

  bool ok() const {
    return phi_form >= target + 1 && delta_form >= target && psi_form >= target && family_member >= target;
  }
};

/// The distinguished solution exp(sum_{n>=1} p^n phi^{-n}(beta)), unverified.
inline ZqElement exponential_base(const ExponentialProblem& problem) {
  const ZqElement& beta = problem.beta;
  const ParamsRef& params = beta.params();
  const int prec = std::min(beta.precision() + 1, params->precision());
  const int f = params->f();

  // phi^{-n}(beta) only depends on n mod f.
  std::vector<ZqElement> conjugates{beta};
  for (int r = 1; r < f; ++r) conjugates.push_back(frobenius_inv(conjugates.back()));

  ZqElement sum = ZqElement::zero(params, prec);
  for (int n = 1; n < prec; ++n) sum += multiply_by_p_power(conjugates[n % f], n);
  return padic_exp(sum);
}

namespace detail {

inline int achieved(const ZqElement& residual) { return valuation(residual).value; }

inline ExponentialCertificate certify(const ZqElement& u, const ExponentialProblem& problem, const ZqElement& base) {
  if (!u.is_unit()) fail(ErrorKind::NonUnit, "solutions of the exponential equation are units");
  const Int p(u.params()->p());
  const ZqElement up = u.pow(p);
  ExponentialCertificate cert;
  cert.target = std::min(u.precision(), base.precision()) - 1;
  cert.phi_form = achieved(frobenius(u) - problem.epsilon * up);
  cert.delta_form = achieved(fermat_quotient(u) - problem.alpha * up);
  cert.psi_form = achieved(psi(u) - problem.beta);
  const int k = std::min(u.precision(), base.precision());
  cert.family_member = achieved(fermat_quotient(u.with_precision(k) * inv(base.with_precision(k))));
  return cert;
}

}  // namespace detail

inline ExponentialCertificate verify_exponential(const ZqElement& u, const ExponentialProblem& problem) {
  return detail::certify(u, problem, exponential_base(problem));
}

inline SolutionFamily solve_exponential(const ExponentialProblem& problem) {
  ZqElement base = exponential_base(problem);
  if (!detail::certify(base, problem, base).ok()) fail(ErrorKind::Inconsistent, "base solution failed verification");
  auto constants = enumerate_constants(base.params(), base.precision());
  return {std::move(base), std::move(constants)};
}

inline SolutionFamily solve_exponential(const ZqElement& beta) {
  return solve_exponential(ExponentialProblem::from_beta(beta));
}

// ---------------------------------------------------------------------------
// Difference equation phi(u) = eps u.

struct Obstruction {
  enum class Stage { ModP, Lift };

  Stage stage;
  int step = 0;  ///< k for a failed lift from p^k to p^{k+1}; 0 for ModP
  /// ModP: eps^{(q-1)/(p-1)} mod p (not 1). Lift: the Artin-Schreier right-hand side c.
  FqElement witness;
  /// Lift: Tr(c) in F_p (non-zero). ModP: 0.
  std::uint64_t trace = 0;

  /// Recomputes the failing residue condition; true when it still fails.
  bool recheck() const {
    if (stage == Stage::ModP) return !(witness == FqElement::one(witness.params()));
    return witness.trace() != 0;
  }
};

/// eps * phi(eps) * ... * phi^{f-1}(eps).
inline ZqElement frobenius_norm(const ZqElement& eps) {
  ZqElement acc = eps;
  ZqElement conj = eps;
  for (int i = 1; i < eps.params()->f(); ++i) {
    conj = frobenius(conj);
    acc *= conj;
  }
  return acc;
}

namespace detail {

// Solves h^p - h = c over F_q as an F_p-linear system; free coordinates are set to 0.
inline std::optional<FqElement> solve_artin_schreier(const FqElement& c) {
  const ParamsRef& params = c.params();
  const int f = params->f();
  const std::uint64_t p = params->p();
  // Column j of the system is L(g^j) = g^{jp} - g^j.
  std::vector<std::vector<std::uint64_t>> rows(f, std::vector<std::uint64_t>(f + 1, 0));
  for (int j = 0; j < f; ++j) {
    std::vector<std::uint64_t> basis(f, 0);
    basis[j] = 1;
    const FqElement gj(params, basis);
    const FqElement image = gj.frobenius() - gj;
    for (int i = 0; i < f; ++i) rows[i][j] = image.coeffs()[i];
  }
  for (int i = 0; i < f; ++i) rows[i][f] = c.coeffs()[i];

  std::vector<int> pivot_col;
  int r = 0;
  for (int col = 0; col < f && r < f; ++col) {
    int sel = -1;
    for (int i = r; i < f; ++i) {
      if (rows[i][col] != 0) {
        sel = i;
        break;
      }
    }
    if (sel < 0) continue;
    std::swap(rows[r], rows[sel]);
    const std::uint64_t inv = integer::powmod64(rows[r][col], p - 2, p);
    for (auto& x : rows[r]) x = integer::mulmod64(x, inv, p);
    for (int i = 0; i < f; ++i) {
      if (i == r || rows[i][col] == 0) continue;
      const std::uint64_t factor = rows[i][col];
      for (int j = 0; j <= f; ++j) rows[i][j] = (rows[i][j] + p - integer::mulmod64(factor, rows[r][j], p)) % p;
    }
    pivot_col.push_back(col);
    ++r;
  }
  for (int i = r; i < f; ++i) {
    if (rows[i][f] != 0) return std::nullopt;
  }
  std::vector<std::uint64_t> h(f, 0);
  for (int i = 0; i < r; ++i) h[pivot_col[i]] = rows[i][f];
  return FqElement(params, h);
}

}  // namespace detail

using DifferenceResult = std::variant<ZqElement, Obstruction>;

/// Staged lifting for phi(u) = eps u. Mod p this is u^{p-1} = eps; each lift step is an
/// Artin-Schreier equation. The first failing stage is returned as an Obstruction.
inline DifferenceResult solve_difference(const ZqElement& eps) {
  if (!eps.is_unit()) fail(ErrorKind::NonUnit, "difference equation needs a unit eps");
  const ParamsRef& params = eps.params();
  const int prec = eps.precision();
  const std::uint64_t p = params->p();
  const Int q = params->q();

  const FqElement eps_bar = eps.residue();
  const FqElement residue_norm = eps_bar.pow((q - 1) / (p - 1));
  if (!(residue_norm == FqElement::one(params))) {
    return Obstruction{Obstruction::Stage::ModP, 0, residue_norm, 0};
  }
  if (q > kMaxEnumeratedField) fail(ErrorKind::DomainError, "residue field too large to enumerate");
  std::optional<FqElement> root;
  for (std::uint64_t idx = 1; idx < static_cast<std::uint64_t>(q); ++idx) {
    FqElement a = FqElement::from_index(params, idx);
    if (a.pow(Int(p - 1)) == eps_bar) {
      root = a;
      break;
    }
  }
  if (!root) fail(ErrorKind::Inconsistent, "power residue test passed but no root found");

  ZqElement u = teichmuller(*root, prec);
  for (int k = 1; k < prec; ++k) {
    const ZqElement residual = frobenius(u) - eps * u;
    if (valuation(residual).value >= k + 1) continue;
    const ZqElement scaled = divide_by_p_power(residual, k);
    const FqElement c = -(scaled * inv(eps * u).with_precision(scaled.precision())).residue();
    const std::uint64_t tr = c.trace();
    if (tr != 0) return Obstruction{Obstruction::Stage::Lift, k, c, tr};
    const auto h = detail::solve_artin_schreier(c);
    if (!h) fail(ErrorKind::Inconsistent, "trace vanished but Artin-Schreier system is inconsistent");
    u = u * (ZqElement::one(params, prec) + multiply_by_p_power(ZqElement::lift(*h, prec - k), k));
  }
  if (!(frobenius(u) == eps * u) || !(frobenius_norm(eps) == ZqElement::one(params, prec))) {
    fail(ErrorKind::Inconsistent, "difference solution failed verification");
  }
  return u;
}

// ---------------------------------------------------------------------------
// Matrix equation delta u = beta u^{(p)}.

/// Square matrix over Z_q, row-major.
struct MatrixOverZq {
  std::size_t n = 0;
  std::vector<ZqElement> entries;

  const ZqElement& at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
  ZqElement& at(std::size_t i, std::size_t j) { return entries[i * n + j]; }
  int precision() const {
    int k = entries.front().precision();
    for (const auto& e : entries) k = std::min(k, e.precision());
    return k;
  }
  const ParamsRef& params() const { return entries.front().params(); }

  static MatrixOverZq identity(const ParamsRef& params, std::size_t n, int prec) {
    MatrixOverZq m{n, {}};
    for (std::size_t i = 0; i < n * n; ++i) {
      m.entries.push_back(i % (n + 1) == 0 ? ZqElement::one(params, prec) : ZqElement::zero(params, prec));
    }
    return m;
  }
};

/// Square matrix over F_q, row-major.
struct ResidueMatrix {
  std::size_t n = 0;
  std::vector<FqElement> entries;

  static ResidueMatrix identity(const ParamsRef& params, std::size_t n) {
    ResidueMatrix m{n, {}};
    for (std::size_t i = 0; i < n * n; ++i) {
      m.entries.push_back(i % (n + 1) == 0 ? FqElement::one(params) : FqElement::zero(params));
    }
    return m;
  }
};

inline MatrixOverZq operator*(const MatrixOverZq& a, const MatrixOverZq& b) {
  MatrixOverZq out{a.n, {}};
  const int prec = std::min(a.precision(), b.precision());
  for (std::size_t i = 0; i < a.n; ++i) {
    for (std::size_t j = 0; j < a.n; ++j) {
      ZqElement acc = ZqElement::zero(a.params(), prec);
      for (std::size_t k = 0; k < a.n; ++k) acc += a.at(i, k) * b.at(k, j);
      out.entries.push_back(std::move(acc));
    }
  }
  return out;
}

template <class Fn>
MatrixOverZq map_entries(const MatrixOverZq& a, Fn fn) {
  MatrixOverZq out{a.n, {}};
  for (const auto& e : a.entries) out.entries.push_back(fn(e));
  return out;
}

/// u^{(p)} = (u_ij^p).
inline MatrixOverZq entrywise_power(const MatrixOverZq& u) {
  const Int p(u.params()->p());
  return map_entries(u, [&](const ZqElement& e) { return e.pow(p); });
}

inline bool is_invertible(const ResidueMatrix& m) {
  std::vector<FqElement> a = m.entries;
  const std::size_t n = m.n;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = n;
    for (std::size_t i = col; i < n; ++i) {
      if (!a[i * n + col].is_zero()) {
        sel = i;
        break;
      }
    }
    if (sel == n) return false;
    for (std::size_t j = 0; j < n; ++j) std::swap(a[col * n + j], a[sel * n + j]);
    const FqElement pivot_inv = a[col * n + col].inverse();
    for (std::size_t i = col + 1; i < n; ++i) {
      const FqElement factor = a[i * n + col] * pivot_inv;
      for (std::size_t j = col; j < n; ++j) a[i * n + j] = a[i * n + j] - factor * a[col * n + j];
    }
  }
  return true;
}

/// Entry-wise delta u - beta u^{(p)}.
inline MatrixOverZq matrix_residual(const MatrixOverZq& beta, const MatrixOverZq& u) {
  MatrixOverZq du = map_entries(u, [](const ZqElement& e) { return fermat_quotient(e); });
  MatrixOverZq rhs = beta * entrywise_power(u);
  MatrixOverZq out{u.n, {}};
  for (std::size_t i = 0; i < u.entries.size(); ++i) out.entries.push_back(du.entries[i] - rhs.entries[i]);
  return out;
}

/// Lowest valuation among the residual entries.
inline int matrix_residual_precision(const MatrixOverZq& beta, const MatrixOverZq& u) {
  int k = u.precision();
  for (const auto& e : matrix_residual(beta, u).entries) k = std::min(k, valuation(e).value);
  return k;
}

/// Lifts the seed u0 in GL_n(F_q) to the unique u with delta u = beta u^{(p)} and u = u0 mod p.
inline MatrixOverZq solve_matrix_linear(const MatrixOverZq& beta, const ResidueMatrix& seed) {
  if (beta.n == 0 || beta.entries.size() != beta.n * beta.n) fail(ErrorKind::DomainError, "beta must be square");
  if (seed.n != beta.n || seed.entries.size() != seed.n * seed.n) {
    fail(ErrorKind::ParamsMismatch, "seed and beta have different sizes");
  }
  const ParamsRef& params = beta.params();
  for (const auto& e : beta.entries) {
    if (!e.params()->same_ring(*params)) fail(ErrorKind::ParamsMismatch, "beta entries over different rings");
  }
  for (const auto& e : seed.entries) {
    if (!e.params()->same_ring(*params)) fail(ErrorKind::ParamsMismatch, "seed over a different ring");
  }
  if (beta.precision() < 2) fail(ErrorKind::PrecisionExhausted, "beta needs precision >= 2");
  if (!is_invertible(seed)) fail(ErrorKind::SingularSeed, "seed is not invertible over F_q");

  const std::size_t n = beta.n;
  const int prec = std::min(beta.precision() + 1, params->precision());
  // phi(u) = (1 + p beta) u^{(p)}.
  MatrixOverZq coupling = MatrixOverZq::identity(params, n, prec);
  for (std::size_t i = 0; i < n * n; ++i) {
    coupling.entries[i] = coupling.entries[i] + multiply_by_p_power(beta.entries[i], 1).with_precision(prec);
  }

  MatrixOverZq u{n, {}};
  for (const auto& s : seed.entries) u.entries.push_back(ZqElement::lift(s, prec));
  for (int k = 1; k < prec; ++k) {
    const MatrixOverZq target = coupling * entrywise_power(u);
    for (std::size_t i = 0; i < n * n; ++i) {
      const ZqElement diff = target.entries[i] - frobenius(u.entries[i]);
      if (valuation(diff).value >= k + 1) continue;
      // phi(h) = c mod p, so h = phi^{-1}(c) on the residue field.
      const FqElement c = divide_by_p_power(diff, k).residue();
      const FqElement h = c.pow(params->q() / Int(params->p()));
      u.entries[i] = u.entries[i] + multiply_by_p_power(ZqElement::lift(h, prec - k), k);
    }
  }
  if (matrix_residual_precision(beta, u) < prec - 1) fail(ErrorKind::Inconsistent, "matrix lift failed verification");
  return u;
}

inline MatrixOverZq solve_matrix_linear(const MatrixOverZq& beta) {
  return solve_matrix_linear(beta, ResidueMatrix::identity(beta.params(), beta.n));
}

/// Entry-wise delta u - beta Phi(u) for a user-supplied matrix Phi of delta-functions in the
/// n^2 entries of u (row-major). Covers connections of the form delta u = beta Phi(u);
/// no such Phi ships with the library.
inline MatrixOverZq connection_residual(const MatrixOverZq& beta, const MatrixOverZq& u,
                                        const std::vector<RestrictedSeries>& phi) {
  if (phi.size() != u.n * u.n) fail(ErrorKind::ArityMismatch, "Phi must have n^2 entries");
  MatrixOverZq image{u.n, {}};
  for (const auto& series : phi) image.entries.push_back(eval_delta_function(series, u.entries));
  MatrixOverZq rhs = beta * image;
  MatrixOverZq out{u.n, {}};
  for (std::size_t i = 0; i < u.entries.size(); ++i) {
    out.entries.push_back(fermat_quotient(u.entries[i]) - rhs.entries[i]);
  }
  return out;
}

}  // namespace adcalc
