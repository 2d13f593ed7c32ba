// Copyright 2026 The sepvol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "sepvol/bodies.hpp"
#include "sepvol/operators.hpp"
#include "sepvol/sampling.hpp"

#include <cmath>

namespace sepvol {

/// α_D = ½ log_D(1 + 1/D) - (1/(2D²)) log_D(D + 1).
inline double alpha_D(int D) {
  if (D < 2) throw DomainError("alpha_D: D must be >= 2");
  const double x = D;
  const double lnD = std::log(x);
  return 0.5 * std::log1p(1.0 / x) / lnD - std::log(x + 1.0) / (2.0 * x * x * lnD);
}

/// log of both sides of d^{1/2 + α_D} = ((D+1)^{1 - 1/D²})^{N/2}.
inline std::pair<double, double> alpha_identity_logs(int D, int N) {
  const double x = D;
  const double lhs = (0.5 + alpha_D(D)) * N * std::log(x);
  const double rhs = 0.5 * N * (1.0 - 1.0 / (x * x)) * std::log(x + 1.0);
  return {lhs, rhs};
}

/// log det Φ = ½ ln D - (D² - 1)/2 · ln(1 + 1/D).
inline double log_det_phi(int D) {
  const double x = D;
  return 0.5 * std::log(x) - 0.5 * (x * x - 1.0) * std::log1p(1.0 / x);
}

/// log det Φ^{⊗N} = N D^{2N-2} log det Φ.
inline double log_det_psi(int D, int N) {
  return static_cast<double>(N) * std::pow(static_cast<double>(D), 2 * N - 2) * log_det_phi(D);
}

/// The form <A,B> = (1 + 1/D) tr(AB) - (1/D) tr(A) tr(B) on B_sa(C^D) and
/// its N-fold tensor power, whose unit ball is the Löwner ellipsoid of Δ
/// (resp. of Σ).
///
/// Φ maps the HS unit ball onto that ellipsoid: on trace-zero operators it
/// scales by (1 + 1/D)^{-1/2}, and Φ(Id) = sqrt(D) Id. The tensor form is
/// <A,B>_Löw = <Ψ^{-1}A, Ψ^{-1}B>_HS with Ψ = Φ^{⊗N}.
class LownerForm {
 public:
  LownerForm(int D, int N = 1) : D_(D), N_(N) {
    if (D < 2) throw DomainError("LownerForm: D must be >= 2");
    if (N < 1) throw DomainError("LownerForm: N must be >= 1");
  }

  int D() const { return D_; }
  int N() const { return N_; }
  FactorShape shape() const { return {D_, N_}; }
  double alpha() const { return 1.0 + 1.0 / D_; }
  double beta() const { return -1.0 / D_; }

  /// Ψ = Φ^{⊗N}.
  HermitianOp phi(const HermitianOp& a) const {
    const double s = 1.0 / std::sqrt(1.0 + 1.0 / D_);
    return apply_all(a, s, (std::sqrt(static_cast<double>(D_)) - s) / D_);
  }

  /// Ψ^{-1}.
  HermitianOp phi_inverse(const HermitianOp& a) const {
    const double s = std::sqrt(1.0 + 1.0 / D_);
    return apply_all(a, s, (1.0 / std::sqrt(static_cast<double>(D_)) - s) / D_);
  }

  double inner(const HermitianOp& a, const HermitianOp& b) const {
    check(a);
    check(b);
    if (N_ == 1) return alpha() * hs_inner(a, b) + beta() * a.trace() * b.trace();
    return hs_inner(phi_inverse(a), phi_inverse(b));
  }

  double norm(const HermitianOp& a) const { return std::sqrt(inner(a, a)); }

  /// Support function of the ellipsoid Ψ(B_HS): ‖Ψ u‖_HS.
  double support(const HermitianOp& u) const { return hs_norm(phi(u)); }

  double log_det() const { return log_det_psi(D_, N_); }

  /// Gram matrix of the form in the HS-orthonormal coordinates of to_coords.
  RMatrix form_matrix() const {
    const FactorShape s = shape();
    const auto m = static_cast<Eigen::Index>(s.d() * s.d());
    std::vector<HermitianOp> basis;
    basis.reserve(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) basis.push_back(from_coords(s, RVector::Unit(m, i)));
    RMatrix G(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = i; j < m; ++j) G(i, j) = G(j, i) = inner(basis[i], basis[j]);
    return G;
  }

 private:
  HermitianOp apply_all(const HermitianOp& a, double s, double c) const {
    check(a);
    HermitianOp out = a;
    for (int j = 0; j < N_; ++j) out = apply_factor_map(out, j, s, c);
    return out;
  }

  void check(const HermitianOp& a) const {
    if (!(a.shape() == shape())) {
      throw ShapeError("LownerForm: operator shape " + a.shape().str() + " vs form " +
                       shape().str());
    }
  }

  int D_;
  int N_;
};

inline double lowner_inner(const LownerForm& f, const HermitianOp& a, const HermitianOp& b) {
  return f.inner(a, b);
}

/// The Löwner ellipsoid Ψ(B_HS) as a body: h(u) = ‖Ψ u‖_HS.
inline BodyOracle oracle_lowner_ellipsoid(FactorShape shape) {
  const LownerForm form(shape.D(), shape.N());
  const ProbeSpace space = ProbeSpace::hermitian(shape);
  return BodyOracle("Lowner", space, Exactness::exact, [form, space](const Probe& u) {
    return form.support(as_hermitian(u, space));
  });
}

struct JohnCheck {
  int D = 0;
  std::int64_t n_pure = 0;
  double frame_deviation = 0.0;  // max |eig(n F) - 1|, n = D²
  double tolerance = 0.0;        // 5 / sqrt(n_pure)
  double h = 0.0;                // sqrt(<Id/D, Id/D>_Löw)
  double h_expected = 0.0;       // 1/sqrt(D²)
  double contact_deviation = 0.0;  // max |<ρ,ρ>_Löw - 1| over the samples
  bool frame_ok = false;
  bool h_ok = false;
  bool contact_ok = false;
  bool pass() const { return frame_ok && h_ok && contact_ok; }
};

/// Haar pure states, mapped to the HS unit sphere by Φ^{-1}, form an
/// approximate resolution of identity on B_sa(C^D) with uniform weights
/// D²/n_pure.
inline JohnCheck john_resolution_check(int D, std::int64_t n_pure, const SeededStream& stream) {
  if (n_pure < 2) throw DomainError("john_resolution_check: n_pure must be >= 2");
  const LownerForm form(D, 1);
  const FactorShape s(D, 1);
  const auto n = static_cast<Eigen::Index>(D) * D;
  JohnCheck c;
  c.D = D;
  c.n_pure = n_pure;
  RMatrix F = RMatrix::Zero(n, n);
  SeededStream st = stream;
  for (std::int64_t i = 0; i < n_pure; ++i) {
    const HermitianOp rho = HermitianOp::projector(s, haar_vector(D, st));
    c.contact_deviation = std::max(c.contact_deviation, std::abs(form.inner(rho, rho) - 1.0));
    const RVector y = to_coords(form.phi_inverse(rho));
    F.selfadjointView<Eigen::Lower>().rankUpdate(y);
  }
  F = F.selfadjointView<Eigen::Lower>();
  F *= static_cast<double>(n) / static_cast<double>(n_pure);
  Eigen::SelfAdjointEigenSolver<RMatrix> es(F, Eigen::EigenvaluesOnly);
  c.frame_deviation = (es.eigenvalues().array() - 1.0).abs().maxCoeff();
  c.tolerance = 5.0 / std::sqrt(static_cast<double>(n_pure));
  const HermitianOp mixed = HermitianOp::identity(s) * (1.0 / D);
  c.h = form.norm(mixed);
  c.h_expected = 1.0 / std::sqrt(static_cast<double>(n));
  c.frame_ok = c.frame_deviation <= c.tolerance;
  c.h_ok = std::abs(c.h - c.h_expected) <= 1e-12;
  c.contact_ok = c.contact_deviation <= 1e-12;
  return c;
}

}  // namespace sepvol
