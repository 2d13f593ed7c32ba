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
#include "sepvol/parallel.hpp"
#include "sepvol/sampling.hpp"
#include "sepvol/widths.hpp"

#include <cmath>
#include <functional>

namespace sepvol {

/// Transpose of factor `subsystem`: the row and column indices of that
/// factor are exchanged, all other indices are kept.
inline HermitianOp partial_transpose(const HermitianOp& a, int subsystem) {
  const int D = a.shape().D();
  const int N = a.shape().N();
  if (subsystem < 0 || subsystem >= N) {
    throw ShapeError("partial_transpose: subsystem index out of range");
  }
  const Eigen::Index d = a.dim();
  const Eigen::Index stride = ipow(D, N - 1 - subsystem);
  CMatrix out(d, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    const Eigen::Index cj = (c / stride) % D;
    for (Eigen::Index r = 0; r < d; ++r) {
      const Eigen::Index rj = (r / stride) % D;
      out(r, c) = a(r + (cj - rj) * stride, c + (rj - cj) * stride);
    }
  }
  return {a.shape(), std::move(out), HermitianOp::Trusted{}};
}

struct PptVerdict {
  bool is_ppt = false;
  double min_eigenvalue = 0.0;  // of the partial transpose
  int subsystem = 0;
};

inline constexpr double kPptTol = -1e-10;

inline PptVerdict is_ppt(const DensityMatrix& rho, int subsystem = 0) {
  PptVerdict v;
  v.subsystem = subsystem;
  v.min_eigenvalue = lambda_min(partial_transpose(rho.op(), subsystem));
  v.is_ppt = v.min_eigenvalue >= kPptTol;
  return v;
}

/// |φ+> = (|00> + ... + |D-1,D-1>)/sqrt(D).
inline CVector max_entangled(int D) {
  CVector v = CVector::Zero(static_cast<Eigen::Index>(D) * D);
  for (int i = 0; i < D; ++i) v(i * D + i) = 1.0 / std::sqrt(static_cast<double>(D));
  return v;
}

/// (1-ε) Id/D² + ε |φ+><φ+| on C^D ⊗ C^D.
inline DensityMatrix werner_state(int D, double eps) {
  const FactorShape s(D, 2);
  const double dd = static_cast<double>(s.d());
  return DensityMatrix(HermitianOp::identity(s) * ((1.0 - eps) / dd) +
                       HermitianOp::projector(s, max_entangled(D)) * eps);
}

struct WernerBoundary {
  double epsilon = 0.0;
  int iterations = 0;
};

/// Bisection on ε ∈ [0, 1] of the sign of λ_min(T ρ_ε).
inline WernerBoundary werner_ppt_boundary(int D = 2, double tol = 1e-13) {
  double lo = 0.0, hi = 1.0;
  WernerBoundary b;
  while (hi - lo > tol && b.iterations < 200) {
    const double mid = 0.5 * (lo + hi);
    const double m = lambda_min(partial_transpose(werner_state(D, mid).op(), 0));
    if (m >= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++b.iterations;
  }
  b.epsilon = 0.5 * (lo + hi);
  return b;
}

struct WilsonInterval {
  double lower = 0.0;
  double upper = 0.0;
};

inline WilsonInterval wilson_interval(std::int64_t hits, std::int64_t n, double z) {
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(hits) / nn;
  const double z2 = z * z;
  const double den = 1.0 + z2 / nn;
  const double centre = (p + z2 / (2.0 * nn)) / den;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / den;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

struct PptFraction {
  int D = 0;
  std::int64_t samples = 0;
  std::int64_t hits = 0;
  std::uint64_t seed = 0;
  double fraction = 0.0;
  double z = 3.0;
  WilsonInterval ci;
  std::int64_t n = 0;  // d² - 1
  double root = 0.0;       // fraction^{1/n}
  double root_lower = 0.0; // ci.lower^{1/n}
  double root_upper = 0.0;
};

/// Fraction of HS-uniform states on C^D ⊗ C^D with positive partial
/// transpose; sample i uses stream.split(i).
inline PptFraction ppt_fraction_mc(int D, std::int64_t samples, const SeededStream& stream,
                                   unsigned workers = 0, double z = 3.0) {
  if (D < 2 || D > 4) throw DomainError("ppt_fraction_mc: D must lie in {2, 3, 4}");
  if (samples < 1) throw DomainError("ppt_fraction_mc: samples must be >= 1");
  const FactorShape s(D, 2);
  std::vector<unsigned char> ok(static_cast<std::size_t>(samples));
  parallel_for(samples, workers, [&](std::int64_t i) {
    SeededStream st = stream.split(static_cast<std::uint64_t>(i));
    ok[static_cast<std::size_t>(i)] = is_ppt(sample_density_uniform(s, st)).is_ppt ? 1 : 0;
  });
  PptFraction f;
  f.D = D;
  f.samples = samples;
  f.seed = stream.seed();
  for (auto b : ok) f.hits += b;
  f.fraction = static_cast<double>(f.hits) / static_cast<double>(samples);
  f.z = z;
  f.ci = wilson_interval(f.hits, samples, z);
  f.n = s.n();
  const double inv = 1.0 / static_cast<double>(f.n);
  f.root = std::pow(f.fraction, inv);
  f.root_lower = std::pow(f.ci.lower, inv);
  f.root_upper = std::pow(f.ci.upper, inv);
  return f;
}

struct Theorem4Chain {
  WidthEstimate width_D;       // Gaussian, 𝒟 about Id/d
  WidthEstimate width_diff;    // Gaussian, 𝒟 - U𝒟 about 0
  double additivity_gap = 0.0; // w_G(diff) - 2 w_G(𝒟)
  double additivity_sigma = 0.0;
  bool additivity_ok = false;
  double vrad_D = 0.0;
  double ratio = 0.0;          // 2 w(𝒟)/vrad(𝒟), spherical width
  double ratio_upper = 0.0;    // with +3σ on the width
  bool ratio_le_8 = false;
  double inverse_root = 0.0;   // (vol 𝒟/vol PPT)^{1/n} estimate, fraction^{-1/n}
  double inverse_root_lower = 0.0;  // from the upper Wilson limit
  bool fraction_consistent = false;
  double asymptotic_constant = 0.0;  // e^{-1/4}/4
  bool pass() const { return additivity_ok && ratio_le_8 && fraction_consistent; }
};

/// Width chain for 𝒟 versus U𝒟 with U an isometry fixing Id/d, given
/// through its HS adjoint (the partial transpose on factor 0 by default).
inline Theorem4Chain theorem4_chain(FactorShape shape, const WidthEstimate& width_D, double vrad_D,
                                    const PptFraction& fraction, std::int64_t samples,
                                    const SeededStream& stream,
                                    HermitianMap isometry_adjoint = {}, unsigned workers = 0) {
  if (width_D.body != "D_centered" || !width_D.gaussian) {
    throw DomainError("theorem4_chain: needs the Gaussian width of 𝒟 about Id/d");
  }
  if (!isometry_adjoint) {
    isometry_adjoint = [](const HermitianOp& a) { return partial_transpose(a, 0); };
  }
  const BodyOracle D0 = oracle_D_centered(shape);
  const BodyOracle UD = oracle_linear_image(D0, isometry_adjoint, "UD");
  const BodyOracle diff = oracle_minkowski_diff(D0, UD);

  Theorem4Chain c;
  c.width_D = width_D;
  c.width_diff = gaussian_width_mc(diff, samples, stream, workers);
  c.additivity_gap = c.width_diff.mean - 2.0 * width_D.mean;
  c.additivity_sigma = std::sqrt(c.width_diff.std_error * c.width_diff.std_error +
                                 4.0 * width_D.std_error * width_D.std_error);
  c.additivity_ok = std::abs(c.additivity_gap) <= 3.0 * c.additivity_sigma;

  const WidthEstimate w = width_D.spherical();
  c.vrad_D = vrad_D;
  c.ratio = 2.0 * w.mean / vrad_D;
  c.ratio_upper = 2.0 * (w.mean + 3.0 * w.std_error) / vrad_D;
  c.ratio_le_8 = c.ratio_upper <= 8.0;

  const double inv = 1.0 / static_cast<double>(fraction.n);
  c.inverse_root = fraction.fraction > 0 ? std::pow(fraction.fraction, -inv)
                                         : std::numeric_limits<double>::infinity();
  c.inverse_root_lower = std::pow(fraction.ci.upper, -inv);
  c.fraction_consistent = c.inverse_root_lower <= c.ratio_upper;
  c.asymptotic_constant = std::exp(-0.25) / 4.0;
  return c;
}

}  // namespace sepvol
