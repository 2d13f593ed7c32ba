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

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace sepvol {

/// log γ_m, γ_m = sqrt2 Γ((m+1)/2)/Γ(m/2) = E‖G‖ for G standard in R^m.
inline double log_gamma_n(std::int64_t m) {
  if (m < 1) throw DomainError("gamma_n: m must be >= 1");
  const double x = static_cast<double>(m);
  return 0.5 * std::log(2.0) + std::lgamma(0.5 * (x + 1.0)) - std::lgamma(0.5 * x);
}

inline double gamma_n(std::int64_t m) { return std::exp(log_gamma_n(m)); }

/// log vol(B_2^n).
inline double log_vol_ball(std::int64_t n) {
  const double x = static_cast<double>(n);
  return 0.5 * x * std::log(std::numbers::pi) - std::lgamma(0.5 * x + 1.0);
}

struct StateVolume {
  int d = 0;
  std::int64_t n = 0;       // d^2 - 1
  double log_vol = 0.0;     // log vol_n(𝒟)
  double log_vol_ball = 0.0;
  double vrad = 0.0;        // (vol 𝒟 / vol B_2^n)^{1/n}
};

/// Closed-form HS volume of the state space of C^d, computed in log space:
/// vol = sqrt(d) (2π)^{d(d-1)/2} Γ(1)···Γ(d) / Γ(d^2).
inline StateVolume vol_D_exact(int d) {
  if (d < 2 || d > 64) throw DomainError("vol_D_exact: d must lie in [2, 64]");
  StateVolume v;
  v.d = d;
  v.n = static_cast<std::int64_t>(d) * d - 1;
  const double dd = d;
  double lg = 0.0;
  for (int k = 1; k <= d; ++k) lg += std::lgamma(static_cast<double>(k));
  v.log_vol = 0.5 * std::log(dd) + 0.5 * dd * (dd - 1.0) * std::log(2.0 * std::numbers::pi) + lg -
              std::lgamma(dd * dd);
  v.log_vol_ball = log_vol_ball(v.n);
  v.vrad = std::exp((v.log_vol - v.log_vol_ball) / static_cast<double>(v.n));
  return v;
}

struct WidthEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  std::string body;
  bool gaussian = true;
  std::int64_t dim = 0;  // real dimension of the probe space
  Exactness exactness = Exactness::exact;

  /// Spherical mean width w = w_G / γ_m (exact conversion).
  WidthEstimate spherical() const {
    if (!gaussian) return *this;
    WidthEstimate w = *this;
    const double g = gamma_n(dim);
    w.mean /= g;
    w.std_error /= g;
    w.gaussian = false;
    return w;
  }
};

struct MeanSe {
  double mean = 0.0;
  double std_error = 0.0;
};

inline MeanSe mean_and_se(const std::vector<double>& v) {
  if (v.size() < 2) throw DomainError("mean_and_se: need at least 2 values");
  const double n = static_cast<double>(v.size());
  double m = 0.0;
  for (double x : v) m += x;
  m /= n;
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return {m, std::sqrt(ss / (n - 1.0) / n)};
}

/// Monte Carlo Gaussian mean width E h_K(G). Probe i is drawn from
/// stream.split(i), so the estimate does not depend on the worker count.
inline WidthEstimate gaussian_width_mc(const BodyOracle& body, std::int64_t samples,
                                       const SeededStream& stream, unsigned workers = 0) {
  if (samples < 2) throw DomainError("gaussian_width_mc: samples must be >= 2");
  std::vector<double> vals(static_cast<std::size_t>(samples));
  parallel_for(samples, workers, [&](std::int64_t i) {
    SeededStream s = stream.split(static_cast<std::uint64_t>(i));
    vals[static_cast<std::size_t>(i)] = body.support(draw_gaussian_probe(body.space(), s));
  });
  const MeanSe ms = mean_and_se(vals);
  WidthEstimate w;
  w.mean = ms.mean;
  w.std_error = ms.std_error;
  w.samples = samples;
  w.seed = stream.seed();
  w.body = body.name();
  w.gaussian = true;
  w.dim = body.ambient_dim();
  w.exactness = body.exactness();
  return w;
}

/// Spherical-width bound for conv{±x_1..±x_v} inside the unit ball of R^m.
inline double polytope_width_bound(std::int64_t v, std::int64_t m) {
  if (v <= 1) throw DomainError("polytope_width_bound: need v > 1");
  if (m < 1) throw DomainError("polytope_width_bound: need m >= 1");
  return std::sqrt(2.0 * std::log(static_cast<double>(v))) / gamma_n(m);
}

/// Upper bound on vrad from a Gaussian width: (mean + 3 se)/γ_m.
inline double urysohn_vrad_bound(const WidthEstimate& w) {
  if (!w.gaussian) throw DomainError("urysohn_vrad_bound: needs a Gaussian width");
  if (w.exactness != Exactness::exact) {
    throw DomainError("urysohn_vrad_bound: lower-bound widths cannot give upper bounds");
  }
  return (w.mean + 3.0 * w.std_error) / gamma_n(w.dim);
}

/// ((2^n)/(n+1))^{1/n}.
inline double rogers_shephard_root(std::int64_t n) {
  const double x = static_cast<double>(n);
  return std::exp((x * std::log(2.0) - std::log(x + 1.0)) / x);
}

struct SymmetrizationCheck {
  std::int64_t n = 0;
  double h = 0.0;
  double log_vol_W = 0.0;      // n-dimensional
  double log_vol_Omega = 0.0;  // (n+1)-dimensional
  double lower_slack = 0.0;    // log vol Ω - log(2h vol W)
  double upper_slack = 0.0;    // log(2h 2^n/(n+1) vol W) - log vol Ω
  bool lower_holds = false;
  bool upper_holds = false;
  double rs_root = 0.0;
};

/// Tube inequalities 2h vol W ≤ vol Ω ≤ 2h 2^n/(n+1) vol W for W in an
/// affine hyperplane at distance h and Ω = conv(W ∪ -W), in log space.
inline SymmetrizationCheck symmetrization_ratio_bounds(double vrad_W, double vrad_Omega,
                                                       std::int64_t n, double h) {
  if (vrad_W <= 0 || vrad_Omega <= 0 || h <= 0 || n < 1) {
    throw DomainError("symmetrization_ratio_bounds: inputs must be positive");
  }
  SymmetrizationCheck c;
  c.n = n;
  c.h = h;
  const double x = static_cast<double>(n);
  c.log_vol_W = x * std::log(vrad_W) + log_vol_ball(n);
  c.log_vol_Omega = (x + 1.0) * std::log(vrad_Omega) + log_vol_ball(n + 1);
  const double base = std::log(2.0 * h) + c.log_vol_W;
  c.lower_slack = c.log_vol_Omega - base;
  c.upper_slack = base + x * std::log(2.0) - std::log(x + 1.0) - c.log_vol_Omega;
  const double tol = 1e-12 * std::max(1.0, std::abs(c.log_vol_Omega));
  c.lower_holds = c.lower_slack >= -tol;
  c.upper_holds = c.upper_slack >= -tol;
  c.rs_root = rogers_shephard_root(n);
  return c;
}

struct RatioInterval {
  double lower = 0.0;
  double upper = 0.0;
};

/// Given L ≤ (vol Σ/vol Δ)^{1/d^2} ≤ U, the interval for
/// (vol 𝒮/vol 𝒟)^{1/n} with the factor-2 transfer.
inline RatioInterval transfer_ratio_simple(double L, double U) { return {0.5 * L, 2.0 * U}; }

/// Same transfer with the exponent changed from 1/d^2 to 1/n exactly and
/// the Rogers-Shephard factor kept as its n-th root.
inline RatioInterval transfer_ratio_rigorous(double L, double U, std::int64_t d) {
  const std::int64_t n = d * d - 1;
  const double e = static_cast<double>(d * d) / static_cast<double>(n);
  const double rs = rogers_shephard_root(n);
  return {std::pow(L, e) / rs, rs * std::pow(U, e)};
}

}  // namespace sepvol
