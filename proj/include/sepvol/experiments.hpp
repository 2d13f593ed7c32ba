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
#include "sepvol/ellipsoids.hpp"
#include "sepvol/nets.hpp"
#include "sepvol/ppt.hpp"
#include "sepvol/tensor_norms.hpp"
#include "sepvol/widths.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace sepvol {

/// Sample mean of an estimator whose expectation is the quantity itself.
class ExactEstimate {
 public:
  ExactEstimate(double mean, double std_error, std::int64_t samples)
      : mean_(mean), se_(std_error), samples_(samples) {}
  explicit ExactEstimate(const WidthEstimate& w) : ExactEstimate(w.mean, w.std_error, w.samples) {
    if (w.exactness != Exactness::exact) {
      throw DomainError("ExactEstimate: width comes from a lower-bound oracle");
    }
  }
  double mean() const { return mean_; }
  double std_error() const { return se_; }
  std::int64_t samples() const { return samples_; }

 private:
  double mean_, se_;
  std::int64_t samples_;
};

/// Sample mean of an estimator whose expectation does not exceed the
/// quantity (lower-bound oracles). It can only appear on the small side of
/// a ≤ comparison.
class LowerEstimate {
 public:
  LowerEstimate(double mean, double std_error, std::int64_t samples)
      : mean_(mean), se_(std_error), samples_(samples) {}
  explicit LowerEstimate(const WidthEstimate& w) : LowerEstimate(w.mean, w.std_error, w.samples) {}
  double mean() const { return mean_; }
  double std_error() const { return se_; }
  std::int64_t samples() const { return samples_; }

 private:
  double mean_, se_;
  std::int64_t samples_;
};

struct ReportValue {
  std::string key;
  double value = 0.0;
  double std_error = std::numeric_limits<double>::quiet_NaN();
  std::int64_t samples = 0;
  std::string kind;  // "exact", "lower_bound"
};

struct ReportCheck {
  std::string name;
  double lhs = 0.0;
  std::string relation;  // "<=", "~="
  double rhs = 0.0;
  double slack = 0.0;
  bool pass = false;
  bool retried = false;
};

struct TheoremReport {
  int theorem = 0;
  std::vector<std::pair<std::string, std::int64_t>> inputs;
  std::vector<ReportValue> estimates;
  std::vector<std::pair<std::string, double>> bounds;
  std::vector<ReportCheck> checks;
  std::vector<std::string> notes;
  std::uint64_t seed = 0;
  double wall_time_s = 0.0;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }

  double bound(const std::string& key) const {
    for (const auto& [k, v] : bounds)
      if (k == key) return v;
    throw std::out_of_range("TheoremReport: no bound " + key);
  }

  const ReportCheck& check(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return c;
    throw std::out_of_range("TheoremReport: no check " + name);
  }
};

/// Assembles TheoremReport rows. MC comparisons use a 3σ one-sided slack;
/// overloads that would read a lower estimate from the wrong side are
/// deleted.
class ReportBuilder {
 public:
  explicit ReportBuilder(int theorem, std::uint64_t seed) : start_(clock::now()) {
    r_.theorem = theorem;
    r_.seed = seed;
  }

  void input(const std::string& k, std::int64_t v) { r_.inputs.emplace_back(k, v); }
  void bound(const std::string& k, double v) { r_.bounds.emplace_back(k, v); }
  void note(std::string s) { r_.notes.push_back(std::move(s)); }

  void estimate(const std::string& k, const ExactEstimate& e) {
    r_.estimates.push_back({k, e.mean(), e.std_error(), e.samples(), "exact"});
  }
  void estimate(const std::string& k, const LowerEstimate& e) {
    r_.estimates.push_back({k, e.mean(), e.std_error(), e.samples(), "lower_bound"});
  }

  ReportCheck& require_le(const std::string& name, double lhs, double rhs, double rel_tol = 0.0) {
    const double slack = rel_tol * std::max(std::abs(lhs), std::abs(rhs));
    return add({name, lhs, "<=", rhs, slack, lhs <= rhs + slack});
  }
  ReportCheck& require_le(const std::string& name, const ExactEstimate& lhs, double rhs) {
    const double s = 3.0 * lhs.std_error();
    return add({name, lhs.mean(), "<=", rhs, s, lhs.mean() - s <= rhs});
  }
  ReportCheck& require_le(const std::string& name, const LowerEstimate& lhs, double rhs) {
    const double s = 3.0 * lhs.std_error();
    return add({name, lhs.mean(), "<=", rhs, s, lhs.mean() - s <= rhs});
  }
  ReportCheck& require_le(const std::string& name, double lhs, const ExactEstimate& rhs) {
    const double s = 3.0 * rhs.std_error();
    return add({name, lhs, "<=", rhs.mean(), s, lhs <= rhs.mean() + s});
  }
  ReportCheck& require_le(const std::string&, double, const LowerEstimate&) = delete;

  ReportCheck& require_close(const std::string& name, double lhs, double rhs, double rel_tol) {
    const double slack = rel_tol * std::max(std::abs(lhs), std::abs(rhs));
    return add({name, lhs, "~=", rhs, slack, std::abs(lhs - rhs) <= slack});
  }
  ReportCheck& require_close(const std::string& name, const ExactEstimate& lhs, double rhs) {
    const double s = 3.0 * lhs.std_error();
    return add({name, lhs.mean(), "~=", rhs, s, std::abs(lhs.mean() - rhs) <= s});
  }
  ReportCheck& require_close(const std::string&, const LowerEstimate&, double) = delete;

  ReportCheck& require_true(const std::string& name, bool ok) {
    return add({name, ok ? 1.0 : 0.0, "~=", 1.0, 0.0, ok});
  }

  TheoremReport finish() {
    r_.wall_time_s = std::chrono::duration<double>(clock::now() - start_).count();
    return std::move(r_);
  }

 private:
  using clock = std::chrono::steady_clock;

  ReportCheck& add(ReportCheck c) {
    r_.checks.push_back(std::move(c));
    return r_.checks.back();
  }

  TheoremReport r_;
  clock::time_point start_;
};

struct ExperimentOptions {
  unsigned workers = 0;
  int n_starts = 16;
  int n_sweeps = 50;
};

namespace detail {

inline void require_grid(int D, int N) {
  if (D < 2 || N < 2) throw DomainError("theorem harness: D and N must be >= 2");
  if (FactorShape(D, N).d() > kMaxDenseDim) throw DomainError("theorem harness: d exceeds 256");
}

inline double ipow_d(int D, int N) { return static_cast<double>(FactorShape(D, N).d()); }

// Reads the 2⊗2 PPT fraction into the ratio bracket (PPT = separable there).
inline void mc_bracket(ReportBuilder& rb, const PptFraction& f, double lower, double upper,
                       const std::string& tag) {
  rb.estimate("ppt_fraction", ExactEstimate(f.fraction,
                                            std::sqrt(f.fraction * (1 - f.fraction) / f.samples),
                                            f.samples));
  rb.bound("mc_root", f.root);
  rb.bound("mc_root_ci_lower", f.root_lower);
  rb.bound("mc_root_ci_upper", f.root_upper);
  rb.require_le(tag + "_lower_le_mc", lower, f.root_lower);
  rb.require_le(tag + "_mc_le_upper", f.root_upper, upper);
}

}  // namespace detail

/// Chain of closed-form bounds on (vol 𝒮/vol 𝒟)^{1/n} through Σ ⊃ r B_HS
/// and the net bound on w(Σ); at D = N = 2 also a direct MC reference.
inline TheoremReport run_theorem1(int D, int N, std::int64_t samples, std::uint64_t seed,
                                  const ExperimentOptions& opt = {}) {
  detail::require_grid(D, N);
  ReportBuilder rb(1, seed);
  rb.input("D", D);
  rb.input("N", N);
  rb.input("samples", samples);
  const FactorShape shape(D, N);
  const double d = detail::ipow_d(D, N);
  const double expo = 0.5 - 0.5 / N;
  const SeededStream root(seed);

  const SigmaInradius inr = inradius_inclusion_sigma(shape);
  const SigmaWidthBound F = sigma_width_upper(shape, std::min(0.5, 1.0 / std::sqrt(N * std::log(2.0 * N))));
  const double L = inr.radius / (2.0 / std::sqrt(d));
  const double U = F.value_inf * std::sqrt(d);
  const RatioInterval simple = transfer_ratio_simple(L, U);
  const RatioInterval rig = transfer_ratio_rigorous(L, U, shape.d());
  const double c = 1.0 / std::sqrt(6.0);
  const double C = 4.4;
  const double stated_lower = std::pow(c, N) / std::pow(d, expo);
  const double stated_upper = C * std::sqrt(N * std::log(static_cast<double>(N))) / std::pow(d, expo);

  rb.bound("inradius_sigma", inr.radius);
  rb.bound("width_sigma_upper", F.value_inf);
  rb.bound("width_sigma_upper_delta", F.inf_delta);
  rb.bound("width_sigma_upper_default_delta", F.value_default);
  rb.bound("sym_ratio_lower", L);
  rb.bound("sym_ratio_upper", U);
  rb.bound("lower_simple", simple.lower);
  rb.bound("upper_simple", simple.upper);
  rb.bound("lower", rig.lower);
  rb.bound("upper", rig.upper);
  rb.bound("lower_stated", stated_lower);
  rb.bound("upper_stated", stated_upper);

  rb.require_close("sym_lower_closed_form", L, 0.75 * std::pow(6.0, -0.5 * N) / std::pow(d, expo),
                   1e-12);
  rb.require_le("lower_le_upper", rig.lower, rig.upper);
  rb.require_le("lower_simple_le_upper_simple", simple.lower, simple.upper);

  if (d <= 16) {
    const std::int64_t ns = std::max<std::int64_t>(2, std::min<std::int64_t>(samples, 256));
    const BodyOracle sigma = oracle_Sigma(shape, opt.n_starts, opt.n_sweeps, seed);
    auto run = [&](std::int64_t n, std::uint64_t k) {
      return gaussian_width_mc(sigma, n, root.split(1).split(k), opt.workers).spherical();
    };
    WidthEstimate w = run(ns, 0);
    const auto ok = [&](const WidthEstimate& x) { return x.mean - 3 * x.std_error <= F.value_inf; };
    const bool retried = !ok(w);
    if (retried) w = run(4 * ns, 1);
    const LowerEstimate e(w);
    rb.estimate("width_sigma_mc", e);
    rb.require_le("width_sigma_mc_le_upper", e, F.value_inf).retried = retried;
  }

  if (D == 2 && N == 2) {
    PptFraction f = ppt_fraction_mc(2, samples, root.split(2), opt.workers);
    const auto inside = [&](const PptFraction& x) {
      return rig.lower <= x.root_lower && x.root_upper <= rig.upper;
    };
    const bool retried = !inside(f);
    if (retried) f = ppt_fraction_mc(2, 4 * samples, root.split(3), opt.workers);
    detail::mc_bracket(rb, f, rig.lower, rig.upper, "chain");
    rb.require_le("stated_lower_le_mc", stated_lower, f.root_lower);
    rb.require_le("mc_le_stated_upper", f.root_upper, stated_upper);
    if (retried) rb.note("MC bracket retried with 4x samples");
  }
  return rb.finish();
}

/// Same chain with the Löwner ellipsoid of Σ as reference body.
inline TheoremReport run_theorem2(int D, int N, std::int64_t samples, std::uint64_t seed,
                                  const ExperimentOptions& opt = {}) {
  detail::require_grid(D, N);
  ReportBuilder rb(2, seed);
  rb.input("D", D);
  rb.input("N", N);
  rb.input("samples", samples);
  const FactorShape shape(D, N);
  const double d = detail::ipow_d(D, N);
  const double a = alpha_D(D);
  const double delta = std::min(0.5, 1.0 / std::sqrt(N * std::log(2.0 * N)));
  const SigmaWidthBound Flow = sigma_width_upper(shape, delta, EllipsoidKind::lowner);
  const SigmaWidthBound Fhs = sigma_width_upper(shape, delta, EllipsoidKind::hs_ball);
  const double eq9_upper = Flow.value_inf / Flow.ellipsoid_factor;
  const double eq9_lower = 1.0 / d;
  const double det_root = std::pow(d, -a);

  const double L = 0.5 * std::pow(d, -0.5 - a);
  const double U = eq9_upper * det_root * std::sqrt(d);
  const RatioInterval simple = transfer_ratio_simple(L, U);
  const RatioInterval rig = transfer_ratio_rigorous(L, U, shape.d());
  const double U1 = Fhs.value_inf * std::sqrt(d);
  const double stated_lower = 0.3 / std::pow(d, 0.5 + a);
  const double stated_upper =
      4.4 * std::sqrt(D * N * std::log(static_cast<double>(N))) / std::pow(d, 0.5 + a);

  rb.bound("alpha_D", a);
  rb.bound("lowner_ratio_lower", eq9_lower);
  rb.bound("lowner_ratio_upper", eq9_upper);
  rb.bound("lowner_det_root", det_root);
  rb.bound("vrad_sigma_lower", eq9_lower * det_root);
  rb.bound("vrad_sigma_upper", eq9_upper * det_root);
  rb.bound("sym_ratio_lower", L);
  rb.bound("sym_ratio_upper", U);
  rb.bound("lower_simple", simple.lower);
  rb.bound("upper_simple", simple.upper);
  rb.bound("lower", rig.lower);
  rb.bound("upper", rig.upper);
  rb.bound("lower_stated", stated_lower);
  rb.bound("upper_stated", stated_upper);
  rb.bound("sym_ratio_upper_hs", U1);
  rb.bound("asymptotic_c_prime", std::exp(0.75) / std::sqrt(2.0 * std::numbers::pi));
  rb.bound("asymptotic_C", std::sqrt(2.0) * std::exp(0.25));

  const double log_det = log_det_psi(D, N);
  rb.require_close("det_identity", log_det, -a * d * d * std::log(d), 1e-12);
  const auto [il, ir] = alpha_identity_logs(D, N);
  rb.require_close("alpha_identity", il, ir, 1e-12);
  rb.require_le("lowner_ratio_lower_le_upper", eq9_lower, eq9_upper);
  rb.require_le("lower_le_upper", rig.lower, rig.upper);
  rb.require_le("lowner_upper_le_hs_upper", U, U1);

  if (D == 2 && N == 2) {
    const SeededStream root(seed);
    PptFraction f = ppt_fraction_mc(2, samples, root.split(2), opt.workers);
    const auto inside = [&](const PptFraction& x) {
      return rig.lower <= x.root_lower && x.root_upper <= rig.upper;
    };
    const bool retried = !inside(f);
    if (retried) f = ppt_fraction_mc(2, 4 * samples, root.split(3), opt.workers);
    detail::mc_bracket(rb, f, rig.lower, rig.upper, "chain");
    rb.require_le("stated_lower_le_mc", stated_lower, f.root_lower);
    rb.require_le("mc_le_stated_upper", f.root_upper, stated_upper);
    if (retried) rb.note("MC bracket retried with 4x samples");
  }
  return rb.finish();
}

/// Mean width of Π(Σ) for N qubits, Π the per-factor traceless projection:
/// net/subadditivity upper bound versus an MC lower estimate.
inline TheoremReport run_theorem3(int N, std::int64_t samples, std::uint64_t seed,
                                  const ExperimentOptions& opt = {}) {
  if (N < 2 || N > 6) throw DomainError("run_theorem3: N must lie in [2, 6]");
  ReportBuilder rb(3, seed);
  rb.input("D", 2);
  rb.input("N", N);
  rb.input("samples", samples);
  const SeededStream root(seed);
  const double scale = std::pow(2.0, -0.5 * N);
  const double nlogn = std::sqrt(N * std::log(static_cast<double>(N)));
  const double six = std::pow(6.0, -0.5 * N);
  const double C1 = 1.673;
  const double C0 = 3.0;

  const TensorPowerBound tb = vrad_tensor_power_bound(3, N, Field::real);
  const double upper = scale * tb.combined;
  const double c1_ratio = tb.combined / (nlogn / std::pow(3.0, 0.5 * (N - 1)));
  rb.bound("width_ball_power_upper", tb.combined);
  rb.bound("width_ball_power_net_only", tb.net_bound);
  rb.bound("net_delta", tb.net_delta);
  rb.bound("width_pi_sigma_upper", upper);
  rb.bound("width_pi_sigma_stated", std::sqrt(3.0) * C1 * nlogn * six);
  rb.bound("C1_ratio", c1_ratio);
  rb.require_le("C1_constant", c1_ratio, C1);
  rb.require_le("upper_le_stated", upper, std::sqrt(3.0) * C1 * nlogn * six);

  const BodyOracle ball = oracle_real_tensor_ball(3, N, opt.n_starts, opt.n_sweeps, seed);
  auto run = [&](std::int64_t n, std::uint64_t k) {
    return gaussian_width_mc(ball, n, root.split(1).split(k), opt.workers).spherical();
  };
  WidthEstimate w = run(samples, 0);
  const auto ok = [&](const WidthEstimate& x) {
    return scale * (x.mean - 3 * x.std_error) <= upper;
  };
  const bool retried = !ok(w);
  if (retried) w = run(4 * samples, 1);
  const LowerEstimate mc(scale * w.mean, scale * w.std_error, w.samples);
  rb.estimate("width_pi_sigma_mc", mc);
  rb.require_le("mc_le_upper", mc, upper).retried = retried;

  if (N <= 4) {
    const FactorShape shape(2, N);
    const BodyOracle sigma = oracle_Sigma(shape, opt.n_starts, opt.n_sweeps, seed);
    const BodyOracle pi_sigma("Pi_Sigma", ProbeSpace::factor_traceless(shape), sigma.exactness(),
                              [sigma](const Probe& u) { return sigma.support(u); });
    const std::int64_t ns = std::max<std::int64_t>(2, samples / 8);
    const WidthEstimate ws =
        gaussian_width_mc(pi_sigma, ns, root.split(2), opt.workers).spherical();
    const LowerEstimate cross(ws);
    rb.estimate("width_pi_sigma_mc_via_sigma", cross);
    rb.require_le("mc_via_sigma_le_upper", cross, upper);
  }

  const double certified = inradius_inclusion_sigma(FactorShape(2, N)).radius;
  const double excluded = C0 * nlogn * six;
  rb.bound("inradius_certified", certified);
  rb.bound("inradius_reference", six);
  rb.bound("inradius_excluded", excluded);
  rb.bound("gap_factor", excluded / six);
  rb.require_le("certified_le_width_upper", certified, upper);
  rb.require_le("certified_le_excluded", certified, excluded);
  rb.require_le("width_upper_le_excluded", upper, excluded);
  rb.require_close("gap_factor_closed_form", excluded / six, C0 * nlogn, 1e-12);
  return rb.finish();
}

/// PPT volume fraction against the width chain for 𝒟 and T𝒟.
inline TheoremReport run_theorem4(int D, std::int64_t samples, std::uint64_t seed,
                                  const ExperimentOptions& opt = {}) {
  if (D != 2 && D != 3) throw DomainError("run_theorem4: D must be 2 or 3");
  ReportBuilder rb(4, seed);
  rb.input("D", D);
  rb.input("N", 2);
  rb.input("samples", samples);
  const FactorShape shape(D, 2);
  const SeededStream root(seed);
  const PptFraction f = ppt_fraction_mc(D, samples, root.split(1), opt.workers);
  const StateVolume vol = vol_D_exact(static_cast<int>(shape.d()));
  const std::int64_t ws = std::max<std::int64_t>(2, std::min<std::int64_t>(samples, 10000));

  auto chain_at = [&](std::int64_t n, std::uint64_t k) {
    const SeededStream s = root.split(2).split(k);
    const WidthEstimate wD = gaussian_width_mc(oracle_D_centered(shape), n, s.split(0), opt.workers);
    return theorem4_chain(shape, wD, vol.vrad, f, n, s.split(1), {}, opt.workers);
  };
  Theorem4Chain ch = chain_at(ws, 0);
  const bool retried = !ch.additivity_ok;
  if (retried) ch = chain_at(4 * ws, 1);

  rb.estimate("ppt_fraction", ExactEstimate(f.fraction,
                                            std::sqrt(f.fraction * (1 - f.fraction) / samples),
                                            samples));
  rb.estimate("width_D", ExactEstimate(ch.width_D));
  rb.estimate("width_D_minus_TD", ExactEstimate(ch.width_diff));
  rb.bound("ppt_root", f.root);
  rb.bound("ppt_root_ci_lower", f.root_lower);
  rb.bound("c0", 0.125);
  rb.bound("vrad_D", vol.vrad);
  rb.bound("width_ratio", ch.ratio);
  rb.bound("width_ratio_upper", ch.ratio_upper);
  rb.bound("inverse_root", ch.inverse_root);
  rb.bound("asymptotic_c0", ch.asymptotic_constant);

  rb.require_le("c0_le_root", 0.125, f.root_lower);
  rb.require_le("additivity", std::abs(ch.additivity_gap), 3.0 * ch.additivity_sigma).retried =
      retried;
  rb.require_le("ratio_le_8", ch.ratio_upper, 8.0);
  rb.require_le("fraction_consistent", ch.inverse_root_lower, ch.ratio_upper);
  rb.require_true("maximally_mixed_is_ppt", is_ppt(DensityMatrix::maximally_mixed(shape)).is_ppt);
  return rb.finish();
}

}  // namespace sepvol
