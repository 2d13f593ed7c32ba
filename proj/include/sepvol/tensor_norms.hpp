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
#include "sepvol/widths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace sepvol {

enum class Field { real, complex };

/// Element of (K^D)^{⊗m} stored as a flat array a_{i_1...i_m}, row-major
/// with the last index fastest.
class GeneralizedMatrix {
 public:
  GeneralizedMatrix(int D, int m, Field field, std::vector<Complex> entries)
      : D_(D), m_(m), field_(field), a_(std::move(entries)) {
    if (D < 1 || m < 1) throw ShapeError("GeneralizedMatrix: D and m must be positive");
    if (static_cast<std::int64_t>(a_.size()) != ipow(D, m)) {
      throw ShapeError("GeneralizedMatrix: entry count must be D^m");
    }
    if (field == Field::real) {
      for (const auto& z : a_) {
        if (z.imag() != 0.0) throw DomainError("GeneralizedMatrix: real field with complex entry");
      }
    }
  }

  static GeneralizedMatrix from_real(int D, int m, const RVector& v) {
    std::vector<Complex> e(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) e[static_cast<std::size_t>(i)] = v(i);
    return {D, m, Field::real, std::move(e)};
  }

  /// Standard Gaussian element (complex entries have E|a|^2 = 1).
  static GeneralizedMatrix gaussian(int D, int m, Field field, SeededStream& s) {
    std::vector<Complex> e(static_cast<std::size_t>(ipow(D, m)));
    for (auto& z : e) z = field == Field::real ? Complex(s.normal(), 0.0) : complex_normal(s);
    return {D, m, field, std::move(e)};
  }

  int D() const { return D_; }
  int m() const { return m_; }
  Field field() const { return field_; }
  std::size_t size() const { return a_.size(); }
  const std::vector<Complex>& entries() const { return a_; }
  Complex operator[](std::size_t i) const { return a_[i]; }

  double norm2() const {
    double s = 0.0;
    for (const auto& z : a_) s += std::norm(z);
    return std::sqrt(s);
  }

  /// The m = 2 case as a D x D matrix (row index i_1).
  CMatrix as_matrix() const {
    if (m_ != 2) throw ShapeError("as_matrix: requires m = 2");
    CMatrix M(D_, D_);
    for (int i = 0; i < D_; ++i)
      for (int j = 0; j < D_; ++j) M(i, j) = a_[static_cast<std::size_t>(i * D_ + j)];
    return M;
  }

  /// Contracts every index except `skip` against x[k]; returns a vector in
  /// K^D indexed by i_skip. No conjugation is applied.
  CVector contract_except(const std::vector<CVector>& x, int skip) const {
    CVector c = CVector::Zero(D_);
    std::vector<int> digit(static_cast<std::size_t>(m_), 0);
    for (std::size_t flat = 0; flat < a_.size(); ++flat) {
      Complex w = a_[flat];
      for (int k = 0; k < m_ && w != Complex(0.0); ++k) {
        if (k != skip) w *= x[static_cast<std::size_t>(k)](digit[static_cast<std::size_t>(k)]);
      }
      c(digit[static_cast<std::size_t>(skip)]) += w;
      for (int k = m_ - 1; k >= 0; --k) {
        if (++digit[static_cast<std::size_t>(k)] < D_) break;
        digit[static_cast<std::size_t>(k)] = 0;
      }
    }
    return c;
  }

  /// Σ a_{i_1..i_m} x^1_{i_1} ... x^m_{i_m}.
  Complex evaluate(const std::vector<CVector>& x) const {
    return contract_except(x, m_ - 1).cwiseProduct(x.back()).sum();
  }

 private:
  int D_;
  int m_;
  Field field_;
  std::vector<Complex> a_;
};

inline CVector random_unit(int D, Field f, SeededStream& s) {
  if (f == Field::complex) return haar_vector(D, s);
  const RVector v = sample_sphere(D, s);
  return v.cast<Complex>();
}

struct InjectiveResult {
  double value = 0.0;
  std::vector<CVector> x;
  bool exact = false;
};

/// max over unit x^1..x^m of |Σ a x^1...x^m|. m ≤ 2 is solved exactly
/// (norm / top singular value); m ≥ 3 returns the best alternating value,
/// a lower bound.
inline InjectiveResult injective_norm(const GeneralizedMatrix& A, int n_starts, int n_sweeps,
                                      const SeededStream& stream, double tol = 1e-12) {
  InjectiveResult best;
  const int D = A.D();
  const int m = A.m();
  if (m == 1) {
    CVector a(D);
    for (int i = 0; i < D; ++i) a(i) = A[static_cast<std::size_t>(i)];
    best.value = a.norm();
    best.x = {best.value > 0 ? CVector(a.conjugate() / best.value) : CVector::Unit(D, 0)};
    best.exact = true;
    return best;
  }
  if (m == 2) {
    Eigen::JacobiSVD<CMatrix> svd(A.as_matrix(), Eigen::ComputeFullU | Eigen::ComputeFullV);
    best.value = svd.singularValues()(0);
    // u^T M v̄ with M = U S V^†: take x^1 = conj(u_0), x^2 = v_0.
    best.x = {svd.matrixU().col(0).conjugate(), svd.matrixV().col(0)};
    best.exact = true;
    return best;
  }
  best.value = -1.0;
  for (int k = 0; k < n_starts; ++k) {
    SeededStream s = stream.split(static_cast<std::uint64_t>(k));
    std::vector<CVector> x;
    for (int j = 0; j < m; ++j) x.push_back(random_unit(D, A.field(), s));
    double val = -1.0;
    for (int sweep = 0; sweep < n_sweeps; ++sweep) {
      const double prev = val;
      for (int j = 0; j < m; ++j) {
        const CVector c = A.contract_except(x, j);
        const double nc = c.norm();
        if (nc == 0.0) continue;
        x[static_cast<std::size_t>(j)] = c.conjugate() / nc;
        val = nc;
      }
      if (val - prev < tol) break;
    }
    if (val > best.value) {
      best.value = val;
      best.x = x;
    }
  }
  best.value = std::max(best.value, 0.0);
  return best;
}

struct SliceCertificate {
  std::vector<CVector> witnesses;  // x^1 .. x^{m-1}
  CVector Y;                       // slice values Y_k
  double bound = 0.0;              // (Σ|Y_k|^2)^{1/2}
  double target = 0.0;             // ‖A‖_2 / D^{(m-1)/2}
  std::int64_t trials = 0;         // total trials drawn (statistics + retries)
  std::int64_t stat_trials = 0;    // trials entering the mass statistics
  double mean_mass = 0.0;          // mean of Σ|Y_k|^2 over stat_trials
  double mass_se = 0.0;
  double expected_mass = 0.0;      // ‖A‖_2^2 / D^{m-1}
  bool reached_target = false;
  bool reached_slack = false;      // Σ|Y_k|^2 ≥ (1 - 0.05) expected_mass
};

/// Y_k = Σ a_{i_1..i_{m-1} k} x^1_{i_1} ... x^{m-1}_{i_{m-1}}.
inline CVector recompute_slice(const GeneralizedMatrix& A, const std::vector<CVector>& witnesses) {
  if (static_cast<int>(witnesses.size()) != A.m() - 1) {
    throw ShapeError("recompute_slice: need m - 1 witnesses");
  }
  std::vector<CVector> x = witnesses;
  x.push_back(CVector::Zero(A.D()));
  return A.contract_except(x, A.m() - 1);
}

/// Random slice certificate for ‖A‖_inj ≥ ‖A‖_2/D^{(m-1)/2}.
///
/// The first n_trials draws give the mass statistics; drawing then
/// continues until the best certificate reaches the target (relative
/// tolerance 1e-12) or max_trials draws have been made.
inline SliceCertificate slice_lower_bound(const GeneralizedMatrix& A, std::int64_t n_trials,
                                          const SeededStream& stream,
                                          std::int64_t max_trials = 100000,
                                          double eps_slack = 0.05) {
  if (A.m() < 2) throw ShapeError("slice_lower_bound: requires m >= 2");
  if (n_trials < 2) throw DomainError("slice_lower_bound: n_trials must be >= 2");
  SliceCertificate cert;
  const double nrm = A.norm2();
  cert.expected_mass = nrm * nrm / std::pow(static_cast<double>(A.D()), A.m() - 1);
  cert.target = std::sqrt(cert.expected_mass);
  cert.bound = -1.0;
  std::vector<double> masses;
  masses.reserve(static_cast<std::size_t>(n_trials));
  const double goal = cert.target * (1.0 - 1e-12);
  std::int64_t t = 0;
  for (; t < std::max(n_trials, max_trials); ++t) {
    if (t >= n_trials && cert.bound >= goal) break;
    SeededStream s = stream.split(static_cast<std::uint64_t>(t));
    std::vector<CVector> w;
    for (int j = 0; j + 1 < A.m(); ++j) w.push_back(random_unit(A.D(), A.field(), s));
    const CVector Y = recompute_slice(A, w);
    const double mass = Y.squaredNorm();
    if (t < n_trials) masses.push_back(mass);
    const double b = std::sqrt(mass);
    if (b > cert.bound) {
      cert.bound = b;
      cert.Y = Y;
      cert.witnesses = std::move(w);
    }
  }
  cert.trials = t;
  cert.stat_trials = n_trials;
  const MeanSe ms = mean_and_se(masses);
  cert.mean_mass = ms.mean;
  cert.mass_se = ms.std_error;
  cert.reached_target = cert.bound >= goal;
  cert.reached_slack = cert.bound * cert.bound >= (1.0 - eps_slack) * cert.expected_mass;
  return cert;
}

/// w_G(K ⊗̂ K') ≤ w_G(K) + w_G(K').
inline double chevet_gordon_bound(double wG_K, double wG_Kp) { return wG_K + wG_Kp; }

/// Spherical form: w(K ⊗̂ K') ≤ (γ_n/γ_{nn'}) w(K) + (γ_{n'}/γ_{nn'}) w(K').
inline double chevet_gordon_spherical(double w_K, std::int64_t n, double w_Kp, std::int64_t np) {
  const double g = gamma_n(n * np);
  return gamma_n(n) / g * w_K + gamma_n(np) / g * w_Kp;
}

struct TensorPowerBound {
  int D = 0;
  int m = 0;
  Field field = Field::real;
  std::int64_t dim = 0;         // real dimension of the ambient space
  double net_bound = 0.0;       // spherical width bound from the net argument, optimal δ
  double net_delta = 0.0;
  double net_bound_default = 0.0;  // same at δ = 1/sqrt(m ln 2m)
  double default_delta = 0.0;
  double combined_gaussian = 0.0;  // min over trivial, net and subadditive splits
  double combined = 0.0;           // combined_gaussian / γ_dim
  double inradius = 0.0;           // D^{-(m-1)/2}
};

namespace detail {

// log of the Gaussian-width net bound at δ:
//   -m ln(1 - δ²/2) + ½ ln(2 ln #F^m)
inline double log_net_gaussian(int D, int m, Field f, double delta) {
  const double contraction = 1.0 - 0.5 * delta * delta;
  if (contraction <= 0.0) return std::numeric_limits<double>::infinity();
  double log_card;
  if (f == Field::real && D == 3) {
    log_card = m * std::log(16.0 / (delta * delta));
  } else if (f == Field::real) {
    log_card = m * D * std::log1p(2.0 / delta);
  } else {
    log_card = m * 2.0 * D * std::log1p(2.0 / delta);
  }
  if (log_card <= 0.0) return std::numeric_limits<double>::infinity();
  return -m * std::log(contraction) + 0.5 * std::log(2.0 * log_card);
}

inline double delta_max(int D, Field f) {
  return (f == Field::real && D == 3) ? std::sqrt(2.0) : 1.0;
}

/// Minimizes log_net_gaussian on (0, delta_max): log-spaced scan then
/// golden-section refinement around the best grid point.
inline std::pair<double, double> optimize_net(int D, int m, Field f) {
  const double hi = delta_max(D, f) * (1.0 - 1e-12);
  const double lo = 1e-8;
  const int grid = 2000;
  double best_x = hi, best_v = std::numeric_limits<double>::infinity();
  int best_i = 0;
  std::vector<double> xs(grid + 1);
  for (int i = 0; i <= grid; ++i) {
    xs[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, static_cast<double>(i) / grid);
    const double v = log_net_gaussian(D, m, f, xs[static_cast<std::size_t>(i)]);
    if (v < best_v) {
      best_v = v;
      best_x = xs[static_cast<std::size_t>(i)];
      best_i = i;
    }
  }
  double a = xs[static_cast<std::size_t>(std::max(0, best_i - 1))];
  double b = xs[static_cast<std::size_t>(std::min(grid, best_i + 1))];
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
    const double c = b - phi * (b - a);
    const double d = a + phi * (b - a);
    if (log_net_gaussian(D, m, f, c) < log_net_gaussian(D, m, f, d)) {
      b = d;
    } else {
      a = c;
    }
  }
  const double x = 0.5 * (a + b);
  const double v = log_net_gaussian(D, m, f, x);
  if (v < best_v) return {x, v};
  return {best_x, best_v};
}

}  // namespace detail

/// Upper bounds on the mean width (hence the volume radius) of
/// (B_2^D)^{⊗̂m} (real or complex) from finite nets on the factor sphere.
/// For the real field the Gaussian-width bound is additionally improved by
/// subadditivity over splits m = j + (m - j) and by w_G ≤ γ_dim.
inline TensorPowerBound vrad_tensor_power_bound(int D, int m, Field field = Field::real) {
  if (m < 2) throw DomainError("vrad_tensor_power_bound: m must be >= 2");
  if (D < 2) throw DomainError("vrad_tensor_power_bound: D must be >= 2");
  TensorPowerBound r;
  r.D = D;
  r.m = m;
  r.field = field;
  const std::int64_t Dm = ipow(D, m);
  r.dim = field == Field::real ? Dm : 2 * Dm;
  const double log_g = log_gamma_n(r.dim);
  const auto [delta, log_net] = detail::optimize_net(D, m, field);
  r.net_delta = delta;
  r.net_bound = std::exp(log_net - log_g);
  r.default_delta = 1.0 / std::sqrt(m * std::log(2.0 * m));
  r.net_bound_default =
      std::exp(detail::log_net_gaussian(D, m, field, r.default_delta) - log_g);
  r.inradius = std::pow(static_cast<double>(D), -0.5 * (m - 1));

  if (field == Field::real) {
    std::vector<double> W(static_cast<std::size_t>(m + 1));
    W[1] = gamma_n(D);
    for (int k = 2; k <= m; ++k) {
      const std::int64_t dk = ipow(D, k);
      double w = gamma_n(dk);
      w = std::min(w, std::exp(detail::optimize_net(D, k, field).second));
      for (int j = 1; j < k; ++j) w = std::min(w, W[static_cast<std::size_t>(j)] + W[static_cast<std::size_t>(k - j)]);
      W[static_cast<std::size_t>(k)] = w;
    }
    r.combined_gaussian = W[static_cast<std::size_t>(m)];
  } else {
    r.combined_gaussian = std::min(std::exp(log_g), std::exp(log_net));
  }
  r.combined = r.combined_gaussian / std::exp(log_g);
  return r;
}

struct SigmaInradius {
  double radius = 0.0;              // 3/2 · 6^{-N/2} · D^{-(2N-1)/2}
  double radius_chain_variant = 0.0;  // 6^{-N/2} · D^{-(2N-1)/2}
  double gamma_inradius = 0.0;      // D^{-(2N-1)/2}
  double dN_bound = 0.0;            // 2/3 · 6^{N/2}
};

/// Certified Hilbert-Schmidt inradius of Σ about the origin.
inline SigmaInradius inradius_inclusion_sigma(FactorShape shape) {
  SigmaInradius r;
  const double D = shape.D();
  const double N = shape.N();
  r.gamma_inradius = std::pow(D, -0.5 * (2.0 * N - 1.0));
  r.dN_bound = 2.0 / 3.0 * std::pow(6.0, 0.5 * N);
  r.radius = r.gamma_inradius / r.dN_bound;
  r.radius_chain_variant = r.gamma_inradius * std::pow(6.0, -0.5 * N);
  return r;
}

/// (B_2^D)^{⊗̂m} over the reals, probes in R^{D^m}: h(u) = ‖u‖_inj.
inline BodyOracle oracle_real_tensor_ball(int D, int m, int n_starts = 16, int n_sweeps = 50,
                                          std::uint64_t seed = 0) {
  const auto dim = static_cast<int>(ipow(D, m));
  return BodyOracle("B2^" + std::to_string(D) + "_tensor_" + std::to_string(m),
                    ProbeSpace::euclidean(dim),
                    m <= 2 ? Exactness::exact : Exactness::lower_bound,
                    [D, m, n_starts, n_sweeps, seed](const Probe& u) {
                      const GeneralizedMatrix A = GeneralizedMatrix::from_real(D, m, as_vector(u));
                      return injective_norm(A, n_starts, n_sweeps,
                                            SeededStream(seed, probe_digest(u)))
                          .value;
                    });
}

}  // namespace sepvol
