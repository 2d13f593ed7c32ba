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

#include "bridge.hpp"

#include <gtest/gtest.h>

using namespace sepvol;

TEST(GammaN, ClosedForms) {
  EXPECT_NEAR(gamma_n(1), std::sqrt(2.0 / std::numbers::pi), 1e-15);
  EXPECT_NEAR(gamma_n(2), std::sqrt(std::numbers::pi / 2.0), 1e-15);
  EXPECT_NEAR(gamma_n(4), 1.8800, 1e-4);
  const double g = gamma_n(10000);
  EXPECT_GT(g, std::sqrt(9999.0));
  EXPECT_LT(g, 100.0);
  EXPECT_THROW(gamma_n(0), DomainError);
}

TEST(GammaN, MatchesRecursion) {
  double prev = 0.0;
  for (int m = 1; m <= 300; ++m) {
    EXPECT_NEAR(gamma_n(m), oracle::gamma_recursive(m), 1e-11 * std::sqrt(m));
    EXPECT_LT(gamma_n(m), std::sqrt(static_cast<double>(m)));
    const double ratio = gamma_n(m) / std::sqrt(static_cast<double>(m));
    EXPECT_GT(ratio, prev);
    prev = ratio;
  }
}

TEST(VolumeOfStates, QubitBlochBall) {
  const StateVolume v = vol_D_exact(2);
  EXPECT_EQ(v.n, 3);
  const double vol = std::exp(v.log_vol);
  EXPECT_NEAR(vol / (std::numbers::pi * std::sqrt(2.0) / 3.0), 1.0, 1e-12);
  EXPECT_NEAR(vol / oracle::ball3_volume(1.0 / std::sqrt(2.0)), 1.0, 1e-12);
  EXPECT_NEAR(v.vrad, 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(VolumeOfStates, VradBounds) {
  for (int d = 2; d <= 64; ++d) {
    const double s = vol_D_exact(d).vrad * std::sqrt(static_cast<double>(d));
    EXPECT_GE(s, 0.5) << d;
    EXPECT_LE(s, 2.0) << d;
  }
  EXPECT_NEAR(vol_D_exact(64).vrad * 8.0 * std::exp(0.25), 1.0, 0.02);
  EXPECT_THROW(vol_D_exact(1), DomainError);
  EXPECT_THROW(vol_D_exact(65), DomainError);
}

TEST(VolumeOfStates, QubitPairRejectionSampling) {
  // d = 2: fraction of the cube [-1, 1]^3 (traceless HS coordinates about
  // Id/2) occupied by states, against vol(𝒟).
  oracle::Rng r(1);
  const int n = 200000;
  int hits = 0;
  for (int k = 0; k < n; ++k) {
    const double x = 2 * r.uniform() - 1, y = 2 * r.uniform() - 1, z = 2 * r.uniform() - 1;
    oracle::Mat m(2);
    const double s = 1.0 / std::sqrt(2.0);
    m(0, 0) = 0.5 + s * z;
    m(1, 1) = 0.5 - s * z;
    m(0, 1) = {s * x, -s * y};
    m(1, 0) = {s * x, s * y};
    if (oracle::eigenvalues(m).front() >= 0) ++hits;
  }
  const double p = static_cast<double>(hits) / n;
  const double se = std::sqrt(p * (1 - p) / n) * 8.0;
  EXPECT_NEAR(8.0 * p, std::exp(vol_D_exact(2).log_vol), 3 * se);
}

TEST(GaussianWidth, HsBall) {
  const BodyOracle ball = oracle_ball(ProbeSpace::hermitian(FactorShape(2, 1)));
  const WidthEstimate w = gaussian_width_mc(ball, 20000, SeededStream(3));
  EXPECT_EQ(w.dim, 4);
  EXPECT_LE(std::abs(w.mean - gamma_n(4)), 3 * w.std_error);
  EXPECT_NEAR(w.spherical().mean, w.mean / gamma_n(4), 1e-15);
  EXPECT_FALSE(w.spherical().gaussian);
}

TEST(GaussianWidth, Segment) {
  RVector u = RVector::Zero(5);
  u(2) = 1.0;
  const WidthEstimate w = gaussian_width_mc(oracle_segment(u), 20000, SeededStream(4));
  EXPECT_LE(std::abs(w.mean - std::sqrt(2.0 / std::numbers::pi)), 3 * w.std_error);
}

TEST(GaussianWidth, QubitTraceBall) {
  const WidthEstimate w =
      gaussian_width_mc(oracle_Delta(FactorShape(2, 1)), 20000, SeededStream(5)).spherical();
  EXPECT_LE(w.mean - 3 * w.std_error, 2.0 / std::sqrt(2.0));
  EXPECT_GE(w.mean + 3 * w.std_error, 1.0 / std::sqrt(2.0));
}

TEST(GaussianWidth, WorkerCountInvariant) {
  const BodyOracle K = oracle_D_centered(FactorShape(2, 2));
  const WidthEstimate a = gaussian_width_mc(K, 300, SeededStream(6), 1);
  const WidthEstimate b = gaussian_width_mc(K, 300, SeededStream(6), 3);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(GaussianWidth, LowerBoundFlag) {
  const WidthEstimate w =
      gaussian_width_mc(oracle_Sigma(FactorShape(2, 2), 2, 10), 10, SeededStream(7));
  EXPECT_EQ(w.exactness, Exactness::lower_bound);
  EXPECT_THROW(urysohn_vrad_bound(w), DomainError);
  EXPECT_THROW(gaussian_width_mc(oracle_Delta(FactorShape(2, 1)), 1, SeededStream(7)), DomainError);
}

TEST(MeanAndSe, Definition) {
  const MeanSe m = mean_and_se({1.0, 2.0, 3.0, 4.0});
  EXPECT_DOUBLE_EQ(m.mean, 2.5);
  EXPECT_NEAR(m.std_error, std::sqrt(5.0 / 3.0) / 2.0, 1e-15);
}

TEST(PolytopeWidth, ClosedFormAndLimits) {
  EXPECT_NEAR(polytope_width_bound(2, 4), std::sqrt(2 * std::log(2.0)) / gamma_n(4), 1e-15);
  EXPECT_NEAR(polytope_width_bound(2, 4), 0.6263, 1e-4);
  EXPECT_LT(polytope_width_bound(1000000, 1000000), 0.01);
  EXPECT_THROW(polytope_width_bound(1, 4), DomainError);
}

TEST(PolytopeWidth, RandomVerticesBelowBound) {
  SeededStream s(8);
  for (int v : {2, 10, 100}) {
    std::vector<RVector> pts;
    for (int i = 0; i < v; ++i) pts.push_back(sample_sphere(10, s));
    const WidthEstimate w = gaussian_width_mc(oracle_polytope(pts), 5000, s.split(v));
    EXPECT_LE(w.mean - 3 * w.std_error, std::sqrt(2 * std::log(static_cast<double>(v))));
  }
}

TEST(Urysohn, Examples) {
  const WidthEstimate ball =
      gaussian_width_mc(oracle_ball(ProbeSpace::euclidean(6)), 20000, SeededStream(9));
  const double b = urysohn_vrad_bound(ball);
  EXPECT_GE(b, 1.0);
  EXPECT_LT(b, 1.02);
  const double bd =
      urysohn_vrad_bound(gaussian_width_mc(oracle_Delta(FactorShape(2, 1)), 20000, SeededStream(10)));
  EXPECT_GE(bd, 1.0 / std::sqrt(2.0));
  EXPECT_LE(bd, 2.0 / std::sqrt(2.0));
  RVector u = RVector::Unit(3, 0);
  EXPECT_GE(urysohn_vrad_bound(gaussian_width_mc(oracle_segment(u), 1000, SeededStream(11))), 0.0);
  WidthEstimate sph = ball.spherical();
  EXPECT_THROW(urysohn_vrad_bound(sph), DomainError);
}

TEST(Symmetrization, QubitBallIsEquality) {
  // W = 𝒟(C²), a 3-ball of radius 1/√2 at distance h = 1/√2 from the
  // origin; conv(W ∪ -W) is the cylinder of height 2h over it.
  const double r = 1.0 / std::sqrt(2.0), h = 1.0 / std::sqrt(2.0);
  const double vol_omega = 2 * h * oracle::ball3_volume(r);
  const double vrad_omega = std::pow(vol_omega / (std::numbers::pi * std::numbers::pi / 2.0), 0.25);
  const SymmetrizationCheck c = symmetrization_ratio_bounds(r, vrad_omega, 3, h);
  EXPECT_TRUE(c.lower_holds);
  EXPECT_TRUE(c.upper_holds);
  EXPECT_NEAR(c.lower_slack, 0.0, 1e-12);
  EXPECT_NEAR(c.upper_slack, 3 * std::log(2.0) - std::log(4.0), 1e-12);
  EXPECT_NEAR(c.rs_root, 2.0 / std::cbrt(4.0), 1e-15);
  EXPECT_LT(c.rs_root, 2.0);
  EXPECT_THROW(symmetrization_ratio_bounds(-1, 1, 3, 1), DomainError);
}

TEST(Symmetrization, QubitTraceBallVolumeByRejection) {
  // vol Δ(C²) by membership sampling in [-1, 1]^4 (HS coordinates), against 2h vol 𝒟.
  oracle::Rng rng(12);
  const int n = 200000;
  int hits = 0;
  const FactorShape q(2, 1);
  for (int k = 0; k < n; ++k) {
    RVector c(4);
    for (int i = 0; i < 4; ++i) c(i) = 2 * rng.uniform() - 1;
    double tn = 0;
    for (double e : oracle::eigenvalues(bridge::to_mat(from_coords(q, c)))) tn += std::abs(e);
    if (tn <= 1.0) ++hits;
  }
  const double p = static_cast<double>(hits) / n;
  const double vol = 16.0 * p, se = 16.0 * std::sqrt(p * (1 - p) / n);
  const double ref = 2.0 / std::sqrt(2.0) * std::exp(vol_D_exact(2).log_vol);
  EXPECT_NEAR(vol, ref, 3 * se);
}

TEST(Transfer, Forms) {
  const RatioInterval p = transfer_ratio_simple(0.3, 0.7);
  EXPECT_DOUBLE_EQ(p.lower, 0.15);
  EXPECT_DOUBLE_EQ(p.upper, 1.4);
  const RatioInterval r = transfer_ratio_rigorous(0.3, 0.7, 4);
  const double rs = std::pow(std::pow(2.0, 15) / 16.0, 1.0 / 15);
  EXPECT_NEAR(r.lower, std::pow(0.3, 16.0 / 15) / rs, 1e-14);
  EXPECT_NEAR(r.upper, std::pow(0.7, 16.0 / 15) * rs, 1e-14);
}
