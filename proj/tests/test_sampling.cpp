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

namespace {

struct Acc {
  double n = 0, s = 0, ss = 0;
  void add(double x) {
    ++n;
    s += x;
    ss += x * x;
  }
  double mean() const { return s / n; }
  double se() const { return std::sqrt((ss / n - mean() * mean()) / (n - 1)); }
};

}  // namespace

TEST(Philox, KnownAnswer) {
  // Random123 known-answer vector for philox4x32-10 with zero counter and key.
  const auto out = Philox4x32::block({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out[0], 0x6627e8d5u);
  EXPECT_EQ(out[1], 0xe169c58du);
  EXPECT_EQ(out[2], 0xbc57ac4cu);
  EXPECT_EQ(out[3], 0x9b00dbd8u);
  const auto all = Philox4x32::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                     {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(all[0], 0x408f276du);
  EXPECT_EQ(all[1], 0x41c83b0eu);
  EXPECT_EQ(all[2], 0xa20bc7c6u);
  EXPECT_EQ(all[3], 0x6d5451fdu);
}

TEST(SeededStream, Reproducible) {
  SeededStream a(42, 7), b(42, 7), c(42, 8);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    differs |= x != c.next_u64();
  }
  EXPECT_TRUE(differs);
}

TEST(SeededStream, SplitIgnoresConsumedDraws) {
  SeededStream a(5);
  const SeededStream fresh = a.split(3);
  for (int i = 0; i < 17; ++i) a.normal();
  SeededStream x = fresh, y = a.split(3);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(x.next_u64(), y.next_u64());
}

TEST(SeededStream, SplitStreamsUncorrelated) {
  const SeededStream root(99);
  SeededStream u = root.split(0), v = root.split(1);
  Acc prod;
  for (int i = 0; i < 20000; ++i) prod.add(u.normal() * v.normal());
  EXPECT_LT(std::abs(prod.mean()), 4 * prod.se());
}

TEST(SeededStream, UniformKs) {
  SeededStream s(3);
  std::vector<double> x(5000);
  for (auto& v : x) v = s.uniform();
  EXPECT_LT(oracle::ks_statistic(x, [](double t) { return t; }), oracle::ks_critical(x.size()));
}

TEST(SeededStream, NormalKs) {
  SeededStream s(4);
  std::vector<double> x(5000);
  for (auto& v : x) v = s.normal();
  const auto cdf = [](double t) { return 0.5 * std::erfc(-t / std::sqrt(2.0)); };
  EXPECT_LT(oracle::ks_statistic(x, cdf), oracle::ks_critical(x.size()));
}

TEST(SampleDensity, QubitBarycenter) {
  SeededStream s(1);
  Acc e[2][2], im01;
  for (int k = 0; k < 100000; ++k) {
    const DensityMatrix rho = sample_density_uniform(FactorShape(2, 1), s);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) e[i][j].add(rho.op()(i, j).real());
    im01.add(rho.op()(0, 1).imag());
  }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double target = i == j ? 0.5 : 0.0;
      EXPECT_LE(std::abs(e[i][j].mean() - target), 3 * e[i][j].se() + 1e-15);
    }
  EXPECT_LE(std::abs(im01.mean()), 3 * im01.se());
}

TEST(SampleDensity, QubitPurityAgainstIndependentRun) {
  SeededStream s(2);
  Acc p;
  for (int k = 0; k < 100000; ++k) {
    const DensityMatrix rho = sample_density_uniform(FactorShape(2, 1), s);
    p.add(hs_inner(rho.op(), rho.op()));
  }
  oracle::Rng r(77);
  Acc q;
  for (int k = 0; k < 1000000; ++k) {
    const oracle::Mat rho = oracle::random_density(2, r);
    q.add(oracle::trace(oracle::mul(rho, rho)).real());
  }
  const double sig = std::hypot(p.se(), q.se());
  EXPECT_LE(std::abs(p.mean() - q.mean()), 3 * sig);
  EXPECT_LE(std::abs(q.mean() - 0.8), 3 * q.se());
}

TEST(SampleDensity, DistanceToMixedBounded) {
  SeededStream s(3);
  const FactorShape f(2, 2);
  const HermitianOp mixed = HermitianOp::identity(f) * 0.25;
  for (int k = 0; k < 5000; ++k) {
    const DensityMatrix rho = sample_density_uniform(f, s);
    const double dist = hs_norm(rho.op() - mixed);
    EXPECT_GE(dist, 0.0);
    EXPECT_LE(dist, std::sqrt(3.0) / 2.0 + 1e-12);
  }
}

TEST(SampleDensity, EigenvalueLawKs) {
  // HS-random qubits are uniform in the Bloch ball, so λ_max - 1/2 (half
  // the Bloch radius) has CDF 8t³ on [0, 1/2].
  SeededStream s(15);
  std::vector<double> x(4000);
  for (auto& v : x) v = lambda_max(sample_density_uniform(FactorShape(2, 1), s).op()) - 0.5;
  EXPECT_LT(oracle::ks_statistic(x, [](double t) { return 8.0 * t * t * t; }),
            oracle::ks_critical(x.size()));
}

TEST(SamplePureProduct, FactorsAndMean) {
  SeededStream s(4);
  const FactorShape f(3, 2);
  Acc re[3][3], im[3][3];
  for (int k = 0; k < 100000; ++k) {
    const ProductVector p = sample_pure_product(f, s);
    for (const auto& x : p.factors()) ASSERT_NEAR(x.norm(), 1.0, 1e-12);
    const CMatrix proj = p.factors()[1] * p.factors()[1].adjoint();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        re[i][j].add(proj(i, j).real());
        im[i][j].add(proj(i, j).imag());
      }
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      EXPECT_LE(std::abs(re[i][j].mean() - (i == j ? 1.0 / 3 : 0.0)), 3 * re[i][j].se() + 1e-15);
      if (i != j) EXPECT_LE(std::abs(im[i][j].mean()), 3 * im[i][j].se());
    }
}

TEST(SamplePureProduct, OverlapKs) {
  // |x_0|² of a Haar vector in C^D is Beta(1, D-1).
  SeededStream s(5);
  for (int D : {2, 3, 4}) {
    std::vector<double> x(4000);
    for (auto& v : x) v = std::norm(haar_vector(D, s)(0));
    const auto cdf = [D](double t) { return 1.0 - std::pow(1.0 - t, D - 1); };
    EXPECT_LT(oracle::ks_statistic(x, cdf), oracle::ks_critical(x.size())) << "D=" << D;
  }
}

TEST(SamplePureProduct, AlwaysPpt) {
  SeededStream s(6);
  for (int k = 0; k < 1000; ++k) {
    const ProductVector p = sample_pure_product(FactorShape(2, 2), s);
    EXPECT_TRUE(is_ppt(DensityMatrix(p.projector())).is_ppt);
  }
}

TEST(HaarUnitary, Unitary) {
  SeededStream s(7);
  for (int D : {2, 3, 5}) {
    const CMatrix u = haar_unitary(D, s);
    EXPECT_LT((u * u.adjoint() - CMatrix::Identity(D, D)).norm(), 1e-12);
  }
}

TEST(GaussianHermitian, SquaredNorm) {
  SeededStream s(8);
  for (bool tl : {false, true}) {
    Acc a;
    for (int k = 0; k < 100000; ++k) {
      const HermitianOp g = sample_gaussian_hermitian(FactorShape(2, 1), tl, s);
      a.add(hs_inner(g, g));
      if (tl) EXPECT_NEAR(g.trace(), 0.0, 1e-12);
    }
    EXPECT_LE(std::abs(a.mean() - (tl ? 3.0 : 4.0)), 3 * a.se());
  }
}

TEST(GaussianHermitian, IsotropicProjection) {
  SeededStream s(9);
  oracle::Rng r(9);
  const FactorShape f(2, 2);
  const HermitianOp A = bridge::random_hermitian(f, r);
  Acc a;
  for (int k = 0; k < 50000; ++k) {
    const double t = hs_inner(sample_gaussian_hermitian(f, false, s), A);
    a.add(t * t);
  }
  EXPECT_LE(std::abs(a.mean() - hs_inner(A, A)), 3 * a.se());
}

TEST(SampleSphere, Moments) {
  SeededStream s(10);
  const int m = 6;
  Acc x0, x0sq;
  for (int k = 0; k < 100000; ++k) {
    const RVector v = sample_sphere(m, s);
    EXPECT_NEAR(v.norm(), 1.0, 1e-12);
    x0.add(v(0));
    x0sq.add(v(0) * v(0));
  }
  EXPECT_LE(std::abs(x0.mean()), 3 * x0.se());
  EXPECT_LE(std::abs(x0sq.mean() - 1.0 / m), 3 * x0sq.se());
  EXPECT_THROW(sample_sphere(0, s), DomainError);
}
