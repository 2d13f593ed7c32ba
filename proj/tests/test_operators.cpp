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

double oracle_trace_norm(const HermitianOp& a) {
  double s = 0.0;
  for (double e : oracle::eigenvalues(bridge::to_mat(a))) s += std::abs(e);
  return s;
}

}  // namespace

TEST(FactorShape, Dimensions) {
  const FactorShape s(3, 2);
  EXPECT_EQ(s.d(), 9);
  EXPECT_EQ(s.n(), 80);
  EXPECT_THROW(FactorShape(0, 2), ShapeError);
  EXPECT_THROW(HermitianOp::identity(FactorShape(2, 9)), ShapeError);
  EXPECT_NO_THROW(FactorShape(2, 40));
}

TEST(HermitianOp, SymmetrizesInput) {
  CMatrix m(2, 2);
  m << 1, Complex(2, 1), Complex(0, 3), 4;
  const HermitianOp a(FactorShape(2, 1), m);
  EXPECT_EQ(a.matrix(), a.matrix().adjoint());
  EXPECT_THROW(HermitianOp(FactorShape(2, 2), m), ShapeError);
}

TEST(HsInner, MaximallyMixed) {
  for (int N = 1; N <= 3; ++N) {
    const FactorShape s(2, N);
    const HermitianOp m = HermitianOp::identity(s) * (1.0 / s.d());
    EXPECT_NEAR(hs_inner(m, m), 1.0 / s.d(), 1e-15);
  }
}

TEST(HsInner, PaulisOrthogonal) {
  EXPECT_EQ(hs_inner(pauli('x'), pauli('z')), 0.0);
  EXPECT_EQ(hs_inner(pauli('x'), pauli('y')), 0.0);
  EXPECT_NEAR(hs_inner(pauli('y'), pauli('y')), 2.0, 1e-15);
}

TEST(HsInner, PurityOfRandomStates) {
  oracle::Rng r(11);
  for (int k = 0; k < 50; ++k) {
    const DensityMatrix rho = bridge::random_density(FactorShape(2, 2), r);
    const double p = hs_inner(rho.op(), rho.op());
    double ref = 0.0;
    for (double e : oracle::eigenvalues(bridge::to_mat(rho.op()))) ref += e * e;
    EXPECT_NEAR(p, ref, 1e-12);
    EXPECT_GE(p, 0.25 - 1e-12);
    EXPECT_LE(p, 1.0 + 1e-12);
  }
}

TEST(HsInner, ShapeMismatchThrows) {
  EXPECT_THROW(hs_inner(HermitianOp::identity(FactorShape(2, 1)),
                        HermitianOp::identity(FactorShape(2, 2))),
               ShapeError);
}

TEST(TraceNorm, Examples) {
  const RVector diag = (RVector(2) << 0.5, -0.5).finished();
  EXPECT_NEAR(trace_norm(HermitianOp::diagonal(FactorShape(2, 1), diag)), 1.0, 1e-15);
  oracle::Rng r(3);
  for (int k = 0; k < 20; ++k) {
    EXPECT_NEAR(trace_norm(bridge::random_density(FactorShape(3, 1), r).op()), 1.0, 1e-12);
  }
}

TEST(TraceNorm, MatchesCubicRoots) {
  oracle::Rng r(5);
  for (int k = 0; k < 100; ++k) {
    const HermitianOp a = bridge::random_hermitian(FactorShape(3, 1), r);
    double ref = 0.0;
    for (double e : oracle::eigenvalues3(bridge::to_mat(a))) ref += std::abs(e);
    EXPECT_NEAR(trace_norm(a), ref, 1e-10);
  }
}

TEST(OperatorNorm, Examples) {
  EXPECT_NEAR(operator_norm(HermitianOp::identity(FactorShape(2, 2))), 1.0, 1e-15);
  oracle::Rng r(8);
  const CVector x = bridge::random_unit(4, r);
  EXPECT_NEAR(operator_norm(HermitianOp::projector(FactorShape(2, 2), x)), 1.0, 1e-12);
}

TEST(OperatorNorm, TraceDuality) {
  oracle::Rng r(13);
  const FactorShape s(2, 2);
  for (int k = 0; k < 100; ++k) {
    const HermitianOp a = bridge::random_hermitian(s, r);
    const HermitianOp b = bridge::random_hermitian(s, r);
    EXPECT_LE(std::abs(hs_inner(a, b)), trace_norm(a) * operator_norm(b) * (1 + 1e-12));
  }
}

TEST(Eigen, MatchesJacobiOracle) {
  oracle::Rng r(21);
  for (int D : {2, 3}) {
    const FactorShape s(D, 2);
    const HermitianOp a = bridge::random_hermitian(s, r);
    const RVector ev = eigenvalues(a);
    const auto ref = oracle::eigenvalues(bridge::to_mat(a));
    ASSERT_EQ(static_cast<std::size_t>(ev.size()), ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(ev(static_cast<Eigen::Index>(i)), ref[i], 1e-10);
    const Spectrum sp = eigh(a);
    const CMatrix rec = sp.vectors * sp.values.cast<Complex>().asDiagonal() * sp.vectors.adjoint();
    EXPECT_LT((rec - a.matrix()).norm(), 1e-10);
  }
}

TEST(Tensor, MaximallyMixedProduct) {
  const FactorShape q(2, 1);
  const HermitianOp m = HermitianOp::identity(q) * 0.5;
  const HermitianOp t = tensor(m, m);
  EXPECT_EQ(t.shape(), FactorShape(2, 2));
  EXPECT_LT((t.matrix() - CMatrix::Identity(4, 4) * 0.25).norm(), 1e-15);
}

TEST(Tensor, ProductOfProjectors) {
  oracle::Rng r(4);
  const CVector x = bridge::random_unit(2, r), y = bridge::random_unit(2, r);
  const FactorShape q(2, 1);
  const HermitianOp t = tensor(HermitianOp::projector(q, x), HermitianOp::projector(q, y));
  const HermitianOp p = HermitianOp::projector(FactorShape(2, 2), kron(x, y));
  EXPECT_LT((t.matrix() - p.matrix()).norm(), 1e-14);
}

TEST(Tensor, TraceNormMultiplicative) {
  oracle::Rng r(6);
  for (int k = 0; k < 30; ++k) {
    const HermitianOp a = bridge::random_hermitian(FactorShape(2, 1), r);
    const HermitianOp b = bridge::random_hermitian(FactorShape(2, 1), r);
    EXPECT_NEAR(trace_norm(tensor(a, b)), oracle_trace_norm(a) * oracle_trace_norm(b), 1e-10);
  }
}

TEST(Tensor, KroneckerMatchesOracle) {
  oracle::Rng r(7);
  const HermitianOp a = bridge::random_hermitian(FactorShape(3, 1), r);
  const HermitianOp b = bridge::random_hermitian(FactorShape(3, 1), r);
  const oracle::Mat ref = oracle::kron(bridge::to_mat(a), bridge::to_mat(b));
  EXPECT_LT((tensor(a, b).matrix() - bridge::from_mat(ref)).norm(), 1e-13);
  EXPECT_THROW(tensor(a, HermitianOp::identity(FactorShape(2, 1))), ShapeError);
}

TEST(HermitianPart, Examples) {
  const FactorShape s(2, 1);
  const HermitianOp h = pauli('y');
  EXPECT_EQ(hermitian_part(s, h.matrix()).matrix(), h.matrix());
  CMatrix anti(2, 2);
  anti << Complex(0, 1), 2, -2, Complex(0, -3);
  EXPECT_LT(hs_norm(hermitian_part(s, anti)), 1e-15);
  oracle::Rng r(9);
  for (int k = 0; k < 50; ++k) {
    CMatrix m(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) = r.cnormal();
    EXPECT_LE(hs_norm(hermitian_part(FactorShape(2, 2), m)), m.norm() * (1 + 1e-15));
  }
}

TEST(TracelessProject, Examples) {
  const FactorShape s(2, 2);
  for (bool per : {false, true}) {
    EXPECT_LT(hs_norm(traceless_project(HermitianOp::identity(s), per)), 1e-15);
  }
  const HermitianOp xz = tensor(pauli('x'), pauli('z'));
  EXPECT_LT((traceless_project(xz, true) - xz).matrix().norm(), 1e-15);
  const HermitianOp xi = tensor(pauli('x'), pauli('i'));
  EXPECT_LT(hs_norm(traceless_project(xi, true)), 1e-15);
  EXPECT_LT((traceless_project(xi, false) - xi).matrix().norm(), 1e-15);
}

TEST(TracelessProject, QubitExtremePointsInSmallBall) {
  // Trace-norm-one 2x2 Hermitians project into a ball of radius 1/sqrt2.
  oracle::Rng r(10);
  const FactorShape q(2, 1);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    HermitianOp a = bridge::random_hermitian(q, r);
    a = a * (1.0 / trace_norm(a));
    worst = std::max(worst, hs_norm(traceless_project(a, true)));
  }
  EXPECT_LE(worst, 1.0 / std::sqrt(2.0) + 1e-12);
  EXPECT_GT(worst, 0.7);
}

TEST(Coords, RoundTripAndIsometry) {
  oracle::Rng r(12);
  const FactorShape s(3, 1);
  for (bool tl : {false, true}) {
    HermitianOp a = bridge::random_hermitian(s, r);
    if (tl) a = traceless_project(a, false);
    const HermitianOp b = bridge::random_hermitian(s, r);
    const RVector ca = to_coords(a, tl);
    EXPECT_EQ(ca.size(), tl ? 8 : 9);
    EXPECT_LT((from_coords(s, ca, tl) - a).matrix().norm(), 1e-13);
    EXPECT_NEAR(ca.dot(to_coords(traceless_project(b, false), tl)),
                hs_inner(a, traceless_project(b, false)), 1e-12);
  }
}

TEST(ApplyFactorMap, PartialTraceAgainstOracle) {
  // s X + c tr_j(X) ⊗ Id on factor 1 of C^2 ⊗ C^3 style shapes (D=3, N=2).
  oracle::Rng r(14);
  const FactorShape s(3, 2);
  const HermitianOp a = bridge::random_hermitian(s, r);
  const HermitianOp out = apply_factor_map(a, 1, 0.5, 2.0);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l) {
          Complex tr = 0;
          for (int m = 0; m < 3; ++m) tr += a(i * 3 + m, j * 3 + m);
          const Complex ref = 0.5 * a(i * 3 + k, j * 3 + l) + (k == l ? 2.0 * tr : Complex(0));
          EXPECT_LT(std::abs(out(i * 3 + k, j * 3 + l) - ref), 1e-13);
        }
}

TEST(DensityMatrix, Invariants) {
  const FactorShape s(2, 1);
  EXPECT_THROW(DensityMatrix(HermitianOp::identity(s)), DomainError);
  EXPECT_THROW(DensityMatrix(pauli('z') * 0.5 + HermitianOp::identity(s) * 0.5 - pauli('x')),
               DomainError);
  EXPECT_NO_THROW(DensityMatrix::maximally_mixed(FactorShape(3, 2)));
}

TEST(ProductVector, Invariants) {
  CVector a(2), b(2);
  a << 1, 0;
  b << 0.6, Complex(0, 0.8);
  const ProductVector p({a, b});
  EXPECT_EQ(p.shape(), FactorShape(2, 2));
  EXPECT_NEAR(p.state().norm(), 1.0, 1e-15);
  EXPECT_THROW(ProductVector({a, CVector::Ones(2)}), DomainError);
  EXPECT_THROW(ProductVector({a, CVector::Ones(3) / std::sqrt(3.0)}), ShapeError);
}
