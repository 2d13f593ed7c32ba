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

#include "sepvol/operators.hpp"
#include "sepvol/random.hpp"

#include <cmath>

namespace sepvol {

/// (g1 + i g2)/sqrt2 with g1, g2 standard normals; E|z|^2 = 1.
inline Complex complex_normal(SeededStream& s) {
  const double re = s.normal();
  const double im = s.normal();
  return {re * M_SQRT1_2, im * M_SQRT1_2};
}

/// d x d matrix of i.i.d. standard complex Gaussians.
inline CMatrix ginibre(Eigen::Index rows, Eigen::Index cols, SeededStream& s) {
  CMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = complex_normal(s);
  return g;
}

/// Haar-distributed unit vector in C^D.
inline CVector haar_vector(int D, SeededStream& s) {
  CVector v(D);
  for (int i = 0; i < D; ++i) v(i) = complex_normal(s);
  return v / v.norm();
}

/// Haar-distributed unitary via QR of a Ginibre matrix with phase fix.
inline CMatrix haar_unitary(int D, SeededStream& s) {
  const CMatrix g = ginibre(D, D, s);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < D; ++i) {
    const Complex rii = r(i, i);
    q.col(i) *= rii / std::abs(rii);
  }
  return q;
}

/// Uniform point on S^{dim_real - 1}.
inline RVector sample_sphere(int dim_real, SeededStream& s) {
  if (dim_real < 1) throw DomainError("sample_sphere: dim_real must be >= 1");
  RVector v(dim_real);
  double nrm = 0.0;
  do {
    for (int i = 0; i < dim_real; ++i) v(i) = s.normal();
    nrm = v.norm();
  } while (nrm == 0.0);
  return v / nrm;
}

/// Flat Hilbert-Schmidt (Lebesgue) measure on states: GG^†/tr(GG^†).
inline DensityMatrix sample_density_uniform(FactorShape shape, SeededStream& s) {
  const auto d = static_cast<Eigen::Index>(shape.d());
  const CMatrix g = ginibre(d, d, s);
  const CMatrix w = g * g.adjoint();
  const double tr = w.diagonal().real().sum();
  return DensityMatrix(HermitianOp(shape, w / tr));
}

inline ProductVector sample_pure_product(FactorShape shape, SeededStream& s) {
  std::vector<CVector> f;
  f.reserve(static_cast<std::size_t>(shape.N()));
  for (int k = 0; k < shape.N(); ++k) f.push_back(haar_vector(shape.D(), s));
  return ProductVector(std::move(f));
}

/// Standard Gaussian on (B_sa, <.,.>_HS), optionally restricted to the
/// traceless hyperplane: real diagonal N(0,1), off-diagonal (g1+ig2)/sqrt2.
inline HermitianOp sample_gaussian_hermitian(FactorShape shape, bool traceless, SeededStream& s) {
  const auto d = static_cast<Eigen::Index>(shape.d());
  CMatrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    m(i, i) = s.normal();
    for (Eigen::Index j = i + 1; j < d; ++j) {
      m(i, j) = complex_normal(s);
      m(j, i) = std::conj(m(i, j));
    }
  }
  HermitianOp g(shape, m);
  return traceless ? traceless_project(g, false) : g;
}

}  // namespace sepvol
