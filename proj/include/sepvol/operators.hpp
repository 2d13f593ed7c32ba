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

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sepvol {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Largest Hilbert-space dimension handled by the dense operator types.
inline constexpr std::int64_t kMaxDenseDim = 256;

inline std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > (std::int64_t{1} << 62) / base) throw ShapeError("ipow: overflow");
    r *= base;
  }
  return r;
}

/// Homogeneous tensor structure (C^D)^{⊗N}.
///
/// The shape itself is not bounded by the dense envelope so that closed-form
/// evaluators can take large N; HermitianOp enforces d <= kMaxDenseDim.
class FactorShape {
 public:
  FactorShape(int local_dim, int factors) : D_(local_dim), N_(factors) {
    if (local_dim < 1 || factors < 1) {
      throw ShapeError("FactorShape: D and N must be positive");
    }
    d_ = ipow(local_dim, factors);
  }

  int D() const { return D_; }
  int N() const { return N_; }
  std::int64_t d() const { return d_; }
  /// Real dimension of the trace-one hyperplane, d^2 - 1.
  std::int64_t n() const { return d_ * d_ - 1; }

  bool operator==(const FactorShape&) const = default;

  std::string str() const {
    return "(D=" + std::to_string(D_) + ", N=" + std::to_string(N_) + ")";
  }

 private:
  int D_;
  int N_;
  std::int64_t d_;
};

/// Self-adjoint operator on (C^D)^{⊗N}. Entries are symmetrized on
/// construction, so the stored matrix equals its adjoint bit for bit.
class HermitianOp {
 public:
  HermitianOp(FactorShape shape, const CMatrix& m) : shape_(shape) {
    check_dims(m);
    m_ = 0.5 * (m + m.adjoint());
  }

  static HermitianOp identity(FactorShape shape) {
    check_envelope(shape);
    const auto d = static_cast<Eigen::Index>(shape.d());
    return {shape, CMatrix::Identity(d, d), Trusted{}};
  }

  static HermitianOp zero(FactorShape shape) {
    check_envelope(shape);
    const auto d = static_cast<Eigen::Index>(shape.d());
    return {shape, CMatrix::Zero(d, d), Trusted{}};
  }

  /// |v><v| (not normalized).
  static HermitianOp projector(FactorShape shape, const CVector& v) {
    if (v.size() != shape.d()) throw ShapeError("projector: vector size");
    return HermitianOp(shape, v * v.adjoint());
  }

  /// Diagonal operator with the given real entries.
  static HermitianOp diagonal(FactorShape shape, const RVector& diag) {
    if (diag.size() != shape.d()) throw ShapeError("diagonal: size");
    return {shape, diag.cast<Complex>().asDiagonal().toDenseMatrix(), Trusted{}};
  }

  const FactorShape& shape() const { return shape_; }
  const CMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  double trace() const { return m_.diagonal().real().sum(); }

  HermitianOp operator+(const HermitianOp& o) const {
    require_same(o);
    return {shape_, m_ + o.m_, Trusted{}};
  }
  HermitianOp operator-(const HermitianOp& o) const {
    require_same(o);
    return {shape_, m_ - o.m_, Trusted{}};
  }
  HermitianOp operator-() const { return {shape_, -m_, Trusted{}}; }
  HermitianOp operator*(double s) const { return {shape_, s * m_, Trusted{}}; }
  friend HermitianOp operator*(double s, const HermitianOp& a) { return a * s; }

  /// Conjugation U a U^† (result re-symmetrized).
  HermitianOp conjugated(const CMatrix& u) const {
    return HermitianOp(shape_, u * m_ * u.adjoint());
  }

  void require_same(const HermitianOp& o) const {
    if (!(shape_ == o.shape_)) {
      throw ShapeError("shape mismatch: " + shape_.str() + " vs " + o.shape_.str());
    }
  }

 private:
  struct Trusted {};
  // Inputs already exactly Hermitian: sums, real multiples and Kronecker
  // products of Hermitian matrices are closed under IEEE arithmetic.
  HermitianOp(FactorShape shape, CMatrix m, Trusted) : shape_(shape), m_(std::move(m)) {}

  static void check_envelope(const FactorShape& s) {
    if (s.d() > kMaxDenseDim) {
      throw ShapeError("dense operators are limited to d <= 256, got " + s.str());
    }
  }
  void check_dims(const CMatrix& m) const {
    check_envelope(shape_);
    if (m.rows() != shape_.d() || m.cols() != shape_.d()) {
      throw ShapeError("HermitianOp: matrix is not d x d for shape " + shape_.str());
    }
  }

  FactorShape shape_;
  CMatrix m_;

  friend HermitianOp tensor(const HermitianOp&, const HermitianOp&);
  friend HermitianOp apply_factor_map(const HermitianOp&, int, double, double);
  friend HermitianOp partial_transpose(const HermitianOp&, int);
};

struct Spectrum {
  RVector values;   // ascending
  CMatrix vectors;  // columns are orthonormal eigenvectors
};

inline Spectrum eigh(const HermitianOp& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a.matrix());
  if (es.info() != Eigen::Success) throw DomainError("eigh: solver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

inline RVector eigenvalues(const HermitianOp& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a.matrix(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw DomainError("eigenvalues: solver failed");
  return es.eigenvalues();
}

inline double lambda_max(const HermitianOp& a) { return eigenvalues(a).maxCoeff(); }
inline double lambda_min(const HermitianOp& a) { return eigenvalues(a).minCoeff(); }

/// tr(ab); real for Hermitian arguments.
inline double hs_inner(const HermitianOp& a, const HermitianOp& b) {
  a.require_same(b);
  // tr(AB) = sum_ij conj(A_ij) B_ij for Hermitian A.
  return (a.matrix().conjugate().cwiseProduct(b.matrix())).sum().real();
}

inline double hs_norm(const HermitianOp& a) { return a.matrix().norm(); }

inline double trace_norm(const HermitianOp& a) { return eigenvalues(a).cwiseAbs().sum(); }

inline double operator_norm(const HermitianOp& a) {
  return eigenvalues(a).cwiseAbs().maxCoeff();
}

/// Kronecker product a ⊗ b; local dimensions must agree.
inline HermitianOp tensor(const HermitianOp& a, const HermitianOp& b) {
  if (a.shape().D() != b.shape().D()) {
    throw ShapeError("tensor: local dimensions differ");
  }
  const FactorShape out(a.shape().D(), a.shape().N() + b.shape().N());
  HermitianOp::check_envelope(out);
  const auto da = a.dim();
  const auto db = b.dim();
  CMatrix m(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      m.block(i * db, j * db, db, db) = a(i, j) * b.matrix();
    }
  }
  return {out, std::move(m), HermitianOp::Trusted{}};
}

inline CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

/// π(A) = (A + A^†)/2, the orthogonal projection onto the self-adjoint part.
inline HermitianOp hermitian_part(FactorShape shape, const CMatrix& a) {
  return HermitianOp(shape, a);
}

/// Applies X -> s X + c tr(X) Id to factor `j` (0-based, most significant
/// first) and the identity to all other factors.
inline HermitianOp apply_factor_map(const HermitianOp& a, int j, double s, double c) {
  const int D = a.shape().D();
  const int N = a.shape().N();
  if (j < 0 || j >= N) throw ShapeError("apply_factor_map: factor index out of range");
  const Eigen::Index d = a.dim();
  const Eigen::Index stride = ipow(D, N - 1 - j);
  CMatrix out = s * a.matrix();
  if (c != 0.0) {
    for (Eigen::Index r = 0; r < d; ++r) {
      const Eigen::Index rj = (r / stride) % D;
      const Eigen::Index r0 = r - rj * stride;
      for (Eigen::Index col = 0; col < d; ++col) {
        const Eigen::Index cj = (col / stride) % D;
        if (cj != rj) continue;
        const Eigen::Index c0 = col - cj * stride;
        Complex acc = 0.0;
        for (Eigen::Index k = 0; k < D; ++k) acc += a(r0 + k * stride, c0 + k * stride);
        out(r, col) += c * acc;
      }
    }
  }
  return {a.shape(), std::move(out), HermitianOp::Trusted{}};
}

/// Projection onto traceless operators: globally (a - tr(a) Id/d), or per
/// factor (P ⊗ ... ⊗ P with P the traceless projection on one factor).
inline HermitianOp traceless_project(const HermitianOp& a, bool per_factor) {
  if (!per_factor) {
    const double t = a.trace() / static_cast<double>(a.dim());
    return a - HermitianOp::identity(a.shape()) * t;
  }
  HermitianOp out = a;
  const double c = -1.0 / a.shape().D();
  for (int j = 0; j < a.shape().N(); ++j) out = apply_factor_map(out, j, 1.0, c);
  return out;
}

// Coordinates in an HS-orthonormal basis. Full space (d^2 coordinates):
// diagonal entries, then for each pair j<k the values sqrt2*Re a_jk and
// sqrt2*Im a_jk. Traceless space (d^2-1): the diagonal block is replaced by
// the Helmert basis h_l = (E_00+...+E_{l-1,l-1} - l E_ll)/sqrt(l(l+1)).

inline RVector to_coords(const HermitianOp& a, bool traceless = false) {
  const Eigen::Index d = a.dim();
  const Eigen::Index ndiag = traceless ? d - 1 : d;
  RVector c(ndiag + d * (d - 1));
  if (traceless) {
    double prefix = 0.0;
    for (Eigen::Index l = 1; l < d; ++l) {
      prefix += a(l - 1, l - 1).real();
      const double ll = static_cast<double>(l);
      c(l - 1) = (prefix - ll * a(l, l).real()) / std::sqrt(ll * (ll + 1.0));
    }
  } else {
    for (Eigen::Index i = 0; i < d; ++i) c(i) = a(i, i).real();
  }
  Eigen::Index p = ndiag;
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = j + 1; k < d; ++k) {
      c(p++) = M_SQRT2 * a(j, k).real();
      c(p++) = M_SQRT2 * a(j, k).imag();
    }
  }
  return c;
}

inline HermitianOp from_coords(FactorShape shape, const RVector& c, bool traceless = false) {
  const auto d = static_cast<Eigen::Index>(shape.d());
  const Eigen::Index ndiag = traceless ? d - 1 : d;
  if (c.size() != ndiag + d * (d - 1)) throw ShapeError("from_coords: coordinate count");
  CMatrix m = CMatrix::Zero(d, d);
  if (traceless) {
    // Accumulate sum_l c_l h_l from the largest l down.
    double tail = 0.0;
    for (Eigen::Index k = d - 1; k >= 0; --k) {
      double v = tail;
      if (k >= 1) {
        const double kk = static_cast<double>(k);
        v -= kk * c(k - 1) / std::sqrt(kk * (kk + 1.0));
        tail += c(k - 1) / std::sqrt(kk * (kk + 1.0));
      }
      m(k, k) = v;
    }
  } else {
    for (Eigen::Index i = 0; i < d; ++i) m(i, i) = c(i);
  }
  Eigen::Index p = ndiag;
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = j + 1; k < d; ++k) {
      const Complex z(c(p) / M_SQRT2, c(p + 1) / M_SQRT2);
      m(j, k) = z;
      m(k, j) = std::conj(z);
      p += 2;
    }
  }
  return HermitianOp(shape, m);
}

/// Positive semi-definite, trace-one HermitianOp.
class DensityMatrix {
 public:
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kPsdTol = -1e-10;

  explicit DensityMatrix(HermitianOp op) : op_(std::move(op)) {
    if (std::abs(op_.trace() - 1.0) > kTraceTol) {
      throw DomainError("DensityMatrix: trace differs from 1");
    }
    if (lambda_min(op_) < kPsdTol) throw DomainError("DensityMatrix: not positive");
  }

  static DensityMatrix maximally_mixed(FactorShape shape) {
    return DensityMatrix(HermitianOp::identity(shape) * (1.0 / static_cast<double>(shape.d())));
  }

  const HermitianOp& op() const { return op_; }
  const FactorShape& shape() const { return op_.shape(); }

 private:
  HermitianOp op_;
};

/// x_1 ⊗ ... ⊗ x_N with unit factors in C^D.
class ProductVector {
 public:
  static constexpr double kNormTol = 1e-12;

  explicit ProductVector(std::vector<CVector> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw ShapeError("ProductVector: no factors");
    for (const auto& f : factors_) {
      if (f.size() != factors_.front().size()) throw ShapeError("ProductVector: ragged factors");
      if (std::abs(f.norm() - 1.0) > kNormTol) throw DomainError("ProductVector: factor not unit");
    }
  }

  int N() const { return static_cast<int>(factors_.size()); }
  int D() const { return static_cast<int>(factors_.front().size()); }
  FactorShape shape() const { return {D(), N()}; }
  const std::vector<CVector>& factors() const { return factors_; }

  CVector state() const {
    CVector v = factors_.front();
    for (std::size_t i = 1; i < factors_.size(); ++i) v = kron(v, factors_[i]);
    return v;
  }

  HermitianOp projector() const { return HermitianOp::projector(shape(), state()); }

 private:
  std::vector<CVector> factors_;
};

/// Pauli matrices, used throughout the tests and the qubit experiments.
inline HermitianOp pauli(char which) {
  const FactorShape s(2, 1);
  CMatrix m(2, 2);
  switch (which) {
    case 'x': m << 0, 1, 1, 0; break;
    case 'y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 'z': m << 1, 0, 0, -1; break;
    default: m = CMatrix::Identity(2, 2);
  }
  return HermitianOp(s, m);
}

}  // namespace sepvol
