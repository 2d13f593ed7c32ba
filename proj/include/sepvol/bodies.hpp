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
#include "sepvol/sampling.hpp"

#include <cstring>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace sepvol {

enum class Exactness { exact, lower_bound };

inline Exactness weakest(Exactness a, Exactness b) {
  return (a == Exactness::lower_bound || b == Exactness::lower_bound) ? Exactness::lower_bound
                                                                      : Exactness::exact;
}

inline const char* to_string(Exactness e) {
  return e == Exactness::exact ? "exact" : "lower_bound";
}

/// Where probes live and how standard Gaussian probes are drawn.
///
///   euclidean         R^m with the standard inner product
///   hermitian         B_sa(H) with <.,.>_HS, real dimension d^2
///   traceless         trace-zero hyperplane, real dimension d^2 - 1
///   factor_traceless  range of P ⊗ ... ⊗ P, real dimension (D^2 - 1)^N
///   operators         B(H) with Re tr(A^† B), real dimension 2 d^2
class ProbeSpace {
 public:
  enum class Kind { euclidean, hermitian, traceless, factor_traceless, operators };

  static ProbeSpace euclidean(int m) { return ProbeSpace(Kind::euclidean, m, std::nullopt); }
  static ProbeSpace hermitian(FactorShape s) { return ProbeSpace(Kind::hermitian, 0, s); }
  static ProbeSpace traceless(FactorShape s) { return ProbeSpace(Kind::traceless, 0, s); }
  static ProbeSpace factor_traceless(FactorShape s) {
    return ProbeSpace(Kind::factor_traceless, 0, s);
  }
  static ProbeSpace operators(FactorShape s) { return ProbeSpace(Kind::operators, 0, s); }

  Kind kind() const { return kind_; }
  const FactorShape& shape() const {
    if (!shape_) throw ShapeError("ProbeSpace: euclidean space has no factor shape");
    return *shape_;
  }

  /// Real dimension of the probe subspace (the m in gamma_m).
  std::int64_t real_dim() const {
    switch (kind_) {
      case Kind::euclidean: return dim_;
      case Kind::hermitian: return shape_->d() * shape_->d();
      case Kind::traceless: return shape_->n();
      case Kind::factor_traceless: {
        const std::int64_t D = shape_->D();
        return ipow(D * D - 1, shape_->N());
      }
      case Kind::operators: return 2 * shape_->d() * shape_->d();
    }
    return 0;
  }

  bool operator==(const ProbeSpace& o) const {
    return kind_ == o.kind_ && dim_ == o.dim_ && shape_ == o.shape_;
  }

 private:
  ProbeSpace(Kind k, int m, std::optional<FactorShape> s) : kind_(k), dim_(m), shape_(s) {}
  Kind kind_;
  int dim_;
  std::optional<FactorShape> shape_;
};

using Probe = std::variant<RVector, HermitianOp, CMatrix>;

inline Probe scaled(const Probe& p, double t) {
  return std::visit(
      [t](const auto& v) -> Probe { return std::decay_t<decltype(v)>(v * t); }, p);
}

inline Probe negated(const Probe& p) { return scaled(p, -1.0); }

/// Standard Gaussian vector of the given space.
inline Probe draw_gaussian_probe(const ProbeSpace& space, SeededStream& s) {
  using K = ProbeSpace::Kind;
  switch (space.kind()) {
    case K::euclidean: {
      RVector g(space.real_dim());
      for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = s.normal();
      return g;
    }
    case K::hermitian: return sample_gaussian_hermitian(space.shape(), false, s);
    case K::traceless: return sample_gaussian_hermitian(space.shape(), true, s);
    case K::factor_traceless:
      return traceless_project(sample_gaussian_hermitian(space.shape(), false, s), true);
    case K::operators: {
      const auto d = static_cast<Eigen::Index>(space.shape().d());
      CMatrix g(d, d);
      for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < d; ++i) g(i, j) = Complex(s.normal(), s.normal());
      return g;
    }
  }
  throw ShapeError("draw_gaussian_probe: unknown space");
}

/// Interprets a probe as a Hermitian operator of the given space; real
/// vectors are read as HS-orthonormal coordinates.
inline HermitianOp as_hermitian(const Probe& p, const ProbeSpace& space) {
  if (const auto* h = std::get_if<HermitianOp>(&p)) return *h;
  if (const auto* v = std::get_if<RVector>(&p)) {
    using K = ProbeSpace::Kind;
    if (space.kind() == K::hermitian) return from_coords(space.shape(), *v, false);
    if (space.kind() == K::traceless) return from_coords(space.shape(), *v, true);
  }
  if (const auto* m = std::get_if<CMatrix>(&p)) return HermitianOp(space.shape(), *m);
  throw ShapeError("probe is not interpretable as a Hermitian operator");
}

inline CMatrix as_matrix(const Probe& p) {
  if (const auto* h = std::get_if<HermitianOp>(&p)) return h->matrix();
  if (const auto* m = std::get_if<CMatrix>(&p)) return *m;
  throw ShapeError("probe is not an operator");
}

inline const RVector& as_vector(const Probe& p) {
  if (const auto* v = std::get_if<RVector>(&p)) return *v;
  throw ShapeError("probe is not a real vector");
}

/// Deterministic 64-bit digest of the probe's bit pattern.
inline std::uint64_t probe_digest(const Probe& p) {
  std::uint64_t h = 0x243f6a8885a308d3ull;
  auto eat = [&h](const double* data, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t bits;
      std::memcpy(&bits, data + i, sizeof bits);
      h = mix64(h ^ bits);
    }
  };
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, RVector>) {
          eat(v.data(), static_cast<std::size_t>(v.size()));
        } else if constexpr (std::is_same_v<T, HermitianOp>) {
          eat(reinterpret_cast<const double*>(v.matrix().data()),
              2 * static_cast<std::size_t>(v.matrix().size()));
        } else {
          eat(reinterpret_cast<const double*>(v.data()), 2 * static_cast<std::size_t>(v.size()));
        }
      },
      p);
  return h;
}

/// A convex body given by its support function h_K(u) = max_{x∈K} <x, u>.
///
/// For lower_bound oracles the returned value never exceeds the true
/// support value; exact oracles evaluate it to round-off.
class BodyOracle {
 public:
  enum class Center { origin, maximally_mixed };
  using SupportFn = std::function<double(const Probe&)>;

  BodyOracle(std::string name, ProbeSpace space, Exactness exactness, SupportFn fn,
             Center center = Center::origin)
      : name_(std::move(name)),
        space_(std::move(space)),
        exactness_(exactness),
        center_(center),
        fn_(std::make_shared<SupportFn>(std::move(fn))) {}

  double support(const Probe& u) const { return (*fn_)(u); }
  double operator()(const Probe& u) const { return support(u); }

  const std::string& name() const { return name_; }
  const ProbeSpace& space() const { return space_; }
  std::int64_t ambient_dim() const { return space_.real_dim(); }
  Exactness exactness() const { return exactness_; }
  Center center() const { return center_; }

 private:
  std::string name_;
  ProbeSpace space_;
  Exactness exactness_;
  Center center_;
  std::shared_ptr<const SupportFn> fn_;
};

// --- alternating maximization over product vectors --------------------------

/// d x D matrix whose column a is x_0 ⊗ ... ⊗ e_a (slot j) ⊗ ... ⊗ x_{N-1}.
inline CMatrix slot_embedding(const std::vector<CVector>& x, int j) {
  const auto D = x.front().size();
  const int N = static_cast<int>(x.size());
  CVector left = CVector::Ones(1);
  CVector right = CVector::Ones(1);
  for (int k = 0; k < j; ++k) left = kron(left, x[k]);
  for (int k = j + 1; k < N; ++k) right = kron(right, x[k]);
  const auto L = left.size();
  const auto R = right.size();
  CMatrix V = CMatrix::Zero(L * D * R, D);
  for (Eigen::Index l = 0; l < L; ++l)
    for (Eigen::Index a = 0; a < D; ++a) V.block((l * D + a) * R, a, R, 1) = left(l) * right;
  return V;
}

inline CVector product_state(const std::vector<CVector>& x) {
  CVector v = x.front();
  for (std::size_t k = 1; k < x.size(); ++k) v = kron(v, x[k]);
  return v;
}

struct AlternatingOptions {
  int n_starts = 16;
  int n_sweeps = 50;
  double tol = 1e-10;
};

struct ProductOptimum {
  double value = -std::numeric_limits<double>::infinity();
  std::vector<CVector> x;  // maximizing factors (kets)
  std::vector<CVector> y;  // bra factors (Gamma only)
  int sweeps = 0;
};

/// max over unit product vectors of <x|u|x> (signed) for Hermitian u.
/// Restart k starts from a Haar product drawn from stream.split(k); each
/// one-factor update is the top eigenvector of the compressed D x D block,
/// so the value is non-decreasing within a restart.
inline ProductOptimum maximize_product_expectation(const CMatrix& u, int D, int N,
                                                   const AlternatingOptions& opt,
                                                   const SeededStream& stream) {
  ProductOptimum best;
  for (int k = 0; k < opt.n_starts; ++k) {
    SeededStream s = stream.split(static_cast<std::uint64_t>(k));
    std::vector<CVector> x;
    for (int f = 0; f < N; ++f) x.push_back(haar_vector(D, s));
    double val = -std::numeric_limits<double>::infinity();
    int sweep = 0;
    for (; sweep < opt.n_sweeps; ++sweep) {
      const double prev = val;
      for (int j = 0; j < N; ++j) {
        const CMatrix V = slot_embedding(x, j);
        CMatrix M = V.adjoint() * u * V;
        M = 0.5 * (M + M.adjoint()).eval();
        Eigen::SelfAdjointEigenSolver<CMatrix> es(M);
        x[j] = es.eigenvectors().col(D - 1).normalized();
        val = es.eigenvalues()(D - 1);
      }
      if (val - prev < opt.tol) break;
    }
    if (val > best.value) {
      best.value = val;
      best.x = x;
      best.sweeps = sweep + 1;
    }
  }
  return best;
}

/// max over unit product vectors x, y of |<y|u|x>|; joint (x_j, y_j)
/// updates take the top singular pair of the compressed D x D block.
inline ProductOptimum maximize_product_bilinear(const CMatrix& u, int D, int N,
                                                const AlternatingOptions& opt,
                                                const SeededStream& stream) {
  ProductOptimum best;
  for (int k = 0; k < opt.n_starts; ++k) {
    SeededStream s = stream.split(static_cast<std::uint64_t>(k));
    std::vector<CVector> x, y;
    for (int f = 0; f < N; ++f) x.push_back(haar_vector(D, s));
    for (int f = 0; f < N; ++f) y.push_back(haar_vector(D, s));
    double val = -std::numeric_limits<double>::infinity();
    int sweep = 0;
    for (; sweep < opt.n_sweeps; ++sweep) {
      const double prev = val;
      for (int j = 0; j < N; ++j) {
        const CMatrix B = slot_embedding(y, j).adjoint() * u * slot_embedding(x, j);
        Eigen::JacobiSVD<CMatrix> svd(B, Eigen::ComputeFullU | Eigen::ComputeFullV);
        y[j] = svd.matrixU().col(0);
        x[j] = svd.matrixV().col(0);
        val = svd.singularValues()(0);
      }
      if (val - prev < opt.tol) break;
    }
    if (val > best.value) {
      best.value = val;
      best.x = x;
      best.y = y;
      best.sweeps = sweep + 1;
    }
  }
  return best;
}

// --- oracles -----------------------------------------------------------------

/// 𝒟 about the origin of B_sa: h(u) = λ_max(u).
inline BodyOracle oracle_D(FactorShape shape) {
  const ProbeSpace space = ProbeSpace::hermitian(shape);
  return BodyOracle("D", space, Exactness::exact,
                    [space](const Probe& u) { return lambda_max(as_hermitian(u, space)); });
}

/// 𝒟 - Id/d inside the trace-one hyperplane: h(u) = λ_max(u) - tr(u)/d.
inline BodyOracle oracle_D_centered(FactorShape shape) {
  const ProbeSpace space = ProbeSpace::traceless(shape);
  return BodyOracle(
      "D_centered", space, Exactness::exact,
      [space](const Probe& u) {
        const HermitianOp a = as_hermitian(u, space);
        return lambda_max(a) - a.trace() / static_cast<double>(a.dim());
      },
      BodyOracle::Center::maximally_mixed);
}

/// Trace-norm unit ball: h(u) = ‖u‖_op.
inline BodyOracle oracle_Delta(FactorShape shape) {
  const ProbeSpace space = ProbeSpace::hermitian(shape);
  return BodyOracle("Delta", space, Exactness::exact,
                    [space](const Probe& u) { return operator_norm(as_hermitian(u, space)); });
}

/// Σ = conv(𝒮 ∪ -𝒮): h(u) = max over product x of |<x|u|x>|. Exact for
/// N = 1, otherwise a multistart alternating-maximization lower bound.
/// Restart streams derive from (seed, digest of the probe).
inline BodyOracle oracle_Sigma(FactorShape shape, int n_starts = 16, int n_sweeps = 50,
                               std::uint64_t seed = 0) {
  const ProbeSpace space = ProbeSpace::hermitian(shape);
  if (shape.N() == 1) {
    return BodyOracle("Sigma", space, Exactness::exact,
                      [space](const Probe& u) { return operator_norm(as_hermitian(u, space)); });
  }
  const AlternatingOptions opt{n_starts, n_sweeps, 1e-10};
  return BodyOracle("Sigma", space, Exactness::lower_bound, [space, opt, seed](const Probe& u) {
    const HermitianOp a = as_hermitian(u, space);
    const SeededStream base(seed, probe_digest(u));
    const int D = space.shape().D();
    const int N = space.shape().N();
    const double up = maximize_product_expectation(a.matrix(), D, N, opt, base.split(0)).value;
    const double dn = maximize_product_expectation(-a.matrix(), D, N, opt, base.split(1)).value;
    return std::max(up, dn);
  });
}

/// Γ(H) ≅ (B_2^D)^{⊗̂ 2N} in B(H) with Re tr(A^† B): h(u) = max |<y|u|x>|.
inline BodyOracle oracle_Gamma_ball(FactorShape shape, int n_starts = 16, int n_sweeps = 50,
                                    std::uint64_t seed = 0) {
  const ProbeSpace space = ProbeSpace::operators(shape);
  if (shape.N() == 1) {
    return BodyOracle("Gamma", space, Exactness::exact, [](const Probe& u) {
      Eigen::JacobiSVD<CMatrix> svd(as_matrix(u));
      return svd.singularValues()(0);
    });
  }
  const AlternatingOptions opt{n_starts, n_sweeps, 1e-10};
  return BodyOracle("Gamma", space, Exactness::lower_bound, [space, opt, seed](const Probe& u) {
    const SeededStream base(seed, probe_digest(u));
    return maximize_product_bilinear(as_matrix(u), space.shape().D(), space.shape().N(), opt,
                                     base)
        .value;
  });
}

/// K - L with h_{K-L}(u) = h_K(u) + h_L(-u).
inline BodyOracle oracle_minkowski_diff(const BodyOracle& a, const BodyOracle& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw ShapeError("minkowski_diff: ambient dimensions differ");
  }
  return BodyOracle(
      a.name() + "-" + b.name(), a.space(), weakest(a.exactness(), b.exactness()),
      [a, b](const Probe& u) { return a.support(u) + b.support(negated(u)); }, a.center());
}

using HermitianMap = std::function<HermitianOp(const HermitianOp&)>;

/// L(K) for a linear map L given through its adjoint: h_{LK}(u) = h_K(L^* u).
inline BodyOracle oracle_linear_image(const BodyOracle& body, HermitianMap adjoint,
                                      std::string name, std::optional<ProbeSpace> space = {}) {
  const ProbeSpace sp = space.value_or(body.space());
  return BodyOracle(
      std::move(name), sp, body.exactness(),
      [body, adjoint = std::move(adjoint), sp](const Probe& u) {
        return body.support(Probe(adjoint(as_hermitian(u, sp))));
      },
      body.center());
}

/// Euclidean unit ball of R^m (or of the given space): h(u) = ‖u‖.
inline BodyOracle oracle_ball(ProbeSpace space) {
  return BodyOracle("ball", space, Exactness::exact, [](const Probe& u) {
    return std::visit(
        [](const auto& v) -> double {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, HermitianOp>) {
            return hs_norm(v);
          } else {
            return v.norm();
          }
        },
        u);
  });
}

/// Segment conv{±v}: h(u) = |<v, u>|.
inline BodyOracle oracle_segment(const RVector& v) {
  return BodyOracle("segment", ProbeSpace::euclidean(static_cast<int>(v.size())),
                    Exactness::exact, [v](const Probe& u) { return std::abs(v.dot(as_vector(u))); });
}

/// Symmetric polytope conv{±x_i}: h(u) = max_i |<x_i, u>|.
inline BodyOracle oracle_polytope(std::vector<RVector> vertices) {
  if (vertices.empty()) throw ShapeError("oracle_polytope: no vertices");
  const auto m = static_cast<int>(vertices.front().size());
  RMatrix X(static_cast<Eigen::Index>(vertices.size()), m);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].size() != m) throw ShapeError("oracle_polytope: ragged vertices");
    X.row(static_cast<Eigen::Index>(i)) = vertices[i].transpose();
  }
  return BodyOracle("polytope", ProbeSpace::euclidean(m), Exactness::exact,
                    [X](const Probe& u) { return (X * as_vector(u)).cwiseAbs().maxCoeff(); });
}

}  // namespace sepvol
