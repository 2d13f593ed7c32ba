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
#include "sepvol/parallel.hpp"
#include "sepvol/widths.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

namespace sepvol {

/// Largest δ for which the net sandwich constant is meaningful, sqrt(2 - sqrt2).
inline const double kSandwichDeltaMax = std::sqrt(2.0 - std::sqrt(2.0));

/// Finite δ-net of the unit sphere S^{dim_real-1}.
///
/// Complex spheres use dim_real = 2D with coordinates (Re x, Im x). A
/// projective net stores one representative per phase class and measures
/// distance as min_θ ‖x - e^{iθ} y‖ = sqrt(2 - 2|<x, y>|); the union of the
/// phase orbits of its points is an ordinary δ-net with the same P(𝒩).
struct SphereNet {
  enum class Construction { greedy_random, explicit_points };

  int dim_real = 0;
  double delta = 0.0;
  bool projective = false;
  Construction construction = Construction::greedy_random;
  std::vector<RVector> points;
  double covering_radius = std::numeric_limits<double>::quiet_NaN();  // last validation pass
  int validation_passes = 0;

  std::size_t size() const { return points.size(); }
  int complex_dim() const { return dim_real / 2; }

  CVector complex_point(std::size_t i) const {
    const int D = complex_dim();
    CVector z(D);
    for (int k = 0; k < D; ++k) z(k) = Complex(points[i](k), points[i](D + k));
    return z;
  }
};

inline RVector to_real_coords(const CVector& z) {
  const auto D = z.size();
  RVector v(2 * D);
  v.head(D) = z.real();
  v.tail(D) = z.imag();
  return v;
}

namespace detail {

// Row-major point store with nearest-point queries by maximal similarity.
class NetIndex {
 public:
  NetIndex(int dim, bool projective) : dim_(dim), projective_(projective) {}

  void add(const RVector& p) {
    data_.insert(data_.end(), p.data(), p.data() + dim_);
    ++count_;
  }

  std::size_t count() const { return count_; }

  /// Distance from x to the nearest stored point (infinity if empty).
  double nearest(const RVector& x) const {
    if (count_ == 0) return std::numeric_limits<double>::infinity();
    using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::Map<const RowMat> P(data_.data(), static_cast<Eigen::Index>(count_), dim_);
    double sim;
    if (!projective_) {
      sim = (P * x).maxCoeff();
    } else {
      const int D = dim_ / 2;
      RVector jx(dim_);
      jx.head(D) = x.tail(D);
      jx.tail(D) = -x.head(D);
      const RVector re = P * x;
      const RVector im = P * jx;
      sim = (re.array().square() + im.array().square()).sqrt().maxCoeff();
    }
    return std::sqrt(std::max(0.0, 2.0 - 2.0 * sim));
  }

 private:
  int dim_;
  bool projective_;
  std::size_t count_ = 0;
  std::vector<double> data_;
};

}  // namespace detail

struct NetOptions {
  std::int64_t patience = 2000;           // consecutive rejections ending the greedy phase
  std::int64_t validation_probes = 10000;
  int max_passes = 200;
  double validation_margin = 0.9;  // validation inserts probes farther than margin·δ
};

/// Greedy random packing followed by mandatory validation passes: each
/// pass draws fresh sphere probes and inserts every probe farther than
/// margin·δ from the net, until a pass inserts nothing.
inline SphereNet build_net(int dim_real, double delta, const SeededStream& stream,
                           bool projective = false, const NetOptions& opt = {}) {
  if (!(delta > 0.0 && delta < 2.0)) throw DomainError("build_net: delta must lie in (0, 2)");
  if (dim_real < 1) throw DomainError("build_net: dim_real must be >= 1");
  if (projective && dim_real % 2 != 0) {
    throw DomainError("build_net: projective nets need an even real dimension");
  }
  SphereNet net;
  net.dim_real = dim_real;
  net.delta = delta;
  net.projective = projective;
  detail::NetIndex index(dim_real, projective);
  SeededStream s = stream.split(0);
  std::int64_t rejections = 0;
  while (rejections < opt.patience) {
    const RVector x = sample_sphere(dim_real, s);
    if (index.nearest(x) > delta) {
      index.add(x);
      net.points.push_back(x);
      rejections = 0;
    } else {
      ++rejections;
    }
  }
  for (int pass = 1; pass <= opt.max_passes; ++pass) {
    SeededStream v = stream.split(static_cast<std::uint64_t>(pass));
    bool clean = true;
    double worst = 0.0;
    for (std::int64_t i = 0; i < opt.validation_probes; ++i) {
      const RVector x = sample_sphere(dim_real, v);
      const double dist = index.nearest(x);
      if (dist > opt.validation_margin * delta) {
        index.add(x);
        net.points.push_back(x);
        clean = false;
      } else {
        worst = std::max(worst, dist);
      }
    }
    net.validation_passes = pass;
    if (clean) {
      net.covering_radius = worst;
      return net;
    }
  }
  throw DomainError("build_net: validation did not converge");
}

/// Projective δ-net of the unit sphere of C^D.
inline SphereNet build_phase_net(int D, double delta, const SeededStream& stream,
                                 const NetOptions& opt = {}) {
  return build_net(2 * D, delta, stream, true, opt);
}

/// max over n_probes uniform sphere points of the distance to the net.
inline double covering_radius_estimate(const SphereNet& net, std::int64_t n_probes,
                                       const SeededStream& stream) {
  detail::NetIndex index(net.dim_real, net.projective);
  for (const auto& p : net.points) index.add(p);
  SeededStream s = stream;
  double worst = 0.0;
  for (std::int64_t i = 0; i < n_probes; ++i) {
    worst = std::max(worst, index.nearest(sample_sphere(net.dim_real, s)));
  }
  return worst;
}

/// (1 + 2/δ)^{dim_real}.
inline double cardinality_bound(int dim_real, double delta) {
  return std::pow(1.0 + 2.0 / delta, dim_real);
}

/// 1 - 2δ² + δ⁴/2.
inline double sandwich_constant(double delta) {
  return 1.0 - 2.0 * delta * delta + 0.5 * std::pow(delta, 4);
}

namespace detail {

inline std::uint64_t to_le(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) return v;
  std::uint64_t r = 0;
  for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
  return r;
}

inline std::uint32_t to_le(std::uint32_t v) {
  if constexpr (std::endian::native == std::endian::little) return v;
  return ((v & 0xffu) << 24) | ((v & 0xff00u) << 8) | ((v >> 8) & 0xff00u) | (v >> 24);
}

}  // namespace detail

/// Little-endian binary: u32 dim_real, u32 count, then count*dim_real float64.
inline void write_net(const SphereNet& net, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_net: cannot open " + path);
  const std::uint32_t hdr[2] = {detail::to_le(static_cast<std::uint32_t>(net.dim_real)),
                                detail::to_le(static_cast<std::uint32_t>(net.size()))};
  out.write(reinterpret_cast<const char*>(hdr), sizeof hdr);
  for (const auto& p : net.points) {
    for (Eigen::Index k = 0; k < p.size(); ++k) {
      std::uint64_t bits;
      const double x = p(k);
      std::memcpy(&bits, &x, sizeof bits);
      bits = detail::to_le(bits);
      out.write(reinterpret_cast<const char*>(&bits), sizeof bits);
    }
  }
  if (!out) throw std::runtime_error("write_net: write failed for " + path);
}

/// Reads the point set written by write_net; delta and flags are not stored.
inline SphereNet read_net(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_net: cannot open " + path);
  std::uint32_t hdr[2];
  in.read(reinterpret_cast<char*>(hdr), sizeof hdr);
  if (!in) throw std::runtime_error("read_net: truncated header");
  SphereNet net;
  net.dim_real = static_cast<int>(detail::to_le(hdr[0]));
  const std::uint32_t count = detail::to_le(hdr[1]);
  net.construction = SphereNet::Construction::explicit_points;
  net.points.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    RVector p(net.dim_real);
    for (int k = 0; k < net.dim_real; ++k) {
      std::uint64_t bits;
      in.read(reinterpret_cast<char*>(&bits), sizeof bits);
      bits = detail::to_le(bits);
      double x;
      std::memcpy(&x, &bits, sizeof x);
      p(k) = x;
    }
    if (!in) throw std::runtime_error("read_net: truncated data");
    net.points.push_back(std::move(p));
  }
  return net;
}

/// conv{±|x><x| : x ∈ 𝒩}^{⊗̂N}; vertices are indexed by N-tuples of net
/// points (one per sign class) and never materialized in full.
class NetPolytope {
 public:
  NetPolytope(const SphereNet& net, int N) : N_(N) {
    if (net.dim_real % 2 != 0) throw ShapeError("NetPolytope: net must live on a complex sphere");
    if (N < 1) throw ShapeError("NetPolytope: N must be >= 1");
    D_ = net.complex_dim();
    for (std::size_t i = 0; i < net.size(); ++i) base_.push_back(net.complex_point(i));
  }

  int D() const { return D_; }
  int N() const { return N_; }
  FactorShape shape() const { return {D_, N_}; }
  std::size_t base_size() const { return base_.size(); }
  const std::vector<CVector>& base() const { return base_; }

  /// (#𝒩)^N sign classes; the vertex set has twice as many points.
  double sign_classes() const { return std::pow(static_cast<double>(base_.size()), N_); }

  HermitianOp vertex(const std::vector<std::size_t>& idx) const {
    if (static_cast<int>(idx.size()) != N_) throw ShapeError("NetPolytope::vertex: index count");
    CVector v = base_.at(idx[0]);
    for (int k = 1; k < N_; ++k) v = kron(v, base_.at(idx[static_cast<std::size_t>(k)]));
    return HermitianOp::projector(shape(), v);
  }

  /// Uniformly random vertex sign classes (with replacement).
  std::vector<HermitianOp> sample_vertices(std::int64_t count, SeededStream& s) const {
    std::vector<HermitianOp> out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) {
      std::vector<std::size_t> idx(static_cast<std::size_t>(N_));
      for (auto& j : idx) j = static_cast<std::size_t>(s.next_u64() % base_.size());
      out.push_back(vertex(idx));
    }
    return out;
  }

  /// Support function of the single-factor polytope, max_y |<y|A|y>|.
  double support_single(const HermitianOp& a) const {
    if (N_ != 1) throw ShapeError("support_single: N must be 1");
    double best = 0.0;
    for (const auto& y : base_) {
      best = std::max(best, std::abs((y.adjoint() * a.matrix() * y)(0).real()));
    }
    return best;
  }

 private:
  int D_ = 0;
  int N_ = 0;
  std::vector<CVector> base_;
};

/// conv{±v_i} for Hermitian vertices, as a body on HS coordinates.
inline BodyOracle polytope_from_vertices(const std::vector<HermitianOp>& vertices) {
  std::vector<RVector> pts;
  pts.reserve(vertices.size());
  for (const auto& v : vertices) pts.push_back(to_coords(v, false));
  return oracle_polytope(std::move(pts));
}

struct SandwichCheck {
  double delta = 0.0;
  double constant = 0.0;    // 1 - 2δ² + δ⁴/2
  double worst_ratio = 0.0; // min over probes of h_P(A)/‖A‖_op
  double max_ratio = 0.0;   // max over probes (must be ≤ 1)
  std::int64_t probes = 0;
  bool lower_holds = false;
  bool upper_holds = false;
};

/// Dual-norm form of (1 - 2δ² + δ⁴/2) Δ ⊂ P(𝒩) ⊂ Δ on Gaussian Hermitian probes.
inline SandwichCheck lemma3_sandwich_check(const SphereNet& net, std::int64_t probes,
                                           const SeededStream& stream, unsigned workers = 0) {
  if (!(net.delta < kSandwichDeltaMax)) {
    throw DomainError("lemma3_sandwich_check: delta must be < sqrt(2 - sqrt2)");
  }
  const NetPolytope P(net, 1);
  const FactorShape shape(P.D(), 1);
  std::vector<double> ratios(static_cast<std::size_t>(probes));
  parallel_for(probes, workers, [&](std::int64_t i) {
    SeededStream s = stream.split(static_cast<std::uint64_t>(i));
    const HermitianOp a = sample_gaussian_hermitian(shape, false, s);
    ratios[static_cast<std::size_t>(i)] = P.support_single(a) / operator_norm(a);
  });
  SandwichCheck c;
  c.delta = net.delta;
  c.constant = sandwich_constant(net.delta);
  c.probes = probes;
  c.worst_ratio = *std::min_element(ratios.begin(), ratios.end());
  c.max_ratio = *std::max_element(ratios.begin(), ratios.end());
  c.lower_holds = c.worst_ratio >= c.constant;
  c.upper_holds = c.max_ratio <= 1.0 + 1e-12;
  return c;
}

enum class EllipsoidKind { hs_ball, lowner };

struct SigmaWidthBound {
  EllipsoidKind ellipsoid = EllipsoidKind::hs_ball;
  double delta = 0.0;
  double value = 0.0;           // at the given δ
  double default_delta = 0.0;   // 1/sqrt(N ln 2N)
  double value_default = std::numeric_limits<double>::quiet_NaN();
  bool default_in_range = false;
  double inf_delta = 0.0;
  double value_inf = 0.0;       // numerical infimum over δ
  double ellipsoid_factor = 1.0;  // d^{-α_D} for the Löwner ellipsoid
};

namespace detail {

// √(2 ln (1+2/δ)^{2DN}) / (γ_{d²} (1 - 2δ² + δ⁴/2)^N), in log space.
inline double log_sigma_net(const FactorShape& s, double delta, double log_g) {
  const double c = sandwich_constant(delta);
  if (c <= 0.0) return std::numeric_limits<double>::infinity();
  const double DN = static_cast<double>(s.D()) * s.N();
  return 0.5 * std::log(4.0 * DN * std::log1p(2.0 / delta)) - log_g - s.N() * std::log(c);
}

}  // namespace detail

/// Net-polytope bound on (vol Σ / vol ℰ)^{1/d²} for ℰ ⊇ Σ. With the
/// Löwner ellipsoid the value is converted to a bound on vrad(Σ) in the
/// HS structure by the determinant factor d^{-α_D}.
inline SigmaWidthBound sigma_width_upper(FactorShape shape, double delta,
                                         EllipsoidKind ellipsoid = EllipsoidKind::hs_ball) {
  if (!(delta > 0.0 && delta < kSandwichDeltaMax)) {
    throw DomainError("sigma_width_upper: delta must lie in (0, sqrt(2 - sqrt2))");
  }
  SigmaWidthBound b;
  b.ellipsoid = ellipsoid;
  b.delta = delta;
  const double d = static_cast<double>(shape.d());
  const double log_g = log_gamma_n(shape.d() * shape.d());
  const double log_factor =
      ellipsoid == EllipsoidKind::lowner ? -alpha_D(shape.D()) * std::log(d) : 0.0;
  b.ellipsoid_factor = std::exp(log_factor);
  auto f = [&](double x) { return detail::log_sigma_net(shape, x, log_g); };
  b.value = std::exp(f(delta) + log_factor);
  b.default_delta = 1.0 / std::sqrt(shape.N() * std::log(2.0 * shape.N()));
  b.default_in_range = b.default_delta < kSandwichDeltaMax;
  if (b.default_in_range) b.value_default = std::exp(f(b.default_delta) + log_factor);

  const double hi = kSandwichDeltaMax * (1.0 - 1e-12);
  const double lo = 1e-8;
  const int grid = 2000;
  double best_x = delta, best_v = f(delta);
  std::vector<double> xs(grid + 1);
  int best_i = -1;
  for (int i = 0; i <= grid; ++i) {
    xs[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, static_cast<double>(i) / grid);
    const double v = f(xs[static_cast<std::size_t>(i)]);
    if (v < best_v) {
      best_v = v;
      best_x = xs[static_cast<std::size_t>(i)];
      best_i = i;
    }
  }
  if (best_i >= 0) {
    double a = xs[static_cast<std::size_t>(std::max(0, best_i - 1))];
    double c = xs[static_cast<std::size_t>(std::min(grid, best_i + 1))];
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 200 && c - a > 1e-15; ++it) {
      const double x1 = c - phi * (c - a);
      const double x2 = a + phi * (c - a);
      if (f(x1) < f(x2)) {
        c = x2;
      } else {
        a = x1;
      }
    }
    const double x = 0.5 * (a + c);
    if (f(x) < best_v) {
      best_v = f(x);
      best_x = x;
    }
  }
  b.inf_delta = best_x;
  b.value_inf = std::exp(best_v + log_factor);
  return b;
}

}  // namespace sepvol
