#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hhmat/error.hpp"
#include "hhmat/matrix.hpp"
#include "hhmat/random.hpp"
#include "hhmat/spectral.hpp"

namespace hhmat {

// -- weight pairs ------------------------------------------------------------

enum class WeightKind { scalar, commuting_normal, bi_isometric };

inline std::string to_string(WeightKind k) {
  switch (k) {
    case WeightKind::scalar: return "scalar";
    case WeightKind::commuting_normal: return "commuting_normal";
    case WeightKind::bi_isometric: return "bi_isometric";
  }
  return {};
}

inline WeightKind parse_weight_kind(const std::string& s) {
  if (s == "scalar") return WeightKind::scalar;
  if (s == "commuting_normal") return WeightKind::commuting_normal;
  if (s == "bi_isometric") return WeightKind::bi_isometric;
  throw InvalidArgument("unknown weight kind '" + s + "'");
}

/**
 * Weights (X, Y) of the C*-convex combinations
 *   W₁ = X*AX + Y*BY,   W₂ = Y*AY + X*BX.
 *
 * scalar(x):         X = √(1−x)·I, Y = √x·I, so W₁ = (1−x)A + xB.
 * commuting_normal:  X, Y normal, XY = YX, X*X + Y*Y = I.
 * bi_isometric:      X*X + Y*Y = XX* + YY* = I.
 *
 * Each kind implies the identities of the next one, so every pair can feed
 * the Φ map.
 */
class WeightPair {
 public:
  static constexpr double kTol = 1e-10;

  static WeightPair scalar(double x, std::size_t dim) {
    if (!(x > 0.0 && x < 1.0)) throw InvalidArgument("scalar weight needs 0 < x < 1");
    WeightPair w(WeightKind::scalar, CMatrix::identity(dim) * cplx(std::sqrt(1.0 - x)),
                 CMatrix::identity(dim) * cplx(std::sqrt(x)));
    w.x_ = x;
    return w;
  }

  static WeightPair commuting_normal(CMatrix x, CMatrix y) {
    WeightPair w(WeightKind::commuting_normal, std::move(x), std::move(y));
    if (w.commutator_defect() > kTol || w.normality_defect() > kTol || w.isometry_defect() > kTol)
      throw InvalidArgument("commuting_normal pair violates XY = YX, normality or X*X + Y*Y = I");
    return w;
  }

  static WeightPair bi_isometric(CMatrix x, CMatrix y) {
    WeightPair w(WeightKind::bi_isometric, std::move(x), std::move(y));
    if (w.isometry_defect() > kTol || w.coisometry_defect() > kTol)
      throw InvalidArgument("bi_isometric pair violates X*X + Y*Y = I or XX* + YY* = I");
    return w;
  }

  WeightKind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return x_w_.rows(); }
  const CMatrix& x_weight() const noexcept { return x_w_; }
  const CMatrix& y_weight() const noexcept { return y_w_; }
  std::optional<double> scalar_x() const noexcept { return x_; }

  /// X*AX + Y*BY
  HermitianMatrix first_combination(const HermitianMatrix& a, const HermitianMatrix& b) const {
    require_dim(a, b);
    if (x_) return (1.0 - *x_) * a + *x_ * b;
    return a.congruence(x_w_) + b.congruence(y_w_);
  }

  /// Y*AY + X*BX
  HermitianMatrix second_combination(const HermitianMatrix& a, const HermitianMatrix& b) const {
    require_dim(a, b);
    if (x_) return *x_ * a + (1.0 - *x_) * b;
    return a.congruence(y_w_) + b.congruence(x_w_);
  }

  /// ‖X*X + Y*Y − I‖_F
  double isometry_defect() const {
    return distance(x_w_.adjoint() * x_w_ + y_w_.adjoint() * y_w_, CMatrix::identity(dim()));
  }
  /// ‖XX* + YY* − I‖_F
  double coisometry_defect() const {
    return distance(x_w_ * x_w_.adjoint() + y_w_ * y_w_.adjoint(), CMatrix::identity(dim()));
  }
  /// ‖XY − YX‖_F
  double commutator_defect() const { return distance(x_w_ * y_w_, y_w_ * x_w_); }
  /// max(‖XX* − X*X‖_F, ‖YY* − Y*Y‖_F)
  double normality_defect() const {
    return std::max(distance(x_w_ * x_w_.adjoint(), x_w_.adjoint() * x_w_),
                    distance(y_w_ * y_w_.adjoint(), y_w_.adjoint() * y_w_));
  }
  /// ‖X*Y − Y*X‖_F. Zero iff H = [[X, Y], [Y, −X]] is unitary (given the
  /// other constraints); commuting normal X, Y with unrelated phases miss this.
  double phase_defect() const { return distance(x_w_.adjoint() * y_w_, y_w_.adjoint() * x_w_); }

 private:
  WeightPair(WeightKind k, CMatrix x, CMatrix y) : kind_(k), x_w_(std::move(x)), y_w_(std::move(y)) {
    if (!x_w_.is_square() || x_w_.rows() != y_w_.rows() || x_w_.cols() != y_w_.cols())
      throw DimensionMismatch("WeightPair: X and Y must be square of equal size");
  }

  void require_dim(const HermitianMatrix& a, const HermitianMatrix& b) const {
    if (a.dim() != dim() || b.dim() != dim())
      throw DimensionMismatch("WeightPair: operand dimension differs from weight dimension");
  }

  WeightKind kind_;
  CMatrix x_w_;
  CMatrix y_w_;
  std::optional<double> x_;
};

/**
 * Random weight pair of the given kind.
 *   scalar:            x uniform in [0.05, 0.95].
 *   commuting_normal:  X = W D_x W*, Y = W D_y W*, W Haar, with
 *                      d_x = cos θ·e^{iα}, d_y = sin θ·e^{iα} entrywise.
 *   bi_isometric:      X = U C W*, Y = U S W*, U, W Haar, C = diag(cos θ),
 *                      S = diag(sin θ), θ ∈ [0, π/2].
 */
inline WeightPair gen_weight_pair(WeightKind kind, std::size_t dim, Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, 0.5 * std::numbers::pi);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  switch (kind) {
    case WeightKind::scalar: {
      std::uniform_real_distribution<double> u(0.05, 0.95);
      return WeightPair::scalar(u(rng), dim);
    }
    case WeightKind::commuting_normal: {
      const CMatrix w = haar_unitary(dim, rng);
      std::vector<cplx> dx(dim), dy(dim);
      // shared phase per coordinate keeps X*Y Hermitian
      for (std::size_t i = 0; i < dim; ++i) {
        const double th = angle(rng);
        const double ph = phase(rng);
        dx[i] = std::polar(std::cos(th), ph);
        dy[i] = std::polar(std::sin(th), ph);
      }
      const CMatrix wa = w.adjoint();
      return WeightPair::commuting_normal(w * CMatrix::diagonal(std::span<const cplx>(dx)) * wa,
                                          w * CMatrix::diagonal(std::span<const cplx>(dy)) * wa);
    }
    case WeightKind::bi_isometric: {
      const CMatrix u = haar_unitary(dim, rng);
      const CMatrix w = haar_unitary(dim, rng);
      std::vector<double> c(dim), s(dim);
      for (std::size_t i = 0; i < dim; ++i) {
        const double th = angle(rng);
        c[i] = std::cos(th);
        s[i] = std::sin(th);
      }
      const CMatrix wa = w.adjoint();
      return WeightPair::bi_isometric(u * CMatrix::diagonal(std::span<const double>(c)) * wa,
                                      u * CMatrix::diagonal(std::span<const double>(s)) * wa);
    }
  }
  throw InvalidArgument("gen_weight_pair: bad kind");
}

inline WeightPair gen_weight_pair(WeightKind kind, std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  return gen_weight_pair(kind, dim, rng);
}

/// H = [[X, Y], [Y, −X]]; unitary when X, Y are commuting normal with X*X + Y*Y = I.
inline CMatrix weight_unitary(const WeightPair& w) {
  const std::size_t n = w.dim();
  CMatrix h(2 * n, 2 * n);
  h.set_block(0, 0, w.x_weight());
  h.set_block(0, n, w.y_weight());
  h.set_block(n, 0, w.y_weight());
  h.set_block(n, n, w.x_weight() * cplx(-1.0));
  return h;
}

/// H*(A ⊕ B)H, whose diagonal blocks are W₁ and W₂. For scalar weights H is
/// the Hermitian rotation [[√(1−x)I, √x I], [√x I, −√(1−x)I]].
inline HermitianMatrix rotation_congruence(const HermitianMatrix& a, const HermitianMatrix& b,
                                           const WeightPair& w) {
  return direct_sum(a, b).congruence(weight_unitary(w));
}

// -- majorization predicates -------------------------------------------------

namespace detail {

inline std::vector<double> sorted_desc(std::span<const double> v) {
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

inline double majorization_scale(std::span<const double> a, std::span<const double> b) {
  double sa = 0.0, sb = 0.0;
  for (double v : a) sa += std::abs(v);
  for (double v : b) sb += std::abs(v);
  return 1.0 + std::max(sa, sb);
}

}  // namespace detail

/// Σ₁ᵏ b↓ − Σ₁ᵏ a↓ for k = 1..n. All ≥ 0 iff a ≺_w b.
inline std::vector<double> partial_sum_slacks(std::span<const double> b, std::span<const double> a) {
  if (a.size() != b.size())
    throw DimensionMismatch("majorization: sizes " + std::to_string(a.size()) + " and " +
                            std::to_string(b.size()));
  const auto as = detail::sorted_desc(a);
  const auto bs = detail::sorted_desc(b);
  std::vector<double> out(a.size());
  double sa = 0.0, sb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    sa += as[k];
    sb += bs[k];
    out[k] = sb - sa;
  }
  return out;
}

/// a ≺_w b, tolerance 1e-10·(1 + max(‖a‖₁, ‖b‖₁)).
inline bool weakly_majorizes(std::span<const double> b, std::span<const double> a) {
  const double tol = 1e-10 * detail::majorization_scale(a, b);
  const auto sl = partial_sum_slacks(b, a);
  return std::all_of(sl.begin(), sl.end(), [&](double s) { return s >= -tol; });
}

/// a ≺ b: weak majorization plus equal totals.
inline bool majorizes(std::span<const double> b, std::span<const double> a) {
  if (!weakly_majorizes(b, a)) return false;
  const double tol = 1e-10 * detail::majorization_scale(a, b);
  const double ta = std::accumulate(a.begin(), a.end(), 0.0);
  const double tb = std::accumulate(b.begin(), b.end(), 0.0);
  return std::abs(ta - tb) <= tol;
}

inline bool weakly_majorizes(const HermitianMatrix& b, const HermitianMatrix& a) {
  return weakly_majorizes(eigenvalues(b), eigenvalues(a));
}

inline bool majorizes(const HermitianMatrix& b, const HermitianMatrix& a) {
  return majorizes(eigenvalues(b), eigenvalues(a));
}

// -- certificates ------------------------------------------------------------

/// Permutation π as a map row → column: P(i, π[i]) = 1, so (P v)_i = v[π[i]].
using Permutation = std::vector<std::size_t>;

inline RealMatrix permutation_matrix(const Permutation& p) {
  RealMatrix m(p.size(), p.size());
  for (std::size_t i = 0; i < p.size(); ++i) m(i, p[i]) = 1.0;
  return m;
}

/**
 * Witness that `source` ≺ `target`: source = dstoch·target with dstoch doubly
 * stochastic, optionally decomposed as Σ weights[j]·P(perms[j]), and, for a
 * matrix pair S ≺ T, unitaries V_j with S = Σ weights[j]·V_j T V_j*.
 */
struct MajorizationCert {
  std::vector<double> source;
  std::vector<double> target;
  RealMatrix dstoch;
  std::size_t t_transforms = 0;
  std::vector<Permutation> perms;
  std::vector<double> weights;
  std::vector<CMatrix> unitaries;
  double residual = 0.0;  // ‖S − Σ w V T V*‖_F when unitaries are filled

  /// Violated invariants, empty when all hold.
  std::vector<std::string> invariant_violations(double tol = 1e-10) const {
    std::vector<std::string> bad;
    const std::size_t n = source.size();
    if (target.size() != n || dstoch.rows() != n || dstoch.cols() != n) {
      bad.emplace_back("shape mismatch");
      return bad;
    }
    for (std::size_t i = 0; i < n; ++i) {
      double rs = 0.0, cs = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        rs += dstoch(i, j);
        cs += dstoch(j, i);
        if (dstoch(i, j) < -1e-14) bad.push_back("negative entry in dstoch");
      }
      if (std::abs(rs - 1.0) > 1e-12) bad.push_back("row " + std::to_string(i) + " sum");
      if (std::abs(cs - 1.0) > 1e-12) bad.push_back("column " + std::to_string(i) + " sum");
    }
    const auto img = dstoch.apply(target);
    double tnorm = 0.0, err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      tnorm += target[i] * target[i];
      err = std::max(err, std::abs(img[i] - source[i]));
    }
    if (err > tol * (1.0 + std::sqrt(tnorm))) bad.push_back("source != dstoch * target");
    if (!perms.empty()) {
      if (perms.size() != weights.size()) bad.emplace_back("perms/weights size mismatch");
      const double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
      if (std::abs(wsum - 1.0) > 1e-12) bad.emplace_back("weights do not sum to 1");
      for (double w : weights)
        if (!(w > 0.0 && w <= 1.0 + 1e-15)) bad.emplace_back("weight outside (0, 1]");
      RealMatrix acc(n, n);
      for (std::size_t j = 0; j < perms.size() && j < weights.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) acc(i, perms[j][i]) += weights[j];
      if (acc.max_abs_diff(dstoch) > tol) bad.emplace_back("dstoch != sum of weighted permutations");
      if (perms.size() > (n - 1) * (n - 1) + 1) bad.emplace_back("too many permutations");
    }
    return bad;
  }
};

/**
 * Hardy–Littlewood–Pólya construction: a doubly stochastic D with a = D·b,
 * built as a product of T-transforms (1−t)I + t·(j k).
 *
 * Works on the sorted vectors c = b↓ and a↓. Each step picks the first j with
 * c_j > a_j and the first k > j with c_k < a_k, moves
 * δ = min(c_j − a_j, a_k − c_k) from c_j to c_k, and fixes that coordinate
 * exactly. Fixed coordinates are never picked again, so at most n − 1 steps
 * occur. D is then mapped back to the caller's coordinate order.
 */
inline MajorizationCert hlp_chain(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionMismatch("hlp_chain: size mismatch");
  if (!majorizes(b, a)) throw NotMajorized("hlp_chain: source is not majorized by target");
  const std::size_t n = a.size();

  auto argsort_desc = [](std::span<const double> v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return v[i] > v[j]; });
    return idx;
  };
  const auto oa = argsort_desc(a);
  const auto ob = argsort_desc(b);
  std::vector<double> as(n), c(n);
  for (std::size_t i = 0; i < n; ++i) {
    as[i] = a[oa[i]];
    c[i] = b[ob[i]];
  }
  double scale = 1.0;
  for (double v : b) scale = std::max(scale, 1.0 + std::abs(v));
  const double tol = 1e-14 * scale;

  RealMatrix d = RealMatrix::identity(n);
  std::size_t steps = 0;
  while (steps < 2 * n) {
    std::size_t j = 0;
    while (j < n && !(c[j] > as[j] + tol)) ++j;
    if (j == n) break;
    std::size_t k = j + 1;
    while (k < n && !(c[k] < as[k] - tol)) ++k;
    if (k == n) break;
    const double gap_j = c[j] - as[j];
    const double gap_k = as[k] - c[k];
    const double delta = std::min(gap_j, gap_k);
    const double t = delta / (c[j] - c[k]);
    if (gap_j <= gap_k) {
      c[k] += delta;
      c[j] = as[j];
    } else {
      c[j] -= delta;
      c[k] = as[k];
    }
    for (std::size_t col = 0; col < n; ++col) {
      const double dj = d(j, col), dk = d(k, col);
      d(j, col) = (1.0 - t) * dj + t * dk;
      d(k, col) = t * dj + (1.0 - t) * dk;
    }
    ++steps;
  }

  MajorizationCert cert;
  cert.source.assign(a.begin(), a.end());
  cert.target.assign(b.begin(), b.end());
  cert.dstoch = RealMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) cert.dstoch(oa[i], ob[k]) = d(i, k);
  cert.t_transforms = steps;
  return cert;
}

struct BirkhoffDecomposition {
  std::vector<double> weights;
  std::vector<Permutation> perms;
};

namespace detail {

// Kuhn's augmenting-path matching on the support {R > threshold}. Candidate
// columns are tried in decreasing order of weight.
inline std::optional<Permutation> perfect_matching(const RealMatrix& r, double threshold) {
  const std::size_t n = r.rows();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (r(i, j) > threshold) adj[i].push_back(j);
    std::stable_sort(adj[i].begin(), adj[i].end(),
                     [&](std::size_t x, std::size_t y) { return r(i, x) > r(i, y); });
  }
  constexpr std::size_t kFree = static_cast<std::size_t>(-1);
  std::vector<std::size_t> row_of(n, kFree);
  std::vector<char> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t i) {
    for (std::size_t j : adj[i]) {
      if (seen[j]) continue;
      seen[j] = 1;
      if (row_of[j] == kFree || augment(row_of[j])) {
        row_of[j] = i;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    seen.assign(n, 0);
    if (!augment(i)) return std::nullopt;
  }
  Permutation p(n);
  for (std::size_t j = 0; j < n; ++j) p[row_of[j]] = j;
  return p;
}

}  // namespace detail

/**
 * Birkhoff–von Neumann decomposition D = Σ w_j P_j.
 *
 * Repeatedly finds a perfect matching on the support of the remainder
 * (entries > 1e-12), takes the smallest matched entry as the weight and
 * subtracts. The smallest entry becomes exactly zero, so the support shrinks
 * every round. If no matching exists above 1e-12 the search is retried on the
 * strictly positive support; failure there with mass still left throws.
 */
inline BirkhoffDecomposition birkhoff(const RealMatrix& dstoch) {
  constexpr double kPreTol = 1e-10;
  constexpr double kSupport = 1e-12;
  constexpr double kDoneMass = 1e-13;
  const std::size_t n = dstoch.rows();
  if (dstoch.cols() != n) throw DimensionMismatch("birkhoff: matrix is not square");
  RealMatrix r = dstoch;
  for (std::size_t i = 0; i < n; ++i) {
    double rs = 0.0, cs = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (r(i, j) < -kPreTol) throw InvalidArgument("birkhoff: negative entry");
      r(i, j) = std::max(r(i, j), 0.0);
      rs += dstoch(i, j);
      cs += dstoch(j, i);
    }
    if (std::abs(rs - 1.0) > kPreTol || std::abs(cs - 1.0) > kPreTol)
      throw InvalidArgument("birkhoff: matrix is not doubly stochastic");
  }

  BirkhoffDecomposition out;
  double taken = 0.0;
  const std::size_t max_terms = n * n + 1;
  while (1.0 - taken > kDoneMass && out.perms.size() < max_terms) {
    auto match = detail::perfect_matching(r, kSupport);
    if (!match) match = detail::perfect_matching(r, 0.0);
    if (!match) {
      if (1.0 - taken <= kPreTol) break;
      throw NoPerfectMatching("birkhoff: no perfect matching with mass " + std::to_string(1.0 - taken) +
                              " remaining");
    }
    double w = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (r(i, (*match)[i]) < w) {
        w = r(i, (*match)[i]);
        arg = i;
      }
    for (std::size_t i = 0; i < n; ++i) r(i, (*match)[i]) -= w;
    r(arg, (*match)[arg]) = 0.0;
    out.weights.push_back(w);
    out.perms.push_back(std::move(*match));
    taken += w;
  }
  return out;
}

/**
 * Mixture-of-unitaries certificate for S ≺ T:
 *   S = Σ_j w_j V_j T V_j*,   V_j = U_S P_j U_T*,
 * where S = U_S diag(λ(S)) U_S*, T = U_T diag(λ(T)) U_T* and Σ w_j P_j is the
 * Birkhoff decomposition of the HLP matrix taking λ(T) to λ(S).
 */
inline MajorizationCert uhlmann_mixture(const HermitianMatrix& s, const HermitianMatrix& t) {
  if (s.dim() != t.dim()) throw DimensionMismatch("uhlmann_mixture: dimension mismatch");
  const EigenSystem es = eigh(s);
  const EigenSystem et = eigh(t);
  if (!majorizes(et.values, es.values)) throw NotMajorized("uhlmann_mixture: S is not majorized by T");
  MajorizationCert cert = hlp_chain(es.values, et.values);
  BirkhoffDecomposition bk = birkhoff(cert.dstoch);
  cert.weights = std::move(bk.weights);
  cert.perms = std::move(bk.perms);

  const std::size_t n = s.dim();
  const CMatrix ut_adj = et.vectors.adjoint();
  CMatrix recon(n, n);
  for (std::size_t j = 0; j < cert.perms.size(); ++j) {
    // U_S P: column c of the product is column i of U_S where π(i) = c.
    CMatrix us_p(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t r = 0; r < n; ++r) us_p(r, cert.perms[j][i]) = es.vectors(r, i);
    CMatrix v = us_p * ut_adj;
    recon += v * t.matrix() * v.adjoint() * cplx(cert.weights[j]);
    cert.unitaries.push_back(std::move(v));
  }
  cert.residual = distance(s.matrix(), recon);
  return cert;
}

/**
 * Φ(M) = (X*AX + Y*BY) ⊕ (Y*AY + X*BX), where A, B are the diagonal n×n
 * blocks of the 2n×2n matrix M. Unital and trace preserving.
 */
inline HermitianMatrix phi_map(const WeightPair& w, const HermitianMatrix& m) {
  const std::size_t n = w.dim();
  if (m.dim() != 2 * n)
    throw DimensionMismatch("phi_map: expected a " + std::to_string(2 * n) + "-dimensional matrix");
  const HermitianMatrix a = m.principal_block(0, n);
  const HermitianMatrix b = m.principal_block(n, n);
  return direct_sum(w.first_combination(a, b), w.second_combination(a, b));
}

}  // namespace hhmat
