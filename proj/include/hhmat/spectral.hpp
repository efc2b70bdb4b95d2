#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "hhmat/error.hpp"
#include "hhmat/matrix.hpp"
#include "hhmat/scalarfn.hpp"

namespace hhmat {

/// Eigenvalues in nonincreasing order; column j of `vectors` belongs to values[j].
struct EigenSystem {
  std::vector<double> values;
  CMatrix vectors;
};

/**
 * Hermitian eigendecomposition by cyclic Jacobi with complex Givens rotations.
 *
 * Each rotation annihilates a_pq through G = [[c, s·e^{iφ}], [−s·e^{−iφ}, c]]
 * acting on rows/columns p, q, where a_pq = |a_pq|·e^{iφ}. Sweeps stop once
 * the off-diagonal Frobenius mass is at most 1e-13·‖A‖_F. Ties in the
 * eigenvalue sort are broken stably, so the output is deterministic.
 */
inline EigenSystem eigh(const HermitianMatrix& a, int max_sweeps = 30) {
  constexpr double kOffTol = 1e-13;
  const std::size_t n = a.dim();
  CMatrix m = a.matrix();
  CMatrix v = CMatrix::identity(n);
  const double target = kOffTol * m.frobenius_norm();

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(m(i, j));
    return std::sqrt(s);
  };

  bool converged = off_norm() <= target;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = m(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const cplx phase = apq / mag;
        const double theta = (m(q, q).real() - m(p, p).real()) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;
        const cplx s_e = s * phase;             // G(p,q)
        const cplx s_ec = s * std::conj(phase);  // −G(q,p)

        // columns: M ← M G
        for (std::size_t k = 0; k < n; ++k) {
          const cplx mkp = m(k, p), mkq = m(k, q);
          m(k, p) = c * mkp - s_ec * mkq;
          m(k, q) = s_e * mkp + c * mkq;
        }
        // rows: M ← G* M
        for (std::size_t k = 0; k < n; ++k) {
          const cplx mpk = m(p, k), mqk = m(q, k);
          m(p, k) = c * mpk - s_e * mqk;
          m(q, k) = s_ec * mpk + c * mqk;
        }
        m(p, q) = 0.0;
        m(q, p) = 0.0;
        m(p, p) = m(p, p).real();
        m(q, q) = m(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s_ec * vkq;
          v(k, q) = s_e * vkp + c * vkq;
        }
      }
    }
    converged = off_norm() <= target;
  }
  if (!converged)
    throw NonConvergence("eigh: off-diagonal mass " + std::to_string(off_norm()) + " after " +
                         std::to_string(max_sweeps) + " sweeps");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return m(i, i).real() > m(j, j).real();
  });
  EigenSystem es;
  es.values.resize(n);
  es.vectors = CMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    es.values[j] = m(order[j], order[j]).real();
    for (std::size_t k = 0; k < n; ++k) es.vectors(k, j) = v(k, order[j]);
  }
  return es;
}

/// Eigenvalues in nonincreasing order.
inline std::vector<double> eigenvalues(const HermitianMatrix& a) { return eigh(a).values; }

/// U diag(d) U*.
inline HermitianMatrix reconstruct(const CMatrix& u, std::span<const double> d) {
  const std::size_t n = u.rows();
  CMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < d.size(); ++k) s += u(i, k) * d[k] * std::conj(u(j, k));
      r(i, j) = s;
      r(j, i) = std::conj(s);
    }
  return HermitianMatrix::hermitian_part(r);
}

namespace detail {

inline double spectral_scale(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

// Clamps values within 1e-10·(1 + max|λ|) of the domain into it; throws on
// anything farther out.
inline std::vector<double> clamp_to_domain(std::span<const double> values, const ScalarFn& f) {
  const double tol = 1e-10 * (1.0 + spectral_scale(values));
  std::vector<double> out(values.begin(), values.end());
  std::vector<double> bad;
  for (double& v : out) {
    if (!f.domain().contains(v, tol)) bad.push_back(v);
    v = f.domain().clamp(v);
  }
  if (!bad.empty()) {
    std::string msg = "spectrum outside the domain of '" + f.name() + "':";
    for (double b : bad) msg += " " + std::to_string(b);
    throw DomainViolation(msg, std::move(bad));
  }
  return out;
}

}  // namespace detail

/// f applied to a nonincreasing spectrum, re-sorted nonincreasing. This is the
/// spectrum of f(A).
inline std::vector<double> fn_spectrum(std::span<const double> values, const ScalarFn& f) {
  std::vector<double> out = detail::clamp_to_domain(values, f);
  for (double& v : out) v = f(v);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

inline std::vector<double> fn_spectrum(const HermitianMatrix& a, const ScalarFn& f) {
  return fn_spectrum(eigenvalues(a), f);
}

/// f(A) = U diag(f(λ)) U*.
inline HermitianMatrix apply_fn(const HermitianMatrix& a, const ScalarFn& f) {
  const EigenSystem es = eigh(a);
  std::vector<double> fv = detail::clamp_to_domain(es.values, f);
  for (double& v : fv) v = f(v);
  return reconstruct(es.vectors, fv);
}

/// Multiset union of two nonincreasing lists, nonincreasing. Spectrum of A ⊕ B.
inline std::vector<double> merge_spectra(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out), std::greater<>());
  return out;
}

/// λ_n(A) ≥ −tol·(1 + λ₁(|A|)).
inline bool is_psd(std::span<const double> values, double tol = 1e-10) {
  if (values.empty()) return true;
  const double smallest = *std::min_element(values.begin(), values.end());
  return smallest >= -tol * (1.0 + detail::spectral_scale(values));
}

inline bool is_psd(const HermitianMatrix& a, double tol = 1e-10) { return is_psd(eigenvalues(a), tol); }

inline double determinant(const HermitianMatrix& a) {
  double d = 1.0;
  for (double v : eigenvalues(a)) d *= v;
  return d;
}

}  // namespace hhmat
