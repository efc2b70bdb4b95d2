#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include "hhmat/matrix.hpp"
#include "hhmat/scalarfn.hpp"
#include "hhmat/spectral.hpp"

namespace hhmat {

using Rng = std::mt19937_64;

/// Complex Gaussian matrix with E|g_ij|² = 1.
inline CMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  CMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const double re = g(rng);
      const double im = g(rng);
      m(i, j) = cplx(re, im);
    }
  return m;
}

/**
 * Haar-distributed unitary: QR of a Ginibre matrix with R's diagonal made
 * positive. Gram–Schmidt with one reorthogonalization pass yields exactly that
 * factor, since each normalization divides by a positive norm.
 */
inline CMatrix haar_unitary(std::size_t n, Rng& rng) {
  CMatrix q = ginibre(n, n, rng);
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        cplx dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, k)) * q(i, j);
        for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
      }
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) nrm += std::norm(q(i, j));
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < n; ++i) q(i, j) /= nrm;
  }
  return q;
}

/// G G*/dim for complex Gaussian G; mean eigenvalue ≈ 1.
inline HermitianMatrix gen_psd(std::size_t dim, Rng& rng) {
  const CMatrix g = ginibre(dim, dim, rng);
  return HermitianMatrix::hermitian_part(g * g.adjoint() * cplx(1.0 / static_cast<double>(dim)));
}

inline HermitianMatrix gen_psd(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  return gen_psd(dim, rng);
}

/// U diag(d) U* with Haar U and d uniform in [spectrum.lo, spectrum.hi].
inline HermitianMatrix gen_hermitian(std::size_t dim, Rng& rng, Interval spectrum) {
  if (!(spectrum.lo <= spectrum.hi) || !std::isfinite(spectrum.lo) || !std::isfinite(spectrum.hi))
    throw InvalidArgument("gen_hermitian: spectrum interval must be finite and nonempty");
  std::uniform_real_distribution<double> u(spectrum.lo, spectrum.hi);
  std::vector<double> d(dim);
  for (auto& v : d) v = spectrum.lo == spectrum.hi ? spectrum.lo : u(rng);
  const CMatrix q = haar_unitary(dim, rng);
  return reconstruct(q, d);
}

inline HermitianMatrix gen_hermitian(std::size_t dim, std::uint64_t seed, Interval spectrum) {
  Rng rng(seed);
  return gen_hermitian(dim, rng, spectrum);
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Trial seed from (master seed, checker name, dim, trial index).
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view name, std::size_t dim,
                                 std::size_t trial) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : name) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
  std::uint64_t s = detail::splitmix64(master);
  s = detail::splitmix64(s ^ h);
  s = detail::splitmix64(s ^ static_cast<std::uint64_t>(dim));
  s = detail::splitmix64(s ^ static_cast<std::uint64_t>(trial));
  return s;
}

}  // namespace hhmat
