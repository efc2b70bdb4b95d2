#pragma once

#include <cstddef>
#include <vector>

#include "hhmat/quad_rule.hpp"
#include "hhmat/scalarfn.hpp"
#include "hhmat/spectral.hpp"

namespace hhmat {

namespace detail {

inline void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b, const char* who) {
  if (a.dim() != b.dim())
    throw DimensionMismatch(std::string(who) + ": dimensions " + std::to_string(a.dim()) + " and " +
                            std::to_string(b.dim()));
}

// Domain checks on the endpoints suffice: the spectrum of (1−x)A + xB lies in
// [min(λ_n(A), λ_n(B)), max(λ_1(A), λ_1(B))].
inline void require_segment_in_domain(const HermitianMatrix& a, const HermitianMatrix& b,
                                      const ScalarFn& f) {
  (void)clamp_to_domain(eigenvalues(a), f);
  (void)clamp_to_domain(eigenvalues(b), f);
}

inline HermitianMatrix segment_point(const HermitianMatrix& a, const HermitianMatrix& b, double x) {
  return (1.0 - x) * a + x * b;
}

}  // namespace detail

/// Σᵢ wᵢ f((1−xᵢ)A + xᵢB) ≈ ∫₀¹ f((1−x)A + xB) dx.
inline HermitianMatrix segment_integral_matrix(const HermitianMatrix& a, const HermitianMatrix& b,
                                               const ScalarFn& f, const QuadRule& rule) {
  detail::require_same_dim(a, b, "segment_integral_matrix");
  detail::require_segment_in_domain(a, b, f);
  HermitianMatrix acc = HermitianMatrix::zeros(a.dim());
  for (std::size_t i = 0; i < rule.size(); ++i)
    acc = acc + rule.weights[i] * apply_fn(detail::segment_point(a, b, rule.nodes[i]), f);
  return acc;
}

/// Σᵢ wᵢ λ↓(f((1−xᵢ)A + xᵢB)) for every index j at once.
inline std::vector<double> segment_integral_spectrum(const HermitianMatrix& a, const HermitianMatrix& b,
                                                     const ScalarFn& f, const QuadRule& rule) {
  detail::require_same_dim(a, b, "segment_integral_spectrum");
  detail::require_segment_in_domain(a, b, f);
  std::vector<double> acc(a.dim(), 0.0);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const auto spec = fn_spectrum(detail::segment_point(a, b, rule.nodes[i]), f);
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += rule.weights[i] * spec[j];
  }
  return acc;
}

/// Σᵢ wᵢ λ↓_{1+j}(f((1−xᵢ)A + xᵢB)), j zero-based.
inline double segment_integral_eigenvalue(const HermitianMatrix& a, const HermitianMatrix& b,
                                          const ScalarFn& f, std::size_t j, const QuadRule& rule) {
  if (j >= a.dim()) throw InvalidArgument("segment_integral_eigenvalue: index out of range");
  return segment_integral_spectrum(a, b, f, rule)[j];
}

}  // namespace hhmat
