#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hhmat/error.hpp"
#include "hhmat/matrix.hpp"
#include "hhmat/random.hpp"
#include "hhmat/scalarfn.hpp"
#include "hhmat/spectral.hpp"

namespace hhmat {

/// P ≤ S ≤ T ≤ Q with P + Q = S + T and Tr f(P) + Tr f(Q) < Tr f(S) + Tr f(T).
struct FourPointWitness {
  std::string fn;
  HermitianMatrix p, s, t, q;
  double outer = 0.0;  // Tr f(P) + Tr f(Q)
  double inner = 0.0;  // Tr f(S) + Tr f(T)
  std::size_t sample = 0;
};

struct FourPointSearchOptions {
  std::vector<std::string> fns;  // empty: every convex catalog entry
  bool diagonal = false;         // commuting diagonal inputs only
  std::size_t min_dim = 2;
  std::size_t max_dim = 3;
  double margin = 1e-8;
};

struct FourPointSearchResult {
  std::optional<FourPointWitness> witness;
  std::size_t samples = 0;
  double largest_gap = -std::numeric_limits<double>::infinity();  // max of inner − outer seen
  std::size_t rejected = 0;                                       // candidates failing re-validation
};

namespace detail {

inline double trace_fn(const HermitianMatrix& m, const ScalarFn& f) { return apply_fn(m, f).trace(); }

inline HermitianMatrix random_psd_increment(std::size_t n, bool diagonal, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (diagonal) {
    std::vector<double> d(n);
    for (auto& v : d) v = u(rng) < 0.3 ? 0.0 : u(rng);
    return HermitianMatrix::diagonal(d);
  }
  // mixes low-rank and full-rank increments
  const std::size_t rank = 1 + static_cast<std::size_t>(u(rng) * static_cast<double>(n));
  const CMatrix g = ginibre(n, std::min(rank, n), rng);
  return HermitianMatrix::hermitian_part(g * g.adjoint() * cplx(u(rng) / static_cast<double>(n)));
}

}  // namespace detail

/// Recomputes ordering, the sum constraint and the trace gap through the
/// matrix functions themselves.
inline bool revalidate_four_point(const FourPointWitness& w, double margin = 1e-8) {
  const ScalarFn& f = lookup(w.fn);
  if (!f.is_convex()) return false;
  const double scale = 1.0 + std::max({w.p.frobenius_norm(), w.q.frobenius_norm()});
  if (distance((w.p + w.q).matrix(), (w.s + w.t).matrix()) > 1e-12 * scale) return false;
  if (!is_psd(w.s - w.p) || !is_psd(w.t - w.s) || !is_psd(w.q - w.t)) return false;
  const double outer = detail::trace_fn(w.p, f) + detail::trace_fn(w.q, f);
  const double inner = detail::trace_fn(w.s, f) + detail::trace_fn(w.t, f);
  return outer < inner - margin;
}

/**
 * Random search for matrices violating the four-point trace property.
 *
 * Each sample draws S Hermitian, T = S + Δ and R with Δ, R ≥ 0, and sets
 * P = S − R, Q = T + R. Functions defined on [0,∞) get all four shifted by
 * c·I so that P ≥ 0. Functions cycle round-robin over the selection.
 */
inline FourPointSearchResult search_four_point_counterexample(std::size_t budget, std::uint64_t seed,
                                                              const FourPointSearchOptions& opt = {}) {
  std::vector<const ScalarFn*> fns;
  if (opt.fns.empty()) {
    for (const auto& f : catalog())
      if (f.is_convex()) fns.push_back(&f);
  } else {
    for (const auto& name : opt.fns) {
      const ScalarFn& f = lookup(name);
      if (!f.is_convex()) throw HypothesisViolation("four-point search: '" + name + "' is not convex");
      fns.push_back(&f);
    }
  }
  if (opt.min_dim == 0 || opt.min_dim > opt.max_dim) throw InvalidArgument("four-point search: bad dim range");

  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick_dim(opt.min_dim, opt.max_dim);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  FourPointSearchResult res;
  for (std::size_t k = 0; k < budget; ++k) {
    ++res.samples;
    const ScalarFn& f = *fns[k % fns.size()];
    const std::size_t n = pick_dim(rng);
    HermitianMatrix s = HermitianMatrix::zeros(n);
    if (opt.diagonal) {
      std::vector<double> d(n);
      for (auto& v : d) v = 4.0 * u(rng) - 2.0;
      s = HermitianMatrix::diagonal(d);
    } else {
      s = gen_hermitian(n, rng, {-2.0, 2.0});
    }
    HermitianMatrix t = s + detail::random_psd_increment(n, opt.diagonal, rng);
    const HermitianMatrix r = detail::random_psd_increment(n, opt.diagonal, rng);
    HermitianMatrix p = s - r;
    HermitianMatrix q = t + r;
    if (f.domain().lo > -std::numeric_limits<double>::infinity()) {
      const double low = eigenvalues(p).back();
      const double c = f.domain().lo - low + 0.5 * u(rng);
      const HermitianMatrix shift = c * HermitianMatrix::identity(n);
      p = p + shift;
      s = s + shift;
      t = t + shift;
      q = q + shift;
    }
    const auto sum_fn = [&f](const HermitianMatrix& m) {
      double acc = 0.0;
      for (double v : fn_spectrum(m, f)) acc += v;
      return acc;
    };
    const double outer = sum_fn(p) + sum_fn(q);
    const double inner = sum_fn(s) + sum_fn(t);
    res.largest_gap = std::max(res.largest_gap, inner - outer);
    if (outer < inner - opt.margin) {
      FourPointWitness w{f.name(), p, s, t, q, outer, inner, k};
      if (revalidate_four_point(w, opt.margin)) {
        res.witness = std::move(w);
        return res;
      }
      ++res.rejected;
    }
  }
  return res;
}

}  // namespace hhmat
