#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "hhmat/error.hpp"
#include "hhmat/majorize.hpp"
#include "hhmat/norms.hpp"
#include "hhmat/quadrature.hpp"
#include "hhmat/scalarfn.hpp"
#include "hhmat/spectral.hpp"

namespace hhmat {

struct SlackEntry {
  std::string label;
  double slack;
};

/**
 * Outcome of one inequality check.
 *
 * `min_slack` is the smallest of the per-index slacks in `details`, each in
 * the natural units of its inequality (RHS − LHS for "≤"). `tol` is the
 * absolute tolerance actually applied: tol = rel_tol · (1 + scale), with
 * `scale` the magnitude of the quantities compared. holds ⇔ min_slack ≥ −tol
 * (and any extra condition recorded in `metrics`, e.g. a reconstruction
 * residual).
 */
struct CheckVerdict {
  std::string name;
  bool holds = false;
  double min_slack = std::numeric_limits<double>::infinity();
  double tol = 0.0;
  double scale = 0.0;
  std::vector<SlackEntry> details;
  std::map<std::string, double> metrics;
  std::vector<std::string> notes;

  void add(std::string label, double slack) {
    min_slack = std::min(min_slack, slack);
    details.push_back({std::move(label), slack});
  }

  void note_scale(double v) { scale = std::max(scale, std::abs(v)); }

  template <class Range>
  void note_scale_all(const Range& r) {
    for (double v : r) note_scale(v);
  }

  void finalize(double rel_tol) {
    tol = rel_tol * (1.0 + scale);
    holds = min_slack >= -tol;
  }
};

constexpr double kExactTol = 1e-9;
constexpr double kQuadratureTol = 1e-6;

namespace detail {

inline const char* kIsometryNote =
    "the isometries of the block operator inequality are not constructed; only this "
    "eigenvalue/trace/norm consequence is checked";

inline void require_psd(const HermitianMatrix& m, const char* who, const char* which) {
  if (!is_psd(m)) throw PreconditionViolation(std::string(who) + ": " + which + " is not PSD");
}

inline bool covers_halfline(const ScalarFn& f) { return f.domain().contains(Interval::nonnegative()); }

// f concave on [0,∞) with f(0) ≥ 0; such f is nonnegative and nondecreasing.
inline void require_concave_nonneg(const ScalarFn& f, const char* who) {
  if (!f.is_concave() || !covers_halfline(f) || !f.zero_value_nonneg())
    throw HypothesisViolation(std::string(who) + ": '" + f.name() +
                              "' must be concave on [0,inf) with f(0) >= 0");
}

// g convex, monotone on [0,∞) with g(0) ≤ 0.
inline void require_convex_monotone(const ScalarFn& g, const char* who) {
  if (!g.is_convex() || !g.is_monotone() || !covers_halfline(g) || !g.zero_value_nonpos())
    throw HypothesisViolation(std::string(who) + ": '" + g.name() +
                              "' must be monotone convex on [0,inf) with g(0) <= 0");
}

// g convex and nonnegative on [0,∞) with g(0) ≤ 0 (hence g(0) = 0).
inline bool convex_nonneg_vanishing(const ScalarFn& g) {
  return g.is_convex() && covers_halfline(g) && g.zero_value_nonpos() && g.zero_value_nonneg() &&
         g.nonnegative_on(Interval::nonnegative());
}

// Besides XY = YX and normality, the block rotation H = [[X, Y], [Y, −X]] must
// be unitary, which needs X*Y = Y*X. Pairs with unrelated phases violate the
// eigenvalue inequalities.
inline void require_commuting_family(const WeightPair& w, const char* who) {
  if (w.kind() == WeightKind::bi_isometric)
    throw HypothesisViolation(std::string(who) + ": needs scalar or commuting normal weights");
  if (w.phase_defect() > WeightPair::kTol)
    throw HypothesisViolation(std::string(who) + ": commuting normal weights need X*Y = Y*X");
}

inline void require_bi_isometric(const WeightPair& w, const char* who) {
  if (w.isometry_defect() > WeightPair::kTol || w.coisometry_defect() > WeightPair::kTol)
    throw HypothesisViolation(std::string(who) + ": weights must satisfy X*X+Y*Y = XX*+YY* = I");
}

inline Interval spectral_hull(std::span<const double> a, std::span<const double> b) {
  Interval iv{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (double v : a) iv = {std::min(iv.lo, v), std::max(iv.hi, v)};
  for (double v : b) iv = {std::min(iv.lo, v), std::max(iv.hi, v)};
  return iv;
}

inline double sum(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); }

inline double pick_tol(double tol, double fallback) { return tol > 0.0 ? tol : fallback; }

}  // namespace detail

/**
 * Tr f((A+B)/2) ≤ Tr ∫₀¹ f((1−x)A + xB) dx ≤ Tr (f(A) + f(B))/2 for convex f.
 *
 * With a symmetric positive rule both gaps are nonnegative for the discrete
 * sum as well, since Tr f is convex on Hermitian matrices.
 */
inline CheckVerdict check_trace_hh(const HermitianMatrix& a, const HermitianMatrix& b, const ScalarFn& f,
                                   const QuadRule& rule, double tol = 0.0) {
  detail::require_same_dim(a, b, "check_trace_hh");
  if (!f.is_convex()) throw HypothesisViolation("check_trace_hh: '" + f.name() + "' is not convex");
  CheckVerdict v;
  v.name = "trace_hh";
  const double right = 0.5 * (detail::sum(fn_spectrum(a, f)) + detail::sum(fn_spectrum(b, f)));
  const double left = detail::sum(fn_spectrum(0.5 * (a + b), f));
  const double middle = detail::sum(segment_integral_spectrum(a, b, f, rule));
  v.add("middle-left", middle - left);
  v.add("right-middle", right - middle);
  v.metrics = {{"left", left}, {"middle", middle}, {"right", right}};
  v.note_scale_all(std::initializer_list<double>{left, middle, right});
  v.finalize(detail::pick_tol(tol, kQuadratureTol));
  return v;
}

/**
 * λ↓_{1+2j}(f(A ⊕ B)) ≤ λ↓_{1+j}(f(W₁)) + λ↓_{1+j}(f(W₂)), j = 0..n−1, for
 * PSD A, B, f concave on [0,∞) with f(0) ≥ 0 and scalar or commuting normal
 * weights.
 */
inline CheckVerdict check_concave_split_eigen(const HermitianMatrix& a, const HermitianMatrix& b,
                                              const WeightPair& w, const ScalarFn& f, double tol = 0.0) {
  constexpr const char* who = "check_concave_split_eigen";
  detail::require_same_dim(a, b, who);
  detail::require_psd(a, who, "A");
  detail::require_psd(b, who, "B");
  detail::require_concave_nonneg(f, who);
  detail::require_commuting_family(w, who);
  CheckVerdict v;
  v.name = "concave_split_eigen";
  const auto lhs = merge_spectra(fn_spectrum(a, f), fn_spectrum(b, f));
  const auto s1 = fn_spectrum(w.first_combination(a, b), f);
  const auto s2 = fn_spectrum(w.second_combination(a, b), f);
  for (std::size_t j = 0; j < a.dim(); ++j) v.add("j=" + std::to_string(j), s1[j] + s2[j] - lhs[2 * j]);
  v.note_scale_all(lhs);
  v.note_scale_all(s1);
  v.note_scale_all(s2);
  v.notes.emplace_back(detail::kIsometryNote);
  v.finalize(detail::pick_tol(tol, kExactTol));
  return v;
}

/**
 * Two consequences of the sums property on PSD inputs.
 *
 * (i)  f concave on [0,∞), f(0) ≥ 0, scalar weight x:
 *      λ↓_{1+j}(f(xA+(1−x)B) + f((1−x)A+xB)) ≤ 2λ↓_{1+j}(f((A+B)/2)).
 * (ii) g monotone convex on [0,∞), g(0) ≤ 0, scalar or commuting normal weights:
 *      Tr g(W₁) + Tr g(W₂) ≤ Tr g(A) + Tr g(B).
 * An affine nondecreasing function (identity) runs both.
 */
inline CheckVerdict check_convex_mono_eigen(const HermitianMatrix& a, const HermitianMatrix& b,
                                            const WeightPair& w, const ScalarFn& fn, double tol = 0.0) {
  constexpr const char* who = "check_convex_mono_eigen";
  detail::require_same_dim(a, b, who);
  detail::require_psd(a, who, "A");
  detail::require_psd(b, who, "B");
  detail::require_commuting_family(w, who);
  const bool concave_ok =
      fn.is_concave() && detail::covers_halfline(fn) && fn.zero_value_nonneg() && w.scalar_x().has_value();
  const bool convex_ok =
      fn.is_convex() && fn.is_monotone() && detail::covers_halfline(fn) && fn.zero_value_nonpos();
  if (!concave_ok && !convex_ok)
    throw HypothesisViolation(std::string(who) + ": '" + fn.name() +
                              "' fits neither the concave (scalar weights) nor the monotone convex branch");
  CheckVerdict v;
  v.name = "convex_mono_eigen";
  if (concave_ok) {
    const HermitianMatrix c = w.second_combination(a, b);
    const HermitianMatrix d = w.first_combination(a, b);
    const auto lhs = eigenvalues(apply_fn(c, fn) + apply_fn(d, fn));
    const auto mid = fn_spectrum(0.5 * (a + b), fn);
    for (std::size_t j = 0; j < a.dim(); ++j) v.add("concave j=" + std::to_string(j), 2.0 * mid[j] - lhs[j]);
    v.note_scale_all(lhs);
  }
  if (convex_ok) {
    const double lhs = detail::sum(fn_spectrum(w.first_combination(a, b), fn)) +
                       detail::sum(fn_spectrum(w.second_combination(a, b), fn));
    const double rhs = detail::sum(fn_spectrum(a, fn)) + detail::sum(fn_spectrum(b, fn));
    v.add("trace", rhs - lhs);
    v.note_scale(lhs);
    v.note_scale(rhs);
  }
  v.notes.emplace_back(detail::kIsometryNote);
  v.finalize(detail::pick_tol(tol, kExactTol));
  return v;
}

/**
 * Schatten split inequalities on PSD inputs, scalar or commuting normal weights.
 *
 * p ≥ 1, f concave nonnegative:
 *   (‖f(A)‖ₚᵖ + ‖f(B)‖ₚᵖ)^{1/p} ≤ ‖f(W₁)‖ₚ + ‖f(W₂)‖ₚ.
 * 0 < q < 1, g convex nonnegative with g(0) = 0:
 *   (‖g(A)‖_qᵠ + ‖g(B)‖_qᵠ)^{1/q} ≥ ‖g(W₁)‖_q + ‖g(W₂)‖_q.
 * With f = identity and x = 1/2 the p-branch also reports the trace form
 * Tr Aᵖ + Tr Bᵖ ≤ Tr (A+B)ᵖ as the "mccarthy" entry.
 */
inline CheckVerdict check_schatten_split(const HermitianMatrix& a, const HermitianMatrix& b,
                                         const WeightPair& w, const ScalarFn& fn, double p_or_q,
                                         double tol = 0.0) {
  constexpr const char* who = "check_schatten_split";
  detail::require_same_dim(a, b, who);
  detail::require_psd(a, who, "A");
  detail::require_psd(b, who, "B");
  detail::require_commuting_family(w, who);
  const bool concave_branch = p_or_q >= 1.0;
  if (!concave_branch && !(p_or_q > 0.0)) throw InvalidArgument(std::string(who) + ": need p >= 1 or 0 < q < 1");
  if (concave_branch)
    detail::require_concave_nonneg(fn, who);
  else if (!detail::convex_nonneg_vanishing(fn))
    throw HypothesisViolation(std::string(who) + ": '" + fn.name() +
                              "' must be nonnegative convex on [0,inf) with g(0) <= 0");

  const NormSpec spec = concave_branch ? (std::isinf(p_or_q) ? NormSpec::schatten_inf() : NormSpec::schatten(p_or_q))
                                       : NormSpec::schatten_quasi(p_or_q);
  const auto fa = fn_spectrum(a, fn);
  const auto fb = fn_spectrum(b, fn);
  const double na = norm_of_spectrum(fa, spec);
  const double nb = norm_of_spectrum(fb, spec);
  const double combined = std::isinf(p_or_q) ? std::max(na, nb)
                                             : std::pow(std::pow(na, p_or_q) + std::pow(nb, p_or_q), 1.0 / p_or_q);
  const double split = norm_of_spectrum(fn_spectrum(w.first_combination(a, b), fn), spec) +
                       norm_of_spectrum(fn_spectrum(w.second_combination(a, b), fn), spec);
  CheckVerdict v;
  v.name = "schatten_split";
  v.add(concave_branch ? "norm" : "quasi_norm", concave_branch ? split - combined : combined - split);
  v.metrics = {{"combined", combined}, {"split", split}, {"exponent", p_or_q}};
  v.note_scale(combined);
  v.note_scale(split);
  if (concave_branch && fn.name() == "identity" && w.scalar_x() && *w.scalar_x() == 0.5 && !std::isinf(p_or_q)) {
    const auto sum_spec = eigenvalues(a + b);
    double lhs = 0.0, rhs = 0.0;
    for (double t : eigenvalues(a)) lhs += std::pow(std::max(t, 0.0), p_or_q);
    for (double t : eigenvalues(b)) lhs += std::pow(std::max(t, 0.0), p_or_q);
    for (double t : sum_spec) rhs += std::pow(std::max(t, 0.0), p_or_q);
    v.metrics["mccarthy_slack"] = rhs - lhs;
  }
  v.notes.emplace_back(detail::kIsometryNote);
  v.finalize(detail::pick_tol(tol, kExactTol));
  return v;
}

/// Tr Aᵖ + Tr Bᵖ ≤ Tr (A+B)ᵖ for PSD A, B and p ≥ 1.
inline CheckVerdict check_mccarthy(const HermitianMatrix& a, const HermitianMatrix& b, double p, double tol = 0.0) {
  constexpr const char* who = "check_mccarthy";
  detail::require_same_dim(a, b, who);
  detail::require_psd(a, who, "A");
  detail::require_psd(b, who, "B");
  if (!(p >= 1.0) || std::isinf(p)) throw InvalidArgument("check_mccarthy: need finite p >= 1");
  auto trace_pow = [p](const HermitianMatrix& m) {
    double s = 0.0;
    for (double t : eigenvalues(m)) s += std::pow(std::max(t, 0.0), p);
    return s;
  };
  const double lhs = trace_pow(a) + trace_pow(b);
  const double rhs = trace_pow(a + b);
  CheckVerdict v;
  v.name = "mccarthy";
  v.add("trace", rhs - lhs);
  v.metrics = {{"lhs", lhs}, {"rhs", rhs}, {"p", p}};
  v.note_scale(rhs);
  v.finalize(detail::pick_tol(tol, kExactTol));
  return v;
}

/**
 * λ↓_{1+2j}(f(A ⊕ B)) ≤ 2∫₀¹ λ↓_{1+j}(f(xA + (1−x)B)) dx for PSD A, B and f
 * concave on [0,∞) with f(0) ≥ 0. The integral uses `rule`.
 */
inline CheckVerdict check_eigen_integral(const HermitianMatrix& a, const HermitianMatrix& b, const ScalarFn& f,
                                         const QuadRule& rule, double tol = 0.0) {
  constexpr const char* who = "check_eigen_integral";
  detail::require_same_dim(a, b, who);
  detail::require_psd(a, who, "A");
  detail::require_psd(b, who, "B");
  detail::require_concave_nonneg(f, who);
  const auto lhs = merge_spectra(fn_spectrum(a, f), fn_spectrum(b, f));
  const auto integral = segment_integral_spectrum(a, b, f, rule);
  CheckVerdict v;
  v.name = "eigen_integral";
  for (std::size_t j = 0; j < a.dim(); ++j) v.add("j=" + std::to_string(j), 2.0 * integral[j] - lhs[2 * j]);
  v.note_scale_all(lhs);
  v.notes.emplace_back(detail::kIsometryNote);
  v.finalize(detail::pick_tol(tol, kQuadratureTol));
  return v;
}

/// Tr g(W₁) + Tr g(W₂) ≤ Tr g(A) + Tr g(B) for Hermitian A, B, convex g and
/// X*X + Y*Y = XX* + YY* = I.
inline CheckVerdict check_hansen_pedersen_trace(const HermitianMatrix& a, const HermitianMatrix& b,
                                                const WeightPair& w, const ScalarFn& g, double tol = 0.0) {
  constexpr const char* who = "check_hansen_pedersen_trace";
  detail::require_same_dim(a, b, who);
  detail::require_bi_isometric(w, who);
  if (!g.is_convex()) throw HypothesisViolation(std::string(who) + ": '" + g.name() + "' is not convex");
  const double rhs = detail::sum(fn_spectrum(a, g)) + detail::sum(fn_spectrum(b, g));
  const double lhs = detail::sum(fn_spectrum(w.first_combination(a, b), g)) +
                     detail::sum(fn_spectrum(w.second_combination(a, b), g));
  CheckVerdict v;
  v.name = "hansen_pedersen_trace";
  v.add("trace", rhs - lhs);
  v.metrics = {{"lhs", lhs}, {"rhs", rhs}};
  v.note_scale(lhs);
  v.note_scale(rhs);
  v.finalize(detail::pick_tol(tol, kExactTol));
  return v;
}

struct OrbitResult {
  CheckVerdict verdict;
  MajorizationCert cert;
};

/**
 * Φ(A ⊕ B) = W₁ ⊕ W₂ ≺ A ⊕ B, plus a mixture-of-unitaries certificate
 * reconstructing Φ(A ⊕ B) from A ⊕ B.
 *
 * Slack entries are the partial sums k = 1..2n−1 and "trace" = −|ΔTr|.
 * holds additionally requires residual ≤ 1e-9·(1 + ‖A ⊕ B‖_F).
 */
inline OrbitResult check_orbit_majorization(const HermitianMatrix& a, const HermitianMatrix& b,
                                            const WeightPair& w, double tol = 0.0) {
  constexpr const char* who = "check_orbit_majorization";
  detail::require_same_dim(a, b, who);
  detail::require_bi_isometric(w, who);
  const HermitianMatrix t = direct_sum(a, b);
  const HermitianMatrix s = phi_map(w, t);
  const auto lt = merge_spectra(eigenvalues(a), eigenvalues(b));
  const auto ls = eigenvalues(s);
  const auto sl = partial_sum_slacks(lt, ls);
  OrbitResult r;
  CheckVerdict& v = r.verdict;
  v.name = "orbit_majorization";
  for (std::size_t k = 0; k + 1 < sl.size(); ++k) v.add("k=" + std::to_string(k + 1), sl[k]);
  v.add("trace", -std::abs(sl.back()));
  double l1 = 0.0;
  for (double x : lt) l1 += std::abs(x);
  v.note_scale(l1);
  v.finalize(detail::pick_tol(tol, kExactTol));

  const double bound = 1e-9 * (1.0 + t.frobenius_norm());
  v.metrics["residual_bound"] = bound;
  if (v.holds && majorizes(lt, ls)) {
    r.cert = uhlmann_mixture(s, t);
    v.metrics["residual"] = r.cert.residual;
    v.metrics["terms"] = static_cast<double>(r.cert.perms.size());
    v.metrics["t_transforms"] = static_cast<double>(r.cert.t_transforms);
    if (r.cert.residual > bound) {
      v.holds = false;
      v.notes.emplace_back("certificate reconstruction residual exceeds bound");
    }
  } else {
    v.holds = false;
    v.notes.emplace_back("majorization failed; no certificate built");
  }
  v.notes.emplace_back("equal-weight 1/2n orbit average not constructed; convex-weight certificate instead");
  return r;
}

/// f(W₁) ⊕ f(W₂) ≺_w f(A ⊕ B) for convex f; slack entries are the partial sums.
inline CheckVerdict check_fn_orbit(const HermitianMatrix& a, const HermitianMatrix& b, const WeightPair& w,
                                   const ScalarFn& f, double tol = 0.0) {
  constexpr const char* who = "check_fn_orbit";
  detail::require_same_dim(a, b, who);
  detail::require_bi_isometric(w, who);
  if (!f.is_convex()) throw HypothesisViolation(std::string(who) + ": '" + f.name() + "' is not convex");
  const auto rhs = merge_spectra(fn_spectrum(a, f), fn_spectrum(b, f));
  const auto lhs = merge_spectra(fn_spectrum(w.first_combination(a, b), f),
                                 fn_spectrum(w.second_combination(a, b), f));
  const auto sl = partial_sum_slacks(rhs, lhs);
  CheckVerdict v;
  v.name = "fn_orbit";
  for (std::size_t k = 0; k < sl.size(); ++k) v.add("k=" + std::to_string(k + 1), sl[k]);
  double l1 = 0.0;
  for (double x : rhs) l1 += std::abs(x);
  v.note_scale(l1);
  v.finalize(detail::pick_tol(tol, kExactTol));
  return v;
}

/// det W₁ · det W₂ ≥ det A · det B for PSD A, B and bi-isometric weights.
inline CheckVerdict check_det_fisher(const HermitianMatrix& a, const HermitianMatrix& b, const WeightPair& w,
                                     double tol = 0.0) {
  constexpr const char* who = "check_det_fisher";
  detail::require_same_dim(a, b, who);
  detail::require_psd(a, who, "A");
  detail::require_psd(b, who, "B");
  detail::require_bi_isometric(w, who);
  const double lhs = determinant(w.first_combination(a, b)) * determinant(w.second_combination(a, b));
  const double rhs = determinant(a) * determinant(b);
  CheckVerdict v;
  v.name = "det_fisher";
  v.add("det", lhs - rhs);
  v.metrics = {{"lhs", lhs}, {"rhs", rhs}};
  if (rhs > 0.0) v.metrics["ratio"] = lhs / rhs;
  v.note_scale(lhs);
  v.note_scale(rhs);
  // relative to the determinants themselves, not 1 + scale
  v.tol = detail::pick_tol(tol, kExactTol) * std::max(std::abs(lhs), std::abs(rhs));
  v.holds = v.min_slack >= -v.tol;
  return v;
}

namespace detail {

inline void require_branch(const ScalarFn& fn, const NormSpec& spec, Interval hull, const char* who) {
  if (spec.is_antinorm() && !fn.is_concave())
    throw SpecMismatch(std::string(who) + ": antinorm '" + spec.name() + "' needs a concave function, got '" +
                       fn.name() + "'");
  if (!spec.is_antinorm() && !fn.is_convex())
    throw SpecMismatch(std::string(who) + ": norm '" + spec.name() + "' needs a convex function, got '" +
                       fn.name() + "'");
  if (!fn.nonnegative_on(hull))
    throw HypothesisViolation(std::string(who) + ": '" + fn.name() + "' is not nonnegative on the spectra");
}

}  // namespace detail

/**
 * Symmetric norm / antinorm split.
 *   concave f, antinorm: ‖f(W₁) ⊕ f(W₂)‖_! ≥ ‖f(A ⊕ B)‖_!
 *   convex g, norm:      ‖g(W₁) ⊕ g(W₂)‖  ≤ ‖g(A ⊕ B)‖
 */
inline CheckVerdict check_norm_antinorm_split(const HermitianMatrix& a, const HermitianMatrix& b,
                                              const WeightPair& w, const ScalarFn& fn, const NormSpec& spec,
                                              double tol = 0.0) {
  constexpr const char* who = "check_norm_antinorm_split";
  detail::require_same_dim(a, b, who);
  detail::require_bi_isometric(w, who);
  const auto ea = eigenvalues(a);
  const auto eb = eigenvalues(b);
  detail::require_branch(fn, spec, detail::spectral_hull(ea, eb), who);
  const auto whole = merge_spectra(fn_spectrum(ea, fn), fn_spectrum(eb, fn));
  const auto split = merge_spectra(fn_spectrum(w.first_combination(a, b), fn),
                                   fn_spectrum(w.second_combination(a, b), fn));
  const double n_whole = norm_of_spectrum(whole, spec);
  const double n_split = norm_of_spectrum(split, spec);
  CheckVerdict v;
  v.name = "norm_antinorm_split";
  v.add(spec.name(), spec.is_antinorm() ? n_split - n_whole : n_whole - n_split);
  v.metrics = {{"whole", n_whole}, {"split", n_split}};
  v.note_scale(n_whole);
  v.note_scale(n_split);
  v.finalize(detail::pick_tol(tol, kExactTol));
  return v;
}

/**
 * Norm / antinorm comparison of f((A+B)/2) with ∫₀¹ f((1−x)A + xB) dx.
 *   concave f, antinorm: ‖f((A+B)/2)‖_! ≥ ‖∫ f‖_!
 *   convex g, norm:      ‖g((A+B)/2)‖  ≤ ‖∫ g‖
 */
inline CheckVerdict check_moslehian(const HermitianMatrix& a, const HermitianMatrix& b, const ScalarFn& fn,
                                    const NormSpec& spec, const QuadRule& rule, double tol = 0.0) {
  constexpr const char* who = "check_moslehian";
  detail::require_same_dim(a, b, who);
  detail::require_branch(fn, spec, detail::spectral_hull(eigenvalues(a), eigenvalues(b)), who);
  const double n_mid = norm_of_spectrum(fn_spectrum(0.5 * (a + b), fn), spec);
  const double n_int = norm_of_spectrum(eigenvalues(segment_integral_matrix(a, b, fn, rule)), spec);
  CheckVerdict v;
  v.name = "moslehian";
  v.add(spec.name(), spec.is_antinorm() ? n_mid - n_int : n_int - n_mid);
  v.metrics = {{"midpoint", n_mid}, {"integral", n_int}};
  v.note_scale(n_mid);
  v.note_scale(n_int);
  v.finalize(detail::pick_tol(tol, kQuadratureTol));
  return v;
}

enum class OperatorConvexFn { identity, square };

/**
 * Loewner-order check h((1−x)A + xB) + h(xA + (1−x)B) ≤ h(A) + h(B) for the
 * operator convex h(t) = t and h(t) = t². The slack is the smallest
 * eigenvalue of the difference.
 */
inline CheckVerdict check_operator_convex_split(const HermitianMatrix& a, const HermitianMatrix& b, double x,
                                                OperatorConvexFn h, double tol = 0.0) {
  detail::require_same_dim(a, b, "check_operator_convex_split");
  if (!(x > 0.0 && x < 1.0)) throw PreconditionViolation("check_operator_convex_split: need 0 < x < 1");
  auto apply = [h](const HermitianMatrix& m) {
    return h == OperatorConvexFn::identity ? m : HermitianMatrix::hermitian_part(m.matrix() * m.matrix());
  };
  const HermitianMatrix ha = apply(a), hb = apply(b);
  const HermitianMatrix diff = ha + hb - apply((1.0 - x) * a + x * b) - apply(x * a + (1.0 - x) * b);
  const auto ev = eigenvalues(diff);
  CheckVerdict v;
  v.name = "operator_convex_split";
  v.add("lambda_min", ev.empty() ? 0.0 : ev.back());
  v.note_scale(ha.frobenius_norm());
  v.note_scale(hb.frobenius_norm());
  v.finalize(detail::pick_tol(tol, kExactTol));
  return v;
}

}  // namespace hhmat
