#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "hhmat/error.hpp"
#include "hhmat/quad_rule.hpp"

namespace hhmat {

/// Closed interval [lo, hi]; either end may be infinite.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  static Interval real_line() { return {}; }
  static Interval nonnegative() { return {0.0, std::numeric_limits<double>::infinity()}; }

  bool contains(double t, double tol = 0.0) const { return t >= lo - tol && t <= hi + tol; }
  bool contains(const Interval& o) const { return o.lo >= lo && o.hi <= hi; }
  double clamp(double t) const { return std::clamp(t, lo, hi); }
};

enum class Curvature { convex, concave, affine };
enum class Monotonicity { nondecreasing, nonincreasing, none };

/**
 * A named real function with certified shape flags.
 *
 * Flags are verified by sampling at construction: 200 random triples for
 * convexity/concavity (three-point and midpoint forms) and 200 random ordered
 * pairs for monotonicity. A mislabeled function throws HypothesisViolation.
 * Sampling uses a window of the domain: infinite ends are replaced by a
 * distance of 16 from the finite end (or ±16 on the real line).
 */
class ScalarFn {
 public:
  ScalarFn(std::string name, std::function<double(double)> eval, Interval domain,
           Curvature curvature, Monotonicity monotonicity)
      : name_(std::move(name)),
        eval_(std::move(eval)),
        domain_(domain),
        curvature_(curvature),
        monotonicity_(monotonicity) {
    verify_flags();
  }

  const std::string& name() const noexcept { return name_; }
  const Interval& domain() const noexcept { return domain_; }
  Curvature curvature() const noexcept { return curvature_; }
  Monotonicity monotonicity() const noexcept { return monotonicity_; }

  double operator()(double t) const { return eval_(t); }

  bool is_convex() const noexcept { return curvature_ != Curvature::concave; }
  bool is_concave() const noexcept { return curvature_ != Curvature::convex; }
  bool is_monotone() const noexcept { return monotonicity_ != Monotonicity::none; }

  std::optional<double> value_at_zero() const {
    if (!domain_.contains(0.0)) return std::nullopt;
    return eval_(0.0);
  }
  bool zero_value_nonneg() const { return value_at_zero().value_or(-1.0) >= 0.0; }
  bool zero_value_nonpos() const { return value_at_zero().value_or(1.0) <= 0.0; }

  /// f ≥ 0 on iv ∩ domain. Exact for concave f (minimum at an endpoint);
  /// sampled on a 1025-point grid otherwise.
  bool nonnegative_on(Interval iv) const {
    iv.lo = std::max(iv.lo, domain_.lo);
    iv.hi = std::min(iv.hi, domain_.hi);
    if (iv.lo > iv.hi) return true;
    const Interval w = window(iv);
    if (is_concave()) return eval_(w.lo) >= 0.0 && eval_(w.hi) >= 0.0;
    constexpr int kGrid = 1024;
    for (int i = 0; i <= kGrid; ++i) {
      const double t = w.lo + (w.hi - w.lo) * i / kGrid;
      if (eval_(t) < 0.0) return false;
    }
    return true;
  }

  /// Finite sampling window of iv.
  static Interval window(const Interval& iv) {
    constexpr double kSpan = 16.0;
    Interval w = iv;
    if (!std::isfinite(w.lo) && !std::isfinite(w.hi)) return {-kSpan, kSpan};
    if (!std::isfinite(w.lo)) w.lo = w.hi - 2.0 * kSpan;
    if (!std::isfinite(w.hi)) w.hi = w.lo + kSpan;
    return w;
  }

 private:
  void verify_flags() const {
    const Interval w = window(domain_);
    std::uint64_t h = 1469598103934665603ull;
    for (char c : name_) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
    std::mt19937_64 rng(h);
    std::uniform_real_distribution<double> u(w.lo, w.hi);
    auto fail = [&](const std::string& what) {
      throw HypothesisViolation("ScalarFn '" + name_ + "': " + what);
    };
    constexpr double kSlack = 1e-12;
    for (int trial = 0; trial < 200; ++trial) {
      double t[3] = {u(rng), u(rng), u(rng)};
      std::sort(t, t + 3);
      const double f1 = eval_(t[0]), f2 = eval_(t[1]), f3 = eval_(t[2]);
      if (!std::isfinite(f1) || !std::isfinite(f2) || !std::isfinite(f3))
        fail("non-finite value inside the domain");
      const double mid = eval_(0.5 * (t[0] + t[2]));
      const double scale = 1.0 + std::abs(f1) + std::abs(f2) + std::abs(f3);
      const double span = t[2] - t[0];
      // chord value at t[1]; convex means f(t[1]) lies on or below it
      const double chord = span > 0.0 ? ((t[2] - t[1]) * f1 + (t[1] - t[0]) * f3) / span : f2;
      const double mid_gap = 0.5 * (f1 + f3) - mid;
      const double chord_gap = chord - f2;
      if (curvature_ != Curvature::concave && (mid_gap < -kSlack * scale || chord_gap < -kSlack * scale))
        fail("convexity flag fails sampling");
      if (curvature_ != Curvature::convex && (mid_gap > kSlack * scale || chord_gap > kSlack * scale))
        fail("concavity flag fails sampling");
    }
    if (monotonicity_ == Monotonicity::none) return;
    for (int trial = 0; trial < 200; ++trial) {
      double a = u(rng), b = u(rng);
      if (a > b) std::swap(a, b);
      const double fa = eval_(a), fb = eval_(b);
      const double tol = kSlack * (1.0 + std::abs(fa) + std::abs(fb));
      if (monotonicity_ == Monotonicity::nondecreasing && fb < fa - tol) fail("not nondecreasing");
      if (monotonicity_ == Monotonicity::nonincreasing && fb > fa + tol) fail("not nonincreasing");
    }
  }

  std::string name_;
  std::function<double(double)> eval_;
  Interval domain_;
  Curvature curvature_;
  Monotonicity monotonicity_;
};

namespace detail {

// f(t) = c + s0·t + Σ_i d_i·max(t − b_i, 0)
struct PiecewiseLinear {
  double c = 0.0;
  double s0 = 0.0;
  std::vector<double> breaks;
  std::vector<double> jumps;

  double operator()(double t) const {
    double v = c + s0 * t;
    for (std::size_t i = 0; i < breaks.size(); ++i) v += jumps[i] * std::max(t - breaks[i], 0.0);
    return v;
  }
};

}  // namespace detail

/// Nondecreasing concave piecewise-linear function on [0, ∞) with f(0) ≥ 0.
inline ScalarFn random_pwl_concave(std::uint64_t seed, std::size_t breakpoints,
                                   std::string name = "pwl_concave") {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ub(0.0, 4.0), us(0.05, 2.0), uc(0.0, 0.5);
  detail::PiecewiseLinear p;
  p.c = uc(rng);
  std::vector<double> slopes(breakpoints + 1);
  for (auto& s : slopes) s = us(rng);
  std::sort(slopes.begin(), slopes.end(), std::greater<>());
  p.breaks.resize(breakpoints);
  for (auto& b : p.breaks) b = ub(rng);
  std::sort(p.breaks.begin(), p.breaks.end());
  p.s0 = slopes[0];
  for (std::size_t i = 0; i < breakpoints; ++i) p.jumps.push_back(slopes[i + 1] - slopes[i]);
  return ScalarFn(std::move(name), p, Interval::nonnegative(), Curvature::concave,
                  Monotonicity::nondecreasing);
}

/// Convex piecewise-linear function on the real line; slopes of either sign.
inline ScalarFn random_pwl_convex(std::uint64_t seed, std::size_t breakpoints,
                                  std::string name = "pwl_convex") {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ub(-2.0, 2.0), us(-2.0, 2.0), uc(-0.5, 0.5);
  detail::PiecewiseLinear p;
  p.c = uc(rng);
  std::vector<double> slopes(breakpoints + 1);
  for (auto& s : slopes) s = us(rng);
  std::sort(slopes.begin(), slopes.end());
  p.breaks.resize(breakpoints);
  for (auto& b : p.breaks) b = ub(rng);
  std::sort(p.breaks.begin(), p.breaks.end());
  p.s0 = slopes[0];
  for (std::size_t i = 0; i < breakpoints; ++i) p.jumps.push_back(slopes[i + 1] - slopes[i]);
  return ScalarFn(std::move(name), p, Interval::real_line(), Curvature::convex, Monotonicity::none);
}

namespace detail {

inline std::vector<ScalarFn> make_catalog() {
  const auto pos = Interval::nonnegative();
  const auto line = Interval::real_line();
  const auto cc = Curvature::concave;
  const auto cv = Curvature::convex;
  const auto up = Monotonicity::nondecreasing;
  const auto none = Monotonicity::none;
  std::vector<ScalarFn> fns;
  // concave, nondecreasing, f(0) ≥ 0
  fns.emplace_back("pow0.25", [](double t) { return std::pow(t, 0.25); }, pos, cc, up);
  fns.emplace_back("sqrt", [](double t) { return std::sqrt(t); }, pos, cc, up);
  fns.emplace_back("pow0.9", [](double t) { return std::pow(t, 0.9); }, pos, cc, up);
  fns.emplace_back("log1p", [](double t) { return std::log1p(t); }, pos, cc, up);
  fns.emplace_back("t_over_1pt", [](double t) { return t / (1.0 + t); }, pos, cc, up);
  fns.emplace_back("min1", [](double t) { return std::min(t, 1.0); }, pos, cc, up);
  fns.push_back(random_pwl_concave(0x5eed0001, 3, "pwl_concave"));
  // convex, nondecreasing, g(0) ≤ 0
  fns.emplace_back("pow1.5", [](double t) { return std::pow(t, 1.5); }, pos, cv, up);
  fns.emplace_back("square", [](double t) { return t * t; }, pos, cv, up);
  fns.emplace_back("cube", [](double t) { return t * t * t; }, pos, cv, up);
  fns.emplace_back("expm1", [](double t) { return std::expm1(t); }, pos, cv, up);
  fns.emplace_back("hinge1", [](double t) { return std::max(t - 1.0, 0.0); }, pos, cv, up);
  // convex on the real line
  fns.emplace_back("abs", [](double t) { return std::abs(t); }, line, cv, none);
  fns.emplace_back("square_real", [](double t) { return t * t; }, line, cv, none);
  fns.push_back(random_pwl_convex(0x5eed0002, 3, "pwl_convex"));
  fns.emplace_back("identity", [](double t) { return t; }, line, Curvature::affine, up);
  return fns;
}

}  // namespace detail

/// The built-in function catalog. Built once; immutable.
inline const std::vector<ScalarFn>& catalog() {
  static const std::vector<ScalarFn> fns = detail::make_catalog();
  return fns;
}

inline const ScalarFn& lookup(std::string_view name) {
  for (const auto& f : catalog())
    if (f.name() == name) return f;
  throw InvalidArgument("unknown function '" + std::string(name) + "'");
}

// -- scalar inequalities -----------------------------------------------------

struct HHSandwich {
  double lhs = 0.0;  // f((a+b)/2)
  double mid = 0.0;  // ∫₀¹ f((1−x)a + xb) dx
  double rhs = 0.0;  // (f(a) + f(b))/2
};

namespace detail {

inline void require_in_domain(const ScalarFn& f, std::initializer_list<double> pts) {
  std::vector<double> bad;
  for (double t : pts)
    if (!f.domain().contains(t)) bad.push_back(t);
  if (!bad.empty())
    throw DomainViolation("'" + f.name() + "': argument outside the domain", std::move(bad));
}

}  // namespace detail

/// Hermite–Hadamard sandwich for convex f on [a, b], middle term by an
/// m-point Gauss–Legendre rule.
inline HHSandwich scalar_hh(const ScalarFn& f, double a, double b, std::size_t nodes = 32) {
  if (!f.is_convex()) throw HypothesisViolation("scalar_hh: '" + f.name() + "' is not convex");
  detail::require_in_domain(f, {a, b});
  const QuadRule rule = gauss_legendre(nodes);
  HHSandwich r;
  r.lhs = f(0.5 * (a + b));
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = rule.nodes[i];
    r.mid += rule.weights[i] * f((1.0 - x) * a + x * b);
  }
  r.rhs = 0.5 * (f(a) + f(b));
  return r;
}

/// f(a) + f(b) − f((1−x)a + xb) − f(xa + (1−x)b). Nonnegative for convex f.
inline double scalar_sums_property(const ScalarFn& f, double a, double b, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw PreconditionViolation("scalar_sums_property: x outside [0,1]");
  detail::require_in_domain(f, {a, b});
  return f(a) + f(b) - f((1.0 - x) * a + x * b) - f(x * a + (1.0 - x) * b);
}

/// f(p) + f(q) − f(s) − f(t) for p ≤ s ≤ t ≤ q with p + q = s + t.
inline double scalar_four_point(const ScalarFn& f, double p, double s, double t, double q) {
  const double scale = 1.0 + std::max({std::abs(p), std::abs(s), std::abs(t), std::abs(q)});
  if (!(p <= s && s <= t && t <= q))
    throw PreconditionViolation("scalar_four_point: need p <= s <= t <= q");
  if (std::abs(p + q - s - t) > 1e-12 * scale)
    throw PreconditionViolation("scalar_four_point: need p + q = s + t");
  detail::require_in_domain(f, {p, s, t, q});
  return f(p) + f(q) - f(s) - f(t);
}

}  // namespace hhmat
