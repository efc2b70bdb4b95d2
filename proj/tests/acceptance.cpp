// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <cmath>
#include <cstdio>
#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "hhmat/hhmat.hpp"
#include "oracle.hpp"

using namespace hhmat;

namespace {

const std::vector<std::size_t> kDims{2, 3, 4, 8};
constexpr std::size_t kTrials = 1000;

// pinned tolerances
constexpr double kScalarTol = 1e-9;
constexpr double kExactEq = 1e-12;
constexpr double kTraceGapTol = 1e-6;
constexpr double kEqualityTol = 1e-10;
constexpr double kSlackTol = 1e-9;
constexpr double kMajTol = 1e-10;
constexpr double kResidualTol = 1e-9;
constexpr double kNormTol = 1e-6;
constexpr double kCertTol = 1e-10;
constexpr std::size_t kSearchBudget = 100000;

struct Tally {
  std::size_t cases = 0, bad = 0;
  double worst = std::numeric_limits<double>::infinity();
  std::string first_bad;

  void see(double slack, double floor, const std::string& what) {
    ++cases;
    worst = std::min(worst, slack);
    if (!(slack >= floor)) {
      if (bad++ == 0) first_bad = what + " slack=" + std::to_string(slack);
    }
  }
  void expect(bool ok, const std::string& what) {
    ++cases;
    if (!ok && bad++ == 0) first_bad = what;
  }
};

int g_failures = 0;

void report(int id, const std::string& title, const Tally& t) {
  const bool ok = t.bad == 0 && t.cases > 0;
  if (!ok) ++g_failures;
  std::printf("%s  %2d  %-44s cases=%zu worst=%.3e%s%s\n", ok ? "PASS" : "FAIL", id, title.c_str(), t.cases,
              t.worst, t.bad ? "  first failure: " : "", t.bad ? t.first_bad.c_str() : "");
  std::fflush(stdout);
}

// trials spread evenly over kDims; visit(dim, rng, label)
void for_trials(std::size_t trials, std::uint64_t tag, const std::function<void(std::size_t, Rng&, const std::string&)>& visit) {
  const std::size_t per = trials / kDims.size();
  for (std::size_t dim : kDims)
    for (std::size_t t = 0; t < per; ++t) {
      Rng rng(derive_seed(tag, "acceptance", dim, t));
      visit(dim, rng, "d" + std::to_string(dim) + "t" + std::to_string(t));
    }
}

bool halfline(const ScalarFn& f) { return f.domain().lo >= 0.0; }
bool concave_nonneg(const ScalarFn& f) {
  return f.is_concave() && f.domain().contains(Interval::nonnegative()) && f.zero_value_nonneg();
}

const QuadRule& rule() {
  static const QuadRule r = gauss_legendre(32);
  return r;
}

void criterion1() {
  Tally t;
  Rng rng(101);
  for (const auto& f : catalog()) {
    if (!f.is_convex()) continue;
    const Interval span = halfline(f) ? Interval{0.0, 4.0} : Interval{-3.0, 3.0};
    std::uniform_real_distribution<double> u(span.lo, span.hi);
    for (int k = 0; k < 200; ++k) {
      const double a = u(rng), b = u(rng);
      const auto hh = scalar_hh(f, a, b);
      t.see(std::min(hh.mid - hh.lhs, hh.rhs - hh.mid), -kScalarTol, f.name());
    }
  }
  const auto sq = scalar_hh(lookup("square"), 0.0, 3.0);
  t.expect(std::abs(sq.lhs - 2.25) <= kExactEq && std::abs(sq.mid - 3.0) <= kExactEq && std::abs(sq.rhs - 4.5) <= kExactEq,
           "t^2 on [0,3]");
  report(1, "scalar sandwich", t);
}

void criterion2() {
  Tally t;
  for_trials(kTrials, 2, [&](std::size_t n, Rng& rng, const std::string& id) {
    const auto a = gen_psd(n, rng), b = gen_psd(n, rng);
    for (const auto& f : catalog()) {
      if (!f.is_convex()) continue;
      t.see(check_trace_hh(a, b, f, rule()).min_slack, -kTraceGapTol, id + " " + f.name());
      const auto eq = check_trace_hh(a, a, f, rule());
      double dev = 0.0;
      for (const auto& d : eq.details) dev = std::max(dev, std::abs(d.slack));
      t.expect(dev <= kEqualityTol, id + " " + f.name() + " A=B");
    }
  });
  report(2, "trace sandwich", t);
}

void criterion3() {
  Tally t;
  for_trials(kTrials, 3, [&](std::size_t n, Rng& rng, const std::string& id) {
    const auto a = gen_psd(n, rng), b = gen_psd(n, rng);
    const auto ws = gen_weight_pair(WeightKind::scalar, n, rng);
    const auto wc = gen_weight_pair(WeightKind::commuting_normal, n, rng);
    for (const auto& f : catalog())
      if (concave_nonneg(f))
        for (const auto* w : {&ws, &wc})
          t.see(check_concave_split_eigen(a, b, *w, f).min_slack, -kSlackTol, id + " " + f.name());
  });
  report(3, "concave eigenvalue split", t);
}

void criterion4() {
  Tally t;
  for_trials(kTrials, 4, [&](std::size_t n, Rng& rng, const std::string& id) {
    const auto a = gen_psd(n, rng), b = gen_psd(n, rng);
    for (double p : {1.5, 2.0, 3.0}) {
      const auto v = check_mccarthy(a, b, p);
      const double rhs = v.metrics.at("rhs");
      t.see(v.min_slack, -kSlackTol * rhs, id + " p=" + std::to_string(p));
      // independent spectra
      auto tp = [p](const oracle::EMat& m) { return oracle::trace_fn(m, [p](double x) { return std::pow(std::max(x, 0.0), p); }); };
      const double ind = tp(oracle::to_eigen(a + b)) - tp(oracle::to_eigen(a)) - tp(oracle::to_eigen(b));
      t.expect(std::abs(ind - v.min_slack) <= 1e-9 * (1.0 + rhs), id + " oracle");
    }
  });
  const auto i2 = HermitianMatrix::identity(2);
  const auto m = check_mccarthy(i2, i2, 2.0);
  t.expect(std::abs(m.metrics.at("lhs") - 4.0) <= kExactEq && std::abs(m.metrics.at("rhs") - 8.0) <= kExactEq, "I2 4<=8");
  report(4, "trace power superadditivity", t);
}

void criterion5() {
  Tally norm_branch, quasi_branch;
  for_trials(kTrials, 5, [&](std::size_t n, Rng& rng, const std::string& id) {
    const auto a = gen_psd(n, rng), b = gen_psd(n, rng);
    const auto ws = gen_weight_pair(WeightKind::scalar, n, rng);
    const auto wc = gen_weight_pair(WeightKind::commuting_normal, n, rng);
    for (const auto* w : {&ws, &wc})
      for (const auto& f : catalog()) {
        if (concave_nonneg(f))
          for (double p : {1.0, 2.0, 3.0}) {
            const auto v = check_schatten_split(a, b, *w, f, p);
            norm_branch.see(v.min_slack / (1.0 + v.scale), -kSlackTol, id + " " + f.name());
          }
        if (detail::convex_nonneg_vanishing(f))
          for (double q : {0.25, 0.5, 0.75}) {
            const auto v = check_schatten_split(a, b, *w, f, q);
            quasi_branch.see(v.min_slack / (1.0 + v.scale), -kSlackTol, id + " " + f.name());
          }
      }
  });
  Tally both = norm_branch;
  both.cases += quasi_branch.cases;
  both.worst = std::min(both.worst, quasi_branch.worst);
  if (quasi_branch.bad && !both.bad) both.first_bad = quasi_branch.first_bad;
  both.bad += quasi_branch.bad;
  if (norm_branch.cases == 0 || quasi_branch.cases == 0) both.expect(false, "a branch had no cases");
  report(5, "schatten split (p and q branches)", both);
}

void criterion6() {
  Tally t;
  for_trials(kTrials, 6, [&](std::size_t n, Rng& rng, const std::string& id) {
    const auto pa = gen_psd(n, rng), pb = gen_psd(n, rng);
    const auto ha = gen_hermitian(n, rng, {-2.0, 2.0}), hb = gen_hermitian(n, rng, {-2.0, 2.0});
    const auto w = gen_weight_pair(WeightKind::bi_isometric, n, rng);
    for (const auto& f : catalog()) {
      if (!f.is_convex()) continue;
      const bool h = halfline(f);
      t.see(check_hansen_pedersen_trace(h ? pa : ha, h ? pb : hb, w, f).min_slack, -kSlackTol, id + " " + f.name());
    }
  });
  report(6, "bi-isometric trace inequality", t);
}

void criterion7() {
  Tally t;
  for_trials(kTrials, 7, [&](std::size_t n, Rng& rng, const std::string& id) {
    const auto a = gen_hermitian(n, rng, {-2.0, 2.0}), b = gen_hermitian(n, rng, {-2.0, 2.0});
    const auto w = gen_weight_pair(WeightKind::bi_isometric, n, rng);
    const auto whole = direct_sum(a, b);
    const auto image = phi_map(w, whole);
    // partial sums from independent spectra
    const auto big = oracle::eigenvalues(whole), small = oracle::eigenvalues(image);
    double scale = 1.0;
    for (double x : big) scale += std::abs(x);
    const auto sl = partial_sum_slacks(big, small);
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < sl.size(); ++k) worst = std::min(worst, sl[k] + kMajTol * scale);
    t.see(worst, 0.0, id + " partial sums");
    t.expect(std::abs(sl.back()) <= kMajTol * scale, id + " trace");
    t.expect(majorizes(big, small), id + " majorizes()");

    const auto r = check_orbit_majorization(a, b, w);
    t.expect(r.verdict.holds, id + " verdict");
    t.expect(r.cert.residual <= kResidualTol * (1.0 + whole.frobenius_norm()), id + " residual");
    const std::size_t m = 2 * n;
    t.expect(r.cert.perms.size() <= (m - 1) * (m - 1) + 1, id + " term count");
    t.expect(r.cert.invariant_violations(kCertTol).empty(), id + " certificate");
    // rebuild Φ(A⊕B) from the unitaries
    CMatrix recon(m, m);
    for (std::size_t j = 0; j < r.cert.unitaries.size(); ++j) {
      const CMatrix& v = r.cert.unitaries[j];
      recon = recon + v * whole.matrix() * v.adjoint() * cplx(r.cert.weights[j]);
    }
    const double rebuilt = (oracle::to_eigen(recon) - oracle::to_eigen(image)).norm();
    t.expect(rebuilt <= kResidualTol * (1.0 + whole.frobenius_norm()), id + " rebuild");
  });
  report(7, "orbit majorization with certificate", t);
}

void criterion8() {
  Tally t;
  for_trials(kTrials, 8, [&](std::size_t n, Rng& rng, const std::string& id) {
    const auto a = gen_psd(n, rng), b = gen_psd(n, rng);
    const auto w = gen_weight_pair(WeightKind::bi_isometric, n, rng);
    const double lhs = oracle::to_eigen(w.first_combination(a, b)).determinant().real() *
                       oracle::to_eigen(w.second_combination(a, b)).determinant().real();
    const double rhs = oracle::to_eigen(a).determinant().real() * oracle::to_eigen(b).determinant().real();
    const auto v = check_det_fisher(a, b, w);
    t.see(v.metrics.at("ratio") - (1.0 - kSlackTol), 0.0, id);
    t.expect(std::abs(v.metrics.at("lhs") - lhs) <= 1e-9 * std::abs(lhs), id + " oracle lhs");
    t.expect(std::abs(v.metrics.at("rhs") - rhs) <= 1e-9 * std::abs(rhs), id + " oracle rhs");
  });
  const auto v = check_det_fisher(HermitianMatrix::diagonal({1.0, 4.0}), HermitianMatrix::identity(2),
                                  WeightPair::scalar(0.5, 2));
  t.expect(std::abs(v.metrics.at("lhs") - 6.25) <= kExactEq && std::abs(v.metrics.at("rhs") - 4.0) <= kExactEq,
           "diag(1,4), I");
  report(8, "determinant inequality", t);
}

void criterion9() {
  Tally t;
  std::vector<std::pair<std::string, bool>> specs = {{"schatten:1", false}, {"schatten:2", false}, {"schatten:inf", false},
                                                     {"kyfan:1", false},    {"kyfan:n", false},    {"quasi:0.5", true},
                                                     {"minkowski", true}};
  for (const auto& [name, anti] : specs)
    for (int split = 0; split < 2; ++split) {
      Tally cell;
      for_trials(500, 90 + split, [&](std::size_t n, Rng& rng, const std::string& id) {
        const auto pa = gen_psd(n, rng), pb = gen_psd(n, rng);
        const auto ha = gen_hermitian(n, rng, {-2.0, 2.0}), hb = gen_hermitian(n, rng, {-2.0, 2.0});
        const auto w = gen_weight_pair(WeightKind::bi_isometric, n, rng);
        const NormSpec spec = name == "kyfan:n" ? NormSpec::kyfan(n) : NormSpec::parse(name);
        for (const auto& f : catalog()) {
          if (anti ? !f.is_concave() : !f.is_convex()) continue;
          const bool h = halfline(f);
          const auto& a = h ? pa : ha;
          const auto& b = h ? pb : hb;
          if (!f.nonnegative_on(detail::spectral_hull(eigenvalues(a), eigenvalues(b)))) continue;
          const auto v = split ? check_moslehian(a, b, f, spec, rule()) : check_norm_antinorm_split(a, b, w, f, spec);
          cell.see(v.min_slack, -kNormTol, id + " " + f.name());
        }
      });
      if (cell.cases < 500) cell.expect(false, "fewer than 500 cases");
      t.cases += cell.cases;
      t.worst = std::min(t.worst, cell.worst);
      if (cell.bad && !t.bad) t.first_bad = name + (split ? " integral " : " split ") + cell.first_bad;
      t.bad += cell.bad;
    }
  report(9, "norm and antinorm inequalities", t);
}

void criterion10() {
  Tally t;
  Rng rng(1010);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = 2 + static_cast<std::size_t>(k) % 7;
    const std::size_t terms = 1 + static_cast<std::size_t>(k) % 5;
    std::vector<double> w(terms);
    double ws = 0.0;
    for (auto& x : w) ws += (x = u(rng));
    RealMatrix d(n, n);
    for (std::size_t j = 0; j < terms; ++j) {
      Permutation p(n);
      std::iota(p.begin(), p.end(), std::size_t{0});
      std::shuffle(p.begin(), p.end(), rng);
      for (std::size_t i = 0; i < n; ++i) d(i, p[i]) += w[j] / ws;
    }
    std::vector<double> b(n);
    for (auto& x : b) x = g(rng);
    const auto a = d.apply(b);
    const std::string id = "pair " + std::to_string(k);

    MajorizationCert c = hlp_chain(a, b);
    const auto bk = birkhoff(c.dstoch);
    c.weights = bk.weights;
    c.perms = bk.perms;
    const auto bad = c.invariant_violations(kCertTol);
    t.expect(bad.empty(), id + (bad.empty() ? "" : " " + bad.front()));

    const auto bd = birkhoff(d);
    RealMatrix r(n, n);
    for (std::size_t j = 0; j < bd.perms.size(); ++j)
      for (std::size_t i = 0; i < n; ++i) r(i, bd.perms[j][i]) += bd.weights[j];
    t.see(kCertTol - r.max_abs_diff(d), 0.0, id + " reconstruction");
  }
  report(10, "majorization certificate pipeline", t);
}

void criterion11() {
  Tally t;
  FourPointSearchOptions sq;
  sq.fns = {"square"};
  t.expect(!search_four_point_counterexample(kSearchBudget, 1101, sq).witness, "square found a witness");
  sq.fns = {"square_real"};
  t.expect(!search_four_point_counterexample(kSearchBudget, 1102, sq).witness, "square_real found a witness");
  FourPointSearchOptions diag;
  diag.diagonal = true;
  t.expect(!search_four_point_counterexample(kSearchBudget, 1103, diag).witness, "diagonal found a witness");

  const auto full = search_four_point_counterexample(20000, 42);
  if (full.witness) {
    const auto& w = *full.witness;
    const ScalarFn& f = lookup(w.fn);
    auto fe = [&f](double x) { return f(std::max(x, f.domain().lo)); };
    auto min_eig = [](const HermitianMatrix& m) { return oracle::eigenvalues(m).back(); };
    const bool ordered = min_eig(w.s - w.p) >= -1e-10 && min_eig(w.t - w.s) >= -1e-10 && min_eig(w.q - w.t) >= -1e-10;
    const double outer = oracle::trace_fn(oracle::to_eigen(w.p), fe) + oracle::trace_fn(oracle::to_eigen(w.q), fe);
    const double inner = oracle::trace_fn(oracle::to_eigen(w.s), fe) + oracle::trace_fn(oracle::to_eigen(w.t), fe);
    t.expect(f.is_convex() && ordered && outer < inner && revalidate_four_point(w), "witness re-validation");
    std::printf("      four-point witness: fn=%s gap=%.3e after %zu samples\n", w.fn.c_str(), inner - outer, w.sample);
  }
  report(11, "four-point negative controls", t);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  std::printf("%s\n", g_failures ? "ACCEPTANCE FAILED" : "ALL CRITERIA PASS");
  return g_failures ? 1 : 0;
}
