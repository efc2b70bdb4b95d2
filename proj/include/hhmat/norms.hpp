#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "hhmat/error.hpp"
#include "hhmat/spectral.hpp"

namespace hhmat {

/// A unitarily invariant norm (Schatten p ≥ 1, Ky Fan k) or a symmetric
/// antinorm (Schatten q-quasi-norm with 0 < q < 1, Minkowski det^{1/n}).
class NormSpec {
 public:
  enum class Kind { schatten, kyfan, schatten_quasi, minkowski };

  static NormSpec schatten(double p) {
    if (!(p >= 1.0)) throw InvalidArgument("schatten norm needs p >= 1");
    return NormSpec(Kind::schatten, p);
  }
  static NormSpec schatten_inf() { return NormSpec(Kind::schatten, std::numeric_limits<double>::infinity()); }
  static NormSpec kyfan(std::size_t k) {
    if (k == 0) throw InvalidArgument("kyfan norm needs k >= 1");
    return NormSpec(Kind::kyfan, static_cast<double>(k));
  }
  static NormSpec schatten_quasi(double q) {
    if (!(q > 0.0 && q < 1.0)) throw InvalidArgument("schatten quasi-norm needs 0 < q < 1");
    return NormSpec(Kind::schatten_quasi, q);
  }
  static NormSpec minkowski() { return NormSpec(Kind::minkowski, 0.0); }

  /// Parses "schatten:2", "schatten:inf", "kyfan:3", "quasi:0.5", "minkowski".
  static NormSpec parse(const std::string& s) {
    const auto colon = s.find(':');
    const std::string head = s.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : s.substr(colon + 1);
    try {
      if (head == "minkowski") return minkowski();
      if (head == "schatten") return arg == "inf" ? schatten_inf() : schatten(std::stod(arg));
      if (head == "kyfan") return kyfan(static_cast<std::size_t>(std::stoul(arg)));
      if (head == "quasi" || head == "schatten_quasi") return schatten_quasi(std::stod(arg));
    } catch (const std::logic_error&) {
    }
    throw InvalidArgument("cannot parse norm spec '" + s + "'");
  }

  Kind kind() const noexcept { return kind_; }
  double param() const noexcept { return param_; }
  bool is_antinorm() const noexcept { return kind_ == Kind::schatten_quasi || kind_ == Kind::minkowski; }

  std::string name() const {
    auto num = [](double v) {
      std::string s = std::to_string(v);
      s.erase(s.find_last_not_of('0') + 1);
      if (!s.empty() && s.back() == '.') s.pop_back();
      return s;
    };
    switch (kind_) {
      case Kind::schatten: return std::isinf(param_) ? "schatten:inf" : "schatten:" + num(param_);
      case Kind::kyfan: return "kyfan:" + num(param_);
      case Kind::schatten_quasi: return "quasi:" + num(param_);
      case Kind::minkowski: return "minkowski";
    }
    return {};
  }

 private:
  NormSpec(Kind k, double p) : kind_(k), param_(p) {}
  Kind kind_;
  double param_;
};

/**
 * Value of a norm or antinorm given the eigenvalues of a Hermitian matrix.
 * Singular values are |λ|. Antinorms require λ_min ≥ −1e-10·(1 + λ_max);
 * the negative dust is clamped to 0.
 */
inline double norm_of_spectrum(std::span<const double> eigs, const NormSpec& spec) {
  std::vector<double> sv;
  sv.reserve(eigs.size());
  if (spec.is_antinorm()) {
    if (!is_psd(eigs, 1e-10))
      throw AntinormOnIndefinite("antinorm '" + spec.name() + "' applied to an indefinite matrix");
    for (double v : eigs) sv.push_back(std::max(v, 0.0));
  } else {
    for (double v : eigs) sv.push_back(std::abs(v));
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  if (sv.empty()) return 0.0;

  switch (spec.kind()) {
    case NormSpec::Kind::schatten:
    case NormSpec::Kind::schatten_quasi: {
      const double p = spec.param();
      const double top = sv.front();
      if (std::isinf(p)) return top;
      if (top == 0.0) return 0.0;
      if (spec.kind() == NormSpec::Kind::schatten) {
        // scaled to avoid overflow for large p
        double s = 0.0;
        for (double v : sv) s += std::pow(v / top, p);
        return top * std::pow(s, 1.0 / p);
      }
      double s = 0.0;
      for (double v : sv) s += std::pow(v, p);
      return std::pow(s, 1.0 / p);
    }
    case NormSpec::Kind::kyfan: {
      const auto k = static_cast<std::size_t>(spec.param());
      if (k > sv.size())
        throw InvalidArgument("kyfan:" + std::to_string(k) + " exceeds dimension " +
                              std::to_string(sv.size()));
      double s = 0.0;
      for (std::size_t i = 0; i < k; ++i) s += sv[i];
      return s;
    }
    case NormSpec::Kind::minkowski: {
      double log_det = 0.0;
      for (double v : sv) {
        if (v == 0.0) return 0.0;
        log_det += std::log(v);
      }
      return std::exp(log_det / static_cast<double>(sv.size()));
    }
  }
  return 0.0;
}

inline double norm(const HermitianMatrix& a, const NormSpec& spec) {
  return norm_of_spectrum(eigenvalues(a), spec);
}

}  // namespace hhmat
