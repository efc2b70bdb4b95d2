#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hhmat/error.hpp"

namespace hhmat {

using cplx = std::complex<double>;

/**
 * Dense complex matrix, row-major.
 *
 * Entries must be finite; the checked constructors reject NaN/Inf. Results of
 * arithmetic on finite inputs are not re-validated.
 */
class CMatrix {
 public:
  CMatrix() = default;

  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
      throw DimensionMismatch("CMatrix: entry count " + std::to_string(data_.size()) +
                              " does not match " + std::to_string(rows_) + "x" +
                              std::to_string(cols_));
    if (!all_finite()) throw InvalidArgument("CMatrix: non-finite entry");
  }

  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionMismatch("CMatrix: ragged initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
    if (!all_finite()) throw InvalidArgument("CMatrix: non-finite entry");
  }

  static CMatrix zeros(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }

  static CMatrix identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static CMatrix diagonal(std::span<const double> d) {
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  static CMatrix diagonal(std::span<const cplx> d) {
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const cplx> entries() const noexcept { return data_; }

  bool all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](const cplx& z) {
      return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
  }

  CMatrix adjoint() const {
    CMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  CMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("CMatrix::block out of range");
    CMatrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const CMatrix& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
      throw DimensionMismatch("CMatrix::set_block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  CMatrix& operator+=(const CMatrix& o) {
    require_same_shape(o, "+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }

  CMatrix& operator-=(const CMatrix& o) {
    require_same_shape(o, "-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }

  CMatrix& operator*=(cplx s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols_ != b.rows_)
      throw DimensionMismatch("CMatrix product: " + std::to_string(a.rows_) + "x" +
                              std::to_string(a.cols_) + " * " + std::to_string(b.rows_) + "x" +
                              std::to_string(b.cols_));
    CMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx(0.0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

 private:
  void require_same_shape(const CMatrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionMismatch(std::string("CMatrix ") + op + ": shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// ‖a − b‖_F
inline double distance(const CMatrix& a, const CMatrix& b) { return (a - b).frobenius_norm(); }

/// Block-diagonal [[a, 0], [0, b]].
inline CMatrix direct_sum(const CMatrix& a, const CMatrix& b) {
  CMatrix r(a.rows() + b.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), a.cols(), b);
  return r;
}

/**
 * Square complex matrix equal to its adjoint.
 *
 * The checked constructor accepts input with ‖A − A*‖_F ≤ 1e-12·(1 + ‖A‖_F)
 * and stores the exact symmetrization (A + A*)/2, so diagonal entries are real
 * and (i,j), (j,i) are exact conjugates.
 */
class HermitianMatrix {
 public:
  static constexpr double kSymmetryTol = 1e-12;

  HermitianMatrix() = default;

  explicit HermitianMatrix(const CMatrix& m) {
    if (!m.is_square()) throw DimensionMismatch("HermitianMatrix: matrix is not square");
    const double asym = distance(m, m.adjoint());
    if (asym > kSymmetryTol * (1.0 + m.frobenius_norm()))
      throw NotHermitian("HermitianMatrix: ‖A − A*‖_F = " + std::to_string(asym));
    m_ = symmetrized(m);
  }

  HermitianMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
      : HermitianMatrix(CMatrix(rows)) {}

  /// (A + A*)/2 with no tolerance check.
  static HermitianMatrix hermitian_part(const CMatrix& m) {
    if (!m.is_square()) throw DimensionMismatch("hermitian_part: matrix is not square");
    HermitianMatrix h;
    h.m_ = symmetrized(m);
    return h;
  }

  static HermitianMatrix diagonal(std::span<const double> d) {
    HermitianMatrix h;
    h.m_ = CMatrix::diagonal(d);
    return h;
  }

  static HermitianMatrix diagonal(std::initializer_list<double> d) {
    return diagonal(std::span<const double>(d.begin(), d.size()));
  }

  static HermitianMatrix identity(std::size_t n) {
    HermitianMatrix h;
    h.m_ = CMatrix::identity(n);
    return h;
  }

  static HermitianMatrix zeros(std::size_t n) {
    HermitianMatrix h;
    h.m_ = CMatrix(n, n);
    return h;
  }

  std::size_t dim() const noexcept { return m_.rows(); }
  const CMatrix& matrix() const noexcept { return m_; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  double trace() const { return m_.trace().real(); }
  double frobenius_norm() const { return m_.frobenius_norm(); }

  /// X* A X, symmetrized. X may be rectangular (dim × k).
  HermitianMatrix congruence(const CMatrix& x) const {
    return hermitian_part(x.adjoint() * m_ * x);
  }

  /// The diagonal block starting at (offset, offset).
  HermitianMatrix principal_block(std::size_t offset, std::size_t size) const {
    HermitianMatrix h;
    h.m_ = m_.block(offset, offset, size, size);
    return h;
  }

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
    HermitianMatrix h;
    h.m_ = a.m_ + b.m_;
    return h;
  }
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
    HermitianMatrix h;
    h.m_ = a.m_ - b.m_;
    return h;
  }
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a) {
    HermitianMatrix h;
    h.m_ = a.m_ * cplx(s);
    return h;
  }
  friend HermitianMatrix operator*(const HermitianMatrix& a, double s) { return s * a; }

 private:
  static CMatrix symmetrized(const CMatrix& m) {
    const std::size_t n = m.rows();
    CMatrix s(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      s(i, i) = m(i, i).real();
      for (std::size_t j = i + 1; j < n; ++j) {
        const cplx v = 0.5 * (m(i, j) + std::conj(m(j, i)));
        s(i, j) = v;
        s(j, i) = std::conj(v);
      }
    }
    return s;
  }

  CMatrix m_;
};

inline HermitianMatrix direct_sum(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix::hermitian_part(direct_sum(a.matrix(), b.matrix()));
}

/// Dense real matrix, row-major. Used for doubly stochastic matrices.
class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RealMatrix identity(std::size_t n) {
    RealMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<double> apply(std::span<const double> v) const {
    if (v.size() != cols_) throw DimensionMismatch("RealMatrix::apply: size mismatch");
    std::vector<double> r(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  friend RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("RealMatrix product: shape mismatch");
    RealMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
    return r;
  }

  double max_abs_diff(const RealMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("RealMatrix: shape mismatch");
    double m = 0.0;
    for (std::size_t k = 0; k < data_.size(); ++k) m = std::max(m, std::abs(data_[k] - o.data_[k]));
    return m;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace hhmat
