#pragma once

// Real-vector geometric algebra restricted to the grades this library needs:
// vectors, bivectors and {scalar, bivector} multivectors in R^n.

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace genfreq {

/// Max-abs tolerance on Q^T Q - I accepted by apply_orthogonal.
inline constexpr double kOrthogonalityTol = 1e-12;

namespace detail {

inline void check_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw InvalidParameter(std::string(what) + ": entries must be finite");
    }
  }
}

}  // namespace detail

/// An n-dimensional real vector. Doubles as an instantaneous signal value
/// (voltage, current, flux) and as its time derivative.
class VecN {
public:
  explicit VecN(std::size_t dim) : c_(dim, 0.0) { check_dim(); }

  VecN(std::initializer_list<double> values) : c_(values) {
    check_dim();
    detail::check_finite(c_, "VecN");
  }

  explicit VecN(std::vector<double> values) : c_(std::move(values)) {
    check_dim();
    detail::check_finite(c_, "VecN");
  }

  std::size_t dim() const { return c_.size(); }
  double operator[](std::size_t i) const { return c_[i]; }
  double& operator[](std::size_t i) { return c_[i]; }
  std::span<const double> components() const { return c_; }

  auto begin() const { return c_.begin(); }
  auto end() const { return c_.end(); }

  VecN& operator+=(const VecN& rhs) {
    require_same_dim(rhs);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
    return *this;
  }
  VecN& operator-=(const VecN& rhs) {
    require_same_dim(rhs);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= rhs.c_[i];
    return *this;
  }
  VecN& operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
  }
  VecN& operator/=(double s) {
    for (double& v : c_) v /= s;
    return *this;
  }

  friend VecN operator+(VecN lhs, const VecN& rhs) { return lhs += rhs; }
  friend VecN operator-(VecN lhs, const VecN& rhs) { return lhs -= rhs; }
  friend VecN operator*(VecN v, double s) { return v *= s; }
  friend VecN operator*(double s, VecN v) { return v *= s; }
  friend VecN operator/(VecN v, double s) { return v /= s; }
  friend VecN operator-(VecN v) { return v *= -1.0; }

private:
  void check_dim() const {
    if (c_.empty()) throw InvalidParameter("VecN: dim must be >= 1");
  }
  void require_same_dim(const VecN& rhs) const {
    if (c_.size() != rhs.c_.size()) {
      throw DimensionMismatch("VecN arithmetic: operand dims differ");
    }
  }

  std::vector<double> c_;
};

/// Small dense row-major matrix. Used for outer products and basis changes.
class Matrix {
public:
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), c_(rows * cols, 0.0) {
    if (rows == 0 || cols == 0) {
      throw InvalidParameter("Matrix: rows and cols must be >= 1");
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const {
    return c_[i * cols_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) { return c_[i * cols_ + j]; }

private:
  std::size_t rows_, cols_;
  std::vector<double> c_;
};

inline double inner(const VecN& x, const VecN& y) {
  if (x.dim() != y.dim()) throw DimensionMismatch("inner: operand dims differ");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) acc += x[i] * y[i];
  return acc;
}

inline double magnitude(const VecN& x) { return std::sqrt(inner(x, x)); }

inline Matrix outer(const VecN& x, const VecN& y) {
  if (x.dim() != y.dim()) throw DimensionMismatch("outer: operand dims differ");
  Matrix m(x.dim(), x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    for (std::size_t j = 0; j < y.dim(); ++j) m(i, j) = x[i] * y[j];
  }
  return m;
}

/// Antisymmetric grade-2 object. Only the strictly upper-triangular
/// coefficients b_ij (i < j) are stored, in lexicographic order; the full
/// matrix realization is skew-symmetric by construction.
class Bivector {
public:
  explicit Bivector(std::size_t dim)
      : dim_(dim), c_(dim * (dim - 1) / 2, 0.0) {
    if (dim == 0) throw InvalidParameter("Bivector: dim must be >= 1");
  }

  std::size_t dim() const { return dim_; }
  std::size_t n_coefficients() const { return c_.size(); }

  /// Signed coefficient: b_ij for i < j, -b_ji for i > j, 0 on the diagonal.
  double coeff(std::size_t i, std::size_t j) const {
    check_indices(i, j);
    if (i == j) return 0.0;
    return i < j ? c_[index(i, j)] : -c_[index(j, i)];
  }

  void set_coeff(std::size_t i, std::size_t j, double value) {
    check_indices(i, j);
    if (i == j) throw InvalidParameter("Bivector: diagonal entries are fixed to 0");
    if (i < j) {
      c_[index(i, j)] = value;
    } else {
      c_[index(j, i)] = -value;
    }
  }

  /// Upper-triangular coefficients in lexicographic (i, j) order.
  std::span<const double> coefficients() const { return c_; }

  double magnitude() const {
    double acc = 0.0;
    for (double v : c_) acc += v * v;
    return std::sqrt(acc);
  }

  /// Full skew-symmetric matrix realization.
  Matrix to_matrix() const {
    Matrix m(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = i + 1; j < dim_; ++j) {
        m(i, j) = c_[index(i, j)];
        m(j, i) = -c_[index(i, j)];
      }
    }
    return m;
  }

  /// Dim-3 display helper in (b_12, b_23, b_31) order.
  std::array<double, 3> components_xy_yz_zx() const {
    if (dim_ != 3) {
      throw DimensionMismatch("components_xy_yz_zx: defined for dim 3 only");
    }
    return {coeff(0, 1), coeff(1, 2), coeff(2, 0)};
  }

  Bivector& operator+=(const Bivector& rhs) {
    require_same_dim(rhs);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
    return *this;
  }
  Bivector& operator-=(const Bivector& rhs) {
    require_same_dim(rhs);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= rhs.c_[i];
    return *this;
  }
  Bivector& operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
  }
  Bivector& operator/=(double s) {
    for (double& v : c_) v /= s;
    return *this;
  }

  friend Bivector operator+(Bivector lhs, const Bivector& rhs) { return lhs += rhs; }
  friend Bivector operator-(Bivector lhs, const Bivector& rhs) { return lhs -= rhs; }
  friend Bivector operator*(Bivector b, double s) { return b *= s; }
  friend Bivector operator*(double s, Bivector b) { return b *= s; }
  friend Bivector operator/(Bivector b, double s) { return b /= s; }
  friend Bivector operator-(Bivector b) { return b *= -1.0; }

private:
  // Linear index of (i, j), i < j, in the lexicographic upper triangle.
  std::size_t index(std::size_t i, std::size_t j) const {
    return i * dim_ - i * (i + 1) / 2 + (j - i - 1);
  }
  void check_indices(std::size_t i, std::size_t j) const {
    if (i >= dim_ || j >= dim_) {
      throw DimensionMismatch("Bivector: index out of range");
    }
  }
  void require_same_dim(const Bivector& rhs) const {
    if (dim_ != rhs.dim_) {
      throw DimensionMismatch("Bivector arithmetic: operand dims differ");
    }
  }

  std::size_t dim_;
  std::vector<double> c_;
};

inline Bivector wedge(const VecN& x, const VecN& y) {
  if (x.dim() != y.dim()) throw DimensionMismatch("wedge: operand dims differ");
  Bivector b(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    for (std::size_t j = i + 1; j < x.dim(); ++j) {
      b.set_coeff(i, j, x[i] * y[j] - y[i] * x[j]);
    }
  }
  return b;
}

inline double bivector_magnitude(const Bivector& b) { return b.magnitude(); }

/// Scalar part plus bivector part; the result of a geometric product.
struct Multivector {
  double scalar;
  Bivector bivector;
};

inline Multivector geometric_product(const VecN& x, const VecN& y) {
  if (x.dim() != y.dim()) {
    throw DimensionMismatch("geometric_product: operand dims differ");
  }
  return {inner(x, y), wedge(x, y)};
}

/// True if q^T q deviates from the identity by at most tol in max-abs norm.
inline bool is_orthogonal(const Matrix& q, double tol = kOrthogonalityTol) {
  if (q.rows() != q.cols()) return false;
  const std::size_t n = q.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += q(k, i) * q(k, j);
      if (std::abs(acc - (i == j ? 1.0 : 0.0)) > tol) return false;
    }
  }
  return true;
}

/// Change of orthonormal basis: returns Q x. Q must be orthogonal.
inline VecN apply_orthogonal(const VecN& x, const Matrix& q) {
  if (q.rows() != x.dim() || q.cols() != x.dim()) {
    throw DimensionMismatch("apply_orthogonal: matrix does not match vector dim");
  }
  if (!is_orthogonal(q)) {
    throw InvalidParameter("apply_orthogonal: matrix is not orthogonal");
  }
  VecN out(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < x.dim(); ++j) acc += q(i, j) * x[j];
    out[i] = acc;
  }
  return out;
}

}  // namespace genfreq
