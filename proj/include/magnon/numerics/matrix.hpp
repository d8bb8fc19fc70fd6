#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "magnon/error.hpp"

namespace magnon {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;
using RVector = std::vector<double>;

/// Dense square-or-rectangular matrix, row-major.
template <typename T>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  void set_column(std::size_t j, std::span<const T> values) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = values[i];
  }

  std::span<const T> data() const noexcept { return data_; }
  std::span<T> data() noexcept { return data_; }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using CMatrix = Matrix<cplx>;
using RMatrix = Matrix<double>;

namespace detail {
inline double conj_value(double x) { return x; }
inline cplx conj_value(const cplx& x) { return std::conj(x); }
} // namespace detail

template <typename T>
Matrix<T> adjoint(const Matrix<T>& m) {
  Matrix<T> out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = detail::conj_value(m(i, j));
  return out;
}

template <typename T>
Matrix<T> transpose(const Matrix<T>& m) {
  Matrix<T> out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  return out;
}

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw ShapeError("matrix product: inner dimensions differ");
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto orow = out.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T aik = a(i, k);
      if (aik == T{}) continue;
      auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) orow[j] += aik * brow[j];
    }
  }
  return out;
}

template <typename T>
std::vector<T> operator*(const Matrix<T>& a, std::span<const T> x) {
  if (a.cols() != x.size()) throw ShapeError("matrix-vector product: dimension mismatch");
  std::vector<T> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    T acc{};
    auto r = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) acc += r[j] * x[j];
    y[i] = acc;
  }
  return y;
}

template <typename T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& x) {
  return a * std::span<const T>(x);
}

template <typename T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("matrix difference: shape mismatch");
  Matrix<T> out = a;
  for (std::size_t k = 0; k < out.data().size(); ++k) out.data()[k] -= b.data()[k];
  return out;
}

template <typename T>
double max_abs(const Matrix<T>& m) {
  double best = 0.0;
  for (const auto& v : m.data()) best = std::max(best, std::abs(v));
  return best;
}

template <typename T>
bool all_finite(const Matrix<T>& m) {
  for (const auto& v : m.data()) {
    if constexpr (std::is_same_v<T, cplx>) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    } else {
      if (!std::isfinite(v)) return false;
    }
  }
  return true;
}

inline double norm2(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

inline cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  cplx s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

/// Complex matrix with conjugate symmetry checked on construction.
class HermitianMatrix {
public:
  static constexpr double kTolerance = 1e-12;

  explicit HermitianMatrix(CMatrix m) : m_(std::move(m)) {
    if (!m_.square() || m_.rows() == 0) throw InvalidMatrix("Hermitian matrix must be square and non-empty");
    if (!all_finite(m_)) throw InvalidMatrix("Hermitian matrix has non-finite entries");
    for (std::size_t i = 0; i < m_.rows(); ++i)
      for (std::size_t j = i; j < m_.cols(); ++j)
        if (std::abs(m_(i, j) - std::conj(m_(j, i))) > kTolerance)
          throw InvalidMatrix("matrix is not Hermitian at (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }

  std::size_t dim() const noexcept { return m_.rows(); }
  const CMatrix& entries() const noexcept { return m_; }
  const cplx& operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }

  bool is_real() const noexcept {
    return std::all_of(m_.data().begin(), m_.data().end(), [](const cplx& z) { return z.imag() == 0.0; });
  }

private:
  CMatrix m_;
};

/// Complex matrix whose columns are orthonormal to 1e-10.
class UnitaryMatrix {
public:
  static constexpr double kTolerance = 1e-10;

  explicit UnitaryMatrix(CMatrix m) : m_(std::move(m)) {
    if (!m_.square() || m_.rows() == 0) throw InvalidMatrix("unitary matrix must be square and non-empty");
    if (!all_finite(m_)) throw InvalidMatrix("unitary matrix has non-finite entries");
    const double dev = unitarity_defect(m_);
    if (dev > kTolerance)
      throw InvalidMatrix("matrix is not unitary: max |U^dagger U - I| = " + std::to_string(dev));
  }

  static double unitarity_defect(const CMatrix& m) {
    CMatrix g = adjoint(m) * m;
    for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
    return max_abs(g);
  }

  std::size_t dim() const noexcept { return m_.rows(); }
  const CMatrix& entries() const noexcept { return m_; }
  const cplx& operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }

private:
  CMatrix m_;
};

/// Eigenvalues paired with eigenvector columns.
///
/// For Hermitian input `values` are energies in ascending order; for unitary
/// input they are eigenphases in [-pi, pi), also ascending.
struct SpectralSet {
  RVector values;
  CMatrix vectors; // column k belongs to values[k]
  double max_residual = 0.0;

  std::size_t size() const noexcept { return values.size(); }
  CVector vector(std::size_t k) const { return vectors.column(k); }
};

} // namespace magnon
