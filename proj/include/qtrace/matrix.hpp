#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "qtrace/errors.hpp"
#include "qtrace/op_counter.hpp"

namespace qtrace {

inline constexpr double kDefaultTolerance = 1e-12;

namespace detail {

inline std::size_t checked_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
    throw std::length_error("qtrace: matrix size overflows size_t");
  }
  return a * b;
}

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

template <typename T>
T conj_if_complex(const T& x) {
  if constexpr (is_complex<T>::value) {
    return std::conj(x);
  } else {
    return x;
  }
}

inline std::string shape_str(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace detail

/// Dense row-major matrix. Indices are 0-based.
template <typename T>
class Matrix {
public:
  using value_type = T;

  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(detail::checked_mul(rows, cols), T{}) {}

  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != detail::checked_mul(rows, cols)) {
      throw DimensionError("Matrix: data length " + std::to_string(data_.size()) +
                           " does not match shape " + detail::shape_str(rows, cols));
    }
  }

  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) {
        throw DimensionError("Matrix: ragged initializer list");
      }
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

  static Matrix diagonal(std::span<const T> diag) {
    Matrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  static Matrix diagonal(std::initializer_list<T> diag) {
    return diagonal(std::span<const T>(diag.begin(), diag.size()));
  }

  /// Column vector |e_index> of length n.
  static Matrix basis_ket(std::size_t n, std::size_t index) {
    if (index >= n) throw DimensionError("basis_ket: index " + std::to_string(index) + " >= " + std::to_string(n));
    Matrix m(n, 1);
    m(index, 0) = T{1};
    return m;
  }

  /// Row vector <e_index| of length n.
  static Matrix basis_bra(std::size_t n, std::size_t index) {
    if (index >= n) throw DimensionError("basis_bra: index " + std::to_string(index) + " >= " + std::to_string(n));
    Matrix m(1, n);
    m(0, index) = T{1};
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }

  std::span<T> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }

  Matrix& operator+=(const Matrix& other) {
    require_same_shape(other, "operator+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
  }

  Matrix& operator-=(const Matrix& other) {
    require_same_shape(other, "operator-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
  }

  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  void require_same_shape(const Matrix& other, const char* where) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
      throw DimensionError(std::string("Matrix::") + where + ": shape " +
                           detail::shape_str(rows_, cols_) + " vs " +
                           detail::shape_str(other.rows_, other.cols_));
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using Complex = std::complex<double>;
using ComplexMatrix = Matrix<Complex>;

template <typename T>
void require_square(const Matrix<T>& a, const char* where) {
  if (!a.is_square()) {
    throw DimensionError(std::string(where) + ": expected a square matrix, got " +
                         detail::shape_str(a.rows(), a.cols()));
  }
}

/// Kronecker product; entry (i*rowsB+k, j*colsB+l) = A(i,j)*B(k,l).
/// Counts one multiplication per output entry.
template <typename T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b, OpCounter* counter = nullptr) {
  const std::size_t rows = detail::checked_mul(a.rows(), b.rows());
  const std::size_t cols = detail::checked_mul(a.cols(), b.cols());
  Matrix<T> out(rows, cols);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const T aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k) {
        const auto brow = b.row(k);
        T* dst = &out(i * b.rows() + k, j * b.cols());
        for (std::size_t l = 0; l < b.cols(); ++l) dst[l] = aij * brow[l];
      }
    }
  }
  if (counter) counter->mops += static_cast<std::uint64_t>(rows) * cols;
  return out;
}

/// Dense product with no structure exploitation: every stored zero is
/// multiplied. Costs m*n*o multiplications and m*o*(n-1) sums.
template <typename T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b, OpCounter* counter = nullptr) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: inner dimensions differ (" +
                         detail::shape_str(a.rows(), a.cols()) + " * " +
                         detail::shape_str(b.rows(), b.cols()) + ")");
  }
  const std::size_t m = a.rows(), n = a.cols(), o = b.cols();
  Matrix<T> out(m, o);
  if (n == 0) return out;
  for (std::size_t i = 0; i < m; ++i) {
    T* dst = out.row(i).data();
    const T* arow = a.row(i).data();
    {
      const T aik = arow[0];
      const T* brow = b.row(0).data();
      for (std::size_t j = 0; j < o; ++j) dst[j] = aik * brow[j];
    }
    for (std::size_t k = 1; k < n; ++k) {
      const T aik = arow[k];
      const T* brow = b.row(k).data();
      for (std::size_t j = 0; j < o; ++j) dst[j] += aik * brow[j];
    }
  }
  if (counter) {
    counter->mops += static_cast<std::uint64_t>(m) * n * o;
    counter->sops += static_cast<std::uint64_t>(m) * o * (n - 1);
  }
  return out;
}

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  return matmul(a, b);
}

template <typename T>
T trace(const Matrix<T>& a, OpCounter* counter = nullptr) {
  require_square(a, "trace");
  if (a.rows() == 0) return T{};
  T sum = a(0, 0);
  for (std::size_t j = 1; j < a.rows(); ++j) sum += a(j, j);
  if (counter) counter->sops += a.rows() - 1;
  return sum;
}

/// Conjugate transpose.
template <typename T>
Matrix<T> dagger(const Matrix<T>& a) {
  Matrix<T> out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = detail::conj_if_complex(a(i, j));
  }
  return out;
}

template <typename T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  }
  return out;
}

/// max |A(i,j) - conj(A(j,i))|.
template <typename T>
double hermiticity_defect(const Matrix<T>& a) {
  require_square(a, "hermiticity_defect");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i; j < a.cols(); ++j) {
      worst = std::max(worst, static_cast<double>(std::abs(a(i, j) - detail::conj_if_complex(a(j, i)))));
    }
  }
  return worst;
}

template <typename T>
bool is_hermitian(const Matrix<T>& a, double tol = kDefaultTolerance) {
  return a.is_square() && hermiticity_defect(a) <= tol;
}

template <typename T>
void require_hermitian(const Matrix<T>& a, double tol, const char* where) {
  const double defect = hermiticity_defect(a);
  if (!(defect <= tol)) {
    throw NotHermitianError(std::string(where) + ": input is not Hermitian (defect " +
                            std::to_string(defect) + " > " + std::to_string(tol) + ")");
  }
}

/// max_ij |A(i,j) - B(i,j)|.
template <typename T>
double max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff: shape " + detail::shape_str(a.rows(), a.cols()) +
                         " vs " + detail::shape_str(b.rows(), b.cols()));
  }
  double worst = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t k = 0; k < da.size(); ++k) {
    worst = std::max(worst, static_cast<double>(std::abs(da[k] - db[k])));
  }
  return worst;
}

template <typename T>
double max_abs(const Matrix<T>& a) {
  double worst = 0.0;
  for (const auto& x : a.data()) worst = std::max(worst, static_cast<double>(std::abs(x)));
  return worst;
}

/// Outer product |psi><psi| of a column vector (n x 1) or flat amplitude list.
inline ComplexMatrix projector(std::span<const Complex> psi) {
  ComplexMatrix out(psi.size(), psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    for (std::size_t j = 0; j < psi.size(); ++j) out(i, j) = psi[i] * std::conj(psi[j]);
  }
  return out;
}

}  // namespace qtrace
