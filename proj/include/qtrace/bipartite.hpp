#pragma once

// Partial traces over one side of a bipartition H_a (x) H_b, at three levels
// of optimization: the literal definition with dense Kronecker factors, the
// index formula for an arbitrary orthonormal basis of H_b, and the
// computational-basis index formula that performs no multiplications.

#include <cstddef>
#include <string>

#include "qtrace/errors.hpp"
#include "qtrace/matrix.hpp"
#include "qtrace/op_counter.hpp"

namespace qtrace {

inline constexpr double kHermitianInputTolerance = 1e-10;
inline constexpr double kUnitaryBasisTolerance = 1e-10;

struct BipartiteDims {
  std::size_t da = 1;
  std::size_t db = 1;

  std::size_t total() const { return detail::checked_mul(da, db); }
};

namespace detail {

template <typename T>
void require_bipartite(const Matrix<T>& o, BipartiteDims dims, const char* where) {
  if (dims.da == 0 || dims.db == 0) {
    throw DimensionError(std::string(where) + ": subsystem dimensions must be >= 1");
  }
  if (!o.is_square() || o.rows() != dims.total()) {
    throw DimensionError(std::string(where) + ": operator is " + shape_str(o.rows(), o.cols()) +
                         " but da*db = " + std::to_string(dims.da) + "*" + std::to_string(dims.db));
  }
}

}  // namespace detail

/// Tr_b(O) = sum_j (I_a (x) <j|) O (I_a (x) |j>), evaluated literally: the
/// Kronecker factors are materialized and multiplied as dense matrices.
template <typename T>
Matrix<T> ptrace_b_direct(const Matrix<T>& o, BipartiteDims dims, OpCounter* counter = nullptr) {
  detail::require_bipartite(o, dims, "ptrace_b_direct");
  detail::reset(counter);
  const auto id_a = Matrix<T>::identity(dims.da);
  Matrix<T> out(dims.da, dims.da);
  for (std::size_t j = 0; j < dims.db; ++j) {
    const auto bra = kron(id_a, Matrix<T>::basis_bra(dims.db, j), counter);
    const auto ket = kron(id_a, Matrix<T>::basis_ket(dims.db, j), counter);
    const auto term = matmul(matmul(bra, o, counter), ket, counter);
    if (j == 0) {
      out = term;
    } else {
      out += term;
      if (counter) counter->sops += out.size();
    }
  }
  return out;
}

/// Tr_a(O) = sum_j (<j| (x) I_b) O (|j> (x) I_b), evaluated literally.
template <typename T>
Matrix<T> ptrace_a_direct(const Matrix<T>& o, BipartiteDims dims, OpCounter* counter = nullptr) {
  detail::require_bipartite(o, dims, "ptrace_a_direct");
  detail::reset(counter);
  const auto id_b = Matrix<T>::identity(dims.db);
  Matrix<T> out(dims.db, dims.db);
  for (std::size_t j = 0; j < dims.da; ++j) {
    const auto bra = kron(Matrix<T>::basis_bra(dims.da, j), id_b, counter);
    const auto ket = kron(Matrix<T>::basis_ket(dims.da, j), id_b, counter);
    const auto term = matmul(matmul(bra, o, counter), ket, counter);
    if (j == 0) {
      out = term;
    } else {
      out += term;
      if (counter) counter->sops += out.size();
    }
  }
  return out;
}

/// Largest |(B B^dagger - I)_ij|; zero for a matrix with orthonormal rows.
template <typename T>
double unitarity_defect(const Matrix<T>& b) {
  require_square(b, "unitarity_defect");
  const std::size_t n = b.rows();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      T dot{};
      for (std::size_t k = 0; k < n; ++k) dot += b(i, k) * detail::conj_if_complex(b(j, k));
      if (i == j) dot -= T{1};
      worst = std::max(worst, static_cast<double>(std::abs(dot)));
    }
  }
  return worst;
}

/// Tr_b(O) in the basis whose j-th row holds the components b_j0..b_j(db-1)
/// of |b_j>:
///   O^a(k,l) = sum_{alpha,beta} O(k*db+alpha, l*db+beta) * sum_j conj(b_j,alpha) b_j,beta.
/// The basis sum is re-evaluated for every output entry, which is the cost
/// this level of optimization actually pays.
template <typename T>
Matrix<T> ptrace_b_semi(const Matrix<T>& o, BipartiteDims dims, const Matrix<T>& basis,
                        OpCounter* counter = nullptr) {
  detail::require_bipartite(o, dims, "ptrace_b_semi");
  if (basis.rows() != dims.db || basis.cols() != dims.db) {
    throw DimensionError("ptrace_b_semi: basis must be db x db, got " +
                         detail::shape_str(basis.rows(), basis.cols()));
  }
  const double defect = unitarity_defect(basis);
  if (!(defect <= kUnitaryBasisTolerance)) {
    throw PreconditionError("ptrace_b_semi: basis rows are not orthonormal (defect " +
                            std::to_string(defect) + ")");
  }
  detail::reset(counter);
  const std::size_t da = dims.da, db = dims.db;
  Matrix<T> out(da, da);
  for (std::size_t k = 0; k < da; ++k) {
    for (std::size_t l = 0; l < da; ++l) {
      T acc{};
      bool first = true;
      for (std::size_t alpha = 0; alpha < db; ++alpha) {
        const T* orow = &o(k * db + alpha, l * db);
        for (std::size_t beta = 0; beta < db; ++beta) {
          T gram = detail::conj_if_complex(basis(0, alpha)) * basis(0, beta);
          for (std::size_t j = 1; j < db; ++j) {
            gram += detail::conj_if_complex(basis(j, alpha)) * basis(j, beta);
          }
          const T term = orow[beta] * gram;
          if (first) {
            acc = term;
            first = false;
          } else {
            acc += term;
          }
        }
      }
      out(k, l) = acc;
    }
  }
  if (counter) {
    // Per entry: db^2 basis sums of db products, db^2 products with O.
    const std::uint64_t entries = static_cast<std::uint64_t>(da) * da;
    const std::uint64_t b = db;
    counter->mops += entries * (b * b * b + b * b);
    counter->sops += entries * (b * b * (b - 1) + b * b - 1);
  }
  return out;
}

/// Tr_b(O) in the computational basis:
///   O^a(k,l) = sum_j O(k*db+j, l*db+j),  ascending j.
/// da^2 (db-1) sums, no multiplications.
template <typename T>
Matrix<T> ptrace_b_fast(const Matrix<T>& o, BipartiteDims dims, OpCounter* counter = nullptr) {
  detail::require_bipartite(o, dims, "ptrace_b_fast");
  detail::reset(counter);
  const std::size_t da = dims.da, db = dims.db;
  const std::size_t n = o.cols();
  Matrix<T> out(da, da);
  const T* src = o.data().data();
  for (std::size_t k = 0; k < da; ++k) {
    for (std::size_t l = 0; l < da; ++l) {
      const T* p = src + (k * db) * n + l * db;
      T acc = p[0];
      for (std::size_t j = 1; j < db; ++j) acc += p[j * (n + 1)];
      out(k, l) = acc;
    }
  }
  if (counter) counter->sops += static_cast<std::uint64_t>(da) * da * (db - 1);
  return out;
}

/// Tr_a(O) in the computational basis:
///   O^b(k,l) = sum_j O(j*db+k, j*db+l).
template <typename T>
Matrix<T> ptrace_a_fast(const Matrix<T>& o, BipartiteDims dims, OpCounter* counter = nullptr) {
  detail::require_bipartite(o, dims, "ptrace_a_fast");
  detail::reset(counter);
  const std::size_t da = dims.da, db = dims.db;
  Matrix<T> out(db, db);
  for (std::size_t k = 0; k < db; ++k) {
    for (std::size_t l = 0; l < db; ++l) {
      T acc = o(k, l);
      for (std::size_t j = 1; j < da; ++j) acc += o(j * db + k, j * db + l);
      out(k, l) = acc;
    }
  }
  if (counter) counter->sops += static_cast<std::uint64_t>(db) * db * (da - 1);
  return out;
}

/// ptrace_b_fast for Hermitian O: only the k <= l entries are summed and the
/// rest are filled by conjugation. Rejects non-Hermitian input.
template <typename T>
Matrix<T> ptrace_b_fast_hermitian(const Matrix<T>& o, BipartiteDims dims,
                                  OpCounter* counter = nullptr,
                                  double tol = kHermitianInputTolerance) {
  detail::require_bipartite(o, dims, "ptrace_b_fast_hermitian");
  require_hermitian(o, tol, "ptrace_b_fast_hermitian");
  detail::reset(counter);
  const std::size_t da = dims.da, db = dims.db;
  const std::size_t n = o.cols();
  Matrix<T> out(da, da);
  const T* src = o.data().data();
  for (std::size_t k = 0; k < da; ++k) {
    for (std::size_t l = k; l < da; ++l) {
      const T* p = src + (k * db) * n + l * db;
      T acc = p[0];
      for (std::size_t j = 1; j < db; ++j) acc += p[j * (n + 1)];
      out(k, l) = acc;
      if (l != k) out(l, k) = detail::conj_if_complex(acc);
    }
  }
  if (counter) counter->sops += static_cast<std::uint64_t>(da) * (da + 1) / 2 * (db - 1);
  return out;
}

}  // namespace qtrace
