#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "qtrace/bipartite.hpp"
#include "qtrace/errors.hpp"
#include "qtrace/matrix.hpp"
#include "qtrace/op_counter.hpp"

namespace qtrace {

/// H_a (x) H_b (x) H_c, with b the party to be traced.
struct TripartiteDims {
  std::size_t da = 1;
  std::size_t db = 1;
  std::size_t dc = 1;

  std::size_t total() const { return detail::checked_mul(detail::checked_mul(da, db), dc); }
};

/// Ordered subsystem dimensions d_1..d_n.
class SystemDims {
public:
  SystemDims() = default;
  SystemDims(std::initializer_list<std::size_t> dims) : SystemDims(std::vector<std::size_t>(dims)) {}
  explicit SystemDims(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw DimensionError("SystemDims: need at least one subsystem");
    for (auto d : dims_) {
      if (d == 0) throw DimensionError("SystemDims: subsystem dimensions must be >= 1");
    }
  }

  std::size_t count() const noexcept { return dims_.size(); }
  std::size_t operator[](std::size_t i) const { return dims_.at(i); }
  const std::vector<std::size_t>& values() const noexcept { return dims_; }

  std::size_t total() const {
    std::size_t p = 1;
    for (auto d : dims_) p = detail::checked_mul(p, d);
    return p;
  }

private:
  std::vector<std::size_t> dims_;
};

enum class Party { keep, trace };

/// Per-subsystem keep/trace flags, aligned with a SystemDims.
class TraceMask {
public:
  TraceMask() = default;
  TraceMask(std::initializer_list<Party> flags) : flags_(flags) {}
  explicit TraceMask(std::vector<Party> flags) : flags_(std::move(flags)) {}

  /// Mask tracing the listed 0-based subsystems out of n.
  static TraceMask tracing(std::size_t n, const std::vector<std::size_t>& traced) {
    std::vector<Party> flags(n, Party::keep);
    for (auto s : traced) {
      if (s >= n) {
        throw DimensionError("TraceMask: subsystem index " + std::to_string(s) +
                             " out of range for " + std::to_string(n) + " subsystems");
      }
      flags[s] = Party::trace;
    }
    return TraceMask(std::move(flags));
  }

  std::size_t count() const noexcept { return flags_.size(); }
  Party operator[](std::size_t i) const { return flags_.at(i); }
  const std::vector<Party>& values() const noexcept { return flags_; }

  std::size_t kept() const {
    std::size_t n = 0;
    for (auto f : flags_) n += (f == Party::keep);
    return n;
  }

private:
  std::vector<Party> flags_;
};

enum class TraceMethod { direct, fast };

struct TraceOptions {
  TraceMethod method = TraceMethod::fast;
  // Caller asserts the input is Hermitian; checked, then the triangular
  // fast path is used.
  bool hermitian = false;
  double hermitian_tol = kHermitianInputTolerance;
};

namespace detail {

template <typename T>
void require_tripartite(const Matrix<T>& o, TripartiteDims dims, const char* where) {
  if (dims.da == 0 || dims.db == 0 || dims.dc == 0) {
    throw DimensionError(std::string(where) + ": subsystem dimensions must be >= 1");
  }
  if (!o.is_square() || o.rows() != dims.total()) {
    throw DimensionError(std::string(where) + ": operator is " + shape_str(o.rows(), o.cols()) +
                         " but da*db*dc = " + std::to_string(dims.da) + "*" +
                         std::to_string(dims.db) + "*" + std::to_string(dims.dc));
  }
}

template <typename T>
void inner_trace_kernel(const Matrix<T>& o, TripartiteDims dims, Matrix<T>& out, bool upper_only) {
  const std::size_t da = dims.da, db = dims.db, dc = dims.dc;
  const std::size_t n = o.cols();
  const std::size_t stride = dc * (n + 1);  // step k -> k+1 on both row and column
  const T* src = o.data().data();
  for (std::size_t j = 0; j < da; ++j) {
    for (std::size_t l = 0; l < dc; ++l) {
      const std::size_t r = j * dc + l;
      const std::size_t row0 = j * db * dc + l;
      for (std::size_t m = 0; m < da; ++m) {
        for (std::size_t oc = 0; oc < dc; ++oc) {
          const std::size_t c = m * dc + oc;
          if (upper_only && c < r) continue;
          const T* p = src + row0 * n + (m * db * dc + oc);
          T acc = p[0];
          for (std::size_t k = 1; k < db; ++k) acc += p[k * stride];
          out(r, c) = acc;
          if (upper_only && c != r) out(c, r) = conj_if_complex(acc);
        }
      }
    }
  }
}

template <typename T>
Matrix<T> ptrace_inner_hermitian_unchecked(const Matrix<T>& o, TripartiteDims dims, OpCounter* counter) {
  reset(counter);
  const std::size_t dr = dims.da * dims.dc;
  Matrix<T> out(dr, dr);
  inner_trace_kernel(o, dims, out, true);
  if (counter) counter->sops += static_cast<std::uint64_t>(dr) * (dr + 1) / 2 * (dims.db - 1);
  return out;
}

}  // namespace detail

/// Traces out the middle party of H_a (x) H_b (x) H_c:
///   O^ac(j*dc+l, m*dc+o) = sum_k O(j*db*dc + k*dc + l, m*db*dc + k*dc + o).
/// da^2 dc^2 (db-1) sums, no multiplications.
template <typename T>
Matrix<T> ptrace_inner(const Matrix<T>& o, TripartiteDims dims, OpCounter* counter = nullptr) {
  detail::require_tripartite(o, dims, "ptrace_inner");
  detail::reset(counter);
  const std::size_t dr = dims.da * dims.dc;
  Matrix<T> out(dr, dr);
  detail::inner_trace_kernel(o, dims, out, false);
  if (counter) counter->sops += static_cast<std::uint64_t>(dr) * dr * (dims.db - 1);
  return out;
}

/// ptrace_inner for Hermitian O; lower triangle filled by conjugation.
template <typename T>
Matrix<T> ptrace_inner_hermitian(const Matrix<T>& o, TripartiteDims dims,
                                 OpCounter* counter = nullptr,
                                 double tol = kHermitianInputTolerance) {
  detail::require_tripartite(o, dims, "ptrace_inner_hermitian");
  require_hermitian(o, tol, "ptrace_inner_hermitian");
  return detail::ptrace_inner_hermitian_unchecked(o, dims, counter);
}

/// sum_k (I_a (x) <k| (x) I_c) O (I_a (x) |k> (x) I_c) with every factor
/// materialized densely.
template <typename T>
Matrix<T> ptrace_inner_direct(const Matrix<T>& o, TripartiteDims dims, OpCounter* counter = nullptr) {
  detail::require_tripartite(o, dims, "ptrace_inner_direct");
  detail::reset(counter);
  const auto id_a = Matrix<T>::identity(dims.da);
  const auto id_c = Matrix<T>::identity(dims.dc);
  Matrix<T> out(dims.da * dims.dc, dims.da * dims.dc);
  for (std::size_t k = 0; k < dims.db; ++k) {
    const auto bra = kron(id_a, kron(Matrix<T>::basis_bra(dims.db, k), id_c, counter), counter);
    const auto ket = kron(id_a, kron(Matrix<T>::basis_ket(dims.db, k), id_c, counter), counter);
    const auto term = matmul(matmul(bra, o, counter), ket, counter);
    if (k == 0) {
      out = term;
    } else {
      out += term;
      if (counter) counter->sops += out.size();
    }
  }
  return out;
}

/// Product of the kept subsystem dimensions.
inline std::size_t reduced_dimension(const SystemDims& dims, const TraceMask& mask) {
  if (dims.count() != mask.count()) {
    throw DimensionError("reduced_dimension: " + std::to_string(dims.count()) +
                         " dimensions but " + std::to_string(mask.count()) + " mask flags");
  }
  std::size_t dr = 1;
  for (std::size_t i = 0; i < dims.count(); ++i) {
    if (mask[i] == Party::keep) dr = detail::checked_mul(dr, dims[i]);
  }
  return dr;
}

/// Reduced operator on the kept subsystems (original order preserved).
/// Traced subsystems are removed one at a time, left to right, each as the
/// inner party b of (everything left of it) (x) b (x) (everything right of it).
template <typename T>
Matrix<T> partial_trace(const Matrix<T>& rho, const SystemDims& dims, const TraceMask& mask,
                        const TraceOptions& options = {}, OpCounter* counter = nullptr) {
  if (dims.count() != mask.count()) {
    throw DimensionError("partial_trace: " + std::to_string(dims.count()) + " dimensions but " +
                         std::to_string(mask.count()) + " mask flags");
  }
  if (mask.kept() == 0) throw DimensionError("partial_trace: mask traces out every subsystem");
  if (!rho.is_square() || rho.rows() != dims.total()) {
    throw DimensionError("partial_trace: operator is " + detail::shape_str(rho.rows(), rho.cols()) +
                         " but the subsystem dimensions multiply to " + std::to_string(dims.total()));
  }
  if (options.hermitian) require_hermitian(rho, options.hermitian_tol, "partial_trace");
  detail::reset(counter);

  std::vector<std::size_t> cur = dims.values();
  std::vector<Party> flags = mask.values();
  Matrix<T> out = rho;
  OpCounter step;
  for (std::size_t i = 0; i < cur.size();) {
    if (flags[i] == Party::keep) {
      ++i;
      continue;
    }
    TripartiteDims td{1, cur[i], 1};
    for (std::size_t s = 0; s < i; ++s) td.da *= cur[s];
    for (std::size_t s = i + 1; s < cur.size(); ++s) td.dc *= cur[s];
    if (options.method == TraceMethod::direct) {
      out = ptrace_inner_direct(out, td, counter ? &step : nullptr);
    } else if (options.hermitian) {
      // The input was validated once; intermediate results stay Hermitian.
      out = detail::ptrace_inner_hermitian_unchecked(out, td, counter ? &step : nullptr);
    } else {
      out = ptrace_inner(out, td, counter ? &step : nullptr);
    }
    if (counter) {
      counter->mops += step.mops;
      counter->sops += step.sops;
    }
    cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(i));
    flags.erase(flags.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return out;
}

}  // namespace qtrace
