#pragma once

// Reduced states through the Bloch parametrization
//   rho_b = I/d + sum_j (gamma_j / 2) Gamma_j,   gamma_j = Tr(Gamma_j rho_b),
// with the generalized Gell-Mann matrices as generators.
//
// Generator order (fixed, used by every BlochVector):
//   diagonal j = 1..d-1, then symmetric (k,l), then antisymmetric (k,l),
//   with pairs 0 <= k < l < d in lexicographic order.

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qtrace/bipartite.hpp"
#include "qtrace/errors.hpp"
#include "qtrace/matrix.hpp"
#include "qtrace/op_counter.hpp"

namespace qtrace {

inline constexpr double kBlochImaginaryTolerance = 1e-11;
inline constexpr double kPurityBoundTolerance = 1e-9;

struct IndexPair {
  std::size_t k;
  std::size_t l;
  friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

/// All 0-based pairs k < l < d, lexicographic.
inline std::vector<IndexPair> upper_pairs(std::size_t d) {
  std::vector<IndexPair> pairs;
  pairs.reserve(d * (d - 1) / 2);
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t l = k + 1; l < d; ++l) pairs.push_back({k, l});
  }
  return pairs;
}

class GellMannBasis {
public:
  explicit GellMannBasis(std::size_t d) : d_(d) {
    if (d < 2) throw DimensionError("gellmann_basis: dimension must be >= 2");
    pairs_ = upper_pairs(d);
    for (std::size_t j = 1; j < d; ++j) {
      ComplexMatrix g(d, d);
      const double c = std::sqrt(2.0 / static_cast<double>(j * (j + 1)));
      for (std::size_t k = 0; k < j; ++k) g(k, k) = c;
      g(j, j) = -c * static_cast<double>(j);
      diagonal_.push_back(std::move(g));
    }
    for (const auto [k, l] : pairs_) {
      ComplexMatrix s(d, d);
      s(k, l) = 1.0;
      s(l, k) = 1.0;
      symmetric_.push_back(std::move(s));
      ComplexMatrix a(d, d);
      a(k, l) = Complex(0.0, -1.0);
      a(l, k) = Complex(0.0, 1.0);
      antisymmetric_.push_back(std::move(a));
    }
  }

  std::size_t dim() const noexcept { return d_; }
  std::size_t size() const noexcept { return d_ * d_ - 1; }

  const std::vector<ComplexMatrix>& diagonal() const noexcept { return diagonal_; }
  const std::vector<ComplexMatrix>& symmetric() const noexcept { return symmetric_; }
  const std::vector<ComplexMatrix>& antisymmetric() const noexcept { return antisymmetric_; }
  const std::vector<IndexPair>& pairs() const noexcept { return pairs_; }

  /// Generator at flat position i of the fixed order.
  const ComplexMatrix& operator[](std::size_t i) const {
    if (i < diagonal_.size()) return diagonal_[i];
    i -= diagonal_.size();
    if (i < symmetric_.size()) return symmetric_[i];
    i -= symmetric_.size();
    if (i >= antisymmetric_.size()) throw DimensionError("GellMannBasis: generator index out of range");
    return antisymmetric_[i];
  }

private:
  std::size_t d_;
  std::vector<IndexPair> pairs_;
  std::vector<ComplexMatrix> diagonal_;
  std::vector<ComplexMatrix> symmetric_;
  std::vector<ComplexMatrix> antisymmetric_;
};

inline GellMannBasis gellmann_basis(std::size_t d) { return GellMannBasis(d); }

struct BlochVector {
  std::size_t d = 0;
  std::vector<double> gamma1;  // d-1 diagonal components
  std::vector<double> gamma2;  // d(d-1)/2 symmetric components
  std::vector<double> gamma3;  // d(d-1)/2 antisymmetric components

  static BlochVector zero(std::size_t d) {
    const std::size_t np = d * (d - 1) / 2;
    return {d, std::vector<double>(d - 1, 0.0), std::vector<double>(np, 0.0),
            std::vector<double>(np, 0.0)};
  }

  /// Components in the fixed generator order.
  std::vector<double> flat() const {
    std::vector<double> out;
    out.reserve(gamma1.size() + gamma2.size() + gamma3.size());
    out.insert(out.end(), gamma1.begin(), gamma1.end());
    out.insert(out.end(), gamma2.begin(), gamma2.end());
    out.insert(out.end(), gamma3.begin(), gamma3.end());
    return out;
  }

  static BlochVector from_flat(std::size_t d, const std::vector<double>& values) {
    BlochVector v = zero(d);
    if (values.size() != d * d - 1) {
      throw DimensionError("BlochVector: expected " + std::to_string(d * d - 1) + " components, got " +
                           std::to_string(values.size()));
    }
    auto it = values.begin();
    for (auto& x : v.gamma1) x = *it++;
    for (auto& x : v.gamma2) x = *it++;
    for (auto& x : v.gamma3) x = *it++;
    return v;
  }

  double norm_squared() const {
    double s = 0.0;
    for (const auto* part : {&gamma1, &gamma2, &gamma3}) {
      for (double x : *part) s += x * x;
    }
    return s;
  }
};

enum class StateKind {
  hermitian,  // any Hermitian operator
  density,    // additionally a density matrix; the purity bound is enforced
};

namespace detail {

inline double real_component(Complex z, const char* where) {
  if (std::abs(z.imag()) > kBlochImaginaryTolerance) {
    throw NotHermitianError(std::string(where) + ": Bloch component has imaginary part " +
                            std::to_string(z.imag()));
  }
  return z.real();
}

inline void check_purity_bound(const BlochVector& v, const char* where) {
  const double bound = 2.0 * static_cast<double>(v.d - 1) / static_cast<double>(v.d);
  if (v.norm_squared() > bound + kPurityBoundTolerance) {
    throw PreconditionError(std::string(where) + ": |gamma|^2 = " + std::to_string(v.norm_squared()) +
                            " exceeds the density-matrix bound " + std::to_string(bound));
  }
}

inline void require_basis_dim(const GellMannBasis& basis, std::size_t d, const char* where) {
  if (basis.dim() != d) {
    throw DimensionError(std::string(where) + ": basis is for d = " + std::to_string(basis.dim()) +
                         " but the state has d = " + std::to_string(d));
  }
}

// Tr(G * R) without forming the product.
inline Complex trace_of_product(const ComplexMatrix& g, const ComplexMatrix& r) {
  Complex s{};
  for (std::size_t a = 0; a < g.rows(); ++a) {
    for (std::size_t k = 0; k < g.cols(); ++k) s += g(a, k) * r(k, a);
  }
  return s;
}

}  // namespace detail

/// gamma_j = Tr(Gamma_j rho_b).
inline BlochVector bloch_from_state(const ComplexMatrix& rho_b, const GellMannBasis& basis,
                                    StateKind kind = StateKind::hermitian) {
  require_square(rho_b, "bloch_from_state");
  detail::require_basis_dim(basis, rho_b.rows(), "bloch_from_state");
  require_hermitian(rho_b, kHermitianInputTolerance, "bloch_from_state");
  std::vector<double> flat(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    flat[i] = detail::real_component(detail::trace_of_product(basis[i], rho_b), "bloch_from_state");
  }
  auto v = BlochVector::from_flat(basis.dim(), flat);
  if (kind == StateKind::density) detail::check_purity_bound(v, "bloch_from_state");
  return v;
}

/// rho_b = I/d + sum_j (gamma_j/2) Gamma_j, summed literally over dense
/// generators.
inline ComplexMatrix state_from_bloch(const BlochVector& gamma, const GellMannBasis& basis,
                                      OpCounter* counter = nullptr) {
  detail::require_basis_dim(basis, gamma.d, "state_from_bloch");
  if (gamma.gamma1.size() != gamma.d - 1 || gamma.gamma2.size() != basis.pairs().size() ||
      gamma.gamma3.size() != basis.pairs().size()) {
    throw DimensionError("state_from_bloch: Bloch vector component counts do not match d = " +
                         std::to_string(gamma.d));
  }
  detail::reset(counter);
  const std::size_t d = gamma.d;
  ComplexMatrix out = ComplexMatrix::identity(d) * Complex(1.0 / static_cast<double>(d));
  const auto flat = gamma.flat();
  for (std::size_t i = 0; i < flat.size(); ++i) {
    out += basis[i] * Complex(flat[i] / 2.0);
  }
  if (counter) {
    const std::uint64_t dd = static_cast<std::uint64_t>(d) * d;
    counter->mops += dd + flat.size() * (1 + dd);
    counter->sops += flat.size() * dd;
  }
  return out;
}

/// gamma_j = Tr((I_a (x) Gamma_j) rho) with the Kronecker factor built densely
/// and multiplied in full before the trace is taken.
inline BlochVector bloch_b_direct(const ComplexMatrix& rho, BipartiteDims dims,
                                  OpCounter* counter = nullptr) {
  detail::require_bipartite(rho, dims, "bloch_b_direct");
  require_hermitian(rho, kHermitianInputTolerance, "bloch_b_direct");
  detail::reset(counter);
  const GellMannBasis basis(dims.db);
  const auto id_a = ComplexMatrix::identity(dims.da);
  std::vector<double> flat(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto lifted = kron(id_a, basis[i], counter);
    const auto product = matmul(lifted, rho, counter);
    flat[i] = detail::real_component(trace(product, counter), "bloch_b_direct");
  }
  return BlochVector::from_flat(dims.db, flat);
}

/// gamma_j = sum_{alpha,k} Gamma_j(alpha,k) sum_beta rho(beta*db+k, beta*db+alpha),
/// valid for any generator set; the inner block sum is redone for every j.
inline BlochVector bloch_b_semi(const ComplexMatrix& rho, BipartiteDims dims,
                                OpCounter* counter = nullptr) {
  detail::require_bipartite(rho, dims, "bloch_b_semi");
  require_hermitian(rho, kHermitianInputTolerance, "bloch_b_semi");
  detail::reset(counter);
  const std::size_t da = dims.da, db = dims.db;
  const GellMannBasis basis(db);
  std::vector<double> flat(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& g = basis[i];
    Complex acc{};
    for (std::size_t alpha = 0; alpha < db; ++alpha) {
      for (std::size_t k = 0; k < db; ++k) {
        Complex block = rho(k, alpha);
        for (std::size_t beta = 1; beta < da; ++beta) block += rho(beta * db + k, beta * db + alpha);
        const Complex term = g(alpha, k) * block;
        acc = (alpha == 0 && k == 0) ? term : acc + term;
      }
    }
    flat[i] = detail::real_component(acc, "bloch_b_semi");
  }
  if (counter) {
    const std::uint64_t n = basis.size(), bb = static_cast<std::uint64_t>(db) * db;
    counter->mops += n * bb;
    counter->sops += n * (bb * (da - 1) + bb - 1);
  }
  return BlochVector::from_flat(db, flat);
}

namespace detail {

// S(l,k) = sum_beta rho(beta*db+l, beta*db+k); equals Tr_a(rho)(l,k).
inline ComplexMatrix block_sums(const ComplexMatrix& rho, BipartiteDims dims, OpCounter* counter) {
  OpCounter local;
  auto s = ptrace_a_fast(rho, dims, counter ? &local : nullptr);
  if (counter) counter->sops += local.sops;
  return s;
}

}  // namespace detail

/// Bloch vector from the Gell-Mann specializations:
///   gamma1_j = sqrt(2/(j(j+1))) (sum_{alpha<j} S(alpha,alpha) - j S(j,j)),
///   gamma2_(k,l) = 2 Re S(l,k),  gamma3_(k,l) = 2 Im S(l,k).
inline BlochVector bloch_b_fast(const ComplexMatrix& rho, BipartiteDims dims,
                                OpCounter* counter = nullptr) {
  detail::require_bipartite(rho, dims, "bloch_b_fast");
  require_hermitian(rho, kHermitianInputTolerance, "bloch_b_fast");
  detail::reset(counter);
  const std::size_t db = dims.db;
  if (db < 2) throw DimensionError("bloch_b_fast: db must be >= 2");
  const auto s = detail::block_sums(rho, dims, counter);
  BlochVector v = BlochVector::zero(db);
  double prefix = 0.0;
  for (std::size_t j = 1; j < db; ++j) {
    prefix = (j == 1) ? s(0, 0).real() : prefix + s(j - 1, j - 1).real();
    const double coeff = std::sqrt(2.0 / static_cast<double>(j * (j + 1)));
    v.gamma1[j - 1] = coeff * (prefix - static_cast<double>(j) * s(j, j).real());
  }
  const auto& pairs = upper_pairs(db);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const Complex z = s(pairs[p].l, pairs[p].k);
    v.gamma2[p] = 2.0 * z.real();
    v.gamma3[p] = 2.0 * z.imag();
  }
  if (counter) {
    counter->mops += 4 * (db - 1) + 2 * pairs.size();
    counter->sops += (db - 2) + (db - 1);
  }
  return v;
}

/// Diagonal and off-diagonal parts of rho_b = Delta + Theta.
struct BlochSplit {
  ComplexMatrix diagonal;
  ComplexMatrix off_diagonal;
};

/// rho_b from gamma^(1) only: the diagonal Delta follows from the recursion
///   xi_0 = 1/db, xi_j = gamma1_j / sqrt(2 j (j+1)),
///   Delta(0,0) = sum_k xi_k,
///   Delta(j,j) = Delta(j-1,j-1) + (j-1) xi_{j-1} - (j+1) xi_j,
/// and the off-diagonal Theta(l,k) = sum_beta rho(beta*db+l, beta*db+k) for
/// l > k, with Theta(k,l) its conjugate. gamma^(2,3) are never formed.
inline BlochSplit reduced_state_bloch_split(const ComplexMatrix& rho, BipartiteDims dims,
                                            OpCounter* counter = nullptr) {
  detail::require_bipartite(rho, dims, "reduced_state_bloch");
  require_hermitian(rho, kHermitianInputTolerance, "reduced_state_bloch");
  detail::reset(counter);
  const std::size_t da = dims.da, db = dims.db;
  const std::size_t n = rho.cols();
  std::uint64_t mops = 0, sops = 0;

  // Diagonal block sums D(alpha).
  std::vector<double> diag(db);
  for (std::size_t alpha = 0; alpha < db; ++alpha) {
    double acc = rho(alpha, alpha).real();
    for (std::size_t beta = 1; beta < da; ++beta) acc += rho(beta * db + alpha, beta * db + alpha).real();
    diag[alpha] = acc;
  }
  sops += static_cast<std::uint64_t>(db) * (da - 1);

  // gamma^(1) and xi.
  std::vector<double> xi(db);
  xi[0] = 1.0 / static_cast<double>(db);
  mops += 1;
  double prefix = 0.0;
  for (std::size_t j = 1; j < db; ++j) {
    if (j == 1) {
      prefix = diag[0];
    } else {
      prefix += diag[j - 1];
      sops += 1;
    }
    const auto jj1 = static_cast<double>(j * (j + 1));
    const double gamma = std::sqrt(2.0 / jj1) * (prefix - static_cast<double>(j) * diag[j]);
    mops += 4;
    sops += 1;
    xi[j] = gamma / std::sqrt(2.0 * jj1);
    mops += 3;
  }

  // Delta recursion.
  ComplexMatrix delta(db, db);
  double d0 = xi[0];
  for (std::size_t k = 1; k < db; ++k) d0 += xi[k];
  sops += db - 1;
  delta(0, 0) = d0;
  double prev = d0;
  for (std::size_t j = 1; j < db; ++j) {
    prev = prev + static_cast<double>(j - 1) * xi[j - 1] - static_cast<double>(j + 1) * xi[j];
    mops += 2;
    sops += 2;
    delta(j, j) = prev;
  }

  // Theta from the strictly lower block sums.
  ComplexMatrix theta(db, db);
  const Complex* src = rho.data().data();
  for (std::size_t l = 1; l < db; ++l) {
    for (std::size_t k = 0; k < l; ++k) {
      const Complex* p = src + l * n + k;
      Complex acc = p[0];
      for (std::size_t beta = 1; beta < da; ++beta) acc += p[beta * db * (n + 1)];
      theta(l, k) = acc;
      theta(k, l) = std::conj(acc);
    }
  }
  sops += static_cast<std::uint64_t>(db) * (db - 1) / 2 * (da - 1);

  if (counter) {
    counter->mops += mops;
    counter->sops += sops;
  }
  return {std::move(delta), std::move(theta)};
}

inline ComplexMatrix reduced_state_bloch(const ComplexMatrix& rho, BipartiteDims dims,
                                         OpCounter* counter = nullptr) {
  auto parts = reduced_state_bloch_split(rho, dims, counter);
  // Disjoint supports: assemble without arithmetic.
  ComplexMatrix out = std::move(parts.off_diagonal);
  for (std::size_t j = 0; j < out.rows(); ++j) out(j, j) = parts.diagonal(j, j);
  return out;
}

}  // namespace qtrace
