#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "qtrace/errors.hpp"
#include "qtrace/matrix.hpp"

namespace qtrace {

/// d x d matrix of i.i.d. standard complex normal entries, E|z|^2 = 1.
inline ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(2.0));
  ComplexMatrix g(rows, cols);
  for (auto& z : g.data()) {
    const double re = normal(gen);
    const double im = normal(gen);
    z = {re, im};
  }
  return g;
}

/// rho = G G^dagger / Tr(G G^dagger), G Ginibre. Same seed, same matrix.
inline ComplexMatrix random_density_matrix(std::size_t d, std::uint64_t seed) {
  if (d == 0) throw DimensionError("random_density_matrix: dimension must be >= 1");
  const ComplexMatrix g = random_ginibre(d, d, seed);
  ComplexMatrix rho = matmul(g, dagger(g));
  // Symmetrize away rounding so the result is Hermitian to the last bit.
  for (std::size_t i = 0; i < d; ++i) {
    rho(i, i) = rho(i, i).real();
    for (std::size_t j = i + 1; j < d; ++j) rho(j, i) = std::conj(rho(i, j));
  }
  const double tr = trace(rho).real();
  rho *= Complex(1.0 / tr);
  return rho;
}

/// Haar-distributed unitary: QR of a Ginibre matrix with R's diagonal made
/// real positive. Uses modified Gram-Schmidt with one reorthogonalization pass.
inline ComplexMatrix random_unitary(std::size_t d, std::uint64_t seed) {
  if (d == 0) throw DimensionError("random_unitary: dimension must be >= 1");
  ComplexMatrix q = random_ginibre(d, d, seed);
  for (std::size_t c = 0; c < d; ++c) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t p = 0; p < c; ++p) {
        Complex proj{};
        for (std::size_t r = 0; r < d; ++r) proj += std::conj(q(r, p)) * q(r, c);
        for (std::size_t r = 0; r < d; ++r) q(r, c) -= proj * q(r, p);
      }
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < d; ++r) norm += std::norm(q(r, c));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < d; ++r) q(r, c) /= norm;
  }
  return q;
}

/// Hermitian matrix with Ginibre-distributed entries, (G + G^dagger)/2.
inline ComplexMatrix random_hermitian(std::size_t d, std::uint64_t seed) {
  const ComplexMatrix g = random_ginibre(d, d, seed);
  ComplexMatrix h(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    h(i, i) = g(i, i).real();
    for (std::size_t j = i + 1; j < d; ++j) {
      h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

}  // namespace qtrace
