#pragma once

// Transverse-field Ising chain
//   H = -(J/2) sum_j sz_j sz_{j+1} - h sum_j sx_j
// its beta -> infinity thermal state, and the nonlocal l1 coherence of the
// two edge spins.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtrace/bipartite.hpp"
#include "qtrace/errors.hpp"
#include "qtrace/matrix.hpp"
#include "qtrace/multipartite.hpp"

namespace qtrace {

inline constexpr std::size_t kDefaultMaxSpins = 12;

struct IsingParams {
  std::size_t n = 2;
  double h = 0.0;
  double J = 1.0;
  std::size_t max_spins = kDefaultMaxSpins;  // global dimension limit 2^max_spins

  void validate() const {
    if (n < 2) throw DimensionError("IsingParams: need at least 2 spins");
    if (n > max_spins) {
      throw DimensionError("IsingParams: n = " + std::to_string(n) + " exceeds the limit of " +
                           std::to_string(max_spins) + " spins");
    }
  }
};

class EigenSolverError : public std::runtime_error {
public:
  explicit EigenSolverError(const std::string& what) : std::runtime_error(what) {}
};

inline ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline ComplexMatrix pauli_y() { return {{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}}; }
inline ComplexMatrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

/// I (x) ... (x) op_site (x) ... (x) I over n qubits; site 0 is the leftmost
/// (most significant) factor.
inline ComplexMatrix embed_site_operator(const ComplexMatrix& op, std::size_t site, std::size_t n) {
  ComplexMatrix out = ComplexMatrix::identity(1);
  const auto id = ComplexMatrix::identity(2);
  for (std::size_t s = 0; s < n; ++s) out = kron(out, s == site ? op : id);
  return out;
}

inline ComplexMatrix ising_hamiltonian(const IsingParams& p) {
  p.validate();
  const std::size_t dim = std::size_t{1} << p.n;
  ComplexMatrix h(dim, dim);
  const auto sz = pauli_z();
  const auto sx = pauli_x();
  const auto id = ComplexMatrix::identity(2);
  for (std::size_t j = 0; j + 1 < p.n; ++j) {
    ComplexMatrix term = ComplexMatrix::identity(1);
    for (std::size_t s = 0; s < p.n; ++s) term = kron(term, (s == j || s == j + 1) ? sz : id);
    h += term * Complex(-p.J / 2.0);
  }
  for (std::size_t j = 0; j < p.n; ++j) {
    h += embed_site_operator(sx, j, p.n) * Complex(-p.h);
  }
  return h;
}

namespace detail {

template <typename EigenMatrix>
ComplexMatrix ground_projector(const EigenMatrix& m, double degeneracy_tol) {
  Eigen::SelfAdjointEigenSolver<EigenMatrix> solver(m);
  if (solver.info() != Eigen::Success) throw EigenSolverError("ground_state_density: eigensolver failed");
  const auto& evals = solver.eigenvalues();
  const auto& evecs = solver.eigenvectors();
  const Eigen::Index n = evals.size();
  const double norm = std::max(std::abs(evals(0)), std::abs(evals(n - 1)));
  const double tol = degeneracy_tol >= 0.0 ? degeneracy_tol : 1e-10 * norm;

  std::vector<Eigen::Index> ground;
  for (Eigen::Index i = 0; i < n && evals(i) <= evals(0) + tol; ++i) ground.push_back(i);

  const auto dim = static_cast<std::size_t>(n);
  ComplexMatrix rho(dim, dim);
  const double weight = 1.0 / static_cast<double>(ground.size());
  for (auto g : ground) {
    for (std::size_t r = 0; r < dim; ++r) {
      const Complex vr = evecs(static_cast<Eigen::Index>(r), g);
      if (vr == Complex{}) continue;
      for (std::size_t c = 0; c < dim; ++c) {
        rho(r, c) += weight * vr * std::conj(Complex(evecs(static_cast<Eigen::Index>(c), g)));
      }
    }
  }
  return rho;
}

}  // namespace detail

/// beta -> infinity limit of exp(-beta H)/Tr exp(-beta H): the normalized
/// projector onto every eigenvector within `degeneracy_tol` of the lowest
/// eigenvalue. A negative tolerance selects 1e-10 * ||H||_2.
inline ComplexMatrix ground_state_density(const ComplexMatrix& hamiltonian, double degeneracy_tol = -1.0) {
  require_hermitian(hamiltonian, kHermitianInputTolerance, "ground_state_density");
  const auto n = static_cast<Eigen::Index>(hamiltonian.rows());
  bool real = true;
  for (const auto& z : hamiltonian.data()) {
    if (z.imag() != 0.0) {
      real = false;
      break;
    }
  }
  if (real) {
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = hamiltonian(i, j).real();
    }
    return detail::ground_projector(m, degeneracy_tol);
  }
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = hamiltonian(i, j);
  }
  return detail::ground_projector(m, degeneracy_tol);
}

/// l1-norm coherence: sum of |rho(j,k)| over j != k.
inline double l1_coherence(const ComplexMatrix& rho) {
  require_square(rho, "l1_coherence");
  double c = 0.0;
  for (std::size_t j = 0; j < rho.rows(); ++j) {
    for (std::size_t k = 0; k < rho.cols(); ++k) {
      if (j != k) c += std::abs(rho(j, k));
    }
  }
  return c;
}

/// Reduced state of the first and last qubit of an n-qubit operator.
inline ComplexMatrix edge_state(const ComplexMatrix& rho_full, std::size_t n,
                                TraceMethod method = TraceMethod::fast) {
  if (n < 2 || n > 8 * sizeof(std::size_t) - 1 || rho_full.rows() != (std::size_t{1} << n) ||
      !rho_full.is_square()) {
    throw DimensionError("edge_state: operator is " +
                         detail::shape_str(rho_full.rows(), rho_full.cols()) + ", expected 2^" +
                         std::to_string(n));
  }
  if (n == 2) return rho_full;
  std::vector<std::size_t> middle;
  for (std::size_t s = 1; s + 1 < n; ++s) middle.push_back(s);
  const SystemDims dims(std::vector<std::size_t>(n, 2));
  return partial_trace(rho_full, dims, TraceMask::tracing(n, middle), TraceOptions{method});
}

/// C(rho_1n) - C(rho_1) - C(rho_n) for the edge spins of an n-qubit state.
inline double nlqc_edge(const ComplexMatrix& rho_full, std::size_t n,
                        TraceMethod method = TraceMethod::fast) {
  const auto rho_1n = edge_state(rho_full, n, method);
  const BipartiteDims two{2, 2};
  const auto rho_1 = method == TraceMethod::direct ? ptrace_b_direct(rho_1n, two) : ptrace_b_fast(rho_1n, two);
  const auto rho_n = method == TraceMethod::direct ? ptrace_a_direct(rho_1n, two) : ptrace_a_fast(rho_1n, two);
  return l1_coherence(rho_1n) - (l1_coherence(rho_1) + l1_coherence(rho_n));
}

/// dy/dx on a strictly increasing grid: central differences inside,
/// one-sided at the ends.
inline std::vector<double> finite_difference(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DimensionError("finite_difference: x and y differ in length");
  if (x.size() < 3) throw DimensionError("finite_difference: need at least 3 points");
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) throw DimensionError("finite_difference: grid must be strictly increasing");
  }
  const std::size_t m = x.size();
  std::vector<double> dy(m);
  dy[0] = (y[1] - y[0]) / (x[1] - x[0]);
  for (std::size_t i = 1; i + 1 < m; ++i) dy[i] = (y[i + 1] - y[i - 1]) / (x[i + 1] - x[i - 1]);
  dy[m - 1] = (y[m - 1] - y[m - 2]) / (x[m - 1] - x[m - 2]);
  return dy;
}

struct SweepRow {
  double h;
  double nlqc;
  double dnlqc_dh;
};

/// Ground-state edge NLQC over a field grid, with its derivative in h.
inline std::vector<SweepRow> nlqc_sweep(std::size_t n, const std::vector<double>& h_values,
                                        TraceMethod method = TraceMethod::fast, double J = 1.0,
                                        std::size_t max_spins = kDefaultMaxSpins) {
  IsingParams params{n, 0.0, J, max_spins};
  params.validate();
  if (h_values.size() < 3) throw DimensionError("nlqc_sweep: need at least 3 field values");
  std::vector<double> values;
  values.reserve(h_values.size());
  for (double h : h_values) {
    params.h = h;
    values.push_back(nlqc_edge(ground_state_density(ising_hamiltonian(params)), n, method));
  }
  const auto deriv = finite_difference(h_values, values);
  std::vector<SweepRow> rows;
  rows.reserve(h_values.size());
  for (std::size_t i = 0; i < h_values.size(); ++i) rows.push_back({h_values[i], values[i], deriv[i]});
  return rows;
}

/// `steps` evenly spaced values from lo to hi inclusive.
inline std::vector<double> linspace(double lo, double hi, std::size_t steps) {
  if (steps < 2) throw DimensionError("linspace: need at least 2 points");
  std::vector<double> out(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  return out;
}

}  // namespace qtrace
