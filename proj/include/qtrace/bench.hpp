#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "qtrace/bipartite.hpp"
#include "qtrace/bloch.hpp"
#include "qtrace/cost_model.hpp"
#include "qtrace/ising.hpp"
#include "qtrace/matrix.hpp"
#include "qtrace/multipartite.hpp"
#include "qtrace/random.hpp"

namespace qtrace {

struct BenchRecord {
  Method method;
  std::vector<std::size_t> dims;
  double wall_seconds;  // minimum over repetitions, per call
  std::uint64_t predicted_mops;
  std::uint64_t predicted_sops;
  std::size_t repetitions;
};

struct TimingOptions {
  std::size_t repetitions = 3;
  // Fast calls are repeated inside one timed batch until the batch lasts
  // at least this long; the per-call time is batch / iterations.
  double min_batch_seconds = 2e-3;
};

/// Minimum over repetitions of the per-call wall time of `fn`.
inline double time_min_per_call(const std::function<void()>& fn, const TimingOptions& opts = {}) {
  using clock = std::chrono::steady_clock;
  const auto seconds_since = [](clock::time_point t0) {
    return std::chrono::duration<double>(clock::now() - t0).count();
  };

  std::size_t iters = 1;
  double batch = 0.0;
  for (;;) {
    const auto t0 = clock::now();
    for (std::size_t i = 0; i < iters; ++i) fn();
    batch = seconds_since(t0);
    if (batch >= opts.min_batch_seconds || iters >= (std::size_t{1} << 30)) break;
    const double scale = batch > 0.0 ? 1.5 * opts.min_batch_seconds / batch : 16.0;
    iters = std::max(iters * 2, static_cast<std::size_t>(static_cast<double>(iters) * std::min(scale, 1e3)));
  }

  double best = batch / static_cast<double>(iters);
  for (std::size_t r = 1; r < std::max<std::size_t>(opts.repetitions, 1); ++r) {
    const auto t0 = clock::now();
    for (std::size_t i = 0; i < iters; ++i) fn();
    best = std::min(best, seconds_since(t0) / static_cast<double>(iters));
  }
  if (!(best > 0.0)) best = std::numeric_limits<double>::min();
  return best;
}

namespace detail {
// Keeps results observable so timed calls are not optimized away.
inline volatile double bench_sink = 0.0;
inline void consume(const ComplexMatrix& m) { bench_sink = bench_sink + m.data()[0].real(); }
inline void consume(const BlochVector& v) { bench_sink = bench_sink + (v.gamma1.empty() ? 0.0 : v.gamma1[0]); }
}  // namespace detail

/// Times one bipartite method on the maximally mixed state I/(da*db).
/// Inner (tripartite) methods are timed with dc = 1.
inline BenchRecord bench_method(Method method, std::size_t da, std::size_t db, std::uint64_t seed,
                                const TimingOptions& opts = {}) {
  const BipartiteDims dims{da, db};
  const ComplexMatrix rho = ComplexMatrix::identity(dims.total()) * Complex(1.0 / static_cast<double>(dims.total()));
  const TripartiteDims tdims{da, db, 1};
  std::function<void()> fn;
  switch (method) {
    case Method::direct_b: fn = [&] { detail::consume(ptrace_b_direct(rho, dims)); }; break;
    case Method::semi_b: {
      auto basis = std::make_shared<ComplexMatrix>(random_unitary(db, seed));
      fn = [&, basis] { detail::consume(ptrace_b_semi(rho, dims, *basis)); };
      break;
    }
    case Method::fast_b: fn = [&] { detail::consume(ptrace_b_fast(rho, dims)); }; break;
    case Method::fast_b_hermitian: fn = [&] { detail::consume(ptrace_b_fast_hermitian(rho, dims)); }; break;
    case Method::inner_direct: fn = [&] { detail::consume(ptrace_inner_direct(rho, tdims)); }; break;
    case Method::inner_fast: fn = [&] { detail::consume(ptrace_inner(rho, tdims)); }; break;
    case Method::inner_fast_hermitian: fn = [&] { detail::consume(ptrace_inner_hermitian(rho, tdims)); }; break;
    case Method::bloch_direct:
      fn = [&] {
        const auto v = bloch_b_direct(rho, dims);
        detail::consume(state_from_bloch(v, GellMannBasis(db)));
      };
      break;
    case Method::bloch_semi:
      fn = [&] {
        const auto v = bloch_b_semi(rho, dims);
        detail::consume(state_from_bloch(v, GellMannBasis(db)));
      };
      break;
    case Method::bloch_gellmann: fn = [&] { detail::consume(reduced_state_bloch(rho, dims)); }; break;
  }
  const double t = time_min_per_call(fn, opts);
  const auto cost = is_inner(method) ? cost_estimate(method, da, db, 1) : cost_estimate(method, da, db);
  return {method, {da, db}, t, cost.mops, cost.sops, std::max<std::size_t>(opts.repetitions, 1)};
}

struct NlqcTiming {
  std::size_t n;
  double t_direct;
  double t_opt;
};

/// Wall time of the edge-NLQC evaluation for the n-spin ground state at
/// field h, with the literal-definition and the index-formula partial traces.
inline NlqcTiming time_nlqc_paths(std::size_t n, double h, const TimingOptions& opts = {},
                                  std::size_t max_spins = kDefaultMaxSpins) {
  const auto rho = ground_state_density(ising_hamiltonian({n, h, 1.0, max_spins}));
  const double t_direct = time_min_per_call([&] { detail::bench_sink = nlqc_edge(rho, n, TraceMethod::direct); }, opts);
  const double t_opt = time_min_per_call([&] { detail::bench_sink = nlqc_edge(rho, n, TraceMethod::fast); }, opts);
  return {n, t_direct, t_opt};
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DimensionError("loglog_slope: need >= 2 paired points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto m = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace qtrace
