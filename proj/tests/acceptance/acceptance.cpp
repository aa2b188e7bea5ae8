// Acceptance run: one PASS/FAIL line per criterion, then a summary.
// The process exits 0 when every check ran to completion, whatever the
// verdicts; a nonzero exit means a check crashed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "../test_support.hpp"

using namespace qtrace;
using qtrace::testing::kron_basis_partial_trace;

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// ---------------------------------------------------------------------------

Verdict bipartite_equivalence() {
  const auto t0 = clock_type::now();
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const std::size_t da = 2 + s % 7, db = 2 + (s / 7) % 7;
    const BipartiteDims dims{da, db};
    const auto o = random_ginibre(da * db, da * db, s);
    const auto ref = ptrace_b_fast(o, dims);
    worst = std::max(worst, max_abs_diff(ptrace_b_direct(o, dims), ref));
    worst = std::max(worst, max_abs_diff(ptrace_b_semi(o, dims, ComplexMatrix::identity(db)), ref));
    worst = std::max(worst, max_abs_diff(ptrace_b_semi(o, dims, random_unitary(db, 10000 + s)), ref));
    const auto h = random_hermitian(da * db, 20000 + s);
    worst = std::max(worst, max_abs_diff(ptrace_b_fast_hermitian(h, dims), ptrace_b_fast(h, dims)));
    worst = std::max(worst, max_abs_diff(ptrace_b_fast_hermitian(h, dims), ptrace_b_direct(h, dims)));
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-10 && t < 30.0, fmt("max entry diff %.3g (tol 1e-10)", worst) + fmt(", %.2f s (limit 30 s)", t)};
}

void for_each_dims_list(std::size_t max_product, std::size_t max_parts,
                        const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t product) {
    if (!cur.empty()) fn(cur);
    if (cur.size() == max_parts) return;
    for (std::size_t d = 1; product * d <= max_product; ++d) {
      cur.push_back(d);
      rec(product * d);
      cur.pop_back();
    }
  };
  rec(1);
}

Verdict multipartite_equivalence() {
  const auto t0 = clock_type::now();
  double worst = 0.0;
  std::size_t lists = 0, cases = 0;
  for_each_dims_list(64, 4, [&](const std::vector<std::size_t>& dv) {
    ++lists;
    const SystemDims dims(dv);
    const auto rho = random_density_matrix(dims.total(), lists);
    const std::size_t n = dv.size();
    for (std::size_t bits = 0; bits + 1 < (std::size_t{1} << n); ++bits) {
      std::vector<Party> flags;
      std::vector<bool> traced;
      for (std::size_t s = 0; s < n; ++s) {
        const bool t = (bits >> s) & 1u;
        flags.push_back(t ? Party::trace : Party::keep);
        traced.push_back(t);
      }
      const TraceMask mask(flags);
      const auto oracle = kron_basis_partial_trace(rho, dv, traced);
      worst = std::max(worst, max_abs_diff(partial_trace(rho, dims, mask), oracle));
      worst = std::max(worst, max_abs_diff(partial_trace(rho, dims, mask, {TraceMethod::fast, true}), oracle));
      ++cases;
    }
  });
  const double t = seconds_since(t0);
  return {worst <= 1e-11 && t < 60.0,
          std::to_string(lists) + " dims lists, " + std::to_string(cases) + " masks, " +
              fmt("max entry diff %.3g (tol 1e-11)", worst) + fmt(", %.2f s (limit 60 s)", t)};
}

Verdict uniqueness_identity() {
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const std::size_t da = 1 + s % 6, db = 1 + (s / 6) % 6;
    const auto a = random_ginibre(da, da, 2 * s);
    const auto o = random_ginibre(da * db, da * db, 2 * s + 1);
    const auto lhs = trace(kron(a, ComplexMatrix::identity(db)) * o);
    worst = std::max(worst, std::abs(lhs - trace(a * ptrace_b_fast(o, {da, db}))));
    worst = std::max(worst, std::abs(lhs - trace(a * ptrace_b_direct(o, {da, db}))));
  }
  return {worst <= 1e-10, fmt("max |difference| %.3g over 100 pairs (tol 1e-10)", worst)};
}

Verdict counter_exactness() {
  std::size_t checked = 0, mismatches = 0;
  auto same = [](const OpCounter& c, const CostEstimate& e) { return c.mops == e.mops && c.sops == e.sops; };
  for (std::size_t da = 1; da <= 6; ++da) {
    for (std::size_t db = 1; db <= 6; ++db) {
      const auto id = ComplexMatrix::identity(da * db);
      OpCounter c;
      ptrace_b_fast(id, {da, db}, &c);
      mismatches += !same(c, cost_estimate(Method::fast_b, da, db));
      ptrace_b_fast_hermitian(id, {da, db}, &c);
      mismatches += !same(c, cost_estimate(Method::fast_b_hermitian, da, db));
      checked += 2;
      for (std::size_t dc = 1; dc <= 6; ++dc) {
        ptrace_inner(ComplexMatrix::identity(da * db * dc), {da, db, dc}, &c);
        mismatches += !same(c, cost_estimate(Method::inner_fast, da, db, dc));
        ++checked;
      }
    }
  }
  return {mismatches == 0, std::to_string(checked) + " (method, dims) pairs, " + std::to_string(mismatches) +
                               " mismatches (integer equality)"};
}

Verdict bloch_pipeline() {
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const std::size_t da = 2 + s % 7, db = 2 + (s / 7) % 7;
    const auto rho = random_density_matrix(da * db, s);
    // The Bloch pipeline reconstructs the b-party marginal Tr_a(rho).
    worst = std::max(worst, max_abs_diff(reduced_state_bloch(rho, {da, db}), ptrace_a_fast(rho, {da, db})));
  }
  double ortho = 0.0;
  for (std::size_t d = 2; d <= 8; ++d) {
    const GellMannBasis g(d);
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = 0; j < g.size(); ++j) {
        ortho = std::max(ortho, std::abs(trace(g[i] * g[j]) - Complex(i == j ? 2.0 : 0.0)));
      }
    }
  }
  return {worst <= 1e-11 && ortho <= 1e-12,
          fmt("marginal max diff %.3g (tol 1e-11)", worst) + fmt(", orthonormality defect %.3g (tol 1e-12)", ortho)};
}

Verdict scaling() {
  const auto t0 = clock_type::now();
  const std::vector<std::size_t> ds{2, 4, 8, 16, 24, 32};
  TimingOptions opts;
  opts.repetitions = 5;
  std::vector<double> x, td, tf;
  for (auto d : ds) {
    x.push_back(static_cast<double>(d));
    td.push_back(bench_method(Method::direct_b, d, d, 1, opts).wall_seconds);
    tf.push_back(bench_method(Method::fast_b, d, d, 1, opts).wall_seconds);
  }
  const double sd = loglog_slope(x, td), sf = loglog_slope(x, tf);
  const double ratio = sd / sf;
  const double t = seconds_since(t0);
  return {ratio >= 2.5 && ratio <= 5.5 && t < 300.0,
          fmt("slope direct %.3f", sd) + fmt(", fast %.3f", sf) + fmt(", ratio %.3f (want [2.5, 5.5])", ratio) +
              fmt(", %.1f s (limit 300 s)", t)};
}

Verdict ising_experiment() {
  const auto t0 = clock_type::now();
  const auto h = linspace(0.2, 2.0, 40);
  bool finite = true, smooth = true;
  double path_diff = 0.0;
  std::vector<double> argmin, argmax;
  std::string shape;
  for (std::size_t n : {4, 6, 8}) {
    const auto rows = nlqc_sweep(n, h, TraceMethod::fast);
    std::vector<double> y;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      finite = finite && std::isfinite(rows[i].nlqc) && std::isfinite(rows[i].dnlqc_dh);
      y.push_back(rows[i].nlqc);
      const auto rho = ground_state_density(ising_hamiltonian({n, h[i]}));
      path_diff = std::max(path_diff, std::abs(nlqc_edge(rho, n, TraceMethod::direct) - rows[i].nlqc));
    }
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    double second = 0.0;
    for (std::size_t i = 1; i + 1 < y.size(); ++i) second = std::max(second, std::abs(y[i + 1] - 2 * y[i] + y[i - 1]));
    smooth = smooth && second <= 0.1 * (*hi - *lo);
    auto by_slope = [](const SweepRow& a, const SweepRow& b) { return a.dnlqc_dh < b.dnlqc_dh; };
    argmin.push_back(std::min_element(rows.begin(), rows.end(), by_slope)->h);
    argmax.push_back(std::max_element(rows.begin(), rows.end(), by_slope)->h);
  }
  bool toward_half = true;
  for (std::size_t i = 1; i < argmin.size(); ++i) {
    toward_half = toward_half && std::abs(argmin[i] - 0.5) < std::abs(argmin[i - 1] - 0.5);
  }

  TimingOptions opts;
  opts.repetitions = 3;
  std::vector<double> gap;
  std::string timing;
  for (std::size_t n : {8, 9, 10}) {
    const auto r = time_nlqc_paths(n, 0.5, opts);
    gap.push_back(r.t_direct - r.t_opt);
    timing += fmt(" %.3g", gap.back());
  }
  const bool timing_ok = gap[0] > 0 && gap[1] > gap[0] && gap[2] > gap[1];
  const double t = seconds_since(t0);

  std::string d = std::string("finite ") + (finite ? "yes" : "no") + ", smooth " + (smooth ? "yes" : "no") +
                  fmt(", path diff %.3g (tol 1e-10)", path_diff) + ", argmin dNLQC/dh at n=4,6,8:" +
                  fmt(" %.3f", argmin[0]) + fmt(" %.3f", argmin[1]) + fmt(" %.3f", argmin[2]) +
                  (toward_half ? " (moves toward 0.5)" : " (does not move toward 0.5)") + "; argmax:" +
                  fmt(" %.3f", argmax[0]) + fmt(" %.3f", argmax[1]) + fmt(" %.3f", argmax[2]) +
                  "; t_direct - t_opt at n=8,9,10 [s]:" + timing + (timing_ok ? " (increasing)" : " (not increasing)") +
                  fmt("; %.1f s (limit 600 s)", t);
  return {finite && smooth && path_diff <= 1e-10 && toward_half && timing_ok && t < 600.0, d};
}

Verdict degenerate_ground_state() {
  const auto rho = ground_state_density(ising_hamiltonian({2, 0.0}));
  const double diff = max_abs_diff(rho, ComplexMatrix::diagonal({0.5, 0.0, 0.0, 0.5}));
  return {diff <= 1e-12, fmt("max entry diff %.3g from (|00><00| + |11><11|)/2 (tol 1e-12)", diff)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Verdict (*)()>> checks{
      {"bipartite method equivalence", bipartite_equivalence},
      {"multipartite brute-force equivalence", multipartite_equivalence},
      {"uniqueness identity", uniqueness_identity},
      {"counter exactness", counter_exactness},
      {"Bloch pipeline", bloch_pipeline},
      {"direct/fast scaling ratio", scaling},
      {"Ising edge-coherence experiment", ising_experiment},
      {"degenerate ground state", degenerate_ground_state},
  };
  int passed = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto v = checks[i].second();
    passed += v.pass;
    std::printf("[%zu] %s  %s: %s\n", i + 1, v.pass ? "PASS" : "FAIL", checks[i].first, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("acceptance: %d/%zu criteria pass\n", passed, checks.size());
  return 0;
}
