// qtrace command-line front end: ptrace, bench, ising, generators.
//
// Exit codes: 0 ok, 2 usage or malformed input, 3 dimension mismatch,
// 4 non-Hermitian input under --hermitian, 5 output not writable.

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "qtrace/qtrace.hpp"

namespace fs = std::filesystem;
using namespace qtrace;

namespace {

enum Exit : int { kOk = 0, kUsage = 2, kDims = 3, kNotHermitian = 4, kIo = 5 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::size_t parse_size(std::string_view tok, std::string_view what) {
  std::size_t v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
    throw UsageError(std::string(what) + ": '" + std::string(tok) + "' is not a non-negative integer");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::size_t> parse_list(std::string_view s, std::string_view what) {
  std::vector<std::size_t> out;
  for (auto tok : split(s, ',')) out.push_back(parse_size(tok, what));
  return out;
}

std::string fmt(double x) { return qtrace::detail::format_double(x); }

void write_or_throw(const fs::path& path, const std::string& contents) {
  try {
    write_file_atomic(path, contents);
  } catch (const std::exception& e) {
    throw IoError(e.what());
  }
}

// ---- ptrace ---------------------------------------------------------------

struct PtraceArgs {
  std::string in, dims, trace, out, method = "fast";
  bool hermitian = false;
};

int run_ptrace(const PtraceArgs& a) {
  const auto dims_v = parse_list(a.dims, "--dims");
  const auto trace_v = parse_list(a.trace, "--trace");
  TraceMethod method;
  if (a.method == "fast") {
    method = TraceMethod::fast;
  } else if (a.method == "direct") {
    method = TraceMethod::direct;
  } else {
    throw UsageError("--method must be 'direct' or 'fast'");
  }

  // 1-based on the command line, 0-based in the library.
  std::vector<std::size_t> traced;
  for (auto s : trace_v) {
    if (s == 0) throw UsageError("--trace: subsystem indices start at 1");
    if (s > dims_v.size()) {
      throw DimensionError("--trace: subsystem " + std::to_string(s) + " but only " +
                           std::to_string(dims_v.size()) + " subsystems");
    }
    traced.push_back(s - 1);
  }

  const auto rho = read_qmat(fs::path(a.in));
  const SystemDims dims(dims_v);
  TraceOptions opts;
  opts.method = method;
  opts.hermitian = a.hermitian;
  const auto reduced = partial_trace(rho, dims, TraceMask::tracing(dims.count(), traced), opts);
  write_or_throw(a.out, to_qmat_string(reduced));
  return kOk;
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
  std::string methods = "direct_b,fast_b";
  std::string da_range;
  std::string da_list;
  std::size_t db = 0;
  bool equal_dims = false;
  std::size_t reps = 3;
  std::uint64_t seed = 1;
};

std::vector<std::size_t> parse_range(std::string_view s) {
  const auto parts = split(s, ':');
  if (parts.size() < 2 || parts.size() > 3) throw UsageError("--da-range must be a:b or a:b:step");
  const auto lo = parse_size(parts[0], "--da-range");
  const auto hi = parse_size(parts[1], "--da-range");
  const auto step = parts.size() == 3 ? parse_size(parts[2], "--da-range") : 1;
  if (lo == 0 || hi < lo || step == 0) throw UsageError("--da-range: need 1 <= a <= b and step >= 1");
  std::vector<std::size_t> out;
  for (std::size_t d = lo; d <= hi; d += step) out.push_back(d);
  return out;
}

int run_bench(const BenchArgs& a) {
  std::vector<Method> methods;
  for (auto tok : split(a.methods, ',')) {
    const auto m = parse_method(tok);
    if (!m) throw UsageError("unknown method '" + std::string(tok) + "'");
    methods.push_back(*m);
  }
  if (a.da_range.empty() == a.da_list.empty()) throw UsageError("give exactly one of --da-range, --da-list");
  const auto das = a.da_range.empty() ? parse_list(a.da_list, "--da-list") : parse_range(a.da_range);
  for (auto d : das) {
    if (d == 0) throw UsageError("--da-list: dimensions must be >= 1");
  }
  if (!a.equal_dims && a.db == 0) throw UsageError("give --equal-dims or --db");
  if (a.reps == 0) throw UsageError("--reps must be >= 1");

  TimingOptions opts;
  opts.repetitions = a.reps;
  std::ostringstream csv;
  csv << "method,da,db,wall_seconds,mops,sops,reps\n";
  for (auto m : methods) {
    for (auto da : das) {
      const std::size_t db = a.equal_dims ? da : a.db;
      if (m == Method::bloch_gellmann && db < 2) throw DimensionError("bloch_gellmann needs db >= 2");
      const auto r = bench_method(m, da, db, a.seed, opts);
      csv << method_name(m) << ',' << da << ',' << db << ',' << fmt(r.wall_seconds) << ','
          << r.predicted_mops << ',' << r.predicted_sops << ',' << r.repetitions << '\n';
    }
  }
  std::cout << csv.str();
  return kOk;
}

// ---- ising ----------------------------------------------------------------

struct IsingArgs {
  std::size_t n = 4;
  double h_min = 0.2, h_max = 2.0;
  std::size_t steps = 40;
  std::string out;
  bool time_compare = false;
  std::string time_out;
  std::size_t time_from = 2;
  double time_h = 0.5;
  std::size_t reps = 3;
  std::size_t max_spins = kDefaultMaxSpins;
};

int run_ising(const IsingArgs& a) {
  if (a.n < 2) throw UsageError("--n must be >= 2");
  IsingParams{a.n, 0.0, 1.0, a.max_spins}.validate();
  if (a.steps < 3) throw UsageError("--steps must be >= 3");
  if (!(a.h_max > a.h_min)) throw UsageError("--h-max must exceed --h-min");

  const auto rows = nlqc_sweep(a.n, linspace(a.h_min, a.h_max, a.steps), TraceMethod::fast, 1.0, a.max_spins);
  std::ostringstream csv;
  csv << "h,nlqc,dnlqc_dh\n";
  for (const auto& r : rows) csv << fmt(r.h) << ',' << fmt(r.nlqc) << ',' << fmt(r.dnlqc_dh) << '\n';

  std::string timing;
  fs::path timing_path;
  if (a.time_compare) {
    timing_path = a.time_out.empty() ? fs::path(a.out).replace_extension().string() + "_timing.csv" : a.time_out;
    TimingOptions opts;
    opts.repetitions = a.reps;
    std::ostringstream t;
    t << "n,t_direct,t_opt\n";
    for (std::size_t n = std::max<std::size_t>(a.time_from, 2); n <= a.n; ++n) {
      const auto r = time_nlqc_paths(n, a.time_h, opts, a.max_spins);
      t << r.n << ',' << fmt(r.t_direct) << ',' << fmt(r.t_opt) << '\n';
    }
    timing = t.str();
  }

  write_or_throw(a.out, csv.str());
  if (a.time_compare) write_or_throw(timing_path, timing);
  return kOk;
}

// ---- generators -----------------------------------------------------------

struct GeneratorArgs {
  std::size_t d = 2;
  std::string out_dir;
};

int run_generators(const GeneratorArgs& a) {
  if (a.d < 2) throw UsageError("--d must be >= 2");
  const GellMannBasis basis(a.d);
  const fs::path dir(a.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create directory " + dir.string());

  std::ostringstream manifest;
  std::size_t index = 0;
  auto emit = [&](const std::string& name, const ComplexMatrix& g) {
    write_or_throw(dir / name, to_qmat_string(g));
    manifest << ++index << ' ' << name << '\n';
  };
  for (std::size_t j = 0; j < basis.diagonal().size(); ++j) {
    emit("g1_" + std::to_string(j + 1) + ".qmat", basis.diagonal()[j]);
  }
  const auto& pairs = basis.pairs();
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    emit("g2_" + std::to_string(pairs[p].k + 1) + "_" + std::to_string(pairs[p].l + 1) + ".qmat",
         basis.symmetric()[p]);
  }
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    emit("g3_" + std::to_string(pairs[p].k + 1) + "_" + std::to_string(pairs[p].l + 1) + ".qmat",
         basis.antisymmetric()[p]);
  }
  write_or_throw(dir / "manifest.txt", manifest.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial traces, Bloch reconstruction and the Ising edge-coherence experiment"};
  app.require_subcommand(1);

  PtraceArgs pa;
  auto* ptrace = app.add_subcommand("ptrace", "Trace out subsystems of a QMAT operator");
  ptrace->add_option("--in", pa.in, "Input QMAT file")->required();
  ptrace->add_option("--dims", pa.dims, "Subsystem dimensions, e.g. 2,3,2")->required();
  ptrace->add_option("--trace", pa.trace, "1-based subsystems to trace out, e.g. 2")->required();
  ptrace->add_option("--out", pa.out, "Output QMAT file")->required();
  ptrace->add_option("--method", pa.method, "direct or fast")->capture_default_str();
  ptrace->add_flag("--hermitian", pa.hermitian, "Input is Hermitian; checked, then the triangular path is used");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Time methods on the maximally mixed state; CSV to stdout");
  bench->add_option("--methods", ba.methods, "Comma-separated method names")->capture_default_str();
  bench->add_option("--da-range", ba.da_range, "a:b or a:b:step");
  bench->add_option("--da-list", ba.da_list, "Comma-separated da values");
  bench->add_option("--db", ba.db, "Fixed db (without --equal-dims)");
  bench->add_flag("--equal-dims", ba.equal_dims, "Use db = da");
  bench->add_option("--reps", ba.reps, "Repetitions (minimum is reported)")->capture_default_str();
  bench->add_option("--seed", ba.seed, "Seed for random bases")->capture_default_str();

  IsingArgs ia;
  auto* ising = app.add_subcommand("ising", "Edge NLQC of the transverse-field Ising ground state");
  ising->add_option("--n", ia.n, "Number of spins")->required();
  ising->add_option("--h-min", ia.h_min)->capture_default_str();
  ising->add_option("--h-max", ia.h_max)->capture_default_str();
  ising->add_option("--steps", ia.steps, "Grid points")->capture_default_str();
  ising->add_option("--out", ia.out, "Sweep CSV path")->required();
  ising->add_flag("--time-compare", ia.time_compare, "Also time direct vs fast trace paths for each n");
  ising->add_option("--time-out", ia.time_out, "Timing CSV path (default <out>_timing.csv)");
  ising->add_option("--time-from", ia.time_from, "Smallest n in the timing table")->capture_default_str();
  ising->add_option("--time-h", ia.time_h, "Field used for timing")->capture_default_str();
  ising->add_option("--reps", ia.reps, "Timing repetitions")->capture_default_str();
  ising->add_option("--max-spins", ia.max_spins, "Largest accepted n")->capture_default_str();

  GeneratorArgs ga;
  auto* gens = app.add_subcommand("generators", "Write the SU(d) generators as QMAT files");
  gens->add_option("--d", ga.d, "Dimension")->required();
  gens->add_option("--out-dir", ga.out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*ptrace) return run_ptrace(pa);
    if (*bench) return run_bench(ba);
    if (*ising) return run_ising(ia);
    if (*gens) return run_generators(ga);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NotHermitianError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNotHermitian;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDims;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
