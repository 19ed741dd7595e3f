#pragma once

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "appell/asym.hpp"
#include "appell/attractor.hpp"
#include "appell/bernoulli.hpp"
#include "appell/cli/config.hpp"
#include "appell/cli/parse.hpp"
#include "appell/cli/table.hpp"
#include "appell/contour.hpp"
#include "appell/core.hpp"
#include "appell/sdrep.hpp"

namespace appell::cli {

enum ExitCode { kOk = 0, kToleranceViolated = 1, kInvalidInput = 2 };

/// Worker count from APPELL_THREADS, default the logical core count.
inline unsigned thread_count() {
  if (const char* env = std::getenv("APPELL_THREADS")) {
    const auto v = parse_int_list(env);
    if (v.size() != 1 || v[0] < 1) throw input_error("APPELL_THREADS must be a positive integer");
    return static_cast<unsigned>(v[0]);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// fn(i) for i in [0, count); results are written by index, so order never depends on scheduling.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, const Fn& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  for (auto& th : pool) th.join();
}

namespace detail {

inline LogComplex oracle(const GeneratingFunction& g, int n, cplx x) {
  if (g.kind() == GeneratingFunction::Kind::bernoulli) return bernoulli_oracle_rescaled(n, x);
  return eval_rescaled_direct(g, n, x);
}

inline void emit(const RunConfig& cfg, const Table& t, std::ostream& fallback) {
  if (cfg.out.empty() || cfg.out == "-") {
    write_table(fallback, t, cfg.format);
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw input_error("cannot open " + cfg.out);
  write_table(f, t, cfg.format);
}

inline void write_file(const std::filesystem::path& p, const Table& t, Format f) {
  std::ofstream os(p);
  if (!os) throw input_error("cannot open " + p.string());
  write_table(os, t, f);
}

/// Least-squares slope of log y against log x over positive finite y.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(y[k] > 0.0) || !std::isfinite(y[k])) continue;
    const double lx = std::log(x[k]), ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m < 2) return std::numeric_limits<double>::quiet_NaN();
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

inline std::vector<cplx> nonzero(std::vector<cplx> xs) {
  std::erase(xs, cplx{});
  return xs;
}

}  // namespace detail

/// Oracle, Theorem 1 and Theorem 2 side by side for every (n, x).
inline int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err, unsigned threads = 1) {
  const GeneratingFunction g = parse_gspec(cfg.g_spec);
  const std::vector<int> ns = cfg.n_list.empty() ? std::vector<int>{5, 10, 20} : cfg.n_list;
  std::vector<cplx> xs = detail::nonzero(sample_points(cfg));
  if (xs.empty()) xs = {0.5, cplx(0.3, 0.2), cplx(-1.0, 0.7), cplx(0.0, 2.0), cplx(1.5, -0.4)};

  Table t;
  t.columns = {"n",     "x_re",  "x_im",   "oracle_re", "oracle_im", "t1_re",       "t1_im",       "t2_re",
               "t2_im", "gap_t1", "gap_t2", "gap_t1_t2", "residues_t1", "residues_t2", "status"};
  const std::size_t count = ns.size() * xs.size();
  t.rows.resize(count);
  std::atomic<bool> bad{false};
  std::mutex err_mu;
  parallel_for(count, threads, [&](std::size_t idx) {
    const int n = ns[idx / xs.size()];
    const cplx x = xs[idx % xs.size()];
    std::vector<Cell> row{(long long)n, x.real(), x.imag()};
    try {
      const LogComplex o = detail::oracle(g, n, x);
      const auto r1 = eval_theorem1(g, n, x);
      const auto r2 = eval_theorem2(g, n, x);
      const double g1 = relative_gap(r1.total, o), g2 = relative_gap(r2.total, o);
      const double g12 = relative_gap(r1.total, r2.total);
      const bool ok = g1 <= cfg.tol && g2 <= cfg.tol && g12 <= cfg.tol;
      if (!ok) bad = true;
      for (const LogComplex& v : {o, r1.total, r2.total}) {
        const cplx z = v.value();
        row.insert(row.end(), {z.real(), z.imag()});
      }
      row.insert(row.end(), {g1, g2, g12, (long long)r1.residues.size(), (long long)r2.residues.size(),
                             std::string(ok ? "ok" : "fail")});
    } catch (const std::exception& e) {
      bad = true;
      const double nan = std::numeric_limits<double>::quiet_NaN();
      for (int k = 0; k < 9; ++k) row.push_back(nan);
      row.insert(row.end(), {-1LL, -1LL, std::string("error")});
      std::lock_guard<std::mutex> lock(err_mu);
      err << "n=" << n << " x=" << format_complex(x) << ": " << e.what() << "\n";
    }
    t.rows[idx] = std::move(row);
  });
  detail::emit(cfg, t, out);
  return bad ? kToleranceViolated : kOk;
}

/// arcs, roots per n, dominance regions, corner and triple points, and a gnuplot script.
inline int cmd_attractor(const RunConfig& cfg, std::ostream& out, std::ostream& err, unsigned threads = 1) {
  namespace fs = std::filesystem;
  const GeneratingFunction g = parse_gspec(cfg.g_spec);
  const std::vector<int> ns = cfg.n_list.empty() ? std::vector<int>{50} : cfg.n_list;
  for (int n : ns)
    if (n > kMaxRootDegree)
      throw input_error("n = " + std::to_string(n) + " exceeds " + std::to_string(kMaxRootDegree) +
                        ": root finding is limited to double precision (the n = 400/1000 clouds are out of scope)");
  const fs::path dir = cfg.out.empty() || cfg.out == "-" ? fs::path(".") : fs::path(cfg.out);
  fs::create_directories(dir);
  const char* ext = extension(cfg.format);

  const auto arcs = attractor_arcs(g, cfg.resolution);
  Table ta;
  ta.columns = {"re", "im", "kind", "param", "arc"};
  for (std::size_t a = 0; a < arcs.size(); ++a)
    for (std::size_t k = 0; k < arcs[a].samples.size(); ++k)
      ta.rows.push_back({arcs[a].samples[k].real(), arcs[a].samples[k].imag(), std::string(to_string(arcs[a].kind)),
                         arcs[a].params[k], (long long)a});
  detail::write_file(dir / (std::string("arcs") + ext), ta, cfg.format);

  Table tp;
  tp.columns = {"re", "im", "kind"};
  for (const auto& c : arc_corners(arcs)) tp.rows.push_back({c.real(), c.imag(), std::string("corner")});
  for (const auto& c : triple_points(arcs)) tp.rows.push_back({c.real(), c.imag(), std::string("triple")});
  detail::write_file(dir / (std::string("points") + ext), tp, cfg.format);

  bool bad = false;
  std::vector<std::string> root_files;
  for (int n : ns) {
    const auto r = roots_rescaled(g, n, threads);
    Table tr;
    tr.columns = {"re", "im", "kind", "param"};
    for (std::size_t k = 0; k < r.roots.size(); ++k)
      tr.rows.push_back({r.roots[k].real(), r.roots[k].imag(), std::string("root"), r.newton_step[k]});
    const std::string name = "roots_n" + std::to_string(n) + ext;
    detail::write_file(dir / name, tr, cfg.format);
    root_files.push_back(name);
    if (!r.unconverged.empty()) {
      bad = true;
      err << "n=" << n << ": " << r.unconverged.size() << " roots did not converge\n";
    }
    out << "n=" << n << " hausdorff=" << format_real(one_sided_hausdorff(r.roots, arcs)) << "\n";
  }

  RunConfig grid_cfg = cfg;
  grid_cfg.points.clear();
  if (!grid_cfg.grid_re) grid_cfg.grid_re = Axis{-1.5, 1.5, 200};
  const std::vector<cplx> xs = sample_points(grid_cfg);
  Table tg;
  tg.columns = {"re", "im", "champion", "zeta_re", "zeta_im", "log_phi", "margin"};
  tg.rows.resize(xs.size());
  parallel_for(xs.size(), threads, [&](std::size_t k) {
    const cplx x = xs[k];
    if (x == cplx{}) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      tg.rows[k] = {0.0, 0.0, -2LL, nan, nan, nan, nan};
      return;
    }
    const auto d = dominance(g, x);
    tg.rows[k] = {x.real(), x.imag(), (long long)d.champion, d.champion_zeta.real(), d.champion_zeta.imag(),
                  d.log_phi, d.margin};
  });
  detail::write_file(dir / (std::string("regions") + ext), tg, cfg.format);

  if (cfg.format != Format::json) {
    std::ofstream gp(dir / "attractor.gp");
    const bool csv = cfg.format == Format::csv;
    if (csv) gp << "set datafile separator \",\"\n";
    gp << "set size ratio -1\nset key off\nset xlabel \"Re x\"\nset ylabel \"Im x\"\n";
    const std::string skip = csv ? " skip 1" : "";
    gp << "plot '" << "regions" << ext << "'" << skip << " using 1:2:($3+3) with points pt 5 ps 0.3 lc variable, \\\n";
    gp << "     for [k=0:" << (arcs.empty() ? 0 : arcs.size() - 1) << "] 'arcs" << ext << "'" << skip
       << " using ($5==k?$1:NaN):2 with lines lw 2 lc rgb \"black\", \\\n";
    for (const auto& f : root_files) gp << "     '" << f << "'" << skip << " using 1:2 with points pt 6, \\\n";
    gp << "     'points" << ext << "'" << skip << " using 1:2 with points pt 7 lc rgb \"red\"\n";
  }
  return bad ? kToleranceViolated : kOk;
}

/// Exact value against the leading and two-term expansions, with fitted error orders per x.
inline int cmd_asymp(const RunConfig& cfg, std::ostream& out, std::ostream& err, unsigned threads = 1) {
  const GeneratingFunction g = parse_gspec(cfg.g_spec);
  const std::vector<int> ns = cfg.n_list.empty() ? std::vector<int>{32, 64, 128, 256} : cfg.n_list;
  std::vector<cplx> xs = detail::nonzero(sample_points(cfg));
  if (xs.empty()) xs = {2.0};

  struct Result {
    cplx exact, lead, two;
    double e1 = 0, e2 = 0;
    std::string flag;
  };
  const std::size_t count = ns.size() * xs.size();
  std::vector<Result> res(count);
  std::atomic<bool> bad{false};
  std::mutex err_mu;
  parallel_for(count, threads, [&](std::size_t idx) {
    const int n = ns[idx % ns.size()];
    const cplx x = xs[idx / ns.size()];
    Result& r = res[idx];
    try {
      const LogComplex exact = eval_theorem2(g, n, x).total;
      const AsymptoticTerms terms = asymp_theorem1_terms(g, n, x);
      std::vector<LogComplex> l1, l2;
      for (const auto& t : terms.terms) {
        l1.push_back(t.evaluate(n, 1));
        l2.push_back(t.evaluate(n, 2));
      }
      const LogComplex lead = log_sum(l1), two = log_sum(l2);
      r.exact = exact.value();
      r.lead = lead.value();
      r.two = two.value();
      r.e1 = relative_gap(lead, exact);
      r.e2 = relative_gap(two, exact);
      r.flag = terms.boundary ? "boundary" : terms.saddle_omitted ? "saddle_omitted" : "ok";
      if (!terms.warnings.empty()) {
        std::lock_guard<std::mutex> lock(err_mu);
        for (const auto& w : terms.warnings) err << "n=" << n << " x=" << format_complex(x) << ": " << w << "\n";
      }
    } catch (const std::exception& e) {
      bad = true;
      const double nan = std::numeric_limits<double>::quiet_NaN();
      r = {cplx(nan, nan), cplx(nan, nan), cplx(nan, nan), nan, nan, "error"};
      std::lock_guard<std::mutex> lock(err_mu);
      err << "n=" << n << " x=" << format_complex(x) << ": " << e.what() << "\n";
    }
  });

  Table t;
  t.columns = {"n",        "x_re",         "x_im",          "exact_re",       "exact_im",
               "leading_re", "leading_im", "two_term_re",   "two_term_im",    "err_leading",
               "err_two_term", "order_leading", "order_two_term", "flag"};
  for (std::size_t xi = 0; xi < xs.size(); ++xi) {
    std::vector<double> nd, e1, e2;
    for (std::size_t ni = 0; ni < ns.size(); ++ni) {
      const Result& r = res[xi * ns.size() + ni];
      nd.push_back(double(ns[ni]));
      e1.push_back(r.e1);
      e2.push_back(r.e2);
    }
    const double o1 = detail::loglog_slope(nd, e1), o2 = detail::loglog_slope(nd, e2);
    for (std::size_t ni = 0; ni < ns.size(); ++ni) {
      const Result& r = res[xi * ns.size() + ni];
      t.rows.push_back({(long long)ns[ni], xs[xi].real(), xs[xi].imag(), r.exact.real(), r.exact.imag(),
                        r.lead.real(), r.lead.imag(), r.two.real(), r.two.imag(), r.e1, r.e2, o1, o2, r.flag});
    }
  }
  detail::emit(cfg, t, out);
  return bad ? kToleranceViolated : kOk;
}

/// Full command-line entry: parse, dispatch, map failures to exit codes.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig cfg = parse_args(args);
    const unsigned threads = thread_count();
    switch (cfg.command) {
      case Command::compare: return cmd_compare(cfg, out, err, threads);
      case Command::attractor: return cmd_attractor(cfg, out, err, threads);
      case Command::asymp: return cmd_asymp(cfg, out, err, threads);
    }
  } catch (const help_request& h) {
    out << h.text;
    return kOk;
  } catch (const input_error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kToleranceViolated;
  }
  return kInvalidInput;
}

}  // namespace appell::cli
