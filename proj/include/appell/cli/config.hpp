#pragma once

#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "appell/cli/parse.hpp"

namespace appell::cli {

enum class Command { compare, attractor, asymp };
enum class Format { csv, json, gnuplot };

inline const char* to_string(Command c) {
  switch (c) {
    case Command::compare: return "compare";
    case Command::attractor: return "attractor";
    default: return "asymp";
  }
}

inline const char* to_string(Format f) {
  switch (f) {
    case Format::csv: return "csv";
    case Format::json: return "json";
    default: return "gnuplot";
  }
}

/// --help was given; carries the rendered text.
struct help_request {
  std::string text;
};

/// One CLI invocation. Unset fields take per-command defaults at run time.
struct RunConfig {
  Command command = Command::compare;
  std::string g_spec;
  std::vector<int> n_list;
  std::vector<cplx> points;
  std::optional<Axis> grid_re;
  std::optional<Axis> grid_im;  // defaults to grid_re
  double tol = 1e-8;
  std::string out;  // file for compare/asymp ("-" = stdout), directory for attractor
  Format format = Format::csv;
  int resolution = 2000;
  bool operator==(const RunConfig&) const = default;
};

/// Parse argv-style arguments (without the program name). Throws input_error.
inline RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Rescaled Appell polynomials"};
  app.require_subcommand(1);
  struct Raw {
    std::string g, n, points, grid, grid_im, format = "csv", out;
    double tol = 1e-8;
    int resolution = 2000;
  } raw;
  for (const char* name : {"compare", "attractor", "asymp"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--g", raw.g, "generating function: bernoulli, c0,c1,... or an expression in x")->required();
    sub->add_option("--n", raw.n, "comma-separated degrees");
    sub->add_option("--points", raw.points, "comma-separated complex points a+bi");
    sub->add_option("--grid", raw.grid, "real-axis grid min:max:steps (also the imaginary axis unless --grid-im)");
    sub->add_option("--grid-im", raw.grid_im, "imaginary-axis grid min:max:steps");
    sub->add_option("--tol", raw.tol, "relative tolerance");
    sub->add_option("--out", raw.out, "output file or directory");
    sub->add_option("--format", raw.format, "csv, json or gnuplot");
    sub->add_option("--resolution", raw.resolution, "attractor samples per curve");
  }
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    throw help_request{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    throw input_error(e.what());
  }
  RunConfig cfg;
  const std::string cmd = app.get_subcommands().front()->get_name();
  cfg.command = cmd == "compare" ? Command::compare : cmd == "attractor" ? Command::attractor : Command::asymp;
  cfg.g_spec = raw.g;
  parse_gspec(cfg.g_spec);  // validate early
  if (!raw.n.empty()) cfg.n_list = parse_int_list(raw.n);
  for (int n : cfg.n_list)
    if (n < 1) throw input_error("n must be >= 1");
  if (!raw.points.empty()) cfg.points = parse_complex_list(raw.points);
  if (!raw.grid.empty()) cfg.grid_re = parse_axis(raw.grid);
  if (!raw.grid_im.empty()) {
    if (!cfg.grid_re) throw input_error("--grid-im needs --grid");
    cfg.grid_im = parse_axis(raw.grid_im);
  }
  if (!(raw.tol > 0.0)) throw input_error("--tol must be positive");
  cfg.tol = raw.tol;
  cfg.out = raw.out;
  if (raw.format == "csv") cfg.format = Format::csv;
  else if (raw.format == "json") cfg.format = Format::json;
  else if (raw.format == "gnuplot") cfg.format = Format::gnuplot;
  else throw input_error("unknown format '" + raw.format + "'");
  if (raw.resolution < 8) throw input_error("--resolution must be >= 8");
  cfg.resolution = raw.resolution;
  return cfg;
}

/// Canonical argument list (--flag=value form, safe for values starting with '-');
/// parse_args(to_args(c)) == c.
inline std::vector<std::string> to_args(const RunConfig& c) {
  std::vector<std::string> a{to_string(c.command), "--g=" + c.g_spec};
  if (!c.n_list.empty()) {
    std::string s;
    for (std::size_t k = 0; k < c.n_list.size(); ++k) s += (k ? "," : "") + std::to_string(c.n_list[k]);
    a.push_back("--n=" + s);
  }
  if (!c.points.empty()) {
    std::string s;
    for (std::size_t k = 0; k < c.points.size(); ++k) s += (k ? "," : "") + format_complex(c.points[k]);
    a.push_back("--points=" + s);
  }
  if (c.grid_re) a.push_back("--grid=" + format_axis(*c.grid_re));
  if (c.grid_im) a.push_back("--grid-im=" + format_axis(*c.grid_im));
  a.push_back("--tol=" + format_real(c.tol));
  if (!c.out.empty()) a.push_back("--out=" + c.out);
  a.push_back(std::string("--format=") + to_string(c.format));
  a.push_back("--resolution=" + std::to_string(c.resolution));
  return a;
}

/// Explicit points followed by the grid (row-major, imaginary part outer).
inline std::vector<cplx> sample_points(const RunConfig& c) {
  std::vector<cplx> xs = c.points;
  if (c.grid_re) {
    const Axis re = *c.grid_re, im = c.grid_im ? *c.grid_im : *c.grid_re;
    for (int j = 0; j < im.steps; ++j)
      for (int k = 0; k < re.steps; ++k) xs.emplace_back(re.at(k), im.at(j));
  }
  return xs;
}

}  // namespace appell::cli
