// Command-line driver: curvature | lift-check | weaksym.
//
// All numerical work lives in the library's run_* functions; this file only
// parses flags into a RunConfig and routes the rendered report to stdout or
// --output.  Exit codes: 0 ok, 2 config error, 3 base-invariant failure,
// 4 lift-check failure, 5 verdict mismatch with the flatness equivalence.
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tbgeo/errors.hpp"
#include "tbgeo/lift.hpp"
#include "tbgeo/report.hpp"

namespace {

struct CliOptions {
  tbgeo::RunConfig cfg;
  std::vector<std::string> mparams;
  std::string gnat = "sasaki";
  std::string diff = "dual";
  std::string mode = "weak";
  std::string format = "json";
  std::string output;
};

void add_common_flags(CLI::App* cmd, CliOptions& o) {
  cmd->add_option("--manifold", o.cfg.manifold, "catalog entry name")->capture_default_str();
  cmd->add_option("--mparam", o.mparams, "manifold parameter k=v (repeatable)");
  cmd->add_option("--gnat", o.gnat, "coefficients a,b,c or preset sasaki|mixed|skew")
      ->capture_default_str();
  cmd->add_option("--points", o.cfg.points, "sampled points")->capture_default_str();
  cmd->add_option("--seed", o.cfg.seed, "sampling seed")->capture_default_str();
  cmd->add_option("--diff", o.diff, "differentiation mode: dual|fd")->capture_default_str();
  cmd->add_option("--fd-step", o.cfg.diff.fd_step, "relative finite-difference step")
      ->capture_default_str();
  cmd->add_option("--fd-order", o.cfg.diff.fd_order, "finite-difference stencil order: 2|4|6")
      ->capture_default_str();
  cmd->add_option("--tol-agree", o.cfg.agree_tol, "closed-form/oracle agreement tolerance")
      ->capture_default_str();
  cmd->add_option("--tol-flat", o.cfg.flat_tol, "sup-norm threshold for flatness")
      ->capture_default_str();
  cmd->add_option("--reject", o.cfg.reject_threshold, "residual threshold refuting weak symmetry")
      ->capture_default_str();
  cmd->add_option("--format", o.format, "report format: json|text")->capture_default_str();
  cmd->add_option("--output", o.output, "write the report to this path instead of stdout");
  cmd->add_option("--jobs", o.cfg.jobs, "worker threads for point-level parallelism")
      ->capture_default_str();
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw tbgeo::ParamError(what + " expects a number; got \"" + s + "\"");
  }
  if (used != s.size()) throw tbgeo::ParamError(what + " expects a number; got \"" + s + "\"");
  return v;
}

// Translate the string-valued flags into the resolved RunConfig.  Pure
// syntax here; semantic validation (Riemannian condition, catalog ranges)
// happens inside run_* so it lands in the structured report.
void resolve(CliOptions& o) {
  for (const auto& kv : o.mparams) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw tbgeo::ParamError("--mparam expects k=v; got \"" + kv + "\"");
    o.cfg.mparams[kv.substr(0, eq)] = parse_double(kv.substr(eq + 1), "--mparam " + kv.substr(0, eq));
  }

  if (o.gnat.find(',') == std::string::npos) {
    tbgeo::GNaturalParams p = tbgeo::GNaturalParams::preset(o.gnat);
    o.cfg.a = p.a;
    o.cfg.b = p.b;
    o.cfg.c = p.c;
    o.cfg.gnat_label = o.gnat;
  } else {
    std::vector<std::string> parts;
    std::string rest = o.gnat;
    for (std::size_t pos; (pos = rest.find(',')) != std::string::npos; rest.erase(0, pos + 1))
      parts.push_back(rest.substr(0, pos));
    parts.push_back(rest);
    if (parts.size() != 3)
      throw tbgeo::ParamError("--gnat expects a preset name or three numbers a,b,c; got \"" +
                              o.gnat + "\"");
    o.cfg.a = parse_double(parts[0], "--gnat a");
    o.cfg.b = parse_double(parts[1], "--gnat b");
    o.cfg.c = parse_double(parts[2], "--gnat c");
    o.cfg.gnat_label = "custom";
  }

  if (o.diff == "dual") {
    o.cfg.diff.mode = tbgeo::DiffMode::dual;
  } else if (o.diff == "fd" || o.diff == "finite_difference") {
    o.cfg.diff.mode = tbgeo::DiffMode::finite_difference;
  } else {
    throw tbgeo::ParamError("--diff expects dual or fd; got \"" + o.diff + "\"");
  }

  o.cfg.mode = tbgeo::solve_mode_from_string(o.mode);

  if (o.format != "json" && o.format != "text")
    throw tbgeo::ParamError("--format expects json or text; got \"" + o.format + "\"");
  if (o.cfg.points <= 0) throw tbgeo::ParamError("--points must be positive");
  if (o.cfg.jobs <= 0) throw tbgeo::ParamError("--jobs must be positive");
}

int emit(const tbgeo::CommandResult& res, const std::string& output) {
  if (output.empty()) {
    std::cout << res.rendered;
  } else {
    std::ofstream f(output, std::ios::binary);
    if (!f) {
      std::cerr << "cannot open output file: " << output << "\n";
      return tbgeo::exit_code::config_error;
    }
    f << res.rendered;
  }
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"g-natural tangent-bundle geometry experiments"};
  app.require_subcommand(1);

  CliOptions o;
  CLI::App* curvature = app.add_subcommand(
      "curvature", "base-manifold curvature tensors and invariant suite");
  CLI::App* lift_check = app.add_subcommand(
      "lift-check", "closed-form lifted curvature vs brute-force bundle oracle");
  CLI::App* weaksym = app.add_subcommand(
      "weaksym", "weak-symmetry classification of the lifted metric");
  add_common_flags(curvature, o);
  add_common_flags(lift_check, o);
  add_common_flags(weaksym, o);
  weaksym->add_option("--mode", o.mode, "weak|recurrent|pseudo|locally_symmetric")
      ->capture_default_str();
  weaksym->add_option("--space", o.cfg.space, "base|tangent_bundle")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    // CLI11 reserves its own codes; fold parse failures into "config error"
    // while keeping --help's success exit.
    return rc == 0 ? 0 : tbgeo::exit_code::config_error;
  }

  try {
    resolve(o);
  } catch (const tbgeo::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return tbgeo::exit_code::config_error;
  }

  tbgeo::CommandResult res;
  if (curvature->parsed()) {
    res = tbgeo::run_curvature(o.cfg, o.format);
  } else if (lift_check->parsed()) {
    res = tbgeo::run_lift_check(o.cfg, o.format);
  } else {
    res = tbgeo::run_weaksym(o.cfg, o.format);
  }
  return emit(res, o.output);
}
