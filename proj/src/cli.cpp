#include "krein/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "krein/errors.hpp"
#include "krein/expression.hpp"
#include "krein/extensions.hpp"
#include "krein/oracle_fd.hpp"
#include "krein/point_interaction.hpp"
#include "krein/selftest.hpp"
#include "krein/serialize.hpp"
#include "krein/sweep.hpp"
#include "krein/weyl_spectral.hpp"

#ifndef KREIN_VERSION
#define KREIN_VERSION "0.0.0"
#endif

namespace krein::cli {

namespace {

constexpr double kCliParamTol = 1e-9;

struct ParamFlags {
  std::string params;
  std::optional<double> zeta;
  std::optional<double> phi;
  std::optional<double> xi;
  std::optional<double> omega;
  bool degrees = false;
  double param_tol = kCliParamTol;
};

void add_param_flags(CLI::App* cmd, ParamFlags& f) {
  cmd->add_option("--params", f.params, "zeta,phi,xi,omega");
  cmd->add_option("--zeta", f.zeta, "hyperbolic parameter zeta");
  cmd->add_option("--phi", f.phi, "angle phi in [0, pi]");
  cmd->add_option("--xi", f.xi, "phase xi");
  cmd->add_option("--omega", f.omega, "angle omega");
  cmd->add_flag("--degrees", f.degrees, "angles are given in degrees");
  cmd->add_option("--param-tol", f.param_tol, "tolerance for zeta = 0 and phi = pi/2")->capture_default_str();
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("malformed number '" + s + "' in " + what);
  }
  if (used != s.size()) throw ConfigError("malformed number '" + s + "' in " + what);
  if (!std::isfinite(v)) throw NonFiniteInput(what + " must be finite");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

ExtParams resolve_params(const ParamFlags& f) {
  double v[4];
  if (!f.params.empty()) {
    if (f.zeta || f.phi || f.xi || f.omega) throw ConfigError("use either --params or the individual flags, not both");
    const auto parts = split(f.params, ',');
    if (parts.size() != 4) throw ConfigError("--params expects four comma-separated values");
    for (int k = 0; k < 4; ++k) v[k] = parse_double(parts[k], "--params");
  } else {
    if (!f.zeta || !f.phi || !f.xi || !f.omega) {
      throw ConfigError("parameters required: --params z,f,x,w or all of --zeta --phi --xi --omega");
    }
    v[0] = *f.zeta;
    v[1] = *f.phi;
    v[2] = *f.xi;
    v[3] = *f.omega;
    for (double x : v) {
      if (!std::isfinite(x)) throw NonFiniteInput("parameters must be finite");
    }
  }
  if (!(f.param_tol >= 0.0)) throw ConfigError("--param-tol must be non-negative");
  const double angle = f.degrees ? kPi / 180.0 : 1.0;
  const double phi = v[1] * angle;
  if (phi < -f.param_tol || phi > kPi + f.param_tol) throw ConfigError("phi must lie in [0, pi]");
  return {v[0], phi, v[2] * angle, v[3] * angle};
}

Interval parse_interval(const std::string& text, const std::string& what) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw ConfigError(what + " expects 'lo:hi'");
  const Interval iv{parse_double(parts[0], what), parse_double(parts[1], what)};
  if (!(iv.lo < iv.hi)) throw ConfigError(what + " needs lo < hi");
  return iv;
}

double algebraic_tolerance() {
  const char* env = std::getenv("KREIN_CSYM_TOL");
  if (env == nullptr || *env == '\0') return kDefaultTol;
  const double v = parse_double(env, "KREIN_CSYM_TOL");
  if (v <= 0.0) throw ConfigError("KREIN_CSYM_TOL must be positive");
  return v;
}

json complex_json(cplx z) { return json::array({num(z.real()), num(z.imag())}); }

void require_stable(const ExtParams& p, double param_tol) {
  if (!classify(p, param_tol).is_stable) {
    throw PreconditionViolation("parameters are unstable: |tanh zeta| < |cos phi| fails and (zeta, phi) is not (0, pi/2)");
  }
}

json params_input(const ParamFlags& f, const ExtParams& p) {
  return {{"params", to_json(p)}, {"degrees", f.degrees}, {"param_tol", num(f.param_tol)}};
}

json cmd_classify(const ExtParams& p, double param_tol) {
  const double tol = algebraic_tolerance();
  const auto cls = classify(p, param_tol);
  const auto ep = k_eigenvalues(p, param_tol);
  const CMat2 K = build_K(p);
  json out = {{"class", to_json(cls)},
              {"K", to_json(K)},
              {"k_plus", complex_json(ep.k_plus)},
              {"k_minus", complex_json(ep.k_minus)},
              {"k_plus_abs", num(std::abs(ep.k_plus))},
              {"k_minus_abs", num(std::abs(ep.k_minus))},
              {"t", ep.t ? num(*ep.t) : json(nullptr)},
              {"csym", nullptr}};
  if (cls.is_stable) {
    const CMat2 C = csym_of_extension(p, param_tol);
    const auto rep = verify_csym(C, pauli_basis().sigma3, tol);
    out["csym"] = {{"C", to_json(C)},
                   {"involution_residual", num(rep.involution_residual)},
                   {"min_eig_JC", num(rep.min_eig_JC)},
                   {"commutator_residual", num(commutator(K, C).norm2())},
                   {"tolerance", num(tol)}};
  }
  return out;
}

std::unique_ptr<WeylFn> make_model(const std::string& model, const std::optional<Interval>& interval) {
  if (model == "pointint") return std::make_unique<PointInteractionModel>();
  if (model.rfind("expr:", 0) == 0) {
    if (!interval) throw ConfigError("--interval is required for expression models");
    return std::make_unique<ExpressionWeylFn>(Expression(model.substr(5)), std::vector<Interval>{*interval});
  }
  throw ConfigError("unknown model '" + model + "' (expected pointint or expr:<text>)");
}

std::vector<double> expand(const SpectrumReport& rep) {
  std::vector<double> out;
  for (const auto& e : rep.eigenvalues) {
    for (int k = 0; k < e.multiplicity; ++k) out.push_back(e.r);
  }
  return out;
}

json cmd_spectrum(const ExtParams& p, double param_tol, const std::string& model_name,
                  const std::optional<Interval>& interval, std::optional<double> step) {
  require_stable(p, param_tol);
  const auto model = make_model(model_name, interval);
  SpectrumOptions opts;
  opts.interval = interval;
  opts.step = step;
  opts.param_tol = param_tol;
  const auto solver = find_discrete_spectrum(*model, p, opts);
  json out = {{"model", model->name()}, {"solver", to_json(solver)}, {"closed_form", nullptr}, {"agreement", nullptr}};
  if (model_name == "pointint") {
    auto closed = closed_form_eigenvalues(p, param_tol);
    std::erase_if(closed.eigenvalues, [&](const SpectralPoint& e) { return !solver.scan_interval.contains(e.r); });
    out["closed_form"] = to_json(closed);
    const auto a = expand(solver);
    const auto b = expand(closed);
    double max_diff = 0.0;
    if (a.size() == b.size()) {
      for (std::size_t k = 0; k < a.size(); ++k) max_diff = std::max(max_diff, std::abs(a[k] - b[k]));
    }
    const bool agree = a.size() == b.size() && max_diff <= 1e-10;
    out["agreement"] = {{"count_match", a.size() == b.size()},
                        {"max_abs_diff", a.size() == b.size() ? num(max_diff) : json(nullptr)},
                        {"tolerance", 1e-10},
                        {"agree", agree}};
  }
  return out;
}

struct OracleFlags {
  OracleConfig cfg;
  std::string scan;
  std::string outer = "decaying";
  std::string trace;
};

json cmd_oracle(const ExtParams& p, double param_tol, OracleFlags& f) {
  if (!f.scan.empty()) {
    const Interval iv = parse_interval(f.scan, "--scan");
    f.cfg.r_min = iv.lo;
    f.cfg.r_max = iv.hi;
  }
  f.cfg.outer = outer_boundary_from_string(f.outer);
  f.cfg.validate();
  const OracleConfig& cfg = f.cfg;
  const auto rep = scan_spectrum(p, cfg, !f.trace.empty());
  if (!f.trace.empty()) {
    std::ofstream os(f.trace);
    if (!os) throw ConfigError("cannot open trace file '" + f.trace + "'");
    write_det_trace_csv(os, rep);
  }

  json out = {{"config",
               {{"L", num(cfg.L)},
                {"N", cfg.N},
                {"h", num(cfg.h())},
                {"scan", json::array({num(cfg.r_min), num(cfg.r_max)})},
                {"step", num(cfg.scan_step)},
                {"tol", num(cfg.bisect_tol)},
                {"outer", to_string(cfg.outer)}}},
              {"match", to_json(rep)},
              {"predicted", nullptr},
              {"comparison", nullptr},
              {"max_rel_error", nullptr}};
  if (!classify(p, param_tol).is_stable) return out;

  auto closed = closed_form_eigenvalues(p, param_tol);
  std::vector<double> found = rep.roots;
  found.insert(found.end(), rep.degenerate.begin(), rep.degenerate.end());
  json predicted = json::array();
  json comparison = json::array();
  double max_rel = 0.0;
  bool all_matched = true;
  for (const auto& e : closed.eigenvalues) {
    if (!(cfg.r_min < e.r && e.r < cfg.r_max)) continue;
    predicted.push_back({{"r", num(e.r)}, {"mult", e.multiplicity}});
    std::optional<double> best;
    for (double r : found) {
      if (!best || std::abs(r - e.r) < std::abs(*best - e.r)) best = r;
    }
    json row = {{"predicted", num(e.r)}, {"oracle", nullptr}, {"rel_error", nullptr}};
    if (best) {
      const double rel = std::abs(*best - e.r) / std::abs(e.r);
      row["oracle"] = num(*best);
      row["rel_error"] = num(rel);
      max_rel = std::max(max_rel, rel);
    } else {
      all_matched = false;
    }
    comparison.push_back(row);
  }
  out["predicted"] = predicted;
  out["comparison"] = comparison;
  out["max_rel_error"] = all_matched ? num(max_rel) : json(nullptr);
  return out;
}

struct SweepFlags {
  std::string zeta = "0";
  std::string phi = "0";
  std::string xi = "0";
  std::string omega = "0";
  bool degrees = false;
  std::string out;
  int workers = 1;
  double param_tol = kCliParamTol;
};

json cmd_sweep(const SweepFlags& f) {
  SweepSpec spec{parse_axis(f.zeta), parse_axis(f.phi), parse_axis(f.xi), parse_axis(f.omega), f.degrees};
  if (f.out.empty()) throw ConfigError("--out is required");
  const auto rows = run_sweep(spec, f.workers, f.param_tol);

  const std::filesystem::path target(f.out);
  const std::filesystem::path partial(f.out + ".partial");
  try {
    {
      std::ofstream os(partial, std::ios::binary | std::ios::trunc);
      if (!os) throw ConfigError("cannot open output file '" + partial.string() + "'");
      write_sweep_csv(os, rows);
      os.flush();
      if (!os) throw ConfigError("failed writing '" + partial.string() + "'");
    }
    std::filesystem::rename(partial, target);
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(partial, ec);
    throw;
  }

  std::size_t stable = 0;
  std::size_t upsilon = 0;
  for (const auto& r : rows) {
    stable += r.stable;
    upsilon += r.upsilon;
  }
  return {{"rows", rows.size()}, {"stable_rows", stable}, {"upsilon_rows", upsilon}, {"out", f.out}};
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const NonFiniteInput*>(&e)) return kExitUsage;
  if (dynamic_cast<const PreconditionViolation*>(&e) || dynamic_cast<const DomainError*>(&e) ||
      dynamic_cast<const SingularMatrix*>(&e)) {
    return kExitPrecondition;
  }
  return kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Krein-space toolkit for J-self-adjoint extensions", args.empty() ? "krein_csym" : args[0]};
  app.require_subcommand(1);
  bool timing = false;
  app.add_flag("--timing", timing, "include wall time in the result");
  app.set_version_flag("--version", KREIN_VERSION);

  ParamFlags classify_flags;
  auto* classify_cmd = app.add_subcommand("classify", "classify an extension and build its C-symmetry");
  add_param_flags(classify_cmd, classify_flags);

  ParamFlags spectrum_flags;
  std::string model = "pointint";
  std::string interval_text;
  std::optional<double> step;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "real discrete spectrum of a stable extension");
  add_param_flags(spectrum_cmd, spectrum_flags);
  spectrum_cmd->add_option("--model", model, "pointint or expr:<expression in mu>")->capture_default_str();
  spectrum_cmd->add_option("--interval", interval_text, "scan interval lo:hi");
  spectrum_cmd->add_option("--step", step, "bracketing step");

  ParamFlags oracle_params;
  OracleFlags oracle_flags;
  auto* oracle_cmd = app.add_subcommand("oracle", "finite-difference shooting cross-check for the point interaction");
  add_param_flags(oracle_cmd, oracle_params);
  oracle_cmd->add_option("--L", oracle_flags.cfg.L, "half-width of the box")->capture_default_str();
  oracle_cmd->add_option("--N", oracle_flags.cfg.N, "grid intervals per half-line")->capture_default_str();
  oracle_cmd->add_option("--scan", oracle_flags.scan, "scan interval lo:hi (default -10:-1e-6)");
  oracle_cmd->add_option("--step", oracle_flags.cfg.scan_step, "scan step")->capture_default_str();
  oracle_cmd->add_option("--tol", oracle_flags.cfg.bisect_tol, "bisection tolerance")->capture_default_str();
  oracle_cmd->add_option("--outer", oracle_flags.outer, "outer boundary: decaying or dirichlet")->capture_default_str();
  oracle_cmd->add_option("--trace", oracle_flags.trace, "write the determinant trace as CSV");

  SweepFlags sweep_flags;
  auto* sweep_cmd = app.add_subcommand("sweep", "classification and eigenvalues over a parameter grid");
  sweep_cmd->add_option("--zeta", sweep_flags.zeta, "axis 'v' or 'lo:hi:n'")->capture_default_str();
  sweep_cmd->add_option("--phi", sweep_flags.phi, "axis 'v' or 'lo:hi:n'")->capture_default_str();
  sweep_cmd->add_option("--xi", sweep_flags.xi, "axis 'v' or 'lo:hi:n'")->capture_default_str();
  sweep_cmd->add_option("--omega", sweep_flags.omega, "axis 'v' or 'lo:hi:n'")->capture_default_str();
  sweep_cmd->add_flag("--degrees", sweep_flags.degrees, "angle axes are in degrees");
  sweep_cmd->add_option("--out", sweep_flags.out, "CSV output path")->required();
  sweep_cmd->add_option("--workers", sweep_flags.workers, "worker threads")->capture_default_str();
  sweep_cmd->add_option("--param-tol", sweep_flags.param_tol, "tolerance for zeta = 0 and phi = pi/2")
      ->capture_default_str();

  auto* selftest_cmd = app.add_subcommand("selftest", "run the invariant suite");

  std::vector<std::string> rest(args.empty() ? args.begin() : args.begin() + 1, args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  json result;
  int code = kExitOk;
  try {
    if (classify_cmd->parsed()) {
      const auto p = resolve_params(classify_flags);
      json outputs = cmd_classify(p, classify_flags.param_tol);
      result = {{"command", "classify"}, {"inputs", params_input(classify_flags, p)}, {"outputs", outputs}};
    } else if (spectrum_cmd->parsed()) {
      const auto p = resolve_params(spectrum_flags);
      std::optional<Interval> iv;
      if (!interval_text.empty()) iv = parse_interval(interval_text, "--interval");
      json inputs = params_input(spectrum_flags, p);
      inputs["model"] = model;
      inputs["interval"] = iv ? json::array({num(iv->lo), num(iv->hi)}) : json(nullptr);
      inputs["step"] = step ? num(*step) : json(nullptr);
      json outputs = cmd_spectrum(p, spectrum_flags.param_tol, model, iv, step);
      result = {{"command", "spectrum"}, {"inputs", inputs}, {"outputs", outputs}};
    } else if (oracle_cmd->parsed()) {
      const auto p = resolve_params(oracle_params);
      json outputs = cmd_oracle(p, oracle_params.param_tol, oracle_flags);
      json inputs = params_input(oracle_params, p);
      inputs["config"] = outputs["config"];
      outputs.erase("config");
      result = {{"command", "oracle"}, {"inputs", inputs}, {"outputs", outputs}};
    } else if (sweep_cmd->parsed()) {
      json inputs = {{"zeta", sweep_flags.zeta},
                     {"phi", sweep_flags.phi},
                     {"xi", sweep_flags.xi},
                     {"omega", sweep_flags.omega},
                     {"degrees", sweep_flags.degrees},
                     {"workers", sweep_flags.workers},
                     {"param_tol", num(sweep_flags.param_tol)}};
      json outputs = cmd_sweep(sweep_flags);
      result = {{"command", "sweep"}, {"inputs", inputs}, {"outputs", outputs}};
    } else if (selftest_cmd->parsed()) {
      const auto checks = run_selftest();
      json list = json::array();
      bool all = true;
      for (const auto& c : checks) {
        list.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        all = all && c.passed;
      }
      result = {{"command", "selftest"}, {"inputs", json::object()}, {"outputs", {{"checks", list}, {"passed", all}}}};
      if (!all) code = kExitFailure;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }

  result["version"] = KREIN_VERSION;
  if (timing) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    result["timing_ms"] = num(ms);
  }
  out << result.dump(2) << '\n';
  return code;
}

}  // namespace krein::cli
