#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "painleve/asymptotics.hpp"
#include "painleve/errors.hpp"
#include "painleve/fitting.hpp"
#include "painleve/harness.hpp"
#include "painleve/integrator.hpp"
#include "painleve/stokes.hpp"
#include "painleve/trajectory_io.hpp"

namespace painleve::cli {

namespace {

using json = nlohmann::ordered_json;

// Bad flag values found after CLI11 has accepted the syntax.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_number(std::string_view text, const std::string& what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (text.empty() || res.ec != std::errc() || res.ptr != end || !std::isfinite(v)) {
    throw UsageError(what + ": cannot read '" + std::string(text) + "' as a number");
  }
  return v;
}

Complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--s2 expects RE,IM, got '" + text + "'");
  return {parse_number(std::string_view(text).substr(0, comma), "--s2"),
          parse_number(std::string_view(text).substr(comma + 1), "--s2")};
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw UsageError("--n expects LO..HI, got '" + text + "'");
  auto as_int = [&](std::string_view part) {
    int v = 0;
    const auto res = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || res.ec != std::errc() || res.ptr != part.data() + part.size()) {
      throw UsageError("--n: cannot read '" + std::string(part) + "' as an integer");
    }
    return v;
  };
  const int lo = as_int(std::string_view(text).substr(0, dots));
  const int hi = as_int(std::string_view(text).substr(dots + 2));
  if (lo < 1 || hi < lo) throw UsageError("--n needs 1 <= LO <= HI");
  return {lo, hi};
}

// key=value lines; '#' starts a comment.
void apply_config_file(const std::string& path, ode::IntegratorConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  const std::map<std::string, std::function<void(double)>> setters = {
      {"rtol", [&](double v) { cfg.rtol = v; }},
      {"atol", [&](double v) { cfg.atol = v; }},
      {"h_init", [&](double v) { cfg.h_init = v; }},
      {"y_detect", [&](double v) { cfg.y_detect = v; }},
      {"fit_lo", [&](double v) { cfg.fit_lo = v; }},
      {"fit_hi", [&](double v) { cfg.fit_hi = v; }},
      {"restart_offset", [&](double v) { cfg.restart_offset = v; }},
      {"series_degree", [&](double v) { cfg.series_degree = static_cast<int>(v); }},
      {"max_poles", [&](double v) { cfg.max_poles = static_cast<int>(v); }},
      {"max_steps", [&](double v) { cfg.max_steps = static_cast<long>(v); }},
  };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw UsageError(path + ": unknown key '" + key + "'");
    it->second(parse_number(value, key));
  }
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json fit_value_json(const harness::FitValue& f) { return {{"value", f.value}, {"stderr", f.std_error}}; }

json multipliers_json(const stokes::StokesMultipliers& S) {
  return json::parse(stokes::to_json(S));
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path);
  return f;
}

// Writes to `path`, or to `out` when no path was given.
template <typename Writer>
void emit(const std::string& path, std::ostream& out, Writer&& write) {
  if (path.empty()) {
    write(out);
  } else {
    auto f = open_output(path);
    write(f);
  }
}

// Integrator flags shared by integrate and compare.
struct ConfigFlags {
  std::string config_path;
  std::optional<double> rtol, atol;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key=value file overriding integrator defaults")
        ->check(CLI::ExistingFile);
    cmd->add_option("--rtol", rtol, "relative tolerance");
    cmd->add_option("--atol", atol, "absolute tolerance");
  }

  ode::IntegratorConfig resolve() const {
    ode::IntegratorConfig cfg;
    if (!config_path.empty()) apply_config_file(config_path, cfg);
    if (rtol) cfg.rtol = *rtol;
    if (atol) cfg.atol = *atol;
    try {
      cfg.validate();
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    return cfg;
  }
};

struct Options {
  std::string s2;
  std::string n_range;
  std::optional<double> y0, dy0, pole_p, pole_h;
  double x0 = 0.0;
  double x_end = 0.0;
  std::optional<double> grid_step;
  std::string out, poles_out, grid_out, traj_out, traj_in, poles_in;
  std::string preset;
  double x_min = -60.0;
  double mask_eps = asym::kDefaultMaskEps;
  std::string fit_class;
  ConfigFlags integ;
};

int cmd_classify(const Options& o, std::ostream& out) {
  const Complex s2 = parse_complex(o.s2);
  const auto cls = stokes::classify(s2);
  json j;
  j["class"] = stokes::to_string(cls);
  j["abs_s2"] = std::abs(s2);
  if (cls == stokes::SolutionClass::Oscillatory) {
    const auto p = stokes::osc_params(s2);
    j["a"] = p.a;
    j["phi"] = p.phi_applicable ? json(p.phi) : json(nullptr);
  } else if (cls == stokes::SolutionClass::Singular) {
    const auto p = stokes::sing_params(s2);
    j["b"] = p.b;
    j["psi"] = p.psi;
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_params(const Options& o, std::ostream& out) {
  const Complex s2 = parse_complex(o.s2);
  const auto S = stokes::complete_from_pair(s2, -std::conj(s2));
  const auto cls = stokes::classify(S);
  json j;
  j["s2"] = complex_json(s2);
  j["abs_s2"] = std::abs(s2);
  j["arg_s2"] = std::arg(s2);
  j["class"] = stokes::to_string(cls);
  j["multipliers"] = multipliers_json(S);
  j["constraint_residual"] = stokes::constraint_residual(S);
  j["reality_residual"] = stokes::reality_residual(S);
  j["log_phase_constant"] = stokes::log_phase_constant();
  if (cls == stokes::SolutionClass::Oscillatory) {
    const auto p = stokes::osc_params(s2);
    j["a"] = p.a;
    j["phi"] = p.phi_applicable ? json(p.phi) : json(nullptr);
    const auto legacy = stokes::legacy_osc(s2, false);
    const auto fixed = stokes::legacy_osc(s2, true);
    j["legacy"] = {{"d", legacy.d}, {"chi", legacy.chi}, {"chi_corrected", fixed.chi}};
  } else if (cls == stokes::SolutionClass::Singular) {
    const auto p = stokes::sing_params(s2);
    j["b"] = p.b;
    j["psi"] = p.psi;
    const auto legacy = stokes::legacy_sing(s2, false);
    const auto fixed = stokes::legacy_sing(s2, true);
    j["legacy"] = {{"rho", legacy.rho}, {"sigma", legacy.sigma}, {"sigma_corrected", fixed.sigma}};
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_integrate(const Options& o, std::ostream& out) {
  const bool from_state = o.y0.has_value() || o.dy0.has_value();
  const bool from_pole = o.pole_p.has_value() || o.pole_h.has_value();
  if (from_state == from_pole) {
    throw UsageError("give either --y0 and --dy0, or --pole-p and --pole-h");
  }
  if (from_state && !(o.y0 && o.dy0)) throw UsageError("--y0 and --dy0 go together");
  if (from_pole && !(o.pole_p && o.pole_h)) throw UsageError("--pole-p and --pole-h go together");
  if (o.grid_step && !(*o.grid_step > 0.0)) throw UsageError("--grid-step must be positive");
  const double start = from_state ? o.x0 : *o.pole_p;
  if (o.x_end == start) throw UsageError("--x-end must differ from the starting point");
  const auto cfg = o.integ.resolve();

  std::vector<double> grid;
  if (o.grid_step) {
    const double dir = o.x_end < start ? -1.0 : 1.0;
    grid = ode::make_grid(from_pole ? start + dir * *o.grid_step : start, o.x_end, *o.grid_step);
  }
  const ode::Trajectory traj = from_state
                                   ? ode::integrate(ode::State{o.x0, *o.y0, *o.dy0}, o.x_end, cfg, grid)
                                   : ode::integrate(ode::PoleData{*o.pole_p, *o.pole_h}, o.x_end, cfg, grid);
  const auto& rows = o.grid_step ? traj.dense : traj.samples;
  emit(o.out, out, [&](std::ostream& s) { io::write_trajectory_csv(s, rows); });
  if (!o.poles_out.empty()) {
    auto f = open_output(o.poles_out);
    io::write_poles_csv(f, traj.poles);
  }
  return kExitOk;
}

std::string default_traj_path(const std::string& report_path) {
  const auto dot = report_path.rfind('.');
  const auto slash = report_path.find_last_of('/');
  const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
  return (has_ext ? report_path.substr(0, dot) : report_path) + "_traj.csv";
}

int cmd_compare(const Options& o, std::ostream& out) {
  const auto preset = harness::preset_by_name(o.preset);
  if (!(o.x_min <= -10.0)) throw UsageError("--x-min must be <= -10");
  harness::CompareOptions opt;
  if (o.grid_step) {
    if (!(*o.grid_step > 0.0)) throw UsageError("--grid-step must be positive");
    opt.grid_step = *o.grid_step;
  }
  if (!(o.mask_eps > 0.0)) throw UsageError("--mask-eps must be positive");
  opt.mask_eps = o.mask_eps;
  const auto cfg = o.integ.resolve();
  const std::string traj_path = o.traj_out.empty() ? default_traj_path(o.out) : o.traj_out;

  const auto report = harness::run_compare(preset, o.x_min, cfg, opt);
  {
    auto f = open_output(traj_path);
    io::write_trajectory_csv(f, report.trajectory.samples);
  }
  {
    auto f = open_output(o.grid_out);
    harness::write_grid_csv(f, report);
  }
  {
    auto f = open_output(o.out);
    f << harness::report_json(report, traj_path, o.grid_out) << '\n';
  }
  out << "class " << stokes::to_string(report.cls) << ", exp_y " << report.exp_y.value << ", exp_h "
      << report.exp_h.value << ", poles " << report.trajectory.poles.size() << '\n';
  return kExitOk;
}

int cmd_poles(const Options& o, std::ostream& out) {
  const Complex s2 = parse_complex(o.s2);
  const auto [lo, hi] = parse_range(o.n_range);
  const auto params = stokes::sing_params(s2);
  const auto poles = asym::predict_poles(params, lo, hi);
  emit(o.out, out, [&](std::ostream& s) {
    s << "n,x\n";
    for (const auto& p : poles) s << p.n << ',' << io::format_real(p.x) << '\n';
  });
  return kExitOk;
}

int cmd_fit(const Options& o, std::ostream& out) {
  stokes::SolutionClass cls;
  if (o.fit_class == "osc") {
    cls = stokes::SolutionClass::Oscillatory;
  } else if (o.fit_class == "sing") {
    cls = stokes::SolutionClass::Singular;
  } else {
    throw UsageError("--class must be osc or sing");
  }
  std::vector<ode::Sample> samples;
  {
    std::ifstream in(o.traj_in);
    samples = io::read_trajectory_csv(in);
  }
  harness::FitResult fit;
  if (!o.poles_in.empty()) {
    if (cls != stokes::SolutionClass::Singular) throw UsageError("--poles only applies to --class sing");
    std::ifstream in(o.poles_in);
    std::vector<double> positions;
    for (const auto& p : io::read_poles_csv(in)) positions.push_back(p.p);
    fit = harness::fit_singular(positions);
  } else {
    fit = harness::fit_params(samples, cls);
  }
  json j;
  j["class"] = stokes::to_string(fit.cls);
  if (cls == stokes::SolutionClass::Oscillatory) {
    j["a"] = fit_value_json(fit.amplitude);
    j["phi"] = fit_value_json(fit.phase);
  } else {
    j["b"] = fit_value_json(fit.amplitude);
    j["psi"] = fit_value_json(fit.phase);
  }
  j["features"] = fit.features;
  j["s2"] = complex_json(fit.s2);
  j["abs_s2"] = std::abs(fit.s2);
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_appendix_b(std::ostream& out) {
  const auto S = harness::appendix_b_stokes();
  const Complex target{0.0, -2.0 * std::cos(std::numbers::pi / 5.0)};
  double dev = 0.0;
  for (int k = -2; k <= 2; ++k) dev = std::max(dev, std::abs(S.at(k) - target));
  json j;
  j["multipliers"] = multipliers_json(S);
  j["constraint_residual"] = stokes::constraint_residual(S);
  j["max_deviation"] = dev;
  out << j.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Real Painleve I transcendents: integration through poles, asymptotics and Stokes data"};
  app.name("painleve");
  app.require_subcommand(1);
  Options o;

  auto* classify = app.add_subcommand("classify", "class and connection parameters of s2");
  classify->add_option("--s2", o.s2, "Stokes multiplier s2 as RE,IM")->required();

  auto* params = app.add_subcommand("params", "connection constants for s2");
  params->add_option("--s2", o.s2, "Stokes multiplier s2 as RE,IM")->required();

  auto* integrate = app.add_subcommand("integrate", "integrate through poles and write a trajectory CSV");
  integrate->add_option("--y0", o.y0, "initial y");
  integrate->add_option("--dy0", o.dy0, "initial y'");
  integrate->add_option("--x0", o.x0, "initial x for --y0/--dy0");
  integrate->add_option("--pole-p", o.pole_p, "start from a pole at this x");
  integrate->add_option("--pole-h", o.pole_h, "free Laurent coefficient of that pole");
  integrate->add_option("--x-end", o.x_end, "end point")->required();
  integrate->add_option("--grid-step", o.grid_step, "write a uniform grid instead of the accepted steps");
  integrate->add_option("--out", o.out, "trajectory CSV (stdout if omitted)");
  integrate->add_option("--poles-out", o.poles_out, "CSV of the poles crossed");
  o.integ.add_to(integrate);

  auto* compare = app.add_subcommand("compare", "compare a preset with its asymptotic formula");
  compare->add_option("--preset", o.preset, "zero-ic or zero-pole")
      ->required()
      ->check(CLI::IsMember({"zero-ic", "zero-pole"}));
  compare->add_option("--x-min", o.x_min, "left end of the comparison window")->required();
  compare->add_option("--out", o.out, "report JSON")->required();
  compare->add_option("--grid-out", o.grid_out, "grid CSV")->required();
  compare->add_option("--traj-out", o.traj_out, "trajectory CSV (default: next to the report)");
  compare->add_option("--grid-step", o.grid_step, "grid spacing (default 0.01)");
  compare->add_option("--mask-eps", o.mask_eps, "pole mask threshold on |sin(phase)|");
  o.integ.add_to(compare);

  auto* poles = app.add_subcommand("poles", "predicted pole positions of the singular family");
  poles->add_option("--s2", o.s2, "Stokes multiplier s2 as RE,IM")->required();
  poles->add_option("--n", o.n_range, "index range LO..HI")->required();
  poles->add_option("--out", o.out, "CSV output (stdout if omitted)");

  auto* fit = app.add_subcommand("fit", "fit connection parameters to a trajectory");
  fit->add_option("--traj", o.traj_in, "trajectory CSV")->required()->check(CLI::ExistingFile);
  fit->add_option("--class", o.fit_class, "osc or sing")->required();
  fit->add_option("--poles", o.poles_in, "pole CSV to use instead of poles found in the samples")
      ->check(CLI::ExistingFile);

  auto* appendix = app.add_subcommand("appendix-b", "multipliers of the (p, h) = (0, 0) solution");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (classify->parsed()) return cmd_classify(o, out);
    if (params->parsed()) return cmd_params(o, out);
    if (integrate->parsed()) return cmd_integrate(o, out);
    if (compare->parsed()) return cmd_compare(o, out);
    if (poles->parsed()) return cmd_poles(o, out);
    if (fit->parsed()) return cmd_fit(o, out);
    if (appendix->parsed()) return cmd_appendix_b(out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << to_string(e.kind()) << '\n' << e.what() << '\n';
    return kExitNumerical;
  } catch (const IoError& e) {
    err << "IOError\n" << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace painleve::cli
