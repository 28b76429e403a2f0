#include "grover_qa/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "grover_qa/bounds.hpp"
#include "grover_qa/errors.hpp"
#include "grover_qa/experiments.hpp"
#include "grover_qa/integrator.hpp"
#include "grover_qa/report.hpp"
#include "grover_qa/schedule.hpp"

namespace grover_qa::cli {

namespace {

using nlohmann::json;

const std::map<std::string, Mode> kModes{
    {"it", Mode::imaginary_time}, {"rt", Mode::real_time}};
const std::map<std::string, ScheduleKind> kSchedules{
    {"linear", ScheduleKind::linear},
    {"adiabatic", ScheduleKind::local_adiabatic},
    {"local-adiabatic", ScheduleKind::local_adiabatic}};

struct RunConfig {
  std::uint64_t n = 0;
  double tau = 0.0;
  std::string mode_name = "it";
  std::string schedule_name = "linear";
  Mode mode = Mode::imaginary_time;
  ScheduleKind schedule = ScheduleKind::linear;
  std::size_t steps = 0;  // 0 = default policy
  std::size_t stride = 0;
  std::size_t points = 101;
  double target = 0.99;
  double delta = 0.1;
  std::string n_exp;
  std::vector<std::uint64_t> n_list;
  std::vector<double> taus{200.0, 400.0, 800.0, 1600.0};
  std::string out_path;
  std::string json_path;
  double rel_tol = 1e-3;
  double tau_cap = 1e7;
  double step_multiplier = 1.0;
  unsigned threads = 0;
  bool quadrature = false;
};

// Output sink: a file when a path is given, otherwise the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw DomainError("cannot open output file " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

std::vector<std::uint64_t> resolve_sizes(const RunConfig& cfg,
                                         const std::string& default_exp) {
  if (!cfg.n_list.empty()) return cfg.n_list;
  const std::string range = cfg.n_exp.empty() ? default_exp : cfg.n_exp;
  const auto colon = range.find(':');
  if (colon == std::string::npos) {
    throw DomainError("--n-exp expects LO:HI, got '" + range + "'");
  }
  int lo = 0;
  int hi = 0;
  try {
    lo = std::stoi(range.substr(0, colon));
    hi = std::stoi(range.substr(colon + 1));
  } catch (const std::exception&) {
    throw DomainError("--n-exp expects integer exponents, got '" + range + "'");
  }
  return power_of_two_sizes(lo, hi);
}

ScanOptions scan_options(const RunConfig& cfg) {
  ScanOptions o;
  o.rel_tol = cfg.rel_tol;
  o.tau_cap = cfg.tau_cap;
  o.step_multiplier = cfg.step_multiplier;
  o.threads = cfg.threads;
  return o;
}

json sizes_json(const std::vector<std::uint64_t>& sizes) {
  json a = json::array();
  for (auto n : sizes) a.push_back(n);
  return a;
}

std::string describe(const json& config) {
  std::ostringstream line;
  line << "grover-qa";
  for (const auto& [key, value] : config.items()) {
    line << ' ' << key << '=';
    if (value.is_string()) {
      line << value.get<std::string>();
    } else if (value.is_number_float()) {
      line << format_number(value.get<double>());
    } else {
      line << value.dump();
    }
  }
  return line.str();
}

int cmd_evolve(const RunConfig& cfg, std::ostream& out) {
  const ProblemSize n{cfg.n};
  const Schedule schedule = make_schedule(cfg.schedule, n, cfg.tau);
  std::size_t steps = cfg.steps;
  if (steps == 0) {
    steps = cfg.tau == 0.0 ? 1 : evolve_certified(n, schedule, cfg.mode).steps;
  }
  const std::size_t stride =
      cfg.stride != 0 ? cfg.stride : std::max<std::size_t>(1, steps / 1000);
  const Trajectory traj = evolve(n, schedule, cfg.mode, steps, stride);

  const json config = {{"command", "evolve"},
                       {"n", cfg.n},
                       {"tau", cfg.tau},
                       {"mode", to_string(cfg.mode)},
                       {"schedule", to_string(cfg.schedule)},
                       {"steps", steps},
                       {"stride", stride}};
  Sink sink(cfg.out_path, out);
  CsvWriter csv(sink.get(), describe(config), {"t", "s", "p_opt", "log_norm", "gap"});
  for (const TrajectorySample& x : traj.samples) {
    csv.row({x.t, x.s, x.p_opt, x.log_norm, x.gap});
  }
  return kExitOk;
}

int cmd_gap(const RunConfig& cfg, std::ostream& out) {
  const ProblemSize n{cfg.n};
  if (cfg.points < 2) throw DomainError("--points must be at least 2");
  const json config = {{"command", "gap"}, {"n", cfg.n}, {"points", cfg.points}};
  Sink sink(cfg.out_path, out);
  CsvWriter csv(sink.get(), describe(config),
                {"s", "eps0", "eps1", "gap", "p_coeff", "q_coeff"});
  for (std::size_t i = 0; i < cfg.points; ++i) {
    const double s =
        static_cast<double>(i) / static_cast<double>(cfg.points - 1);
    const SpectralData d = spectral_data(n, s);
    csv.row({s, d.eps0, d.eps1, d.gap, d.p_coeff, d.q_coeff});
  }
  return kExitOk;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out) {
  const ProblemSize n{cfg.n};
  const ScanOptions opts = scan_options(cfg);
  const ScanResult r = scan_tau(n, cfg.target, cfg.mode, cfg.schedule, opts);
  const json config = {{"command", "scan"},        {"n", cfg.n},
                       {"target", cfg.target},     {"mode", to_string(cfg.mode)},
                       {"schedule", to_string(cfg.schedule)},
                       {"rel_tol", cfg.rel_tol},   {"tau_cap", cfg.tau_cap},
                       {"step_multiplier", cfg.step_multiplier}};
  Sink sink(cfg.out_path, out);
  write_report(sink.get(), config, to_json(r));
  return kExitOk;
}

int cmd_scaling(const RunConfig& cfg, std::ostream& out) {
  const auto sizes = resolve_sizes(cfg, "4:20");
  const ScalingStudy study =
      scaling_study(sizes, cfg.target, cfg.mode, cfg.schedule, scan_options(cfg));
  const json config = {{"command", "scaling"},
                       {"sizes", sizes_json(study.sizes)},
                       {"target", cfg.target},
                       {"mode", to_string(cfg.mode)},
                       {"schedule", to_string(cfg.schedule)},
                       {"rel_tol", cfg.rel_tol},
                       {"step_multiplier", cfg.step_multiplier}};
  if (!cfg.out_path.empty()) {
    Sink sink(cfg.out_path, out);
    CsvWriter csv(sink.get(), describe(config),
                  {"n", "log_n", "tau_star", "p_at_tau_star", "monotone_bracket"});
    for (std::size_t i = 0; i < study.sizes.size(); ++i) {
      const auto& s = study.scans[i];
      csv.row({static_cast<double>(study.sizes[i]),
               std::log(static_cast<double>(study.sizes[i])), s.tau_star,
               s.p_at_tau_star, s.monotone_bracket ? 1.0 : 0.0});
    }
  }
  Sink sink(cfg.json_path, out);
  write_report(sink.get(), config, to_json(study.fit));
  return kExitOk;
}

int cmd_asymptote(const RunConfig& cfg, std::ostream& out) {
  const ProblemSize n{cfg.n};
  const AsymptoteStudy study =
      asymptotic_slope(n, cfg.taus, cfg.mode, cfg.schedule, scan_options(cfg));
  const json config = {{"command", "asymptote"}, {"n", cfg.n},
                       {"taus", cfg.taus},       {"mode", to_string(cfg.mode)},
                       {"schedule", to_string(cfg.schedule)}};
  json result = to_json(study.fit);
  result["taus"] = study.taus;
  result["failure_probabilities"] = study.failures;
  result["excluded_taus"] = study.excluded;
  Sink sink(cfg.out_path, out);
  write_report(sink.get(), config, result);
  return kExitOk;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
  const auto sizes = resolve_sizes(cfg, "8:18");
  const ScheduleComparison cmp =
      schedule_comparison(sizes, cfg.target, scan_options(cfg));
  json config = {{"command", "compare"},
                 {"sizes", sizes_json(sizes)},
                 {"target", cfg.target},
                 {"rel_tol", cfg.rel_tol},
                 {"step_multiplier", cfg.step_multiplier}};
  if (!cfg.out_path.empty()) {
    Sink sink(cfg.out_path, out);
    CsvWriter csv(sink.get(), describe(config),
                  {"n", "tau_it_linear", "tau_it_adiabatic", "tau_rt_adiabatic"});
    for (const ComparisonRow& r : cmp.rows) {
      csv.row({static_cast<double>(r.n), r.it_linear.tau_star,
               r.it_adiabatic.tau_star, r.rt_adiabatic.tau_star});
    }
  }
  const json result = {{"it_linear", to_json(cmp.it_linear_fit)},
                       {"it_adiabatic", to_json(cmp.it_adiabatic_fit)},
                       {"rt_adiabatic", to_json(cmp.rt_adiabatic_fit)}};
  Sink sink(cfg.json_path, out);
  write_report(sink.get(), config, result);
  return kExitOk;
}

int cmd_bounds(const RunConfig& cfg, const CLI::App& sub, std::ostream& out) {
  const double delta = sub.count("--target") > 0
                           ? delta_for_probability(cfg.target)
                           : cfg.delta;
  const double big_n = static_cast<double>(cfg.n);
  const BoundReport report = bound_report(big_n, cfg.tau, delta);
  json config = {{"command", "bounds"},
                 {"n", cfg.n},
                 {"tau", cfg.tau},
                 {"delta", delta}};
  json result = to_json(report);
  if (cfg.quadrature) {
    const ProblemSize n{cfg.n};
    result["i1_lower_half"] = {{"quadrature", i1_quadrature(n, cfg.tau, 0.0, 0.5)},
                               {"bound", i1_lower_half_bound(big_n, cfg.tau)}};
    result["i1_upper_half"] = {{"quadrature", i1_quadrature(n, cfg.tau, 0.5, 1.0)},
                               {"bound", i1_upper_half_bound(big_n, cfg.tau)}};
    result["delta_phi"] = {{"exact", delta_phi_exact(n, 1.0)},
                           {"approx", delta_phi_approx(n, 1.0)}};
  }
  Sink sink(cfg.out_path, out);
  write_report(sink.get(), config, result);
  return kExitOk;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  const ProblemSize n{cfg.n};
  const Schedule schedule = make_schedule(cfg.schedule, n, cfg.tau);
  const std::size_t steps = cfg.steps != 0 ? cfg.steps : default_steps(schedule);
  const double p_full = evolve_full(n, schedule, cfg.mode, steps);
  const double p_reduced =
      success_probability(evolve(n, schedule, cfg.mode, steps).final_state);
  const double diff = std::abs(p_full - p_reduced);
  const json config = {{"command", "validate"},    {"n", cfg.n},
                       {"tau", cfg.tau},           {"mode", to_string(cfg.mode)},
                       {"schedule", to_string(cfg.schedule)},
                       {"steps", steps}};
  const json result = {{"p_full", p_full},
                       {"p_reduced", p_reduced},
                       {"abs_difference", diff},
                       {"tolerance", 1e-8},
                       {"agree", diff <= 1e-8}};
  Sink sink(cfg.out_path, out);
  write_report(sink.get(), config, result);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grover search under real- and imaginary-time quantum annealing"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", cfg.mode_name, "it | rt")
        ->check(CLI::IsMember(kModes, CLI::ignore_case));
  };
  auto add_schedule = [&](CLI::App* sub) {
    sub->add_option("--schedule", cfg.schedule_name, "linear | adiabatic")
        ->check(CLI::IsMember(kSchedules, CLI::ignore_case));
  };
  auto add_n = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--n", cfg.n, "database size N")
                    ->check(CLI::Range(std::uint64_t{2},
                                       std::uint64_t{1} << 62));
    if (required) opt->required();
  };
  auto add_tau = [&](CLI::App* sub) {
    sub->add_option("--tau", cfg.tau, "anneal time")
        ->required()
        ->check(CLI::NonNegativeNumber);
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_path, "output file (default stdout)");
  };
  auto add_target = [&](CLI::App* sub) {
    sub->add_option("--target", cfg.target, "target success probability")
        ->check(CLI::Validator(
            [](std::string& v) -> std::string {
              double p = 0.0;
              if (!CLI::detail::lexical_cast(v, p) || !(p > 0.0 && p < 1.0)) {
                return "target must be a number in (0, 1)";
              }
              return {};
            },
            "(0, 1)"));
  };
  auto add_scan_opts = [&](CLI::App* sub) {
    sub->add_option("--rel-tol", cfg.rel_tol, "relative bisection width")
        ->check(CLI::PositiveNumber);
    sub->add_option("--tau-cap", cfg.tau_cap, "largest tau tried while bracketing")
        ->check(CLI::PositiveNumber);
    sub->add_option("--step-multiplier", cfg.step_multiplier,
                    "scale the default step policy")
        ->check(CLI::PositiveNumber);
    sub->add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
  };
  auto add_sizes = [&](CLI::App* sub, const std::string& default_exp) {
    auto* exp = sub->add_option("--n-exp", cfg.n_exp,
                                "sizes 2^LO..2^HI as LO:HI (default " +
                                    default_exp + ")");
    sub->add_option("--n", cfg.n_list, "explicit sizes")
        ->excludes(exp)
        ->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 62));
    sub->add_option("--json", cfg.json_path, "fit report file (default stdout)");
  };

  auto* evolve_cmd = app.add_subcommand("evolve", "one trajectory as CSV");
  add_n(evolve_cmd, true);
  add_tau(evolve_cmd);
  add_mode(evolve_cmd);
  add_schedule(evolve_cmd);
  evolve_cmd->add_option("--steps", cfg.steps, "RK4 steps (default: certified policy)");
  evolve_cmd->add_option("--stride", cfg.stride, "sample every k steps");
  add_out(evolve_cmd);

  auto* gap_cmd = app.add_subcommand("gap", "spectrum sweep over s as CSV");
  add_n(gap_cmd, true);
  gap_cmd->add_option("--points", cfg.points, "number of s values");
  add_out(gap_cmd);

  auto* scan_cmd = app.add_subcommand("scan", "tau* for one size as JSON");
  add_n(scan_cmd, true);
  add_target(scan_cmd);
  add_mode(scan_cmd);
  add_schedule(scan_cmd);
  add_scan_opts(scan_cmd);
  add_out(scan_cmd);

  auto* scaling_cmd = app.add_subcommand("scaling", "tau* against ln N");
  add_sizes(scaling_cmd, "4:20");
  add_target(scaling_cmd);
  add_mode(scaling_cmd);
  add_schedule(scaling_cmd);
  add_scan_opts(scaling_cmd);
  scaling_cmd->add_option("--out", cfg.out_path, "CSV of the scanned points");

  auto* asym_cmd = app.add_subcommand("asymptote", "power law of 1 - P_opt in tau");
  add_n(asym_cmd, false);
  asym_cmd->add_option("--taus", cfg.taus, "anneal times")->delimiter(',');
  add_mode(asym_cmd);
  add_schedule(asym_cmd);
  asym_cmd->add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
  add_out(asym_cmd);
  cfg.n = 64;

  auto* cmp_cmd = app.add_subcommand("compare", "linear vs local-adiabatic tau*");
  add_sizes(cmp_cmd, "8:18");
  add_target(cmp_cmd);
  add_scan_opts(cmp_cmd);
  cmp_cmd->add_option("--out", cfg.out_path, "CSV table");

  auto* bounds_cmd = app.add_subcommand("bounds", "closed-form bounds as JSON");
  add_n(bounds_cmd, true);
  add_tau(bounds_cmd);
  bounds_cmd->add_option("--delta", cfg.delta, "amplitude-ratio target")
      ->check(CLI::PositiveNumber);
  add_target(bounds_cmd);
  bounds_cmd->add_flag("--quadrature", cfg.quadrature,
                       "also evaluate the I1 and gap-integral quadratures");
  add_out(bounds_cmd);

  auto* validate_cmd =
      app.add_subcommand("validate", "full-space vs reduced evolution as JSON");
  add_n(validate_cmd, true);
  add_tau(validate_cmd);
  add_mode(validate_cmd);
  add_schedule(validate_cmd);
  validate_cmd->add_option("--steps", cfg.steps, "RK4 steps (default policy)");
  add_out(validate_cmd);


  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o;
    std::ostringstream e_out;
    const int code = app.exit(e, o, e_out);
    out << o.str();
    err << e_out.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  cfg.mode = kModes.at(CLI::detail::to_lower(cfg.mode_name));
  cfg.schedule = kSchedules.at(CLI::detail::to_lower(cfg.schedule_name));

  try {
    if (*evolve_cmd) return cmd_evolve(cfg, out);
    if (*gap_cmd) return cmd_gap(cfg, out);
    if (*scan_cmd) return cmd_scan(cfg, out);
    if (*scaling_cmd) return cmd_scaling(cfg, out);
    if (*asym_cmd) return cmd_asymptote(cfg, out);
    if (*cmp_cmd) return cmd_compare(cfg, out);
    if (*bounds_cmd) return cmd_bounds(cfg, *bounds_cmd, out);
    if (*validate_cmd) return cmd_validate(cfg, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace grover_qa::cli
