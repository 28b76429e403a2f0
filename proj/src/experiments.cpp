#include "grover_qa/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "grover_qa/bounds.hpp"
#include "grover_qa/errors.hpp"

namespace grover_qa {

namespace {

// Runs f(0..count-1) on a small worker pool. Results keep index order and the
// lowest-index exception wins, so output does not depend on scheduling.
template <class F>
auto parallel_map(std::size_t count, unsigned threads, F f)
    -> std::vector<decltype(f(std::size_t{}))> {
  using Result = decltype(f(std::size_t{}));
  std::vector<std::optional<Result>> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        results[i].emplace(f(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<Result> out;
  out.reserve(count);
  for (auto& r : results) out.push_back(std::move(*r));
  return out;
}

void check_target(double p_target) {
  if (!(p_target > 0.0 && p_target < 1.0)) {
    throw DomainError("target probability must lie in (0, 1), got " +
                      std::to_string(p_target));
  }
}

// Final success probability as a function of tau, with each answer checked
// against a run at half the steps. The step count doubles until the
// half-step disagreement is smaller than the distance to the target.
class TargetOracle {
 public:
  TargetOracle(ProblemSize n, Mode mode, ScheduleKind kind, double target,
               double step_multiplier)
      : n_(n),
        mode_(mode),
        shape_(make_schedule(kind, n, 1.0)),
        target_(target),
        multiplier_(step_multiplier) {}

  double probability(double tau) {
    ++evaluations_;
    const Schedule schedule = shape_.with_tau(tau);
    if (tau == 0.0) return success_probability(initial_state(n_));

    auto steps = static_cast<std::size_t>(
        std::ceil(static_cast<double>(default_steps(schedule)) * multiplier_));
    steps = std::max<std::size_t>(steps, 2);
    double coarse = run(schedule, steps / 2);
    double fine = run(schedule, steps);
    for (int i = 0; i < kMaxDoublings; ++i) {
      const double estimate = std::abs(fine - coarse);
      if (std::abs(fine - target_) > estimate || estimate < 1e-13) break;
      steps *= 2;
      coarse = fine;
      fine = run(schedule, steps);
    }
    return fine;
  }

  bool meets(double p) const { return p >= target_; }
  std::size_t evaluations() const { return evaluations_; }

 private:
  static constexpr int kMaxDoublings = 8;

  double run(const Schedule& schedule, std::size_t steps) const {
    return success_probability(evolve(n_, schedule, mode_, steps).final_state);
  }

  ProblemSize n_;
  Mode mode_;
  Schedule shape_;
  double target_;
  double multiplier_;
  std::size_t evaluations_ = 0;
};

// Bisect [lo, hi] where P(lo) misses and P(hi) meets the target.
void bisect(TargetOracle& oracle, double lo, double hi, double p_hi,
            double rel_tol, ScanResult& result) {
  for (int iter = 0; iter < 200 && hi - lo > rel_tol * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double p = oracle.probability(mid);
    if (oracle.meets(p)) {
      hi = mid;
      p_hi = p;
    } else {
      lo = mid;
    }
  }
  result.tau_star = hi;
  result.p_at_tau_star = p_hi;
}

}  // namespace

ScanResult scan_tau(ProblemSize n, double p_target, Mode mode,
                    ScheduleKind kind, const ScanOptions& options) {
  check_target(p_target);
  if (!(options.rel_tol > 0.0)) throw DomainError("rel_tol must be positive");
  if (!(options.step_multiplier > 0.0)) {
    throw DomainError("step multiplier must be positive");
  }
  if (!(options.grid_factor > 1.0) || !(options.grid_start > 0.0)) {
    throw DomainError("fallback grid needs factor > 1 and a positive start");
  }

  TargetOracle oracle(n, mode, kind, p_target, options.step_multiplier);
  ScanResult result;

  const double p0 = oracle.probability(0.0);
  if (oracle.meets(p0)) {
    result.tau_star = 0.0;
    result.p_at_tau_star = p0;
    result.evaluations = oracle.evaluations();
    return result;
  }

  std::vector<std::pair<double, double>> bracket;  // (tau, P) while doubling
  double tau = 1.0;
  double p = oracle.probability(tau);
  bracket.emplace_back(tau, p);
  while (!oracle.meets(p)) {
    tau *= 2.0;
    if (tau > options.tau_cap) {
      std::ostringstream msg;
      msg << "no tau below the cap " << options.tau_cap << " reaches P = "
          << p_target << " (N = " << n.count() << ", " << to_string(mode)
          << ", " << to_string(kind) << "); best P = " << p;
      throw NumericalError(msg.str(), p);
    }
    p = oracle.probability(tau);
    bracket.emplace_back(tau, p);
  }

  result.monotone_bracket = std::is_sorted(
      bracket.begin(), bracket.end(),
      [](const auto& a, const auto& b) { return a.second < b.second; });

  if (result.monotone_bracket) {
    const double lo = bracket.size() > 1 ? tau / 2.0 : 0.0;
    bisect(oracle, lo, tau, p, options.rel_tol, result);
  } else {
    // Walk a dense geometric grid up to the bracket end and bisect inside the
    // first cell that crosses the target. Nothing below the speed limit can
    // reach it, so the grid starts there.
    const double floor = speed_limit_tau(n.value(), p_target);
    double prev = 0.0;
    double cell_hi = tau;
    double p_cell = p;
    for (double g = std::max(options.grid_start, floor); g < tau;
         g *= options.grid_factor) {
      const double pg = oracle.probability(g);
      if (oracle.meets(pg)) {
        cell_hi = g;
        p_cell = pg;
        break;
      }
      prev = g;
    }
    bisect(oracle, prev, cell_hi, p_cell, options.rel_tol, result);
  }
  result.evaluations = oracle.evaluations();
  return result;
}

ScalingStudy scaling_study(const std::vector<std::uint64_t>& sizes,
                           double p_target, Mode mode, ScheduleKind kind,
                           const ScanOptions& options) {
  if (sizes.size() < 3) throw DomainError("scaling study needs >= 3 sizes");
  check_target(p_target);
  std::vector<std::uint64_t> sorted = sizes;
  std::sort(sorted.begin(), sorted.end());
  for (std::uint64_t size : sorted) ProblemSize{size};  // validate up front

  ScalingStudy study;
  study.sizes = sorted;
  study.scans = parallel_map(sorted.size(), options.threads, [&](std::size_t i) {
    return scan_tau(ProblemSize{sorted[i]}, p_target, mode, kind, options);
  });
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    x.push_back(std::log(static_cast<double>(sorted[i])));
    y.push_back(study.scans[i].tau_star);
  }
  study.fit = fit_line(x, y);
  return study;
}

AsymptoteStudy asymptotic_slope(ProblemSize n, const std::vector<double>& taus,
                                Mode mode, ScheduleKind kind,
                                const ScanOptions& options) {
  if (taus.size() < 3) throw DomainError("asymptote fit needs at least 3 taus");
  std::vector<double> sorted = taus;
  std::sort(sorted.begin(), sorted.end());
  for (double tau : sorted) {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
      throw DomainError("asymptote taus must be positive and finite");
    }
  }
  const Schedule shape = make_schedule(kind, n, 1.0);

  const auto failures =
      parallel_map(sorted.size(), options.threads, [&](std::size_t i) {
        const Schedule schedule = shape.with_tau(sorted[i]);
        // Certify 1 - P to a small fraction of itself, not to an absolute
        // 1e-9 that would swamp values near the precision floor.
        const auto coarse = evolve(n, schedule, mode, default_steps(schedule));
        const double guess = failure_probability(coarse.final_state);
        const double tol = std::max(1e-4 * guess, 1e-15);
        const CertifiedRun run = evolve_certified(n, schedule, mode, tol, 12);
        return failure_probability(run.final_state);
      });

  AsymptoteStudy study;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!(failures[i] < 0.1)) {
      std::ostringstream msg;
      msg << "tau = " << sorted[i] << " is outside the adiabatic regime (P_opt = "
          << 1.0 - failures[i] << " <= 0.9)";
      throw DomainError(msg.str());
    }
    if (failures[i] < 1e-12) {
      study.excluded.push_back(sorted[i]);
    } else {
      study.taus.push_back(sorted[i]);
      study.failures.push_back(failures[i]);
    }
  }
  if (study.taus.size() < 3) {
    throw NumericalError(
        "fewer than 3 taus above the 1e-12 precision floor for the power-law fit",
        static_cast<double>(study.taus.size()));
  }
  study.fit = fit_power_law(study.taus, study.failures);
  return study;
}

ScheduleComparison schedule_comparison(const std::vector<std::uint64_t>& sizes,
                                       double p_target,
                                       const ScanOptions& options) {
  if (sizes.size() < 3) throw DomainError("comparison needs >= 3 sizes");
  check_target(p_target);
  std::vector<std::uint64_t> sorted = sizes;
  std::sort(sorted.begin(), sorted.end());
  for (std::uint64_t size : sorted) ProblemSize{size};

  struct Column {
    Mode mode;
    ScheduleKind kind;
  };
  constexpr Column columns[] = {
      {Mode::imaginary_time, ScheduleKind::linear},
      {Mode::imaginary_time, ScheduleKind::local_adiabatic},
      {Mode::real_time, ScheduleKind::local_adiabatic},
  };
  constexpr std::size_t kColumns = std::size(columns);

  // Largest sizes first so the expensive scans start early on a pool.
  const std::size_t tasks = sorted.size() * kColumns;
  auto scans = parallel_map(tasks, options.threads, [&](std::size_t task) {
    const std::size_t row = sorted.size() - 1 - task / kColumns;
    const Column& c = columns[task % kColumns];
    return scan_tau(ProblemSize{sorted[row]}, p_target, c.mode, c.kind, options);
  });

  ScheduleComparison cmp;
  cmp.rows.resize(sorted.size());
  for (std::size_t task = 0; task < tasks; ++task) {
    const std::size_t row = sorted.size() - 1 - task / kColumns;
    ComparisonRow& r = cmp.rows[row];
    r.n = sorted[row];
    switch (task % kColumns) {
      case 0:
        r.it_linear = scans[task];
        break;
      case 1:
        r.it_adiabatic = scans[task];
        break;
      default:
        r.rt_adiabatic = scans[task];
        break;
    }
  }

  std::vector<double> log_n;
  std::vector<double> n_values;
  std::vector<double> it_lin;
  std::vector<double> it_ad;
  std::vector<double> rt_ad;
  for (const ComparisonRow& r : cmp.rows) {
    n_values.push_back(static_cast<double>(r.n));
    log_n.push_back(std::log(static_cast<double>(r.n)));
    it_lin.push_back(r.it_linear.tau_star);
    it_ad.push_back(r.it_adiabatic.tau_star);
    rt_ad.push_back(r.rt_adiabatic.tau_star);
  }
  cmp.it_linear_fit = fit_line(log_n, it_lin);
  cmp.it_adiabatic_fit = fit_power_law(n_values, it_ad);
  cmp.rt_adiabatic_fit = fit_power_law(n_values, rt_ad);
  return cmp;
}

std::vector<std::uint64_t> power_of_two_sizes(int lo, int hi) {
  if (lo < 1 || hi > 62 || lo > hi) {
    throw DomainError("size exponents must satisfy 1 <= lo <= hi <= 62");
  }
  std::vector<std::uint64_t> sizes;
  for (int e = lo; e <= hi; ++e) sizes.push_back(std::uint64_t{1} << e);
  return sizes;
}

}  // namespace grover_qa
