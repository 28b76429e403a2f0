#include <doctest.h>

#include <cmath>
#include <vector>

#include "grover_qa/bounds.hpp"
#include "grover_qa/errors.hpp"
#include "grover_qa/experiments.hpp"
#include "grover_qa/fitting.hpp"
#include "grover_qa/integrator.hpp"

using namespace grover_qa;

namespace {

double certified_p(std::uint64_t n, ScheduleKind kind, Mode mode, double tau) {
  const auto sched = make_schedule(kind, ProblemSize{n}, tau);
  return evolve_certified(ProblemSize{n}, sched, mode).p_opt;
}

}  // namespace

TEST_CASE("line fit recovers exact data") {
  std::vector<double> x;
  std::vector<double> y;
  for (int k = 4; k <= 20; ++k) {
    x.push_back(k * std::log(2.0));
    y.push_back(2.0 * x.back() + 5.0);
  }
  const auto fit = fit_line(x, y);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(fit.rms_residual <= 1e-10);
  CHECK(fit.points.size() == x.size());

  const std::vector<double> two{1.0, 2.0};
  CHECK_THROWS_AS(fit_line(two, two), DomainError);
  const std::vector<double> same{1.0, 1.0, 1.0};
  CHECK_THROWS_AS(fit_line(same, std::vector<double>{1.0, 2.0, 3.0}), DomainError);
  CHECK_THROWS_AS(fit_line(std::vector<double>{1.0, 2.0, 3.0}, two), DomainError);
}

TEST_CASE("line fit residual") {
  const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> y{0.1, 0.9, 2.1, 2.9};
  const auto fit = fit_line(x, y);
  CHECK(fit.slope == doctest::Approx(0.96));
  CHECK(fit.intercept == doctest::Approx(0.06));
  // residuals +-0.04, +-0.12
  CHECK(fit.rms_residual == doctest::Approx(std::sqrt(0.008)));
}

TEST_CASE("power-law fit recovers exact data") {
  std::vector<double> tau{200.0, 400.0, 800.0, 1600.0};
  std::vector<double> fail;
  for (double t : tau) fail.push_back(7.0 / (t * t));
  const auto fit = fit_power_law(tau, fail);
  CHECK(fit.exponent == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(fit.prefactor == doctest::Approx(7.0).epsilon(1e-10));
  CHECK(fit.rms_residual <= 1e-10);
  fail[1] = 0.0;
  CHECK_THROWS_AS(fit_power_law(tau, fail), DomainError);
}

TEST_CASE("power-of-two sizes") {
  CHECK(power_of_two_sizes(4, 6) == std::vector<std::uint64_t>{16, 32, 64});
  CHECK(power_of_two_sizes(1, 1) == std::vector<std::uint64_t>{2});
  CHECK_THROWS_AS(power_of_two_sizes(6, 4), DomainError);
  CHECK_THROWS_AS(power_of_two_sizes(0, 4), DomainError);
  CHECK_THROWS_AS(power_of_two_sizes(4, 64), DomainError);
}

TEST_CASE("scan_tau basics") {
  const auto trivial = scan_tau(ProblemSize{2}, 0.5, Mode::imaginary_time, ScheduleKind::linear);
  CHECK(trivial.tau_star == 0.0);

  const auto r = scan_tau(ProblemSize{1024}, 0.99, Mode::imaginary_time, ScheduleKind::linear);
  const double fitted = 1.83 * std::log(1024.0) + 5.27;
  CHECK(r.tau_star == doctest::Approx(fitted).epsilon(0.15));
  CHECK(r.p_at_tau_star >= 0.99);
  CHECK(r.monotone_bracket);
  CHECK(r.tau_star >= speed_limit_tau(1024.0, 0.99));

  CHECK_THROWS_AS(scan_tau(ProblemSize{16}, 0.0, Mode::imaginary_time, ScheduleKind::linear),
                  DomainError);
  CHECK_THROWS_AS(scan_tau(ProblemSize{16}, 1.0, Mode::imaginary_time, ScheduleKind::linear),
                  DomainError);
  ScanOptions bad;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(
      scan_tau(ProblemSize{16}, 0.9, Mode::imaginary_time, ScheduleKind::linear, bad),
      DomainError);
  ScanOptions capped;
  capped.tau_cap = 4.0;
  CHECK_THROWS_AS(scan_tau(ProblemSize{1000000}, 0.99, Mode::imaginary_time,
                           ScheduleKind::linear, capped),
                  NumericalError);
}

TEST_CASE("scan_tau is stable under finer steps") {
  ScanOptions fine;
  fine.step_multiplier = 4.0;
  const auto a = scan_tau(ProblemSize{16}, 0.99, Mode::imaginary_time, ScheduleKind::linear);
  const auto b = scan_tau(ProblemSize{16}, 0.99, Mode::imaginary_time, ScheduleKind::linear, fine);
  CHECK(std::abs(a.tau_star - b.tau_star) <= 1e-3 * a.tau_star);
}

TEST_CASE("scan_tau monotone consistency") {
  for (std::uint64_t n : {16ull, 256ull, 4096ull, 1ull << 16}) {
    const auto r = scan_tau(ProblemSize{n}, 0.99, Mode::imaginary_time, ScheduleKind::linear);
    CHECK(certified_p(n, ScheduleKind::linear, Mode::imaginary_time, 1.05 * r.tau_star) >= 0.99);
    CHECK(certified_p(n, ScheduleKind::linear, Mode::imaginary_time, 0.8 * r.tau_star) < 0.99);
  }
}

TEST_CASE("scan_tau on an oscillating response") {
  // Real-time anneals overshoot and oscillate in tau; the grid fallback
  // must return the first crossing.
  const std::uint64_t n = 512;
  const auto r = scan_tau(ProblemSize{n}, 0.99, Mode::real_time, ScheduleKind::local_adiabatic);
  CHECK_FALSE(r.monotone_bracket);
  CHECK(r.p_at_tau_star >= 0.99);
  CHECK(certified_p(n, ScheduleKind::local_adiabatic, Mode::real_time, r.tau_star) >= 0.99);
  const double start = speed_limit_tau(512.0, 0.99);
  for (double tau = start; tau < 0.99 * r.tau_star; tau *= 1.1) {
    CHECK(certified_p(n, ScheduleKind::local_adiabatic, Mode::real_time, tau) < 0.99);
  }
}

TEST_CASE("scaling study") {
  const auto sizes = power_of_two_sizes(4, 10);
  ScanOptions serial;
  serial.threads = 1;
  ScanOptions pooled;
  pooled.threads = 3;
  const auto a = scaling_study(sizes, 0.99, Mode::imaginary_time, ScheduleKind::linear, serial);
  const auto b = scaling_study(sizes, 0.99, Mode::imaginary_time, ScheduleKind::linear, pooled);
  REQUIRE(a.scans.size() == sizes.size());
  CHECK(a.sizes == sizes);
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    CHECK(a.scans[i].tau_star == b.scans[i].tau_star);
    CHECK(a.fit.points[i].first == doctest::Approx(std::log(static_cast<double>(sizes[i]))));
    CHECK(a.fit.points[i].second == a.scans[i].tau_star);
    const auto single = scan_tau(ProblemSize{sizes[i]}, 0.99, Mode::imaginary_time,
                                 ScheduleKind::linear);
    CHECK(single.tau_star == a.scans[i].tau_star);
  }
  CHECK(a.fit.slope == b.fit.slope);
  CHECK(a.fit.slope > 1.0);
  CHECK(a.fit.slope < 3.0);
  CHECK_THROWS_AS(scaling_study({16, 32}, 0.99, Mode::imaginary_time, ScheduleKind::linear),
                  DomainError);
}

TEST_CASE("asymptotic slope") {
  const auto study = asymptotic_slope(ProblemSize{64}, {200.0, 400.0, 800.0, 1600.0},
                                      Mode::imaginary_time, ScheduleKind::linear);
  CHECK(study.taus.size() == 4);
  CHECK(study.excluded.empty());
  CHECK(study.fit.exponent == doctest::Approx(-2.0).epsilon(0.05));
  for (std::size_t i = 0; i < study.taus.size(); ++i) {
    const double d1 = d1_asymptotic(64.0, study.taus[i]);
    CHECK(study.failures[i] == doctest::Approx(d1 * d1).epsilon(0.5));
  }
  // P <= 0.9 is outside the adiabatic regime.
  CHECK_THROWS_AS(asymptotic_slope(ProblemSize{64}, {1.0, 2.0, 4.0}, Mode::imaginary_time,
                                   ScheduleKind::linear),
                  DomainError);
  // At N = 2, 1 - P ~ (0.5 / tau)^2 drops below 1e-12 by tau = 6e5.
  const auto floor = asymptotic_slope(ProblemSize{2}, {200.0, 400.0, 800.0, 6e5},
                                      Mode::imaginary_time, ScheduleKind::linear);
  CHECK(floor.taus == std::vector<double>{200.0, 400.0, 800.0});
  CHECK(floor.excluded == std::vector<double>{6e5});
  CHECK_THROWS_AS(asymptotic_slope(ProblemSize{64}, {200.0, 400.0}, Mode::imaginary_time,
                                   ScheduleKind::linear),
                  DomainError);
}

TEST_CASE("schedule comparison") {
  const auto sizes = power_of_two_sizes(4, 8);
  const auto cmp = schedule_comparison(sizes, 0.99);
  REQUIRE(cmp.rows.size() == sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const auto& row = cmp.rows[i];
    CHECK(row.n == sizes[i]);
    CHECK(row.it_linear.tau_star ==
          scan_tau(ProblemSize{row.n}, 0.99, Mode::imaginary_time, ScheduleKind::linear).tau_star);
    CHECK(row.it_adiabatic.tau_star ==
          scan_tau(ProblemSize{row.n}, 0.99, Mode::imaginary_time, ScheduleKind::local_adiabatic)
              .tau_star);
    CHECK(row.rt_adiabatic.p_at_tau_star >= 0.99);
  }
  CHECK(cmp.it_adiabatic_fit.prefactor > 0.0);
  CHECK(cmp.rt_adiabatic_fit.prefactor > 0.0);
  CHECK_THROWS_AS(schedule_comparison({16, 32}, 0.99), DomainError);
}
