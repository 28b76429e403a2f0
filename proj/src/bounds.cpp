#include "grover_qa/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "grover_qa/errors.hpp"
#include "grover_qa/quadrature.hpp"

namespace grover_qa {

namespace {

void check_s(double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw DomainError("s must lie in [0, 1], got " + std::to_string(s));
  }
}

void check_size(double n, double min) {
  if (!(n > min) || !std::isfinite(n)) {
    throw DomainError("N must be finite and greater than " +
                      std::to_string(min) + ", got " + std::to_string(n));
  }
}

void check_tau_nonnegative(double tau) {
  if (!(tau >= 0.0)) {
    throw DomainError("tau must be non-negative, got " + std::to_string(tau));
  }
}

// Breakpoints that resolve the 1/sqrt(N)-wide feature around s = 1/2.
std::array<double, 9> gap_breakpoints(double n) {
  const double w = 1.0 / std::sqrt(n);
  return {0.5 - 64.0 * w, 0.5 - 16.0 * w, 0.5 - 4.0 * w, 0.5 - w, 0.5,
          0.5 + w,        0.5 + 4.0 * w,  0.5 + 16.0 * w, 0.5 + 64.0 * w};
}

// (sqrt(N) - 1) / (sqrt(N) + 1), the factor left by the linear lower bound of
// sqrt(x) on [1, N].
double chord_factor(double n) {
  const double r = std::sqrt(n);
  return (r - 1.0) / (r + 1.0);
}

}  // namespace

double phi_exact(ProblemSize n, double s, Level level, double tol) {
  check_s(s);
  const double big_n = n.value();
  const double sign = level == Level::ground ? -1.0 : 1.0;
  const auto pts = gap_breakpoints(big_n);
  return integrate(
             [big_n, sign](double x) {
               return 0.5 * (1.0 + sign * detail::gap_unchecked(big_n, x));
             },
             0.0, s, pts, tol)
      .value;
}

double delta_phi_exact(ProblemSize n, double s, double tol) {
  check_s(s);
  const double big_n = n.value();
  const auto pts = gap_breakpoints(big_n);
  return integrate(
             [big_n](double x) { return detail::gap_unchecked(big_n, x); }, 0.0,
             s, pts, tol)
      .value;
}

double delta_phi_approx(ProblemSize n, double s) {
  return 0.5 * (s - 0.5) * energy_gap(n, s) + 0.25;
}

double i1_quadrature(ProblemSize n, double tau, double s_a, double s_b,
                     double tol) {
  check_s(s_a);
  check_s(s_b);
  if (!(s_a <= s_b)) throw DomainError("i1_quadrature needs s_a <= s_b");
  const double big_n = n.value();
  const auto pts = gap_breakpoints(big_n);
  return integrate(
             [big_n, tau](double s) {
               const double u = s - 0.5;
               const double g = detail::gap_unchecked(big_n, s);
               const double g2 = g * g;
               return u / (g2 * g2 * g) * std::exp(tau * u * std::abs(u));
             },
             s_a, s_b, pts, tol)
      .value;
}

double i1_lower_half_bound(double n, double tau) {
  check_size(n, 1.0);
  check_tau_nonnegative(tau);
  const double q = chord_factor(n);
  const double x = tau / (n - 1.0);
  return -std::pow(n, 2.5) / (12.0 * (n - 1.0)) * (1.0 - 0.5 * q * x) +
         n / (12.0 * (n - 1.0)) * std::exp(-tau / 4.0) * (1.0 + 0.5 * q * n * x);
}

double i1_upper_half_bound(double n, double tau) {
  check_size(n, 1.0);
  check_tau_nonnegative(tau);
  const double q = chord_factor(n);
  const double x = tau / (n - 1.0);
  return -n / (12.0 * (n - 1.0)) * std::exp(tau / 4.0) * (1.0 - 0.5 * q * n * x) +
         std::pow(n, 2.5) / (12.0 * (n - 1.0)) * (1.0 + 0.5 * q * x);
}

double d1_upper_bound(double n, double tau) {
  check_size(n, 0.0);
  check_tau_nonnegative(tau);
  return 0.5 / std::sqrt(n) + std::exp(-tau / 4.0);
}

double d1_asymptotic(double n, double tau) {
  if (!(n >= 1.0) || !std::isfinite(n)) {
    throw DomainError("d1_asymptotic needs N >= 1, got " + std::to_string(n));
  }
  if (!(tau > 0.0)) {
    throw DomainError("d1_asymptotic needs tau > 0, got " + std::to_string(tau));
  }
  return std::sqrt(n - 1.0) / n * (-std::expm1(-tau / 2.0)) / tau;
}

double ratio_bound(double n, double tau) {
  check_size(n, 0.0);
  check_tau_nonnegative(tau);
  return 0.5 + std::sqrt(n) * std::exp(-tau / 4.0);
}

double required_tau(double n, double delta) {
  check_size(n, 0.0);
  if (!(delta > 0.0)) {
    throw DomainError("required_tau needs delta > 0, got " +
                      std::to_string(delta));
  }
  return 2.0 * std::log(n / (delta * delta));
}

double delta_for_probability(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("target probability must lie in (0, 1), got " +
                      std::to_string(p));
  }
  return std::sqrt((1.0 - p) / p);
}

double speed_limit_tau(double n, double p) {
  if (!(n >= 1.0)) throw DomainError("speed limit needs N >= 1");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("probability must lie in [0, 1], got " + std::to_string(p));
  }
  return 2.0 * std::max(0.0, std::asin(std::sqrt(p)) - std::asin(std::sqrt(1.0 / n)));
}

BoundReport bound_report(double n, double tau, double delta) {
  if (!(n >= 1.0)) throw DomainError("bound report needs N >= 1");
  BoundReport r;
  r.d1_upper = d1_upper_bound(n, tau);
  // tau -> 0 limit of (1 - exp(-tau/2)) / tau is 1/2.
  r.d1_asymptotic =
      tau > 0.0 ? d1_asymptotic(n, tau) : 0.5 * std::sqrt(n - 1.0) / n;
  r.ratio_bound = ratio_bound(n, tau);
  r.tau_required = required_tau(n, delta);
  return r;
}

}  // namespace grover_qa
