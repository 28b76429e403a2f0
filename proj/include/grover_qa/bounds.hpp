#pragma once

// Closed-form coefficient bounds for imaginary-time annealing of Grover search
// under the linear schedule, plus the quadratures they approximate.
//
// Notation: C_k(s) are the amplitudes on the instantaneous eigenstates,
// phi_k(s) the integrated eigenvalues, and D_1 the excited-state amplitude
// with the common decay exp(-tau phi_0) factored out. All logarithms are
// natural.
//
// The pure closed forms take N as a real number (N > 0, or N > 1 where N - 1
// appears in a denominator); the quadratures need an actual ProblemSize.

#include "grover_qa/grover_model.hpp"

namespace grover_qa {

enum class Level { ground = 0, excited = 1 };

/// phi_level(s) = integral_0^s eps_level(s') ds'.
double phi_exact(ProblemSize n, double s, Level level, double tol = 1e-10);

/// Integral of the gap over [0, s].
double delta_phi_exact(ProblemSize n, double s, double tol = 1e-10);

/// Large-N closed form (s - 1/2) gap(s) / 2 + 1/4.
double delta_phi_approx(ProblemSize n, double s);

/// I1(s_b, s_a) = integral_{s_a}^{s_b} (s - 1/2) gap^-5 exp(tau (s-1/2)|s-1/2|) ds.
double i1_quadrature(ProblemSize n, double tau, double s_a, double s_b,
                     double tol = 1e-12);

/// Closed-form upper bound of I1(1/2, 0).
double i1_lower_half_bound(double n, double tau);

/// Closed-form upper bound of I1(1, 1/2).
double i1_upper_half_bound(double n, double tau);

/// D1(1) <~ 1/(2 sqrt(N)) + exp(-tau/4).
double d1_upper_bound(double n, double tau);

/// Slow-anneal limit D1(1) ~ (1/tau) (sqrt(N-1)/N) (1 - exp(-tau/2)).
double d1_asymptotic(double n, double tau);

/// C1(1) / C0(1) <~ 1/2 + sqrt(N) exp(-tau/4).
double ratio_bound(double n, double tau);

/// Anneal time at which sqrt(N) exp(-tau/4) = delta: 2 ln(N / delta^2).
double required_tau(double n, double delta);

/// Shortest anneal that can lift the success probability from 1/N to p.
/// The state moves at Fubini-Study speed Delta E <= gap / 2 <= 1/2 in both
/// real and imaginary time, so tau >= 2 (asin sqrt(p) - asin sqrt(1/N)).
double speed_limit_tau(double n, double p);
/// Amplitude ratio delta giving success probability p = 1 / (1 + delta^2).
double delta_for_probability(double p);

struct BoundReport {
  double d1_upper = 0.0;
  double d1_asymptotic = 0.0;
  double ratio_bound = 0.0;
  double tau_required = 0.0;
};

BoundReport bound_report(double n, double tau, double delta);

}  // namespace grover_qa
