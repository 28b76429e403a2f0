#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "grover_qa/grover_model.hpp"

namespace grover_qa {

enum class ScheduleKind { linear, local_adiabatic };

std::string_view to_string(ScheduleKind kind);

/// One knot of a tabulated schedule in normalized time x = t / tau.
/// `rate` is ds/dx at the knot.
struct ScheduleKnot {
  double x = 0.0;
  double s = 0.0;
  double rate = 0.0;
};

/// Monotone map t -> s(t) on [0, tau] with s(0) = 0 and s(tau) = 1.
///
/// The tabulated shape is stored in normalized time, so `with_tau` rescales a
/// built schedule without redoing the quadrature. Instances are immutable and
/// share their knot table.
class Schedule {
 public:
  static Schedule linear(double tau);

  ScheduleKind kind() const noexcept { return kind_; }
  double tau() const noexcept { return tau_; }

  /// s(t) for t in [0, tau]. A degenerate tau = 0 schedule maps t = 0 to 0.
  double evaluate(double t) const;

  /// Same as evaluate; `hint` remembers the last knot interval so sweeps with
  /// increasing t avoid the binary search. Start with hint = 0.
  double evaluate(double t, std::size_t& hint) const;

  /// ds/dt at t.
  double rate(double t) const;

  /// Upper bound of ds/dt over [0, tau].
  double max_rate() const noexcept;

  Schedule with_tau(double tau) const;

  /// Rate-law constant c (local-adiabatic only; 0 for linear).
  double rate_constant() const noexcept;

  /// Knot table in normalized time; empty for linear schedules.
  const std::vector<ScheduleKnot>& knots() const noexcept;

 private:
  friend Schedule build_local_adiabatic(ProblemSize, double, double,
                                        std::size_t, double);

  struct Table {
    std::vector<ScheduleKnot> knots;
    double max_rate = 0.0;   // max ds/dx
    double clock_total = 0.0;  // integral of gap^-3 over [0, 1]
    double coupling = 0.0;     // sqrt(N - 1) / N
  };

  Schedule(ScheduleKind kind, double tau, std::shared_ptr<const Table> table);

  double normalized(double t) const;
  double interpolate(double x, std::size_t& hint) const;

  ScheduleKind kind_;
  double tau_;
  std::shared_ptr<const Table> table_;
};

/// Local-adiabatic schedule ds/dt = c gap^3 N / sqrt(N - 1), i.e. the rate
/// law gap^2 / <1|H0 - Hq|0> with the closed-form Grover matrix element, with
/// c fixed by s(tau) = 1.
///
/// t(s) is tabulated by adaptive quadrature (relative tolerance `tol`) on
/// `min_knots` Chebyshev-spaced values of s; intervals are then bisected
/// until the cubic Hermite interpolant of s(t) matches the tabulated midpoint
/// to `interp_tol`.
Schedule build_local_adiabatic(ProblemSize n, double tau, double tol = 1e-12,
                               std::size_t min_knots = 1024,
                               double interp_tol = 1e-12);

Schedule make_schedule(ScheduleKind kind, ProblemSize n, double tau);

}  // namespace grover_qa
