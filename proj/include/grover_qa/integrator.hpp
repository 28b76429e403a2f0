#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "grover_qa/grover_model.hpp"
#include "grover_qa/schedule.hpp"

namespace grover_qa {

enum class Mode { real_time, imaginary_time };

std::string_view to_string(Mode mode);

/// Amplitudes on {|0>, |Psi>}. In imaginary time the state is renormalized
/// after every step; log_norm accumulates log of the norm removed, so the
/// unnormalized state is exp(log_norm) * (a_opt, a_rest).
struct EffectiveState {
  Complex a_opt;
  Complex a_rest;
  double log_norm = 0.0;

  double norm_squared() const noexcept {
    return std::norm(a_opt) + std::norm(a_rest);
  }
};

struct TrajectorySample {
  double t = 0.0;
  double s = 0.0;
  double p_opt = 0.0;
  double log_norm = 0.0;
  double gap = 0.0;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  EffectiveState final_state;
  std::size_t steps = 0;
};

/// Uniform superposition |Psi0> = (1/sqrt(N), sqrt(1 - 1/N)).
EffectiveState initial_state(ProblemSize n);

/// |a_opt|^2 / (|a_opt|^2 + |a_rest|^2).
double success_probability(const EffectiveState& state);

/// |a_rest|^2 / (|a_opt|^2 + |a_rest|^2), computed without cancellation.
double failure_probability(const EffectiveState& state);

/// One classical RK4 step of dpsi/dt = -i H(s(t)) psi (real time) or
/// -H(s(t)) psi (imaginary time). Requires dt > 0 and t + dt <= tau.
EffectiveState rk4_step(ProblemSize n, const Schedule& schedule, Mode mode,
                        double t, double dt, const EffectiveState& state);

/// Default step count: max(1e4, ceil(50 tau), ceil(20 tau max ds/dt)).
/// The last term only matters for schedules that sweep s quickly near the
/// ends (local-adiabatic at large N).
std::size_t default_steps(const Schedule& schedule);

/// Fixed-step propagation over [0, tau] with dt = tau / steps. A sample is
/// recorded at t = 0, every `stride` steps and at t = tau; stride = 0 keeps
/// only the two endpoints.
Trajectory evolve(ProblemSize n, const Schedule& schedule, Mode mode,
                  std::size_t steps, std::size_t stride = 0);

struct CertifiedRun {
  EffectiveState final_state;
  double p_opt = 0.0;
  std::size_t steps = 0;
  double last_change = 0.0;  // |P(steps) - P(steps / 2)|
};

/// Default policy: start at default_steps and double the step count until
/// the final success probability moves by less than `tol`.
CertifiedRun evolve_certified(ProblemSize n, const Schedule& schedule,
                              Mode mode, double tol = 1e-9,
                              int max_doublings = 10);

/// Same RK4 scheme on the full N-dimensional state, starting from the
/// uniform vector. Returns the final success probability.
double evolve_full(ProblemSize n, const Schedule& schedule, Mode mode,
                   std::size_t steps, std::uint64_t max_n = 4096);

}  // namespace grover_qa
