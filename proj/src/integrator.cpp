#include "grover_qa/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "grover_qa/errors.hpp"

namespace grover_qa {

namespace {

constexpr Complex kMinusI{0.0, -1.0};

struct Pair {
  Complex opt;
  Complex rest;
};

Pair operator+(Pair a, Pair b) { return {a.opt + b.opt, a.rest + b.rest}; }
Pair operator*(double k, Pair a) { return {k * a.opt, k * a.rest}; }

// Generator f(psi) = -H psi or -i H psi at fixed s. Entries of H inline from
// effective_hamiltonian without the domain checks.
class Generator {
 public:
  Generator(ProblemSize n, Mode mode)
      : inv_n_(1.0 / n.value()),
        coupling_(std::sqrt(n.value() - 1.0) / n.value()),
        factor_(mode == Mode::real_time ? kMinusI : Complex{-1.0, 0.0}) {}

  Pair operator()(double s, Pair psi) const {
    const double fluct = 1.0 - s;
    const double h00 = fluct * (1.0 - inv_n_);
    const double h01 = -fluct * coupling_;
    const double h11 = s + fluct * inv_n_;
    return {factor_ * (h00 * psi.opt + h01 * psi.rest),
            factor_ * (h01 * psi.opt + h11 * psi.rest)};
  }

 private:
  double inv_n_;
  double coupling_;
  Complex factor_;
};

Pair rk4(const Generator& f, double s0, double s_mid, double s1, double dt,
         Pair y) {
  const Pair k1 = f(s0, y);
  const Pair k2 = f(s_mid, y + (0.5 * dt) * k1);
  const Pair k3 = f(s_mid, y + (0.5 * dt) * k2);
  const Pair k4 = f(s1, y + dt * k3);
  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

EffectiveState finish_step(Mode mode, Pair y, double log_norm) {
  EffectiveState out{y.opt, y.rest, log_norm};
  if (mode == Mode::imaginary_time) {
    const double norm = std::sqrt(out.norm_squared());
    out.a_opt /= norm;
    out.a_rest /= norm;
    out.log_norm += std::log(norm);
  }
  return out;
}

TrajectorySample sample(double n, double t, double s,
                        const EffectiveState& state) {
  return {t, s, success_probability(state), state.log_norm,
          detail::gap_unchecked(n, s)};
}

}  // namespace

std::string_view to_string(Mode mode) {
  return mode == Mode::real_time ? "rt" : "it";
}

EffectiveState initial_state(ProblemSize n) {
  const double p = 1.0 / n.value();
  return {Complex{std::sqrt(p), 0.0}, Complex{std::sqrt(1.0 - p), 0.0}, 0.0};
}

double success_probability(const EffectiveState& state) {
  const double total = state.norm_squared();
  if (!(total > 0.0)) {
    throw NumericalError("success probability of a zero-norm state", total);
  }
  return std::norm(state.a_opt) / total;
}

double failure_probability(const EffectiveState& state) {
  const double total = state.norm_squared();
  if (!(total > 0.0)) {
    throw NumericalError("failure probability of a zero-norm state", total);
  }
  return std::norm(state.a_rest) / total;
}

EffectiveState rk4_step(ProblemSize n, const Schedule& schedule, Mode mode,
                        double t, double dt, const EffectiveState& state) {
  if (!(dt > 0.0)) throw DomainError("RK4 step needs dt > 0");
  if (t + dt > schedule.tau() + 1e-12) {
    throw DomainError("RK4 step leaves the schedule window [0, tau]");
  }
  const double t1 = std::min(t + dt, schedule.tau());
  const Generator f(n, mode);
  const Pair y = rk4(f, schedule.evaluate(t), schedule.evaluate(t + 0.5 * dt),
                     schedule.evaluate(t1), dt, {state.a_opt, state.a_rest});
  return finish_step(mode, y, state.log_norm);
}

std::size_t default_steps(const Schedule& schedule) {
  const double tau = schedule.tau();
  if (tau == 0.0) return 1;
  const double by_time = std::ceil(50.0 * tau);
  const double by_sweep = std::ceil(20.0 * tau * schedule.max_rate());
  return static_cast<std::size_t>(std::max({1e4, by_time, by_sweep}));
}

Trajectory evolve(ProblemSize n, const Schedule& schedule, Mode mode,
                  std::size_t steps, std::size_t stride) {
  if (steps < 1) throw DomainError("evolve needs at least one step");
  const double big_n = n.value();
  const double tau = schedule.tau();

  Trajectory traj;
  traj.steps = steps;
  EffectiveState state = initial_state(n);
  traj.samples.push_back(sample(big_n, 0.0, 0.0, state));
  if (tau == 0.0) {
    traj.final_state = state;
    return traj;
  }

  const Generator f(n, mode);
  const double dt = tau / static_cast<double>(steps);
  std::size_t hint = 0;
  double s0 = schedule.evaluate(0.0, hint);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const bool last = k + 1 == steps;
    const double t1 = last ? tau : static_cast<double>(k + 1) * dt;
    const double s_mid = schedule.evaluate(t + 0.5 * dt, hint);
    const double s1 = schedule.evaluate(t1, hint);
    const Pair y = rk4(f, s0, s_mid, s1, dt, {state.a_opt, state.a_rest});
    state = finish_step(mode, y, state.log_norm);
    s0 = s1;
    if (last || (stride != 0 && (k + 1) % stride == 0)) {
      traj.samples.push_back(sample(big_n, t1, s1, state));
    }
  }
  traj.final_state = state;
  return traj;
}

CertifiedRun evolve_certified(ProblemSize n, const Schedule& schedule,
                              Mode mode, double tol, int max_doublings) {
  if (!(tol > 0.0)) throw DomainError("convergence tolerance must be positive");
  std::size_t steps = default_steps(schedule);
  Trajectory run = evolve(n, schedule, mode, steps);
  if (schedule.tau() == 0.0) {
    return {run.final_state, success_probability(run.final_state), steps, 0.0};
  }
  double p = success_probability(run.final_state);
  for (int i = 0; i < max_doublings; ++i) {
    steps *= 2;
    Trajectory finer = evolve(n, schedule, mode, steps);
    const double p_finer = success_probability(finer.final_state);
    const double change = std::abs(p_finer - p);
    if (change < tol) return {finer.final_state, p_finer, steps, change};
    p = p_finer;
  }
  std::ostringstream msg;
  msg << "step halving did not converge to " << tol << " within "
      << max_doublings << " doublings (" << steps << " steps)";
  throw NumericalError(msg.str(), tol);
}

double evolve_full(ProblemSize n, const Schedule& schedule, Mode mode,
                   std::size_t steps, std::uint64_t max_n) {
  if (n.count() > max_n) {
    throw DomainError("full-space evolution capped at N = " +
                      std::to_string(max_n) + ", got " +
                      std::to_string(n.count()));
  }
  if (steps < 1) throw DomainError("evolve needs at least one step");
  const std::size_t dim = n.count();
  const double tau = schedule.tau();
  std::vector<Complex> psi(dim, Complex{1.0 / std::sqrt(n.value()), 0.0});

  auto probability = [&] {
    double total = 0.0;
    for (const Complex& a : psi) total += std::norm(a);
    return std::norm(psi[0]) / total;
  };
  if (tau == 0.0) return probability();

  const Complex factor = mode == Mode::real_time ? kMinusI : Complex{-1.0, 0.0};
  std::vector<Complex> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
  auto apply = [&](double s, const std::vector<Complex>& v,
                   std::vector<Complex>& out) {
    full_hamiltonian_apply(n, s, v, out);
    for (Complex& x : out) x *= factor;
  };

  const double dt = tau / static_cast<double>(steps);
  double s0 = schedule.evaluate(0.0);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double t1 = k + 1 == steps ? tau : static_cast<double>(k + 1) * dt;
    const double s_mid = schedule.evaluate(t + 0.5 * dt);
    const double s1 = schedule.evaluate(t1);

    apply(s0, psi, k1);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = psi[i] + 0.5 * dt * k1[i];
    apply(s_mid, tmp, k2);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = psi[i] + 0.5 * dt * k2[i];
    apply(s_mid, tmp, k3);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = psi[i] + dt * k3[i];
    apply(s1, tmp, k4);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      psi[i] += (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      norm2 += std::norm(psi[i]);
    }
    if (mode == Mode::imaginary_time) {
      const double norm = std::sqrt(norm2);
      for (Complex& a : psi) a /= norm;
    }
    s0 = s1;
  }
  return probability();
}

}  // namespace grover_qa
