#include "grover_qa/grover_model.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "grover_qa/errors.hpp"

namespace grover_qa {

namespace {

void check_s(double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw DomainError("annealing parameter s must lie in [0, 1], got " +
                      std::to_string(s));
  }
}

double clamped_sqrt(double radicand) {
  // Closed-form radicands can round to tiny negatives at the endpoints.
  if (radicand < 0.0 && radicand >= -1e-14) return 0.0;
  return std::sqrt(radicand);
}

}  // namespace

ProblemSize::ProblemSize(std::uint64_t n) : n_(n) {
  if (n < 2) {
    throw DomainError("problem size N must be at least 2, got " +
                      std::to_string(n));
  }
}

EffectiveHamiltonian effective_hamiltonian(ProblemSize n, double s) {
  check_s(s);
  const double big_n = n.value();
  const double fluct = 1.0 - s;
  EffectiveHamiltonian h;
  h.s = s;
  h.h00 = fluct * (1.0 - 1.0 / big_n);
  h.h01 = -fluct * std::sqrt(big_n - 1.0) / big_n;
  h.h11 = s + fluct / big_n;
  return h;
}

double energy_gap(ProblemSize n, double s) {
  check_s(s);
  return detail::gap_unchecked(n.value(), s);
}

SpectralData spectral_data(ProblemSize n, double s) {
  const double gap = energy_gap(n, s);
  const double big_n = n.value();
  const double shift = (0.5 - (1.0 - 1.0 / big_n) * (1.0 - s)) / gap;

  SpectralData d;
  d.gap = gap;
  d.eps0 = 0.5 * (1.0 - gap);
  d.eps1 = 0.5 * (1.0 + gap);
  d.p_coeff = clamped_sqrt(0.5 + shift);
  d.q_coeff = clamped_sqrt(0.5 - shift);
  return d;
}

double coupling_matrix_element(ProblemSize n, double s, double tau) {
  if (!(tau > 0.0)) {
    throw DomainError("anneal time tau must be positive, got " +
                      std::to_string(tau));
  }
  const double big_n = n.value();
  return std::sqrt(big_n - 1.0) / big_n / energy_gap(n, s) / tau;
}

EigenCoefficients eigenbasis_projection(Complex a_opt, Complex a_rest,
                                        ProblemSize n, double s) {
  const SpectralData d = spectral_data(n, s);
  return {d.p_coeff * a_opt + d.q_coeff * a_rest,
          -d.q_coeff * a_opt + d.p_coeff * a_rest};
}

void full_hamiltonian_apply(ProblemSize n, double s, std::span<const Complex> v,
                            std::span<Complex> out) {
  check_s(s);
  if (v.size() != n.count() || out.size() != n.count()) {
    throw DomainError("state vector length " + std::to_string(v.size()) +
                      " does not match N = " + std::to_string(n.count()));
  }
  // (1 - s) <Psi0|v> Psi0 is (1 - s) * mean(v) in every component.
  const Complex mean =
      std::accumulate(v.begin(), v.end(), Complex{}) / n.value();
  const Complex uniform = (1.0 - s) * mean;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] - uniform;
  out[0] -= s * v[0];
}

std::vector<Complex> full_hamiltonian_apply(ProblemSize n, double s,
                                            std::span<const Complex> v) {
  std::vector<Complex> out(v.size());
  full_hamiltonian_apply(n, s, v, out);
  return out;
}

}  // namespace grover_qa
