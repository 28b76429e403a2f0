#pragma once

// Grover search annealing Hamiltonian
//
//   H(s) = s H0 + (1 - s) Hq,   H0 = I - |0><0|,   Hq = I - |Psi0><Psi0|
//
// Starting from the uniform superposition the dynamics never leave
// span{|0>, |Psi>} where |Psi> is the uniform superposition over the N - 1
// unmarked items. Everything here is closed form in that 2x2 block.

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace grover_qa {

using Complex = std::complex<double>;

/// Number of database items N (N >= 2).
class ProblemSize {
 public:
  explicit ProblemSize(std::uint64_t n);

  std::uint64_t count() const noexcept { return n_; }
  double value() const noexcept { return static_cast<double>(n_); }

  friend bool operator==(ProblemSize, ProblemSize) = default;

 private:
  std::uint64_t n_;
};

/// Upper triangle of the real symmetric 2x2 block in the basis {|0>, |Psi>}.
struct EffectiveHamiltonian {
  double h00 = 0.0;
  double h01 = 0.0;
  double h11 = 0.0;
  double s = 0.0;

  double trace() const noexcept { return h00 + h11; }
  double determinant() const noexcept { return h00 * h11 - h01 * h01; }
};

/// Instantaneous two-level spectrum. The ground state is
/// p_coeff |0> + q_coeff |Psi>, the excited state -q_coeff |0> + p_coeff |Psi>.
struct SpectralData {
  double eps0 = 0.0;
  double eps1 = 0.0;
  double gap = 0.0;
  double p_coeff = 0.0;
  double q_coeff = 0.0;
};

EffectiveHamiltonian effective_hamiltonian(ProblemSize n, double s);

/// sqrt(1 - 4 (1 - 1/N) s (1 - s)); minimum 1/sqrt(N) at s = 1/2.
double energy_gap(ProblemSize n, double s);

SpectralData spectral_data(ProblemSize n, double s);

/// <1(s)| dH/dt |0(s)> for the linear schedule s = t / tau.
double coupling_matrix_element(ProblemSize n, double s, double tau);

/// Amplitudes of (a_opt, a_rest) on the instantaneous ground/excited states.
struct EigenCoefficients {
  Complex c0;
  Complex c1;
};

EigenCoefficients eigenbasis_projection(Complex a_opt, Complex a_rest,
                                        ProblemSize n, double s);

/// H(s) v in the full N-dimensional space, O(N), without forming H.
/// Index 0 is the marked item.
std::vector<Complex> full_hamiltonian_apply(ProblemSize n, double s,
                                            std::span<const Complex> v);

/// Allocation-free variant; `out` must have length N and must not alias `v`.
void full_hamiltonian_apply(ProblemSize n, double s, std::span<const Complex> v,
                            std::span<Complex> out);

namespace detail {

// Unchecked inner-loop helpers for the integrators.
inline double gap_unchecked(double n, double s) noexcept {
  // 1 - 4(1 - 1/N) s (1 - s) rewritten around s = 1/2 to avoid cancellation.
  const double u = s - 0.5;
  return std::sqrt(1.0 / n + 4.0 * (1.0 - 1.0 / n) * u * u);
}

}  // namespace detail

}  // namespace grover_qa
