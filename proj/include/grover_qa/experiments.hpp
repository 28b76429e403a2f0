#pragma once

#include <cstdint>
#include <vector>

#include "grover_qa/fitting.hpp"
#include "grover_qa/integrator.hpp"
#include "grover_qa/schedule.hpp"

namespace grover_qa {

struct ScanOptions {
  double rel_tol = 1e-3;
  double tau_cap = 1e7;
  /// Multiplies the default step policy (4 gives the "4x finer dt" rerun).
  double step_multiplier = 1.0;
  /// Growth factor of the fallback grid used when the bracket is not monotone.
  double grid_factor = 1.02;
  double grid_start = 1e-2;
  /// Worker threads for multi-size studies; 0 = hardware concurrency.
  unsigned threads = 0;
};

struct ScanResult {
  double tau_star = 0.0;
  double p_at_tau_star = 0.0;
  bool monotone_bracket = true;  // false: the grid fallback was used
  std::size_t evaluations = 0;
};

/// Smallest tau whose final success probability reaches p_target: doubling
/// from tau = 1 to bracket, then bisection to relative width rel_tol. Each
/// probability is certified against a half-step run before its side of the
/// target is trusted.
ScanResult scan_tau(ProblemSize n, double p_target, Mode mode,
                    ScheduleKind kind, const ScanOptions& options = {});

struct ScalingStudy {
  std::vector<std::uint64_t> sizes;
  std::vector<ScanResult> scans;
  ScalingFit fit;  // tau* against ln N
};

ScalingStudy scaling_study(const std::vector<std::uint64_t>& sizes,
                           double p_target, Mode mode, ScheduleKind kind,
                           const ScanOptions& options = {});

struct AsymptoteStudy {
  std::vector<double> taus;         // taus kept in the fit
  std::vector<double> failures;     // 1 - P_opt at those taus
  std::vector<double> excluded;     // taus below the precision floor
  PowerLawFit fit;
};

/// Power-law fit of 1 - P_opt(tau) against tau. Every run must end with
/// P_opt > 0.9; runs with 1 - P_opt < 1e-12 are excluded.
AsymptoteStudy asymptotic_slope(ProblemSize n, const std::vector<double>& taus,
                                Mode mode, ScheduleKind kind,
                                const ScanOptions& options = {});

struct ComparisonRow {
  std::uint64_t n = 0;
  ScanResult it_linear;
  ScanResult it_adiabatic;
  ScanResult rt_adiabatic;
};

struct ScheduleComparison {
  std::vector<ComparisonRow> rows;
  ScalingFit it_linear_fit;        // tau* = a ln N + b
  PowerLawFit it_adiabatic_fit;    // tau* = c N^k
  PowerLawFit rt_adiabatic_fit;
};

ScheduleComparison schedule_comparison(const std::vector<std::uint64_t>& sizes,
                                       double p_target,
                                       const ScanOptions& options = {});

/// Powers of two 2^lo .. 2^hi inclusive.
std::vector<std::uint64_t> power_of_two_sizes(int lo, int hi);

}  // namespace grover_qa
