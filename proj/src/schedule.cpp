#include "grover_qa/schedule.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "grover_qa/errors.hpp"
#include "grover_qa/quadrature.hpp"

namespace grover_qa {

namespace {

constexpr int kMaxRefineDepth = 48;

struct ClockKnot {
  double s;
  double clock;  // integral of gap^-3 from 0 to s
  double slope;  // ds/dclock = gap^3
};

double hermite(double x0, double x1, double y0, double y1, double m0, double m1,
               double x) {
  const double h = x1 - x0;
  const double w = (x - x0) / h;
  const double w2 = w * w;
  const double w3 = w2 * w;
  return (2.0 * w3 - 3.0 * w2 + 1.0) * y0 + (w3 - 2.0 * w2 + w) * h * m0 +
         (-2.0 * w3 + 3.0 * w2) * y1 + (w3 - w2) * h * m1;
}

double hermite_slope(double x0, double x1, double y0, double y1, double m0,
                     double m1, double x) {
  const double h = x1 - x0;
  const double w = (x - x0) / h;
  const double w2 = w * w;
  return ((6.0 * w2 - 6.0 * w) * y0 + (-6.0 * w2 + 6.0 * w) * y1) / h +
         (3.0 * w2 - 4.0 * w + 1.0) * m0 + (3.0 * w2 - 2.0 * w) * m1;
}

class ClockIntegrator {
 public:
  ClockIntegrator(double n, double tol) : n_(n), tol_(tol) {}

  double operator()(double a, double b) const {
    const std::array<double, 1> mid{0.5};
    return integrate(
               [this](double s) {
                 const double g = detail::gap_unchecked(n_, s);
                 return 1.0 / (g * g * g);
               },
               a, b, mid, tol_)
        .value;
  }

  double slope(double s) const {
    const double g = detail::gap_unchecked(n_, s);
    return g * g * g;
  }

 private:
  double n_;
  double tol_;
};

// Appends the knots strictly after `left` up to and including `right`,
// bisecting in s until the Hermite interpolant of s(clock) reproduces the
// midpoint.
void refine(const ClockIntegrator& clock, const ClockKnot& left,
            const ClockKnot& right, double interp_tol, int depth,
            std::vector<ClockKnot>& out) {
  const double s_mid = 0.5 * (left.s + right.s);
  if (depth < kMaxRefineDepth && s_mid > left.s && s_mid < right.s) {
    const ClockKnot mid{s_mid, left.clock + clock(left.s, s_mid),
                        clock.slope(s_mid)};
    const double predicted =
        hermite(left.clock, right.clock, left.s, right.s, left.slope,
                right.slope, mid.clock);
    if (std::abs(predicted - s_mid) > interp_tol) {
      refine(clock, left, mid, interp_tol, depth + 1, out);
      refine(clock, mid, right, interp_tol, depth + 1, out);
      return;
    }
  }
  out.push_back(right);
}

// Fritsch-Carlson limiter: shrink slopes where the cubic would overshoot.
void enforce_monotone(std::vector<ScheduleKnot>& knots) {
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const double delta =
        (knots[k + 1].s - knots[k].s) / (knots[k + 1].x - knots[k].x);
    if (delta <= 0.0) {
      knots[k].rate = 0.0;
      knots[k + 1].rate = 0.0;
      continue;
    }
    const double alpha = knots[k].rate / delta;
    const double beta = knots[k + 1].rate / delta;
    const double r2 = alpha * alpha + beta * beta;
    if (r2 > 9.0) {
      const double shrink = 3.0 / std::sqrt(r2);
      knots[k].rate = shrink * alpha * delta;
      knots[k + 1].rate = shrink * beta * delta;
    }
  }
}

void check_tau(double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw DomainError("anneal time tau must be finite and non-negative, got " +
                      std::to_string(tau));
  }
}

}  // namespace

std::string_view to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::linear:
      return "linear";
    case ScheduleKind::local_adiabatic:
      return "adiabatic";
  }
  return "unknown";
}

Schedule::Schedule(ScheduleKind kind, double tau,
                   std::shared_ptr<const Table> table)
    : kind_(kind), tau_(tau), table_(std::move(table)) {}

Schedule Schedule::linear(double tau) {
  check_tau(tau);
  return Schedule(ScheduleKind::linear, tau, nullptr);
}

Schedule Schedule::with_tau(double tau) const {
  check_tau(tau);
  return Schedule(kind_, tau, table_);
}

double Schedule::normalized(double t) const {
  const double slack = 1e-12 * std::max(tau_, 1.0);
  if (!(t >= -slack && t <= tau_ + slack)) {
    throw DomainError("schedule time t = " + std::to_string(t) +
                      " outside [0, " + std::to_string(tau_) + "]");
  }
  if (tau_ == 0.0) return 0.0;
  return std::clamp(t / tau_, 0.0, 1.0);
}

double Schedule::evaluate(double t) const {
  std::size_t hint = 0;
  return evaluate(t, hint);
}

double Schedule::evaluate(double t, std::size_t& hint) const {
  const double x = normalized(t);
  if (kind_ == ScheduleKind::linear) return x;
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return interpolate(x, hint);
}

double Schedule::interpolate(double x, std::size_t& hint) const {
  const auto& knots = table_->knots;
  // Invariant on exit: knots[hint].x <= x < knots[hint + 1].x.
  if (hint + 1 >= knots.size() || knots[hint].x > x) hint = 0;
  std::size_t steps = 0;
  while (knots[hint + 1].x <= x && ++steps < 8) ++hint;
  if (knots[hint + 1].x <= x) {
    const auto hi = std::upper_bound(
        knots.begin() + static_cast<std::ptrdiff_t>(hint), knots.end(), x,
        [](double value, const ScheduleKnot& k) { return value < k.x; });
    hint = static_cast<std::size_t>(hi - knots.begin()) - 1;
  }
  const auto& k0 = knots[hint];
  const auto& k1 = knots[hint + 1];
  return hermite(k0.x, k1.x, k0.s, k1.s, k0.rate, k1.rate, x);
}

double Schedule::rate(double t) const {
  const double x = normalized(t);
  if (kind_ == ScheduleKind::linear) return 1.0 / tau_;

  const auto& knots = table_->knots;
  auto hi = std::upper_bound(
      knots.begin(), knots.end(), x,
      [](double value, const ScheduleKnot& k) { return value < k.x; });
  if (hi == knots.end()) --hi;
  if (hi == knots.begin()) ++hi;
  const auto& k1 = *hi;
  const auto& k0 = *(hi - 1);
  return hermite_slope(k0.x, k1.x, k0.s, k1.s, k0.rate, k1.rate, x) / tau_;
}

double Schedule::max_rate() const noexcept {
  if (kind_ == ScheduleKind::linear) return 1.0 / tau_;
  return table_->max_rate / tau_;
}

double Schedule::rate_constant() const noexcept {
  if (kind_ == ScheduleKind::linear) return 0.0;
  return table_->clock_total * table_->coupling / tau_;
}

const std::vector<ScheduleKnot>& Schedule::knots() const noexcept {
  static const std::vector<ScheduleKnot> empty;
  return table_ ? table_->knots : empty;
}

Schedule build_local_adiabatic(ProblemSize n, double tau, double tol,
                               std::size_t min_knots, double interp_tol) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw DomainError("local-adiabatic schedule needs tau > 0, got " +
                      std::to_string(tau));
  }
  if (!(tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  if (!(interp_tol > 0.0)) {
    throw DomainError("interpolation tolerance must be positive");
  }
  min_knots = std::max<std::size_t>(min_knots, 2);

  const ClockIntegrator clock(n.value(), tol);

  // The gap is symmetric about s = 1/2, so t(1 - s) = tau - t(s). Tabulate
  // [0, 1/2] with the clock measured from s = 0 and mirror it; a clock taken
  // from s = 0 all the way to 1 loses ~N ulps near s = 1.
  std::vector<double> seeds;
  const std::size_t last = min_knots - 1;
  for (std::size_t k = 0; 2 * k < last; ++k) {
    const double angle = std::numbers::pi * static_cast<double>(k) /
                         static_cast<double>(last);
    seeds.push_back(0.5 * (1.0 - std::cos(angle)));
  }
  seeds.front() = 0.0;
  seeds.push_back(0.5);

  std::vector<ClockKnot> coarse;
  coarse.reserve(seeds.size());
  coarse.push_back({0.0, 0.0, clock.slope(0.0)});
  for (std::size_t k = 1; k < seeds.size(); ++k) {
    const ClockKnot& prev = coarse.back();
    coarse.push_back({seeds[k], prev.clock + clock(prev.s, seeds[k]),
                      clock.slope(seeds[k])});
  }

  std::vector<ClockKnot> half{coarse.front()};
  for (std::size_t k = 0; k + 1 < coarse.size(); ++k) {
    refine(clock, coarse[k], coarse[k + 1], interp_tol, 0, half);
  }

  auto table = std::make_shared<Schedule::Table>();
  const double half_clock = half.back().clock;
  table->clock_total = 2.0 * half_clock;
  table->coupling = std::sqrt(n.value() - 1.0) / n.value();
  table->max_rate = table->clock_total;  // gap^3 peaks at 1 on the endpoints

  auto& knots = table->knots;
  knots.reserve(2 * half.size() - 1);
  for (const ClockKnot& k : half) {
    knots.push_back({0.5 * k.clock / half_clock, k.s,
                     k.slope * table->clock_total});
  }
  knots.back().x = 0.5;
  for (std::size_t i = half.size() - 1; i-- > 0;) {
    const ScheduleKnot& m = knots[i];
    knots.push_back({1.0 - m.x, 1.0 - m.s, m.rate});
  }
  enforce_monotone(knots);

  return Schedule(ScheduleKind::local_adiabatic, tau, std::move(table));
}

Schedule make_schedule(ScheduleKind kind, ProblemSize n, double tau) {
  if (kind == ScheduleKind::linear) return Schedule::linear(tau);
  check_tau(tau);
  return build_local_adiabatic(n, 1.0).with_tau(tau);
}

}  // namespace grover_qa
