#include "grover_qa/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "grover_qa/errors.hpp"

namespace grover_qa {

namespace {

constexpr std::size_t kMaxIntervals = 200000;

struct Piece {
  double a;
  double b;
  double value;
  double error;
  double l1;

  bool operator<(const Piece& other) const { return error < other.error; }
};

// One 7-point Gauss / 15-point Kronrod pass on [a, b]. Abscissae and weights
// come from Boost.Math; the Gauss nodes sit at the even Kronrod indices.
Piece kronrod15(const std::function<double(double)>& f, double a, double b) {
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
  using Gauss = boost::math::quadrature::gauss<double, 7>;
  const auto& x = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();

  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double f0 = f(mid);
  double kronrod = f0 * wk[0];
  double gauss = f0 * wg[0];
  double l1 = std::abs(f0) * wk[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double fp = f(mid + half * x[i]);
    const double fm = f(mid - half * x[i]);
    kronrod += (fp + fm) * wk[i];
    l1 += (std::abs(fp) + std::abs(fm)) * wk[i];
    if (i % 2 == 0) gauss += (fp + fm) * wg[i / 2];
  }
  const double value = kronrod * half;
  const double error = std::abs((kronrod - gauss) * half);
  return {a, b, value, error, l1 * std::abs(half)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, std::span<const double> breakpoints,
                           double rel_tol) {
  if (!(rel_tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  if (!(a <= b)) throw DomainError("quadrature requires a <= b");

  QuadratureResult total;
  if (a == b) return total;

  std::vector<double> edges{a};
  for (double p : breakpoints) {
    if (p > a && p < b) edges.push_back(p);
  }
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  // Global adaptive bisection: always split the piece with the largest error.
  std::priority_queue<Piece> open;
  std::vector<Piece> done;  // pieces too narrow to split further
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    open.push(kronrod15(f, edges[i], edges[i + 1]));
  }

  auto summarize = [&] {
    QuadratureResult r;
    std::vector<Piece> all = done;
    auto copy = open;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    // Sum in interval order so results do not depend on heap layout.
    std::sort(all.begin(), all.end(),
              [](const Piece& x, const Piece& y) { return x.a < y.a; });
    for (const Piece& p : all) {
      r.value += p.value;
      r.error += p.error;
      r.l1 += p.l1;
    }
    return r;
  };

  double error = 0.0;
  double l1 = 0.0;
  auto retally = [&] {
    error = 0.0;
    l1 = 0.0;
    for (const Piece& p : done) {
      error += p.error;
      l1 += p.l1;
    }
    auto copy = open;
    while (!copy.empty()) {
      error += copy.top().error;
      l1 += copy.top().l1;
      copy.pop();
    }
  };
  retally();

  const double eps = std::numeric_limits<double>::epsilon();
  std::size_t pieces = open.size();
  std::size_t since_retally = 0;
  while (!open.empty() && error > rel_tol * l1 && error > 50.0 * eps * l1) {
    if (pieces >= kMaxIntervals) break;
    const Piece worst = open.top();
    open.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        worst.b - worst.a < 8.0 * eps * std::max(std::abs(worst.a), 1e-300)) {
      done.push_back(worst);
      continue;
    }
    const Piece left = kronrod15(f, worst.a, mid);
    const Piece right = kronrod15(f, mid, worst.b);
    error += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    open.push(left);
    open.push(right);
    ++pieces;
    // Running sums drift when large errors cancel; recompute now and then.
    if (++since_retally == 256) {
      retally();
      since_retally = 0;
    }
  }

  total = summarize();
  const double scale = std::max(total.l1, std::abs(total.value));
  if (total.error > rel_tol * scale && total.error > 50.0 * eps * scale) {
    std::ostringstream msg;
    msg << "quadrature did not converge on [" << a << ", " << b
        << "]: achieved relative error " << total.error / scale
        << ", requested " << rel_tol;
    throw NumericalError(msg.str(), total.error / scale);
  }
  return total;
}

}  // namespace grover_qa
