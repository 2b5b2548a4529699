#pragma once

// Thin wrappers over Boost.Math quadrature used by the Green's tensor and
// Kramers-Kronig code. Not installed.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cavityvdw/errors.hpp"
#include "cavityvdw/types.hpp"

namespace cavityvdw::detail {

template <class T>
struct Integral {
  T value{};
  double error = 0.0;  // summed error estimate
  double l1 = 0.0;     // integral of |f|
};

/// Sorted, de-duplicated breakpoints clipped to the open interval (a, b).
inline std::vector<double> interval_nodes(double a, double b, std::vector<double> cuts) {
  std::vector<double> nodes{a};
  std::sort(cuts.begin(), cuts.end());
  for (double c : cuts) {
    if (c > a && c < b && c > nodes.back()) nodes.push_back(c);
  }
  nodes.push_back(b);
  return nodes;
}

/// Globally adaptive 31-point Gauss-Kronrod over [a, b], split at `cuts`.
/// The panel with the largest error estimate is bisected until the summed
/// estimate falls below relative_tolerance times the integral of |f|, or the
/// panel budget is spent. Boost supplies the fixed-order rule only.
template <class F>
auto integrate_piecewise(F&& f, double a, double b, const std::vector<double>& cuts,
                         const QuadratureControl& quad) {
  using T = decltype(f(a));
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  struct Panel {
    double lo;
    double hi;
    T value;
    double error;
    double l1;
    bool operator<(const Panel& o) const { return error < o.error; }
  };
  auto rule = [&](double lo, double hi) {
    double err = 0.0;
    double l1 = 0.0;
    const T v = GK::integrate(f, lo, hi, 0, 0.0, &err, &l1);
    // The fixed rule reports its error on the reference interval.
    return Panel{lo, hi, v, err * 0.5 * (hi - lo), l1};
  };

  std::priority_queue<Panel> heap;
  const auto nodes = interval_nodes(a, b, cuts);
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) heap.push(rule(nodes[i], nodes[i + 1]));

  auto totals = [&heap]() {
    Integral<T> out;
    auto copy = heap;
    while (!copy.empty()) {
      out.value += copy.top().value;
      out.error += copy.top().error;
      out.l1 += copy.top().l1;
      copy.pop();
    }
    return out;
  };

  double error = 0.0;
  double l1 = 0.0;
  {
    auto copy = heap;
    while (!copy.empty()) {
      error += copy.top().error;
      l1 += copy.top().l1;
      copy.pop();
    }
  }
  std::size_t panels = heap.size();
  while (error > quad.relative_tolerance * l1 && panels < quad.max_panels) {
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) break;
    heap.pop();
    const Panel left = rule(worst.lo, mid);
    const Panel right = rule(mid, worst.hi);
    error += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  return totals();
}

/// Double-exponential quadrature over [a, inf) for exponentially decaying f.
template <class F>
auto integrate_to_infinity(F&& f, double a, const QuadratureControl& quad) {
  using T = decltype(f(a));
  boost::math::quadrature::exp_sinh<double> integrator;
  Integral<T> out;
  double err = 0.0;
  double l1 = 0.0;
  out.value = integrator.integrate(f, a, std::numeric_limits<double>::infinity(),
                                   quad.relative_tolerance, &err, &l1);
  out.error = err;
  out.l1 = l1;
  return out;
}

/// Throws QuadratureError unless the error estimate is within tolerance of the
/// integrand's absolute mass. `slack` loosens the check for the outer caller.
template <class T>
void require_converged(const Integral<T>& r, const QuadratureControl& quad,
                       const std::string& what, double slack = 10.0) {
  const double target = slack * quad.relative_tolerance * std::max(r.l1, std::abs(r.value));
  if (!(r.error <= target) || !std::isfinite(std::abs(r.value))) {
    throw QuadratureError(what + ": quadrature did not converge", r.error, target);
  }
}

}  // namespace cavityvdw::detail
