#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "cavityvdw/errors.hpp"
#include "cavityvdw/modecoupling.hpp"

namespace cavityvdw {

namespace {

struct Evaluation {
  Eigen::VectorXd shape;     // unit-peak Lorentzian at each sample
  Eigen::MatrixXd d_shape;   // columns: d/dx0, d/dg
  double amplitude = 0.0;    // optimal linear amplitude
  Eigen::VectorXd residual;  // y - amplitude * shape
  double cost = 0.0;
};

Evaluation evaluate(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double x0, double g) {
  const Eigen::Index n = x.size();
  Evaluation e;
  e.shape.resize(n);
  e.d_shape.resize(n, 2);
  const double hw2 = 0.25 * g * g;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = x(i) - x0;
    const double q = u * u + hw2;
    e.shape(i) = hw2 / q;
    e.d_shape(i, 0) = 2.0 * hw2 * u / (q * q);
    e.d_shape(i, 1) = 0.5 * g * u * u / (q * q);
  }
  const double ll = e.shape.squaredNorm();
  e.amplitude = ll > 0.0 ? e.shape.dot(y) / ll : 0.0;
  e.residual = y - e.amplitude * e.shape;
  e.cost = e.residual.squaredNorm();
  return e;
}

double initial_width(const Eigen::VectorXd& x, const Eigen::VectorXd& y, Eigen::Index top) {
  const double half = 0.5 * y(top);
  double left = NAN;
  double right = NAN;
  for (Eigen::Index i = top; i > 0; --i) {
    if (y(i - 1) < half) {
      left = x(i - 1) + (half - y(i - 1)) * (x(i) - x(i - 1)) / (y(i) - y(i - 1));
      break;
    }
  }
  for (Eigen::Index i = top; i + 1 < x.size(); ++i) {
    if (y(i + 1) < half) {
      right = x(i) + (y(i) - half) * (x(i + 1) - x(i)) / (y(i) - y(i + 1));
      break;
    }
  }
  if (std::isfinite(left) && std::isfinite(right)) return right - left;
  if (std::isfinite(left)) return 2.0 * (x(top) - left);
  if (std::isfinite(right)) return 2.0 * (right - x(top));
  return x(x.size() - 1) - x(0);
}

}  // namespace

LorentzianFit fit_lorentzian(std::span<const LorentzianSample> samples) {
  if (samples.size() < 5) throw FitError("fit_lorentzian: need at least 5 samples");

  std::vector<LorentzianSample> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& l, const auto& r) { return l.omega < r.omega; });
  for (const auto& s : sorted) {
    if (!std::isfinite(s.omega) || !std::isfinite(s.value)) {
      throw FitError("fit_lorentzian: non-finite sample");
    }
  }

  const Eigen::Index n = static_cast<Eigen::Index>(sorted.size());
  const double lo = sorted.front().omega;
  const double hi = sorted.back().omega;
  if (!(hi > lo)) throw FitError("fit_lorentzian: samples do not span a frequency range");

  double y_max = -INFINITY;
  double y_min = INFINITY;
  Eigen::Index top = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v = sorted[static_cast<std::size_t>(i)].value;
    if (v > y_max) {
      y_max = v;
      top = i;
    }
    y_min = std::min(y_min, v);
  }
  if (!(y_max > 0.0)) throw FitError("fit_lorentzian: no positive samples");
  if (!(y_max - y_min > 1e-12 * std::abs(y_max))) {
    throw FitError("fit_lorentzian: samples are constant, no peak to fit");
  }

  // Work in scaled coordinates: frequencies relative to the largest sample in
  // units of half the sampled span, values relative to the largest sample.
  const double origin = sorted[static_cast<std::size_t>(top)].omega;
  const double scale = 0.5 * (hi - lo);
  Eigen::VectorXd x(n);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x(i) = (sorted[static_cast<std::size_t>(i)].omega - origin) / scale;
    y(i) = sorted[static_cast<std::size_t>(i)].value / y_max;
  }

  double x0 = 0.0;
  double g = initial_width(x, y, top);
  Evaluation cur = evaluate(x, y, x0, g);
  double lambda = 1e-3;
  constexpr int max_iterations = 500;
  bool converged = false;
  int it = 0;
  for (; it < max_iterations && !converged; ++it) {
    // Kaufman variable projection: Jacobian of the residual with the linear
    // amplitude's direction projected out.
    Eigen::MatrixXd jac = -cur.amplitude * cur.d_shape;
    const double ll = cur.shape.squaredNorm();
    for (int c = 0; c < 2; ++c) {
      jac.col(c) -= cur.shape * (cur.shape.dot(jac.col(c)) / ll);
    }
    const Eigen::Matrix2d jtj = jac.transpose() * jac;
    const Eigen::Vector2d grad = jac.transpose() * cur.residual;

    bool accepted = false;
    while (!accepted && lambda < 1e16) {
      Eigen::Matrix2d lhs = jtj;
      lhs.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-30);
      const Eigen::Vector2d step = lhs.ldlt().solve(-grad);
      const Evaluation trial = evaluate(x, y, x0 + step(0), g + step(1));
      if (std::isfinite(trial.cost) && trial.cost <= cur.cost) {
        x0 += step(0);
        g += step(1);
        const bool small = std::abs(step(0)) <= 1e-10 * (std::abs(g) + std::abs(x0)) &&
                           std::abs(step(1)) <= 1e-10 * std::abs(g);
        const bool flat = cur.cost - trial.cost <= 1e-28 * (1.0 + cur.cost);
        cur = trial;
        lambda = std::max(lambda * 0.1, 1e-12);
        accepted = true;
        converged = small || (flat && cur.cost < 1e-24);
      } else {
        lambda *= 10.0;
      }
    }
    if (!accepted) {
      // No descent direction left: at a (possibly poor) minimum.
      converged = true;
    }
  }

  std::ostringstream diag;
  diag << "centre offset " << x0 * scale << " rad/s, width " << g * scale
       << " rad/s, residual " << std::sqrt(cur.cost) * y_max << ", iterations " << it;
  if (!converged) throw FitError("fit_lorentzian: did not converge (" + diag.str() + ")");
  if (!(g > 0.0)) throw FitError("fit_lorentzian: non-positive fitted width (" + diag.str() + ")");

  LorentzianFit fit;
  fit.center = origin + x0 * scale;
  fit.width = g * scale;
  fit.peak = cur.amplitude * y_max;
  fit.residual_norm = std::sqrt(cur.cost) * y_max;
  fit.iterations = it;
  if (fit.center < lo || fit.center > hi) {
    throw FitError("fit_lorentzian: fitted centre outside the sampled range (" + diag.str() + ")");
  }
  return fit;
}

}  // namespace cavityvdw
