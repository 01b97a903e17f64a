#pragma once

// Primal-dual splitting for l1-minimization subject to an l2-ball (or
// equality) constraint, with the proximal operators it needs.

#include <cmath>
#include <functional>
#include <stdexcept>

#include <Eigen/Dense>

#include "dgff/graph.hpp"

namespace dgff {

/// Soft-thresholding: magnitude shrinkage preserving sign/phase.
inline CVec soft_threshold(const CVec& v, double gamma) {
  if (gamma < 0.0) throw std::invalid_argument("soft_threshold: gamma < 0");
  CVec out(v.size());
  for (int i = 0; i < v.size(); ++i) {
    double a = std::abs(v(i));
    out(i) = a <= gamma ? Complex{0.0, 0.0} : v(i) * ((a - gamma) / a);
  }
  return out;
}

/// Projection onto the l2 ball of radius eps centered at y. Points already
/// inside are returned unchanged (the interior case the paper's formula
/// leaves implicit).
inline CVec project_l2_ball(const CVec& v, const CVec& y, double eps) {
  if (eps < 0.0) throw std::invalid_argument("project_l2_ball: eps < 0");
  CVec d = v - y;
  double nrm = d.norm();
  if (nrm <= eps) return v;
  if (nrm == 0.0) return y;
  return y + (eps / nrm) * d;
}

/// Moreau identity: prox_{gamma g*}(x) = x - gamma prox_{(1/gamma) g}(x / gamma).
inline CVec conjugate_prox(const std::function<CVec(const CVec&, double)>& prox_g,
                           const CVec& x, double gamma) {
  return x - gamma * prox_g(x / gamma, 1.0 / gamma);
}

struct SplitProblem {
  CMat a;                // linear operator (frame, possibly sampled)
  CVec y;                // data
  double eps = 0.0;      // ball radius
  double gamma1 = 0.01;  // Appendix-A default pair
  double gamma2 = 1.0 / 0.12;
  double tolerance = 1e-12;
  int max_iterations = 200000;
};

struct PdsTracePoint {
  int iteration;
  double primal_change;
  double feasibility;
};

struct PdsResult {
  CVec primal;
  CVec dual;
  int iterations = 0;
  double feasibility = 0.0;  // max{0, ||Aa - y|| - eps}
  bool converged = false;
};

/// Primal-dual splitting iterations (Eq. 28) for
///   min ||a||_1  s.t.  ||A a - y||_2 <= eps
/// with f = l1 and g the ball indicator. gamma2 is rescaled when the
/// step-size condition gamma1 gamma2 ||A||^2 <= 1 fails, since the paper's
/// fixed pair is not convergence-safe for arbitrary operators.
inline PdsResult pds_solve(
    const SplitProblem& p,
    const std::function<void(const PdsTracePoint&)>& trace = nullptr) {
  if (p.gamma1 <= 0.0 || p.gamma2 <= 0.0)
    throw std::invalid_argument("pds_solve: step sizes must be positive");
  if (p.a.rows() != p.y.size())
    throw std::invalid_argument("pds_solve: operator/data dimension mismatch");

  // power-iteration estimate of ||A||
  double opnorm = 0.0;
  {
    CVec v = CVec::Ones(p.a.cols()).normalized();
    for (int it = 0; it < 50; ++it) {
      CVec w = p.a.adjoint() * (p.a * v);
      double nrm = w.norm();
      if (nrm < 1e-30) break;
      opnorm = std::sqrt(nrm);
      v = w / nrm;
    }
  }
  double gamma1 = p.gamma1;
  double gamma2 = p.gamma2;
  double bound = gamma1 * gamma2 * opnorm * opnorm;
  if (bound > 1.0) gamma2 /= 1.01 * bound;  // safeguard rescale

  CVec x = CVec::Zero(p.a.cols());
  CVec z = CVec::Zero(p.a.rows());
  auto ball_prox = [&](const CVec& v, double) {
    return project_l2_ball(v, p.y, p.eps);
  };

  PdsResult res;
  const double dual_tol = p.tolerance * (1.0 + gamma2 / gamma1);
  for (int it = 0; it < p.max_iterations; ++it) {
    CVec xnew = soft_threshold(x - gamma1 * (p.a.adjoint() * z), gamma1);
    CVec znew =
        conjugate_prox(ball_prox, z + gamma2 * (p.a * (2.0 * xnew - x)), gamma2);
    double change = (xnew - x).norm();
    double dual_change = (znew - z).norm();
    x = xnew;
    z = znew;
    res.iterations = it + 1;
    if (x.norm() > 1e12)
      throw std::runtime_error("pds_solve: iterate divergence");
    bool done = change <= p.tolerance && dual_change <= dual_tol;
    if (trace && (it % 100 == 0 || done)) {
      double feas = std::max(0.0, (p.a * x - p.y).norm() - p.eps);
      trace({it, change, feas});
    }
    if (done) {
      res.converged = true;
      break;
    }
  }
  res.primal = x;
  res.dual = z;
  res.feasibility = std::max(0.0, (p.a * x - p.y).norm() - p.eps);
  return res;
}

}  // namespace dgff
