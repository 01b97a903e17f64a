#pragma once

// Orthogonality-constrained optimization: the PCAL solver and the
// objective/gradient assembly for the intermediate-frequency problem.

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "dgff/graph.hpp"

namespace dgff {

/// Gradient of the directed variation at x. At a node n1:
///   2 ( W_{n1,.} [x_{n1} 1 - x]_+  -  W_{.,n1}^T [x - x_{n1} 1]_+ )
/// which matches central finite differences away from the x_i = x_j kinks.
inline Vec dv_gradient(const Graph& g, const Vec& x) {
  if (x.size() != g.n())
    throw std::invalid_argument("dv_gradient: dimension mismatch");
  Vec grad = Vec::Zero(g.n());
  auto accumulate = [&](int i, int j, double w) {
    // edge i -> j contributes w [x_i - x_j]_+^2
    double d = std::max(x(i) - x(j), 0.0);
    grad(i) += 2.0 * w * d;
    grad(j) -= 2.0 * w * d;
  };
  for (const Edge& e : g.edges()) {
    accumulate(e.src, e.dst, e.weight);
    if (!g.directed()) accumulate(e.dst, e.src, e.weight);
  }
  return grad;
}

/// Eq.-15 objective: sum over columns of
///   alpha (DV(u_k) - DV(x_k))^2 + beta (DV(u_{k+1}) - DV(x_k))^2,
/// where target_dv holds DV(u_1..u_K) for a K-column block and X has K-1
/// columns.
inline double phi_objective(const Graph& g, const Vec& target_dv,
                            const Mat& X, double alpha, double beta) {
  const int kcols = static_cast<int>(target_dv.size());
  if (X.cols() != kcols - 1 || X.rows() != g.n())
    throw std::invalid_argument("phi_objective: shape mismatch");
  double acc = 0.0;
  for (int k = 0; k + 1 < kcols; ++k) {
    double dvx = dv(g, X.col(k));
    double da = target_dv(k) - dvx;
    double db = target_dv(k + 1) - dvx;
    acc += alpha * da * da + beta * db * db;
  }
  return acc;
}

/// Eq.-18 gradient: column k is
///   -2 dDV(x_k) ( alpha (DV(u_k) - DV(x_k)) + beta (DV(u_{k+1}) - DV(x_k)) ).
inline Mat phi_gradient(const Graph& g, const Vec& target_dv,
                        const Mat& X, double alpha, double beta) {
  const int kcols = static_cast<int>(target_dv.size());
  if (X.cols() != kcols - 1 || X.rows() != g.n())
    throw std::invalid_argument("phi_gradient: shape mismatch");
  Mat grad(X.rows(), X.cols());
  for (int k = 0; k + 1 < kcols; ++k) {
    double dvx = dv(g, X.col(k));
    double scale = alpha * (target_dv(k) - dvx) + beta * (target_dv(k + 1) - dvx);
    grad.col(k) = -2.0 * scale * dv_gradient(g, X.col(k));
  }
  return grad;
}

struct SolverConfig {
  double mu = 10.0;                 // penalty parameter
  double eta = 0.0;                 // proximal parameter; 0 = probe at start
  double tolerance = 1e-10;         // iterate-change stop
  int max_iterations = 50000;
  double gamma1 = 0.01;             // primal-dual step sizes (convex_solver)
  double gamma2 = 1.0 / 0.12;
  double epsilon = 0.0;             // ball radius (convex_solver)
  int pds_max_iterations = 200000;
  double pds_tolerance = 1e-12;
};

struct StiefelProblem {
  std::function<double(const Mat&)> objective;
  std::function<Mat(const Mat&)> gradient;
  int n = 0;
  int k = 0;
  // iterate stays orthogonal to these columns as well (may be empty)
  Mat fixed_orthogonality;
  bool enforce_size_rule = true;  // the n >= 2K requirement
};

struct PcalTracePoint {
  int iteration;
  double objective;
  double feasibility;
};

struct PcalResult {
  Mat x;
  int iterations = 0;
  double feasibility = 0.0;  // ||X^T X - I||_F (+ fixed-column residual)
  bool converged = false;
};

namespace detail {

inline double pcal_feasibility(const StiefelProblem& p, const Mat& x) {
  double f = (x.transpose() * x - Mat::Identity(p.k, p.k)).norm();
  if (p.fixed_orthogonality.cols() > 0)
    f = std::hypot(f, (p.fixed_orthogonality.transpose() * x).norm());
  return f;
}

// Gradient of L_mu(X, Lambda) = phi(X) - <Lambda, X^T X - I>
//                             + (mu/4) ||X^T X - I||_F^2  (+ fixed-column term)
inline Mat lagrangian_gradient(const StiefelProblem& p, const Mat& g,
                               const Mat& x, const Mat& lambda, double mu) {
  Mat viol = x.transpose() * x - Mat::Identity(p.k, p.k);
  Mat out = g - 2.0 * x * lambda + mu * x * viol;
  if (p.fixed_orthogonality.cols() > 0) {
    const Mat& c = p.fixed_orthogonality;
    out += mu * c * (c.transpose() * x);
  }
  return out;
}

// crude power-iteration probe of the gradient Lipschitz constant
inline double probe_eta(const StiefelProblem& p, const Mat& x0,
                        unsigned seed = 7) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Mat d(x0.rows(), x0.cols());
  for (int j = 0; j < d.cols(); ++j)
    for (int i = 0; i < d.rows(); ++i) d(i, j) = gauss(rng);
  double lip = 0.0;
  const double t = 1e-5;
  Mat g0 = p.gradient(x0);
  for (int probe = 0; probe < 4; ++probe) {
    double dn = d.norm();
    if (dn < 1e-30) break;
    d /= dn;
    Mat diff = p.gradient(x0 + t * d) - g0;
    lip = std::max(lip, diff.norm() / t);
    d = diff;  // power-iteration style: follow the response direction
  }
  return lip;
}

}  // namespace detail

/// PCAL: per outer iteration, estimate the multipliers from the current
/// snapshot, then update every column by the closed-form sphere-constrained
/// proximal step x <- normalize(x_k - grad_k / eta). Column updates are
/// independent given the snapshot.
inline PcalResult pcal_solve(
    const StiefelProblem& p, const SolverConfig& cfg, const Mat& x0,
    const std::function<void(const PcalTracePoint&)>& trace = nullptr) {
  if (x0.rows() != p.n || x0.cols() != p.k)
    throw std::invalid_argument("pcal_solve: bad initial iterate shape");
  if (p.enforce_size_rule && p.n < 2 * p.k)
    throw std::invalid_argument("pcal_solve: size rule n >= 2K violated");

  Mat x = x0;
  for (int j = 0; j < x.cols(); ++j) x.col(j).normalize();

  // the penalty term contributes ~mu to the gradient's Lipschitz constant,
  // so the probe (which sees only the objective) is floored at 2 mu
  double eta = cfg.eta > 0.0
                   ? cfg.eta
                   : std::max({1.0, 2.0 * detail::probe_eta(p, x), 2.0 * cfg.mu});
  const double mu = cfg.mu;

  PcalResult res;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    Mat g = p.gradient(x);
    if (!g.allFinite())
      throw std::runtime_error("pcal_solve: non-finite gradient");

    // multiplier estimate: Sym(G^T X) plus the diagonal correction
    Mat lambda = 0.5 * (g.transpose() * x + x.transpose() * g);
    Mat lg = detail::lagrangian_gradient(p, g, x, lambda, mu);
    lambda += Mat((x.transpose() * lg).diagonal().asDiagonal());

    Mat step = detail::lagrangian_gradient(p, g, x, lambda, mu);
    Mat xnew = x - step / eta;
    for (int j = 0; j < xnew.cols(); ++j) {
      double nrm = xnew.col(j).norm();
      if (nrm < 1e-30)
        xnew.col(j) = x.col(j);  // degenerate step, keep the old column
      else
        xnew.col(j) /= nrm;
    }

    double change = (xnew - x).norm();
    x = xnew;
    res.iterations = it + 1;

    if (trace && (it % 50 == 0 || change <= cfg.tolerance)) {
      trace({it, p.objective(x), detail::pcal_feasibility(p, x)});
    }
    if (change <= cfg.tolerance) {
      res.converged = true;
      break;
    }
  }
  res.x = x;
  res.feasibility = detail::pcal_feasibility(p, x);
  if (!std::isfinite(p.objective(res.x)))
    throw std::runtime_error("pcal_solve: non-finite objective");
  return res;
}

}  // namespace dgff
