#pragma once

// Baseline graph Fourier bases: EVD-based GFB and MagGFB, the analytic
// DFB/DCB, and the spread-frequency SfGFB.

#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>

#include <Eigen/Dense>

#include "dgff/graph.hpp"
#include "dgff/manifold.hpp"

namespace dgff {

enum class VariationMeasure { gtv, dv, tv };

struct SpectralBasis {
  CMat vectors;                        // unit-norm columns
  Vec frequencies;                     // ascending
  VariationMeasure measure = VariationMeasure::gtv;
  std::optional<CVec> complex_frequencies;  // ring case (Eq.-6 values)

  int n() const { return static_cast<int>(vectors.rows()); }
  int size() const { return static_cast<int>(vectors.cols()); }
};

namespace detail {

/// Phase convention: scale so the largest-magnitude entry (first such
/// index on ties) is real and positive. Makes EVD output reproducible.
inline void fix_phase(CMat& vectors) {
  for (int j = 0; j < vectors.cols(); ++j) {
    int imax = 0;
    double best = 0.0;
    for (int i = 0; i < vectors.rows(); ++i) {
      double a = std::abs(vectors(i, j));
      if (a > best + 1e-12) {
        best = a;
        imax = i;
      }
    }
    Complex pivot = vectors(imax, j);
    if (std::abs(pivot) > 0.0) vectors.col(j) *= std::conj(pivot) / std::abs(pivot);
  }
}

/// Ordered Gram-Schmidt within blocks of (numerically) equal eigenvalues,
/// so degenerate eigenspaces come out deterministic.
inline void orthonormalize_degenerate(CMat& vectors, const Vec& freqs) {
  int start = 0;
  while (start < freqs.size()) {
    int end = start + 1;
    while (end < freqs.size() && std::abs(freqs(end) - freqs(start)) < 1e-9)
      ++end;
    if (end - start > 1) {
      for (int j = start; j < end; ++j) {
        for (int i = start; i < j; ++i)
          vectors.col(j) -= (vectors.col(i).adjoint() * vectors.col(j))(0) *
                            vectors.col(i);
        vectors.col(j).normalize();
      }
    }
    start = end;
  }
}

}  // namespace detail

/// Eigenbasis of a Hermitian PSD operator, frequencies ascending.
inline SpectralBasis gfb(const HermitianOperator& op) {
  if (!op.matrix.allFinite())
    throw std::invalid_argument("gfb: non-finite operator entries");
  Eigen::SelfAdjointEigenSolver<CMat> evd(op.matrix);
  if (evd.info() != Eigen::Success)
    throw std::runtime_error("gfb: eigenvalue decomposition failed");
  SpectralBasis b;
  b.frequencies = evd.eigenvalues();
  // clamp tiny negative eigenvalues of PSD operators
  for (int i = 0; i < b.frequencies.size(); ++i)
    if (b.frequencies(i) < 0.0 && b.frequencies(i) > -1e-10)
      b.frequencies(i) = 0.0;
  b.vectors = evd.eigenvectors();
  detail::orthonormalize_degenerate(b.vectors, b.frequencies);
  detail::fix_phase(b.vectors);
  b.measure = op.kind == OperatorKind::magnetic_laplacian ? VariationMeasure::tv
                                                          : VariationMeasure::gtv;
  return b;
}

/// Discrete Fourier basis (GFB of the directed ring). Frequencies are the
/// moduli of the Eq.-6 eigenvalues 1 - exp(j 2 pi k / n); the complex
/// values are kept alongside. Columns sorted by modulus frequency.
inline SpectralBasis dfb(int n) {
  if (n < 2) throw std::invalid_argument("dfb: n < 2");
  CMat u(n, n);
  CVec lam(n);
  Vec freq(n);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l)
      u(l, k) = std::exp(kImag * (2.0 * std::numbers::pi * k * l / n)) /
                std::sqrt(double(n));
    lam(k) = 1.0 - std::exp(kImag * (2.0 * std::numbers::pi * k / n));
    freq(k) = std::abs(lam(k));
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return freq(a) < freq(b); });
  SpectralBasis b;
  b.vectors.resize(n, n);
  b.frequencies.resize(n);
  CVec clam(n);
  for (int j = 0; j < n; ++j) {
    b.vectors.col(j) = u.col(order[j]);
    b.frequencies(j) = freq(order[j]);
    clam(j) = lam(order[j]);
  }
  b.complex_frequencies = clam;
  b.measure = VariationMeasure::tv;
  return b;
}

/// Type-II discrete cosine basis (GFB of the unit-weight path).
/// Frequencies are the path-Laplacian eigenvalues 2 - 2 cos(pi k / n).
inline SpectralBasis dcb(int n) {
  if (n < 2) throw std::invalid_argument("dcb: n < 2");
  SpectralBasis b;
  b.vectors.resize(n, n);
  b.frequencies.resize(n);
  for (int k = 0; k < n; ++k) {
    double ck = k == 0 ? 1.0 / std::sqrt(2.0) : 1.0;
    for (int l = 0; l < n; ++l)
      b.vectors(l, k) = ck * std::sqrt(2.0 / n) *
                        std::cos(std::numbers::pi * k * (l + 0.5) / n);
    b.frequencies(k) = 2.0 - 2.0 * std::cos(std::numbers::pi * k / n);
  }
  b.measure = VariationMeasure::gtv;
  return b;
}

/// Unitary eigenbasis of the magnetic Laplacian.
inline SpectralBasis mag_gfb(const Graph& g, double q) {
  SpectralBasis b = gfb(magnetic_laplacian(g, q));
  b.measure = VariationMeasure::tv;
  return b;
}

/// Unit vector approximately maximizing DV, by projected gradient ascent
/// on the sphere with multiple random restarts.
inline Vec u_max(const Graph& g, const SolverConfig& cfg = {},
                 int restarts = 16, unsigned seed = 11) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Vec best = Vec::Zero(g.n());
  best(0) = 1.0;
  double best_dv = dv(g, best);
  for (int r = 0; r < restarts; ++r) {
    Vec x(g.n());
    for (int i = 0; i < g.n(); ++i) x(i) = gauss(rng);
    x.normalize();
    double fx = dv(g, x);
    double step = 1.0;
    for (int it = 0; it < 2000; ++it) {
      Vec grad = dv_gradient(g, x);
      // backtracking ascent step on the sphere
      bool moved = false;
      while (step > 1e-12) {
        Vec cand = (x + step * grad).normalized();
        double fc = dv(g, cand);
        if (fc > fx + 1e-14) {
          x = cand;
          fx = fc;
          moved = true;
          step *= 1.5;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    if (fx > best_dv) {
      best_dv = fx;
      best = x;
    }
  }
  (void)cfg;
  return best;
}

/// SfGFB (Eq. 9): orthonormal U minimizing the spectral dispersion of the
/// DV sequence, with the first column fixed to the constant vector and the
/// last to a maximal-DV unit vector. Solved with the PCAL machinery; the
/// two fixed columns are held out and orthogonality against them enforced
/// through the penalty. Columns are re-orthonormalized and sorted by DV on
/// output; frequencies[k] = DV(u_k).
inline SpectralBasis sf_gfb(const Graph& g, const SolverConfig& cfg = {},
                            bool* converged = nullptr) {
  const int n = g.n();
  Vec umin = Vec::Constant(n, 1.0 / std::sqrt(double(n)));
  Vec umax = u_max(g, cfg);

  Mat fixed(n, 2);
  fixed.col(0) = umin;
  fixed.col(1) = umax;

  // warm start: symmetrized-Laplacian GFB columns, orthogonalized against
  // the fixed endpoints
  Mat w = adjacency(g);
  Mat ws = 0.5 * (w + w.transpose());
  Mat lsym = Mat(ws.rowwise().sum().asDiagonal()) - ws;
  Eigen::SelfAdjointEigenSolver<Mat> evd(lsym);
  Mat x0(n, n - 2);
  {
    int col = 0;
    for (int j = 1; j < n && col < n - 2; ++j) {
      Vec v = evd.eigenvectors().col(j);
      v -= umin * umin.dot(v);
      v -= umax * umax.dot(v);
      for (int i = 0; i < col; ++i) v -= x0.col(i) * x0.col(i).dot(v);
      double nrm = v.norm();
      if (nrm < 1e-8) continue;
      x0.col(col++) = v / nrm;
    }
    // top up with random directions if the deflated basis ran short
    std::mt19937_64 rng(13);
    std::normal_distribution<double> gauss;
    while (col < n - 2) {
      Vec v(n);
      for (int i = 0; i < n; ++i) v(i) = gauss(rng);
      v -= umin * umin.dot(v);
      v -= umax * umax.dot(v);
      for (int i = 0; i < col; ++i) v -= x0.col(i) * x0.col(i).dot(v);
      double nrm = v.norm();
      if (nrm < 1e-8) continue;
      x0.col(col++) = v / nrm;
    }
  }

  const double dv_min = 0.0, dv_max = dv(g, umax);
  // dispersion over the full sequence [umin, x_1..x_{n-2}, umax], columns
  // taken in their current order
  auto seq_dv = [&](const Mat& x) {
    Vec s(n);
    s(0) = dv_min;
    for (int j = 0; j < x.cols(); ++j) s(j + 1) = dv(g, x.col(j));
    s(n - 1) = dv_max;
    return s;
  };
  StiefelProblem prob;
  prob.n = n;
  prob.k = n - 2;
  prob.fixed_orthogonality = fixed;
  prob.enforce_size_rule = false;  // K = n-2 exceeds n/2 by construction
  prob.objective = [&, n](const Mat& x) {
    Vec s = seq_dv(x);
    double acc = 0.0;
    for (int k = 0; k + 1 < n; ++k) {
      double d = s(k + 1) - s(k);
      acc += d * d;
    }
    return acc;
  };
  prob.gradient = [&, n](const Mat& x) {
    Vec s = seq_dv(x);
    Mat grad(n, n - 2);
    for (int j = 0; j < n - 2; ++j) {
      // d/dx_j of (s_{j+1}-s_j)^2 + (s_{j+2}-s_{j+1})^2
      double scale = 2.0 * (2.0 * s(j + 1) - s(j) - s(j + 2));
      grad.col(j) = scale * dv_gradient(g, x.col(j));
    }
    return grad;
  };

  PcalResult res = pcal_solve(prob, cfg, x0);
  if (converged) *converged = res.converged;

  // polish: ordered Gram-Schmidt against the fixed endpoints, then sort by DV
  Mat u(n, n);
  u.col(0) = umin;
  u.col(n - 1) = umax;
  {
    int col = 1;
    for (int j = 0; j < res.x.cols(); ++j) {
      Vec v = res.x.col(j);
      v -= umin * umin.dot(v);
      v -= umax * umax.dot(v);
      for (int i = 1; i < col; ++i) v -= u.col(i) * u.col(i).dot(v);
      double nrm = v.norm();
      if (nrm < 1e-10)
        throw std::runtime_error("sf_gfb: rank collapse during polish");
      u.col(col++) = v / nrm;
    }
  }
  std::vector<int> order(n - 2);
  std::iota(order.begin(), order.end(), 1);
  Vec dvs(n);
  for (int j = 0; j < n; ++j) dvs(j) = dv(g, u.col(j));
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return dvs(a) < dvs(b); });

  SpectralBasis b;
  b.vectors.resize(n, n);
  b.frequencies.resize(n);
  b.vectors.col(0) = u.col(0).cast<Complex>();
  b.frequencies(0) = dvs(0);
  for (int j = 0; j < n - 2; ++j) {
    b.vectors.col(j + 1) = u.col(order[j]).cast<Complex>();
    b.frequencies(j + 1) = dvs(order[j]);
  }
  b.vectors.col(n - 1) = u.col(n - 1).cast<Complex>();
  b.frequencies(n - 1) = dvs(n - 1);
  b.measure = VariationMeasure::dv;
  return b;
}

/// Spectral dispersion of a variation sequence (ascending order assumed).
inline double spectral_dispersion(const Vec& values) {
  if (values.size() < 2)
    throw std::invalid_argument("spectral_dispersion: need >= 2 values");
  double acc = 0.0;
  for (int k = 0; k + 1 < values.size(); ++k) {
    double d = values(k + 1) - values(k);
    acc += d * d;
  }
  return acc;
}

}  // namespace dgff
