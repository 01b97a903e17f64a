#pragma once

// Frame analysis/synthesis, DGS filtering, sampling/recovery problems, and
// the evaluation metrics.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "dgff/frames.hpp"
#include "dgff/pds.hpp"

namespace dgff {

enum class FilterKind { tikhonov, ideal_lowpass, custom };

struct FilterResponse {
  Vec values;  // h(lambda_k), one per frame column
  FilterKind kind = FilterKind::custom;
  double parameter = 0.0;  // c for tikhonov, w for ideal lowpass
};

/// 1 / (1 + c lambda_k) per frequency.
inline FilterResponse tikhonov_response(const Vec& frequencies, double c) {
  if (c < 0.0) throw std::invalid_argument("tikhonov_response: c < 0");
  FilterResponse h;
  h.kind = FilterKind::tikhonov;
  h.parameter = c;
  h.values.resize(frequencies.size());
  for (int k = 0; k < frequencies.size(); ++k) {
    double denom = 1.0 + c * frequencies(k);
    if (denom <= 0.0)
      throw std::invalid_argument("tikhonov_response: 1 + c lambda <= 0");
    h.values(k) = 1.0 / denom;
  }
  return h;
}

/// Index-cutoff low-pass: first w entries pass, the rest are zeroed.
inline FilterResponse ideal_lowpass(int m, int w) {
  if (w < 1 || w > m) throw std::invalid_argument("ideal_lowpass: w out of range");
  FilterResponse h;
  h.kind = FilterKind::ideal_lowpass;
  h.parameter = w;
  h.values = Vec::Zero(m);
  h.values.head(w).setOnes();
  return h;
}

/// l1-sparse analysis coefficients (Eq. 21): argmin ||a||_1 s.t. F a = s.
inline CVec analyze(const SpectralFrame& f, const CVec& s,
                    const SolverConfig& cfg = {}) {
  if (s.size() != f.n()) throw std::invalid_argument("analyze: signal length mismatch");
  SplitProblem p;
  p.a = f.vectors;
  p.y = s;
  p.eps = 0.0;
  p.gamma1 = cfg.gamma1;
  p.gamma2 = cfg.gamma2;
  p.tolerance = cfg.pds_tolerance;
  p.max_iterations = cfg.pds_max_iterations;
  return pds_solve(p).primal;
}

inline CVec analyze(const SpectralFrame& f, const Vec& s,
                    const SolverConfig& cfg = {}) {
  return analyze(f, CVec(s.cast<Complex>()), cfg);
}

/// DGS filtering (Eq. 22): synthesize F (h .* analyze(F, s)).
inline CVec dgs_filter(const SpectralFrame& f, const CVec& s,
                       const FilterResponse& h, const SolverConfig& cfg = {}) {
  if (h.values.size() != f.size())
    throw std::invalid_argument("dgs_filter: response length mismatch");
  CVec a = analyze(f, s, cfg);
  return f.vectors * (h.values.cast<Complex>().asDiagonal() * a);
}

inline CVec dgs_filter(const SpectralFrame& f, const Vec& s,
                       const FilterResponse& h, const SolverConfig& cfg = {}) {
  return dgs_filter(f, CVec(s.cast<Complex>()), h, cfg);
}

struct SamplingPattern {
  std::vector<int> kept;  // 0-based node indices, sorted, unique
  double rate = 1.0;
  unsigned seed = 0;
};

/// Uniform random sampling pattern of round(p n) distinct nodes.
inline SamplingPattern make_sampling(int n, double p, unsigned seed) {
  if (p <= 0.0 || p > 1.0)
    throw std::invalid_argument("make_sampling: rate must be in (0,1]");
  int keep = static_cast<int>(std::lround(p * n));
  keep = std::clamp(keep, 1, n);
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::mt19937_64 rng(seed);
  for (int i = n - 1; i > 0; --i) {
    std::uniform_int_distribution<int> pick(0, i);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(keep);
  std::sort(idx.begin(), idx.end());
  return {std::move(idx), p, seed};
}

/// Rows of F restricted to the kept nodes (Phi F).
inline CMat sample_operator(const SpectralFrame& f, const SamplingPattern& phi) {
  CMat a(phi.kept.size(), f.size());
  for (size_t r = 0; r < phi.kept.size(); ++r)
    a.row(r) = f.vectors.row(phi.kept[r]);
  return a;
}

inline CVec sample_signal(const CVec& s, const SamplingPattern& phi) {
  CVec y(phi.kept.size());
  for (size_t r = 0; r < phi.kept.size(); ++r) y(r) = s(phi.kept[r]);
  return y;
}

struct RecoveryResult {
  CVec signal;
  CVec coefficients;
  int iterations = 0;
  double feasibility = 0.0;
  bool converged = false;
};

/// Eq. 25: argmin ||a||_1 s.t. Phi F a = y, then s = F a.
inline RecoveryResult recover_noiseless(const SpectralFrame& f,
                                        const SamplingPattern& phi,
                                        const CVec& y,
                                        const SolverConfig& cfg = {}) {
  if (y.size() != static_cast<int>(phi.kept.size()))
    throw std::invalid_argument("recover_noiseless: sample length mismatch");
  SplitProblem p;
  p.a = sample_operator(f, phi);
  p.y = y;
  p.eps = 0.0;
  p.gamma1 = cfg.gamma1;
  p.gamma2 = cfg.gamma2;
  p.tolerance = cfg.pds_tolerance;
  p.max_iterations = cfg.pds_max_iterations;
  PdsResult r = pds_solve(p);
  return {f.vectors * r.primal, r.primal, r.iterations, r.feasibility,
          r.converged};
}

/// Eq. 26 with the paper's radius rule eps = 0.90 sigma sqrt(N).
inline RecoveryResult recover_noisy(const SpectralFrame& f,
                                    const SamplingPattern& phi, const CVec& y,
                                    double sigma, const SolverConfig& cfg = {}) {
  if (sigma <= 0.0) throw std::invalid_argument("recover_noisy: sigma <= 0");
  SplitProblem p;
  p.a = sample_operator(f, phi);
  p.y = y;
  p.eps = 0.90 * sigma * std::sqrt(double(f.n()));
  p.gamma1 = cfg.gamma1;
  p.gamma2 = cfg.gamma2;
  p.tolerance = cfg.pds_tolerance;
  p.max_iterations = cfg.pds_max_iterations;
  PdsResult r = pds_solve(p);
  return {f.vectors * r.primal, r.primal, r.iterations, r.feasibility,
          r.converged};
}

struct RelativeError {
  double e_f;    // ||s~ - s*|| / ||s*||
  double e;      // ||n|| / ||s*||
  double ratio;  // e_f / e
};

/// Relative recovery error; complex reconstructions are compared through
/// their real part.
inline RelativeError relative_error(const CVec& reconstructed,
                                    const Vec& truth, const Vec& noise) {
  double tn = truth.norm();
  if (tn == 0.0) throw std::invalid_argument("relative_error: zero ground truth");
  double e_f = (reconstructed.real() - truth).norm() / tn;
  double e = noise.norm() / tn;
  return {e_f, e, e > 0.0 ? e_f / e : std::numeric_limits<double>::infinity()};
}

inline constexpr double kSnrCapDb = 300.0;

/// 20 log10(||s*|| / ||s~ - s*||), real part of s~, capped at the exact-
/// recovery sentinel.
inline double snr_db(const CVec& reconstructed, const Vec& truth) {
  double tn = truth.norm();
  if (tn == 0.0) throw std::invalid_argument("snr_db: zero ground truth");
  double err = (reconstructed.real() - truth).norm();
  if (err == 0.0) return kSnrCapDb;
  return std::min(kSnrCapDb, 20.0 * std::log10(tn / err));
}

inline double snr_db(const Vec& reconstructed, const Vec& truth) {
  return snr_db(CVec(reconstructed.cast<Complex>()), truth);
}

}  // namespace dgff
