#pragma once

// The DGFF families: analytic (ring/path), linear-interpolation (full and
// low-redundant), optimization-based (SfDGFF), plus the RGFF baseline.

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "dgff/basis.hpp"
#include "dgff/graph.hpp"
#include "dgff/manifold.hpp"

namespace dgff {

enum class FrameFamily { ADGFF, LiDGFF, lrLiDGFF, SfDGFF, RGFF };

struct VectorOrigin {
  enum class Kind { original, interpolated, analytic, optimized };
  Kind kind = Kind::original;
  int k = 0;         // parent index (1-based, matching frequency order at build)
  double alpha = 0.0;
  double beta = 0.0;
};

struct SpectralFrame {
  CMat vectors;      // unit-norm columns, frequency-sorted
  Vec frequencies;   // ascending
  std::vector<VectorOrigin> origins;
  FrameFamily family = FrameFamily::LiDGFF;
  VariationMeasure measure = VariationMeasure::gtv;
  std::optional<CVec> complex_frequencies;  // ring ADGFF

  int n() const { return static_cast<int>(vectors.rows()); }
  int size() const { return static_cast<int>(vectors.cols()); }

  double min_singular_value() const {
    Eigen::JacobiSVD<CMat> svd(vectors);
    return svd.singularValues().minCoeff();
  }
};

namespace detail {

inline void sort_frame(SpectralFrame& f) {
  const int m = f.size();
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return f.frequencies(a) < f.frequencies(b);
  });
  CMat v(f.n(), m);
  Vec freq(m);
  std::vector<VectorOrigin> org(m);
  CVec cfreq;
  if (f.complex_frequencies) cfreq.resize(m);
  for (int j = 0; j < m; ++j) {
    v.col(j) = f.vectors.col(order[j]);
    freq(j) = f.frequencies(order[j]);
    org[j] = f.origins[order[j]];
    if (f.complex_frequencies) cfreq(j) = (*f.complex_frequencies)(order[j]);
  }
  f.vectors = std::move(v);
  f.frequencies = std::move(freq);
  f.origins = std::move(org);
  if (f.complex_frequencies) f.complex_frequencies = cfreq;
}

inline void require_orthonormal(const CMat& u, double tol = 1e-8) {
  CMat gram = u.adjoint() * u;
  double err = (gram - CMat::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
  if (err > tol)
    throw std::invalid_argument("frame construction requires an orthonormal basis");
}

}  // namespace detail

/// Normalized convex combination of an orthonormal pair (Eq. 12).
inline CVec interpolate_vector(const CVec& u_k, const CVec& u_k1, double alpha,
                               double beta) {
  if (alpha <= 0.0 || beta <= 0.0)
    throw std::invalid_argument("interpolate_vector: alpha, beta must be > 0");
  if (std::abs((u_k.adjoint() * u_k1)(0)) > 1e-8)
    throw std::invalid_argument("interpolate_vector: inputs not orthogonal");
  CVec v = alpha * u_k + beta * u_k1;
  return v / v.norm();
}

/// Eq.-13 intermediate frequency (alpha^2 l_k + beta^2 l_{k+1}) / (a^2+b^2).
inline double intermediate_frequency(double lambda_k, double lambda_k1,
                                     double alpha, double beta) {
  double denom = alpha * alpha + beta * beta;
  if (denom == 0.0)
    throw std::invalid_argument("intermediate_frequency: alpha = beta = 0");
  return (alpha * alpha * lambda_k + beta * beta * lambda_k1) / denom;
}

/// Wrap a basis as a (trivial) frame with original-only columns.
inline SpectralFrame basis_as_frame(const SpectralBasis& b,
                                    FrameFamily family = FrameFamily::LiDGFF) {
  SpectralFrame f;
  f.vectors = b.vectors;
  f.frequencies = b.frequencies;
  f.origins.resize(b.size());
  for (int k = 0; k < b.size(); ++k)
    f.origins[k] = {VectorOrigin::Kind::original, k + 1, 0.0, 0.0};
  f.family = family;
  f.measure = b.measure;
  f.complex_frequencies = b.complex_frequencies;
  return f;
}

/// LiDGFF: GFB plus one interpolated vector per consecutive pair; 2N-1
/// columns, frequency-sorted.
inline SpectralFrame lidgff(const SpectralBasis& b, double alpha, double beta) {
  detail::require_orthonormal(b.vectors);
  const int n = b.size();
  SpectralFrame f;
  f.family = FrameFamily::LiDGFF;
  f.measure = b.measure;
  f.vectors.resize(b.n(), 2 * n - 1);
  f.frequencies.resize(2 * n - 1);
  f.origins.resize(2 * n - 1);
  f.vectors.leftCols(n) = b.vectors;
  f.frequencies.head(n) = b.frequencies;
  for (int k = 0; k < n; ++k)
    f.origins[k] = {VectorOrigin::Kind::original, k + 1, 0.0, 0.0};
  for (int k = 0; k + 1 < n; ++k) {
    f.vectors.col(n + k) =
        interpolate_vector(b.vectors.col(k), b.vectors.col(k + 1), alpha, beta);
    f.frequencies(n + k) = intermediate_frequency(
        b.frequencies(k), b.frequencies(k + 1), alpha, beta);
    f.origins[n + k] = {VectorOrigin::Kind::interpolated, k + 1, alpha, beta};
  }
  detail::sort_frame(f);
  return f;
}

/// One-third of the mean consecutive frequency gap (the default T_1).
inline double default_threshold(const Vec& frequencies) {
  const int n = static_cast<int>(frequencies.size());
  if (n < 2) throw std::invalid_argument("default_threshold: need >= 2 values");
  return (frequencies(n - 1) - frequencies(0)) / (3.0 * (n - 1));
}

/// Low-redundant LiDGFF (Algorithm 1): the gap test T_l <= gap < T_{l+1}
/// selects how many interpolants each consecutive pair receives.
/// weight_sets[l-1] must hold l (alpha, beta) pairs.
inline SpectralFrame lrlidgff(
    const SpectralBasis& b, std::vector<double> thresholds,
    const std::vector<std::vector<std::pair<double, double>>>& weight_sets) {
  detail::require_orthonormal(b.vectors);
  const int levels = static_cast<int>(thresholds.size());
  if (levels < 1)
    throw std::invalid_argument("lrlidgff: need at least one threshold");
  for (int l = 0; l + 1 < levels; ++l)
    if (!(thresholds[l] < thresholds[l + 1]))
      throw std::invalid_argument("lrlidgff: thresholds must be strictly increasing");
  if (static_cast<int>(weight_sets.size()) < levels - 1)
    throw std::invalid_argument("lrlidgff: missing weight sets");
  for (int l = 0; l + 1 < levels; ++l)
    if (static_cast<int>(weight_sets[l].size()) != l + 1)
      throw std::invalid_argument("lrlidgff: weight-set " + std::to_string(l + 1) +
                                  " must have " + std::to_string(l + 1) + " pairs");
  // T_1 = 0 would insert duplicates across zero gaps
  if (thresholds[0] <= 0.0) thresholds[0] = std::numeric_limits<double>::min();

  const int n = b.size();
  SpectralFrame f = basis_as_frame(b, FrameFamily::lrLiDGFF);
  std::vector<CVec> extra_vecs;
  std::vector<double> extra_freqs;
  std::vector<VectorOrigin> extra_origins;
  for (int k = 0; k + 1 < n; ++k) {
    double gap = b.frequencies(k + 1) - b.frequencies(k);
    for (int l = 0; l + 1 < levels; ++l) {
      if (thresholds[l] <= gap && gap < thresholds[l + 1]) {
        for (auto [alpha, beta] : weight_sets[l]) {
          extra_vecs.push_back(interpolate_vector(
              b.vectors.col(k), b.vectors.col(k + 1), alpha, beta));
          extra_freqs.push_back(intermediate_frequency(
              b.frequencies(k), b.frequencies(k + 1), alpha, beta));
          extra_origins.push_back(
              {VectorOrigin::Kind::interpolated, k + 1, alpha, beta});
        }
      }
    }
  }
  const int extra = static_cast<int>(extra_vecs.size());
  CMat v(b.n(), n + extra);
  Vec freq(n + extra);
  v.leftCols(n) = f.vectors;
  freq.head(n) = f.frequencies;
  for (int j = 0; j < extra; ++j) {
    v.col(n + j) = extra_vecs[j];
    freq(n + j) = extra_freqs[j];
    f.origins.push_back(extra_origins[j]);
  }
  f.vectors = std::move(v);
  f.frequencies = std::move(freq);
  detail::sort_frame(f);
  return f;
}

/// Single-threshold convenience form: one midpoint-style (alpha, beta) pair
/// inserted across every gap >= t1.
inline SpectralFrame lrlidgff(const SpectralBasis& b, double t1,
                              double alpha = 0.5, double beta = 0.5) {
  return lrlidgff(b, {t1, std::numeric_limits<double>::infinity()},
                  {{{alpha, beta}}});
}

/// Ring ADGFF (Eq. 10): DFB plus unimodular intermediate columns; inserted
/// frequencies are moduli of the Eq.-6 continuation at k + alpha.
inline SpectralFrame adgff_ring(int n, double alpha) {
  if (alpha <= 0.0 || alpha >= 1.0)
    throw std::invalid_argument("adgff_ring: alpha must be in (0,1)");
  SpectralBasis base = dfb(n);
  SpectralFrame f = basis_as_frame(base, FrameFamily::ADGFF);
  f.measure = VariationMeasure::tv;
  CMat v(n, 2 * n);
  Vec freq(2 * n);
  CVec cfreq(2 * n);
  v.leftCols(n) = f.vectors;
  freq.head(n) = f.frequencies;
  cfreq.head(n) = *f.complex_frequencies;
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l)
      v(l, n + k) =
          std::exp(kImag * (2.0 * std::numbers::pi * (k + alpha) * l / n)) /
          std::sqrt(double(n));
    Complex lam =
        1.0 - std::exp(kImag * (2.0 * std::numbers::pi * (k + alpha) / n));
    cfreq(n + k) = lam;
    freq(n + k) = std::abs(lam);
    f.origins.push_back({VectorOrigin::Kind::analytic, k, alpha, 0.0});
  }
  f.vectors = std::move(v);
  f.frequencies = std::move(freq);
  f.complex_frequencies = cfreq;
  detail::sort_frame(f);
  return f;
}

/// Path ADGFF (Eq. 11): DCB plus explicitly normalized cosine columns at
/// k + alpha; inserted frequencies 2 - 2 cos(pi (k + alpha) / n).
inline SpectralFrame adgff_path(int n, double alpha) {
  if (alpha <= 0.0 || alpha >= 1.0)
    throw std::invalid_argument("adgff_path: alpha must be in (0,1)");
  SpectralBasis base = dcb(n);
  SpectralFrame f = basis_as_frame(base, FrameFamily::ADGFF);
  CMat v(n, 2 * n);
  Vec freq(2 * n);
  v.leftCols(n) = f.vectors;
  freq.head(n) = f.frequencies;
  for (int k = 0; k < n; ++k) {
    double ck = k == 0 ? 1.0 / std::sqrt(2.0) : 1.0;
    Vec col(n);
    for (int l = 0; l < n; ++l)
      col(l) = ck * std::sqrt(2.0 / n) *
               std::cos(std::numbers::pi * (k + alpha) * (l + 0.5) / n);
    v.col(n + k) = (col / col.norm()).cast<Complex>();
    freq(n + k) = 2.0 - 2.0 * std::cos(std::numbers::pi * (k + alpha) / n);
    f.origins.push_back({VectorOrigin::Kind::analytic, k, alpha, 0.0});
  }
  f.vectors = std::move(v);
  f.frequencies = std::move(freq);
  detail::sort_frame(f);
  return f;
}

/// MagDGFF: LiDGFF on the magnetic eigenbasis (Theorem 1 applies since
/// L^{(q)} is Hermitian).
inline SpectralFrame mag_dgff(const Graph& g, double q, double alpha,
                              double beta) {
  SpectralFrame f = lidgff(mag_gfb(g, q), alpha, beta);
  f.measure = VariationMeasure::tv;
  return f;
}

/// RGFF baseline: eigenvectors of L plus eigenvectors of L - 2 rho I with
/// rho = 1/4 of the minimum positive eigen-gap; the additional vectors
/// carry frequencies xi_k = lambda_k + 2 rho.
inline SpectralFrame rgff(const HermitianOperator& op) {
  SpectralBasis base = gfb(op);
  const int n = base.size();
  double min_gap = std::numeric_limits<double>::infinity();
  for (int k = 0; k + 1 < n; ++k) {
    double gap = base.frequencies(k + 1) - base.frequencies(k);
    if (gap > 1e-12) min_gap = std::min(min_gap, gap);
  }
  if (!std::isfinite(min_gap))
    throw std::invalid_argument("rgff: no positive eigen-gap");
  double rho = 0.25 * min_gap;

  CMat shifted = op.matrix - 2.0 * rho * CMat::Identity(n, n);
  Eigen::SelfAdjointEigenSolver<CMat> evd(shifted);
  if (evd.info() != Eigen::Success)
    throw std::runtime_error("rgff: eigenvalue decomposition failed");
  CMat extra = evd.eigenvectors();
  {
    Vec shifted_ev = evd.eigenvalues();
    dgff::detail::orthonormalize_degenerate(extra, shifted_ev);
    dgff::detail::fix_phase(extra);
  }

  SpectralFrame f = basis_as_frame(base, FrameFamily::RGFF);
  CMat v(n, 2 * n);
  Vec freq(2 * n);
  v.leftCols(n) = f.vectors;
  freq.head(n) = f.frequencies;
  for (int k = 0; k < n; ++k) {
    v.col(n + k) = extra.col(k);
    freq(n + k) = base.frequencies(k) + 2.0 * rho;
    f.origins.push_back({VectorOrigin::Kind::analytic, k + 1, 2.0 * rho, 0.0});
  }
  f.vectors = std::move(v);
  f.frequencies = std::move(freq);
  detail::sort_frame(f);
  return f;
}

/// SfDGFF result bundle: the frame plus the Table-VI-style residual between
/// achieved and ideal intermediate DVs, and the optimizer feasibility.
struct SfdgffResult {
  SpectralFrame frame;
  double frequency_residual = 0.0;
  double orthogonality_residual = 0.0;
  bool converged = true;
};

/// SfDGFF: solve the Eq.-19 block problems with PCAL, warm-started at the
/// closed-form interpolants. Splits the SfGFB at column ceil((N+1)/2) so
/// each block honors the N >= 2K size rule.
inline SfdgffResult sfdgff(const Graph& g, const SpectralBasis& u_sf,
                           double alpha, const SolverConfig& cfg = {}) {
  if (alpha <= 0.0 || alpha >= 1.0)
    throw std::invalid_argument("sfdgff: alpha must be in (0,1)");
  const double beta = 1.0 - alpha;
  const int n = u_sf.size();
  if (u_sf.n() != g.n())
    throw std::invalid_argument("sfdgff: basis/graph size mismatch");
  Mat u = u_sf.vectors.real();

  const int h = (n + 2) / 2;  // ceil((N+1)/2), 1-based split column
  struct Block {
    int first;  // 0-based first column
    int cols;   // number of basis columns in the block
  };
  std::array<Block, 2> blocks{Block{0, h}, Block{h - 1, n - h + 1}};

  Mat inserted(g.n(), n - 1);
  SfdgffResult out;
  int pos = 0;
  for (const Block& blk : blocks) {
    const int kcols = blk.cols;
    Vec target(kcols);
    for (int j = 0; j < kcols; ++j) target(j) = dv(g, u.col(blk.first + j));

    Mat x0(g.n(), kcols - 1);
    for (int j = 0; j + 1 < kcols; ++j) {
      Vec v = alpha * u.col(blk.first + j) + beta * u.col(blk.first + j + 1);
      x0.col(j) = v / v.norm();
    }
    StiefelProblem prob;
    prob.n = g.n();
    prob.k = kcols - 1;
    prob.objective = [&g, target, alpha, beta](const Mat& x) {
      return phi_objective(g, target, x, alpha, beta);
    };
    prob.gradient = [&g, target, alpha, beta](const Mat& x) {
      return phi_gradient(g, target, x, alpha, beta);
    };
    PcalResult res = pcal_solve(prob, cfg, x0);
    out.converged = out.converged && res.converged;
    out.orthogonality_residual =
        std::max(out.orthogonality_residual, res.feasibility);
    for (int j = 0; j + 1 < kcols; ++j) {
      inserted.col(pos) = res.x.col(j);
      double achieved = dv(g, res.x.col(j));
      double ideal = alpha * target(j) + beta * target(j + 1);
      out.frequency_residual += (achieved - ideal) * (achieved - ideal);
      ++pos;
    }
  }
  out.frequency_residual = std::sqrt(out.frequency_residual);

  SpectralFrame f = basis_as_frame(u_sf, FrameFamily::SfDGFF);
  f.measure = VariationMeasure::dv;
  CMat v(g.n(), 2 * n - 1);
  Vec freq(2 * n - 1);
  v.leftCols(n) = f.vectors;
  freq.head(n) = f.frequencies;
  for (int j = 0; j < n - 1; ++j) {
    v.col(n + j) = inserted.col(j).cast<Complex>();
    freq(n + j) = dv(g, inserted.col(j));
    f.origins.push_back({VectorOrigin::Kind::optimized, j + 1, alpha, beta});
  }
  f.vectors = std::move(v);
  f.frequencies = std::move(freq);
  detail::sort_frame(f);
  out.frame = std::move(f);
  return out;
}

}  // namespace dgff
