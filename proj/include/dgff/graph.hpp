#pragma once

// Graph representation, Laplacian family construction, and the variation
// measures (GTV, DV, complex TV) the rest of the library is built on.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dgff {

using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Complex = std::complex<double>;

inline constexpr Complex kImag{0.0, 1.0};

struct Edge {
  int src;  // 0-based
  int dst;
  double weight;
};

/// Immutable weighted graph. Node indices are 0-based internally;
/// file formats use 1-based indices (see io.hpp).
class Graph {
 public:
  Graph(int n, std::vector<Edge> edges, bool directed)
      : n_(n), edges_(std::move(edges)), directed_(directed) {
    if (n < 2) throw std::invalid_argument("Graph: need at least 2 nodes");
    std::set<std::pair<int, int>> seen;
    for (const Edge& e : edges_) {
      if (e.src < 0 || e.src >= n_ || e.dst < 0 || e.dst >= n_)
        throw std::invalid_argument("Graph: node index out of range");
      if (e.src == e.dst)
        throw std::invalid_argument("Graph: self-loops are rejected");
      if (e.weight < 0.0)
        throw std::invalid_argument("Graph: negative edge weight");
      std::pair<int, int> key{e.src, e.dst};
      if (!directed_ && key.first > key.second) std::swap(key.first, key.second);
      if (!seen.insert(key).second)
        throw std::invalid_argument("Graph: duplicate edge " +
                                    std::to_string(e.src + 1) + "->" +
                                    std::to_string(e.dst + 1));
    }
  }

  int n() const { return n_; }
  bool directed() const { return directed_; }
  const std::vector<Edge>& edges() const { return edges_; }

 private:
  int n_;
  std::vector<Edge> edges_;
  bool directed_;
};

/// Weighted adjacency matrix; symmetric iff the graph is undirected.
inline Mat adjacency(const Graph& g) {
  Mat w = Mat::Zero(g.n(), g.n());
  for (const Edge& e : g.edges()) {
    w(e.src, e.dst) = e.weight;
    if (!g.directed()) w(e.dst, e.src) = e.weight;
  }
  return w;
}

enum class OperatorKind { laplacian, normalized_laplacian, magnetic_laplacian };

/// Hermitian PSD operator (L, normalized L, or magnetic L^{(q)}).
struct HermitianOperator {
  CMat matrix;
  OperatorKind kind;
  double q = 0.0;  // rotation parameter, meaningful for magnetic_laplacian

  int n() const { return static_cast<int>(matrix.rows()); }

  double hermitian_residual() const {
    return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  }
};

inline Mat degree_matrix(const Mat& w) {
  return w.rowwise().sum().asDiagonal();
}

/// L = D - W for undirected graphs. Directed graphs must go through
/// magnetic_laplacian.
inline HermitianOperator laplacian(const Graph& g) {
  if (g.directed())
    throw std::invalid_argument(
        "laplacian: directed graph; use magnetic_laplacian instead");
  Mat w = adjacency(g);
  Mat l = degree_matrix(w) - w;
  return {l.cast<Complex>(), OperatorKind::laplacian};
}

/// D^{-1/2} L D^{-1/2}; eigenvalues lie in [0, 2].
inline HermitianOperator normalized_laplacian(const Graph& g) {
  if (g.directed())
    throw std::invalid_argument(
        "normalized_laplacian: directed graph; use magnetic_laplacian instead");
  Mat w = adjacency(g);
  Vec deg = w.rowwise().sum();
  for (int i = 0; i < g.n(); ++i)
    if (deg(i) <= 0.0)
      throw std::invalid_argument(
          "normalized_laplacian: isolated node " + std::to_string(i + 1));
  Vec dinv = deg.array().rsqrt();
  Mat l = degree_matrix(w) - w;
  Mat ln = dinv.asDiagonal() * l * dinv.asDiagonal();
  return {ln.cast<Complex>(), OperatorKind::normalized_laplacian};
}

/// Magnetic Laplacian L^{(q)} = D^{(s)} - Gamma^{(q)} .* W^{(s)} with
/// W^{(s)} = Sym(W) and gamma_{ij} = exp(j 2 pi q (w_ij - w_ji)).
inline HermitianOperator magnetic_laplacian(const Graph& g, double q) {
  if (q < 0.0 || q >= 1.0)
    throw std::invalid_argument("magnetic_laplacian: q must be in [0,1)");
  Mat w = adjacency(g);
  Mat ws = 0.5 * (w + w.transpose());
  const int n = g.n();
  CMat l = CMat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    l(i, i) = ws.row(i).sum();
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      Complex gamma = std::exp(kImag * (2.0 * std::numbers::pi * q *
                                        (w(i, j) - w(j, i))));
      l(i, j) -= gamma * ws(i, j);
    }
  }
  return {l, OperatorKind::magnetic_laplacian, q};
}

/// Graph total variation x^H L x (Eq.-2 quadratic form); real and
/// nonnegative for PSD L.
inline double gtv(const HermitianOperator& op, const CVec& x) {
  if (op.kind == OperatorKind::magnetic_laplacian)
    throw std::invalid_argument("gtv: expects laplacian or normalized-laplacian");
  if (x.size() != op.n())
    throw std::invalid_argument("gtv: dimension mismatch");
  return (x.adjoint() * op.matrix * x)(0).real();
}

inline double gtv(const HermitianOperator& op, const Vec& x) {
  return gtv(op, CVec(x.cast<Complex>()));
}

/// Directed variation: sum_{n1,n2} w_{n1,n2} [x_{n1} - x_{n2}]_+^2.
inline double dv(const Graph& g, const Vec& x) {
  if (x.size() != g.n()) throw std::invalid_argument("dv: dimension mismatch");
  double acc = 0.0;
  for (const Edge& e : g.edges()) {
    double d = std::max(x(e.src) - x(e.dst), 0.0);
    acc += e.weight * d * d;
    if (!g.directed()) {
      double d2 = std::max(x(e.dst) - x(e.src), 0.0);
      acc += e.weight * d2 * d2;
    }
  }
  return acc;
}

/// Complex total variation over the edge set: sum_{(i,j) in E} |x_i - x_j|^2.
inline double tv_complex(const Graph& g, const CVec& x) {
  if (x.size() != g.n())
    throw std::invalid_argument("tv_complex: dimension mismatch");
  double acc = 0.0;
  for (const Edge& e : g.edges())
    acc += std::norm(x(e.src) - x(e.dst));
  return acc;
}

/// Directed cycle 0 -> 1 -> ... -> n-1 -> 0 (undirected variant by flag).
inline Graph make_ring(int n, bool directed = true) {
  if (n < 2) throw std::invalid_argument("make_ring: n < 2");
  std::vector<Edge> edges;
  edges.reserve(n);
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
  return Graph(n, std::move(edges), directed);
}

/// Undirected chain 0 - 1 - ... - n-1.
inline Graph make_path(int n) {
  if (n < 2) throw std::invalid_argument("make_path: n < 2");
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return Graph(n, std::move(edges), false);
}

/// Stochastic block model: contiguous equal-size clusters, undirected
/// unit-weight edges, seed-reproducible.
inline Graph make_sbm(int n, int clusters, double p_in, double p_out,
                      unsigned seed) {
  if (n < 2) throw std::invalid_argument("make_sbm: n < 2");
  if (clusters < 1 || clusters > n)
    throw std::invalid_argument("make_sbm: bad cluster count");
  if (p_in < 0 || p_in > 1 || p_out < 0 || p_out > 1)
    throw std::invalid_argument("make_sbm: probabilities must be in [0,1]");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto cluster_of = [&](int v) { return v * clusters / n; };
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double p = cluster_of(i) == cluster_of(j) ? p_in : p_out;
      if (unif(rng) < p) edges.push_back({i, j, 1.0});
    }
  return Graph(n, std::move(edges), false);
}

/// Cluster index of a node under the make_sbm block layout.
inline int sbm_cluster(int n, int clusters, int v) { return v * clusters / n; }

}  // namespace dgff
