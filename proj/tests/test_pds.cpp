#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "dgff/pds.hpp"

using namespace dgff;

namespace {

CVec cvec(std::initializer_list<Complex> xs) {
  CVec v(static_cast<int>(xs.size()));
  int i = 0;
  for (Complex x : xs) v(i++) = x;
  return v;
}

// Brute-force l1 minimizer of {a : A a = y} over all basic solutions.
// Valid for real A with full row rank: an optimum exists at a solution
// supported on at most rows(A) columns.
double min_l1_enumerated(const Mat& a, const Vec& y) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> subset(m);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == m) {
      Mat sub(m, m);
      for (int j = 0; j < m; ++j) sub.col(j) = a.col(subset[j]);
      Eigen::FullPivLU<Mat> lu(sub);
      if (!lu.isInvertible()) return;
      Vec coef = lu.solve(y);
      if ((sub * coef - y).norm() > 1e-9) return;
      best = std::min(best, coef.lpNorm<1>());
      return;
    }
    for (int c = start; c <= n - (m - depth); ++c) {
      subset[depth] = c;
      rec(c + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace

TEST_CASE("soft_threshold") {
  CVec v = cvec({{2.0, 0.0}, {-0.5, 0.0}});
  CVec out = soft_threshold(v, 1.0);
  CHECK(out(0) == Complex{1.0, 0.0});
  CHECK(out(1) == Complex{0.0, 0.0});

  // complex: magnitude shrinks, phase preserved
  CVec c = cvec({{3.0, 4.0}});
  CVec oc = soft_threshold(c, 1.0);
  CHECK(std::abs(oc(0)) == Catch::Approx(4.0));
  CHECK(std::arg(oc(0)) == Catch::Approx(std::arg(c(0))));

  CHECK_THROWS_AS(soft_threshold(v, -0.1), std::invalid_argument);
}

TEST_CASE("soft_threshold solves the 1-D prox problem") {
  // prox of gamma |.| : argmin_x gamma |x| + 0.5 (x - v)^2, verified by scan
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int t = 0; t < 20; ++t) {
    double v = u(rng), gamma = std::abs(u(rng));
    double prox = soft_threshold(cvec({{v, 0.0}}), gamma)(0).real();
    auto obj = [&](double x) { return gamma * std::abs(x) + 0.5 * (x - v) * (x - v); };
    double fprox = obj(prox);
    for (double x = -4.0; x <= 4.0; x += 1e-3)
      CHECK(fprox <= obj(x) + 1e-9);
  }
}

TEST_CASE("project_l2_ball") {
  CVec y = cvec({{0.0, 0.0}, {0.0, 0.0}});
  CVec far = cvec({{3.0, 0.0}, {4.0, 0.0}});
  CVec p = project_l2_ball(far, y, 1.0);
  CHECK((p - far * 0.2).norm() < 1e-12);  // radial scaling to the sphere

  // interior point unchanged
  CVec close = cvec({{0.1, 0.0}, {0.2, 0.0}});
  CHECK((project_l2_ball(close, y, 1.0) - close).norm() == 0.0);

  // eps = 0 projects straight onto y
  CVec yc = cvec({{1.0, -2.0}});
  CHECK((project_l2_ball(cvec({{5.0, 5.0}}), yc, 0.0) - yc).norm() < 1e-12);

  CHECK_THROWS_AS(project_l2_ball(far, y, -1.0), std::invalid_argument);
}

TEST_CASE("conjugate_prox") {
  // g = indicator of {y}: prox_g = const y, so prox of the conjugate is
  // x - gamma y
  CVec y = cvec({{1.0, 0.0}, {2.0, 0.0}});
  auto prox_g = [&y](const CVec&, double) { return y; };
  CVec x = cvec({{5.0, 0.0}, {-1.0, 0.0}});
  CVec out = conjugate_prox(prox_g, x, 0.5);
  CHECK((out - (x - 0.5 * y)).norm() < 1e-12);
}

TEST_CASE("Moreau decomposition holds for the ball prox") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss;
  CVec y(4);
  for (int i = 0; i < 4; ++i) y(i) = {gauss(rng), gauss(rng)};
  auto ball = [&](const CVec& v, double) { return project_l2_ball(v, y, 0.7); };
  for (int t = 0; t < 10; ++t) {
    CVec x(4);
    for (int i = 0; i < 4; ++i) x(i) = {gauss(rng), gauss(rng)};
    double gamma = 0.3 + t * 0.2;
    // x = prox_{gamma g*}(x) + gamma prox_{(1/gamma) g}(x / gamma)
    CVec sum = conjugate_prox(ball, x, gamma) + gamma * ball(x / gamma, 1.0 / gamma);
    CHECK((sum - x).norm() < 1e-10);
  }
}

TEST_CASE("pds_solve with an orthonormal operator returns the adjoint coefficients") {
  // For unitary A and eps = 0, the unique feasible point is a = A^H y.
  const int n = 6;
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss;
  CMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = {gauss(rng), gauss(rng)};
  Eigen::HouseholderQR<CMat> qr(m);
  CMat q = qr.householderQ();
  CVec y(n);
  for (int i = 0; i < n; ++i) y(i) = {gauss(rng), gauss(rng)};

  SplitProblem p;
  p.a = q;
  p.y = y;
  PdsResult r = pds_solve(p);
  CHECK(r.converged);
  CHECK(r.feasibility < 1e-9);
  CHECK((r.primal - q.adjoint() * y).norm() < 1e-8);
}

TEST_CASE("pds_solve trivial cases") {
  SplitProblem p;
  p.a = CMat::Identity(3, 3);
  p.y = CVec::Zero(3);
  PdsResult r = pds_solve(p);
  CHECK(r.converged);
  CHECK(r.primal.norm() < 1e-12);

  p.y = CVec::Zero(2);
  CHECK_THROWS_AS(pds_solve(p), std::invalid_argument);
  p.y = CVec::Zero(3);
  p.gamma1 = -1.0;
  CHECK_THROWS_AS(pds_solve(p), std::invalid_argument);
}

TEST_CASE("pds_solve matches the enumerated l1 optimum on fat systems") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 4; ++trial) {
    const int m = 3, n = 7;
    Mat a(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
    Vec y(m);
    for (int i = 0; i < m; ++i) y(i) = gauss(rng);

    double opt = min_l1_enumerated(a, y);

    SplitProblem p;
    p.a = a.cast<Complex>();
    p.y = y.cast<Complex>();
    PdsResult r = pds_solve(p);
    CHECK(r.feasibility < 1e-8);
    double got = 0.0;
    for (int j = 0; j < n; ++j) got += std::abs(r.primal(j));
    CHECK(got == Catch::Approx(opt).margin(1e-6));
  }
}

TEST_CASE("pds_solve respects the noise ball and is permutation-covariant") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> gauss;
  const int m = 4, n = 8;
  CMat a(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = {gauss(rng), gauss(rng)};
  CVec y(m);
  for (int i = 0; i < m; ++i) y(i) = {gauss(rng), gauss(rng)};

  SplitProblem p;
  p.a = a;
  p.y = y;
  p.eps = 0.5;
  PdsResult r = pds_solve(p);
  CHECK(r.feasibility < 1e-8);  // ||A a - y|| <= eps (+tolerance)
  double l1 = 0.0;
  for (int j = 0; j < n; ++j) l1 += std::abs(r.primal(j));
  // the relaxed problem can't be worse than the eps = 0 one
  SplitProblem p0 = p;
  p0.eps = 0.0;
  PdsResult r0 = pds_solve(p0);
  double l1_eq = 0.0;
  for (int j = 0; j < n; ++j) l1_eq += std::abs(r0.primal(j));
  CHECK(l1 <= l1_eq + 1e-6);

  // permuting the columns permutes the solution
  std::vector<int> perm{3, 0, 6, 2, 7, 5, 1, 4};
  CMat ap(m, n);
  for (int j = 0; j < n; ++j) ap.col(j) = a.col(perm[j]);
  SplitProblem pp = p;
  pp.a = ap;
  PdsResult rp = pds_solve(pp);
  for (int j = 0; j < n; ++j)
    CHECK(std::abs(rp.primal(j) - r.primal(perm[j])) < 1e-6);
}
