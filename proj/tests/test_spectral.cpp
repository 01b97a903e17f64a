#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dgff/spectral.hpp"

using namespace dgff;

namespace {

Graph random_connected_undirected(int n, unsigned seed, double density = 0.35) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  for (int i = 0; i < n; ++i)
    for (int j = i + 2; j < n; ++j)
      if (u(rng) < density) edges.push_back({i, j, u(rng) + 0.1});
  return Graph(n, edges, false);
}

}  // namespace

TEST_CASE("filter responses") {
  Vec freq(4);
  freq << 0.0, 1.0, 3.0, 9.0;
  auto h = tikhonov_response(freq, 1.0);
  CHECK(h.values(0) == Catch::Approx(1.0));
  CHECK(h.values(1) == Catch::Approx(0.5));
  CHECK(h.values(2) == Catch::Approx(0.25));
  CHECK(h.values(3) == Catch::Approx(0.1));
  CHECK(h.kind == FilterKind::tikhonov);
  CHECK_THROWS_AS(tikhonov_response(freq, -1.0), std::invalid_argument);

  auto lp = ideal_lowpass(5, 2);
  CHECK(lp.values(0) == 1.0);
  CHECK(lp.values(1) == 1.0);
  CHECK(lp.values(2) == 0.0);
  CHECK(lp.values(4) == 0.0);
  // monotone in the cutoff
  for (int w = 1; w < 5; ++w) {
    auto a = ideal_lowpass(5, w);
    auto b = ideal_lowpass(5, w + 1);
    for (int i = 0; i < 5; ++i) CHECK(a.values(i) <= b.values(i));
  }
  CHECK_THROWS_AS(ideal_lowpass(5, 0), std::invalid_argument);
  CHECK_THROWS_AS(ideal_lowpass(5, 6), std::invalid_argument);
}

TEST_CASE("analyze on an orthonormal frame is the adjoint transform") {
  Graph g = random_connected_undirected(8, 1201);
  auto b = gfb(laplacian(g));
  auto f = basis_as_frame(b);
  std::mt19937_64 rng(41);
  std::normal_distribution<double> gauss;
  Vec s(8);
  for (int i = 0; i < 8; ++i) s(i) = gauss(rng);
  CVec a = analyze(f, s);
  CVec expect = f.vectors.adjoint() * s.cast<Complex>();
  CHECK((a - expect).norm() < 1e-7);

  CHECK(analyze(f, Vec(Vec::Zero(8))).norm() < 1e-12);
  CHECK_THROWS_AS(analyze(f, Vec(Vec::Zero(5))), std::invalid_argument);
}

TEST_CASE("analysis coefficients synthesize the signal back") {
  Graph g = random_connected_undirected(7, 1301);
  auto f = lidgff(gfb(laplacian(g)), 1.0, 1.0);
  std::mt19937_64 rng(43);
  std::normal_distribution<double> gauss;
  Vec s(7);
  for (int i = 0; i < 7; ++i) s(i) = gauss(rng);
  CVec a = analyze(f, s);
  CHECK((f.vectors * a - s.cast<Complex>()).norm() < 1e-7);
}

TEST_CASE("dgs_filter") {
  Graph g = random_connected_undirected(7, 1401);
  auto f = lidgff(gfb(laplacian(g)), 1.0, 1.0);
  std::mt19937_64 rng(47);
  std::normal_distribution<double> gauss;
  Vec s(7);
  for (int i = 0; i < 7; ++i) s(i) = gauss(rng);

  // all-pass reproduces the signal
  FilterResponse all;
  all.values = Vec::Ones(f.size());
  CVec out = dgs_filter(f, s, all);
  CHECK((out - s.cast<Complex>()).norm() < 1e-7);

  // all-zero kills it
  FilterResponse none;
  none.values = Vec::Zero(f.size());
  CHECK(dgs_filter(f, s, none).norm() < 1e-12);

  FilterResponse wrong;
  wrong.values = Vec::Ones(3);
  CHECK_THROWS_AS(dgs_filter(f, s, wrong), std::invalid_argument);
}

TEST_CASE("tikhonov DGS filtering matches the direct regularized solve on a basis") {
  // With the orthonormal GFB as the frame, h(lambda) = 1/(1+c lambda)
  // applied to analysis coefficients equals (I + c L)^{-1} y.
  Graph g = random_connected_undirected(9, 1501);
  auto L = laplacian(g);
  auto b = gfb(L);
  auto f = basis_as_frame(b);
  std::mt19937_64 rng(53);
  std::normal_distribution<double> gauss;
  Vec y(9);
  for (int i = 0; i < 9; ++i) y(i) = gauss(rng);
  double c = 0.7;
  CVec filtered = dgs_filter(f, y, tikhonov_response(f.frequencies, c));
  CMat m = CMat::Identity(9, 9) + c * L.matrix;
  CVec direct = m.colPivHouseholderQr().solve(CVec(y.cast<Complex>()));
  CHECK((filtered - direct).norm() < 1e-6);
}

TEST_CASE("sampling patterns") {
  auto p = make_sampling(10, 0.5, 7);
  CHECK(p.kept.size() == 5);
  for (size_t i = 0; i + 1 < p.kept.size(); ++i)
    CHECK(p.kept[i] < p.kept[i + 1]);
  for (int v : p.kept) {
    CHECK(v >= 0);
    CHECK(v < 10);
  }
  // deterministic in the seed
  auto q = make_sampling(10, 0.5, 7);
  CHECK(p.kept == q.kept);
  auto r = make_sampling(10, 0.5, 8);
  CHECK(p.kept != r.kept);  // overwhelmingly likely; fixed seeds make it stable

  CHECK(make_sampling(10, 1.0, 1).kept.size() == 10);
  CHECK(make_sampling(10, 0.01, 1).kept.size() == 1);  // clamped up to 1
  CHECK_THROWS_AS(make_sampling(10, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_sampling(10, 1.5, 1), std::invalid_argument);
}

TEST_CASE("sample_operator and sample_signal pick matching rows") {
  Graph g = random_connected_undirected(6, 1601);
  auto f = basis_as_frame(gfb(laplacian(g)));
  auto p = make_sampling(6, 0.5, 3);
  CMat a = sample_operator(f, p);
  REQUIRE(a.rows() == 3);
  for (size_t r = 0; r < p.kept.size(); ++r)
    CHECK((a.row(r) - f.vectors.row(p.kept[r])).norm() < 1e-15);
  CVec s(6);
  for (int i = 0; i < 6; ++i) s(i) = {double(i), 0.0};
  CVec y = sample_signal(s, p);
  for (size_t r = 0; r < p.kept.size(); ++r)
    CHECK(y(r) == s(p.kept[r]));
}

TEST_CASE("recover_noiseless reproduces the signal at full sampling") {
  Graph g = random_connected_undirected(8, 1701);
  auto f = lidgff(gfb(laplacian(g)), 1.0, 1.0);
  std::mt19937_64 rng(59);
  std::normal_distribution<double> gauss;
  Vec s(8);
  for (int i = 0; i < 8; ++i) s(i) = gauss(rng);
  auto p = make_sampling(8, 1.0, 0);
  RecoveryResult r = recover_noiseless(f, p, CVec(s.cast<Complex>()));
  CHECK(r.feasibility < 1e-9);
  CHECK((r.signal - s.cast<Complex>()).norm() < 1e-6);
  CHECK((f.vectors * r.coefficients - r.signal).norm() < 1e-12);
}

TEST_CASE("recover_noiseless matches the kept samples under subsampling") {
  Graph g = random_connected_undirected(10, 1801);
  auto f = lidgff(gfb(laplacian(g)), 1.0, 1.0);
  // a 2-sparse synthesis signal so subsampled recovery is meaningful
  CVec a0 = CVec::Zero(f.size());
  a0(2) = 1.3;
  a0(11) = -0.7;
  CVec s = f.vectors * a0;
  auto p = make_sampling(10, 0.7, 5);
  RecoveryResult r = recover_noiseless(f, p, sample_signal(s, p));
  for (size_t k = 0; k < p.kept.size(); ++k)
    CHECK(std::abs(r.signal(p.kept[k]) - s(p.kept[k])) < 1e-7);
  CHECK_THROWS_AS(recover_noiseless(f, p, CVec(CVec::Zero(3))),
                  std::invalid_argument);
}

TEST_CASE("recover_noisy stays within the noise ball") {
  Graph g = random_connected_undirected(9, 1901);
  auto f = lidgff(gfb(laplacian(g)), 1.0, 1.0);
  std::mt19937_64 rng(61);
  std::normal_distribution<double> gauss;
  Vec s(9);
  for (int i = 0; i < 9; ++i) s(i) = gauss(rng);
  double sigma = 0.05;
  auto p = make_sampling(9, 0.8, 2);
  CVec y = sample_signal(CVec(s.cast<Complex>()), p);
  for (int i = 0; i < y.size(); ++i) y(i) += sigma * gauss(rng);
  RecoveryResult r = recover_noisy(f, p, y, sigma);
  double eps = 0.90 * sigma * std::sqrt(9.0);
  CMat a = sample_operator(f, p);
  CHECK((a * r.coefficients - y).norm() <= eps + 1e-7);
  CHECK(r.feasibility < 1e-7);
  CHECK_THROWS_AS(recover_noisy(f, p, y, 0.0), std::invalid_argument);
}

TEST_CASE("relative_error and snr_db") {
  Vec truth(2);
  truth << 3.0, 4.0;  // norm 5
  CVec recon(2);
  recon << Complex{3.0, 0.0}, Complex{4.5, 0.0};  // error norm 0.5
  Vec noise(2);
  noise << 1.0, 0.0;
  auto e = relative_error(recon, truth, noise);
  CHECK(e.e_f == Catch::Approx(0.1));
  CHECK(e.e == Catch::Approx(0.2));
  CHECK(e.ratio == Catch::Approx(0.5));

  // 20 dB: error a tenth of the signal
  CHECK(snr_db(recon, truth) == Catch::Approx(20.0));

  // scaling the error by 2 costs 6.02 dB
  CVec worse(2);
  worse << Complex{3.0, 0.0}, Complex{5.0, 0.0};
  CHECK(snr_db(recon, truth) - snr_db(worse, truth) ==
        Catch::Approx(20.0 * std::log10(2.0)));

  // exact recovery hits the cap; the imaginary part is ignored
  CVec exact(2);
  exact << Complex{3.0, 9.0}, Complex{4.0, -2.0};
  CHECK(snr_db(exact, truth) == kSnrCapDb);

  CHECK_THROWS_AS(snr_db(exact, Vec(Vec::Zero(2))), std::invalid_argument);
  CHECK_THROWS_AS(relative_error(exact, Vec(Vec::Zero(2)), noise),
                  std::invalid_argument);
}
