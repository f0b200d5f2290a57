#include <doctest.h>

#include "nilharm/extension.hpp"
#include "nilharm/harmonic.hpp"
#include "oracles.hpp"

using namespace nilharm;

TEST_CASE("abelian convolution of Gaussians matches the closed form") {
  const TestFunction g = TestFunction::gaussian(1, 2.0), f = TestFunction::gaussian(1, 0.5);
  PointList pts;
  for (double x : {-1.0, 0.0, 0.3, 2.0}) pts.push_back(Coords{x});
  const auto v = convolve_abelian(g, f, pts, uniform_grid(1, 128, 10.0));
  for (std::size_t i = 0; i < pts.size(); ++i)
    CHECK(std::abs(v[i] - oracle::gaussian_convolution_1d(0.5, 2.0, pts[i][0])) < 1e-12);
}

TEST_CASE("group convolution on N matches a dense-matrix quadrature") {
  const int m = 3;
  const GroupSpec spec(m);
  const double cg[] = {0.1, -0.2, 0.0}, wg[] = {2.0, 2.0, 2.0};
  const double cf[] = {0.3, 0.1, -0.2}, wf[] = {1.0, 0.5, 1.5};
  const TestFunction g = TestFunction::gaussian(cg, wg), f = TestFunction::gaussian(cf, wf);
  const GridSpec grid = uniform_grid(3, 16, 4.0);
  std::mt19937_64 rng(1);
  PointList pts;
  for (int i = 0; i < 4; ++i) pts.emplace_back(std::span<const double>(oracle::random_vector(rng, 3)));
  const auto v = convolve_group(g, f, BaseGroup::N, spec, pts, grid);
  std::vector<double> y(3);
  for (std::size_t p = 0; p < pts.size(); ++p) {
    const auto X = oracle::from_graded({pts[p].begin(), pts[p].end()}, m);
    cplx ref = 0.0;
    for (std::size_t k = 0; k < grid_size(grid); ++k) {
      grid_node(grid, k, y);
      const auto Yinv = oracle::unit_upper_inverse(oracle::from_graded(y, m), m);
      const auto z = oracle::to_graded(oracle::multiply(Yinv, X, m), m);
      ref += f.evaluate(z) * g.evaluate(y);
    }
    ref *= cell_volume(grid);
    CHECK(std::abs(v[p] - ref) < 1e-12);
  }
}

TEST_CASE("group convolution on abelian N reduces to the abelian one") {
  const GroupSpec spec(2);
  const TestFunction g = TestFunction::gaussian(1, 3.0), f = TestFunction::gaussian(1, 1.0);
  const PointList pts{Coords{0.4}, Coords{-1.2}};
  const GridSpec grid = uniform_grid(1, 64, 6.0);
  const auto a = convolve_group(g, f, BaseGroup::N, spec, pts, grid);
  const auto b = convolve_abelian(g, f, pts, grid);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-14);
}

TEST_CASE("Plancherel against the closed form") {
  const double c[] = {0.2, -0.1}, w[] = {1.0, 0.7};
  const PlancherelReport r = plancherel_check(TestFunction::gaussian(c, w), uniform_grid(2, 64, 10.0));
  CHECK(r.has_exact);
  CHECK(r.exact_norm_sq == doctest::Approx(2 * M_PI / std::sqrt(4.0 * 0.7)));
  CHECK(r.exact_rel_err < 1e-12);
  CHECK(r.rel_err < 1e-13);
  const PlancherelReport s =
      plancherel_check(TestFunction::gaussian(c, w).times_monomial(0, 1), uniform_grid(2, 32, 10.0));
  CHECK_FALSE(s.has_exact);
}

TEST_CASE("Haar measure: N is unimodular, S is only right invariant") {
  const GroupSpec spec(2);
  const double t[] = {0.3, -0.2};
  const double c[] = {0.1, 0.1}, w[] = {1.0, 16.0};
  const TestFunction f = TestFunction::gaussian(c, w);
  GridSpec grid{GridAxis(0.0, 20.0, 256), GridAxis(0.0, 3.0, 64)};
  CHECK(haar_invariance_error(f, BaseGroup::S, spec, t, Side::Right, grid) < 1e-8);
  CHECK(haar_invariance_error(f, BaseGroup::S, spec, t, Side::Left, grid) > 1e-2);
  const TestFunction g = TestFunction::gaussian(3, 1.0);
  const double tn[] = {0.4, -0.3, 0.2};
  for (Side side : {Side::Left, Side::Right})
    CHECK(haar_invariance_error(g, BaseGroup::N, GroupSpec(3), tn, side, uniform_grid(3, 32, 8.0)) < 1e-10);
}

TEST_CASE("frequency offsets start at the origin and grow in l1 norm") {
  const auto off = frequency_offsets(2, 10);
  REQUIRE(off.size() == 10);
  CHECK(off[0] == std::vector<long>{0, 0});
  long prev = 0;
  for (const auto& o : off) {
    const long n = std::abs(o[0]) + std::abs(o[1]);
    CHECK(n >= prev);
    prev = n;
  }
}

TEST_CASE("reduction identity on H with m = 2") {
  const GroupSpec spec(2);
  const ExtendedChart chart(ExtendedCase::H, spec);
  const double cf[] = {0.1, 0.2}, wf[] = {0.05, 0.05}, z[] = {0.0, 0.0}, wp[] = {8.0, 8.0};
  const TestFunction f = TestFunction::gaussian(cf, wf), phi = TestFunction::gaussian(z, wp);
  std::mt19937_64 rng(3);
  PointList pts;
  for (int i = 0; i < 5; ++i) pts.emplace_back(std::span<const double>(oracle::random_vector(rng, chart.dim(), -0.5, 0.5)));
  const ResidualReport coarse = reduction_residual(phi, f, chart, pts, 16, 3.0);
  const ResidualReport fine = reduction_residual(phi, f, chart, pts, 32, 3.0);
  CHECK(fine.relative() < 1e-5);
  CHECK(fine.residual < 0.25 * coarse.residual);
}
