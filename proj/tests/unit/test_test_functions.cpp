#include <doctest.h>

#include "nilharm/errors.hpp"
#include "nilharm/grid.hpp"
#include "nilharm/test_functions.hpp"

using namespace nilharm;

TEST_CASE("Gaussian evaluation in closed form") {
  const double c[] = {0.5, -1.0}, w[] = {2.0, 0.5}, x[] = {1.0, 1.0};
  const TestFunction f = TestFunction::gaussian(c, w, cplx(0.0, 2.0));
  const double expect = std::exp(-0.5 * (2.0 * 0.25 + 0.5 * 4.0));
  CHECK(std::abs(f.evaluate(x) - cplx(0.0, 2.0 * expect)) < 1e-15);
}

TEST_CASE("derivative agrees with central differences") {
  const double c[] = {0.2, 0.1, -0.3}, w[] = {1.0, 2.0, 0.7};
  const TestFunction f = TestFunction::gaussian(c, w).times_monomial(1, 2) + TestFunction::gaussian(3, 1.3);
  const double x[] = {0.4, -0.6, 0.9};
  const double h = 1e-5;
  for (std::size_t k = 0; k < 3; ++k) {
    double xp[3] = {x[0], x[1], x[2]}, xm[3] = {x[0], x[1], x[2]};
    xp[k] += h;
    xm[k] -= h;
    const cplx fd = (f.evaluate(xp) - f.evaluate(xm)) / (2 * h);
    CHECK(std::abs(f.derivative(k).evaluate(x) - fd) < 1e-9);
  }
}

TEST_CASE("translation shifts the argument") {
  const TestFunction f = TestFunction::gaussian(2, 1.0);
  const double s[] = {0.5, -0.25}, x[] = {0.7, 0.1}, xs[] = {0.2, 0.35};
  CHECK(std::abs(f.translated(s).evaluate(x) - f.evaluate(xs)) < 1e-15);
}

TEST_CASE("closed-form squared norm matches quadrature") {
  const double c1[] = {0.3, -0.2}, w1[] = {1.0, 2.0}, c2[] = {-0.5, 0.4}, w2[] = {0.6, 1.5};
  const TestFunction f = TestFunction::gaussian(c1, w1, cplx(1.0, 0.5)) + TestFunction::gaussian(c2, w2, -0.7);
  const GridSpec grid = uniform_grid(2, 128, 12.0);
  const GridFunction s = sample(f, grid);
  double q = 0.0;
  for (const cplx& v : s.samples) q += std::norm(v);
  q *= cell_volume(grid);
  CHECK(gaussian_norm_sq(f) == doctest::Approx(q).epsilon(1e-12));
}

TEST_CASE("closed-form norm rejects monomial factors") {
  CHECK_THROWS_AS(gaussian_norm_sq(TestFunction::gaussian(1, 1.0).times_monomial(0, 1)), InvalidArgument);
}
