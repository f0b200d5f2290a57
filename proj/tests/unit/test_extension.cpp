#include <doctest.h>

#include "nilharm/extension.hpp"
#include "oracles.hpp"

using namespace nilharm;

namespace {

TestFunction base_gaussian(std::size_t d) {
  Coords c(d), w(d, 0.8);
  for (std::size_t i = 0; i < d; ++i) c[i] = 0.15 * static_cast<double>(i + 1);
  return TestFunction::gaussian(c.span(), w.span());
}

}  // namespace

TEST_CASE("extension restricts to the original function at zero shift") {
  std::mt19937_64 rng(1);
  for (auto kind : {ExtendedCase::K1, ExtendedCase::H})
    for (int m = 2; m <= 4; ++m) {
      const GroupSpec spec(m);
      const ExtendedChart chart(kind, spec);
      const TestFunction f = base_gaussian(chart.base_dim());
      const Coords zero(ExtendedPoint::shift_length(kind, spec), 0.0);
      for (int s = 0; s < 10; ++s) {
        const auto base = oracle::random_vector(rng, chart.base_dim());
        CHECK(std::abs(tilde_eval_base(f, kind, spec, base, zero.span()) - f.evaluate(base)) < 1e-15);
      }
    }
}

TEST_CASE("H shift acts as (identity, u) composed on the left") {
  std::mt19937_64 rng(2);
  const GroupSpec spec(3);
  const auto base = oracle::random_vector(rng, 5);
  const auto u = oracle::random_vector(rng, 2);
  std::vector<double> iu(5, 0.0);
  iu[3] = u[0];
  iu[4] = u[1];
  const Coords ref = base_mul(BaseGroup::S, spec, iu, base);
  const Coords got = iota_apply(ExtendedCase::H, spec, u, base);
  for (std::size_t i = 0; i < 5; ++i) CHECK(got[i] == doctest::Approx(ref[i]).epsilon(1e-14));
}

TEST_CASE("extension is invariant under the acting factor") {
  std::mt19937_64 rng(3);
  for (auto kind : {ExtendedCase::K1, ExtendedCase::H}) {
    const GroupSpec spec(3);
    const ExtendedChart chart(kind, spec);
    const TestFunction f = base_gaussian(chart.base_dim());
    for (int s = 0; s < 20; ++s) {
      const ExtendedPoint p = chart.to_point(oracle::random_vector(rng, chart.dim()));
      const auto a = oracle::random_vector(rng, ExtendedPoint::shift_length(kind, spec));
      CHECK(invariance_residual(f, p, a) < 1e-14);
    }
  }
}

TEST_CASE("Gamma round trip and unit twist Jacobian on K1") {
  std::mt19937_64 rng(4);
  for (int m = 2; m <= 5; ++m) {
    const GroupSpec spec(m);
    for (auto kind : {ExtendedCase::K1, ExtendedCase::H}) {
      const std::size_t d = base_dim(kind == ExtendedCase::K1 ? BaseGroup::N : BaseGroup::S, spec);
      const auto x = oracle::random_vector(rng, d);
      const Coords back = gamma_inv_point(kind, spec, gamma_point(kind, spec, x).span());
      for (std::size_t i = 0; i < d; ++i) CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-14));
    }
    const auto u = oracle::random_vector(rng, ExtendedPoint::shift_length(ExtendedCase::K1, spec));
    CHECK(twist_jacobian(ExtendedCase::K1, spec, u) == doctest::Approx(1.0));
  }
}

TEST_CASE("chart coordinates round trip") {
  std::mt19937_64 rng(5);
  for (auto kind : {ExtendedCase::K1, ExtendedCase::H}) {
    for (int m : {4, kMaxMatrixSize}) {
      const ExtendedChart chart(kind, GroupSpec(m));
      REQUIRE(chart.dim() <= kMaxCoords);
      const auto x = oracle::random_vector(rng, chart.dim());
      const ExtendedPoint p = chart.to_point(x);
      const Coords y = chart.to_coords(extended_mul(p, extended_identity(kind, GroupSpec(m))));
      for (std::size_t i = 0; i < x.size(); ++i) CHECK(y[i] == doctest::Approx(x[i]).epsilon(1e-14));
    }
  }
}
