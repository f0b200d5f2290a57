#include <doctest.h>

#include <sstream>

#include "nilharm/errors.hpp"
#include "nilharm/fourier.hpp"
#include "nilharm/grid.hpp"
#include "nilharm/test_functions.hpp"
#include "oracles.hpp"

using namespace nilharm;

namespace {

GridFunction noise(const GridSpec& spec, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  GridFunction g(spec);
  for (auto& s : g.samples) s = {n(rng), n(rng)};
  return g;
}

}  // namespace

TEST_CASE("grid nodes and frequencies") {
  const GridAxis ax(1.0, 2.0, 8);
  CHECK(ax.step() == 0.5);
  CHECK(ax.node(0) == -1.0);
  CHECK(ax.node(7) == 2.5);
  CHECK(ax.dual_step() == doctest::Approx(2.0 * M_PI / 4.0));
  CHECK(ax.frequency(4) == 0.0);
  CHECK(ax.frequency(0) == doctest::Approx(-4.0 * ax.dual_step()));
}

TEST_CASE("forward transform matches a direct DFT in 1-D") {
  const GridSpec spec{GridAxis(0.3, 2.5, 16)};
  const GridFunction g = noise(spec, 1);
  const GridFunction F = fourier_forward(g);
  const auto ref = oracle::direct_dft(g.samples, 0.3, 2.5);
  for (std::size_t j = 0; j < ref.size(); ++j) CHECK(std::abs(F.samples[j] - ref[j]) < 1e-12);
  CHECK(F.domain == Domain::Frequency);
}

TEST_CASE("forward transform matches a direct DFT in 2-D") {
  const GridSpec spec{GridAxis(0.5, 2.0, 8), GridAxis(-0.25, 1.5, 4)};
  const GridFunction g = noise(spec, 2);
  const GridFunction F = fourier_forward(g);
  std::vector<double> x(2), lam(2);
  double err = 0.0;
  for (std::size_t j = 0; j < F.size(); ++j) {
    grid_frequency(spec, j, lam);
    cplx ref = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      grid_node(spec, k, x);
      ref += g.samples[k] * std::polar(1.0, -(lam[0] * x[0] + lam[1] * x[1]));
    }
    err = std::max(err, std::abs(F.samples[j] - ref * cell_volume(spec)));
  }
  CHECK(err < 1e-12);
}

TEST_CASE("inverse undoes forward") {
  const GridSpec spec = uniform_grid(3, 8, 3.0, 0.2);
  const GridFunction g = noise(spec, 3);
  const GridFunction back = fourier_inverse(fourier_forward(g));
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(back.samples[i] - g.samples[i]));
  CHECK(err < 1e-13);
}

TEST_CASE("discrete Parseval on random data") {
  const GridFunction g = noise(uniform_grid(2, 32, 4.0), 4);
  const double t = norm_sq(g), f = norm_sq(fourier_forward(g));
  CHECK(std::abs(t - f) / t < 1e-13);
}

TEST_CASE("Gaussian transform matches the continuous closed form") {
  const double w = 1.7;
  const GridSpec spec{GridAxis(0.0, 12.0, 128)};
  const GridFunction F = fourier_forward(sample(TestFunction::gaussian(1, w), spec));
  for (std::size_t j = 0; j < F.size(); ++j) {
    const double lam = spec[0].frequency(j);
    CHECK(std::abs(F.samples[j] - std::sqrt(2 * M_PI / w) * std::exp(-lam * lam / (2 * w))) < 1e-12);
  }
}

TEST_CASE("quadrature of a Gaussian") {
  const TestFunction f = TestFunction::gaussian(2, 2.0);
  const cplx q = quadrature(sample(f, uniform_grid(2, 64, 8.0)));
  CHECK(std::abs(q - cplx(M_PI)) < 1e-12);
}

TEST_CASE("binary dump round trip") {
  const GridSpec spec{GridAxis(0.5, 2.0, 4), GridAxis(-1.0, 3.0, 8)};
  const GridFunction g = noise(spec, 5);
  std::stringstream ss;
  write_binary(g, ss);
  const GridFunction h = read_binary(ss);
  CHECK(h.spec == g.spec);
  CHECK(h.samples == g.samples);
}

TEST_CASE("truncated binary dump is an I/O failure") {
  std::stringstream ss;
  write_binary(noise(uniform_grid(1, 8, 1.0), 6), ss);
  std::string s = ss.str();
  s.resize(s.size() / 2);
  std::stringstream cut(s);
  CHECK_THROWS_AS(read_binary(cut), std::ios_base::failure);
}

TEST_CASE("CSV export has one row per node") {
  std::stringstream ss;
  write_csv(noise(uniform_grid(2, 4, 1.0), 7), ss);
  std::size_t lines = 0;
  for (std::string l; std::getline(ss, l);) ++lines;
  CHECK(lines >= 16);
  CHECK(lines <= 17);
}

TEST_CASE("grid axes must hold an even power of two") {
  CHECK_THROWS_AS(GridAxis(0.0, 1.0, 6), InvalidArgument);
  CHECK_THROWS_AS(GridAxis(0.0, -1.0, 8), InvalidArgument);
}
