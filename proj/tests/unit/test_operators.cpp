#include <doctest.h>

#include "nilharm/errors.hpp"
#include "nilharm/invariant_ops.hpp"
#include "nilharm/operator_parser.hpp"
#include "oracles.hpp"

using namespace nilharm;

namespace {

cplx coefficient_of(const EnvelopingElement& u, const Word& w) {
  for (const auto& t : u.terms())
    if (t.word == w) return t.coefficient;
  return 0.0;
}

PointList random_points(std::size_t dim, std::size_t count, unsigned seed) {
  std::mt19937_64 rng(seed);
  PointList pts;
  for (std::size_t i = 0; i < count; ++i) pts.emplace_back(std::span<const double>(oracle::random_vector(rng, dim, -0.5, 0.5)));
  return pts;
}

TestFunction offset_gaussian(std::size_t dim, double width) {
  Coords c(dim), w(dim, width);
  for (std::size_t i = 0; i < dim; ++i) c[i] = 0.1 * static_cast<double>(i + 1);
  return TestFunction::gaussian(c.span(), w.span());
}

}  // namespace

TEST_CASE("parser: sublaplacian") {
  const EnvelopingElement u = parse_operator("E1*E1 + E2*E2", 3);
  CHECK(u.terms().size() == 2);
  CHECK(coefficient_of(u, {0, 0}) == cplx(1.0));
  CHECK(coefficient_of(u, {1, 1}) == cplx(1.0));
}

TEST_CASE("parser: order, literals and parentheses") {
  const EnvelopingElement u = parse_operator("E1*(E2 - 3) + 2i*E3 - 1", 3);
  CHECK(coefficient_of(u, {0, 1}) == cplx(1.0));
  CHECK(coefficient_of(u, {0}) == cplx(-3.0));
  CHECK(coefficient_of(u, {2}) == cplx(0.0, 2.0));
  CHECK(coefficient_of(u, {}) == cplx(-1.0));
  const EnvelopingElement c = parse_operator("E1*E2 - E2*E1", 3);
  CHECK(coefficient_of(c, {0, 1}) == cplx(1.0));
  CHECK(coefficient_of(c, {1, 0}) == cplx(-1.0));
}

TEST_CASE("parser: errors") {
  CHECK_THROWS_AS(parse_operator("E9", 3), InvalidArgument);
  CHECK_THROWS_AS(parse_operator("E0", 3), SyntaxError);
  CHECK_THROWS_AS(parse_operator("E1 + * E2", 3), SyntaxError);
  try {
    parse_operator("E1 + * E2", 3);
  } catch (const SyntaxError& e) {
    CHECK(e.position() == 5);
  }
  CHECK_THROWS_AS(parse_operator("(E1", 3), SyntaxError);
}

TEST_CASE("symbol of a constant-coefficient operator") {
  const double lam[] = {2.0};
  CHECK(std::abs(symbol(parse_operator("E1*E1 - 1", 1)).evaluate(lam) - cplx(-5.0)) < 1e-15);
  CHECK(std::abs(symbol(parse_operator("E1", 1)).evaluate(lam) - cplx(0.0, -2.0)) < 1e-15);
}

TEST_CASE("commutator has zero symbol but acts nontrivially on Heisenberg") {
  const GroupSpec spec(3);
  const EnvelopingElement c = parse_operator("E1*E2 - E2*E1", 3);
  CHECK(symbol(c).is_zero());
  const PointList pts = random_points(3, 5, 1);
  const TestFunction f = offset_gaussian(3, 1.0);
  const auto p = apply_P(c, f, FieldGroup::N, spec, pts, {1e-2, 4});
  const auto q = apply_Q(c, f, pts, {1e-2, 4});
  double pmax = 0.0, qmax = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    pmax = std::max(pmax, std::abs(p[i]));
    qmax = std::max(qmax, std::abs(q[i]));
  }
  CHECK(pmax > 1e-2);
  CHECK(qmax < 1e-12);
}

TEST_CASE("Lie brackets of the matrix generators") {
  const GroupSpec spec(3);
  // (E12, E23, E13): [E12, E23] = E13.
  const EnvelopingElement b = lie_bracket(FieldGroup::N, spec, 0, 1);
  CHECK(coefficient_of(b, {2}) == cplx(1.0));
  CHECK(coefficient_of(lie_bracket(FieldGroup::N, spec, 1, 0), {2}) == cplx(-1.0));
  CHECK(lie_bracket(FieldGroup::N, spec, 0, 2).is_zero());
  CHECK(lie_bracket(FieldGroup::M, spec, 0, 1).is_zero());
  // On S with m = 2 the A generator is diag(1, -1): [H, E12] = 2 E12.
  CHECK(coefficient_of(lie_bracket(FieldGroup::S, GroupSpec(2), 1, 0), {0}) == cplx(2.0));
}

TEST_CASE("P realises brackets: P(XY - YX) = P([X, Y])") {
  for (const auto& [group, m] : {std::pair{FieldGroup::N, 3}, std::pair{FieldGroup::N, 4}, std::pair{FieldGroup::S, 2},
                                 std::pair{FieldGroup::S, 3}}) {
    const GroupSpec spec(m);
    const std::size_t d = field_dim(group, spec);
    const TestFunction f = offset_gaussian(d, 1.0);
    const PointList pts = random_points(d, 4, static_cast<unsigned>(m));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const auto X = EnvelopingElement::generator(d, static_cast<int>(i));
        const auto Y = EnvelopingElement::generator(d, static_cast<int>(j));
        const auto lhs = apply_P(X * Y - Y * X, f, group, spec, pts, {1e-2, 4});
        const auto rhs = apply_P(lie_bracket(group, spec, static_cast<int>(i), static_cast<int>(j)), f, group, spec,
                                 pts, {1e-2, 4});
        for (std::size_t k = 0; k < pts.size(); ++k) CHECK(std::abs(lhs[k] - rhs[k]) < 1e-6);
      }
  }
}

TEST_CASE("Q acts as minus the partial derivative") {
  const TestFunction f = offset_gaussian(3, 1.5);
  const PointList pts = random_points(3, 5, 9);
  for (std::size_t k = 0; k < 3; ++k) {
    const auto q = apply_Q(EnvelopingElement::generator(3, static_cast<int>(k)), f, pts, {1e-2, 4});
    for (std::size_t i = 0; i < pts.size(); ++i)
      CHECK(std::abs(q[i] + f.derivative(k).evaluate(pts[i].span())) < 1e-7);
  }
}

TEST_CASE("normal ordering moves trailing generators right") {
  const GroupSpec spec(3);
  const Bracket br = [&](int a, int b) { return lie_bracket(FieldGroup::N, spec, a, b); };
  const std::vector<bool> trailing{false, true, false};
  const EnvelopingElement u = normal_ordered(parse_operator("E2*E1", 3), trailing, br);
  CHECK(coefficient_of(u, {0, 1}) == cplx(1.0));
  CHECK(coefficient_of(u, {2}) == cplx(-1.0));
  CHECK(coefficient_of(u, {1, 0}) == cplx(0.0));
  const EnvelopingElement v = parse_operator("E1*E2 + E3", 3);
  const EnvelopingElement vn = normal_ordered(v, trailing, br);
  CHECK(vn.terms().size() == v.terms().size());
}

TEST_CASE("normal ordering preserves the operator") {
  const GroupSpec spec(3);
  const Bracket br = [&](int a, int b) { return lie_bracket(FieldGroup::N, spec, a, b); };
  const EnvelopingElement u = parse_operator("E2*E1*E3 + E3*E1 - E2*E2*E1", 3);
  const EnvelopingElement v = normal_ordered(u, {false, true, true}, br);
  const TestFunction f = offset_gaussian(3, 1.0);
  const PointList pts = random_points(3, 4, 4);
  const auto a = apply_P(u, f, FieldGroup::N, spec, pts, {1e-2, 4});
  const auto b = apply_P(v, f, FieldGroup::N, spec, pts, {1e-2, 4});
  for (std::size_t k = 0; k < pts.size(); ++k) CHECK(std::abs(a[k] - b[k]) < 1e-6);
}

TEST_CASE("bilinear transpose on S: sum (P f) g = sum f (P^t g)") {
  const GroupSpec spec(2);
  const FieldGroup group = FieldGroup::S;
  const EnvelopingElement u = parse_operator("E1 + E2*E1 - 0.5*E2*E2", 2);
  const double c1[] = {0.2, -0.1}, c2[] = {-0.3, 0.2}, w[] = {1.0, 2.0};
  const TestFunction f = TestFunction::gaussian(c1, w), g = TestFunction::gaussian(c2, w);
  const PointFunction fp = [&](std::span<const double> x) { return f.evaluate(x); };
  const PointFunction gp = [&](std::span<const double> x) { return g.evaluate(x); };
  const Flow flow = group_flow(group, spec);
  const GridSpec grid = uniform_grid(2, 64, 7.0);
  const StencilOptions opts{1e-3, 2};
  cplx lhs = 0.0, rhs = 0.0;
  double x[2];
  for (std::size_t i = 0; i < grid_size(grid); ++i) {
    grid_node(grid, i, x);
    lhs += apply_operator(u, fp, flow, x, opts) * gp(x);
    rhs += fp(x) * apply_operator_transpose(u, gp, group, spec, x, opts);
  }
  CHECK(std::abs(lhs - rhs) / std::abs(lhs) < 1e-5);
}

TEST_CASE("stencil budget") {
  const TestFunction f = TestFunction::gaussian(1, 1.0);
  const PointList pts = random_points(1, 1, 1);
  CHECK_THROWS_AS(apply_Q(parse_operator("E1*E1*E1*E1*E1", 1), f, pts), UnsupportedOrderError);
  CHECK_NOTHROW(apply_Q(parse_operator("E1*E1*E1*E1", 1), f, pts));
}

TEST_CASE("1-D fundamental solution of E1*E1 - 1") {
  const GridSpec grid{GridAxis(0.0, 20.0, 1024)};
  const GridFunction e = fundamental_solution_abelian(parse_operator("E1*E1 - 1", 1), grid, 1e-8);
  double err = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i)
    err = std::max(err, std::abs(e.samples[i] + 0.5 * std::exp(-std::abs(grid[0].node(i)))));
  CHECK(err < 1e-3);
}

TEST_CASE("zero operator is rejected") {
  const GridSpec grid = uniform_grid(1, 64, 5.0);
  CHECK_THROWS_AS(fundamental_solution_abelian(parse_operator("0", 1), grid, 1e-8), ZeroOperatorError);
  CHECK_THROWS_AS(fundamental_solution_abelian(parse_operator("E1*E2 - E2*E1", 2), uniform_grid(2, 16, 5.0), 1e-8),
                  ZeroOperatorError);
}
