#include "nilharm/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "nilharm/errors.hpp"
#include "nilharm/extension.hpp"
#include "nilharm/fourier.hpp"
#include "nilharm/harmonic.hpp"
#include "nilharm/ideals.hpp"
#include "nilharm/invariant_ops.hpp"
#include "nilharm/lie_groups.hpp"
#include "nilharm/operator_parser.hpp"
#include "nilharm/reduce.hpp"
#include "nilharm/scalar_groups.hpp"

namespace nilharm {

namespace {

using Rng = std::mt19937_64;

Rng stream_for(const RunConfig& c, std::string_view check) {
  std::uint32_t h = 2166136261u;
  for (char ch : check) h = (h ^ static_cast<unsigned char>(ch)) * 16777619u;
  std::seed_seq seq{static_cast<std::uint32_t>(c.seed), static_cast<std::uint32_t>(c.seed >> 32), h};
  return Rng(seq);
}

Coords uniform(Rng& rng, std::size_t dim, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Coords out(dim);
  for (double& x : out) x = u(rng);
  return out;
}

double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

double rel_diff(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d / std::max(1.0, max_abs(b));
}

/// Collects lines for one check and applies the tolerance override.
class Lines {
 public:
  Lines(std::string check, const RunConfig& c) : check_(std::move(check)), config_(c) {}

  void add(Params params, std::string metric, double value, double tolerance, bool gating = true) {
    ReportLine l;
    l.check = check_;
    l.params = std::move(params);
    l.metric = std::move(metric);
    l.value = value;
    l.tolerance = config_.tolerance.value_or(tolerance);
    l.pass = value <= l.tolerance;
    l.gating = gating;
    out_.push_back(std::move(l));
  }

  std::vector<ReportLine> take() { return std::move(out_); }

 private:
  std::string check_;
  const RunConfig& config_;
  std::vector<ReportLine> out_;
};

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

bool wants(const RunConfig& c, const char* group) { return !c.group || *c.group == group; }

// ---------------------------------------------------------------- group axioms

struct AxiomError {
  double assoc = 0.0, inverse = 0.0, identity = 0.0;
};

template <typename Elem, typename Mul, typename Inv, typename Coordsf>
AxiomError axioms(Rng& rng, std::size_t samples, std::function<Elem(Rng&)> draw, Mul mul, Inv inv,
                  const Elem& e, Coordsf coords) {
  AxiomError err;
  for (std::size_t s = 0; s < samples; ++s) {
    const Elem x = draw(rng), y = draw(rng), z = draw(rng);
    const Coords l = coords(mul(mul(x, y), z));
    const Coords r = coords(mul(x, mul(y, z)));
    err.assoc = std::max(err.assoc, rel_diff(l.span(), r.span()));
    const Coords id = coords(e);
    const Coords a = coords(mul(x, inv(x)));
    const Coords b = coords(mul(inv(x), x));
    err.inverse = std::max({err.inverse, rel_diff(a.span(), id.span()), rel_diff(b.span(), id.span())});
    const Coords xc = coords(x);
    const Coords ex = coords(mul(e, x));
    const Coords xe = coords(mul(x, e));
    err.identity = std::max({err.identity, rel_diff(ex.span(), xc.span()), rel_diff(xe.span(), xc.span())});
  }
  return err;
}

std::vector<ReportLine> check_group_axioms(const RunConfig& c) {
  Lines out("group-axioms", c);
  Rng rng = stream_for(c, "group-axioms");
  const std::size_t samples = c.points.value_or(10000);
  std::vector<int> ms{2, 3, 4, 5};
  if (c.m) ms = {*c.m};
  std::vector<std::string> groups{"N", "A", "S", "K1", "H"};
  if (c.group && *c.group == "N") groups = {"N", "K1"};
  if (c.group && *c.group == "S") groups = {"A", "S", "H"};
  for (const auto& g : groups)
    for (int m : ms) {
      const GroupSpec spec(m);
      AxiomError err;
      if (g == "N") {
        err = axioms<UnipotentElement>(
            rng, samples,
            [&](Rng& r) {
              const Coords x = uniform(r, static_cast<std::size_t>(spec.dim_n()), -1, 1);
              return UnipotentElement(spec, x.span());
            },
            unipotent_mul, unipotent_inv, UnipotentElement(spec),
            [](const UnipotentElement& x) { return Coords(x.coords()); });
      } else if (g == "A") {
        err = axioms<DiagonalElement>(
            rng, samples,
            [&](Rng& r) {
              const Coords t = uniform(r, static_cast<std::size_t>(spec.dim_a()), -1, 1);
              return DiagonalElement(spec, t.span());
            },
            diagonal_mul, diagonal_inv, DiagonalElement(spec),
            [](const DiagonalElement& a) { return Coords(a.log_coords()); });
      } else if (g == "S") {
        err = axioms<SolvableElement>(
            rng, samples,
            [&](Rng& r) {
              const Coords x = uniform(r, static_cast<std::size_t>(spec.dim_s()), -1, 1);
              return SolvableElement::from_coords(spec, x.span());
            },
            solvable_mul, solvable_inv, SolvableElement::identity(spec),
            [](const SolvableElement& p) { return p.coords(); });
      } else {
        const ExtendedChart chart(g == "K1" ? ExtendedCase::K1 : ExtendedCase::H, spec);
        err = axioms<ExtendedPoint>(
            rng, samples,
            [&](Rng& r) {
              const Coords x = uniform(r, chart.dim(), -1, 1);
              return chart.to_point(x.span());
            },
            extended_mul, extended_inv, extended_identity(chart.kind(), spec),
            [&](const ExtendedPoint& p) { return chart.to_coords(p); });
      }
      const Params p{{"group", g}, {"m", std::int64_t{m}}, {"samples", as_int(samples)}};
      out.add(p, "associativity_rel_err", err.assoc, 1e-12);
      out.add(p, "inverse_rel_err", err.inverse, 1e-12);
      out.add(p, "identity_rel_err", err.identity, 1e-12);
    }
  return out.take();
}

// ------------------------------------------------------------------------ haar

std::vector<ReportLine> check_haar(const RunConfig& c) {
  Lines out("haar", c);
  Rng rng = stream_for(c, "haar");
  const std::size_t count = c.points.value_or(10);
  if (wants(c, "N")) {
    const GroupSpec spec(c.m.value_or(3));
    const auto d = static_cast<std::size_t>(spec.dim_n());
    const std::size_t P = c.grid.value_or(64);
    const double L = c.half_width.value_or(10.0);
    Coords center(d);
    for (std::size_t i = 0; i < d; ++i) center[i] = 0.1 * static_cast<double>(i + 1);
    const TestFunction f = TestFunction::gaussian(center.span(), Coords(d, 1.0).span());
    const GridSpec grid = uniform_grid(d, P, L);
    double left = 0.0, right = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
      const Coords t = uniform(rng, d, -0.5, 0.5);
      left = std::max(left, haar_invariance_error(f, BaseGroup::N, spec, t.span(), Side::Left, grid));
      right = std::max(right, haar_invariance_error(f, BaseGroup::N, spec, t.span(), Side::Right, grid));
    }
    const Params p{{"group", "N"}, {"m", std::int64_t{spec.m()}}, {"grid", as_int(P)},
                   {"halfwidth", L}, {"translations", as_int(count)}};
    out.add(p, "left_rel_err", left, 1e-6);
    out.add(p, "right_rel_err", right, 1e-6);
  }
  if (wants(c, "S")) {
    const GroupSpec spec(c.m.value_or(2));
    const auto dn = static_cast<std::size_t>(spec.dim_n());
    const auto d = static_cast<std::size_t>(spec.dim_s());
    // Narrow in the A directions so that rho(a) keeps the translates inside the N box.
    Coords center(d, 0.1), widths(d, 1.0);
    for (std::size_t i = dn; i < d; ++i) widths[i] = 16.0;
    const std::size_t Pn = c.grid.value_or(dn == 1 ? 256 : 32);
    const double Ln = c.half_width.value_or(20.0);
    GridSpec grid;
    for (std::size_t i = 0; i < d; ++i) {
      if (i < dn)
        grid.emplace_back(0.0, Ln, Pn);
      else
        grid.emplace_back(0.0, 3.0, 64);
    }
    const TestFunction f = TestFunction::gaussian(center.span(), widths.span());
    double left = 0.0, right = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
      const Coords t = uniform(rng, d, -0.5, 0.5);
      right = std::max(right, haar_invariance_error(f, BaseGroup::S, spec, t.span(), Side::Right, grid));
      left = std::max(left, haar_invariance_error(f, BaseGroup::S, spec, t.span(), Side::Left, grid));
    }
    const Params p{{"group", "S"}, {"m", std::int64_t{spec.m()}}, {"grid_n", as_int(Pn)},
                   {"halfwidth_n", Ln}, {"grid_a", std::int64_t{64}}, {"halfwidth_a", 3.0},
                   {"translations", as_int(count)}};
    out.add(p, "right_rel_err", right, 1e-6);
    out.add(p, "left_rel_err_modular", left, 1e-6, false);
  }
  return out.take();
}

// ------------------------------------------------------------------ plancherel

TestFunction product_gaussian(std::size_t d) {
  static const double centers[] = {0.2, -0.1, 0.3, 0.1, -0.2};
  static const double widths[] = {1.0, 0.7, 1.3, 1.0, 1.5};
  Coords c(d), w(d);
  for (std::size_t i = 0; i < d; ++i) {
    c[i] = centers[i % 5];
    w[i] = widths[i % 5];
  }
  return TestFunction::gaussian(c.span(), w.span());
}

std::vector<ReportLine> check_plancherel(const RunConfig& c) {
  Lines out("plancherel", c);
  Rng rng = stream_for(c, "plancherel");
  if (wants(c, "N")) {
    const GroupSpec spec(c.m.value_or(3));
    const auto d = static_cast<std::size_t>(spec.dim_n());
    const std::size_t P = c.grid.value_or(64);
    const double L = c.half_width.value_or(10.0);
    const PlancherelReport r = plancherel_check(product_gaussian(d), uniform_grid(d, P, L));
    const Params p{{"group", "N"}, {"m", std::int64_t{spec.m()}}, {"grid", as_int(P)}, {"halfwidth", L}};
    out.add(p, "closed_form_rel_err", r.exact_rel_err, 1e-8);

    GridFunction data(uniform_grid(d, 16, L));
    std::normal_distribution<double> n01;
    for (auto& s : data.samples) s = {n01(rng), n01(rng)};
    const PlancherelReport pr = plancherel_report(data);
    out.add({{"group", "N"}, {"m", std::int64_t{spec.m()}}, {"grid", std::int64_t{16}}, {"data", "random"}},
            "parseval_rel_err", pr.rel_err, 1e-12);
  }
  if (wants(c, "S")) {
    const GroupSpec spec(c.m.value_or(3));
    const auto d = static_cast<std::size_t>(spec.dim_s());
    const std::size_t P = c.grid.value_or(32);
    const double L = c.half_width.value_or(6.0);
    const PlancherelReport r = plancherel_check(product_gaussian(d), uniform_grid(d, P, L));
    const Params p{{"group", "S"}, {"m", std::int64_t{spec.m()}}, {"grid", as_int(P)}, {"halfwidth", L},
                   {"measure", "dn dt"}};
    out.add(p, "closed_form_rel_err", r.exact_rel_err, 1e-6);
    out.add(p, "parseval_rel_err", r.rel_err, 1e-12);
  }
  return out.take();
}

// ------------------------------------------------------------------- extension

struct ChartCase {
  ExtendedCase kind;
  int m;
};

std::string case_name(ExtendedCase k) { return k == ExtendedCase::K1 ? "K1" : "H"; }

std::vector<ChartCase> chart_cases(const RunConfig& c, std::vector<ChartCase> defaults) {
  std::vector<ChartCase> out;
  for (const auto& cc : defaults) {
    if (c.group && (*c.group == "N") != (cc.kind == ExtendedCase::K1)) continue;
    out.push_back(cc);
  }
  if (c.m) {
    std::vector<ChartCase> picked;
    for (const auto& cc : out)
      if (std::none_of(picked.begin(), picked.end(), [&](const ChartCase& p) { return p.kind == cc.kind; }))
        picked.push_back({cc.kind, *c.m});
    out = picked;
  }
  return out;
}

std::vector<ReportLine> check_extension(const RunConfig& c) {
  Lines out("extension", c);
  Rng rng = stream_for(c, "extension");
  const std::size_t count = c.points.value_or(100);
  for (const auto& cc : chart_cases(c, {{ExtendedCase::K1, 3}, {ExtendedCase::H, 2}, {ExtendedCase::H, 3}})) {
    const GroupSpec spec(cc.m);
    const ExtendedChart chart(cc.kind, spec);
    const std::size_t bd = chart.base_dim();
    const std::size_t k = ExtendedPoint::shift_length(cc.kind, spec);
    Coords center(bd);
    for (std::size_t i = 0; i < bd; ++i) center[i] = 0.1 * static_cast<double>(i + 1);
    const TestFunction f = TestFunction::gaussian(center.span(), Coords(bd, 0.5).span());
    double inv = 0.0, restr = 0.0, round = 0.0, jac = 0.0, scale = 0.0;
    for (std::size_t s = 0; s < count; ++s) {
      const Coords x = uniform(rng, chart.dim(), -1, 1);
      const ExtendedPoint p = chart.to_point(x.span());
      const Coords a = uniform(rng, k, -1, 1);
      scale = std::max(scale, std::abs(tilde_eval(f, p)));
      inv = std::max(inv, invariance_residual(f, p, a.span()));

      const Coords base = chart.base_coords(x.span());
      const Coords zero(k, 0.0);
      const Coords at_base = chart.from_base(base.span(), zero.span());
      restr = std::max(restr, std::abs(tilde_eval(f, chart, at_base.span()) - f.evaluate(base.span())));

      const Coords g = gamma_point(cc.kind, spec, base.span());
      const Coords back = gamma_inv_point(cc.kind, spec, g.span());
      round = std::max(round, rel_diff(back.span(), base.span()));
      if (cc.kind == ExtendedCase::K1) jac = std::max(jac, std::abs(twist_jacobian(cc.kind, spec, a.span()) - 1.0));
    }
    const Params p{{"case", case_name(cc.kind)}, {"m", std::int64_t{cc.m}}, {"samples", as_int(count)}};
    out.add(p, "invariance_rel_err", inv / std::max(scale, 1e-300), 1e-12);
    out.add(p, "restriction_abs_err", restr, 1e-12);
    out.add(p, "gamma_roundtrip_rel_err", round, 1e-12);
    if (cc.kind == ExtendedCase::K1) out.add(p, "twist_jacobian_err", jac, 1e-12);
  }
  return out.take();
}

// -------------------------------------------------------- convolution identity

std::vector<ReportLine> check_convolution_identity(const RunConfig& c) {
  Lines out("convolution-identity", c);
  Rng rng = stream_for(c, "convolution-identity");
  const std::size_t count = c.points.value_or(20);
  const double L = c.half_width.value_or(3.0);
  for (const auto& cc : chart_cases(c, {{ExtendedCase::H, 2}, {ExtendedCase::H, 3}, {ExtendedCase::K1, 3}})) {
    const GroupSpec spec(cc.m);
    const ExtendedChart chart(cc.kind, spec);
    const std::size_t bd = chart.base_dim();
    const std::size_t fine = c.grid.value_or(bd <= 2 ? 32 : 16);
    if (fine < 4) throw InvalidArgument("convolution-identity needs --grid of at least 4");
    Coords center(bd);
    for (std::size_t i = 0; i < bd; ++i) center[i] = 0.1 * static_cast<double>(i + 1);
    const TestFunction f = TestFunction::gaussian(center.span(), Coords(bd, 0.05).span());
    const TestFunction phi = TestFunction::gaussian(Coords(bd, 0.0).span(), Coords(bd, 8.0).span());
    PointList pts;
    for (std::size_t s = 0; s < count; ++s) pts.push_back(uniform(rng, chart.dim(), -0.5, 0.5));
    const ResidualReport coarse = reduction_residual(phi, f, chart, pts, fine / 2, L);
    const ResidualReport r = reduction_residual(phi, f, chart, pts, fine, L);
    const Params p{{"case", case_name(cc.kind)}, {"m", std::int64_t{cc.m}}, {"grid", as_int(fine)},
                   {"grid_coarse", as_int(fine / 2)}, {"halfwidth", L}, {"points", as_int(count)}};
    out.add(p, "relative_residual", r.relative(), 1e-3);
    const double ratio = coarse.residual > 0.0 ? r.residual / coarse.residual : 0.0;
    out.add(p, "refinement_ratio", ratio, 0.25);
  }
  return out.take();
}

// ------------------------------------------------------ projected convolution

std::vector<ReportLine> check_projected(const RunConfig& c) {
  Lines out("projected-convolution", c);
  const std::size_t freqs = c.points.value_or(10);
  for (const auto& cc : chart_cases(c, {{ExtendedCase::H, 2}, {ExtendedCase::K1, 3}})) {
    const GroupSpec spec(cc.m);
    const ExtendedChart chart(cc.kind, spec);
    const std::size_t bd = chart.base_dim();
    Coords center(bd), fw(bd, 2.0);
    for (std::size_t i = 0; i < bd; ++i) center[i] = 0.1 * static_cast<double>(i + 1);
    ProjectedGrid g;
    std::size_t Pc;
    double Lc;
    if (cc.kind == ExtendedCase::H) {
      // f narrow in the A direction keeps f~(., 0) inside the T box.
      for (std::size_t i = static_cast<std::size_t>(spec.dim_n()); i < bd; ++i) fw[i] = 16.0;
      Pc = c.grid.value_or(64);
      Lc = c.half_width.value_or(8.0);
      for (std::size_t k = 0; k < chart.conv_dim(); ++k) {
        if (k < static_cast<std::size_t>(spec.dim_n()))
          g.outer.emplace_back(0.0, Lc, Pc);
        else
          g.outer.emplace_back(0.0, 3.0, 32);
      }
      for (std::size_t k = 0; k < bd; ++k) g.inner.emplace_back(0.0, 3.0, 16);
    } else {
      Pc = c.grid.value_or(16);
      Lc = c.half_width.value_or(5.0);
      for (std::size_t k = 0; k < chart.conv_dim(); ++k) g.outer.emplace_back(0.0, Lc, Pc);
      for (std::size_t k = 0; k < bd; ++k) g.inner.emplace_back(0.0, 3.0, 8);
    }
    for (std::size_t k = 0; k < chart.param_dim(); ++k) g.outer.emplace_back(0.0, 2.0, 2);
    const TestFunction f = TestFunction::gaussian(center.span(), fw.span());
    const TestFunction phi = TestFunction::gaussian(Coords(bd, 0.0).span(), Coords(bd, 2.0).span());
    const ResidualReport r = projected_convolution_check(phi, f, chart, g, freqs);
    const Params p{{"case", case_name(cc.kind)}, {"m", std::int64_t{cc.m}}, {"grid", as_int(Pc)},
                   {"halfwidth", Lc}, {"frequencies", as_int(freqs)}};
    out.add(p, "relative_residual", r.relative(), 1e-2);
  }
  return out.take();
}

// ----------------------------------------------------------- operator identity

std::vector<EnvelopingElement> word_panel(std::size_t dim) {
  std::vector<EnvelopingElement> panel;
  for (std::size_t i = 0; i < dim; ++i) panel.push_back(EnvelopingElement::generator(dim, static_cast<int>(i)));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      panel.push_back(EnvelopingElement::generator(dim, static_cast<int>(i)) *
                      EnvelopingElement::generator(dim, static_cast<int>(j)));
  const int first_two[] = {0, 1};
  panel.push_back(EnvelopingElement::sum_of_squares(dim, first_two));
  return panel;
}

std::vector<ReportLine> check_operator_identity(const RunConfig& c) {
  Lines out("operator-identity", c);
  Rng rng = stream_for(c, "operator-identity");
  const std::size_t count = c.points.value_or(10);
  const double h_coarse = 1e-2, h_fine = 5e-3;
  std::vector<ChartCase> cases =
      chart_cases(c, {{ExtendedCase::K1, 3}, {ExtendedCase::H, 2}, {ExtendedCase::H, 3}});
  if (c.op && !c.group && !c.m) cases = {{ExtendedCase::K1, 3}};
  if (c.op && c.group && !c.m) cases.resize(std::min<std::size_t>(cases.size(), 1));
  for (const auto& cc : cases) {
    const GroupSpec spec(cc.m);
    const ExtendedChart chart(cc.kind, spec);
    const std::size_t bd = chart.base_dim();
    Coords center(bd);
    for (std::size_t i = 0; i < bd; ++i) center[i] = 0.1 * static_cast<double>(i + 1);
    const TestFunction f = TestFunction::gaussian(center.span(), Coords(bd, 1.0).span());
    PointList pts;
    for (std::size_t s = 0; s < count; ++s) pts.push_back(uniform(rng, chart.dim(), -0.5, 0.5));
    const std::vector<EnvelopingElement> panel =
        c.op ? std::vector<EnvelopingElement>{parse_operator(*c.op, bd)} : word_panel(bd);
    double worst = 0.0, deficit = 0.0;
    for (const auto& u : panel) {
      const ResidualReport rc = operator_identity_residual(u, f, chart, pts, {h_coarse, 2}, {h_coarse, 4});
      const ResidualReport rf = operator_identity_residual(u, f, chart, pts, {h_fine, 2}, {h_fine, 4});
      worst = std::max(worst, rf.relative());
      if (rc.residual > 1e-13 * std::max(rc.scale, 1.0)) {
        const double order = std::log2(rc.residual / std::max(rf.residual, 1e-300));
        deficit = std::max(deficit, 2.0 - order);
      }
    }
    Params p{{"case", case_name(cc.kind)}, {"m", std::int64_t{cc.m}}, {"points", as_int(count)},
             {"h_coarse", h_coarse}, {"h_fine", h_fine}, {"p_order", std::int64_t{2}},
             {"q_order", std::int64_t{4}}};
    if (c.op)
      p.emplace_back("operator", *c.op);
    else
      p.emplace_back("words", as_int(panel.size()));
    out.add(p, "max_relative_residual", worst, 1e-3);
    out.add(p, "order_deficit", deficit, 0.05);
  }
  return out.take();
}

// -------------------------------------------------------- fundamental solution

std::vector<ReportLine> check_fundamental_solution(const RunConfig& c) {
  Lines out("fundamental-solution", c);
  const double eps = c.epsilon.value_or(1e-8);
  {
    const EnvelopingElement u = parse_operator("E1*E1 - 1", 1);
    const GridSpec g{GridAxis(0.0, 20.0, 1024)};
    for (const auto mode : {SymbolMode::GridConsistent, SymbolMode::Exact}) {
      const GridFunction e = fundamental_solution_abelian(u, g, eps, mode);
      double err = 0.0;
      for (std::size_t i = 0; i < e.size(); ++i) {
        const double x = g[0].node(i);
        err = std::max(err, std::abs(e.samples[i] - cplx(-0.5 * std::exp(-std::abs(x)))));
      }
      const bool grid_mode = mode == SymbolMode::GridConsistent;
      out.add({{"operator", "E1*E1 - 1"}, {"grid", std::int64_t{1024}}, {"halfwidth", 20.0}, {"epsilon", eps},
               {"symbol", grid_mode ? "grid-consistent" : "exact"}},
              "max_abs_error", err, 1e-3, grid_mode);
    }
  }
  if (wants(c, "N")) {
    const GroupSpec spec(c.m.value_or(3));
    const std::string expr = c.op.value_or(spec.m() == 3 ? "E1*E1 + E2*E2 - 1" : "E1*E1 - 1");
    const EnvelopingElement u = parse_operator(expr, static_cast<std::size_t>(spec.dim_n()));
    FundamentalSolutionOptions o;
    o.epsilon = eps;
    if (c.grid) o.points = *c.grid;
    if (c.half_width) o.half_width = *c.half_width;
    if (o.points < 8) throw InvalidArgument("fundamental-solution needs --grid of at least 8");
    std::vector<double> worst;
    for (std::size_t P : {o.points / 4, o.points / 2, o.points}) {
      FundamentalSolutionOptions oi = o;
      oi.points = P;
      const FundamentalSolutionReport r = fundamental_solution_group(u, BaseGroup::N, spec, oi);
      worst.push_back(*std::max_element(r.weak_residuals.begin(), r.weak_residuals.end()));
    }
    double ratio = 0.0;
    for (std::size_t k = 1; k < worst.size(); ++k) ratio = std::max(ratio, worst[k] / worst[k - 1]);
    const Params p{{"group", "N"}, {"m", std::int64_t{spec.m()}}, {"operator", expr}, {"grid", as_int(o.points)},
                   {"halfwidth", o.half_width}, {"epsilon", eps}, {"test_sigmas", "0.5,0.7"}};
    out.add(p, "weak_residual", worst.back(), 5e-2);
    out.add(p, "refinement_ratio_max", ratio, 1.0);
  }
  {
    double not_rejected = 1.0;
    try {
      fundamental_solution_group(parse_operator("0", 3), BaseGroup::N, GroupSpec(3), {});
    } catch (const ZeroOperatorError&) {
      not_rejected = 0.0;
    }
    out.add({{"group", "N"}, {"m", std::int64_t{3}}, {"operator", "0"}}, "zero_operator_accepted", not_rejected, 0.0);
  }
  if (wants(c, "S")) {
    const GroupSpec spec(2);
    const std::string expr = "E1*E1 + E2*E2 - 1";
    FundamentalSolutionOptions o;
    o.epsilon = eps;
    const FundamentalSolutionReport r =
        fundamental_solution_group(parse_operator(expr, 2), BaseGroup::S, spec, o);
    out.add({{"group", "S"}, {"m", std::int64_t{2}}, {"operator", expr}, {"grid", as_int(o.points)},
             {"halfwidth", o.half_width}, {"epsilon", eps}},
            "weak_residual", *std::max_element(r.weak_residuals.begin(), r.weak_residuals.end()), 5e-2, false);
  }
  return out.take();
}

// ---------------------------------------------------------------------- ideals

std::vector<ReportLine> check_ideals(const RunConfig& c) {
  Lines out("ideals", c);
  Rng rng = stream_for(c, "ideals");
  const GroupSpec spec(c.m.value_or(3));
  const auto d = static_cast<std::size_t>(spec.dim_n());
  const std::size_t lattice_count = c.dictionary_size.value_or(8);
  const std::size_t probe_count = c.probes.value_or(3);
  const std::size_t count = c.points.value_or(10);
  if (probe_count == 0) throw InvalidArgument("ideals needs at least one probe");

  Coords gc(d);
  const double gcs[] = {0.3, -0.2, 0.1};
  for (std::size_t i = 0; i < d; ++i) gc[i] = gcs[i % 3];
  const TestFunction gen = TestFunction::gaussian(gc.span(), Coords(d, 1.0).span());
  std::vector<TestFunction> probes;
  for (std::size_t i = 0; i < probe_count; ++i) {
    const Coords pc = uniform(rng, d, -0.5, 0.5);
    probes.push_back(TestFunction::gaussian(pc.span(), Coords(d, 2.0).span()));
  }
  const std::vector<TestFunction> lattice = gaussian_lattice(spec, lattice_count, 0.8, 1.0);

  PointList pts;
  for (std::size_t s = 0; s < count; ++s) pts.push_back(uniform(rng, d, -0.5, 0.5));
  const ResidualReport ir = gamma_intertwine_residual(probes[0], gen, spec, pts, uniform_grid(d, 16, 3.0));
  out.add({{"m", std::int64_t{spec.m()}}, {"points", as_int(count)}, {"inner_grid", std::int64_t{16}},
           {"inner_halfwidth", 3.0}},
          "intertwine_relative_residual", ir.relative(), 1e-3);

  const std::size_t P = c.grid.value_or(16);
  const double L = c.half_width.value_or(6.0);
  const IdealModel model = make_ideal_model(spec, {gen}, lattice, {probes[0]}, uniform_grid(d, P, L),
                                            uniform_grid(d, 8, 3.0));
  const std::vector<CorrespondenceEntry> ce = correspondence_check(model, probes);
  double diff = 0.0, worst_n = 0.0;
  for (const auto& e : ce) {
    diff = std::max(diff, e.difference);
    worst_n = std::max(worst_n, e.n_residual);
  }
  const Params p{{"m", std::int64_t{spec.m()}}, {"dictionary_size", as_int(model.dictionary.size())},
                 {"probes", as_int(probe_count)}, {"grid", as_int(P)}, {"halfwidth", L}};
  out.add(p, "closure_difference", diff, 1e-3);
  out.add(p, "closure_n_residual_max", worst_n, 1.0, false);

  const IdealModel plain = make_ideal_model(spec, {gen}, lattice, {}, uniform_grid(d, 32, 10.0),
                                            uniform_grid(d, 8, 3.0));
  out.add({{"m", std::int64_t{spec.m()}}, {"dictionary_size", as_int(plain.dictionary.size())},
           {"grid", std::int64_t{32}}, {"halfwidth", 10.0}},
          "gamma_inner_product_rel_err", gamma_inner_product_error(plain), 1e-6);
  return out.take();
}

// ---------------------------------------------------------------- scalar groups

std::vector<ReportLine> check_scalar_groups(const RunConfig& c) {
  Lines out("scalar-groups", c);
  Rng rng = stream_for(c, "scalar-groups");
  const std::size_t samples = c.points.value_or(10000);
  std::uniform_real_distribution<double> logu(-5.0, 5.0);
  auto neg = [&] { return NegReal(-std::exp(logu(rng))); };
  auto pos = [&] { return std::exp(logu(rng)); };
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
  double ax = 0.0, psi = 0.0, Psi = 0.0, Phi = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const NegReal x = neg(), y = neg(), z = neg();
    ax = std::max({ax, rel(neg_mul(neg_mul(x, y), z).value(), neg_mul(x, neg_mul(y, z)).value()),
                   rel(neg_mul(x, neg_inv(x)).value(), -1.0), rel(neg_mul(neg_inv(x), x).value(), -1.0),
                   rel(neg_mul(NegReal::identity(), x).value(), x.value()),
                   rel(neg_mul(x, NegReal::identity()).value(), x.value())});

    psi = std::max({psi, rel(iso_psi(neg_mul(x, y)), iso_psi(x) * iso_psi(y)),
                    rel(iso_psi_inverse(iso_psi(x)).value(), x.value())});

    const std::pair<double, NegReal> p{pos(), x}, q{pos(), y};
    const auto pq = product_mul(p, q);
    const auto [a1, b1] = iso_Psi(p.first, p.second);
    const auto [a2, b2] = iso_Psi(q.first, q.second);
    const auto [a3, b3] = iso_Psi(pq.first, pq.second);
    const auto back = iso_Psi_inverse(a1, b1);
    Psi = std::max({Psi, rel(a3, a1 + a2), rel(b3, b1 + b2), rel(back.first, p.first),
                    rel(back.second.value(), p.second.value())});

    const cplx z1 = iso_Phi(p.first, p.second), z2 = iso_Phi(q.first, q.second);
    const cplx z3 = iso_Phi(pq.first, pq.second);
    const auto pb = iso_Phi_inverse(z1);
    Phi = std::max({Phi, std::abs(z3 - (z1 + z2)) / std::max(1.0, std::abs(z1 + z2)), rel(pb.first, p.first),
                    rel(pb.second.value(), p.second.value())});
  }
  const Params p{{"samples", as_int(samples)}};
  out.add(p, "negative_reals_axioms_rel_err", ax, 1e-12);
  out.add(p, "psi_rel_err", psi, 1e-12);
  out.add(p, "Psi_rel_err", Psi, 1e-12);
  out.add(p, "Phi_rel_err", Phi, 1e-12);
  return out.take();
}

using CheckFn = std::vector<ReportLine> (*)(const RunConfig&);

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> r{
      {"group-axioms", check_group_axioms},
      {"haar", check_haar},
      {"plancherel", check_plancherel},
      {"extension", check_extension},
      {"convolution-identity", check_convolution_identity},
      {"projected-convolution", check_projected},
      {"operator-identity", check_operator_identity},
      {"fundamental-solution", check_fundamental_solution},
      {"ideals", check_ideals},
      {"scalar-groups", check_scalar_groups},
  };
  return r;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string param_text(const ParamValue& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&v)) return format_double(*d);
  return std::get<std::string>(v);
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

bool is_check(std::string_view name) {
  const auto& n = check_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

void validate(const RunConfig& c) {
  if (c.group && *c.group != "N" && *c.group != "S") throw InvalidArgument("--group must be N or S");
  if (c.m && (*c.m < 2 || *c.m > kMaxMatrixSize)) {
    throw InvalidArgument("--m must lie in [2, " + std::to_string(kMaxMatrixSize) + "]");
  }
  if (c.grid && (*c.grid < 2 || (*c.grid & (*c.grid - 1)) != 0)) {
    throw InvalidArgument("--grid must be a power of two >= 2");
  }
  if (c.half_width && !(*c.half_width > 0.0)) throw InvalidArgument("--halfwidth must be positive");
  if (c.tolerance && !(*c.tolerance >= 0.0)) throw InvalidArgument("--tolerance must be non-negative");
  if (c.points && *c.points == 0) throw InvalidArgument("--points must be positive");
  if (c.epsilon && !(*c.epsilon > 0.0)) throw InvalidArgument("--epsilon must be positive");
}

std::vector<ReportLine> run_check(std::string_view name, const RunConfig& config) {
  for (const auto& [n, fn] : registry()) {
    if (n != name) continue;
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<ReportLine> lines = fn(config);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (auto& l : lines) l.wall_time = dt;
    return lines;
  }
  throw InvalidArgument("unknown check '" + std::string(name) + "'");
}

SuiteResult run_suite(const RunConfig& config, std::string_view selection, std::ostream* stream) {
  validate(config);
  std::vector<std::string> names;
  if (selection == "all") {
    names = check_names();
  } else if (is_check(selection)) {
    names = {std::string(selection)};
  } else {
    throw InvalidArgument("unknown check '" + std::string(selection) + "'");
  }
  set_thread_count(config.threads);

  std::ofstream report, summary;
  if (!config.output.empty()) {
    report.open(config.output, std::ios::binary);
    if (!report) throw std::ios_base::failure("cannot open " + config.output);
    if (config.format == ReportFormat::Jsonl) {
      const std::string path = config.output + ".summary.csv";
      summary.open(path, std::ios::binary);
      if (!summary) throw std::ios_base::failure("cannot open " + path);
      summary << csv_header() << '\n';
    } else {
      report << csv_header() << '\n';
    }
  }
  const bool jsonl = config.format == ReportFormat::Jsonl;
  if (stream && !jsonl) *stream << csv_header() << '\n';

  SuiteResult result;
  for (const auto& name : names) {
    for (auto& line : run_check(name, config)) {
      const std::string text = jsonl ? to_jsonl(line) : to_csv(line);
      if (stream) *stream << text << '\n' << std::flush;
      if (report.is_open()) report << text << '\n';
      if (summary.is_open()) summary << to_csv(line) << '\n';
      if (line.gating && !line.pass) result.exit_code = kExitFailure;
      result.lines.push_back(std::move(line));
    }
  }
  if (report.is_open() && !report.flush()) throw std::ios_base::failure("failed writing " + config.output);
  if (summary.is_open() && !summary.flush()) throw std::ios_base::failure("failed writing summary");
  return result;
}

std::string to_jsonl(const ReportLine& line) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["check"] = line.check;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : line.params) std::visit([&](const auto& x) { params[k] = x; }, v);
  j["params"] = params;
  j["metric"] = line.metric;
  j["value"] = line.value;
  j["tolerance"] = line.tolerance;
  j["pass"] = line.pass;
  j["gating"] = line.gating;
  return j.dump();
}

std::string csv_header() { return "schema,check,metric,value,tolerance,pass,gating,wall_time,params"; }

std::string to_csv(const ReportLine& line) {
  std::string params;
  for (const auto& [k, v] : line.params) {
    if (!params.empty()) params += ';';
    params += k + "=" + param_text(v);
  }
  std::ostringstream os;
  os << "1," << line.check << ',' << line.metric << ',' << format_double(line.value) << ','
     << format_double(line.tolerance) << ',' << (line.pass ? "true" : "false") << ','
     << (line.gating ? "true" : "false") << ',' << format_double(line.wall_time) << ',' << csv_quote(params);
  return os.str();
}

}  // namespace nilharm
