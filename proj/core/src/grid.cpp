#include "nilharm/grid.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>

#include "nilharm/errors.hpp"
#include "nilharm/reduce.hpp"

namespace nilharm {

namespace {

constexpr char kMagic[8] = {'N', 'H', 'G', 'R', 'I', 'D', '0', '1'};

template <typename T>
void put(std::ostream& out, T v) {
  static_assert(std::endian::native == std::endian::little, "binary dumps assume little-endian");
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw std::ios_base::failure("truncated grid dump");
  return v;
}

}  // namespace

GridAxis::GridAxis(double c, double L, std::size_t P) : center(c), half_width(L), points(P) {
  if (!(L > 0.0) || !std::isfinite(L)) throw InvalidArgument("grid half-width must be positive");
  if (P < 2 || !std::has_single_bit(P)) {
    throw InvalidArgument("grid point count must be a power of two, got " + std::to_string(P));
  }
}

double GridAxis::dual_step() const {
  return 2.0 * std::numbers::pi / (static_cast<double>(points) * step());
}

double GridAxis::frequency(std::size_t j) const {
  return (static_cast<double>(j) - static_cast<double>(points / 2)) * dual_step();
}

GridSpec uniform_grid(std::size_t dim, std::size_t points, double half_width, double center) {
  return GridSpec(dim, GridAxis(center, half_width, points));
}

std::size_t grid_size(const GridSpec& spec) {
  std::size_t n = 1;
  for (const auto& a : spec) n *= a.points;
  return n;
}

void grid_node(const GridSpec& spec, std::size_t flat, std::span<double> out) {
  for (std::size_t d = spec.size(); d-- > 0;) {
    const std::size_t P = spec[d].points;
    out[d] = spec[d].node(flat % P);
    flat /= P;
  }
}

void grid_frequency(const GridSpec& spec, std::size_t flat, std::span<double> out) {
  for (std::size_t d = spec.size(); d-- > 0;) {
    const std::size_t P = spec[d].points;
    out[d] = spec[d].frequency(flat % P);
    flat /= P;
  }
}

double cell_volume(const GridSpec& spec) {
  double v = 1.0;
  for (const auto& a : spec) v *= a.step();
  return v;
}

double dual_cell_volume(const GridSpec& spec) {
  double v = 1.0;
  for (const auto& a : spec) v *= a.dual_step() / (2.0 * std::numbers::pi);
  return v;
}

GridFunction::GridFunction(GridSpec s, Domain d)
    : spec(std::move(s)), domain(d), samples(grid_size(spec), cplx{}) {}

GridFunction sample(const PointFunction& f, const GridSpec& spec) {
  GridFunction g(spec);
  parallel_blocks(g.size(), kReduceBlock, [&](std::size_t b, std::size_t e, std::size_t) {
    Coords x(spec.size());
    for (std::size_t i = b; i < e; ++i) {
      grid_node(spec, i, x);
      g.samples[i] = f(x.span());
    }
  });
  return g;
}

GridFunction sample(const TestFunction& f, const GridSpec& spec) {
  if (f.dim() != spec.size()) throw InvalidArgument("sample: dimension mismatch");
  return sample(PointFunction([&f](std::span<const double> x) { return f.evaluate(x); }), spec);
}

cplx quadrature(const PointFunction& f, const GridSpec& spec) {
  const std::size_t n = grid_size(spec);
  const std::size_t blocks = (n + kReduceBlock - 1) / kReduceBlock;
  std::vector<cplx> partial(blocks);
  parallel_blocks(n, kReduceBlock, [&](std::size_t b, std::size_t e, std::size_t k) {
    Coords x(spec.size());
    cplx s = 0.0;
    for (std::size_t i = b; i < e; ++i) {
      grid_node(spec, i, x);
      s += f(x.span());
    }
    partial[k] = s;
  });
  cplx total = 0.0;
  for (const cplx& p : partial) total += p;
  return total * cell_volume(spec);
}

cplx quadrature(const GridFunction& g) {
  const double vol = g.domain == Domain::Space ? cell_volume(g.spec) : dual_cell_volume(g.spec);
  return deterministic_sum<cplx>(g.size(), [&](std::size_t i) { return g.samples[i]; }) * vol;
}

void write_csv(const GridFunction& g, std::ostream& out) {
  const std::size_t d = g.dim();
  for (std::size_t k = 0; k < d; ++k) out << (g.domain == Domain::Space ? "x" : "lambda") << k << ',';
  out << "re,im\n";
  out << std::setprecision(17);
  Coords x(d);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.domain == Domain::Space)
      grid_node(g.spec, i, x);
    else
      grid_frequency(g.spec, i, x);
    for (std::size_t k = 0; k < d; ++k) out << x[k] << ',';
    out << g.samples[i].real() << ',' << g.samples[i].imag() << '\n';
  }
}

// Layout: magic, u64 dims, u8 domain, per axis (u64 P, f64 L, f64 center),
// then interleaved re/im f64 samples.
void write_binary(const GridFunction& g, std::ostream& out) {
  out.write(kMagic, sizeof kMagic);
  put<std::uint64_t>(out, g.dim());
  put<std::uint8_t>(out, static_cast<std::uint8_t>(g.domain));
  for (const auto& a : g.spec) {
    put<std::uint64_t>(out, a.points);
    put<double>(out, a.half_width);
    put<double>(out, a.center);
  }
  for (const cplx& v : g.samples) {
    put<double>(out, v.real());
    put<double>(out, v.imag());
  }
}

GridFunction read_binary(std::istream& in) {
  char magic[sizeof kMagic];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0) {
    throw std::ios_base::failure("not a grid dump");
  }
  const auto dims = get<std::uint64_t>(in);
  if (dims == 0 || dims > kMaxCoords) throw std::ios_base::failure("bad dimension in grid dump");
  const auto domain = static_cast<Domain>(get<std::uint8_t>(in));
  GridSpec spec;
  for (std::uint64_t k = 0; k < dims; ++k) {
    const auto P = get<std::uint64_t>(in);
    const double L = get<double>(in);
    const double c = get<double>(in);
    spec.emplace_back(c, L, static_cast<std::size_t>(P));
  }
  GridFunction g(spec, domain);
  for (auto& v : g.samples) {
    const double re = get<double>(in);
    const double im = get<double>(in);
    v = {re, im};
  }
  return g;
}

void save_csv(const GridFunction& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open " + path);
  write_csv(g, out);
  if (!out) throw std::ios_base::failure("failed writing " + path);
}

void save_binary(const GridFunction& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open " + path);
  write_binary(g, out);
  if (!out) throw std::ios_base::failure("failed writing " + path);
}

GridFunction load_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  return read_binary(in);
}

}  // namespace nilharm
