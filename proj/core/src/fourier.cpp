#include "nilharm/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>

#include "nilharm/errors.hpp"
#include "nilharm/reduce.hpp"

namespace nilharm {

namespace {

// FFTW planning is not thread-safe; execution on a private plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (!data) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* data;
};

void run_fft(std::vector<cplx>& data, const GridSpec& spec, int sign) {
  std::vector<int> dims;
  for (const auto& a : spec) dims.push_back(static_cast<int>(a.points));
  FftwBuffer buf(data.size());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf.data, buf.data, sign,
                         FFTW_ESTIMATE);
  }
  if (!plan) throw DomainError("FFTW could not create a plan");
  std::copy(data.begin(), data.end(), reinterpret_cast<cplx*>(buf.data));
  fftw_execute(plan);
  std::copy_n(reinterpret_cast<cplx*>(buf.data), data.size(), data.begin());
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

// Per-axis factor tables: the (-1)^k checkerboard that centres the
// frequency index, and the phase exp(-+ i lambda_j a) for the box start a.
struct AxisTables {
  std::vector<double> sign;
  std::vector<cplx> phase;
};

std::vector<AxisTables> tables(const GridSpec& spec, double direction) {
  std::vector<AxisTables> out;
  for (const auto& a : spec) {
    AxisTables t;
    const double start = a.center - a.half_width;
    for (std::size_t k = 0; k < a.points; ++k) {
      t.sign.push_back(k % 2 == 0 ? 1.0 : -1.0);
      t.phase.push_back(std::polar(1.0, direction * a.frequency(k) * start));
    }
    out.push_back(std::move(t));
  }
  return out;
}

void apply_factors(std::vector<cplx>& data, const GridSpec& spec,
                   const std::vector<AxisTables>& t, bool use_sign, double scale) {
  parallel_blocks(data.size(), kReduceBlock, [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t i = b; i < e; ++i) {
      std::size_t flat = i;
      cplx f = scale;
      for (std::size_t d = spec.size(); d-- > 0;) {
        const std::size_t P = spec[d].points;
        const std::size_t k = flat % P;
        flat /= P;
        f *= use_sign ? cplx(t[d].sign[k]) : t[d].phase[k];
      }
      data[i] *= f;
    }
  });
}

}  // namespace

GridFunction fourier_forward(const GridFunction& f) {
  if (f.domain != Domain::Space) throw InvalidArgument("fourier_forward expects spatial samples");
  GridFunction out = f;
  out.domain = Domain::Frequency;
  const auto t = tables(f.spec, -1.0);
  apply_factors(out.samples, f.spec, t, true, 1.0);
  run_fft(out.samples, f.spec, FFTW_FORWARD);
  apply_factors(out.samples, f.spec, t, false, cell_volume(f.spec));
  return out;
}

GridFunction fourier_inverse(const GridFunction& F) {
  if (F.domain != Domain::Frequency) {
    throw InvalidArgument("fourier_inverse expects frequency samples");
  }
  GridFunction out = F;
  out.domain = Domain::Space;
  const auto t = tables(F.spec, +1.0);
  apply_factors(out.samples, F.spec, t, false, dual_cell_volume(F.spec));
  run_fft(out.samples, F.spec, FFTW_BACKWARD);
  apply_factors(out.samples, F.spec, t, true, 1.0);
  return out;
}

double norm_sq(const GridFunction& g) {
  const double vol = g.domain == Domain::Space ? cell_volume(g.spec) : dual_cell_volume(g.spec);
  return deterministic_sum<double>(g.size(), [&](std::size_t i) { return std::norm(g.samples[i]); }) *
         vol;
}

}  // namespace nilharm
