#include "stabreg/convolution.hpp"

#include <cmath>
#include <complex>
#include <memory>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

namespace stabreg {

namespace {

// |f*g| <= 1 holds exactly; anything beyond this is a numerical fault.
constexpr double kConvolutionSlack = 1e-12;

GroupFunction checked(GroupPtr group, std::vector<double> values) {
  for (double v : values)
    if (!(std::abs(v) <= 1.0 + kConvolutionSlack))
      throw std::logic_error("convolution value outside [-1, 1]");
  return GroupFunction(std::move(group), std::move(values), kConvolutionSlack);
}

bool is_cyclic_catalog(const FiniteGroup& g) {
  return g.descriptor().rfind("zmod:", 0) == 0;
}

struct FftwPlanDeleter {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
using FftwPlan = std::unique_ptr<fftw_plan_s, FftwPlanDeleter>;

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

}  // namespace

GroupFunction convolve(const GroupFunction& f, const GroupFunction& g) {
  require_same_group(*f.group(), *g.group());
  const auto& grp = *f.group();
  const std::size_t n = grp.order();
  std::vector<double> out(n, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    const double ft = f(static_cast<Element>(t));
    if (ft == 0.0) continue;
    // t^-1 x runs over the row of t^-1
    const auto row = grp.row(grp.inv(static_cast<Element>(t)));
    for (std::size_t x = 0; x < n; ++x) out[x] += ft * g(row[x]);
  }
  for (double& v : out) v /= static_cast<double>(n);
  return checked(f.group(), std::move(out));
}

GroupFunction overlap_function(const Subset& a) {
  const auto& grp = *a.group();
  const std::size_t n = grp.order();
  std::vector<double> out(n);
  for (std::size_t x = 0; x < n; ++x)
    out[x] = static_cast<double>(
                 a.intersection_size(translate_set(static_cast<Element>(x), a))) /
             static_cast<double>(n);
  return GroupFunction(a.group(), std::move(out));
}

GroupFunction convolve_fft_cyclic(const GroupFunction& f,
                                  const GroupFunction& g) {
  require_same_group(*f.group(), *g.group());
  if (!is_cyclic_catalog(*f.group()))
    throw std::invalid_argument("convolve_fft_cyclic: group '" +
                                f.group()->descriptor() + "' is not zmod:n");
  const std::size_t n = f.size();
  const std::size_t nc = n / 2 + 1;
  const auto ni = static_cast<int>(n);

  std::unique_ptr<double, FftwFree> in(
      static_cast<double*>(fftw_malloc(sizeof(double) * n)));
  std::unique_ptr<fftw_complex, FftwFree> fa(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * nc)));
  std::unique_ptr<fftw_complex, FftwFree> fb(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * nc)));

  // FFTW_ESTIMATE leaves inputs untouched during planning and is
  // deterministic.
  FftwPlan fwd_a(fftw_plan_dft_r2c_1d(ni, in.get(), fa.get(), FFTW_ESTIMATE));
  FftwPlan fwd_b(fftw_plan_dft_r2c_1d(ni, in.get(), fb.get(), FFTW_ESTIMATE));
  FftwPlan back(fftw_plan_dft_c2r_1d(ni, fa.get(), in.get(), FFTW_ESTIMATE));

  std::copy(f.values().begin(), f.values().end(), in.get());
  fftw_execute(fwd_a.get());
  std::copy(g.values().begin(), g.values().end(), in.get());
  fftw_execute(fwd_b.get());
  for (std::size_t k = 0; k < nc; ++k) {
    const std::complex<double> x(fa.get()[k][0], fa.get()[k][1]);
    const std::complex<double> y(fb.get()[k][0], fb.get()[k][1]);
    const auto z = x * y;
    fa.get()[k][0] = z.real();
    fa.get()[k][1] = z.imag();
  }
  fftw_execute(back.get());
  // Unnormalized inverse contributes a factor n, the measure another.
  const double scale = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  std::vector<double> out(in.get(), in.get() + n);
  for (double& v : out) v *= scale;
  return checked(f.group(), std::move(out));
}

double lp_norm(const GroupFunction& f, double p) {
  if (!(p >= 1)) throw std::invalid_argument("lp_norm: p must be >= 1");
  double s = 0;
  for (double v : f.values()) s += std::pow(std::abs(v), p);
  return std::pow(s / static_cast<double>(f.size()), 1.0 / p);
}

double lp_distance(const GroupFunction& f, const GroupFunction& g, double p) {
  require_same_group(*f.group(), *g.group());
  if (!(p >= 1)) throw std::invalid_argument("lp_distance: p must be >= 1");
  double s = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    s += std::pow(std::abs(f.values()[i] - g.values()[i]), p);
  return std::pow(s / static_cast<double>(f.size()), 1.0 / p);
}

GroupFunction shift(const GroupFunction& f, Element t) {
  const auto row = f.group()->row(t);
  std::vector<double> out(f.size());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = f(row[x]);
  return GroupFunction(f.group(), std::move(out));
}

}  // namespace stabreg
