#include "wavesplit/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "wavesplit/error.hpp"

namespace wavesplit {

namespace {

// FFTW planning is not thread-safe; execution with fresh buffers is.
struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
  }

  PlanPair get(int n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    double* in = fftw_alloc_real(static_cast<std::size_t>(n));
    fftw_complex* out = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
    PlanPair p;
    p.forward = fftw_plan_dft_r2c_1d(n, in, out, FFTW_ESTIMATE);
    p.backward = fftw_plan_dft_c2r_1d(n, out, in, FFTW_ESTIMATE);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(n, p);
    return p;
  }

 private:
  std::mutex mutex_;
  std::map<int, PlanPair> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

struct RealBuffer {
  explicit RealBuffer(std::size_t n) : data(fftw_alloc_real(n)) {}
  ~RealBuffer() { fftw_free(data); }
  RealBuffer(const RealBuffer&) = delete;
  RealBuffer& operator=(const RealBuffer&) = delete;
  double* data;
};

struct ComplexBuffer {
  explicit ComplexBuffer(std::size_t n) : data(fftw_alloc_complex(n)) {}
  ~ComplexBuffer() { fftw_free(data); }
  ComplexBuffer(const ComplexBuffer&) = delete;
  ComplexBuffer& operator=(const ComplexBuffer&) = delete;
  fftw_complex* data;
};

}  // namespace

std::vector<double> wavenumbers(const Grid1D& grid) {
  const std::size_t half = grid.size() / 2;
  std::vector<double> k(half + 1);
  const double base = 2.0 * std::numbers::pi / grid.length();
  for (std::size_t m = 0; m <= half; ++m) k[m] = base * static_cast<double>(m);
  return k;
}

std::vector<std::complex<double>> forward_transform(const ScalarField& f) {
  const int n = f.grid().points();
  const auto plans = plan_cache().get(n);
  RealBuffer in(static_cast<std::size_t>(n));
  ComplexBuffer out(static_cast<std::size_t>(n / 2 + 1));
  for (int j = 0; j < n; ++j) in.data[j] = f[static_cast<std::size_t>(j)];
  fftw_execute_dft_r2c(plans.forward, in.data, out.data);
  std::vector<std::complex<double>> c(static_cast<std::size_t>(n / 2 + 1));
  for (std::size_t m = 0; m < c.size(); ++m) c[m] = {out.data[m][0], out.data[m][1]};
  return c;
}

ScalarField inverse_transform(const Grid1D& grid, std::vector<std::complex<double>> coeffs) {
  const int n = grid.points();
  if (coeffs.size() != static_cast<std::size_t>(n / 2 + 1)) {
    throw PreconditionError("coefficient count does not match grid");
  }
  const auto plans = plan_cache().get(n);
  ComplexBuffer in(coeffs.size());
  RealBuffer out(static_cast<std::size_t>(n));
  // Imaginary parts of the zero and Nyquist modes must vanish for a real signal.
  coeffs.front().imag(0.0);
  coeffs.back().imag(0.0);
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    in.data[m][0] = coeffs[m].real();
    in.data[m][1] = coeffs[m].imag();
  }
  fftw_execute_dft_c2r(plans.backward, in.data, out.data);
  std::vector<double> v(static_cast<std::size_t>(n));
  const double scale = 1.0 / static_cast<double>(n);
  for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] = out.data[j] * scale;
  return ScalarField(grid, std::move(v));
}

ScalarField apply_spectral_multiplier(
    const ScalarField& f, const std::function<std::complex<double>(double)>& multiplier) {
  auto c = forward_transform(f);
  const auto k = wavenumbers(f.grid());
  for (std::size_t m = 0; m < c.size(); ++m) c[m] *= multiplier(k[m]);
  c.back() = {c.back().real(), 0.0};
  return inverse_transform(f.grid(), std::move(c));
}

ScalarField derivative(const ScalarField& f) {
  auto c = forward_transform(f);
  const auto k = wavenumbers(f.grid());
  for (std::size_t m = 0; m < c.size(); ++m) c[m] *= std::complex<double>(0.0, k[m]);
  c.front() = 0.0;
  c.back() = 0.0;
  return inverse_transform(f.grid(), std::move(c));
}

namespace {
ScalarField zero_mean_primitive(const ScalarField& f) {
  auto c = forward_transform(f);
  const auto k = wavenumbers(f.grid());
  c.front() = 0.0;
  c.back() = 0.0;
  for (std::size_t m = 1; m + 1 < c.size(); ++m) c[m] /= std::complex<double>(0.0, k[m]);
  return inverse_transform(f.grid(), std::move(c));
}
}  // namespace

ScalarField antiderivative(const ScalarField& f) {
  const double tol = 1e-10 * f.max_abs() * f.grid().length();
  if (std::abs(f.mean()) > tol) {
    throw PreconditionError("antiderivative needs a zero-mean field; mean is " +
                            std::to_string(f.mean()));
  }
  return zero_mean_primitive(f);
}

ScalarField antiderivative_of_fluctuation(const ScalarField& f) { return zero_mean_primitive(f); }

ScalarField translate(const ScalarField& f, double shift) {
  return apply_spectral_multiplier(
      f, [shift](double k) { return std::polar(1.0, -k * shift); });
}

TrigInterpolant::TrigInterpolant(const ScalarField& f)
    : grid_(f.grid()), coeffs_(forward_transform(f)) {}

double TrigInterpolant::operator()(double x) const {
  const double n = static_cast<double>(grid_.points());
  const double base = 2.0 * std::numbers::pi / grid_.length();
  const double xi = x - grid_.left();
  double s = coeffs_.front().real();
  const std::size_t half = coeffs_.size() - 1;
  // Rotate by a unit phasor instead of calling polar per mode; renormalize
  // periodically to keep the recurrence accurate.
  const std::complex<double> step = std::polar(1.0, base * xi);
  std::complex<double> phase = step;
  for (std::size_t m = 1; m < half; ++m) {
    s += 2.0 * (coeffs_[m] * phase).real();
    phase *= step;
    if (m % 64 == 0) phase = std::polar(1.0, base * xi * static_cast<double>(m + 1));
  }
  s += coeffs_[half].real() * std::cos(base * static_cast<double>(half) * xi);
  return s / n;
}

EdgeAnchoredPrimitive::EdgeAnchoredPrimitive(const ScalarField& f)
    : left_(f.grid().left()),
      mean_(f.mean()),
      offset_(0.0),
      fluctuation_(zero_mean_primitive(f)) {
  offset_ = fluctuation_(left_);
}

double EdgeAnchoredPrimitive::operator()(double x) const {
  return fluctuation_(x) - offset_ + mean_ * (x - left_);
}

}  // namespace wavesplit
