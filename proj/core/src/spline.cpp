#include "wavesplit/spline.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "wavesplit/error.hpp"

namespace wavesplit {

namespace {

constexpr int kMaxOrder = 7;

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

SplineModel::SplineModel(std::vector<double> knots, std::vector<double> coefficients, int order,
                         double lambda_reg)
    : knots_(std::move(knots)),
      coefficients_(std::move(coefficients)),
      order_(order),
      lambda_reg_(lambda_reg) {
  if (order_ < 1 || order_ > kMaxOrder) {
    throw PreconditionError("spline order must be in [1, " + std::to_string(kMaxOrder) + "]");
  }
  if (knots_.size() < 2) throw PreconditionError("spline needs at least 2 knots");
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i] > knots_[i - 1])) throw PreconditionError("spline knots must increase");
  }
  if (coefficients_.size() != coefficient_count(knots_.size(), order_)) {
    throw PreconditionError("spline coefficient count does not match knots and order");
  }
  if (lambda_reg_ < 0.0) throw PreconditionError("smoothing weight must be >= 0");
  step_ = (knots_.back() - knots_.front()) / static_cast<double>(knots_.size() - 1);
}

std::vector<double> SplineModel::uniform_knots(double t0, double t1, double spacing) {
  if (!(t1 > t0)) throw PreconditionError("knot range must be non-empty");
  if (!(spacing > 0.0)) throw PreconditionError("knot spacing must be > 0");
  const int count = std::max(1, static_cast<int>(std::ceil((t1 - t0) / spacing - 1e-9)));
  std::vector<double> k(static_cast<std::size_t>(count) + 1);
  for (int i = 0; i <= count; ++i) k[static_cast<std::size_t>(i)] = t0 + (t1 - t0) * i / count;
  k.back() = t1;
  return k;
}

std::size_t SplineModel::basis(double t, int m, std::span<double> out) const {
  const int p = order_;
  const auto intervals = static_cast<int>(knots_.size()) - 1;
  int i = static_cast<int>(std::floor((t - knots_.front()) / step_));
  i = std::clamp(i, 0, intervals - 1);
  const double u = (t - knots_.front()) / step_ - i;

  std::fill(out.begin(), out.begin() + p + 1, 0.0);
  if (m > p) return static_cast<std::size_t>(i);

  // vals[q][r]: degree-q B-spline with index p + i - q + r at t.
  std::array<std::array<double, kMaxOrder + 1>, kMaxOrder + 1> vals{};
  vals[0][0] = 1.0;
  const int qmax = p - m;
  for (int q = 1; q <= qmax; ++q) {
    for (int r = 0; r <= q; ++r) {
      double v = 0.0;
      if (r >= 1) v += (u + q - r) * vals[q - 1][r - 1];
      if (r <= q - 1) v += (r + 1 - u) * vals[q - 1][r];
      vals[q][r] = v / q;
    }
  }
  // Uniform knots: d/dt B_{j,p} = (B_{j,p-1} - B_{j+1,p-1}) / h.
  const double scale = 1.0 / std::pow(step_, m);
  for (int r = 0; r <= p; ++r) {
    double acc = 0.0;
    for (int s = 0; s <= m; ++s) {
      const int rr = r + s - m;
      if (rr < 0 || rr > qmax) continue;
      acc += ((s % 2) ? -1.0 : 1.0) * binomial(m, s) * vals[qmax][rr];
    }
    out[static_cast<std::size_t>(r)] = scale * acc;
  }
  return static_cast<std::size_t>(i);
}

double SplineModel::evaluate(double t, int m) const {
  std::array<double, kMaxOrder + 1> b{};
  const std::size_t first = basis(t, m, b);
  double s = 0.0;
  for (int r = 0; r <= order_; ++r) s += b[static_cast<std::size_t>(r)] * coefficients_[first + r];
  return s;
}

namespace {

void require_samples(std::span<const double> times, std::span<const double> values,
                     std::size_t min_n) {
  if (times.size() != values.size()) throw PreconditionError("times and values differ in length");
  if (times.size() < min_n) {
    throw PreconditionError("need at least " + std::to_string(min_n) + " samples");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw PreconditionError("sample times must strictly increase");
  }
}

// Normal equations of the penalized fit, assembled once per knot layout.
struct FitSystem {
  std::vector<double> knots;
  int order = 3;
  Eigen::MatrixXd gram;     // B^T B
  Eigen::MatrixXd penalty;  // integral B'' B''^T
  Eigen::VectorXd rhs;      // B^T y
  double scale = 0.0;       // trace(B^T B) / trace(R)
  double ridge = 0.0;

  FitSystem(std::span<const double> times, std::span<const double> values,
            const SplineOptions& options) {
    order = options.order;
    const std::size_t n = times.size();
    const double step = (times.back() - times.front()) / static_cast<double>(n - 1);
    const double spacing = options.knot_spacing > 0.0 ? options.knot_spacing : 2.0 * step;
    knots = SplineModel::uniform_knots(times.front(), times.back(), spacing);
    const std::size_t m = SplineModel::coefficient_count(knots.size(), order);
    const SplineModel shape(knots, std::vector<double>(m, 0.0), order, 0.0);

    gram = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    penalty = gram;
    rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
    std::array<double, kMaxOrder + 1> b{};
    const auto p1 = static_cast<std::size_t>(order) + 1;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t f = shape.basis(times[i], 0, b);
      for (std::size_t r = 0; r < p1; ++r) {
        rhs(f + r) += b[r] * values[i];
        for (std::size_t s = 0; s < p1; ++s) gram(f + r, f + s) += b[r] * b[s];
      }
    }
    static constexpr std::array<double, 4> gx{-0.8611363115940526, -0.3399810435848563,
                                              0.3399810435848563, 0.8611363115940526};
    static constexpr std::array<double, 4> gw{0.3478548451374538, 0.6521451548625461,
                                              0.6521451548625461, 0.3478548451374538};
    const double h = shape.knot_step();
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
      const double mid = knots[k] + 0.5 * h;
      for (std::size_t g = 0; g < 4; ++g) {
        const std::size_t f = shape.basis(mid + 0.5 * h * gx[g], 2, b);
        const double w = 0.5 * h * gw[g];
        for (std::size_t r = 0; r < p1; ++r)
          for (std::size_t s = 0; s < p1; ++s) penalty(f + r, f + s) += w * b[r] * b[s];
      }
    }
    const double tg = gram.trace();
    const double tr = penalty.trace();
    scale = tr > 0.0 ? tg / tr : 0.0;
    ridge = 1e-14 * tg / static_cast<double>(m);
  }

  SplineModel solve(double lambda) const {
    Eigen::MatrixXd a = gram + (lambda * scale) * penalty;
    a.diagonal().array() += ridge;
    const Eigen::VectorXd c = a.ldlt().solve(rhs);
    return SplineModel(knots, std::vector<double>(c.data(), c.data() + c.size()), order, lambda);
  }
};

}  // namespace

SplineModel fit_spline(std::span<const double> times, std::span<const double> values,
                       double lambda, const SplineOptions& options) {
  require_samples(times, values, 2);
  if (lambda < 0.0) throw PreconditionError("smoothing weight must be >= 0");
  return FitSystem(times, values, options).solve(lambda);
}

double residual_sum(const SplineModel& model, std::span<const double> times,
                    std::span<const double> values) {
  double s = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double r = model(times[i]) - values[i];
    s += r * r;
  }
  return s;
}

SplineModel fit_smoothing_spline(std::span<const double> times, std::span<const double> values,
                                 double sigma, const SplineOptions& options) {
  require_samples(times, values, 2);
  if (sigma < 0.0) throw PreconditionError("sigma must be >= 0");
  const FitSystem sys(times, values, options);
  if (sigma == 0.0) return sys.solve(0.0);

  const double target = static_cast<double>(times.size()) * sigma * sigma;
  const auto fits = [&](double log_lambda) {
    SplineModel m = sys.solve(std::pow(10.0, log_lambda));
    return std::pair{residual_sum(m, times, values) <= target, m};
  };
  double lo = -12.0, hi = 8.0;
  auto [lo_ok, lo_model] = fits(lo);
  if (!lo_ok) return lo_model;
  auto [hi_ok, hi_model] = fits(hi);
  if (hi_ok) return hi_model;
  SplineModel best = lo_model;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    auto [ok, model] = fits(mid);
    if (ok) {
      lo = mid;
      best = std::move(model);
    } else {
      hi = mid;
    }
  }
  return best;
}

std::vector<double> regularized_derivative(std::span<const double> times,
                                           std::span<const double> samples, double sigma,
                                           const SplineOptions& options) {
  require_samples(times, samples, 5);
  const SplineModel s = fit_smoothing_spline(times, samples, sigma, options);
  std::vector<double> d(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) d[i] = s.derivative(times[i]);
  return d;
}

std::vector<double> forward_difference_derivative(std::span<const double> times,
                                                  std::span<const double> samples) {
  require_samples(times, samples, 2);
  const std::size_t n = times.size();
  std::vector<double> d(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    d[i] = (samples[i + 1] - samples[i]) / (times[i + 1] - times[i]);
  }
  d[n - 1] = (samples[n - 1] - samples[n - 2]) / (times[n - 1] - times[n - 2]);
  return d;
}

}  // namespace wavesplit
