#pragma once

#include <span>
#include <vector>

namespace wavesplit {

struct SplineOptions {
  /// Polynomial degree of the pieces (3 = cubic).
  int order = 3;
  /// Breakpoint spacing in time; <= 0 selects 2 * sample step.
  double knot_spacing = 0.0;
};

/// Uniform B-spline on [knots.front(), knots.back()]. The basis is extended
/// by `order` uniform knots beyond each end, so there are
/// knots.size() - 1 + order coefficients.
class SplineModel {
 public:
  SplineModel(std::vector<double> knots, std::vector<double> coefficients, int order,
              double lambda_reg);

  /// Uniform breakpoints covering [t0, t1] with spacing at most `spacing`.
  static std::vector<double> uniform_knots(double t0, double t1, double spacing);
  static std::size_t coefficient_count(std::size_t knot_count, int order) {
    return knot_count - 1 + static_cast<std::size_t>(order);
  }

  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& coefficients() const { return coefficients_; }
  int order() const { return order_; }
  double lambda_reg() const { return lambda_reg_; }
  double t_begin() const { return knots_.front(); }
  double t_end() const { return knots_.back(); }
  double knot_step() const { return step_; }

  double operator()(double t) const { return evaluate(t, 0); }
  double derivative(double t, int m = 1) const { return evaluate(t, m); }
  double evaluate(double t, int derivative_order) const;

  /// Nonzero basis values B_{first..first+order}(t) or their m-th derivatives.
  /// Returns the index of the first basis function.
  std::size_t basis(double t, int derivative_order, std::span<double> out) const;

 private:
  std::vector<double> knots_;
  std::vector<double> coefficients_;
  int order_;
  double lambda_reg_;
  double step_;
};

/// Penalized least squares: sum (s(t_i) - y_i)^2 + lambda * integral s''^2.
/// lambda is in units normalized by trace(B^T B) / trace(R).
SplineModel fit_spline(std::span<const double> times, std::span<const double> values,
                       double lambda, const SplineOptions& options);

/// Sum of squared residuals of the model at the samples.
double residual_sum(const SplineModel& model, std::span<const double> times,
                    std::span<const double> values);

/// Smoothing spline with lambda from the discrepancy principle: the largest
/// lambda whose residual sum is <= n sigma^2 (60 bisection steps over
/// log10 lambda in [-12, 8]); sigma = 0 gives the unpenalized fit.
SplineModel fit_smoothing_spline(std::span<const double> times, std::span<const double> values,
                                 double sigma, const SplineOptions& options);

/// Derivative of the smoothing spline at the sample times. Needs n >= 5 and
/// strictly increasing times.
std::vector<double> regularized_derivative(std::span<const double> times,
                                           std::span<const double> samples, double sigma,
                                           const SplineOptions& options = {});

/// Forward differences (last point backward), the naive reference.
std::vector<double> forward_difference_derivative(std::span<const double> times,
                                                  std::span<const double> samples);

}  // namespace wavesplit
