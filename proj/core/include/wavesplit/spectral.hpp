#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "wavesplit/grid.hpp"

namespace wavesplit {

/// Angular wavenumbers in FFTW half-complex order (0 .. N/2) for the grid.
std::vector<double> wavenumbers(const Grid1D& grid);

/// Forward real transform: N/2+1 complex coefficients (unnormalized).
std::vector<std::complex<double>> forward_transform(const ScalarField& f);

/// Inverse of forward_transform, including the 1/N normalization.
ScalarField inverse_transform(const Grid1D& grid, std::vector<std::complex<double>> coeffs);

/// Multiplies every coefficient by multiplier(k). The Nyquist coefficient is
/// treated as real: only the real part of its product is kept.
ScalarField apply_spectral_multiplier(
    const ScalarField& f, const std::function<std::complex<double>(double)>& multiplier);

/// Spectral derivative. The Nyquist mode is dropped.
ScalarField derivative(const ScalarField& f);

/// Zero-mean antiderivative. Throws PreconditionError if |mean(f)| exceeds
/// 1e-10 * max|f| * length, since D has no preimage for constants.
ScalarField antiderivative(const ScalarField& f);

/// Zero-mean antiderivative of f - mean(f); never throws.
ScalarField antiderivative_of_fluctuation(const ScalarField& f);

/// Translation f(x) -> f(x - shift), exact for band-limited fields.
ScalarField translate(const ScalarField& f, double shift);

/// Band-limited (trigonometric) evaluation of a periodic field at any x.
class TrigInterpolant {
 public:
  explicit TrigInterpolant(const ScalarField& f);
  double operator()(double x) const;

 private:
  Grid1D grid_;
  std::vector<std::complex<double>> coeffs_;
};

/// Cumulative integral F(x) = integral from the left domain edge to x of f.
/// Exact for band-limited f. Unlike antiderivative, f may have nonzero mean;
/// the result then carries the ramp mean(f) * (x - left) and is not periodic.
class EdgeAnchoredPrimitive {
 public:
  explicit EdgeAnchoredPrimitive(const ScalarField& f);
  double operator()(double x) const;

 private:
  double left_;
  double mean_;
  double offset_;
  TrigInterpolant fluctuation_;
};

}  // namespace wavesplit
