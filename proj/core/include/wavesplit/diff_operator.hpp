#pragma once

#include <array>
#include <complex>

#include "wavesplit/system.hpp"

namespace wavesplit {

/// c0 + c1 D + c2 D^2 with D = d/dx; its symbol at wavenumber k replaces D by i k.
struct DiffPolynomial {
  std::array<double, 3> coeff{0.0, 0.0, 0.0};

  std::complex<double> symbol(double k) const;
  bool is_constant() const { return coeff[1] == 0.0 && coeff[2] == 0.0; }
};

DiffPolynomial operator+(const DiffPolynomial& a, const DiffPolynomial& b);
DiffPolynomial operator-(const DiffPolynomial& a, const DiffPolynomial& b);
DiffPolynomial operator*(double s, const DiffPolynomial& a);

/// 3x3 matrix of constant-coefficient differential operators acting on
/// acoustic states. Application is exact in Fourier space.
class OperatorMatrix3 {
 public:
  using Entries = std::array<std::array<DiffPolynomial, 3>, 3>;

  OperatorMatrix3() = default;
  explicit OperatorMatrix3(Entries entries) : entries_(entries) {}

  static OperatorMatrix3 identity();

  const DiffPolynomial& operator()(int row, int col) const { return entries_[row][col]; }
  DiffPolynomial& operator()(int row, int col) { return entries_[row][col]; }

  /// Symbol matrix at wavenumber k.
  std::array<std::array<std::complex<double>, 3>, 3> symbol(double k) const;

  /// Applies the operator to a 3-component state.
  StateVector apply(const StateVector& s) const;

 private:
  Entries entries_{};
};

}  // namespace wavesplit
