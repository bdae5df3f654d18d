#include "wavesplit/diff_operator.hpp"

#include "wavesplit/error.hpp"
#include "wavesplit/spectral.hpp"

namespace wavesplit {

std::complex<double> DiffPolynomial::symbol(double k) const {
  const std::complex<double> ik(0.0, k);
  return coeff[0] + coeff[1] * ik + coeff[2] * ik * ik;
}

DiffPolynomial operator+(const DiffPolynomial& a, const DiffPolynomial& b) {
  return {{a.coeff[0] + b.coeff[0], a.coeff[1] + b.coeff[1], a.coeff[2] + b.coeff[2]}};
}

DiffPolynomial operator-(const DiffPolynomial& a, const DiffPolynomial& b) {
  return {{a.coeff[0] - b.coeff[0], a.coeff[1] - b.coeff[1], a.coeff[2] - b.coeff[2]}};
}

DiffPolynomial operator*(double s, const DiffPolynomial& a) {
  return {{s * a.coeff[0], s * a.coeff[1], s * a.coeff[2]}};
}

OperatorMatrix3 OperatorMatrix3::identity() {
  OperatorMatrix3 m;
  for (int i = 0; i < 3; ++i) m(i, i).coeff[0] = 1.0;
  return m;
}

std::array<std::array<std::complex<double>, 3>, 3> OperatorMatrix3::symbol(double k) const {
  std::array<std::array<std::complex<double>, 3>, 3> s{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s[i][j] = entries_[i][j].symbol(k);
  return s;
}

StateVector OperatorMatrix3::apply(const StateVector& s) const {
  if (s.size() != 3) throw SystemMismatchError("3x3 operator applied to a 2-component state");
  const Grid1D& grid = s.grid();
  std::array<std::vector<std::complex<double>>, 3> in;
  for (int j = 0; j < 3; ++j) in[j] = forward_transform(s[j]);
  const auto k = wavenumbers(grid);
  std::vector<ScalarField> out;
  out.reserve(3);
  for (int i = 0; i < 3; ++i) {
    std::vector<std::complex<double>> c(k.size());
    for (std::size_t m = 0; m < k.size(); ++m) {
      // The Nyquist mode has no sign for i k; treat D as 0 there.
      const double km = (m + 1 == k.size()) ? 0.0 : k[m];
      std::complex<double> acc = 0.0;
      for (int j = 0; j < 3; ++j) acc += entries_[i][j].symbol(km) * in[j][m];
      c[m] = acc;
    }
    out.push_back(inverse_transform(grid, std::move(c)));
  }
  return StateVector(s.params(), std::move(out));
}

}  // namespace wavesplit
