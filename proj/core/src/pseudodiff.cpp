#include "wavesplit/pseudodiff.hpp"

#include "wavesplit/error.hpp"
#include "wavesplit/spectral.hpp"

namespace wavesplit {

namespace {
void require_positive(const ScalarField& f, const ScalarField& g) {
  if (!(f.grid() == g.grid())) throw PreconditionError("M: profile and field grids differ");
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (!(f[j] > 0.0)) throw PreconditionError("M: profile must be strictly positive");
  }
}
}  // namespace

ScalarField apply_M(const ScalarField& f, const ScalarField& g) {
  require_positive(f, g);
  ScalarField out = antiderivative_of_fluctuation(f * derivative(g));
  out += f.mean() * g.mean();
  return out;
}

ScalarField apply_M_inv(const ScalarField& f, const ScalarField& h) {
  require_positive(f, h);
  const ScalarField hx = derivative(h);
  const ScalarField inv_f = ScalarField::constant(f.grid(), 1.0) / f;
  // Choose the constant c so that (h' - c)/f has zero mean; then M of the
  // result reproduces h exactly.
  const double c = (hx * inv_f).mean() / inv_f.mean();
  ScalarField gx = hx;
  gx += -c;
  ScalarField out = antiderivative_of_fluctuation(gx * inv_f);
  out += h.mean() / f.mean();
  return out;
}

}  // namespace wavesplit
