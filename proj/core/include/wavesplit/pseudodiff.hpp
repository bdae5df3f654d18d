#pragma once

#include "wavesplit/grid.hpp"

namespace wavesplit {

// The pseudodifferential operator M = D^-1 f D and its inverse.
//
// On the periodic grid f g' generally has a nonzero mean when g overlaps the
// variation of f; that mean is removed before integrating (the periodic
// image of the far-field step M produces on the infinite line). The mean
// mode of g is mapped by mean(f), so for constant f = kappa, M is exactly
// kappa * identity. apply_M_inv is the exact inverse of apply_M.

/// Throws PreconditionError unless f > 0 everywhere and grids match.
ScalarField apply_M(const ScalarField& f, const ScalarField& g);
ScalarField apply_M_inv(const ScalarField& f, const ScalarField& g);

}  // namespace wavesplit
