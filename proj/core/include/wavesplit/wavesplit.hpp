#pragma once

#include "wavesplit/diagnose.hpp"
#include "wavesplit/diff_operator.hpp"
#include "wavesplit/error.hpp"
#include "wavesplit/grid.hpp"
#include "wavesplit/observe.hpp"
#include "wavesplit/profile.hpp"
#include "wavesplit/projectors.hpp"
#include "wavesplit/propagate.hpp"
#include "wavesplit/pseudodiff.hpp"
#include "wavesplit/spectral.hpp"
#include "wavesplit/spline.hpp"
#include "wavesplit/system.hpp"
