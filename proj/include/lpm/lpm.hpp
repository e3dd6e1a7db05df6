// Copyright 2026 The lpmorrey Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Umbrella header for the whole library.

#include "lpm/error.hpp"
#include "lpm/grid.hpp"
#include "lpm/fft.hpp"
#include "lpm/spectral.hpp"
#include "lpm/lpbm_io.hpp"
#include "lpm/dyadic.hpp"
#include "lpm/norms.hpp"
#include "lpm/paraproducts.hpp"
#include "lpm/testfuncs.hpp"
#include "lpm/parallel.hpp"
#include "lpm/verifier.hpp"
