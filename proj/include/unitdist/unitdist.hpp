#pragma once

// Umbrella header: distributions on (0,1) built by conditioning a positive
// pair on its sum, U = X | X + Y = 1, plus the closed-form families that
// construction yields, inference for the one-shape-parameter member, and the
// simulation/fitting harnesses.

#include "base_positive.hpp"
#include "convolution_engine.hpp"
#include "errors.hpp"
#include "fgm_joint.hpp"
#include "lcg_inference.hpp"
#include "special.hpp"
#include "study_harness.hpp"
#include "unit_families.hpp"
