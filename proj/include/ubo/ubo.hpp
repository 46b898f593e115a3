#pragma once

// Umbrella header: the full library.

#include "ubo/acquisition.hpp"
#include "ubo/benchmarks.hpp"
#include "ubo/dataset.hpp"
#include "ubo/driver.hpp"
#include "ubo/errors.hpp"
#include "ubo/gp.hpp"
#include "ubo/harness.hpp"
#include "ubo/inner_opt.hpp"
#include "ubo/kernel.hpp"
#include "ubo/lhs.hpp"
#include "ubo/math.hpp"
#include "ubo/rng.hpp"
#include "ubo/slice_sampler.hpp"
#include "ubo/unscented.hpp"
