#pragma once

#include "pgof/competitors.hpp"
#include "pgof/config_json.hpp"
#include "pgof/critval_cache.hpp"
#include "pgof/datasets.hpp"
#include "pgof/distributions.hpp"
#include "pgof/errors.hpp"
#include "pgof/estimation.hpp"
#include "pgof/harness.hpp"
#include "pgof/normal.hpp"
#include "pgof/quadrature.hpp"
#include "pgof/registry.hpp"
#include "pgof/resampling.hpp"
#include "pgof/rng.hpp"
#include "pgof/stein.hpp"
#include "pgof/stein_censored.hpp"
