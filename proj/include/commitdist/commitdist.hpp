// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 commitdist contributors

#pragma once

#include "commitdist/cohorts.hpp"
#include "commitdist/commit_stats_io.hpp"
#include "commitdist/ecdf.hpp"
#include "commitdist/families.hpp"
#include "commitdist/fitting.hpp"
#include "commitdist/gpd.hpp"
#include "commitdist/half_loc.hpp"
#include "commitdist/line_class.hpp"
#include "commitdist/numstat.hpp"
#include "commitdist/report.hpp"
#include "commitdist/rng.hpp"
#include "commitdist/sizing.hpp"
#include "commitdist/types.hpp"
#include "commitdist/unified_diff.hpp"
#include "commitdist/version.hpp"
