#pragma once

#include "quantconvex/approx.hpp"
#include "quantconvex/caratheodory.hpp"
#include "quantconvex/convex/linalg.hpp"
#include "quantconvex/convex/lp.hpp"
#include "quantconvex/convex/ops.hpp"
#include "quantconvex/core/error.hpp"
#include "quantconvex/core/instance.hpp"
#include "quantconvex/core/json_io.hpp"
#include "quantconvex/core/scalar.hpp"
#include "quantconvex/core/types.hpp"
#include "quantconvex/generate.hpp"
#include "quantconvex/helly.hpp"
#include "quantconvex/oracle/exhaustive.hpp"
#include "quantconvex/oracle/oracle.hpp"
#include "quantconvex/pipeline.hpp"
#include "quantconvex/steinitz.hpp"
#include "quantconvex/tverberg.hpp"
