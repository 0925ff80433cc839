#ifndef ORICOUNT_ORICOUNT_HPP
#define ORICOUNT_ORICOUNT_HPP

#include "oricount/correction.hpp"
#include "oricount/enumerate.hpp"
#include "oricount/errors.hpp"
#include "oricount/feasibility.hpp"
#include "oricount/flow.hpp"
#include "oricount/graph.hpp"
#include "oricount/mle.hpp"
#include "oricount/sampler.hpp"
#include "oricount/spectral.hpp"

#endif
