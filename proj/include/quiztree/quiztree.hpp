#pragma once

#include "quiztree/analysis/dyadic.hpp"
#include "quiztree/analysis/hitter.hpp"
#include "quiztree/analysis/lower_bound.hpp"
#include "quiztree/analysis/numeric.hpp"
#include "quiztree/analysis/splitters.hpp"
#include "quiztree/bench.hpp"
#include "quiztree/distribution.hpp"
#include "quiztree/huffman.hpp"
#include "quiztree/io/json.hpp"
#include "quiztree/sampling.hpp"
#include "quiztree/session.hpp"
#include "quiztree/split.hpp"
#include "quiztree/stepper.hpp"
#include "quiztree/strategies.hpp"
#include "quiztree/strategy_at.hpp"
#include "quiztree/strategy_cone.hpp"
#include "quiztree/strategy_prolixity.hpp"
#include "quiztree/strategy_vector.hpp"
#include "quiztree/tree.hpp"
#include "quiztree/verify.hpp"
