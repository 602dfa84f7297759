#pragma once

#include "homscope/error.hpp"
#include "homscope/graph.hpp"
#include "homscope/canonical.hpp"
#include "homscope/hom.hpp"
#include "homscope/walks.hpp"
#include "homscope/spasm.hpp"
#include "homscope/pattern_set.hpp"
#include "homscope/hom_matrix.hpp"
#include "homscope/pattern_trees.hpp"
#include "homscope/dataset.hpp"
#include "homscope/fwl.hpp"
#include "homscope/divergence.hpp"
#include "homscope/bounds.hpp"
#include "homscope/io_json.hpp"
