#pragma once

#include "cograph/error.hpp"
#include "cograph/graph.hpp"
#include "cograph/graph_io.hpp"
#include "cograph/tree.hpp"
#include "cograph/cotree.hpp"
#include "cograph/symbolic.hpp"
#include "cograph/decomposition.hpp"
#include "cograph/solver.hpp"
#include "cograph/gadgets.hpp"
#include "cograph/json_io.hpp"
