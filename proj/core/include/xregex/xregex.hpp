#pragma once

#include "xregex/ast.hpp"
#include "xregex/classic_dp.hpp"
#include "xregex/clustering.hpp"
#include "xregex/engine.hpp"
#include "xregex/generator.hpp"
#include "xregex/match_graph.hpp"
#include "xregex/oracle.hpp"
#include "xregex/simulate.hpp"
#include "xregex/tnfa.hpp"
