#pragma once

#include "lgsolve/errors.hpp"
#include "lgsolve/vertex_set.hpp"
#include "lgsolve/graph_domain.hpp"
#include "lgsolve/cut_solver.hpp"
#include "lgsolve/level_solver.hpp"
#include "lgsolve/stacker.hpp"
#include "lgsolve/oracle.hpp"
#include "lgsolve/worked_examples.hpp"
