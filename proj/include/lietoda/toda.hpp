#pragma once

#include "toda/analysis.hpp"
#include "toda/grid.hpp"
#include "toda/higgs.hpp"
#include "toda/problem.hpp"
#include "toda/solver.hpp"
