#pragma once

#include <string>
#include <vector>

#include "boundedflow/picard.hpp"

namespace boundedflow {

/// Built-in problems addressable by id:
///   "ex0"   convolution maps in PAP(R), existence only
///   "ex1"   exponential / seminorm maps in PP_w(R), existence only
///   "c2pi"  2pi-periodic maps with contraction certificate q = 3/4
///   "exatt" pointwise maps with attractivity rate lambda = 1/2
Problem make_problem(const std::string& id);

std::vector<std::string> catalog_ids();

}  // namespace boundedflow
