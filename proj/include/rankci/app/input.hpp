#pragma once

#include <istream>
#include <string>

#include "rankci/rank_matrix.hpp"

namespace rankci::app {

/// Reads an entity-by-ranker table: header row, first column the entity
/// label, remaining columns positive integer values. Empty cells and "NA"
/// are missing. Errors are AppError with a code per failure class and cite
/// the offending line and column header.
RankMatrix parse_input(std::istream& in, Orientation orientation, const std::string& source = "<input>");
RankMatrix parse_input(const std::string& path, Orientation orientation);

Orientation parse_orientation(const std::string& name);

}  // namespace rankci::app
