// SPDX-License-Identifier: MIT
#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "starwalk/simulate.hpp"

namespace starwalk {

/// Shortest decimal string that round-trips to the same double
/// (std::to_chars shortest form).
std::string format_double(double v);

/// Trajectory ensemble as CSV with header
///   path_id,time,edge,x,local_time,alive
/// Edge 0 denotes the vertex; a killed path contributes one final row with
/// alive=0 at its kill time and no rows afterwards.
void write_trajectories_csv(std::ostream& os,
                            const std::vector<Trajectory>& trajectories);

}  // namespace starwalk
