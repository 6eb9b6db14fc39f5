// SPDX-License-Identifier: MIT
#include "starwalk/csv.hpp"

#include <charconv>
#include <system_error>

namespace starwalk {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_trajectories_csv(std::ostream& os,
                            const std::vector<Trajectory>& trajectories) {
  os << "path_id,time,edge,x,local_time,alive\n";
  for (const Trajectory& tr : trajectories)
    for (const TrajectoryStep& st : tr.steps)
      os << tr.path_id << ',' << format_double(st.time) << ',' << st.edge
         << ',' << format_double(st.x) << ',' << format_double(st.local_time)
         << ',' << (st.alive ? 1 : 0) << '\n';
}

}  // namespace starwalk
