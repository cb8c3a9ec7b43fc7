#pragma once

#include <string>

#include "pf/simulator.hpp"

namespace pf {

// one frame: C(R), C^T, C^B, robot-rays, robots and the embedded targets
// F may be null: then only the robots and C(R) are drawn
std::string render_svg(const std::vector<Point>& robots, const Pattern* F, const std::string& caption = "");

// writes look_<e>.svg for every look; returns the number of files
int render_trace(const ExecutionTrace& trace, const Pattern* F, const std::string& out_dir);

}  // namespace pf
