#pragma once

#include <string>
#include <utility>
#include <vector>

#include "obsmode/model.hpp"

namespace obsmode {

// The seven-state bundled example: one non-deterministic action from the
// initial state into three visually distinct states (blue rectangle, red
// rectangle, white diamond), three observation modes (blind / shape /
// shape+color with costs 0/1/2) and a single proposition marking the goal
// state. Small enough to check every strategy by hand.
NtsModel generate_running_example();

// The 5x5 grid scenario: an adversary picks one of three danger layouts, the
// robot moves deterministically in compass directions (border moves are
// disabled) from the top-left cell toward the bottom-left target, and can pay
// per step for one of two sensors describing dangerous cells among its eight
// neighbors. 76 states, 5 actions, objective "(! dang) U target".
NtsModel generate_grid_casestudy();

// Observation names the two grid sensors emit at the 1-based (row, col) cell
// of a 5x5 grid with the given dangerous cells: first the quadrant sensor
// (reports every overlapping 3-neighbor quadrant NW/NE/SW/SE that contains a
// dangerous cell), then the exact sensor (reports the compass direction of
// every dangerous neighbor). Both append "det" when any of the eight
// neighbors is dangerous. Exposed for direct testing of the sensor model.
std::pair<std::vector<std::string>, std::vector<std::string>> grid_sensor_readings(
    const std::vector<std::pair<int, int>>& dangerous, int row, int col);

}  // namespace obsmode
