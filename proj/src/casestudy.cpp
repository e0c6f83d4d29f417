#include "obsmode/casestudy.hpp"

#include <algorithm>
#include <set>

namespace obsmode {

NtsModel generate_running_example() {
    NtsModel m;
    m.states = {"s1", "s2", "s3", "s4", "s5", "s6", "s7"};
    m.actions = {"a", "b"};
    m.ap = {"star"};
    m.observations = {"white", "blue", "red", "circle", "rectangle", "diamond"};
    m.init = 0;

    auto sid = [&m](const char* name) { return m.state_id(name); };
    m.trans.assign(m.states.size(), std::vector<std::vector<StateId>>(m.actions.size()));
    m.trans[sid("s1")][0] = {sid("s2"), sid("s3"), sid("s4")};
    m.trans[sid("s2")][0] = {sid("s5")};
    m.trans[sid("s2")][1] = {sid("s6")};
    m.trans[sid("s3")][0] = {sid("s6")};
    m.trans[sid("s3")][1] = {sid("s7")};
    m.trans[sid("s4")][0] = {sid("s7")};
    m.trans[sid("s4")][1] = {sid("s6")};
    m.trans[sid("s5")][0] = {sid("s6")};
    m.trans[sid("s6")][0] = {sid("s6")};
    m.trans[sid("s7")][0] = {sid("s7")};

    m.labels.assign(m.states.size(), 0);
    m.labels[sid("s6")] = 1;  // "star"

    // shape and color per state; s2/s3 share the shape and differ in color,
    // which is exactly what makes the cheap sensor too coarse for a one-step
    // decision
    const char* shape[] = {"circle", "rectangle", "rectangle", "diamond",
                           "circle", "circle",    "circle"};
    const char* color[] = {"white", "blue", "red", "white", "white", "white", "white"};

    ObservationMode m1{"m1", Rational(0), {}};
    ObservationMode m2{"m2", Rational(1), {}};
    ObservationMode m3{"m3", Rational(2), {}};
    m1.obs.assign(m.states.size(), {});
    m2.obs.assign(m.states.size(), {});
    m3.obs.assign(m.states.size(), {});
    for (size_t s = 0; s < m.states.size(); ++s) {
        ObsId sh = m.obs_id(shape[s]);
        ObsId co = m.obs_id(color[s]);
        m2.obs[s] = {sh};
        m3.obs[s] = {std::min(sh, co), std::max(sh, co)};
    }
    m.modes = {std::move(m1), std::move(m2), std::move(m3)};
    m.init_mode = 0;
    return m;
}

namespace {

struct Cell {
    int row, col;  // 1-based
    bool operator<(const Cell& o) const {
        return row != o.row ? row < o.row : col < o.col;
    }
};

// Danger layouts of the three grids, 1-based (row, col), rows counted from
// the top. This table is the authoritative transcription of the scenario and
// the single point of change if the layout is ever revised; the structural
// counts and strategy values asserted in the tests all follow from it.
const std::vector<Cell> kDanger[3] = {
    {{2, 1}, {2, 5}, {3, 3}, {3, 4}, {3, 5}, {4, 3}},
    {{1, 3}, {3, 1}, {3, 3}, {5, 3}, {5, 5}},
    {{1, 3}, {3, 1}, {3, 2}, {3, 4}},
};

constexpr int kSize = 5;
const Cell kStart{1, 1};
const Cell kTarget{5, 1};

// The eight compass neighbors, and the grouping of the four adjacent
// directions into overlapping corner quadrants for the coarse sensor.
struct Dir {
    const char* name;
    int dr, dc;
};
const Dir kDirs[8] = {{"N", -1, 0}, {"S", 1, 0},  {"W", 0, -1}, {"E", 0, 1},
                      {"NW", -1, -1}, {"NE", -1, 1}, {"SW", 1, -1}, {"SE", 1, 1}};
const char* kQuadrant[4][3] = {{"W", "NW", "N"},
                               {"N", "NE", "E"},
                               {"W", "SW", "S"},
                               {"S", "SE", "E"}};
const char* kQuadrantName[4] = {"NW", "NE", "SW", "SE"};

bool in_grid(int r, int c) { return r >= 1 && r <= kSize && c >= 1 && c <= kSize; }

}  // namespace

std::pair<std::vector<std::string>, std::vector<std::string>> grid_sensor_readings(
    const std::vector<std::pair<int, int>>& dangerous, int row, int col) {
    std::set<Cell> danger;
    for (const auto& [r, c] : dangerous) danger.insert({r, c});

    std::set<std::string> dangerous_dirs;
    for (const auto& d : kDirs) {
        int r = row + d.dr, c = col + d.dc;
        if (in_grid(r, c) && danger.count({r, c})) dangerous_dirs.insert(d.name);
    }

    std::vector<std::string> quadrant, exact;
    for (int q = 0; q < 4; ++q) {
        for (const char* dir : kQuadrant[q]) {
            if (dangerous_dirs.count(dir)) {
                quadrant.push_back(kQuadrantName[q]);
                break;
            }
        }
    }
    for (const auto& d : kDirs) {
        if (dangerous_dirs.count(d.name)) exact.push_back(d.name);
    }
    if (!dangerous_dirs.empty()) {
        quadrant.push_back("det");
        exact.push_back("det");
    }
    return {quadrant, exact};
}

NtsModel generate_grid_casestudy() {
    NtsModel m;
    m.states.push_back("sinit");
    for (int g = 1; g <= 3; ++g) {
        for (int r = 1; r <= kSize; ++r) {
            for (int c = 1; c <= kSize; ++c) {
                m.states.push_back("s" + std::to_string(g) + std::to_string(r) +
                                   std::to_string(c));
            }
        }
    }
    m.actions = {"a", "N", "S", "E", "W"};
    m.ap = {"dang", "target"};
    m.observations = {"N", "S", "W", "E", "NW", "NE", "SW", "SE", "det"};
    m.init = 0;

    auto cell_id = [](int g, int r, int c) {
        return 1 + (g - 1) * kSize * kSize + (r - 1) * kSize + (c - 1);
    };

    m.trans.assign(m.states.size(), std::vector<std::vector<StateId>>(m.actions.size()));
    m.trans[0][0] = {cell_id(1, kStart.row, kStart.col), cell_id(2, kStart.row, kStart.col),
                     cell_id(3, kStart.row, kStart.col)};
    // moves are deterministic and disabled at the border; the grid identifier
    // never changes after the initial choice
    const Dir moves[4] = {{"N", -1, 0}, {"S", 1, 0}, {"E", 0, 1}, {"W", 0, -1}};
    for (int g = 1; g <= 3; ++g) {
        for (int r = 1; r <= kSize; ++r) {
            for (int c = 1; c <= kSize; ++c) {
                for (const auto& mv : moves) {
                    int nr = r + mv.dr, nc = c + mv.dc;
                    if (!in_grid(nr, nc)) continue;
                    m.trans[cell_id(g, r, c)][m.action_id(mv.name)] = {cell_id(g, nr, nc)};
                }
            }
        }
    }

    m.labels.assign(m.states.size(), 0);
    for (int g = 1; g <= 3; ++g) {
        for (const Cell& d : kDanger[g - 1]) m.labels[cell_id(g, d.row, d.col)] |= 1;  // dang
        m.labels[cell_id(g, kTarget.row, kTarget.col)] |= 2;  // target
    }

    ObservationMode none{"m1", Rational(0), {}};
    ObservationMode quadrant{"m2", Rational(1), {}};
    ObservationMode exact{"m3", Rational(2), {}};
    none.obs.assign(m.states.size(), {});
    quadrant.obs.assign(m.states.size(), {});
    exact.obs.assign(m.states.size(), {});
    for (int g = 1; g <= 3; ++g) {
        std::vector<std::pair<int, int>> danger;
        for (const Cell& d : kDanger[g - 1]) danger.push_back({d.row, d.col});
        for (int r = 1; r <= kSize; ++r) {
            for (int c = 1; c <= kSize; ++c) {
                auto [quad_names, exact_names] = grid_sensor_readings(danger, r, c);
                ObsSet quad_ids, exact_ids;
                for (const auto& n : quad_names) quad_ids.push_back(m.obs_id(n));
                for (const auto& n : exact_names) exact_ids.push_back(m.obs_id(n));
                std::sort(quad_ids.begin(), quad_ids.end());
                std::sort(exact_ids.begin(), exact_ids.end());
                quadrant.obs[cell_id(g, r, c)] = std::move(quad_ids);
                exact.obs[cell_id(g, r, c)] = std::move(exact_ids);
            }
        }
    }
    m.modes = {std::move(none), std::move(quadrant), std::move(exact)};
    m.init_mode = 0;
    return m;
}

}  // namespace obsmode
