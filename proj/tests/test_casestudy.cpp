#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "obsmode/belief.hpp"
#include "obsmode/casestudy.hpp"
#include "obsmode/dfa.hpp"
#include "obsmode/formula.hpp"
#include "obsmode/model.hpp"

using namespace obsmode;

namespace {

std::vector<std::string> sorted(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// Observation names a grid state emits under a mode, sorted for comparison.
std::vector<std::string> reading(const NtsModel& m, const char* state, const char* mode) {
    std::vector<std::string> out;
    for (ObsId o : observe(m, m.mode_id(mode), m.state_id(state))) {
        out.push_back(m.observations[o]);
    }
    return sorted(out);
}

}  // namespace

TEST_CASE("running example shape") {
    NtsModel m = generate_running_example();
    CHECK(validate_model(m).empty());
    CHECK(m.states.size() == 7);
    CHECK(m.actions.size() == 2);
    CHECK(m.modes.size() == 3);
    CHECK(m.ap == std::vector<std::string>{"star"});
    CHECK(m.init == m.state_id("s1"));
    CHECK(m.init_mode == m.mode_id("m1"));
    // only s6 carries the goal proposition
    for (StateId s = 0; s < (StateId)m.states.size(); ++s) {
        CHECK(m.labels[s] == (s == m.state_id("s6") ? 1u : 0u));
    }
    // mode costs 0 / 1 / 2
    CHECK(m.modes[0].cost == Rational(0));
    CHECK(m.modes[1].cost == Rational(1));
    CHECK(m.modes[2].cost == Rational(2));
    // the blind mode sees nothing anywhere
    for (StateId s = 0; s < (StateId)m.states.size(); ++s) {
        CHECK(observe(m, 0, s).empty());
    }
    // the cheap sensor cannot split the two rectangles, the rich one can
    CHECK(observe(m, 1, m.state_id("s2")) == observe(m, 1, m.state_id("s3")));
    CHECK(observe(m, 2, m.state_id("s2")) != observe(m, 2, m.state_id("s3")));
}

TEST_CASE("grid case study shape") {
    NtsModel m = generate_grid_casestudy();
    CHECK(validate_model(m).empty());
    CHECK(m.states.size() == 76);  // 3 x 25 cells plus the choice state
    CHECK(m.actions == std::vector<std::string>{"a", "N", "S", "E", "W"});
    CHECK(sorted(m.observations) ==
          sorted({"N", "S", "W", "E", "NW", "NE", "SW", "SE", "det"}));
    CHECK(m.ap == std::vector<std::string>{"dang", "target"});
    CHECK(m.modes.size() == 3);
    CHECK(m.modes[0].cost == Rational(0));
    CHECK(m.modes[1].cost == Rational(1));
    CHECK(m.modes[2].cost == Rational(2));
    CHECK(m.init == m.state_id("sinit"));

    // the opening choice: one non-deterministic action into the three grids
    std::vector<StateId> open = post(m, m.init, m.action_id("a"));
    CHECK(open.size() == 3);
    std::set<std::string> names;
    for (StateId s : open) names.insert(m.states[s]);
    CHECK(names == std::set<std::string>{"s111", "s211", "s311"});
    // compass moves are disabled in the choice state
    CHECK(post(m, m.init, m.action_id("S")).empty());
}

TEST_CASE("grid moves are deterministic and respect the border") {
    NtsModel m = generate_grid_casestudy();
    StateId corner = m.state_id("s111");  // row 1, col 1 of the first grid
    CHECK(post(m, corner, m.action_id("N")).empty());
    CHECK(post(m, corner, m.action_id("W")).empty());
    CHECK(post(m, corner, m.action_id("S")) == std::vector<StateId>{m.state_id("s121")});
    CHECK(post(m, corner, m.action_id("E")) == std::vector<StateId>{m.state_id("s112")});
    CHECK(post(m, corner, m.action_id("a")).empty());  // the choice action is spent
    StateId mid = m.state_id("s233");
    for (const char* mv : {"N", "S", "E", "W"}) {
        CHECK(post(m, mid, m.action_id(mv)).size() == 1);
    }
}

TEST_CASE("danger and target labels sit where the layouts put them") {
    NtsModel m = generate_grid_casestudy();
    PropMask dang = 1, target = 2;
    // the target cell is row 5 col 1 in every grid
    for (int g = 1; g <= 3; ++g) {
        std::string name = "s" + std::to_string(g) + "51";
        CHECK((m.labels[m.state_id(name)] & target) != 0);
    }
    CHECK(m.labels[m.state_id("sinit")] == 0);
    // spot checks of the three danger layouts
    CHECK((m.labels[m.state_id("s121")] & dang) != 0);
    CHECK((m.labels[m.state_id("s133")] & dang) != 0);
    CHECK((m.labels[m.state_id("s213")] & dang) != 0);
    CHECK((m.labels[m.state_id("s231")] & dang) != 0);
    CHECK((m.labels[m.state_id("s313")] & dang) != 0);
    CHECK((m.labels[m.state_id("s331")] & dang) != 0);
    // the start cell and its first-move corridor are safe in every grid
    for (int g = 1; g <= 3; ++g) {
        std::string pre = "s" + std::to_string(g);
        CHECK(m.labels[m.state_id(pre + "11")] == 0);
        CHECK(m.labels[m.state_id(pre + "12")] == 0);
        CHECK(m.labels[m.state_id(pre + "22")] == 0);
    }
}

TEST_CASE("sensor readings: quadrants overlap, directions are exact, det flags any") {
    // a layout with dangerous cells due north and southeast of the probe
    std::vector<std::pair<int, int>> danger = {{2, 3}, {4, 4}};
    auto [quad, exact] = grid_sensor_readings(danger, 3, 3);
    // north belongs to both upper quadrants, southeast to the lower right
    CHECK(sorted(quad) == sorted({"NW", "NE", "SE", "det"}));
    CHECK(sorted(exact) == sorted({"N", "SE", "det"}));

    // nothing adjacent: both sensors stay silent
    auto [quad_far, exact_far] = grid_sensor_readings(danger, 1, 1);
    CHECK(quad_far.empty());
    CHECK(exact_far.empty());

    // a diagonal neighbor shows up in exactly one quadrant
    auto [quad_c, exact_c] = grid_sensor_readings({{2, 2}}, 3, 3);
    CHECK(sorted(quad_c) == sorted({"NW", "det"}));
    CHECK(sorted(exact_c) == sorted({"NW", "det"}));

    // the probe cell itself being dangerous is not a neighbor
    auto [quad_self, exact_self] = grid_sensor_readings({{3, 3}}, 3, 3);
    CHECK(quad_self.empty());
    CHECK(exact_self.empty());

    // off-grid positions of the pattern never count
    auto [quad_edge, exact_edge] = grid_sensor_readings({{1, 2}}, 1, 1);
    CHECK(sorted(quad_edge) == sorted({"NE", "SE", "det"}));  // east: both right quadrants
    CHECK(sorted(exact_edge) == sorted({"E", "det"}));
}

TEST_CASE("modes wire the sensors onto the grid states") {
    NtsModel m = generate_grid_casestudy();
    // quoted spot readings of the exact sensor two cells into the grids
    CHECK(reading(m, "s123", "m3") == sorted({"S", "SE", "det"}));
    CHECK(reading(m, "s223", "m3") == sorted({"N", "S", "det"}));
    CHECK(reading(m, "s323", "m3") == sorted({"N", "SW", "SE", "det"}));
    // quadrant sensor at the start cell: grid one flags both lower quadrants
    CHECK(reading(m, "s111", "m2") == sorted({"SW", "SE", "det"}));
    CHECK(reading(m, "s211", "m2").empty());
    CHECK(reading(m, "s311", "m2").empty());
    // the choice state is silent under every mode
    for (const char* mode : {"m1", "m2", "m3"}) {
        CHECK(reading(m, "sinit", mode).empty());
    }
    // the blind mode is silent everywhere
    for (StateId s = 0; s < (StateId)m.states.size(); ++s) {
        CHECK(observe(m, m.mode_id("m1"), s).empty());
    }
}

TEST_CASE("every grid admits a safe corridor to the target") {
    // sanity: within each grid some path from the entry cell reaches the
    // target without touching danger (otherwise the scenario is unwinnable)
    NtsModel m = generate_grid_casestudy();
    PropMask dang = 1, target = 2;
    for (int g = 1; g <= 3; ++g) {
        StateId entry = m.state_id("s" + std::to_string(g) + "11");
        std::set<StateId> seen = {entry};
        std::vector<StateId> stack = {entry};
        bool found = false;
        while (!stack.empty() && !found) {
            StateId s = stack.back();
            stack.pop_back();
            for (const char* mv : {"N", "S", "E", "W"}) {
                for (StateId nxt : post(m, s, m.action_id(mv))) {
                    if (m.labels[nxt] & dang) continue;
                    if (m.labels[nxt] & target) {
                        found = true;
                        break;
                    }
                    if (seen.insert(nxt).second) stack.push_back(nxt);
                }
                if (found) break;
            }
        }
        CHECK(found);
    }
}
