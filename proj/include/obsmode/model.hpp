#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "obsmode/rational.hpp"

namespace obsmode {

using StateId = int;
using ActionId = int;
using ObsId = int;
using ModeId = int;

// Atomic propositions are kept as a bitmask; 16 is plenty for the models here
// and keeps label sets trivially hashable and comparable.
using PropMask = std::uint32_t;
constexpr int kMaxProps = 16;

// A set of observation ids, always sorted ascending and duplicate-free.
using ObsSet = std::vector<ObsId>;

// One observation mode: what it reveals per state and what one step under it
// costs. obs[s] lists the observations emitted when the system is in state s
// while this mode is active.
struct ObservationMode {
    std::string name;
    Rational cost;
    std::vector<ObsSet> obs;
};

// Non-deterministic transition system with observation modes. Transitions are
// stored per state and action as a sorted list of successor states; an empty
// list means the action is disabled in that state.
struct NtsModel {
    std::vector<std::string> states;
    std::vector<std::string> actions;
    std::vector<std::vector<std::vector<StateId>>> trans;  // trans[s][a] sorted
    StateId init = 0;
    std::vector<std::string> ap;
    std::vector<PropMask> labels;  // labels[s]
    std::vector<std::string> observations;
    std::vector<ObservationMode> modes;
    ModeId init_mode = 0;

    StateId state_id(const std::string& name) const;    // -1 when absent
    ActionId action_id(const std::string& name) const;  // -1 when absent
    ObsId obs_id(const std::string& name) const;        // -1 when absent
    ModeId mode_id(const std::string& name) const;      // -1 when absent
};

// A finite run prefix as a sequence of (state, active mode) configurations.
using ConfigRun = std::vector<std::pair<StateId, ModeId>>;

// Structural well-formedness check. Returns one message per violation; an
// empty result means the model is usable by every other operation. Checked:
// non-empty state/action/mode sets, unique non-empty names, valid init and
// init_mode, transition targets in range and sorted/deduplicated, every state
// has at least one enabled action (runs must be extendable forever),
// at most kMaxProps propositions, label masks in range, observation ids in
// range and ObsSets sorted/deduplicated, and non-negative mode costs.
std::vector<std::string> validate_model(const NtsModel& m);

// Successor set of (state, action); empty when the action is disabled.
std::vector<StateId> post(const NtsModel& m, StateId s, ActionId a);

// Accumulated observation cost of a run prefix: the sum of the active mode's
// cost over every configuration, including the last one.
Rational run_cost(const NtsModel& m, const ConfigRun& run);

// Observations emitted in `s` while `mode` is active.
const ObsSet& observe(const NtsModel& m, ModeId mode, StateId s);

}  // namespace obsmode
