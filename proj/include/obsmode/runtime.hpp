#pragma once

#include <string>
#include <vector>

#include "obsmode/synthesis.hpp"

namespace obsmode {

// One executed step of a session: the belief the command was issued in, the
// command, and the observation that came back.
struct SessionStep {
    int belief;
    ActionId action;
    ModeId mode;
    ObsSet obs;
};

enum class SessionStatus { Running, Satisfied, OffStrategy };

// Replays a strategy against observations as they arrive. The session tracks
// the current belief, the accumulated observation cost (which starts at the
// initial mode's cost: the initial configuration observes too), and a status.
// For a bounded strategy it also counts down the remaining step budget, which
// selects the command layer. Satisfied latches once an accepting belief is
// reached. OffStrategy is a terminal report, not an error: it means an
// observation arrived that no successor class of the commanded step can
// explain, so the tracked belief (and with it the strategy's guarantee) no
// longer applies.
struct Session {
    const BeliefProduct* bp = nullptr;
    const Strategy* strategy = nullptr;
    int current = 0;
    long long remaining = -1;  // step budget left; -1 for unbounded strategies
    Rational accumulated{0};
    SessionStatus status = SessionStatus::Running;
    std::vector<SessionStep> history;
};

// Throws std::invalid_argument when the strategy does not cover the belief
// product (different belief count) or is infeasible.
Session start_session(const BeliefProduct& bp, const Strategy& strategy);

// The command the strategy prescribes in the current belief. Only valid on a
// running session; throws std::logic_error once satisfied or off strategy.
std::pair<ActionId, ModeId> next_command(const Session& session);

// Advances the session: the prescribed command was executed and `obs` came
// back. Matches `obs` against the successor classes of the current belief
// under that command; on a match the belief advances and the mode's cost is
// added, otherwise the session becomes OffStrategy. No-op once the session is
// not running.
void feed_observation(Session& session, const ObsSet& obs);

// Folds a full observation sequence and returns the next command. The first
// element must be the initial configuration's observation (the initial mode
// in the initial state); a mismatch there or an inexplicable later
// observation throws std::invalid_argument, as does a sequence ending in a
// belief with no command.
std::pair<ActionId, ModeId> replay(const BeliefProduct& bp, const Strategy& strategy,
                                   const std::vector<ObsSet>& observations);

std::string session_status_name(SessionStatus status);

}  // namespace obsmode
