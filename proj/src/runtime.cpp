#include "obsmode/runtime.hpp"

#include <stdexcept>

namespace obsmode {

Session start_session(const BeliefProduct& bp, const Strategy& strategy) {
    bool covers;
    if (strategy.kind == "bounded") {
        covers = !strategy.layers.empty();
        for (const auto& layer : strategy.layers) {
            covers = covers && static_cast<int>(layer.size()) == bp.size();
        }
    } else {
        covers = static_cast<int>(strategy.choice.size()) == bp.size();
    }
    if (!covers) {
        throw std::invalid_argument("strategy does not cover this belief product");
    }
    if (!strategy.feasible()) {
        throw std::invalid_argument("cannot run an infeasible strategy");
    }
    Session s;
    s.bp = &bp;
    s.strategy = &strategy;
    s.current = bp.init;
    s.remaining = strategy.kind == "bounded" ? strategy.bound : -1;
    // The initial configuration already runs the initial mode.
    s.accumulated = bp.weight(bp.product.model.init_mode);
    s.status = bp.accepting[bp.init] ? SessionStatus::Satisfied : SessionStatus::Running;
    return s;
}

std::pair<ActionId, ModeId> next_command(const Session& session) {
    if (session.status == SessionStatus::Satisfied) {
        throw std::logic_error("session already satisfied; no further command");
    }
    if (session.status == SessionStatus::OffStrategy) {
        throw std::logic_error("session is off strategy; no further command");
    }
    const auto& choice = session.strategy->command_at(session.current, session.remaining);
    if (!choice) {
        throw std::logic_error("strategy has no command for the current belief");
    }
    return *choice;
}

void feed_observation(Session& session, const ObsSet& obs) {
    if (session.status != SessionStatus::Running) return;
    auto [a, m] = next_command(session);
    const BeliefProduct& bp = *session.bp;
    const auto& classes = bp.trans[session.current][bp.action_index(a, m)];
    int matched = -1;
    for (int cls : classes) {
        if (bp.observation(cls, m) == obs) {
            matched = cls;
            break;
        }
    }
    session.history.push_back({session.current, a, m, obs});
    if (matched == -1) {
        session.status = SessionStatus::OffStrategy;
        return;
    }
    session.current = matched;
    if (session.remaining > 0) --session.remaining;
    session.accumulated = session.accumulated + bp.weight(m);
    if (bp.accepting[matched]) session.status = SessionStatus::Satisfied;
}

std::pair<ActionId, ModeId> replay(const BeliefProduct& bp, const Strategy& strategy,
                                   const std::vector<ObsSet>& observations) {
    if (observations.empty()) {
        throw std::invalid_argument("replay needs at least the initial observation");
    }
    Session session = start_session(bp, strategy);
    const NtsModel& m = bp.product.model;
    if (observations.front() != observe(m, m.init_mode, m.init)) {
        throw std::invalid_argument(
            "first observation does not match the initial mode in the initial state");
    }
    for (std::size_t i = 1; i < observations.size(); ++i) {
        if (session.status == SessionStatus::Satisfied) {
            throw std::invalid_argument("observation " + std::to_string(i) +
                                        " arrives after the objective is already satisfied");
        }
        feed_observation(session, observations[i]);
        if (session.status == SessionStatus::OffStrategy) {
            throw std::invalid_argument("observation " + std::to_string(i) +
                                        " cannot be explained by the strategy's belief");
        }
    }
    if (session.status == SessionStatus::Satisfied) {
        throw std::invalid_argument("observation sequence ends with the objective satisfied");
    }
    return next_command(session);
}

std::string session_status_name(SessionStatus status) {
    switch (status) {
        case SessionStatus::Running:
            return "running";
        case SessionStatus::Satisfied:
            return "satisfied";
        case SessionStatus::OffStrategy:
            return "off-strategy";
    }
    return "unknown";
}

}  // namespace obsmode
