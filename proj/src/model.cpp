#include "obsmode/model.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace obsmode {

namespace {

int find_name(const std::vector<std::string>& names, const std::string& name) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return static_cast<int>(i);
    }
    return -1;
}

void check_unique(const std::vector<std::string>& names, const char* what,
                  std::vector<std::string>& out) {
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (n.empty()) out.push_back(std::string(what) + " with empty name");
        if (!seen.insert(n).second) out.push_back(std::string("duplicate ") + what + " name: " + n);
    }
}

}  // namespace

StateId NtsModel::state_id(const std::string& name) const { return find_name(states, name); }
ActionId NtsModel::action_id(const std::string& name) const { return find_name(actions, name); }
ObsId NtsModel::obs_id(const std::string& name) const { return find_name(observations, name); }

ModeId NtsModel::mode_id(const std::string& name) const {
    for (std::size_t i = 0; i < modes.size(); ++i) {
        if (modes[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

std::vector<std::string> validate_model(const NtsModel& m) {
    std::vector<std::string> out;
    const int ns = static_cast<int>(m.states.size());
    const int na = static_cast<int>(m.actions.size());

    if (ns == 0) out.push_back("model has no states");
    if (na == 0) out.push_back("model has no actions");
    if (m.modes.empty()) out.push_back("model has no observation modes");
    check_unique(m.states, "state", out);
    check_unique(m.actions, "action", out);
    check_unique(m.observations, "observation", out);
    {
        std::vector<std::string> mode_names;
        for (const auto& md : m.modes) mode_names.push_back(md.name);
        check_unique(mode_names, "mode", out);
    }
    check_unique(m.ap, "proposition", out);
    if (static_cast<int>(m.ap.size()) > kMaxProps) {
        out.push_back("more than " + std::to_string(kMaxProps) + " atomic propositions");
    }

    if (m.init < 0 || m.init >= ns) out.push_back("initial state index out of range");
    if (m.init_mode < 0 || m.init_mode >= static_cast<int>(m.modes.size())) {
        out.push_back("initial mode index out of range");
    }

    if (static_cast<int>(m.trans.size()) != ns) {
        out.push_back("transition table does not cover every state");
    }
    if (static_cast<int>(m.labels.size()) != ns) {
        out.push_back("label table does not cover every state");
    }

    const PropMask all_props =
        m.ap.size() >= 32 ? ~PropMask(0) : ((PropMask(1) << m.ap.size()) - 1);
    for (int s = 0; s < static_cast<int>(m.labels.size()) && s < ns; ++s) {
        if ((m.labels[s] & ~all_props) != 0) {
            out.push_back("label of state " + m.states[s] + " uses an undeclared proposition");
        }
    }

    for (int s = 0; s < static_cast<int>(m.trans.size()) && s < ns; ++s) {
        const auto& row = m.trans[s];
        if (static_cast<int>(row.size()) != na) {
            out.push_back("transition row of state " + m.states[s] + " does not cover every action");
            continue;
        }
        bool enabled = false;
        for (int a = 0; a < na; ++a) {
            const auto& succ = row[a];
            if (!succ.empty()) enabled = true;
            for (StateId t : succ) {
                if (t < 0 || t >= ns) {
                    out.push_back("transition from " + m.states[s] + " under " + m.actions[a] +
                                  " leaves the state set");
                }
            }
            if (!std::is_sorted(succ.begin(), succ.end()) ||
                std::adjacent_find(succ.begin(), succ.end()) != succ.end()) {
                out.push_back("successors of " + m.states[s] + " under " + m.actions[a] +
                              " are not a sorted set");
            }
        }
        if (!enabled) {
            out.push_back("state " + m.states[s] + " has no enabled action");
        }
    }

    const int no = static_cast<int>(m.observations.size());
    for (const auto& mode : m.modes) {
        if (mode.cost < Rational(0)) {
            out.push_back("mode " + mode.name + " has negative cost");
        }
        if (static_cast<int>(mode.obs.size()) != ns) {
            out.push_back("observation map of mode " + mode.name + " does not cover every state");
            continue;
        }
        for (int s = 0; s < ns; ++s) {
            const ObsSet& obs = mode.obs[s];
            for (ObsId o : obs) {
                if (o < 0 || o >= no) {
                    out.push_back("mode " + mode.name + " emits an undeclared observation in state " +
                                  m.states[s]);
                }
            }
            if (!std::is_sorted(obs.begin(), obs.end()) ||
                std::adjacent_find(obs.begin(), obs.end()) != obs.end()) {
                out.push_back("observations of mode " + mode.name + " in state " + m.states[s] +
                              " are not a sorted set");
            }
        }
    }

    return out;
}

std::vector<StateId> post(const NtsModel& m, StateId s, ActionId a) {
    if (s < 0 || s >= static_cast<int>(m.trans.size())) throw std::out_of_range("post: bad state");
    if (a < 0 || a >= static_cast<int>(m.trans[s].size())) throw std::out_of_range("post: bad action");
    return m.trans[s][a];
}

Rational run_cost(const NtsModel& m, const ConfigRun& run) {
    Rational total(0);
    for (const auto& [state, mode] : run) {
        if (state < 0 || state >= static_cast<int>(m.states.size())) {
            throw std::out_of_range("run_cost: bad state");
        }
        if (mode < 0 || mode >= static_cast<int>(m.modes.size())) {
            throw std::out_of_range("run_cost: bad mode");
        }
        total = total + m.modes[mode].cost;
    }
    return total;
}

const ObsSet& observe(const NtsModel& m, ModeId mode, StateId s) {
    if (mode < 0 || mode >= static_cast<int>(m.modes.size())) {
        throw std::out_of_range("observe: bad mode");
    }
    const auto& map = m.modes[mode].obs;
    if (s < 0 || s >= static_cast<int>(map.size())) throw std::out_of_range("observe: bad state");
    return map[s];
}

}  // namespace obsmode
