#include "obsmode/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace obsmode {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw FileFormatError(msg); }

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail("JSON syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

const json& get_key(const json& obj, const std::string& key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(where + ": missing key '" + key + "'");
    return *it;
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) fail(where + ": expected a JSON object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) fail(where + ": unknown key '" + it.key() + "'");
    }
}

std::string as_string(const json& j, const std::string& where) {
    if (!j.is_string()) fail(where + ": expected a string");
    return j.get<std::string>();
}

const json& as_array(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where + ": expected an array");
    return j;
}

const json& as_object(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where + ": expected an object");
    return j;
}

long long as_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where + ": expected an integer");
    return j.get<long long>();
}

std::vector<std::string> as_name_list(const json& j, const std::string& where) {
    std::vector<std::string> out;
    for (const auto& e : as_array(j, where)) out.push_back(as_string(e, where));
    return out;
}

Rational parse_cost(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_number()) {
        fail(where + ": non-integer JSON numbers are not exact; write the cost as a string");
    }
    if (!j.is_string()) fail(where + ": expected a cost string or integer");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
        fail(where + ": " + e.what());
    }
}

ExtCost parse_ext(const json& j, const std::string& where) {
    if (j.is_string() && j.get<std::string>() == "inf") return ExtCost::infinity();
    return ExtCost(parse_cost(j, where));
}

// Resolves `names` against the declared list via `lookup`, rejecting unknowns
// and duplicates, and returns sorted unique ids.
template <typename Lookup>
std::vector<int> resolve_set(const std::vector<std::string>& names, Lookup lookup,
                             const std::string& what, const std::string& where) {
    std::set<int> ids;
    for (const auto& n : names) {
        int id = lookup(n);
        if (id < 0) fail(where + ": unknown " + what + " '" + n + "'");
        if (!ids.insert(id).second) fail(where + ": duplicate " + what + " '" + n + "'");
    }
    return std::vector<int>(ids.begin(), ids.end());
}

}  // namespace

NtsModel model_from_json_text(const std::string& text) {
    json j = parse_json(text);
    check_keys(j,
               {"states", "actions", "transitions", "init", "ap", "labels", "observations",
                "modes", "init_mode"},
               "model");
    for (const char* key : {"states", "actions", "transitions", "init", "ap", "labels",
                            "observations", "modes", "init_mode"}) {
        get_key(j, key, "model");
    }

    NtsModel m;
    m.states = as_name_list(j["states"], "states");
    m.actions = as_name_list(j["actions"], "actions");
    m.ap = as_name_list(j["ap"], "ap");
    m.observations = as_name_list(j["observations"], "observations");

    auto state_of = [&m](const std::string& n) { return m.state_id(n); };
    auto need_state = [&](const json& v, const std::string& where) {
        StateId s = m.state_id(as_string(v, where));
        if (s < 0) fail(where + ": unknown state '" + as_string(v, where) + "'");
        return s;
    };

    m.trans.assign(m.states.size(),
                   std::vector<std::vector<StateId>>(m.actions.size()));
    std::set<std::pair<StateId, ActionId>> seen;
    for (const auto& t : as_array(j["transitions"], "transitions")) {
        check_keys(t, {"from", "action", "to"}, "transition");
        StateId from = need_state(get_key(t, "from", "transition"), "transition.from");
        ActionId a = m.action_id(as_string(get_key(t, "action", "transition"), "transition.action"));
        if (a < 0) fail("transition: unknown action");
        if (!seen.insert({from, a}).second) {
            fail("transition: duplicate entry for state '" + m.states[from] + "' and action '" +
                 m.actions[a] + "'");
        }
        m.trans[from][a] = resolve_set(as_name_list(get_key(t, "to", "transition"), "transition.to"),
                                       state_of, "state", "transition.to");
    }

    m.init = need_state(j["init"], "init");

    m.labels.assign(m.states.size(), 0);
    for (auto it = as_object(j["labels"], "labels").begin(); it != j["labels"].end(); ++it) {
        StateId s = m.state_id(it.key());
        if (s < 0) fail("labels: unknown state '" + it.key() + "'");
        PropMask mask = 0;
        for (int p : resolve_set(as_name_list(it.value(), "labels"),
                                 [&m](const std::string& n) {
                                     for (size_t i = 0; i < m.ap.size(); ++i) {
                                         if (m.ap[i] == n) return static_cast<int>(i);
                                     }
                                     return -1;
                                 },
                                 "proposition", "labels")) {
            mask |= PropMask(1) << p;
        }
        m.labels[s] = mask;
    }

    for (const auto& mj : as_array(j["modes"], "modes")) {
        check_keys(mj, {"name", "cost", "obs"}, "mode");
        ObservationMode mode;
        mode.name = as_string(get_key(mj, "name", "mode"), "mode.name");
        mode.cost = parse_cost(get_key(mj, "cost", "mode"), "mode '" + mode.name + "' cost");
        mode.obs.assign(m.states.size(), {});
        const json& obs = as_object(get_key(mj, "obs", "mode"), "mode.obs");
        for (auto it = obs.begin(); it != obs.end(); ++it) {
            StateId s = m.state_id(it.key());
            if (s < 0) fail("mode '" + mode.name + "': unknown state '" + it.key() + "'");
            mode.obs[s] = resolve_set(as_name_list(it.value(), "mode.obs"),
                                      [&m](const std::string& n) { return m.obs_id(n); },
                                      "observation", "mode '" + mode.name + "'");
        }
        m.modes.push_back(std::move(mode));
    }

    ModeId im = m.mode_id(as_string(j["init_mode"], "init_mode"));
    if (im < 0) fail("init_mode: unknown mode '" + as_string(j["init_mode"], "init_mode") + "'");
    m.init_mode = im;

    auto violations = validate_model(m);
    if (!violations.empty()) {
        std::string msg = "model validation failed:";
        for (const auto& v : violations) msg += "\n" + v;
        fail(msg);
    }
    return m;
}

std::string model_to_json_text(const NtsModel& m) {
    json j;
    j["states"] = m.states;
    j["actions"] = m.actions;
    j["ap"] = m.ap;
    j["observations"] = m.observations;
    j["init"] = m.states[m.init];
    j["init_mode"] = m.modes[m.init_mode].name;

    json trans = json::array();
    for (size_t s = 0; s < m.states.size(); ++s) {
        for (size_t a = 0; a < m.actions.size(); ++a) {
            if (m.trans[s][a].empty()) continue;
            json names = json::array();
            for (StateId t : m.trans[s][a]) names.push_back(m.states[t]);
            trans.push_back({{"from", m.states[s]}, {"action", m.actions[a]}, {"to", names}});
        }
    }
    j["transitions"] = std::move(trans);

    json labels = json::object();
    for (size_t s = 0; s < m.states.size(); ++s) {
        if (m.labels[s] == 0) continue;
        json props = json::array();
        for (size_t p = 0; p < m.ap.size(); ++p) {
            if (m.labels[s] & (PropMask(1) << p)) props.push_back(m.ap[p]);
        }
        labels[m.states[s]] = std::move(props);
    }
    j["labels"] = std::move(labels);

    json modes = json::array();
    for (const auto& mode : m.modes) {
        json obs = json::object();
        for (size_t s = 0; s < m.states.size(); ++s) {
            if (mode.obs[s].empty()) continue;
            json names = json::array();
            for (ObsId o : mode.obs[s]) names.push_back(m.observations[o]);
            obs[m.states[s]] = std::move(names);
        }
        modes.push_back({{"name", mode.name}, {"cost", mode.cost.str()}, {"obs", std::move(obs)}});
    }
    j["modes"] = std::move(modes);

    return j.dump(2) + "\n";
}

NtsModel load_model(const std::string& path) { return model_from_json_text(read_text_file(path)); }

void save_model(const NtsModel& m, const std::string& path) {
    write_text_file(path, model_to_json_text(m));
}

StrategyFileData strategy_to_data(const Strategy& strategy, const BeliefProduct& bp) {
    StrategyFileData data;
    data.labeling = strategy.labeling;
    data.formula = strategy.formula_text;
    data.kind = strategy.kind;
    data.bound = strategy.bound;
    data.init_belief = strategy.init_belief;
    data.total_cost = strategy.total_cost;
    data.wtg = strategy.wtg;

    const NtsModel& m = bp.product.model;
    for (const auto& members : bp.beliefs) {
        std::vector<std::pair<std::string, int>> out;
        for (int pid : members) {
            const ProductState& ps = bp.product.states[pid];
            out.push_back({m.states[ps.state], ps.dfa_state});
        }
        data.beliefs.push_back(std::move(out));
    }
    auto name_table = [&m](const std::vector<std::optional<std::pair<ActionId, ModeId>>>& table) {
        std::vector<std::optional<std::pair<std::string, std::string>>> out;
        for (const auto& c : table) {
            if (c.has_value()) {
                out.push_back(std::make_pair(m.actions[c->first], m.modes[c->second].name));
            } else {
                out.push_back(std::nullopt);
            }
        }
        return out;
    };
    if (strategy.kind == "bounded") {
        for (const auto& layer : strategy.layers) data.layers.push_back(name_table(layer));
    } else {
        data.choices = name_table(strategy.choice);
    }
    return data;
}

Strategy strategy_from_data(const StrategyFileData& data, const BeliefProduct& bp) {
    if (data.labeling != bp.product.labeling) {
        fail("strategy file uses labeling '" + labeling_name(data.labeling) +
             "' but the belief product was built with '" +
             labeling_name(bp.product.labeling) + "'");
    }
    const NtsModel& m = bp.product.model;
    if (static_cast<int>(data.beliefs.size()) != bp.size()) {
        fail("strategy file lists " + std::to_string(data.beliefs.size()) +
             " beliefs but the rebuilt belief product has " + std::to_string(bp.size()));
    }

    // Beliefs are stored in canonical construction order, so binding is a
    // straight positional comparison after translating names back to ids.
    std::map<std::pair<StateId, int>, int> product_index;
    for (int pid = 0; pid < bp.product.size(); ++pid) {
        const ProductState& ps = bp.product.states[pid];
        product_index[{ps.state, ps.dfa_state}] = pid;
    }
    for (int b = 0; b < bp.size(); ++b) {
        std::vector<int> members;
        for (const auto& [state_name, q] : data.beliefs[b]) {
            StateId s = m.state_id(state_name);
            if (s < 0) fail("strategy belief " + std::to_string(b) + ": unknown state '" +
                            state_name + "'");
            auto it = product_index.find({s, q});
            if (it == product_index.end()) {
                fail("strategy belief " + std::to_string(b) + ": (" + state_name + "," +
                     std::to_string(q) + ") is not a reachable product state");
            }
            members.push_back(it->second);
        }
        if (members != bp.beliefs[b]) {
            fail("strategy belief " + std::to_string(b) +
                 " does not match the rebuilt belief product (stale or foreign file)");
        }
    }
    if (data.init_belief != bp.init) fail("strategy file initial belief mismatch");
    if (data.kind == "bounded") {
        if (data.layers.empty()) fail("bounded strategy file has no command layers");
        for (const auto& layer : data.layers) {
            if (layer.size() != data.beliefs.size()) {
                fail("strategy file layer/wtg tables do not cover the belief list");
            }
        }
    } else if (data.choices.size() != data.beliefs.size()) {
        fail("strategy file choice/wtg tables do not cover the belief list");
    }
    if (data.wtg.size() != data.beliefs.size()) {
        fail("strategy file choice/wtg tables do not cover the belief list");
    }

    Strategy st;
    st.labeling = data.labeling;
    st.formula_text = data.formula;
    st.kind = data.kind;
    st.bound = data.bound;
    st.init_belief = data.init_belief;
    st.wtg = data.wtg;
    st.total_cost = data.total_cost;
    auto bind_table = [&](const std::vector<std::optional<std::pair<std::string, std::string>>>&
                              table) {
        std::vector<std::optional<std::pair<ActionId, ModeId>>> out;
        for (int b = 0; b < bp.size(); ++b) {
            const auto& c = table[b];
            if (!c.has_value()) {
                out.emplace_back(std::nullopt);
                continue;
            }
            ActionId a = m.action_id(c->first);
            ModeId mode = m.mode_id(c->second);
            if (a < 0) fail("strategy choice at belief " + std::to_string(b) +
                            ": unknown action '" + c->first + "'");
            if (mode < 0) fail("strategy choice at belief " + std::to_string(b) +
                               ": unknown mode '" + c->second + "'");
            if (bp.trans[b][bp.action_index(a, mode)].empty()) {
                fail("strategy choice at belief " + std::to_string(b) + ": command (" + c->first +
                     "," + c->second + ") is not offered there");
            }
            out.emplace_back(std::make_pair(a, mode));
        }
        return out;
    };
    if (data.kind == "bounded") {
        for (const auto& layer : data.layers) st.layers.push_back(bind_table(layer));
    } else {
        st.choice = bind_table(data.choices);
    }
    return st;
}

StrategyFileData strategy_data_from_json_text(const std::string& text) {
    json j = parse_json(text);
    check_keys(j,
               {"kind", "k", "labeling", "formula", "beliefs", "init_belief", "choices", "layers",
                "wtg", "total_cost"},
               "strategy");
    for (const char* key :
         {"kind", "labeling", "formula", "beliefs", "init_belief", "wtg", "total_cost"}) {
        get_key(j, key, "strategy");
    }

    StrategyFileData data;
    data.kind = as_string(j["kind"], "kind");
    if (data.kind != "unbounded" && data.kind != "bounded") {
        fail("strategy kind must be 'unbounded' or 'bounded'");
    }
    if (data.kind == "bounded") {
        data.bound = static_cast<int>(as_int(get_key(j, "k", "strategy"), "k"));
        if (data.bound < 0) fail("strategy k must be non-negative");
        get_key(j, "layers", "strategy");
        if (j.count("choices")) {
            fail("strategy: bounded strategies store their commands under 'layers'");
        }
    } else {
        get_key(j, "choices", "strategy");
        if (j.count("k")) fail("strategy: key 'k' is only valid for kind 'bounded'");
        if (j.count("layers")) {
            fail("strategy: key 'layers' is only valid for kind 'bounded'");
        }
    }
    try {
        data.labeling = parse_labeling(as_string(j["labeling"], "labeling"));
    } catch (const std::exception& e) {
        fail(std::string("labeling: ") + e.what());
    }
    data.formula = as_string(j["formula"], "formula");

    for (const auto& bj : as_array(j["beliefs"], "beliefs")) {
        std::vector<std::pair<std::string, int>> members;
        for (const auto& mj : as_array(bj, "belief member list")) {
            const json& pair = as_array(mj, "belief member");
            if (pair.size() != 2) fail("belief member: expected [state, dfa-state]");
            members.push_back(
                {as_string(pair[0], "belief member state"),
                 static_cast<int>(as_int(pair[1], "belief member dfa state"))});
        }
        if (members.empty()) fail("beliefs: members must be non-empty");
        data.beliefs.push_back(std::move(members));
    }
    int n = static_cast<int>(data.beliefs.size());

    data.init_belief = static_cast<int>(as_int(j["init_belief"], "init_belief"));
    if (data.init_belief < 0 || data.init_belief >= n) fail("init_belief out of range");

    auto parse_index_key = [n](const std::string& key, const std::string& where) {
        size_t pos = 0;
        int idx = -1;
        try {
            idx = std::stoi(key, &pos);
        } catch (const std::exception&) {
            fail(where + ": key '" + key + "' is not a belief index");
        }
        if (pos != key.size() || idx < 0 || idx >= n) {
            fail(where + ": key '" + key + "' is not a belief index");
        }
        return idx;
    };

    auto parse_table = [&](const json& obj, const std::string& where) {
        std::vector<std::optional<std::pair<std::string, std::string>>> table(n, std::nullopt);
        for (auto it = as_object(obj, where).begin(); it != obj.end(); ++it) {
            int idx = parse_index_key(it.key(), where);
            check_keys(it.value(), {"action", "mode"}, "choice");
            table[idx] = std::make_pair(
                as_string(get_key(it.value(), "action", "choice"), "choice.action"),
                as_string(get_key(it.value(), "mode", "choice"), "choice.mode"));
        }
        return table;
    };
    if (data.kind == "bounded") {
        const json& layers = as_array(j["layers"], "layers");
        if (layers.empty()) fail("layers: bounded strategies need at least one layer");
        for (std::size_t r = 0; r < layers.size(); ++r) {
            data.layers.push_back(parse_table(layers[r], "layers[" + std::to_string(r) + "]"));
        }
    } else {
        data.choices = parse_table(j["choices"], "choices");
    }

    data.wtg.assign(n, ExtCost::infinity());
    for (auto it = as_object(j["wtg"], "wtg").begin(); it != j["wtg"].end(); ++it) {
        int idx = parse_index_key(it.key(), "wtg");
        data.wtg[idx] = parse_ext(it.value(), "wtg");
    }

    data.total_cost = parse_ext(j["total_cost"], "total_cost");
    return data;
}

std::string strategy_data_to_json_text(const StrategyFileData& data) {
    json j;
    j["kind"] = data.kind;
    if (data.kind == "bounded") j["k"] = data.bound;
    j["labeling"] = labeling_name(data.labeling);
    j["formula"] = data.formula;
    j["init_belief"] = data.init_belief;
    j["total_cost"] = data.total_cost.str();

    json beliefs = json::array();
    for (const auto& members : data.beliefs) {
        json bj = json::array();
        for (const auto& [name, q] : members) bj.push_back({name, q});
        beliefs.push_back(std::move(bj));
    }
    j["beliefs"] = std::move(beliefs);

    auto table_json = [](const std::vector<std::optional<std::pair<std::string, std::string>>>&
                             table) {
        json out = json::object();
        for (size_t b = 0; b < table.size(); ++b) {
            if (!table[b].has_value()) continue;
            out[std::to_string(b)] = {{"action", table[b]->first}, {"mode", table[b]->second}};
        }
        return out;
    };
    if (data.kind == "bounded") {
        json layers = json::array();
        for (const auto& layer : data.layers) layers.push_back(table_json(layer));
        j["layers"] = std::move(layers);
    } else {
        j["choices"] = table_json(data.choices);
    }

    json wtg = json::object();
    for (size_t b = 0; b < data.wtg.size(); ++b) {
        if (data.wtg[b].is_infinite()) continue;
        wtg[std::to_string(b)] = data.wtg[b].str();
    }
    j["wtg"] = std::move(wtg);

    return j.dump(2) + "\n";
}

StrategyFileData load_strategy(const std::string& path) {
    return strategy_data_from_json_text(read_text_file(path));
}

void save_strategy(const Strategy& strategy, const BeliefProduct& bp, const std::string& path) {
    write_text_file(path, strategy_data_to_json_text(strategy_to_data(strategy, bp)));
}

std::string dfa_to_json_text(const Dfa& d) {
    json j;
    j["ap"] = d.ap;
    j["initial"] = d.initial;
    json acc = json::array();
    for (int q = 0; q < d.size(); ++q) {
        if (d.accepting[q]) acc.push_back(q);
    }
    j["accepting"] = std::move(acc);
    j["delta"] = d.delta;
    return j.dump(2) + "\n";
}

std::string model_to_dot(const NtsModel& m) {
    std::ostringstream os;
    os << "digraph model {\n  rankdir=LR;\n  __init [shape=point];\n";
    for (size_t s = 0; s < m.states.size(); ++s) {
        os << "  n" << s << " [label=\"" << m.states[s];
        bool first = true;
        for (size_t p = 0; p < m.ap.size(); ++p) {
            if (m.labels[s] & (PropMask(1) << p)) {
                os << (first ? "\\n{" : ",") << m.ap[p];
                first = false;
            }
        }
        if (!first) os << "}";
        os << "\"];\n";
    }
    os << "  __init -> n" << m.init << ";\n";
    for (size_t s = 0; s < m.states.size(); ++s) {
        for (size_t a = 0; a < m.actions.size(); ++a) {
            for (StateId t : m.trans[s][a]) {
                os << "  n" << s << " -> n" << t << " [label=\"" << m.actions[a] << "\"];\n";
            }
        }
    }
    os << "}\n";
    return os.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("cannot write file: " + path);
    out << content;
    if (!out) fail("write failed: " + path);
}

}  // namespace obsmode
