#include "obsmode/belief.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace obsmode {

const ObsSet& BeliefProduct::observation(int b, ModeId m) const {
    if (b < 0 || b >= size()) throw std::out_of_range("observation: bad belief");
    StateId s = product.states[beliefs[b].front()].state;
    const ObsSet& obs = observe(product.model, m, s);
    // Only meaningful when the members agree under m, which holds for the
    // initial singleton and for any belief queried with the mode that formed
    // it (partition classes are uniform by construction).
    for (int pid : beliefs[b]) {
        if (observe(product.model, m, product.states[pid].state) != obs) {
            throw std::logic_error("belief members disagree under the queried mode");
        }
    }
    return obs;
}

std::vector<std::vector<int>> belief_successors(const Product& p,
                                                const std::vector<int>& members, ActionId a,
                                                ModeId m) {
    if (members.empty()) return {};
    // The action must be executable from every member.
    for (int pid : members) {
        if (p.trans[pid][a].empty()) return {};
    }
    std::set<int> post;
    for (int pid : members) {
        post.insert(p.trans[pid][a].begin(), p.trans[pid][a].end());
    }
    // Group by the observation set the mode emits in the successor.
    std::map<ObsSet, std::vector<int>> classes;
    for (int pid : post) {
        const ObsSet& obs = observe(p.model, m, p.states[pid].state);
        classes[obs].push_back(pid);  // post is a set: already sorted ascending
    }
    std::vector<std::vector<int>> out;
    out.reserve(classes.size());
    for (auto& [obs, ids] : classes) out.push_back(std::move(ids));
    // Classes ordered by member list, not by observation set.
    std::sort(out.begin(), out.end());
    return out;
}

BeliefProduct build_belief(const Product& p) {
    BeliefProduct bp;
    bp.product = p;
    const int na = static_cast<int>(p.model.actions.size());
    const int nm = static_cast<int>(p.model.modes.size());

    std::map<std::vector<int>, int> ids;
    auto intern = [&](std::vector<int> members) {
        auto [it, inserted] = ids.emplace(std::move(members), bp.size());
        if (inserted) bp.beliefs.push_back(it->first);
        return it->second;
    };

    bp.init = intern({p.init});
    for (int b = 0; b < bp.size(); ++b) {
        bp.trans.emplace_back(na * nm);
        for (ActionId a = 0; a < na; ++a) {
            for (ModeId m = 0; m < nm; ++m) {
                // Copy: intern() may grow bp.beliefs while classes are added.
                std::vector<int> members = bp.beliefs[b];
                auto classes = belief_successors(p, members, a, m);
                std::vector<int>& out = bp.trans[b][a * nm + m];
                out.reserve(classes.size());
                for (auto& cls : classes) out.push_back(intern(std::move(cls)));
            }
        }
    }
    bp.accepting.resize(bp.size());
    for (int b = 0; b < bp.size(); ++b) {
        const auto& members = bp.beliefs[b];
        bp.accepting[b] = std::all_of(members.begin(), members.end(),
                                      [&](int pid) { return p.accepting[pid]; });
    }
    return bp;
}

BeliefStats belief_stats(const BeliefProduct& bp) {
    BeliefStats st;
    st.state_count = bp.size();
    for (const auto& row : bp.trans) {
        for (const auto& succ : row) {
            st.transition_count += static_cast<long long>(succ.size());
            st.dn = std::max(st.dn, static_cast<int>(succ.size()));
        }
    }
    return st;
}

std::string belief_label(const BeliefProduct& bp, int b) {
    std::string out = "{";
    const auto& members = bp.beliefs[b];
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i) out += ",";
        const ProductState& ps = bp.product.states[members[i]];
        out += "(" + bp.product.model.states[ps.state] + ",q" + std::to_string(ps.dfa_state) + ")";
    }
    return out + "}";
}

std::string belief_to_dot(const BeliefProduct& bp) {
    const int nm = bp.num_modes();
    std::string out = "digraph belief {\n  rankdir=LR;\n  node [shape=circle];\n";
    out += "  init [shape=point];\n";
    for (int b = 0; b < bp.size(); ++b) {
        out += "  b" + std::to_string(b) + " [label=\"" + belief_label(bp, b) + "\"";
        if (bp.accepting[b]) out += " shape=doublecircle";
        out += "];\n";
    }
    out += "  init -> b" + std::to_string(bp.init) + ";\n";
    for (int b = 0; b < bp.size(); ++b) {
        for (ActionId a = 0; a < bp.num_actions(); ++a) {
            for (ModeId m = 0; m < nm; ++m) {
                for (int t : bp.trans[b][a * nm + m]) {
                    out += "  b" + std::to_string(b) + " -> b" + std::to_string(t) + " [label=\"(" +
                           bp.product.model.actions[a] + "," + bp.product.model.modes[m].name +
                           "):" + bp.weight(m).str() + "\"];\n";
                }
            }
        }
    }
    out += "}\n";
    return out;
}

}  // namespace obsmode
