#include "obsmode/product.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace obsmode {

Labeling parse_labeling(const std::string& text) {
    if (text == "source") return Labeling::Source;
    if (text == "target") return Labeling::Target;
    throw std::invalid_argument("unknown labeling convention: " + text);
}

std::string labeling_name(Labeling labeling) {
    return labeling == Labeling::Source ? "source" : "target";
}

Product build_product(const NtsModel& m, const Dfa& dfa, Labeling labeling) {
    auto violations = validate_model(m);
    if (!violations.empty()) {
        throw std::invalid_argument("invalid model: " + violations.front());
    }
    if (dfa.ap != m.ap) {
        throw std::invalid_argument(
            "DFA alphabet does not match the model's atomic propositions");
    }

    Product p;
    p.model = m;
    p.dfa = dfa;
    p.labeling = labeling;

    std::map<std::pair<StateId, int>, int> ids;
    auto intern = [&](StateId s, int q) {
        auto [it, inserted] = ids.emplace(std::make_pair(s, q), p.size());
        if (inserted) p.states.push_back({s, q});
        return it->second;
    };

    int q0 = labeling == Labeling::Source ? dfa.initial
                                          : dfa.step(dfa.initial, m.labels[m.init]);
    p.init = intern(m.init, q0);

    const int na = static_cast<int>(m.actions.size());
    // Discovery order is breadth first because intern() appends new states
    // while this loop walks indices in order.
    for (int pid = 0; pid < p.size(); ++pid) {
        ProductState ps = p.states[pid];
        p.trans.emplace_back(na);
        for (ActionId a = 0; a < na; ++a) {
            std::vector<int>& out = p.trans[pid][a];
            for (StateId succ : m.trans[ps.state][a]) {
                int q = ps.dfa_state;
                int qn = labeling == Labeling::Source ? dfa.step(q, m.labels[ps.state])
                                                      : dfa.step(q, m.labels[succ]);
                out.push_back(intern(succ, qn));
            }
            std::sort(out.begin(), out.end());
        }
    }
    p.accepting.resize(p.size());
    for (int pid = 0; pid < p.size(); ++pid) {
        p.accepting[pid] = dfa.accepting[p.states[pid].dfa_state];
    }
    return p;
}

ProductStats product_stats(const Product& p) {
    ProductStats st;
    st.state_count = p.size();
    for (const auto& row : p.trans) {
        for (const auto& succ : row) {
            st.transition_count += static_cast<long long>(succ.size());
            st.dn = std::max(st.dn, static_cast<int>(succ.size()));
        }
    }
    return st;
}

std::string product_to_dot(const Product& p) {
    std::string out = "digraph product {\n  rankdir=LR;\n  node [shape=circle];\n";
    out += "  init [shape=point];\n";
    for (int pid = 0; pid < p.size(); ++pid) {
        const ProductState& ps = p.states[pid];
        out += "  p" + std::to_string(pid) + " [label=\"(" + p.model.states[ps.state] + ",q" +
               std::to_string(ps.dfa_state) + ")\"";
        if (p.accepting[pid]) out += " shape=doublecircle";
        out += "];\n";
    }
    out += "  init -> p" + std::to_string(p.init) + ";\n";
    for (int pid = 0; pid < p.size(); ++pid) {
        for (std::size_t a = 0; a < p.trans[pid].size(); ++a) {
            for (int t : p.trans[pid][a]) {
                out += "  p" + std::to_string(pid) + " -> p" + std::to_string(t) + " [label=\"" +
                       p.model.actions[a] + "\"];\n";
            }
        }
    }
    out += "}\n";
    return out;
}

}  // namespace obsmode
