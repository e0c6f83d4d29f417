#include "obsmode/verify.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "obsmode/dfa.hpp"

namespace obsmode {

namespace {

struct NodeValue {
    ExtCost cost;
    long long steps = 0;
};

// Lexicographic (cost, steps) comparison; the adversary maximizes.
bool lex_greater(const NodeValue& a, const NodeValue& b) {
    if (a.cost != b.cost) return a.cost > b.cost;
    return a.steps > b.steps;
}

struct NodeInfo {
    int color = 0;  // 1 = on the current branch, 2 = fully explored
    bool terminal = false;  // belief accepting: the strategy stops here
    NodeValue value;
    // argmax successor, kept for witness reconstruction
    int succ_product = -1;
    int succ_belief = -1;
};

// Depth-first exploration of the joint (product state, belief) graph induced
// by playing the strategy, with the adversary resolving both the transition
// non-determinism and (through it) the observation received. Per joint node
// the worst-case remaining (cost, steps) until the strategy terminates in an
// accepting belief is memoized; that is sound because the strategy's command
// depends only on the belief and, for bounded strategies, the remaining step
// budget, which is part of the node key. The residual objective status only
// depends on the automaton component, which two consistency assertions
// re-check against the finite-word semantics on every path actually walked:
//   (1) the effective automaton state accepts exactly when holds_strong
//       accepts the realized label trace,
//   (2) an accepting belief is only ever entered with a satisfied trace.
// A joint node repeating on one branch before termination means the
// adversary can keep the play going forever, so the whole verification
// fails; the same holds when the strategy has no command or a disabled
// command at a reachable non-accepting belief, and for bounded strategies
// when any branch exhausts the budget before acceptance.
struct Verifier {
    const BeliefProduct& bp;
    const Strategy& strategy;
    const FormulaPtr& formula;
    bool bounded;
    std::map<std::tuple<int, int, long long>, NodeInfo> memo;
    std::vector<PropMask> trace;
    bool failed = false;

    const NtsModel& model() const { return bp.product.model; }

    bool automaton_satisfied(int pid) const {
        const ProductState& ps = bp.product.states[pid];
        int q = ps.dfa_state;
        if (bp.product.labeling == Labeling::Source) {
            // the source convention's automaton component lags one label
            // behind the trace; feed the current state's label to compare
            // against trace satisfaction
            q = bp.product.dfa.step(q, model().labels[ps.state]);
        }
        return bp.product.dfa.accepting[q];
    }

    void check_oracles(int pid, int bid) {
        bool by_trace = holds_strong(formula, trace, model().ap);
        bool by_dfa = automaton_satisfied(pid);
        if (by_trace != by_dfa) {
            throw std::logic_error(
                "verification oracle mismatch: compiled automaton disagrees with the "
                "finite-word semantics on a realized trace");
        }
        if (bp.accepting[bid] && !by_trace) {
            throw std::logic_error(
                "verification oracle mismatch: accepting belief entered with an "
                "unsatisfied trace");
        }
    }

    NodeValue visit(int pid, int bid, long long remaining) {
        if (failed) return {ExtCost::infinity(), 0};
        check_oracles(pid, bid);

        auto key = std::make_tuple(pid, bid, remaining);
        auto it = memo.find(key);
        if (it != memo.end()) {
            if (it->second.color == 1) {
                // back edge: the adversary can replay this loop forever
                failed = true;
                return {ExtCost::infinity(), 0};
            }
            return it->second.value;
        }

        NodeInfo& info = memo[key];
        info.color = 1;
        if (bp.accepting[bid]) {
            info.terminal = true;
            info.value = {ExtCost(0), 0};
            info.color = 2;
            return info.value;
        }
        if (bounded && remaining <= 0) {
            failed = true;  // branch ran out of budget before acceptance
            return {ExtCost::infinity(), 0};
        }

        const auto& choice = strategy.command_at(bid, remaining);
        if (!choice.has_value()) {
            failed = true;  // reachable non-accepting belief without a command
            return {ExtCost::infinity(), 0};
        }
        ActionId a = choice->first;
        ModeId m = choice->second;
        const auto& succ_beliefs = bp.trans[bid][bp.action_index(a, m)];
        if (succ_beliefs.empty()) {
            failed = true;  // command not offered in this belief
            return {ExtCost::infinity(), 0};
        }
        const auto& psuccs = bp.product.trans[pid][a];
        if (psuccs.empty()) {
            throw std::logic_error(
                "belief invariant violated: member lacks a successor under an "
                "offered action");
        }

        bool have = false;
        NodeValue best{ExtCost(0), 0};
        for (int p2 : psuccs) {
            const ObsSet& o = observe(model(), m, bp.product.states[p2].state);
            int b2 = -1;
            for (int c : succ_beliefs) {
                if (bp.observation(c, m) == o) {
                    b2 = c;
                    break;
                }
            }
            if (b2 < 0 || !std::binary_search(bp.beliefs[b2].begin(), bp.beliefs[b2].end(), p2)) {
                throw std::logic_error(
                    "belief invariant violated: successor not tracked by any "
                    "partition class");
            }
            trace.push_back(model().labels[bp.product.states[p2].state]);
            NodeValue sub = visit(p2, b2, bounded ? remaining - 1 : remaining);
            trace.pop_back();
            if (failed) return {ExtCost::infinity(), 0};
            NodeValue cand{ExtCost(bp.weight(m)) + sub.cost, 1 + sub.steps};
            // first maximizer in canonical successor order wins ties
            if (!have || lex_greater(cand, best)) {
                have = true;
                best = cand;
                info.succ_product = p2;
                info.succ_belief = b2;
            }
        }
        info.value = best;
        info.color = 2;
        return best;
    }
};

}  // namespace

VerificationReport verify_strategy(const BeliefProduct& bp, const Strategy& strategy,
                                   const FormulaPtr& formula) {
    bool bounded = strategy.kind == "bounded";
    bool covers;
    if (bounded) {
        covers = !strategy.layers.empty();
        for (const auto& layer : strategy.layers) {
            covers = covers && static_cast<int>(layer.size()) == bp.size();
        }
    } else {
        covers = static_cast<int>(strategy.choice.size()) == bp.size();
    }
    if (!covers || static_cast<int>(strategy.wtg.size()) != bp.size()) {
        throw std::invalid_argument("strategy does not cover this belief product");
    }
    if (strategy.labeling != bp.product.labeling) {
        throw std::invalid_argument("strategy and belief product use different labeling conventions");
    }

    Verifier v{bp, strategy, formula, bounded, {}, {}, false};
    const NtsModel& model = bp.product.model;
    v.trace.push_back(model.labels[model.init]);
    long long root_budget = bounded ? strategy.bound : -1;
    NodeValue root = v.visit(bp.product.init, bp.init, root_budget);

    Rational init_cost = model.modes[model.init_mode].cost;
    VerificationReport report;
    if (v.failed) {
        report.satisfies = false;
        report.worst_cost = ExtCost::infinity();
        report.worst_steps = 0;
    } else {
        report.satisfies = true;
        report.worst_cost = ExtCost(init_cost) + root.cost;
        report.worst_steps = root.steps;
        int pid = bp.product.init;
        int bid = bp.init;
        long long budget = root_budget;
        while (true) {
            const NodeInfo& info = v.memo.at({pid, bid, budget});
            if (info.terminal || info.succ_product < 0) break;
            const auto& choice = *strategy.command_at(bid, budget);
            StateId s = bp.product.states[info.succ_product].state;
            report.witness.push_back(
                WitnessStep{s, choice.first, choice.second, observe(model, choice.second, s)});
            pid = info.succ_product;
            bid = info.succ_belief;
            if (bounded) --budget;
        }
    }

    // The recorded total omits the initial mode's cost under the source
    // convention by definition; level the comparison.
    ExtCost claimed = strategy.total_cost;
    if (strategy.labeling == Labeling::Source && claimed.is_finite()) {
        claimed = claimed + ExtCost(init_cost);
    }
    report.matches_claimed =
        report.satisfies ? claimed == report.worst_cost : claimed.is_infinite();
    return report;
}

std::vector<ExtCost> backward_induction_value(const BeliefProduct& bp, int rounds) {
    int n = bp.size();
    std::vector<ExtCost> v(n, ExtCost::infinity());
    for (int b = 0; b < n; ++b) {
        if (bp.accepting[b]) v[b] = ExtCost(0);
    }
    int limit = rounds >= 0 ? rounds : 2 * n + 4;
    for (int round = 1; round <= limit; ++round) {
        std::vector<ExtCost> nv = v;
        bool changed = false;
        for (int b = 0; b < n; ++b) {
            if (bp.accepting[b]) continue;
            ExtCost best = ExtCost::infinity();
            for (int idx = 0; idx < static_cast<int>(bp.trans[b].size()); ++idx) {
                const auto& succs = bp.trans[b][idx];
                if (succs.empty()) continue;
                ModeId m = idx % bp.num_modes();
                ExtCost worst(0);
                for (int c : succs) {
                    if (v[c] > worst) worst = v[c];
                }
                ExtCost val = ExtCost(bp.weight(m)) + worst;
                if (val < best) best = val;
            }
            if (best < nv[b]) {
                nv[b] = best;
                changed = true;
            }
        }
        v = std::move(nv);
        if (!changed && rounds < 0) return v;
    }
    if (rounds < 0) {
        throw std::logic_error("value iteration failed to stabilize");
    }
    return v;
}

namespace {

// Formula shapes are drawn with an explicit sequence of rng() calls (never
// inside one expression, since argument evaluation order would then be
// unspecified) so a seed reproduces the same instance everywhere.
FormulaPtr gen_formula(std::mt19937& rng, int depth, int n_props) {
    auto atom_name = [&rng, n_props]() {
        return "p" + std::to_string(rng() % static_cast<unsigned>(n_props));
    };
    if (depth == 0) {
        switch (rng() % 3u) {
            case 0: return f_atom(atom_name());
            case 1: return f_not_atom(atom_name());
            default: return f_true();
        }
    }
    switch (rng() % 8u) {
        case 0:
            return f_atom(atom_name());
        case 1:
            return f_not_atom(atom_name());
        case 2: {
            FormulaPtr a = gen_formula(rng, depth - 1, n_props);
            FormulaPtr b = gen_formula(rng, depth - 1, n_props);
            return f_and({a, b});
        }
        case 3: {
            FormulaPtr a = gen_formula(rng, depth - 1, n_props);
            FormulaPtr b = gen_formula(rng, depth - 1, n_props);
            return f_or({a, b});
        }
        case 4:
            return f_next(gen_formula(rng, depth - 1, n_props));
        case 5:
            return f_eventually(gen_formula(rng, depth - 1, n_props));
        case 6: {
            FormulaPtr a = gen_formula(rng, depth - 1, n_props);
            FormulaPtr b = gen_formula(rng, depth - 1, n_props);
            return f_until(a, b);
        }
        default: {
            int k = static_cast<int>(rng() % 4u);
            FormulaPtr body = gen_formula(rng, depth - 1, n_props);
            return f_bounded_eventually(body, k);
        }
    }
}

}  // namespace

RandomInstance random_instance(unsigned seed) {
    std::mt19937 rng(seed);
    NtsModel m;

    int n_states = 2 + static_cast<int>(rng() % 5u);
    int n_actions = 1 + static_cast<int>(rng() % 3u);
    int n_modes = 1 + static_cast<int>(rng() % 3u);
    int n_props = 1 + static_cast<int>(rng() % 2u);
    int n_obs = 1 + static_cast<int>(rng() % 4u);

    for (int s = 0; s < n_states; ++s) m.states.push_back("s" + std::to_string(s));
    for (int a = 0; a < n_actions; ++a) m.actions.push_back("a" + std::to_string(a));
    for (int p = 0; p < n_props; ++p) m.ap.push_back("p" + std::to_string(p));
    for (int o = 0; o < n_obs; ++o) m.observations.push_back("o" + std::to_string(o));

    m.trans.assign(n_states, std::vector<std::vector<StateId>>(n_actions));
    for (int s = 0; s < n_states; ++s) {
        for (int a = 0; a < n_actions; ++a) {
            if (rng() % 4u == 0) continue;  // action disabled here
            int cnt = 1 + static_cast<int>(rng() % 2u);
            std::set<StateId> targets;
            for (int i = 0; i < cnt; ++i) {
                targets.insert(static_cast<StateId>(rng() % static_cast<unsigned>(n_states)));
            }
            m.trans[s][a].assign(targets.begin(), targets.end());
        }
        bool dead = true;
        for (int a = 0; a < n_actions; ++a) {
            if (!m.trans[s][a].empty()) dead = false;
        }
        if (dead) m.trans[s][0] = {s};  // keep every run extendable
    }

    m.init = static_cast<StateId>(rng() % static_cast<unsigned>(n_states));
    for (int s = 0; s < n_states; ++s) {
        m.labels.push_back(static_cast<PropMask>(rng() % (1u << n_props)));
    }

    static const Rational kCosts[5] = {Rational(0), Rational(1), Rational(2), Rational(1, 2),
                                       Rational(3, 2)};
    for (int mi = 0; mi < n_modes; ++mi) {
        ObservationMode mode;
        mode.name = "m" + std::to_string(mi);
        mode.cost = kCosts[rng() % 5u];
        mode.obs.resize(n_states);
        for (int s = 0; s < n_states; ++s) {
            for (int o = 0; o < n_obs; ++o) {
                if (rng() % 2u == 1) mode.obs[s].push_back(o);
            }
        }
        m.modes.push_back(std::move(mode));
    }
    m.init_mode = static_cast<ModeId>(rng() % static_cast<unsigned>(n_modes));

    FormulaPtr formula;
    for (int attempt = 0; attempt < 64 && !formula; ++attempt) {
        FormulaPtr cand = gen_formula(rng, 3, n_props);
        try {
            compile_to_dfa(cand, m.ap);
            formula = cand;
        } catch (const FormulaCompileError&) {
            // empty language (e.g. plain "false"); draw again
        }
    }
    if (!formula) formula = f_eventually(f_atom("p0"));

    return RandomInstance{std::move(m), std::move(formula)};
}

}  // namespace obsmode
