#include "obsmode/synthesis.hpp"

#include <algorithm>
#include <stdexcept>

namespace obsmode {

namespace {

// Worst-case cost of command (a, m) from belief b when every successor class
// already has a value; infinite when the command is disabled or some
// successor is outside the winning set.
ExtCost command_value(const BeliefProduct& bp, const std::vector<ExtCost>& wtg, int b, ActionId a,
                      ModeId m) {
    const auto& succ = bp.trans[b][bp.action_index(a, m)];
    if (succ.empty()) return ExtCost::infinity();
    ExtCost worst(0);
    for (int t : succ) {
        if (wtg[t].is_infinite()) return ExtCost::infinity();
        worst = std::max(worst, wtg[t]);
    }
    return ExtCost(bp.weight(m)) + worst;
}

ExtCost reported_total(const BeliefProduct& bp, const ExtCost& init_wtg) {
    if (init_wtg.is_infinite()) return init_wtg;
    if (bp.product.labeling == Labeling::Target) {
        return ExtCost(bp.weight(bp.product.model.init_mode)) + init_wtg;
    }
    return init_wtg;
}

Strategy make_strategy(const BeliefProduct& bp, const std::string& formula_text,
                       std::string kind, int bound,
                       std::vector<std::optional<std::pair<ActionId, ModeId>>> choice,
                       std::vector<ExtCost> wtg) {
    Strategy s;
    s.labeling = bp.product.labeling;
    s.formula_text = formula_text;
    s.kind = std::move(kind);
    s.bound = bound;
    s.init_belief = bp.init;
    s.choice = std::move(choice);
    s.wtg = std::move(wtg);
    s.total_cost = reported_total(bp, s.wtg[bp.init]);
    return s;
}

}  // namespace

const std::optional<std::pair<ActionId, ModeId>>& Strategy::command_at(int belief,
                                                                       long long remaining) const {
    if (kind == "bounded") {
        long long idx = remaining;
        long long last = static_cast<long long>(layers.size()) - 1;
        if (idx > last) idx = last;
        if (idx < 0) idx = 0;
        return layers[static_cast<std::size_t>(idx)][belief];
    }
    return choice[belief];
}

namespace {

std::string trace_line_unbounded(int iteration, int belief, ActionId a, ModeId m,
                                 const ExtCost& delta, int winning) {
    return "{\"iteration\":" + std::to_string(iteration) + ",\"added_belief\":" +
           std::to_string(belief) + ",\"action\":" + std::to_string(a) + ",\"mode\":" +
           std::to_string(m) + ",\"wtg\":\"" + delta.str() + "\",\"winning_size\":" +
           std::to_string(winning) + "}";
}

}  // namespace

SynthesisResult synth_unbounded(const BeliefProduct& bp, const std::string& formula_text,
                                bool want_trace) {
    const int n = bp.size();
    const int na = bp.num_actions();
    const int nm = bp.num_modes();

    std::vector<bool> won(n, false);
    std::vector<ExtCost> wtg(n, ExtCost::infinity());
    std::vector<std::optional<std::pair<ActionId, ModeId>>> choice(n);
    int winning = 0;
    for (int b = 0; b < n; ++b) {
        if (bp.accepting[b]) {
            won[b] = true;
            wtg[b] = ExtCost(0);
            ++winning;
        }
    }

    SynthesisResult result;
    for (;;) {
        // One belief enters the winning set per round: the scan-order-first
        // candidate whose best command has the strictly smallest cost-to-go.
        int best_b = -1;
        ActionId best_a = -1;
        ModeId best_m = -1;
        ExtCost best = ExtCost::infinity();
        for (int b = 0; b < n; ++b) {
            if (won[b]) continue;
            for (ActionId a = 0; a < na; ++a) {
                for (ModeId m = 0; m < nm; ++m) {
                    ExtCost delta = command_value(bp, wtg, b, a, m);
                    if (delta.is_infinite()) continue;
                    if (best_b == -1 || delta < best) {
                        best_b = b;
                        best_a = a;
                        best_m = m;
                        best = delta;
                    }
                }
            }
        }
        if (best_b == -1) break;
        won[best_b] = true;
        wtg[best_b] = best;
        choice[best_b] = std::make_pair(best_a, best_m);
        ++winning;
        ++result.iterations;
        if (want_trace) {
            result.trace.push_back(
                trace_line_unbounded(result.iterations, best_b, best_a, best_m, best, winning));
        }
    }

    result.strategy =
        make_strategy(bp, formula_text, "unbounded", -1, std::move(choice), std::move(wtg));
    result.feasible = result.strategy.feasible();
    return result;
}

namespace {

struct BoundedState {
    std::vector<ExtCost> wtg;
    std::vector<std::optional<std::pair<ActionId, ModeId>>> choice;
    int rounds_run = 0;     // rounds actually executed (stops early when stable)
    bool stabilized = false;
    std::vector<ExtCost> init_by_round;  // wtg of the initial belief after round i
    // snapshot of the command table after each round (entry 0: before any),
    // collected only when the caller extracts a strategy
    std::vector<std::vector<std::optional<std::pair<ActionId, ModeId>>>> layers;
    std::vector<std::string> trace;
};

// Shared core of synth_bounded and wtg_profile: run up to k_max synchronous
// rounds, recording the initial belief's value after each one.
BoundedState run_bounded(const BeliefProduct& bp, int k_max, bool want_trace,
                         bool want_layers) {
    const int n = bp.size();
    const int na = bp.num_actions();
    const int nm = bp.num_modes();

    BoundedState st;
    st.wtg.assign(n, ExtCost::infinity());
    st.choice.assign(n, std::nullopt);
    for (int b = 0; b < n; ++b) {
        if (bp.accepting[b]) st.wtg[b] = ExtCost(0);
    }
    st.init_by_round.push_back(st.wtg[bp.init]);  // horizon 0
    if (want_layers) st.layers.push_back(st.choice);

    for (int round = 1; round <= k_max; ++round) {
        // Compute phase: all candidate updates read the previous round's
        // values; commits are deferred so the round is synchronous.
        std::vector<std::pair<int, std::pair<ActionId, ModeId>>> improvements;
        std::vector<ExtCost> improved_value;
        for (int b = 0; b < n; ++b) {
            ExtCost delta_min = st.wtg[b];
            ActionId a_min = -1;
            ModeId m_min = -1;
            for (ActionId a = 0; a < na; ++a) {
                for (ModeId m = 0; m < nm; ++m) {
                    ExtCost delta = command_value(bp, st.wtg, b, a, m);
                    if (delta < delta_min) {
                        delta_min = delta;
                        a_min = a;
                        m_min = m;
                    }
                }
            }
            if (a_min != -1) {
                improvements.push_back({b, {a_min, m_min}});
                improved_value.push_back(delta_min);
            }
        }
        // Commit phase: only strict improvements overwrite, so every belief
        // keeps a command consistent with its recorded value.
        for (std::size_t i = 0; i < improvements.size(); ++i) {
            int b = improvements[i].first;
            st.wtg[b] = improved_value[i];
            st.choice[b] = improvements[i].second;
        }
        st.rounds_run = round;
        if (want_trace) {
            int winning = 0;
            for (int b = 0; b < n; ++b) {
                if (st.wtg[b].is_finite()) ++winning;
            }
            st.trace.push_back("{\"iteration\":" + std::to_string(round) + ",\"updated\":" +
                               std::to_string(improvements.size()) + ",\"winning_size\":" +
                               std::to_string(winning) + "}");
        }
        st.init_by_round.push_back(st.wtg[bp.init]);
        if (want_layers) st.layers.push_back(st.choice);
        if (improvements.empty()) {
            st.stabilized = true;
            break;
        }
    }
    if (!st.stabilized && st.rounds_run >= n - 1) st.stabilized = true;
    // Pad: once stable, later horizons repeat the fixpoint value.
    while (static_cast<int>(st.init_by_round.size()) <= k_max) {
        st.init_by_round.push_back(st.init_by_round.back());
    }
    return st;
}

}  // namespace

SynthesisResult synth_bounded(const BeliefProduct& bp, int k, const std::string& formula_text,
                              bool want_trace) {
    if (k < 0) throw std::invalid_argument("synth_bounded: negative bound");
    BoundedState st = run_bounded(bp, k, want_trace, true);
    SynthesisResult result;
    result.iterations = st.rounds_run;
    result.trace = std::move(st.trace);
    result.strategy = make_strategy(bp, formula_text, "bounded", k, {}, std::move(st.wtg));
    result.strategy.layers = std::move(st.layers);
    result.feasible = result.strategy.feasible();
    return result;
}

std::vector<ExtCost> wtg_profile(const BeliefProduct& bp, int k_max) {
    if (k_max < 0) throw std::invalid_argument("wtg_profile: negative bound");
    BoundedState st = run_bounded(bp, k_max, false, false);
    return st.init_by_round;
}

}  // namespace obsmode
