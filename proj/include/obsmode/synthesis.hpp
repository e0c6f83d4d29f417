#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "obsmode/belief.hpp"

namespace obsmode {

// A belief-indexed strategy. Unbounded strategies are memoryless: one
// (action, mode) command per belief in `choice`, or nothing (losing beliefs,
// and accepting beliefs, where the objective is already guaranteed). Bounded
// strategies additionally depend on the remaining step budget: `layers[r][b]`
// is the command at belief b with r steps left, and `choice` stays empty. A
// single per-belief table cannot carry a horizon guarantee: the same belief
// may need a fast expensive plan when the budget is short and a slow cheap
// one when it is not, and collapsing the rounds of the bounded solver into
// one table silently swaps in the slow plan (the realized run then exceeds k
// and undercuts the claimed cost). Layers stop at the round where the values
// stabilize; command_at clamps larger budgets to the last layer.
// wtg[b] is the worst-case cost to go from b at full horizon; infinite
// outside the winning region.
struct Strategy {
    Labeling labeling = Labeling::Target;
    std::string formula_text;
    std::string kind;  // "unbounded" or "bounded"
    int bound = -1;    // only meaningful for kind == "bounded"
    int init_belief = 0;
    std::vector<std::optional<std::pair<ActionId, ModeId>>> choice;  // unbounded only
    std::vector<std::vector<std::optional<std::pair<ActionId, ModeId>>>> layers;  // bounded only
    std::vector<ExtCost> wtg;
    // Worst-case total observation cost. Under the target convention this is
    // the initial mode's cost plus wtg of the initial belief, accounting for
    // the observation made in the initial configuration; under source it is
    // the raw wtg of the initial belief (see README on the conventions).
    ExtCost total_cost;

    bool feasible() const { return total_cost.is_finite(); }

    // The command to play at `belief` with `remaining` steps of budget left;
    // ignored for unbounded strategies (pass -1 there by convention).
    const std::optional<std::pair<ActionId, ModeId>>& command_at(int belief,
                                                                 long long remaining) const;
};

struct SynthesisResult {
    bool feasible = false;
    Strategy strategy;
    int iterations = 0;
    // JSON-lines trace of the run, one line per iteration, when requested.
    std::vector<std::string> trace;
};

// Worst-case-optimal strategy for reaching an accepting belief, no horizon
// bound. Dijkstra-style: grow a winning set from the accepting beliefs, each
// round committing the one candidate belief whose best fully-explored command
// has the smallest worst-case cost-to-go. Ties are broken deterministically:
// candidates are scanned by belief index, then action declaration order, then
// mode order, and only a strictly smaller value displaces the current best.
// The loop runs until no candidate is left, so wtg is the full fixpoint on
// the winning region. Infeasible (result.feasible == false) when the initial
// belief never enters the winning set.
SynthesisResult synth_unbounded(const BeliefProduct& bp, const std::string& formula_text,
                                bool want_trace = false);

// Worst-case-optimal strategy among those that reach an accepting belief
// within k belief transitions. Bellman-Ford-style: k rounds of synchronous
// value updates against the previous round's values; a belief's command and
// value are only overwritten when a round finds a strict improvement. The
// command table after round r is kept as layer r of the strategy: with r
// steps of budget left the round-r table is guaranteed to reach acceptance
// within r steps at worst-case cost exactly the round-r value, which the
// final table alone is not (a later round may re-stamp a belief with a
// cheaper plan that needs more steps). Rounds stop early once values
// stabilize (they must by round |B|-1). Throws std::invalid_argument for
// k < 0.
SynthesisResult synth_bounded(const BeliefProduct& bp, int k, const std::string& formula_text,
                              bool want_trace = false);

// wtg of the initial belief for every horizon 0..k_max, computed from a
// single bounded run: entry k is the value after k rounds; once values
// stabilize the remaining entries repeat the fixpoint. profile[k] is exactly
// synth_bounded(bp, k)'s initial wtg.
std::vector<ExtCost> wtg_profile(const BeliefProduct& bp, int k_max);

}  // namespace obsmode
