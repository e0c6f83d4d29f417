#pragma once

#include <string>
#include <vector>

#include "obsmode/synthesis.hpp"

namespace obsmode {

// One transition of the worst-case witness: the command issued, the successor
// the adversary picked, and the observation that resulted.
struct WitnessStep {
    StateId state;  // model state entered
    ActionId action;
    ModeId mode;
    ObsSet obs;
};

struct VerificationReport {
    // True when every adversarial resolution of the non-determinism reaches
    // satisfaction of the objective (checked against the finite-word
    // semantics of the formula on the realized label trace, not against the
    // synthesized automaton).
    bool satisfies = false;
    // Worst-case accumulated observation cost over all adversary behaviors,
    // including the initial configuration's mode cost. Infinite when
    // satisfies is false.
    ExtCost worst_cost;
    // Steps (model transitions) of the costliest branch; among branches of
    // maximal cost the maximal step count. 0 when satisfied initially.
    long long worst_steps = 0;
    // Whether worst_cost agrees with the strategy's recorded total; under the
    // source convention the recorded total omits the initial mode's cost by
    // definition, which is accounted for here.
    bool matches_claimed = false;
    // A branch attaining (worst_cost, worst_steps), as model-level steps.
    std::vector<WitnessStep> witness;
};

// Exhaustively plays the strategy against every adversary resolution by
// searching the joint (product state, belief) graph; for bounded strategies
// the remaining step budget joins the search state and a branch that runs
// out of budget before acceptance fails the verification. Satisfaction is
// decided by holds_strong on the realized label trace at node entry
// (earliest satisfaction); the automaton component is merely asserted to
// agree. An unsatisfied joint node that repeats along one branch means the
// adversary can loop forever, hence failure. Maximization is lexicographic
// in (cost, steps) with the first maximizer in canonical successor order
// kept, so the report is deterministic.
VerificationReport verify_strategy(const BeliefProduct& bp, const Strategy& strategy,
                                   const FormulaPtr& formula);

// Textbook finite-horizon value recursion on the belief product, as an
// independent cross-check of the synthesis engine:
//   v_0(b)   = 0 when b accepting, infinity otherwise
//   v_i(b)   = 0 when b accepting, else min over offered (a,m) of
//              cost(m) + max over successor classes of v_{i-1}.
// Returns the value of every belief. rounds < 0 means: iterate to the
// fixpoint (reached within |B| - 1 rounds).
std::vector<ExtCost> backward_induction_value(const BeliefProduct& bp, int rounds);

// Deterministic pseudo-random model + objective generator for differential
// testing. Small by construction: up to 6 states, 3 actions, 3 modes, 2
// propositions, 4 observation names; mode costs from {0, 1/2, 1, 3/2, 2};
// every state keeps at least one enabled action (dead ends are closed with a
// self-loop); the formula is rejection-sampled until it compiles to a DFA
// with a non-empty language.
struct RandomInstance {
    NtsModel model;
    FormulaPtr formula;
};

RandomInstance random_instance(unsigned seed);

}  // namespace obsmode
