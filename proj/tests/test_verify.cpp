#include <set>
#include <string>

#include "doctest.h"
#include "obsmode/belief.hpp"
#include "obsmode/casestudy.hpp"
#include "obsmode/dfa.hpp"
#include "obsmode/formula.hpp"
#include "obsmode/io.hpp"
#include "obsmode/synthesis.hpp"
#include "obsmode/verify.hpp"

using namespace obsmode;

namespace {

struct Built {
    FormulaPtr formula;
    BeliefProduct bp;
};

Built build(const NtsModel& m, const std::string& text, Labeling lab) {
    Built out;
    out.formula = parse_formula(text);
    Dfa d = compile_to_dfa(out.formula, m.ap);
    out.bp = build_belief(build_product(m, d, lab));
    return out;
}

}  // namespace

TEST_CASE("the optimal running-example strategy verifies at cost one, three steps") {
    NtsModel m = generate_running_example();
    Built bt = build(m, "F star", Labeling::Target);
    SynthesisResult r = synth_unbounded(bt.bp, "F star");
    VerificationReport rep = verify_strategy(bt.bp, r.strategy, bt.formula);
    CHECK(rep.satisfies);
    CHECK(rep.worst_cost == ExtCost{Rational(1)});
    CHECK(rep.worst_steps == 3);
    CHECK(rep.matches_claimed);
    REQUIRE(rep.witness.size() == 3);
    // witness steps replay consistently: each observation is exactly what
    // the active mode emits in the state entered
    for (const WitnessStep& st : rep.witness) {
        CHECK(observe(m, st.mode, st.state) == st.obs);
    }
    CHECK(rep.witness[0].mode == m.mode_id("m2"));
    CHECK(m.labels[rep.witness.back().state] == 1);  // ends in the goal
}

TEST_CASE("the two-step bounded strategy verifies at cost two, two steps") {
    NtsModel m = generate_running_example();
    Built bt = build(m, "F star", Labeling::Target);
    SynthesisResult r = synth_bounded(bt.bp, 2, "F star");
    VerificationReport rep = verify_strategy(bt.bp, r.strategy, bt.formula);
    CHECK(rep.satisfies);
    CHECK(rep.worst_cost == ExtCost{Rational(2)});
    CHECK(rep.worst_steps == 2);
    CHECK(rep.matches_claimed);
}

TEST_CASE("under the source convention the extra registration step is counted") {
    NtsModel m = generate_running_example();
    Built bt = build(m, "F star", Labeling::Source);
    SynthesisResult r = synth_unbounded(bt.bp, "F star");
    VerificationReport rep = verify_strategy(bt.bp, r.strategy, bt.formula);
    CHECK(rep.satisfies);
    CHECK(rep.worst_cost == ExtCost{Rational(1)});
    CHECK(rep.worst_steps == 4);
    CHECK(rep.matches_claimed);
}

TEST_CASE("a blinded strategy is rejected with an infinite worst case") {
    NtsModel m = generate_running_example();
    Built bt = build(m, "F star", Labeling::Target);
    SynthesisResult r = synth_unbounded(bt.bp, "F star");
    // sabotage: replace the informative first reading with the blind mode;
    // the two rectangles stay merged and the adversary can keep the run in
    // the non-goal branch forever
    Strategy bad = r.strategy;
    ActionId a = m.action_id("a");
    ModeId blind = m.mode_id("m1");
    bad.choice[bt.bp.init] = std::make_pair(a, blind);
    VerificationReport rep = verify_strategy(bt.bp, bad, bt.formula);
    CHECK_FALSE(rep.satisfies);
    CHECK(rep.worst_cost.is_infinite());
}

TEST_CASE("a strategy claiming the wrong total is flagged") {
    NtsModel m = generate_running_example();
    Built bt = build(m, "F star", Labeling::Target);
    SynthesisResult r = synth_unbounded(bt.bp, "F star");
    Strategy lying = r.strategy;
    lying.total_cost = ExtCost{Rational(7)};
    VerificationReport rep = verify_strategy(bt.bp, lying, bt.formula);
    CHECK(rep.satisfies);  // the play itself is fine
    CHECK_FALSE(rep.matches_claimed);
}

TEST_CASE("satisfaction is judged by the trace, not the bookkeeping automaton") {
    // strong semantics on the realized label sequence: the witness of the
    // bounded running-example strategy must be a good prefix of the formula
    NtsModel m = generate_running_example();
    Built bt = build(m, "F star", Labeling::Target);
    SynthesisResult r = synth_bounded(bt.bp, 2, "F star");
    VerificationReport rep = verify_strategy(bt.bp, r.strategy, bt.formula);
    std::vector<PropMask> word = {m.labels[m.init]};
    for (const WitnessStep& st : rep.witness) word.push_back(m.labels[st.state]);
    CHECK(holds_strong(bt.formula, word, m.ap));
}

TEST_CASE("backward induction: horizon zero wins only where already accepting") {
    NtsModel m = generate_running_example();
    Built bt = build(m, "F star", Labeling::Target);
    std::vector<ExtCost> v0 = backward_induction_value(bt.bp, 0);
    for (int b = 0; b < bt.bp.size(); ++b) {
        if (bt.bp.accepting[b]) {
            CHECK(v0[b] == ExtCost{Rational(0)});
        } else {
            CHECK(v0[b].is_infinite());
        }
    }
    // the fixpoint agrees with unbounded synthesis
    std::vector<ExtCost> fix = backward_induction_value(bt.bp, -1);
    SynthesisResult r = synth_unbounded(bt.bp, "F star");
    for (int b = 0; b < bt.bp.size(); ++b) CHECK(fix[b] == r.strategy.wtg[b]);
}

TEST_CASE("verification of every bounded running-example strategy matches its claim") {
    NtsModel m = generate_running_example();
    for (Labeling lab : {Labeling::Target, Labeling::Source}) {
        Built bt = build(m, "F star", lab);
        for (int k = 0; k <= bt.bp.size(); ++k) {
            SynthesisResult r = synth_bounded(bt.bp, k, "F star");
            if (!r.feasible) continue;
            VerificationReport rep = verify_strategy(bt.bp, r.strategy, bt.formula);
            CHECK(rep.satisfies);
            CHECK(rep.matches_claimed);
            CHECK(rep.worst_steps <= k);
        }
    }
}

TEST_CASE("random instances are deterministic and well formed") {
    for (unsigned seed : {1u, 2u, 3u, 17u, 99u}) {
        RandomInstance a = random_instance(seed);
        RandomInstance b = random_instance(seed);
        CHECK(model_to_json_text(a.model) == model_to_json_text(b.model));
        CHECK(to_string(a.formula) == to_string(b.formula));
        CHECK(validate_model(a.model).empty());
        CHECK(a.model.states.size() <= 6);
        CHECK(a.model.actions.size() <= 3);
        CHECK(a.model.modes.size() <= 3);
        CHECK(a.model.ap.size() <= 2);
        // the formula always has good prefixes
        CHECK_NOTHROW(compile_to_dfa(a.formula, a.model.ap));
    }
    // different seeds give different instances at least somewhere
    std::set<std::string> texts;
    for (unsigned seed = 1; seed <= 10; ++seed) {
        texts.insert(model_to_json_text(random_instance(seed).model));
    }
    CHECK(texts.size() > 1);
}

TEST_CASE("random instances: synthesized strategies always survive verification") {
    for (unsigned seed = 30; seed <= 45; ++seed) {
        CAPTURE(seed);
        RandomInstance ri = random_instance(seed);
        Built bt = build(ri.model, to_string(ri.formula), Labeling::Target);
        SynthesisResult r = synth_unbounded(bt.bp, to_string(ri.formula));
        if (!r.feasible) continue;
        VerificationReport rep = verify_strategy(bt.bp, r.strategy, bt.formula);
        CHECK(rep.satisfies);
        CHECK(rep.matches_claimed);
    }
}
