#include <cstdio>
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

BeliefProduct belief_for(const NtsModel& m, const std::string& formula, Labeling lab) {
    Dfa d = compile_to_dfa(parse_formula(formula), m.ap);
    return build_belief(build_product(m, d, lab));
}

// Temporary file path unique to this test binary run.
std::string tmp_path(const char* stem) {
    return std::string("io_test_") + stem + ".json";
}

}  // namespace

TEST_CASE("model JSON round-trips byte for byte") {
    for (const NtsModel& m : {generate_running_example(), generate_grid_casestudy()}) {
        std::string text = model_to_json_text(m);
        NtsModel back = model_from_json_text(text);
        CHECK(model_to_json_text(back) == text);
    }
    for (unsigned seed = 1; seed <= 10; ++seed) {
        std::string text = model_to_json_text(random_instance(seed).model);
        CHECK(model_to_json_text(model_from_json_text(text)) == text);
    }
}

TEST_CASE("model files survive a disk round trip") {
    NtsModel m = generate_running_example();
    std::string path = tmp_path("model");
    save_model(m, path);
    NtsModel back = load_model(path);
    CHECK(model_to_json_text(back) == model_to_json_text(m));
    std::remove(path.c_str());
}

TEST_CASE("loading a missing file is a format error with the path in the message") {
    try {
        load_model("definitely_not_here.json");
        FAIL("expected FileFormatError");
    } catch (const FileFormatError& e) {
        CHECK(std::string(e.what()).find("definitely_not_here") != std::string::npos);
    }
}

TEST_CASE("malformed JSON is rejected with a position") {
    CHECK_THROWS_AS(model_from_json_text("{\"states\": ["), FileFormatError);
    CHECK_THROWS_AS(model_from_json_text(""), FileFormatError);
    CHECK_THROWS_AS(model_from_json_text("null"), FileFormatError);
}

TEST_CASE("unknown keys are rejected everywhere") {
    NtsModel m = generate_running_example();
    std::string text = model_to_json_text(m);
    std::string with_extra = text;
    with_extra.insert(1, "\"extra\": 1, ");
    CHECK_THROWS_AS(model_from_json_text(with_extra), FileFormatError);
}

TEST_CASE("costs: integers and exact strings yes, binary floats no") {
    auto model_with_cost = [](const std::string& cost_literal) {
        return std::string(R"({
          "states": ["x"],
          "actions": ["a"],
          "transitions": [{"from": "x", "action": "a", "to": ["x"]}],
          "init": "x",
          "ap": [],
          "labels": {},
          "observations": [],
          "modes": [{"name": "m", "cost": )") +
               cost_literal + R"(, "obs": {}}],
          "init_mode": "m"
        })";
    };
    CHECK(model_from_json_text(model_with_cost("1")).modes[0].cost == Rational(1));
    CHECK(model_from_json_text(model_with_cost("\"0.5\"")).modes[0].cost == Rational(1, 2));
    CHECK(model_from_json_text(model_with_cost("\"3/2\"")).modes[0].cost == Rational(3, 2));
    CHECK_THROWS_AS(model_from_json_text(model_with_cost("0.5")), FileFormatError);
    CHECK_THROWS_AS(model_from_json_text(model_with_cost("\"-1\"")), FileFormatError);
    CHECK_THROWS_AS(model_from_json_text(model_with_cost("\"x\"")), FileFormatError);
}

TEST_CASE("dangling names in transitions are rejected") {
    std::string text = R"({
      "states": ["x"],
      "actions": ["a"],
      "transitions": [{"from": "y", "action": "a", "to": ["x"]}],
      "init": "x",
      "ap": [],
      "labels": {},
      "observations": [],
      "modes": [{"name": "m", "cost": 0, "obs": {}}],
      "init_mode": "m"
    })";
    CHECK_THROWS_AS(model_from_json_text(text), FileFormatError);
}

TEST_CASE("strategy files round-trip and bind back exactly") {
    NtsModel m = generate_running_example();
    for (Labeling lab : {Labeling::Target, Labeling::Source}) {
        BeliefProduct bp = belief_for(m, "F star", lab);
        for (int bound : {-1, 3}) {
            SynthesisResult r = bound < 0 ? synth_unbounded(bp, "F star")
                                          : synth_bounded(bp, bound, "F star");
            REQUIRE(r.feasible);
            StrategyFileData data = strategy_to_data(r.strategy, bp);
            std::string text = strategy_data_to_json_text(data);
            StrategyFileData parsed = strategy_data_from_json_text(text);
            CHECK(strategy_data_to_json_text(parsed) == text);  // canonical
            Strategy bound_back = strategy_from_data(parsed, bp);
            CHECK(bound_back.labeling == r.strategy.labeling);
            CHECK(bound_back.kind == r.strategy.kind);
            CHECK(bound_back.bound == r.strategy.bound);
            CHECK(bound_back.init_belief == r.strategy.init_belief);
            CHECK(bound_back.total_cost == r.strategy.total_cost);
            CHECK(bound_back.choice == r.strategy.choice);
            CHECK(bound_back.layers == r.strategy.layers);
            for (int b = 0; b < bp.size(); ++b) {
                CHECK(bound_back.wtg[b] == r.strategy.wtg[b]);
            }
            // the file records the labeling convention explicitly
            CHECK(text.find("\"labeling\"") != std::string::npos);
            CHECK(text.find(labeling_name(lab)) != std::string::npos);
            // the horizon is stored under the short key "k", bounded only
            if (bound >= 0) {
                CHECK(text.find("\"k\"") != std::string::npos);
            } else {
                CHECK(text.find("\"k\"") == std::string::npos);
            }
        }
    }
}

TEST_CASE("strategy files survive a disk round trip and verification") {
    NtsModel m = generate_running_example();
    BeliefProduct bp = belief_for(m, "F star", Labeling::Target);
    SynthesisResult r = synth_unbounded(bp, "F star");
    std::string path = tmp_path("strategy");
    save_strategy(r.strategy, bp, path);
    StrategyFileData data = load_strategy(path);
    Strategy back = strategy_from_data(data, bp);
    VerificationReport rep = verify_strategy(bp, back, parse_formula("F star"));
    CHECK(rep.satisfies);
    CHECK(rep.matches_claimed);
    std::remove(path.c_str());
}

TEST_CASE("binding a strategy to the wrong belief product fails") {
    NtsModel m = generate_running_example();
    BeliefProduct tgt = belief_for(m, "F star", Labeling::Target);
    BeliefProduct src = belief_for(m, "F star", Labeling::Source);
    SynthesisResult r = synth_unbounded(tgt, "F star");
    StrategyFileData data = strategy_to_data(r.strategy, tgt);
    CHECK_THROWS_AS(strategy_from_data(data, src), FileFormatError);
}

TEST_CASE("tampered strategy files are rejected") {
    NtsModel m = generate_running_example();
    BeliefProduct bp = belief_for(m, "F star", Labeling::Target);
    SynthesisResult r = synth_unbounded(bp, "F star");
    StrategyFileData data = strategy_to_data(r.strategy, bp);

    StrategyFileData wrong_action = data;
    for (auto& choice : wrong_action.choices) {
        if (choice) choice->first = "no_such_action";
    }
    CHECK_THROWS_AS(strategy_from_data(wrong_action, bp), FileFormatError);

    StrategyFileData wrong_belief = data;
    wrong_belief.beliefs[0][0].first = "s9";
    CHECK_THROWS_AS(strategy_from_data(wrong_belief, bp), FileFormatError);

    StrategyFileData dropped = data;
    dropped.beliefs.pop_back();
    dropped.choices.pop_back();
    dropped.wtg.pop_back();
    CHECK_THROWS_AS(strategy_from_data(dropped, bp), FileFormatError);

    SynthesisResult rb = synth_bounded(bp, 3, "F star");
    StrategyFileData bounded = strategy_to_data(rb.strategy, bp);
    StrategyFileData bad_layer = bounded;
    REQUIRE_FALSE(bad_layer.layers.empty());
    for (auto& choice : bad_layer.layers.back()) {
        if (choice) choice->second = "no_such_mode";
    }
    CHECK_THROWS_AS(strategy_from_data(bad_layer, bp), FileFormatError);

    // a bounded file must carry layers, not a flat choice table
    std::string text = strategy_data_to_json_text(bounded);
    std::string moved = text;
    size_t pos = moved.find("\"layers\"");
    REQUIRE(pos != std::string::npos);
    moved.replace(pos, 8, "\"choices\"");
    CHECK_THROWS_AS(strategy_data_from_json_text(moved), FileFormatError);
}

TEST_CASE("strategy JSON text parse errors are format errors") {
    CHECK_THROWS_AS(strategy_data_from_json_text("{"), FileFormatError);
    CHECK_THROWS_AS(strategy_data_from_json_text("{}"), FileFormatError);
}

TEST_CASE("dfa serialization pins the avoid-until-goal automaton") {
    Dfa d = compile_to_dfa(parse_formula("(! dang) U target"), {"dang", "target"});
    std::string text = dfa_to_json_text(d);
    CHECK(text.find("\"ap\"") != std::string::npos);
    CHECK(text.find("\"delta\"") != std::string::npos);
    CHECK(text.find("\"accepting\"") != std::string::npos);
    // three states, four letters each
    CHECK(d.size() == 3);
    CHECK(d.num_letters() == 4);
}

TEST_CASE("dot rendering of a model names its states and actions") {
    NtsModel m = generate_running_example();
    std::string dot = model_to_dot(m);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("s1") != std::string::npos);
    CHECK(dot.find("a") != std::string::npos);
}

TEST_CASE("text file helpers round trip") {
    std::string path = tmp_path("text");
    write_text_file(path, "line\n");
    CHECK(read_text_file(path) == "line\n");
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_text_file(path), FileFormatError);
}
