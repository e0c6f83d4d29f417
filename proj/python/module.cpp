// Python bindings for the main operations: build or load a model, synthesize
// a strategy, verify it, sweep horizons, compile formulas. Costs cross the
// boundary as decimal/fraction strings, strategies as their canonical JSON
// file text, so the python view matches the CLI exactly.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "obsmode/belief.hpp"
#include "obsmode/casestudy.hpp"
#include "obsmode/dfa.hpp"
#include "obsmode/formula.hpp"
#include "obsmode/io.hpp"
#include "obsmode/model.hpp"
#include "obsmode/product.hpp"
#include "obsmode/synthesis.hpp"
#include "obsmode/verify.hpp"

namespace py = pybind11;
using namespace obsmode;

namespace {

struct Built {
    FormulaPtr formula;
    Product product;
    BeliefProduct bp;
};

Built build(const NtsModel& model, const std::string& formula_text, const std::string& labeling) {
    Built out;
    out.formula = parse_formula(formula_text);
    Dfa dfa = compile_to_dfa(out.formula, model.ap);
    out.product = build_product(model, dfa, parse_labeling(labeling));
    out.bp = build_belief(out.product);
    return out;
}

py::object command_obj(const NtsModel& m, const std::optional<std::pair<ActionId, ModeId>>& cmd) {
    if (!cmd) return py::none();
    return py::make_tuple(m.actions[cmd->first], m.modes[cmd->second].name);
}

PropMask mask_of(const std::vector<std::string>& props, const std::vector<std::string>& ap) {
    PropMask mask = 0;
    for (const std::string& p : props) {
        auto it = std::find(ap.begin(), ap.end(), p);
        if (it == ap.end()) throw std::invalid_argument("unknown proposition: " + p);
        mask |= PropMask(1) << (it - ap.begin());
    }
    return mask;
}

}  // namespace

PYBIND11_MODULE(_obsmode, m) {
    m.doc() = "worst-case optimal observation-mode strategies";

    py::class_<NtsModel>(m, "Model")
        .def_property_readonly("num_states",
                               [](const NtsModel& x) { return (int)x.states.size(); })
        .def_property_readonly("num_actions",
                               [](const NtsModel& x) { return (int)x.actions.size(); })
        .def_property_readonly("num_modes", [](const NtsModel& x) { return (int)x.modes.size(); })
        .def_property_readonly("ap", [](const NtsModel& x) { return x.ap; })
        .def("to_json", &model_to_json_text)
        .def("__repr__", [](const NtsModel& x) {
            return "<Model states=" + std::to_string(x.states.size()) +
                   " actions=" + std::to_string(x.actions.size()) +
                   " modes=" + std::to_string(x.modes.size()) + ">";
        });

    m.def("model_from_json", &model_from_json_text, py::arg("text"),
          "parse a model from its JSON text");
    m.def("running_example", &generate_running_example);
    m.def("grid_casestudy", &generate_grid_casestudy);

    m.def(
        "synth",
        [](const NtsModel& model, const std::string& formula, int bound,
           const std::string& labeling) {
            Built bt = build(model, formula, labeling);
            SynthesisResult result = bound >= 0 ? synth_bounded(bt.bp, bound, formula)
                                                : synth_unbounded(bt.bp, formula);
            const Strategy& st = result.strategy;
            py::dict out;
            out["feasible"] = result.feasible;
            out["kind"] = st.kind;
            out["labeling"] = labeling;
            out["total_cost"] = st.total_cost.str();
            out["wtg_init"] = st.wtg[st.init_belief].str();
            out["first_command"] = command_obj(model, st.command_at(st.init_belief, st.bound));
            out["iterations"] = result.iterations;
            if (result.feasible) {
                out["strategy_json"] = strategy_data_to_json_text(strategy_to_data(st, bt.bp));
            }
            return out;
        },
        py::arg("model"), py::arg("formula"), py::arg("bound") = -1,
        py::arg("labeling") = "target",
        "synthesize a strategy; bound < 0 means no horizon bound");

    m.def(
        "verify",
        [](const NtsModel& model, const std::string& strategy_json) {
            StrategyFileData data = strategy_data_from_json_text(strategy_json);
            Built bt = build(model, data.formula, labeling_name(data.labeling));
            Strategy st = strategy_from_data(data, bt.bp);
            VerificationReport rep = verify_strategy(bt.bp, st, bt.formula);
            py::dict out;
            out["satisfies"] = rep.satisfies;
            out["worst_cost"] = rep.worst_cost.str();
            out["worst_steps"] = rep.worst_steps;
            out["matches_claimed"] = rep.matches_claimed;
            return out;
        },
        py::arg("model"), py::arg("strategy_json"),
        "exhaustively play a strategy file against every adversary behavior");

    m.def(
        "sweep",
        [](const NtsModel& model, const std::string& formula, int k_max,
           const std::string& labeling) {
            Built bt = build(model, formula, labeling);
            std::vector<std::string> out;
            for (const ExtCost& c : wtg_profile(bt.bp, k_max)) out.push_back(c.str());
            return out;
        },
        py::arg("model"), py::arg("formula"), py::arg("k_max"), py::arg("labeling") = "target",
        "initial-belief cost-to-go for every horizon 0..k_max, as strings");

    m.def(
        "stats",
        [](const NtsModel& model, const std::string& formula, const std::string& labeling) {
            Built bt = build(model, formula, labeling);
            ProductStats ps = product_stats(bt.product);
            BeliefStats bs = belief_stats(bt.bp);
            py::dict out;
            out["product_states"] = ps.state_count;
            out["product_transitions"] = ps.transition_count;
            out["belief_states"] = bs.state_count;
            out["belief_transitions"] = bs.transition_count;
            out["belief_dn"] = bs.dn;
            return out;
        },
        py::arg("model"), py::arg("formula"), py::arg("labeling") = "target",
        "product and belief-product sizes for a model and objective");

    m.def(
        "compile_formula",
        [](const std::string& formula, std::optional<std::vector<std::string>> ap) {
            FormulaPtr f = parse_formula(formula);
            return dfa_to_json_text(compile_to_dfa(f, ap ? *ap : formula_atoms(f)));
        },
        py::arg("formula"), py::arg("ap") = std::nullopt,
        "minimal good-prefix DFA of the formula, as JSON text");

    m.def(
        "holds_strong",
        [](const std::string& formula, const std::vector<std::vector<std::string>>& word,
           const std::vector<std::string>& ap) {
            FormulaPtr f = parse_formula(formula);
            std::vector<PropMask> masks;
            for (const auto& letter : word) masks.push_back(mask_of(letter, ap));
            return holds_strong(f, masks, ap);
        },
        py::arg("formula"), py::arg("word"), py::arg("ap"),
        "strong finite-word satisfaction; word is a list of proposition-name lists");
}
