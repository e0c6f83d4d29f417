// Command line front end. Every subcommand prints a single JSON document to
// stdout (simulate and fuzz print JSON lines), errors go to stderr as
// {"errors": [...]}. Exit codes: 0 success, 1 objective infeasible or a
// check failed, 2 malformed input.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "obsmode/belief.hpp"
#include "obsmode/casestudy.hpp"
#include "obsmode/dfa.hpp"
#include "obsmode/formula.hpp"
#include "obsmode/io.hpp"
#include "obsmode/model.hpp"
#include "obsmode/product.hpp"
#include "obsmode/runtime.hpp"
#include "obsmode/synthesis.hpp"
#include "obsmode/verify.hpp"

using nlohmann::json;
using namespace obsmode;

namespace {

void emit_errors(const std::vector<std::string>& messages) {
    std::cerr << json{{"errors", messages}}.dump() << "\n";
}

json obs_names(const NtsModel& m, const ObsSet& obs) {
    json out = json::array();
    for (ObsId o : obs) out.push_back(m.observations[o]);
    return out;
}

json command_json(const NtsModel& m, const std::optional<std::pair<ActionId, ModeId>>& cmd) {
    if (!cmd) return nullptr;
    return json{{"action", m.actions[cmd->first]}, {"mode", m.modes[cmd->second].name}};
}

json stats_json(const Product& product, const BeliefProduct& bp) {
    ProductStats ps = product_stats(product);
    BeliefStats bs = belief_stats(bp);
    return json{
        {"product_states", ps.state_count},
        {"product_transitions", ps.transition_count},
        {"product_dn", ps.dn},
        {"belief_states", bs.state_count},
        {"belief_transitions", bs.transition_count},
        {"belief_dn", bs.dn},
    };
}

// Everything the analysis subcommands need, built in one go.
struct Instance {
    NtsModel model;
    FormulaPtr formula;
    Dfa dfa;
    Product product;
    BeliefProduct bp;
};

Instance build_instance(NtsModel model, const std::string& formula_text, Labeling labeling) {
    Instance inst;
    inst.model = std::move(model);
    inst.formula = parse_formula(formula_text);
    inst.dfa = compile_to_dfa(inst.formula, inst.model.ap);
    inst.product = build_product(inst.model, inst.dfa, labeling);
    inst.bp = build_belief(inst.product);
    return inst;
}

// Total worst-case cost for a given initial-belief cost-to-go, mirroring how
// Strategy::total_cost is defined per convention: the target convention
// charges the initial mode's observation, the source convention folds that
// step into the transition costs already.
ExtCost total_from_wtg(const NtsModel& m, Labeling labeling, const ExtCost& wtg) {
    if (labeling == Labeling::Target) return ExtCost(m.modes[m.init_mode].cost) + wtg;
    return wtg;
}

int run_synth(const std::string& model_path, const std::string& formula_text, int bound,
              const std::string& out_path, bool want_trace, Labeling labeling) {
    Instance inst = build_instance(load_model(model_path), formula_text, labeling);
    SynthesisResult result = bound >= 0 ? synth_bounded(inst.bp, bound, formula_text, want_trace)
                                        : synth_unbounded(inst.bp, formula_text, want_trace);
    const Strategy& st = result.strategy;
    json report{
        {"command", "synth"},
        {"labeling", labeling_name(labeling)},
        {"formula", to_string(inst.formula)},
        {"kind", st.kind},
        {"feasible", result.feasible},
        {"total_cost", st.total_cost.str()},
        {"wtg_init", st.wtg[st.init_belief].str()},
        {"first_command", command_json(inst.model, st.command_at(st.init_belief, st.bound))},
        {"iterations", result.iterations},
        {"stats", stats_json(inst.product, inst.bp)},
    };
    if (bound >= 0) report["bound"] = bound;
    if (!out_path.empty() && result.feasible) {
        save_strategy(st, inst.bp, out_path);
        report["strategy_file"] = out_path;
    }
    if (want_trace) {
        for (const std::string& line : result.trace) std::cerr << line << "\n";
    }
    std::cout << report.dump(2) << "\n";
    return result.feasible ? 0 : 1;
}

int run_verify(const std::string& model_path, const std::string& strategy_path) {
    NtsModel model = load_model(model_path);
    StrategyFileData data = load_strategy(strategy_path);
    Instance inst = build_instance(std::move(model), data.formula, data.labeling);
    Strategy strategy = strategy_from_data(data, inst.bp);
    VerificationReport report = verify_strategy(inst.bp, strategy, inst.formula);
    json witness = json::array();
    for (const WitnessStep& step : report.witness) {
        witness.push_back(json{
            {"state", inst.model.states[step.state]},
            {"action", inst.model.actions[step.action]},
            {"mode", inst.model.modes[step.mode].name},
            {"obs", obs_names(inst.model, step.obs)},
        });
    }
    json out{
        {"command", "verify"},
        {"labeling", labeling_name(data.labeling)},
        {"formula", data.formula},
        {"kind", data.kind},
        {"satisfies", report.satisfies},
        {"worst_cost", report.worst_cost.str()},
        {"worst_steps", report.worst_steps},
        {"claimed_total", data.total_cost.str()},
        {"matches_claimed", report.matches_claimed},
        {"witness", witness},
    };
    if (data.kind == "bounded") out["bound"] = data.bound;
    std::cout << out.dump(2) << "\n";
    return report.satisfies && report.matches_claimed ? 0 : 1;
}

struct RunRecord {
    bool satisfied = false;
    bool truncated = false;
    long long steps = 0;
    Rational cost;
    json trace = json::array();
};

void print_run(int index, const RunRecord& rec) {
    json line{
        {"run", index},       {"satisfied", rec.satisfied}, {"truncated", rec.truncated},
        {"steps", rec.steps}, {"cost", rec.cost.str()},     {"trace", rec.trace},
    };
    std::cout << line.dump() << "\n";
}

json trace_entry(const NtsModel& m, ActionId a, ModeId mode, StateId next_state,
                 const ObsSet& obs) {
    return json{
        {"action", m.actions[a]},
        {"mode", m.modes[mode].name},
        {"state", m.states[next_state]},
        {"obs", obs_names(m, obs)},
    };
}

RunRecord play_random(const Instance& inst, const Strategy& strategy, std::mt19937& rng,
                      long long max_steps) {
    const NtsModel& m = inst.model;
    Session session = start_session(inst.bp, strategy);
    StateId state = m.init;
    RunRecord rec;
    while (session.status == SessionStatus::Running && rec.steps < max_steps) {
        auto [a, mode] = next_command(session);
        std::vector<StateId> succs = post(m, state, a);
        std::uniform_int_distribution<std::size_t> pick(0, succs.size() - 1);
        state = succs[pick(rng)];
        const ObsSet& obs = observe(m, mode, state);
        feed_observation(session, obs);
        rec.steps += 1;
        rec.trace.push_back(trace_entry(m, a, mode, state, obs));
    }
    rec.satisfied = session.status == SessionStatus::Satisfied;
    rec.truncated = session.status == SessionStatus::Running;
    rec.cost = session.accumulated;
    return rec;
}

struct ExhaustiveState {
    const Instance* inst = nullptr;
    long long max_steps = 0;
    long long max_runs = 0;
    long long emitted = 0;
    bool capped = false;
    bool all_satisfied = true;
    ExtCost worst_cost = ExtCost(Rational(0));
    long long worst_steps = 0;
};

void play_exhaustive(ExhaustiveState& ex, const Session& session, StateId state, long long steps,
                     const json& trace) {
    if (ex.emitted >= ex.max_runs) {
        ex.capped = true;
        return;
    }
    const NtsModel& m = ex.inst->model;
    if (session.status != SessionStatus::Running || steps >= ex.max_steps) {
        RunRecord rec;
        rec.satisfied = session.status == SessionStatus::Satisfied;
        rec.truncated = session.status == SessionStatus::Running;
        rec.steps = steps;
        rec.cost = session.accumulated;
        rec.trace = trace;
        print_run(static_cast<int>(ex.emitted), rec);
        ex.emitted += 1;
        ex.all_satisfied = ex.all_satisfied && rec.satisfied;
        ExtCost cost{rec.cost};
        if (cost > ex.worst_cost || (cost == ex.worst_cost && steps > ex.worst_steps)) {
            ex.worst_cost = cost;
            ex.worst_steps = steps;
        }
        return;
    }
    auto [a, mode] = next_command(session);
    for (StateId next : post(m, state, a)) {
        Session branch = session;
        const ObsSet& obs = observe(m, mode, next);
        feed_observation(branch, obs);
        json extended = trace;
        extended.push_back(trace_entry(m, a, mode, next, obs));
        play_exhaustive(ex, branch, next, steps + 1, extended);
    }
}

int run_simulate(const std::string& model_path, const std::string& strategy_path,
                 const std::string& adversary, int runs, long long seed, long long max_steps,
                 long long max_runs) {
    NtsModel model = load_model(model_path);
    StrategyFileData data = load_strategy(strategy_path);
    Instance inst = build_instance(std::move(model), data.formula, data.labeling);
    Strategy strategy = strategy_from_data(data, inst.bp);
    if (max_steps <= 0) max_steps = 10LL * inst.bp.size() + 10;

    bool all_satisfied = true;
    ExtCost worst_cost = ExtCost(Rational(0));
    long long worst_steps = 0;
    long long emitted = 0;
    bool capped = false;
    if (adversary == "random") {
        std::mt19937 rng(static_cast<std::uint32_t>(seed));
        for (int i = 0; i < runs; ++i) {
            RunRecord rec = play_random(inst, strategy, rng, max_steps);
            print_run(i, rec);
            all_satisfied = all_satisfied && rec.satisfied;
            ExtCost cost{rec.cost};
            if (cost > worst_cost || (cost == worst_cost && rec.steps > worst_steps)) {
                worst_cost = cost;
                worst_steps = rec.steps;
            }
            emitted += 1;
        }
    } else {
        ExhaustiveState ex;
        ex.inst = &inst;
        ex.max_steps = max_steps;
        ex.max_runs = max_runs;
        play_exhaustive(ex, start_session(inst.bp, strategy), inst.model.init, 0, json::array());
        all_satisfied = ex.all_satisfied;
        worst_cost = ex.worst_cost;
        worst_steps = ex.worst_steps;
        emitted = ex.emitted;
        capped = ex.capped;
    }
    json summary{
        {"runs", emitted},
        {"adversary", adversary},
        {"all_satisfied", all_satisfied},
        {"worst_cost", worst_cost.str()},
        {"worst_steps", worst_steps},
    };
    if (adversary == "random") summary["seed"] = seed;
    if (capped) summary["runs_capped"] = true;
    std::cout << summary.dump() << "\n";
    return all_satisfied && !capped ? 0 : 1;
}

int run_inspect(const std::string& model_path, const std::string& formula_text, bool with_belief,
                const std::string& dot_prefix, Labeling labeling) {
    NtsModel model = load_model(model_path);
    long long transitions = 0;
    int dn = 0;
    for (const auto& per_state : model.trans) {
        for (const auto& succs : per_state) {
            transitions += static_cast<long long>(succs.size());
            dn = std::max(dn, static_cast<int>(succs.size()));
        }
    }
    json modes = json::array();
    for (const ObservationMode& mode : model.modes) {
        modes.push_back(json{{"name", mode.name}, {"cost", mode.cost.str()}});
    }
    json out{
        {"command", "inspect"},
        {"model",
         json{
             {"states", static_cast<int>(model.states.size())},
             {"actions", static_cast<int>(model.actions.size())},
             {"transitions", transitions},
             {"dn", dn},
             {"init", model.states[model.init]},
             {"ap", model.ap},
             {"observations", static_cast<int>(model.observations.size())},
             {"modes", modes},
             {"init_mode", model.modes[model.init_mode].name},
         }},
    };
    json dot_files = json::array();
    if (!dot_prefix.empty()) {
        write_text_file(dot_prefix + ".model.dot", model_to_dot(model));
        dot_files.push_back(dot_prefix + ".model.dot");
    }
    if (!formula_text.empty()) {
        Instance inst = build_instance(std::move(model), formula_text, labeling);
        out["labeling"] = labeling_name(labeling);
        out["formula"] = to_string(inst.formula);
        json accepting = json::array();
        for (int q = 0; q < inst.dfa.size(); ++q) {
            if (inst.dfa.accepting[q]) accepting.push_back(q);
        }
        out["dfa"] = json{{"states", inst.dfa.size()},
                          {"initial", inst.dfa.initial},
                          {"accepting", accepting}};
        ProductStats ps = product_stats(inst.product);
        out["product"] = json{{"states", ps.state_count},
                              {"transitions", ps.transition_count},
                              {"dn", ps.dn}};
        if (with_belief) {
            BeliefStats bs = belief_stats(inst.bp);
            out["belief"] = json{{"states", bs.state_count},
                                 {"transitions", bs.transition_count},
                                 {"dn", bs.dn}};
        }
        if (!dot_prefix.empty()) {
            write_text_file(dot_prefix + ".dfa.dot", dfa_to_dot(inst.dfa));
            dot_files.push_back(dot_prefix + ".dfa.dot");
            write_text_file(dot_prefix + ".product.dot", product_to_dot(inst.product));
            dot_files.push_back(dot_prefix + ".product.dot");
            if (with_belief) {
                write_text_file(dot_prefix + ".belief.dot", belief_to_dot(inst.bp));
                dot_files.push_back(dot_prefix + ".belief.dot");
            }
        }
    } else if (with_belief) {
        throw FileFormatError("--belief requires --formula");
    }
    if (!dot_files.empty()) out["dot_files"] = dot_files;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_compile_formula(const std::string& formula_text, std::vector<std::string> ap,
                        const std::string& dot_path) {
    FormulaPtr formula = parse_formula(formula_text);
    if (ap.empty()) ap = formula_atoms(formula);
    Dfa dfa = compile_to_dfa(formula, ap);
    if (!dot_path.empty()) write_text_file(dot_path, dfa_to_dot(dfa));
    std::cout << dfa_to_json_text(dfa) << "\n";
    return 0;
}

int run_casestudy(const std::string& name, const std::string& out_path) {
    NtsModel model = name == "grid" ? generate_grid_casestudy() : generate_running_example();
    if (out_path.empty()) {
        std::cout << model_to_json_text(model) << "\n";
    } else {
        save_model(model, out_path);
        std::cout << json{{"command", "casestudy"}, {"name", name}, {"file", out_path}}.dump()
                  << "\n";
    }
    return 0;
}

// Differential check of one generated instance: the synthesized cost-to-go
// table must coincide with plain backward induction at every horizon, the
// horizon |B|-1 run must already be the fixpoint, and every feasible strategy
// must survive independent verification.
std::string check_seed(unsigned seed, Labeling labeling, json& line) {
    RandomInstance ri = random_instance(seed);
    Instance inst = build_instance(ri.model, to_string(ri.formula), labeling);
    int beliefs = inst.bp.size();
    line["states"] = static_cast<int>(ri.model.states.size());
    line["beliefs"] = beliefs;
    line["formula"] = to_string(ri.formula);

    std::vector<ExtCost> fix = backward_induction_value(inst.bp, -1);
    SynthesisResult unbounded = synth_unbounded(inst.bp, to_string(ri.formula));
    for (int b = 0; b < beliefs; ++b) {
        if (unbounded.strategy.wtg[b] != fix[b]) {
            return "unbounded wtg mismatch at belief " + std::to_string(b) + ": " +
                   unbounded.strategy.wtg[b].str() + " vs " + fix[b].str();
        }
    }
    if (unbounded.feasible) {
        VerificationReport rep = verify_strategy(inst.bp, unbounded.strategy, inst.formula);
        if (!rep.satisfies || !rep.matches_claimed) return "unbounded strategy failed verification";
    }
    for (int k = 0; k < beliefs; ++k) {
        std::vector<ExtCost> vk = backward_induction_value(inst.bp, k);
        SynthesisResult bounded = synth_bounded(inst.bp, k, to_string(ri.formula));
        for (int b = 0; b < beliefs; ++b) {
            if (bounded.strategy.wtg[b] != vk[b]) {
                return "bounded wtg mismatch at k=" + std::to_string(k) + " belief " +
                       std::to_string(b) + ": " + bounded.strategy.wtg[b].str() + " vs " +
                       vk[b].str();
            }
        }
        if (bounded.feasible) {
            VerificationReport rep = verify_strategy(inst.bp, bounded.strategy, inst.formula);
            if (!rep.satisfies || !rep.matches_claimed) {
                return "bounded strategy failed verification at k=" + std::to_string(k);
            }
        }
    }
    SynthesisResult last = synth_bounded(inst.bp, beliefs - 1, to_string(ri.formula));
    if (last.strategy.wtg[inst.bp.init] != unbounded.strategy.wtg[inst.bp.init]) {
        return "horizon |B|-1 does not reach the unbounded value";
    }
    return "";
}

int run_fuzz(const std::string& seeds_text, int count, Labeling labeling) {
    unsigned base = 1;
    if (const char* env = std::getenv("OBSMODE_SEED")) {
        base = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
    }
    unsigned first = base;
    unsigned last = base + static_cast<unsigned>(count) - 1;
    if (!seeds_text.empty()) {
        auto dots = seeds_text.find("..");
        if (dots == std::string::npos) {
            first = last = static_cast<unsigned>(std::stoul(seeds_text));
        } else {
            first = static_cast<unsigned>(std::stoul(seeds_text.substr(0, dots)));
            last = static_cast<unsigned>(std::stoul(seeds_text.substr(dots + 2)));
        }
        if (last < first) throw FileFormatError("empty seed range: " + seeds_text);
    }
    long long failures = 0;
    for (unsigned seed = first; seed <= last; ++seed) {
        json line{{"seed", seed}};
        std::string mismatch = check_seed(seed, labeling, line);
        line["ok"] = mismatch.empty();
        if (!mismatch.empty()) {
            line["mismatch"] = mismatch;
            failures += 1;
        }
        std::cout << line.dump() << "\n";
    }
    json summary{{"seeds", static_cast<long long>(last - first + 1)},
                 {"failures", failures},
                 {"labeling", labeling_name(labeling)}};
    std::cout << summary.dump() << "\n";
    return failures == 0 ? 0 : 1;
}

int run_sweep(const std::string& model_path, const std::string& formula_text, int k_max,
              Labeling labeling) {
    Instance inst = build_instance(load_model(model_path), formula_text, labeling);
    std::vector<ExtCost> profile = wtg_profile(inst.bp, k_max);
    json entries = json::array();
    int min_feasible = -1;
    for (int k = 0; k <= k_max; ++k) {
        entries.push_back(json{
            {"k", k},
            {"wtg", profile[k].str()},
            {"total_cost", total_from_wtg(inst.model, labeling, profile[k]).str()},
        });
        if (min_feasible < 0 && profile[k].is_finite()) min_feasible = k;
    }
    json out{
        {"command", "sweep"},
        {"labeling", labeling_name(labeling)},
        {"formula", to_string(inst.formula)},
        {"k_max", k_max},
        {"profile", entries},
        {"min_feasible_k", min_feasible < 0 ? json(nullptr) : json(min_feasible)},
    };
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"worst-case optimal observation-mode strategies for non-deterministic systems"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string labeling_text = "target";
    app.add_option("--labeling", labeling_text,
                   "product labeling convention: whether a step is judged by the label of its "
                   "source or its target state")
        ->check(CLI::IsMember({"source", "target"}));

    auto* synth = app.add_subcommand("synth", "synthesize a worst-case optimal strategy");
    std::string synth_model, synth_formula, synth_out;
    int synth_bound = -1;
    bool synth_trace = false;
    synth->add_option("model", synth_model, "model JSON file")->required();
    synth->add_option("--formula", synth_formula, "objective (syntactically co-safe)")->required();
    synth->add_option("--bound", synth_bound, "horizon in belief transitions (omit: unbounded)");
    synth->add_option("--out", synth_out, "write the strategy file here");
    synth->add_flag("--trace", synth_trace, "emit per-iteration JSON lines on stderr");

    auto* verify = app.add_subcommand("verify", "exhaustively check a strategy file");
    std::string verify_model, verify_strategy_path;
    verify->add_option("model", verify_model, "model JSON file")->required();
    verify->add_option("strategy", verify_strategy_path, "strategy JSON file")->required();

    auto* simulate = app.add_subcommand("simulate", "play a strategy against an adversary");
    std::string sim_model, sim_strategy, sim_adversary = "random";
    int sim_runs = 10;
    long long sim_seed = -1, sim_max_steps = 0, sim_max_runs = 100000;
    simulate->add_option("model", sim_model, "model JSON file")->required();
    simulate->add_option("strategy", sim_strategy, "strategy JSON file")->required();
    simulate->add_option("--adversary", sim_adversary, "random or exhaustive")
        ->check(CLI::IsMember({"random", "exhaustive"}));
    simulate->add_option("--runs", sim_runs, "number of random runs");
    simulate->add_option("--seed", sim_seed, "random adversary seed (default: OBSMODE_SEED or 0)");
    simulate->add_option("--max-steps", sim_max_steps, "step cap per run (default 10|B|+10)");
    simulate->add_option("--max-runs", sim_max_runs, "cap on exhaustively enumerated runs");

    auto* inspect = app.add_subcommand("inspect", "structural statistics and DOT dumps");
    std::string ins_model, ins_formula, ins_dot;
    bool ins_belief = false;
    inspect->add_option("model", ins_model, "model JSON file")->required();
    inspect->add_option("--formula", ins_formula, "also build the automaton and the product");
    inspect->add_flag("--belief", ins_belief, "also build the belief product (needs --formula)");
    inspect->add_option("--dot", ins_dot, "write <prefix>.{model,dfa,product,belief}.dot");

    auto* compile = app.add_subcommand("compile-formula", "formula to minimal DFA as JSON");
    std::string cf_formula, cf_dot;
    std::vector<std::string> cf_ap;
    compile->add_option("formula", cf_formula, "objective text")->required();
    compile->add_option("--ap", cf_ap, "alphabet (default: the formula's propositions)")
        ->delimiter(',');
    compile->add_option("--dot", cf_dot, "also write a Graphviz rendering here");

    auto* casestudy = app.add_subcommand("casestudy", "emit a bundled example model");
    std::string cs_name, cs_out;
    casestudy->add_option("name", cs_name, "running or grid")
        ->required()
        ->check(CLI::IsMember({"running", "grid"}));
    casestudy->add_option("--out", cs_out, "write to a file instead of stdout");

    auto* fuzz = app.add_subcommand("fuzz", "differential check on random instances");
    std::string fuzz_seeds;
    int fuzz_count = 50;
    fuzz->add_option("--seeds", fuzz_seeds, "seed range A..B (default: OBSMODE_SEED, count seeds)");
    fuzz->add_option("--count", fuzz_count, "number of seeds when --seeds is not given");

    auto* sweep = app.add_subcommand("sweep", "initial cost-to-go for every horizon 0..k");
    std::string sweep_model, sweep_formula;
    int sweep_kmax = 0;
    sweep->add_option("model", sweep_model, "model JSON file")->required();
    sweep->add_option("--formula", sweep_formula, "objective (syntactically co-safe)")->required();
    sweep->add_option("--kmax", sweep_kmax, "largest horizon to report")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit_errors({e.what()});
        return 2;
    }

    try {
        Labeling labeling = parse_labeling(labeling_text);
        if (*synth) {
            return run_synth(synth_model, synth_formula, synth_bound, synth_out, synth_trace,
                             labeling);
        }
        if (*verify) return run_verify(verify_model, verify_strategy_path);
        if (*simulate) {
            if (sim_seed < 0) {
                const char* env = std::getenv("OBSMODE_SEED");
                sim_seed = env ? std::strtoll(env, nullptr, 10) : 0;
            }
            return run_simulate(sim_model, sim_strategy, sim_adversary, sim_runs, sim_seed,
                                sim_max_steps, sim_max_runs);
        }
        if (*inspect) return run_inspect(ins_model, ins_formula, ins_belief, ins_dot, labeling);
        if (*compile) return run_compile_formula(cf_formula, cf_ap, cf_dot);
        if (*casestudy) return run_casestudy(cs_name, cs_out);
        if (*fuzz) return run_fuzz(fuzz_seeds, fuzz_count, labeling);
        if (*sweep) return run_sweep(sweep_model, sweep_formula, sweep_kmax, labeling);
    } catch (const FileFormatError& e) {
        emit_errors({e.what()});
        return 2;
    } catch (const FormulaCompileError& e) {
        emit_errors({e.what()});
        return 2;
    } catch (const std::invalid_argument& e) {
        emit_errors({e.what()});
        return 2;
    } catch (const std::exception& e) {
        emit_errors({e.what()});
        return 2;
    }
    return 0;
}
