#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "obsmode/dfa.hpp"
#include "obsmode/synthesis.hpp"

namespace obsmode {

// Raised for unreadable files, malformed JSON (the message carries the byte
// offset), schema violations (wrong types, unknown keys, dangling names) and
// models that fail validate_model. The CLI maps it to exit code 2.
class FileFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Model files are JSON documents with exactly the keys
//   states, actions, transitions, init, ap, labels, observations, modes,
//   init_mode
// where transitions is a list of {from, action, to: [state...]}, labels maps
// state -> [prop...] (states with empty label sets may be omitted), and each
// mode is {name, cost, obs: {state -> [observation...]}} with cost either a
// decimal/fraction string ("1", "0.5", "3/2") or a JSON integer. Non-integer
// JSON numbers are rejected: binary floating point cannot hold exact costs.
// Unknown keys are rejected everywhere. Serialization is canonical (sorted
// keys, declared-order name lists, empty entries omitted), so
// load(save(x)) == x.
NtsModel model_from_json_text(const std::string& text);
std::string model_to_json_text(const NtsModel& m);
NtsModel load_model(const std::string& path);
void save_model(const NtsModel& m, const std::string& path);

// A strategy file is self-contained: it records the labeling convention, the
// formula, every belief as its member list of [state name, dfa state] pairs
// in canonical order, and the command tables and values, so it can be bound
// back to a freshly rebuilt belief product and replayed or verified without
// re-running synthesis. Unbounded strategies store one command table under
// "choices"; bounded strategies store one table per remaining-budget layer
// under "layers" (index r applies with r steps left, the last layer covers
// any larger budget).
struct StrategyFileData {
    Labeling labeling = Labeling::Target;
    std::string formula;
    std::string kind;  // "unbounded" or "bounded"
    int bound = -1;    // present in the file only when bounded
    std::vector<std::vector<std::pair<std::string, int>>> beliefs;
    int init_belief = 0;
    // indexed like beliefs; commands carry action/mode names; unbounded only
    std::vector<std::optional<std::pair<std::string, std::string>>> choices;
    // bounded only: one choices-shaped table per layer
    std::vector<std::vector<std::optional<std::pair<std::string, std::string>>>> layers;
    std::vector<ExtCost> wtg;  // infinite entries are omitted from the file
    ExtCost total_cost;
};

StrategyFileData strategy_to_data(const Strategy& strategy, const BeliefProduct& bp);

// Binds file data back onto a belief product: the belief list must match the
// rebuilt product exactly (same canonical order), names must resolve, and
// every command must be offered in its belief. Throws FileFormatError.
Strategy strategy_from_data(const StrategyFileData& data, const BeliefProduct& bp);

StrategyFileData strategy_data_from_json_text(const std::string& text);
std::string strategy_data_to_json_text(const StrategyFileData& data);
StrategyFileData load_strategy(const std::string& path);
void save_strategy(const Strategy& strategy, const BeliefProduct& bp, const std::string& path);

// DFA as JSON: {ap, initial, accepting: [ids], delta: [[successor per
// letter]]}; letters are proposition bitmasks in increasing order.
std::string dfa_to_json_text(const Dfa& d);

std::string model_to_dot(const NtsModel& m);

// Whole-file read/write helpers used by the CLI for reports and DOT dumps.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace obsmode
