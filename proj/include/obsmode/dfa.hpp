#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "obsmode/formula.hpp"
#include "obsmode/model.hpp"

namespace obsmode {

// Deterministic finite automaton over proposition bitmasks. The alphabet is
// every subset of `ap`, encoded as a PropMask (bit i set = ap[i] holds). The
// transition table is complete. States are numbered canonically: breadth
// first from the initial state, exploring letters in increasing mask order,
// so structurally equal automata are identical.
struct Dfa {
    std::vector<std::string> ap;
    int initial = 0;
    std::vector<std::vector<int>> delta;  // delta[state][letter]
    std::vector<bool> accepting;

    int size() const { return static_cast<int>(delta.size()); }
    int num_letters() const { return 1 << static_cast<int>(ap.size()); }

    int step(int state, PropMask letter) const { return delta[state][letter]; }

    // State reached from the initial state after reading the word.
    int run(const std::vector<PropMask>& word) const;

    bool accepts(const std::vector<PropMask>& word) const { return accepting[run(word)]; }
};

class FormulaCompileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Compiles a formula to the minimal complete DFA whose language is exactly
// {w : holds_strong(w, f, ap)}, i.e. the good prefixes of f. Built by taking
// derivatives of the formula per letter until closure, then minimizing by
// partition refinement. Acceptance is extension closed: accepting states only
// lead to accepting states. Throws FormulaCompileError when the language is
// empty (no accepting state, e.g. "false") since such an objective can never
// be enforced, and when the formula uses a proposition missing from `ap` or
// `ap` has more than 12 entries (the alphabet is exponential in |ap|).
Dfa compile_to_dfa(const FormulaPtr& f, const std::vector<std::string>& ap);

// Graphviz rendering; parallel edges are merged and labeled with letter sets.
std::string dfa_to_dot(const Dfa& d);

}  // namespace obsmode
