#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "obsmode/dfa.hpp"
#include "obsmode/model.hpp"

namespace obsmode {

// Which state's label feeds the automaton on a transition (s,q) -a-> (s',q').
//
//   Source: q' = delta(q, L(s)); the product starts at (s_init, q0).
//           The automaton consumes the label of the state being left, so
//           acceptance registers one step after the satisfying state is
//           reached.
//   Target: q' = delta(q, L(s')); the product starts at
//           (s_init, delta(q0, L(s_init))). The automaton consumes the label
//           of the state being entered, so the automaton component always
//           reflects the full label trace including the current state.
//
// Both are implemented because published state counts for benchmark models
// are only reproducible under one or the other; target is the default used
// by synthesis.
enum class Labeling { Source, Target };

Labeling parse_labeling(const std::string& text);          // "source" | "target"
std::string labeling_name(Labeling labeling);

struct ProductState {
    StateId state;
    int dfa_state;
    bool operator==(const ProductState& o) const {
        return state == o.state && dfa_state == o.dfa_state;
    }
};

// Reachable fragment of NTS x DFA. States are indexed canonically: breadth
// first from the initial product state, visiting actions in declaration order
// and successors in model state order. Successor lists are sorted by product
// id. The model and automaton are stored by value so the product is
// self-contained.
struct Product {
    NtsModel model;
    Dfa dfa;
    Labeling labeling = Labeling::Target;
    std::vector<ProductState> states;
    int init = 0;
    std::vector<std::vector<std::vector<int>>> trans;  // trans[p][a], sorted
    std::vector<bool> accepting;

    int size() const { return static_cast<int>(states.size()); }
};

struct ProductStats {
    int state_count = 0;
    long long transition_count = 0;  // number of (state, action, successor) triples
    int dn = 0;                      // largest successor set over (state, action)
};

// Throws std::invalid_argument when the model fails validate_model or the
// DFA alphabet does not match the model's proposition list.
Product build_product(const NtsModel& m, const Dfa& dfa, Labeling labeling);

ProductStats product_stats(const Product& p);

std::string product_to_dot(const Product& p);

}  // namespace obsmode
