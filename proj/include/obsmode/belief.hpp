#pragma once

#include <string>
#include <vector>

#include "obsmode/product.hpp"

namespace obsmode {

// A belief is the set of product states consistent with the observations seen
// so far, stored as a sorted list of product ids. A belief action is a pair
// (control action, observation mode); its weight is the mode's cost. The pair
// is offered only when every member of the belief can execute the control
// action, and its successors are the classes of Post(belief, action)
// partitioned by the observation set the active mode emits in the successor
// state. A belief is accepting when all of its members are accepting.
struct BeliefProduct {
    Product product;
    std::vector<std::vector<int>> beliefs;  // beliefs[b] = sorted product ids
    int init = 0;
    // trans[b][a * modes + m] lists successor belief ids in partition-class
    // order (classes ordered by their member lists); empty means disabled.
    std::vector<std::vector<std::vector<int>>> trans;
    std::vector<bool> accepting;

    int size() const { return static_cast<int>(beliefs.size()); }
    int num_modes() const { return static_cast<int>(product.model.modes.size()); }
    int num_actions() const { return static_cast<int>(product.model.actions.size()); }
    int action_index(ActionId a, ModeId m) const { return a * num_modes() + m; }
    const Rational& weight(ModeId m) const { return product.model.modes[m].cost; }

    // Observation set the members of belief b emit under mode m. Only valid
    // when the members agree under m: true for singletons and for any belief
    // queried with the mode whose partition formed it. Throws when members
    // disagree.
    const ObsSet& observation(int b, ModeId m) const;
};

struct BeliefStats {
    int state_count = 0;
    long long transition_count = 0;  // (belief, belief action, successor) triples
    int dn = 0;                      // largest successor class count
};

// Partition classes of Post(members, action) under mode `m`, ordered by their
// sorted member lists; empty when the action is not offered (some member
// cannot execute it, or `members` is empty). Standalone building block; the
// ids inside classes are product ids.
std::vector<std::vector<int>> belief_successors(const Product& p,
                                                const std::vector<int>& members, ActionId a,
                                                ModeId m);

// Reachable belief product from the singleton initial belief. Canonical
// indexing: breadth first, visiting belief actions in (action, mode) order
// and partition classes in member-list order.
BeliefProduct build_belief(const Product& p);

BeliefStats belief_stats(const BeliefProduct& bp);

std::string belief_to_dot(const BeliefProduct& bp);

// Human-readable member list like "{(s2,q0),(s3,q0)}".
std::string belief_label(const BeliefProduct& bp, int b);

}  // namespace obsmode
