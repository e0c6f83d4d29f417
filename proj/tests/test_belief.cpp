#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "obsmode/belief.hpp"
#include "obsmode/casestudy.hpp"
#include "obsmode/dfa.hpp"
#include "obsmode/formula.hpp"
#include "obsmode/verify.hpp"

using namespace obsmode;

namespace {

BeliefProduct running_belief(Labeling labeling) {
    NtsModel m = generate_running_example();
    Dfa d = compile_to_dfa(parse_formula("F star"), m.ap);
    return build_belief(build_product(m, d, labeling));
}

// Reference construction written against the documented contract only:
// group the union of member successors by the observation set the mode
// emits in the successor's model state, classes sorted by member list.
std::vector<std::vector<int>> naive_classes(const Product& p, const std::vector<int>& members,
                                            ActionId a, ModeId mode) {
    std::vector<int> all;
    for (int pid : members) {
        const auto& succ = p.trans[pid][a];
        if (succ.empty()) return {};  // some member cannot execute the action
        all.insert(all.end(), succ.begin(), succ.end());
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    std::map<ObsSet, std::vector<int>> by_obs;
    for (int pid : all) {
        by_obs[observe(p.model, mode, p.states[pid].state)].push_back(pid);
    }
    std::vector<std::vector<int>> classes;
    for (auto& [obs, cls] : by_obs) classes.push_back(cls);
    std::sort(classes.begin(), classes.end());
    return classes;
}

// Breadth-first reference expansion of the whole belief product, mirroring
// the documented canonical order, built on naive_classes.
struct NaiveBelief {
    std::vector<std::vector<int>> beliefs;
    std::vector<std::vector<std::vector<int>>> trans;
    std::vector<bool> accepting;
};

NaiveBelief naive_belief(const Product& p) {
    int num_actions = (int)p.model.actions.size();
    int num_modes = (int)p.model.modes.size();
    NaiveBelief nb;
    std::map<std::vector<int>, int> index;
    std::vector<int> start = {p.init};
    index[start] = 0;
    nb.beliefs.push_back(start);
    for (int b = 0; b < (int)nb.beliefs.size(); ++b) {
        nb.trans.emplace_back(num_actions * num_modes);
        for (ActionId a = 0; a < num_actions; ++a) {
            for (ModeId m = 0; m < num_modes; ++m) {
                for (const auto& cls : naive_classes(p, nb.beliefs[b], a, m)) {
                    auto [it, fresh] = index.try_emplace(cls, (int)nb.beliefs.size());
                    if (fresh) nb.beliefs.push_back(cls);
                    nb.trans[b][a * num_modes + m].push_back(it->second);
                }
            }
        }
    }
    for (const auto& members : nb.beliefs) {
        bool all = true;
        for (int pid : members) all = all && p.accepting[pid];
        nb.accepting.push_back(all);
    }
    return nb;
}

}  // namespace

TEST_CASE("running example belief sizes per labeling") {
    BeliefProduct tgt = running_belief(Labeling::Target);
    BeliefStats ts = belief_stats(tgt);
    CHECK(ts.state_count == 12);
    CHECK(ts.transition_count == 54);
    CHECK(ts.dn == 3);

    BeliefProduct src = running_belief(Labeling::Source);
    BeliefStats ss = belief_stats(src);
    CHECK(ss.state_count == 16);
    CHECK(ss.transition_count == 66);
}

TEST_CASE("initial belief is the singleton of the initial product state") {
    BeliefProduct bp = running_belief(Labeling::Target);
    CHECK(bp.init == 0);
    CHECK(bp.beliefs[bp.init] == std::vector<int>{bp.product.init});
}

TEST_CASE("the cheap sensor merges the two rectangles, the rich one splits them") {
    BeliefProduct bp = running_belief(Labeling::Target);
    const NtsModel& m = bp.product.model;
    ActionId a = m.action_id("a");
    // action a from the start under the shape-only mode: the two rectangle
    // states are indistinguishable and land in one class, the diamond alone
    const auto& shape_classes = bp.trans[bp.init][bp.action_index(a, m.mode_id("m2"))];
    REQUIRE(shape_classes.size() == 2);
    std::multiset<size_t> sizes;
    for (int b : shape_classes) sizes.insert(bp.beliefs[b].size());
    CHECK(sizes == std::multiset<size_t>{1, 2});
    // the shape+color mode separates all three successors
    const auto& full_classes = bp.trans[bp.init][bp.action_index(a, m.mode_id("m3"))];
    CHECK(full_classes.size() == 3);
    for (int b : full_classes) CHECK(bp.beliefs[b].size() == 1);
    // the blind mode learns nothing: one merged class
    const auto& blind_classes = bp.trans[bp.init][bp.action_index(a, m.mode_id("m1"))];
    REQUIRE(blind_classes.size() == 1);
    CHECK(bp.beliefs[blind_classes[0]].size() == 3);
}

TEST_CASE("belief actions are offered only when every member can act") {
    BeliefProduct bp = running_belief(Labeling::Target);
    const NtsModel& m = bp.product.model;
    for (int b = 0; b < bp.size(); ++b) {
        for (ActionId a = 0; a < bp.num_actions(); ++a) {
            bool everyone = true;
            for (int pid : bp.beliefs[b]) {
                everyone = everyone && !bp.product.trans[pid][a].empty();
            }
            for (ModeId mo = 0; mo < bp.num_modes(); ++mo) {
                CHECK(bp.trans[b][bp.action_index(a, mo)].empty() == !everyone);
            }
        }
    }
    (void)m;
}

TEST_CASE("successor classes partition the joint successor set") {
    for (Labeling lab : {Labeling::Target, Labeling::Source}) {
        BeliefProduct bp = running_belief(lab);
        for (int b = 0; b < bp.size(); ++b) {
            for (ActionId a = 0; a < bp.num_actions(); ++a) {
                for (ModeId mo = 0; mo < bp.num_modes(); ++mo) {
                    const auto& classes = bp.trans[b][bp.action_index(a, mo)];
                    if (classes.empty()) continue;
                    // classes are disjoint and their union is Post(b, a)
                    std::set<int> covered;
                    for (int c : classes) {
                        for (int pid : bp.beliefs[c]) CHECK(covered.insert(pid).second);
                    }
                    std::set<int> expected;
                    for (int pid : bp.beliefs[b]) {
                        for (int s : bp.product.trans[pid][a]) expected.insert(s);
                    }
                    CHECK(covered == expected);
                    // members of one class agree on the observation, and
                    // distinct classes disagree
                    std::set<ObsSet> seen;
                    for (int c : classes) {
                        std::set<ObsSet> inside;
                        for (int pid : bp.beliefs[c]) {
                            inside.insert(observe(bp.product.model, mo,
                                                  bp.product.states[pid].state));
                        }
                        CHECK(inside.size() == 1);
                        CHECK(seen.insert(*inside.begin()).second);
                        CHECK(bp.observation(c, mo) == *inside.begin());
                    }
                }
            }
        }
    }
}

TEST_CASE("belief_successors matches the reference partition on random instances") {
    for (unsigned seed = 1; seed <= 12; ++seed) {
        CAPTURE(seed);
        RandomInstance ri = random_instance(seed);
        Dfa d = compile_to_dfa(ri.formula, ri.model.ap);
        Product p = build_product(ri.model, d, Labeling::Target);
        std::vector<int> everyone(p.size());
        for (int i = 0; i < p.size(); ++i) everyone[i] = i;
        for (ActionId a = 0; a < (ActionId)ri.model.actions.size(); ++a) {
            for (ModeId mo = 0; mo < (ModeId)ri.model.modes.size(); ++mo) {
                CHECK(belief_successors(p, everyone, a, mo) == naive_classes(p, everyone, a, mo));
                CHECK(belief_successors(p, {p.init}, a, mo) == naive_classes(p, {p.init}, a, mo));
            }
        }
    }
}

TEST_CASE("whole belief product matches the reference expansion") {
    // case-study models plus a batch of random ones, both labelings
    std::vector<std::pair<NtsModel, std::string>> cases;
    cases.push_back({generate_running_example(), "F star"});
    for (unsigned seed = 1; seed <= 10; ++seed) {
        RandomInstance ri = random_instance(seed);
        cases.push_back({ri.model, to_string(ri.formula)});
    }
    for (const auto& [model, formula] : cases) {
        CAPTURE(formula);
        Dfa d = compile_to_dfa(parse_formula(formula), model.ap);
        for (Labeling lab : {Labeling::Target, Labeling::Source}) {
            Product p = build_product(model, d, lab);
            BeliefProduct bp = build_belief(p);
            NaiveBelief nb = naive_belief(p);
            REQUIRE(bp.size() == (int)nb.beliefs.size());
            CHECK(bp.init == 0);
            for (int b = 0; b < bp.size(); ++b) {
                CHECK(bp.beliefs[b] == nb.beliefs[b]);
                CHECK(bp.trans[b] == nb.trans[b]);
                CHECK(bp.accepting[b] == nb.accepting[b]);
            }
        }
    }
}

TEST_CASE("acceptance requires every member to accept") {
    BeliefProduct bp = running_belief(Labeling::Target);
    for (int b = 0; b < bp.size(); ++b) {
        bool all = true;
        for (int pid : bp.beliefs[b]) all = all && bp.product.accepting[pid];
        CHECK(bp.accepting[b] == all);
    }
}

TEST_CASE("observation() refuses a mode the members disagree under") {
    BeliefProduct bp = running_belief(Labeling::Target);
    const NtsModel& m = bp.product.model;
    // the blind-successor belief {s2,s3,s4} disagrees under the rich mode
    const auto& blind = bp.trans[bp.init][bp.action_index(m.action_id("a"), m.mode_id("m1"))];
    REQUIRE(blind.size() == 1);
    CHECK_THROWS(bp.observation(blind[0], m.mode_id("m3")));
    CHECK(bp.observation(blind[0], m.mode_id("m1")).empty());
}

TEST_CASE("stats and labels and dot agree with the structure") {
    BeliefProduct bp = running_belief(Labeling::Target);
    BeliefStats bs = belief_stats(bp);
    long long edges = 0;
    int dn = 0;
    for (const auto& per_action : bp.trans) {
        for (const auto& classes : per_action) {
            edges += (long long)classes.size();
            dn = std::max(dn, (int)classes.size());
        }
    }
    CHECK(bs.transition_count == edges);
    CHECK(bs.dn == dn);
    CHECK(belief_label(bp, bp.init).find("s1") != std::string::npos);
    CHECK(belief_to_dot(bp).find("digraph") != std::string::npos);
}
