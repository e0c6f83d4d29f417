#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "obsmode/dfa.hpp"
#include "obsmode/formula.hpp"

using namespace obsmode;

namespace {

Dfa compile(const std::string& text, const std::vector<std::string>& ap) {
    return compile_to_dfa(parse_formula(text), ap);
}

// Every word over the DFA's alphabet up to the given length, in radix order.
std::vector<std::vector<PropMask>> all_words(int letters, int max_len) {
    std::vector<std::vector<PropMask>> out = {{}};
    std::vector<std::vector<PropMask>> frontier = {{}};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<std::vector<PropMask>> next;
        for (const auto& w : frontier) {
            for (PropMask l = 0; l < PropMask(letters); ++l) {
                auto ext = w;
                ext.push_back(l);
                out.push_back(ext);
                next.push_back(ext);
            }
        }
        frontier = std::move(next);
    }
    return out;
}

// True when some word separates the two states (one side accepting, the
// other not). Walks the pair graph; a minimal DFA separates every pair.
bool distinguishable(const Dfa& d, int s, int t) {
    std::set<std::pair<int, int>> seen;
    std::vector<std::pair<int, int>> stack = {{s, t}};
    while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        if (x == y) continue;
        if (!seen.insert({std::min(x, y), std::max(x, y)}).second) continue;
        if (d.accepting[x] != d.accepting[y]) return true;
        for (int l = 0; l < d.num_letters(); ++l) stack.push_back({d.delta[x][l], d.delta[y][l]});
    }
    return false;
}

}  // namespace

TEST_CASE("a single atom compiles to the three-state automaton") {
    // initial (undecided), accepting sink, rejecting sink
    Dfa d = compile("p", {"p"});
    REQUIRE(d.size() == 3);
    CHECK(d.initial == 0);
    CHECK_FALSE(d.accepting[0]);
    int acc = d.delta[0][1];
    int rej = d.delta[0][0];
    CHECK(acc != rej);
    CHECK(d.accepting[acc]);
    CHECK_FALSE(d.accepting[rej]);
    for (int l = 0; l < 2; ++l) {
        CHECK(d.delta[acc][l] == acc);
        CHECK(d.delta[rej][l] == rej);
    }
}

TEST_CASE("reach-the-goal formulas compile to two states") {
    Dfa d = compile("F star", {"star"});
    REQUIRE(d.size() == 2);
    CHECK_FALSE(d.accepting[d.initial]);
    CHECK(d.accepting[d.delta[d.initial][1]]);
    CHECK(d.delta[d.initial][0] == d.initial);
}

TEST_CASE("avoid-until-goal compiles to exactly three states") {
    Dfa d = compile("(! dang) U target", {"dang", "target"});
    CHECK(d.size() == 3);
    // letters: bit 0 = dang, bit 1 = target
    int q0 = d.initial;
    CHECK_FALSE(d.accepting[q0]);
    int doomed = d.delta[q0][1];          // dang alone
    int done = d.delta[q0][2];            // target alone
    CHECK(d.accepting[done]);
    CHECK_FALSE(d.accepting[doomed]);
    CHECK(d.delta[q0][3] == done);        // dang & target: the until discharged
    CHECK(d.delta[q0][0] == q0);
    for (int l = 0; l < 4; ++l) {
        CHECK(d.delta[done][l] == done);
        CHECK(d.delta[doomed][l] == doomed);
    }
}

TEST_CASE("empty-language formulas are compile errors") {
    CHECK_THROWS_AS(compile("false", {"p"}), FormulaCompileError);
    CHECK_THROWS_AS(compile("p & !p", {"p"}), FormulaCompileError);
}

TEST_CASE("atoms outside the alphabet and oversized alphabets are rejected") {
    CHECK_THROWS_AS(compile("p", {"q"}), FormulaCompileError);
    std::vector<std::string> big;
    for (int i = 0; i < 13; ++i) big.push_back("a" + std::to_string(i));
    CHECK_THROWS_AS(compile("a0", big), FormulaCompileError);
}

TEST_CASE("dfa language equals strong satisfaction, extension-closed, minimal") {
    std::vector<std::pair<std::string, std::vector<std::string>>> corpus = {
        {"p", {"p"}},
        {"!p", {"p"}},
        {"true", {}},
        {"X p", {"p"}},
        {"F q", {"q"}},
        {"p U q", {"p", "q"}},
        {"(!p) U q", {"p", "q"}},
        {"p & q", {"p", "q"}},
        {"p | q", {"p", "q"}},
        {"p & F q", {"p", "q"}},
        {"F (p & q)", {"p", "q"}},
        {"F<=2 p", {"p"}},
        {"p U<=3 q", {"p", "q"}},
        {"X (p | q)", {"p", "q"}},
        {"F (p & X q)", {"p", "q"}},
    };
    for (const auto& [text, ap] : corpus) {
        CAPTURE(text);
        FormulaPtr f = parse_formula(text);
        Dfa d = compile_to_dfa(f, ap);
        for (const auto& w : all_words(d.num_letters(), 4)) {
            CHECK(d.accepts(w) == holds_strong(f, w, ap));
        }
        // acceptance never un-latches
        for (int s = 0; s < d.size(); ++s) {
            if (!d.accepting[s]) continue;
            for (int l = 0; l < d.num_letters(); ++l) CHECK(d.accepting[d.delta[s][l]]);
        }
        for (int s = 0; s < d.size(); ++s) {
            for (int t = s + 1; t < d.size(); ++t) {
                CHECK(distinguishable(d, s, t));
            }
        }
    }
}

TEST_CASE("state numbering is canonical: recompiling gives the same table") {
    Dfa a = compile("p U (q U p)", {"p", "q"});
    Dfa b = compile("p U (q U p)", {"p", "q"});
    CHECK(a.delta == b.delta);
    CHECK(a.accepting == b.accepting);
    CHECK(a.initial == b.initial);
    // and the numbering is breadth-first: state 0 is initial
    CHECK(a.initial == 0);
}

TEST_CASE("run and accepts walk the table") {
    Dfa d = compile("F star", {"star"});
    CHECK(d.run({}) == d.initial);
    CHECK(d.accepts({0, 0, 1}));
    CHECK_FALSE(d.accepts({0, 0}));
    CHECK(d.accepts({1, 0, 0}));  // latched
}

TEST_CASE("dot rendering emits a digraph with doublecircle accepting states") {
    Dfa d = compile("F star", {"star"});
    std::string dot = dfa_to_dot(d);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("doublecircle") != std::string::npos);
}
