#include "obsmode/dfa.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace obsmode {

int Dfa::run(const std::vector<PropMask>& word) const {
    int q = initial;
    for (PropMask letter : word) {
        if (letter >= static_cast<PropMask>(num_letters())) {
            throw std::out_of_range("letter outside the DFA alphabet");
        }
        q = delta[q][letter];
    }
    return q;
}

namespace {

int ap_index(const std::vector<std::string>& ap, const std::string& name) {
    for (std::size_t i = 0; i < ap.size(); ++i) {
        if (ap[i] == name) return static_cast<int>(i);
    }
    throw FormulaCompileError("formula references undeclared proposition: " + name);
}

// Derivative of f by one letter: the residual obligation after observing
// `letter` as the current step. Built through the folding factories, so the
// result is canonical and state identity is structural equality.
FormulaPtr derivative(const FormulaPtr& f, PropMask letter, const std::vector<std::string>& ap) {
    switch (f->kind) {
        case FormulaKind::True:
            return f_true();
        case FormulaKind::False:
            return f_false();
        case FormulaKind::Atom:
            return ((letter >> ap_index(ap, f->atom)) & 1) ? f_true() : f_false();
        case FormulaKind::NotAtom:
            return ((letter >> ap_index(ap, f->atom)) & 1) ? f_false() : f_true();
        case FormulaKind::And: {
            std::vector<FormulaPtr> kids;
            for (const auto& k : f->kids) kids.push_back(derivative(k, letter, ap));
            return f_and(std::move(kids));
        }
        case FormulaKind::Or: {
            std::vector<FormulaPtr> kids;
            for (const auto& k : f->kids) kids.push_back(derivative(k, letter, ap));
            return f_or(std::move(kids));
        }
        case FormulaKind::Next:
            return f->kids[0];
        case FormulaKind::Until:
            // d(f U g) = d(g) | (d(f) & f U g)
            return f_or({derivative(f->kids[1], letter, ap),
                         f_and({derivative(f->kids[0], letter, ap), f})});
        case FormulaKind::Eventually:
            return f_or({derivative(f->kids[0], letter, ap), f});
        default:
            throw std::logic_error("bounded operator reached the compiler");
    }
}

struct FormulaLess {
    bool operator()(const FormulaPtr& a, const FormulaPtr& b) const {
        return compare_formula(a, b) < 0;
    }
};

// Every derivative is a positive boolean combination of the formula's temporal
// subterms. The flatten/sort/dedup done by the factories is not enough to make
// the state set finite: alternating and/or layers (from nested untils) keep
// growing across repeated derivatives, so no state is ever revisited. Reducing
// each derivative to its minimal disjunction of conjunctions, dropping any
// conjunction that contains another one, confines states to the antichains
// over the closure, a finite lattice.
using Clause = std::vector<FormulaPtr>;  // sorted conjunction of temporal terms

std::vector<Clause> dnf_of(const FormulaPtr& f) {
    switch (f->kind) {
        case FormulaKind::True:
            return {Clause{}};
        case FormulaKind::False:
            return {};
        case FormulaKind::Or: {
            std::vector<Clause> out;
            for (const auto& k : f->kids) {
                std::vector<Clause> sub = dnf_of(k);
                out.insert(out.end(), std::make_move_iterator(sub.begin()),
                           std::make_move_iterator(sub.end()));
            }
            return out;
        }
        case FormulaKind::And: {
            std::vector<Clause> acc = {Clause{}};
            for (const auto& k : f->kids) {
                std::vector<Clause> sub = dnf_of(k);
                std::vector<Clause> next;
                next.reserve(acc.size() * sub.size());
                for (const Clause& c1 : acc) {
                    for (const Clause& c2 : sub) {
                        Clause merged;
                        merged.reserve(c1.size() + c2.size());
                        std::set_union(c1.begin(), c1.end(), c2.begin(), c2.end(),
                                       std::back_inserter(merged), FormulaLess{});
                        next.push_back(std::move(merged));
                    }
                }
                acc = std::move(next);
            }
            return acc;
        }
        default:
            return {Clause{f}};
    }
}

FormulaPtr normalize_positive(const FormulaPtr& f) {
    std::vector<Clause> clauses = dnf_of(f);
    std::sort(clauses.begin(), clauses.end(), [](const Clause& a, const Clause& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                            FormulaLess{});
    });
    // Smaller clauses come first, so any absorber of c is already in kept.
    std::vector<Clause> kept;
    for (Clause& c : clauses) {
        bool redundant = false;
        for (const Clause& k : kept) {
            if (std::includes(c.begin(), c.end(), k.begin(), k.end(), FormulaLess{})) {
                redundant = true;
                break;
            }
        }
        if (!redundant) kept.push_back(std::move(c));
    }
    std::vector<FormulaPtr> terms;
    terms.reserve(kept.size());
    for (Clause& c : kept) terms.push_back(f_and(std::move(c)));
    return f_or(std::move(terms));
}

// Merge equivalent states by partition refinement, then renumber the result
// breadth first from the initial state with letters in mask order.
Dfa minimize(const Dfa& in) {
    const int n = in.size();
    const int letters = in.num_letters();

    std::vector<int> block(n);
    for (int q = 0; q < n; ++q) block[q] = in.accepting[q] ? 1 : 0;
    int num_blocks = 2;
    // All-accepting or all-rejecting automata start from a single block.
    if (std::all_of(in.accepting.begin(), in.accepting.end(), [](bool b) { return b; }) ||
        std::none_of(in.accepting.begin(), in.accepting.end(), [](bool b) { return b; })) {
        std::fill(block.begin(), block.end(), 0);
        num_blocks = 1;
    }

    for (;;) {
        std::map<std::vector<int>, int> signature_to_block;
        std::vector<int> next(n);
        for (int q = 0; q < n; ++q) {
            std::vector<int> sig;
            sig.reserve(letters + 1);
            sig.push_back(block[q]);
            for (int x = 0; x < letters; ++x) sig.push_back(block[in.delta[q][x]]);
            auto [it, inserted] =
                signature_to_block.emplace(std::move(sig), static_cast<int>(signature_to_block.size()));
            next[q] = it->second;
            (void)inserted;
        }
        int new_count = static_cast<int>(signature_to_block.size());
        block.swap(next);
        if (new_count == num_blocks) break;
        num_blocks = new_count;
    }

    // Breadth-first renumbering over the quotient.
    std::vector<int> order(num_blocks, -1);
    std::vector<int> representative(num_blocks, -1);
    for (int q = n - 1; q >= 0; --q) representative[block[q]] = q;
    std::queue<int> frontier;
    int assigned = 0;
    order[block[in.initial]] = assigned++;
    frontier.push(block[in.initial]);
    Dfa out;
    out.ap = in.ap;
    out.initial = 0;
    std::vector<int> bfs_blocks;
    while (!frontier.empty()) {
        int b = frontier.front();
        frontier.pop();
        bfs_blocks.push_back(b);
        int rep = representative[b];
        for (int x = 0; x < letters; ++x) {
            int tb = block[in.delta[rep][x]];
            if (order[tb] == -1) {
                order[tb] = assigned++;
                frontier.push(tb);
            }
        }
    }
    out.delta.assign(assigned, std::vector<int>(letters, 0));
    out.accepting.assign(assigned, false);
    for (int b : bfs_blocks) {
        int rep = representative[b];
        out.accepting[order[b]] = in.accepting[rep];
        for (int x = 0; x < letters; ++x) {
            out.delta[order[b]][x] = order[block[in.delta[rep][x]]];
        }
    }
    return out;
}

}  // namespace

Dfa compile_to_dfa(const FormulaPtr& f, const std::vector<std::string>& ap) {
    if (ap.size() > 12) {
        throw FormulaCompileError("alphabet too large: " + std::to_string(ap.size()) +
                                  " propositions");
    }
    FormulaPtr core = expand_bounded(f);
    for (const auto& atom : formula_atoms(core)) {
        ap_index(ap, atom);  // throws on an undeclared proposition
    }

    const int letters = 1 << static_cast<int>(ap.size());
    std::map<FormulaPtr, int, FormulaLess> ids;
    std::vector<FormulaPtr> states;
    std::queue<int> todo;

    auto intern = [&](const FormulaPtr& g) {
        auto [it, inserted] = ids.emplace(g, static_cast<int>(states.size()));
        if (inserted) {
            states.push_back(g);
            todo.push(it->second);
        }
        return it->second;
    };

    Dfa raw;
    raw.ap = ap;
    raw.initial = intern(normalize_positive(core));
    while (!todo.empty()) {
        int q = todo.front();
        todo.pop();
        if (static_cast<int>(raw.delta.size()) <= q) raw.delta.resize(q + 1);
        raw.delta[q].assign(letters, 0);
        FormulaPtr state = states[q];
        for (int x = 0; x < letters; ++x) {
            raw.delta[q][x] =
                intern(normalize_positive(derivative(state, static_cast<PropMask>(x), ap)));
        }
    }
    raw.accepting.assign(states.size(), false);
    bool any_accepting = false;
    for (std::size_t q = 0; q < states.size(); ++q) {
        raw.accepting[q] = compare_formula(states[q], f_true()) == 0;
        any_accepting = any_accepting || raw.accepting[q];
    }
    if (!any_accepting) {
        throw FormulaCompileError("formula has no good prefixes: " + to_string(f));
    }
    return minimize(raw);
}

namespace {

std::string letter_name(PropMask letter, const std::vector<std::string>& ap) {
    if (letter == 0) return "{}";
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < ap.size(); ++i) {
        if ((letter >> i) & 1) {
            if (!first) out += ",";
            out += ap[i];
            first = false;
        }
    }
    return out + "}";
}

}  // namespace

std::string dfa_to_dot(const Dfa& d) {
    std::string out = "digraph dfa {\n  rankdir=LR;\n  node [shape=circle];\n";
    out += "  init [shape=point];\n";
    for (int q = 0; q < d.size(); ++q) {
        out += "  q" + std::to_string(q);
        if (d.accepting[q]) out += " [shape=doublecircle]";
        out += ";\n";
    }
    out += "  init -> q" + std::to_string(d.initial) + ";\n";
    for (int q = 0; q < d.size(); ++q) {
        std::map<int, std::vector<PropMask>> grouped;
        for (int x = 0; x < d.num_letters(); ++x) {
            grouped[d.delta[q][x]].push_back(static_cast<PropMask>(x));
        }
        for (const auto& [target, masks] : grouped) {
            std::string label;
            for (std::size_t i = 0; i < masks.size(); ++i) {
                if (i) label += " ";
                label += letter_name(masks[i], d.ap);
            }
            out += "  q" + std::to_string(q) + " -> q" + std::to_string(target) + " [label=\"" +
                   label + "\"];\n";
        }
    }
    out += "}\n";
    return out;
}

}  // namespace obsmode
