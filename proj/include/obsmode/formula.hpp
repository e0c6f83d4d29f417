#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "obsmode/model.hpp"

namespace obsmode {

// Syntactically co-safe LTL: negation is allowed on atoms only, temporal
// operators are X, U, F plus the bounded sugar F<=k and U<=k. Every formula
// in this fragment has the property that satisfaction over infinite words is
// witnessed by a finite good prefix.
enum class FormulaKind {
    True,
    False,
    Atom,
    NotAtom,
    And,
    Or,
    Next,
    Until,
    Eventually,
    BoundedUntil,
    BoundedEventually,
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    FormulaKind kind;
    std::string atom;            // Atom / NotAtom
    std::vector<FormulaPtr> kids;  // And/Or: n-ary; Next/F: 1; U: 2
    int bound = -1;              // BoundedUntil / BoundedEventually
};

class FormulaParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Node factories. f_and/f_or fold constants, flatten nested nodes of the same
// kind, sort and deduplicate children, so structurally equal formulas compare
// equal after construction through these.
FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_atom(const std::string& name);
FormulaPtr f_not_atom(const std::string& name);
FormulaPtr f_and(std::vector<FormulaPtr> kids);
FormulaPtr f_or(std::vector<FormulaPtr> kids);
FormulaPtr f_next(FormulaPtr k);
FormulaPtr f_until(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr f_eventually(FormulaPtr k);
FormulaPtr f_bounded_until(FormulaPtr lhs, FormulaPtr rhs, int bound);
FormulaPtr f_bounded_eventually(FormulaPtr k, int bound);

// Total structural order; 0 means equal.
int compare_formula(const FormulaPtr& a, const FormulaPtr& b);

// Concrete syntax:
//   atom        identifier [A-Za-z_][A-Za-z0-9_]*  (true/false are literals)
//   !p          negated atom (negation of compound formulas is rejected)
//   X f, F f, F<=k f, f U g, f U<=k g, f & g, f | g, ( f )
// Precedence, tightest first: {! X F} > U > & > |. U is right-associative.
FormulaPtr parse_formula(const std::string& text);

// Rewrites bounded operators into the core fragment:
//   F<=0 f = f                F<=k f = f | X(F<=k-1 f)
//   f U<=0 g = g              f U<=k g = g | (f & X(f U<=k-1 g))
// Throws std::invalid_argument on a negative bound.
FormulaPtr expand_bounded(const FormulaPtr& f);

// Strong satisfaction over a finite word: every obligation must be discharged
// within the word itself. Atoms need a first letter; X f consumes a letter and
// evaluates f on the (possibly empty) rest; f U g needs g to hold at some
// position of the word, with f holding before it. A word accepted here is a
// good prefix: every infinite extension satisfies the formula. Letters are
// proposition bitmasks over `ap`; atoms not listed in `ap` raise
// std::invalid_argument. Bounded operators are expanded first.
bool holds_strong(const FormulaPtr& f, const std::vector<PropMask>& word,
                  const std::vector<std::string>& ap);

// Round-trippable text form (parse_formula(to_string(f)) is structurally f).
std::string to_string(const FormulaPtr& f);

// Atom names referenced by the formula, sorted and unique.
std::vector<std::string> formula_atoms(const FormulaPtr& f);

}  // namespace obsmode
