#include "obsmode/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace obsmode {

namespace {

FormulaPtr make(FormulaKind kind) {
    auto f = std::make_shared<Formula>();
    f->kind = kind;
    return f;
}

int kind_rank(FormulaKind k) { return static_cast<int>(k); }

}  // namespace

FormulaPtr f_true() {
    static FormulaPtr t = make(FormulaKind::True);
    return t;
}

FormulaPtr f_false() {
    static FormulaPtr f = make(FormulaKind::False);
    return f;
}

FormulaPtr f_atom(const std::string& name) {
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::Atom;
    f->atom = name;
    return f;
}

FormulaPtr f_not_atom(const std::string& name) {
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::NotAtom;
    f->atom = name;
    return f;
}

int compare_formula(const FormulaPtr& a, const FormulaPtr& b) {
    if (a.get() == b.get()) return 0;
    if (a->kind != b->kind) return kind_rank(a->kind) < kind_rank(b->kind) ? -1 : 1;
    if (a->atom != b->atom) return a->atom < b->atom ? -1 : 1;
    if (a->bound != b->bound) return a->bound < b->bound ? -1 : 1;
    for (std::size_t i = 0; i < a->kids.size() && i < b->kids.size(); ++i) {
        int c = compare_formula(a->kids[i], b->kids[i]);
        if (c != 0) return c;
    }
    if (a->kids.size() != b->kids.size()) return a->kids.size() < b->kids.size() ? -1 : 1;
    return 0;
}

namespace {

// Shared fold for And/Or. `unit` is the neutral element (true for And),
// `zero` the absorbing one (false for And).
FormulaPtr fold_nary(FormulaKind kind, std::vector<FormulaPtr> kids, const FormulaPtr& unit,
                     const FormulaPtr& zero) {
    std::vector<FormulaPtr> flat;
    for (auto& k : kids) {
        if (k->kind == kind) {
            flat.insert(flat.end(), k->kids.begin(), k->kids.end());
        } else if (compare_formula(k, zero) == 0) {
            return zero;
        } else if (compare_formula(k, unit) != 0) {
            flat.push_back(k);
        }
    }
    std::sort(flat.begin(), flat.end(),
              [](const FormulaPtr& x, const FormulaPtr& y) { return compare_formula(x, y) < 0; });
    flat.erase(std::unique(flat.begin(), flat.end(),
                           [](const FormulaPtr& x, const FormulaPtr& y) {
                               return compare_formula(x, y) == 0;
                           }),
               flat.end());
    if (flat.empty()) return unit;
    if (flat.size() == 1) return flat[0];
    auto f = std::make_shared<Formula>();
    f->kind = kind;
    f->kids = std::move(flat);
    return f;
}

}  // namespace

FormulaPtr f_and(std::vector<FormulaPtr> kids) {
    return fold_nary(FormulaKind::And, std::move(kids), f_true(), f_false());
}

FormulaPtr f_or(std::vector<FormulaPtr> kids) {
    return fold_nary(FormulaKind::Or, std::move(kids), f_false(), f_true());
}

FormulaPtr f_next(FormulaPtr k) {
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::Next;
    f->kids = {std::move(k)};
    return f;
}

FormulaPtr f_until(FormulaPtr lhs, FormulaPtr rhs) {
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::Until;
    f->kids = {std::move(lhs), std::move(rhs)};
    return f;
}

FormulaPtr f_eventually(FormulaPtr k) {
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::Eventually;
    f->kids = {std::move(k)};
    return f;
}

FormulaPtr f_bounded_until(FormulaPtr lhs, FormulaPtr rhs, int bound) {
    if (bound < 0) throw std::invalid_argument("bounded until with negative bound");
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::BoundedUntil;
    f->kids = {std::move(lhs), std::move(rhs)};
    f->bound = bound;
    return f;
}

FormulaPtr f_bounded_eventually(FormulaPtr k, int bound) {
    if (bound < 0) throw std::invalid_argument("bounded eventually with negative bound");
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::BoundedEventually;
    f->kids = {std::move(k)};
    f->bound = bound;
    return f;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Token {
    enum Type { Ident, Bang, Amp, Pipe, LParen, RParen, UntilOp, Leq, Number, End } type;
    std::string text;
    std::size_t pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
        current_.pos = i_;
        if (i_ >= text_.size()) {
            current_.type = Token::End;
            current_.text.clear();
            return;
        }
        char c = text_[i_];
        if (c == '!') {
            current_ = {Token::Bang, "!", i_++};
        } else if (c == '&') {
            current_ = {Token::Amp, "&", i_++};
        } else if (c == '|') {
            current_ = {Token::Pipe, "|", i_++};
        } else if (c == '(') {
            current_ = {Token::LParen, "(", i_++};
        } else if (c == ')') {
            current_ = {Token::RParen, ")", i_++};
        } else if (c == '<') {
            if (i_ + 1 < text_.size() && text_[i_ + 1] == '=') {
                current_ = {Token::Leq, "<=", i_};
                i_ += 2;
            } else {
                throw FormulaParseError("expected '<=' at position " + std::to_string(i_));
            }
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = i_;
            while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) ++i_;
            current_ = {Token::Number, text_.substr(start, i_ - start), start};
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i_;
            while (i_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[i_])) || text_[i_] == '_')) {
                ++i_;
            }
            std::string word = text_.substr(start, i_ - start);
            if (word == "U") {
                current_ = {Token::UntilOp, word, start};
            } else {
                current_ = {Token::Ident, word, start};
            }
        } else {
            throw FormulaParseError("unexpected character '" + std::string(1, c) +
                                    "' at position " + std::to_string(i_));
        }
    }

    const std::string& text_;
    std::size_t i_ = 0;
    Token current_;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) {}

    FormulaPtr parse() {
        FormulaPtr f = parse_or();
        if (lex_.peek().type != Token::End) {
            throw FormulaParseError("trailing input at position " +
                                    std::to_string(lex_.peek().pos));
        }
        return f;
    }

private:
    FormulaPtr parse_or() {
        std::vector<FormulaPtr> kids{parse_and()};
        while (lex_.peek().type == Token::Pipe) {
            lex_.take();
            kids.push_back(parse_and());
        }
        return kids.size() == 1 ? kids[0] : f_or(std::move(kids));
    }

    FormulaPtr parse_and() {
        std::vector<FormulaPtr> kids{parse_until()};
        while (lex_.peek().type == Token::Amp) {
            lex_.take();
            kids.push_back(parse_until());
        }
        return kids.size() == 1 ? kids[0] : f_and(std::move(kids));
    }

    FormulaPtr parse_until() {
        FormulaPtr lhs = parse_unary();
        if (lex_.peek().type != Token::UntilOp) return lhs;
        lex_.take();
        if (lex_.peek().type == Token::Leq) {
            int bound = parse_bound();
            return f_bounded_until(lhs, parse_until(), bound);
        }
        return f_until(lhs, parse_until());
    }

    int parse_bound() {
        lex_.take();  // <=
        if (lex_.peek().type != Token::Number) {
            throw FormulaParseError("expected a bound after '<=' at position " +
                                    std::to_string(lex_.peek().pos));
        }
        Token num = lex_.take();
        long v = std::stol(num.text);
        if (v > 1000000) throw FormulaParseError("bound too large: " + num.text);
        return static_cast<int>(v);
    }

    FormulaPtr parse_unary() {
        const Token& t = lex_.peek();
        switch (t.type) {
            case Token::Bang: {
                lex_.take();
                if (lex_.peek().type != Token::Ident || lex_.peek().text == "true" ||
                    lex_.peek().text == "false" || lex_.peek().text == "X" ||
                    lex_.peek().text == "F") {
                    throw FormulaParseError(
                        "negation is only allowed on atoms (position " +
                        std::to_string(lex_.peek().pos) + ")");
                }
                return f_not_atom(lex_.take().text);
            }
            case Token::LParen: {
                lex_.take();
                FormulaPtr inner = parse_or();
                if (lex_.peek().type != Token::RParen) {
                    throw FormulaParseError("expected ')' at position " +
                                            std::to_string(lex_.peek().pos));
                }
                lex_.take();
                return inner;
            }
            case Token::Ident: {
                if (t.text == "X") {
                    lex_.take();
                    return f_next(parse_unary());
                }
                if (t.text == "F") {
                    lex_.take();
                    if (lex_.peek().type == Token::Leq) {
                        int bound = parse_bound();
                        return f_bounded_eventually(parse_unary(), bound);
                    }
                    return f_eventually(parse_unary());
                }
                if (t.text == "true") {
                    lex_.take();
                    return f_true();
                }
                if (t.text == "false") {
                    lex_.take();
                    return f_false();
                }
                return f_atom(lex_.take().text);
            }
            default:
                throw FormulaParseError("unexpected token at position " + std::to_string(t.pos));
        }
    }

    Lexer lex_;
};

}  // namespace

FormulaPtr parse_formula(const std::string& text) { return Parser(text).parse(); }

FormulaPtr expand_bounded(const FormulaPtr& f) {
    switch (f->kind) {
        case FormulaKind::True:
        case FormulaKind::False:
        case FormulaKind::Atom:
        case FormulaKind::NotAtom:
            return f;
        case FormulaKind::And: {
            std::vector<FormulaPtr> kids;
            for (const auto& k : f->kids) kids.push_back(expand_bounded(k));
            return f_and(std::move(kids));
        }
        case FormulaKind::Or: {
            std::vector<FormulaPtr> kids;
            for (const auto& k : f->kids) kids.push_back(expand_bounded(k));
            return f_or(std::move(kids));
        }
        case FormulaKind::Next:
            return f_next(expand_bounded(f->kids[0]));
        case FormulaKind::Until:
            return f_until(expand_bounded(f->kids[0]), expand_bounded(f->kids[1]));
        case FormulaKind::Eventually:
            return f_eventually(expand_bounded(f->kids[0]));
        case FormulaKind::BoundedEventually: {
            if (f->bound < 0) throw std::invalid_argument("negative bound");
            FormulaPtr body = expand_bounded(f->kids[0]);
            FormulaPtr acc = body;
            for (int i = 0; i < f->bound; ++i) acc = f_or({body, f_next(acc)});
            return acc;
        }
        case FormulaKind::BoundedUntil: {
            if (f->bound < 0) throw std::invalid_argument("negative bound");
            FormulaPtr lhs = expand_bounded(f->kids[0]);
            FormulaPtr rhs = expand_bounded(f->kids[1]);
            FormulaPtr acc = rhs;
            for (int i = 0; i < f->bound; ++i) acc = f_or({rhs, f_and({lhs, f_next(acc)})});
            return acc;
        }
    }
    throw std::logic_error("unreachable formula kind");
}

namespace {

int ap_index(const std::vector<std::string>& ap, const std::string& name) {
    for (std::size_t i = 0; i < ap.size(); ++i) {
        if (ap[i] == name) return static_cast<int>(i);
    }
    throw std::invalid_argument("formula references undeclared proposition: " + name);
}

bool holds_at(const FormulaPtr& f, const std::vector<PropMask>& w, std::size_t i,
              const std::vector<std::string>& ap) {
    switch (f->kind) {
        case FormulaKind::True:
            return true;
        case FormulaKind::False:
            return false;
        case FormulaKind::Atom:
            return i < w.size() && (w[i] >> ap_index(ap, f->atom)) & 1;
        case FormulaKind::NotAtom:
            return i < w.size() && !((w[i] >> ap_index(ap, f->atom)) & 1);
        case FormulaKind::And:
            for (const auto& k : f->kids) {
                if (!holds_at(k, w, i, ap)) return false;
            }
            return true;
        case FormulaKind::Or:
            for (const auto& k : f->kids) {
                if (holds_at(k, w, i, ap)) return true;
            }
            return false;
        case FormulaKind::Next:
            return i < w.size() && holds_at(f->kids[0], w, i + 1, ap);
        case FormulaKind::Until:
            for (std::size_t j = i; j < w.size(); ++j) {
                if (holds_at(f->kids[1], w, j, ap)) return true;
                if (!holds_at(f->kids[0], w, j, ap)) return false;
            }
            return false;
        case FormulaKind::Eventually:
            for (std::size_t j = i; j < w.size(); ++j) {
                if (holds_at(f->kids[0], w, j, ap)) return true;
            }
            return false;
        default:
            throw std::logic_error("bounded operator reached semantics");
    }
}

}  // namespace

bool holds_strong(const FormulaPtr& f, const std::vector<PropMask>& word,
                  const std::vector<std::string>& ap) {
    for (const auto& atom : formula_atoms(f)) {
        ap_index(ap, atom);  // throws on an undeclared proposition
    }
    return holds_at(expand_bounded(f), word, 0, ap);
}

namespace {

// Parenthesize by precedence level: Or (1) < And (2) < Until (3) < unary (4).
int level(const FormulaPtr& f) {
    switch (f->kind) {
        case FormulaKind::Or:
            return 1;
        case FormulaKind::And:
            return 2;
        case FormulaKind::Until:
        case FormulaKind::BoundedUntil:
            return 3;
        default:
            return 4;
    }
}

void print(const FormulaPtr& f, int outer, std::string& out) {
    int lvl = level(f);
    bool paren = lvl < outer;
    if (paren) out += "(";
    switch (f->kind) {
        case FormulaKind::True:
            out += "true";
            break;
        case FormulaKind::False:
            out += "false";
            break;
        case FormulaKind::Atom:
            out += f->atom;
            break;
        case FormulaKind::NotAtom:
            out += "!" + f->atom;
            break;
        case FormulaKind::And:
            for (std::size_t i = 0; i < f->kids.size(); ++i) {
                if (i) out += " & ";
                print(f->kids[i], lvl + 1, out);
            }
            break;
        case FormulaKind::Or:
            for (std::size_t i = 0; i < f->kids.size(); ++i) {
                if (i) out += " | ";
                print(f->kids[i], lvl + 1, out);
            }
            break;
        case FormulaKind::Next:
            out += "X ";
            print(f->kids[0], 4, out);
            break;
        case FormulaKind::Eventually:
            out += "F ";
            print(f->kids[0], 4, out);
            break;
        case FormulaKind::BoundedEventually:
            out += "F<=" + std::to_string(f->bound) + " ";
            print(f->kids[0], 4, out);
            break;
        case FormulaKind::Until:
            // Right-associative: the left side needs parens when it is an Until.
            print(f->kids[0], lvl + 1, out);
            out += " U ";
            print(f->kids[1], lvl, out);
            break;
        case FormulaKind::BoundedUntil:
            print(f->kids[0], lvl + 1, out);
            out += " U<=" + std::to_string(f->bound) + " ";
            print(f->kids[1], lvl, out);
            break;
    }
    if (paren) out += ")";
}

void collect_atoms(const FormulaPtr& f, std::set<std::string>& out) {
    if (f->kind == FormulaKind::Atom || f->kind == FormulaKind::NotAtom) out.insert(f->atom);
    for (const auto& k : f->kids) collect_atoms(k, out);
}

}  // namespace

std::string to_string(const FormulaPtr& f) {
    std::string out;
    print(f, 0, out);
    return out;
}

std::vector<std::string> formula_atoms(const FormulaPtr& f) {
    std::set<std::string> atoms;
    collect_atoms(f, atoms);
    return std::vector<std::string>(atoms.begin(), atoms.end());
}

}  // namespace obsmode
