#include "dualprov/fol.hpp"

#include "dualprov/errors.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace dualprov {

// Vocabulary ---------------------------------------------------------------------

void Vocabulary::add_relation(const std::string& name, int arity) {
    if (arity < 1)
        throw SemanticError("relation " + name + " must have positive arity");
    if (!relations_.emplace(name, arity).second)
        throw SemanticError("relation " + name + " declared twice");
}

void Vocabulary::add_constant(const std::string& name) { constants_.insert(name); }

std::optional<int> Vocabulary::arity(std::string_view relation) const {
    auto it = relations_.find(relation);
    if (it == relations_.end())
        return std::nullopt;
    return it->second;
}

// Formula nodes ------------------------------------------------------------------

struct Formula::Node {
    FormulaKind kind;
    std::string name;  // relation or bound variable
    std::vector<Term> terms;
    std::vector<Formula> children;
};

Formula Formula::atom(std::string relation, std::vector<Term> terms) {
    if (terms.empty())
        throw std::invalid_argument("relational atoms need at least one argument");
    return Formula(std::make_shared<const Node>(Node{FormulaKind::Atom, std::move(relation), std::move(terms), {}}));
}

Formula Formula::equals(Term a, Term b) {
    return Formula(std::make_shared<const Node>(Node{FormulaKind::Eq, {}, {std::move(a), std::move(b)}, {}}));
}

Formula Formula::not_equals(Term a, Term b) {
    return Formula(std::make_shared<const Node>(Node{FormulaKind::Neq, {}, {std::move(a), std::move(b)}, {}}));
}

Formula Formula::negation(Formula f) {
    return Formula(std::make_shared<const Node>(Node{FormulaKind::Not, {}, {}, {std::move(f)}}));
}

Formula Formula::conjunction(Formula a, Formula b) {
    return Formula(std::make_shared<const Node>(Node{FormulaKind::And, {}, {}, {std::move(a), std::move(b)}}));
}

Formula Formula::disjunction(Formula a, Formula b) {
    return Formula(std::make_shared<const Node>(Node{FormulaKind::Or, {}, {}, {std::move(a), std::move(b)}}));
}

Formula Formula::exists(std::string variable, Formula body) {
    return Formula(std::make_shared<const Node>(Node{FormulaKind::Exists, std::move(variable), {}, {std::move(body)}}));
}

Formula Formula::forall(std::string variable, Formula body) {
    return Formula(std::make_shared<const Node>(Node{FormulaKind::Forall, std::move(variable), {}, {std::move(body)}}));
}

Formula Formula::implication(Formula a, Formula b) { return disjunction(negation(std::move(a)), std::move(b)); }

FormulaKind Formula::kind() const { return node_->kind; }
const std::string& Formula::relation() const { return node_->name; }
const std::vector<Term>& Formula::terms() const { return node_->terms; }
const Formula& Formula::body() const { return node_->children.at(0); }
const Formula& Formula::right() const { return node_->children.at(1); }
const std::string& Formula::variable() const { return node_->name; }

bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_)
        return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    return x.kind == y.kind && x.name == y.name && x.terms == y.terms && x.children == y.children;
}

// Printing -----------------------------------------------------------------------

namespace {

// Binding strength; an operand weaker than its context is parenthesized.
enum Level { kQuant = 0, kOr = 1, kAnd = 2, kNeg = 3, kAtom = 4 };

Level level_of(const Formula& f) {
    switch (f.kind()) {
    case FormulaKind::Exists:
    case FormulaKind::Forall: return kQuant;
    case FormulaKind::Or: return kOr;
    case FormulaKind::And: return kAnd;
    case FormulaKind::Not: return kNeg;
    default: return kAtom;
    }
}

class Printer {
public:
    explicit Printer(const std::map<std::string, std::string>* valuation) : valuation_(valuation) {}

    void print(const Formula& f, Level context) {
        bool parens = level_of(f) < context;
        if (parens)
            out_ += '(';
        switch (f.kind()) {
        case FormulaKind::Atom:
            out_ += f.relation();
            out_ += '(';
            for (std::size_t i = 0; i < f.terms().size(); ++i) {
                if (i > 0)
                    out_ += ',';
                term(f.terms()[i]);
            }
            out_ += ')';
            break;
        case FormulaKind::Eq:
        case FormulaKind::Neq:
            term(f.terms()[0]);
            out_ += f.kind() == FormulaKind::Eq ? " = " : " != ";
            term(f.terms()[1]);
            break;
        case FormulaKind::Not:
            out_ += '~';
            print(f.body(), kNeg);
            break;
        case FormulaKind::And:
            print(f.left(), kAnd);
            out_ += " & ";
            print(f.right(), kNeg);
            break;
        case FormulaKind::Or:
            print(f.left(), kOr);
            out_ += " | ";
            print(f.right(), kAnd);
            break;
        case FormulaKind::Exists:
        case FormulaKind::Forall:
            out_ += f.kind() == FormulaKind::Exists ? "E " : "A ";
            out_ += f.variable();
            out_ += ". ";
            shadowed_.push_back(f.variable());
            print(f.body(), kQuant);
            shadowed_.pop_back();
            break;
        }
        if (parens)
            out_ += ')';
    }

    std::string take() { return std::move(out_); }

private:
    void term(const Term& t) {
        if (t.is_variable() && valuation_ && !is_shadowed(t.name)) {
            if (auto it = valuation_->find(t.name); it != valuation_->end()) {
                out_ += it->second;
                return;
            }
        }
        out_ += t.name;
    }
    bool is_shadowed(const std::string& v) const {
        for (const auto& s : shadowed_)
            if (s == v)
                return true;
        return false;
    }

    const std::map<std::string, std::string>* valuation_;
    std::vector<std::string> shadowed_;
    std::string out_;
};

}  // namespace

std::string Formula::to_string() const {
    Printer p(nullptr);
    p.print(*this, kQuant);
    return p.take();
}

std::string Formula::to_string(const std::map<std::string, std::string>& valuation) const {
    Printer p(&valuation);
    p.print(*this, kQuant);
    return p.take();
}

// Parser -------------------------------------------------------------------------

namespace {

enum class Tok { Name, LParen, RParen, Comma, Dot, Tilde, Amp, Bar, Arrow, Iff, Eq, Neq, End };

struct Lexeme {
    Tok kind;
    std::string text;
    std::size_t pos;
};

std::vector<Lexeme> lex(std::string_view src) {
    std::vector<Lexeme> out;
    std::size_t i = 0;
    auto is_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
    auto is_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (is_start(c)) {
            while (i < src.size() && is_char(src[i]))
                ++i;
            out.push_back({Tok::Name, std::string(src.substr(start, i - start)), start});
            continue;
        }
        auto two = src.substr(i, 2);
        if (src.substr(i, 3) == "<->") {
            out.push_back({Tok::Iff, "<->", start});
            i += 3;
        } else if (two == "->") {
            out.push_back({Tok::Arrow, "->", start});
            i += 2;
        } else if (two == "!=") {
            out.push_back({Tok::Neq, "!=", start});
            i += 2;
        } else {
            Tok k;
            switch (c) {
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case ',': k = Tok::Comma; break;
            case '.': k = Tok::Dot; break;
            case '~': k = Tok::Tilde; break;
            case '&': k = Tok::Amp; break;
            case '|': k = Tok::Bar; break;
            case '=': k = Tok::Eq; break;
            default: throw ParseError(std::string("unexpected character '") + c + "'", i);
            }
            out.push_back({k, std::string(1, c), start});
            ++i;
        }
    }
    out.push_back({Tok::End, "", src.size()});
    return out;
}

class FormulaParser {
public:
    FormulaParser(std::string_view src, const Vocabulary& v) : toks_(lex(src)), vocab_(v) {}

    Formula parse() {
        auto f = formula();
        if (peek().kind != Tok::End)
            fail("unexpected '" + peek().text + "'");
        return f;
    }

private:
    const Lexeme& peek(std::size_t ahead = 0) const { return toks_[std::min(i_ + ahead, toks_.size() - 1)]; }
    const Lexeme& next() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }
    bool accept(Tok k) {
        if (peek().kind != k)
            return false;
        ++i_;
        return true;
    }
    void expect(Tok k, const char* what) {
        if (!accept(k))
            fail(std::string("expected ") + what + (peek().kind == Tok::End ? " at end of input" : " before '" + peek().text + "'"));
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().pos); }

    Formula formula() {
        auto f = disjunction();
        if (accept(Tok::Arrow))
            return Formula::implication(std::move(f), formula());
        if (accept(Tok::Iff)) {
            auto g = formula();
            return Formula::conjunction(Formula::implication(f, g), Formula::implication(g, f));
        }
        return f;
    }

    Formula disjunction() {
        auto f = conjunction();
        while (accept(Tok::Bar))
            f = Formula::disjunction(std::move(f), conjunction());
        return f;
    }

    Formula conjunction() {
        auto f = negation();
        while (accept(Tok::Amp))
            f = Formula::conjunction(std::move(f), negation());
        return f;
    }

    bool at_quantifier() const {
        const auto& t = peek();
        return t.kind == Tok::Name && (t.text == "A" || t.text == "E") && peek(1).kind == Tok::Name &&
               peek(2).kind == Tok::Dot;
    }

    Formula negation() {
        if (accept(Tok::Tilde))
            return Formula::negation(negation());
        if (at_quantifier()) {
            bool universal = next().text == "A";
            const auto& var = next();
            if (vocab_.is_constant(var.text))
                throw ParseError("cannot quantify over constant '" + var.text + "'", var.pos);
            next();  // '.'
            auto body = disjunction();
            return universal ? Formula::forall(var.text, std::move(body)) : Formula::exists(var.text, std::move(body));
        }
        return atom();
    }

    Term term() {
        if (peek().kind != Tok::Name)
            fail("expected a term");
        const auto& t = next();
        return vocab_.is_constant(t.text) ? Term::constant(t.text) : Term::variable(t.text);
    }

    Formula atom() {
        if (accept(Tok::LParen)) {
            auto f = formula();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (peek().kind != Tok::Name)
            fail(peek().kind == Tok::End ? "unexpected end of formula" : "unexpected '" + peek().text + "'");
        if (peek(1).kind == Tok::LParen) {
            const auto& rel = next();
            next();
            std::vector<Term> args{term()};
            while (accept(Tok::Comma))
                args.push_back(term());
            expect(Tok::RParen, "')'");
            auto arity = vocab_.arity(rel.text);
            if (!arity)
                throw ParseError("unknown relation '" + rel.text + "'", rel.pos);
            if (*arity != static_cast<int>(args.size()))
                throw ParseError("relation '" + rel.text + "' expects " + std::to_string(*arity) + " arguments, got " +
                                     std::to_string(args.size()),
                                 rel.pos);
            return Formula::atom(rel.text, std::move(args));
        }
        auto lhs = term();
        if (accept(Tok::Eq))
            return Formula::equals(std::move(lhs), term());
        if (accept(Tok::Neq))
            return Formula::not_equals(std::move(lhs), term());
        fail("expected '=' or '!=' after term '" + lhs.name + "'");
    }

    std::vector<Lexeme> toks_;
    std::size_t i_ = 0;
    const Vocabulary& vocab_;
};

}  // namespace

Formula parse_formula(std::string_view src, const Vocabulary& vocabulary) {
    return FormulaParser(src, vocabulary).parse();
}

// Rewriting ----------------------------------------------------------------------

namespace {

Formula nnf_of(const Formula& f, bool negated) {
    switch (f.kind()) {
    case FormulaKind::Atom:
        return negated ? Formula::negation(f) : f;
    case FormulaKind::Eq:
        return negated ? Formula::not_equals(f.terms()[0], f.terms()[1]) : f;
    case FormulaKind::Neq:
        return negated ? Formula::equals(f.terms()[0], f.terms()[1]) : f;
    case FormulaKind::Not:
        return nnf_of(f.body(), !negated);
    case FormulaKind::And:
    case FormulaKind::Or: {
        auto l = nnf_of(f.left(), negated);
        auto r = nnf_of(f.right(), negated);
        bool conj = (f.kind() == FormulaKind::And) != negated;
        return conj ? Formula::conjunction(std::move(l), std::move(r)) : Formula::disjunction(std::move(l), std::move(r));
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
        auto b = nnf_of(f.body(), negated);
        bool univ = (f.kind() == FormulaKind::Forall) != negated;
        return univ ? Formula::forall(f.variable(), std::move(b)) : Formula::exists(f.variable(), std::move(b));
    }
    }
    throw std::logic_error("unreachable");
}

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
    switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Eq:
    case FormulaKind::Neq:
        for (const auto& t : f.terms())
            if (t.is_variable() && std::find(bound.begin(), bound.end(), t.name) == bound.end())
                out.insert(t.name);
        return;
    case FormulaKind::Not:
        collect_free(f.body(), bound, out);
        return;
    case FormulaKind::And:
    case FormulaKind::Or:
        collect_free(f.left(), bound, out);
        collect_free(f.right(), bound, out);
        return;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
        bound.push_back(f.variable());
        collect_free(f.body(), bound, out);
        bound.pop_back();
        return;
    }
}

}  // namespace

Formula nnf(const Formula& f) { return nnf_of(f, false); }

bool is_nnf(const Formula& f) {
    switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Eq:
    case FormulaKind::Neq:
        return true;
    case FormulaKind::Not:
        return f.body().kind() == FormulaKind::Atom;
    case FormulaKind::And:
    case FormulaKind::Or:
        return is_nnf(f.left()) && is_nnf(f.right());
    case FormulaKind::Exists:
    case FormulaKind::Forall:
        return is_nnf(f.body());
    }
    return false;
}

std::set<std::string> free_vars(const Formula& f) {
    std::vector<std::string> bound;
    std::set<std::string> out;
    collect_free(f, bound, out);
    return out;
}

int quantifier_depth(const Formula& f) {
    switch (f.kind()) {
    case FormulaKind::Not:
        return quantifier_depth(f.body());
    case FormulaKind::And:
    case FormulaKind::Or:
        return std::max(quantifier_depth(f.left()), quantifier_depth(f.right()));
    case FormulaKind::Exists:
    case FormulaKind::Forall:
        return 1 + quantifier_depth(f.body());
    default:
        return 0;
    }
}

// Literals -----------------------------------------------------------------------

std::string Fact::to_string() const {
    std::string out = relation + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i > 0)
            out += ',';
        out += args[i];
    }
    return out + ")";
}

std::vector<Literal> all_literals(const Vocabulary& vocabulary, const std::vector<std::string>& universe) {
    if (universe.empty())
        throw SemanticError("the universe must be non-empty");
    std::vector<Literal> out;
    for (const auto& [name, arity] : vocabulary.relations()) {
        std::vector<std::size_t> idx(arity, 0);
        while (true) {
            Fact f{name, {}};
            for (auto i : idx)
                f.args.push_back(universe[i]);
            out.push_back({f, true});
            out.push_back({std::move(f), false});
            int k = arity - 1;
            while (k >= 0 && ++idx[k] == universe.size())
                idx[k--] = 0;
            if (k < 0)
                break;
        }
    }
    return out;
}

}  // namespace dualprov
