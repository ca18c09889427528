#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace dualprov {

/// Relation symbols with arities, plus the constant names (which denote
/// universe elements directly).
class Vocabulary {
public:
    void add_relation(const std::string& name, int arity);
    void add_constant(const std::string& name);

    std::optional<int> arity(std::string_view relation) const;
    bool is_constant(std::string_view name) const { return constants_.count(std::string(name)) > 0; }

    /// Sorted by name.
    const std::map<std::string, int, std::less<>>& relations() const { return relations_; }
    const std::set<std::string>& constants() const { return constants_; }

    friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

private:
    std::map<std::string, int, std::less<>> relations_;
    std::set<std::string> constants_;
};

struct Term {
    enum class Kind : std::uint8_t { Variable, Constant };
    Kind kind;
    std::string name;

    static Term variable(std::string n) { return {Kind::Variable, std::move(n)}; }
    static Term constant(std::string n) { return {Kind::Constant, std::move(n)}; }
    bool is_variable() const { return kind == Kind::Variable; }

    friend bool operator==(const Term&, const Term&) = default;
};

enum class FormulaKind : std::uint8_t { Atom, Eq, Neq, Not, And, Or, Exists, Forall };

/// Immutable first-order formula. Copies share structure.
class Formula {
public:
    static Formula atom(std::string relation, std::vector<Term> terms);
    static Formula equals(Term a, Term b);
    static Formula not_equals(Term a, Term b);
    static Formula negation(Formula f);
    static Formula conjunction(Formula a, Formula b);
    static Formula disjunction(Formula a, Formula b);
    static Formula exists(std::string variable, Formula body);
    static Formula forall(std::string variable, Formula body);
    /// `~a | b`.
    static Formula implication(Formula a, Formula b);

    FormulaKind kind() const;
    /// Atom only.
    const std::string& relation() const;
    /// Atom, Eq and Neq.
    const std::vector<Term>& terms() const;
    /// Not, Exists and Forall: the operand. And/Or: the left operand.
    const Formula& body() const;
    const Formula& left() const { return body(); }
    const Formula& right() const;
    /// Exists and Forall.
    const std::string& variable() const;

    /// Stable identity of the shared node; equal for copies.
    const void* id() const { return node_.get(); }

    /// Concrete syntax accepted by parse_formula.
    std::string to_string() const;
    /// Same, with variables replaced by the bound ground values.
    std::string to_string(const std::map<std::string, std::string>& valuation) const;

    friend bool operator==(const Formula& a, const Formula& b);

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    std::shared_ptr<const Node> node_;
};

/// Parses the concrete syntax:
///
///     formula := or ( ("->" | "<->") formula )?
///     or      := and ( "|" and )*
///     and     := neg ( "&" neg )*
///     neg     := "~" neg | quant | atom
///     quant   := ("A" | "E") var "." or
///     atom    := name "(" term ("," term)* ")" | term "=" term
///              | term "!=" term | "(" formula ")"
///
/// A quantifier body runs right over `&` and `|` but stops at `->`, so
/// `E x. A y. E(x,y) -> A y. E x. E(x,y)` is an implication between two
/// quantified sentences. `f -> g` becomes `~f | g`; `f <-> g` becomes
/// `(~f | g) & (~g | f)`. A name is a constant iff the vocabulary
/// declares it; relation names and arities are checked.
Formula parse_formula(std::string_view src, const Vocabulary& vocabulary);

/// Pushes negations down to relational atoms, swapping `=` and `!=`.
Formula nnf(const Formula& f);
bool is_nnf(const Formula& f);

std::set<std::string> free_vars(const Formula& f);
inline bool is_sentence(const Formula& f) { return free_vars(f).empty(); }

/// Quantifier nesting depth.
int quantifier_depth(const Formula& f);

struct Fact {
    std::string relation;
    std::vector<std::string> args;

    std::string to_string() const;
    friend auto operator<=>(const Fact&, const Fact&) = default;
};

struct Literal {
    Fact fact;
    bool positive = true;

    Literal complement() const { return {fact, !positive}; }
    std::string to_string() const { return (positive ? "" : "~") + fact.to_string(); }
    friend bool operator==(const Literal&, const Literal&) = default;
};

/// Every ground literal, ordered by relation name, then argument tuples in
/// universe order, each fact directly followed by its negation.
std::vector<Literal> all_literals(const Vocabulary& vocabulary, const std::vector<std::string>& universe);

}  // namespace dualprov
