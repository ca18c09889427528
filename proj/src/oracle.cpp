#include "dualprov/oracle.hpp"

#include <map>
#include <sstream>

namespace dualprov {

namespace {

struct Entry {
    ProofTreePtr tree;
    Monomial monomial;
};

using Entries = std::vector<Entry>;
using Env = std::map<std::string, std::string>;

class Enumerator {
public:
    Enumerator(const ProvenanceInterpretation& pi, std::size_t cap) : pi_(pi), cap_(cap) {}

    const Entries& run(const Formula& f, const Env& env) {
        std::string key = restricted_key(f, env);
        auto& slot = cache_[{f.id(), key}];
        if (!slot) {
            slot = std::make_unique<Entries>(compute(f, env));
        }
        return *slot;
    }

private:
    std::string restricted_key(const Formula& f, const Env& env) {
        auto it = free_.find(f.id());
        if (it == free_.end())
            it = free_.emplace(f.id(), free_vars(f)).first;
        std::string key;
        for (const auto& v : it->second) {
            key += env.at(v);
            key += '\0';
        }
        return key;
    }

    void check(std::size_t n) const {
        if (n > cap_)
            throw CapExceeded("more than " + std::to_string(cap_) + " proof trees", n);
    }

    std::string ground(const Term& t, const Env& env) const { return t.is_variable() ? env.at(t.name) : t.name; }

    Entries literal(const Formula& atom, bool positive, const Env& env) {
        Fact fact{atom.relation(), {}};
        for (const auto& t : atom.terms())
            fact.args.push_back(ground(t, env));
        Literal lit{fact, positive};
        const auto& v = pi_(lit);
        if (v.is_zero())
            return {};
        auto node = std::make_shared<ProofTree>();
        node->kind = ProofTree::Kind::Literal;
        node->label = lit.to_string();
        node->literal = lit;
        Monomial m;
        if (const Token* t = v.as_token()) {
            node->token = *t;
            m = Monomial(*t);
        } else if (!v.is_one()) {
            throw SemanticError("proof trees need literals annotated by 0, 1 or a single token; " + lit.to_string() +
                                " is annotated " + v.to_string());
        }
        return {{std::move(node), std::move(m)}};
    }

    Entries compute(const Formula& f, const Env& env) {
        switch (f.kind()) {
        case FormulaKind::Atom:
            return literal(f, true, env);
        case FormulaKind::Not:
            return literal(f.body(), false, env);
        case FormulaKind::Eq:
        case FormulaKind::Neq: {
            bool same = ground(f.terms()[0], env) == ground(f.terms()[1], env);
            if (same != (f.kind() == FormulaKind::Eq))
                return {};
            auto node = std::make_shared<ProofTree>();
            node->kind = ProofTree::Kind::Equality;
            node->label = f.to_string(env);
            return {{std::move(node), Monomial()}};
        }
        case FormulaKind::Or: {
            Entries out;
            for (int side : {0, 1}) {
                for (const auto& e : run(side == 0 ? f.left() : f.right(), env)) {
                    auto node = std::make_shared<ProofTree>();
                    node->kind = ProofTree::Kind::Or;
                    node->label = f.to_string(env);
                    node->side = side;
                    node->children = {e.tree};
                    out.push_back({std::move(node), e.monomial});
                    check(out.size());
                }
            }
            return out;
        }
        case FormulaKind::And: {
            const auto& left = run(f.left(), env);
            if (left.empty())
                return {};
            const auto& right = run(f.right(), env);
            std::vector<Entries> parts{left, right};
            return combine(ProofTree::Kind::And, f.to_string(env), parts);
        }
        case FormulaKind::Exists: {
            Entries out;
            Env inner = env;
            for (const auto& a : pi_.domain()->universe()) {
                inner[f.variable()] = a;
                for (const auto& e : run(f.body(), inner)) {
                    auto node = std::make_shared<ProofTree>();
                    node->kind = ProofTree::Kind::Exists;
                    node->label = f.to_string(env);
                    node->variable = f.variable();
                    node->witness = a;
                    node->children = {e.tree};
                    out.push_back({std::move(node), e.monomial});
                    check(out.size());
                }
            }
            return out;
        }
        case FormulaKind::Forall: {
            std::vector<Entries> parts;
            Env inner = env;
            for (const auto& a : pi_.domain()->universe()) {
                inner[f.variable()] = a;
                parts.push_back(run(f.body(), inner));
                if (parts.back().empty())
                    return {};
            }
            return combine(ProofTree::Kind::Forall, f.to_string(env), parts);
        }
        }
        return {};
    }

    // All consistent choices of one tree per part, first part varying slowest.
    Entries combine(ProofTree::Kind kind, const std::string& label, const std::vector<Entries>& parts) {
        struct Partial {
            std::vector<ProofTreePtr> children;
            Monomial monomial;
        };
        std::vector<Partial> acc{{{}, Monomial()}};
        for (const auto& part : parts) {
            std::vector<Partial> next;
            for (const auto& p : acc)
                for (const auto& e : part) {
                    Monomial m;
                    if (!Monomial::multiply(p.monomial, e.monomial, m))
                        continue;
                    auto children = p.children;
                    children.push_back(e.tree);
                    next.push_back({std::move(children), std::move(m)});
                    check(next.size());
                }
            acc = std::move(next);
            if (acc.empty())
                return {};
        }
        Entries out;
        for (auto& p : acc) {
            auto node = std::make_shared<ProofTree>();
            node->kind = kind;
            node->label = label;
            node->children = std::move(p.children);
            out.push_back({std::move(node), std::move(p.monomial)});
        }
        return out;
    }

    const ProvenanceInterpretation& pi_;
    std::size_t cap_;
    std::map<std::pair<const void*, std::string>, std::unique_ptr<Entries>> cache_;
    std::map<const void*, std::set<std::string>> free_;
};

void render(const ProofTree& t, int depth, std::ostringstream& out) {
    out << std::string(2 * depth, ' ') << t.label;
    switch (t.kind) {
    case ProofTree::Kind::Literal:
        out << "  [" << (t.token ? t.token->to_string() : "1") << "]";
        break;
    case ProofTree::Kind::Equality:
        out << "  [1]";
        break;
    case ProofTree::Kind::Or:
        out << "  (" << (t.side == 0 ? "left" : "right") << ")";
        break;
    case ProofTree::Kind::Exists:
        out << "  (" << t.variable << " := " << t.witness << ")";
        break;
    default:
        break;
    }
    out << '\n';
    for (const auto& c : t.children)
        render(*c, depth + 1, out);
}

}  // namespace

std::vector<ProofTreePtr> enumerate_trees(const ProvenanceInterpretation& pi, const Formula& phi, std::size_t cap) {
    if (!is_sentence(phi))
        throw SemanticError("proof trees are defined for sentences only");
    Enumerator e(pi, cap);
    std::vector<ProofTreePtr> out;
    for (const auto& entry : e.run(nnf(phi), {}))
        out.push_back(entry.tree);
    return out;
}

Monomial tree_monomial(const ProofTree& t, const ProvenanceInterpretation& pi) {
    Monomial m;
    if (t.kind == ProofTree::Kind::Literal) {
        if (const Token* tok = pi(*t.literal).as_token())
            m = Monomial(*tok);
        return m;
    }
    for (const auto& c : t.children) {
        Monomial next;
        if (!Monomial::multiply(m, tree_monomial(*c, pi), next))
            throw std::logic_error("proof tree uses a complementary token pair");
        m = std::move(next);
    }
    return m;
}

DualPolynomial oracle_polynomial(const ProvenanceInterpretation& pi, const Formula& phi, std::size_t cap) {
    DualPolynomial p;
    for (const auto& t : enumerate_trees(pi, phi, cap))
        p += DualPolynomial::monomial(tree_monomial(*t, pi));
    return p;
}

std::string render_tree(const ProofTree& t) {
    std::ostringstream out;
    render(t, 0, out);
    return out.str();
}

}  // namespace dualprov
