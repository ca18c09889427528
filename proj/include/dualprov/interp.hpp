#pragma once

#include "dualprov/errors.hpp"
#include "dualprov/fol.hpp"
#include "dualprov/semiring.hpp"
#include "dualprov/structure.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dualprov {

/// A total map from the ground literals of a domain into a semiring.
template <Semiring S>
class KInterpretation {
public:
    using semiring = S;
    using value_type = typename S::value_type;

    /// Every fact maps to `positive`, every negated fact to `negative`.
    KInterpretation(DomainPtr domain, value_type positive, value_type negative)
        : domain_(std::move(domain)),
          positive_(domain_->fact_count(), Cell{positive}),
          negative_(domain_->fact_count(), Cell{negative}) {}

    const DomainPtr& domain() const { return domain_; }

    const value_type& operator()(FactId id, bool positive) const {
        return (positive ? positive_ : negative_).at(id).value;
    }
    const value_type& operator()(const Literal& l) const { return (*this)(domain_->require(l.fact), l.positive); }

    void set(FactId id, bool positive, value_type v) {
        (positive ? positive_ : negative_).at(id).value = std::move(v);
    }
    void set(const Literal& l, value_type v) { set(domain_->require(l.fact), l.positive, std::move(v)); }

    friend bool operator==(const KInterpretation& a, const KInterpretation& b) {
        return *a.domain_ == *b.domain_ && a.positive_ == b.positive_ && a.negative_ == b.negative_;
    }

private:
    // Avoids the std::vector<bool> proxy so operator() can return references.
    struct Cell {
        value_type value;
        friend bool operator==(const Cell&, const Cell&) = default;
    };

    DomainPtr domain_;
    std::vector<Cell> positive_;
    std::vector<Cell> negative_;
};

/// h o pi, literal by literal.
template <Semiring T, Semiring S, class F>
KInterpretation<T> compose(const KInterpretation<S>& pi, F&& h) {
    KInterpretation<T> out(pi.domain(), T::zero(), T::zero());
    for (FactId id = 0; id < pi.domain()->fact_count(); ++id)
        for (bool pos : {true, false})
            out.set(id, pos, h(pi(id, pos)));
    return out;
}

/// Variable bindings to universe element names.
struct Valuation {
    std::map<std::string, std::string> bindings;
};

namespace detail {

// An NNF formula resolved against a domain: variables become slots,
// constants become element indices.
struct Plan {
    struct Arg {
        bool is_slot;
        std::size_t index;
    };
    struct Node {
        FormulaKind kind = FormulaKind::Atom;  // Atom (with `positive`), Eq, Neq, And, Or, Exists, Forall
        bool positive = true;
        std::size_t relation = 0;
        std::vector<Arg> args;
        std::size_t left = 0, right = 0;  // children; quantifiers use `left`
        std::size_t slot = 0;             // bound slot of a quantifier
        std::vector<std::size_t> free_slots;
        bool memoize = false;
    };

    std::vector<Node> nodes;
    std::size_t root = 0;
    std::vector<std::size_t> initial_env;
};

/// Requires an NNF formula whose free variables are all bound by `nu`.
Plan compile(const Formula& nnf_formula, const Domain& domain, const Valuation& nu);

template <Semiring S>
class Evaluator {
public:
    using V = typename S::value_type;

    Evaluator(const KInterpretation<S>& pi, const Plan& plan)
        : pi_(pi), plan_(plan), env_(plan.initial_env), memo_(plan.nodes.size()) {}

    V run() { return eval(plan_.root); }

private:
    std::uint64_t key(const Plan::Node& n) const {
        std::uint64_t k = 0;
        for (auto s : n.free_slots)
            k = k * pi_.domain()->universe_size() + env_[s];
        return k;
    }

    std::size_t arg_value(const Plan::Arg& a) const { return a.is_slot ? env_[a.index] : a.index; }

    V eval(std::size_t id) {
        const auto& n = plan_.nodes[id];
        std::uint64_t k = 0;
        if (n.memoize) {
            k = key(n);
            if (auto it = memo_[id].find(k); it != memo_[id].end())
                return it->second;
        }
        V result = compute(n);
        if (n.memoize)
            memo_[id].emplace(k, result);
        return result;
    }

    V compute(const Plan::Node& n) {
        const std::size_t size = pi_.domain()->universe_size();
        switch (n.kind) {
        case FormulaKind::Atom: {
            std::size_t args[16];
            std::vector<std::size_t> wide;
            std::span<const std::size_t> view;
            if (n.args.size() <= 16) {
                for (std::size_t i = 0; i < n.args.size(); ++i)
                    args[i] = arg_value(n.args[i]);
                view = {args, n.args.size()};
            } else {
                for (const auto& a : n.args)
                    wide.push_back(arg_value(a));
                view = wide;
            }
            return pi_(pi_.domain()->fact_id(n.relation, view), n.positive);
        }
        case FormulaKind::Eq:
        case FormulaKind::Neq: {
            bool same = arg_value(n.args[0]) == arg_value(n.args[1]);
            return same == (n.kind == FormulaKind::Eq) ? S::one() : S::zero();
        }
        case FormulaKind::And:
            return S::mul(eval(n.left), eval(n.right));
        case FormulaKind::Or:
            return S::add(eval(n.left), eval(n.right));
        case FormulaKind::Exists:
        case FormulaKind::Forall: {
            bool universal = n.kind == FormulaKind::Forall;
            V acc = universal ? S::one() : S::zero();
            auto saved = env_[n.slot];
            for (std::size_t e = 0; e < size; ++e) {
                env_[n.slot] = e;
                acc = universal ? S::mul(acc, eval(n.left)) : S::add(acc, eval(n.left));
            }
            env_[n.slot] = saved;
            return acc;
        }
        case FormulaKind::Not:
            break;
        }
        throw std::logic_error("plan contains a negation node");
    }

    const KInterpretation<S>& pi_;
    const Plan& plan_;
    std::vector<std::size_t> env_;
    std::vector<std::unordered_map<std::uint64_t, V>> memo_;
};

}  // namespace detail

/// pi[[f]]_nu, by structural recursion on nnf(f). Throws SemanticError if a
/// free variable of f is unbound.
template <Semiring S>
typename S::value_type evaluate(const KInterpretation<S>& pi, const Formula& f, const Valuation& nu = {}) {
    auto plan = detail::compile(nnf(f), *pi.domain(), nu);
    return detail::Evaluator<S>(pi, plan).run();
}

/// Literal -> one if it holds in s, zero otherwise.
template <Semiring S>
KInterpretation<S> canonical_interpretation(const Structure& s) {
    KInterpretation<S> pi(s.domain(), S::zero(), S::one());
    for (auto id : s.true_facts()) {
        pi.set(id, true, S::one());
        pi.set(id, false, S::zero());
    }
    return pi;
}

inline KInterpretation<BooleanSemiring> canonical_truth(const Structure& s) {
    return canonical_interpretation<BooleanSemiring>(s);
}

inline KInterpretation<NaturalSemiring> canonical_count(const Structure& s) {
    return canonical_interpretation<NaturalSemiring>(s);
}

/// Exactly one of pi(R(a)), pi(~R(a)) is zero, for every fact.
template <Semiring S>
bool is_model_defining(const KInterpretation<S>& pi) {
    for (FactId id = 0; id < pi.domain()->fact_count(); ++id)
        if (is_zero<S>(pi(id, true)) == is_zero<S>(pi(id, false)))
            return false;
    return true;
}

template <Semiring S>
Structure defined_model(const KInterpretation<S>& pi) {
    if (!is_model_defining(pi))
        throw SemanticError("interpretation is not model-defining");
    Structure s(pi.domain());
    for (FactId id = 0; id < pi.domain()->fact_count(); ++id)
        s.set(id, !is_zero<S>(pi(id, true)));
    return s;
}

using ProvenanceInterpretation = KInterpretation<DualPolySemiring>;

/// Facts map into X u {0,1} and negated facts into ~X u {0,1}.
bool is_provenance_tracking(const ProvenanceInterpretation& pi);

/// Every fact pair is (z, ~z) for a token used nowhere else, (0, 1) or (1, 0).
bool is_model_compatible(const ProvenanceInterpretation& pi);

/// s satisfies every literal that pi maps to 1.
bool compatible_models(const ProvenanceInterpretation& pi, const Structure& s);

/// pi restricted to the literals true in s; model-defining with model s.
ProvenanceInterpretation specialize(const ProvenanceInterpretation& pi, const Structure& s);

/// The token-free lift of s (literals map to 0/1).
inline ProvenanceInterpretation truth_lift(const Structure& s) {
    return canonical_interpretation<DualPolySemiring>(s);
}

/// Tokens in the range of pi.
std::set<Token> declared_tokens(const ProvenanceInterpretation& pi);

}  // namespace dualprov
