#include "dualprov/interp.hpp"

#include <limits>

namespace dualprov {

namespace detail {

namespace {

class Compiler {
public:
    Compiler(const Domain& domain, Plan& plan) : domain_(domain), plan_(plan) {}

    std::size_t bind_free(const std::string& var, std::size_t element) {
        std::size_t slot = slots_++;
        scope_.emplace_back(var, slot);
        plan_.initial_env.push_back(element);
        return slot;
    }

    std::size_t compile(const Formula& f) {
        Plan::Node n;
        n.kind = f.kind();
        switch (f.kind()) {
        case FormulaKind::Not:
            // NNF: negation sits directly on an atom.
            n = atom(f.body(), false);
            break;
        case FormulaKind::Atom:
            n = atom(f, true);
            break;
        case FormulaKind::Eq:
        case FormulaKind::Neq:
            for (const auto& t : f.terms())
                n.args.push_back(arg(t));
            n.free_slots = slots_of(n.args);
            break;
        case FormulaKind::And:
        case FormulaKind::Or:
            n.left = compile(f.left());
            n.right = compile(f.right());
            n.free_slots = merge(plan_.nodes[n.left].free_slots, plan_.nodes[n.right].free_slots);
            n.memoize = true;
            break;
        case FormulaKind::Exists:
        case FormulaKind::Forall: {
            n.slot = slots_++;
            scope_.emplace_back(f.variable(), n.slot);
            n.left = compile(f.body());
            scope_.pop_back();
            for (auto s : plan_.nodes[n.left].free_slots)
                if (s != n.slot)
                    n.free_slots.push_back(s);
            n.memoize = true;
            break;
        }
        }
        if (n.memoize && !key_fits(n.free_slots.size()))
            n.memoize = false;
        plan_.nodes.push_back(std::move(n));
        return plan_.nodes.size() - 1;
    }

    std::size_t slot_count() const { return slots_; }

private:
    Plan::Node atom(const Formula& f, bool positive) {
        if (f.kind() != FormulaKind::Atom)
            throw std::logic_error("formula is not in negation normal form");
        Plan::Node n;
        n.positive = positive;
        auto r = domain_.relation_index(f.relation());
        if (!r)
            throw SemanticError("unknown relation '" + f.relation() + "'");
        if (domain_.relation_arity(*r) != static_cast<int>(f.terms().size()))
            throw SemanticError("arity mismatch for relation '" + f.relation() + "'");
        n.relation = *r;
        for (const auto& t : f.terms())
            n.args.push_back(arg(t));
        n.free_slots = slots_of(n.args);
        return n;
    }

    static std::vector<std::size_t> slots_of(const std::vector<Plan::Arg>& args) {
        std::vector<std::size_t> out;
        for (const auto& a : args)
            if (a.is_slot)
                out.push_back(a.index);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    Plan::Arg arg(const Term& t) {
        if (t.is_variable()) {
            for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
                if (it->first == t.name)
                    return {true, it->second};
            throw SemanticError("unbound variable '" + t.name + "'");
        }
        auto e = domain_.element(t.name);
        if (!e)
            throw SemanticError("constant '" + t.name + "' is not a universe element");
        return {false, *e};
    }

    static std::vector<std::size_t> merge(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
        std::vector<std::size_t> out;
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        return out;
    }

    bool key_fits(std::size_t vars) const {
        std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / std::max<std::size_t>(domain_.universe_size(), 1);
        std::uint64_t k = 1;
        for (std::size_t i = 0; i < vars; ++i) {
            if (k > limit)
                return false;
            k *= domain_.universe_size();
        }
        return true;
    }

    const Domain& domain_;
    Plan& plan_;
    std::vector<std::pair<std::string, std::size_t>> scope_;
    std::size_t slots_ = 0;
};

}  // namespace

Plan compile(const Formula& nnf_formula, const Domain& domain, const Valuation& nu) {
    Plan plan;
    Compiler c(domain, plan);
    for (const auto& v : free_vars(nnf_formula)) {
        auto it = nu.bindings.find(v);
        if (it == nu.bindings.end())
            throw SemanticError("free variable '" + v + "' has no binding");
        auto e = domain.element(it->second);
        if (!e)
            throw SemanticError("variable '" + v + "' is bound to '" + it->second + "', which is not a universe element");
        c.bind_free(v, *e);
    }
    plan.root = c.compile(nnf_formula);
    plan.initial_env.resize(c.slot_count(), 0);
    return plan;
}

}  // namespace detail

namespace {

bool is_constant(const DualPolynomial& p) { return p.is_zero() || p.is_one(); }

}  // namespace

bool is_provenance_tracking(const ProvenanceInterpretation& pi) {
    for (FactId id = 0; id < pi.domain()->fact_count(); ++id)
        for (bool pos : {true, false}) {
            const auto& v = pi(id, pos);
            if (is_constant(v))
                continue;
            const Token* t = v.as_token();
            if (!t || t->is_positive() != pos)
                return false;
        }
    return true;
}

bool is_model_compatible(const ProvenanceInterpretation& pi) {
    std::set<std::string> used;
    for (FactId id = 0; id < pi.domain()->fact_count(); ++id) {
        const auto& p = pi(id, true);
        const auto& n = pi(id, false);
        if ((p.is_zero() && n.is_one()) || (p.is_one() && n.is_zero()))
            continue;
        const Token* tp = p.as_token();
        const Token* tn = n.as_token();
        if (!tp || !tn || !tp->is_positive() || *tn != tp->complement())
            return false;
        if (!used.insert(tp->base).second)
            return false;
    }
    return true;
}

bool compatible_models(const ProvenanceInterpretation& pi, const Structure& s) {
    require_same_domain(*pi.domain(), *s.domain());
    for (FactId id = 0; id < pi.domain()->fact_count(); ++id)
        for (bool pos : {true, false})
            if (pi(id, pos).is_one() && !s.satisfies(id, pos))
                return false;
    return true;
}

ProvenanceInterpretation specialize(const ProvenanceInterpretation& pi, const Structure& s) {
    if (!is_model_compatible(pi))
        throw SemanticError("specialization needs a model-compatible interpretation");
    if (!compatible_models(pi, s))
        throw SemanticError("structure is not compatible with the tracking assumptions");
    ProvenanceInterpretation out = pi;
    for (FactId id = 0; id < pi.domain()->fact_count(); ++id)
        out.set(id, !s.holds(id), DualPolynomial::zero());
    return out;
}

std::set<Token> declared_tokens(const ProvenanceInterpretation& pi) {
    std::set<Token> out;
    for (FactId id = 0; id < pi.domain()->fact_count(); ++id)
        for (bool pos : {true, false}) {
            auto t = pi(id, pos).tokens();
            out.insert(t.begin(), t.end());
        }
    return out;
}

}  // namespace dualprov
