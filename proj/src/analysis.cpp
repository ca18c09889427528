#include "dualprov/analysis.hpp"

#include <algorithm>

namespace dualprov {

namespace {

void require_sentence(const Formula& phi) {
    auto vars = free_vars(phi);
    if (!vars.empty())
        throw SemanticError("expected a sentence, but '" + *vars.begin() + "' is free");
}

}  // namespace

TrackingAssumptions::TrackingAssumptions(ProvenanceInterpretation pi) : pi_(std::move(pi)) {
    if (!is_model_compatible(pi_))
        throw SemanticError("tracking assumptions must be model-compatible");
    for (FactId id = 0; id < pi_.domain()->fact_count(); ++id)
        if (const Token* t = pi_(id, true).as_token())
            table_.emplace(t->base, id);
}

std::optional<FactId> TrackingAssumptions::tracked_fact(const std::string& base) const {
    if (auto it = table_.find(base); it != table_.end())
        return it->second;
    return std::nullopt;
}

bool TrackingAssumptions::is_tracked(FactId id) const { return pi_(id, true).as_token() != nullptr; }

DualPolynomial provenance(const ProvenanceInterpretation& pi, const Formula& phi) {
    require_sentence(phi);
    return evaluate(pi, phi);
}

bool check_validity(const TrackingAssumptions& t, const Formula& phi) {
    return provenance(t, Formula::negation(phi)).is_zero();
}

bool check_satisfiability(const TrackingAssumptions& t, const Formula& phi) { return !provenance(t, phi).is_zero(); }

ModelWitness monomial_model(const TrackingAssumptions& t, const Monomial& m, const Natural& coefficient) {
    const auto& pi = t.interpretation();
    Structure s(pi.domain());
    std::set<FactId> forced;
    for (FactId id = 0; id < pi.domain()->fact_count(); ++id)
        if (pi(id, true).is_one())
            s.set(id, true);
    for (const auto& [token, e] : m.factors()) {
        auto id = t.tracked_fact(token.base);
        if (!id)
            throw SemanticError("token '" + token.to_string() + "' is not tracked");
        s.set(*id, token.is_positive());
        forced.insert(*id);
    }
    ModelWitness w{m, coefficient, std::move(s), {}};
    for (const auto& [base, id] : t.token_table())
        if (!forced.count(id))
            w.free_facts.push_back(id);
    std::sort(w.free_facts.begin(), w.free_facts.end());
    return w;
}

std::vector<ModelWitness> witnesses(const TrackingAssumptions& t, const Formula& phi, Completion completion) {
    std::vector<ModelWitness> out;
    for (const auto& [m, c] : provenance(t, phi).monomials()) {
        auto base = monomial_model(t, m, c);
        if (completion.mode == Completion::Mode::Canonical) {
            out.push_back(std::move(base));
            continue;
        }
        const auto& free = base.free_facts;
        if (free.size() >= 64 || (std::uint64_t{1} << free.size()) > completion.cap)
            throw CapExceeded("monomial " + m.to_string() + " has 2^" + std::to_string(free.size()) +
                                  " completions, over the cap of " + std::to_string(completion.cap),
                              completion.cap);
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << free.size()); ++bits) {
            ModelWitness w = base;
            for (std::size_t i = 0; i < free.size(); ++i)
                w.model.set(free[i], (bits >> i) & 1);
            out.push_back(std::move(w));
        }
    }
    return out;
}

Natural count_proof_trees(const ProvenanceInterpretation& pi, const Formula& phi) {
    return provenance(pi, phi).coefficient_sum();
}

ConfidenceResult maximize_confidence(const TrackingAssumptions& t, const Formula& phi, const ConfidenceAssignment& c) {
    auto poly = provenance(t, phi);
    if (poly.is_zero())
        throw SemanticError("provenance is 0: no compatible model satisfies the sentence");
    std::vector<MonomialScore> scores;
    const MonomialScore* best = nullptr;
    for (const auto& [m, coeff] : poly.monomials())
        scores.push_back({m, monomial_value(m, c)});
    for (const auto& s : scores)
        if (!best || s.value > best->value)
            best = &s;
    return {best->monomial, best->value, monomial_model(t, best->monomial), std::move(scores)};
}

ClearanceResult clearance(const ProvenanceInterpretation& pi, const Formula& phi, const ClearanceAssignment& levels) {
    auto poly = provenance(pi, phi);
    ClearanceResult r{eval_hom(poly, levels, declared_tokens(pi)), {}};
    for (const auto& [m, c] : poly.monomials())
        r.per_monomial.emplace_back(m, monomial_value(m, levels));
    return r;
}

UpdateResult update_model(const TrackingAssumptions& t, const Structure& old, const std::vector<Fact>& insert,
                          const std::vector<Fact>& erase, const Formula& phi) {
    const auto& pi = t.interpretation();
    require_same_domain(*pi.domain(), *old.domain());
    if (!t.compatible(old))
        throw SemanticError("the current structure is not compatible with the tracking assumptions");
    const auto& domain = *pi.domain();
    std::set<FactId> inserted;
    for (const auto& f : insert)
        inserted.insert(domain.require(f));
    Structure next = old;
    for (auto id : inserted) {
        if (pi(id, true).is_zero())
            throw SemanticError("cannot insert " + domain.fact(id).to_string() + ": it is assumed absent");
        next.set(id, true);
    }
    for (const auto& f : erase) {
        auto id = domain.require(f);
        if (inserted.count(id))
            throw SemanticError(f.to_string() + " is both inserted and deleted");
        if (pi(id, false).is_zero())
            throw SemanticError("cannot delete " + f.to_string() + ": it is assumed present");
        next.set(id, false);
    }
    auto poly = provenance(specialize(pi, next), phi);
    return {std::move(next), std::move(poly)};
}

}  // namespace dualprov
