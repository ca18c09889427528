#include "dualprov/structure.hpp"

#include "dualprov/errors.hpp"

#include <algorithm>
#include <set>

namespace dualprov {

Domain::Domain(Vocabulary vocabulary, std::vector<std::string> universe)
    : vocabulary_(std::move(vocabulary)), universe_(std::move(universe)) {
    if (universe_.empty())
        throw SemanticError("the universe must be non-empty");
    std::set<std::string> seen;
    for (const auto& e : universe_) {
        if (!seen.insert(e).second)
            throw SemanticError("universe element '" + e + "' listed twice");
        if (vocabulary_.arity(e))
            throw SemanticError("universe element '" + e + "' clashes with a relation name");
    }
    for (const auto& c : vocabulary_.constants())
        if (!seen.count(c))
            throw SemanticError("constant '" + c + "' is not a universe element");
    for (const auto& e : universe_)
        vocabulary_.add_constant(e);

    for (const auto& [name, arity] : vocabulary_.relations()) {
        std::size_t count = 1;
        for (int i = 0; i < arity; ++i)
            count *= universe_.size();
        relations_.push_back({name, arity, fact_count_});
        fact_count_ += count;
    }
}

std::optional<std::size_t> Domain::element(std::string_view name) const {
    auto it = std::find(universe_.begin(), universe_.end(), name);
    if (it == universe_.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - universe_.begin());
}

std::optional<std::size_t> Domain::relation_index(std::string_view name) const {
    for (std::size_t r = 0; r < relations_.size(); ++r)
        if (relations_[r].name == name)
            return r;
    return std::nullopt;
}

FactId Domain::fact_id(std::size_t relation, std::span<const std::size_t> args) const {
    const auto& rel = relations_.at(relation);
    std::size_t offset = 0;
    for (auto a : args)
        offset = offset * universe_.size() + a;
    return rel.base + offset;
}

std::optional<FactId> Domain::find(const Fact& f) const {
    auto r = relation_index(f.relation);
    if (!r || relations_[*r].arity != static_cast<int>(f.args.size()))
        return std::nullopt;
    std::vector<std::size_t> args;
    for (const auto& a : f.args) {
        auto e = element(a);
        if (!e)
            return std::nullopt;
        args.push_back(*e);
    }
    return fact_id(*r, args);
}

FactId Domain::require(const Fact& f) const {
    auto r = relation_index(f.relation);
    if (!r)
        throw SemanticError("unknown relation '" + f.relation + "' in " + f.to_string());
    if (relations_[*r].arity != static_cast<int>(f.args.size()))
        throw SemanticError("arity mismatch in " + f.to_string());
    for (const auto& a : f.args)
        if (!element(a))
            throw SemanticError("'" + a + "' is not a universe element in " + f.to_string());
    return *find(f);
}

Fact Domain::fact(FactId id) const {
    if (id >= fact_count_)
        throw std::out_of_range("fact id out of range");
    auto it = std::upper_bound(relations_.begin(), relations_.end(), id,
                               [](FactId v, const Relation& r) { return v < r.base; });
    const auto& rel = *(it - 1);
    std::size_t offset = id - rel.base;
    std::vector<std::string> args(rel.arity);
    for (int i = rel.arity - 1; i >= 0; --i) {
        args[i] = universe_[offset % universe_.size()];
        offset /= universe_.size();
    }
    return {rel.name, std::move(args)};
}

DomainPtr make_domain(Vocabulary vocabulary, std::vector<std::string> universe) {
    return std::make_shared<const Domain>(std::move(vocabulary), std::move(universe));
}

Structure::Structure(DomainPtr domain) : domain_(std::move(domain)), facts_(domain_->fact_count(), false) {}

std::vector<FactId> Structure::true_facts() const {
    std::vector<FactId> out;
    for (FactId i = 0; i < facts_.size(); ++i)
        if (facts_[i])
            out.push_back(i);
    return out;
}

void require_same_domain(const Domain& a, const Domain& b) {
    if (a.universe() != b.universe())
        throw SemanticError("universe mismatch");
    if (!(a.vocabulary() == b.vocabulary()))
        throw SemanticError("vocabulary mismatch");
}

}  // namespace dualprov
