#pragma once

#include "dualprov/fol.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dualprov {

using FactId = std::size_t;

/// A vocabulary over a fixed non-empty universe, with every ground fact
/// numbered densely: relations in name order, argument tuples in universe
/// order with the last argument varying fastest.
class Domain {
public:
    /// Universe names become the vocabulary's constants.
    Domain(Vocabulary vocabulary, std::vector<std::string> universe);

    const Vocabulary& vocabulary() const { return vocabulary_; }
    const std::vector<std::string>& universe() const { return universe_; }
    std::size_t universe_size() const { return universe_.size(); }
    std::optional<std::size_t> element(std::string_view name) const;

    std::size_t relation_count() const { return relations_.size(); }
    const std::string& relation_name(std::size_t r) const { return relations_[r].name; }
    int relation_arity(std::size_t r) const { return relations_[r].arity; }
    std::optional<std::size_t> relation_index(std::string_view name) const;

    std::size_t fact_count() const { return fact_count_; }
    FactId fact_id(std::size_t relation, std::span<const std::size_t> args) const;
    std::optional<FactId> find(const Fact& f) const;
    /// Throws SemanticError naming the problem.
    FactId require(const Fact& f) const;
    Fact fact(FactId id) const;

    friend bool operator==(const Domain& a, const Domain& b) {
        return a.vocabulary_ == b.vocabulary_ && a.universe_ == b.universe_;
    }

private:
    struct Relation {
        std::string name;
        int arity;
        std::size_t base;
    };

    Vocabulary vocabulary_;
    std::vector<std::string> universe_;
    std::vector<Relation> relations_;
    std::size_t fact_count_ = 0;
};

using DomainPtr = std::shared_ptr<const Domain>;

DomainPtr make_domain(Vocabulary vocabulary, std::vector<std::string> universe);

/// A finite model: which facts of the domain hold.
class Structure {
public:
    explicit Structure(DomainPtr domain);

    const DomainPtr& domain() const { return domain_; }
    bool holds(FactId id) const { return facts_.at(id); }
    bool satisfies(FactId id, bool positive) const { return holds(id) == positive; }
    void set(FactId id, bool value) { facts_.at(id) = value; }
    void insert(const Fact& f) { set(domain_->require(f), true); }
    void erase(const Fact& f) { set(domain_->require(f), false); }

    std::vector<FactId> true_facts() const;

    friend bool operator==(const Structure& a, const Structure& b) {
        return *a.domain_ == *b.domain_ && a.facts_ == b.facts_;
    }
    friend bool operator<(const Structure& a, const Structure& b) { return a.facts_ < b.facts_; }

private:
    DomainPtr domain_;
    std::vector<bool> facts_;
};

/// Throws SemanticError unless both refer to the same vocabulary and universe.
void require_same_domain(const Domain& a, const Domain& b);

}  // namespace dualprov
