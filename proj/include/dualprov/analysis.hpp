#pragma once

#include "dualprov/homomorphism.hpp"
#include "dualprov/interp.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dualprov {

/// A model-compatible provenance interpretation together with the
/// token -> fact table it induces.
class TrackingAssumptions {
public:
    /// Throws SemanticError unless pi is model-compatible.
    explicit TrackingAssumptions(ProvenanceInterpretation pi);

    const ProvenanceInterpretation& interpretation() const { return pi_; }
    const DomainPtr& domain() const { return pi_.domain(); }
    /// Base name -> the fact it tracks.
    const std::map<std::string, FactId>& token_table() const { return table_; }
    std::optional<FactId> tracked_fact(const std::string& base) const;

    /// Tracked (token) facts may go either way; others are fixed.
    bool is_tracked(FactId id) const;
    bool compatible(const Structure& s) const { return compatible_models(pi_, s); }

private:
    ProvenanceInterpretation pi_;
    std::map<std::string, FactId> table_;
};

DualPolynomial provenance(const ProvenanceInterpretation& pi, const Formula& phi);
inline DualPolynomial provenance(const TrackingAssumptions& t, const Formula& phi) {
    return provenance(t.interpretation(), phi);
}

/// phi holds in every compatible model iff the provenance of ~phi is 0.
bool check_validity(const TrackingAssumptions& t, const Formula& phi);
/// Some compatible model satisfies phi iff the provenance of phi is nonzero.
bool check_satisfiability(const TrackingAssumptions& t, const Formula& phi);

struct ModelWitness {
    Monomial monomial;
    Natural coefficient;
    Structure model;
    /// Tracked facts the monomial leaves open.
    std::vector<FactId> free_facts;
};

struct Completion {
    enum class Mode { Canonical, Enumerate };
    Mode mode = Mode::Canonical;
    std::size_t cap = 64;

    static Completion canonical() { return {}; }
    static Completion enumerate(std::size_t cap = 64) { return {Mode::Enumerate, cap}; }
};

/// The smallest structure compatible with t making every literal of m true.
/// Throws SemanticError if m names an untracked token.
ModelWitness monomial_model(const TrackingAssumptions& t, const Monomial& m, const Natural& coefficient = 1);

/// Models read off the monomials of the provenance of phi, in canonical
/// monomial order. Enumerate lists every completion of the free facts
/// (free facts false first, counting in fact order) and throws CapExceeded
/// when a monomial has more than `cap` of them.
std::vector<ModelWitness> witnesses(const TrackingAssumptions& t, const Formula& phi,
                                    Completion completion = Completion::canonical());

Natural count_proof_trees(const ProvenanceInterpretation& pi, const Formula& phi);
inline Natural count_proof_trees(const TrackingAssumptions& t, const Formula& phi) {
    return count_proof_trees(t.interpretation(), phi);
}

using ConfidenceAssignment = TokenAssignment<ViterbiSemiring>;

struct MonomialScore {
    Monomial monomial;
    double value;
};

struct ConfidenceResult {
    Monomial monomial;
    double value;
    ModelWitness witness;
    /// Every monomial of the provenance with its score, canonical order.
    std::vector<MonomialScore> scores;
};

/// Picks the monomial with the highest product of token scores; ties go to
/// the canonically smallest. Throws SemanticError on zero provenance.
ConfidenceResult maximize_confidence(const TrackingAssumptions& t, const Formula& phi, const ConfidenceAssignment& c);

using ClearanceAssignment = TokenAssignment<AccessSemiring>;

struct ClearanceResult {
    AccessLevel overall;
    std::vector<std::pair<Monomial, AccessLevel>> per_monomial;
};

/// Requires levels(x) * levels(~x) = 0 for every declared pair.
ClearanceResult clearance(const ProvenanceInterpretation& pi, const Formula& phi, const ClearanceAssignment& levels);

struct UpdateResult {
    Structure model;
    DualPolynomial polynomial;
};

/// Applies the edits to `old` and recomputes the provenance of phi from the
/// specialization of t at the new structure.
UpdateResult update_model(const TrackingAssumptions& t, const Structure& old, const std::vector<Fact>& insert,
                          const std::vector<Fact>& erase, const Formula& phi);

}  // namespace dualprov
