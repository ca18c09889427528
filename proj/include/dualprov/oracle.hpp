#pragma once

#include "dualprov/interp.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace dualprov {

/// A model-checking derivation of an NNF sentence. Subtrees are shared
/// between trees, so nodes are immutable.
struct ProofTree {
    enum class Kind { Literal, Equality, Or, And, Exists, Forall };

    Kind kind;
    /// The ground subformula this node proves.
    std::string label;
    /// Literal leaves: the literal and its token (none when annotated 1).
    std::optional<Literal> literal;
    std::optional<Token> token;
    /// Or: 0 for the left disjunct, 1 for the right.
    int side = 0;
    /// Exists: the chosen variable and element.
    std::string variable, witness;
    std::vector<std::shared_ptr<const ProofTree>> children;
};

using ProofTreePtr = std::shared_ptr<const ProofTree>;

/// Every proof tree of nnf(phi) whose leaves are pi-nonzero literals or
/// true equalities and whose tokens contain no complementary pair, in a
/// fixed order: left disjuncts before right, witnesses and forall children
/// in universe order. pi must annotate literals with 0, 1 or single tokens.
/// Throws CapExceeded once any partial list grows past `cap`.
std::vector<ProofTreePtr> enumerate_trees(const ProvenanceInterpretation& pi, const Formula& phi,
                                          std::size_t cap = 1 << 16);

/// Product of the leaf annotations.
Monomial tree_monomial(const ProofTree& t, const ProvenanceInterpretation& pi);

/// Sum of tree monomials over all proof trees.
DualPolynomial oracle_polynomial(const ProvenanceInterpretation& pi, const Formula& phi, std::size_t cap = 1 << 16);

/// Indented, one node per line, leaves tagged `[token]` or `[1]`.
std::string render_tree(const ProofTree& t);

}  // namespace dualprov
