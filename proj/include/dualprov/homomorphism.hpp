#pragma once

#include "dualprov/dualpoly.hpp"
#include "dualprov/errors.hpp"
#include "dualprov/semiring.hpp"

#include <map>
#include <set>
#include <string>

namespace dualprov {

/// f: X u ~X -> K, listed explicitly with one default per polarity.
template <Semiring S>
struct TokenAssignment {
    using value_type = typename S::value_type;

    std::map<Token, value_type> values;
    value_type default_positive = S::zero();
    value_type default_negative = S::one();

    const value_type& operator()(const Token& t) const {
        if (auto it = values.find(t); it != values.end())
            return it->second;
        return t.is_positive() ? default_positive : default_negative;
    }
};

/// Throws SemanticError naming the first base name x with both x and ~x
/// declared but f(x) * f(~x) != 0.
template <Semiring S>
void check_annihilation(const TokenAssignment<S>& f, const std::set<Token>& declared) {
    for (const auto& t : declared) {
        if (!t.is_positive() || !declared.count(t.complement()))
            continue;
        if (!is_zero<S>(S::mul(f(t), f(t.complement()))))
            throw SemanticError("assignment violates annihilation for token '" + t.base + "': f(" + t.to_string() +
                                ") * f(" + t.complement().to_string() + ") != 0");
    }
}

template <Semiring S>
typename S::value_type monomial_value(const Monomial& m, const TokenAssignment<S>& f) {
    auto v = S::one();
    for (const auto& [t, e] : m.factors())
        v = S::mul(v, power<S>(f(t), e));
    return v;
}

/// The homomorphism N[X,~X] -> K extending f. The annihilation condition
/// is checked over `declared`.
template <Semiring S>
typename S::value_type eval_hom(const DualPolynomial& a, const TokenAssignment<S>& f, const std::set<Token>& declared) {
    check_annihilation(f, declared);
    auto v = S::zero();
    for (const auto& [m, c] : a.terms())
        v = S::add(v, nat_scale<S>(c, monomial_value(m, f)));
    return v;
}

/// Same, with the declared tokens taken to be those of `a`.
template <Semiring S>
typename S::value_type eval_hom(const DualPolynomial& a, const TokenAssignment<S>& f) {
    return eval_hom(a, f, a.tokens());
}

}  // namespace dualprov
