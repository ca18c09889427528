#pragma once

#include "dualprov/analysis.hpp"
#include "dualprov/io.hpp"
#include "dualprov/oracle.hpp"

#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace testing {

using namespace dualprov;

inline std::string slurp(const std::string& name) {
    std::ifstream in(std::string(DUALPROV_TEST_DATA) + "/" + name);
    if (!in)
        throw std::runtime_error("missing test data " + name);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline StructureFile structure(const std::string& name) { return parse_structure(slurp(name)); }
inline ProvenanceInterpretation tracking(const std::string& name) { return parse_tracking(slurp(name)); }
inline DualPolynomial poly(const std::string& text) { return DualPolynomial::parse(text); }

inline const char* kPhi = "A x. ~(A y. (x = y | (E(x,y) & ~E(y,x))))";
inline const char* kTau = "E x. A y. E(x,y) -> A y. E x. E(x,y)";
inline const char* kNegPhi = "~(A x. ~(A y. (x = y | (E(x,y) & ~E(y,x)))))";

inline Formula parse(const std::string& text, const DomainPtr& d) { return parse_formula(text, d->vocabulary()); }

inline DomainPtr graph_domain(std::vector<std::string> universe) {
    Vocabulary v;
    v.add_relation("E", 2);
    return make_domain(v, std::move(universe));
}

// Textbook satisfaction, straight off the formula (negation included), with
// no semiring machinery.
inline bool holds(const Structure& s, const Formula& f, std::map<std::string, std::string>& env) {
    const auto& d = *s.domain();
    auto ground = [&](const Term& t) { return t.is_variable() ? env.at(t.name) : t.name; };
    switch (f.kind()) {
    case FormulaKind::Atom: {
        Fact fact{f.relation(), {}};
        for (const auto& t : f.terms())
            fact.args.push_back(ground(t));
        return s.holds(d.require(fact));
    }
    case FormulaKind::Eq:
        return ground(f.terms()[0]) == ground(f.terms()[1]);
    case FormulaKind::Neq:
        return ground(f.terms()[0]) != ground(f.terms()[1]);
    case FormulaKind::Not:
        return !holds(s, f.body(), env);
    case FormulaKind::And:
        return holds(s, f.left(), env) && holds(s, f.right(), env);
    case FormulaKind::Or:
        return holds(s, f.left(), env) || holds(s, f.right(), env);
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
        bool universal = f.kind() == FormulaKind::Forall;
        auto saved = env.count(f.variable()) ? std::optional(env[f.variable()]) : std::nullopt;
        bool result = universal;
        for (const auto& a : d.universe()) {
            env[f.variable()] = a;
            bool b = holds(s, f.body(), env);
            if (b != universal) {
                result = b;
                break;
            }
        }
        if (saved)
            env[f.variable()] = *saved;
        else
            env.erase(f.variable());
        return result;
    }
    }
    return false;
}

inline bool holds(const Structure& s, const Formula& f) {
    std::map<std::string, std::string> env;
    return holds(s, f, env);
}

inline std::vector<Structure> all_structures(const DomainPtr& d) {
    std::vector<Structure> out;
    const auto n = d->fact_count();
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        Structure s(d);
        for (FactId i = 0; i < n; ++i)
            s.set(i, (bits >> i) & 1);
        out.push_back(std::move(s));
    }
    return out;
}

// Every fact tracked by its own token x0, x1, ... .
inline ProvenanceInterpretation full_tracking(const DomainPtr& d) {
    ProvenanceInterpretation pi(d, DualPolynomial::zero(), DualPolynomial::one());
    for (FactId i = 0; i < d->fact_count(); ++i) {
        auto t = Token::positive("x" + std::to_string(i));
        pi.set(i, true, DualPolynomial::token(t));
        pi.set(i, false, DualPolynomial::token(t.complement()));
    }
    return pi;
}

// Every model-defining tracking of s where each fact is either tracked by
// its own token or fixed to 0/1.
inline std::vector<ProvenanceInterpretation> model_defining_trackings(const Structure& s) {
    std::vector<ProvenanceInterpretation> out;
    const auto& d = s.domain();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d->fact_count()); ++mask) {
        auto pi = truth_lift(s);
        for (FactId i = 0; i < d->fact_count(); ++i)
            if ((mask >> i) & 1) {
                auto t = Token::positive("x" + std::to_string(i));
                if (s.holds(i))
                    pi.set(i, true, DualPolynomial::token(t));
                else
                    pi.set(i, false, DualPolynomial::token(t.complement()));
            }
        out.push_back(std::move(pi));
    }
    return out;
}

// Multiplies out in the free polynomial semiring, keeping p * ~p terms, and
// only then deletes every term with a complementary pair.
inline DualPolynomial multiply_then_normalize(const DualPolynomial& a, const DualPolynomial& b) {
    std::map<std::vector<Token>, Natural> raw;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            std::vector<Token> tokens;
            for (const auto* m : {&ma, &mb})
                for (const auto& [t, e] : m->factors())
                    tokens.insert(tokens.end(), e, t);
            std::sort(tokens.begin(), tokens.end());
            raw[tokens] += ca * cb;
        }
    DualPolynomial out;
    for (const auto& [tokens, c] : raw) {
        bool dead = false;
        for (const auto& t : tokens)
            dead = dead || std::binary_search(tokens.begin(), tokens.end(), t.complement());
        if (dead)
            continue;
        std::vector<Monomial::Factor> factors;
        for (const auto& t : tokens)
            factors.emplace_back(t, 1);
        out += DualPolynomial::monomial(Monomial::from_factors(factors), c);
    }
    return out;
}

// ---------------------------------------------------------------- generators

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

template <Semiring S>
typename S::value_type random_value(Rng& rng);

template <>
inline bool random_value<BooleanSemiring>(Rng& rng) { return coin(rng); }
template <>
inline Natural random_value<NaturalSemiring>(Rng& rng) { return Natural(pick(rng, 4)); }
template <>
inline double random_value<TropicalSemiring>(Rng& rng) {
    auto k = pick(rng, 10);
    return k == 9 ? TropicalSemiring::zero() : 0.25 * k;
}
// Multiples of 1/8: products of a few stay exact in binary.
template <>
inline double random_value<ViterbiSemiring>(Rng& rng) { return pick(rng, 9) / 8.0; }
template <>
inline double random_value<FuzzySemiring>(Rng& rng) { return pick(rng, 9) / 8.0; }
template <>
inline AccessLevel random_value<AccessSemiring>(Rng& rng) { return static_cast<AccessLevel>(pick(rng, 5)); }
template <>
inline PosBool random_value<PosBoolSemiring>(Rng& rng) {
    PosBool v;
    const char* names[] = {"x", "y", "z"};
    for (std::size_t c = pick(rng, 3); c > 0; --c) {
        PosBool clause = PosBool::top();
        for (const char* n : names)
            if (coin(rng, 0.4))
                clause = clause & PosBool::variable(n);
        v = v | clause;
    }
    return v;
}

// At most 4 base tokens, degree at most 3, small coefficients.
inline DualPolynomial random_poly(Rng& rng, std::size_t max_terms = 3) {
    const char* names[] = {"p", "q", "r", "s"};
    DualPolynomial v;
    for (std::size_t n = pick(rng, max_terms + 1); n > 0; --n) {
        DualPolynomial m = DualPolynomial::constant(1 + pick(rng, 2));
        for (std::size_t d = pick(rng, 4); d > 0; --d) {
            Token t{names[pick(rng, 4)], coin(rng) ? Polarity::Positive : Polarity::Negative};
            m *= DualPolynomial::token(t);
        }
        v += m;
    }
    return v;
}

template <>
inline DualPolynomial random_value<DualPolySemiring>(Rng& rng) { return random_poly(rng); }

template <Semiring S>
KInterpretation<S> random_interpretation(const DomainPtr& d, Rng& rng) {
    KInterpretation<S> pi(d, S::zero(), S::zero());
    for (FactId i = 0; i < d->fact_count(); ++i)
        for (bool pos : {true, false})
            pi.set(i, pos, random_value<S>(rng));
    return pi;
}

template <Semiring S>
typename S::value_type random_nonzero(Rng& rng) {
    for (;;) {
        auto v = random_value<S>(rng);
        if (!is_zero<S>(v))
            return v;
    }
}

// Exactly one literal of each pair nonzero.
template <Semiring S>
KInterpretation<S> random_model_defining(const DomainPtr& d, Rng& rng) {
    KInterpretation<S> pi(d, S::zero(), S::zero());
    for (FactId i = 0; i < d->fact_count(); ++i)
        pi.set(i, coin(rng), random_nonzero<S>(rng));
    return pi;
}

// Z/4Z, only to show what goes wrong outside +-positive semirings.
struct Z4 {
    using value_type = int;
    static constexpr SemiringKind kind = SemiringKind::Natural;
    static constexpr bool is_idempotent = false;
    static constexpr bool is_plus_positive = false;
    static constexpr bool is_positive = false;
    static int zero() { return 0; }
    static int one() { return 1; }
    static int add(int a, int b) { return (a + b) % 4; }
    static int mul(int a, int b) { return (a * b) % 4; }
    static std::string format(int a) { return std::to_string(a); }
    static int parse(std::string_view t) { return std::stoi(std::string(t)) % 4; }
};

template <>
inline int random_value<Z4>(Rng& rng) { return static_cast<int>(pick(rng, 4)); }

// Random formulas over one binary relation E, variables x y z, and
// optionally the constants of the domain. Depth counts quantifiers.
struct FormulaGen {
    Rng& rng;
    std::vector<std::string> constants;
    bool allow_negation = true;

    Term term(const std::vector<std::string>& bound) {
        if (!constants.empty() && (bound.empty() || coin(rng, 0.2)))
            return Term::constant(constants[pick(rng, constants.size())]);
        return Term::variable(bound[pick(rng, bound.size())]);
    }

    Formula leaf(const std::vector<std::string>& bound) {
        if (bound.empty() && constants.empty())
            return Formula::exists("x", Formula::atom("E", {Term::variable("x"), Term::variable("x")}));
        auto k = pick(rng, 6);
        if (k == 0)
            return coin(rng) ? Formula::equals(term(bound), term(bound)) : Formula::not_equals(term(bound), term(bound));
        auto atom = Formula::atom("E", {term(bound), term(bound)});
        return coin(rng) ? atom : Formula::negation(atom);
    }

    Formula formula(int depth, std::vector<std::string> bound, int size = 4) {
        if (size <= 0 || (depth == 0 && coin(rng, 0.6)))
            return leaf(bound);
        auto k = pick(rng, allow_negation ? 6 : 5);
        if (depth > 0 && k < 2) {
            static const char* vars[] = {"x", "y", "z"};
            std::string v = vars[pick(rng, 3)];
            bound.push_back(v);
            auto body = formula(depth - 1, bound, size - 1);
            return k == 0 ? Formula::exists(v, body) : Formula::forall(v, body);
        }
        if (k == 5)
            return Formula::negation(formula(depth, bound, size - 1));
        auto a = formula(depth, bound, size - 1), b = formula(depth, bound, size - 2);
        return k % 2 ? Formula::conjunction(a, b) : Formula::disjunction(a, b);
    }

    /// Wraps free variables in random quantifiers so the result is a sentence.
    Formula sentence(int depth) {
        auto f = formula(depth, {});
        for (const auto& v : free_vars(f))
            f = coin(rng) ? Formula::exists(v, f) : Formula::forall(v, f);
        return f;
    }
};

}  // namespace testing
