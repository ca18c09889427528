#include "support.hpp"

#include <doctest.h>

using namespace testing;

TEST_CASE("tokens") {
    auto p = Token::positive("p");
    CHECK(p.complement().complement() == p);
    CHECK(p.complement().base == "p");
    CHECK(p.complements(Token::negative("p")));
    CHECK_FALSE(p.complements(Token::negative("q")));
    CHECK(Token::parse("~r") == Token::negative("r"));
    CHECK(Token::negative("r").to_string() == "~r");
    CHECK(Token::positive("p") < Token::negative("p"));
    CHECK(Token::negative("p") < Token::positive("q"));
    CHECK_THROWS_AS(Token::parse("~"), ParseError);
    CHECK_THROWS_AS(Token::parse("p q"), ParseError);
}

TEST_CASE("monomials") {
    auto m = Monomial::from_factors({{Token::positive("q"), 1}, {Token::positive("p"), 2}, {Token::positive("q"), 1}});
    CHECK(m.to_string() == "p^2*q^2");
    CHECK(m.degree() == 4);
    CHECK(m.exponent(Token::positive("q")) == 2);
    CHECK_FALSE(m.contains(Token::negative("q")));
    CHECK(Monomial().is_unit());
    CHECK(Monomial().to_string() == "1");
    CHECK_THROWS_AS(Monomial::from_factors({{Token::positive("p"), 1}, {Token::negative("p"), 1}}),
                    std::invalid_argument);

    Monomial out;
    CHECK_FALSE(Monomial::multiply(Monomial(Token::positive("p")), Monomial(Token::negative("p")), out));
    CHECK(Monomial::multiply(Monomial(Token::positive("p")), Monomial(Token::negative("q")), out));
    CHECK(out.to_string() == "p*~q");
    // the complement check must also fire when one side repeats a token
    auto pp = Monomial::from_factors({{Token::positive("p"), 1}, {Token::positive("q"), 1}});
    auto pq = Monomial::from_factors({{Token::positive("p"), 1}, {Token::negative("q"), 1}});
    CHECK_FALSE(Monomial::multiply(pp, pq, out));
}

TEST_CASE("canonical order is graded lexicographic") {
    auto order = [](const std::string& text) {
        std::vector<std::string> out;
        for (const auto& [m, c] : poly(text).monomials())
            out.push_back(m.to_string());
        return out;
    };
    CHECK(order("q + 2*p") == std::vector<std::string>{"p", "q"});
    CHECK(order("~p*q*~s*t + p*r*~t") == std::vector<std::string>{"p*r*~t", "~p*q*~s*t"});
    CHECK(order("p*q + ~p + 1 + p") == std::vector<std::string>{"1", "p", "~p", "p*q"});
    CHECK(order("p^2 + p*q") == std::vector<std::string>{"p^2", "p*q"});
    auto ms = poly("2*p + q").monomials();
    REQUIRE(ms.size() == 2);
    CHECK(ms[0].second == 2);
    CHECK(ms[1].second == 1);
    CHECK(poly("1").monomials().size() == 1);
    CHECK(poly("1").monomials()[0].first.is_unit());
}

TEST_CASE("rendering") {
    CHECK(DualPolynomial::zero().to_string() == "0");
    CHECK(DualPolynomial::one().to_string() == "1");
    CHECK(poly("p + p").to_string() == "2*p");
    CHECK(poly("q*q*3").to_string() == "3*q^2");
    CHECK(poly("(~r + t)*p*(1 + q + ~s)").to_string() == "p*~r + p*t + p*q*~r + p*q*t + p*~r*~s + p*~s*t");
    CHECK(poly("3").to_string() == "3");
    Rng rng(41);
    for (int i = 0; i < 300; ++i) {
        auto a = random_poly(rng, 4);
        CHECK(poly(a.to_string()) == a);
    }
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(poly("p +"), ParseError);
    CHECK_THROWS_AS(poly("(p"), ParseError);
    CHECK_THROWS_AS(poly("p^100000"), ParseError);
    CHECK_THROWS_AS(poly("p $ q"), ParseError);
    CHECK_THROWS_AS(poly(""), ParseError);
}

TEST_CASE("addition") {
    CHECK(poly("~p + t") + poly("~r") == poly("~p + ~r + t"));
    CHECK((poly("~p + t") + poly("~r")).size() == 3);
    CHECK(poly("p*q") + DualPolynomial::zero() == poly("p*q"));
    CHECK(poly("p") + poly("p") == poly("2*p"));
}

TEST_CASE("multiplication applies the quotient") {
    auto big = poly("~p + ~r + t") * poly("p + ~q + s + ~t") * poly("1 + q + r + ~s");
    CHECK(big.size() == 30);
    for (const auto& [m, c] : big.terms())
        CHECK(c == 1);
    CHECK((poly("p*r + q*s") * poly("~q*~r + ~p*~s")).is_zero());
    CHECK((poly("p") * poly("~p")).is_zero());
    CHECK(poly("p + q") * poly("p + q") == poly("p^2 + 2*p*q + q^2"));
}

TEST_CASE("normalization matches multiply-then-delete") {
    Rng rng(42);
    for (int i = 0; i < 1000; ++i) {
        auto a = random_poly(rng, 4), b = random_poly(rng, 4);
        auto product = a * b;
        CHECK(product == multiply_then_normalize(a, b));
        for (const auto& [m, c] : product.terms())
            for (const auto& [t, e] : m.factors())
                CHECK_FALSE(m.contains(t.complement()));
    }
}

TEST_CASE("substitute_zero") {
    auto big = poly("(~p + ~r + t)*(p + ~q + s + ~t)*(1 + q + r + ~s)");
    auto kill = [](std::initializer_list<const char*> names) {
        std::set<Token> out;
        for (auto n : names)
            out.insert(Token::parse(n));
        return out;
    };
    CHECK(big.substitute_zero(kill({"p", "q", "r", "s", "t"})) == poly("(~p + ~r)*(~q + ~t)*(1 + ~s)"));
    CHECK(big.substitute_zero(kill({"p", "q", "r", "s", "t"})).size() == 8);
    CHECK(big.substitute_zero(kill({"~p", "~q", "~r", "~s", "~t"})) == poly("t*(p + s)*(1 + q + r)"));
    CHECK(big.substitute_zero(kill({"~p", "~q", "~r", "~s", "~t"})).size() == 6);
    CHECK(big.substitute_zero({}) == big);

    Rng rng(43);
    for (int i = 0; i < 300; ++i) {
        auto a = random_poly(rng, 4);
        std::set<Token> k;
        TokenAssignment<DualPolySemiring> f;
        for (const char* n : {"p", "q", "r", "s"})
            for (auto pol : {Polarity::Positive, Polarity::Negative}) {
                Token t{n, pol};
                bool killed = coin(rng, 0.3);
                if (killed)
                    k.insert(t);
                f.values[t] = killed ? DualPolynomial::zero() : DualPolynomial::token(t);
            }
        CHECK(a.substitute_zero(k) == eval_hom(a, f, {}));
    }
}

TEST_CASE("coefficient_sum") {
    CHECK(poly("p*~r + p*t + p*q*~r + p*q*t + p*~r*~s + p*~s*t").coefficient_sum() == 6);
    CHECK(DualPolynomial::zero().coefficient_sum() == 0);
    CHECK(poly("(~p + ~r)*(~q + ~t)*(1 + ~s)").coefficient_sum() == 8);
    CHECK(poly("3*p + q").coefficient_sum() == 4);
}

TEST_CASE("eval_hom examples") {
    TokenAssignment<ViterbiSemiring> f;
    f.values = {{Token::positive("p"), 0.9}, {Token::positive("q"), 0.9}, {Token::positive("t"), 0.2},
                {Token::negative("r"), 0.6}, {Token::negative("s"), 0.6}};
    auto beta_phi = poly("p*~r + p*t + p*q*~r + p*q*t + p*~r*~s + p*~s*t");
    CHECK(std::fabs(eval_hom(beta_phi, f) - 0.54) <= 1e-12);
    CHECK(eval_hom(poly("p*(~r + t)*(1 + q + ~s)"), f) == eval_hom(beta_phi, f));

    TokenAssignment<DualPolySemiring> id;
    for (const auto& t : beta_phi.tokens())
        id.values[t] = DualPolynomial::token(t);
    CHECK(eval_hom(beta_phi, id) == beta_phi);

    TokenAssignment<ViterbiSemiring> third;
    for (const char* n : {"p", "q", "r", "s", "t"}) {
        third.values[Token::positive(n)] = 1.0 / 3;
        third.values[Token::negative(n)] = 1.0 / 3;
    }
    auto neg_phi = poly("p*r*~t + ~p*q*~s*t");
    auto ms = neg_phi.monomials();
    CHECK(std::fabs(monomial_value(ms[0].first, third) - 1.0 / 27) <= 1e-12);
    CHECK(std::fabs(monomial_value(ms[1].first, third) - 1.0 / 81) <= 1e-12);
    // the whole polynomial is only defined for consistent assignments
    CHECK_THROWS_AS(eval_hom(neg_phi, third), SemanticError);
    CHECK(std::fabs(eval_hom(neg_phi, third, {}) - 1.0 / 27) <= 1e-12);
}

TEST_CASE("eval_hom rejects a violated annihilation condition") {
    TokenAssignment<NaturalSemiring> f;
    f.values = {{Token::positive("p"), 1}, {Token::negative("p"), 1}};
    try {
        eval_hom(poly("p + ~p"), f);
        FAIL("expected an annihilation error");
    } catch (const SemanticError& e) {
        CHECK(std::string(e.what()).find("'p'") != std::string::npos);
    }
    // only declared pairs are checked
    CHECK(eval_hom(poly("p"), f) == 1);
}

namespace {

template <Semiring S>
void hom_laws(std::uint64_t seed) {
    Rng rng(seed);
    for (int i = 0; i < 200; ++i) {
        TokenAssignment<S> f;
        for (const char* n : {"p", "q", "r", "s"}) {
            auto v = random_value<S>(rng);
            bool pos_zero = coin(rng);
            f.values[Token::positive(n)] = pos_zero ? S::zero() : v;
            f.values[Token::negative(n)] = pos_zero ? v : S::zero();
        }
        auto a = random_poly(rng), b = random_poly(rng);
        CHECK(eval_hom(a + b, f, {}) == S::add(eval_hom(a, f, {}), eval_hom(b, f, {})));
        CHECK(eval_hom(a * b, f, {}) == S::mul(eval_hom(a, f, {}), eval_hom(b, f, {})));
        CHECK(eval_hom(DualPolynomial::one(), f, {}) == S::one());
        CHECK(eval_hom(DualPolynomial::zero(), f, {}) == S::zero());
    }
}

}  // namespace

TEST_CASE("eval_hom is a homomorphism into every target") {
    hom_laws<BooleanSemiring>(51);
    hom_laws<NaturalSemiring>(52);
    hom_laws<TropicalSemiring>(53);
    hom_laws<ViterbiSemiring>(54);
    hom_laws<FuzzySemiring>(55);
    hom_laws<AccessSemiring>(56);
    hom_laws<PosBoolSemiring>(57);
    hom_laws<DualPolySemiring>(58);
}
