#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dualprov {

using Natural = boost::multiprecision::cpp_int;

enum class Polarity : std::uint8_t { Positive, Negative };

/// A provenance token: `p` (positive) or its complement `~p` (negative).
struct Token {
    std::string base;
    Polarity polarity = Polarity::Positive;

    static Token positive(std::string name) { return {std::move(name), Polarity::Positive}; }
    static Token negative(std::string name) { return {std::move(name), Polarity::Negative}; }

    bool is_positive() const { return polarity == Polarity::Positive; }
    Token complement() const {
        return {base, is_positive() ? Polarity::Negative : Polarity::Positive};
    }
    bool complements(const Token& other) const {
        return base == other.base && polarity != other.polarity;
    }

    /// `p` or `~p`.
    std::string to_string() const;
    /// Accepts `p` or `~p`; throws ParseError otherwise.
    static Token parse(std::string_view text);

    // Name order first, positive before negative.
    friend std::strong_ordering operator<=>(const Token& a, const Token& b) {
        if (auto c = a.base.compare(b.base); c != 0)
            return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        return a.polarity <=> b.polarity;
    }
    friend bool operator==(const Token&, const Token&) = default;
};

/// A power product of tokens. Never holds a complementary pair; the
/// empty product is the unit monomial.
class Monomial {
public:
    using Factor = std::pair<Token, std::uint32_t>;

    Monomial() = default;
    explicit Monomial(Token t, std::uint32_t exponent = 1);

    /// Sorts and merges repeated tokens. Throws std::invalid_argument on a
    /// complementary pair or a zero exponent.
    static Monomial from_factors(std::vector<Factor> factors);

    /// Product, or false when the product hits the quotient p * ~p = 0.
    static bool multiply(const Monomial& a, const Monomial& b, Monomial& out);

    const std::vector<Factor>& factors() const { return factors_; }
    bool is_unit() const { return factors_.empty(); }
    std::uint64_t degree() const;
    std::uint32_t exponent(const Token& t) const;
    bool contains(const Token& t) const { return exponent(t) != 0; }

    std::string to_string() const;

    /// Graded lexicographic: total degree, then the token sequence (with
    /// repetition) compared under Token order.
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    std::vector<Factor> factors_;  // sorted by Token, exponents > 0
};

/// An element of N[X, ~X]: natural coefficients over normalized monomials.
class DualPolynomial {
public:
    using Terms = std::map<Monomial, Natural>;

    DualPolynomial() = default;  // zero
    static DualPolynomial zero() { return {}; }
    static DualPolynomial one();
    static DualPolynomial constant(const Natural& n);
    static DualPolynomial token(const Token& t);
    static DualPolynomial monomial(const Monomial& m, const Natural& coefficient = 1);

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    /// Single token with coefficient 1, if this is one.
    const Token* as_token() const;

    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    Natural coefficient(const Monomial& m) const;

    /// Terms in canonical graded-lex order.
    std::vector<std::pair<Monomial, Natural>> monomials() const;
    Natural coefficient_sum() const;
    std::set<Token> tokens() const;

    DualPolynomial& operator+=(const DualPolynomial& other);
    friend DualPolynomial operator+(DualPolynomial a, const DualPolynomial& b) { return a += b; }
    friend DualPolynomial operator*(const DualPolynomial& a, const DualPolynomial& b);
    DualPolynomial& operator*=(const DualPolynomial& other) { return *this = *this * other; }

    /// Drops every monomial that mentions a killed token.
    DualPolynomial substitute_zero(const std::set<Token>& kill) const;

    /// Canonical rendering, e.g. `p*~r + 2*q^2`, `0`, `1`.
    std::string to_string() const;

    /// Parses a polynomial expression with `+`, `*`, `^`, parentheses,
    /// natural constants and tokens, expanding it into canonical form.
    static DualPolynomial parse(std::string_view text);

    friend bool operator==(const DualPolynomial&, const DualPolynomial&) = default;

private:
    void add_term(const Monomial& m, const Natural& c);

    Terms terms_;
};

}  // namespace dualprov
