#include "dualprov/dualpoly.hpp"

#include "dualprov/errors.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace dualprov {

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool valid_name(std::string_view s) {
    if (s.empty() || !is_name_start(s.front()))
        return false;
    return std::all_of(s.begin(), s.end(), is_name_char);
}

}  // namespace

std::string Token::to_string() const { return is_positive() ? base : "~" + base; }

Token Token::parse(std::string_view text) {
    bool negative = !text.empty() && text.front() == '~';
    auto name = negative ? text.substr(1) : text;
    if (!valid_name(name))
        throw ParseError("invalid token '" + std::string(text) + "'");
    return {std::string(name), negative ? Polarity::Negative : Polarity::Positive};
}

Monomial::Monomial(Token t, std::uint32_t exponent) {
    if (exponent == 0)
        throw std::invalid_argument("monomial exponent must be positive");
    factors_.emplace_back(std::move(t), exponent);
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
    std::sort(factors.begin(), factors.end(),
              [](const Factor& a, const Factor& b) { return a.first < b.first; });
    Monomial m;
    for (auto& [tok, e] : factors) {
        if (e == 0)
            throw std::invalid_argument("monomial exponent must be positive");
        if (!m.factors_.empty()) {
            auto& last = m.factors_.back();
            if (last.first == tok) {
                last.second += e;
                continue;
            }
            if (last.first.complements(tok))
                throw std::invalid_argument("monomial contains " + tok.base + " and its complement");
        }
        m.factors_.emplace_back(std::move(tok), e);
    }
    return m;
}

bool Monomial::multiply(const Monomial& a, const Monomial& b, Monomial& out) {
    std::vector<Factor> merged;
    merged.reserve(a.factors_.size() + b.factors_.size());
    auto i = a.factors_.begin(), j = b.factors_.begin();
    while (i != a.factors_.end() || j != b.factors_.end()) {
        Factor next;
        if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first))
            next = *i++;
        else if (i == a.factors_.end() || j->first < i->first)
            next = *j++;
        else {
            next = {i->first, i->second + j->second};
            ++i, ++j;
        }
        // Complementary tokens sort adjacently: same base, positive first.
        if (!merged.empty() && merged.back().first.complements(next.first))
            return false;
        merged.push_back(std::move(next));
    }
    out.factors_ = std::move(merged);
    return true;
}

std::uint64_t Monomial::degree() const {
    std::uint64_t d = 0;
    for (const auto& f : factors_)
        d += f.second;
    return d;
}

std::uint32_t Monomial::exponent(const Token& t) const {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), t,
                               [](const Factor& f, const Token& key) { return f.first < key; });
    return it != factors_.end() && it->first == t ? it->second : 0;
}

std::string Monomial::to_string() const {
    if (factors_.empty())
        return "1";
    std::string out;
    for (const auto& [tok, e] : factors_) {
        if (!out.empty())
            out += '*';
        out += tok.to_string();
        if (e > 1)
            out += "^" + std::to_string(e);
    }
    return out;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0)
        return c;
    // Walk both token sequences with repetition.
    auto i = a.factors_.begin(), j = b.factors_.begin();
    std::uint32_t used_i = 0, used_j = 0;
    while (i != a.factors_.end() && j != b.factors_.end()) {
        if (auto c = i->first <=> j->first; c != 0)
            return c;
        std::uint32_t step = std::min(i->second - used_i, j->second - used_j);
        used_i += step;
        used_j += step;
        if (used_i == i->second)
            ++i, used_i = 0;
        if (used_j == j->second)
            ++j, used_j = 0;
    }
    return std::strong_ordering::equal;
}

DualPolynomial DualPolynomial::one() { return constant(1); }

DualPolynomial DualPolynomial::constant(const Natural& n) { return monomial(Monomial{}, n); }

DualPolynomial DualPolynomial::token(const Token& t) { return monomial(Monomial{t}); }

DualPolynomial DualPolynomial::monomial(const Monomial& m, const Natural& coefficient) {
    DualPolynomial p;
    p.add_term(m, coefficient);
    return p;
}

bool DualPolynomial::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.is_unit() && terms_.begin()->second == 1;
}

const Token* DualPolynomial::as_token() const {
    if (terms_.size() != 1)
        return nullptr;
    const auto& [m, c] = *terms_.begin();
    if (c != 1 || m.factors().size() != 1 || m.factors().front().second != 1)
        return nullptr;
    return &m.factors().front().first;
}

Natural DualPolynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Natural(0) : it->second;
}

std::vector<std::pair<Monomial, Natural>> DualPolynomial::monomials() const {
    return {terms_.begin(), terms_.end()};
}

Natural DualPolynomial::coefficient_sum() const {
    Natural sum = 0;
    for (const auto& [m, c] : terms_)
        sum += c;
    return sum;
}

std::set<Token> DualPolynomial::tokens() const {
    std::set<Token> out;
    for (const auto& [m, c] : terms_)
        for (const auto& f : m.factors())
            out.insert(f.first);
    return out;
}

void DualPolynomial::add_term(const Monomial& m, const Natural& c) {
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted)
        it->second += c;
}

DualPolynomial& DualPolynomial::operator+=(const DualPolynomial& other) {
    for (const auto& [m, c] : other.terms_)
        add_term(m, c);
    return *this;
}

DualPolynomial operator*(const DualPolynomial& a, const DualPolynomial& b) {
    DualPolynomial out;
    Monomial product;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            if (Monomial::multiply(ma, mb, product))
                out.add_term(product, ca * cb);
    return out;
}

DualPolynomial DualPolynomial::substitute_zero(const std::set<Token>& kill) const {
    DualPolynomial out;
    for (const auto& [m, c] : terms_) {
        bool killed = std::any_of(m.factors().begin(), m.factors().end(),
                                  [&](const Monomial::Factor& f) { return kill.count(f.first) > 0; });
        if (!killed)
            out.terms_.emplace_hint(out.terms_.end(), m, c);
    }
    return out;
}

std::string DualPolynomial::to_string() const {
    if (terms_.empty())
        return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
        if (!out.empty())
            out += " + ";
        if (m.is_unit())
            out += c.str();
        else if (c == 1)
            out += m.to_string();
        else
            out += c.str() + "*" + m.to_string();
    }
    return out;
}

namespace {

// sum := product ('+' product)*
// product := power ('*' power)*
// power := primary ('^' natural)?
// primary := natural | token | '(' sum ')'
class PolyParser {
public:
    explicit PolyParser(std::string_view src) : src_(src) {}

    DualPolynomial parse() {
        auto p = sum();
        skip_ws();
        if (pos_ != src_.size())
            throw ParseError("unexpected '" + std::string(1, src_[pos_]) + "' in polynomial", pos_);
        return p;
    }

private:
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    DualPolynomial sum() {
        auto p = product();
        while (accept('+'))
            p += product();
        return p;
    }
    DualPolynomial product() {
        auto p = power();
        while (accept('*'))
            p = p * power();
        return p;
    }
    DualPolynomial power() {
        auto base = primary();
        if (!accept('^'))
            return base;
        auto e = natural();
        if (e > 64)
            throw ParseError("exponent too large", pos_);
        auto result = DualPolynomial::one();
        for (Natural i = 0; i < e; ++i)
            result = result * base;
        return result;
    }
    Natural natural() {
        skip_ws();
        auto start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        if (start == pos_)
            throw ParseError("expected a natural number", pos_);
        return Natural(std::string(src_.substr(start, pos_ - start)));
    }
    DualPolynomial primary() {
        skip_ws();
        if (pos_ >= src_.size())
            throw ParseError("unexpected end of polynomial", pos_);
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            auto p = sum();
            if (!accept(')'))
                throw ParseError("expected ')'", pos_);
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return DualPolynomial::constant(natural());
        auto start = pos_;
        if (c == '~')
            ++pos_;
        if (pos_ >= src_.size() || !is_name_start(src_[pos_]))
            throw ParseError("expected a token", pos_);
        while (pos_ < src_.size() && is_name_char(src_[pos_]))
            ++pos_;
        return DualPolynomial::token(Token::parse(src_.substr(start, pos_ - start)));
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

}  // namespace

DualPolynomial DualPolynomial::parse(std::string_view text) { return PolyParser(text).parse(); }

}  // namespace dualprov
