#include "dualprov/semiring.hpp"

#include "dualprov/errors.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <vector>

namespace dualprov {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

double parse_decimal(std::string_view text) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ParseError("invalid number '" + std::string(text) + "'");
    return v;
}

// Decimal or `num/den`.
double parse_real(std::string_view text) {
    text = trim(text);
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        double num = parse_decimal(trim(text.substr(0, slash)));
        double den = parse_decimal(trim(text.substr(slash + 1)));
        if (den == 0)
            throw ParseError("zero denominator in '" + std::string(text) + "'");
        return num / den;
    }
    return parse_decimal(text);
}

}  // namespace

SemiringKind semiring_from_name(std::string_view name) {
    static constexpr std::pair<std::string_view, SemiringKind> table[] = {
        {"bool", SemiringKind::Boolean},   {"nat", SemiringKind::Natural},
        {"trop", SemiringKind::Tropical},  {"viterbi", SemiringKind::Viterbi},
        {"fuzzy", SemiringKind::Fuzzy},    {"access", SemiringKind::Access},
        {"posbool", SemiringKind::PosBool}, {"dualpoly", SemiringKind::DualPoly},
    };
    for (const auto& [n, k] : table)
        if (n == name)
            return k;
    throw ParseError("unknown semiring '" + std::string(name) + "'");
}

std::string_view semiring_name(SemiringKind kind) {
    switch (kind) {
    case SemiringKind::Boolean: return "bool";
    case SemiringKind::Natural: return "nat";
    case SemiringKind::Tropical: return "trop";
    case SemiringKind::Viterbi: return "viterbi";
    case SemiringKind::Fuzzy: return "fuzzy";
    case SemiringKind::Access: return "access";
    case SemiringKind::PosBool: return "posbool";
    case SemiringKind::DualPoly: return "dualpoly";
    }
    return "?";
}

std::string_view to_string(AccessLevel level) {
    switch (level) {
    case AccessLevel::Public: return "P";
    case AccessLevel::Confidential: return "C";
    case AccessLevel::Secret: return "S";
    case AccessLevel::TopSecret: return "T";
    case AccessLevel::Zero: return "0";
    }
    return "?";
}

AccessLevel parse_access_level(std::string_view text) {
    text = trim(text);
    if (text == "P") return AccessLevel::Public;
    if (text == "C") return AccessLevel::Confidential;
    if (text == "S") return AccessLevel::Secret;
    if (text == "T") return AccessLevel::TopSecret;
    if (text == "0") return AccessLevel::Zero;
    throw ParseError("invalid access level '" + std::string(text) + "' (expected P C S T 0)");
}

// PosBool ------------------------------------------------------------------

PosBool PosBool::top() {
    PosBool b;
    b.clauses_.insert(Clause{});
    return b;
}

PosBool PosBool::variable(std::string name) {
    PosBool b;
    b.clauses_.insert(Clause{std::move(name)});
    return b;
}

PosBool PosBool::from_clauses(std::set<Clause> clauses) {
    // Keep only clauses with no proper subset present (absorption).
    PosBool out;
    for (const auto& c : clauses) {
        bool absorbed = false;
        for (const auto& d : clauses) {
            if (d.size() < c.size() && std::includes(c.begin(), c.end(), d.begin(), d.end())) {
                absorbed = true;
                break;
            }
        }
        if (!absorbed)
            out.clauses_.insert(c);
    }
    return out;
}

PosBool operator|(const PosBool& a, const PosBool& b) {
    auto all = a.clauses_;
    all.insert(b.clauses_.begin(), b.clauses_.end());
    return PosBool::from_clauses(std::move(all));
}

PosBool operator&(const PosBool& a, const PosBool& b) {
    std::set<PosBool::Clause> all;
    for (const auto& c : a.clauses_)
        for (const auto& d : b.clauses_) {
            auto u = c;
            u.insert(d.begin(), d.end());
            all.insert(std::move(u));
        }
    return PosBool::from_clauses(std::move(all));
}

std::string PosBool::to_string() const {
    if (clauses_.empty())
        return "0";
    std::string out;
    for (const auto& c : clauses_) {
        if (!out.empty())
            out += " | ";
        if (c.empty()) {
            out += "1";
            continue;
        }
        std::string clause;
        for (const auto& v : c) {
            if (!clause.empty())
                clause += '&';
            clause += v;
        }
        out += clause;
    }
    return out;
}

PosBool PosBool::parse(std::string_view text) {
    // Flat DNF: clause ('|' clause)*, clause := atom ('&' atom)*, atom := 0 | 1 | name.
    PosBool result;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto bar = text.find('|', start);
        auto clause_text = text.substr(start, bar == std::string_view::npos ? text.npos : bar - start);
        PosBool clause = top();
        std::size_t cs = 0;
        while (cs <= clause_text.size()) {
            auto amp = clause_text.find('&', cs);
            auto atom = trim(clause_text.substr(cs, amp == std::string_view::npos ? clause_text.npos : amp - cs));
            if (atom == "0")
                clause = bottom();
            else if (atom == "1")
                ;
            else if (!atom.empty())
                clause = clause & variable(Token::parse(atom).to_string());
            else
                throw ParseError("empty PosBool atom in '" + std::string(text) + "'");
            if (amp == std::string_view::npos)
                break;
            cs = amp + 1;
        }
        result = result | clause;
        if (bar == std::string_view::npos)
            break;
        start = bar + 1;
    }
    return result;
}

// Formatting and parsing -------------------------------------------------------

bool BooleanSemiring::parse(std::string_view text) {
    text = trim(text);
    if (text == "true" || text == "1")
        return true;
    if (text == "false" || text == "0")
        return false;
    throw ParseError("invalid Boolean '" + std::string(text) + "'");
}

Natural NaturalSemiring::parse(std::string_view text) {
    text = trim(text);
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError("invalid natural number '" + std::string(text) + "'");
    return Natural(std::string(text));
}

std::string TropicalSemiring::format(double a) {
    if (std::isinf(a))
        return "inf";
    return ViterbiSemiring::format(a);
}

double TropicalSemiring::parse(std::string_view text) {
    text = trim(text);
    if (text == "inf")
        return zero();
    double v = parse_real(text);
    if (!(v >= 0))
        throw ParseError("tropical values must be nonnegative: '" + std::string(text) + "'");
    return v;
}

std::string ViterbiSemiring::format(double a) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, a);
    return std::string(buf, ptr);
}

double ViterbiSemiring::parse(std::string_view text) {
    double v = parse_real(text);
    if (!(v >= 0 && v <= 1))
        throw ParseError("value must lie in [0,1]: '" + std::string(trim(text)) + "'");
    return v;
}

// Run-time layer ----------------------------------------------------------------

void throw_domain_mismatch(SemiringKind expected, SemiringKind actual) {
    throw SemanticError("semiring mismatch: expected a " + std::string(semiring_name(expected)) +
                        " value, got " + std::string(semiring_name(actual)));
}

SemiringValue SemiringValue::zero(SemiringKind kind) {
    return visit_semiring(kind, []<Semiring S>(S) { return SemiringValue::of<S>(S::zero()); });
}

SemiringValue SemiringValue::one(SemiringKind kind) {
    return visit_semiring(kind, []<Semiring S>(S) { return SemiringValue::of<S>(S::one()); });
}

SemiringValue SemiringValue::parse(SemiringKind kind, std::string_view text) {
    return visit_semiring(kind, [&]<Semiring S>(S) { return SemiringValue::of<S>(S::parse(text)); });
}

std::string SemiringValue::to_string() const {
    return visit_semiring(kind_, [&]<Semiring S>(S) { return S::format(get<S>()); });
}

SemiringValue add(SemiringKind k, const SemiringValue& a, const SemiringValue& b) {
    return visit_semiring(k, [&]<Semiring S>(S) { return SemiringValue::of<S>(S::add(a.get<S>(), b.get<S>())); });
}

SemiringValue mul(SemiringKind k, const SemiringValue& a, const SemiringValue& b) {
    return visit_semiring(k, [&]<Semiring S>(S) { return SemiringValue::of<S>(S::mul(a.get<S>(), b.get<S>())); });
}

SemiringValue nat_scale(SemiringKind k, const Natural& n, const SemiringValue& a) {
    return visit_semiring(k, [&]<Semiring S>(S) { return SemiringValue::of<S>(nat_scale<S>(n, a.get<S>())); });
}

bool dagger(SemiringKind k, const SemiringValue& a) {
    return visit_semiring(k, [&]<Semiring S>(S) { return dagger<S>(a.get<S>()); });
}

SemiringFlags semiring_flags(SemiringKind k) {
    return visit_semiring(k, []<Semiring S>(S) {
        return SemiringFlags{S::is_idempotent, S::is_plus_positive, S::is_positive};
    });
}

}  // namespace dualprov
