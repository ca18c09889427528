#include "dualprov/io.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

namespace dualprov {

namespace {

bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string> words(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    for (std::string w; in >> w;)
        out.push_back(w);
    return out;
}

// Parses `name(arg, ...)` starting at `pos`, advancing past it.
Fact read_fact(std::string_view text, std::size_t& pos) {
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    };
    auto name = [&](const char* what) {
        skip();
        std::size_t start = pos;
        while (pos < text.size() && is_name_char(text[pos]))
            ++pos;
        if (start == pos)
            throw ParseError(std::string("expected ") + what + " in '" + std::string(text) + "'", start);
        return std::string(text.substr(start, pos - start));
    };
    auto expect = [&](char c) {
        skip();
        if (pos >= text.size() || text[pos] != c)
            throw ParseError(std::string("expected '") + c + "' in '" + std::string(text) + "'", pos);
        ++pos;
    };
    Fact f{name("a relation name"), {}};
    expect('(');
    f.args.push_back(name("an element"));
    skip();
    while (pos < text.size() && text[pos] == ',') {
        ++pos;
        f.args.push_back(name("an element"));
        skip();
    }
    expect(')');
    return f;
}

DomainPtr build_domain(const std::vector<detail::Line>& lines, bool required) {
    Vocabulary vocab;
    std::optional<std::vector<std::string>> universe;
    bool any = false;
    for (const auto& line : lines) {
        if (line.keyword == "universe") {
            if (universe)
                detail::fail(line, "universe declared twice");
            universe = words(line.rest);
            any = true;
        } else if (line.keyword == "rel") {
            auto decl = std::string(trim(line.rest));
            auto slash = decl.find('/');
            if (slash == std::string::npos)
                detail::fail(line, "expected 'rel NAME/ARITY'");
            auto name = std::string(trim(std::string_view(decl).substr(0, slash)));
            auto digits = trim(std::string_view(decl).substr(slash + 1));
            int arity = 0;
            auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), arity);
            if (ec != std::errc() || end != digits.data() + digits.size() || name.empty())
                detail::fail(line, "expected 'rel NAME/ARITY'");
            for (char c : name)
                if (!is_name_char(c))
                    detail::fail(line, "invalid relation name '" + name + "'");
            vocab.add_relation(name, arity);
            any = true;
        }
    }
    if (!any && !required)
        return nullptr;
    if (!universe)
        throw ParseError("missing 'universe' line");
    if (vocab.relations().empty())
        throw ParseError("no 'rel' declarations");
    return make_domain(std::move(vocab), std::move(*universe));
}

DualPolynomial constant_value(const detail::Line& line, const std::string& text) {
    if (text == "0")
        return DualPolynomial::zero();
    if (text == "1")
        return DualPolynomial::one();
    detail::fail(line, "expected 0 or 1, got '" + text + "'");
}

}  // namespace

namespace detail {

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0;
    while (!text.empty()) {
        auto nl = text.find('\n');
        auto raw = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++number;
        if (auto hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        raw = trim(raw);
        if (raw.empty())
            continue;
        std::size_t split = 0;
        while (split < raw.size() && !std::isspace(static_cast<unsigned char>(raw[split])))
            ++split;
        out.push_back({number, std::string(raw.substr(0, split)), std::string(trim(raw.substr(split)))});
    }
    return out;
}

std::pair<std::string, std::string> split_binding(const Line& line) {
    auto eq = line.rest.rfind('=');
    if (eq == std::string::npos)
        fail(line, "expected '" + line.keyword + " ... = value'");
    auto lhs = trim(std::string_view(line.rest).substr(0, eq));
    auto rhs = trim(std::string_view(line.rest).substr(eq + 1));
    if (lhs.empty() || rhs.empty())
        fail(line, "expected '" + line.keyword + " ... = value'");
    return {std::string(lhs), std::string(rhs)};
}

void fail(const Line& line, const std::string& message) {
    throw ParseError("line " + std::to_string(line.number) + ": " + message);
}

void missing_defaults() { throw ParseError("both 'default + = ...' and 'default - = ...' lines are required"); }

}  // namespace detail

Fact parse_fact(std::string_view text) {
    std::size_t pos = 0;
    auto f = read_fact(text, pos);
    if (!trim(text.substr(pos)).empty())
        throw ParseError("trailing text after fact '" + std::string(text) + "'", pos);
    return f;
}

Literal parse_literal(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '~')
        return {parse_fact(text.substr(1)), false};
    return {parse_fact(text), true};
}

std::vector<Fact> parse_fact_list(std::string_view text) {
    std::vector<Fact> out;
    std::size_t pos = 0;
    for (;;) {
        while (pos < text.size() &&
               (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ',' || text[pos] == ';'))
            ++pos;
        if (pos >= text.size())
            break;
        if (text[pos] == '#') {
            auto nl = text.find('\n', pos);
            if (nl == std::string_view::npos)
                break;
            pos = nl;
            continue;
        }
        out.push_back(read_fact(text, pos));
    }
    return out;
}

StructureFile parse_structure(std::string_view text) {
    auto lines = detail::split_lines(text);
    auto domain = build_domain(lines, true);
    Structure s(domain);
    for (const auto& line : lines) {
        if (line.keyword == "universe" || line.keyword == "rel")
            continue;
        if (line.keyword != "fact")
            detail::fail(line, "unexpected '" + line.keyword + "'");
        auto f = detail::at_line(line, [&] { return parse_fact(line.rest); });
        try {
            s.insert(f);
        } catch (const SemanticError& e) {
            throw SemanticError("line " + std::to_string(line.number) + ": " + e.what());
        }
    }
    return {domain, std::move(s)};
}

ProvenanceInterpretation parse_tracking(std::string_view text, DomainPtr domain) {
    auto lines = detail::split_lines(text);
    auto own = build_domain(lines, domain == nullptr);
    if (own && domain)
        require_same_domain(*own, *domain);
    if (!domain)
        domain = own;

    std::optional<DualPolynomial> pos, neg;
    std::map<std::pair<FactId, bool>, DualPolynomial> explicit_values;
    std::vector<std::pair<FactId, Token>> auto_bind;
    for (const auto& line : lines) {
        if (line.keyword == "universe" || line.keyword == "rel")
            continue;
        if (line.keyword == "default") {
            auto [side, value] = detail::split_binding(line);
            auto v = constant_value(line, value);
            if (side == "+")
                pos = v;
            else if (side == "-")
                neg = v;
            else
                detail::fail(line, "expected 'default + = ...' or 'default - = ...'");
            continue;
        }
        if (line.keyword != "track")
            detail::fail(line, "unexpected '" + line.keyword + "'");
        auto [lhs, rhs] = detail::split_binding(line);
        auto lit = detail::at_line(line, [&] { return parse_literal(lhs); });
        FactId id;
        try {
            id = domain->require(lit.fact);
        } catch (const SemanticError& e) {
            throw SemanticError("line " + std::to_string(line.number) + ": " + e.what());
        }
        DualPolynomial value;
        if (rhs == "0" || rhs == "1") {
            value = constant_value(line, rhs);
        } else {
            auto t = detail::at_line(line, [&] { return Token::parse(rhs); });
            if (t.is_positive() != lit.positive)
                throw SemanticError("line " + std::to_string(line.number) + ": " +
                                    (lit.positive ? "facts take positive tokens" : "negated facts take ~tokens"));
            if (t.is_positive())
                auto_bind.emplace_back(id, t.complement());
            value = DualPolynomial::token(t);
        }
        if (!explicit_values.emplace(std::pair{id, lit.positive}, value).second)
            detail::fail(line, lit.to_string() + " is annotated twice");
    }
    if (!pos || !neg)
        detail::missing_defaults();

    ProvenanceInterpretation pi(domain, *pos, *neg);
    for (const auto& [id, t] : auto_bind)
        if (!explicit_values.count({id, false}))
            pi.set(id, false, DualPolynomial::token(t));
    for (const auto& [key, v] : explicit_values)
        pi.set(key.first, key.second, v);
    return pi;
}

std::string render_structure(const Structure& s) {
    const auto& d = *s.domain();
    std::ostringstream out;
    out << "universe";
    for (const auto& e : d.universe())
        out << ' ' << e;
    out << '\n';
    for (std::size_t r = 0; r < d.relation_count(); ++r)
        out << "rel " << d.relation_name(r) << '/' << d.relation_arity(r) << '\n';
    for (auto id : s.true_facts())
        out << "fact " << d.fact(id).to_string() << '\n';
    return out.str();
}

}  // namespace dualprov
