#pragma once

// Line-oriented workspace files. Blank lines and `#` comments are ignored.
//
//   universe a b c          structure / domain
//   rel E/2
//   fact E(a,b)
//
//   track E(a,b) = p        tracking (p also binds ~E(a,b) to ~p unless
//   track ~E(a,c) = ~r      that literal has its own line)
//   default + = 0
//   default - = 1
//
//   annot ~E(a,c) = 0.6     literal annotations in a chosen semiring
//   score ~r = 1/3          token assignments (confidence, clearance)

#include "dualprov/errors.hpp"
#include "dualprov/homomorphism.hpp"
#include "dualprov/interp.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dualprov {

Fact parse_fact(std::string_view text);
/// `E(a,b)` or `~E(a,b)`.
Literal parse_literal(std::string_view text);
/// Facts separated by whitespace, commas or semicolons.
std::vector<Fact> parse_fact_list(std::string_view text);

struct StructureFile {
    DomainPtr domain;
    Structure structure;
};

StructureFile parse_structure(std::string_view text);

/// Domain lines are optional when `domain` is given; when both are present
/// they must agree.
ProvenanceInterpretation parse_tracking(std::string_view text, DomainPtr domain = nullptr);

/// The structure in file syntax.
std::string render_structure(const Structure& s);

namespace detail {

struct Line {
    std::size_t number;
    std::string keyword;
    std::string rest;
};

std::vector<Line> split_lines(std::string_view text);
/// Splits `lhs = rhs`, trimming both sides.
std::pair<std::string, std::string> split_binding(const Line& line);
[[noreturn]] void fail(const Line& line, const std::string& message);

template <class F>
auto at_line(const Line& line, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ParseError& e) {
        fail(line, e.what());
    } catch (const std::invalid_argument& e) {
        fail(line, e.what());
    }
}

/// Reads `default + = v` / `default - = v`; returns false for other lines.
template <Semiring S>
bool read_default(const Line& line, std::optional<typename S::value_type>& pos,
                  std::optional<typename S::value_type>& neg) {
    if (line.keyword != "default")
        return false;
    auto [side, value] = split_binding(line);
    auto v = at_line(line, [&] { return S::parse(value); });
    if (side == "+")
        pos = v;
    else if (side == "-")
        neg = v;
    else
        fail(line, "expected 'default + = ...' or 'default - = ...'");
    return true;
}

[[noreturn]] void missing_defaults();

}  // namespace detail

/// `annot LITERAL = value` lines plus both default lines, over `domain`.
template <Semiring S>
KInterpretation<S> parse_annotation(std::string_view text, DomainPtr domain) {
    std::optional<typename S::value_type> pos, neg;
    std::vector<std::pair<Literal, typename S::value_type>> entries;
    for (const auto& line : detail::split_lines(text)) {
        if (detail::read_default<S>(line, pos, neg))
            continue;
        if (line.keyword != "annot")
            detail::fail(line, "unexpected '" + line.keyword + "'");
        auto [lhs, rhs] = detail::split_binding(line);
        auto lit = detail::at_line(line, [&] { return parse_literal(lhs); });
        auto v = detail::at_line(line, [&] { return S::parse(rhs); });
        entries.emplace_back(std::move(lit), std::move(v));
    }
    if (!pos || !neg)
        detail::missing_defaults();
    KInterpretation<S> pi(std::move(domain), *pos, *neg);
    for (auto& [lit, v] : entries)
        pi.set(lit, std::move(v));
    return pi;
}

/// `score TOKEN = value` lines plus both default lines.
template <Semiring S>
TokenAssignment<S> parse_scores(std::string_view text) {
    std::optional<typename S::value_type> pos, neg;
    TokenAssignment<S> f;
    for (const auto& line : detail::split_lines(text)) {
        if (detail::read_default<S>(line, pos, neg))
            continue;
        if (line.keyword != "score")
            detail::fail(line, "unexpected '" + line.keyword + "'");
        auto [lhs, rhs] = detail::split_binding(line);
        auto t = detail::at_line(line, [&] { return Token::parse(lhs); });
        f.values[t] = detail::at_line(line, [&] { return S::parse(rhs); });
    }
    if (!pos || !neg)
        detail::missing_defaults();
    f.default_positive = *pos;
    f.default_negative = *neg;
    return f;
}

}  // namespace dualprov
