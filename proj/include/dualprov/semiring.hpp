#pragma once

#include "dualprov/dualpoly.hpp"

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace dualprov {

enum class SemiringKind : std::uint8_t {
    Boolean,
    Natural,
    Tropical,
    Viterbi,
    Fuzzy,
    Access,
    PosBool,
    DualPoly,
};

/// `bool | nat | trop | viterbi | fuzzy | access | posbool | dualpoly`.
SemiringKind semiring_from_name(std::string_view name);
std::string_view semiring_name(SemiringKind kind);

/// Clearance levels, ordered P < C < S < T < Zero.
enum class AccessLevel : std::uint8_t { Public, Confidential, Secret, TopSecret, Zero };

std::string_view to_string(AccessLevel level);
AccessLevel parse_access_level(std::string_view text);

/// Element of PosBool(X): a positive DNF kept as an antichain of clauses.
class PosBool {
public:
    using Clause = std::set<std::string>;

    PosBool() = default;  // false
    static PosBool bottom() { return {}; }
    static PosBool top();
    static PosBool variable(std::string name);

    bool is_bottom() const { return clauses_.empty(); }
    const std::set<Clause>& clauses() const { return clauses_; }

    friend PosBool operator|(const PosBool& a, const PosBool& b);
    friend PosBool operator&(const PosBool& a, const PosBool& b);
    friend bool operator==(const PosBool&, const PosBool&) = default;

    /// `0`, `1`, or clauses like `p&q | r`.
    std::string to_string() const;
    static PosBool parse(std::string_view text);

private:
    static PosBool from_clauses(std::set<Clause> clauses);

    std::set<Clause> clauses_;
};

template <class S>
concept Semiring = requires(const typename S::value_type& a, std::string_view text) {
    typename S::value_type;
    { S::kind } -> std::convertible_to<SemiringKind>;
    { S::is_idempotent } -> std::convertible_to<bool>;
    { S::is_plus_positive } -> std::convertible_to<bool>;
    { S::is_positive } -> std::convertible_to<bool>;
    { S::zero() } -> std::convertible_to<typename S::value_type>;
    { S::one() } -> std::convertible_to<typename S::value_type>;
    { S::add(a, a) } -> std::convertible_to<typename S::value_type>;
    { S::mul(a, a) } -> std::convertible_to<typename S::value_type>;
    { S::format(a) } -> std::convertible_to<std::string>;
    { S::parse(text) } -> std::convertible_to<typename S::value_type>;
};

struct BooleanSemiring {
    using value_type = bool;
    static constexpr SemiringKind kind = SemiringKind::Boolean;
    static constexpr bool is_idempotent = true;
    static constexpr bool is_plus_positive = true;
    static constexpr bool is_positive = true;
    static bool zero() { return false; }
    static bool one() { return true; }
    static bool add(bool a, bool b) { return a || b; }
    static bool mul(bool a, bool b) { return a && b; }
    static std::string format(bool a) { return a ? "true" : "false"; }
    static bool parse(std::string_view text);
};

struct NaturalSemiring {
    using value_type = Natural;
    static constexpr SemiringKind kind = SemiringKind::Natural;
    static constexpr bool is_idempotent = false;
    static constexpr bool is_plus_positive = true;
    static constexpr bool is_positive = true;
    static Natural zero() { return 0; }
    static Natural one() { return 1; }
    static Natural add(const Natural& a, const Natural& b) { return a + b; }
    static Natural mul(const Natural& a, const Natural& b) { return a * b; }
    static std::string format(const Natural& a) { return a.str(); }
    static Natural parse(std::string_view text);
};

/// (R+ u {inf}, min, +, inf, 0).
struct TropicalSemiring {
    using value_type = double;
    static constexpr SemiringKind kind = SemiringKind::Tropical;
    static constexpr bool is_idempotent = true;
    static constexpr bool is_plus_positive = true;
    static constexpr bool is_positive = true;
    static double zero() { return std::numeric_limits<double>::infinity(); }
    static double one() { return 0.0; }
    static double add(double a, double b) { return std::min(a, b); }
    static double mul(double a, double b) { return a + b; }
    static std::string format(double a);
    static double parse(std::string_view text);
};

/// ([0,1], max, *, 0, 1).
struct ViterbiSemiring {
    using value_type = double;
    static constexpr SemiringKind kind = SemiringKind::Viterbi;
    static constexpr bool is_idempotent = true;
    static constexpr bool is_plus_positive = true;
    static constexpr bool is_positive = true;
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static double add(double a, double b) { return std::max(a, b); }
    static double mul(double a, double b) { return a * b; }
    static std::string format(double a);
    static double parse(std::string_view text);
};

/// ([0,1], max, min, 0, 1).
struct FuzzySemiring {
    using value_type = double;
    static constexpr SemiringKind kind = SemiringKind::Fuzzy;
    static constexpr bool is_idempotent = true;
    static constexpr bool is_plus_positive = true;
    static constexpr bool is_positive = true;
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static double add(double a, double b) { return std::max(a, b); }
    static double mul(double a, double b) { return std::min(a, b); }
    static std::string format(double a) { return ViterbiSemiring::format(a); }
    static double parse(std::string_view text) { return ViterbiSemiring::parse(text); }
};

/// Addition picks the more public level, multiplication the more secret.
struct AccessSemiring {
    using value_type = AccessLevel;
    static constexpr SemiringKind kind = SemiringKind::Access;
    static constexpr bool is_idempotent = true;
    static constexpr bool is_plus_positive = true;
    static constexpr bool is_positive = true;
    static AccessLevel zero() { return AccessLevel::Zero; }
    static AccessLevel one() { return AccessLevel::Public; }
    static AccessLevel add(AccessLevel a, AccessLevel b) { return std::min(a, b); }
    static AccessLevel mul(AccessLevel a, AccessLevel b) { return std::max(a, b); }
    static std::string format(AccessLevel a) { return std::string(to_string(a)); }
    static AccessLevel parse(std::string_view text) { return parse_access_level(text); }
};

struct PosBoolSemiring {
    using value_type = PosBool;
    static constexpr SemiringKind kind = SemiringKind::PosBool;
    static constexpr bool is_idempotent = true;
    static constexpr bool is_plus_positive = true;
    static constexpr bool is_positive = true;
    static PosBool zero() { return PosBool::bottom(); }
    static PosBool one() { return PosBool::top(); }
    static PosBool add(const PosBool& a, const PosBool& b) { return a | b; }
    static PosBool mul(const PosBool& a, const PosBool& b) { return a & b; }
    static std::string format(const PosBool& a) { return a.to_string(); }
    static PosBool parse(std::string_view text) { return PosBool::parse(text); }
};

/// N[X, ~X]. +-positive, but p * ~p = 0 makes it not positive.
struct DualPolySemiring {
    using value_type = DualPolynomial;
    static constexpr SemiringKind kind = SemiringKind::DualPoly;
    static constexpr bool is_idempotent = false;
    static constexpr bool is_plus_positive = true;
    static constexpr bool is_positive = false;
    static DualPolynomial zero() { return DualPolynomial::zero(); }
    static DualPolynomial one() { return DualPolynomial::one(); }
    static DualPolynomial add(const DualPolynomial& a, const DualPolynomial& b) { return a + b; }
    static DualPolynomial mul(const DualPolynomial& a, const DualPolynomial& b) { return a * b; }
    static std::string format(const DualPolynomial& a) { return a.to_string(); }
    static DualPolynomial parse(std::string_view text) { return DualPolynomial::parse(text); }
};

template <Semiring S>
bool is_zero(const typename S::value_type& a) {
    return a == S::zero();
}

/// n-fold sum a + ... + a by binary doubling.
template <Semiring S>
typename S::value_type nat_scale(Natural n, const typename S::value_type& a) {
    auto result = S::zero();
    if (n == 0)
        return result;
    if constexpr (S::is_idempotent) {
        return a;
    } else {
        auto power = a;
        while (n > 0) {
            if ((n & 1) != 0)
                result = S::add(result, power);
            n >>= 1;
            if (n > 0)
                power = S::add(power, power);
        }
        return result;
    }
}

/// a^e by repeated squaring.
template <Semiring S>
typename S::value_type power(typename S::value_type a, std::uint64_t e) {
    auto result = S::one();
    while (e > 0) {
        if (e & 1)
            result = S::mul(result, a);
        e >>= 1;
        if (e > 0)
            a = S::mul(a, a);
    }
    return result;
}

/// The map a -> (a != 0) into the Booleans.
template <Semiring S>
bool dagger(const typename S::value_type& a) {
    return !is_zero<S>(a);
}

/// Calls `f(S{})` for the semiring named by `kind`.
template <class F>
decltype(auto) visit_semiring(SemiringKind kind, F&& f) {
    switch (kind) {
    case SemiringKind::Boolean:
        return f(BooleanSemiring{});
    case SemiringKind::Natural:
        return f(NaturalSemiring{});
    case SemiringKind::Tropical:
        return f(TropicalSemiring{});
    case SemiringKind::Viterbi:
        return f(ViterbiSemiring{});
    case SemiringKind::Fuzzy:
        return f(FuzzySemiring{});
    case SemiringKind::Access:
        return f(AccessSemiring{});
    case SemiringKind::PosBool:
        return f(PosBoolSemiring{});
    case SemiringKind::DualPoly:
        break;
    }
    return f(DualPolySemiring{});
}

/// A value tagged with the semiring it belongs to, for callers that pick
/// the semiring at run time.
class SemiringValue {
public:
    using Storage = std::variant<bool, Natural, double, AccessLevel, PosBool, DualPolynomial>;

    template <Semiring S>
    static SemiringValue of(typename S::value_type v) {
        return SemiringValue(S::kind, Storage(std::move(v)));
    }
    static SemiringValue zero(SemiringKind kind);
    static SemiringValue one(SemiringKind kind);
    static SemiringValue parse(SemiringKind kind, std::string_view text);

    SemiringKind kind() const { return kind_; }

    /// Throws SemanticError when the value does not belong to S.
    template <Semiring S>
    const typename S::value_type& get() const;

    std::string to_string() const;
    friend bool operator==(const SemiringValue&, const SemiringValue&) = default;

private:
    SemiringValue(SemiringKind kind, Storage v) : kind_(kind), value_(std::move(v)) {}

    SemiringKind kind_;
    Storage value_;
};

[[noreturn]] void throw_domain_mismatch(SemiringKind expected, SemiringKind actual);

template <Semiring S>
const typename S::value_type& SemiringValue::get() const {
    if (kind_ != S::kind)
        throw_domain_mismatch(S::kind, kind_);
    return std::get<typename S::value_type>(value_);
}

SemiringValue add(SemiringKind k, const SemiringValue& a, const SemiringValue& b);
SemiringValue mul(SemiringKind k, const SemiringValue& a, const SemiringValue& b);
SemiringValue nat_scale(SemiringKind k, const Natural& n, const SemiringValue& a);
bool dagger(SemiringKind k, const SemiringValue& a);

/// Flags for a built-in semiring.
struct SemiringFlags {
    bool is_idempotent;
    bool is_plus_positive;
    bool is_positive;
};
SemiringFlags semiring_flags(SemiringKind k);

}  // namespace dualprov
