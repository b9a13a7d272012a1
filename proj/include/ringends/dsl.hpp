#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "ringends/errors.hpp"
#include "ringends/fields.hpp"
#include "ringends/group.hpp"

namespace ringends {

/// Parsed group spec: the canonical DSL rendering plus the resolved group.
///
/// Grammar (whitespace-insensitive):
///   expr := atom ('x' atom)*
///   atom := base ('^' uint)?
///   base := 'C' n | 'D' n (n even; order-based naming) | 'Dic' n | 'Q8'
///         | 'C4:C4'
struct GroupSpec {
    std::string source;
    std::string canonical;
    FiniteGroup group;
};

namespace detail {

struct DslParser {
    std::string s; // original text
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw parse_error("group spec: " + msg + " at position " + std::to_string(i));
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) { ++i; return true; }
        return false;
    }
    long number() {
        skip_ws();
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail("expected a number");
        long v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = v * 10 + (s[i] - '0');
            if (v > 100000) fail("number too large");
            ++i;
        }
        return v;
    }

    std::pair<FiniteGroup, std::string> base() {
        skip_ws();
        if (i >= s.size()) fail("expected a group atom");
        if (s.compare(i, 3, "Dic") == 0) {
            i += 3;
            long n = number();
            if (n < 1) fail("Dic parameter must be positive");
            if (4 * n > 1024) fail("group too large");
            return {FiniteGroup::dicyclic(static_cast<int>(n)), "Dic" + std::to_string(n)};
        }
        if (s.compare(i, 2, "Q8") == 0) {
            i += 2;
            return {FiniteGroup::quaternion8(), "Q8"};
        }
        if (s.compare(i, 5, "C4:C4") == 0) {
            i += 5;
            return {FiniteGroup::c4_semidirect_c4(), "C4:C4"};
        }
        if (s[i] == 'C') {
            ++i;
            long n = number();
            if (n < 1) fail("C parameter must be positive");
            if (n > 1024) fail("group too large");
            return {FiniteGroup::cyclic(static_cast<int>(n)), "C" + std::to_string(n)};
        }
        if (s[i] == 'D') {
            ++i;
            long n = number();
            if (n % 2 != 0)
                fail("dihedral atoms use the group order, which is even; for the dihedral "
                     "group with " + std::to_string(n) + " reflections write D" +
                     std::to_string(2 * n));
            if (n < 2) fail("D parameter must be >= 2");
            if (n > 1024) fail("group too large");
            return {FiniteGroup::dihedral(static_cast<int>(n)), "D" + std::to_string(n)};
        }
        fail("unknown atom (expected C<n>, D<n>, Dic<n>, Q8 or C4:C4)");
    }

    std::pair<FiniteGroup, std::string> atom() {
        auto [g, name] = base();
        skip_ws();
        if (eat('^')) {
            long k = number();
            if (k < 1) fail("exponent must be positive");
            FiniteGroup power = g;
            for (long t = 1; t < k; ++t) {
                if (power.order() * g.order() > 1024) fail("group too large");
                power = direct_product(power, g);
            }
            return {power, name + "^" + std::to_string(k)};
        }
        return {g, name};
    }

    GroupSpec parse() {
        GroupSpec spec;
        spec.source = s;
        auto [g, name] = atom();
        std::string canon = name;
        skip_ws();
        while (i < s.size()) {
            if (!eat('x')) fail("expected 'x' or end of spec");
            auto [h, hname] = atom();
            if (g.order() * h.order() > 1024) fail("group too large");
            g = direct_product(g, h);
            canon += "x" + hname;
            skip_ws();
        }
        spec.group = std::move(g);
        spec.canonical = canon;
        return spec;
    }
};

} // namespace detail

inline GroupSpec parse_group_spec(const std::string& text) {
    // whitespace-insensitive: parse the condensed spec (error positions
    // refer to it)
    std::string condensed;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) condensed.push_back(c);
    detail::DslParser p{condensed};
    GroupSpec spec = p.parse();
    spec.source = text;
    return spec;
}

/// Field specs: "Q", "Q(i)", "Q(zeta_m)", "Q(sqrt,-d)".
struct FieldSpec {
    std::string source;
    std::string canonical;
    AbelianField field;
};

inline FieldSpec parse_field_spec(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    FieldSpec spec;
    spec.source = text;
    if (s == "Q") {
        spec.field = rationals_field();
        spec.canonical = "Q";
        return spec;
    }
    if (s == "Q(i)") {
        spec.field = imaginary_quadratic_field(1);
        spec.canonical = "Q(i)";
        return spec;
    }
    auto num_tail = [&](const std::string& prefix) -> long {
        std::string body = s.substr(prefix.size(), s.size() - prefix.size() - 1);
        if (body.empty()) throw parse_error("field spec: missing parameter in '" + text + "'");
        for (char c : body)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw parse_error("field spec: bad parameter '" + body + "'");
        return std::stol(body);
    };
    if (s.rfind("Q(zeta_", 0) == 0 && s.back() == ')') {
        long m = num_tail("Q(zeta_");
        if (m < 1) throw parse_error("field spec: m must be >= 1");
        if (m > 256) throw unsupported_error("field spec: conductor too large");
        spec.field = cyclotomic_field(m);
        spec.canonical = "Q(zeta_" + std::to_string(m) + ")";
        return spec;
    }
    if (s.rfind("Q(sqrt,-", 0) == 0 && s.back() == ')') {
        long d = num_tail("Q(sqrt,-");
        if (d < 1) throw parse_error("field spec: d must be >= 1");
        if (squarefree_part(Integer(d)) != d)
            throw parse_error("field spec: d must be squarefree");
        if (d > 256) throw unsupported_error("field spec: discriminant too large");
        spec.field = imaginary_quadratic_field(d);
        spec.canonical = d == 1 ? "Q(i)" : "Q(sqrt,-" + std::to_string(d) + ")";
        return spec;
    }
    throw parse_error("field spec: expected Q, Q(i), Q(zeta_m) or Q(sqrt,-d), got '" + text + "'");
}

} // namespace ringends
