#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ringends/group.hpp"
#include "ringends/rational.hpp"

namespace ringends {

/// Element of the rational group algebra QG: a sparse map from group-element
/// index to coefficient. Zero coefficients are never stored.
struct GroupAlgebraElement {
    std::map<int, Rational> coeff;

    bool is_zero() const { return coeff.empty(); }
    Rational at(int g) const {
        auto it = coeff.find(g);
        return it == coeff.end() ? Rational(0) : it->second;
    }
    void set(int g, const Rational& c) {
        if (c.is_zero()) coeff.erase(g);
        else coeff[g] = c;
    }
    void add(int g, const Rational& c) {
        auto it = coeff.find(g);
        if (it == coeff.end()) {
            if (!c.is_zero()) coeff[g] = c;
            return;
        }
        it->second += c;
        if (it->second.is_zero()) coeff.erase(it);
    }
    bool operator==(const GroupAlgebraElement& o) const { return coeff == o.coeff; }

    std::string str(const FiniteGroup& g) const {
        if (coeff.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : coeff) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c.str() << ")*g" << e;
            (void)g;
        }
        return os.str();
    }
};

inline GroupAlgebraElement ga_one(const FiniteGroup& g) {
    GroupAlgebraElement e;
    e.coeff[g.identity()] = Rational(1);
    return e;
}

inline GroupAlgebraElement ga_basis(int g) {
    GroupAlgebraElement e;
    e.coeff[g] = Rational(1);
    return e;
}

inline GroupAlgebraElement ga_add(const GroupAlgebraElement& x, const GroupAlgebraElement& y) {
    GroupAlgebraElement z = x;
    for (const auto& [g, c] : y.coeff) z.add(g, c);
    return z;
}

inline GroupAlgebraElement ga_sub(const GroupAlgebraElement& x, const GroupAlgebraElement& y) {
    GroupAlgebraElement z = x;
    for (const auto& [g, c] : y.coeff) z.add(g, -c);
    return z;
}

inline GroupAlgebraElement ga_scale(const GroupAlgebraElement& x, const Rational& r) {
    GroupAlgebraElement z;
    if (r.is_zero()) return z;
    for (const auto& [g, c] : x.coeff) z.coeff[g] = c * r;
    return z;
}

inline GroupAlgebraElement ga_mul(const FiniteGroup& grp, const GroupAlgebraElement& x,
                                  const GroupAlgebraElement& y) {
    GroupAlgebraElement z;
    for (const auto& [g, c] : x.coeff)
        for (const auto& [h, d] : y.coeff) z.add(grp.mul(g, h), c * d);
    return z;
}

/// x g x^{-1}-style conjugate: u^{-1} x u needs an inverse; for group
/// elements we conjugate coefficients along the group operation.
inline GroupAlgebraElement ga_conjugate_by_group_element(const FiniteGroup& grp,
                                                         const GroupAlgebraElement& x, int u) {
    GroupAlgebraElement z;
    for (const auto& [g, c] : x.coeff) z.add(grp.mul(grp.mul(grp.inv(u), g), u), c);
    return z;
}

inline bool ga_is_central(const FiniteGroup& grp, const GroupAlgebraElement& x) {
    for (int u = 0; u < grp.order(); ++u)
        if (!(ga_conjugate_by_group_element(grp, x, u) == x)) return false;
    return true;
}

inline Rational ga_augmentation(const GroupAlgebraElement& x) {
    Rational s(0);
    for (const auto& [g, c] : x.coeff) s += c;
    return s;
}

/// Dense coefficient vector of length |G|.
inline std::vector<Rational> ga_dense(const FiniteGroup& grp, const GroupAlgebraElement& x) {
    std::vector<Rational> v(grp.order(), Rational(0));
    for (const auto& [g, c] : x.coeff) v[g] = c;
    return v;
}

inline GroupAlgebraElement ga_from_dense(const std::vector<Rational>& v) {
    GroupAlgebraElement x;
    for (int g = 0; g < static_cast<int>(v.size()); ++g)
        if (!v[g].is_zero()) x.coeff[g] = v[g];
    return x;
}

} // namespace ringends
