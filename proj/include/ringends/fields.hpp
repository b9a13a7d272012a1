#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "ringends/cyclotomic.hpp"
#include "ringends/errors.hpp"
#include "ringends/numtheory.hpp"

namespace ringends {

namespace detail {

inline std::vector<long> units_mod(long n) {
    std::vector<long> u;
    for (long k = 1; k <= n; ++k)
        if (gcd(k, n) == 1) u.push_back(k % n == 0 ? n : k % n);
    if (n == 1) return {0}; // (Z/1)* is trivial; represent its element as 0
    return u;
}

/// Subgroup of (Z/n)* generated by the given residues, as a sorted list.
inline std::vector<long> unit_subgroup(long n, std::vector<long> gens) {
    if (n == 1) return {0};
    std::set<long> s{1 % n};
    std::vector<long> queue{1 % n};
    for (long& g : gens) { g %= n; if (g < 0) g += n; }
    for (std::size_t head = 0; head < queue.size(); ++head)
        for (long g : gens) {
            long x = (queue[head] * g) % n;
            if (s.insert(x).second) queue.push_back(x);
        }
    return std::vector<long>(s.begin(), s.end());
}

/// Kernel of the reduction (Z/n)* -> (Z/f)* for f | n.
inline std::vector<long> reduction_kernel(long n, long f) {
    if (n == 1) return {0};
    std::vector<long> ker;
    for (long k : units_mod(n))
        if (f == 1 || k % f == 1 % f) ker.push_back(k);
    return ker;
}

} // namespace detail

/// Abelian number field, represented as the subfield of Q(zeta_cond) fixed
/// by a subgroup of (Z/cond)*. Stored in canonical form: the conductor is
/// minimal and the stabilizer is sorted.
struct AbelianField {
    long conductor = 1;
    std::vector<long> stabilizer = {0}; // residues; {0} encodes the trivial group mod 1

    long degree() const {
        if (conductor == 1) return 1;
        return euler_phi(conductor) / static_cast<long>(stabilizer.size());
    }
    bool totally_real() const {
        if (conductor <= 2) return true;
        long m1 = conductor - 1;
        return std::binary_search(stabilizer.begin(), stabilizer.end(), m1);
    }
    long n1() const { return totally_real() ? degree() : 0; }
    long n2() const { return (degree() - n1()) / 2; }

    bool operator==(const AbelianField& o) const {
        return conductor == o.conductor && stabilizer == o.stabilizer;
    }
    bool operator<(const AbelianField& o) const {
        if (conductor != o.conductor) return conductor < o.conductor;
        return stabilizer < o.stabilizer;
    }
};

/// Canonicalizes (n, subgroup H of (Z/n)*): the fixed field lives in the
/// smallest Q(zeta_f) with f | n such that ker((Z/n)* -> (Z/f)*) <= H; the
/// stabilizer descends to the image of H mod f.
inline AbelianField make_abelian_field(long n, std::vector<long> stab_gens_or_elems,
                                       bool already_subgroup = false) {
    if (n < 1) throw error("make_abelian_field: conductor must be positive");
    std::vector<long> H = already_subgroup ? std::move(stab_gens_or_elems)
                                           : detail::unit_subgroup(n, std::move(stab_gens_or_elems));
    if (n == 1) return AbelianField{1, {0}};
    std::sort(H.begin(), H.end());
    std::set<long> hs(H.begin(), H.end());
    for (long f : divisors(n)) {
        auto ker = detail::reduction_kernel(n, f);
        bool inside = true;
        for (long k : ker)
            if (!hs.count(k)) { inside = false; break; }
        if (!inside) continue;
        if (f == 1) return AbelianField{1, {0}};
        std::set<long> img;
        for (long h : H) img.insert(h % f == 0 ? f : h % f);
        return AbelianField{f, std::vector<long>(img.begin(), img.end())};
    }
    throw internal_error("make_abelian_field: no conductor found");
}

inline AbelianField rationals_field() { return AbelianField{1, {0}}; }

inline AbelianField cyclotomic_field(long m) {
    if (m < 1) throw error("cyclotomic_field: m must be positive");
    if (m % 2 == 0 && (m / 2) % 2 == 1) m /= 2; // Q(zeta_2k) = Q(zeta_k), k odd
    if (m <= 2) return rationals_field();
    return AbelianField{m, {1}};
}

/// Q(sqrt(-d)) for squarefree d >= 1 (d = 1 gives Q(i)).
inline AbelianField imaginary_quadratic_field(long d) {
    if (d < 1) throw error("imaginary_quadratic_field: d must be positive");
    if (squarefree_part(Integer(d)) != d)
        throw error("imaginary_quadratic_field: d must be squarefree");
    long D = (-d % 4 == -3 || -d % 4 == 1) ? -d : -4 * d; // fundamental discriminant of Q(sqrt(-d))
    long f = -D;
    std::vector<long> H;
    for (long k : detail::units_mod(f))
        if (kronecker(Integer(D), Integer(k)) == 1) H.push_back(k);
    return make_abelian_field(f, H, true);
}

enum class FieldLabel { Rationals, ImaginaryQuadratic, Cyclotomic, OtherAbelian };

/// Recognized abelian field: signature data plus a display label.
struct FieldDescriptor {
    AbelianField field;
    FieldLabel label = FieldLabel::Rationals;
    long quad_d = 0; // ImaginaryQuadratic: Q(sqrt(-quad_d))
    long cyc_m = 0;  // Cyclotomic: Q(zeta_cyc_m)

    long degree() const { return field.degree(); }
    long n1() const { return field.n1(); }
    long n2() const { return field.n2(); }
    bool is_rationals() const { return label == FieldLabel::Rationals; }

    std::string str() const {
        switch (label) {
            case FieldLabel::Rationals: return "Q";
            case FieldLabel::ImaginaryQuadratic:
                return quad_d == 1 ? "Q(i)" : "Q(sqrt(-" + std::to_string(quad_d) + "))";
            case FieldLabel::Cyclotomic: return "Q(zeta_" + std::to_string(cyc_m) + ")";
            case FieldLabel::OtherAbelian:
                return "abelian(cond=" + std::to_string(field.conductor) +
                       ",deg=" + std::to_string(degree()) + ")";
        }
        return "?";
    }

    bool operator==(const FieldDescriptor& o) const { return field == o.field; }
    bool operator<(const FieldDescriptor& o) const { return field < o.field; }
};

/// Imaginary quadratic parameter d via the Gaussian-period route: scan
/// deterministically for a degree-2 primitive element fixed by the
/// stabilizer, then read d off the discriminant of its minimal polynomial.
inline long quadratic_parameter(const AbelianField& f) {
    if (f.degree() != 2 || f.totally_real())
        throw error("quadratic_parameter: field is not imaginary quadratic");
    long n = f.conductor;
    for (long a = 1; a <= n; ++a) {
        std::vector<std::pair<long, Rational>> terms;
        for (long k : f.stabilizer) terms.emplace_back(a * k, Rational(1));
        CycNumber period = CycNumber::from_powers(n, terms);
        auto mp = minimal_polynomial(period);
        if (mp.size() != 3) continue; // degree != 2: period fell in a subfield
        Rational disc = mp[1] * mp[1] - Rational(4) * mp[2];
        if (!disc.is_negative()) throw internal_error("quadratic_parameter: positive discriminant");
        Integer d = squarefree_part(-disc);
        return d.get_si();
    }
    throw internal_error("quadratic_parameter: no primitive period found");
}

inline FieldDescriptor describe_field(const AbelianField& f) {
    FieldDescriptor d;
    d.field = f;
    if (f.degree() == 1) {
        d.label = FieldLabel::Rationals;
        return d;
    }
    if (f.degree() == 2 && !f.totally_real()) {
        d.label = FieldLabel::ImaginaryQuadratic;
        d.quad_d = quadratic_parameter(f);
        return d;
    }
    if (f.degree() == euler_phi(f.conductor)) {
        d.label = FieldLabel::Cyclotomic;
        d.cyc_m = f.conductor;
        return d;
    }
    d.label = FieldLabel::OtherAbelian;
    return d;
}

/// Dirichlet rank of the unit group of the ring of integers: n1 + n2 - 1.
inline long unit_rank(const FieldDescriptor& k) {
    long r = k.n1() + k.n2() - 1;
    return r < 0 ? 0 : r;
}

inline long unit_rank(const AbelianField& k) {
    long r = k.n1() + k.n2() - 1;
    return r < 0 ? 0 : r;
}

/// Compositum F(zeta_m) etc.: lift a field to a larger cyclotomic level.
/// Returns the stabilizer preimage inside (Z/L)*.
inline std::vector<long> lift_stabilizer(const AbelianField& f, long L) {
    if (L % f.conductor != 0) throw error("lift_stabilizer: level not a multiple of conductor");
    if (L == 1) return {0};
    std::vector<long> out;
    for (long k : detail::units_mod(L)) {
        long r = f.conductor == 1 ? 0 : (k % f.conductor);
        if (f.conductor == 1 ||
            std::binary_search(f.stabilizer.begin(), f.stabilizer.end(),
                               r == 0 ? f.conductor : r))
            out.push_back(k);
    }
    return out;
}

/// The compositum of F with Q(zeta_m), as an abelian field.
inline AbelianField adjoin_root_of_unity(const AbelianField& f, long m) {
    AbelianField zm = cyclotomic_field(m);
    long L = lcm(f.conductor, zm.conductor);
    auto hf = lift_stabilizer(f, L);
    auto hm = lift_stabilizer(zm, L);
    std::set<long> hm_set(hm.begin(), hm.end());
    std::vector<long> inter;
    for (long k : hf)
        if (hm_set.count(k)) inter.push_back(k);
    return make_abelian_field(L, inter, true);
}

/// [F(zeta_m) : F].
inline long cyclotomic_extension_degree(const AbelianField& f, long m) {
    return adjoin_root_of_unity(f, m).degree() / f.degree();
}

} // namespace ringends
