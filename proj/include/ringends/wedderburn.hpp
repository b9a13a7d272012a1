#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "ringends/chartab.hpp"
#include "ringends/errors.hpp"
#include "ringends/fields.hpp"
#include "ringends/group.hpp"
#include "ringends/group_algebra.hpp"
#include "ringends/hilbert.hpp"
#include "ringends/linalg.hpp"

namespace ringends {

/// Isomorphism kind of one simple component of F G.
///  - Field: reduced degree 1.
///  - SplitMatrix2OverQ: M_2(Q).
///  - TotallyDefiniteQuaternion / IndefiniteQuaternionDivision: quaternion
///    division algebra over Q with recognized parameters.
///  - OtherDivision: provably a division algebra (totally definite
///    quaternion over a larger totally real center).
///  - OtherMatrix: reduced degree >= 2 with the division structure left
///    unresolved; the classification engine never needs it.
enum class ComponentKind {
    Field,
    SplitMatrix2OverQ,
    TotallyDefiniteQuaternion,
    IndefiniteQuaternionDivision,
    OtherMatrix,
    OtherDivision,
};

inline std::string kind_name(ComponentKind k) {
    switch (k) {
        case ComponentKind::Field: return "Field";
        case ComponentKind::SplitMatrix2OverQ: return "SplitMatrix2OverQ";
        case ComponentKind::TotallyDefiniteQuaternion: return "TotallyDefiniteQuaternion";
        case ComponentKind::IndefiniteQuaternionDivision: return "IndefiniteQuaternionDivision";
        case ComponentKind::OtherMatrix: return "OtherMatrix";
        case ComponentKind::OtherDivision: return "OtherDivision";
    }
    return "?";
}

/// Quaternion algebra (a, b / Q) data: the canonical representative pair,
/// the recognized squarefree pair, and the ramified places.
struct QuaternionData {
    Integer a = 0, b = 0;             // representative parameters
    Integer found_a = 0, found_b = 0; // parameters recognized in the algebra
    std::vector<Place> ramified;
};

struct WedderburnComponent {
    CharOrbit orbit;
    FieldDescriptor center;
    long reduced_degree = 1;
    ComponentKind kind = ComponentKind::Field;
    std::optional<QuaternionData> quaternion;
    GroupAlgebraElement idempotent; // over F = Q only
    long dim_over_field = 1;        // reduced_degree^2 * [center : F]

    long q_dim_over_center() const { return reduced_degree * reduced_degree; }

    std::string str() const {
        switch (kind) {
            case ComponentKind::Field: return center.str();
            case ComponentKind::SplitMatrix2OverQ: return "M2(Q)";
            case ComponentKind::TotallyDefiniteQuaternion:
            case ComponentKind::IndefiniteQuaternionDivision:
                return "(" + quaternion->a.get_str() + "," + quaternion->b.get_str() + " / Q)";
            case ComponentKind::OtherDivision:
                return "division algebra of reduced degree " + std::to_string(reduced_degree) +
                       " over " + center.str();
            case ComponentKind::OtherMatrix:
                return "reduced degree " + std::to_string(reduced_degree) + " over " +
                       center.str();
        }
        return "?";
    }
};

struct Decomposition {
    FiniteGroup group;
    AbelianField base_field; // F
    CharacterTable table;
    std::vector<WedderburnComponent> components;
};

/// Primitive central idempotent of Q G attached to a Galois orbit of
/// characters: sum over the orbit of (chi(1)/|G|) sum_g chi(g^-1) g.
inline GroupAlgebraElement central_idempotent(const CharacterTable& t, const CharOrbit& o) {
    const int r = t.classes.count();
    const long n = t.group.order();
    // orbit value sum per class; Galois-stable, hence rational
    std::vector<Rational> s(r);
    for (int c = 0; c < r; ++c) {
        CycNumber acc;
        for (int m : o.members) acc += t.chars[m][c];
        s[c] = acc.as_rational();
    }
    Rational scale = Rational(o.degree) / Rational(n);
    GroupAlgebraElement e;
    for (int g = 0; g < t.group.order(); ++g) {
        Rational c = scale * s[t.classes.class_of[t.group.inv(g)]];
        if (!c.is_zero()) e.coeff[g] = c;
    }
    return e;
}

/// The subalgebra Q G e in explicit coordinates: a basis extracted greedily
/// from {g e}, its exact multiplication table, and the identity e.
struct ComponentAlgebra {
    long dim = 0;
    std::vector<GroupAlgebraElement> basis;
    // prod[i][j] = coordinates of basis_i * basis_j in the basis
    std::vector<std::vector<std::vector<Rational>>> prod;
    std::vector<Rational> identity;          // coordinates of e
    SpanBasis<Rational> span{0, Rational(1)}; // coordinate map for Q G e

    /// Coordinates of an algebra element lying in Q G e.
    std::vector<Rational> coords(const FiniteGroup& g, const GroupAlgebraElement& x) const {
        auto c = span.express(ga_dense(g, x));
        if (!c) throw error("ComponentAlgebra: element outside Q G e");
        return *c;
    }
};

inline ComponentAlgebra component_algebra(const FiniteGroup& g, const GroupAlgebraElement& e) {
    ComponentAlgebra a;
    SpanBasis<Rational> sb(g.order(), Rational(1));
    for (int x = 0; x < g.order(); ++x) {
        GroupAlgebraElement v = ga_mul(g, ga_basis(x), e);
        if (sb.add(ga_dense(g, v))) a.basis.push_back(std::move(v));
    }
    a.dim = static_cast<long>(a.basis.size());
    a.prod.assign(a.dim, std::vector<std::vector<Rational>>(a.dim));
    for (long i = 0; i < a.dim; ++i)
        for (long j = 0; j < a.dim; ++j) {
            auto coords = sb.express(ga_dense(g, ga_mul(g, a.basis[i], a.basis[j])));
            if (!coords)
                throw internal_error("component_algebra: product escapes the span");
            a.prod[i][j] = std::move(*coords);
        }
    auto id = sb.express(ga_dense(g, e));
    if (!id) throw internal_error("component_algebra: idempotent escapes the span");
    a.identity = std::move(*id);
    a.span = std::move(sb);
    return a;
}

namespace detail {

inline std::vector<Rational> alg_mul(const ComponentAlgebra& a, const std::vector<Rational>& x,
                                     const std::vector<Rational>& y) {
    std::vector<Rational> z(a.dim, Rational(0));
    for (long i = 0; i < a.dim; ++i) {
        if (x[i].is_zero()) continue;
        for (long j = 0; j < a.dim; ++j) {
            if (y[j].is_zero()) continue;
            Rational c = x[i] * y[j];
            for (long k = 0; k < a.dim; ++k) z[k] += c * a.prod[i][j][k];
        }
    }
    return z;
}

/// x = lambda * identity? Returns lambda if so.
inline std::optional<Rational> scalar_of(const ComponentAlgebra& a,
                                         const std::vector<Rational>& x) {
    // find a coordinate where identity is nonzero
    long pivot = -1;
    for (long i = 0; i < a.dim; ++i)
        if (!a.identity[i].is_zero()) { pivot = i; break; }
    if (pivot < 0) throw internal_error("scalar_of: zero identity");
    Rational lam = x[pivot] / a.identity[pivot];
    for (long i = 0; i < a.dim; ++i)
        if (x[i] != lam * a.identity[i]) return std::nullopt;
    return lam;
}

inline std::vector<Rational> alg_trace_vector(const ComponentAlgebra& a) {
    // t_i = trace of left multiplication by basis_i
    std::vector<Rational> t(a.dim, Rational(0));
    for (long i = 0; i < a.dim; ++i)
        for (long j = 0; j < a.dim; ++j) t[i] += a.prod[i][j][j];
    return t;
}

} // namespace detail

/// Recognizes a 4-dimensional central simple Q-algebra as a quaternion
/// algebra (a, b / Q): finds a trace-zero pair i, j with i j = -j i via the
/// bilinear form u v + v u on the trace-zero subspace, normalizes the
/// squares to squarefree integers and computes the ramified places.
inline QuaternionData quaternion_recognize(const ComponentAlgebra& a) {
    if (a.dim != 4) throw error("quaternion_recognize: dimension is not 4");
    // center must be Q: solve x b_j = b_j x for all j
    {
        Matrix<Rational> sys(4 * 4, 4, Rational(0));
        for (long j = 0; j < 4; ++j)
            for (long k = 0; k < 4; ++k)
                for (long i = 0; i < 4; ++i)
                    sys.at(j * 4 + k, i) = a.prod[i][j][k] - a.prod[j][i][k];
        auto z = kernel_basis(sys, Rational(1));
        if (z.size() != 1) throw error("quaternion_recognize: center is not Q");
    }
    auto tr = detail::alg_trace_vector(a);
    // trace-zero subspace (3-dimensional)
    Matrix<Rational> trm(1, 4, Rational(0));
    for (long i = 0; i < 4; ++i) trm.at(0, i) = tr[i];
    auto a0 = kernel_basis(trm, Rational(1));
    if (a0.size() != 3)
        throw internal_error("quaternion_recognize: trace-zero subspace has wrong dimension");

    auto square_scalar = [&](const std::vector<Rational>& x) -> std::optional<Rational> {
        return detail::scalar_of(a, detail::alg_mul(a, x, x));
    };
    auto combine = [&](const std::vector<Rational>& x, const Rational& cx,
                       const std::vector<Rational>& y, const Rational& cy) {
        std::vector<Rational> z(a.dim, Rational(0));
        for (long i = 0; i < a.dim; ++i) z[i] = cx * x[i] + cy * y[i];
        return z;
    };

    // first generator: deterministic scan for a nonzero square
    std::vector<std::vector<Rational>> candidates;
    for (const auto& w : a0) candidates.push_back(w);
    for (std::size_t i = 0; i < a0.size(); ++i)
        for (std::size_t j = i + 1; j < a0.size(); ++j) {
            candidates.push_back(combine(a0[i], Rational(1), a0[j], Rational(1)));
            candidates.push_back(combine(a0[i], Rational(1), a0[j], Rational(-1)));
        }
    std::vector<Rational> u;
    Rational asq;
    bool found = false;
    for (const auto& c : candidates) {
        auto s = square_scalar(c);
        if (!s) throw error("quaternion_recognize: trace-zero square is not scalar");
        if (!s->is_zero()) { u = c; asq = *s; found = true; break; }
    }
    if (!found) throw error("quaternion_recognize: no anisotropic vector found");

    // orthogonal complement of u in the trace-zero space: u x + x u = 0
    Matrix<Rational> orth(4 + 1, 4, Rational(0));
    {
        // rows: coordinates of u x + x u per output coordinate, plus trace row
        // unknowns: x coordinates
        Matrix<Rational> sys(5, 4, Rational(0));
        for (long xi = 0; xi < 4; ++xi) {
            std::vector<Rational> ei(4, Rational(0));
            ei[xi] = Rational(1);
            auto anti = detail::alg_mul(a, u, ei);
            auto anti2 = detail::alg_mul(a, ei, u);
            for (long k = 0; k < 4; ++k) sys.at(k, xi) = anti[k] + anti2[k];
            sys.at(4, xi) = tr[xi];
        }
        orth = sys;
    }
    auto perp = kernel_basis(orth, Rational(1));
    if (perp.size() != 2)
        throw internal_error("quaternion_recognize: orthogonal complement has wrong dimension");
    std::vector<std::vector<Rational>> vcand{
        perp[0], perp[1], combine(perp[0], Rational(1), perp[1], Rational(1)),
        combine(perp[0], Rational(1), perp[1], Rational(-1)),
        combine(perp[0], Rational(1), perp[1], Rational(2))};
    std::vector<Rational> v;
    Rational bsq;
    found = false;
    for (const auto& c : vcand) {
        auto s = square_scalar(c);
        if (!s) throw error("quaternion_recognize: trace-zero square is not scalar");
        if (!s->is_zero()) { v = c; bsq = *s; found = true; break; }
    }
    if (!found) throw error("quaternion_recognize: no orthogonal anisotropic vector found");

    QuaternionData q;
    q.found_a = squarefree_part(asq);
    q.found_b = squarefree_part(bsq);
    q.ramified = ramified_places(Rational(q.found_a), Rational(q.found_b));
    // canonical representative parameters per ramified set
    auto is_set = [&](std::initializer_list<Place> ps) {
        std::vector<Place> want(ps);
        std::sort(want.begin(), want.end());
        return q.ramified == want;
    };
    if (is_set({Place::prime(2), Place::infinity()})) { q.a = -1; q.b = -1; }
    else if (is_set({Place::prime(3), Place::infinity()})) { q.a = -1; q.b = -3; }
    else if (is_set({Place::prime(5), Place::infinity()})) { q.a = -2; q.b = -5; }
    else { q.a = q.found_a; q.b = q.found_b; }
    if (!q.ramified.empty() &&
        ramified_places(Rational(q.a), Rational(q.b)) != q.ramified)
        throw internal_error("quaternion_recognize: representative pair mismatch");
    return q;
}

/// Wedderburn decomposition of F G. Over Q every component kind is fully
/// resolved; over a larger supported field the center data is exact and the
/// division structure is resolved where the indicator decides it.
inline Decomposition decompose(const FiniteGroup& g, const AbelianField& F = rationals_field()) {
    Decomposition dec;
    dec.group = g;
    dec.base_field = F;
    dec.table = character_table(g);
    bool over_q = F.degree() == 1;
    auto orbits = over_q ? galois_orbits(dec.table) : galois_orbits_over(dec.table, F);
    long dim_total = 0;
    for (auto& o : orbits) {
        WedderburnComponent c;
        c.orbit = o;
        c.center = o.field;
        c.reduced_degree = o.degree;
        c.dim_over_field = o.degree * o.degree * (c.center.degree() / F.degree());
        dim_total += c.dim_over_field;
        if (over_q) c.idempotent = central_idempotent(dec.table, o);
        if (c.reduced_degree == 1) {
            c.kind = ComponentKind::Field;
        } else if (c.reduced_degree == 2 && c.center.degree() == 1) {
            auto alg = component_algebra(dec.table.group, c.idempotent);
            if (alg.dim != 4)
                throw internal_error("decompose: dimension audit failed for a quaternion candidate");
            c.quaternion = quaternion_recognize(alg);
            if (c.quaternion->ramified.empty()) c.kind = ComponentKind::SplitMatrix2OverQ;
            else if (c.quaternion->ramified.back() == Place::infinity())
                c.kind = ComponentKind::TotallyDefiniteQuaternion;
            else c.kind = ComponentKind::IndefiniteQuaternionDivision;
        } else if (c.reduced_degree == 2 && o.fs == -1 &&
                   c.center.field.totally_real()) {
            // symplectic character with totally real center: totally definite
            // quaternion algebra over the center, hence division
            c.kind = ComponentKind::OtherDivision;
        } else {
            c.kind = ComponentKind::OtherMatrix;
        }
        dec.components.push_back(std::move(c));
    }
    if (dim_total != g.order())
        throw internal_error("decompose: dimension audit failed: got " +
                             std::to_string(dim_total) + " for |G| = " +
                             std::to_string(g.order()));
    return dec;
}

/// Perlis-Walker decomposition of F G for abelian G: for each divisor d of
/// |G|, a_d * phi(d)/[F(zeta_d):F] copies of F(zeta_d), with a_d the number
/// of cyclic subgroups of order d. Independent of the character-table route.
inline std::vector<std::pair<FieldDescriptor, long>> perlis_walker(
    const FiniteGroup& g, const AbelianField& F = rationals_field()) {
    if (!g.is_abelian()) throw unsupported_error("perlis_walker: group is not abelian");
    std::map<AbelianField, std::pair<FieldDescriptor, long>> acc;
    long dim = 0;
    for (long d : divisors(g.order())) {
        long a_d = cyclic_subgroup_count(g, d);
        if (a_d == 0) continue;
        AbelianField fd = adjoin_root_of_unity(F, d);
        long rel_deg = fd.degree() / F.degree();
        long copies = a_d * euler_phi(d) / rel_deg;
        dim += copies * rel_deg;
        auto it = acc.find(fd);
        if (it == acc.end()) acc.emplace(fd, std::make_pair(describe_field(fd), copies));
        else it->second.second += copies;
    }
    if (dim != g.order()) throw internal_error("perlis_walker: dimension audit failed");
    std::vector<std::pair<FieldDescriptor, long>> out;
    for (auto& [k, v] : acc) out.push_back(v);
    return out;
}

/// Field multiset of a decomposition's degree-1 components, for comparison
/// against the Perlis-Walker route.
inline std::vector<std::pair<FieldDescriptor, long>> field_multiset(const Decomposition& dec) {
    std::map<AbelianField, std::pair<FieldDescriptor, long>> acc;
    for (const auto& c : dec.components) {
        if (c.reduced_degree != 1)
            throw error("field_multiset: non-commutative component present");
        auto it = acc.find(c.center.field);
        if (it == acc.end()) acc.emplace(c.center.field, std::make_pair(c.center, 1L));
        else it->second.second += 1;
    }
    std::vector<std::pair<FieldDescriptor, long>> out;
    for (auto& [k, v] : acc) out.push_back(v);
    return out;
}

} // namespace ringends
