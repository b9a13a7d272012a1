#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ringends/cyclotomic.hpp"
#include "ringends/errors.hpp"
#include "ringends/fields.hpp"
#include "ringends/fp.hpp"
#include "ringends/group.hpp"
#include "ringends/linalg.hpp"
#include "ringends/numtheory.hpp"

namespace ringends {

/// Exact ordinary character table. Rows are sorted by (degree, values) for
/// reproducible output; orthogonality is verified exactly on construction.
struct CharacterTable {
    FiniteGroup group;
    ConjugacyData classes;
    std::vector<std::vector<CycNumber>> chars; // [character][class]
    std::vector<long> degrees;
    long exponent = 1;

    int count() const { return static_cast<int>(chars.size()); }
};

/// One Galois orbit of characters, together with its character field
/// (the center of the corresponding simple component).
struct CharOrbit {
    std::vector<int> members;      // character indices, sorted
    long level = 1;                // modulus of the stabilizer below
    std::vector<long> stabilizer;  // subgroup of (Z/level)* fixing the orbit
    FieldDescriptor field;         // fixed field = center
    long degree = 0;               // shared degree
    int fs = 0;                    // shared Frobenius-Schur indicator
};

namespace detail {

// Dixon's choice of prime: p = 1 (mod e), p > 2*sqrt(|G|), and p > |G| so
// class sizes are invertible.
inline long dixon_prime(long group_order, long exponent) {
    long lo = group_order;
    while (lo * lo <= 4 * group_order) ++lo; // lo > 2 sqrt(|G|)
    for (long p = exponent + 1;; p += exponent) {
        if (p <= lo) continue;
        if (is_prime(p)) return p;
    }
}

struct EigenSplitter {
    const std::vector<Matrix<Fp>>& mats;
    long p;
    Fp one;

    // Restriction of M to the span of `space` (columns). The span must be
    // M-invariant.
    Matrix<Fp> restrict_to(const Matrix<Fp>& m, const std::vector<std::vector<Fp>>& space) const {
        std::size_t r = space[0].size(), d = space.size();
        SpanBasis<Fp> sb(r, one);
        for (const auto& v : space)
            if (!sb.add(v)) throw internal_error("character table: subspace basis degenerate");
        Matrix<Fp> out(d, d, Fp(0, p));
        for (std::size_t j = 0; j < d; ++j) {
            std::vector<Fp> img(r, Fp(0, p));
            for (std::size_t i = 0; i < r; ++i) {
                Fp acc(0, p);
                for (std::size_t k = 0; k < r; ++k) acc += m.at(i, k) * space[j][k];
                img[i] = acc;
            }
            auto coords = sb.express(img);
            if (!coords) throw internal_error("character table: subspace not invariant");
            for (std::size_t i = 0; i < d; ++i) out.at(i, j) = (*coords)[i];
        }
        return out;
    }

    // Splits `space` into eigenspaces of the restriction of m.
    std::vector<std::vector<std::vector<Fp>>> split(const Matrix<Fp>& m,
                                                    const std::vector<std::vector<Fp>>& space) const {
        std::size_t d = space.size();
        Matrix<Fp> b = restrict_to(m, space);
        std::vector<std::vector<std::vector<Fp>>> parts;
        std::size_t found = 0;
        for (long lam = 0; lam < p && found < d; ++lam) {
            Matrix<Fp> shifted = b;
            for (std::size_t i = 0; i < d; ++i) shifted.at(i, i) -= Fp(lam, p);
            auto ker = kernel_basis(shifted, one);
            if (ker.empty()) continue;
            std::vector<std::vector<Fp>> sub;
            for (const auto& kv : ker) {
                std::vector<Fp> v(space[0].size(), Fp(0, p));
                for (std::size_t j = 0; j < d; ++j)
                    for (std::size_t i = 0; i < v.size(); ++i) v[i] += kv[j] * space[j][i];
                sub.push_back(std::move(v));
            }
            found += sub.size();
            parts.push_back(std::move(sub));
        }
        if (found != d)
            throw internal_error("character table: eigenspaces did not exhaust the subspace");
        return parts;
    }
};

} // namespace detail

/// Character table by the Dixon-Schneider method: simultaneous eigenvectors
/// of the class matrices over F_p with p = 1 (mod exp G), lifted to exact
/// cyclotomic values by counting root-of-unity multiplicities. Fully exact;
/// any failed audit throws instead of approximating.
inline CharacterTable character_table(const FiniteGroup& g) {
    CharacterTable t;
    t.group = g;
    t.classes = conjugacy_classes(t.group);
    t.exponent = t.group.exponent();
    const int r = t.classes.count();
    const long n = t.group.order();
    const long e = t.exponent;
    const long p = detail::dixon_prime(n, e);
    const Fp one(1, p);

    // class matrices: A[i](j,k) = #{x in C_i : x^{-1} z_k in C_j}
    std::vector<Matrix<Fp>> A(r, Matrix<Fp>(r, r, Fp(0, p)));
    for (int k = 0; k < r; ++k) {
        int zk = t.classes.representatives[k];
        for (int x = 0; x < n; ++x) {
            int i = t.classes.class_of[x];
            int j = t.classes.class_of[t.group.mul(t.group.inv(x), zk)];
            A[i].at(j, k) += one;
        }
    }

    // split the coordinate space into common eigenspaces
    detail::EigenSplitter splitter{A, p, one};
    std::vector<std::vector<std::vector<Fp>>> spaces;
    {
        std::vector<std::vector<Fp>> full;
        for (int i = 0; i < r; ++i) {
            std::vector<Fp> v(r, Fp(0, p));
            v[i] = one;
            full.push_back(std::move(v));
        }
        spaces.push_back(std::move(full));
    }
    auto sweep = [&](const Matrix<Fp>& m) {
        std::vector<std::vector<std::vector<Fp>>> next;
        for (auto& sp : spaces) {
            if (sp.size() == 1) { next.push_back(std::move(sp)); continue; }
            for (auto& part : splitter.split(m, sp)) next.push_back(std::move(part));
        }
        spaces = std::move(next);
    };
    auto all_split = [&] {
        for (const auto& sp : spaces)
            if (sp.size() > 1) return false;
        return true;
    };
    for (int i = 1; i < r && !all_split(); ++i) sweep(A[i]);
    if (!all_split()) {
        // deterministic seeded fallback: random F_p combinations of the
        // class matrices (the index sweep above already suffices in theory)
        std::mt19937 rng(0x52494e47u);
        for (int attempt = 0; attempt < 32 && !all_split(); ++attempt) {
            Matrix<Fp> m(r, r, Fp(0, p));
            for (int i = 1; i < r; ++i) {
                Fp c(static_cast<long>(rng() % p), p);
                for (int x = 0; x < r; ++x)
                    for (int y = 0; y < r; ++y) m.at(x, y) += c * A[i].at(x, y);
            }
            sweep(m);
        }
    }
    if (!all_split()) throw internal_error("character table: failed to split eigenspaces");
    if (static_cast<int>(spaces.size()) != r)
        throw internal_error("character table: wrong number of eigenspaces");

    // normalize each eigenvector so its identity-class coordinate is 1;
    // coordinates are then the central character values omega_i mod p
    std::vector<std::vector<long>> omegas;
    for (auto& sp : spaces) {
        auto v = sp[0];
        if (v[0] == Fp(0, p))
            throw internal_error("character table: eigenvector with zero identity coordinate");
        Fp inv = one / v[0];
        std::vector<long> w(r);
        for (int i = 0; i < r; ++i) w[i] = (v[i] * inv).value();
        omegas.push_back(std::move(w));
    }

    // degrees: d^2 = |G| / sum_i omega_i omega_{i'} / |C_i|  (mod p)
    std::vector<long> inv_class(r);
    for (int i = 0; i < r; ++i) inv_class[i] = t.classes.inverse_class(t.group, i);
    long root = 1;
    while ((root + 1) * (root + 1) <= n) ++root; // floor(sqrt(n))
    std::vector<long> degs;
    for (const auto& w : omegas) {
        Fp s(0, p);
        for (int i = 0; i < r; ++i)
            s += Fp(w[i], p) * Fp(w[inv_class[i]], p) / Fp(t.classes.sizes[i], p);
        Fp target = Fp(n, p) / s;
        long d = 0;
        for (long c = 1; c <= root; ++c)
            if (Fp(c * c, p) == target) { d = c; break; }
        if (d == 0) throw internal_error("character table: degree recovery failed");
        degs.push_back(d);
    }
    {
        long sum = 0;
        for (long d : degs) sum += d * d;
        if (sum != n) throw internal_error("character table: degree audit failed");
    }

    // exact values by root-of-unity multiplicity counting
    long zgen = pow_mod(primitive_root(p), (p - 1) / e, p); // order e in F_p
    std::vector<std::vector<CycNumber>> chars;
    for (std::size_t ci = 0; ci < omegas.size(); ++ci) {
        const auto& w = omegas[ci];
        long d = degs[ci];
        std::vector<long> valmod(r); // chi(g_i) mod p
        for (int i = 0; i < r; ++i)
            valmod[i] = (Fp(d, p) * Fp(w[i], p) / Fp(t.classes.sizes[i], p)).value();
        std::vector<CycNumber> row(r);
        for (int i = 0; i < r; ++i) {
            long m = t.group.element_order(t.classes.representatives[i]);
            long zm = pow_mod(zgen, e / m, p);
            std::vector<std::pair<long, Rational>> terms;
            for (long j = 0; j < m; ++j) {
                Fp mu(0, p);
                for (long l = 0; l < m; ++l) {
                    long cls = t.classes.power_class(t.group, i, l);
                    long zpow = pow_mod(zm, ((m - j) % m) * l, p); // zm^{-jl}
                    mu += Fp(valmod[cls], p) * Fp(zpow, p);
                }
                mu = mu / Fp(m, p);
                long mult = mu.value();
                if (mult > d)
                    throw internal_error("character table: multiplicity out of range");
                if (mult) terms.emplace_back(j, Rational(mult));
            }
            row[i] = CycNumber::from_powers(m, terms).embedded(e);
        }
        chars.push_back(std::move(row));
    }

    // deterministic order: by degree, then by values in class order
    std::vector<int> perm(chars.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    std::sort(perm.begin(), perm.end(), [&](int x, int y) {
        if (degs[x] != degs[y]) return degs[x] < degs[y];
        for (int i = 0; i < r; ++i) {
            int c = CycNumber::compare(chars[x][i], chars[y][i]);
            if (c) return c < 0;
        }
        return false;
    });
    for (int i : perm) {
        t.chars.push_back(chars[i]);
        t.degrees.push_back(degs[i]);
    }

    // exact orthogonality audits
    for (int x = 0; x < r; ++x)
        for (int y = x; y < r; ++y) {
            CycNumber acc;
            for (int i = 0; i < r; ++i)
                acc += t.chars[x][i] * t.chars[y][i].conjugate() * Rational(t.classes.sizes[i]);
            CycNumber expect = Rational(x == y ? n : 0);
            if (acc != expect)
                throw internal_error("character table: row orthogonality failed");
        }
    for (int i = 0; i < r; ++i)
        for (int j = i; j < r; ++j) {
            CycNumber acc;
            for (int x = 0; x < r; ++x) acc += t.chars[x][i] * t.chars[x][j].conjugate();
            CycNumber expect = Rational(i == j ? n / t.classes.sizes[i] : 0);
            if (acc != expect)
                throw internal_error("character table: column orthogonality failed");
        }
    return t;
}

/// Frobenius-Schur indicator (1/|G|) sum_g chi(g^2), via the class power map.
inline int fs_indicator(const CharacterTable& t, int chi) {
    CycNumber acc;
    for (int c = 0; c < t.classes.count(); ++c)
        acc += t.chars[chi][t.classes.power_class(t.group, c, 2)] * Rational(t.classes.sizes[c]);
    Rational v = acc.as_rational() / Rational(t.group.order());
    if (v != Rational(-1) && v != Rational(0) && v != Rational(1))
        throw internal_error("fs_indicator: value outside {-1,0,1}");
    return static_cast<int>(v.as_long());
}

namespace detail {

inline std::string char_key(const std::vector<CycNumber>& row, long e) {
    std::ostringstream os;
    for (const auto& v : row) os << v.embedded(e).str() << ";";
    return os.str();
}

} // namespace detail

/// Galois orbits of the character rows under a subgroup of (Z/level)^* acting
/// through reduction mod exp(G). `acting` must contain 1 and be closed under
/// multiplication mod level.
inline std::vector<CharOrbit> galois_orbits_subgroup(const CharacterTable& t, long level,
                                                     const std::vector<long>& acting) {
    const long e = t.exponent;
    if (level % e != 0) throw error("galois_orbits: level must be a multiple of exp(G)");
    const int r = t.count();
    std::map<std::string, int> row_index;
    for (int i = 0; i < r; ++i) row_index[detail::char_key(t.chars[i], e)] = i;

    // permutation action of each unit
    std::map<long, std::vector<int>> perms;
    for (long k : acting) {
        long ke = e == 1 ? 0 : ((k % e) + e) % e;
        std::vector<int> perm(r);
        for (int i = 0; i < r; ++i) {
            std::vector<CycNumber> img;
            img.reserve(t.chars[i].size());
            for (const auto& v : t.chars[i]) img.push_back(e == 1 ? v : v.galois(ke));
            auto it = row_index.find(detail::char_key(img, e));
            if (it == row_index.end())
                throw internal_error("galois_orbits: table not Galois-stable");
            perm[i] = it->second;
        }
        perms[k] = std::move(perm);
    }

    std::vector<bool> seen(r, false);
    std::vector<CharOrbit> orbits;
    for (int i = 0; i < r; ++i) {
        if (seen[i]) continue;
        CharOrbit o;
        o.level = level;
        std::set<int> members;
        for (long k : acting) {
            int img = perms[k][i];
            members.insert(img);
            if (img == i) o.stabilizer.push_back(k);
        }
        for (int m : members) seen[m] = true;
        o.members.assign(members.begin(), members.end());
        std::sort(o.stabilizer.begin(), o.stabilizer.end());
        o.degree = t.degrees[i];
        o.fs = fs_indicator(t, i);
        for (int m : o.members) {
            if (t.degrees[m] != o.degree)
                throw internal_error("galois_orbits: degrees differ inside an orbit");
            if (fs_indicator(t, m) != o.fs)
                throw internal_error("galois_orbits: indicators differ inside an orbit");
        }
        o.field = describe_field(make_abelian_field(level, o.stabilizer, true));
        orbits.push_back(std::move(o));
    }
    return orbits;
}

/// Orbits under the full Galois action (components of Q G).
inline std::vector<CharOrbit> galois_orbits(const CharacterTable& t) {
    long e = t.exponent;
    return galois_orbits_subgroup(t, e, detail::units_mod(e));
}

/// Orbits under the subgroup fixing F (components of F G); each orbit's
/// field is the center F(chi).
inline std::vector<CharOrbit> galois_orbits_over(const CharacterTable& t, const AbelianField& F) {
    long level = lcm(t.exponent, F.conductor);
    return galois_orbits_subgroup(t, level, lift_stabilizer(F, level));
}

} // namespace ringends
