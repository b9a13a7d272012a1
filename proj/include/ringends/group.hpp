#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ringends/errors.hpp"
#include "ringends/numtheory.hpp"

namespace ringends {

/// Finite group as an explicit multiplication table over element indices
/// 0..n-1. The table is validated as a group law on construction. Targeted
/// at orders <= 64; everything downstream assumes desk scale.
class FiniteGroup {
public:
    static constexpr int kDefaultBound = 64;

    /// Default-constructs the trivial group.
    FiniteGroup()
        : n_(1), table_{0}, identity_(0), inverse_{0}, element_order_{1}, generators_{0} {}

    /// Builds from a multiplication table; validates every group axiom and
    /// names the first failed one.
    static FiniteGroup from_table(std::vector<std::vector<int>> table,
                                  std::vector<std::string> names = {},
                                  std::vector<int> generators = {}) {
        FiniteGroup g;
        g.n_ = static_cast<int>(table.size());
        if (g.n_ == 0) throw parse_error("group table: empty");
        if (g.n_ > 1024) throw unsupported_error("group table: order exceeds hard cap 1024");
        g.table_.assign(static_cast<std::size_t>(g.n_) * g.n_, 0);
        for (int i = 0; i < g.n_; ++i) {
            if (static_cast<int>(table[i].size()) != g.n_)
                throw parse_error("group table: row " + std::to_string(i) + " has wrong length");
            for (int j = 0; j < g.n_; ++j) {
                int v = table[i][j];
                if (v < 0 || v >= g.n_)
                    throw parse_error("group axiom failed: closure (entry out of range at " +
                                      std::to_string(i) + "," + std::to_string(j) + ")");
                g.table_[static_cast<std::size_t>(i) * g.n_ + j] = static_cast<unsigned short>(v);
            }
        }
        g.validate();
        g.names_ = std::move(names);
        if (!g.names_.empty() && static_cast<int>(g.names_.size()) != g.n_)
            throw parse_error("group table: wrong number of element names");
        if (generators.empty()) generators = g.compute_generators();
        g.generators_ = std::move(generators);
        for (int x : g.generators_)
            if (x < 0 || x >= g.n_) throw parse_error("group table: generator index out of range");
        if (static_cast<int>(g.closure_from(g.generators_).size()) != g.n_)
            throw parse_error("group axiom failed: generators do not generate");
        return g;
    }

    static FiniteGroup trivial() { return FiniteGroup(); }

    static FiniteGroup cyclic(int n) {
        if (n < 1) throw error("cyclic: order must be positive");
        std::vector<std::vector<int>> t(n, std::vector<int>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
        return from_table(std::move(t), {}, n == 1 ? std::vector<int>{0} : std::vector<int>{1});
    }

    /// Dihedral group of the given order (order-based naming: dihedral(2n)
    /// has a cyclic subgroup of order n). Order must be even and >= 2.
    static FiniteGroup dihedral(int order) {
        if (order < 2 || order % 2)
            throw error("dihedral: order must be even and >= 2, got " + std::to_string(order));
        int n = order / 2;
        // element (i, s) = r^i f^s at index i + n*s
        auto idx = [n](int i, int s) { return ((i % n) + n) % n + n * s; };
        std::vector<std::vector<int>> t(order, std::vector<int>(order));
        for (int i = 0; i < n; ++i)
            for (int s = 0; s < 2; ++s)
                for (int j = 0; j < n; ++j)
                    for (int u = 0; u < 2; ++u)
                        t[idx(i, s)][idx(j, u)] = idx(s ? i - j : i + j, s ^ u);
        std::vector<int> gens = n == 1 ? std::vector<int>{idx(0, 1)}
                                       : std::vector<int>{idx(1, 0), idx(0, 1)};
        return from_table(std::move(t), {}, gens);
    }

    /// Dicyclic group Dic_n of order 4n:
    /// a of order 2n, b^2 = a^n, b a b^-1 = a^-1. Dic_2 is Q8.
    static FiniteGroup dicyclic(int n) {
        if (n < 1) throw error("dicyclic: parameter must be positive");
        int m = 2 * n, order = 4 * n;
        auto idx = [m](int i, int s) { return ((i % m) + m) % m + m * s; };
        std::vector<std::vector<int>> t(order, std::vector<int>(order));
        for (int i = 0; i < m; ++i)
            for (int s = 0; s < 2; ++s)
                for (int j = 0; j < m; ++j)
                    for (int u = 0; u < 2; ++u) {
                        int k, w;
                        if (s == 0) { k = i + j; w = u; }
                        else if (u == 0) { k = i - j; w = 1; }
                        else { k = i - j + n; w = 0; }
                        t[idx(i, s)][idx(j, u)] = idx(k, w);
                    }
        return from_table(std::move(t), {}, {idx(1, 0), idx(0, 1)});
    }

    static FiniteGroup quaternion8() { return dicyclic(2); }

    /// C4 x| C4: a^4 = b^4 = 1, b^-1 a b = a^-1 (order 16).
    static FiniteGroup c4_semidirect_c4() {
        auto idx = [](int i, int j) { return ((i % 4) + 4) % 4 + 4 * (((j % 4) + 4) % 4); };
        std::vector<std::vector<int>> t(16, std::vector<int>(16));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    for (int l = 0; l < 4; ++l) {
                        // (a^i b^j)(a^k b^l) = a^(i + (-1)^j k) b^(j+l)
                        int ii = (j % 2 == 0) ? i + k : i - k;
                        t[idx(i, j)][idx(k, l)] = idx(ii, j + l);
                    }
        return from_table(std::move(t), {}, {idx(1, 0), idx(0, 1)});
    }

    /// Closure of permutation generators under composition. Permutations are
    /// 1-based images on {1..k}. The bound caps the closure size.
    static FiniteGroup from_permutations(const std::vector<std::vector<int>>& gens,
                                         int bound = kDefaultBound) {
        int k = gens.empty() ? 1 : static_cast<int>(gens[0].size());
        for (const auto& p : gens) {
            if (static_cast<int>(p.size()) != k)
                throw parse_error("permutation group: generators act on different sets");
            std::vector<bool> seen(k, false);
            for (int v : p) {
                if (v < 1 || v > k || seen[v - 1])
                    throw parse_error("permutation group: generator is not a bijection");
                seen[v - 1] = true;
            }
        }
        std::vector<int> id(k);
        for (int i = 0; i < k; ++i) id[i] = i + 1;
        std::map<std::vector<int>, int> index;
        std::vector<std::vector<int>> elems;
        elems.push_back(id);
        index[id] = 0;
        for (std::size_t head = 0; head < elems.size(); ++head) {
            for (const auto& g : gens) {
                std::vector<int> prod(k);
                for (int i = 0; i < k; ++i) prod[i] = g[elems[head][i] - 1];
                if (index.emplace(prod, static_cast<int>(elems.size())).second) {
                    elems.push_back(prod);
                    if (static_cast<int>(elems.size()) > bound)
                        throw unsupported_error(
                            "permutation group: closure exceeds bound " + std::to_string(bound) +
                            " (partial count " + std::to_string(elems.size()) + ")");
                }
            }
        }
        // canonical element order: identity first, then lexicographic
        std::vector<std::vector<int>> sorted(elems.begin() + 1, elems.end());
        std::sort(sorted.begin(), sorted.end());
        sorted.insert(sorted.begin(), id);
        std::map<std::vector<int>, int> pos;
        for (int i = 0; i < static_cast<int>(sorted.size()); ++i) pos[sorted[i]] = i;
        int n = static_cast<int>(sorted.size());
        std::vector<std::vector<int>> t(n, std::vector<int>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                std::vector<int> prod(k);
                for (int q = 0; q < k; ++q) prod[q] = sorted[i][sorted[j][q] - 1];
                t[i][j] = pos.at(prod);
            }
        std::vector<int> gen_idx;
        for (const auto& g : gens) gen_idx.push_back(pos.at(g));
        if (gen_idx.empty()) gen_idx.push_back(0);
        return from_table(std::move(t), {}, gen_idx);
    }

    int order() const { return n_; }
    int identity() const { return identity_; }
    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
    int inv(int a) const { return inverse_[a]; }
    int element_order(int a) const { return element_order_[a]; }
    const std::vector<int>& generators() const { return generators_; }
    const std::vector<std::string>& element_names() const { return names_; }

    int pow(int a, long e) const {
        long m = element_order_[a];
        e %= m;
        if (e < 0) e += m;
        int r = identity_;
        int base = a;
        while (e > 0) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    int conjugate(int g, int by) const { return mul(mul(inv(by), g), by); }
    int commutator(int a, int b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }

    bool is_abelian() const {
        for (int a = 0; a < n_; ++a)
            for (int b = a + 1; b < n_; ++b)
                if (mul(a, b) != mul(b, a)) return false;
        return true;
    }

    long exponent() const {
        long e = 1;
        for (int a = 0; a < n_; ++a) e = lcm(e, element_order_[a]);
        return e;
    }

    std::vector<int> center() const {
        std::vector<int> z;
        for (int a = 0; a < n_; ++a) {
            bool central = true;
            for (int b = 0; b < n_ && central; ++b)
                if (mul(a, b) != mul(b, a)) central = false;
            if (central) z.push_back(a);
        }
        return z;
    }

    /// Subgroup generated by a set of elements, as a sorted element list.
    std::vector<int> closure_from(const std::vector<int>& gens) const {
        std::set<int> seen{identity_};
        std::vector<int> queue{identity_};
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (int g : gens) {
                int x = mul(queue[head], g);
                if (seen.insert(x).second) queue.push_back(x);
            }
        return std::vector<int>(seen.begin(), seen.end());
    }

    std::vector<int> commutator_subgroup() const {
        std::vector<int> comms;
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b) comms.push_back(commutator(a, b));
        std::sort(comms.begin(), comms.end());
        comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
        return closure_from(comms);
    }

    /// Multiset of element orders, as order -> count. A cheap isomorphism
    /// fingerprint component.
    std::map<long, long> order_statistics() const {
        std::map<long, long> st;
        for (int a = 0; a < n_; ++a) ++st[element_order_[a]];
        return st;
    }

    /// Invariant factors d_1 | d_2 | ... of an abelian group, recovered from
    /// the element-order statistics (which determine a finite abelian group).
    std::vector<long> abelian_invariants() const {
        if (!is_abelian()) throw error("abelian_invariants: group is not abelian");
        // per prime: recover the partition from counts of elements of order
        // dividing p^k
        std::map<long, std::vector<long>> partitions; // p -> exponents ascending
        for (auto [p, e] : factorize(n_)) {
            // c_k = #/{x : x^{p^k} = 1}
            std::vector<long> c;
            c.push_back(1);
            for (int k = 1;; ++k) {
                long pk = 1;
                for (int t = 0; t < k; ++t) pk *= p;
                long cnt = 0;
                for (int a = 0; a < n_; ++a)
                    if (pk % element_order_[a] == 0) ++cnt;
                c.push_back(cnt);
                if (cnt == c[k - 1] && k > 1) break;
                if (pk > n_) break;
            }
            // multiplicity of parts >= k in the partition is log_p(c_k/c_{k-1})
            std::vector<long> parts;
            for (std::size_t k = 1; k < c.size(); ++k) {
                long ratio = c[k] / c[k - 1];
                long m = 0;
                while (ratio > 1) { ratio /= p; ++m; }
                // m = number of parts with exponent >= k
                parts.push_back(m);
            }
            std::vector<long> exps;
            for (std::size_t k = 0; k < parts.size(); ++k) {
                long next = (k + 1 < parts.size()) ? parts[k + 1] : 0;
                for (long t = 0; t < parts[k] - next; ++t) exps.push_back(static_cast<long>(k + 1));
            }
            std::sort(exps.begin(), exps.end());
            partitions[p] = exps;
        }
        // combine largest-with-largest into invariant factors
        std::size_t len = 0;
        for (auto& [p, ex] : partitions) len = std::max(len, ex.size());
        std::vector<long> inv(len, 1);
        for (auto& [p, ex] : partitions)
            for (std::size_t i = 0; i < ex.size(); ++i) {
                long pe = 1;
                for (long t = 0; t < ex[ex.size() - 1 - i]; ++t) pe *= p;
                inv[len - 1 - i] *= pe;
            }
        return inv; // ascending, each dividing the next
    }

    bool is_normal_subgroup(const std::vector<int>& subgroup) const {
        std::set<int> s(subgroup.begin(), subgroup.end());
        for (int h : subgroup)
            for (int g = 0; g < n_; ++g)
                if (!s.count(conjugate(h, g))) return false;
        return true;
    }

    /// All subgroups of order <= max_order, as sorted element lists.
    /// Breadth-first closure over one-generator extensions.
    std::vector<std::vector<int>> subgroups_upto(int max_order) const {
        if (n_ > kDefaultBound)
            throw unsupported_error("subgroups_upto: group order exceeds bound " +
                                    std::to_string(kDefaultBound));
        std::set<std::vector<int>> seen;
        std::vector<std::vector<int>> queue;
        std::vector<int> triv{identity_};
        seen.insert(triv);
        queue.push_back(triv);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            auto h = queue[head];
            for (int g = 0; g < n_; ++g) {
                if (std::binary_search(h.begin(), h.end(), g)) continue;
                auto gens = h;
                gens.push_back(g);
                auto ext = closure_from(gens);
                if (static_cast<int>(ext.size()) > max_order) continue;
                if (seen.insert(ext).second) queue.push_back(ext);
            }
        }
        std::vector<std::vector<int>> out(seen.begin(), seen.end());
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });
        return out;
    }

    /// Quotient by a normal subgroup; also returns the projection map.
    std::pair<FiniteGroup, std::vector<int>> quotient(const std::vector<int>& normal) const {
        if (!is_normal_subgroup(normal)) throw error("quotient: subgroup is not normal");
        std::set<int> nset(normal.begin(), normal.end());
        std::vector<int> coset_of(n_, -1);
        std::vector<int> reps;
        for (int g = 0; g < n_; ++g) {
            if (coset_of[g] >= 0) continue;
            int c = static_cast<int>(reps.size());
            reps.push_back(g);
            for (int h : normal) coset_of[mul(g, h)] = c;
        }
        int q = static_cast<int>(reps.size());
        std::vector<std::vector<int>> t(q, std::vector<int>(q));
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) t[i][j] = coset_of[mul(reps[i], reps[j])];
        return {from_table(std::move(t)), coset_of};
    }

    friend FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
        int n = a.n_ * b.n_;
        auto idx = [&](int x, int y) { return x * b.n_ + y; };
        std::vector<std::vector<int>> t(n, std::vector<int>(n));
        for (int x1 = 0; x1 < a.n_; ++x1)
            for (int y1 = 0; y1 < b.n_; ++y1)
                for (int x2 = 0; x2 < a.n_; ++x2)
                    for (int y2 = 0; y2 < b.n_; ++y2)
                        t[idx(x1, y1)][idx(x2, y2)] = idx(a.mul(x1, x2), b.mul(y1, y2));
        std::vector<int> gens;
        for (int g : a.generators_) gens.push_back(idx(g, b.identity_));
        for (int g : b.generators_) gens.push_back(idx(a.identity_, g));
        return from_table(std::move(t), {}, gens);
    }

    bool operator==(const FiniteGroup& o) const {
        return n_ == o.n_ && table_ == o.table_;
    }

private:
    void validate() {
        // identity
        identity_ = -1;
        for (int e = 0; e < n_; ++e) {
            bool ok = true;
            for (int a = 0; a < n_ && ok; ++a)
                if (mul(e, a) != a || mul(a, e) != a) ok = false;
            if (ok) { identity_ = e; break; }
        }
        if (identity_ < 0) throw parse_error("group axiom failed: no identity element");
        // inverses
        inverse_.assign(n_, -1);
        for (int a = 0; a < n_; ++a) {
            for (int b = 0; b < n_; ++b)
                if (mul(a, b) == identity_ && mul(b, a) == identity_) { inverse_[a] = b; break; }
            if (inverse_[a] < 0)
                throw parse_error("group axiom failed: element " + std::to_string(a) +
                                  " has no inverse");
        }
        // associativity
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b)
                for (int c = 0; c < n_; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                        throw parse_error("group axiom failed: associativity at (" +
                                          std::to_string(a) + "," + std::to_string(b) + "," +
                                          std::to_string(c) + ")");
        // element orders
        element_order_.assign(n_, 0);
        for (int a = 0; a < n_; ++a) {
            int x = a, k = 1;
            while (x != identity_) { x = mul(x, a); ++k; }
            element_order_[a] = k;
        }
    }

    std::vector<int> compute_generators() const {
        std::vector<int> gens;
        std::vector<int> have{identity_};
        std::set<int> haveset(have.begin(), have.end());
        while (static_cast<int>(haveset.size()) < n_) {
            // greedy: element generating the largest extension
            int best = -1;
            std::size_t best_size = haveset.size();
            std::vector<int> best_closure;
            for (int g = 0; g < n_; ++g) {
                if (haveset.count(g)) continue;
                auto cand = gens;
                cand.push_back(g);
                auto cl = closure_from(cand);
                if (cl.size() > best_size) {
                    best = g;
                    best_size = cl.size();
                    best_closure = cl;
                }
            }
            gens.push_back(best);
            haveset = std::set<int>(best_closure.begin(), best_closure.end());
        }
        if (gens.empty()) gens.push_back(identity_);
        return gens;
    }

    int n_ = 0;
    std::vector<unsigned short> table_;
    int identity_ = 0;
    std::vector<int> inverse_;
    std::vector<int> element_order_;
    std::vector<int> generators_;
    std::vector<std::string> names_;
};

/// Conjugacy class data: partition, representatives, sizes, and the power
/// map on classes. Plain data; the power map takes the group explicitly so
/// the struct stays freely copyable.
struct ConjugacyData {
    std::vector<std::vector<int>> classes; // each sorted; identity class first
    std::vector<int> class_of;             // element -> class index
    std::vector<int> representatives;      // smallest element per class
    std::vector<long> sizes;

    int count() const { return static_cast<int>(classes.size()); }

    /// Class containing the m-th powers of class c.
    int power_class(const FiniteGroup& g, int c, long m) const {
        return class_of[g.pow(representatives[c], m)];
    }
    int inverse_class(const FiniteGroup& g, int c) const {
        return class_of[g.inv(representatives[c])];
    }
};

inline ConjugacyData conjugacy_classes(const FiniteGroup& g) {
    ConjugacyData d;
    int n = g.order();
    d.class_of.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        if (d.class_of[a] >= 0) continue;
        int c = static_cast<int>(d.classes.size());
        std::set<int> orbit;
        for (int b = 0; b < n; ++b) orbit.insert(g.conjugate(a, b));
        std::vector<int> cls(orbit.begin(), orbit.end());
        for (int x : cls) d.class_of[x] = c;
        d.representatives.push_back(cls.front());
        d.sizes.push_back(static_cast<long>(cls.size()));
        d.classes.push_back(std::move(cls));
    }
    // identity class is first automatically: element 0 need not be identity,
    // so rotate the identity class to the front for a fixed convention.
    int idc = d.class_of[g.identity()];
    if (idc != 0) {
        std::swap(d.classes[0], d.classes[idc]);
        std::swap(d.representatives[0], d.representatives[idc]);
        std::swap(d.sizes[0], d.sizes[idc]);
        for (int a = 0; a < n; ++a) {
            if (d.class_of[a] == 0) d.class_of[a] = idc;
            else if (d.class_of[a] == idc) d.class_of[a] = 0;
        }
    }
    return d;
}

/// Number of cyclic subgroups of order d: (elements of order d) / phi(d).
inline long cyclic_subgroup_count(const FiniteGroup& g, long d) {
    if (d < 1) throw error("cyclic_subgroup_count: order must be positive");
    long cnt = 0;
    for (int a = 0; a < g.order(); ++a)
        if (g.element_order(a) == d) ++cnt;
    return cnt / euler_phi(d);
}

/// True when every cyclic subgroup is normal (for 2-groups this pins the
/// Hamiltonian ones).
inline bool all_cyclic_subgroups_normal(const FiniteGroup& g) {
    for (int a = 0; a < g.order(); ++a) {
        std::set<int> cyc;
        int x = a;
        for (int k = 0; k < g.element_order(a); ++k) { cyc.insert(x); x = g.mul(x, a); }
        for (int b = 0; b < g.order(); ++b)
            if (!cyc.count(g.conjugate(a, b))) return false;
    }
    return true;
}

} // namespace ringends
