#pragma once

#include <array>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ringends/errors.hpp"
#include "ringends/group.hpp"
#include "ringends/group_algebra.hpp"
#include "ringends/rational.hpp"
#include "ringends/wedderburn.hpp"

namespace ringends {

/// One-edge splitting over a finite group: an amalgamated product
/// A *_C B (with C embedded into both factors) or an HNN extension of A
/// with associated subgroup C and a twisting embedding C -> A.
struct FiniteSplitting {
    enum class Type { Amalgam, HNN };
    Type type = Type::Amalgam;
    FiniteGroup A, B; // B is ignored for HNN
    FiniteGroup C;
    std::vector<int> embed_a; // C -> A
    std::vector<int> embed_b; // Amalgam: C -> B; HNN: the twist C -> A

    const FiniteGroup& factor(int f) const { return f == 0 ? A : B; }
    const std::vector<int>& embedding(int f) const { return f == 0 ? embed_a : embed_b; }
};

namespace detail {

inline void check_embedding(const FiniteGroup& c, const FiniteGroup& target,
                            const std::vector<int>& map, const char* what) {
    if (static_cast<int>(map.size()) != c.order())
        throw error(std::string(what) + ": embedding has wrong domain size");
    std::set<int> image;
    for (int x : map) {
        if (x < 0 || x >= target.order())
            throw error(std::string(what) + ": embedding image out of range");
        image.insert(x);
    }
    if (static_cast<int>(image.size()) != c.order())
        throw error(std::string(what) + ": embedding is not injective");
    for (int x = 0; x < c.order(); ++x)
        for (int y = 0; y < c.order(); ++y)
            if (map[c.mul(x, y)] != target.mul(map[x], map[y]))
                throw error(std::string(what) + ": embedding is not a homomorphism");
}

} // namespace detail

inline FiniteSplitting make_amalgam(FiniteGroup a, FiniteGroup b, FiniteGroup c,
                                    std::vector<int> embed_a, std::vector<int> embed_b) {
    FiniteSplitting s;
    s.type = FiniteSplitting::Type::Amalgam;
    s.A = std::move(a);
    s.B = std::move(b);
    s.C = std::move(c);
    s.embed_a = std::move(embed_a);
    s.embed_b = std::move(embed_b);
    detail::check_embedding(s.C, s.A, s.embed_a, "amalgam");
    detail::check_embedding(s.C, s.B, s.embed_b, "amalgam");
    if (s.C.order() == s.A.order() || s.C.order() == s.B.order())
        throw error("amalgam: edge group must be proper in both factors");
    return s;
}

inline FiniteSplitting make_hnn(FiniteGroup a, FiniteGroup c, std::vector<int> inclusion,
                                std::vector<int> twist) {
    FiniteSplitting s;
    s.type = FiniteSplitting::Type::HNN;
    s.A = std::move(a);
    s.C = std::move(c);
    s.embed_a = std::move(inclusion);
    s.embed_b = std::move(twist);
    detail::check_embedding(s.C, s.A, s.embed_a, "hnn");
    detail::check_embedding(s.C, s.A, s.embed_b, "hnn");
    return s;
}

enum class SplittingEnds { Two, Infinity };

/// Number of ends of the splitting group: an amalgam has two ends exactly
/// when both indices are 2; an HNN extension exactly when the associated
/// subgroup is the whole base on both sides. Splittings over finite groups
/// are infinite, so 0 and 1 never occur.
inline SplittingEnds splitting_ends(const FiniteSplitting& s) {
    if (s.type == FiniteSplitting::Type::Amalgam) {
        bool two = s.A.order() == 2 * s.C.order() && s.B.order() == 2 * s.C.order();
        return two ? SplittingEnds::Two : SplittingEnds::Infinity;
    }
    return s.C.order() == s.A.order() ? SplittingEnds::Two : SplittingEnds::Infinity;
}

/// Euler characteristic: 1/|A| + 1/|B| - 1/|C| for amalgams,
/// 1/|A| - 1/|C| for HNN extensions.
inline Rational euler_char(const FiniteSplitting& s) {
    Rational chi = Rational(1, s.A.order()) - Rational(1, s.C.order());
    if (s.type == FiniteSplitting::Type::Amalgam) chi += Rational(1, s.B.order());
    return chi;
}

/// Free rank m of a normal complement: a finite-index subgroup F_m x| Q of
/// the splitting group satisfies chi-multiplicativity
/// (1 - m)/|Q| = index * chi, so m = 1 - index * chi * |Q|. A non-integral
/// or non-positive m certifies that no such subgroup exists.
inline long complement_rank(const Rational& chi, long quotient_order, long index) {
    if (quotient_order < 1 || index < 1)
        throw error("complement_rank: index and quotient order must be positive");
    Rational m = Rational(1) - Rational(index) * chi * Rational(quotient_order);
    if (!m.is_integer() || !m.is_positive())
        throw unsupported_error("complement_rank: inconsistent (index, quotient) pair: m = " +
                                m.str() + " is not a positive integer");
    return m.as_long();
}

/// Word in the factors of an amalgam, in coset-transversal normal form
/// c * t1 * t2 * ... * tk: c in the edge group, the ti alternating
/// right-coset representatives outside the edge group.
struct AmalgamWord {
    int head = 0;                              // element index in C
    std::vector<std::pair<int, int>> syllables; // (factor, transversal rep)

    std::size_t length() const { return syllables.size(); }
    bool operator==(const AmalgamWord& o) const {
        return head == o.head && syllables == o.syllables;
    }
    bool operator<(const AmalgamWord& o) const {
        if (head != o.head) return head < o.head;
        return syllables < o.syllables;
    }
};

/// Normal-form machine for one amalgam: fixed right transversals (smallest
/// element index per coset), letter-by-letter reduction, multiplication and
/// inversion of normal forms.
class AmalgamWords {
public:
    explicit AmalgamWords(const FiniteSplitting& s) : s_(&s) {
        if (s.type != FiniteSplitting::Type::Amalgam)
            throw error("AmalgamWords: normal forms are defined for amalgams");
        for (int f = 0; f < 2; ++f) {
            const FiniteGroup& g = s.factor(f);
            const auto& emb = s.embedding(f);
            preimage_[f].assign(g.order(), -1);
            for (int c = 0; c < s.C.order(); ++c) preimage_[f][emb[c]] = c;
            rep_of_[f].assign(g.order(), -1);
            c_of_[f].assign(g.order(), -1);
            for (int a = 0; a < g.order(); ++a) {
                if (rep_of_[f][a] >= 0) continue;
                // right coset C a: representative = smallest element index
                int rep = -1;
                std::vector<int> members;
                for (int c = 0; c < s.C.order(); ++c) {
                    int x = g.mul(emb[c], a);
                    members.push_back(x);
                    if (rep < 0 || x < rep) rep = x;
                }
                for (int x : members) {
                    rep_of_[f][x] = rep;
                    // x = emb(c) * rep  =>  c = preimage(x * rep^-1)
                    int cimg = g.mul(x, g.inv(rep));
                    c_of_[f][x] = preimage_[f][cimg];
                    if (c_of_[f][x] < 0)
                        throw internal_error("AmalgamWords: coset decomposition failed");
                }
            }
        }
    }

    const FiniteSplitting& splitting() const { return *s_; }

    AmalgamWord identity() const {
        AmalgamWord w;
        w.head = s_->C.identity();
        return w;
    }

    /// Normal form of a word given as letters (factor, element index).
    AmalgamWord normal_form(const std::vector<std::pair<int, int>>& letters) const {
        AmalgamWord w = identity();
        for (auto it = letters.rbegin(); it != letters.rend(); ++it) left_mul(w, it->first, it->second);
        return w;
    }

    /// w1 * w2.
    AmalgamWord mul(const AmalgamWord& w1, const AmalgamWord& w2) const {
        auto letters = to_letters(w1);
        auto l2 = to_letters(w2);
        letters.insert(letters.end(), l2.begin(), l2.end());
        return normal_form(letters);
    }

    AmalgamWord inverse(const AmalgamWord& w) const {
        std::vector<std::pair<int, int>> letters = to_letters(w);
        std::vector<std::pair<int, int>> inv;
        for (auto it = letters.rbegin(); it != letters.rend(); ++it)
            inv.emplace_back(it->first, s_->factor(it->first).inv(it->second));
        return normal_form(inv);
    }

    AmalgamWord conjugate(const AmalgamWord& w, const AmalgamWord& by) const {
        return mul(mul(inverse(by), w), by);
    }

    /// The word as letters (edge element first, then the syllables).
    std::vector<std::pair<int, int>> to_letters(const AmalgamWord& w) const {
        std::vector<std::pair<int, int>> out;
        if (w.head != s_->C.identity()) out.emplace_back(0, s_->embed_a[w.head]);
        for (auto& syl : w.syllables) out.push_back(syl);
        return out;
    }

    /// If the word lies in a factor, returns (factor, element there); edge
    /// elements report factor -1.
    std::optional<std::pair<int, int>> in_factor(const AmalgamWord& w) const {
        if (w.syllables.empty()) return std::make_pair(-1, w.head);
        if (w.syllables.size() > 1) return std::nullopt;
        int f = w.syllables[0].first;
        int elt = s_->factor(f).mul(s_->embedding(f)[w.head], w.syllables[0].second);
        return std::make_pair(f, elt);
    }

    /// Word for a single factor element.
    AmalgamWord from_factor(int f, int elt) const { return normal_form({{f, elt}}); }

private:
    void left_mul(AmalgamWord& w, int f, int g) const {
        const FiniteGroup& fac = s_->factor(f);
        const auto& emb = s_->embedding(f);
        int h = fac.mul(g, emb[w.head]); // g * c, an element of the factor f
        if (!w.syllables.empty() && w.syllables.front().first == f) {
            int u = fac.mul(h, w.syllables.front().second);
            w.syllables.erase(w.syllables.begin());
            if (preimage_[f][u] >= 0) {
                w.head = preimage_[f][u];
            } else {
                w.head = c_of_[f][u];
                w.syllables.insert(w.syllables.begin(), {f, rep_of_[f][u]});
            }
        } else {
            if (preimage_[f][h] >= 0) {
                w.head = preimage_[f][h];
            } else {
                w.head = c_of_[f][h];
                w.syllables.insert(w.syllables.begin(), {f, rep_of_[f][h]});
            }
        }
    }

    const FiniteSplitting* s_;
    std::array<std::vector<int>, 2> preimage_; // factor elt -> C index or -1
    std::array<std::vector<int>, 2> rep_of_;   // factor elt -> coset representative
    std::array<std::vector<int>, 2> c_of_;     // factor elt -> C index with x = emb(c) rep
};

/// Outcome of the finite-subgroup conjugation search.
struct ConjugationResult {
    enum class Status { Found, NotFinite, BudgetExhausted };
    Status status = Status::Found;
    AmalgamWord conjugator;
    int factor = 0; // target factor when found
};

/// Searches for a conjugator moving the subgroup generated by `gens` into
/// one of the factors. Finiteness is verified first by bounded closure;
/// the conjugator search walks normal forms in length order and counts
/// conjugation tests against the budget, so exhaustion is reported
/// distinctly from impossibility.
inline ConjugationResult conjugate_into_factor(const AmalgamWords& words,
                                               const std::vector<AmalgamWord>& gens,
                                               long budget = 10000) {
    const FiniteSplitting& s = words.splitting();
    long max_finite = std::max(s.A.order(), s.B.order());
    // closure; a finite subgroup embeds in a factor, so its order is bounded
    std::set<AmalgamWord> closure{words.identity()};
    std::deque<AmalgamWord> queue{words.identity()};
    while (!queue.empty()) {
        AmalgamWord w = queue.front();
        queue.pop_front();
        for (const auto& g : gens) {
            AmalgamWord x = words.mul(w, g);
            if (closure.insert(x).second) {
                if (static_cast<long>(closure.size()) > max_finite)
                    return {ConjugationResult::Status::NotFinite, {}, 0};
                queue.push_back(x);
            }
        }
    }

    auto all_in_factor = [&](const std::vector<AmalgamWord>& ws) -> std::optional<int> {
        bool ok_a = true, ok_b = true;
        for (const auto& w : ws) {
            auto loc = words.in_factor(w);
            if (!loc) return std::nullopt;
            if (loc->first == 0) ok_b = false;
            if (loc->first == 1) ok_a = false;
        }
        if (ok_a) return 0;
        if (ok_b) return 1;
        return std::nullopt;
    };

    // candidate conjugators in normal-form order: all heads, all alternating
    // transversal sequences, by increasing syllable length
    std::vector<std::vector<int>> reps(2);
    for (int f = 0; f < 2; ++f) {
        std::set<int> rs;
        AmalgamWords const& wd = words;
        for (int a = 0; a < s.factor(f).order(); ++a) {
            AmalgamWord w = wd.from_factor(f, a);
            if (w.length() == 1) rs.insert(w.syllables[0].second);
        }
        reps[f] = std::vector<int>(rs.begin(), rs.end());
    }
    long tests = 0;
    std::vector<AmalgamWord> gens_copy = gens;
    std::deque<AmalgamWord> cand;
    for (int c = 0; c < s.C.order(); ++c) {
        AmalgamWord w;
        w.head = c;
        cand.push_back(w);
    }
    std::size_t max_len = 2 * static_cast<std::size_t>(max_finite) + 4;
    while (!cand.empty()) {
        AmalgamWord alpha = cand.front();
        cand.pop_front();
        if (++tests > budget) return {ConjugationResult::Status::BudgetExhausted, {}, 0};
        std::vector<AmalgamWord> conj;
        conj.reserve(gens_copy.size());
        for (const auto& g : gens_copy) conj.push_back(words.conjugate(g, alpha));
        if (auto f = all_in_factor(conj))
            return {ConjugationResult::Status::Found, alpha, *f};
        // extend by one syllable keeping the normal form shape
        if (alpha.length() >= max_len) continue;
        int last_factor = alpha.syllables.empty() ? -1 : alpha.syllables.back().first;
        for (int f = 0; f < 2; ++f) {
            if (f == last_factor) continue;
            for (int t : reps[f]) {
                AmalgamWord next = alpha;
                next.syllables.emplace_back(f, t);
                cand.push_back(next);
            }
        }
    }
    return {ConjugationResult::Status::BudgetExhausted, {}, 0};
}

/// Fingerprint of the image group G e acting on the component Q G e.
struct ProjectionFingerprint {
    long order = 1;
    std::vector<long> abelianization; // invariant factors of (Ge)^ab
    int class_count = 1;
};

/// Order (with fingerprint) of the image of the subgroup generated by
/// algebra units under the projection x -> x e, computed as the closure of
/// exact left-multiplication matrices on a basis of Q G e.
inline ProjectionFingerprint projection_subgroup_order(
    const FiniteGroup& g, const GroupAlgebraElement& e,
    const std::vector<GroupAlgebraElement>& unit_gens) {
    ComponentAlgebra alg = component_algebra(g, e);
    auto mat_of = [&](const GroupAlgebraElement& u) {
        // column j = coordinates of (u e) * basis_j = u * basis_j
        Matrix<Rational> m(alg.dim, alg.dim, Rational(0));
        for (long j = 0; j < alg.dim; ++j) {
            auto col = alg.coords(g, ga_mul(g, u, alg.basis[j]));
            for (long i = 0; i < alg.dim; ++i) m.at(i, j) = col[i];
        }
        return m;
    };
    auto key_of = [&](const Matrix<Rational>& m) {
        std::ostringstream os;
        for (const auto& x : m.a) os << x.str() << ",";
        return os.str();
    };
    Matrix<Rational> id(alg.dim, alg.dim, Rational(0));
    for (long i = 0; i < alg.dim; ++i) id.at(i, i) = Rational(1);
    std::vector<Matrix<Rational>> gens_m;
    for (const auto& u : unit_gens) gens_m.push_back(mat_of(u));

    std::map<std::string, int> index;
    std::vector<Matrix<Rational>> elems{id};
    index[key_of(id)] = 0;
    for (std::size_t head = 0; head < elems.size(); ++head)
        for (const auto& gm : gens_m) {
            auto prod = mat_mul(elems[head], gm);
            auto key = key_of(prod);
            if (index.emplace(key, static_cast<int>(elems.size())).second) {
                elems.push_back(prod);
                if (elems.size() > static_cast<std::size_t>(g.order()) * 2 + 2)
                    throw internal_error("projection: closure exceeded the group order bound");
            }
        }
    int n = static_cast<int>(elems.size());
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) table[i][j] = index.at(key_of(mat_mul(elems[i], elems[j])));
    FiniteGroup image = FiniteGroup::from_table(std::move(table));
    ProjectionFingerprint fp;
    fp.order = image.order();
    auto [ab, proj] = image.quotient(image.commutator_subgroup());
    fp.abelianization = ab.abelian_invariants();
    fp.class_count = conjugacy_classes(image).count();
    return fp;
}

/// |Ge| with fingerprint: the projection of G itself.
inline ProjectionFingerprint projection_order(const FiniteGroup& g, const GroupAlgebraElement& e) {
    std::vector<GroupAlgebraElement> gens;
    for (int x : g.generators()) gens.push_back(ga_basis(x));
    return projection_subgroup_order(g, e, gens);
}

// ---------------------------------------------------------------------------
// the GL2(Z) model: D8 *_(C2 x C2) D12 with exact integer matrix witnesses

/// 2x2 integer matrix, row major.
struct Mat2 {
    std::array<long, 4> m{1, 0, 0, 1};
    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return Mat2{{x.m[0] * y.m[0] + x.m[1] * y.m[2], x.m[0] * y.m[1] + x.m[1] * y.m[3],
                     x.m[2] * y.m[0] + x.m[3] * y.m[2], x.m[2] * y.m[1] + x.m[3] * y.m[3]}};
    }
    bool operator==(const Mat2& o) const { return m == o.m; }
    bool operator<(const Mat2& o) const { return m < o.m; }
    long det() const { return m[0] * m[3] - m[1] * m[2]; }
};

struct Gl2zModel {
    FiniteSplitting splitting;
    Mat2 rot4{{0, -1, 1, 0}};  // order 4, generates the D8 factor with flip
    Mat2 rot6{{0, -1, 1, 1}};  // order 6, generates the D12 factor with flip
    Mat2 flip{{0, 1, 1, 0}};   // order 2
    std::vector<Mat2> factor_a;     // the 8 matrices of the D8 factor
    std::vector<Mat2> factor_b;     // the 12 matrices of the D12 factor
    std::vector<Mat2> edge;         // their intersection, C2 x C2
};

namespace detail {

inline std::vector<Mat2> mat_closure(std::vector<Mat2> gens, std::size_t bound) {
    std::set<Mat2> seen{Mat2{}};
    std::deque<Mat2> queue{Mat2{}};
    while (!queue.empty()) {
        Mat2 x = queue.front();
        queue.pop_front();
        for (const auto& g : gens) {
            Mat2 y = x * g;
            if (seen.insert(y).second) {
                if (seen.size() > bound) throw internal_error("mat_closure: bound exceeded");
                queue.push_back(y);
            }
        }
    }
    return std::vector<Mat2>(seen.begin(), seen.end());
}

inline long mat_order(const Mat2& x, long bound = 64) {
    Mat2 acc = x;
    for (long k = 1; k <= bound; ++k) {
        if (acc == Mat2{}) return k;
        acc = acc * x;
    }
    throw internal_error("mat_order: not of finite order");
}

inline FiniteGroup group_from_matrices(const std::vector<Mat2>& elems,
                                       std::map<Mat2, int>* index_out) {
    std::vector<Mat2> sorted = elems;
    std::sort(sorted.begin(), sorted.end());
    // identity first
    auto it = std::find(sorted.begin(), sorted.end(), Mat2{});
    if (it == sorted.end()) throw internal_error("group_from_matrices: identity missing");
    std::rotate(sorted.begin(), it, it + 1);
    std::map<Mat2, int> index;
    for (int i = 0; i < static_cast<int>(sorted.size()); ++i) index[sorted[i]] = i;
    int n = static_cast<int>(sorted.size());
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto pos = index.find(sorted[i] * sorted[j]);
            if (pos == index.end()) throw internal_error("group_from_matrices: not closed");
            table[i][j] = pos->second;
        }
    if (index_out) *index_out = std::move(index);
    return FiniteGroup::from_table(std::move(table));
}

} // namespace detail

/// The amalgam decomposition of GL2(Z) with exact matrix witnesses,
/// optionally thickened by a direct factor U on both vertex groups and the
/// edge: (D8 x U) *_(C2 x C2 x U) (D12 x U). All witness identities are
/// verified by exact integer arithmetic.
inline Gl2zModel gl2z_model(const FiniteGroup& u = FiniteGroup::trivial()) {
    Gl2zModel m;
    if (detail::mat_order(m.rot4) != 4 || detail::mat_order(m.flip) != 2 ||
        detail::mat_order(m.rot6) != 6)
        throw internal_error("gl2z_model: witness orders are wrong");
    m.factor_a = detail::mat_closure({m.rot4, m.flip}, 16);
    m.factor_b = detail::mat_closure({m.rot6, m.flip}, 24);
    if (m.factor_a.size() != 8 || m.factor_b.size() != 12)
        throw internal_error("gl2z_model: factor closures have wrong order");
    std::set<Mat2> bset(m.factor_b.begin(), m.factor_b.end());
    for (const auto& x : m.factor_a)
        if (bset.count(x)) m.edge.push_back(x);
    if (m.edge.size() != 4) throw internal_error("gl2z_model: edge subgroup has wrong order");

    std::map<Mat2, int> ia, ib, ic;
    FiniteGroup a = detail::group_from_matrices(m.factor_a, &ia);
    FiniteGroup b = detail::group_from_matrices(m.factor_b, &ib);
    FiniteGroup c = detail::group_from_matrices(m.edge, &ic);
    // edge group is C2 x C2: every nontrivial element an involution
    for (const auto& x : m.edge)
        if (!(x == Mat2{}) && detail::mat_order(x) != 2)
            throw internal_error("gl2z_model: edge group is not C2 x C2");
    std::vector<int> emb_a(c.order()), emb_b(c.order());
    for (const auto& [mat, ci] : ic) {
        emb_a[ci] = ia.at(mat);
        emb_b[ci] = ib.at(mat);
    }

    if (u.order() == 1) {
        m.splitting = make_amalgam(a, b, c, emb_a, emb_b);
    } else {
        FiniteGroup au = direct_product(a, u);
        FiniteGroup bu = direct_product(b, u);
        FiniteGroup cu = direct_product(c, u);
        int un = u.order();
        std::vector<int> ea(cu.order()), eb(cu.order());
        for (int ci = 0; ci < c.order(); ++ci)
            for (int ui = 0; ui < un; ++ui) {
                ea[ci * un + ui] = emb_a[ci] * un + ui;
                eb[ci * un + ui] = emb_b[ci] * un + ui;
            }
        m.splitting = make_amalgam(au, bu, cu, ea, eb);
    }
    if (euler_char(m.splitting) != Rational(-1, 24 * u.order()))
        throw internal_error("gl2z_model: Euler characteristic audit failed");
    if (splitting_ends(m.splitting) != SplittingEnds::Infinity)
        throw internal_error("gl2z_model: ends audit failed");
    return m;
}

} // namespace ringends
