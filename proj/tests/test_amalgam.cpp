#include <catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "ringends/amalgam.hpp"
#include "ringends/ends.hpp"

using namespace ringends;

namespace {

// C2 * C3 (free product, trivial edge group)
FiniteSplitting c2_star_c3() {
    return make_amalgam(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::trivial(),
                        {0}, {0});
}

FiniteSplitting c2_star_c2() {
    return make_amalgam(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2), FiniteGroup::trivial(),
                        {0}, {0});
}

// evaluates an amalgam word in the GL2(Z) matrix model
Mat2 evaluate(const Gl2zModel& m, const AmalgamWords& words, const AmalgamWord& w) {
    std::map<int, Mat2> mats_a, mats_b;
    std::map<Mat2, int> ia, ib;
    FiniteGroup a = detail::group_from_matrices(m.factor_a, &ia);
    FiniteGroup b = detail::group_from_matrices(m.factor_b, &ib);
    for (const auto& [mat, i] : ia) mats_a[i] = mat;
    for (const auto& [mat, i] : ib) mats_b[i] = mat;
    Mat2 acc;
    for (const auto& [f, elt] : words.to_letters(w)) acc = acc * (f == 0 ? mats_a[elt] : mats_b[elt]);
    return acc;
}

} // namespace

TEST_CASE("splitting construction and validation") {
    CHECK_THROWS_AS(make_amalgam(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2),
                                 FiniteGroup::cyclic(2), {0, 1}, {0, 1}),
                    error); // edge not proper
    CHECK_THROWS_AS(make_amalgam(FiniteGroup::cyclic(4), FiniteGroup::cyclic(4),
                                 FiniteGroup::cyclic(2), {0, 1}, {0, 2}),
                    error); // 1 -> 1 is not a homomorphism C2 -> C4
    auto ok = make_amalgam(FiniteGroup::cyclic(4), FiniteGroup::cyclic(4), FiniteGroup::cyclic(2),
                           {0, 2}, {0, 2});
    CHECK(ok.C.order() == 2);
}

TEST_CASE("splitting ends") {
    CHECK(splitting_ends(c2_star_c2()) == SplittingEnds::Two); // infinite dihedral
    CHECK(splitting_ends(c2_star_c3()) == SplittingEnds::Infinity);
    // HNN with full associated subgroup: Z (or A-by-Z), two ends
    auto hnn_z = make_hnn(FiniteGroup::trivial(), FiniteGroup::trivial(), {0}, {0});
    CHECK(splitting_ends(hnn_z) == SplittingEnds::Two);
    auto hnn_big = make_hnn(FiniteGroup::cyclic(4), FiniteGroup::cyclic(2), {0, 2}, {0, 2});
    CHECK(splitting_ends(hnn_big) == SplittingEnds::Infinity);
}

TEST_CASE("euler characteristics") {
    CHECK(euler_char(c2_star_c3()) == Rational(-1, 6));
    auto hnn_z = make_hnn(FiniteGroup::trivial(), FiniteGroup::trivial(), {0}, {0});
    CHECK(euler_char(hnn_z) == Rational(0));
    CHECK(euler_char(gl2z_model().splitting) == Rational(-1, 24));
}

TEST_CASE("complement ranks") {
    CHECK(complement_rank(Rational(-1, 24), 1, 24) == 2);
    CHECK(complement_rank(Rational(-1, 24), 12, 2) == 2);
    CHECK(complement_rank(Rational(-1, 6), 1, 6) == 2);
    CHECK_THROWS_AS(complement_rank(Rational(-1, 24), 1, 23), unsupported_error);
    CHECK_THROWS_AS(complement_rank(Rational(-1, 24), 5, 2), unsupported_error);
    // for the GL2(Z) model, index * quotient_order = 0 (mod 24) is necessary
    for (long idx = 1; idx <= 48; ++idx)
        for (long q : {1L, 2L, 3L, 4L, 6L, 8L, 12L, 24L}) {
            bool divisible = (idx * q) % 24 == 0;
            if (divisible) CHECK(complement_rank(Rational(-1, 24), q, idx) == 1 + idx * q / 24);
            else CHECK_THROWS_AS(complement_rank(Rational(-1, 24), q, idx), unsupported_error);
        }
}

TEST_CASE("gl2z model witnesses") {
    auto m = gl2z_model();
    CHECK(m.factor_a.size() == 8);
    CHECK(m.factor_b.size() == 12);
    CHECK(m.edge.size() == 4);
    CHECK(detail::mat_order(m.rot4) == 4);
    CHECK(detail::mat_order(m.rot6) == 6);
    CHECK(detail::mat_order(m.flip) == 2);
    for (const auto& x : m.factor_a) CHECK((x.det() == 1 || x.det() == -1));
    CHECK(splitting_ends(m.splitting) == SplittingEnds::Infinity);
    // factor groups have dihedral order statistics
    CHECK(m.splitting.A.order_statistics() == FiniteGroup::dihedral(8).order_statistics());
    CHECK(m.splitting.B.order_statistics() == FiniteGroup::dihedral(12).order_statistics());
    // thickened by U = C2: orders scale, chi scales
    auto mu = gl2z_model(FiniteGroup::cyclic(2));
    CHECK(mu.splitting.A.order() == 16);
    CHECK(mu.splitting.C.order() == 8);
    CHECK(euler_char(mu.splitting) == Rational(-1, 48));
}

TEST_CASE("normal forms") {
    auto m = gl2z_model();
    AmalgamWords words(m.splitting);
    // words inside the edge subgroup have length 0
    for (int c = 0; c < m.splitting.C.order(); ++c) {
        auto w = words.normal_form({{0, m.splitting.embed_a[c]}});
        CHECK(w.length() == 0);
        CHECK(w.head == c);
        auto w2 = words.normal_form({{1, m.splitting.embed_b[c]}});
        CHECK(w2.head == c);
    }
    // a in A \ C, b in B \ C: length 2
    int a_out = -1, b_out = -1;
    for (int x = 0; x < m.splitting.A.order(); ++x)
        if (words.from_factor(0, x).length() == 1) { a_out = x; break; }
    for (int x = 0; x < m.splitting.B.order(); ++x)
        if (words.from_factor(1, x).length() == 1) { b_out = x; break; }
    REQUIRE(a_out >= 0);
    REQUIRE(b_out >= 0);
    auto ab = words.normal_form({{0, a_out}, {1, b_out}});
    CHECK(ab.length() == 2);
    CHECK(ab.syllables[0].first == 0);
    CHECK(ab.syllables[1].first == 1);
    // multiplication agrees with concatenation
    auto w1 = words.from_factor(0, a_out);
    auto w2 = words.from_factor(1, b_out);
    CHECK(words.mul(w1, w2) == ab);
    CHECK(words.mul(ab, words.inverse(ab)) == words.identity());
}

TEST_CASE("normal form uniqueness against the matrix oracle") {
    auto m = gl2z_model();
    AmalgamWords words(m.splitting);
    // exhaustive words over a small letter set: every pair of words has
    // equal normal forms exactly when the matrix products agree
    std::vector<std::pair<int, int>> letters;
    for (int x : {1, 3, 5}) letters.emplace_back(0, x % m.splitting.A.order());
    for (int x : {1, 4, 7}) letters.emplace_back(1, x % m.splitting.B.order());
    std::mt19937 rng(99);
    std::vector<std::vector<std::pair<int, int>>> wordlist;
    for (int len = 0; len <= 3; ++len)
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<std::pair<int, int>> w;
            for (int i = 0; i < len; ++i) w.push_back(letters[rng() % letters.size()]);
            wordlist.push_back(w);
        }
    std::vector<AmalgamWord> nfs;
    std::vector<Mat2> mats;
    for (const auto& w : wordlist) {
        auto nf = words.normal_form(w);
        // the normal form re-read as letters evaluates to the same matrix
        CHECK(evaluate(m, words, nf) == evaluate(m, words, words.normal_form(words.to_letters(nf))));
        nfs.push_back(nf);
        mats.push_back(evaluate(m, words, nf));
    }
    for (std::size_t i = 0; i < wordlist.size(); ++i) {
        // the original word evaluates like its normal form
        Mat2 direct;
        std::map<Mat2, int> ia, ib;
        FiniteGroup fa = detail::group_from_matrices(m.factor_a, &ia);
        FiniteGroup fb = detail::group_from_matrices(m.factor_b, &ib);
        std::map<int, Mat2> mats_a, mats_b;
        for (const auto& [mat, idx] : ia) mats_a[idx] = mat;
        for (const auto& [mat, idx] : ib) mats_b[idx] = mat;
        for (auto [f, elt] : wordlist[i]) direct = direct * (f == 0 ? mats_a[elt] : mats_b[elt]);
        CHECK(direct == mats[i]);
        for (std::size_t j = i + 1; j < wordlist.size(); ++j)
            CHECK((nfs[i] == nfs[j]) == (mats[i] == mats[j]));
    }
}

TEST_CASE("normal form invariance under elementary rewriting") {
    // in C2 * C3, inserting cancelling pairs or merging adjacent letters
    // never changes the normal form
    auto s = c2_star_c3();
    AmalgamWords words(s);
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::pair<int, int>> w;
        int len = static_cast<int>(rng() % 6);
        for (int i = 0; i < len; ++i) {
            int f = static_cast<int>(rng() % 2);
            int e = static_cast<int>(rng() % s.factor(f).order());
            w.emplace_back(f, e);
        }
        auto nf = words.normal_form(w);
        // insert a cancelling pair at a random position
        int f = static_cast<int>(rng() % 2);
        int e = static_cast<int>(rng() % s.factor(f).order());
        auto w2 = w;
        auto pos = w2.begin() + static_cast<long>(rng() % (w2.size() + 1));
        pos = w2.insert(pos, {f, s.factor(f).inv(e)});
        w2.insert(pos, {f, e});
        CHECK(words.normal_form(w2) == nf);
        // merge two adjacent same-factor letters
        auto w3 = w;
        w3.emplace_back(0, 1);
        w3.emplace_back(0, 1);
        auto w4 = w;
        w4.emplace_back(0, s.factor(0).mul(1, 1));
        CHECK(words.normal_form(w3) == words.normal_form(w4));
    }
}

TEST_CASE("conjugating finite subgroups into factors") {
    auto m = gl2z_model();
    AmalgamWords words(m.splitting);
    // generators already inside A: identity conjugator
    std::vector<AmalgamWord> in_a{words.from_factor(0, 1), words.from_factor(0, 2)};
    auto r = conjugate_into_factor(words, in_a);
    REQUIRE(r.status == ConjugationResult::Status::Found);
    CHECK(r.conjugator == words.identity());
    // a conjugate t^-1 C t of the edge subgroup goes back into a factor
    int t_rep = -1;
    for (int x = 0; x < m.splitting.B.order(); ++x)
        if (words.from_factor(1, x).length() == 1) { t_rep = x; break; }
    REQUIRE(t_rep >= 0);
    auto t = words.from_factor(1, t_rep);
    std::vector<AmalgamWord> conj_edge;
    for (int c = 0; c < m.splitting.C.order(); ++c) {
        AmalgamWord w;
        w.head = c;
        conj_edge.push_back(words.conjugate(w, t));
    }
    auto r2 = conjugate_into_factor(words, conj_edge);
    CHECK(r2.status == ConjugationResult::Status::Found);
    // a conjugated C4 lands in the D8 factor (the only factor with order-4
    // elements)
    int c4gen = -1;
    for (int x = 0; x < m.splitting.A.order(); ++x)
        if (m.splitting.A.element_order(x) == 4) { c4gen = x; break; }
    REQUIRE(c4gen >= 0);
    auto w4 = words.from_factor(0, c4gen);
    auto conj_c4 = words.conjugate(w4, t);
    auto r3 = conjugate_into_factor(words, {conj_c4});
    REQUIRE(r3.status == ConjugationResult::Status::Found);
    CHECK(r3.factor == 0);
    // verify the certificate: conjugating by the found word lands in A
    auto moved = words.conjugate(conj_c4, r3.conjugator);
    auto loc = words.in_factor(moved);
    REQUIRE(loc.has_value());
    CHECK((loc->first == 0 || loc->first == -1));
    // an infinite subgroup: a * b has infinite order
    int b_out = -1;
    for (int x = 0; x < m.splitting.B.order(); ++x)
        if (words.from_factor(1, x).length() == 1 &&
            m.splitting.B.element_order(x) == 6) { b_out = x; break; }
    REQUIRE(b_out >= 0);
    auto ab = words.mul(w4, words.from_factor(1, b_out));
    auto r4 = conjugate_into_factor(words, {ab});
    CHECK(r4.status == ConjugationResult::Status::NotFinite);
    // budget exhaustion is reported distinctly
    auto r5 = conjugate_into_factor(words, {conj_c4}, 1);
    CHECK(r5.status == ConjugationResult::Status::BudgetExhausted);
}

TEST_CASE("syllable length never increases during reduction") {
    auto s = c2_star_c3();
    AmalgamWords words(s);
    std::mt19937 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<std::pair<int, int>> w;
        int len = static_cast<int>(rng() % 7);
        for (int i = 0; i < len; ++i) {
            int f = static_cast<int>(rng() % 2);
            w.emplace_back(f, static_cast<int>(rng() % s.factor(f).order()));
        }
        CHECK(words.normal_form(w).length() <= w.size());
    }
}

TEST_CASE("projection orders") {
    auto d8 = FiniteGroup::dihedral(8);
    auto dec = decompose(d8);
    for (const auto& c : dec.components) {
        auto fp = projection_order(d8, c.idempotent);
        if (c.kind == ComponentKind::SplitMatrix2OverQ) {
            CHECK(fp.order == 8); // faithful
            CHECK(fp.class_count == 5);
        }
        if (c.reduced_degree == 1 && c.center.is_rationals()) CHECK(8 % fp.order == 0);
    }
    // the trivial orbit projects G to order 1, the faithful one to order 2
    auto triv = decompose(FiniteGroup::cyclic(2));
    std::multiset<long> proj_orders;
    for (const auto& c : triv.components)
        proj_orders.insert(projection_order(FiniteGroup::cyclic(2), c.idempotent).order);
    CHECK(proj_orders == std::multiset<long>{1, 2});
    // Dic3's M2(Q) component has image D6
    auto dic3 = FiniteGroup::dicyclic(3);
    for (const auto& c : decompose(dic3).components) {
        if (c.kind != ComponentKind::SplitMatrix2OverQ) continue;
        auto fp = projection_order(dic3, c.idempotent);
        CHECK(fp.order == 6);
        CHECK(fp.class_count == 3);
        CHECK(fp.abelianization == std::vector<long>{2});
    }
}

TEST_CASE("projection order agrees with the character-kernel route") {
    for (auto g : {FiniteGroup::dihedral(8), FiniteGroup::dicyclic(3), FiniteGroup::dihedral(12),
                   FiniteGroup::quaternion8()}) {
        auto dec = decompose(g);
        for (const auto& c : dec.components) {
            auto fp = projection_order(g, c.idempotent);
            // kernel of the orbit: elements with chi(g) = chi(1) for all
            // characters in the orbit
            std::vector<int> ker;
            for (int x = 0; x < g.order(); ++x) {
                bool in = true;
                for (int m : c.orbit.members)
                    if (dec.table.chars[m][dec.table.classes.class_of[x]] !=
                        CycNumber(Rational(dec.table.degrees[m])))
                        in = false;
                if (in) ker.push_back(x);
            }
            CHECK(fp.order == g.order() / static_cast<long>(ker.size()));
        }
    }
}

TEST_CASE("cohn-livingstone divisibility for unit fixtures") {
    // |He| divides |Ge| for finite subgroups H of V(ZG); fixtures: subgroups
    // of G and a bicyclic-unit conjugate
    auto d6 = FiniteGroup::dihedral(6);
    auto dec = decompose(d6);
    for (const auto& c : dec.components) {
        auto ge = projection_order(d6, c.idempotent);
        for (int x = 0; x < d6.order(); ++x) {
            auto he = projection_subgroup_order(d6, c.idempotent, {ga_basis(x)});
            CHECK(ge.order % he.order == 0);
        }
    }
    // bicyclic unit u = 1 + (1 - a) b ahat over D6 (a of order 3, b of order 2)
    int a = -1, b = -1;
    for (int x = 0; x < d6.order(); ++x) {
        if (d6.element_order(x) == 3 && a < 0) a = x;
        if (d6.element_order(x) == 2 && b < 0) b = x;
    }
    REQUIRE(a >= 0);
    REQUIRE(b >= 0);
    GroupAlgebraElement ahat; // 1 + a + a^2
    for (int k = 0, x = d6.identity(); k < 3; ++k, x = d6.mul(x, a)) ahat.add(x, Rational(1));
    GroupAlgebraElement one = ga_one(d6);
    auto u = ga_add(one, ga_mul(d6, ga_sub(one, ga_basis(a)), ga_mul(d6, ga_basis(b), ahat)));
    auto u_inv = ga_sub(one, ga_mul(d6, ga_sub(one, ga_basis(a)), ga_mul(d6, ga_basis(b), ahat)));
    CHECK(ga_mul(d6, u, u_inv) == one);
    for (const auto& c : dec.components) {
        auto ge = projection_order(d6, c.idempotent);
        // H = u^-1 <a> u, a finite subgroup of V(ZD6) with integer coefficients
        auto gen = ga_mul(d6, ga_mul(d6, u_inv, ga_basis(a)), u);
        auto he = projection_subgroup_order(d6, c.idempotent, {gen});
        CHECK(ge.order % he.order == 0);
    }
}

TEST_CASE("factor subgroups conjugate back into factors") {
    auto m = gl2z_model();
    AmalgamWords words(m.splitting);
    int t_rep = -1;
    for (int x = 0; x < m.splitting.B.order(); ++x)
        if (words.from_factor(1, x).length() == 1) { t_rep = x; break; }
    REQUIRE(t_rep >= 0);
    auto t = words.from_factor(1, t_rep);
    // every subgroup of the D8 factor, conjugated by t, is found again
    for (const auto& sub : m.splitting.A.subgroups_upto(8)) {
        std::vector<AmalgamWord> gens;
        for (int x : sub) gens.push_back(words.conjugate(words.from_factor(0, x), t));
        auto r = conjugate_into_factor(words, gens, 100000);
        CHECK(r.status == ConjugationResult::Status::Found);
    }
}
