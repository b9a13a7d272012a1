#include <catch_amalgamated.hpp>

#include <map>
#include <numeric>

#include "ringends/group.hpp"
#include "ringends/numtheory.hpp"

using namespace ringends;

TEST_CASE("named families") {
    auto d8 = FiniteGroup::dihedral(8);
    CHECK(d8.order() == 8);
    std::map<long, long> st = d8.order_statistics();
    CHECK(st[4] == 2);
    CHECK(st[2] == 5);
    CHECK(d8.exponent() == 4);
    CHECK(d8.center().size() == 2);

    auto dic3 = FiniteGroup::dicyclic(3);
    CHECK(dic3.order() == 12);
    CHECK(dic3.order_statistics()[2] == 1); // unique involution

    CHECK(FiniteGroup::cyclic(1).order() == 1);
    CHECK(FiniteGroup::quaternion8().exponent() == 4);
    CHECK(FiniteGroup::quaternion8().order_statistics()[2] == 1);

    auto g16 = FiniteGroup::c4_semidirect_c4();
    CHECK(g16.order() == 16);
    CHECK(g16.exponent() == 4);
    CHECK(g16.is_abelian() == false);
    CHECK(g16.commutator_subgroup().size() == 2);

    CHECK_THROWS_AS(FiniteGroup::dihedral(7), error);
    CHECK_THROWS_AS(FiniteGroup::cyclic(0), error);
}

TEST_CASE("permutation closure") {
    // single transposition: C2
    auto c2 = FiniteGroup::from_permutations({{2, 1}});
    CHECK(c2.order() == 2);
    // 3-cycle and transposition generate all of S3
    auto s3 = FiniteGroup::from_permutations({{2, 3, 1}, {2, 1, 3}});
    CHECK(s3.order() == 6);
    CHECK(conjugacy_classes(s3).count() == 3);
    // no generators: trivial group
    CHECK(FiniteGroup::from_permutations({}).order() == 1);
    // bound enforcement reports the partial count
    CHECK_THROWS_WITH(FiniteGroup::from_permutations({{2, 3, 4, 5, 1}}, 3),
                      Catch::Matchers::ContainsSubstring("partial count"));
    CHECK_THROWS_AS(FiniteGroup::from_permutations({{1, 1}}), parse_error);
}

TEST_CASE("conjugacy classes") {
    CHECK(conjugacy_classes(FiniteGroup::cyclic(4)).count() == 4);
    CHECK(conjugacy_classes(FiniteGroup::dihedral(8)).count() == 5);
    CHECK(conjugacy_classes(FiniteGroup::dihedral(6)).count() == 3);

    for (auto g : {FiniteGroup::dihedral(12), FiniteGroup::dicyclic(3),
                   FiniteGroup::quaternion8(), FiniteGroup::c4_semidirect_c4()}) {
        auto cd = conjugacy_classes(g);
        // class equation
        long total = std::accumulate(cd.sizes.begin(), cd.sizes.end(), 0L);
        CHECK(total == g.order());
        long singletons = 0;
        for (long s : cd.sizes)
            if (s == 1) ++singletons;
        CHECK(singletons == static_cast<long>(g.center().size()));
        for (long s : cd.sizes) CHECK(g.order() % s == 0);
        // power map sanity
        for (int c = 0; c < cd.count(); ++c) CHECK(cd.power_class(g, c, 1) == c);
    }
}

TEST_CASE("cyclic subgroup counts") {
    CHECK(cyclic_subgroup_count(FiniteGroup::cyclic(8), 8) == 1);
    CHECK(cyclic_subgroup_count(FiniteGroup::quaternion8(), 4) == 3);
    CHECK(cyclic_subgroup_count(FiniteGroup::dihedral(8), 1) == 1);
    CHECK(cyclic_subgroup_count(FiniteGroup::cyclic(6), 4) == 0);
    // sum over d of a_d * phi(d) = |G|
    for (auto g : {FiniteGroup::cyclic(12), FiniteGroup::dihedral(10),
                   FiniteGroup::dicyclic(2), FiniteGroup::c4_semidirect_c4()}) {
        long total = 0;
        for (long d = 1; d <= g.order(); ++d) total += cyclic_subgroup_count(g, d) * euler_phi(d);
        CHECK(total == g.order());
    }
}

TEST_CASE("subgroup enumeration") {
    CHECK(FiniteGroup::cyclic(5).subgroups_upto(5).size() == 2);
    CHECK(FiniteGroup::cyclic(7).subgroups_upto(7).size() == 2);
    auto v4 = direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
    CHECK(v4.subgroups_upto(4).size() == 5);
    auto d8 = FiniteGroup::dihedral(8);
    auto subs = d8.subgroups_upto(8);
    CHECK(subs.size() == 10);
    // Lagrange
    for (const auto& s : subs) CHECK(d8.order() % s.size() == 0);
    // bounded enumeration
    CHECK(d8.subgroups_upto(2).size() == 6); // trivial + five order-2
}

TEST_CASE("quotients and products") {
    auto q8 = FiniteGroup::quaternion8();
    auto z = q8.center();
    REQUIRE(z.size() == 2);
    auto [quot, proj] = q8.quotient(z);
    CHECK(quot.order() == 4);
    CHECK(quot.is_abelian());
    CHECK(quot.exponent() == 2); // Q8 / Z = C2 x C2

    auto prod = direct_product(FiniteGroup::dihedral(6), FiniteGroup::cyclic(2));
    CHECK(prod.order() == 12);
    CHECK(conjugacy_classes(prod).count() == 6);
}

TEST_CASE("abelian invariants") {
    CHECK(FiniteGroup::cyclic(12).abelian_invariants() == std::vector<long>{12});
    auto g = direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4));
    CHECK(g.abelian_invariants() == std::vector<long>{2, 4});
    auto h = direct_product(FiniteGroup::cyclic(2),
                            direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)));
    CHECK(h.abelian_invariants() == std::vector<long>{2, 2, 2});
    auto k = direct_product(FiniteGroup::cyclic(6), FiniteGroup::cyclic(4));
    CHECK(k.abelian_invariants() == std::vector<long>{2, 12});
}

TEST_CASE("table validation names the failed axiom") {
    // broken associativity / latin square
    CHECK_THROWS_WITH(FiniteGroup::from_table({{0, 1}, {1, 1}}),
                      Catch::Matchers::ContainsSubstring("inverse") ||
                          Catch::Matchers::ContainsSubstring("identity"));
    CHECK_THROWS_WITH(FiniteGroup::from_table({{1, 0}, {0, 2}}),
                      Catch::Matchers::ContainsSubstring("closure"));
    // valid: C2
    CHECK(FiniteGroup::from_table({{0, 1}, {1, 0}}).order() == 2);
}

TEST_CASE("hamiltonian detection building blocks") {
    CHECK(all_cyclic_subgroups_normal(FiniteGroup::quaternion8()));
    CHECK(all_cyclic_subgroups_normal(FiniteGroup::cyclic(12)));
    CHECK_FALSE(all_cyclic_subgroups_normal(FiniteGroup::dihedral(8)));
    auto q8c2 = direct_product(FiniteGroup::quaternion8(), FiniteGroup::cyclic(2));
    CHECK(all_cyclic_subgroups_normal(q8c2));
}

TEST_CASE("named families match their presentations") {
    CHECK(FiniteGroup::dihedral(4).center().size() == 4); // degenerate: C2 x C2
    for (int n = 3; n <= 10; ++n) {
        auto d = FiniteGroup::dihedral(2 * n);
        CHECK(d.exponent() == lcm(n, 2L));
        CHECK(static_cast<int>(d.center().size()) == (n % 2 == 0 ? 2 : 1));
    }
    for (int n = 2; n <= 6; ++n) {
        auto dic = FiniteGroup::dicyclic(n);
        CHECK(dic.order() == 4 * n);
        CHECK(dic.order_statistics()[2] == 1);
        CHECK(dic.center().size() == 2);
    }
    CHECK(FiniteGroup::quaternion8().exponent() == 4);
    CHECK(FiniteGroup::dihedral(8).center().size() == 2);
    CHECK(FiniteGroup::c4_semidirect_c4().center().size() == 4);
}
