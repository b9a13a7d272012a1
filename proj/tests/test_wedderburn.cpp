#include <catch_amalgamated.hpp>

#include <algorithm>
#include <map>

#include "ringends/wedderburn.hpp"

using namespace ringends;

namespace {

// component kind multiset with quaternion parameters folded in
std::multiset<std::string> component_summary(const Decomposition& d) {
    std::multiset<std::string> out;
    for (const auto& c : d.components) out.insert(c.str());
    return out;
}

std::map<std::string, long> as_map(const std::vector<std::pair<FieldDescriptor, long>>& ms) {
    std::map<std::string, long> m;
    for (const auto& [f, mult] : ms)
        m["cond=" + std::to_string(f.field.conductor) + ";deg=" + std::to_string(f.degree())] +=
            mult;
    return m;
}

} // namespace

TEST_CASE("central idempotents of C2") {
    auto g = FiniteGroup::cyclic(2);
    auto t = character_table(g);
    auto orbits = galois_orbits(t);
    REQUIRE(orbits.size() == 2);
    std::multiset<std::string> found;
    for (const auto& o : orbits) found.insert(central_idempotent(t, o).str(g));
    // e_+/- = (1 +/- g)/2
    CHECK(found == std::multiset<std::string>{"(1/2)*g0 + (1/2)*g1", "(1/2)*g0 + (-1/2)*g1"});
}

TEST_CASE("trivial orbit gives the averaging idempotent") {
    auto g = FiniteGroup::dihedral(6);
    auto t = character_table(g);
    for (const auto& o : galois_orbits(t)) {
        bool trivial = true;
        for (int m : o.members)
            for (const auto& v : t.chars[m])
                if (v != CycNumber(1)) trivial = false;
        if (!trivial) continue;
        auto e = central_idempotent(t, o);
        for (int x = 0; x < g.order(); ++x) CHECK(e.at(x) == Rational(1, 6));
    }
}

TEST_CASE("idempotent suite for selected groups") {
    for (auto g : {FiniteGroup::dihedral(6), FiniteGroup::dihedral(8), FiniteGroup::dicyclic(3),
                   FiniteGroup::c4_semidirect_c4(), FiniteGroup::cyclic(12)}) {
        auto t = character_table(g);
        auto orbits = galois_orbits(t);
        std::vector<GroupAlgebraElement> es;
        for (const auto& o : orbits) es.push_back(central_idempotent(t, o));
        GroupAlgebraElement sum;
        for (std::size_t i = 0; i < es.size(); ++i) {
            CHECK(ga_is_central(g, es[i]));
            for (std::size_t j = 0; j < es.size(); ++j) {
                auto prod = ga_mul(g, es[i], es[j]);
                if (i == j) CHECK(prod == es[i]);
                else CHECK(prod.is_zero());
            }
            sum = ga_add(sum, es[i]);
        }
        CHECK(sum == ga_one(g));
    }
}

TEST_CASE("component algebra dimensions") {
    // trivial component: 1-dimensional
    auto d8 = FiniteGroup::dihedral(8);
    auto t = character_table(d8);
    auto orbits = galois_orbits(t);
    for (const auto& o : orbits) {
        auto alg = component_algebra(d8, central_idempotent(t, o));
        CHECK(alg.dim == o.degree * o.degree * o.field.degree());
    }
    // Q8's faithful component is 4-dimensional: 8 - 4 one-dim components
    auto q8 = FiniteGroup::quaternion8();
    auto tq = character_table(q8);
    long found = 0;
    for (const auto& o : galois_orbits(tq)) {
        if (o.degree != 2) continue;
        ++found;
        CHECK(component_algebra(q8, central_idempotent(tq, o)).dim == 4);
    }
    CHECK(found == 1);
}

TEST_CASE("quaternion recognition") {
    auto check_group = [](const FiniteGroup& g, const std::string& expect_places) {
        auto t = character_table(g);
        for (const auto& o : galois_orbits(t)) {
            if (o.degree != 2 || o.field.degree() != 1) continue;
            auto alg = component_algebra(g, central_idempotent(t, o));
            auto q = quaternion_recognize(alg);
            return places_str(q.ramified);
        }
        return std::string("no component");
    };
    CHECK(check_group(FiniteGroup::quaternion8(), "{2,inf}") == "{2,inf}");
    CHECK(check_group(FiniteGroup::dihedral(6), "{}") == "{}");
    // Dic3 has two degree-2 rational orbits: the split one and (-1,-3)
    auto dic3 = FiniteGroup::dicyclic(3);
    auto t = character_table(dic3);
    std::multiset<std::string> sets;
    for (const auto& o : galois_orbits(t)) {
        if (o.degree != 2 || o.field.degree() != 1) continue;
        auto q = quaternion_recognize(component_algebra(dic3, central_idempotent(t, o)));
        sets.insert(places_str(q.ramified));
    }
    CHECK(sets == std::multiset<std::string>{"{}", "{3,inf}"});
}

TEST_CASE("quaternion representative parameters") {
    auto q8 = FiniteGroup::quaternion8();
    auto t = character_table(q8);
    for (const auto& o : galois_orbits(t)) {
        if (o.degree != 2) continue;
        auto q = quaternion_recognize(component_algebra(q8, central_idempotent(t, o)));
        CHECK(q.a == -1);
        CHECK(q.b == -1);
    }
    auto dic3 = FiniteGroup::dicyclic(3);
    auto t3 = character_table(dic3);
    for (const auto& o : galois_orbits(t3)) {
        if (o.degree != 2) continue;
        auto q = quaternion_recognize(component_algebra(dic3, central_idempotent(t3, o)));
        if (!q.ramified.empty()) {
            CHECK(q.a == -1);
            CHECK(q.b == -3);
        }
    }
}

TEST_CASE("the four decomposition tables") {
    CHECK(component_summary(decompose(FiniteGroup::dihedral(6))) ==
          std::multiset<std::string>{"Q", "Q", "M2(Q)"});
    CHECK(component_summary(decompose(FiniteGroup::dihedral(8))) ==
          std::multiset<std::string>{"Q", "Q", "Q", "Q", "M2(Q)"});
    CHECK(component_summary(decompose(FiniteGroup::dicyclic(3))) ==
          std::multiset<std::string>{"Q", "Q", "Q(i)", "(-1,-3 / Q)", "M2(Q)"});
    // dimension audit pins this line: 4*1 + 2*2 + 4 + 4 = 16
    CHECK(component_summary(decompose(FiniteGroup::c4_semidirect_c4())) ==
          std::multiset<std::string>{"Q", "Q", "Q", "Q", "Q(i)", "Q(i)", "(-1,-1 / Q)", "M2(Q)"});
}

TEST_CASE("simple decompositions") {
    CHECK(component_summary(decompose(FiniteGroup::cyclic(2))) ==
          std::multiset<std::string>{"Q", "Q"});
    CHECK(component_summary(decompose(FiniteGroup::cyclic(5))) ==
          std::multiset<std::string>{"Q", "Q(zeta_5)"});
    auto q8c2 = direct_product(FiniteGroup::quaternion8(), FiniteGroup::cyclic(2));
    auto s = component_summary(decompose(q8c2));
    CHECK(std::count(s.begin(), s.end(), "(-1,-1 / Q)") == 2);
    CHECK(std::count(s.begin(), s.end(), "Q") == 8);
}

TEST_CASE("perlis-walker") {
    // C5 over Q: Q + Q(zeta5)
    auto pw5 = perlis_walker(FiniteGroup::cyclic(5));
    auto m5 = as_map(pw5);
    CHECK(m5.size() == 2);
    CHECK(m5["cond=1;deg=1"] == 1);
    CHECK(m5["cond=5;deg=4"] == 1);
    // C2 over Q: Q + Q
    CHECK(as_map(perlis_walker(FiniteGroup::cyclic(2)))["cond=1;deg=1"] == 2);
    // C8 over Q(i): Q(i)^4 + Q(zeta8)^2
    auto pw8 = perlis_walker(FiniteGroup::cyclic(8), imaginary_quadratic_field(1));
    auto m8 = as_map(pw8);
    CHECK(m8["cond=4;deg=2"] == 4);
    CHECK(m8["cond=8;deg=4"] == 2);
    // non-abelian input rejected
    CHECK_THROWS_AS(perlis_walker(FiniteGroup::dihedral(8)), unsupported_error);
}

TEST_CASE("perlis-walker agrees with the character-table route") {
    std::vector<FiniteGroup> abelians{
        FiniteGroup::cyclic(1),  FiniteGroup::cyclic(5),  FiniteGroup::cyclic(8),
        FiniteGroup::cyclic(12), FiniteGroup::cyclic(24),
        direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4)),
        direct_product(FiniteGroup::cyclic(3), FiniteGroup::cyclic(9)),
        direct_product(FiniteGroup::cyclic(2),
                       direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)))};
    std::vector<AbelianField> fields{rationals_field(), imaginary_quadratic_field(1),
                                     cyclotomic_field(8), imaginary_quadratic_field(3)};
    for (const auto& g : abelians)
        for (const auto& F : fields) {
            auto pw = as_map(perlis_walker(g, F));
            auto ct = as_map(field_multiset(decompose(g, F)));
            CHECK(pw == ct);
        }
}

TEST_CASE("recognition consistency: indicator -1 iff ramified at infinity") {
    for (auto g : {FiniteGroup::quaternion8(), FiniteGroup::dihedral(8), FiniteGroup::dicyclic(3),
                   FiniteGroup::dicyclic(5), FiniteGroup::c4_semidirect_c4(),
                   direct_product(FiniteGroup::quaternion8(), FiniteGroup::cyclic(2))}) {
        auto dec = decompose(g);
        for (const auto& c : dec.components) {
            if (c.reduced_degree != 2 || c.center.degree() != 1) continue;
            bool ram_inf = !c.quaternion->ramified.empty() &&
                           c.quaternion->ramified.back() == Place::infinity();
            CHECK((c.orbit.fs == -1) == ram_inf);
        }
    }
}

TEST_CASE("decompose over extension fields keeps exact center data") {
    // Q8 over Q(i): the quaternion component splits; centers contain Q(i)
    auto dec = decompose(FiniteGroup::quaternion8(), imaginary_quadratic_field(1));
    long dim = 0;
    for (const auto& c : dec.components) {
        dim += c.dim_over_field;
        CHECK(c.center.field.conductor % 4 == 0); // every center contains Q(i)
    }
    CHECK(dim == 8);
    // abelian over cyclotomic: C8 over Q(zeta8) splits completely
    auto dec8 = decompose(FiniteGroup::cyclic(8), cyclotomic_field(8));
    CHECK(dec8.components.size() == 8);
    for (const auto& c : dec8.components) CHECK(c.dim_over_field == 1);
}

TEST_CASE("unit ranks of component centers") {
    CHECK(unit_rank(describe_field(rationals_field())) == 0);
    CHECK(unit_rank(describe_field(cyclotomic_field(5))) == 1);
    CHECK(unit_rank(describe_field(cyclotomic_field(8))) == 1);
}

#include "ringends/catalog.hpp"
#include "ringends/ends.hpp"

TEST_CASE("catalog-wide recognition consistency and kind labeling") {
    Catalog cat = load_catalog(RINGENDS_CATALOG_DIR);
    std::map<std::string, std::string> kind_by_ramified;
    for (const auto& e : cat.entries) {
        auto dec = decompose(e.group);
        for (const auto& c : dec.components) {
            if (c.reduced_degree != 2 || c.center.degree() != 1) continue;
            REQUIRE(c.quaternion.has_value());
            // indicator -1 exactly when ramified at infinity
            bool ram_inf = !c.quaternion->ramified.empty() &&
                           c.quaternion->ramified.back() == Place::infinity();
            CHECK((c.orbit.fs == -1) == ram_inf);
            // equal ramified sets always get equal kind labels
            std::string key = places_str(c.quaternion->ramified);
            auto [it, fresh] = kind_by_ramified.emplace(key, kind_name(c.kind));
            if (!fresh) CHECK(it->second == kind_name(c.kind));
        }
    }
    // both division classes and the split class actually occur
    CHECK(kind_by_ramified.count("{}"));
    CHECK(kind_by_ramified.count("{2,inf}"));
    CHECK(kind_by_ramified.count("{3,inf}"));
}

TEST_CASE("Dic5 has a totally definite quaternion over a real quadratic center") {
    auto dec = decompose(FiniteGroup::dicyclic(5));
    std::multiset<std::string> kinds;
    long division_dim = 0;
    for (const auto& c : dec.components) {
        kinds.insert(kind_name(c.kind));
        if (c.kind == ComponentKind::OtherDivision) {
            division_dim = c.dim_over_field;
            CHECK(c.center.degree() == 2);
            CHECK(c.center.field.totally_real());
            CHECK(c.orbit.fs == -1);
            CHECK(unit_rank(c.center) == 1);
        }
        if (c.kind == ComponentKind::OtherMatrix) {
            CHECK(c.center.degree() == 2);
            CHECK(c.orbit.fs == 1);
        }
    }
    CHECK(kinds == std::multiset<std::string>{"Field", "Field", "Field", "OtherDivision",
                                              "OtherMatrix"});
    CHECK(division_dim == 8);
    // consequently Dic5 is one-ended: the division component has a rank-1
    // center, the matrix component is not M2(Q)
    CHECK(classify(FiniteGroup::dicyclic(5)).ends == EndsClass::One);
}
