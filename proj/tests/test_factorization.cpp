#include <catch2/catch_amalgamated.hpp>

#include "balcat/factorization.hpp"
#include "balcat/search.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace balcat;
using namespace fixture;
using Catch::Matchers::ContainsSubstring;

namespace {

bool same_maps(const Functor& a, const Functor& b) { return a.obj_map == b.obj_map && a.mor_map == b.mor_map; }

}  // namespace

TEST_CASE("discrete fibration examples") {
    const CategoryPtr x = two();
    CHECK(is_discrete_fibration(slice(x, 1).projection()));
    CHECK(is_discrete_fibration(identity_functor(x)));
    const Verdict v = is_discrete_fibration(point(x, 1));
    CHECK_FALSE(v);
    CHECK_THAT(v.witness, ContainsSubstring("a"));
    CHECK_THAT(v.witness, ContainsSubstring("0 lifts"));
}

TEST_CASE("discrete opfibration examples") {
    const CategoryPtr x = two();
    CHECK(is_discrete_opfibration(coslice(x, 0).projection()));
    CHECK(is_discrete_opfibration(identity_functor(x)));
    CHECK_FALSE(is_discrete_opfibration(point(x, 0)));
}

TEST_CASE("final and initial examples") {
    const CategoryPtr x = two();
    CHECK(is_final(identity_functor(x)));
    CHECK(is_final(point(x, 1)));
    const Verdict v = is_final(point(x, 0));
    CHECK_FALSE(v);
    CHECK_THAT(v.witness, ContainsSubstring("1"));
    CHECK_THAT(v.witness, ContainsSubstring("0 components"));

    CHECK(is_initial(identity_functor(x)));
    CHECK(is_initial(point(x, 0)));
    CHECK_FALSE(is_initial(point(x, 1)));
}

TEST_CASE("a point of a group category is neither final nor a fibration") {
    const CategoryPtr g = z2();
    CHECK_FALSE(is_final(point(g, 0)));
    CHECK_FALSE(is_discrete_fibration(point(g, 0)));
    CHECK(is_final(to_terminal(g)));
}

TEST_CASE("predicates agree with table-level references") {
    for (const auto& f : functors()) {
        CHECK(static_cast<bool>(is_final(f)) == oracle::is_final(f));
        CHECK(static_cast<bool>(is_discrete_fibration(f)) == oracle::is_discrete_fibration(f));
        CHECK(static_cast<bool>(is_initial(f)) == oracle::is_final(opposite(f)));
        CHECK(static_cast<bool>(is_discrete_opfibration(f)) == oracle::is_discrete_fibration(opposite(f)));
        for (ObjId x = 0; x < f.cod->num_objects(); ++x) {
            CHECK(components_under(f, x) == oracle::components_under(f, x));
            CHECK(components_over(f, x) == oracle::components_under(opposite(f), x));
        }
    }
}

TEST_CASE("orthogonality examples") {
    const CategoryPtr x = two();
    CHECK(is_orthogonal(identity_functor(x), point(x, 0)));
    CHECK(is_orthogonal(point(x, 1), slice(x, 1).projection()));
    const Verdict v = is_orthogonal(point(x, 0), point(x, 0));
    CHECK_FALSE(v);
    CHECK_FALSE(v.witness.empty());
}

TEST_CASE("final maps are orthogonal to discrete fibrations") {
    const CategoryPtr x = two();
    std::vector<Functor> finals, fibrations;
    for (const auto& f : functors()) {
        if (f.cod->num_objects() > 4 || f.dom->num_objects() > 4) continue;
        if (oracle::is_final(f)) finals.push_back(f);
        if (oracle::is_discrete_fibration(f)) fibrations.push_back(f);
    }
    REQUIRE(finals.size() > 5);
    REQUIRE(fibrations.size() > 5);
    int checked = 0;
    for (std::size_t i = 0; i < finals.size() && checked < 150; i += 3)
        for (std::size_t j = 0; j < fibrations.size() && checked < 150; j += 5) {
            try {
                CHECK(is_orthogonal(finals[i], fibrations[j]));
                ++checked;
            } catch (const SizeGuardError&) {
            }
        }
    CHECK(checked > 20);
}

TEST_CASE("left factorization examples") {
    for (const auto& inst : instances()) {
        const CategoryPtr& x = inst.category;
        for (ObjId a = 0; a < x->num_objects(); ++a) {
            const FactorizationResult r = factorize_left(point(x, a));
            CHECK(isomorphic(r.mid, slice(x, a).category()));
        }
        const FactorizationResult bang = factorize_left(to_terminal(x));
        CHECK(bang.mid->num_objects() == pi0(*x).size());
        CHECK(bang.mid->num_morphisms() == pi0(*x).size());
        const FactorizationResult id = factorize_left(identity_functor(x));
        CHECK(is_isomorphism(id.e));
        CHECK(is_isomorphism(id.m));
    }
}

TEST_CASE("right factorization examples") {
    for (const auto& inst : instances()) {
        const CategoryPtr& x = inst.category;
        for (ObjId a = 0; a < x->num_objects(); ++a) {
            const FactorizationResult r = factorize_right(point(x, a));
            CHECK(r.system == System::Right);
            CHECK(isomorphic(r.mid, coslice(x, a).category()));
        }
        CHECK(factorize_right(to_terminal(x)).mid->num_objects() == pi0(*x).size());
        const FactorizationResult id = factorize_right(identity_functor(x));
        CHECK(is_isomorphism(id.e));
        CHECK(is_isomorphism(id.m));
    }
}

TEST_CASE("factorizations are sound on generated functors") {
    for (const auto& f : functors()) {
        const FactorizationResult l = factorize_left(f);
        CHECK(same_maps(compose(l.m, l.e), f));
        CHECK(oracle::is_final(l.e));
        CHECK(oracle::is_discrete_fibration(l.m));
        const FactorizationResult r = factorize_right(f);
        CHECK(same_maps(compose(r.m, r.e), f));
        CHECK(oracle::is_final(opposite(r.e)));
        CHECK(oracle::is_discrete_fibration(opposite(r.m)));
    }
}

TEST_CASE("factorizations are unique up to a compatible isomorphism") {
    for (const auto& f : functors()) {
        const FactorizationResult mine = factorize_left(f);
        const oracle::Factorization ref = oracle::factorize_left(f);
        const FactorizationResult theirs{ref.e, ref.mid, ref.m, System::Left};
        const auto iso = factorization_isomorphism(mine, theirs);
        REQUIRE(iso.has_value());
        CHECK(is_isomorphism(*iso));
        CHECK(same_maps(compose(*iso, mine.e), ref.e));
        CHECK(same_maps(compose(ref.m, *iso), mine.m));
    }
}

TEST_CASE("reflection examples") {
    for (const auto& inst : instances()) {
        const CategoryPtr& x = inst.category;
        for (ObjId y = 0; y < x->num_objects(); ++y) {
            const Presheaf rep = reflect_df(point(x, y));
            for (ObjId a = 0; a < x->num_objects(); ++a) CHECK(rep.fiber_size(a) == oracle::hom_count(*x, a, y));
        }
        const Presheaf terminal = reflect_df(identity_functor(x));
        for (ObjId a = 0; a < x->num_objects(); ++a) CHECK(terminal.fiber_size(a) == 1);
    }
    const CategoryPtr x = two();
    const Functor both{discrete_category({"l", "r"}), x, {0, 1}, {x->identity(0), x->identity(1)}};
    const Presheaf p = reflect_df(both);
    CHECK(p.fiber_size(0) == 2);
    CHECK(p.fiber_size(1) == 1);
}

TEST_CASE("reflections have component-count fibers and valid actions") {
    for (const auto& f : functors()) {
        const Presheaf p = reflect_df(f);
        const Copresheaf c = reflect_dof(f);
        CHECK(p.issues().empty());
        CHECK(c.issues().empty());
        for (ObjId x = 0; x < f.cod->num_objects(); ++x) {
            CHECK(p.fiber_size(x) == oracle::components_under(f, x));
            CHECK(c.fiber_size(x) == oracle::components_under(opposite(f), x));
        }
        // The category of elements of the reflection is the middle object.
        CHECK(isomorphic(elements(p).category, factorize_left(f).mid));
    }
}

TEST_CASE("both classes contain isomorphisms and are closed under composition") {
    const auto fs = functors();
    int isos = 0, composites = 0;
    for (const auto& f : fs) {
        if (is_isomorphism(f)) {
            ++isos;
            CHECK(is_final(f));
            CHECK(is_initial(f));
            CHECK(is_discrete_fibration(f));
            CHECK(is_discrete_opfibration(f));
        }
        const FactorizationResult l = factorize_left(f);
        // final then final: e followed by the reflection of the middle object into pi0
        const Functor to_components = factorize_left(to_terminal(l.mid)).e;
        CHECK(oracle::is_final(compose(to_components, l.e)));
        // fibration then fibration: a slice projection of the middle object followed by m
        for (ObjId a = 0; a < l.mid->num_objects(); ++a) {
            CHECK(oracle::is_discrete_fibration(compose(l.m, slice(l.mid, a).projection())));
            ++composites;
        }
    }
    CHECK(isos > 0);
    CHECK(composites > 0);
}

TEST_CASE("presheaf round trip through discrete fibrations") {
    for (const auto& f : functors()) {
        const Presheaf p = reflect_df(f);
        const Elements el = elements(p);
        CHECK(is_discrete_fibration(el.projection));
        const Presheaf back = presheaf_of(el.projection);
        CHECK(back.fiber.size() == p.fiber.size());
        for (ObjId x = 0; x < f.cod->num_objects(); ++x) CHECK(back.fiber_size(x) == p.fiber_size(x));
    }
}
