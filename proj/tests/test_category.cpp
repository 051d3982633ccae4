#include <catch2/catch_amalgamated.hpp>

#include "balcat/category.hpp"
#include "balcat/constructions.hpp"
#include "support.hpp"

using namespace balcat;
using namespace fixture;
using Catch::Matchers::ContainsSubstring;

namespace {

std::string joined(const ValidationError& e) {
    std::string s;
    for (const auto& i : e.issues()) s += i + "\n";
    return s;
}

}  // namespace

TEST_CASE("terminal category has one object and its identity") {
    const CategoryPtr t = CategoryBuilder().add_object("*").build();
    CHECK(t->num_objects() == 1);
    CHECK(t->num_morphisms() == 1);
    CHECK(t->morphism_name(0) == "id:*");
    CHECK(t->check_axioms().empty());
}

TEST_CASE("interval category counts identities among its morphisms") {
    const CategoryPtr x = CategoryBuilder().add_object("0").add_object("1").add_morphism("a", "0", "1").build();
    CHECK(x->num_objects() == 2);
    CHECK(x->num_morphisms() == 3);
    CHECK(*x == *interval_category());
    const MorId a = mor(x, "a");
    CHECK(x->compose(x->identity(1), a) == a);
    CHECK(x->compose(a, x->identity(0)) == a);
    CHECK(x->compose(a, a) == kNone);
}

TEST_CASE("a composite entry for a non-composable pair is rejected by name") {
    CategoryBuilder b;
    b.add_object("0").add_object("1").add_morphism("a", "0", "1").add_composite("a", "a", "a");
    try {
        b.build();
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK_THAT(joined(e), ContainsSubstring("(a, a)"));
    }
}

TEST_CASE("dangling endpoints and missing composites are all reported") {
    CategoryBuilder b;
    b.add_object("x").add_object("y").add_object("z");
    b.add_morphism("f", "x", "y").add_morphism("g", "y", "z").add_morphism("h", "y", "nowhere");
    try {
        b.build();
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        const std::string all = joined(e);
        CHECK_THAT(all, ContainsSubstring("nowhere"));
        CHECK(e.issues().size() >= 2);
    }
}

TEST_CASE("associativity failures are found by the axiom check") {
    // One object, arrows e (identity), g, h with g∘g = h, h∘h = e but g∘h = g, h∘g = e.
    std::vector<Morphism> ms{{"id:*", 0, 0}, {"g", 0, 0}, {"h", 0, 0}};
    // row-major (g, f): compose(g, f)
    std::vector<MorId> table{0, 1, 2,
                             1, 2, 1,
                             2, 0, 0};
    FiniteCategory bad({"*"}, ms, {0}, table);
    const auto issues = bad.check_axioms();
    REQUIRE_FALSE(issues.empty());
    bool mentions_assoc = false;
    for (const auto& s : issues) mentions_assoc |= s.find("assoc") != std::string::npos;
    CHECK(mentions_assoc);
}

TEST_CASE("validate_functor accepts the identity and the collapse to 1") {
    const CategoryPtr x = two();
    const Functor id = validate_functor({{"0", "0"}, {"1", "1"}}, {{"a", "a"}}, x, x);
    CHECK(id == identity_functor(x));
    const Functor bang = validate_functor({{"0", "*"}, {"1", "*"}}, {{"a", "id:*"}}, x, one());
    CHECK(bang == to_terminal(x));
}

TEST_CASE("validate_functor rejects a map that does not preserve sources") {
    const CategoryPtr x = two();
    try {
        validate_functor({{"0", "1"}, {"1", "0"}}, {{"a", "a"}}, x, x);
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK_THAT(joined(e), ContainsSubstring("src"));
    }
}

TEST_CASE("functor_issues reports a broken composite") {
    const CategoryPtr sq = commuting_square();
    const CategoryPtr pp = parallel_pair();
    // Send the square to the parallel pair collapsing q, r to b and p to a but
    // choosing different images for the two routes of d.
    Functor f{sq, pp, std::vector<ObjId>(4), std::vector<MorId>(sq->num_morphisms())};
    f.obj_map[obj(sq, "p")] = obj(pp, "a");
    f.obj_map[obj(sq, "q")] = obj(pp, "b");
    f.obj_map[obj(sq, "r")] = obj(pp, "b");
    f.obj_map[obj(sq, "s")] = obj(pp, "b");
    for (ObjId x = 0; x < 4; ++x) f.mor_map[sq->identity(x)] = pp->identity(f.obj_map[x]);
    f.mor_map[mor(sq, "u")] = mor(pp, "s");
    f.mor_map[mor(sq, "v")] = mor(pp, "t");
    f.mor_map[mor(sq, "w")] = pp->identity(obj(pp, "b"));
    f.mor_map[mor(sq, "z")] = pp->identity(obj(pp, "b"));
    f.mor_map[mor(sq, "d")] = mor(pp, "s");
    const auto issues = functor_issues(f);
    REQUIRE_FALSE(issues.empty());
    CHECK_THAT(issues.front(), ContainsSubstring("z"));
}

TEST_CASE("generated categories satisfy the axioms") {
    for (const auto& inst : instances(5, 30)) {
        INFO(inst.descriptor);
        CHECK(inst.category->check_axioms().empty());
        CHECK(inst.category->num_objects() <= 5);
        CHECK(inst.category->num_morphisms() <= 30);
    }
}

TEST_CASE("hom tables agree with the morphism list") {
    for (const auto& inst : instances()) {
        const auto& x = *inst.category;
        int total = 0;
        for (ObjId a = 0; a < x.num_objects(); ++a)
            for (ObjId b = 0; b < x.num_objects(); ++b) {
                for (MorId f : x.hom(a, b)) {
                    CHECK(x.src(f) == a);
                    CHECK(x.tgt(f) == b);
                    CHECK(x.hom(a, b)[x.hom_position(f)] == f);
                }
                total += static_cast<int>(x.hom(a, b).size());
            }
        CHECK(total == x.num_morphisms());
    }
}
