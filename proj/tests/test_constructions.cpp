#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "balcat/constructions.hpp"
#include "balcat/search.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace balcat;
using namespace fixture;

TEST_CASE("slice of the interval at 1 is the interval") {
    const CategoryPtr x = two();
    const CommaResult s = comma(identity_functor(x), point(x, 1));
    CHECK(s.apex->num_objects() == 2);
    CHECK(isomorphic(s.apex, x));
    std::set<std::string> connecting;
    for (const auto& tag : s.tags) connecting.insert(x->morphism_name(tag.connecting));
    CHECK(connecting == std::set<std::string>{"id:1", "a"});
    CHECK(s.apex->check_axioms().empty());
}

TEST_CASE("coslice of the interval at 0 is the interval") {
    const CategoryPtr x = two();
    const Slice c = coslice(x, 0);
    CHECK(isomorphic(c.category(), x));
    CHECK(c.comma.tags[c.top].connecting == x->identity(0));
    // Brute-force reference: one apex object per arrow out of 0.
    CHECK(c.category()->num_objects() == static_cast<int>(x->out_of(0).size()));
}

TEST_CASE("comma of identities on 1 is terminal") {
    const CommaResult c = comma(identity_functor(one()), identity_functor(one()));
    CHECK(c.apex->num_objects() == 1);
    CHECK(c.apex->num_morphisms() == 1);
}

TEST_CASE("comma rejects mismatched codomains") {
    CHECK_THROWS_AS(comma(identity_functor(two()), identity_functor(one())), std::invalid_argument);
    CHECK_THROWS_AS(pullback(identity_functor(two()), identity_functor(one())), std::invalid_argument);
}

TEST_CASE("comma tags connect the images of the projections") {
    for (const auto& f : functors()) {
        const CommaResult c = comma(f, identity_functor(f.cod));
        const auto& x = *f.cod;
        REQUIRE(c.apex->check_axioms().empty());
        for (ObjId o = 0; o < c.apex->num_objects(); ++o) {
            const CommaTag& t = c.tags[o];
            CHECK(x.src(t.connecting) == f.obj(t.left));
            CHECK(x.tgt(t.connecting) == t.right);
            CHECK(c.proj_left.obj(o) == t.left);
            CHECK(c.proj_right.obj(o) == t.right);
        }
        for (MorId u = 0; u < c.apex->num_morphisms(); ++u) {
            const auto& m = c.apex->morphism(u);
            const MorId lhs = x.compose(c.proj_right.mor(u), c.tags[m.src].connecting);
            const MorId rhs = x.compose(c.tags[m.tgt].connecting, f.mor(c.proj_left.mor(u)));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("pullback along a point is the discrete fiber") {
    const CategoryPtr x = two();
    const Slice s = slice(x, 1);
    for (ObjId at = 0; at < 2; ++at) {
        const PullbackResult pb = pullback(point(x, at), s.projection());
        int fiber = 0;
        for (ObjId o = 0; o < s.category()->num_objects(); ++o) fiber += s.projection().obj(o) == at;
        CHECK(pb.apex->num_objects() == fiber);
        CHECK(pb.apex->num_morphisms() == fiber);
    }
}

TEST_CASE("pullback of identities is the diagonal") {
    for (const auto& inst : instances()) {
        const CategoryPtr& x = inst.category;
        const PullbackResult pb = pullback(identity_functor(x), identity_functor(x));
        CHECK(isomorphic(pb.apex, x));
        CHECK(is_isomorphism(pb.proj_left));
    }
}

TEST_CASE("factorization category of a in the interval") {
    const CategoryPtr x = two();
    const PullbackResult pb = pullback(coslice(x, 0).projection(), slice(x, 1).projection());
    CHECK(pb.apex->num_objects() == 2);
    CHECK(pb.apex->num_morphisms() == 3);
    CHECK(pi0(*pb.apex).size() == 1);
}

TEST_CASE("pullbacks have the universal property") {
    const CategoryPtr x = two();
    const std::vector<Functor> legs{identity_functor(x), point(x, 0), point(x, 1), slice(x, 1).projection(),
                                    coslice(x, 0).projection(), to_terminal(x)};
    const std::vector<CategoryPtr> tests{one(), two(), discrete_category({"l", "r"})};
    for (const auto& f : legs)
        for (const auto& g : legs) {
            if (!same_category(f.cod, g.cod)) continue;
            const PullbackResult pb = pullback(f, g);
            for (const auto& t : tests) {
                std::uint64_t commuting = 0;
                for (const auto& a : all_functors(t, f.dom))
                    for (const auto& b : all_functors(t, g.dom)) {
                        if (!(compose(f, a) == compose(g, b))) continue;
                        ++commuting;
                        const Functor pair = pullback_pairing(pb, a, b);
                        CHECK(compose(pb.proj_left, pair) == a);
                        CHECK(compose(pb.proj_right, pair) == b);
                    }
                CHECK(count_functors(t, pb.apex) == commuting);
            }
        }
}

TEST_CASE("pi0 examples") {
    CHECK(pi0(*two()).size() == 1);
    CHECK(pi0(*coproduct(one(), one())).size() == 2);
    CHECK(pi0(*parallel_pair()).size() == 1);
    CHECK(pi0(*empty_category()).size() == 0);
}

TEST_CASE("pi0 agrees with a union-find over morphisms") {
    for (const auto& inst : instances()) {
        const auto& x = *inst.category;
        oracle::UnionFind uf(x.num_objects());
        for (MorId f = 0; f < x.num_morphisms(); ++f) uf.join(x.src(f), x.tgt(f));
        const FinSetQuotient q = pi0(x);
        CHECK(q.size() == uf.classes());
        CHECK(pi0(*opposite(inst.category)).size() == q.size());
        for (ObjId a = 0; a < x.num_objects(); ++a)
            for (ObjId b = 0; b < x.num_objects(); ++b)
                CHECK((q.class_of[a] == q.class_of[b]) == (uf.find(a) == uf.find(b)));
    }
}

TEST_CASE("the reflection into pi0 is final and initial") {
    for (const auto& inst : instances()) {
        const Functor c = components_map(inst.category, pi0(*inst.category));
        CHECK(oracle::is_final(c));
        CHECK(oracle::is_final(opposite(c)));
    }
}

TEST_CASE("product over an identity returns the other factor") {
    for (const auto& f : functors()) {
        const ProductOver p = product_over(identity_functor(f.cod), f);
        CHECK(isomorphic(p.pullback.apex, f.dom));
        CHECK(is_isomorphism(p.pullback.proj_right));
    }
}

TEST_CASE("product over the interval of slice and coslice projections is the factorization category") {
    const CategoryPtr x = two();
    const ProductOver p = product_over(slice(x, 1).projection(), coslice(x, 0).projection());
    const PullbackResult reference = pullback(coslice(x, 0).projection(), slice(x, 1).projection());
    CHECK(isomorphic(p.pullback.apex, reference.apex));
}

TEST_CASE("product over 1 is the product category") {
    const CategoryPtr a = two(), b = z2();
    const ProductOver p = product_over(to_terminal(a), to_terminal(b));
    CHECK(isomorphic(p.pullback.apex, product(a, b)));
    CHECK(p.pullback.apex->num_morphisms() == 3 * 2);
}

TEST_CASE("opposite examples") {
    const CategoryPtr op = opposite(two());
    const MorId a = mor(op, "a");
    CHECK(op->object_name(op->src(a)) == "1");
    CHECK(op->object_name(op->tgt(a)) == "0");
    CHECK(isomorphic(opposite(z2()), z2()));
}

TEST_CASE("opposite is involutive bit for bit") {
    for (const auto& inst : instances()) CHECK(*opposite(opposite(inst.category)) == *inst.category);
    for (const auto& f : functors()) {
        const Functor back = opposite(opposite(f));
        CHECK(back.obj_map == f.obj_map);
        CHECK(back.mor_map == f.mor_map);
    }
}

TEST_CASE("opposite of a slice is the coslice of the opposite") {
    for (const auto& inst : instances()) {
        const CategoryPtr& x = inst.category;
        const CategoryPtr xop = opposite(x);
        for (ObjId a = 0; a < x->num_objects(); ++a) {
            const CategoryPtr lhs = opposite(slice(x, a).category());
            const CategoryPtr rhs = coslice(xop, a).category();
            CHECK(isomorphic(lhs, rhs));
        }
    }
}

TEST_CASE("isomorphism search respects constraints") {
    const CategoryPtr a = product(two(), z2());
    const CategoryPtr b = product(z2(), two());
    REQUIRE(isomorphic(a, b));
    CHECK_FALSE(isomorphic(two(), discrete_category({"0", "1"})));
    CHECK_FALSE(isomorphic(parallel_pair(), two()));
    // z2 has one non-identity automorphism candidate; forbidding g -> g leaves none.
    FunctorConstraints k;
    k.allow_morphism = [](MorId u, MorId v) { return u == 0 || u != v; };
    CHECK_FALSE(find_isomorphism(z2(), z2(), k).has_value());
}

TEST_CASE("functor counts match brute force on small shapes") {
    // Functors 2 -> X are arrows of X; functors from a discrete category are object tuples.
    for (const auto& inst : instances()) {
        const CategoryPtr& x = inst.category;
        CHECK(count_functors(two(), x) == static_cast<std::uint64_t>(x->num_morphisms()));
        const std::uint64_t n = static_cast<std::uint64_t>(x->num_objects());
        CHECK(count_functors(discrete_category({"l", "r"}), x) == n * n);
    }
}

TEST_CASE("size guard interrupts enumeration") {
    FunctorConstraints k;
    k.node_budget = 3;
    CHECK_THROWS_AS(all_functors(chain(4), chain(4), k), SizeGuardError);
}
