#pragma once

// Small fixtures shared by the unit tests.

#include <string>
#include <vector>

#include "balcat/constructions.hpp"
#include "balcat/instances.hpp"
#include "balcat/laws.hpp"
#include "balcat/search.hpp"

namespace fixture {

using namespace balcat;

inline CategoryPtr two() { return interval_category(); }
inline CategoryPtr one() { return terminal_category(); }
inline CategoryPtr z2() { return laws::cyclic_group_category(2); }
inline CategoryPtr chain(int n) { return thin_category(*chain_poset(n)); }

/// • ⇉ • with arrows s, t: a -> b.
inline CategoryPtr parallel_pair() {
    return CategoryBuilder().add_object("a").add_object("b").add_morphism("s", "a", "b").add_morphism("t", "a", "b").build();
}

/// A commuting square p -> q -> s, p -> r -> s with one diagonal d.
inline CategoryPtr commuting_square() {
    return CategoryBuilder()
        .add_object("p").add_object("q").add_object("r").add_object("s")
        .add_morphism("u", "p", "q").add_morphism("v", "p", "r")
        .add_morphism("w", "q", "s").add_morphism("z", "r", "s")
        .add_morphism("d", "p", "s")
        .add_composite("w", "u", "d").add_composite("z", "v", "d")
        .build();
}

inline ObjId obj(const CategoryPtr& x, const std::string& name) { return *x->find_object(name); }
inline MorId mor(const CategoryPtr& x, const std::string& id) { return *x->find_morphism(id); }

inline bool isomorphic(const CategoryPtr& a, const CategoryPtr& b) { return find_isomorphism(a, b).has_value(); }

/// Generated categories from every family, two seeds.
inline std::vector<laws::Instance> instances(int max_objects = 4, int max_morphisms = 12) {
    std::vector<laws::Instance> out;
    for (std::uint64_t seed : {3, 9}) {
        laws::GeneratorConfig c;
        c.seed = seed;
        c.max_objects = max_objects;
        c.max_morphisms = max_morphisms;
        c.count = 12;
        for (auto& i : laws::generate(c)) out.push_back(std::move(i));
    }
    return out;
}

/// Identity, points, the map to 1, and a few sampled functors from small
/// shapes into each generated category.
inline std::vector<Functor> functors(std::uint64_t seed = 5) {
    std::vector<Functor> out;
    auto rng = laws::engine_for(seed, "unit-tests");
    for (const auto& inst : instances()) {
        const CategoryPtr& x = inst.category;
        out.push_back(identity_functor(x));
        out.push_back(to_terminal(x));
        for (ObjId a = 0; a < x->num_objects(); ++a) out.push_back(point(x, a));
        for (const auto& shape : {two(), discrete_category({"l", "r"}), z2(), parallel_pair()})
            for (auto& f : laws::sample_functors(shape, x, rng, 2)) out.push_back(std::move(f));
    }
    return out;
}

}  // namespace fixture
