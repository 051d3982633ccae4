#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "balcat/category.hpp"

namespace balcat {

/// Bound on exhaustive enumerations. Read from BALANCED_SIZE_GUARD when set,
/// otherwise 10^6.
std::uint64_t size_guard();

/// Restrictions applied while enumerating functors. Filters are consulted as
/// soon as the relevant image is chosen, so they prune the search.
struct FunctorConstraints {
    std::function<bool(ObjId, ObjId)> allow_object;
    std::function<bool(MorId, MorId)> allow_morphism;
    bool injective = false;
    /// Maximum number of search nodes before SizeGuardError; 0 means size_guard().
    std::uint64_t node_budget = 0;
};

/// Calls `visit` on every functor dom -> cod satisfying the constraints, in a
/// deterministic order. Stops early when `visit` returns false.
void for_each_functor(const CategoryPtr& dom, const CategoryPtr& cod, const FunctorConstraints& constraints,
                      const std::function<bool(const Functor&)>& visit);

std::vector<Functor> all_functors(const CategoryPtr& dom, const CategoryPtr& cod,
                                  const FunctorConstraints& constraints = {});

std::uint64_t count_functors(const CategoryPtr& dom, const CategoryPtr& cod,
                             const FunctorConstraints& constraints = {});

/// An isomorphism a -> b, if one exists. Objects are only matched when their
/// in/out/loop degree profiles agree.
std::optional<Functor> find_isomorphism(const CategoryPtr& a, const CategoryPtr& b,
                                        FunctorConstraints constraints = {});

}  // namespace balcat
