#pragma once

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "balcat/category.hpp"

namespace balcat {

// ---------------------------------------------------------------------------
// Small categories and functors

/// The terminal category: one object `*` and its identity.
CategoryPtr terminal_category();
CategoryPtr empty_category();
CategoryPtr discrete_category(const std::vector<std::string>& objects);
/// The interval category: objects `0`, `1` and one arrow `a: 0 -> 1`.
CategoryPtr interval_category();

Functor identity_functor(const CategoryPtr& x);
/// The point 1 -> X selecting x.
Functor point(const CategoryPtr& x, ObjId at);
Functor to_terminal(const CategoryPtr& x);
/// g ∘ f. Throws std::invalid_argument when cod(f) and dom(g) differ.
Functor compose(const Functor& g, const Functor& f);

bool is_isomorphism(const Functor& f);
Functor inverse(const Functor& f);

// ---------------------------------------------------------------------------
// Components

/// A surjection from a finite list of items onto a finite set. Elements are
/// named by the lexicographically least item in their class and listed in
/// ascending order of that name.
struct FinSetQuotient {
    std::vector<std::string> elements;
    std::vector<int> class_of;
    std::vector<int> representative;  // item index naming each element

    int size() const noexcept { return static_cast<int>(elements.size()); }
};

/// Connected components (zig-zag classes of objects).
FinSetQuotient pi0(const FiniteCategory& x);

/// The reflection X -> discrete(π0 X).
Functor components_map(const CategoryPtr& x, const FinSetQuotient& q);

// ---------------------------------------------------------------------------
// Comma objects and pullbacks

struct CommaTag {
    ObjId left = kNone;
    ObjId right = kNone;
    MorId connecting = kNone;
};

/// (p, q): objects are triples (a, b, α: p a -> q b); apex objects are named
/// `(a|b|α)`.
struct CommaResult {
    CategoryPtr apex;
    Functor proj_left;
    Functor proj_right;
    std::vector<CommaTag> tags;
};

CommaResult comma(const Functor& p, const Functor& q);

/// Strict pullback of f and g: pairs agreeing in the common codomain.
struct PullbackResult {
    CategoryPtr apex;
    Functor proj_left;
    Functor proj_right;
    std::vector<std::pair<ObjId, ObjId>> pairs;

    /// Apex object over (a, b), or kNone.
    ObjId find(ObjId a, ObjId b) const;
    /// Apex morphism over (u, v), or kNone.
    MorId find_morphism(MorId u, MorId v) const;

    std::unordered_map<std::uint64_t, ObjId> object_lookup;
    std::unordered_map<std::uint64_t, MorId> morphism_lookup;
};

PullbackResult pullback(const Functor& f, const Functor& g);

/// The map into the apex induced by a commuting pair (left ∘ a = right ∘ b
/// over the base). Throws std::invalid_argument when they do not commute.
Functor pullback_pairing(const PullbackResult& pb, const Functor& left, const Functor& right);

/// Product in C/X: the pullback of p and q presented over X together with
/// its structure map.
struct ProductOver {
    PullbackResult pullback;
    Functor structure;
};

ProductOver product_over(const Functor& p, const Functor& q);

/// A slice X/x or coslice x\X together with its projection and the selected
/// final (resp. initial) point.
struct Slice {
    CommaResult comma;
    ObjId base_point = kNone;  // x
    ObjId top = kNone;         // the object (x, id_x)

    const CategoryPtr& category() const { return comma.apex; }
    /// ↓x for slices, ↑x for coslices.
    const Functor& projection() const;
    bool is_coslice = false;
};

Slice slice(const CategoryPtr& x, ObjId at);
Slice coslice(const CategoryPtr& x, ObjId at);

// ---------------------------------------------------------------------------
// Other constructions

CategoryPtr opposite(const FiniteCategory& x);
CategoryPtr opposite(const CategoryPtr& x);
Functor opposite(const Functor& f);
/// F^op with explicitly supplied domain and codomain, which must equal
/// dom(F)^op and cod(F)^op.
Functor opposite(const Functor& f, const CategoryPtr& dom_op, const CategoryPtr& cod_op);

struct Subcategory {
    CategoryPtr category;
    Functor inclusion;
};
Subcategory full_subcategory(const CategoryPtr& x, const std::vector<ObjId>& objects);

CategoryPtr product(const CategoryPtr& a, const CategoryPtr& b);
CategoryPtr coproduct(const CategoryPtr& a, const CategoryPtr& b);

/// Builds a category from object names, morphism records, identities and a
/// composition rule evaluated on every composable pair.
CategoryPtr tabulate_category(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                              std::vector<MorId> identity,
                              const std::function<MorId(MorId, MorId)>& compose);

}  // namespace balcat
