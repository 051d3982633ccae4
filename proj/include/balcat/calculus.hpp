#pragma once

#include <optional>
#include <string>
#include <vector>

#include "balcat/category.hpp"
#include "balcat/constructions.hpp"
#include "balcat/factorization.hpp"

namespace balcat {

// ---------------------------------------------------------------------------
// Yoneda lifting

/// The unique map u: D -> A over X with u(top) = a, where `structure`: D -> X
/// has `top` terminal in D and m: A -> X is a discrete fibration with
/// m(a) = structure(top). Throws InvariantError when the hypotheses fail.
Functor yoneda_extension(const Functor& structure, ObjId top, const Functor& m, ObjId a);

/// Dual form: `bottom` initial in D, n a discrete opfibration.
Functor coyoneda_extension(const Functor& structure, ObjId bottom, const Functor& n, ObjId a);

/// Every slice X/x and coslice x\X of one category, computed once.
struct SliceCache {
    CategoryPtr base;
    std::vector<Slice> slices;
    std::vector<Slice> coslices;
};

SliceCache slice_cache(const CategoryPtr& x);

// ---------------------------------------------------------------------------
// Internal hom-sets

/// The cylinder (x,y) ⇉ [x,y] -> (x,y) where [x,y] is the pullback of the
/// coslice and slice projections and (x,y) = π0[x,y].
struct HomInterval {
    ObjId x = kNone;
    ObjId y = kNone;
    PullbackResult pullback;       // apex [x,y]; proj_left into x\X, proj_right into X/y
    FinSetQuotient components;     // c_{x,y}
    std::vector<ObjId> initial;    // i_{x,y}: element -> object of [x,y]
    std::vector<ObjId> final;      // e_{x,y}
    std::vector<ObjId> left_arrow;   // element -> object of X/y lying over x
    std::vector<ObjId> right_arrow;  // element -> object of x\X lying over y

    const CategoryPtr& apex() const { return pullback.apex; }
    int size() const { return components.size(); }
    /// Element whose left (right) arrow is the given slice (coslice) object.
    int element_of_left(ObjId slice_object) const;
    int element_of_right(ObjId coslice_object) const;

    Functor initial_inclusion() const;  // discrete (x,y) -> [x,y]
    Functor final_inclusion() const;
    Functor reflection() const;  // [x,y] -> discrete (x,y)
};

/// Builds [x,y] and checks the cylinder laws: i initial, e final, c∘i = c∘e = id,
/// and the two arrow correspondences are bijections.
HomInterval hom_interval(const SliceCache& cache, ObjId x, ObjId y);
HomInterval hom_interval(const CategoryPtr& X, ObjId x, ObjId y);

/// The component [α] of [x,y] with its initial and final points.
struct ArrowInterval {
    Subcategory component;
    ObjId initial = kNone;
    ObjId final = kNone;
};

ArrowInterval arrow_interval(const HomInterval& hom, int element);

// ---------------------------------------------------------------------------
// Enriched composition

struct EnrichedStructure {
    SliceCache cache;
    std::vector<HomInterval> homs;  // row-major over (x, y)
    std::vector<std::vector<int>> mu;  // (x,y,z) row-major; entry a*|(y,z)| + b
    std::vector<int> unit;

    int num_objects() const { return cache.base->num_objects(); }
    const HomInterval& hom(ObjId x, ObjId y) const { return homs[static_cast<std::size_t>(x) * num_objects() + y]; }
    int compose(ObjId x, ObjId y, ObjId z, int a, int b) const;
};

/// μ_{x,y,z}(α, β) is the class of the pullback pairing of the right arrow of
/// α and the left arrow of β; units are the classes of (id_x, id_x). Unit laws
/// are checked; associativity is not assumed.
EnrichedStructure enriched_structure(const CategoryPtr& X);

/// Number of (α, β, γ) triples violating μ(μ(α,β),γ) = μ(α,μ(β,γ)), and how
/// many triples were examined.
struct AssociativityReport {
    std::uint64_t triples = 0;
    std::uint64_t violations = 0;
    std::string first_violation;
};
AssociativityReport mu_associativity(const EnrichedStructure& es);

// ---------------------------------------------------------------------------
// Arrow maps and underlying categories

/// The slice map X/x -> Y/fx (or coslice map x\X -> fx\Y) obtained by
/// factorizing f∘↓x and identifying the result with the canonical slice.
Functor arrow_map(const Functor& f, const Slice& source, const Slice& target);

/// Points with arrows x -> y the objects of X/y lying over x, composed by
/// Kleisli extension.
struct Underlying {
    SliceCache cache;
    CategoryPtr category;
    std::vector<std::vector<MorId>> arrow_at;  // arrow_at[y][object of X/y]
    std::vector<ObjId> slice_object;           // arrow -> object of X/(target)

    MorId arrow(ObjId target, ObjId object_of_slice) const { return arrow_at[target][object_of_slice]; }
};

Underlying underlying_category(const CategoryPtr& X);
/// The right underlying category, whose arrows x -> y are the objects of
/// y\X lying over x. Computed as the left one of X^op.
Underlying right_underlying_category(const CategoryPtr& X);

/// f̄: X̄ -> Ȳ acting on arrows through the arrow maps of f.
Functor underlying_functor(const Functor& f, const Underlying& ux, const Underlying& uy);
Functor right_underlying_functor(const Functor& f, const Underlying& ux_right, const Underlying& uy_right);

/// The isomorphism X̄^op -> X̄' assembled from the hom-set correspondences of
/// the enriched structure. Throws InvariantError if the assembled map is not a
/// bijective functor.
Functor duality_isomorphism(const EnrichedStructure& es, const Underlying& left, const Underlying& right);

/// μ agrees with composition in X̄ and, flipped, with composition in X̄'.
Verdict check_mu_agreement(const EnrichedStructure& es, const Underlying& left, const Underlying& right);

/// f_{x,y}: (x,y) -> (fx,fy), the components of the induced map on intervals.
std::vector<int> hom_action(const Functor& f, const EnrichedStructure& ex, const EnrichedStructure& ey, ObjId x,
                            ObjId y);

// ---------------------------------------------------------------------------
// Cones

/// A map over X from p to the slice X/x.
struct Cone {
    Functor p;
    ObjId apex = kNone;
    Functor leg;  // into cache.slices[apex].category()
};

Verdict is_cone(const Cone& c, const SliceCache& cache);
/// Exhaustive universal property: every cone p -> y factors through the leg
/// by exactly one map of slices over X.
Verdict is_colimiting(const Cone& c, const SliceCache& cache);
bool is_absolute(const Cone& c);
/// All cones with domain p and apex y.
std::vector<Cone> cones(const Functor& p, ObjId y, const SliceCache& cache);
/// f∘λ as a cone fp -> fx through the arrow map of f.
Cone image_cone(const Functor& f, const Cone& c, const SliceCache& source, const SliceCache& target);

// ---------------------------------------------------------------------------
// Adjunctible, dense and fully faithful maps

/// The pullback f/y of f along ↓y.
PullbackResult comma_over(const Functor& f, const SliceCache& target, ObjId y);

/// A final point of f/y, when one exists (least index).
std::optional<ObjId> universal_arrow(const Functor& f, const PullbackResult& fy);
Verdict is_adjunctible_at(const Functor& f, const SliceCache& target, ObjId y);
Verdict is_adjunctible(const Functor& f, const SliceCache& target);

struct RightAdjoint {
    Functor f_bar;                 // X̄ -> Ȳ
    Functor g_bar;                 // Ȳ -> X̄
    std::vector<MorId> counit;     // ε_y ∈ Ȳ(f g y, y)
    std::vector<MorId> unit;       // η_x ∈ X̄(x, g f x)
};

/// Assembles ḡ from the chosen final points. Throws std::invalid_argument
/// naming the first y where f is not adjunctible.
RightAdjoint right_adjoint_underlying(const Functor& f, const Underlying& ux, const Underlying& uy);

/// Hom bijection Ȳ(f̄x, y) ≅ X̄(x, ḡy), its naturality in both variables and the
/// triangle identities, all by enumeration.
Verdict check_adjunction(const Functor& f, const Underlying& ux, const Underlying& uy, const RightAdjoint& adj);

Verdict preserves_colimits_check(const Functor& f, const Cone& colimiting, const SliceCache& source,
                                 const SliceCache& target);

/// For every y, f/y -> Y/y is final.
Verdict is_dense(const Functor& f, const SliceCache& target);
/// f/y -> Y/y is a colimiting cone.
Verdict is_adequate_at(const Functor& f, const SliceCache& target, ObjId y);
/// The induced X/x -> f/fx is an isomorphism.
Verdict is_fully_faithful_at(const Functor& f, const SliceCache& source, const SliceCache& target, ObjId x);

/// α//f: the pullback of the arrow interval [α] ⊂ [y1,y2] along f.
PullbackResult alpha_pullback(const Functor& f, const HomInterval& hom, int element, const SliceCache& target);
/// Every α//f is connected.
Verdict all_alpha_pullbacks_connected(const Functor& f, const EnrichedStructure& target);

// ---------------------------------------------------------------------------
// Tensor, modules and complements

/// π0 of the product of p and q over their common codomain.
FinSetQuotient tensor(const Functor& p, const Functor& q);

struct ModuleAction {
    Presheaf presheaf;
    Elements elements;
    std::vector<PullbackResult> intervals;          // [xm] per x
    std::vector<FinSetQuotient> components;         // (xm) per x
    std::vector<std::vector<ObjId>> initial;        // i_{x,m}: class -> object of [xm]
    std::vector<std::vector<int>> class_of_fiber;   // fiber element -> class of (xm)
    std::vector<std::vector<int>> fiber_of_class;
    std::vector<std::vector<int>> act;              // (x,y) row-major; entry α*|fiber(y)| + a -> fiber(x)

    int apply(ObjId x, ObjId y, int alpha, int a) const;
};

/// The enriched action (x,y) × (ym) -> (xm). Checks agreement with the
/// presheaf action transported by Yoneda lifting.
ModuleAction module_action(const Presheaf& m, const EnrichedStructure& es);

/// (x,ξ): (xm) -> (xn) for a map ξ over X between the categories of elements,
/// as fiber-index tables. Checks compatibility with both actions.
std::vector<std::vector<int>> module_morphism(const Functor& xi, const ModuleAction& m, const ModuleAction& n,
                                              const EnrichedStructure& es);

/// ¬m(S): fiber(x) = functions fiber_m(x) -> S acting by precomposition.
/// Elements of S are 0..s-1; a function is named `[v0,v1,...]`.
Copresheaf complement(const Presheaf& m, int s);

/// |Hom_{/X}(q, ¬m(S))| = |S|^{|⊗(q,m)|}, with the transposition map checked
/// to be a well-defined bijection and natural along the reflection q -> ↓q.
Verdict check_complement_adjunction(const Presheaf& m, int s, const Functor& q);

// ---------------------------------------------------------------------------
// Codiscrete and groupoidal objects, homotopy

Verdict is_codiscrete(const CategoryPtr& X);
Verdict is_groupoidal(const CategoryPtr& X);
/// x and y are homotopic iff (x,y) is nonempty.
bool homotopic(const EnrichedStructure& es, ObjId x, ObjId y);

}  // namespace balcat
