#pragma once

#include <optional>
#include <string>
#include <vector>

#include "balcat/category.hpp"
#include "balcat/constructions.hpp"

namespace balcat {

/// Outcome of a predicate, with a human-readable reason when it fails.
struct Verdict {
    bool holds = true;
    std::string witness;

    explicit operator bool() const noexcept { return holds; }
    static Verdict yes() { return {}; }
    static Verdict no(std::string why) { return {false, std::move(why)}; }
};

// ---------------------------------------------------------------------------
// Set-valued functors

/// A contravariant functor base -> FinSet. `action[α][s]` is the image of
/// s ∈ fiber(tgt α) in fiber(src α).
struct Presheaf {
    CategoryPtr base;
    std::vector<std::vector<std::string>> fiber;
    std::vector<std::vector<int>> action;

    int fiber_size(ObjId x) const { return static_cast<int>(fiber[x].size()); }
    std::vector<std::string> issues() const;
};

/// A covariant functor base -> FinSet. `action[α][s]` is the image of
/// s ∈ fiber(src α) in fiber(tgt α).
struct Copresheaf {
    CategoryPtr base;
    std::vector<std::vector<std::string>> fiber;
    std::vector<std::vector<int>> action;

    int fiber_size(ObjId x) const { return static_cast<int>(fiber[x].size()); }
    std::vector<std::string> issues() const;
};

/// Category of elements with its projection. Objects are `(x|s)`; the
/// morphism over α landing in (x', s') is `(α|s')` for presheaves and the one
/// leaving (x, s) is `(α|s)` for copresheaves.
struct Elements {
    CategoryPtr category;
    Functor projection;
    std::vector<std::vector<ObjId>> object_at;    // object_at[x][s]
    std::vector<std::vector<MorId>> morphism_at;  // morphism_at[α][s], s in the fiber named above
};

Elements elements(const Presheaf& p);
Elements elements(const Copresheaf& p);

/// The presheaf x ↦ (objects over x) of a discrete fibration, and the
/// copresheaf of a discrete opfibration. Throw std::invalid_argument otherwise.
Presheaf presheaf_of(const Functor& discrete_fibration);
Copresheaf copresheaf_of(const Functor& discrete_opfibration);

Presheaf opposite_to_presheaf(const Copresheaf& c, const CategoryPtr& base_op);
Copresheaf opposite_to_copresheaf(const Presheaf& p, const CategoryPtr& base_op);

// ---------------------------------------------------------------------------
// Class membership

Verdict is_discrete_fibration(const Functor& m);
Verdict is_discrete_opfibration(const Functor& n);
/// π0(x\p) is a singleton for every x.
Verdict is_final(const Functor& p);
/// π0(p/x) is a singleton for every x.
Verdict is_initial(const Functor& p);

/// Number of components of x\p (or p/x when `over` is true), computed
/// without materializing the comma category.
int components_under(const Functor& p, ObjId x);
int components_over(const Functor& p, ObjId x);

/// Every commutative square from e to m has exactly one diagonal filler.
/// Throws SizeGuardError when the product of the four morphism counts exceeds
/// size_guard().
Verdict is_orthogonal(const Functor& e, const Functor& m);

// ---------------------------------------------------------------------------
// Comprehensive factorizations

enum class System { Left, Right };

struct FactorizationResult {
    Functor e;
    CategoryPtr mid;
    Functor m;
    System system = System::Left;
};

/// f = m ∘ e with e final and m a discrete fibration; mid is the category of
/// elements of x ↦ π0(x\f).
FactorizationResult factorize_left(const Functor& f);
/// f = m ∘ e with e initial and m a discrete opfibration, computed by duality.
FactorizationResult factorize_right(const Functor& f);
FactorizationResult factorize(const Functor& f, System system);

/// The reflection of q into discrete fibrations (fibers π0(x\q)) and into
/// discrete opfibrations (fibers π0(q/x)).
Presheaf reflect_df(const Functor& q);
Copresheaf reflect_dof(const Functor& q);

/// An isomorphism φ: a.mid -> b.mid with φ∘a.e = b.e and b.m∘φ = a.m.
std::optional<Functor> factorization_isomorphism(const FactorizationResult& a, const FactorizationResult& b);

}  // namespace balcat
