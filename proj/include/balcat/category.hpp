#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace balcat {

using ObjId = int;
using MorId = int;

inline constexpr int kNone = -1;

/// Raised when a category, functor or file fails validation. Carries every
/// violated condition, not just the first.
class ValidationError : public std::runtime_error {
  public:
    explicit ValidationError(std::vector<std::string> issues);

    const std::vector<std::string>& issues() const noexcept { return issues_; }

  private:
    std::vector<std::string> issues_;
};

/// Raised when an exhaustive enumeration would exceed the configured bound.
class SizeGuardError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when a constructed result fails one of its own postconditions.
class InvariantError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

struct Morphism {
    std::string id;
    ObjId src = kNone;
    ObjId tgt = kNone;
};

/// A category with finitely many objects and morphisms, stored as dense
/// tables. Instances are immutable once built; share them through
/// CategoryPtr.
///
/// Identity morphisms are ordinary entries of the morphism table whose ids
/// are `id:<object>`.
class FiniteCategory {
  public:
    /// Builds from raw tables. `composition` is row-major over
    /// (g, f) pairs and holds kNone where tgt(f) != src(g). No axiom checking
    /// happens here; see check_axioms().
    FiniteCategory(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                   std::vector<MorId> identity, std::vector<MorId> composition);

    int num_objects() const noexcept { return static_cast<int>(objects_.size()); }
    int num_morphisms() const noexcept { return static_cast<int>(morphisms_.size()); }

    const std::string& object_name(ObjId x) const { return objects_[x]; }
    const std::vector<std::string>& object_names() const noexcept { return objects_; }
    const Morphism& morphism(MorId f) const { return morphisms_[f]; }
    const std::string& morphism_name(MorId f) const { return morphisms_[f].id; }

    ObjId src(MorId f) const { return morphisms_[f].src; }
    ObjId tgt(MorId f) const { return morphisms_[f].tgt; }
    MorId identity(ObjId x) const { return identity_[x]; }
    bool is_identity(MorId f) const { return identity_[morphisms_[f].src] == f; }

    /// g ∘ f, or kNone when the pair is not composable.
    MorId compose(MorId g, MorId f) const {
        return composition_[static_cast<std::size_t>(g) * morphisms_.size() + f];
    }

    const std::vector<MorId>& hom(ObjId x, ObjId y) const {
        return homs_[static_cast<std::size_t>(x) * objects_.size() + y];
    }
    const std::vector<MorId>& out_of(ObjId x) const { return out_[x]; }
    const std::vector<MorId>& into(ObjId y) const { return in_[y]; }
    /// Index of f inside hom(src f, tgt f).
    int hom_position(MorId f) const { return hom_pos_[f]; }

    std::optional<ObjId> find_object(std::string_view name) const;
    std::optional<MorId> find_morphism(std::string_view id) const;

    /// Every violated category axiom, each naming its offending morphisms.
    std::vector<std::string> check_axioms() const;

    bool operator==(const FiniteCategory& other) const;

  private:
    std::vector<std::string> objects_;
    std::vector<Morphism> morphisms_;
    std::vector<MorId> identity_;
    std::vector<MorId> composition_;
    std::vector<std::vector<MorId>> homs_;
    std::vector<std::vector<MorId>> out_;
    std::vector<std::vector<MorId>> in_;
    std::vector<int> hom_pos_;
    std::unordered_map<std::string, ObjId> object_index_;
    std::unordered_map<std::string, MorId> morphism_index_;
};

using CategoryPtr = std::shared_ptr<const FiniteCategory>;

std::string identity_id(std::string_view object);

/// Incremental, name-based construction of a category. Identities are
/// synthesized; composites involving an identity are filled in.
class CategoryBuilder {
  public:
    CategoryBuilder& add_object(std::string name);
    CategoryBuilder& add_morphism(std::string id, std::string src, std::string tgt);
    /// Records g ∘ f = result.
    CategoryBuilder& add_composite(std::string g, std::string f, std::string result);

    /// Validates and returns the category, or throws ValidationError naming
    /// every problem (dangling ids, missing composites, axiom failures).
    CategoryPtr build() const;

  private:
    struct Entry {
        std::string g, f, result;
    };
    std::vector<std::string> objects_;
    std::vector<Morphism> pending_;
    std::vector<std::string> pending_src_, pending_tgt_;
    std::vector<Entry> entries_;
};

/// A functor between finite categories, given by its object and morphism
/// tables.
struct Functor {
    CategoryPtr dom;
    CategoryPtr cod;
    std::vector<ObjId> obj_map;
    std::vector<MorId> mor_map;

    ObjId obj(ObjId a) const { return obj_map[a]; }
    MorId mor(MorId u) const { return mor_map[u]; }
};

bool same_category(const CategoryPtr& a, const CategoryPtr& b);
bool operator==(const Functor& a, const Functor& b);

/// Every violated functor law: preservation of src, tgt, identities and
/// composites, checked over all composable pairs.
std::vector<std::string> functor_issues(const Functor& f);

/// Builds a functor from name maps. Identities may be omitted from
/// `mor_map`; they are sent to the identity of the image object.
Functor validate_functor(const std::unordered_map<std::string, std::string>& obj_map,
                         const std::unordered_map<std::string, std::string>& mor_map,
                         const CategoryPtr& dom, const CategoryPtr& cod);

}  // namespace balcat
