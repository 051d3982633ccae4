#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "balcat/calculus.hpp"
#include "balcat/category.hpp"
#include "balcat/factorization.hpp"
#include "balcat/instances.hpp"

namespace balcat::io {

using Json = nlohmann::json;

/// A file that cannot be read, parsed or validated. The message starts with
/// `path:` and, for syntax errors, `line:column:`.
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

Json read_json(const std::filesystem::path& path);
Json parse_json(const std::string& text, const std::string& origin);

/// Serializes with two-space indentation and a trailing newline. Object keys
/// are sorted, so equal values give equal bytes.
std::string dump(const Json& j);

/// Writes to a sibling temporary file and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

// Category files: {objects, morphisms: [{id, src, tgt}], compose: [{g, f, result}]}.
// Identities are implicit and composites with an identity may be omitted.
CategoryPtr category_from_json(const Json& j);
Json category_to_json(const FiniteCategory& x);

/// A category reference inside a functor or presheaf file: a path relative to
/// `base_dir`, or an inline category object.
CategoryPtr category_ref(const Json& j, const std::filesystem::path& base_dir);

// Functor files: {dom, cod, obj_map: {a: b}, mor_map: {u: v}}. Identities may
// be omitted from mor_map.
Functor functor_from_json(const Json& j, const std::filesystem::path& base_dir);
Functor functor_from_json(const Json& j, const CategoryPtr& dom, const CategoryPtr& cod);
/// dom and cod are written inline unless references are supplied.
Json functor_to_json(const Functor& f, const Json& dom_ref = nullptr, const Json& cod_ref = nullptr);

// Poset files: {elements, leq: [[a, b], ...]}; the closure is computed on load.
PosetPtr poset_from_json(const Json& j);
/// Writes the cover relation.
Json poset_to_json(const Poset& p);
// Monotone map files: {dom, cod, map: {a: b}} with poset references.
MonotoneMap monotone_from_json(const Json& j, const std::filesystem::path& base_dir);
Json monotone_to_json(const MonotoneMap& f);

// Graph files: {nodes, edges: [{id, src, tgt}]}.
Graph graph_from_json(const Json& j);

// Presheaf files: {base, fiber: {x: [names]}, action: {α: [names]}, variance}.
// variance is "contravariant" (default) or "covariant". For a contravariant
// action the list gives, for each element of fiber(tgt α) in order, its image
// in fiber(src α); identities may be omitted.
Presheaf presheaf_from_json(const Json& j, const std::filesystem::path& base_dir);
Copresheaf copresheaf_from_json(const Json& j, const std::filesystem::path& base_dir);
bool is_covariant_file(const Json& j);
Json presheaf_to_json(const Presheaf& p, const Json& base_ref = nullptr);
Json copresheaf_to_json(const Copresheaf& p, const Json& base_ref = nullptr);

Json quotient_to_json(const FinSetQuotient& q);
Json hom_interval_to_json(const HomInterval& h, const FiniteCategory& x);
/// The enriched composition table as a category file whose arrows are the
/// elements of the hom-sets, named by the arrow of X they correspond to.
CategoryPtr enriched_category(const EnrichedStructure& es);

}  // namespace balcat::io
