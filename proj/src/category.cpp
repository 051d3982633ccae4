#include "balcat/category.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace balcat {

namespace {

std::string join_issues(const std::vector<std::string>& issues) {
    std::ostringstream os;
    os << "validation failed";
    for (const auto& issue : issues) os << "\n  - " << issue;
    return os.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

std::string identity_id(std::string_view object) { return "id:" + std::string(object); }

FiniteCategory::FiniteCategory(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                               std::vector<MorId> identity, std::vector<MorId> composition)
    : objects_(std::move(objects)),
      morphisms_(std::move(morphisms)),
      identity_(std::move(identity)),
      composition_(std::move(composition)) {
    const std::size_t n = objects_.size();
    const std::size_t m = morphisms_.size();
    if (identity_.size() != n || composition_.size() != m * m)
        throw std::invalid_argument("FiniteCategory: table sizes do not match");
    homs_.assign(n * n, {});
    out_.assign(n, {});
    in_.assign(n, {});
    hom_pos_.assign(m, 0);
    for (MorId f = 0; f < static_cast<MorId>(m); ++f) {
        const auto& mor = morphisms_[f];
        if (mor.src < 0 || mor.tgt < 0 || mor.src >= static_cast<int>(n) ||
            mor.tgt >= static_cast<int>(n))
            throw std::invalid_argument("FiniteCategory: morphism endpoint out of range");
        auto& h = homs_[mor.src * n + mor.tgt];
        hom_pos_[f] = static_cast<int>(h.size());
        h.push_back(f);
        out_[mor.src].push_back(f);
        in_[mor.tgt].push_back(f);
    }
    for (ObjId x = 0; x < static_cast<ObjId>(n); ++x) object_index_.emplace(objects_[x], x);
    for (MorId f = 0; f < static_cast<MorId>(m); ++f) morphism_index_.emplace(morphisms_[f].id, f);
}

std::optional<ObjId> FiniteCategory::find_object(std::string_view name) const {
    auto it = object_index_.find(std::string(name));
    if (it == object_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<MorId> FiniteCategory::find_morphism(std::string_view id) const {
    auto it = morphism_index_.find(std::string(id));
    if (it == morphism_index_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> FiniteCategory::check_axioms() const {
    std::vector<std::string> issues;
    const int m = num_morphisms();
    if (static_cast<int>(object_index_.size()) != num_objects())
        issues.push_back("duplicate object names");
    if (static_cast<int>(morphism_index_.size()) != m) issues.push_back("duplicate morphism ids");
    for (ObjId x = 0; x < num_objects(); ++x) {
        const MorId i = identity_[x];
        if (i < 0 || i >= m || src(i) != x || tgt(i) != x)
            issues.push_back("identity of object '" + objects_[x] + "' is not an endomorphism of it");
    }
    if (!issues.empty()) return issues;

    for (MorId g = 0; g < m; ++g) {
        for (MorId f = 0; f < m; ++f) {
            const MorId gf = compose(g, f);
            const bool composable = tgt(f) == src(g);
            if (!composable) {
                if (gf != kNone)
                    issues.push_back("composite (" + morphism_name(g) + ", " + morphism_name(f) +
                                     ") recorded for a non-composable pair");
                continue;
            }
            if (gf == kNone) {
                issues.push_back("missing composite (" + morphism_name(g) + ", " + morphism_name(f) +
                                 ")");
                continue;
            }
            if (src(gf) != src(f) || tgt(gf) != tgt(g))
                issues.push_back("composite (" + morphism_name(g) + ", " + morphism_name(f) +
                                 ") = " + morphism_name(gf) + " has wrong source or target");
        }
    }
    if (!issues.empty()) return issues;

    for (MorId f = 0; f < m; ++f) {
        if (compose(identity(tgt(f)), f) != f || compose(f, identity(src(f))) != f)
            issues.push_back("identity law fails for " + morphism_name(f));
    }
    for (MorId f = 0; f < m; ++f) {
        for (MorId g : out_of(tgt(f))) {
            const MorId gf = compose(g, f);
            for (MorId h : out_of(tgt(g))) {
                if (compose(h, gf) != compose(compose(h, g), f))
                    issues.push_back("associativity fails for (" + morphism_name(h) + ", " +
                                     morphism_name(g) + ", " + morphism_name(f) + ")");
            }
        }
    }
    return issues;
}

bool FiniteCategory::operator==(const FiniteCategory& other) const {
    if (objects_ != other.objects_ || identity_ != other.identity_ ||
        composition_ != other.composition_ || morphisms_.size() != other.morphisms_.size())
        return false;
    for (std::size_t f = 0; f < morphisms_.size(); ++f) {
        const auto& a = morphisms_[f];
        const auto& b = other.morphisms_[f];
        if (a.id != b.id || a.src != b.src || a.tgt != b.tgt) return false;
    }
    return true;
}

CategoryBuilder& CategoryBuilder::add_object(std::string name) {
    objects_.push_back(std::move(name));
    return *this;
}

CategoryBuilder& CategoryBuilder::add_morphism(std::string id, std::string src, std::string tgt) {
    pending_.push_back(Morphism{std::move(id), kNone, kNone});
    pending_src_.push_back(std::move(src));
    pending_tgt_.push_back(std::move(tgt));
    return *this;
}

CategoryBuilder& CategoryBuilder::add_composite(std::string g, std::string f, std::string result) {
    entries_.push_back(Entry{std::move(g), std::move(f), std::move(result)});
    return *this;
}

CategoryPtr CategoryBuilder::build() const {
    std::vector<std::string> issues;
    std::map<std::string, ObjId> obj_index;
    for (const auto& name : objects_) {
        if (name.empty()) issues.push_back("empty object name");
        if (!obj_index.emplace(name, static_cast<ObjId>(obj_index.size())).second)
            issues.push_back("duplicate object '" + name + "'");
    }
    if (!issues.empty()) throw ValidationError(issues);

    const int n = static_cast<int>(objects_.size());
    std::vector<Morphism> morphisms;
    std::vector<MorId> identity(n);
    std::map<std::string, MorId> mor_index;
    std::set<std::string> dropped;
    for (ObjId x = 0; x < n; ++x) {
        identity[x] = static_cast<MorId>(morphisms.size());
        morphisms.push_back(Morphism{identity_id(objects_[x]), x, x});
        mor_index.emplace(morphisms.back().id, identity[x]);
    }
    for (std::size_t k = 0; k < pending_.size(); ++k) {
        const auto& id = pending_[k].id;
        if (id.empty()) {
            issues.push_back("empty morphism id");
            continue;
        }
        if (id.rfind("id:", 0) == 0) {
            issues.push_back("morphism id '" + id + "' uses the reserved identity prefix");
            continue;
        }
        auto s = obj_index.find(pending_src_[k]);
        auto t = obj_index.find(pending_tgt_[k]);
        if (s == obj_index.end())
            issues.push_back("morphism '" + id + "' has dangling src '" + pending_src_[k] + "'");
        if (t == obj_index.end())
            issues.push_back("morphism '" + id + "' has dangling tgt '" + pending_tgt_[k] + "'");
        if (s == obj_index.end() || t == obj_index.end()) {
            dropped.insert(id);
            continue;
        }
        if (!mor_index.emplace(id, static_cast<MorId>(morphisms.size())).second) {
            issues.push_back("duplicate morphism '" + id + "'");
            continue;
        }
        morphisms.push_back(Morphism{id, s->second, t->second});
    }

    const std::size_t m = morphisms.size();
    std::vector<MorId> comp(m * m, kNone);
    auto at = [&](MorId g, MorId f) -> MorId& { return comp[static_cast<std::size_t>(g) * m + f]; };
    for (MorId f = 0; f < static_cast<MorId>(m); ++f) {
        at(identity[morphisms[f].tgt], f) = f;
        at(f, identity[morphisms[f].src]) = f;
    }
    auto lookup = [&](const std::string& id, const char* role, const Entry& e) -> MorId {
        auto it = mor_index.find(id);
        if (it == mor_index.end()) {
            issues.push_back("composite entry (" + e.g + ", " + e.f + ") names unknown " + role +
                             " '" + id + "'");
            return kNone;
        }
        return it->second;
    };
    for (const auto& e : entries_) {
        if (dropped.count(e.g) || dropped.count(e.f) || dropped.count(e.result)) continue;
        const MorId g = lookup(e.g, "morphism", e);
        const MorId f = lookup(e.f, "morphism", e);
        const MorId r = lookup(e.result, "result", e);
        if (g == kNone || f == kNone || r == kNone) continue;
        if (morphisms[f].tgt != morphisms[g].src) {
            issues.push_back("composite entry (" + e.g + ", " + e.f + ") is not composable: tgt(" +
                             e.f + ") = '" + objects_[morphisms[f].tgt] + "' but src(" + e.g +
                             ") = '" + objects_[morphisms[g].src] + "'");
            continue;
        }
        if (morphisms[r].src != morphisms[f].src || morphisms[r].tgt != morphisms[g].tgt) {
            issues.push_back("composite entry (" + e.g + ", " + e.f + ") = " + e.result +
                             " has wrong source or target");
            continue;
        }
        MorId& slot = at(g, f);
        if (slot != kNone && slot != r) {
            const bool via_identity = g == identity[morphisms[g].src] || f == identity[morphisms[f].src];
            issues.push_back(std::string(via_identity ? "identity failure" : "conflicting entries") +
                             " for composite (" + e.g + ", " + e.f + ")");
            continue;
        }
        slot = r;
    }
    for (MorId g = 0; g < static_cast<MorId>(m); ++g)
        for (MorId f = 0; f < static_cast<MorId>(m); ++f)
            if (morphisms[f].tgt == morphisms[g].src && at(g, f) == kNone)
                issues.push_back("missing composite (" + morphisms[g].id + ", " + morphisms[f].id + ")");
    if (!issues.empty()) throw ValidationError(issues);

    auto cat = std::make_shared<FiniteCategory>(objects_, std::move(morphisms), std::move(identity),
                                                std::move(comp));
    auto axioms = cat->check_axioms();
    if (!axioms.empty()) throw ValidationError(axioms);
    return cat;
}

bool same_category(const CategoryPtr& a, const CategoryPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

bool operator==(const Functor& a, const Functor& b) {
    return a.obj_map == b.obj_map && a.mor_map == b.mor_map && same_category(a.dom, b.dom) &&
           same_category(a.cod, b.cod);
}

std::vector<std::string> functor_issues(const Functor& f) {
    std::vector<std::string> issues;
    const auto& dom = *f.dom;
    const auto& cod = *f.cod;
    if (static_cast<int>(f.obj_map.size()) != dom.num_objects() ||
        static_cast<int>(f.mor_map.size()) != dom.num_morphisms()) {
        issues.push_back("functor tables do not cover the domain");
        return issues;
    }
    for (ObjId a = 0; a < dom.num_objects(); ++a)
        if (f.obj_map[a] < 0 || f.obj_map[a] >= cod.num_objects())
            issues.push_back("object '" + dom.object_name(a) + "' is unmapped");
    for (MorId u = 0; u < dom.num_morphisms(); ++u)
        if (f.mor_map[u] < 0 || f.mor_map[u] >= cod.num_morphisms())
            issues.push_back("morphism '" + dom.morphism_name(u) + "' is unmapped");
    if (!issues.empty()) return issues;
    for (MorId u = 0; u < dom.num_morphisms(); ++u) {
        const MorId fu = f.mor_map[u];
        if (cod.src(fu) != f.obj_map[dom.src(u)])
            issues.push_back("src not preserved by '" + dom.morphism_name(u) + "' -> '" +
                             cod.morphism_name(fu) + "'");
        if (cod.tgt(fu) != f.obj_map[dom.tgt(u)])
            issues.push_back("tgt not preserved by '" + dom.morphism_name(u) + "' -> '" +
                             cod.morphism_name(fu) + "'");
    }
    for (ObjId a = 0; a < dom.num_objects(); ++a)
        if (f.mor_map[dom.identity(a)] != cod.identity(f.obj_map[a]))
            issues.push_back("identity of '" + dom.object_name(a) + "' not preserved");
    if (!issues.empty()) return issues;
    for (MorId u = 0; u < dom.num_morphisms(); ++u) {
        for (MorId v : dom.out_of(dom.tgt(u))) {
            const MorId vu = dom.compose(v, u);
            if (f.mor_map[vu] != cod.compose(f.mor_map[v], f.mor_map[u]))
                issues.push_back("composite (" + dom.morphism_name(v) + ", " + dom.morphism_name(u) +
                                 ") not preserved");
        }
    }
    return issues;
}

Functor validate_functor(const std::unordered_map<std::string, std::string>& obj_map,
                         const std::unordered_map<std::string, std::string>& mor_map,
                         const CategoryPtr& dom, const CategoryPtr& cod) {
    std::vector<std::string> issues;
    Functor f{dom, cod, std::vector<ObjId>(dom->num_objects(), kNone),
              std::vector<MorId>(dom->num_morphisms(), kNone)};
    for (const auto& [from, to] : obj_map) {
        auto a = dom->find_object(from);
        auto b = cod->find_object(to);
        if (!a) issues.push_back("obj_map names unknown domain object '" + from + "'");
        if (!b) issues.push_back("obj_map names unknown codomain object '" + to + "'");
        if (a && b) f.obj_map[*a] = *b;
    }
    for (const auto& [from, to] : mor_map) {
        auto u = dom->find_morphism(from);
        auto v = cod->find_morphism(to);
        if (!u) issues.push_back("mor_map names unknown domain morphism '" + from + "'");
        if (!v) issues.push_back("mor_map names unknown codomain morphism '" + to + "'");
        if (u && v) f.mor_map[*u] = *v;
    }
    for (ObjId a = 0; a < dom->num_objects(); ++a) {
        if (f.obj_map[a] == kNone) {
            issues.push_back("object '" + dom->object_name(a) + "' is unmapped");
            continue;
        }
        MorId& slot = f.mor_map[dom->identity(a)];
        if (slot == kNone) slot = cod->identity(f.obj_map[a]);
    }
    if (!issues.empty()) throw ValidationError(issues);
    auto laws = functor_issues(f);
    if (!laws.empty()) throw ValidationError(laws);
    return f;
}

}  // namespace balcat
