#include "balcat/io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace balcat::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw ValidationError({what}); }

void only_fields(const Json& j, std::initializer_list<const char*> allowed, std::initializer_list<const char*> required,
                 const std::string& kind) {
    if (!j.is_object()) bad(kind + " must be a JSON object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items())
        if (!ok.count(key)) bad(kind + ": unknown field '" + key + "'");
    for (const char* key : required)
        if (!j.contains(key)) bad(kind + ": missing field '" + std::string(key) + "'");
}

std::string as_string(const Json& j, const std::string& where) {
    if (!j.is_string()) bad(where + " must be a string");
    return j.get<std::string>();
}

const Json& as_array(const Json& j, const std::string& where) {
    if (!j.is_array()) bad(where + " must be a list");
    return j;
}

const Json& as_object(const Json& j, const std::string& where) {
    if (!j.is_object()) bad(where + " must be an object");
    return j;
}

std::unordered_map<std::string, std::string> string_map(const Json& j, const std::string& where) {
    std::unordered_map<std::string, std::string> out;
    for (const auto& [k, v] : as_object(j, where).items()) out[k] = as_string(v, where + "." + k);
    return out;
}

PosetPtr poset_ref(const Json& j, const std::filesystem::path& base_dir) {
    if (j.is_string()) return poset_from_json(read_json(base_dir / j.get<std::string>()));
    return poset_from_json(j);
}

template <class Sheaf>
Sheaf sheaf_from_json(const Json& j, const std::filesystem::path& base_dir, bool contravariant) {
    only_fields(j, {"base", "fiber", "action", "variance"}, {"base", "fiber"}, "presheaf");
    const CategoryPtr X = category_ref(j.at("base"), base_dir);
    Sheaf p{X, std::vector<std::vector<std::string>>(X->num_objects()),
            std::vector<std::vector<int>>(X->num_morphisms())};
    std::vector<std::unordered_map<std::string, int>> index(X->num_objects());
    std::vector<char> seen(X->num_objects(), 0);
    for (const auto& [name, list] : as_object(j.at("fiber"), "fiber").items()) {
        auto x = X->find_object(name);
        if (!x) bad("fiber names unknown object '" + name + "'");
        seen[*x] = 1;
        for (const auto& e : as_array(list, "fiber." + name)) {
            const std::string s = as_string(e, "fiber element");
            if (!index[*x].emplace(s, static_cast<int>(p.fiber[*x].size())).second)
                bad("fiber of '" + name + "' repeats '" + s + "'");
            p.fiber[*x].push_back(s);
        }
    }
    for (ObjId x = 0; x < X->num_objects(); ++x)
        if (!seen[x]) bad("fiber of '" + X->object_name(x) + "' is missing");
    std::vector<char> given(X->num_morphisms(), 0);
    if (j.contains("action"))
        for (const auto& [name, list] : as_object(j.at("action"), "action").items()) {
            auto a = X->find_morphism(name);
            if (!a) bad("action names unknown morphism '" + name + "'");
            const ObjId from = contravariant ? X->tgt(*a) : X->src(*a);
            const ObjId to = contravariant ? X->src(*a) : X->tgt(*a);
            const auto& entries = as_array(list, "action." + name);
            if (entries.size() != p.fiber[from].size())
                bad("action of '" + name + "' must list " + std::to_string(p.fiber[from].size()) + " images");
            for (const auto& e : entries) {
                const std::string s = as_string(e, "action entry");
                auto it = index[to].find(s);
                if (it == index[to].end()) bad("action of '" + name + "' names '" + s + "' outside its target fiber");
                p.action[*a].push_back(it->second);
            }
            given[*a] = 1;
        }
    std::vector<std::string> issues;
    for (MorId a = 0; a < X->num_morphisms(); ++a) {
        if (given[a]) continue;
        if (X->is_identity(a)) {
            for (int s = 0; s < p.fiber_size(X->src(a)); ++s) p.action[a].push_back(s);
        } else {
            issues.push_back("action of '" + X->morphism_name(a) + "' is missing");
        }
    }
    if (!issues.empty()) throw ValidationError(issues);
    if (auto more = p.issues(); !more.empty()) throw ValidationError(more);
    return p;
}

template <class Sheaf>
Json sheaf_to_json(const Sheaf& p, const Json& base_ref, bool contravariant) {
    const auto& X = *p.base;
    Json j;
    j["base"] = base_ref.is_null() ? category_to_json(X) : base_ref;
    j["fiber"] = Json::object();
    for (ObjId x = 0; x < X.num_objects(); ++x) j["fiber"][X.object_name(x)] = p.fiber[x];
    j["action"] = Json::object();
    for (MorId a = 0; a < X.num_morphisms(); ++a) {
        if (X.is_identity(a)) continue;
        const ObjId to = contravariant ? X.src(a) : X.tgt(a);
        Json list = Json::array();
        for (int s : p.action[a]) list.push_back(p.fiber[to][s]);
        j["action"][X.morphism_name(a)] = list;
    }
    j["variance"] = contravariant ? "contravariant" : "covariant";
    return j;
}

}  // namespace

Json parse_json(const std::string& text, const std::string& origin) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw InputError(origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + e.what());
    }
}

Json read_json(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path.string() + ": cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_json(buffer.str(), path.string());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError(tmp.string() + ": cannot write file");
        out << content;
        if (!out.flush()) throw InputError(tmp.string() + ": write failed");
    }
    std::filesystem::rename(tmp, path);
}

// ---------------------------------------------------------------------------

CategoryPtr category_from_json(const Json& j) {
    only_fields(j, {"objects", "morphisms", "compose"}, {"objects"}, "category");
    CategoryBuilder b;
    for (const auto& o : as_array(j.at("objects"), "objects")) b.add_object(as_string(o, "object"));
    if (j.contains("morphisms"))
        for (const auto& m : as_array(j.at("morphisms"), "morphisms")) {
            only_fields(m, {"id", "src", "tgt"}, {"id", "src", "tgt"}, "morphism");
            b.add_morphism(as_string(m.at("id"), "morphism id"), as_string(m.at("src"), "morphism src"),
                           as_string(m.at("tgt"), "morphism tgt"));
        }
    if (j.contains("compose"))
        for (const auto& c : as_array(j.at("compose"), "compose")) {
            only_fields(c, {"g", "f", "result"}, {"g", "f", "result"}, "compose entry");
            b.add_composite(as_string(c.at("g"), "compose g"), as_string(c.at("f"), "compose f"),
                            as_string(c.at("result"), "compose result"));
        }
    return b.build();
}

Json category_to_json(const FiniteCategory& x) {
    Json j;
    j["objects"] = x.object_names();
    j["morphisms"] = Json::array();
    for (MorId f = 0; f < x.num_morphisms(); ++f) {
        if (x.is_identity(f)) continue;
        j["morphisms"].push_back(
            {{"id", x.morphism_name(f)}, {"src", x.object_name(x.src(f))}, {"tgt", x.object_name(x.tgt(f))}});
    }
    j["compose"] = Json::array();
    for (MorId f = 0; f < x.num_morphisms(); ++f) {
        if (x.is_identity(f)) continue;
        for (MorId g : x.out_of(x.tgt(f))) {
            if (x.is_identity(g)) continue;
            j["compose"].push_back(
                {{"g", x.morphism_name(g)}, {"f", x.morphism_name(f)}, {"result", x.morphism_name(x.compose(g, f))}});
        }
    }
    return j;
}

CategoryPtr category_ref(const Json& j, const std::filesystem::path& base_dir) {
    if (j.is_string()) return category_from_json(read_json(base_dir / j.get<std::string>()));
    return category_from_json(j);
}

Functor functor_from_json(const Json& j, const CategoryPtr& dom, const CategoryPtr& cod) {
    only_fields(j, {"dom", "cod", "obj_map", "mor_map"}, {"obj_map"}, "functor");
    const auto objs = string_map(j.at("obj_map"), "obj_map");
    const auto mors = j.contains("mor_map") ? string_map(j.at("mor_map"), "mor_map")
                                            : std::unordered_map<std::string, std::string>{};
    return validate_functor(objs, mors, dom, cod);
}

Functor functor_from_json(const Json& j, const std::filesystem::path& base_dir) {
    only_fields(j, {"dom", "cod", "obj_map", "mor_map"}, {"dom", "cod", "obj_map"}, "functor");
    return functor_from_json(j, category_ref(j.at("dom"), base_dir), category_ref(j.at("cod"), base_dir));
}

Json functor_to_json(const Functor& f, const Json& dom_ref, const Json& cod_ref) {
    Json j;
    j["dom"] = dom_ref.is_null() ? category_to_json(*f.dom) : dom_ref;
    j["cod"] = cod_ref.is_null() ? category_to_json(*f.cod) : cod_ref;
    j["obj_map"] = Json::object();
    for (ObjId a = 0; a < f.dom->num_objects(); ++a) j["obj_map"][f.dom->object_name(a)] = f.cod->object_name(f.obj(a));
    j["mor_map"] = Json::object();
    for (MorId u = 0; u < f.dom->num_morphisms(); ++u) {
        if (f.dom->is_identity(u)) continue;
        j["mor_map"][f.dom->morphism_name(u)] = f.cod->morphism_name(f.mor(u));
    }
    return j;
}

// ---------------------------------------------------------------------------

PosetPtr poset_from_json(const Json& j) {
    only_fields(j, {"elements", "leq"}, {"elements"}, "poset");
    std::vector<std::string> elements;
    for (const auto& e : as_array(j.at("elements"), "elements")) elements.push_back(as_string(e, "element"));
    std::vector<std::pair<std::string, std::string>> pairs;
    if (j.contains("leq"))
        for (const auto& p : as_array(j.at("leq"), "leq")) {
            if (!p.is_array() || p.size() != 2) bad("leq entries must be pairs [a, b]");
            pairs.emplace_back(as_string(p[0], "leq entry"), as_string(p[1], "leq entry"));
        }
    return std::make_shared<const Poset>(elements, pairs);
}

Json poset_to_json(const Poset& p) {
    Json j;
    j["elements"] = p.elements();
    j["leq"] = Json::array();
    for (const auto& [a, b] : p.covers()) j["leq"].push_back({p.name(a), p.name(b)});
    return j;
}

MonotoneMap monotone_from_json(const Json& j, const std::filesystem::path& base_dir) {
    only_fields(j, {"dom", "cod", "map"}, {"dom", "cod", "map"}, "monotone map");
    MonotoneMap f{poset_ref(j.at("dom"), base_dir), poset_ref(j.at("cod"), base_dir), {}};
    f.map.assign(f.dom->size(), -1);
    for (const auto& [from, to] : string_map(j.at("map"), "map")) {
        auto a = f.dom->find(from);
        auto b = f.cod->find(to);
        if (!a) bad("map names unknown element '" + from + "'");
        if (!b) bad("map names unknown element '" + to + "'");
        f.map[*a] = *b;
    }
    for (int a = 0; a < f.dom->size(); ++a)
        if (f.map[a] < 0) bad("element '" + f.dom->name(a) + "' is unmapped");
    validate_monotone(f);
    return f;
}

Json monotone_to_json(const MonotoneMap& f) {
    Json j;
    j["dom"] = poset_to_json(*f.dom);
    j["cod"] = poset_to_json(*f.cod);
    j["map"] = Json::object();
    for (int a = 0; a < f.dom->size(); ++a) j["map"][f.dom->name(a)] = f.cod->name(f(a));
    return j;
}

Graph graph_from_json(const Json& j) {
    only_fields(j, {"nodes", "edges"}, {"nodes"}, "graph");
    Graph g;
    std::unordered_map<std::string, int> index;
    for (const auto& n : as_array(j.at("nodes"), "nodes")) {
        const std::string name = as_string(n, "node");
        if (!index.emplace(name, static_cast<int>(g.nodes.size())).second) bad("duplicate node '" + name + "'");
        g.nodes.push_back(name);
    }
    std::set<std::string> ids;
    if (j.contains("edges"))
        for (const auto& e : as_array(j.at("edges"), "edges")) {
            only_fields(e, {"id", "src", "tgt"}, {"id", "src", "tgt"}, "edge");
            GraphEdge edge{as_string(e.at("id"), "edge id"), 0, 0};
            if (!ids.insert(edge.id).second) bad("duplicate edge '" + edge.id + "'");
            auto s = index.find(as_string(e.at("src"), "edge src"));
            auto t = index.find(as_string(e.at("tgt"), "edge tgt"));
            if (s == index.end() || t == index.end()) bad("edge '" + edge.id + "' names an unknown node");
            edge.src = s->second;
            edge.tgt = t->second;
            g.edges.push_back(edge);
        }
    check_acyclic(g);
    return g;
}

bool is_covariant_file(const Json& j) {
    if (!j.is_object() || !j.contains("variance")) return false;
    const std::string v = as_string(j.at("variance"), "variance");
    if (v != "covariant" && v != "contravariant") bad("variance must be 'covariant' or 'contravariant'");
    return v == "covariant";
}

Presheaf presheaf_from_json(const Json& j, const std::filesystem::path& base_dir) {
    if (is_covariant_file(j)) bad("expected a contravariant presheaf file");
    return sheaf_from_json<Presheaf>(j, base_dir, true);
}

Copresheaf copresheaf_from_json(const Json& j, const std::filesystem::path& base_dir) {
    if (!is_covariant_file(j)) bad("expected a covariant presheaf file");
    return sheaf_from_json<Copresheaf>(j, base_dir, false);
}

Json presheaf_to_json(const Presheaf& p, const Json& base_ref) { return sheaf_to_json(p, base_ref, true); }
Json copresheaf_to_json(const Copresheaf& p, const Json& base_ref) { return sheaf_to_json(p, base_ref, false); }

// ---------------------------------------------------------------------------

Json quotient_to_json(const FinSetQuotient& q) {
    Json j;
    j["elements"] = q.elements;
    j["size"] = q.size();
    return j;
}

Json hom_interval_to_json(const HomInterval& h, const FiniteCategory& x) {
    Json j;
    j["x"] = x.object_name(h.x);
    j["y"] = x.object_name(h.y);
    j["size"] = h.size();
    j["apex"] = {{"objects", h.apex()->num_objects()}, {"morphisms", h.apex()->num_morphisms()}};
    j["elements"] = Json::array();
    const auto& slice_apex = *h.pullback.proj_right.cod;
    const auto& coslice_apex = *h.pullback.proj_left.cod;
    for (int k = 0; k < h.size(); ++k)
        j["elements"].push_back({{"name", h.components.elements[k]},
                                 {"left_arrow", slice_apex.object_name(h.left_arrow[k])},
                                 {"right_arrow", coslice_apex.object_name(h.right_arrow[k])}});
    return j;
}

CategoryPtr enriched_category(const EnrichedStructure& es) {
    const auto& X = *es.cache.base;
    const int n = X.num_objects();
    std::vector<Morphism> morphisms;
    std::vector<MorId> identity(n);
    std::vector<MorId> first(static_cast<std::size_t>(n) * n);
    std::vector<int> element;
    for (ObjId x = 0; x < n; ++x)
        for (ObjId y = 0; y < n; ++y) {
            const auto& h = es.hom(x, y);
            const Slice& s = es.cache.slices[y];
            first[static_cast<std::size_t>(x) * n + y] = static_cast<MorId>(morphisms.size());
            for (int k = 0; k < h.size(); ++k) {
                if (x == y && k == es.unit[x]) identity[x] = static_cast<MorId>(morphisms.size());
                morphisms.push_back({X.morphism_name(s.comma.tags[h.left_arrow[k]].connecting), x, y});
                element.push_back(k);
            }
        }
    return tabulate_category(X.object_names(), morphisms, identity, [&](MorId g, MorId f) {
        const ObjId x = morphisms[f].src, y = morphisms[f].tgt, z = morphisms[g].tgt;
        return first[static_cast<std::size_t>(x) * n + z] + es.compose(x, y, z, element[f], element[g]);
    });
}

}  // namespace balcat::io
