#include "balcat/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "balcat/calculus.hpp"
#include "balcat/constructions.hpp"
#include "balcat/factorization.hpp"
#include "balcat/instances.hpp"
#include "balcat/io.hpp"
#include "balcat/laws.hpp"
#include "balcat/search.hpp"

namespace balcat::cli {

namespace fs = std::filesystem;
using io::InputError;
using io::Json;

namespace {

struct Options {
    std::string instance = "fincat";
    std::string out;
    std::string out_dir;
    std::vector<std::string> files;
    std::string object;
    std::string from;
    std::string to;
    std::string system = "left";
    std::string side = "left";
    std::string predicate;
    std::string property = "colimiting";
    std::string kind = "auto";
    std::string subset;
    int size = 2;
    // law suite
    std::string suite = "all";
    std::uint64_t seed = 7;
    int count = laws::GeneratorConfig{}.count;
    int max_objects = laws::GeneratorConfig{}.max_objects;
    int max_morphisms = laws::GeneratorConfig{}.max_morphisms;
    std::string families;
    std::string law;
    int index = -1;
    bool timings = false;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

class Runner {
  public:
    Runner(Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {}

    void emit(const Json& j) const {
        if (o_.out.empty())
            out_ << io::dump(j);
        else
            io::write_atomic(o_.out, io::dump(j));
    }

    int verdict(const std::string& name, const Verdict& v) const {
        emit({{"predicate", name}, {"holds", v.holds}, {"witness", v.holds ? Json(nullptr) : Json(v.witness)}});
        return v.holds ? 0 : 1;
    }

    void require_instance(std::initializer_list<const char*> allowed, const std::string& command) const {
        for (const char* a : allowed)
            if (o_.instance == a) return;
        throw InputError("--instance: command '" + command + "' does not support instance '" + o_.instance + "'");
    }

    const std::string& file(std::size_t k) const {
        if (k >= o_.files.size()) throw InputError("missing input file argument " + std::to_string(k + 1));
        return o_.files[k];
    }

    // Loaders turn validation failures into file-scoped diagnostics.
    template <class T, class F>
    T load(std::size_t k, F&& parse) const {
        const std::string& path = file(k);
        const Json j = io::read_json(path);
        try {
            return parse(j, fs::path(path).parent_path());
        } catch (const ValidationError& e) {
            std::string msg = path + ":";
            for (const auto& issue : e.issues()) msg += " " + issue + ";";
            msg.pop_back();
            throw InputError(msg);
        } catch (const Json::exception& e) {
            throw InputError(path + ": " + e.what());
        }
    }

    CategoryPtr category(std::size_t k) const {
        return load<CategoryPtr>(k, [](const Json& j, const fs::path&) { return io::category_from_json(j); });
    }
    Functor functor(std::size_t k) const {
        return load<Functor>(k, [](const Json& j, const fs::path& d) { return io::functor_from_json(j, d); });
    }
    PosetPtr poset(std::size_t k) const {
        return load<PosetPtr>(k, [](const Json& j, const fs::path&) { return io::poset_from_json(j); });
    }
    MonotoneMap monotone(std::size_t k) const {
        MonotoneMap f = load<MonotoneMap>(k, [](const Json& j, const fs::path& d) { return io::monotone_from_json(j, d); });
        if (o_.instance == "finset") {
            for (const auto& p : {f.dom, f.cod})
                if (!p->covers().empty())
                    throw InputError(file(k) + ": the finset instance expects sets (posets without order relations)");
        }
        return f;
    }
    Graph graph(std::size_t k) const {
        return load<Graph>(k, [](const Json& j, const fs::path&) { return io::graph_from_json(j); });
    }
    Presheaf presheaf(std::size_t k) const {
        return load<Presheaf>(k, [](const Json& j, const fs::path& d) { return io::presheaf_from_json(j, d); });
    }

    static ObjId object_named(const FiniteCategory& x, const std::string& name, const std::string& flag) {
        if (name.empty()) throw InputError(flag + ": required");
        if (auto o = x.find_object(name)) return *o;
        throw InputError(flag + ": unknown object '" + name + "'");
    }
    static int element_named(const Poset& p, const std::string& name, const std::string& flag) {
        if (name.empty()) throw InputError(flag + ": required");
        if (auto o = p.find(name)) return *o;
        throw InputError(flag + ": unknown element '" + name + "'");
    }
    static int node_named(const Graph& g, const std::string& name, const std::string& flag) {
        for (std::size_t i = 0; i < g.nodes.size(); ++i)
            if (g.nodes[i] == name) return static_cast<int>(i);
        throw InputError(flag + ": unknown node '" + name + "'");
    }
    std::vector<int> elements_named(const Poset& p, const std::string& list, const std::string& flag) const {
        std::vector<int> out;
        for (const auto& name : split_list(list)) out.push_back(element_named(p, name, flag));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    System system() const { return o_.system == "right" ? System::Right : System::Left; }

    // ---- commands

    int validate() const {
        const std::string& path = file(0);
        const Json j = io::read_json(path);
        std::string kind = o_.kind;
        if (kind == "auto") {
            if (!j.is_object()) throw InputError(path + ": expected a JSON object");
            if (j.contains("obj_map")) kind = "functor";
            else if (j.contains("objects")) kind = "category";
            else if (j.contains("map")) kind = "monotone";
            else if (j.contains("elements")) kind = "poset";
            else if (j.contains("nodes")) kind = "graph";
            else if (j.contains("fiber")) kind = "presheaf";
            else if (j.contains("diagram")) kind = "cone";
            else throw InputError(path + ": cannot tell which kind of file this is; pass --kind");
        }
        Json summary{{"file", path}, {"kind", kind}, {"valid", true}};
        if (kind == "category") {
            const auto c = category(0);
            summary["objects"] = c->num_objects();
            summary["morphisms"] = c->num_morphisms();
        } else if (kind == "functor") {
            const auto f = functor(0);
            summary["dom_objects"] = f.dom->num_objects();
            summary["cod_objects"] = f.cod->num_objects();
        } else if (kind == "poset") {
            summary["elements"] = poset(0)->size();
        } else if (kind == "monotone") {
            summary["dom_elements"] = monotone(0).dom->size();
        } else if (kind == "graph") {
            const auto g = graph(0);
            summary["nodes"] = g.nodes.size();
            summary["edges"] = g.edges.size();
        } else if (kind == "presheaf") {
            load<int>(0, [](const Json& jj, const fs::path& d) {
                if (io::is_covariant_file(jj))
                    io::copresheaf_from_json(jj, d);
                else
                    io::presheaf_from_json(jj, d);
                return 0;
            });
            summary["variance"] = io::is_covariant_file(j) ? "covariant" : "contravariant";
        } else if (kind == "cone") {
            load_cone(0);
        } else {
            throw InputError("--kind: unknown file kind '" + kind + "'");
        }
        emit(summary);
        return 0;
    }

    int pi0_cmd() const {
        require_instance({"fincat", "pos", "finset", "discrete", "codiscrete"}, "pi0");
        if (o_.instance == "pos" || o_.instance == "finset") {
            const auto p = poset(0);
            if (o_.instance == "finset") {
                emit({{"elements", p->elements()}, {"size", p->size()}});
            } else {
                const int n = pos_pi0(*p);
                emit({{"elements", n ? Json::array({p->name(0)}) : Json::array()}, {"size", n}});
            }
            return 0;
        }
        const auto X = category(0);
        if (o_.instance == "discrete") {
            emit({{"elements", X->object_names()}, {"size", X->num_objects()}});
        } else if (o_.instance == "codiscrete") {
            auto names = X->object_names();
            std::sort(names.begin(), names.end());
            if (names.size() > 1) names.resize(1);
            emit({{"elements", names}, {"size", names.size()}});
        } else {
            emit(io::quotient_to_json(pi0(*X)));
        }
        return 0;
    }

    int slice_cmd(bool co) const {
        const std::string name = co ? "coslice" : "slice";
        require_instance({"fincat", "pos"}, name);
        if (o_.instance == "pos") {
            const auto p = poset(0);
            const int x = element_named(*p, o_.object, "--object");
            const auto members = co ? pos_coslice(*p, x) : pos_slice(*p, x);
            emit(io::poset_to_json(*subposet_inclusion(p, members).dom));
            return 0;
        }
        const auto X = category(0);
        const ObjId x = object_named(*X, o_.object, "--object");
        const Slice s = co ? coslice(X, x) : slice(X, x);
        if (!o_.out_dir.empty()) {
            fs::create_directories(o_.out_dir);
            io::write_atomic(fs::path(o_.out_dir) / "projection.json", io::dump(io::functor_to_json(s.projection())));
        }
        emit(io::category_to_json(*s.category()));
        return 0;
    }

    void write_projections(const Functor& left, const Functor& right) const {
        if (o_.out_dir.empty()) return;
        fs::create_directories(o_.out_dir);
        io::write_atomic(fs::path(o_.out_dir) / "left.json", io::dump(io::functor_to_json(left)));
        io::write_atomic(fs::path(o_.out_dir) / "right.json", io::dump(io::functor_to_json(right)));
    }

    int comma_cmd() const {
        require_instance({"fincat"}, "comma");
        const CommaResult c = comma(functor(0), functor(1));
        write_projections(c.proj_left, c.proj_right);
        emit(io::category_to_json(*c.apex));
        return 0;
    }

    int pullback_cmd() const {
        require_instance({"fincat", "pos", "finset"}, "pullback");
        if (o_.instance != "fincat") {
            const PosPullback pb = pos_pullback(monotone(0), monotone(1));
            if (!o_.out_dir.empty()) {
                fs::create_directories(o_.out_dir);
                io::write_atomic(fs::path(o_.out_dir) / "left.json", io::dump(io::monotone_to_json(pb.left)));
                io::write_atomic(fs::path(o_.out_dir) / "right.json", io::dump(io::monotone_to_json(pb.right)));
            }
            emit(io::poset_to_json(*pb.apex));
            return 0;
        }
        const PullbackResult pb = pullback(functor(0), functor(1));
        write_projections(pb.proj_left, pb.proj_right);
        emit(io::category_to_json(*pb.apex));
        return 0;
    }

    int product_over_cmd() const {
        require_instance({"fincat"}, "product-over");
        const ProductOver p = product_over(functor(0), functor(1));
        if (!o_.out_dir.empty()) {
            fs::create_directories(o_.out_dir);
            io::write_atomic(fs::path(o_.out_dir) / "structure.json", io::dump(io::functor_to_json(p.structure)));
        }
        write_projections(p.pullback.proj_left, p.pullback.proj_right);
        emit(io::category_to_json(*p.pullback.apex));
        return 0;
    }

    int opposite_cmd() const {
        require_instance({"fincat"}, "opposite");
        const Json j = io::read_json(file(0));
        if (j.is_object() && j.contains("obj_map"))
            emit(io::functor_to_json(opposite(functor(0))));
        else
            emit(io::category_to_json(*opposite(category(0))));
        return 0;
    }

    template <class Obj, class Map, class MapJson, class ObjJson>
    int factorize_with(const BfcInstance<Obj, Map>& b, const Map& f, MapJson map_json, ObjJson obj_json) const {
        if (o_.out_dir.empty()) throw InputError("--out-dir: required");
        const auto r = system() == System::Left ? b.factor_left(f) : b.factor_right(f);
        fs::create_directories(o_.out_dir);
        const fs::path dir(o_.out_dir);
        io::write_atomic(dir / "e.json", io::dump(map_json(r.e)));
        io::write_atomic(dir / "m.json", io::dump(map_json(r.m)));
        io::write_atomic(dir / "composite.json", io::dump(map_json(b.compose(r.m, r.e))));
        io::write_atomic(dir / "mid.json", io::dump(obj_json(r.mid)));
        const bool e_ok = system() == System::Left ? b.in_E(r.e) : b.in_E2(r.e);
        const bool m_ok = system() == System::Left ? b.in_M(r.m) : b.in_M2(r.m);
        Json summary{{"instance", o_.instance},
                     {"system", o_.system},
                     {"files", {"e.json", "m.json", "composite.json", "mid.json"}},
                     {"composes", b.equal(b.compose(r.m, r.e), f)},
                     {"e_in_class", e_ok},
                     {"m_in_class", m_ok}};
        emit(summary);
        return 0;
    }

    int factorize_cmd() const {
        require_instance({"fincat", "pos", "finset", "discrete", "codiscrete"}, "factorize");
        auto fj = [](const Functor& f) { return io::functor_to_json(f); };
        auto cj = [](const CategoryPtr& c) { return io::category_to_json(*c); };
        auto mj = [](const MonotoneMap& f) { return io::monotone_to_json(f); };
        auto pj = [](const PosetPtr& p) { return io::poset_to_json(*p); };
        if (o_.instance == "pos") return factorize_with(pos_bfc(), monotone(0), mj, pj);
        if (o_.instance == "finset") return factorize_with(finset_bfc(), monotone(0), mj, pj);
        const FinCatBfc cat = fincat_bfc();
        if (o_.instance == "discrete") return factorize_with(make_discrete_bfc(cat), functor(0), fj, cj);
        if (o_.instance == "codiscrete") return factorize_with(make_codiscrete_bfc(cat), functor(0), fj, cj);
        return factorize_with(cat, functor(0), fj, cj);
    }

    int reflect_cmd() const {
        require_instance({"fincat"}, "reflect");
        const Functor q = functor(0);
        if (system() == System::Left)
            emit(io::presheaf_to_json(reflect_df(q)));
        else
            emit(io::copresheaf_to_json(reflect_dof(q)));
        return 0;
    }

    template <class Obj, class Map>
    static std::optional<Verdict> class_predicate(const BfcInstance<Obj, Map>& b, const std::string& pred,
                                                  const Map& f) {
        auto v = [&](bool holds, const std::string& what) {
            return holds ? Verdict::yes() : Verdict::no("map is not " + what + " in the " + b.name + " instance");
        };
        if (pred == "final") return v(b.in_E(f), "final");
        if (pred == "df") return v(b.in_M(f), "a discrete fibration");
        if (pred == "initial") return v(b.in_E2(f), "initial");
        if (pred == "dof") return v(b.in_M2(f), "a discrete opfibration");
        return std::nullopt;
    }

    Verdict check_fincat(const std::string& pred) const {
        if (pred == "codiscrete") return is_codiscrete(category(0));
        if (pred == "groupoidal") return is_groupoidal(category(0));
        const Functor f = functor(0);
        if (pred == "final") return is_final(f);
        if (pred == "initial") return is_initial(f);
        if (pred == "df") return is_discrete_fibration(f);
        if (pred == "dof") return is_discrete_opfibration(f);
        const SliceCache target = slice_cache(f.cod);
        if (pred == "dense") return is_dense(f, target);
        if (pred == "adjunctible") {
            if (!o_.object.empty()) return is_adjunctible_at(f, target, object_named(*f.cod, o_.object, "--object"));
            return is_adjunctible(f, target);
        }
        const SliceCache source = slice_cache(f.dom);
        if (!o_.object.empty())
            return is_fully_faithful_at(f, source, target, object_named(*f.dom, o_.object, "--object"));
        for (ObjId x = 0; x < f.dom->num_objects(); ++x)
            if (auto v = is_fully_faithful_at(f, source, target, x); !v) return v;
        return Verdict::yes();
    }

    Verdict check_pos(const std::string& pred) const {
        if (pred == "codiscrete") return is_codiscrete(thin_category(*poset(0)));
        if (pred == "groupoidal") return is_groupoidal(thin_category(*poset(0)));
        const MonotoneMap f = monotone(0);
        if (auto v = class_predicate(pos_bfc(), pred, f)) return *v;
        if (pred == "dense")
            return pos_is_dense(f) ? Verdict::yes() : Verdict::no("some f/y is not cofinal in the principal lower set");
        if (pred == "adjunctible")
            return pos_upper_adjoint(f) ? Verdict::yes() : Verdict::no("some {x : f x <= y} has no maximum");
        for (int a = 0; a < f.dom->size(); ++a)
            for (int b = 0; b < f.dom->size(); ++b)
                if (f.cod->leq(f(a), f(b)) && !f.dom->leq(a, b))
                    return Verdict::no("f '" + f.dom->name(a) + "' <= f '" + f.dom->name(b) + "' but not '" +
                                       f.dom->name(a) + "' <= '" + f.dom->name(b) + "'");
        return Verdict::yes();
    }

    int check_cmd() const {
        const std::string& pred = o_.predicate;
        if (o_.instance == "fincat") return verdict(pred, check_fincat(pred));
        if (o_.instance == "pos") return verdict(pred, check_pos(pred));
        if (o_.instance == "finset") {
            const MonotoneMap f = monotone(0);
            if (auto v = class_predicate(finset_bfc(), pred, f)) return verdict(pred, *v);
        } else if (o_.instance == "discrete" || o_.instance == "codiscrete") {
            const FinCatBfc cat = fincat_bfc();
            const auto b = o_.instance == "discrete" ? make_discrete_bfc(cat) : make_codiscrete_bfc(cat);
            if (auto v = class_predicate(b, pred, functor(0))) return verdict(pred, *v);
        }
        throw InputError("--instance: predicate '" + pred + "' is not available for instance '" + o_.instance + "'");
    }

    int homset_cmd() const {
        require_instance({"fincat", "pos", "finset", "graph", "discrete", "codiscrete"}, "homset");
        if (o_.instance == "graph") return paths_cmd();
        if (o_.instance == "pos" || o_.instance == "finset") {
            const auto p = poset(0);
            const int x = element_named(*p, o_.from, "--from");
            const int y = element_named(*p, o_.to, "--to");
            const PosBfc b = o_.instance == "pos" ? pos_bfc() : finset_bfc();
            const PosetPtr one = chain_poset(1);
            const int n = bfc_hom_size(b, MonotoneMap{one, p, {x}}, MonotoneMap{one, p, {y}});
            emit({{"x", p->name(x)}, {"y", p->name(y)}, {"size", n}});
            return 0;
        }
        const auto X = category(0);
        const ObjId x = object_named(*X, o_.from, "--from");
        const ObjId y = object_named(*X, o_.to, "--to");
        if (o_.instance != "fincat") {
            const FinCatBfc cat = fincat_bfc();
            const auto b = o_.instance == "discrete" ? make_discrete_bfc(cat) : make_codiscrete_bfc(cat);
            emit({{"x", X->object_name(x)}, {"y", X->object_name(y)}, {"size", bfc_hom_size(b, point(X, x), point(X, y))}});
            return 0;
        }
        emit(io::hom_interval_to_json(hom_interval(X, x, y), *X));
        return 0;
    }

    int interval_cmd() const {
        require_instance({"fincat"}, "interval");
        const auto X = category(0);
        const HomInterval h = hom_interval(X, object_named(*X, o_.from, "--from"), object_named(*X, o_.to, "--to"));
        if (!o_.out_dir.empty()) {
            fs::create_directories(o_.out_dir);
            const fs::path dir(o_.out_dir);
            io::write_atomic(dir / "initial.json", io::dump(io::functor_to_json(h.initial_inclusion())));
            io::write_atomic(dir / "final.json", io::dump(io::functor_to_json(h.final_inclusion())));
            io::write_atomic(dir / "reflection.json", io::dump(io::functor_to_json(h.reflection())));
        }
        emit(io::category_to_json(*h.apex()));
        return 0;
    }

    int compose_enriched_cmd() const {
        require_instance({"fincat"}, "compose-enriched");
        emit(io::category_to_json(*io::enriched_category(enriched_structure(category(0)))));
        return 0;
    }

    int underlying_cmd() const {
        require_instance({"fincat", "graph"}, "underlying");
        if (o_.instance == "graph") {
            emit(io::category_to_json(*free_category(graph(0))));
            return 0;
        }
        const auto X = category(0);
        const Underlying u = o_.side == "right" ? right_underlying_category(X) : underlying_category(X);
        emit(io::category_to_json(*u.category));
        return 0;
    }

    int arrow_map_cmd() const {
        require_instance({"fincat"}, "arrow-map");
        const Functor f = functor(0);
        const ObjId x = object_named(*f.dom, o_.object, "--object");
        const bool co = o_.side == "right";
        const Slice source = co ? coslice(f.dom, x) : slice(f.dom, x);
        const Slice target = co ? coslice(f.cod, f.obj(x)) : slice(f.cod, f.obj(x));
        emit(io::functor_to_json(arrow_map(f, source, target)));
        return 0;
    }

    int adjoint_cmd() const {
        require_instance({"fincat", "pos"}, "adjoint");
        if (o_.instance == "pos") {
            const MonotoneMap f = monotone(0);
            const auto g = pos_upper_adjoint(f);
            if (!g) return verdict("adjunctible", Verdict::no("some {x : f x <= y} has no maximum"));
            emit(io::monotone_to_json(MonotoneMap{f.cod, f.dom, *g}));
            return 0;
        }
        const Functor f = functor(0);
        const Underlying ux = underlying_category(f.dom);
        const Underlying uy = underlying_category(f.cod);
        if (auto v = is_adjunctible(f, uy.cache); !v) return verdict("adjunctible", v);
        const RightAdjoint adj = right_adjoint_underlying(f, ux, uy);
        if (auto v = check_adjunction(f, ux, uy, adj); !v) return verdict("adjunction", v);
        Json unit = Json::object(), counit = Json::object();
        for (ObjId x = 0; x < ux.category->num_objects(); ++x)
            unit[ux.category->object_name(x)] = ux.category->morphism_name(adj.unit[x]);
        for (ObjId y = 0; y < uy.category->num_objects(); ++y)
            counit[uy.category->object_name(y)] = uy.category->morphism_name(adj.counit[y]);
        emit({{"left_adjoint", io::functor_to_json(adj.f_bar)},
              {"right_adjoint", io::functor_to_json(adj.g_bar)},
              {"unit", unit},
              {"counit", counit}});
        return 0;
    }

    int tensor_cmd() const {
        require_instance({"fincat"}, "tensor");
        const Functor p = functor(0);
        const Functor q = functor(1);
        if (!same_category(p.cod, q.cod)) throw InputError(file(1) + ": cod differs from the cod of " + file(0));
        emit(io::quotient_to_json(tensor(p, q)));
        return 0;
    }

    int complement_cmd() const {
        require_instance({"fincat", "pos"}, "complement");
        if (o_.size < 0) throw InputError("--size: must be non-negative");
        if (o_.instance == "pos") {
            const auto p = poset(0);
            const auto lower = elements_named(*p, o_.subset, "--subset");
            if (!is_lower_set(*p, lower)) throw InputError("--subset: not a lower set");
            Json names = Json::array();
            for (int a : pos_complement(*p, lower, o_.size)) names.push_back(p->name(a));
            emit({{"elements", names}});
            return 0;
        }
        emit(io::copresheaf_to_json(complement(presheaf(0), o_.size)));
        return 0;
    }

    int module_action_cmd() const {
        require_instance({"fincat"}, "module-action");
        const Presheaf m = presheaf(0);
        const EnrichedStructure es = enriched_structure(m.base);
        const ModuleAction a = module_action(m, es);
        const auto& X = *m.base;
        Json rows = Json::array();
        for (ObjId x = 0; x < X.num_objects(); ++x)
            for (ObjId y = 0; y < X.num_objects(); ++y) {
                const HomInterval& h = es.hom(x, y);
                for (int alpha = 0; alpha < h.size(); ++alpha) {
                    const MorId arrow = es.cache.slices[y].comma.tags[h.left_arrow[alpha]].connecting;
                    Json table = Json::object();
                    for (int s = 0; s < m.fiber_size(y); ++s) table[m.fiber[y][s]] = m.fiber[x][a.apply(x, y, alpha, s)];
                    rows.push_back({{"x", X.object_name(x)}, {"y", X.object_name(y)}, {"arrow", X.morphism_name(arrow)},
                                    {"action", table}});
                }
            }
        emit({{"actions", rows}});
        return 0;
    }

    int paths_cmd() const {
        const Graph g = graph(0);
        const int x = node_named(g, o_.from, "--from");
        const int y = node_named(g, o_.to, "--to");
        Json names = Json::array();
        for (const auto& path : graph_paths(g, x, y)) {
            if (path.empty()) {
                names.push_back(identity_id(g.nodes[x]));
                continue;
            }
            std::string name;
            for (int e : path) name += (name.empty() ? "" : ".") + g.edges[e].id;
            names.push_back(name);
        }
        emit({{"x", g.nodes[x]}, {"y", g.nodes[y]}, {"size", names.size()}, {"elements", names}});
        return 0;
    }

    // Cone files: {diagram: functor, apex: object, components: {object of the
    // diagram's domain: morphism into apex}}.
    struct LoadedCone {
        Functor p;
        ObjId apex;
        std::vector<MorId> components;
    };

    LoadedCone load_cone(std::size_t k) const {
        return load<LoadedCone>(k, [](const Json& j, const fs::path& dir) {
            if (!j.is_object()) throw ValidationError({"cone must be a JSON object"});
            for (const auto& [key, v] : j.items())
                if (key != "diagram" && key != "apex" && key != "components")
                    throw ValidationError({"cone: unknown field '" + key + "'"});
            for (const char* key : {"diagram", "apex", "components"})
                if (!j.contains(key)) throw ValidationError({"cone: missing field '" + std::string(key) + "'"});
            const Json& d = j.at("diagram");
            Functor p = d.is_string() ? io::functor_from_json(io::read_json(dir / d.get<std::string>()),
                                                              (dir / d.get<std::string>()).parent_path())
                                      : io::functor_from_json(d, dir);
            const auto apex = p.cod->find_object(j.at("apex").get<std::string>());
            if (!apex) throw ValidationError({"apex: unknown object '" + j.at("apex").get<std::string>() + "'"});
            std::vector<MorId> comps(p.dom->num_objects(), kNone);
            for (const auto& [obj, mor] : j.at("components").items()) {
                const auto o = p.dom->find_object(obj);
                if (!o) throw ValidationError({"components: unknown object '" + obj + "'"});
                const auto u = p.cod->find_morphism(mor.get<std::string>());
                if (!u) throw ValidationError({"components." + obj + ": unknown morphism '" + mor.get<std::string>() + "'"});
                if (p.cod->src(*u) != p.obj(*o) || p.cod->tgt(*u) != *apex)
                    throw ValidationError({"components." + obj + ": morphism does not go from p(" + obj + ") to the apex"});
                comps[*o] = *u;
            }
            for (ObjId o = 0; o < p.dom->num_objects(); ++o)
                if (comps[o] == kNone)
                    throw ValidationError({"components: missing object '" + p.dom->object_name(o) + "'"});
            return LoadedCone{std::move(p), *apex, std::move(comps)};
        });
    }

    // Builds the leg into X/apex, or explains which naturality square fails.
    static std::optional<Cone> assemble_cone(const LoadedCone& c, const Slice& s, std::string& why) {
        const auto& S = *s.category();
        Functor leg{c.p.dom, s.category(), std::vector<ObjId>(c.p.dom->num_objects(), kNone),
                    std::vector<MorId>(c.p.dom->num_morphisms(), kNone)};
        for (ObjId o = 0; o < c.p.dom->num_objects(); ++o)
            for (ObjId t = 0; t < S.num_objects(); ++t)
                if (s.comma.tags[t].connecting == c.components[o]) leg.obj_map[o] = t;
        for (MorId u = 0; u < c.p.dom->num_morphisms(); ++u) {
            const ObjId a = leg.obj(c.p.dom->src(u)), b = leg.obj(c.p.dom->tgt(u));
            for (MorId v : S.hom(a, b))
                if (s.projection().mor(v) == c.p.mor(u)) leg.mor_map[u] = v;
            if (leg.mor_map[u] == kNone) {
                why = "components do not commute along '" + c.p.dom->morphism_name(u) + "'";
                return std::nullopt;
            }
        }
        return Cone{c.p, c.apex, std::move(leg)};
    }

    int cone_check_cmd() const {
        require_instance({"fincat", "pos"}, "cone check");
        if (o_.instance == "pos") {
            const auto p = poset(0);
            const auto subset = elements_named(*p, o_.subset, "--subset");
            const int apex = element_named(*p, o_.object, "--object");
            bool is_cone = true;
            for (int a : subset) is_cone = is_cone && p->leq(a, apex);
            if (!is_cone) return verdict("cone", Verdict::no("some element of the subset is not below the apex"));
            const bool holds = o_.property == "absolute" ? pos_is_absolute(*p, subset, apex)
                             : o_.property == "cone"     ? true
                                                         : pos_is_colimiting(*p, subset, apex);
            return verdict(o_.property, holds ? Verdict::yes() : Verdict::no("apex is not the " +
                                                                            std::string(o_.property == "absolute" ? "maximum" : "supremum") +
                                                                            " of the subset"));
        }
        const LoadedCone loaded = load_cone(0);
        const SliceCache cache = slice_cache(loaded.p.cod);
        std::string why;
        const auto cone = assemble_cone(loaded, cache.slices[loaded.apex], why);
        if (!cone) return verdict("cone", Verdict::no(why));
        if (o_.property == "cone") return verdict("cone", is_cone(*cone, cache));
        if (o_.property == "absolute")
            return verdict("absolute", is_absolute(*cone) ? Verdict::yes() : Verdict::no("cone is not absolute"));
        return verdict("colimiting", is_colimiting(*cone, cache));
    }

    // ---- law suite

    laws::GeneratorConfig config() const {
        laws::GeneratorConfig c;
        c.seed = o_.seed;
        c.count = o_.count;
        c.max_objects = o_.max_objects;
        c.max_morphisms = o_.max_morphisms;
        if (!o_.families.empty()) c.families = split_list(o_.families);
        try {
            laws::validate_config(c);
        } catch (const std::invalid_argument& e) {
            throw InputError(std::string("generator options: ") + e.what());
        }
        return c;
    }

    std::vector<std::string> suite_ids() const {
        std::vector<std::string> ids;
        if (o_.suite == "all") {
            for (const auto& info : laws::catalog()) ids.push_back(info.id);
            return ids;
        }
        for (const auto& id : split_list(o_.suite)) {
            try {
                laws::law_info(id);
            } catch (const std::invalid_argument& e) {
                throw InputError(std::string("--suite: ") + e.what());
            }
            ids.push_back(id);
        }
        if (ids.empty()) throw InputError("--suite: no law ids given");
        return ids;
    }

    int laws_run_cmd() const {
        const auto cfg = config();
        const auto ids = suite_ids();
        std::vector<laws::LawReport> reports;
        for (const auto& id : ids) {
            const auto start = std::chrono::steady_clock::now();
            auto part = laws::run_law(id, cfg);
            if (o_.timings) {
                const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
                err_ << id << ": " << dt.count() << " s\n";
            }
            for (auto& r : part) reports.push_back(std::move(r));
        }
        emit(laws::suite_document(cfg, reports));
        (o_.out.empty() ? err_ : out_) << laws::summary_table(reports);
        return laws::suite_passed(reports) ? 0 : 1;
    }

    int laws_replay_cmd() const {
        const Json doc = io::read_json(file(0));
        std::vector<Json> records;
        if (doc.is_object() && doc.contains("records")) {
            for (const auto& r : doc.at("records")) records.push_back(r);
        } else if (doc.is_object()) {
            records.push_back(doc);
        } else {
            throw InputError(file(0) + ": expected a report document or a single record");
        }
        Json replayed = Json::array();
        bool failing = false;
        for (const auto& r : records) {
            if (!o_.law.empty() && r.value("law", "") != o_.law) continue;
            if (o_.index >= 0 && r.value("instance_index", -1) != o_.index) continue;
            if (!r.contains("witness") || r.at("witness").is_null()) continue;
            laws::LawReport again;
            try {
                again = laws::replay(r);
            } catch (const std::exception& e) {
                throw InputError(file(0) + ": record cannot be replayed: " + e.what());
            }
            failing = failing || (!again.experiment && again.outcome == laws::Outcome::Fails);
            replayed.push_back(laws::report_to_json(again));
        }
        emit({{"replayed", replayed.size()}, {"records", replayed}});
        return failing ? 1 : 0;
    }

    int laws_list_cmd() const {
        Json rows = Json::array();
        for (const auto& info : laws::catalog())
            rows.push_back({{"law", info.id}, {"statement", info.statement},
                            {"kind", info.experiment ? "experiment" : "law"}});
        emit(rows);
        return 0;
    }

  private:
    Options& o_;
    std::ostream& out_;
    std::ostream& err_;
};

const std::vector<std::string> kInstances{"fincat", "pos", "finset", "graph", "discrete", "codiscrete"};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    Runner r(o, out, err);
    CLI::App app{"Balanced factorization calculus on finite categories, posets and graphs", "balcat"};
    app.require_subcommand(1);
    std::function<int()> action;

    auto command = [&](CLI::App* parent, const std::string& name, const std::string& help, std::function<int()> f,
                       int files) {
        CLI::App* s = parent->add_subcommand(name, help);
        s->add_option("--instance", o.instance, "Backend: fincat, pos, finset, graph, discrete or codiscrete")
            ->check(CLI::IsMember(kInstances));
        s->add_option("-o,--out", o.out, "Write the result here (atomically) instead of stdout");
        if (files > 0) s->add_option("files", o.files, "Input files")->expected(files)->required();
        s->callback([&action, f] { action = f; });
        return s;
    };

    CLI::App* validate = command(&app, "validate", "Parse and validate an input file", [&] { return r.validate(); }, 1);
    validate->add_option("--kind", o.kind, "category, functor, poset, monotone, graph, presheaf, cone or auto");
    command(&app, "pi0", "Connected components", [&] { return r.pi0_cmd(); }, 1);
    for (bool co : {false, true}) {
        auto* s = command(&app, co ? "coslice" : "slice", co ? "Coslice x\\X" : "Slice X/x",
                          [&r, co] { return r.slice_cmd(co); }, 1);
        s->add_option("--object", o.object, "Base object")->required();
        s->add_option("--out-dir", o.out_dir, "Also write the projection functor here");
    }
    command(&app, "comma", "Comma category of two functors", [&] { return r.comma_cmd(); }, 2)
        ->add_option("--out-dir", o.out_dir, "Also write the projections here");
    command(&app, "pullback", "Pullback of two maps with a common codomain", [&] { return r.pullback_cmd(); }, 2)
        ->add_option("--out-dir", o.out_dir, "Also write the projections here");
    command(&app, "product-over", "Product of two objects over their common base", [&] { return r.product_over_cmd(); }, 2)
        ->add_option("--out-dir", o.out_dir, "Also write the structure map and projections here");
    command(&app, "opposite", "Opposite of a category or functor", [&] { return r.opposite_cmd(); }, 1);
    auto* fac = command(&app, "factorize", "Comprehensive factorization of a map", [&] { return r.factorize_cmd(); }, 1);
    fac->add_option("--system", o.system, "left (final, discrete fibration) or right (initial, discrete opfibration)")
        ->check(CLI::IsMember({"left", "right"}));
    fac->add_option("--out-dir", o.out_dir, "Directory for e.json, m.json, composite.json and mid.json")->required();
    command(&app, "reflect", "Reflection of a map into discrete (op)fibrations, as a presheaf file",
            [&] { return r.reflect_cmd(); }, 1)
        ->add_option("--system", o.system, "left or right")
        ->check(CLI::IsMember({"left", "right"}));
    auto* check = command(&app, "check", "Evaluate a predicate on a map or category", [&] { return r.check_cmd(); }, 0);
    check->add_option("predicate", o.predicate, "Predicate")
        ->required()
        ->check(CLI::IsMember({"final", "initial", "df", "dof", "dense", "adjunctible", "fully-faithful", "codiscrete",
                               "groupoidal"}));
    check->add_option("file", o.files, "Input file")->expected(1)->required();
    check->add_option("--object", o.object, "Restrict to one object where the predicate is pointwise");
    for (const char* name : {"homset", "interval"}) {
        auto* s = command(&app, name,
                          std::string(name) == "homset" ? "Internal hom-set X(x,y)" : "The cylinder [x,y] as a category",
                          std::string(name) == "homset" ? std::function<int()>([&] { return r.homset_cmd(); })
                                                        : std::function<int()>([&] { return r.interval_cmd(); }),
                          1);
        s->add_option("--from", o.from, "Source point")->required();
        s->add_option("--to", o.to, "Target point")->required();
        if (std::string(name) == "interval") s->add_option("--out-dir", o.out_dir, "Also write i, e and c here");
    }
    command(&app, "compose-enriched", "Enriched composition table as a category file",
            [&] { return r.compose_enriched_cmd(); }, 1);
    command(&app, "underlying", "Underlying category", [&] { return r.underlying_cmd(); }, 1)
        ->add_option("--side", o.side, "left or right")
        ->check(CLI::IsMember({"left", "right"}));
    auto* am = command(&app, "arrow-map", "Induced map of slices X/x -> Y/fx", [&] { return r.arrow_map_cmd(); }, 1);
    am->add_option("--object", o.object, "Object x")->required();
    am->add_option("--side", o.side, "left (slices) or right (coslices)")->check(CLI::IsMember({"left", "right"}));
    command(&app, "adjoint", "Right adjoint of an adjunctible map between underlying categories",
            [&] { return r.adjoint_cmd(); }, 1);
    command(&app, "tensor", "Tensor of two maps into a common base", [&] { return r.tensor_cmd(); }, 2);
    auto* comp = command(&app, "complement", "Complement of a discrete fibration valued in a finite set",
                         [&] { return r.complement_cmd(); }, 1);
    comp->add_option("--size", o.size, "Size of the value set");
    comp->add_option("--subset", o.subset, "Lower set (comma-separated) for the pos instance");
    command(&app, "module-action", "Enriched action on the fibers of a presheaf", [&] { return r.module_action_cmd(); }, 1);
    auto* paths = command(&app, "paths", "Paths between two nodes of an acyclic graph", [&] {
        if (o.instance != "graph" && o.instance != "fincat")
            throw InputError("--instance: command 'paths' needs the graph instance");
        return r.paths_cmd();
    }, 1);
    paths->add_option("--from", o.from, "Source node")->required();
    paths->add_option("--to", o.to, "Target node")->required();

    CLI::App* cone = app.add_subcommand("cone", "Cone predicates");
    cone->require_subcommand(1);
    auto* cc = command(cone, "check", "Check a cone file", [&] { return r.cone_check_cmd(); }, 1);
    cc->add_option("--property", o.property, "cone, colimiting or absolute")
        ->check(CLI::IsMember({"cone", "colimiting", "absolute"}));
    cc->add_option("--subset", o.subset, "Subset (comma-separated) for the pos instance");
    cc->add_option("--object", o.object, "Apex for the pos instance");

    CLI::App* lawsc = app.add_subcommand("laws", "Property-based law suite");
    lawsc->require_subcommand(1);
    auto* run_sub = command(lawsc, "run", "Run laws on generated instances", [&] { return r.laws_run_cmd(); }, 0);
    run_sub->add_option("--suite", o.suite, "Comma-separated law ids, or all");
    run_sub->add_option("--seed", o.seed, "Generator seed");
    run_sub->add_option("--count", o.count, "Number of generated instances");
    run_sub->add_option("--max-objects", o.max_objects, "Object bound for generated categories");
    run_sub->add_option("--max-morphisms", o.max_morphisms, "Morphism bound for generated categories");
    run_sub->add_option("--families", o.families, "Comma-separated instance families");
    run_sub->add_flag("--timings", o.timings, "Print per-law running times to stderr");
    auto* replay = command(lawsc, "replay", "Re-run the failing records of a report", [&] { return r.laws_replay_cmd(); }, 1);
    replay->add_option("--law", o.law, "Only records of this law");
    replay->add_option("--index", o.index, "Only records of this instance index");
    command(lawsc, "list", "List law ids and statements", [&] { return r.laws_list_cmd(); }, 0);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    try {
        return action();
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const ValidationError& e) {
        err << "error: invalid input:";
        for (const auto& issue : e.issues()) err << "\n  " << issue;
        err << "\n";
    } catch (const SizeGuardError& e) {
        err << "error: size guard: " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
    } catch (const Json::exception& e) {
        err << "error: malformed input: " << e.what() << "\n";
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
    }
    return 2;
}

int main_entry(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace balcat::cli
