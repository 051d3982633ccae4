#include "balcat/laws.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "balcat/calculus.hpp"
#include "balcat/factorization.hpp"
#include "balcat/io.hpp"
#include "balcat/search.hpp"

namespace balcat::laws {

// ---------------------------------------------------------------------------
// Randomness and generators

std::mt19937_64 engine_for(std::uint64_t seed, std::string_view stream) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : stream) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
    return std::mt19937_64(seq);
}

std::size_t draw(std::mt19937_64& rng, std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng() % n); }

void validate_config(const GeneratorConfig& config) {
    if (config.max_objects <= 0 || config.max_morphisms <= 0 || config.count <= 0)
        throw std::invalid_argument("generator bounds must be positive");
    if (config.families.empty()) throw std::invalid_argument("no instance families selected");
    for (const auto& f : config.families)
        if (std::find(all_families().begin(), all_families().end(), f) == all_families().end())
            throw std::invalid_argument("unknown instance family '" + f + "'");
}

CategoryPtr cyclic_group_category(int n) {
    if (n < 1) throw std::invalid_argument("cyclic group order must be positive");
    std::vector<Morphism> morphisms{{identity_id("*"), 0, 0}};
    for (int k = 1; k < n; ++k) morphisms.push_back({k == 1 ? "g" : "g" + std::to_string(k), 0, 0});
    return tabulate_category({"*"}, morphisms, {0}, [n](MorId g, MorId f) { return (g + f) % n; });
}

PosetPtr random_poset(std::mt19937_64& rng, int max_objects, int max_morphisms) {
    const int n = 1 + static_cast<int>(draw(rng, static_cast<std::size_t>(max_objects)));
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
    for (int attempt = 0; attempt < 20; ++attempt) {
        std::vector<std::pair<std::string, std::string>> pairs;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (draw(rng, 100) < 40) pairs.emplace_back(names[i], names[j]);
        auto p = std::make_shared<const Poset>(names, pairs);
        int relations = 0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) relations += p->leq(a, b);
        if (relations <= max_morphisms) return p;
    }
    return discrete_poset(names);
}

CategoryPtr random_dag_category(std::mt19937_64& rng, int max_objects, int max_morphisms) {
    const int n = 1 + static_cast<int>(draw(rng, static_cast<std::size_t>(max_objects)));
    for (int attempt = 0; attempt < 20; ++attempt) {
        Graph g;
        for (int i = 0; i < n; ++i) g.nodes.push_back(std::string(1, static_cast<char>('a' + i)));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                if (draw(rng, 100) >= 35) continue;
                g.edges.push_back({"e" + std::to_string(g.edges.size()), i, j});
                if (draw(rng, 100) < 10) g.edges.push_back({"e" + std::to_string(g.edges.size()), i, j});
            }
        auto c = free_category(g);
        if (c->num_morphisms() <= max_morphisms) return c;
    }
    return nullptr;
}

CategoryPtr interval_power(int k) {
    CategoryPtr c = interval_category();
    for (int i = 1; i < k; ++i) c = product(c, interval_category());
    return c;
}

namespace {

std::vector<CategoryPtr> small_factors() {
    return {terminal_category(), interval_category(), cyclic_group_category(2), discrete_category({"a", "b"}),
            thin_category(*chain_poset(3))};
}

std::string describe(const std::string& family, int index, const CategoryPtr& c) {
    return family + "#" + std::to_string(index) + " [" + std::to_string(c->num_objects()) + " objects, " +
           std::to_string(c->num_morphisms()) + " morphisms]";
}

bool fits(const CategoryPtr& c, const GeneratorConfig& cfg) {
    return c && c->num_objects() <= cfg.max_objects && c->num_morphisms() <= cfg.max_morphisms;
}

Instance generate_one(const GeneratorConfig& cfg, const std::string& family, int index) {
    auto rng = engine_for(cfg.seed, family + "#" + std::to_string(index));
    Instance inst{family, "", nullptr, nullptr};
    if (family == "random-poset") {
        inst.poset = random_poset(rng, cfg.max_objects, cfg.max_morphisms);
        inst.category = thin_category(*inst.poset);
    } else if (family == "dag-free-category") {
        inst.category = random_dag_category(rng, cfg.max_objects, cfg.max_morphisms);
    } else if (family == "cyclic-group-category") {
        const int top = std::max(1, std::min(4, cfg.max_morphisms));
        inst.category = cyclic_group_category(1 + static_cast<int>(draw(rng, static_cast<std::size_t>(top))));
    } else if (family == "product" || family == "coproduct") {
        const auto factors = small_factors();
        for (int attempt = 0; attempt < 20 && !fits(inst.category, cfg); ++attempt) {
            const auto& a = factors[draw(rng, factors.size())];
            const auto& b = factors[draw(rng, factors.size())];
            inst.category = family == "product" ? product(a, b) : coproduct(a, b);
        }
    } else if (family == "interval-power") {
        int k = 1 + static_cast<int>(draw(rng, 2));
        while (k > 1 && !fits(interval_power(k), cfg)) --k;
        inst.category = interval_power(k);
    }
    if (!fits(inst.category, cfg)) {
        inst.poset = nullptr;
        inst.category = terminal_category();
    }
    inst.descriptor = describe(family, index, inst.category);
    return inst;
}

}  // namespace

std::vector<Instance> generate(const GeneratorConfig& config) {
    validate_config(config);
    std::vector<Instance> out;
    for (int i = 0; i < config.count; ++i)
        out.push_back(generate_one(config, config.families[i % config.families.size()], i));
    return out;
}

std::vector<Functor> sample_functors(const CategoryPtr& dom, const CategoryPtr& cod, std::mt19937_64& rng,
                                     std::size_t limit, std::size_t pool) {
    std::vector<Functor> all;
    FunctorConstraints c;
    c.node_budget = 200'000;
    try {
        for_each_functor(dom, cod, c, [&](const Functor& f) {
            all.push_back(f);
            return all.size() < pool;
        });
    } catch (const SizeGuardError&) {
    }
    if (all.size() <= limit) return all;
    std::vector<std::size_t> idx(all.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    for (std::size_t i = 0; i < limit; ++i) std::swap(idx[i], idx[i + draw(rng, idx.size() - i)]);
    idx.resize(limit);
    std::sort(idx.begin(), idx.end());
    std::vector<Functor> out;
    for (std::size_t i : idx) out.push_back(all[i]);
    return out;
}

// ---------------------------------------------------------------------------
// Law bodies

namespace {

struct Ctx {
    const Instance& x;
    const Instance& partner;
    std::mt19937_64 rng;
    Json obs = Json::object();

    const CategoryPtr& X() const { return x.category; }
};

using Check = std::function<Verdict(Ctx&)>;

std::vector<CategoryPtr> probes(const Ctx& c) {
    return {terminal_category(), interval_category(), discrete_category({"p", "q"}), c.partner.category};
}

std::vector<Functor> maps_into(Ctx& c, std::size_t per_probe) {
    std::vector<Functor> out{identity_functor(c.X())};
    for (const auto& a : probes(c))
        for (auto& f : sample_functors(a, c.X(), c.rng, per_probe)) out.push_back(std::move(f));
    return out;
}

std::vector<Functor> maps_out(Ctx& c, std::size_t per_target) {
    std::vector<Functor> out{identity_functor(c.X())};
    for (const auto& y : {terminal_category(), interval_category(), c.X(), c.partner.category})
        for (auto& f : sample_functors(c.X(), y, c.rng, per_target)) out.push_back(std::move(f));
    return out;
}

template <class T>
std::vector<T> take(std::vector<T> v, std::size_t n, std::mt19937_64& rng) {
    while (v.size() > n) v.erase(v.begin() + static_cast<std::ptrdiff_t>(draw(rng, v.size())));
    return v;
}

bool same_maps(const Functor& a, const Functor& b) { return a.obj_map == b.obj_map && a.mor_map == b.mor_map; }

std::string name_of(const FiniteCategory& x, ObjId o) { return "'" + x.object_name(o) + "'"; }

Json functor_witness(const Functor& f) { return io::functor_to_json(f); }

Verdict fail_with(Ctx& c, const std::string& why, const Json& data = nullptr) {
    if (!data.is_null()) c.obs["failing_data"] = data;
    return Verdict::no(why);
}

// Small cone diagrams: points, the interval, a two-point set and the identity.
std::vector<Functor> cone_diagrams(Ctx& c) {
    std::vector<Functor> out{identity_functor(c.X())};
    for (const auto& a : {terminal_category(), interval_category(), discrete_category({"p", "q"})})
        for (auto& f : sample_functors(a, c.X(), c.rng, 2)) out.push_back(std::move(f));
    return take(out, 4, c.rng);
}

std::vector<Cone> sample_cones(Ctx& c, const SliceCache& cache, std::size_t per_diagram) {
    std::vector<Cone> out;
    for (const auto& p : cone_diagrams(c)) {
        std::vector<Cone> here;
        for (ObjId y = 0; y < c.X()->num_objects(); ++y)
            for (auto& k : cones(p, y, cache)) here.push_back(std::move(k));
        for (auto& k : take(here, per_diagram, c.rng)) out.push_back(std::move(k));
    }
    return out;
}

FunctorConstraints over(const Functor& p, const Functor& q) {
    FunctorConstraints k;
    k.allow_object = [&p, &q](ObjId a, ObjId b) { return q.obj(b) == p.obj(a); };
    k.allow_morphism = [&p, &q](MorId u, MorId v) { return q.mor(v) == p.mor(u); };
    return k;
}

// ---- factorization laws

Verdict law_bfc_axioms(Ctx& c) {
    auto samples = maps_into(c, 2);
    for (auto& f : maps_out(c, 2)) samples.push_back(std::move(f));
    samples = take(samples, 8, c.rng);
    const FinCatBfc cat = fincat_bfc();
    for (const auto& b : {cat, make_discrete_bfc(cat), make_codiscrete_bfc(cat)})
        if (auto v = check_bfc_laws(b, samples); !v) return v;
    int backends = 3;
    if (c.x.poset) {
        std::vector<MonotoneMap> mono;
        for (const auto& a : {chain_poset(1), chain_poset(2), discrete_poset({"p", "q"}), c.x.poset}) {
            const CategoryPtr ta = thin_category(*a);
            for (const auto& f : sample_functors(ta, c.X(), c.rng, 3)) mono.push_back(MonotoneMap{a, c.x.poset, f.obj_map});
        }
        const PosBfc pos = pos_bfc();
        for (const auto& b : {pos, make_discrete_bfc(pos), make_codiscrete_bfc(pos)})
            if (auto v = check_bfc_laws(b, mono); !v) return v;
        const PosetPtr set = discrete_poset(c.x.poset->elements());
        std::vector<MonotoneMap> functions;
        for (const auto& a : {discrete_poset({"p"}), discrete_poset({"p", "q"}), set})
            for (int k = 0; k < 3; ++k) {
                MonotoneMap f{a, set, {}};
                for (int i = 0; i < a->size(); ++i) f.map.push_back(static_cast<int>(draw(c.rng, set->size())));
                functions.push_back(f);
            }
        if (auto v = check_bfc_laws(finset_bfc(), functions); !v) return v;
        backends += 4;
    }
    c.obs["backends"] = backends;
    c.obs["samples"] = samples.size();
    return Verdict::yes();
}

Verdict law_prop4(Ctx& c) {
    const auto qs = maps_into(c, 2);
    int squares = 0;
    for (const auto& i : qs) {
        const bool initial = is_initial(i).holds;
        const bool final = is_final(i).holds;
        for (const auto& q : qs) {
            if (initial) {
                const PullbackResult pb = pullback(i, factorize_left(q).m);
                ++squares;
                if (auto v = is_initial(pb.proj_right); !v)
                    return fail_with(c, "initial map pulled back along a discrete fibration: " + v.witness,
                                     {{"initial", functor_witness(i)}, {"along", functor_witness(q)}});
            }
            if (final) {
                const PullbackResult pb = pullback(i, factorize_right(q).m);
                ++squares;
                if (auto v = is_final(pb.proj_right); !v)
                    return fail_with(c, "final map pulled back along a discrete opfibration: " + v.witness,
                                     {{"final", functor_witness(i)}, {"along", functor_witness(q)}});
            }
        }
        const FactorizationResult r = factorize_right(i);
        for (ObjId k = 0; k < r.mid->num_objects(); ++k) {
            const PullbackResult pb = pullback(r.e, factorize_left(point(r.mid, k)).m);
            ++squares;
            if (auto v = is_initial(pb.proj_right); !v)
                return fail_with(c, "initial part pulled back along a slice projection: " + v.witness);
        }
        const FactorizationResult l = factorize_left(i);
        for (ObjId k = 0; k < l.mid->num_objects(); ++k) {
            const PullbackResult pb = pullback(l.e, factorize_right(point(l.mid, k)).m);
            ++squares;
            if (auto v = is_final(pb.proj_right); !v)
                return fail_with(c, "final part pulled back along a coslice projection: " + v.witness);
        }
    }
    c.obs["squares"] = squares;
    return Verdict::yes();
}

Verdict law_eq3a(Ctx& c) {
    const auto& X = *c.X();
    int checked = 0;
    for (const auto& q : maps_into(c, 3)) {
        const Presheaf down = reflect_df(q);
        const Copresheaf up = reflect_dof(q);
        for (ObjId x = 0; x < X.num_objects(); ++x) {
            const int under = pi0(*comma(point(c.X(), x), q).apex).size();
            const int over_x = pi0(*comma(q, point(c.X(), x)).apex).size();
            ++checked;
            if (down.fiber_size(x) != under)
                return fail_with(c, "fiber of the reflection at " + name_of(X, x) + " has " +
                                        std::to_string(down.fiber_size(x)) + " elements, x\\q has " +
                                        std::to_string(under) + " components",
                                 {{"q", functor_witness(q)}});
            if (up.fiber_size(x) != over_x)
                return fail_with(c, "cofiber of the coreflection at " + name_of(X, x) + " has " +
                                        std::to_string(up.fiber_size(x)) + " elements, q/x has " +
                                        std::to_string(over_x) + " components",
                                 {{"q", functor_witness(q)}});
        }
    }
    c.obs["fibers_checked"] = checked;
    return Verdict::yes();
}

// ---- hom-sets

Verdict law_eq40(Ctx& c) {
    const auto& X = *c.X();
    const SliceCache cache = slice_cache(c.X());
    for (ObjId x = 0; x < X.num_objects(); ++x)
        for (ObjId y = 0; y < X.num_objects(); ++y) {
            const HomInterval h = hom_interval(cache, x, y);
            const std::string at = "(" + X.object_name(x) + ", " + X.object_name(y) + ")";
            if (auto v = is_initial(h.initial_inclusion()); !v) return Verdict::no("i not initial at " + at);
            if (auto v = is_final(h.final_inclusion()); !v) return Verdict::no("e not final at " + at);
            const Functor ci = compose(h.reflection(), h.initial_inclusion());
            const Functor ce = compose(h.reflection(), h.final_inclusion());
            for (int k = 0; k < h.size(); ++k)
                if (ci.obj(k) != k || ce.obj(k) != k) return Verdict::no("c is not a retraction of i and e at " + at);
        }
    return Verdict::yes();
}

Verdict law_eq41b(Ctx& c) {
    const auto& X = *c.X();
    const SliceCache cache = slice_cache(c.X());
    for (ObjId x = 0; x < X.num_objects(); ++x)
        for (ObjId y = 0; y < X.num_objects(); ++y) {
            const HomInterval h = hom_interval(cache, x, y);
            const auto& direct = X.hom(x, y);
            const std::string at = "(" + X.object_name(x) + ", " + X.object_name(y) + ")";
            if (static_cast<std::size_t>(h.size()) != direct.size())
                return Verdict::no("|X(x,y)| = " + std::to_string(h.size()) + " but X has " +
                                   std::to_string(direct.size()) + " arrows at " + at);
            std::set<MorId> seen;
            for (int k = 0; k < h.size(); ++k) {
                const MorId left = cache.slices[y].comma.tags[h.left_arrow[k]].connecting;
                const MorId right = cache.coslices[x].comma.tags[h.right_arrow[k]].connecting;
                if (left != right)
                    return Verdict::no("left and right arrows of element " + h.components.elements[k] + " differ");
                seen.insert(left);
            }
            if (seen != std::set<MorId>(direct.begin(), direct.end()))
                return Verdict::no("elements do not enumerate the arrows at " + at);
        }
    return Verdict::yes();
}

Verdict law_prop34(Ctx& c) {
    const auto& X = *c.X();
    const SliceCache cache = slice_cache(c.X());
    int maps = 0;
    for (ObjId x = 0; x < X.num_objects(); ++x)
        for (ObjId y = 0; y < X.num_objects(); ++y) {
            const HomInterval h = hom_interval(cache, x, y);
            for (const auto& s : {discrete_category({"0", "1"}), discrete_category({"0", "1", "2"})})
                for (const auto& g : all_functors(h.apex(), s)) {
                    ++maps;
                    for (int k = 0; k < h.size(); ++k)
                        if (g.obj(h.initial[k]) != g.obj(h.final[k]))
                            return Verdict::no("a map [x,y] -> S separates the base points of element " +
                                               h.components.elements[k]);
                }
        }
    c.obs["maps_to_sets"] = maps;
    return Verdict::yes();
}

Verdict law_cor36(Ctx& c) {
    const auto& X = *c.X();
    const EnrichedStructure es = enriched_structure(c.X());
    const auto maps = all_functors(c.X(), discrete_category({"0", "1", "2"}));
    int pairs = 0;
    for (ObjId x = 0; x < X.num_objects(); ++x)
        for (ObjId y = 0; y < X.num_objects(); ++y) {
            if (!homotopic(es, x, y)) continue;
            ++pairs;
            for (const auto& g : maps)
                if (g.obj(x) != g.obj(y))
                    return Verdict::no("homotopic points " + name_of(X, x) + ", " + name_of(X, y) +
                                       " separated by a map to a set");
        }
    c.obs["homotopic_pairs"] = pairs;
    return Verdict::yes();
}

Verdict law_prop43(Ctx& c) {
    const auto& X = *c.X();
    const EnrichedStructure es = enriched_structure(c.X());
    for (ObjId x = 0; x < X.num_objects(); ++x)
        for (ObjId y = 0; y < X.num_objects(); ++y) {
            if (homotopic(es, x, y) != !X.hom(x, y).empty())
                return Verdict::no("homotopy and arrows disagree at " + name_of(X, x) + ", " + name_of(X, y));
            const HomInterval& h = es.hom(x, y);
            const Slice& sy = es.cache.slices[y];
            for (int k = 0; k < h.size(); ++k) {
                const ArrowInterval ai = arrow_interval(h, k);
                const Functor to_x =
                    compose(sy.projection(), compose(h.pullback.proj_right, ai.component.inclusion));
                if (to_x.obj(ai.initial) != x || to_x.obj(ai.final) != y)
                    return Verdict::no("interval of " + h.components.elements[k] + " is not a homotopy from x to y");
                const auto& arrows = ai.component.category->hom(ai.initial, ai.final);
                if (arrows.size() != 1 ||
                    to_x.mor(arrows[0]) != sy.comma.tags[h.left_arrow[k]].connecting)
                    return Verdict::no("interval of " + h.components.elements[k] +
                                       " does not carry its arrow from i to e");
            }
        }
    return Verdict::yes();
}

// ---- enriched composition and duality

Verdict law_prop44a(Ctx& c) {
    const EnrichedStructure es = enriched_structure(c.X());
    const Underlying left = underlying_category(c.X());
    const Underlying right = right_underlying_category(c.X());
    return check_mu_agreement(es, left, right);
}

Verdict law_cor48(Ctx& c) {
    const EnrichedStructure es = enriched_structure(c.X());
    const Underlying left = underlying_category(c.X());
    const Underlying right = right_underlying_category(c.X());
    const Functor phi = duality_isomorphism(es, left, right);
    if (auto issues = functor_issues(phi); !issues.empty()) return Verdict::no(issues.front());
    if (!is_isomorphism(phi)) return Verdict::no("assembled duality is not bijective");
    if (!(*phi.dom == *opposite(left.category)) || !(*phi.cod == *right.category))
        return Verdict::no("duality has the wrong endpoints");
    c.obs["arrows"] = left.category->num_morphisms();
    return Verdict::yes();
}

Verdict law_cor53(Ctx& c) {
    const Underlying lx = underlying_category(c.X());
    const Underlying rx = right_underlying_category(c.X());
    const Functor phi_x = duality_isomorphism(enriched_structure(c.X()), lx, rx);
    std::map<const FiniteCategory*, std::tuple<Underlying, Underlying, Functor>> targets;
    int maps = 0;
    for (const auto& f : maps_out(c, 2)) {
        auto it = targets.find(f.cod.get());
        if (it == targets.end()) {
            Underlying ly = underlying_category(f.cod);
            Underlying ry = right_underlying_category(f.cod);
            Functor phi_y = duality_isomorphism(enriched_structure(f.cod), ly, ry);
            it = targets.emplace(f.cod.get(), std::make_tuple(std::move(ly), std::move(ry), std::move(phi_y))).first;
        }
        const auto& [ly, ry, phi_y] = it->second;
        const Functor fb = underlying_functor(f, lx, ly);
        const Functor fr = right_underlying_functor(f, rx, ry);
        const Functor lhs = compose(phi_y, opposite(fb, phi_x.dom, phi_y.dom));
        const Functor rhs = compose(fr, phi_x);
        ++maps;
        if (!same_maps(lhs, rhs))
            return fail_with(c, "right underlying functor is not the opposite of the left one",
                             {{"f", functor_witness(f)}});
    }
    c.obs["maps"] = maps;
    return Verdict::yes();
}

Verdict law_prop55(Ctx& c) {
    const auto& X = *c.X();
    const EnrichedStructure ex = enriched_structure(c.X());
    int maps = 0;
    for (const auto& f : maps_out(c, 2)) {
        const EnrichedStructure ey = enriched_structure(f.cod);
        const int n = X.num_objects();
        std::vector<std::vector<int>> act(static_cast<std::size_t>(n) * n);
        for (ObjId x = 0; x < n; ++x)
            for (ObjId y = 0; y < n; ++y) act[x * n + y] = hom_action(f, ex, ey, x, y);
        ++maps;
        for (ObjId x = 0; x < n; ++x)
            for (ObjId y = 0; y < n; ++y)
                for (ObjId z = 0; z < n; ++z)
                    for (int a = 0; a < ex.hom(x, y).size(); ++a)
                        for (int b = 0; b < ex.hom(y, z).size(); ++b) {
                            const int lhs = act[x * n + z][ex.compose(x, y, z, a, b)];
                            const int rhs = ey.compose(f.obj(x), f.obj(y), f.obj(z), act[x * n + y][a],
                                                       act[y * n + z][b]);
                            if (lhs != rhs)
                                return fail_with(c, "action on hom-sets does not respect composition at " +
                                                        name_of(X, x) + ", " + name_of(X, y) + ", " + name_of(X, z),
                                                 {{"f", functor_witness(f)}});
                        }
    }
    c.obs["maps"] = maps;
    return Verdict::yes();
}

// ---- arrow maps and underlying functors

Verdict law_eq18a(Ctx& c) {
    const auto& X = *c.X();
    const SliceCache sx = slice_cache(c.X());
    int pairs = 0;
    for (const auto& f : take(maps_out(c, 1), 4, c.rng)) {
        const SliceCache sy = slice_cache(f.cod);
        for (const auto& z : {terminal_category(), interval_category(), f.cod})
            for (const auto& g : sample_functors(f.cod, z, c.rng, 2)) {
                const SliceCache sz = slice_cache(g.cod);
                const Functor gf = compose(g, f);
                ++pairs;
                for (ObjId x = 0; x < X.num_objects(); ++x) {
                    const ObjId fx = f.obj(x);
                    const Functor lhs = compose(arrow_map(g, sy.slices[fx], sz.slices[g.obj(fx)]),
                                                arrow_map(f, sx.slices[x], sy.slices[fx]));
                    const Functor rhs = arrow_map(gf, sx.slices[x], sz.slices[gf.obj(x)]);
                    if (!same_maps(lhs, rhs))
                        return fail_with(c, "arrow maps are not functorial at " + name_of(X, x),
                                         {{"f", functor_witness(f)}, {"g", functor_witness(g)}});
                }
            }
    }
    c.obs["composable_pairs"] = pairs;
    return Verdict::yes();
}

Verdict law_prop18b(Ctx& c) {
    const auto& X = *c.X();
    const Underlying ux = underlying_category(c.X());
    const auto one = underlying_category(terminal_category()).category;
    if (one->num_objects() != 1 || one->num_morphisms() != 1) return Verdict::no("terminal object not preserved");
    const auto set = underlying_category(discrete_category(pi0(X).elements)).category;
    for (MorId u = 0; u < set->num_morphisms(); ++u)
        if (!set->is_identity(u)) return Verdict::no("the underlying category of a set is not discrete");
    for (ObjId x = 0; x < X.num_objects(); ++x) {
        const auto lhs = underlying_category(ux.cache.slices[x].category()).category;
        const auto rhs = slice(ux.category, x).category();
        if (!find_isomorphism(lhs, rhs)) return Verdict::no("slice at " + name_of(X, x) + " not preserved");
    }
    int fibrations = 0;
    for (const auto& q : maps_into(c, 2)) {
        const Functor m = factorize_left(q).m;
        const Underlying ua = underlying_category(m.dom);
        const Functor mb = underlying_functor(m, ua, ux);
        ++fibrations;
        if (auto v = is_discrete_fibration(mb); !v)
            return fail_with(c, "underlying functor of a discrete fibration: " + v.witness,
                             {{"q", functor_witness(q)}});
    }
    c.obs["fibrations"] = fibrations;
    return Verdict::yes();
}

// ---- cones

Verdict law_prop12(Ctx& c) {
    const SliceCache cache = slice_cache(c.X());
    int checked = 0, colimiting = 0;
    for (const auto& cone : sample_cones(c, cache, 3)) {
        const bool holds = is_colimiting(cone, cache).holds;
        colimiting += holds;
        const CategoryPtr P = cone.p.dom;
        std::vector<Functor> finals;
        for (const auto& q : {terminal_category(), interval_category(), P})
            for (const auto& e : sample_functors(q, P, c.rng, 4))
                if (is_final(e)) finals.push_back(e);
        for (const auto& e : take(finals, 3, c.rng)) {
            const Cone pulled{compose(cone.p, e), cone.apex, compose(cone.leg, e)};
            ++checked;
            if (is_colimiting(pulled, cache).holds != holds)
                return fail_with(c, std::string("precomposing with a final map ") +
                                        (holds ? "destroys" : "creates") + " the colimiting property",
                                 {{"p", functor_witness(cone.p)}, {"leg", functor_witness(cone.leg)},
                                  {"e", functor_witness(e)}});
        }
    }
    c.obs["cones_colimiting"] = colimiting;
    c.obs["precompositions"] = checked;
    return Verdict::yes();
}

Verdict law_prop17(Ctx& c) {
    const SliceCache cache = slice_cache(c.X());
    std::vector<Cone> absolute;
    for (auto& cone : sample_cones(c, cache, 6))
        if (is_absolute(cone)) absolute.push_back(std::move(cone));
    absolute = take(absolute, 4, c.rng);
    int images = 0;
    const auto fs = take(maps_out(c, 1), 4, c.rng);
    for (const auto& cone : absolute) {
        if (auto v = is_colimiting(cone, cache); !v) return Verdict::no("absolute cone not colimiting: " + v.witness);
        for (const auto& f : fs) {
            const SliceCache target = slice_cache(f.cod);
            ++images;
            if (auto v = is_colimiting(image_cone(f, cone, cache, target), target); !v)
                return fail_with(c, "image of an absolute cone is not colimiting: " + v.witness,
                                 {{"f", functor_witness(f)}, {"p", functor_witness(cone.p)}});
        }
    }
    c.obs["absolute_cones"] = absolute.size();
    c.obs["images"] = images;
    return Verdict::yes();
}

// ---- adjunctions

struct AdjunctibleSample {
    Functor f;
    Underlying uy;
};

std::vector<AdjunctibleSample> adjunctible_maps(Ctx& c, int& tried) {
    std::vector<AdjunctibleSample> out;
    for (const auto& f : maps_out(c, 3)) {
        ++tried;
        Underlying uy = underlying_category(f.cod);
        if (is_adjunctible(f, uy.cache)) out.push_back({f, std::move(uy)});
    }
    return out;
}

Verdict law_prop22(Ctx& c) {
    const Underlying ux = underlying_category(c.X());
    int tried = 0;
    const auto maps = adjunctible_maps(c, tried);
    for (const auto& [f, uy] : maps) {
        const RightAdjoint adj = right_adjoint_underlying(f, ux, uy);
        if (auto v = check_adjunction(f, ux, uy, adj); !v)
            return fail_with(c, v.witness, {{"f", functor_witness(f)}});
    }
    c.obs["maps"] = tried;
    c.obs["adjunctible"] = maps.size();
    return Verdict::yes();
}

Verdict law_cor24(Ctx& c) {
    const Underlying ux = underlying_category(c.X());
    int tried = 0;
    const auto maps = adjunctible_maps(c, tried);
    for (const auto& [f, uy] : maps) {
        const Functor fb = underlying_functor(f, ux, uy);
        if (auto v = is_adjunctible(fb, slice_cache(uy.category)); !v)
            return fail_with(c, "underlying functor of an adjunctible map: " + v.witness, {{"f", functor_witness(f)}});
    }
    c.obs["adjunctible"] = maps.size();
    return Verdict::yes();
}

Verdict law_prop26(Ctx& c) {
    const Underlying ux = underlying_category(c.X());
    int tried = 0;
    const auto maps = adjunctible_maps(c, tried);
    std::vector<Cone> colimiting;
    for (auto& cone : sample_cones(c, ux.cache, 4))
        if (is_colimiting(cone, ux.cache)) colimiting.push_back(std::move(cone));
    colimiting = take(colimiting, 4, c.rng);
    int images = 0;
    for (const auto& [f, uy] : maps)
        for (const auto& cone : colimiting) {
            ++images;
            if (auto v = preserves_colimits_check(f, cone, ux.cache, uy.cache); !v)
                return fail_with(c, v.witness, {{"f", functor_witness(f)}, {"p", functor_witness(cone.p)}});
        }
    c.obs["adjunctible"] = maps.size();
    c.obs["images"] = images;
    return Verdict::yes();
}

// ---- density

Verdict law_prop70(Ctx& c) {
    int dense = 0, total = 0;
    for (const auto& f : maps_out(c, 3)) {
        if (f.cod->num_objects() > 5) continue;
        const EnrichedStructure ey = enriched_structure(f.cod);
        const bool d = is_dense(f, ey.cache).holds;
        const bool connected = all_alpha_pullbacks_connected(f, ey).holds;
        ++total;
        dense += d;
        if (d != connected)
            return fail_with(c, d ? "dense map with a disconnected arrow pullback"
                                  : "every arrow pullback is connected but the map is not dense",
                             {{"f", functor_witness(f)}});
    }
    // The comparison m |-> (x m) reflects isomorphisms: a map of discrete
    // fibrations that is bijective on every (x m) is invertible.
    const EnrichedStructure es = enriched_structure(c.X());
    std::vector<Presheaf> ms;
    for (const auto& q : take(maps_into(c, 1), 3, c.rng)) ms.push_back(reflect_df(q));
    int reflected = 0, guarded = 0;
    for (const auto& m : ms)
        for (const auto& n : ms) {
            const ModuleAction am = module_action(m, es);
            const ModuleAction an = module_action(n, es);
            FunctorConstraints k = over(am.elements.projection, an.elements.projection);
            k.node_budget = 100'000;
            int visited = 0;
            auto visit = [&](const Functor& xi) {
                const auto tables = module_morphism(xi, am, an, es);
                bool bijective = true;
                for (ObjId x = 0; x < c.X()->num_objects() && bijective; ++x)
                    bijective = tables[x].size() == static_cast<std::size_t>(n.fiber_size(x)) &&
                                std::set<int>(tables[x].begin(), tables[x].end()).size() == tables[x].size();
                ++reflected;
                if (bijective && !is_isomorphism(xi)) throw InvariantError("enriched fibers do not reflect isomorphisms");
                return ++visited < 200;
            };
            try {
                for_each_functor(am.elements.category, an.elements.category, k, visit);
            } catch (const SizeGuardError&) {
                ++guarded;
            }
        }
    c.obs["maps"] = total;
    c.obs["dense"] = dense;
    c.obs["fibration_maps"] = reflected;
    c.obs["fibration_pairs_over_guard"] = guarded;
    return Verdict::yes();
}

// ---- tensors

Verdict law_prop73(Ctx& c) {
    const auto& X = *c.X();
    const auto qs = take(maps_into(c, 2), 5, c.rng);
    int pairs = 0;
    for (const auto& a : qs) {
        const Functor n = factorize_right(a).m;
        const Functor m = factorize_left(a).m;
        for (const auto& q : qs) {
            const Functor down_q = factorize_left(q).m;
            const Functor up_q = factorize_right(q).m;
            const PullbackResult nq = pullback(n, q), nd = pullback(n, down_q);
            const Presheaf lhs = reflect_df(compose(n, nq.proj_left));
            const Presheaf rhs = reflect_df(compose(n, nd.proj_left));
            const PullbackResult mq = pullback(m, q), mu = pullback(m, up_q);
            const Copresheaf lhs2 = reflect_dof(compose(m, mq.proj_left));
            const Copresheaf rhs2 = reflect_dof(compose(m, mu.proj_left));
            ++pairs;
            for (ObjId x = 0; x < X.num_objects(); ++x) {
                if (lhs.fiber_size(x) != rhs.fiber_size(x))
                    return fail_with(c, "reflections of n*q and n*(reflected q) differ at " + name_of(X, x),
                                     {{"n_source", functor_witness(a)}, {"q", functor_witness(q)}});
                if (lhs2.fiber_size(x) != rhs2.fiber_size(x))
                    return fail_with(c, "coreflections of m*q and m*(coreflected q) differ at " + name_of(X, x),
                                     {{"m_source", functor_witness(a)}, {"q", functor_witness(q)}});
            }
        }
    }
    c.obs["pairs"] = pairs;
    return Verdict::yes();
}

Verdict law_eq75(Ctx& c) {
    const auto qs = take(maps_into(c, 2), 6, c.rng);
    int pairs = 0;
    for (const auto& p : qs) {
        const Functor up_p = factorize_right(p).m;
        for (const auto& q : qs) {
            const Functor down_q = factorize_left(q).m;
            const int a = tensor(up_p, q).size();
            const int b = tensor(up_p, down_q).size();
            const int d = tensor(p, down_q).size();
            ++pairs;
            if (a != b || b != d)
                return fail_with(c, "inversion law fails: " + std::to_string(a) + ", " + std::to_string(b) + ", " +
                                        std::to_string(d),
                                 {{"p", functor_witness(p)}, {"q", functor_witness(q)}});
        }
    }
    c.obs["pairs"] = pairs;
    return Verdict::yes();
}

Verdict law_eq77(Ctx& c) {
    const auto& X = *c.X();
    const SliceCache cache = slice_cache(c.X());
    for (const auto& q : maps_into(c, 3)) {
        const Functor down_q = factorize_left(q).m;
        for (ObjId x = 0; x < X.num_objects(); ++x) {
            const Functor up_x = cache.coslices[x].projection();
            const int a = tensor(up_x, down_q).size();
            const int b = pi0(*comma(point(c.X(), x), q).apex).size();
            const int d = tensor(up_x, q).size();
            if (a != b || b != d)
                return fail_with(c, "reflection formula fails at " + name_of(X, x), {{"q", functor_witness(q)}});
        }
    }
    return Verdict::yes();
}

// ---- complements

Verdict law_prop78(Ctx& c) {
    const auto& X = *c.X();
    std::vector<Presheaf> ms{reflect_df(point(c.X(), X.num_objects() - 1))};
    for (const auto& q : take(maps_into(c, 1), 2, c.rng)) ms.push_back(reflect_df(q));
    Presheaf empty{c.X(), std::vector<std::vector<std::string>>(X.num_objects()),
                   std::vector<std::vector<int>>(X.num_morphisms())};
    ms.push_back(empty);
    const auto qs = take(maps_into(c, 1), 3, c.rng);
    int checks = 0, guarded = 0;
    for (const auto& m : ms) {
        for (ObjId x = 0; x < X.num_objects(); ++x)
            if (complement(m, 1).fiber_size(x) != 1) return Verdict::no("complement valued in a point is not trivial");
        for (int s = 0; s <= 3; ++s)
            for (const auto& q : qs) {
                Verdict v;
                try {
                    v = check_complement_adjunction(m, s, q);
                } catch (const SizeGuardError&) {
                    ++guarded;
                    continue;
                }
                ++checks;
                if (!v)
                    return fail_with(c, "|S| = " + std::to_string(s) + ": " + v.witness,
                                     {{"m", io::presheaf_to_json(m)}, {"q", functor_witness(q)}});
            }
    }
    for (ObjId x = 0; x < X.num_objects(); ++x)
        for (int s = 0; s <= 3; ++s)
            if (complement(empty, s).fiber_size(x) != 1)
                return Verdict::no("complement of the empty fibration is not the identity");
    int lower_sets = 0;
    if (c.x.poset) {
        const Poset& P = *c.x.poset;
        for (int mask = 0; mask < (1 << P.size()); ++mask) {
            std::vector<int> L, rest;
            for (int a = 0; a < P.size(); ++a) (mask >> a & 1 ? L : rest).push_back(a);
            if (!is_lower_set(P, L)) continue;
            ++lower_sets;
            const auto U = pos_complement(P, L, 0);
            if (U != rest || !is_upper_set(P, U)) return Verdict::no("complement of a lower set is not its upper set");
            const Copresheaf neg = complement(lower_set_presheaf(c.X(), L), 0);
            for (int a = 0; a < P.size(); ++a)
                if (neg.fiber_size(a) != (mask >> a & 1 ? 0 : 1))
                    return Verdict::no("categorical complement of a lower set disagrees with the set complement");
        }
    }
    c.obs["adjunction_checks"] = checks;
    c.obs["adjunction_checks_over_guard"] = guarded;
    c.obs["lower_sets"] = lower_sets;
    return Verdict::yes();
}

// ---- modules

Verdict law_eq62(Ctx& c) {
    const auto& X = *c.X();
    const EnrichedStructure es = enriched_structure(c.X());
    Presheaf terminal{c.X(), std::vector<std::vector<std::string>>(X.num_objects(), {"*"}),
                      std::vector<std::vector<int>>(X.num_morphisms(), {0})};
    const ModuleAction at = module_action(terminal, es);
    int modules = 0;
    for (const auto& q : take(maps_into(c, 2), 4, c.rng)) {
        const Presheaf m = reflect_df(q);
        const ModuleAction ma = module_action(m, es);
        ++modules;
        for (ObjId x = 0; x < X.num_objects(); ++x)
            for (ObjId y = 0; y < X.num_objects(); ++y) {
                const HomInterval& h = es.hom(x, y);
                for (int alpha = 0; alpha < h.size(); ++alpha) {
                    const MorId arrow = es.cache.slices[y].comma.tags[h.left_arrow[alpha]].connecting;
                    for (int a = 0; a < m.fiber_size(y); ++a)
                        if (ma.apply(x, y, alpha, a) != m.action[arrow][a])
                            return fail_with(c, "enriched action differs from the presheaf action of '" +
                                                    X.morphism_name(arrow) + "'",
                                             {{"q", functor_witness(q)}});
                }
            }
        Functor xi{ma.elements.category, at.elements.category, {}, {}};
        for (ObjId o = 0; o < ma.elements.category->num_objects(); ++o)
            xi.obj_map.push_back(at.elements.object_at[ma.elements.projection.obj(o)][0]);
        for (MorId u = 0; u < ma.elements.category->num_morphisms(); ++u)
            xi.mor_map.push_back(at.elements.morphism_at[ma.elements.projection.mor(u)][0]);
        module_morphism(xi, ma, at, es);
    }
    c.obs["modules"] = modules;
    return Verdict::yes();
}

// ---- experiments

Verdict experiment_mu_assoc(Ctx& c) {
    const AssociativityReport r = mu_associativity(enriched_structure(c.X()));
    c.obs["triples"] = r.triples;
    c.obs["violations"] = r.violations;
    if (r.violations) return Verdict::no("associativity fails at " + r.first_violation);
    return Verdict::yes();
}

Verdict experiment_underlying_pullbacks(Ctx& c) {
    const Underlying ux = underlying_category(c.X());
    const auto qs = take(maps_into(c, 1), 4, c.rng);
    Json rows = Json::array();
    bool all = true;
    for (std::size_t i = 0; i < qs.size(); ++i)
        for (std::size_t j = i; j < qs.size(); ++j) {
            const Functor& f = qs[i];
            const Functor& g = qs[j];
            const PullbackResult pb = pullback(f, g);
            const Underlying ua = underlying_category(f.dom);
            const Underlying ub = underlying_category(g.dom);
            const Underlying up = underlying_category(pb.apex);
            const PullbackResult under = pullback(underlying_functor(f, ua, ux), underlying_functor(g, ub, ux));
            const Functor comparison = pullback_pairing(under, underlying_functor(pb.proj_left, up, ua),
                                                        underlying_functor(pb.proj_right, up, ub));
            const bool iso = is_isomorphism(comparison);
            all = all && iso;
            rows.push_back({{"left", f.dom->num_objects()},
                            {"right", g.dom->num_objects()},
                            {"apex_objects", pb.apex->num_objects()},
                            {"comparison_is_iso", iso}});
        }
    c.obs["table"] = rows;
    if (!all) return Verdict::no("a comparison map of underlying pullbacks is not invertible");
    return Verdict::yes();
}

struct LawEntry {
    LawInfo info;
    Check check;
};

const std::vector<LawEntry>& registry() {
    static const std::vector<LawEntry> r{
        {{"bfc-axioms", "Both factorization systems factor every sampled map, share their internal sets, and satisfy reciprocal stability, for each backend", false}, law_bfc_axioms},
        {{"prop4", "Initial maps pulled back along discrete fibrations stay initial; final maps pulled back along discrete opfibrations stay final", false}, law_prop4},
        {{"eq3a", "The reflection of q into discrete fibrations has fiber pi0(x\\q) at x, and dually", false}, law_eq3a},
        {{"eq18a", "Arrow maps compose: the arrow map of g.f is the arrow map of g after that of f", false}, law_eq18a},
        {{"eq40", "Each internal hom-set is a balanced cylinder: i initial, e final, c a common retraction", false}, law_eq40},
        {{"eq41b", "Elements of X(x,y) correspond to left arrows, to right arrows and to the arrows x -> y", false}, law_eq41b},
        {{"prop12", "Precomposing a cone with a final map preserves and reflects being colimiting", false}, law_prop12},
        {{"prop17", "Absolute colimiting cones are colimiting and are preserved by every map", false}, law_prop17},
        {{"prop18b", "The underlying functor preserves the terminal object, sets, slices and discrete fibrations", false}, law_prop18b},
        {{"prop22", "An adjunctible map induces an adjunction of underlying categories, natural with triangle identities", false}, law_prop22},
        {{"cor24", "The underlying functor of an adjunctible map is adjunctible", false}, law_cor24},
        {{"prop26", "Adjunctible maps send colimiting cones to colimiting cones", false}, law_prop26},
        {{"prop34", "Every map from a cylinder to a set identifies its two base inclusions", false}, law_prop34},
        {{"cor36", "Homotopic points are identified by every map to a set", false}, law_cor36},
        {{"prop43", "Two points are homotopic exactly when there is an arrow between them, witnessed by its interval", false}, law_prop43},
        {{"prop44a", "Enriched composition and units agree with composition in both underlying categories", false}, law_prop44a},
        {{"cor48", "The right underlying category is isomorphic to the opposite of the left one", false}, law_cor48},
        {{"cor53", "The right underlying functor is the opposite of the left one under those isomorphisms", false}, law_cor53},
        {{"prop55", "The action of a map on hom-sets respects enriched composition", false}, law_prop55},
        {{"eq62", "The enriched action of a discrete fibration agrees with its presheaf action and is natural", false}, law_eq62},
        {{"prop70", "A map is dense exactly when every pulled back arrow interval is connected", false}, law_prop70},
        {{"prop73", "Reflecting n*q and n*(reflection of q) gives the same fibers, and dually", false}, law_prop73},
        {{"eq75", "Tensoring the coreflection of p with q, with the reflection of q, and p with the reflection of q agree", false}, law_eq75},
        {{"eq77", "The reflection of q at x has as many elements as x\\q has components", false}, law_eq77},
        {{"prop78", "The complement of a discrete fibration is a discrete opfibration right adjoint to tensoring", false}, law_prop78},
        {{"mu-assoc", "Enriched composition is associative (observed, not assumed)", true}, experiment_mu_assoc},
        {{"underlying-pullbacks", "The underlying functor preserves pullbacks (observed, not assumed)", true}, experiment_underlying_pullbacks},
    };
    return r;
}

const LawEntry& entry(const std::string& id) {
    for (const auto& e : registry())
        if (e.info.id == id) return e;
    throw std::invalid_argument("unknown law id '" + id + "'");
}

Json instance_to_json(const Instance& i) {
    Json j;
    j["family"] = i.family;
    j["descriptor"] = i.descriptor;
    j["category"] = io::category_to_json(*i.category);
    j["poset"] = i.poset ? io::poset_to_json(*i.poset) : Json(nullptr);
    return j;
}

Instance instance_from_json(const Json& j) {
    Instance i;
    i.family = j.at("family").get<std::string>();
    i.descriptor = j.at("descriptor").get<std::string>();
    if (!j.at("poset").is_null()) {
        i.poset = io::poset_from_json(j.at("poset"));
        i.category = thin_category(*i.poset);
    } else {
        i.category = io::category_from_json(j.at("category"));
    }
    return i;
}

std::uint64_t instance_seed(std::uint64_t seed, int index) {
    return seed * 1000003ULL + static_cast<std::uint64_t>(index) * 7919ULL + 17ULL;
}

}  // namespace

std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Holds:
            return "holds";
        case Outcome::Fails:
            return "fails";
        case Outcome::Skipped:
            return "skipped-size-guard";
    }
    return "unknown";
}

const std::vector<LawInfo>& catalog() {
    static const std::vector<LawInfo> c = [] {
        std::vector<LawInfo> out;
        for (const auto& e : registry()) out.push_back(e.info);
        return out;
    }();
    return c;
}

const LawInfo& law_info(const std::string& id) { return entry(id).info; }

LawReport evaluate(const std::string& id, const Instance& x, const Instance& partner, std::uint64_t seed,
                   int instance_index) {
    const LawEntry& e = entry(id);
    LawReport r{e.info.id, e.info.statement, e.info.experiment, instance_index, x.descriptor, seed,
                Outcome::Holds, nullptr, Json::object()};
    Ctx ctx{x, partner, engine_for(seed, id)};
    std::string detail;
    try {
        const Verdict v = e.check(ctx);
        if (!v) {
            r.outcome = Outcome::Fails;
            detail = v.witness;
        }
    } catch (const SizeGuardError& err) {
        r.outcome = Outcome::Skipped;
        ctx.obs["size_guard"] = err.what();
    } catch (const std::exception& err) {
        r.outcome = Outcome::Fails;
        detail = std::string("postcondition violated: ") + err.what();
    }
    if (r.outcome == Outcome::Fails) {
        r.witness = {{"detail", detail},
                     {"law", id},
                     {"seed", seed},
                     {"instance", instance_to_json(x)},
                     {"partner", instance_to_json(partner)}};
        if (ctx.obs.contains("failing_data")) r.witness["data"] = ctx.obs["failing_data"];
    }
    ctx.obs.erase("failing_data");
    r.observations = ctx.obs;
    return r;
}

std::vector<LawReport> run_law(const std::string& id, const GeneratorConfig& config) {
    entry(id);
    const auto instances = generate(config);
    std::vector<LawReport> out;
    for (std::size_t i = 0; i < instances.size(); ++i)
        out.push_back(evaluate(id, instances[i], instances[(i + 1) % instances.size()],
                               instance_seed(config.seed, static_cast<int>(i)), static_cast<int>(i)));
    return out;
}

std::vector<LawReport> run_laws(const std::vector<std::string>& ids, const GeneratorConfig& config) {
    for (const auto& id : ids) entry(id);
    const auto instances = generate(config);
    std::vector<LawReport> out;
    for (const auto& id : ids)
        for (std::size_t i = 0; i < instances.size(); ++i)
            out.push_back(evaluate(id, instances[i], instances[(i + 1) % instances.size()],
                                   instance_seed(config.seed, static_cast<int>(i)), static_cast<int>(i)));
    return out;
}

LawReport replay(const Json& record) {
    const Json& w = record.contains("witness") ? record.at("witness") : record;
    if (!w.is_object() || !w.contains("instance") || !w.contains("partner"))
        throw std::invalid_argument("record carries no replayable witness");
    const Instance x = instance_from_json(w.at("instance"));
    const Instance partner = instance_from_json(w.at("partner"));
    const int index = record.contains("instance_index") ? record.at("instance_index").get<int>() : 0;
    return evaluate(w.at("law").get<std::string>(), x, partner, w.at("seed").get<std::uint64_t>(), index);
}

Json report_to_json(const LawReport& r) {
    Json j;
    j["law"] = r.law_id;
    j["statement"] = r.statement;
    j["kind"] = r.experiment ? "experiment" : "law";
    j["instance_index"] = r.instance_index;
    j["instance"] = r.instance;
    j["seed"] = r.seed;
    j["verdict"] = outcome_name(r.outcome);
    j["witness"] = r.witness;
    j["observations"] = r.observations;
    return j;
}

Json suite_document(const GeneratorConfig& config, const std::vector<LawReport>& reports) {
    Json doc;
    doc["config"] = {{"seed", config.seed},
                     {"max_objects", config.max_objects},
                     {"max_morphisms", config.max_morphisms},
                     {"count", config.count},
                     {"families", config.families}};
    doc["records"] = Json::array();
    for (const auto& r : reports) doc["records"].push_back(report_to_json(r));
    doc["summary"] = Json::array();
    std::vector<std::string> order;
    std::map<std::string, std::array<int, 3>> tally;
    for (const auto& r : reports) {
        if (!tally.count(r.law_id)) order.push_back(r.law_id);
        tally[r.law_id][static_cast<int>(r.outcome)]++;
    }
    for (const auto& id : order) {
        const auto& info = law_info(id);
        doc["summary"].push_back({{"law", id},
                                  {"statement", info.statement},
                                  {"kind", info.experiment ? "experiment" : "law"},
                                  {"holds", tally[id][0]},
                                  {"fails", tally[id][1]},
                                  {"skipped", tally[id][2]}});
    }
    doc["passed"] = suite_passed(reports);
    return doc;
}

std::string summary_table(const std::vector<LawReport>& reports) {
    std::vector<std::string> order;
    std::map<std::string, std::array<int, 3>> tally;
    for (const auto& r : reports) {
        if (!tally.count(r.law_id)) order.push_back(r.law_id);
        tally[r.law_id][static_cast<int>(r.outcome)]++;
    }
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof line, "%-22s %-10s %6s %6s %8s  %s\n", "law", "kind", "holds", "fails", "skipped",
                  "statement");
    out << line;
    for (const auto& id : order) {
        const auto& info = law_info(id);
        std::snprintf(line, sizeof line, "%-22s %-10s %6d %6d %8d  ", id.c_str(),
                      info.experiment ? "experiment" : "law", tally[id][0], tally[id][1], tally[id][2]);
        out << line << info.statement << "\n";
    }
    out << (suite_passed(reports) ? "suite: passed\n" : "suite: FAILED\n");
    return out.str();
}

bool suite_passed(const std::vector<LawReport>& reports) {
    return std::none_of(reports.begin(), reports.end(),
                        [](const LawReport& r) { return !r.experiment && r.outcome == Outcome::Fails; });
}

}  // namespace balcat::laws
