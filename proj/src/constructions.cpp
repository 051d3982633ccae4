#include "balcat/constructions.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace balcat {

namespace {

std::string triple_name(const std::string& a, const std::string& b, const std::string& c) {
    return "(" + a + "|" + b + "|" + c + ")";
}

std::string pair_name(const std::string& a, const std::string& b) { return "(" + a + "|" + b + ")"; }

std::uint64_t key2(std::uint64_t a, std::uint64_t b) { return (a << 32) | b; }

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

void require_same_codomain(const Functor& f, const Functor& g, const char* op) {
    if (!same_category(f.cod, g.cod))
        throw std::invalid_argument(std::string(op) + ": functors do not share a codomain");
}

}  // namespace

CategoryPtr tabulate_category(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                              std::vector<MorId> identity,
                              const std::function<MorId(MorId, MorId)>& compose_rule) {
    const std::size_t m = morphisms.size();
    std::vector<std::vector<MorId>> out(objects.size());
    for (MorId f = 0; f < static_cast<MorId>(m); ++f) out[morphisms[f].src].push_back(f);
    std::vector<MorId> table(m * m, kNone);
    for (MorId f = 0; f < static_cast<MorId>(m); ++f)
        for (MorId g : out[morphisms[f].tgt]) table[static_cast<std::size_t>(g) * m + f] = compose_rule(g, f);
    return std::make_shared<FiniteCategory>(std::move(objects), std::move(morphisms), std::move(identity),
                                            std::move(table));
}

CategoryPtr terminal_category() {
    static const CategoryPtr one = [] {
        return std::make_shared<FiniteCategory>(std::vector<std::string>{"*"},
                                                std::vector<Morphism>{{"id:*", 0, 0}},
                                                std::vector<MorId>{0}, std::vector<MorId>{0});
    }();
    return one;
}

CategoryPtr empty_category() {
    static const CategoryPtr zero =
        std::make_shared<FiniteCategory>(std::vector<std::string>{}, std::vector<Morphism>{},
                                         std::vector<MorId>{}, std::vector<MorId>{});
    return zero;
}

CategoryPtr discrete_category(const std::vector<std::string>& objects) {
    std::vector<Morphism> morphisms;
    std::vector<MorId> identity;
    for (ObjId x = 0; x < static_cast<ObjId>(objects.size()); ++x) {
        identity.push_back(x);
        morphisms.push_back({identity_id(objects[x]), x, x});
    }
    return tabulate_category(objects, std::move(morphisms), std::move(identity),
                             [](MorId g, MorId) { return g; });
}

CategoryPtr interval_category() {
    static const CategoryPtr two = [] {
        return CategoryBuilder().add_object("0").add_object("1").add_morphism("a", "0", "1").build();
    }();
    return two;
}

Functor identity_functor(const CategoryPtr& x) {
    Functor f{x, x, std::vector<ObjId>(x->num_objects()), std::vector<MorId>(x->num_morphisms())};
    std::iota(f.obj_map.begin(), f.obj_map.end(), 0);
    std::iota(f.mor_map.begin(), f.mor_map.end(), 0);
    return f;
}

Functor point(const CategoryPtr& x, ObjId at) {
    if (at < 0 || at >= x->num_objects()) throw std::out_of_range("point: object out of range");
    return Functor{terminal_category(), x, {at}, {x->identity(at)}};
}

Functor to_terminal(const CategoryPtr& x) {
    return Functor{x, terminal_category(), std::vector<ObjId>(x->num_objects(), 0),
                   std::vector<MorId>(x->num_morphisms(), 0)};
}

Functor compose(const Functor& g, const Functor& f) {
    if (!same_category(f.cod, g.dom)) throw std::invalid_argument("compose: cod(f) != dom(g)");
    Functor h{f.dom, g.cod, std::vector<ObjId>(f.obj_map.size()), std::vector<MorId>(f.mor_map.size())};
    for (std::size_t a = 0; a < f.obj_map.size(); ++a) h.obj_map[a] = g.obj_map[f.obj_map[a]];
    for (std::size_t u = 0; u < f.mor_map.size(); ++u) h.mor_map[u] = g.mor_map[f.mor_map[u]];
    return h;
}

bool is_isomorphism(const Functor& f) {
    if (f.dom->num_objects() != f.cod->num_objects() || f.dom->num_morphisms() != f.cod->num_morphisms())
        return false;
    std::vector<char> seen_obj(f.cod->num_objects(), 0), seen_mor(f.cod->num_morphisms(), 0);
    for (ObjId b : f.obj_map) {
        if (seen_obj[b]) return false;
        seen_obj[b] = 1;
    }
    for (MorId v : f.mor_map) {
        if (seen_mor[v]) return false;
        seen_mor[v] = 1;
    }
    return true;
}

Functor inverse(const Functor& f) {
    if (!is_isomorphism(f)) throw std::invalid_argument("inverse: functor is not bijective");
    Functor g{f.cod, f.dom, std::vector<ObjId>(f.obj_map.size()), std::vector<MorId>(f.mor_map.size())};
    for (std::size_t a = 0; a < f.obj_map.size(); ++a) g.obj_map[f.obj_map[a]] = static_cast<ObjId>(a);
    for (std::size_t u = 0; u < f.mor_map.size(); ++u) g.mor_map[f.mor_map[u]] = static_cast<MorId>(u);
    return g;
}

FinSetQuotient pi0(const FiniteCategory& x) {
    const int n = x.num_objects();
    UnionFind uf(n);
    for (MorId f = 0; f < x.num_morphisms(); ++f) uf.unite(x.src(f), x.tgt(f));
    std::map<int, int> rep_of_root;  // root -> item with least name
    for (ObjId a = 0; a < n; ++a) {
        const int r = uf.find(a);
        auto [it, fresh] = rep_of_root.emplace(r, a);
        if (!fresh && x.object_name(a) < x.object_name(it->second)) it->second = a;
    }
    std::vector<std::pair<std::string, int>> named;  // (name, root)
    for (const auto& [root, rep] : rep_of_root) named.emplace_back(x.object_name(rep), root);
    std::sort(named.begin(), named.end());
    FinSetQuotient q;
    std::map<int, int> index_of_root;
    for (const auto& [name, root] : named) {
        index_of_root[root] = static_cast<int>(q.elements.size());
        q.elements.push_back(name);
        q.representative.push_back(rep_of_root[root]);
    }
    q.class_of.resize(n);
    for (ObjId a = 0; a < n; ++a) q.class_of[a] = index_of_root[uf.find(a)];
    return q;
}

Functor components_map(const CategoryPtr& x, const FinSetQuotient& q) {
    auto target = discrete_category(q.elements);
    Functor c{x, target, q.class_of, std::vector<MorId>(x->num_morphisms())};
    for (MorId f = 0; f < x->num_morphisms(); ++f) c.mor_map[f] = target->identity(q.class_of[x->src(f)]);
    return c;
}

CommaResult comma(const Functor& p, const Functor& q) {
    require_same_codomain(p, q, "comma");
    const auto& P = *p.dom;
    const auto& Q = *q.dom;
    const auto& X = *p.cod;
    const std::uint64_t nq = Q.num_objects();
    const std::uint64_t mx = std::max(1, X.num_morphisms());

    std::vector<std::string> names;
    std::vector<CommaTag> tags;
    std::unordered_map<std::uint64_t, ObjId> obj_index;
    for (ObjId a = 0; a < P.num_objects(); ++a)
        for (ObjId b = 0; b < Q.num_objects(); ++b)
            for (MorId alpha : X.hom(p.obj(a), q.obj(b))) {
                obj_index.emplace((a * nq + b) * mx + alpha, static_cast<ObjId>(tags.size()));
                tags.push_back({a, b, alpha});
                names.push_back(triple_name(P.object_name(a), Q.object_name(b), X.morphism_name(alpha)));
            }
    const std::uint64_t n = tags.size();
    const std::uint64_t mp = P.num_morphisms();
    const std::uint64_t mq = Q.num_morphisms();

    std::vector<Morphism> morphisms;
    std::vector<MorId> identity(n);
    std::vector<std::pair<MorId, MorId>> parts;
    std::unordered_map<std::uint64_t, MorId> mor_index;
    auto mkey = [&](std::uint64_t s, std::uint64_t t, std::uint64_t u, std::uint64_t v) {
        return ((s * n + t) * mp + u) * mq + v;
    };
    for (ObjId o = 0; o < static_cast<ObjId>(n); ++o) {
        const auto& tag = tags[o];
        const MorId iu = P.identity(tag.left);
        const MorId iv = Q.identity(tag.right);
        identity[o] = static_cast<MorId>(morphisms.size());
        mor_index.emplace(mkey(o, o, iu, iv), identity[o]);
        morphisms.push_back({identity_id(names[o]), o, o});
        parts.emplace_back(iu, iv);
    }
    for (ObjId o = 0; o < static_cast<ObjId>(n); ++o) {
        const auto& tag = tags[o];
        for (MorId u : P.out_of(tag.left)) {
            for (MorId v : Q.out_of(tag.right)) {
                if (P.is_identity(u) && Q.is_identity(v)) continue;
                const ObjId a2 = P.tgt(u);
                const ObjId b2 = Q.tgt(v);
                const MorId lhs = X.compose(q.mor(v), tag.connecting);
                for (MorId alpha2 : X.hom(p.obj(a2), q.obj(b2))) {
                    if (X.compose(alpha2, p.mor(u)) != lhs) continue;
                    const ObjId o2 = obj_index.at((a2 * nq + b2) * mx + alpha2);
                    mor_index.emplace(mkey(o, o2, u, v), static_cast<MorId>(morphisms.size()));
                    morphisms.push_back({"(" + P.morphism_name(u) + "|" + Q.morphism_name(v) + "|" +
                                             X.morphism_name(tag.connecting) + "|" +
                                             X.morphism_name(alpha2) + ")",
                                         o, o2});
                    parts.emplace_back(u, v);
                }
            }
        }
    }
    std::vector<Morphism> mors_copy = morphisms;
    auto apex = tabulate_category(names, std::move(mors_copy), identity, [&](MorId g, MorId f) {
        const ObjId s = morphisms[f].src;
        const ObjId t = morphisms[g].tgt;
        const MorId u = P.compose(parts[g].first, parts[f].first);
        const MorId v = Q.compose(parts[g].second, parts[f].second);
        return mor_index.at(mkey(s, t, u, v));
    });

    CommaResult r{apex,
                  Functor{apex, p.dom, std::vector<ObjId>(n), std::vector<MorId>(morphisms.size())},
                  Functor{apex, q.dom, std::vector<ObjId>(n), std::vector<MorId>(morphisms.size())},
                  std::move(tags)};
    for (ObjId o = 0; o < static_cast<ObjId>(n); ++o) {
        r.proj_left.obj_map[o] = r.tags[o].left;
        r.proj_right.obj_map[o] = r.tags[o].right;
    }
    for (MorId k = 0; k < static_cast<MorId>(morphisms.size()); ++k) {
        r.proj_left.mor_map[k] = parts[k].first;
        r.proj_right.mor_map[k] = parts[k].second;
    }
    return r;
}

ObjId PullbackResult::find(ObjId a, ObjId b) const {
    auto it = object_lookup.find(key2(a, b));
    return it == object_lookup.end() ? kNone : it->second;
}

MorId PullbackResult::find_morphism(MorId u, MorId v) const {
    auto it = morphism_lookup.find(key2(u, v));
    return it == morphism_lookup.end() ? kNone : it->second;
}

PullbackResult pullback(const Functor& f, const Functor& g) {
    require_same_codomain(f, g, "pullback");
    const auto& A = *f.dom;
    const auto& B = *g.dom;
    PullbackResult r;
    std::vector<std::string> names;
    for (ObjId a = 0; a < A.num_objects(); ++a)
        for (ObjId b = 0; b < B.num_objects(); ++b)
            if (f.obj(a) == g.obj(b)) {
                r.object_lookup.emplace(key2(a, b), static_cast<ObjId>(r.pairs.size()));
                r.pairs.emplace_back(a, b);
                names.push_back(pair_name(A.object_name(a), B.object_name(b)));
            }
    std::vector<Morphism> morphisms;
    std::vector<MorId> identity(r.pairs.size());
    std::vector<std::pair<MorId, MorId>> parts;
    for (ObjId o = 0; o < static_cast<ObjId>(r.pairs.size()); ++o) {
        const auto [a, b] = r.pairs[o];
        identity[o] = static_cast<MorId>(morphisms.size());
        r.morphism_lookup.emplace(key2(A.identity(a), B.identity(b)), identity[o]);
        morphisms.push_back({identity_id(names[o]), o, o});
        parts.emplace_back(A.identity(a), B.identity(b));
    }
    for (ObjId o = 0; o < static_cast<ObjId>(r.pairs.size()); ++o) {
        const auto [a, b] = r.pairs[o];
        for (MorId u : A.out_of(a))
            for (MorId v : B.out_of(b)) {
                if (A.is_identity(u) && B.is_identity(v)) continue;
                if (f.mor(u) != g.mor(v)) continue;
                const ObjId o2 = r.find(A.tgt(u), B.tgt(v));
                r.morphism_lookup.emplace(key2(u, v), static_cast<MorId>(morphisms.size()));
                morphisms.push_back({pair_name(A.morphism_name(u), B.morphism_name(v)), o, o2});
                parts.emplace_back(u, v);
            }
    }
    r.apex = tabulate_category(names, morphisms, identity, [&](MorId h, MorId k) {
        return r.morphism_lookup.at(
            key2(A.compose(parts[h].first, parts[k].first), B.compose(parts[h].second, parts[k].second)));
    });
    r.proj_left = Functor{r.apex, f.dom, {}, {}};
    r.proj_right = Functor{r.apex, g.dom, {}, {}};
    for (const auto& [a, b] : r.pairs) {
        r.proj_left.obj_map.push_back(a);
        r.proj_right.obj_map.push_back(b);
    }
    for (const auto& [u, v] : parts) {
        r.proj_left.mor_map.push_back(u);
        r.proj_right.mor_map.push_back(v);
    }
    return r;
}

Functor pullback_pairing(const PullbackResult& pb, const Functor& left, const Functor& right) {
    if (!same_category(left.dom, right.dom) || !same_category(left.cod, pb.proj_left.cod) ||
        !same_category(right.cod, pb.proj_right.cod))
        throw std::invalid_argument("pullback_pairing: legs do not form a cone over the cospan");
    Functor h{left.dom, pb.apex, std::vector<ObjId>(left.obj_map.size()),
              std::vector<MorId>(left.mor_map.size())};
    for (std::size_t t = 0; t < left.obj_map.size(); ++t) {
        h.obj_map[t] = pb.find(left.obj_map[t], right.obj_map[t]);
        if (h.obj_map[t] == kNone) throw std::invalid_argument("pullback_pairing: legs do not commute");
    }
    for (std::size_t w = 0; w < left.mor_map.size(); ++w) {
        h.mor_map[w] = pb.find_morphism(left.mor_map[w], right.mor_map[w]);
        if (h.mor_map[w] == kNone) throw std::invalid_argument("pullback_pairing: legs do not commute");
    }
    return h;
}

ProductOver product_over(const Functor& p, const Functor& q) {
    require_same_codomain(p, q, "product_over");
    ProductOver r{pullback(p, q), {}};
    r.structure = compose(p, r.pullback.proj_left);
    return r;
}

const Functor& Slice::projection() const { return is_coslice ? comma.proj_right : comma.proj_left; }

Slice slice(const CategoryPtr& x, ObjId at) {
    Slice s{comma(identity_functor(x), point(x, at)), at, kNone, false};
    for (ObjId o = 0; o < s.comma.apex->num_objects(); ++o)
        if (s.comma.tags[o].connecting == x->identity(at)) s.top = o;
    return s;
}

Slice coslice(const CategoryPtr& x, ObjId at) {
    Slice s{comma(point(x, at), identity_functor(x)), at, kNone, true};
    for (ObjId o = 0; o < s.comma.apex->num_objects(); ++o)
        if (s.comma.tags[o].connecting == x->identity(at)) s.top = o;
    return s;
}

CategoryPtr opposite(const FiniteCategory& x) {
    const int m = x.num_morphisms();
    std::vector<Morphism> morphisms;
    morphisms.reserve(m);
    for (MorId f = 0; f < m; ++f) morphisms.push_back({x.morphism_name(f), x.tgt(f), x.src(f)});
    std::vector<MorId> identity(x.num_objects());
    for (ObjId a = 0; a < x.num_objects(); ++a) identity[a] = x.identity(a);
    std::vector<MorId> table(static_cast<std::size_t>(m) * m, kNone);
    for (MorId g = 0; g < m; ++g)
        for (MorId f = 0; f < m; ++f) table[static_cast<std::size_t>(g) * m + f] = x.compose(f, g);
    return std::make_shared<FiniteCategory>(x.object_names(), std::move(morphisms), std::move(identity),
                                            std::move(table));
}

CategoryPtr opposite(const CategoryPtr& x) { return opposite(*x); }

Functor opposite(const Functor& f) { return Functor{opposite(f.dom), opposite(f.cod), f.obj_map, f.mor_map}; }

Functor opposite(const Functor& f, const CategoryPtr& dom_op, const CategoryPtr& cod_op) {
    return Functor{dom_op, cod_op, f.obj_map, f.mor_map};
}

Subcategory full_subcategory(const CategoryPtr& x, const std::vector<ObjId>& objects) {
    std::vector<ObjId> local(x->num_objects(), kNone);
    std::vector<std::string> names;
    for (ObjId a : objects) {
        local[a] = static_cast<ObjId>(names.size());
        names.push_back(x->object_name(a));
    }
    std::vector<Morphism> morphisms;
    std::vector<MorId> identity(objects.size());
    std::vector<MorId> original;
    std::vector<MorId> local_mor(x->num_morphisms(), kNone);
    for (MorId f = 0; f < x->num_morphisms(); ++f) {
        if (local[x->src(f)] == kNone || local[x->tgt(f)] == kNone) continue;
        local_mor[f] = static_cast<MorId>(morphisms.size());
        if (x->is_identity(f)) identity[local[x->src(f)]] = local_mor[f];
        morphisms.push_back({x->morphism_name(f), local[x->src(f)], local[x->tgt(f)]});
        original.push_back(f);
    }
    auto sub = tabulate_category(names, morphisms, identity, [&](MorId g, MorId f) {
        return local_mor[x->compose(original[g], original[f])];
    });
    return {sub, Functor{sub, x, objects, original}};
}

CategoryPtr product(const CategoryPtr& a, const CategoryPtr& b) {
    const auto& A = *a;
    const auto& B = *b;
    std::vector<std::string> names;
    for (ObjId x = 0; x < A.num_objects(); ++x)
        for (ObjId y = 0; y < B.num_objects(); ++y) names.push_back(pair_name(A.object_name(x), B.object_name(y)));
    const int nb = B.num_objects();
    const int mb = B.num_morphisms();
    std::vector<Morphism> morphisms;
    std::vector<MorId> identity(names.size());
    for (MorId u = 0; u < A.num_morphisms(); ++u)
        for (MorId v = 0; v < mb; ++v) {
            const ObjId s = A.src(u) * nb + B.src(v);
            const ObjId t = A.tgt(u) * nb + B.tgt(v);
            const bool ident = A.is_identity(u) && B.is_identity(v);
            if (ident) identity[s] = static_cast<MorId>(morphisms.size());
            morphisms.push_back({ident ? identity_id(names[s]) : pair_name(A.morphism_name(u), B.morphism_name(v)), s, t});
        }
    return tabulate_category(names, morphisms, identity, [&](MorId g, MorId f) {
        return A.compose(g / mb, f / mb) * mb + B.compose(g % mb, f % mb);
    });
}

CategoryPtr coproduct(const CategoryPtr& a, const CategoryPtr& b) {
    std::vector<std::string> names;
    std::vector<Morphism> morphisms;
    std::vector<MorId> identity;
    const CategoryPtr parts[2] = {a, b};
    std::vector<int> obj_offset{0, a->num_objects()};
    std::vector<int> mor_offset{0, a->num_morphisms()};
    for (int side = 0; side < 2; ++side) {
        const auto& C = *parts[side];
        const std::string prefix = side == 0 ? "0." : "1.";
        for (ObjId x = 0; x < C.num_objects(); ++x) names.push_back(prefix + C.object_name(x));
    }
    identity.resize(names.size());
    for (int side = 0; side < 2; ++side) {
        const auto& C = *parts[side];
        const std::string prefix = side == 0 ? "0." : "1.";
        for (MorId f = 0; f < C.num_morphisms(); ++f) {
            const ObjId s = C.src(f) + obj_offset[side];
            if (C.is_identity(f)) identity[s] = static_cast<MorId>(morphisms.size());
            morphisms.push_back({C.is_identity(f) ? identity_id(names[s]) : prefix + C.morphism_name(f), s,
                                 C.tgt(f) + obj_offset[side]});
        }
    }
    return tabulate_category(names, morphisms, identity, [&](MorId g, MorId f) {
        const int side = f >= mor_offset[1] ? 1 : 0;
        return parts[side]->compose(g - mor_offset[side], f - mor_offset[side]) + mor_offset[side];
    });
}

}  // namespace balcat
