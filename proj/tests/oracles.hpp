#pragma once

// Brute-force reference computations used to cross-check the library. They
// work directly on composition tables and avoid the library's comma,
// pullback, component and search code.

#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "balcat/category.hpp"
#include "balcat/constructions.hpp"
#include "balcat/factorization.hpp"
#include "balcat/instances.hpp"

namespace oracle {

using balcat::CategoryPtr;
using balcat::FiniteCategory;
using balcat::Functor;
using balcat::kNone;
using balcat::MorId;
using balcat::ObjId;

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void join(int a, int b) { parent[find(a)] = find(b); }
    int classes() {
        int n = 0;
        for (std::size_t i = 0; i < parent.size(); ++i) n += find(static_cast<int>(i)) == static_cast<int>(i);
        return n;
    }
    /// Class numbers 0..k-1 in order of first appearance.
    std::vector<int> labels() {
        std::map<int, int> seen;
        std::vector<int> out(parent.size());
        for (std::size_t i = 0; i < parent.size(); ++i) {
            auto [it, fresh] = seen.emplace(find(static_cast<int>(i)), static_cast<int>(seen.size()));
            out[i] = it->second;
        }
        return out;
    }
};

/// Arrows x -> y found by scanning the morphism table.
inline std::vector<MorId> arrows(const FiniteCategory& X, ObjId x, ObjId y) {
    std::vector<MorId> out;
    for (MorId u = 0; u < X.num_morphisms(); ++u)
        if (X.morphism(u).src == x && X.morphism(u).tgt == y) out.push_back(u);
    return out;
}

inline int hom_count(const FiniteCategory& X, ObjId x, ObjId y) { return static_cast<int>(arrows(X, x, y).size()); }

/// Items (a, α: x -> q a) of x\q with their zig-zag classes.
struct UnderClasses {
    std::vector<std::pair<ObjId, MorId>> items;
    std::vector<int> label;
    int count = 0;
    int class_of(ObjId a, MorId alpha) const {
        for (std::size_t i = 0; i < items.size(); ++i)
            if (items[i] == std::make_pair(a, alpha)) return label[i];
        return -1;
    }
};

inline UnderClasses under_classes(const Functor& q, ObjId x) {
    const auto& A = *q.dom;
    const auto& X = *q.cod;
    UnderClasses r;
    for (ObjId a = 0; a < A.num_objects(); ++a)
        for (MorId alpha : arrows(X, x, q.obj(a))) r.items.emplace_back(a, alpha);
    UnionFind uf(r.items.size());
    for (std::size_t i = 0; i < r.items.size(); ++i)
        for (MorId v = 0; v < A.num_morphisms(); ++v) {
            if (A.morphism(v).src != r.items[i].first) continue;
            const std::pair<ObjId, MorId> moved{A.morphism(v).tgt, X.compose(q.mor(v), r.items[i].second)};
            for (std::size_t j = 0; j < r.items.size(); ++j)
                if (r.items[j] == moved) uf.join(static_cast<int>(i), static_cast<int>(j));
        }
    r.label = uf.labels();
    r.count = uf.classes();
    return r;
}

/// |π0(x\q)|.
inline int components_under(const Functor& q, ObjId x) { return under_classes(q, x).count; }

inline bool is_final(const Functor& p) {
    for (ObjId x = 0; x < p.cod->num_objects(); ++x)
        if (oracle::components_under(p, x) != 1) return false;
    return true;
}

/// Unique lifting of every arrow at every object over its target.
inline bool is_discrete_fibration(const Functor& m) {
    const auto& A = *m.dom;
    const auto& X = *m.cod;
    for (ObjId a = 0; a < A.num_objects(); ++a)
        for (MorId u = 0; u < X.num_morphisms(); ++u) {
            if (X.morphism(u).tgt != m.obj(a)) continue;
            int lifts = 0;
            for (MorId v = 0; v < A.num_morphisms(); ++v)
                lifts += A.morphism(v).tgt == a && m.mor(v) == u;
            if (lifts != 1) return false;
        }
    return true;
}

/// The presheaf x ↦ π0(x\q) acting by precomposition.
inline balcat::Presheaf reflect_left(const Functor& q) {
    const auto& X = *q.cod;
    std::vector<UnderClasses> under;
    for (ObjId x = 0; x < X.num_objects(); ++x) under.push_back(under_classes(q, x));
    balcat::Presheaf p{q.cod, std::vector<std::vector<std::string>>(X.num_objects()),
                       std::vector<std::vector<int>>(X.num_morphisms())};
    for (ObjId x = 0; x < X.num_objects(); ++x)
        for (int k = 0; k < under[x].count; ++k) p.fiber[x].push_back(std::to_string(k));
    for (MorId u = 0; u < X.num_morphisms(); ++u) {
        const ObjId from = X.morphism(u).src, to = X.morphism(u).tgt;
        p.action[u].assign(under[to].count, -1);
        for (std::size_t i = 0; i < under[to].items.size(); ++i) {
            const auto [a, alpha] = under[to].items[i];
            p.action[u][under[to].label[i]] = under[from].class_of(a, X.compose(alpha, u));
        }
    }
    return p;
}

struct Factorization {
    CategoryPtr mid;
    Functor e;
    Functor m;
};

/// Elements of p built from raw tables: objects (x|s), arrows (u|s) from
/// (x', s·u) to (x, s).
inline Factorization elements_of(const balcat::Presheaf& p) {
    const auto& X = *p.base;
    std::vector<std::string> objects;
    std::vector<std::vector<ObjId>> obj_at(X.num_objects());
    for (ObjId x = 0; x < X.num_objects(); ++x)
        for (int s = 0; s < p.fiber_size(x); ++s) {
            obj_at[x].push_back(static_cast<ObjId>(objects.size()));
            objects.push_back("(" + X.object_name(x) + "|" + p.fiber[x][s] + ")");
        }
    std::vector<balcat::Morphism> morphisms;
    std::map<std::pair<MorId, int>, MorId> mor_at;
    std::vector<MorId> over;
    for (MorId u = 0; u < X.num_morphisms(); ++u) {
        const ObjId src = X.morphism(u).src, tgt = X.morphism(u).tgt;
        for (int s = 0; s < p.fiber_size(tgt); ++s) {
            const ObjId a = obj_at[src][p.action[u][s]], b = obj_at[tgt][s];
            mor_at[{u, s}] = static_cast<MorId>(morphisms.size());
            const std::string id =
                X.is_identity(u) ? balcat::identity_id(objects[b]) : "(" + X.morphism_name(u) + "|" + p.fiber[tgt][s] + ")";
            morphisms.push_back({id, a, b});
            over.push_back(u);
        }
    }
    std::vector<MorId> identity(objects.size());
    for (ObjId x = 0; x < X.num_objects(); ++x)
        for (int s = 0; s < p.fiber_size(x); ++s) identity[obj_at[x][s]] = mor_at[{X.identity(x), s}];
    const std::size_t n = morphisms.size();
    std::vector<MorId> composition(n * n, kNone);
    std::vector<int> label_of(n);
    for (const auto& [key, id] : mor_at) label_of[id] = key.second;
    for (MorId g = 0; g < static_cast<MorId>(n); ++g)
        for (MorId f = 0; f < static_cast<MorId>(n); ++f)
            if (morphisms[f].tgt == morphisms[g].src)
                composition[g * n + f] = mor_at[{X.compose(over[g], over[f]), label_of[g]}];
    auto mid = std::make_shared<const FiniteCategory>(objects, morphisms, identity, composition);
    Functor m{mid, p.base, std::vector<ObjId>(objects.size()), over};
    for (ObjId x = 0; x < X.num_objects(); ++x)
        for (int s = 0; s < p.fiber_size(x); ++s) m.obj_map[obj_at[x][s]] = x;
    return {mid, Functor{nullptr, mid, {}, {}}, m};
}

/// Final / discrete-fibration factorization from first principles.
inline Factorization factorize_left(const Functor& q) {
    const auto& A = *q.dom;
    const auto& X = *q.cod;
    const balcat::Presheaf p = reflect_left(q);
    Factorization r = elements_of(p);
    std::vector<UnderClasses> under;
    for (ObjId x = 0; x < X.num_objects(); ++x) under.push_back(under_classes(q, x));
    auto object_of = [&](ObjId x, int s) {
        for (ObjId o = 0; o < r.mid->num_objects(); ++o)
            if (r.m.obj(o) == x && r.mid->object_name(o) == "(" + X.object_name(x) + "|" + p.fiber[x][s] + ")") return o;
        return kNone;
    };
    r.e = Functor{q.dom, r.mid, std::vector<ObjId>(A.num_objects()), std::vector<MorId>(A.num_morphisms())};
    for (ObjId a = 0; a < A.num_objects(); ++a)
        r.e.obj_map[a] = object_of(q.obj(a), under[q.obj(a)].class_of(a, X.identity(q.obj(a))));
    for (MorId v = 0; v < A.num_morphisms(); ++v) {
        const ObjId b = A.morphism(v).tgt;
        const ObjId target = r.e.obj(b);
        for (MorId w = 0; w < r.mid->num_morphisms(); ++w)
            if (r.m.mor(w) == q.mor(v) && r.mid->morphism(w).tgt == target) r.e.mor_map[v] = w;
    }
    return r;
}

inline Functor opposite_functor(const Functor& f) { return balcat::opposite(f); }

/// Initial / discrete-opfibration factorization through opposites.
inline Factorization factorize_right(const Functor& q) {
    const Factorization l = oracle::factorize_left(opposite_functor(q));
    const CategoryPtr mid = balcat::opposite(l.mid);
    return {mid, balcat::opposite(l.e, balcat::opposite(q.dom), mid),
            balcat::opposite(l.m, mid, balcat::opposite(q.cod))};
}

/// |π0| of the strict pullback of p and q.
inline int tensor_size(const Functor& p, const Functor& q) {
    const auto& A = *p.dom;
    const auto& B = *q.dom;
    std::vector<std::pair<ObjId, ObjId>> pairs;
    for (ObjId a = 0; a < A.num_objects(); ++a)
        for (ObjId b = 0; b < B.num_objects(); ++b)
            if (p.obj(a) == q.obj(b)) pairs.emplace_back(a, b);
    UnionFind uf(pairs.size());
    auto index = [&](ObjId a, ObjId b) {
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (pairs[i] == std::make_pair(a, b)) return static_cast<int>(i);
        return -1;
    };
    for (MorId u = 0; u < A.num_morphisms(); ++u)
        for (MorId v = 0; v < B.num_morphisms(); ++v)
            if (p.mor(u) == q.mor(v)) {
                const int i = index(A.morphism(u).src, B.morphism(v).src);
                const int j = index(A.morphism(u).tgt, B.morphism(v).tgt);
                if (i >= 0 && j >= 0) uf.join(i, j);
            }
    return uf.classes();
}

/// Maps over X from q into the category of elements of a copresheaf c,
/// counted by backtracking over the objects of q's domain. Returns nullopt
/// past `budget` search nodes.
inline std::optional<std::uint64_t> count_sections(const Functor& q, const balcat::Copresheaf& c,
                                                   std::uint64_t budget = 2'000'000) {
    const auto& A = *q.dom;
    std::vector<int> choice(A.num_objects(), -1);
    std::uint64_t nodes = 0, found = 0;
    bool over_budget = false;
    std::function<void(ObjId)> go = [&](ObjId a) {
        if (over_budget) return;
        if (a == A.num_objects()) {
            ++found;
            return;
        }
        for (int s = 0; s < c.fiber_size(q.obj(a)); ++s) {
            if (++nodes > budget) {
                over_budget = true;
                return;
            }
            choice[a] = s;
            bool ok = true;
            for (MorId v = 0; v < A.num_morphisms() && ok; ++v) {
                const ObjId from = A.morphism(v).src, to = A.morphism(v).tgt;
                if (from > a || to > a) continue;
                ok = c.action[q.mor(v)][choice[from]] == choice[to];
            }
            if (ok) go(a + 1);
        }
        choice[a] = -1;
    };
    go(0);
    if (over_budget) return std::nullopt;
    return found;
}

/// f/y -> Y/y is final for every y, checked on raw tables: for each
/// (y1, β: y1 -> y), the category of (x, γ: f x -> y, δ: y1 -> f x) with
/// γ∘δ = β is nonempty and connected.
inline bool is_dense(const Functor& f) {
    const auto& A = *f.dom;
    const auto& Y = *f.cod;
    for (ObjId y = 0; y < Y.num_objects(); ++y)
        for (MorId beta = 0; beta < Y.num_morphisms(); ++beta) {
            if (Y.morphism(beta).tgt != y) continue;
            const ObjId y1 = Y.morphism(beta).src;
            struct Item {
                ObjId x;
                MorId gamma, delta;
            };
            std::vector<Item> items;
            for (ObjId x = 0; x < A.num_objects(); ++x)
                for (MorId gamma : arrows(Y, f.obj(x), y))
                    for (MorId delta : arrows(Y, y1, f.obj(x)))
                        if (Y.compose(gamma, delta) == beta) items.push_back({x, gamma, delta});
            if (items.empty()) return false;
            UnionFind uf(items.size());
            for (std::size_t i = 0; i < items.size(); ++i)
                for (std::size_t j = 0; j < items.size(); ++j)
                    for (MorId u : arrows(A, items[i].x, items[j].x))
                        if (Y.compose(items[j].gamma, f.mor(u)) == items[i].gamma &&
                            Y.compose(f.mor(u), items[i].delta) == items[j].delta)
                            uf.join(static_cast<int>(i), static_cast<int>(j));
            if (uf.classes() != 1) return false;
        }
    return true;
}

/// Least upper bound by exhaustive comparison.
inline std::optional<int> poset_sup(const balcat::Poset& p, const std::vector<int>& subset) {
    std::optional<int> best;
    for (int c = 0; c < p.size(); ++c) {
        bool upper = true;
        for (int s : subset) upper = upper && p.leq(s, c);
        if (!upper) continue;
        bool least = true;
        for (int d = 0; d < p.size(); ++d) {
            bool d_upper = true;
            for (int s : subset) d_upper = d_upper && p.leq(s, d);
            if (d_upper && !p.leq(c, d)) least = false;
        }
        if (least) best = c;
    }
    return best;
}

/// Paths x -> y of an acyclic graph by depth-first search over edge lists.
inline int graph_path_count(const balcat::Graph& g, int x, int y) {
    if (x == y) return 1;
    int n = 0;
    for (const auto& e : g.edges)
        if (e.src == x && e.tgt != e.src) n += graph_path_count(g, e.tgt, y);
    return n;
}

}  // namespace oracle
