#include "balcat/instances.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace balcat {

// ---------------------------------------------------------------------------
// Posets

Poset::Poset(std::vector<std::string> elements, const std::vector<std::pair<std::string, std::string>>& pairs)
    : elements_(std::move(elements)) {
    const std::size_t n = elements_.size();
    std::vector<std::string> issues;
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < n; ++i)
        if (!index.emplace(elements_[i], static_cast<int>(i)).second)
            issues.push_back("duplicate element '" + elements_[i] + "'");
    leq_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) leq_[i * n + i] = 1;
    for (const auto& [a, b] : pairs) {
        auto ia = index.find(a);
        auto ib = index.find(b);
        if (ia == index.end()) issues.push_back("leq pair names unknown element '" + a + "'");
        if (ib == index.end()) issues.push_back("leq pair names unknown element '" + b + "'");
        if (ia != index.end() && ib != index.end()) leq_[ia->second * n + ib->second] = 1;
    }
    if (!issues.empty()) throw ValidationError(issues);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (leq_[i * n + k])
                for (std::size_t j = 0; j < n; ++j)
                    if (leq_[k * n + j]) leq_[i * n + j] = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (leq_[i * n + j] && leq_[j * n + i])
                issues.push_back("antisymmetry fails: '" + elements_[i] + "' and '" + elements_[j] +
                                 "' are below each other");
    if (!issues.empty()) throw ValidationError(issues);
}

Poset::Poset(std::vector<std::string> elements, std::vector<char> leq)
    : elements_(std::move(elements)), leq_(std::move(leq)) {}

std::optional<int> Poset::find(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (elements_[i] == name) return i;
    return std::nullopt;
}

std::vector<std::pair<int, int>> Poset::covers() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < size(); ++a)
        for (int b = 0; b < size(); ++b) {
            if (a == b || !leq(a, b)) continue;
            bool between = false;
            for (int c = 0; c < size() && !between; ++c)
                between = c != a && c != b && leq(a, c) && leq(c, b);
            if (!between) out.emplace_back(a, b);
        }
    return out;
}

PosetPtr discrete_poset(const std::vector<std::string>& elements) {
    return std::make_shared<const Poset>(elements, std::vector<std::pair<std::string, std::string>>{});
}

PosetPtr chain_poset(int n) {
    std::vector<std::string> names;
    std::vector<std::pair<std::string, std::string>> pairs;
    for (int i = 0; i < n; ++i) {
        names.push_back(std::to_string(i));
        if (i) pairs.emplace_back(std::to_string(i - 1), std::to_string(i));
    }
    return std::make_shared<const Poset>(names, pairs);
}

void validate_monotone(const MonotoneMap& f) {
    std::vector<std::string> issues;
    if (static_cast<int>(f.map.size()) != f.dom->size()) issues.push_back("map does not cover the domain");
    for (int v : f.map)
        if (v < 0 || v >= f.cod->size()) issues.push_back("map leaves the codomain");
    if (!issues.empty()) throw ValidationError(issues);
    for (int a = 0; a < f.dom->size(); ++a)
        for (int b = 0; b < f.dom->size(); ++b)
            if (f.dom->leq(a, b) && !f.cod->leq(f(a), f(b)))
                issues.push_back("not monotone: '" + f.dom->name(a) + "' <= '" + f.dom->name(b) + "' but '" +
                                 f.cod->name(f(a)) + "' is not below '" + f.cod->name(f(b)) + "'");
    if (!issues.empty()) throw ValidationError(issues);
}

bool operator==(const MonotoneMap& a, const MonotoneMap& b) {
    return (a.dom == b.dom || *a.dom == *b.dom) && (a.cod == b.cod || *a.cod == *b.cod) && a.map == b.map;
}

MonotoneMap monotone_identity(const PosetPtr& p) {
    MonotoneMap f{p, p, std::vector<int>(p->size())};
    for (int i = 0; i < p->size(); ++i) f.map[i] = i;
    return f;
}

MonotoneMap monotone_compose(const MonotoneMap& g, const MonotoneMap& f) {
    if (!(f.cod == g.dom || *f.cod == *g.dom)) throw std::invalid_argument("monotone_compose: codomain mismatch");
    MonotoneMap h{f.dom, g.cod, std::vector<int>(f.dom->size())};
    for (int a = 0; a < f.dom->size(); ++a) h.map[a] = g(f(a));
    return h;
}

MonotoneMap subposet_inclusion(const PosetPtr& p, const std::vector<int>& members) {
    const std::size_t n = members.size();
    std::vector<std::string> names;
    std::vector<char> leq(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        names.push_back(p->name(members[i]));
        for (std::size_t j = 0; j < n; ++j) leq[i * n + j] = p->leq(members[i], members[j]);
    }
    return MonotoneMap{std::make_shared<const Poset>(names, leq), p, members};
}

bool is_lower_set(const Poset& p, const std::vector<int>& members) {
    std::vector<char> in(p.size(), 0);
    for (int a : members) in[a] = 1;
    for (int a : members)
        for (int b = 0; b < p.size(); ++b)
            if (p.leq(b, a) && !in[b]) return false;
    return true;
}

bool is_upper_set(const Poset& p, const std::vector<int>& members) {
    std::vector<char> in(p.size(), 0);
    for (int a : members) in[a] = 1;
    for (int a : members)
        for (int b = 0; b < p.size(); ++b)
            if (p.leq(a, b) && !in[b]) return false;
    return true;
}

std::vector<int> down_closure(const Poset& p, const std::vector<int>& members) {
    std::vector<int> out;
    for (int b = 0; b < p.size(); ++b)
        if (std::any_of(members.begin(), members.end(), [&](int a) { return p.leq(b, a); })) out.push_back(b);
    return out;
}

std::vector<int> up_closure(const Poset& p, const std::vector<int>& members) {
    std::vector<int> out;
    for (int b = 0; b < p.size(); ++b)
        if (std::any_of(members.begin(), members.end(), [&](int a) { return p.leq(a, b); })) out.push_back(b);
    return out;
}

bool is_cofinal(const MonotoneMap& f) {
    for (int x = 0; x < f.cod->size(); ++x) {
        bool hit = false;
        for (int a = 0; a < f.dom->size() && !hit; ++a) hit = f.cod->leq(x, f(a));
        if (!hit) return false;
    }
    return true;
}

bool is_coinitial(const MonotoneMap& f) {
    for (int x = 0; x < f.cod->size(); ++x) {
        bool hit = false;
        for (int a = 0; a < f.dom->size() && !hit; ++a) hit = f.cod->leq(f(a), x);
        if (!hit) return false;
    }
    return true;
}

namespace {

bool is_order_embedding(const MonotoneMap& f) {
    for (int a = 0; a < f.dom->size(); ++a)
        for (int b = 0; b < f.dom->size(); ++b)
            if (f.dom->leq(a, b) != f.cod->leq(f(a), f(b))) return false;
    return std::set<int>(f.map.begin(), f.map.end()).size() == f.map.size();
}

std::vector<int> image_of(const MonotoneMap& f) {
    std::set<int> s(f.map.begin(), f.map.end());
    return {s.begin(), s.end()};
}

PosFactorization factor_through(const MonotoneMap& f, const std::vector<int>& closure) {
    const MonotoneMap m = subposet_inclusion(f.cod, closure);
    std::vector<int> position(f.cod->size(), -1);
    for (std::size_t k = 0; k < closure.size(); ++k) position[closure[k]] = static_cast<int>(k);
    MonotoneMap e{f.dom, m.dom, std::vector<int>(f.dom->size())};
    for (int a = 0; a < f.dom->size(); ++a) e.map[a] = position[f(a)];
    return {e, m.dom, m};
}

}  // namespace

bool is_lower_set_inclusion(const MonotoneMap& f) { return is_order_embedding(f) && is_lower_set(*f.cod, f.map); }
bool is_upper_set_inclusion(const MonotoneMap& f) { return is_order_embedding(f) && is_upper_set(*f.cod, f.map); }
bool is_order_isomorphism(const MonotoneMap& f) { return is_order_embedding(f) && f.dom->size() == f.cod->size(); }

PosFactorization pos_factorize_left(const MonotoneMap& f) {
    validate_monotone(f);
    PosFactorization r = factor_through(f, down_closure(*f.cod, image_of(f)));
    if (!is_cofinal(r.e) || !is_lower_set_inclusion(r.m) || monotone_compose(r.m, r.e).map != f.map)
        throw InvariantError("pos_factorize_left: result is not a (cofinal, lower-set) factorization");
    return r;
}

PosFactorization pos_factorize_right(const MonotoneMap& f) {
    validate_monotone(f);
    PosFactorization r = factor_through(f, up_closure(*f.cod, image_of(f)));
    if (!is_coinitial(r.e) || !is_upper_set_inclusion(r.m) || monotone_compose(r.m, r.e).map != f.map)
        throw InvariantError("pos_factorize_right: result is not a (coinitial, upper-set) factorization");
    return r;
}

int pos_pi0(const Poset& p) { return p.size() > 0 ? 1 : 0; }

PosPullback pos_pullback(const MonotoneMap& f, const MonotoneMap& g) {
    if (!(f.cod == g.cod || *f.cod == *g.cod)) throw std::invalid_argument("pos_pullback: codomain mismatch");
    PosPullback pb;
    std::vector<std::string> names;
    for (int a = 0; a < f.dom->size(); ++a)
        for (int b = 0; b < g.dom->size(); ++b)
            if (f(a) == g(b)) {
                pb.pairs.emplace_back(a, b);
                names.push_back("(" + f.dom->name(a) + "|" + g.dom->name(b) + ")");
            }
    const std::size_t n = pb.pairs.size();
    std::vector<char> leq(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            leq[i * n + j] = f.dom->leq(pb.pairs[i].first, pb.pairs[j].first) &&
                             g.dom->leq(pb.pairs[i].second, pb.pairs[j].second);
    pb.apex = std::make_shared<const Poset>(names, leq);
    pb.left = MonotoneMap{pb.apex, f.dom, {}};
    pb.right = MonotoneMap{pb.apex, g.dom, {}};
    for (const auto& [a, b] : pb.pairs) {
        pb.left.map.push_back(a);
        pb.right.map.push_back(b);
    }
    return pb;
}

std::vector<int> pos_slice(const Poset& p, int x) { return down_closure(p, {x}); }
std::vector<int> pos_coslice(const Poset& p, int x) { return up_closure(p, {x}); }
int pos_hom(const Poset& p, int x, int y) { return p.leq(x, y) ? 1 : 0; }

std::optional<int> pos_sup(const Poset& p, const std::vector<int>& subset) {
    std::vector<int> bounds;
    for (int u = 0; u < p.size(); ++u)
        if (std::all_of(subset.begin(), subset.end(), [&](int a) { return p.leq(a, u); })) bounds.push_back(u);
    for (int u : bounds)
        if (std::all_of(bounds.begin(), bounds.end(), [&](int v) { return p.leq(u, v); })) return u;
    return std::nullopt;
}

bool pos_is_colimiting(const Poset& p, const std::vector<int>& subset, int x) {
    const auto s = pos_sup(p, subset);
    return s && *s == x;
}

bool pos_is_absolute(const Poset& p, const std::vector<int>& subset, int x) {
    return pos_is_colimiting(p, subset, x) && std::find(subset.begin(), subset.end(), x) != subset.end();
}

std::optional<std::vector<int>> pos_upper_adjoint(const MonotoneMap& f) {
    std::vector<int> g;
    for (int y = 0; y < f.cod->size(); ++y) {
        int best = -1;
        for (int x = 0; x < f.dom->size(); ++x) {
            if (!f.cod->leq(f(x), y)) continue;
            bool is_max = true;
            for (int z = 0; z < f.dom->size() && is_max; ++z)
                if (f.cod->leq(f(z), y)) is_max = f.dom->leq(z, x);
            if (is_max) best = x;
        }
        if (best < 0) return std::nullopt;
        g.push_back(best);
    }
    return g;
}

bool pos_is_dense(const MonotoneMap& f) {
    for (int y = 0; y < f.cod->size(); ++y)
        for (int y2 : pos_slice(*f.cod, y)) {
            bool covered = false;
            for (int x = 0; x < f.dom->size() && !covered; ++x)
                covered = f.cod->leq(y2, f(x)) && f.cod->leq(f(x), y);
            if (!covered) return false;
        }
    return true;
}

std::vector<int> pos_complement(const Poset& p, const std::vector<int>& lower_set, int s) {
    std::vector<char> in(p.size(), 0);
    for (int a : lower_set) in[a] = 1;
    std::vector<int> out;
    for (int x = 0; x < p.size(); ++x) {
        const int functions = in[x] ? s : 1;
        if (functions == 1) out.push_back(x);
    }
    return out;
}

CategoryPtr thin_category(const Poset& p) {
    std::vector<Morphism> morphisms;
    std::vector<MorId> identity(p.size());
    std::vector<MorId> between(static_cast<std::size_t>(p.size()) * p.size(), kNone);
    for (int a = 0; a < p.size(); ++a)
        for (int b = 0; b < p.size(); ++b) {
            if (!p.leq(a, b)) continue;
            between[static_cast<std::size_t>(a) * p.size() + b] = static_cast<MorId>(morphisms.size());
            if (a == b) {
                identity[a] = static_cast<MorId>(morphisms.size());
                morphisms.push_back({identity_id(p.name(a)), a, b});
            } else {
                morphisms.push_back({p.name(a) + "<=" + p.name(b), a, b});
            }
        }
    return tabulate_category(p.elements(), morphisms, identity, [&](MorId g, MorId f) {
        return between[static_cast<std::size_t>(morphisms[f].src) * p.size() + morphisms[g].tgt];
    });
}

Functor monotone_functor(const MonotoneMap& f, const CategoryPtr& dom, const CategoryPtr& cod) {
    Functor F{dom, cod, f.map, std::vector<MorId>(dom->num_morphisms())};
    for (MorId u = 0; u < dom->num_morphisms(); ++u) {
        const auto& h = cod->hom(f(dom->src(u)), f(dom->tgt(u)));
        if (h.size() != 1) throw std::invalid_argument("monotone_functor: categories are not the thin ones of the map");
        F.mor_map[u] = h[0];
    }
    return F;
}

Presheaf lower_set_presheaf(const CategoryPtr& thin, const std::vector<int>& lower_set) {
    std::vector<char> in(thin->num_objects(), 0);
    for (int a : lower_set) in[a] = 1;
    Presheaf m{thin, std::vector<std::vector<std::string>>(thin->num_objects()),
               std::vector<std::vector<int>>(thin->num_morphisms())};
    for (ObjId x = 0; x < thin->num_objects(); ++x)
        if (in[x]) m.fiber[x] = {"*"};
    for (MorId u = 0; u < thin->num_morphisms(); ++u)
        if (in[thin->tgt(u)]) {
            if (!in[thin->src(u)]) throw std::invalid_argument("lower_set_presheaf: members do not form a lower set");
            m.action[u] = {0};
        }
    return m;
}

// ---------------------------------------------------------------------------
// Backends

FinCatBfc fincat_bfc() {
    FinCatBfc b;
    b.name = "fincat";
    b.terminal = [] { return terminal_category(); };
    b.bang = [](const CategoryPtr& x) { return to_terminal(x); };
    b.identity = [](const CategoryPtr& x) { return identity_functor(x); };
    b.compose = [](const Functor& g, const Functor& f) { return compose(g, f); };
    b.dom = [](const Functor& f) { return f.dom; };
    b.cod = [](const Functor& f) { return f.cod; };
    b.equal = [](const Functor& a, const Functor& b2) { return a == b2; };
    b.is_iso = [](const Functor& f) { return is_isomorphism(f); };
    b.pullback = [](const Functor& f, const Functor& g) {
        auto pb = pullback(f, g);
        return BfcPullback<CategoryPtr, Functor>{pb.apex, pb.proj_left, pb.proj_right};
    };
    b.in_E = [](const Functor& f) { return is_final(f).holds; };
    b.in_M = [](const Functor& f) { return is_discrete_fibration(f).holds; };
    b.in_E2 = [](const Functor& f) { return is_initial(f).holds; };
    b.in_M2 = [](const Functor& f) { return is_discrete_opfibration(f).holds; };
    b.factor_left = [](const Functor& f) {
        auto r = factorize_left(f);
        return BfcFactored<CategoryPtr, Functor>{r.e, r.mid, r.m};
    };
    b.factor_right = [](const Functor& f) {
        auto r = factorize_right(f);
        return BfcFactored<CategoryPtr, Functor>{r.e, r.mid, r.m};
    };
    b.points = [](const CategoryPtr& x) {
        std::vector<Functor> pts;
        for (ObjId a = 0; a < x->num_objects(); ++a) pts.push_back(point(x, a));
        return pts;
    };
    b.pi0 = [](const CategoryPtr& x) { return discrete_category(pi0(*x).elements); };
    return b;
}

namespace {

PosBfc poset_backend_common(const std::string& name) {
    PosBfc b;
    b.name = name;
    auto one = discrete_poset({"*"});
    b.terminal = [one] { return one; };
    b.bang = [one](const PosetPtr& p) { return MonotoneMap{p, one, std::vector<int>(p->size(), 0)}; };
    b.identity = [](const PosetPtr& p) { return monotone_identity(p); };
    b.compose = [](const MonotoneMap& g, const MonotoneMap& f) { return monotone_compose(g, f); };
    b.dom = [](const MonotoneMap& f) { return f.dom; };
    b.cod = [](const MonotoneMap& f) { return f.cod; };
    b.equal = [](const MonotoneMap& a, const MonotoneMap& c) { return a == c; };
    b.is_iso = [](const MonotoneMap& f) { return is_order_isomorphism(f); };
    b.pullback = [](const MonotoneMap& f, const MonotoneMap& g) {
        auto pb = pos_pullback(f, g);
        return BfcPullback<PosetPtr, MonotoneMap>{pb.apex, pb.left, pb.right};
    };
    b.points = [one](const PosetPtr& p) {
        std::vector<MonotoneMap> pts;
        for (int a = 0; a < p->size(); ++a) pts.push_back(MonotoneMap{one, p, {a}});
        return pts;
    };
    return b;
}

}  // namespace

PosBfc pos_bfc() {
    PosBfc b = poset_backend_common("pos");
    b.in_E = [](const MonotoneMap& f) { return is_cofinal(f); };
    b.in_M = [](const MonotoneMap& f) { return is_lower_set_inclusion(f); };
    b.in_E2 = [](const MonotoneMap& f) { return is_coinitial(f); };
    b.in_M2 = [](const MonotoneMap& f) { return is_upper_set_inclusion(f); };
    b.factor_left = [](const MonotoneMap& f) {
        auto r = pos_factorize_left(f);
        return BfcFactored<PosetPtr, MonotoneMap>{r.e, r.mid, r.m};
    };
    b.factor_right = [](const MonotoneMap& f) {
        auto r = pos_factorize_right(f);
        return BfcFactored<PosetPtr, MonotoneMap>{r.e, r.mid, r.m};
    };
    b.pi0 = [](const PosetPtr& p) {
        return pos_pi0(*p) ? discrete_poset({"*"}) : discrete_poset({});
    };
    return b;
}

PosBfc finset_bfc() {
    PosBfc b = poset_backend_common("finset");
    auto surjective = [](const MonotoneMap& f) {
        return static_cast<int>(std::set<int>(f.map.begin(), f.map.end()).size()) == f.cod->size();
    };
    auto injective = [](const MonotoneMap& f) {
        return std::set<int>(f.map.begin(), f.map.end()).size() == f.map.size();
    };
    b.in_E = surjective;
    b.in_E2 = surjective;
    b.in_M = injective;
    b.in_M2 = injective;
    auto image = [](const MonotoneMap& f) {
        const PosFactorization r = factor_through(f, image_of(f));
        return BfcFactored<PosetPtr, MonotoneMap>{r.e, r.mid, r.m};
    };
    b.factor_left = image;
    b.factor_right = image;
    b.pi0 = [](const PosetPtr& p) { return p; };
    return b;
}

// ---------------------------------------------------------------------------
// Graphs

void check_acyclic(const Graph& g) {
    const int n = static_cast<int>(g.nodes.size());
    std::vector<int> state(n, 0), parent_edge(n, -1);
    std::vector<std::vector<int>> out(n);
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
        if (g.edges[e].src != g.edges[e].tgt) out[g.edges[e].src].push_back(e);
    std::function<void(int)> visit = [&](int v) {
        state[v] = 1;
        for (int e : out[v]) {
            const int w = g.edges[e].tgt;
            if (state[w] == 1) {
                std::vector<std::string> cycle{g.nodes[w]};
                for (int u = v; u != w; u = g.edges[parent_edge[u]].src) cycle.push_back(g.nodes[u]);
                std::reverse(cycle.begin() + 1, cycle.end());
                std::string text;
                for (const auto& c : cycle) text += c + " -> ";
                throw ValidationError({"graph has a cycle: " + text + g.nodes[w]});
            }
            if (state[w] == 0) {
                parent_edge[w] = e;
                visit(w);
            }
        }
        state[v] = 2;
    };
    for (int v = 0; v < n; ++v)
        if (state[v] == 0) visit(v);
}

std::vector<std::vector<int>> graph_paths(const Graph& g, int x, int y) {
    check_acyclic(g);
    std::vector<std::vector<int>> out;
    std::vector<int> path;
    std::function<void(int)> walk = [&](int v) {
        if (v == y) out.push_back(path);
        for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
            if (g.edges[e].src != v || g.edges[e].tgt == v) continue;
            path.push_back(e);
            walk(g.edges[e].tgt);
            path.pop_back();
        }
    };
    walk(x);
    return out;
}

CategoryPtr free_category(const Graph& g) {
    check_acyclic(g);
    const int n = static_cast<int>(g.nodes.size());
    std::vector<Morphism> morphisms;
    std::vector<MorId> identity(n);
    std::map<std::vector<int>, MorId> by_path;
    std::vector<std::vector<int>> path_of;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (const auto& p : graph_paths(g, x, y)) {
                const MorId id = static_cast<MorId>(morphisms.size());
                std::string name;
                for (int e : p) name += (name.empty() ? "" : ".") + g.edges[e].id;
                if (p.empty()) {
                    identity[x] = id;
                    name = identity_id(g.nodes[x]);
                }
                morphisms.push_back({name, x, y});
                path_of.push_back(p);
                by_path[p] = p.empty() ? kNone : id;
            }
    return tabulate_category(g.nodes, morphisms, identity, [&](MorId gm, MorId f) {
        if (path_of[f].empty()) return gm;
        if (path_of[gm].empty()) return f;
        std::vector<int> joined = path_of[f];
        joined.insert(joined.end(), path_of[gm].begin(), path_of[gm].end());
        return by_path.at(joined);
    });
}

}  // namespace balcat
