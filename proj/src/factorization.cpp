#include "balcat/factorization.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "balcat/search.hpp"

namespace balcat {

namespace {

int find_root(std::vector<int>& parent, int x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

void unite(std::vector<int>& parent, int a, int b) {
    a = find_root(parent, a);
    b = find_root(parent, b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
}

// Components of x\p: pairs (b, β: x -> p b) under the zig-zags induced by
// morphisms of dom(p). Classes are named by their least pair name and listed
// in ascending name order.
struct UnderClasses {
    std::vector<int> offset;  // first pair index for each object b of dom(p)
    std::vector<std::pair<ObjId, MorId>> pairs;
    std::vector<int> class_of;
    std::vector<std::string> names;
    std::vector<int> representative;  // pair index per class

    int class_at(ObjId b, MorId beta, const FiniteCategory& X) const {
        return class_of[offset[b] + X.hom_position(beta)];
    }
};

UnderClasses under_classes(const Functor& p, ObjId x) {
    const auto& P = *p.dom;
    const auto& X = *p.cod;
    UnderClasses u;
    u.offset.resize(P.num_objects());
    for (ObjId b = 0; b < P.num_objects(); ++b) {
        u.offset[b] = static_cast<int>(u.pairs.size());
        for (MorId beta : X.hom(x, p.obj(b))) u.pairs.emplace_back(b, beta);
    }
    std::vector<int> parent(u.pairs.size());
    std::iota(parent.begin(), parent.end(), 0);
    for (int k = 0; k < static_cast<int>(u.pairs.size()); ++k) {
        const auto [b, beta] = u.pairs[k];
        for (MorId w : P.out_of(b)) {
            if (P.is_identity(w)) continue;
            const MorId moved = X.compose(p.mor(w), beta);
            unite(parent, k, u.offset[P.tgt(w)] + X.hom_position(moved));
        }
    }
    std::map<int, std::pair<std::string, int>> best;  // root -> (least name, pair)
    for (int k = 0; k < static_cast<int>(u.pairs.size()); ++k) {
        std::string name = "(" + P.object_name(u.pairs[k].first) + "|" + X.morphism_name(u.pairs[k].second) + ")";
        const int r = find_root(parent, k);
        auto it = best.find(r);
        if (it == best.end() || name < it->second.first) best[r] = {std::move(name), k};
    }
    std::vector<std::pair<std::string, int>> ordered;
    for (auto& [root, entry] : best) ordered.emplace_back(entry.first, root);
    std::sort(ordered.begin(), ordered.end());
    std::map<int, int> index_of_root;
    for (const auto& [name, root] : ordered) {
        index_of_root[root] = static_cast<int>(u.names.size());
        u.names.push_back(name);
        u.representative.push_back(best[root].second);
    }
    u.class_of.resize(u.pairs.size());
    for (int k = 0; k < static_cast<int>(u.pairs.size()); ++k) u.class_of[k] = index_of_root[find_root(parent, k)];
    return u;
}

struct LeftData {
    Presheaf presheaf;
    std::vector<UnderClasses> classes;
};

LeftData left_data(const Functor& q) {
    const auto& X = *q.cod;
    LeftData d;
    d.presheaf.base = q.cod;
    for (ObjId x = 0; x < X.num_objects(); ++x) {
        d.classes.push_back(under_classes(q, x));
        d.presheaf.fiber.push_back(d.classes.back().names);
    }
    d.presheaf.action.resize(X.num_morphisms());
    for (MorId alpha = 0; alpha < X.num_morphisms(); ++alpha) {
        const auto& target_classes = d.classes[X.tgt(alpha)];
        auto& row = d.presheaf.action[alpha];
        for (int rep : target_classes.representative) {
            const auto [b, beta] = target_classes.pairs[rep];
            row.push_back(d.classes[X.src(alpha)].class_at(b, X.compose(beta, alpha), X));
        }
    }
    return d;
}

std::string describe(const Functor& f) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (ObjId a = 0; a < f.dom->num_objects(); ++a) {
        os << (first ? "" : ", ") << f.dom->object_name(a) << "->" << f.cod->object_name(f.obj(a));
        first = false;
    }
    for (MorId u = 0; u < f.dom->num_morphisms(); ++u) {
        if (f.dom->is_identity(u)) continue;
        os << ", " << f.dom->morphism_name(u) << "->" << f.cod->morphism_name(f.mor(u));
    }
    os << "}";
    return os.str();
}

template <class Sheaf>
std::vector<std::string> sheaf_issues(const Sheaf& p, bool contravariant) {
    std::vector<std::string> issues;
    const auto& X = *p.base;
    if (static_cast<int>(p.fiber.size()) != X.num_objects()) return {"fiber table does not cover the base objects"};
    if (static_cast<int>(p.action.size()) != X.num_morphisms()) return {"action table does not cover the base morphisms"};
    auto from = [&](MorId a) { return contravariant ? X.tgt(a) : X.src(a); };
    auto to = [&](MorId a) { return contravariant ? X.src(a) : X.tgt(a); };
    for (MorId a = 0; a < X.num_morphisms(); ++a) {
        const auto& row = p.action[a];
        if (static_cast<int>(row.size()) != p.fiber_size(from(a))) {
            issues.push_back("action of '" + X.morphism_name(a) + "' has the wrong domain size");
            continue;
        }
        for (int s : row)
            if (s < 0 || s >= p.fiber_size(to(a)))
                issues.push_back("action of '" + X.morphism_name(a) + "' leaves its target fiber");
        if (X.is_identity(a))
            for (int s = 0; s < static_cast<int>(row.size()); ++s)
                if (row[s] != s) {
                    issues.push_back("identity '" + X.morphism_name(a) + "' does not act trivially");
                    break;
                }
    }
    if (!issues.empty()) return issues;
    for (MorId f = 0; f < X.num_morphisms(); ++f)
        for (MorId g : X.out_of(X.tgt(f))) {
            const MorId h = X.compose(g, f);
            const int n = contravariant ? p.fiber_size(X.tgt(g)) : p.fiber_size(X.src(f));
            for (int s = 0; s < n; ++s) {
                const int lhs = p.action[h][s];
                const int rhs = contravariant ? p.action[f][p.action[g][s]] : p.action[g][p.action[f][s]];
                if (lhs != rhs) {
                    issues.push_back("action does not respect the composite '" + X.morphism_name(g) + "' o '" +
                                     X.morphism_name(f) + "'");
                    break;
                }
            }
        }
    return issues;
}

template <class Sheaf>
Elements elements_impl(const Sheaf& p, bool contravariant) {
    const auto& X = *p.base;
    Elements el;
    std::vector<std::string> names;
    el.object_at.resize(X.num_objects());
    for (ObjId x = 0; x < X.num_objects(); ++x)
        for (const auto& s : p.fiber[x]) {
            el.object_at[x].push_back(static_cast<ObjId>(names.size()));
            names.push_back("(" + X.object_name(x) + "|" + s + ")");
        }
    std::vector<Morphism> morphisms;
    std::vector<MorId> identity(names.size());
    std::vector<std::pair<MorId, int>> label;  // (α, indexing element)
    el.morphism_at.resize(X.num_morphisms());
    for (MorId a = 0; a < X.num_morphisms(); ++a) {
        const ObjId indexed_at = contravariant ? X.tgt(a) : X.src(a);
        for (int s = 0; s < p.fiber_size(indexed_at); ++s) {
            const int moved = p.action[a][s];
            const ObjId src = contravariant ? el.object_at[X.src(a)][moved] : el.object_at[X.src(a)][s];
            const ObjId tgt = contravariant ? el.object_at[X.tgt(a)][s] : el.object_at[X.tgt(a)][moved];
            const MorId id = static_cast<MorId>(morphisms.size());
            el.morphism_at[a].push_back(id);
            if (X.is_identity(a)) {
                identity[src] = id;
                morphisms.push_back({identity_id(names[src]), src, tgt});
            } else {
                morphisms.push_back({"(" + X.morphism_name(a) + "|" + p.fiber[indexed_at][s] + ")", src, tgt});
            }
            label.emplace_back(a, s);
        }
    }
    el.category = tabulate_category(names, morphisms, identity, [&](MorId g, MorId f) {
        const MorId h = X.compose(label[g].first, label[f].first);
        return el.morphism_at[h][contravariant ? label[g].second : label[f].second];
    });
    el.projection = Functor{el.category, p.base, std::vector<ObjId>(names.size()), {}};
    for (ObjId x = 0; x < X.num_objects(); ++x)
        for (ObjId o : el.object_at[x]) el.projection.obj_map[o] = x;
    for (const auto& [a, s] : label) el.projection.mor_map.push_back(a);
    return el;
}

}  // namespace

std::vector<std::string> Presheaf::issues() const { return sheaf_issues(*this, true); }
std::vector<std::string> Copresheaf::issues() const { return sheaf_issues(*this, false); }

Elements elements(const Presheaf& p) { return elements_impl(p, true); }
Elements elements(const Copresheaf& p) { return elements_impl(p, false); }

Presheaf presheaf_of(const Functor& m) {
    const auto& A = *m.dom;
    const auto& X = *m.cod;
    Presheaf p{m.cod, std::vector<std::vector<std::string>>(X.num_objects()), {}};
    std::vector<int> position(A.num_objects());
    for (ObjId a = 0; a < A.num_objects(); ++a) {
        position[a] = static_cast<int>(p.fiber[m.obj(a)].size());
        p.fiber[m.obj(a)].push_back(A.object_name(a));
    }
    std::vector<std::vector<ObjId>> over(X.num_objects());
    for (ObjId a = 0; a < A.num_objects(); ++a) over[m.obj(a)].push_back(a);
    p.action.resize(X.num_morphisms());
    for (MorId alpha = 0; alpha < X.num_morphisms(); ++alpha)
        for (ObjId a : over[X.tgt(alpha)]) {
            int lifts = 0;
            ObjId source = kNone;
            for (MorId u : A.into(a))
                if (m.mor(u) == alpha) {
                    ++lifts;
                    source = A.src(u);
                }
            if (lifts != 1) throw std::invalid_argument("presheaf_of: functor is not a discrete fibration");
            p.action[alpha].push_back(position[source]);
        }
    return p;
}

Copresheaf copresheaf_of(const Functor& n) {
    const auto p = presheaf_of(opposite(n));
    return Copresheaf{n.cod, p.fiber, p.action};
}

Presheaf opposite_to_presheaf(const Copresheaf& c, const CategoryPtr& base_op) {
    return Presheaf{base_op, c.fiber, c.action};
}

Copresheaf opposite_to_copresheaf(const Presheaf& p, const CategoryPtr& base_op) {
    return Copresheaf{base_op, p.fiber, p.action};
}

Verdict is_discrete_fibration(const Functor& m) {
    const auto& A = *m.dom;
    const auto& X = *m.cod;
    for (ObjId a = 0; a < A.num_objects(); ++a)
        for (MorId beta : X.into(m.obj(a))) {
            int lifts = 0;
            for (MorId u : A.into(a)) lifts += m.mor(u) == beta;
            if (lifts != 1)
                return Verdict::no("morphism '" + X.morphism_name(beta) + "' has " + std::to_string(lifts) +
                                   " lifts ending at '" + A.object_name(a) + "'");
        }
    return Verdict::yes();
}

Verdict is_discrete_opfibration(const Functor& n) {
    const auto& A = *n.dom;
    const auto& X = *n.cod;
    for (ObjId a = 0; a < A.num_objects(); ++a)
        for (MorId beta : X.out_of(n.obj(a))) {
            int lifts = 0;
            for (MorId u : A.out_of(a)) lifts += n.mor(u) == beta;
            if (lifts != 1)
                return Verdict::no("morphism '" + X.morphism_name(beta) + "' has " + std::to_string(lifts) +
                                   " lifts starting at '" + A.object_name(a) + "'");
        }
    return Verdict::yes();
}

int components_under(const Functor& p, ObjId x) { return static_cast<int>(under_classes(p, x).names.size()); }

int components_over(const Functor& p, ObjId x) { return components_under(opposite(p), x); }

Verdict is_final(const Functor& p) {
    for (ObjId x = 0; x < p.cod->num_objects(); ++x) {
        const int k = components_under(p, x);
        if (k != 1)
            return Verdict::no("object '" + p.cod->object_name(x) + "' has " + std::to_string(k) +
                               " components under it");
    }
    return Verdict::yes();
}

Verdict is_initial(const Functor& p) {
    const Functor op = opposite(p);
    for (ObjId x = 0; x < p.cod->num_objects(); ++x) {
        const int k = components_under(op, x);
        if (k != 1)
            return Verdict::no("object '" + p.cod->object_name(x) + "' has " + std::to_string(k) +
                               " components over it");
    }
    return Verdict::yes();
}

Verdict is_orthogonal(const Functor& e, const Functor& m) {
    const auto& A = *e.dom;
    const auto& B = *e.cod;
    const auto& C = *m.dom;
    const std::uint64_t product = static_cast<std::uint64_t>(A.num_morphisms()) * B.num_morphisms() *
                                  C.num_morphisms() * m.cod->num_morphisms();
    if (product > size_guard())
        throw SizeGuardError("orthogonality check exceeds the size guard: morphism-count product " +
                             std::to_string(product));
    Verdict result;
    for_each_functor(e.cod, m.cod, {}, [&](const Functor& v) {
        FunctorConstraints square;
        square.allow_object = [&](ObjId a, ObjId c) { return m.obj(c) == v.obj(e.obj(a)); };
        square.allow_morphism = [&](MorId w, MorId z) { return m.mor(z) == v.mor(e.mor(w)); };
        for_each_functor(e.dom, m.dom, square, [&](const Functor& u) {
            std::vector<ObjId> forced_obj(B.num_objects(), kNone);
            std::vector<MorId> forced_mor(B.num_morphisms(), kNone);
            bool consistent = true;
            for (ObjId a = 0; a < A.num_objects(); ++a) {
                auto& slot = forced_obj[e.obj(a)];
                if (slot != kNone && slot != u.obj(a)) consistent = false;
                slot = u.obj(a);
            }
            for (MorId w = 0; w < A.num_morphisms(); ++w) {
                auto& slot = forced_mor[e.mor(w)];
                if (slot != kNone && slot != u.mor(w)) consistent = false;
                slot = u.mor(w);
            }
            int fillers = 0;
            if (consistent) {
                FunctorConstraints diag;
                diag.allow_object = [&](ObjId b, ObjId c) {
                    return m.obj(c) == v.obj(b) && (forced_obj[b] == kNone || forced_obj[b] == c);
                };
                diag.allow_morphism = [&](MorId w, MorId z) {
                    return m.mor(z) == v.mor(w) && (forced_mor[w] == kNone || forced_mor[w] == z);
                };
                for_each_functor(e.cod, m.dom, diag, [&](const Functor&) { return ++fillers < 2; });
            }
            if (fillers != 1) {
                result = Verdict::no("square top " + describe(u) + ", bottom " + describe(v) + " has " +
                                     (fillers >= 2 ? std::string("at least 2") : std::to_string(fillers)) +
                                     " fillers");
                return false;
            }
            return true;
        });
        return result.holds;
    });
    return result;
}

FactorizationResult factorize_left(const Functor& f) {
    const auto& P = *f.dom;
    const auto& X = *f.cod;
    LeftData d = left_data(f);
    Elements el = elements(d.presheaf);
    FactorizationResult r{Functor{f.dom, el.category, std::vector<ObjId>(P.num_objects()),
                                  std::vector<MorId>(P.num_morphisms())},
                          el.category, el.projection, System::Left};
    std::vector<int> home(P.num_objects());
    for (ObjId a = 0; a < P.num_objects(); ++a) {
        const ObjId x = f.obj(a);
        home[a] = d.classes[x].class_at(a, X.identity(x), X);
        r.e.obj_map[a] = el.object_at[x][home[a]];
    }
    for (MorId u = 0; u < P.num_morphisms(); ++u) r.e.mor_map[u] = el.morphism_at[f.mor(u)][home[P.tgt(u)]];

    if (!(compose(r.m, r.e) == f)) throw InvariantError("factorize_left: m o e differs from the input");
    if (auto v = is_final(r.e); !v) throw InvariantError("factorize_left: left leg not final: " + v.witness);
    if (auto v = is_discrete_fibration(r.m); !v)
        throw InvariantError("factorize_left: right leg not a discrete fibration: " + v.witness);
    return r;
}

FactorizationResult factorize_right(const Functor& f) {
    const FactorizationResult dual = factorize_left(opposite(f));
    FactorizationResult r;
    r.system = System::Right;
    r.mid = opposite(dual.mid);
    r.e = Functor{f.dom, r.mid, dual.e.obj_map, dual.e.mor_map};
    r.m = Functor{r.mid, f.cod, dual.m.obj_map, dual.m.mor_map};
    if (!(compose(r.m, r.e) == f)) throw InvariantError("factorize_right: m o e differs from the input");
    if (auto v = is_initial(r.e); !v) throw InvariantError("factorize_right: left leg not initial: " + v.witness);
    if (auto v = is_discrete_opfibration(r.m); !v)
        throw InvariantError("factorize_right: right leg not a discrete opfibration: " + v.witness);
    return r;
}

FactorizationResult factorize(const Functor& f, System system) {
    return system == System::Left ? factorize_left(f) : factorize_right(f);
}

Presheaf reflect_df(const Functor& q) { return left_data(q).presheaf; }

Copresheaf reflect_dof(const Functor& q) {
    const Presheaf dual = left_data(opposite(q)).presheaf;
    return Copresheaf{q.cod, dual.fiber, dual.action};
}

std::optional<Functor> factorization_isomorphism(const FactorizationResult& a, const FactorizationResult& b) {
    if (!same_category(a.e.dom, b.e.dom) || !same_category(a.m.cod, b.m.cod)) return std::nullopt;
    const auto& M = *a.mid;
    std::vector<ObjId> forced_obj(M.num_objects(), kNone);
    std::vector<MorId> forced_mor(M.num_morphisms(), kNone);
    for (ObjId p = 0; p < static_cast<ObjId>(a.e.obj_map.size()); ++p) {
        auto& slot = forced_obj[a.e.obj(p)];
        if (slot != kNone && slot != b.e.obj(p)) return std::nullopt;
        slot = b.e.obj(p);
    }
    for (MorId u = 0; u < static_cast<MorId>(a.e.mor_map.size()); ++u) {
        auto& slot = forced_mor[a.e.mor(u)];
        if (slot != kNone && slot != b.e.mor(u)) return std::nullopt;
        slot = b.e.mor(u);
    }
    FunctorConstraints c;
    c.allow_object = [&](ObjId o, ObjId o2) {
        return a.m.obj(o) == b.m.obj(o2) && (forced_obj[o] == kNone || forced_obj[o] == o2);
    };
    c.allow_morphism = [&](MorId w, MorId z) {
        return a.m.mor(w) == b.m.mor(z) && (forced_mor[w] == kNone || forced_mor[w] == z);
    };
    auto phi = find_isomorphism(a.mid, b.mid, c);
    if (!phi) return std::nullopt;
    if (!(compose(*phi, a.e) == b.e) || !(compose(b.m, *phi) == a.m))
        throw InvariantError("factorization_isomorphism: found map does not commute");
    return phi;
}

}  // namespace balcat
