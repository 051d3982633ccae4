#include "balcat/calculus.hpp"

#include <map>
#include <set>

#include "balcat/search.hpp"

namespace balcat {

namespace {

MorId unique_lift_into(const Functor& m, MorId beta, ObjId a) {
    MorId found = kNone;
    for (MorId u : m.dom->into(a))
        if (m.mor(u) == beta) {
            if (found != kNone) throw InvariantError("lift of '" + m.cod->morphism_name(beta) + "' is not unique");
            found = u;
        }
    if (found == kNone) throw InvariantError("no lift of '" + m.cod->morphism_name(beta) + "' ends at '" +
                                             m.dom->object_name(a) + "'");
    return found;
}

MorId unique_lift_out_of(const Functor& n, MorId beta, ObjId a) {
    MorId found = kNone;
    for (MorId u : n.dom->out_of(a))
        if (n.mor(u) == beta) {
            if (found != kNone) throw InvariantError("lift of '" + n.cod->morphism_name(beta) + "' is not unique");
            found = u;
        }
    if (found == kNone) throw InvariantError("no lift of '" + n.cod->morphism_name(beta) + "' starts at '" +
                                             n.dom->object_name(a) + "'");
    return found;
}

bool same_maps(const Functor& a, const Functor& b) { return a.obj_map == b.obj_map && a.mor_map == b.mor_map; }

// Arrows of X̄ are named by the morphism of X they come from when the base is
// a finite category presented by slices of the form comma(id, point).
std::string arrow_name(const Slice& s, ObjId object_of_slice, const FiniteCategory& X) {
    return X.morphism_name(s.comma.tags[object_of_slice].connecting);
}

// Object of the slice (X^op)/x matching a given object of the coslice x\X.
ObjId coslice_to_opposite_slice(const Slice& coslice, const Slice& op_slice, ObjId object) {
    const auto& tag = coslice.comma.tags[object];
    for (ObjId o = 0; o < op_slice.category()->num_objects(); ++o) {
        const auto& t = op_slice.comma.tags[o];
        if (t.left == tag.right && t.connecting == tag.connecting) return o;
    }
    throw InvariantError("coslice object has no counterpart in the opposite slice");
}

std::uint64_t ipow(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        r *= base;
        if (r > (1ULL << 40)) return r;
    }
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------

Functor yoneda_extension(const Functor& d, ObjId top, const Functor& m, ObjId a) {
    const auto& D = *d.dom;
    if (m.obj(a) != d.obj(top)) throw InvariantError("yoneda_extension: chosen element lies over the wrong object");
    Functor u{d.dom, m.dom, std::vector<ObjId>(D.num_objects()), std::vector<MorId>(D.num_morphisms())};
    for (ObjId o = 0; o < D.num_objects(); ++o) {
        const auto& h = D.hom(o, top);
        if (h.size() != 1) throw InvariantError("yoneda_extension: selected point is not terminal");
        u.obj_map[o] = m.dom->src(unique_lift_into(m, d.mor(h[0]), a));
    }
    for (MorId w = 0; w < D.num_morphisms(); ++w) {
        u.mor_map[w] = unique_lift_into(m, d.mor(w), u.obj_map[D.tgt(w)]);
        if (m.dom->src(u.mor_map[w]) != u.obj_map[D.src(w)])
            throw InvariantError("yoneda_extension: lifted morphism has the wrong source");
    }
    return u;
}

Functor coyoneda_extension(const Functor& d, ObjId bottom, const Functor& n, ObjId a) {
    const auto& D = *d.dom;
    if (n.obj(a) != d.obj(bottom)) throw InvariantError("coyoneda_extension: chosen element lies over the wrong object");
    Functor u{d.dom, n.dom, std::vector<ObjId>(D.num_objects()), std::vector<MorId>(D.num_morphisms())};
    for (ObjId o = 0; o < D.num_objects(); ++o) {
        const auto& h = D.hom(bottom, o);
        if (h.size() != 1) throw InvariantError("coyoneda_extension: selected point is not initial");
        u.obj_map[o] = n.dom->tgt(unique_lift_out_of(n, d.mor(h[0]), a));
    }
    for (MorId w = 0; w < D.num_morphisms(); ++w) {
        u.mor_map[w] = unique_lift_out_of(n, d.mor(w), u.obj_map[D.src(w)]);
        if (n.dom->tgt(u.mor_map[w]) != u.obj_map[D.tgt(w)])
            throw InvariantError("coyoneda_extension: lifted morphism has the wrong target");
    }
    return u;
}

SliceCache slice_cache(const CategoryPtr& x) {
    SliceCache c{x, {}, {}};
    for (ObjId a = 0; a < x->num_objects(); ++a) {
        c.slices.push_back(slice(x, a));
        c.coslices.push_back(coslice(x, a));
    }
    return c;
}

// ---------------------------------------------------------------------------
// Hom intervals

int HomInterval::element_of_left(ObjId o) const {
    for (int k = 0; k < size(); ++k)
        if (left_arrow[k] == o) return k;
    return kNone;
}

int HomInterval::element_of_right(ObjId o) const {
    for (int k = 0; k < size(); ++k)
        if (right_arrow[k] == o) return k;
    return kNone;
}

Functor HomInterval::initial_inclusion() const {
    auto d = discrete_category(components.elements);
    Functor f{d, apex(), initial, {}};
    for (ObjId k = 0; k < d->num_objects(); ++k) f.mor_map.push_back(apex()->identity(initial[k]));
    return f;
}

Functor HomInterval::final_inclusion() const {
    auto d = discrete_category(components.elements);
    Functor f{d, apex(), final, {}};
    for (ObjId k = 0; k < d->num_objects(); ++k) f.mor_map.push_back(apex()->identity(final[k]));
    return f;
}

Functor HomInterval::reflection() const { return components_map(apex(), components); }

HomInterval hom_interval(const SliceCache& cache, ObjId x, ObjId y) {
    const Slice& cx = cache.coslices[x];
    const Slice& sy = cache.slices[y];
    HomInterval h;
    h.x = x;
    h.y = y;
    h.pullback = pullback(cx.projection(), sy.projection());
    h.components = pi0(*h.pullback.apex);
    const int n = h.components.size();
    h.initial.assign(n, kNone);
    h.final.assign(n, kNone);
    for (ObjId o = 0; o < h.pullback.apex->num_objects(); ++o) {
        const int k = h.components.class_of[o];
        auto claim = [&](std::vector<ObjId>& slot, const char* which) {
            if (slot[k] != kNone)
                throw InvariantError(std::string("hom_interval: component has two ") + which + " points");
            slot[k] = o;
        };
        if (h.pullback.pairs[o].first == cx.top) claim(h.initial, "initial");
        if (h.pullback.pairs[o].second == sy.top) claim(h.final, "final");
    }
    for (int k = 0; k < n; ++k) {
        if (h.initial[k] == kNone || h.final[k] == kNone)
            throw InvariantError("hom_interval: component without a base point");
        h.left_arrow.push_back(h.pullback.pairs[h.initial[k]].second);
        h.right_arrow.push_back(h.pullback.pairs[h.final[k]].first);
    }
    if (auto v = is_initial(h.initial_inclusion()); !v) throw InvariantError("hom_interval: i not initial: " + v.witness);
    if (auto v = is_final(h.final_inclusion()); !v) throw InvariantError("hom_interval: e not final: " + v.witness);
    auto count_over = [](const Slice& s, ObjId at) {
        int c = 0;
        const Functor& proj = s.projection();
        for (ObjId o = 0; o < s.category()->num_objects(); ++o) c += proj.obj(o) == at;
        return c;
    };
    if (std::set<ObjId>(h.left_arrow.begin(), h.left_arrow.end()).size() != static_cast<std::size_t>(n) ||
        count_over(sy, x) != n)
        throw InvariantError("hom_interval: elements do not match the left arrows");
    if (std::set<ObjId>(h.right_arrow.begin(), h.right_arrow.end()).size() != static_cast<std::size_t>(n) ||
        count_over(cx, y) != n)
        throw InvariantError("hom_interval: elements do not match the right arrows");
    return h;
}

HomInterval hom_interval(const CategoryPtr& X, ObjId x, ObjId y) {
    SliceCache c{X, {}, {}};
    for (ObjId a = 0; a < X->num_objects(); ++a) {
        c.slices.push_back(a == y ? slice(X, a) : Slice{});
        c.coslices.push_back(a == x ? coslice(X, a) : Slice{});
    }
    return hom_interval(c, x, y);
}

ArrowInterval arrow_interval(const HomInterval& hom, int element) {
    std::vector<ObjId> members;
    for (ObjId o = 0; o < hom.apex()->num_objects(); ++o)
        if (hom.components.class_of[o] == element) members.push_back(o);
    ArrowInterval ai{full_subcategory(hom.apex(), members), kNone, kNone};
    for (ObjId k = 0; k < static_cast<ObjId>(members.size()); ++k) {
        if (members[k] == hom.initial[element]) ai.initial = k;
        if (members[k] == hom.final[element]) ai.final = k;
    }
    if (pi0(*ai.component.category).size() != 1) throw InvariantError("arrow_interval: component is not connected");
    return ai;
}

// ---------------------------------------------------------------------------
// Enriched composition

int EnrichedStructure::compose(ObjId x, ObjId y, ObjId z, int a, int b) const {
    const std::size_t n = num_objects();
    return mu[(x * n + y) * n + z][a * hom(y, z).size() + b];
}

EnrichedStructure enriched_structure(const CategoryPtr& X) {
    EnrichedStructure es;
    es.cache = slice_cache(X);
    const int n = X->num_objects();
    for (ObjId x = 0; x < n; ++x)
        for (ObjId y = 0; y < n; ++y) es.homs.push_back(hom_interval(es.cache, x, y));
    es.mu.resize(static_cast<std::size_t>(n) * n * n);
    for (ObjId x = 0; x < n; ++x)
        for (ObjId y = 0; y < n; ++y)
            for (ObjId z = 0; z < n; ++z) {
                const auto& hxy = es.hom(x, y);
                const auto& hyz = es.hom(y, z);
                const auto& hxz = es.hom(x, z);
                auto& table = es.mu[(static_cast<std::size_t>(x) * n + y) * n + z];
                for (int a = 0; a < hxy.size(); ++a)
                    for (int b = 0; b < hyz.size(); ++b) {
                        const ObjId o = hxz.pullback.find(hxy.right_arrow[a], hyz.left_arrow[b]);
                        if (o == kNone) throw InvariantError("enriched_structure: pairing left the pullback");
                        table.push_back(hxz.components.class_of[o]);
                    }
            }
    for (ObjId x = 0; x < n; ++x) {
        const auto& hxx = es.hom(x, x);
        const ObjId o = hxx.pullback.find(es.cache.coslices[x].top, es.cache.slices[x].top);
        es.unit.push_back(hxx.components.class_of[o]);
    }
    for (ObjId x = 0; x < n; ++x)
        for (ObjId y = 0; y < n; ++y)
            for (int a = 0; a < es.hom(x, y).size(); ++a) {
                if (es.compose(x, x, y, es.unit[x], a) != a || es.compose(x, y, y, a, es.unit[y]) != a)
                    throw InvariantError("enriched_structure: unit law fails at (" + X->object_name(x) + ", " +
                                         X->object_name(y) + ")");
            }
    return es;
}

AssociativityReport mu_associativity(const EnrichedStructure& es) {
    AssociativityReport r;
    const int n = es.num_objects();
    const auto& X = *es.cache.base;
    for (ObjId w = 0; w < n; ++w)
        for (ObjId x = 0; x < n; ++x)
            for (ObjId y = 0; y < n; ++y)
                for (ObjId z = 0; z < n; ++z)
                    for (int a = 0; a < es.hom(w, x).size(); ++a)
                        for (int b = 0; b < es.hom(x, y).size(); ++b)
                            for (int c = 0; c < es.hom(y, z).size(); ++c) {
                                ++r.triples;
                                const int lhs = es.compose(w, y, z, es.compose(w, x, y, a, b), c);
                                const int rhs = es.compose(w, x, z, a, es.compose(x, y, z, b, c));
                                if (lhs != rhs && r.violations++ == 0)
                                    r.first_violation = "objects " + X.object_name(w) + ", " + X.object_name(x) +
                                                        ", " + X.object_name(y) + ", " + X.object_name(z);
                            }
    return r;
}

// ---------------------------------------------------------------------------
// Arrow maps and underlying categories

Functor arrow_map(const Functor& f, const Slice& source, const Slice& target) {
    if (source.is_coslice != target.is_coslice) throw std::invalid_argument("arrow_map: mixed slice kinds");
    if (target.base_point != f.obj(source.base_point))
        throw std::invalid_argument("arrow_map: target slice is not at the image point");
    const Functor along = compose(f, source.projection());
    if (!source.is_coslice) {
        const FactorizationResult r = factorize_left(along);
        const Functor phi = yoneda_extension(r.m, r.e.obj(source.top), target.projection(), target.top);
        if (!is_isomorphism(phi)) throw InvariantError("arrow_map: reflected slice is not isomorphic to the slice");
        return compose(phi, r.e);
    }
    const FactorizationResult r = factorize_right(along);
    const Functor phi = coyoneda_extension(r.m, r.e.obj(source.top), target.projection(), target.top);
    if (!is_isomorphism(phi)) throw InvariantError("arrow_map: reflected coslice is not isomorphic to the coslice");
    return compose(phi, r.e);
}

Underlying underlying_category(const CategoryPtr& X) {
    Underlying u;
    u.cache.base = X;
    for (ObjId a = 0; a < X->num_objects(); ++a) u.cache.slices.push_back(slice(X, a));
    u.arrow_at.resize(X->num_objects());
    std::vector<Morphism> morphisms;
    std::vector<MorId> identity(X->num_objects());
    std::vector<ObjId> arrow_target;
    for (ObjId y = 0; y < X->num_objects(); ++y)
        u.arrow_at[y].assign(u.cache.slices[y].category()->num_objects(), kNone);
    for (ObjId x = 0; x < X->num_objects(); ++x)
        for (ObjId y = 0; y < X->num_objects(); ++y) {
            const Slice& s = u.cache.slices[y];
            for (ObjId o = 0; o < s.category()->num_objects(); ++o) {
                if (s.projection().obj(o) != x) continue;
                const MorId id = static_cast<MorId>(morphisms.size());
                u.arrow_at[y][o] = id;
                u.slice_object.push_back(o);
                arrow_target.push_back(y);
                if (o == s.top) {
                    identity[y] = id;
                    morphisms.push_back({identity_id(X->object_name(y)), x, y});
                } else {
                    morphisms.push_back({arrow_name(s, o, *X), x, y});
                }
            }
        }
    std::vector<std::optional<Functor>> extension(morphisms.size());
    u.category = tabulate_category(X->object_names(), morphisms, identity, [&](MorId g, MorId f) {
        if (!extension[g]) {
            const Slice& from = u.cache.slices[morphisms[g].src];
            const Slice& to = u.cache.slices[arrow_target[g]];
            extension[g] = yoneda_extension(from.projection(), from.top, to.projection(), u.slice_object[g]);
        }
        return u.arrow(arrow_target[g], extension[g]->obj(u.slice_object[f]));
    });
    if (auto issues = u.category->check_axioms(); !issues.empty())
        throw InvariantError("underlying_category: Kleisli composition violates " + issues.front());
    return u;
}

Underlying right_underlying_category(const CategoryPtr& X) { return underlying_category(opposite(X)); }

Functor underlying_functor(const Functor& f, const Underlying& ux, const Underlying& uy) {
    const auto& X = *ux.cache.base;
    std::vector<Functor> maps;
    for (ObjId y = 0; y < X.num_objects(); ++y)
        maps.push_back(arrow_map(f, ux.cache.slices[y], uy.cache.slices[f.obj(y)]));
    Functor fb{ux.category, uy.category, f.obj_map, std::vector<MorId>(ux.category->num_morphisms())};
    for (MorId a = 0; a < ux.category->num_morphisms(); ++a) {
        const ObjId y = ux.category->tgt(a);
        fb.mor_map[a] = uy.arrow(f.obj(y), maps[y].obj(ux.slice_object[a]));
    }
    if (auto issues = functor_issues(fb); !issues.empty())
        throw InvariantError("underlying_functor: " + issues.front());
    return fb;
}

Functor right_underlying_functor(const Functor& f, const Underlying& ux_right, const Underlying& uy_right) {
    return underlying_functor(Functor{ux_right.cache.base, uy_right.cache.base, f.obj_map, f.mor_map}, ux_right,
                              uy_right);
}

namespace {

MorId right_arrow_id(const EnrichedStructure& es, const Underlying& right, ObjId x, ObjId y, int k) {
    const ObjId o = coslice_to_opposite_slice(es.cache.coslices[x], right.cache.slices[x], es.hom(x, y).right_arrow[k]);
    return right.arrow(x, o);
}

MorId left_arrow_id(const EnrichedStructure& es, const Underlying& left, ObjId x, ObjId y, int k) {
    return left.arrow(y, es.hom(x, y).left_arrow[k]);
}

}  // namespace

Functor duality_isomorphism(const EnrichedStructure& es, const Underlying& left, const Underlying& right) {
    const auto left_op = opposite(left.category);
    Functor phi{left_op, right.category, std::vector<ObjId>(left.category->num_objects()),
                std::vector<MorId>(left.category->num_morphisms())};
    for (ObjId x = 0; x < left.category->num_objects(); ++x) phi.obj_map[x] = x;
    for (MorId w = 0; w < left.category->num_morphisms(); ++w) {
        const ObjId x = left.category->src(w);
        const ObjId y = left.category->tgt(w);
        const int k = es.hom(x, y).element_of_left(left.slice_object[w]);
        phi.mor_map[w] = right_arrow_id(es, right, x, y, k);
    }
    if (auto issues = functor_issues(phi); !issues.empty())
        throw InvariantError("duality_isomorphism: " + issues.front());
    if (!is_isomorphism(phi)) throw InvariantError("duality_isomorphism: assembled functor is not bijective");
    return phi;
}

Verdict check_mu_agreement(const EnrichedStructure& es, const Underlying& left, const Underlying& right) {
    const int n = es.num_objects();
    const auto& X = *es.cache.base;
    const auto& L = *left.category;
    const auto& R = *right.category;
    for (ObjId x = 0; x < n; ++x) {
        if (left_arrow_id(es, left, x, x, es.unit[x]) != L.identity(x) ||
            right_arrow_id(es, right, x, x, es.unit[x]) != R.identity(x))
            return Verdict::no("unit at '" + X.object_name(x) + "' is not an identity arrow");
    }
    for (ObjId x = 0; x < n; ++x)
        for (ObjId y = 0; y < n; ++y)
            for (ObjId z = 0; z < n; ++z)
                for (int a = 0; a < es.hom(x, y).size(); ++a)
                    for (int b = 0; b < es.hom(y, z).size(); ++b) {
                        const int c = es.compose(x, y, z, a, b);
                        const MorId lc = L.compose(left_arrow_id(es, left, y, z, b), left_arrow_id(es, left, x, y, a));
                        if (lc != left_arrow_id(es, left, x, z, c))
                            return Verdict::no("mu disagrees with left composition at (" + X.object_name(x) + ", " +
                                               X.object_name(y) + ", " + X.object_name(z) + ")");
                        const MorId rc =
                            R.compose(right_arrow_id(es, right, x, y, a), right_arrow_id(es, right, y, z, b));
                        if (rc != right_arrow_id(es, right, x, z, c))
                            return Verdict::no("mu disagrees with right composition at (" + X.object_name(x) + ", " +
                                               X.object_name(y) + ", " + X.object_name(z) + ")");
                    }
    return Verdict::yes();
}

std::vector<int> hom_action(const Functor& f, const EnrichedStructure& ex, const EnrichedStructure& ey, ObjId x,
                            ObjId y) {
    const auto& hx = ex.hom(x, y);
    const auto& hy = ey.hom(f.obj(x), f.obj(y));
    const Functor ic = arrow_map(f, ex.cache.coslices[x], ey.cache.coslices[f.obj(x)]);
    const Functor es = arrow_map(f, ex.cache.slices[y], ey.cache.slices[f.obj(y)]);
    const Functor induced =
        pullback_pairing(hy.pullback, compose(ic, hx.pullback.proj_left), compose(es, hx.pullback.proj_right));
    std::vector<int> out;
    for (int k = 0; k < hx.size(); ++k) {
        const int via_initial = hy.components.class_of[induced.obj(hx.initial[k])];
        const int via_final = hy.components.class_of[induced.obj(hx.final[k])];
        if (via_initial != via_final) throw InvariantError("hom_action: base points land in different components");
        out.push_back(via_initial);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cones

Verdict is_cone(const Cone& c, const SliceCache& cache) {
    const Slice& s = cache.slices[c.apex];
    if (!same_category(c.leg.cod, s.category())) return Verdict::no("leg does not land in the slice");
    if (!same_category(c.leg.dom, c.p.dom)) return Verdict::no("leg and diagram have different domains");
    if (!same_maps(compose(s.projection(), c.leg), c.p)) return Verdict::no("triangle over the base does not commute");
    return Verdict::yes();
}

namespace {

FunctorConstraints over_base(const Functor& p, const Functor& proj) {
    FunctorConstraints c;
    c.allow_object = [&p, &proj](ObjId a, ObjId o) { return proj.obj(o) == p.obj(a); };
    c.allow_morphism = [&p, &proj](MorId u, MorId v) { return proj.mor(v) == p.mor(u); };
    return c;
}

}  // namespace

std::vector<Cone> cones(const Functor& p, ObjId y, const SliceCache& cache) {
    const Slice& s = cache.slices[y];
    std::vector<Cone> out;
    for_each_functor(p.dom, s.category(), over_base(p, s.projection()), [&](const Functor& leg) {
        out.push_back(Cone{p, y, leg});
        return true;
    });
    return out;
}

Verdict is_colimiting(const Cone& c, const SliceCache& cache) {
    if (auto v = is_cone(c, cache); !v) return v;
    const auto& X = *cache.base;
    const Slice& sx = cache.slices[c.apex];
    for (ObjId y = 0; y < X.num_objects(); ++y) {
        const Slice& sy = cache.slices[y];
        std::vector<Functor> through;
        for (ObjId b = 0; b < sy.category()->num_objects(); ++b) {
            if (sy.projection().obj(b) != c.apex) continue;
            through.push_back(compose(yoneda_extension(sx.projection(), sx.top, sy.projection(), b), c.leg));
        }
        Verdict result;
        for_each_functor(c.p.dom, sy.category(), over_base(c.p, sy.projection()), [&](const Functor& gamma) {
            int factorizations = 0;
            for (const auto& t : through) factorizations += same_maps(t, gamma);
            if (factorizations != 1) {
                result = Verdict::no("a cone into '" + X.object_name(y) + "' factors through the leg in " +
                                     std::to_string(factorizations) + " ways");
                return false;
            }
            return true;
        });
        if (!result) return result;
    }
    return Verdict::yes();
}

bool is_absolute(const Cone& c) { return is_final(c.leg).holds; }

Cone image_cone(const Functor& f, const Cone& c, const SliceCache& source, const SliceCache& target) {
    const Functor em = arrow_map(f, source.slices[c.apex], target.slices[f.obj(c.apex)]);
    return Cone{compose(f, c.p), f.obj(c.apex), compose(em, c.leg)};
}

// ---------------------------------------------------------------------------
// Adjunctible, dense, fully faithful

PullbackResult comma_over(const Functor& f, const SliceCache& target, ObjId y) {
    return pullback(f, target.slices[y].projection());
}

std::optional<ObjId> universal_arrow(const Functor&, const PullbackResult& fy) {
    for (ObjId o = 0; o < fy.apex->num_objects(); ++o)
        if (is_final(point(fy.apex, o))) return o;
    return std::nullopt;
}

Verdict is_adjunctible_at(const Functor& f, const SliceCache& target, ObjId y) {
    if (universal_arrow(f, comma_over(f, target, y))) return Verdict::yes();
    return Verdict::no("f/" + target.base->object_name(y) + " has no final point");
}

Verdict is_adjunctible(const Functor& f, const SliceCache& target) {
    for (ObjId y = 0; y < target.base->num_objects(); ++y)
        if (auto v = is_adjunctible_at(f, target, y); !v) return v;
    return Verdict::yes();
}

RightAdjoint right_adjoint_underlying(const Functor& f, const Underlying& ux, const Underlying& uy) {
    const auto& Y = *uy.cache.base;
    const int ny = Y.num_objects();
    std::vector<PullbackResult> fy;
    std::vector<ObjId> t(ny), g(ny), tau(ny);
    std::vector<Functor> phi_inv;
    for (ObjId y = 0; y < ny; ++y) {
        fy.push_back(comma_over(f, uy.cache, y));
        auto chosen = universal_arrow(f, fy.back());
        if (!chosen) throw std::invalid_argument("map is not adjunctible at '" + Y.object_name(y) + "'");
        t[y] = *chosen;
        g[y] = fy[y].pairs[t[y]].first;
        tau[y] = fy[y].pairs[t[y]].second;
        const Slice& sg = ux.cache.slices[g[y]];
        const Functor phi = yoneda_extension(sg.projection(), sg.top, fy[y].proj_left, t[y]);
        if (!is_isomorphism(phi)) throw InvariantError("right_adjoint_underlying: f/y is not a slice");
        phi_inv.push_back(inverse(phi));
    }
    RightAdjoint adj;
    adj.f_bar = underlying_functor(f, ux, uy);
    adj.g_bar = Functor{uy.category, ux.category, g, std::vector<MorId>(uy.category->num_morphisms())};
    for (MorId beta = 0; beta < uy.category->num_morphisms(); ++beta) {
        const ObjId y = uy.category->src(beta);
        const ObjId y2 = uy.category->tgt(beta);
        const Slice& sy = uy.cache.slices[y];
        const Functor hat = yoneda_extension(sy.projection(), sy.top, uy.cache.slices[y2].projection(),
                                             uy.slice_object[beta]);
        const ObjId s = fy[y2].find(g[y], hat.obj(tau[y]));
        if (s == kNone) throw InvariantError("right_adjoint_underlying: pairing left the pullback");
        adj.g_bar.mor_map[beta] = ux.arrow(g[y2], phi_inv[y2].obj(s));
    }
    if (auto issues = functor_issues(adj.g_bar); !issues.empty())
        throw InvariantError("right_adjoint_underlying: " + issues.front());
    for (ObjId y = 0; y < ny; ++y) adj.counit.push_back(uy.arrow(y, tau[y]));
    const auto& UX = *ux.category;
    const auto& UY = *uy.category;
    for (ObjId x = 0; x < UX.num_objects(); ++x) {
        const ObjId fx = f.obj(x);
        MorId eta = kNone;
        for (MorId a : UX.hom(x, g[fx]))
            if (UY.compose(adj.counit[fx], adj.f_bar.mor(a)) == UY.identity(fx)) eta = a;
        if (eta == kNone) throw InvariantError("right_adjoint_underlying: no unit at '" + UX.object_name(x) + "'");
        adj.unit.push_back(eta);
    }
    return adj;
}

Verdict check_adjunction(const Functor& f, const Underlying& ux, const Underlying& uy, const RightAdjoint& adj) {
    const auto& UX = *ux.category;
    const auto& UY = *uy.category;
    const auto& g = adj.g_bar;
    const auto& fb = adj.f_bar;
    auto transpose = [&](MorId alpha, ObjId y) { return UY.compose(adj.counit[y], fb.mor(alpha)); };
    for (ObjId x = 0; x < UX.num_objects(); ++x)
        for (ObjId y = 0; y < UY.num_objects(); ++y) {
            const auto& left = UX.hom(x, g.obj(y));
            const auto& right = UY.hom(f.obj(x), y);
            std::set<MorId> image;
            for (MorId a : left) image.insert(transpose(a, y));
            if (left.size() != right.size() || image.size() != right.size())
                return Verdict::no("hom bijection fails at (" + UX.object_name(x) + ", " + UY.object_name(y) + ")");
        }
    std::uint64_t work = 0;
    const std::uint64_t budget = size_guard();
    for (MorId a = 0; a < UX.num_morphisms(); ++a) {
        const ObjId x = UX.tgt(a);
        for (MorId b = 0; b < UY.num_morphisms(); ++b) {
            const ObjId y = UY.src(b);
            const ObjId y2 = UY.tgt(b);
            for (MorId alpha : UX.hom(x, g.obj(y))) {
                if (++work > budget) throw SizeGuardError("adjunction naturality check exceeds the size guard");
                const MorId lhs = transpose(UX.compose(g.mor(b), UX.compose(alpha, a)), y2);
                const MorId rhs = UY.compose(b, UY.compose(transpose(alpha, y), fb.mor(a)));
                if (lhs != rhs)
                    return Verdict::no("hom bijection is not natural at arrows '" + UX.morphism_name(a) + "', '" +
                                       UY.morphism_name(b) + "'");
            }
        }
    }
    for (ObjId x = 0; x < UX.num_objects(); ++x) {
        const ObjId fx = f.obj(x);
        if (UY.compose(adj.counit[fx], fb.mor(adj.unit[x])) != UY.identity(fx))
            return Verdict::no("triangle identity fails at '" + UX.object_name(x) + "'");
    }
    for (ObjId y = 0; y < UY.num_objects(); ++y) {
        const ObjId gy = g.obj(y);
        if (UX.compose(g.mor(adj.counit[y]), adj.unit[gy]) != UX.identity(gy))
            return Verdict::no("triangle identity fails at '" + UY.object_name(y) + "'");
    }
    return Verdict::yes();
}

Verdict preserves_colimits_check(const Functor& f, const Cone& colimiting, const SliceCache& source,
                                 const SliceCache& target) {
    auto v = is_colimiting(image_cone(f, colimiting, source, target), target);
    if (!v) v.witness = "image cone not colimiting: " + v.witness;
    return v;
}

Verdict is_dense(const Functor& f, const SliceCache& target) {
    for (ObjId y = 0; y < target.base->num_objects(); ++y)
        if (auto v = is_final(comma_over(f, target, y).proj_right); !v)
            return Verdict::no("f/" + target.base->object_name(y) + " -> slice is not final: " + v.witness);
    return Verdict::yes();
}

Verdict is_adequate_at(const Functor& f, const SliceCache& target, ObjId y) {
    const PullbackResult pb = comma_over(f, target, y);
    return is_colimiting(Cone{compose(f, pb.proj_left), y, pb.proj_right}, target);
}

Verdict is_fully_faithful_at(const Functor& f, const SliceCache& source, const SliceCache& target, ObjId x) {
    const PullbackResult pb = comma_over(f, target, f.obj(x));
    const Slice& sx = source.slices[x];
    const Functor u = pullback_pairing(pb, sx.projection(), arrow_map(f, sx, target.slices[f.obj(x)]));
    if (is_isomorphism(u)) return Verdict::yes();
    return Verdict::no("unit at '" + source.base->object_name(x) + "' is not an isomorphism");
}

PullbackResult alpha_pullback(const Functor& f, const HomInterval& hom, int element, const SliceCache& target) {
    const ArrowInterval ai = arrow_interval(hom, element);
    const Functor leg =
        compose(target.slices[hom.y].projection(), compose(hom.pullback.proj_right, ai.component.inclusion));
    return pullback(f, leg);
}

Verdict all_alpha_pullbacks_connected(const Functor& f, const EnrichedStructure& target) {
    const auto& Y = *target.cache.base;
    for (ObjId y1 = 0; y1 < Y.num_objects(); ++y1)
        for (ObjId y2 = 0; y2 < Y.num_objects(); ++y2) {
            const auto& h = target.hom(y1, y2);
            for (int k = 0; k < h.size(); ++k) {
                const int c = pi0(*alpha_pullback(f, h, k, target.cache).apex).size();
                if (c != 1)
                    return Verdict::no("alpha//f for arrow " + h.components.elements[k] + " has " +
                                       std::to_string(c) + " components");
            }
        }
    return Verdict::yes();
}

// ---------------------------------------------------------------------------
// Tensor, modules, complements

FinSetQuotient tensor(const Functor& p, const Functor& q) { return pi0(*pullback(p, q).apex); }

int ModuleAction::apply(ObjId x, ObjId y, int alpha, int a) const {
    const std::size_t n = presheaf.base->num_objects();
    return act[x * n + y][alpha * presheaf.fiber_size(y) + a];
}

ModuleAction module_action(const Presheaf& m, const EnrichedStructure& es) {
    ModuleAction ma{m, elements(m), {}, {}, {}, {}, {}, {}};
    const auto& X = *es.cache.base;
    const int n = X.num_objects();
    const Functor proj{ma.elements.category, es.cache.base, ma.elements.projection.obj_map,
                       ma.elements.projection.mor_map};
    for (ObjId x = 0; x < n; ++x) {
        const Slice& cx = es.cache.coslices[x];
        ma.intervals.push_back(pullback(cx.projection(), proj));
        ma.components.push_back(pi0(*ma.intervals.back().apex));
        const auto& pb = ma.intervals.back();
        const auto& comps = ma.components.back();
        std::vector<ObjId> init(comps.size(), kNone);
        for (ObjId o = 0; o < pb.apex->num_objects(); ++o)
            if (pb.pairs[o].first == cx.top) {
                if (init[comps.class_of[o]] != kNone) throw InvariantError("module_action: two base points");
                init[comps.class_of[o]] = o;
            }
        std::vector<int> cls(m.fiber_size(x)), fib(comps.size(), kNone);
        for (int s = 0; s < m.fiber_size(x); ++s) {
            const ObjId o = pb.find(cx.top, ma.elements.object_at[x][s]);
            cls[s] = comps.class_of[o];
            fib[cls[s]] = s;
        }
        for (int k = 0; k < comps.size(); ++k)
            if (init[k] == kNone || fib[k] == kNone)
                throw InvariantError("module_action: (xm) does not match the fiber at '" + X.object_name(x) + "'");
        ma.initial.push_back(std::move(init));
        ma.class_of_fiber.push_back(std::move(cls));
        ma.fiber_of_class.push_back(std::move(fib));
    }
    ma.act.resize(static_cast<std::size_t>(n) * n);
    for (ObjId x = 0; x < n; ++x)
        for (ObjId y = 0; y < n; ++y) {
            const auto& h = es.hom(x, y);
            const Slice& sy = es.cache.slices[y];
            auto& table = ma.act[static_cast<std::size_t>(x) * n + y];
            for (int alpha = 0; alpha < h.size(); ++alpha)
                for (int a = 0; a < m.fiber_size(y); ++a) {
                    const ObjId o = ma.intervals[x].find(h.right_arrow[alpha], ma.elements.object_at[y][a]);
                    if (o == kNone) throw InvariantError("module_action: pairing left the pullback");
                    table.push_back(ma.fiber_of_class[x][ma.components[x].class_of[o]]);
                }
            for (int a = 0; a < m.fiber_size(y); ++a) {
                const Functor hat = yoneda_extension(sy.projection(), sy.top, proj, ma.elements.object_at[y][a]);
                for (int alpha = 0; alpha < h.size(); ++alpha) {
                    const ObjId image = hat.obj(h.left_arrow[alpha]);
                    if (image != ma.elements.object_at[x][table[alpha * m.fiber_size(y) + a]])
                        throw InvariantError("module_action: enriched action disagrees with the presheaf action");
                }
            }
        }
    return ma;
}

std::vector<std::vector<int>> module_morphism(const Functor& xi, const ModuleAction& m, const ModuleAction& nm,
                                              const EnrichedStructure& es) {
    if (!same_maps(compose(nm.elements.projection, xi), m.elements.projection))
        throw std::invalid_argument("module_morphism: map is not over the base");
    const int n = es.num_objects();
    std::vector<std::vector<int>> table(n);
    for (ObjId x = 0; x < n; ++x) {
        const Functor qm{m.intervals[x].apex, m.elements.category, m.intervals[x].proj_right.obj_map,
                         m.intervals[x].proj_right.mor_map};
        const Functor induced = pullback_pairing(
            nm.intervals[x], m.intervals[x].proj_left,
            Functor{m.intervals[x].apex, nm.intervals[x].proj_right.cod, compose(xi, qm).obj_map,
                    compose(xi, qm).mor_map});
        for (int s = 0; s < m.presheaf.fiber_size(x); ++s) {
            const ObjId o = m.initial[x][m.class_of_fiber[x][s]];
            table[x].push_back(nm.fiber_of_class[x][nm.components[x].class_of[induced.obj(o)]]);
        }
    }
    for (ObjId x = 0; x < n; ++x)
        for (ObjId y = 0; y < n; ++y)
            for (int alpha = 0; alpha < es.hom(x, y).size(); ++alpha)
                for (int a = 0; a < m.presheaf.fiber_size(y); ++a)
                    if (table[x][m.apply(x, y, alpha, a)] != nm.apply(x, y, alpha, table[y][a]))
                        throw InvariantError("module_morphism: not compatible with the actions");
    return table;
}

namespace {

std::vector<int> decode(int index, int s, int k) {
    std::vector<int> v(k);
    for (int i = k - 1; i >= 0; --i) {
        v[i] = index % s;
        index /= s;
    }
    return v;
}

int encode(const std::vector<int>& v, int s) {
    int index = 0;
    for (int d : v) index = index * s + d;
    return index;
}

}  // namespace

Copresheaf complement(const Presheaf& m, int s) {
    if (s < 0) throw std::invalid_argument("complement: negative set size");
    const auto& X = *m.base;
    Copresheaf c{m.base, std::vector<std::vector<std::string>>(X.num_objects()), {}};
    std::vector<int> count(X.num_objects());
    for (ObjId x = 0; x < X.num_objects(); ++x) {
        const int k = m.fiber_size(x);
        const std::uint64_t total = ipow(static_cast<std::uint64_t>(s), k);
        if (total > size_guard()) throw SizeGuardError("complement: fiber exceeds the size guard");
        count[x] = static_cast<int>(total);
        for (int idx = 0; idx < count[x]; ++idx) {
            const auto v = decode(idx, std::max(s, 1), k);
            std::string name = "[";
            for (int i = 0; i < k; ++i) name += (i ? "," : "") + std::to_string(v[i]);
            c.fiber[x].push_back(name + "]");
        }
    }
    c.action.resize(X.num_morphisms());
    for (MorId a = 0; a < X.num_morphisms(); ++a) {
        const ObjId x = X.src(a);
        const ObjId x2 = X.tgt(a);
        for (int idx = 0; idx < count[x]; ++idx) {
            const auto phi = decode(idx, std::max(s, 1), m.fiber_size(x));
            std::vector<int> psi(m.fiber_size(x2));
            for (int t = 0; t < m.fiber_size(x2); ++t) psi[t] = phi[m.action[a][t]];
            c.action[a].push_back(encode(psi, std::max(s, 1)));
        }
    }
    return c;
}

Verdict check_complement_adjunction(const Presheaf& m, int s, const Functor& q) {
    const Copresheaf neg = complement(m, s);
    const Elements el_neg = elements(neg);
    if (auto v = is_discrete_opfibration(el_neg.projection); !v)
        return Verdict::no("complement is not a discrete opfibration: " + v.witness);
    const Elements el_m = elements(m);
    const auto& X = *m.base;
    std::vector<int> fiber_position(el_m.category->num_objects());
    for (ObjId x = 0; x < X.num_objects(); ++x)
        for (int k = 0; k < m.fiber_size(x); ++k) fiber_position[el_m.object_at[x][k]] = k;
    std::vector<int> neg_index(el_neg.category->num_objects());
    for (ObjId x = 0; x < X.num_objects(); ++x)
        for (int k = 0; k < neg.fiber_size(x); ++k) neg_index[el_neg.object_at[x][k]] = k;

    const Functor mq{el_m.category, q.cod, el_m.projection.obj_map, el_m.projection.mor_map};
    const Functor nq{el_neg.category, q.cod, el_neg.projection.obj_map, el_neg.projection.mor_map};

    // Transposes h: q -> ¬m(S) into a function ⊗(p, m) -> S, where p = n_leg.
    auto transpose = [&](const Functor& leg, const PullbackResult& pb, const FinSetQuotient& t,
                         const Functor& h) -> std::optional<std::vector<int>> {
        std::vector<int> fn(t.size(), -1);
        for (ObjId o = 0; o < pb.apex->num_objects(); ++o) {
            const auto [b, a] = pb.pairs[o];
            const ObjId x = leg.obj(b);
            const auto phi = decode(neg_index[h.obj(b)], std::max(s, 1), m.fiber_size(x));
            const int value = phi[fiber_position[a]];
            int& slot = fn[t.class_of[o]];
            if (slot != -1 && slot != value) return std::nullopt;
            slot = value;
        }
        return fn;
    };

    const PullbackResult pb = pullback(q, mq);
    const FinSetQuotient t = pi0(*pb.apex);
    const std::uint64_t expected = ipow(static_cast<std::uint64_t>(s), t.size());
    std::set<std::vector<int>> seen;
    std::uint64_t count = 0;
    Verdict result;
    auto c = over_base(q, nq);
    for_each_functor(q.dom, el_neg.category, c, [&](const Functor& h) {
        ++count;
        auto fn = transpose(q, pb, t, h);
        if (!fn) {
            result = Verdict::no("transpose of " + std::to_string(count) + "-th map is not constant on components");
            return false;
        }
        seen.insert(*fn);
        return true;
    });
    if (!result) return result;
    if (count != expected)
        return Verdict::no("|Hom(q, complement)| = " + std::to_string(count) + " but |S|^|tensor| = " +
                           std::to_string(expected));
    if (seen.size() != count) return Verdict::no("transposition is not injective");

    const FactorizationResult r = factorize_left(q);
    const PullbackResult pb2 = pullback(r.m, mq);
    const FinSetQuotient t2 = pi0(*pb2.apex);
    std::vector<int> induced(t.size());
    for (ObjId o = 0; o < pb.apex->num_objects(); ++o)
        induced[t.class_of[o]] = t2.class_of[pb2.find(r.e.obj(pb.pairs[o].first), pb.pairs[o].second)];
    auto c2 = over_base(r.m, nq);
    for_each_functor(r.mid, el_neg.category, c2, [&](const Functor& h2) {
        auto outer = transpose(r.m, pb2, t2, h2);
        auto inner = transpose(q, pb, t, compose(h2, r.e));
        if (!outer || !inner) {
            result = Verdict::no("transpose along the reflection is not well defined");
            return false;
        }
        for (int k = 0; k < t.size(); ++k)
            if ((*inner)[k] != (*outer)[induced[k]]) {
                result = Verdict::no("transposition is not natural along q -> reflection of q");
                return false;
            }
        return true;
    });
    return result;
}

// ---------------------------------------------------------------------------

Verdict is_codiscrete(const CategoryPtr& X) {
    for (ObjId x = 0; x < X->num_objects(); ++x) {
        const Functor pt = point(X, x);
        if (auto v = is_final(pt); !v) return Verdict::no("point '" + X->object_name(x) + "' is not final");
        if (auto v = is_initial(pt); !v) return Verdict::no("point '" + X->object_name(x) + "' is not initial");
    }
    return Verdict::yes();
}

Verdict is_groupoidal(const CategoryPtr& X) {
    for (ObjId x = 0; x < X->num_objects(); ++x) {
        if (auto v = is_codiscrete(slice(X, x).category()); !v)
            return Verdict::no("slice at '" + X->object_name(x) + "': " + v.witness);
        if (auto v = is_codiscrete(coslice(X, x).category()); !v)
            return Verdict::no("coslice at '" + X->object_name(x) + "': " + v.witness);
    }
    return Verdict::yes();
}

bool homotopic(const EnrichedStructure& es, ObjId x, ObjId y) { return es.hom(x, y).size() > 0; }

}  // namespace balcat
