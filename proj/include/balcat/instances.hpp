#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "balcat/calculus.hpp"
#include "balcat/category.hpp"
#include "balcat/constructions.hpp"
#include "balcat/factorization.hpp"

namespace balcat {

// ---------------------------------------------------------------------------
// Finite posets

/// A finite poset stored with its full reflexive-transitive closure.
class Poset {
  public:
    /// Closes `pairs` (a ≤ b) reflexively and transitively. Throws
    /// ValidationError on unknown elements, duplicates or a failure of
    /// antisymmetry.
    Poset(std::vector<std::string> elements, const std::vector<std::pair<std::string, std::string>>& pairs);
    /// From an index relation; `leq` must already be closed.
    Poset(std::vector<std::string> elements, std::vector<char> leq);

    int size() const noexcept { return static_cast<int>(elements_.size()); }
    const std::vector<std::string>& elements() const noexcept { return elements_; }
    const std::string& name(int a) const { return elements_[a]; }
    bool leq(int a, int b) const { return leq_[static_cast<std::size_t>(a) * elements_.size() + b] != 0; }
    std::optional<int> find(const std::string& name) const;
    /// Cover pairs a < b with nothing strictly between, in index order.
    std::vector<std::pair<int, int>> covers() const;

    bool operator==(const Poset& other) const { return elements_ == other.elements_ && leq_ == other.leq_; }

  private:
    std::vector<std::string> elements_;
    std::vector<char> leq_;
};

using PosetPtr = std::shared_ptr<const Poset>;

PosetPtr discrete_poset(const std::vector<std::string>& elements);
PosetPtr chain_poset(int n);

struct MonotoneMap {
    PosetPtr dom;
    PosetPtr cod;
    std::vector<int> map;

    int operator()(int a) const { return map[a]; }
};

/// Throws ValidationError naming a pair a ≤ b with f a ≰ f b.
void validate_monotone(const MonotoneMap& f);
bool operator==(const MonotoneMap& a, const MonotoneMap& b);

MonotoneMap monotone_identity(const PosetPtr& p);
MonotoneMap monotone_compose(const MonotoneMap& g, const MonotoneMap& f);
/// The full subposet on `members` (in the order given) with its inclusion.
MonotoneMap subposet_inclusion(const PosetPtr& p, const std::vector<int>& members);

bool is_lower_set(const Poset& p, const std::vector<int>& members);
bool is_upper_set(const Poset& p, const std::vector<int>& members);
std::vector<int> down_closure(const Poset& p, const std::vector<int>& members);
std::vector<int> up_closure(const Poset& p, const std::vector<int>& members);

/// ∀x ∃a: x ≤ f a.
bool is_cofinal(const MonotoneMap& f);
/// ∀x ∃a: f a ≤ x.
bool is_coinitial(const MonotoneMap& f);
/// Injective order embedding onto a lower (upper) set.
bool is_lower_set_inclusion(const MonotoneMap& f);
bool is_upper_set_inclusion(const MonotoneMap& f);
bool is_order_isomorphism(const MonotoneMap& f);

struct PosFactorization {
    MonotoneMap e;
    PosetPtr mid;
    MonotoneMap m;
};

/// mid is the down-closure of the image; e the corestriction, m the inclusion.
PosFactorization pos_factorize_left(const MonotoneMap& f);
/// mid is the up-closure of the image.
PosFactorization pos_factorize_right(const MonotoneMap& f);

/// Internal components: 1 when nonempty, 0 otherwise.
int pos_pi0(const Poset& p);

struct PosPullback {
    PosetPtr apex;
    MonotoneMap left;
    MonotoneMap right;
    std::vector<std::pair<int, int>> pairs;
};
PosPullback pos_pullback(const MonotoneMap& f, const MonotoneMap& g);

/// The slice P/x is the principal lower set of x; the coslice the principal
/// upper set.
std::vector<int> pos_slice(const Poset& p, int x);
std::vector<int> pos_coslice(const Poset& p, int x);
/// 1 when x ≤ y, else 0.
int pos_hom(const Poset& p, int x, int y);

/// Least upper bound of a subset, if any.
std::optional<int> pos_sup(const Poset& p, const std::vector<int>& subset);
/// A cone from a subset to x is colimiting iff x is the sup.
bool pos_is_colimiting(const Poset& p, const std::vector<int>& subset, int x);
/// Colimiting and attained: x is the maximum of the subset.
bool pos_is_absolute(const Poset& p, const std::vector<int>& subset, int x);
/// g(y) = max{x : f x ≤ y} when every such set has a maximum.
std::optional<std::vector<int>> pos_upper_adjoint(const MonotoneMap& f);
/// For every y, f/y = {x : f x ≤ y} is cofinal in ↓y.
bool pos_is_dense(const MonotoneMap& f);
/// The set {x : |S|^{[x∈L]} = 1}, the support of the complement of L valued in S.
std::vector<int> pos_complement(const Poset& p, const std::vector<int>& lower_set, int s);

/// The thin category of a poset: morphisms `a<=b` and identities `id:a`.
CategoryPtr thin_category(const Poset& p);
Functor monotone_functor(const MonotoneMap& f, const CategoryPtr& dom, const CategoryPtr& cod);
/// The presheaf of a lower set: singleton fibers on the set, empty elsewhere.
Presheaf lower_set_presheaf(const CategoryPtr& thin, const std::vector<int>& lower_set);

// ---------------------------------------------------------------------------
// The instance contract

template <class Obj, class Map>
struct BfcFactored {
    Map e;
    Obj mid;
    Map m;
};

template <class Obj, class Map>
struct BfcPullback {
    Obj apex;
    Map left;
    Map right;
};

/// First-class operations of a balanced factorization category backend.
/// E/M are the left system (final, discrete fibration in Cat), E2/M2 the
/// right one.
template <class Obj, class Map>
struct BfcInstance {
    std::string name;
    std::function<Obj()> terminal;
    std::function<Map(const Obj&)> bang;
    std::function<Map(const Obj&)> identity;
    std::function<Map(const Map&, const Map&)> compose;
    std::function<Obj(const Map&)> dom;
    std::function<Obj(const Map&)> cod;
    std::function<bool(const Map&, const Map&)> equal;
    std::function<bool(const Map&)> is_iso;
    std::function<BfcPullback<Obj, Map>(const Map&, const Map&)> pullback;
    std::function<bool(const Map&)> in_E;
    std::function<bool(const Map&)> in_M;
    std::function<bool(const Map&)> in_E2;
    std::function<bool(const Map&)> in_M2;
    std::function<BfcFactored<Obj, Map>(const Map&)> factor_left;
    std::function<BfcFactored<Obj, Map>(const Map&)> factor_right;
    std::function<std::vector<Map>(const Obj&)> points;
    /// The component object π0 X (an internal set).
    std::function<Obj(const Obj&)> pi0;
};

using FinCatBfc = BfcInstance<CategoryPtr, Functor>;
using PosBfc = BfcInstance<PosetPtr, MonotoneMap>;

FinCatBfc fincat_bfc();
PosBfc pos_bfc();
/// Finite sets as discrete posets with the epi-mono system on both sides.
PosBfc finset_bfc();

/// E = E' = isomorphisms, M = M' = all maps.
template <class Obj, class Map>
BfcInstance<Obj, Map> make_discrete_bfc(const BfcInstance<Obj, Map>& base) {
    BfcInstance<Obj, Map> d = base;
    d.name = base.name + "-discrete";
    d.in_E = base.is_iso;
    d.in_E2 = base.is_iso;
    d.in_M = [](const Map&) { return true; };
    d.in_M2 = d.in_M;
    auto factor = [base](const Map& f) { return BfcFactored<Obj, Map>{base.identity(base.dom(f)), base.dom(f), f}; };
    d.factor_left = factor;
    d.factor_right = factor;
    d.pi0 = [](const Obj& x) { return x; };
    return d;
}

/// E = E' = all maps, M = M' = isomorphisms.
template <class Obj, class Map>
BfcInstance<Obj, Map> make_codiscrete_bfc(const BfcInstance<Obj, Map>& base) {
    BfcInstance<Obj, Map> c = base;
    c.name = base.name + "-codiscrete";
    c.in_M = base.is_iso;
    c.in_M2 = base.is_iso;
    c.in_E = [](const Map&) { return true; };
    c.in_E2 = c.in_E;
    auto factor = [base](const Map& f) { return BfcFactored<Obj, Map>{f, base.cod(f), base.identity(base.cod(f))}; };
    c.factor_left = factor;
    c.factor_right = factor;
    c.pi0 = [base](const Obj&) { return base.terminal(); };
    return c;
}

/// Factorization laws on each sample (m∘e = f with e, m in their classes, on
/// both sides), identities in all four classes, M/1 = M'/1 on every object
/// met, and the reciprocal stability law: the final part of each sample
/// pulled back along the discrete opfibration of a point of its middle object
/// stays final, and dually.
template <class Obj, class Map>
Verdict check_bfc_laws(const BfcInstance<Obj, Map>& b, const std::vector<Map>& samples) {
    auto fail = [&](std::size_t k, const std::string& what) {
        return Verdict::no(b.name + ": sample " + std::to_string(k) + ": " + what);
    };
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const Map& f = samples[k];
        const auto l = b.factor_left(f);
        if (!b.equal(b.compose(l.m, l.e), f)) return fail(k, "left factors do not compose to the map");
        if (!b.in_E(l.e)) return fail(k, "left factor e is not in E");
        if (!b.in_M(l.m)) return fail(k, "left factor m is not in M");
        const auto r = b.factor_right(f);
        if (!b.equal(b.compose(r.m, r.e), f)) return fail(k, "right factors do not compose to the map");
        if (!b.in_E2(r.e)) return fail(k, "right factor e is not in E'");
        if (!b.in_M2(r.m)) return fail(k, "right factor m is not in M'");
        for (const Obj& x : {b.dom(f), b.cod(f), l.mid, r.mid}) {
            const Map id = b.identity(x);
            if (!b.in_E(id) || !b.in_M(id) || !b.in_E2(id) || !b.in_M2(id))
                return fail(k, "an identity is missing from one of the classes");
            const Map bx = b.bang(x);
            if (b.in_M(bx) != b.in_M2(bx)) return fail(k, "internal sets differ between the two systems");
        }
        for (const Map& pt : b.points(l.mid)) {
            const Map n = b.factor_right(pt).m;
            const auto pb = b.pullback(l.e, n);
            if (!b.in_E(pb.right)) return fail(k, "final map pulled back along a discrete opfibration is not final");
        }
        for (const Map& pt : b.points(r.mid)) {
            const Map m = b.factor_left(pt).m;
            const auto pb = b.pullback(r.e, m);
            if (!b.in_E2(pb.right)) return fail(k, "initial map pulled back along a discrete fibration is not initial");
        }
    }
    return Verdict::yes();
}

/// |X(x,y)| computed from the instance operations alone: the points of
/// π0 of the pullback of ↑x and ↓y.
template <class Obj, class Map>
int bfc_hom_size(const BfcInstance<Obj, Map>& b, const Map& x, const Map& y) {
    const Map up = b.factor_right(x).m;
    const Map down = b.factor_left(y).m;
    const auto pb = b.pullback(up, down);
    return static_cast<int>(b.points(b.factor_left(b.bang(pb.apex)).mid).size());
}

// ---------------------------------------------------------------------------
// Finite acyclic reflexive graphs

struct GraphEdge {
    std::string id;
    int src = 0;
    int tgt = 0;
};

/// Nodes and edges; edges with src == tgt are the reflexive loops and are
/// identified with identities.
struct Graph {
    std::vector<std::string> nodes;
    std::vector<GraphEdge> edges;
};

/// Throws ValidationError naming a directed cycle among the non-loop edges.
void check_acyclic(const Graph& g);
/// All directed paths x -> y as lists of edge indices, in lexicographic order
/// of edge index. The empty path is the path from x to x.
std::vector<std::vector<int>> graph_paths(const Graph& g, int x, int y);
/// The free category: arrows are paths, named by their edge ids joined with
/// `.` in traversal order.
CategoryPtr free_category(const Graph& g);

}  // namespace balcat
