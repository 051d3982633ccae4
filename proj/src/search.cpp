#include "balcat/search.hpp"

#include <cstdlib>
#include <deque>
#include <string>
#include <tuple>

namespace balcat {

std::uint64_t size_guard() {
    if (const char* env = std::getenv("BALANCED_SIZE_GUARD")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return 1'000'000;
}

namespace {

struct Step {
    bool is_object;
    int id;
};

struct Triple {
    MorId g, f, h;
};

class FunctorSearch {
  public:
    FunctorSearch(const CategoryPtr& dom, const CategoryPtr& cod, const FunctorConstraints& c,
                  const std::function<bool(const Functor&)>& visit)
        : D_(*dom), C_(*cod), c_(c), visit_(visit),
          current_{dom, cod, std::vector<ObjId>(dom->num_objects(), kNone),
                   std::vector<MorId>(dom->num_morphisms(), kNone)},
          used_obj_(cod->num_objects(), 0), used_mor_(cod->num_morphisms(), 0),
          budget_(c.node_budget ? c.node_budget : size_guard()) {
        plan();
    }

    void run() { descend(0); }

  private:
    void plan() {
        const int n = D_.num_objects();
        std::vector<char> placed(n, 0), mor_placed(D_.num_morphisms(), 0);
        std::vector<int> step_of_mor(D_.num_morphisms(), -1);
        auto place_object = [&](ObjId a) {
            placed[a] = 1;
            step_of_mor[D_.identity(a)] = static_cast<int>(steps_.size());
            steps_.push_back({true, a});
            auto consider = [&](MorId u) {
                if (mor_placed[u] || D_.is_identity(u) || !placed[D_.src(u)] || !placed[D_.tgt(u)]) return;
                mor_placed[u] = 1;
                step_of_mor[u] = static_cast<int>(steps_.size());
                steps_.push_back({false, u});
            };
            for (MorId u : D_.out_of(a)) consider(u);
            for (MorId u : D_.into(a)) consider(u);
        };
        for (ObjId root = 0; root < n; ++root) {
            if (placed[root]) continue;
            std::deque<ObjId> queue{root};
            place_object(root);
            while (!queue.empty()) {
                const ObjId a = queue.front();
                queue.pop_front();
                auto visit_neighbour = [&](ObjId b) {
                    if (placed[b]) return;
                    place_object(b);
                    queue.push_back(b);
                };
                for (MorId u : D_.out_of(a)) visit_neighbour(D_.tgt(u));
                for (MorId u : D_.into(a)) visit_neighbour(D_.src(u));
            }
        }
        checks_.resize(steps_.size());
        for (MorId f = 0; f < D_.num_morphisms(); ++f) {
            if (D_.is_identity(f)) continue;
            for (MorId g : D_.out_of(D_.tgt(f))) {
                if (D_.is_identity(g)) continue;
                const MorId h = D_.compose(g, f);
                const int at = std::max({step_of_mor[g], step_of_mor[f], step_of_mor[h]});
                checks_[at].push_back({g, f, h});
            }
        }
    }

    void tick() {
        if (++nodes_ > budget_)
            throw SizeGuardError("functor enumeration exceeded the size guard (" + std::to_string(budget_) +
                                 " search nodes)");
    }

    bool checks_pass(std::size_t step) const {
        for (const auto& t : checks_[step])
            if (current_.mor_map[t.h] != C_.compose(current_.mor_map[t.g], current_.mor_map[t.f])) return false;
        return true;
    }

    // Returns false once the visitor asked to stop.
    bool descend(std::size_t step) {
        if (step == steps_.size()) return visit_(current_);
        const Step s = steps_[step];
        if (s.is_object) {
            const MorId ida = D_.identity(s.id);
            for (ObjId b = 0; b < C_.num_objects(); ++b) {
                tick();
                if (c_.injective && used_obj_[b]) continue;
                if (c_.allow_object && !c_.allow_object(s.id, b)) continue;
                const MorId idb = C_.identity(b);
                if (c_.allow_morphism && !c_.allow_morphism(ida, idb)) continue;
                current_.obj_map[s.id] = b;
                current_.mor_map[ida] = idb;
                used_obj_[b] = 1;
                used_mor_[idb] = 1;
                const bool keep_going = descend(step + 1);
                used_obj_[b] = 0;
                used_mor_[idb] = 0;
                if (!keep_going) return false;
            }
            current_.obj_map[s.id] = kNone;
            current_.mor_map[ida] = kNone;
            return true;
        }
        const MorId u = s.id;
        for (MorId v : C_.hom(current_.obj_map[D_.src(u)], current_.obj_map[D_.tgt(u)])) {
            tick();
            if (c_.injective && used_mor_[v]) continue;
            if (c_.allow_morphism && !c_.allow_morphism(u, v)) continue;
            current_.mor_map[u] = v;
            if (!checks_pass(step)) continue;
            used_mor_[v] = 1;
            const bool keep_going = descend(step + 1);
            used_mor_[v] = 0;
            if (!keep_going) return false;
        }
        current_.mor_map[u] = kNone;
        return true;
    }

    const FiniteCategory& D_;
    const FiniteCategory& C_;
    const FunctorConstraints& c_;
    const std::function<bool(const Functor&)>& visit_;
    Functor current_;
    std::vector<char> used_obj_, used_mor_;
    std::vector<Step> steps_;
    std::vector<std::vector<Triple>> checks_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
};

std::tuple<std::size_t, std::size_t, std::size_t> profile(const FiniteCategory& x, ObjId a) {
    return {x.out_of(a).size(), x.into(a).size(), x.hom(a, a).size()};
}

}  // namespace

void for_each_functor(const CategoryPtr& dom, const CategoryPtr& cod, const FunctorConstraints& constraints,
                      const std::function<bool(const Functor&)>& visit) {
    FunctorSearch(dom, cod, constraints, visit).run();
}

std::vector<Functor> all_functors(const CategoryPtr& dom, const CategoryPtr& cod,
                                  const FunctorConstraints& constraints) {
    std::vector<Functor> out;
    for_each_functor(dom, cod, constraints, [&](const Functor& f) {
        out.push_back(f);
        return true;
    });
    return out;
}

std::uint64_t count_functors(const CategoryPtr& dom, const CategoryPtr& cod,
                             const FunctorConstraints& constraints) {
    std::uint64_t n = 0;
    for_each_functor(dom, cod, constraints, [&](const Functor&) {
        ++n;
        return true;
    });
    return n;
}

std::optional<Functor> find_isomorphism(const CategoryPtr& a, const CategoryPtr& b,
                                        FunctorConstraints constraints) {
    if (a->num_objects() != b->num_objects() || a->num_morphisms() != b->num_morphisms()) return std::nullopt;
    auto user_filter = constraints.allow_object;
    constraints.allow_object = [&](ObjId x, ObjId y) {
        if (profile(*a, x) != profile(*b, y)) return false;
        return !user_filter || user_filter(x, y);
    };
    constraints.injective = true;
    std::optional<Functor> found;
    for_each_functor(a, b, constraints, [&](const Functor& f) {
        found = f;
        return false;
    });
    return found;
}

}  // namespace balcat
