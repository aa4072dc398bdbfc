#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "orbistack/action.hpp"
#include "orbistack/errors.hpp"
#include "orbistack/group.hpp"

namespace orbistack {

/// Finite groupoid with explicit arrow list and composition table. The
/// discrete counterpart of a Lie groupoid: objects 0..n-1, arrows with a
/// source and target, a unit arrow per object, a partial composition
/// compose(a2, a1) defined exactly when src(a2) = tgt(a1), and inverses.
/// Everything is stored extensionally; sizes here stay in the hundreds.
class FiniteGroupoid {
public:
    struct Arrow {
        int src, tgt;
        bool operator==(const Arrow& o) const { return src == o.src && tgt == o.tgt; }
    };

    FiniteGroupoid(int n_objects, std::vector<Arrow> arrows, std::vector<int> unit,
                   std::vector<int> inv, std::vector<int> comp)
        : n_(n_objects), arrows_(std::move(arrows)), unit_(std::move(unit)),
          inv_(std::move(inv)), comp_(std::move(comp)) {
        validate_shallow();
    }

    int objects() const { return n_; }
    int arrow_count() const { return static_cast<int>(arrows_.size()); }
    const Arrow& arrow(int a) const { return arrows_[a]; }
    int unit(int x) const { return unit_[x]; }
    int inverse(int a) const { return inv_[a]; }

    bool composable(int a2, int a1) const { return arrows_[a2].src == arrows_[a1].tgt; }

    /// a2 after a1; defined iff src(a2) = tgt(a1).
    int compose(int a2, int a1) const {
        int r = comp_[static_cast<std::size_t>(a2) * arrows_.size() + a1];
        if (r < 0) throw DomainError("arrows are not composable");
        return r;
    }

    /// Arrows x -> y in increasing id order.
    std::vector<int> hom_set(int x, int y) const {
        std::vector<int> out;
        for (int a = 0; a < arrow_count(); ++a)
            if (arrows_[a].src == x && arrows_[a].tgt == y) out.push_back(a);
        return out;
    }

    /// Full axiom check including associativity; used by tests and the
    /// JSON loader (O(arrows^3) worst case, fine at these sizes).
    void validate_deep() const {
        for (int a = 0; a < arrow_count(); ++a) {
            int u_t = unit_[arrows_[a].tgt], u_s = unit_[arrows_[a].src];
            if (compose(u_t, a) != a || compose(a, u_s) != a)
                throw InvalidStructureError("unit law fails");
            int ai = inv_[a];
            if (arrows_[ai].src != arrows_[a].tgt || arrows_[ai].tgt != arrows_[a].src)
                throw InvalidStructureError("inverse has wrong endpoints");
            if (compose(ai, a) != u_s || compose(a, ai) != u_t)
                throw InvalidStructureError("inverse law fails");
        }
        int k = arrow_count();
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) {
                if (!composable(b, a)) continue;
                int ba = compose(b, a);
                if (arrows_[ba].src != arrows_[a].src || arrows_[ba].tgt != arrows_[b].tgt)
                    throw InvalidStructureError("composite has wrong endpoints");
                for (int c = 0; c < k; ++c) {
                    if (!composable(c, b)) continue;
                    if (compose(compose(c, b), a) != compose(c, ba))
                        throw InvalidStructureError("composition is not associative");
                }
            }
    }

    bool operator==(const FiniteGroupoid& o) const {
        return n_ == o.n_ && arrows_ == o.arrows_ && unit_ == o.unit_ && inv_ == o.inv_ &&
               comp_ == o.comp_;
    }

private:
    void validate_shallow() const {
        if (n_ < 0) throw InvalidStructureError("negative object count");
        if (static_cast<int>(unit_.size()) != n_)
            throw InvalidStructureError("unit table size mismatch");
        if (inv_.size() != arrows_.size() || comp_.size() != arrows_.size() * arrows_.size())
            throw InvalidStructureError("table sizes do not match the arrow list");
        for (const auto& a : arrows_)
            if (a.src < 0 || a.src >= n_ || a.tgt < 0 || a.tgt >= n_)
                throw InvalidStructureError("arrow endpoint out of range");
        for (int x = 0; x < n_; ++x) {
            int u = unit_[x];
            if (u < 0 || u >= static_cast<int>(arrows_.size()) || arrows_[u].src != x ||
                arrows_[u].tgt != x)
                throw InvalidStructureError("unit arrow is not an endomorphism of its object");
        }
        for (std::size_t i = 0; i < arrows_.size(); ++i) {
            std::size_t k = arrows_.size();
            for (std::size_t j = 0; j < k; ++j) {
                int c = comp_[i * k + j];
                bool defined = arrows_[i].src == arrows_[j].tgt;
                if (defined && (c < 0 || c >= static_cast<int>(k)))
                    throw InvalidStructureError("missing composite for composable arrows");
                if (!defined && c != -1)
                    throw InvalidStructureError("composite defined for non-composable arrows");
            }
        }
    }

    int n_;
    std::vector<Arrow> arrows_;
    std::vector<int> unit_;
    std::vector<int> inv_;
    std::vector<int> comp_;
};

/// Action groupoid G x M => M: one arrow (g, x) from x to g.x per pair,
/// with composition (h, g.x)(g, x) = (hg, x). Arrow ids are g*|M| + x.
inline FiniteGroupoid action_groupoid(const FiniteAction& act) {
    int m = act.objects();
    int k = act.group().order();
    std::vector<FiniteGroupoid::Arrow> arrows(static_cast<std::size_t>(k) * m);
    for (int g = 0; g < k; ++g)
        for (int x = 0; x < m; ++x) arrows[g * m + x] = {x, act.apply(g, x)};
    std::vector<int> unit(m);
    for (int x = 0; x < m; ++x) unit[x] = act.group().identity() * m + x;
    std::vector<int> inv(arrows.size());
    for (int g = 0; g < k; ++g)
        for (int x = 0; x < m; ++x)
            inv[g * m + x] = act.group().inverse(g) * m + act.apply(g, x);
    std::vector<int> comp(arrows.size() * arrows.size(), -1);
    for (int g = 0; g < k; ++g)
        for (int x = 0; x < m; ++x)
            for (int h = 0; h < k; ++h) {
                int a1 = g * m + x;                       // x -> g.x
                int a2 = h * m + act.apply(g, x);         // g.x -> hg.x
                comp[static_cast<std::size_t>(a2) * arrows.size() + a1] =
                    act.group().mul(h, g) * m + x;
            }
    return FiniteGroupoid(m, std::move(arrows), std::move(unit), std::move(inv), std::move(comp));
}

/// Orbit partition: connected components of the source-target relation,
/// each sorted ascending, listed by least member.
inline std::vector<std::vector<int>> orbits(const FiniteGroupoid& g) {
    std::vector<int> parent(g.objects());
    for (int i = 0; i < g.objects(); ++i) parent[i] = i;
    std::function<int(int)> find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (int a = 0; a < g.arrow_count(); ++a) {
        int x = find(g.arrow(a).src), y = find(g.arrow(a).tgt);
        if (x != y) parent[std::max(x, y)] = std::min(x, y);
    }
    std::vector<std::vector<int>> buckets(g.objects());
    for (int x = 0; x < g.objects(); ++x) buckets[find(x)].push_back(x);
    std::vector<std::vector<int>> out;
    for (auto& b : buckets)
        if (!b.empty()) out.push_back(std::move(b));
    return out;
}

/// Isotropy group at x: the arrows x -> x under groupoid composition,
/// together with their arrow ids (increasing).
struct IsotropyGroup {
    FiniteGroup group;
    std::vector<int> arrow_ids;
};

inline IsotropyGroup isotropy(const FiniteGroupoid& g, int x) {
    std::vector<int> ids = g.hom_set(x, x);
    int n = static_cast<int>(ids.size());
    auto idx = [&](int arrow) {
        return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), arrow) - ids.begin());
    };
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[i][j] = idx(g.compose(ids[i], ids[j]));
    return {FiniteGroup(std::move(t)), std::move(ids)};
}

}  // namespace orbistack
