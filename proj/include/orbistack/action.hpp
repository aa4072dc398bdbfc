#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "orbistack/errors.hpp"
#include "orbistack/group.hpp"

namespace orbistack {

/// Finite group action G on {0..n-1}, the discrete stand-in for a group
/// acting on a manifold. The optional adjacency relation on objects plays
/// the role of connectedness: it defaults to the complete relation (a
/// connected space); giving it several components models a disconnected
/// one. Action axioms are checked at construction.
class FiniteAction {
public:
    FiniteAction(FiniteGroup group, int n_objects, std::vector<std::vector<int>> act)
        : group_(std::move(group)), n_(n_objects) {
        if (n_ < 0) throw InvalidStructureError("negative object count");
        if (static_cast<int>(act.size()) != group_.order())
            throw InvalidStructureError("action table must have one row per group element");
        act_.resize(static_cast<std::size_t>(group_.order()) * n_);
        for (int g = 0; g < group_.order(); ++g) {
            if (static_cast<int>(act[g].size()) != n_)
                throw InvalidStructureError("action row length mismatch");
            for (int x = 0; x < n_; ++x) {
                int y = act[g][x];
                if (y < 0 || y >= n_) throw InvalidStructureError("action value out of range");
                act_[g * n_ + x] = y;
            }
        }
        validate();
    }

    /// g |-> x + g mod n, the rotation action of Z_n (or any cyclic image).
    static FiniteAction cyclic_rotation(int group_order, int n_objects) {
        FiniteGroup g = FiniteGroup::cyclic(group_order);
        std::vector<std::vector<int>> act(group_order, std::vector<int>(n_objects));
        for (int k = 0; k < group_order; ++k)
            for (int x = 0; x < n_objects; ++x) act[k][x] = (x + k) % n_objects;
        return FiniteAction(std::move(g), n_objects, std::move(act));
    }

    static FiniteAction trivial_action(FiniteGroup group, int n_objects) {
        std::vector<std::vector<int>> act(group.order(), std::vector<int>(n_objects));
        for (int g = 0; g < group.order(); ++g)
            for (int x = 0; x < n_objects; ++x) act[g][x] = x;
        return FiniteAction(std::move(group), n_objects, std::move(act));
    }

    const FiniteGroup& group() const { return group_; }
    int objects() const { return n_; }
    int apply(int g, int x) const { return act_[g * n_ + x]; }

    /// Adjacency is complete unless explicitly set.
    void set_adjacency(const std::vector<std::pair<int, int>>& edges) {
        adjacency_.emplace(n_, std::vector<bool>(n_, false));
        auto& m = *adjacency_;
        for (auto [a, b] : edges) {
            if (a < 0 || a >= n_ || b < 0 || b >= n_)
                throw InvalidStructureError("adjacency edge out of range");
            m[a][b] = m[b][a] = true;
        }
    }

    bool has_explicit_adjacency() const { return adjacency_.has_value(); }

    bool adjacent(int x, int y) const {
        if (!adjacency_) return true;
        return (*adjacency_)[x][y];
    }

    /// Connected components of the adjacency relation, each sorted, listed
    /// by least member. Complete adjacency gives one component.
    std::vector<std::vector<int>> adjacency_components() const {
        std::vector<int> comp(n_, -1);
        std::vector<std::vector<int>> out;
        for (int s = 0; s < n_; ++s) {
            if (comp[s] >= 0) continue;
            int c = static_cast<int>(out.size());
            std::vector<int> stack{s}, members;
            comp[s] = c;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                members.push_back(x);
                for (int y = 0; y < n_; ++y)
                    if (comp[y] < 0 && adjacent(x, y)) {
                        comp[y] = c;
                        stack.push_back(y);
                    }
            }
            std::sort(members.begin(), members.end());
            out.push_back(std::move(members));
        }
        return out;
    }

    /// Orbit partition of the restricted action of a subset of G
    /// (sorted orbits, listed by least member).
    std::vector<std::vector<int>> orbits_of_subset(const std::vector<int>& elems) const {
        std::vector<int> parent(n_);
        for (int i = 0; i < n_; ++i) parent[i] = i;
        std::function<int(int)> find = [&](int v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        for (int g : elems)
            for (int x = 0; x < n_; ++x) {
                int a = find(x), b = find(apply(g, x));
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
        std::vector<std::vector<int>> buckets(n_);
        for (int x = 0; x < n_; ++x) buckets[find(x)].push_back(x);
        std::vector<std::vector<int>> out;
        for (auto& b : buckets)
            if (!b.empty()) out.push_back(std::move(b));
        return out;
    }

    /// True when no element of the subset other than the identity fixes a
    /// point: the discrete stand-in for a properly discontinuous action.
    bool acts_freely(const std::vector<int>& elems) const {
        for (int g : elems) {
            if (g == group_.identity()) continue;
            for (int x = 0; x < n_; ++x)
                if (apply(g, x) == x) return false;
        }
        return true;
    }

private:
    void validate() {
        int e = group_.identity();
        for (int x = 0; x < n_; ++x)
            if (apply(e, x) != x) throw InvalidStructureError("identity must act trivially");
        for (int g = 0; g < group_.order(); ++g)
            for (int h = 0; h < group_.order(); ++h)
                for (int x = 0; x < n_; ++x)
                    if (apply(g, apply(h, x)) != apply(group_.mul(g, h), x))
                        throw InvalidStructureError("action does not respect multiplication");
    }

    FiniteGroup group_;
    int n_;
    std::vector<int> act_;
    std::optional<std::vector<std::vector<bool>>> adjacency_;
};

/// Quotient of an action by a normal subgroup K: G/K acting on M/K,
/// together with the projection data and whether K acts freely (the
/// hypothesis under which the projection is a Morita map).
struct ActionQuotient {
    FiniteAction quotient;
    std::vector<int> group_proj;   // g -> coset index
    std::vector<int> object_proj;  // x -> K-orbit index
    bool kernel_acts_freely;
};

inline ActionQuotient quotient_action(const FiniteAction& act, const std::vector<int>& kernel) {
    const FiniteGroup& g = act.group();
    QuotientGroup q = quotient_group(g, kernel);  // throws NotNormal

    auto korbits = act.orbits_of_subset(kernel);
    std::vector<int> object_proj(act.objects(), -1);
    for (std::size_t i = 0; i < korbits.size(); ++i)
        for (int x : korbits[i]) object_proj[x] = static_cast<int>(i);

    int qn = static_cast<int>(korbits.size());
    std::vector<std::vector<int>> qact(q.group.order(), std::vector<int>(qn, -1));
    for (int gg = 0; gg < g.order(); ++gg)
        for (int x = 0; x < act.objects(); ++x) {
            int c = q.coset_of[gg];
            int ox = object_proj[x];
            int oy = object_proj[act.apply(gg, x)];
            if (qact[c][ox] == -1)
                qact[c][ox] = oy;
            else if (qact[c][ox] != oy)
                throw InternalError("quotient action is not well-defined");
        }
    FiniteAction quotient(q.group, qn, std::move(qact));
    return {std::move(quotient), q.coset_of, std::move(object_proj), act.acts_freely(kernel)};
}

}  // namespace orbistack
