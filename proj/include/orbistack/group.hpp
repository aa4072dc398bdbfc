#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "orbistack/errors.hpp"

namespace orbistack {

/// Finite group given by its multiplication table. Elements are indices
/// 0..order-1; the table is validated on construction (identity, inverses,
/// associativity), so a constructed FiniteGroup is always a group.
class FiniteGroup {
public:
    explicit FiniteGroup(std::vector<std::vector<int>> table) {
        k_ = static_cast<int>(table.size());
        if (k_ == 0) throw InvalidStructureError("group must be nonempty");
        table_.resize(static_cast<std::size_t>(k_) * k_);
        for (int g = 0; g < k_; ++g) {
            if (static_cast<int>(table[g].size()) != k_)
                throw InvalidStructureError("multiplication table is not square");
            for (int h = 0; h < k_; ++h) {
                int v = table[g][h];
                if (v < 0 || v >= k_) throw InvalidStructureError("table entry out of range");
                table_[g * k_ + h] = v;
            }
        }
        validate();
    }

    static FiniteGroup trivial() { return cyclic(1); }

    static FiniteGroup cyclic(int n) {
        if (n < 1) throw InvalidStructureError("cyclic group needs order >= 1");
        std::vector<std::vector<int>> t(n, std::vector<int>(n));
        for (int g = 0; g < n; ++g)
            for (int h = 0; h < n; ++h) t[g][h] = (g + h) % n;
        return FiniteGroup(std::move(t));
    }

    static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
        int n = a.order() * b.order();
        std::vector<std::vector<int>> t(n, std::vector<int>(n));
        auto enc = [&](int x, int y) { return x * b.order() + y; };
        for (int x1 = 0; x1 < a.order(); ++x1)
            for (int y1 = 0; y1 < b.order(); ++y1)
                for (int x2 = 0; x2 < a.order(); ++x2)
                    for (int y2 = 0; y2 < b.order(); ++y2)
                        t[enc(x1, y1)][enc(x2, y2)] = enc(a.mul(x1, x2), b.mul(y1, y2));
        return FiniteGroup(std::move(t));
    }

    static FiniteGroup klein_four() { return direct_product(cyclic(2), cyclic(2)); }

    /// S3 as permutations of {0,1,2} in lexicographic one-line order:
    /// 012, 021, 102, 120, 201, 210.
    static FiniteGroup symmetric3() {
        const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        auto index_of = [&](const int* p) {
            for (int i = 0; i < 6; ++i)
                if (perms[i][0] == p[0] && perms[i][1] == p[1] && perms[i][2] == p[2]) return i;
            return -1;
        };
        std::vector<std::vector<int>> t(6, std::vector<int>(6));
        for (int g = 0; g < 6; ++g)
            for (int h = 0; h < 6; ++h) {
                int comp[3];  // (g h)(x) = g(h(x))
                for (int x = 0; x < 3; ++x) comp[x] = perms[g][perms[h][x]];
                t[g][h] = index_of(comp);
            }
        return FiniteGroup(std::move(t));
    }

    int order() const { return k_; }
    int identity() const { return id_; }
    int mul(int g, int h) const { return table_[g * k_ + h]; }
    int inverse(int g) const { return inv_[g]; }

    int power(int g, long e) const {
        int base = e >= 0 ? g : inverse(g);
        long n = e >= 0 ? e : -e;
        int r = id_;
        for (long i = 0; i < n; ++i) r = mul(r, base);
        return r;
    }

    int element_order(int g) const {
        int x = g, n = 1;
        while (x != id_) {
            x = mul(x, g);
            ++n;
        }
        return n;
    }

    bool is_cyclic() const {
        for (int g = 0; g < k_; ++g)
            if (element_order(g) == k_) return true;
        return false;
    }

    bool is_abelian() const {
        for (int g = 0; g < k_; ++g)
            for (int h = 0; h < g; ++h)
                if (mul(g, h) != mul(h, g)) return false;
        return true;
    }

    bool operator==(const FiniteGroup& o) const { return k_ == o.k_ && table_ == o.table_; }

private:
    void validate() {
        id_ = -1;
        for (int e = 0; e < k_; ++e) {
            bool ok = true;
            for (int g = 0; g < k_ && ok; ++g) ok = mul(e, g) == g && mul(g, e) == g;
            if (ok) {
                id_ = e;
                break;
            }
        }
        if (id_ < 0) throw InvalidStructureError("no identity element");
        inv_.assign(k_, -1);
        for (int g = 0; g < k_; ++g) {
            for (int h = 0; h < k_; ++h)
                if (mul(g, h) == id_ && mul(h, g) == id_) {
                    inv_[g] = h;
                    break;
                }
            if (inv_[g] < 0) throw InvalidStructureError("element without inverse");
        }
        for (int a = 0; a < k_; ++a)
            for (int b = 0; b < k_; ++b)
                for (int c = 0; c < k_; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                        throw InvalidStructureError("multiplication is not associative");
    }

    int k_ = 0;
    int id_ = 0;
    std::vector<int> table_;
    std::vector<int> inv_;
};

/// All isomorphism types of groups of order <= 6 (and the building blocks
/// the worked examples need).
inline std::vector<FiniteGroup> small_groups_catalog(int max_order = 6) {
    std::vector<FiniteGroup> out;
    for (int n = 1; n <= max_order; ++n) {
        out.push_back(FiniteGroup::cyclic(n));
        if (n == 4) out.push_back(FiniteGroup::klein_four());
        if (n == 6) out.push_back(FiniteGroup::symmetric3());
    }
    return out;
}

inline bool is_subgroup(const FiniteGroup& g, const std::vector<int>& elems) {
    if (elems.empty()) return false;
    bool has_id = false;
    for (int x : elems) has_id = has_id || x == g.identity();
    if (!has_id) return false;
    auto contains = [&](int v) { return std::find(elems.begin(), elems.end(), v) != elems.end(); };
    for (int x : elems) {
        if (!contains(g.inverse(x))) return false;
        for (int y : elems)
            if (!contains(g.mul(x, y))) return false;
    }
    return true;
}

inline bool is_normal_subgroup(const FiniteGroup& g, const std::vector<int>& elems) {
    if (!is_subgroup(g, elems)) return false;
    auto contains = [&](int v) { return std::find(elems.begin(), elems.end(), v) != elems.end(); };
    for (int x = 0; x < g.order(); ++x)
        for (int k : elems)
            if (!contains(g.mul(g.mul(x, k), g.inverse(x)))) return false;
    return true;
}

/// Subgroup of elements as a group in its own right, with the embedding.
struct Subgroup {
    FiniteGroup group;
    std::vector<int> embedding;  // subgroup element -> ambient element
};

inline Subgroup subgroup_from_elements(const FiniteGroup& g, std::vector<int> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    if (!is_subgroup(g, elems)) throw InvalidStructureError("not closed as a subgroup");
    int n = static_cast<int>(elems.size());
    auto idx = [&](int ambient) {
        return static_cast<int>(std::lower_bound(elems.begin(), elems.end(), ambient) - elems.begin());
    };
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[i][j] = idx(g.mul(elems[i], elems[j]));
    return {FiniteGroup(std::move(t)), std::move(elems)};
}

/// Quotient by a normal subgroup; cosets are numbered by increasing least
/// representative so the construction is reproducible.
struct QuotientGroup {
    FiniteGroup group;
    std::vector<int> coset_of;  // ambient element -> coset index
    std::vector<int> rep_of;    // coset index -> least representative
};

inline QuotientGroup quotient_group(const FiniteGroup& g, const std::vector<int>& kernel) {
    if (!is_normal_subgroup(g, kernel))
        throw NotNormalError("quotient needs a normal subgroup");
    std::vector<int> coset_of(g.order(), -1);
    std::vector<int> rep_of;
    for (int x = 0; x < g.order(); ++x) {
        if (coset_of[x] >= 0) continue;
        int c = static_cast<int>(rep_of.size());
        rep_of.push_back(x);
        for (int k : kernel) coset_of[g.mul(x, k)] = c;
    }
    int q = static_cast<int>(rep_of.size());
    std::vector<std::vector<int>> t(q, std::vector<int>(q));
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) t[a][b] = coset_of[g.mul(rep_of[a], rep_of[b])];
    return {FiniteGroup(std::move(t)), std::move(coset_of), std::move(rep_of)};
}

}  // namespace orbistack
