#include <catch2/catch.hpp>

#include <random>

#include "orbistack/lifted.hpp"

using namespace orbistack;

namespace {

IntVec iv(std::initializer_list<long> v) { return IntVec(v.begin(), v.end()); }

ToralLiftedElement random_toral(std::mt19937& rng, const ToralContextPtr& ctx) {
    std::uniform_int_distribution<long> kk(-5, 5);
    std::uniform_int_distribution<long> vv(-9, 9);
    IntVec v(ctx->dim());
    for (auto& c : v) c = vv(rng);
    return toral_element(ctx, kk(rng), std::move(v));
}

IntegerMatrix random_unimodular(std::mt19937& rng, std::size_t n, int steps) {
    IntegerMatrix m = IntegerMatrix::identity(n);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int s = 0; s < steps; ++s) {
        int i = pick(rng), j = pick(rng);
        if (i == j) continue;
        IntegerMatrix el = IntegerMatrix::identity(n);
        el.at(i, j) = coef(rng);
        m = m * el;
    }
    return m;
}

}  // namespace

TEST_CASE("adopted convention is internally consistent") {
    // law (k,v)(k',v') = (k+k', v + A^k v') with the stated inverse
    // (-k, -A^{-k} v): check the group axioms explicitly for the cat map
    auto ctx = make_toral_context(IntegerMatrix{{2, 1}, {1, 1}});
    auto e = toral_identity(ctx);
    auto x = toral_element(ctx, 1, iv({0, 0}));
    auto y = toral_element(ctx, 0, iv({1, 0}));
    auto z = toral_element(ctx, -2, iv({3, -1}));
    CHECK(multiply(e, x) == x);
    CHECK(multiply(x, e) == x);
    CHECK(multiply(x, inverse(x)) == e);
    CHECK(multiply(inverse(x), x) == e);
    CHECK(multiply(multiply(x, y), z) == multiply(x, multiply(y, z)));

    // the mirror law (k+k', A^{-k'} v + v') defines an isomorphic group:
    // conjugating it through (k, v) -> (k, A^k v) reproduces the adopted law
    auto mirror_multiply = [&](const ToralLiftedElement& p, const ToralLiftedElement& q) {
        IntVec w = ctx->power(-q.k).apply(p.v);
        for (std::size_t i = 0; i < w.size(); ++i) w[i] += q.v[i];
        return toral_element(ctx, p.k + q.k, std::move(w));
    };
    auto iso = [&](const ToralLiftedElement& p) {
        return toral_element(ctx, p.k, ctx->power(p.k).apply(p.v));
    };
    for (const auto& p : {x, y, z})
        for (const auto& q : {x, y, z}) CHECK(iso(mirror_multiply(p, q)) == multiply(iso(p), iso(q)));
}

TEST_CASE("pinned products and inverses") {
    auto cat = make_toral_context(IntegerMatrix{{2, 1}, {1, 1}});
    SECTION("(1,0).(0,(1,0)) = (1, A(1,0)) = (1,(2,1))") {
        auto x = toral_element(cat, 1, iv({0, 0}));
        auto y = toral_element(cat, 0, iv({1, 0}));
        CHECK(multiply(x, y) == toral_element(cat, 1, iv({2, 1})));
    }
    SECTION("identity inverts to itself in both families") {
        CHECK(inverse(toral_identity(cat)) == toral_identity(cat));
        CHECK(inverse(circle_identity(-1)) == circle_identity(-1));
    }
    SECTION("inverse of (1, v) is (-1, -A^{-1} v)") {
        auto x = toral_element(cat, 1, iv({1, 2}));
        auto ix = inverse(x);
        CHECK(ix.k == -1);
        IntVec expect = cat->power(-1).apply(iv({1, 2}));
        for (auto& c : expect) c = -c;
        CHECK(ix.v == expect);
    }
    SECTION("circle multiplication under both signs") {
        auto a = circle_element(-1, 1, 1);
        auto b = circle_element(-1, 1, 0);
        // (1,1)(1,0) = (2, 1 + (-1)^1 * 0) = (2, 1)
        CHECK(multiply(a, b) == circle_element(-1, 2, 1));
        // (1,0)(1,1) = (2, 0 + (-1)^1 * 1) = (2, -1)
        CHECK(multiply(b, a) == circle_element(-1, 2, -1));
        auto p = circle_element(1, 3, -2);
        CHECK(multiply(p, inverse(p)) == circle_identity(1));
        CHECK_THROWS_AS(multiply(a, p), ContextMismatchError);
    }
}

TEST_CASE("group axioms hold on random elements (both families)") {
    std::mt19937 rng(99);
    std::vector<ToralContextPtr> contexts;
    contexts.push_back(make_toral_context(IntegerMatrix{{2, 1}, {1, 1}}));
    contexts.push_back(make_toral_context(random_unimodular(rng, 2, 8)));
    contexts.push_back(make_toral_context(random_unimodular(rng, 3, 8)));
    for (const auto& ctx : contexts) {
        auto e = toral_identity(ctx);
        for (int i = 0; i < 60; ++i) {
            auto x = random_toral(rng, ctx);
            auto y = random_toral(rng, ctx);
            auto z = random_toral(rng, ctx);
            CHECK(multiply(multiply(x, y), z) == multiply(x, multiply(y, z)));
            CHECK(multiply(x, inverse(x)) == e);
            CHECK(multiply(e, x) == x);
        }
    }
    std::uniform_int_distribution<long> mm(-6, 6);
    for (int eps : {1, -1}) {
        auto e = circle_identity(eps);
        for (int i = 0; i < 60; ++i) {
            auto x = circle_element(eps, mm(rng), mm(rng));
            auto y = circle_element(eps, mm(rng), mm(rng));
            auto z = circle_element(eps, mm(rng), mm(rng));
            CHECK(multiply(multiply(x, y), z) == multiply(x, multiply(y, z)));
            CHECK(multiply(x, inverse(x)) == e);
        }
    }
}

TEST_CASE("toral commutators match the closed form and stay translational") {
    std::mt19937 rng(7);
    auto ctx = make_toral_context(IntegerMatrix{{2, 1}, {1, 1}});
    SECTION("commutator with a pure power: (0, (I - A^k') v)") {
        auto x = toral_element(ctx, 0, iv({1, 0}));
        for (long kp : {1L, 2L, -1L}) {
            auto y = toral_element(ctx, kp, iv({0, 0}));
            auto c = commutator(x, y);
            IntegerMatrix diff = IntegerMatrix::identity(2) - ctx->power(kp);
            CHECK(c.k == 0);
            CHECK(c.v == diff.apply(iv({1, 0})));
        }
    }
    SECTION("cat map, v = (1,0), k' = 1: the translation part is (-1,-1)") {
        auto c = commutator(toral_element(ctx, 0, iv({1, 0})), toral_element(ctx, 1, iv({0, 0})));
        CHECK(c.v == iv({-1, -1}));
    }
    SECTION("commutator of an element with itself is the identity") {
        auto x = random_toral(rng, ctx);
        CHECK(commutator(x, x) == toral_identity(ctx));
    }
    SECTION("closed form on random pairs") {
        for (int i = 0; i < 100; ++i) {
            auto x = random_toral(rng, ctx);
            auto y = random_toral(rng, ctx);
            auto c = commutator(x, y);
            CHECK(c.k == 0);
            // v + A^k v' - A^{k'} v - v'
            IntVec expect = x.v;
            IntVec t1 = ctx->power(x.k).apply(y.v);
            IntVec t2 = ctx->power(y.k).apply(x.v);
            for (std::size_t j = 0; j < expect.size(); ++j) expect[j] += t1[j] - t2[j] - y.v[j];
            CHECK(c.v == expect);
        }
    }
}

TEST_CASE("commutator lattices") {
    SECTION("identity matrix: all commutators vanish") {
        auto cl = commutator_lattice(IntegerMatrix::identity(2), 3);
        CHECK(cl.basis.rank() == 0);
        CHECK_FALSE(cl.index.has_value());
    }
    SECTION("cat map at k_max = 1: full lattice, |det(I - A)| = 1") {
        auto cl = commutator_lattice(IntegerMatrix{{2, 1}, {1, 1}}, 1);
        REQUIRE(cl.index.has_value());
        CHECK(*cl.index == 1);
    }
    SECTION("non-hyperbolic input still yields its lattice") {
        // A = [[0,1],[1,0]]: I - A has rank 1; I - A^2 = 0; the lattice is
        // spanned by (1,-1) with infinite index
        auto cl = commutator_lattice(IntegerMatrix{{0, 1}, {1, 0}}, 2);
        CHECK(cl.basis.rank() == 1);
        CHECK_FALSE(cl.index.has_value());
        CHECK(cl.basis.contains(iv({1, -1})));
        CHECK_FALSE(cl.basis.contains(iv({1, 0})));
    }
    SECTION("monotone in k_max, always inside 0 x Z^n") {
        std::mt19937 rng(31);
        for (int trial = 0; trial < 10; ++trial) {
            IntegerMatrix a = random_unimodular(rng, 2, 6);
            auto c1 = commutator_lattice(a, 1);
            auto c2 = commutator_lattice(a, 2);
            auto c3 = commutator_lattice(a, 3);
            CHECK(c2.basis.contains_lattice(c1.basis));
            CHECK(c3.basis.contains_lattice(c2.basis));
        }
    }
    SECTION("hyperbolic matrices have full rank already at k_max = 1") {
        for (auto m : {IntegerMatrix{{2, 1}, {1, 1}}, IntegerMatrix{{0, 1}, {1, 1}},
                       IntegerMatrix{{3, 1}, {2, 1}}}) {
            auto cl = commutator_lattice(m, 1);
            CHECK(cl.basis.rank() == 2);
            CHECK(cl.index.has_value());
        }
    }
}
