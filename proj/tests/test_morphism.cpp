#include <catch2/catch.hpp>

#include <set>

#include "orbistack/morphism.hpp"

using namespace orbistack;

namespace {

FiniteAction z2_swap() {
    std::vector<std::vector<int>> act = {{0, 1}, {1, 0}};
    return FiniteAction(FiniteGroup::cyclic(2), 2, act);
}

FiniteAction unit_point() { return FiniteAction::trivial_action(FiniteGroup::trivial(), 1); }

/// Reduction Z_{kn} rotation on kn points -> Z_n rotation on n points.
ActionMorphism mod_reduction(int from, int to) {
    ActionMorphism m;
    m.lambda.resize(from);
    m.phi.resize(from);
    for (int i = 0; i < from; ++i) {
        m.lambda[i] = i % to;
        m.phi[i] = i % to;
    }
    return m;
}

}  // namespace

TEST_CASE("morphism validation") {
    auto dom = action_groupoid(z2_swap());
    SECTION("identity is a morphism") {
        CHECK_NOTHROW(validate_morphism(dom, dom, identity_morphism(dom)));
        auto v = is_morita(dom, dom, identity_morphism(dom));
        CHECK(v.morita);
    }
    SECTION("breaking composition is caught") {
        auto raw = identity_morphism(dom);
        // send the arrow (1, 0) to a unit: endpoints break first
        raw.arrow_map[2] = 0;
        CHECK_THROWS_AS(validate_morphism(dom, dom, raw), MalformedMorphismError);
    }
}

TEST_CASE("is_morita on the pinned examples") {
    SECTION("free swap to the unit point: Morita") {
        // hom-sets on both sides have exactly one arrow
        ActionMorphism m{{0, 0}, {0, 0}};
        auto v = is_morita(z2_swap(), unit_point(), m);
        CHECK(v.essentially_surjective);
        CHECK(v.fully_faithful);
        CHECK(v.morita);
    }
    SECTION("trivial Z2 on a point to the unit point: kills isotropy") {
        auto dom = FiniteAction::trivial_action(FiniteGroup::cyclic(2), 1);
        ActionMorphism m{{0, 0}, {0}};
        auto v = is_morita(dom, unit_point(), m);
        CHECK(v.essentially_surjective);
        CHECK_FALSE(v.fully_faithful);
        CHECK_FALSE(v.morita);
        REQUIRE(v.witness.has_value());
        CHECK(v.witness->kind == MoritaWitness::Kind::HomSetNotInjective);
    }
    SECTION("missing an orbit of the codomain") {
        auto cod = FiniteAction::trivial_action(FiniteGroup::trivial(), 2);
        ActionMorphism m{{0}, {0}};
        auto v = is_morita(unit_point(), cod, m);
        CHECK_FALSE(v.essentially_surjective);
        REQUIRE(v.witness.has_value());
        CHECK(v.witness->kind == MoritaWitness::Kind::UnreachedOrbit);
        CHECK(v.witness->x == 1);
    }
}

TEST_CASE("morita verdicts imply an orbit-space bijection") {
    // derived property of the two-condition definition
    auto dom = FiniteAction::cyclic_rotation(4, 4);
    auto cod = FiniteAction::cyclic_rotation(2, 2);
    auto m = mod_reduction(4, 2);
    auto v = is_morita(dom, cod, m);
    REQUIRE(v.morita);
    auto dorb = orbits(action_groupoid(dom));
    auto corb = orbits(action_groupoid(cod));
    // injective and surjective on orbits
    std::vector<int> corb_of(cod.objects());
    for (std::size_t i = 0; i < corb.size(); ++i)
        for (int y : corb[i]) corb_of[y] = static_cast<int>(i);
    std::set<int> images;
    for (const auto& o : dorb) images.insert(corb_of[m.phi[o[0]]]);
    CHECK(images.size() == dorb.size());
    CHECK(images.size() == corb.size());
}

TEST_CASE("is_morita is invariant under pre/post composition with isos") {
    auto dom = FiniteAction::cyclic_rotation(4, 4);
    auto cod = FiniteAction::cyclic_rotation(2, 2);
    auto base = to_raw(dom, cod, mod_reduction(4, 2));
    auto dg = action_groupoid(dom);
    auto cg = action_groupoid(cod);

    // relabeling iso on the domain: rotate objects by 1 and conjugate the
    // group part accordingly (here: identity on the group)
    ActionMorphism rel{{0, 1, 2, 3}, {1, 2, 3, 0}};
    validate_action_morphism(dom, dom, rel);
    auto relraw = to_raw(dom, dom, rel);
    CHECK(is_morita(dg, dg, relraw).morita);

    auto pre = compose_morphisms(relraw, base);
    validate_morphism(dg, cg, pre);
    CHECK(is_morita(dg, cg, pre).morita == is_morita(dg, cg, base).morita);

    // relabeling iso on the codomain, post-composed
    ActionMorphism crel{{0, 1}, {1, 0}};
    validate_action_morphism(cod, cod, crel);
    auto crelraw = to_raw(cod, cod, crel);
    CHECK(is_morita(cg, cg, crelraw).morita);
    auto post = compose_morphisms(base, crelraw);
    validate_morphism(dg, cg, post);
    CHECK(is_morita(dg, cg, post).morita == is_morita(dg, cg, base).morita);
}

TEST_CASE("split_raw_morphism") {
    auto dom = FiniteAction::cyclic_rotation(4, 4);
    auto cod = FiniteAction::cyclic_rotation(2, 2);

    SECTION("round trip through to_raw") {
        auto am = mod_reduction(4, 2);
        auto raw = to_raw(dom, cod, am);
        auto back = split_raw_morphism(dom, cod, raw);
        CHECK(back.lambda == am.lambda);
        CHECK(back.phi == am.phi);
    }
    SECTION("component-dependent group part on a disconnected domain") {
        // two adjacency components, each a Z2-swap pair; the raw morphism
        // uses the identity group element on one component and the flip
        // on the other. Functorial, locally constant, but not split.
        std::vector<std::vector<int>> act = {{0, 1, 2, 3}, {1, 0, 3, 2}};
        FiniteAction dom2(FiniteGroup::cyclic(2), 4, act);
        dom2.set_adjacency({{0, 1}, {2, 3}});
        FiniteAction cod2(FiniteGroup::cyclic(2), 1,
                          std::vector<std::vector<int>>{{0}, {0}});
        auto dg = action_groupoid(dom2);
        auto cg = action_groupoid(cod2);
        GroupoidMorphism raw;
        raw.object_map = {0, 0, 0, 0};
        raw.arrow_map.resize(8);
        for (int g = 0; g < 2; ++g)
            for (int x = 0; x < 4; ++x) {
                int lam = (x < 2) ? g : 0;  // kill the group only on {2,3}
                raw.arrow_map[g * 4 + x] = lam * 1 + 0;
            }
        CHECK_NOTHROW(validate_morphism(dg, cg, raw));
        CHECK_THROWS_AS(split_raw_morphism(dom2, cod2, raw), NotConnectedError);
        // with complete adjacency the same map is not even a morphism in
        // the discrete-continuity sense
        FiniteAction dom3(FiniteGroup::cyclic(2), 4, act);
        CHECK_THROWS_AS(split_raw_morphism(dom3, cod2, raw), MalformedMorphismError);
    }
    SECTION("connected domain, varying group part: functoriality fails") {
        // into Z2 acting trivially on a point, send (s, 0) to s but
        // (s, 1) to the identity; endpoints and units are fine but
        // composing (s,1) after (s,0) hits s on one side and e . s = s
        // on the other, so this is not a functor at all
        auto ct = FiniteAction::trivial_action(FiniteGroup::cyclic(2), 1);
        auto dg = action_groupoid(z2_swap());
        auto cg = action_groupoid(ct);
        GroupoidMorphism raw;
        raw.object_map = {0, 0};
        raw.arrow_map = {0, 0, 1, 0};
        CHECK_THROWS_AS(validate_morphism(dg, cg, raw), MalformedMorphismError);
        CHECK_THROWS_AS(split_raw_morphism(z2_swap(), ct, raw), MalformedMorphismError);
    }
}

TEST_CASE("factor_morita") {
    SECTION("identity morphism: trivial kernel, quotient is the domain") {
        auto dom = FiniteAction::cyclic_rotation(4, 4);
        ActionMorphism id4{{0, 1, 2, 3}, {0, 1, 2, 3}};
        auto r = factor_morita(dom, dom, id4);
        REQUIRE(r.ok());
        CHECK(r.success->kernel.group.order() == 1);
        CHECK(r.success->quotient.quotient.objects() == 4);
        CHECK(r.success->induced.lambda == id4.lambda);
    }
    SECTION("Z4 rotation onto Z2 rotation: kernel Z2 acting freely") {
        auto dom = FiniteAction::cyclic_rotation(4, 4);
        auto cod = FiniteAction::cyclic_rotation(2, 2);
        auto m = mod_reduction(4, 2);
        auto r = factor_morita(dom, cod, m);
        REQUIRE(r.ok());
        CHECK(r.success->kernel.group.order() == 2);
        CHECK(r.success->kernel.embedding == std::vector<int>{0, 2});
        CHECK(r.success->quotient.kernel_acts_freely);
        CHECK(r.success->quotient.quotient.group().order() == 2);
        CHECK(r.success->quotient.quotient.objects() == 2);
        // round trip: induced o projection = original morphism
        for (int g = 0; g < 4; ++g)
            CHECK(r.success->induced.lambda[r.success->projection.lambda[g]] == m.lambda[g]);
        for (int x = 0; x < 4; ++x)
            CHECK(r.success->induced.phi[r.success->projection.phi[x]] == m.phi[x]);
    }
    SECTION("non-Morita input is refused") {
        auto dom = FiniteAction::trivial_action(FiniteGroup::cyclic(2), 1);
        ActionMorphism m{{0, 0}, {0}};
        auto r = factor_morita(dom, unit_point(), m);
        REQUIRE_FALSE(r.ok());
        CHECK(r.failure_kind == FactorFailureKind::NotMorita);
        REQUIRE(r.morita_witness.has_value());
    }
    SECTION("skeleton inclusion: Morita by hom-sets and orbits, yet it "
            "cannot factor through a quotient") {
        // the unit point embeds in the free transitive Z2 swap; every
        // hom-set matches and the single codomain orbit is reached, but
        // G = 1 cannot surject onto Z2, so the factored map is not an
        // isomorphism. Pinned as behavior: the two-condition Morita
        // notion is strictly weaker than factorability on such inputs.
        ActionMorphism m{{0}, {0}};
        auto v = is_morita(unit_point(), z2_swap(), m);
        CHECK(v.morita);
        auto r = factor_morita(unit_point(), z2_swap(), m);
        REQUIRE_FALSE(r.ok());
        CHECK(r.failure_kind == FactorFailureKind::InducedMapNotIso);
    }
}

TEST_CASE("quotient projections by free kernels are Morita") {
    auto dom = FiniteAction::cyclic_rotation(4, 4);
    auto q = quotient_action(dom, {0, 2});
    REQUIRE(q.kernel_acts_freely);
    ActionMorphism pi{q.group_proj, q.object_proj};
    CHECK(is_morita(dom, q.quotient, pi).morita);

    // non-free kernel: the projection is not Morita
    auto triv = FiniteAction::trivial_action(FiniteGroup::cyclic(2), 1);
    auto q2 = quotient_action(triv, {0, 1});
    REQUIRE_FALSE(q2.kernel_acts_freely);
    ActionMorphism pi2{q2.group_proj, q2.object_proj};
    CHECK_FALSE(is_morita(triv, q2.quotient, pi2).morita);
}

TEST_CASE("two-out-of-three for morita morphisms") {
    auto a12 = FiniteAction::cyclic_rotation(12, 12);
    auto a4 = FiniteAction::cyclic_rotation(4, 4);
    auto a2 = FiniteAction::cyclic_rotation(2, 2);
    auto f = mod_reduction(12, 4);
    auto g = mod_reduction(4, 2);
    auto fg = mod_reduction(12, 2);

    auto g12 = action_groupoid(a12);
    auto g4 = action_groupoid(a4);
    auto g2 = action_groupoid(a2);
    auto rf = to_raw(a12, a4, f);
    auto rg = to_raw(a4, a2, g);
    auto rfg = compose_morphisms(rf, rg);
    CHECK(rfg.object_map == to_raw(a12, a2, fg).object_map);

    bool mf = is_morita(g12, g4, rf).morita;
    bool mg = is_morita(g4, g2, rg).morita;
    bool mfg = is_morita(g12, g2, rfg).morita;
    CHECK(mf);
    CHECK(mg);
    CHECK(mfg);
}

TEST_CASE("homotopy fiber products") {
    SECTION("identity against identity on the unit point") {
        auto pt = action_groupoid(unit_point());
        auto hfp = homotopy_fiber_product(pt, pt, pt, identity_morphism(pt), identity_morphism(pt));
        CHECK(hfp.groupoid.objects() == 1);
        CHECK(hfp.groupoid.arrow_count() == 1);
        hfp.groupoid.validate_deep();
    }
    SECTION("unit inclusion against itself recovers the arrow set") {
        // units of M into the swap groupoid: objects of the fiber product
        // are triples (x, k, y) with k: x -> y, i.e. the arrows of the
        // swap groupoid; only identity arrows connect them
        auto act = z2_swap();
        auto g = action_groupoid(act);
        auto m_unit = action_groupoid(FiniteAction::trivial_action(FiniteGroup::trivial(), 2));
        GroupoidMorphism incl;
        incl.object_map = {0, 1};
        incl.arrow_map = {g.unit(0), g.unit(1)};
        validate_morphism(m_unit, g, incl);
        auto hfp = homotopy_fiber_product(m_unit, m_unit, g, incl, incl);
        CHECK(hfp.groupoid.objects() == g.arrow_count());
        CHECK(hfp.groupoid.arrow_count() == g.arrow_count());  // units only
        hfp.groupoid.validate_deep();
        // and g.x = y for each object label (x, (g,x), y)
        for (auto [x, k, y] : hfp.object_labels) {
            CHECK(g.arrow(k).src == x);
            CHECK(g.arrow(k).tgt == y);
        }
    }
    SECTION("disjoint essential images give the empty groupoid") {
        auto two = FiniteAction::trivial_action(FiniteGroup::trivial(), 2);
        auto tg = action_groupoid(two);
        auto pt = action_groupoid(unit_point());
        GroupoidMorphism at0{{0}, {tg.unit(0)}};
        GroupoidMorphism at1{{1}, {tg.unit(1)}};
        validate_morphism(pt, tg, at0);
        validate_morphism(pt, tg, at1);
        auto hfp = homotopy_fiber_product(pt, pt, tg, at0, at1);
        CHECK(hfp.groupoid.objects() == 0);
        CHECK(hfp.groupoid.arrow_count() == 0);
    }
}

TEST_CASE("fractions") {
    auto a12 = FiniteAction::cyclic_rotation(12, 12);
    auto a4 = FiniteAction::cyclic_rotation(4, 4);
    auto a3 = FiniteAction::cyclic_rotation(3, 3);
    auto g12 = action_groupoid(a12);
    auto g4 = action_groupoid(a4);
    auto g3 = action_groupoid(a3);

    SECTION("identity right leg is invertible") {
        Fraction f(g4, g4, g4, identity_morphism(g4), identity_morphism(g4));
        CHECK(fraction_invertible(f));
    }
    SECTION("span of reductions from Z12: both legs Morita") {
        auto alpha = to_raw(a12, a4, mod_reduction(12, 4));
        auto beta = to_raw(a12, a3, mod_reduction(12, 3));
        Fraction f(g12, g4, g3, alpha, beta);
        CHECK(fraction_invertible(f));
    }
    SECTION("isotropy-killing right leg is not invertible") {
        auto triv = FiniteAction::trivial_action(FiniteGroup::cyclic(2), 1);
        auto tg = action_groupoid(triv);
        auto pt = action_groupoid(unit_point());
        ActionMorphism kill{{0, 0}, {0}};
        Fraction f(tg, tg, pt, identity_morphism(tg), to_raw(triv, unit_point(), kill));
        CHECK_FALSE(fraction_invertible(f));
    }
    SECTION("a non-Morita left leg is rejected outright") {
        auto triv = FiniteAction::trivial_action(FiniteGroup::cyclic(2), 1);
        auto tg = action_groupoid(triv);
        auto pt = action_groupoid(unit_point());
        ActionMorphism kill{{0, 0}, {0}};
        CHECK_THROWS_AS(Fraction(tg, pt, tg, to_raw(triv, unit_point(), kill),
                                 identity_morphism(tg)),
                        NotMoritaError);
    }
}
