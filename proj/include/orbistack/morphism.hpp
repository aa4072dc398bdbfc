#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "orbistack/errors.hpp"
#include "orbistack/groupoid.hpp"

namespace orbistack {

/// Raw groupoid morphism: an object map and an arrow map preserving all
/// of the structure. Validation is explicit (validate_morphism) so that
/// candidate maps can be inspected before being trusted.
struct GroupoidMorphism {
    std::vector<int> object_map;
    std::vector<int> arrow_map;
};

inline void validate_morphism(const FiniteGroupoid& dom, const FiniteGroupoid& cod,
                              const GroupoidMorphism& m) {
    if (static_cast<int>(m.object_map.size()) != dom.objects() ||
        static_cast<int>(m.arrow_map.size()) != dom.arrow_count())
        throw MalformedMorphismError("morphism map sizes do not match the domain");
    for (int x : m.object_map)
        if (x < 0 || x >= cod.objects()) throw MalformedMorphismError("object image out of range");
    for (int a : m.arrow_map)
        if (a < 0 || a >= cod.arrow_count())
            throw MalformedMorphismError("arrow image out of range");
    for (int a = 0; a < dom.arrow_count(); ++a) {
        const auto& da = dom.arrow(a);
        const auto& ca = cod.arrow(m.arrow_map[a]);
        if (ca.src != m.object_map[da.src] || ca.tgt != m.object_map[da.tgt])
            throw MalformedMorphismError("arrow image has wrong endpoints");
    }
    for (int x = 0; x < dom.objects(); ++x)
        if (m.arrow_map[dom.unit(x)] != cod.unit(m.object_map[x]))
            throw MalformedMorphismError("units are not preserved");
    for (int a2 = 0; a2 < dom.arrow_count(); ++a2)
        for (int a1 = 0; a1 < dom.arrow_count(); ++a1) {
            if (!dom.composable(a2, a1)) continue;
            if (m.arrow_map[dom.compose(a2, a1)] !=
                cod.compose(m.arrow_map[a2], m.arrow_map[a1]))
                throw MalformedMorphismError("composition is not preserved");
        }
}

inline GroupoidMorphism identity_morphism(const FiniteGroupoid& g) {
    GroupoidMorphism m;
    m.object_map.resize(g.objects());
    m.arrow_map.resize(g.arrow_count());
    for (int x = 0; x < g.objects(); ++x) m.object_map[x] = x;
    for (int a = 0; a < g.arrow_count(); ++a) m.arrow_map[a] = a;
    return m;
}

/// g after f.
inline GroupoidMorphism compose_morphisms(const GroupoidMorphism& f, const GroupoidMorphism& g) {
    GroupoidMorphism m;
    m.object_map.resize(f.object_map.size());
    m.arrow_map.resize(f.arrow_map.size());
    for (std::size_t x = 0; x < f.object_map.size(); ++x)
        m.object_map[x] = g.object_map[f.object_map[x]];
    for (std::size_t a = 0; a < f.arrow_map.size(); ++a)
        m.arrow_map[a] = g.arrow_map[f.arrow_map[a]];
    return m;
}

/// Split morphism of actions (lambda, phi): a group homomorphism and an
/// equivariant object map. Validated at construction.
struct ActionMorphism {
    std::vector<int> lambda;  // G -> H
    std::vector<int> phi;     // M -> N
};

inline void validate_action_morphism(const FiniteAction& dom, const FiniteAction& cod,
                                     const ActionMorphism& m) {
    const FiniteGroup& g = dom.group();
    const FiniteGroup& h = cod.group();
    if (static_cast<int>(m.lambda.size()) != g.order() ||
        static_cast<int>(m.phi.size()) != dom.objects())
        throw MalformedMorphismError("action morphism sizes do not match the domain");
    for (int v : m.lambda)
        if (v < 0 || v >= h.order()) throw MalformedMorphismError("lambda image out of range");
    for (int v : m.phi)
        if (v < 0 || v >= cod.objects()) throw MalformedMorphismError("phi image out of range");
    if (m.lambda[g.identity()] != h.identity())
        throw MalformedMorphismError("lambda does not preserve the identity");
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b)
            if (m.lambda[g.mul(a, b)] != h.mul(m.lambda[a], m.lambda[b]))
                throw MalformedMorphismError("lambda is not a homomorphism");
    for (int a = 0; a < g.order(); ++a)
        for (int x = 0; x < dom.objects(); ++x)
            if (m.phi[dom.apply(a, x)] != cod.apply(m.lambda[a], m.phi[x]))
                throw MalformedMorphismError("phi is not equivariant");
}

/// The induced raw morphism on action groupoids: (g, x) -> (lambda g, phi x).
inline GroupoidMorphism to_raw(const FiniteAction& dom, const FiniteAction& cod,
                               const ActionMorphism& m) {
    validate_action_morphism(dom, cod, m);
    GroupoidMorphism raw;
    raw.object_map = m.phi;
    raw.arrow_map.resize(static_cast<std::size_t>(dom.group().order()) * dom.objects());
    for (int g = 0; g < dom.group().order(); ++g)
        for (int x = 0; x < dom.objects(); ++x)
            raw.arrow_map[g * dom.objects() + x] = m.lambda[g] * cod.objects() + m.phi[x];
    return raw;
}

struct MoritaWitness {
    enum class Kind { UnreachedOrbit, HomSetNotInjective, HomSetNotSurjective };
    Kind kind;
    int x = -1, y = -1;  // object pair for hom-set failures; x = orbit rep otherwise

    std::string describe() const {
        switch (kind) {
            case Kind::UnreachedOrbit:
                return "codomain orbit of object " + std::to_string(x) + " is not reached";
            case Kind::HomSetNotInjective:
                return "arrow map on hom(" + std::to_string(x) + ", " + std::to_string(y) +
                       ") is not injective";
            case Kind::HomSetNotSurjective:
                return "arrow map on hom(" + std::to_string(x) + ", " + std::to_string(y) +
                       ") is not surjective";
        }
        return "?";
    }
};

/// Verdict of the Morita test. In this finite model a morphism is Morita
/// iff it is essentially surjective (its image meets every orbit of the
/// codomain) and fully faithful (it restricts to a bijection on every
/// hom-set). The orbit-space condition of the smooth definition follows
/// from these two here, and the normal-direction condition is vacuous on
/// zero-dimensional normal spaces; both reductions are exercised by tests.
struct MoritaVerdict {
    bool essentially_surjective = false;
    bool fully_faithful = false;
    bool morita = false;
    std::optional<MoritaWitness> witness;
};

inline MoritaVerdict is_morita(const FiniteGroupoid& dom, const FiniteGroupoid& cod,
                               const GroupoidMorphism& m) {
    validate_morphism(dom, cod, m);
    MoritaVerdict v;

    auto cod_orbits = orbits(cod);
    std::vector<int> orbit_of(cod.objects(), -1);
    for (std::size_t i = 0; i < cod_orbits.size(); ++i)
        for (int y : cod_orbits[i]) orbit_of[y] = static_cast<int>(i);
    std::vector<bool> reached(cod_orbits.size(), false);
    for (int x = 0; x < dom.objects(); ++x) reached[orbit_of[m.object_map[x]]] = true;
    v.essentially_surjective = true;
    for (std::size_t i = 0; i < reached.size(); ++i)
        if (!reached[i]) {
            v.essentially_surjective = false;
            if (!v.witness)
                v.witness = MoritaWitness{MoritaWitness::Kind::UnreachedOrbit, cod_orbits[i][0], -1};
            break;
        }

    v.fully_faithful = true;
    for (int x = 0; x < dom.objects() && v.fully_faithful; ++x)
        for (int y = 0; y < dom.objects() && v.fully_faithful; ++y) {
            auto dom_hom = dom.hom_set(x, y);
            auto cod_hom = cod.hom_set(m.object_map[x], m.object_map[y]);
            std::vector<bool> hit(cod.arrow_count(), false);
            bool injective = true;
            for (int a : dom_hom) {
                int im = m.arrow_map[a];
                if (hit[im]) injective = false;
                hit[im] = true;
            }
            if (!injective) {
                v.fully_faithful = false;
                if (!v.witness)
                    v.witness = MoritaWitness{MoritaWitness::Kind::HomSetNotInjective, x, y};
                break;
            }
            for (int b : cod_hom)
                if (!hit[b]) {
                    v.fully_faithful = false;
                    if (!v.witness)
                        v.witness = MoritaWitness{MoritaWitness::Kind::HomSetNotSurjective, x, y};
                    break;
                }
        }

    v.morita = v.essentially_surjective && v.fully_faithful;
    return v;
}

inline MoritaVerdict is_morita(const FiniteAction& dom, const FiniteAction& cod,
                               const ActionMorphism& m) {
    return is_morita(action_groupoid(dom), action_groupoid(cod), to_raw(dom, cod, m));
}

/// Recovers the split form (lambda, phi) of a raw morphism between action
/// groupoids. The group component of the image must be locally constant
/// along the domain adjacency (the finite stand-in for continuity into a
/// discrete group); if the adjacency is connected this forces it to be
/// globally constant in x and the splitting exists and is unique. With
/// several adjacency components and a component-dependent group part the
/// morphism genuinely fails to split (NotConnectedError).
inline ActionMorphism split_raw_morphism(const FiniteAction& dom, const FiniteAction& cod,
                                         const GroupoidMorphism& raw) {
    FiniteGroupoid dgpd = action_groupoid(dom);
    FiniteGroupoid cgpd = action_groupoid(cod);
    validate_morphism(dgpd, cgpd, raw);

    int m = dom.objects(), ncod = cod.objects();
    int k = dom.group().order();
    // group part of the image of arrow (g, x)
    auto lam_at = [&](int g, int x) { return raw.arrow_map[g * m + x] / ncod; };

    for (int g = 0; g < k; ++g)
        for (int x = 0; x < m; ++x)
            for (int y = 0; y < x; ++y)
                if (dom.adjacent(x, y) && lam_at(g, x) != lam_at(g, y))
                    throw MalformedMorphismError(
                        "group component jumps across adjacent objects; not a morphism in the "
                        "discrete-continuity sense");

    for (int g = 0; g < k; ++g)
        for (int x = 1; x < m; ++x)
            if (lam_at(g, x) != lam_at(g, 0))
                throw NotConnectedError(
                    "group component differs across adjacency components; no global splitting");

    ActionMorphism am;
    am.phi = raw.object_map;
    am.lambda.resize(k);
    for (int g = 0; g < k; ++g) am.lambda[g] = m > 0 ? lam_at(g, 0) : cod.group().identity();
    validate_action_morphism(dom, cod, am);
    return am;
}

/// Outcome of the factorization of a Morita morphism through the quotient
/// by K = ker(lambda).
struct FactorSuccess {
    Subgroup kernel;                // K with its embedding into G
    ActionQuotient quotient;        // G/K acting on M/K, with projections
    ActionMorphism projection;      // pi: the quotient morphism
    ActionMorphism induced;         // the factored morphism; an isomorphism
};

enum class FactorFailureKind { NotMorita, InducedMapNotIso };

struct FactorResult {
    std::optional<FactorSuccess> success;
    FactorFailureKind failure_kind = FactorFailureKind::NotMorita;
    std::optional<MoritaWitness> morita_witness;
    std::string detail;

    bool ok() const { return success.has_value(); }
};

/// Factor a Morita morphism of actions as (isomorphism) o (quotient by
/// the freely-acting kernel of lambda). Refuses non-Morita input.
///
/// On a Morita input the kernel always acts freely and the factored map
/// is injective on objects and on the group; but a Morita morphism whose
/// object image misses part of a codomain orbit (a skeleton inclusion,
/// e.g. a point into a free transitive action) factors through an
/// embedding that is not onto, and the result reports InducedMapNotIso.
/// See the groupoid test suite for the phenomenon pinned as behavior.
inline FactorResult factor_morita(const FiniteAction& dom, const FiniteAction& cod,
                                  const ActionMorphism& m) {
    validate_action_morphism(dom, cod, m);
    FactorResult result;
    auto verdict = is_morita(dom, cod, m);
    if (!verdict.morita) {
        result.failure_kind = FactorFailureKind::NotMorita;
        result.morita_witness = verdict.witness;
        result.detail = verdict.witness ? verdict.witness->describe() : "not a Morita morphism";
        return result;
    }

    const FiniteGroup& g = dom.group();
    const FiniteGroup& h = cod.group();
    std::vector<int> kernel_elems;
    for (int x = 0; x < g.order(); ++x)
        if (m.lambda[x] == h.identity()) kernel_elems.push_back(x);

    // Morita implies the kernel acts freely: a fixed point of k in K
    // would be killed by the isotropy bijection. Anything else is a bug.
    if (!dom.acts_freely(kernel_elems))
        throw InternalError("kernel of a Morita morphism fails to act freely");

    Subgroup kernel = subgroup_from_elements(g, kernel_elems);
    ActionQuotient quo = quotient_action(dom, kernel_elems);

    ActionMorphism projection{quo.group_proj, quo.object_proj};
    validate_action_morphism(dom, quo.quotient, projection);

    // induced maps on cosets and K-orbits
    const FiniteGroup& q = quo.quotient.group();
    ActionMorphism induced;
    induced.lambda.assign(q.order(), -1);
    induced.phi.assign(quo.quotient.objects(), -1);
    for (int x = 0; x < g.order(); ++x) {
        int c = quo.group_proj[x];
        if (induced.lambda[c] == -1)
            induced.lambda[c] = m.lambda[x];
        else if (induced.lambda[c] != m.lambda[x])
            throw InternalError("lambda does not descend to the quotient group");
    }
    for (int x = 0; x < dom.objects(); ++x) {
        int c = quo.object_proj[x];
        if (induced.phi[c] == -1)
            induced.phi[c] = m.phi[x];
        else if (induced.phi[c] != m.phi[x])
            throw InternalError("phi does not descend to the K-orbit space");
    }
    validate_action_morphism(quo.quotient, cod, induced);

    // round trip: induced o projection must equal the input, element-wise
    for (int x = 0; x < g.order(); ++x)
        if (induced.lambda[projection.lambda[x]] != m.lambda[x])
            throw InternalError("factorization does not recompose to the input (lambda)");
    for (int x = 0; x < dom.objects(); ++x)
        if (induced.phi[projection.phi[x]] != m.phi[x])
            throw InternalError("factorization does not recompose to the input (phi)");

    // the strong conclusion: the induced morphism is an isomorphism of
    // action groupoids, i.e. bijective on the group and on objects
    auto injective = [](const std::vector<int>& v, int codomain_size) {
        std::vector<bool> seen(codomain_size, false);
        for (int x : v) {
            if (seen[x]) return false;
            seen[x] = true;
        }
        return true;
    };
    bool lam_bij = static_cast<int>(induced.lambda.size()) == h.order() &&
                   injective(induced.lambda, h.order());
    bool phi_bij = static_cast<int>(induced.phi.size()) == cod.objects() &&
                   injective(induced.phi, cod.objects());
    if (!lam_bij || !phi_bij) {
        result.failure_kind = FactorFailureKind::InducedMapNotIso;
        result.detail = std::string("induced map is not an isomorphism: ") +
                        (!lam_bij ? "group map not bijective" : "object map not bijective");
        return result;
    }

    result.success = FactorSuccess{std::move(kernel), std::move(quo), std::move(projection),
                                   std::move(induced)};
    return result;
}

/// Homotopy fiber product of phi: G -> K and psi: H -> K. Objects are
/// triples (x, k, y) with k an arrow phi(x) -> psi(y) in K; an arrow
/// (g, h): (x, k, y) -> (x', k', y') exists iff psi(h) k = k' phi(g),
/// and then k' is determined, so arrows are the pairs (g, h) with one
/// copy per source triple. Composition is componentwise.
struct HomotopyFiberProduct {
    FiniteGroupoid groupoid;
    std::vector<std::tuple<int, int, int>> object_labels;  // (x, k_arrow, y)
    std::vector<std::pair<int, int>> arrow_labels;         // (g, h)
};

inline HomotopyFiberProduct homotopy_fiber_product(const FiniteGroupoid& gg,
                                                   const FiniteGroupoid& hh,
                                                   const FiniteGroupoid& kk,
                                                   const GroupoidMorphism& phi,
                                                   const GroupoidMorphism& psi) {
    validate_morphism(gg, kk, phi);
    validate_morphism(hh, kk, psi);

    std::vector<std::tuple<int, int, int>> objs;
    std::map<std::tuple<int, int, int>, int> obj_index;
    for (int x = 0; x < gg.objects(); ++x)
        for (int y = 0; y < hh.objects(); ++y)
            for (int k : kk.hom_set(phi.object_map[x], psi.object_map[y])) {
                obj_index[{x, k, y}] = static_cast<int>(objs.size());
                objs.emplace_back(x, k, y);
            }

    struct ArrowData {
        int g, h, src, tgt;
    };
    std::vector<ArrowData> arrs;
    std::map<std::tuple<int, int, int>, int> arr_index;  // (g, h, src object)
    for (int g = 0; g < gg.arrow_count(); ++g)
        for (int h = 0; h < hh.arrow_count(); ++h)
            for (std::size_t s = 0; s < objs.size(); ++s) {
                auto [x, k, y] = objs[s];
                if (gg.arrow(g).src != x || hh.arrow(h).src != y) continue;
                // k' = psi(h) k phi(g)^{-1}
                int kp = kk.compose(kk.compose(psi.arrow_map[h], k), kk.inverse(phi.arrow_map[g]));
                auto it = obj_index.find({gg.arrow(g).tgt, kp, hh.arrow(h).tgt});
                if (it == obj_index.end())
                    throw InternalError("fiber product target object missing");
                arr_index[{g, h, static_cast<int>(s)}] = static_cast<int>(arrs.size());
                arrs.push_back({g, h, static_cast<int>(s), it->second});
            }

    std::vector<FiniteGroupoid::Arrow> arrows(arrs.size());
    std::vector<std::pair<int, int>> labels(arrs.size());
    for (std::size_t i = 0; i < arrs.size(); ++i) {
        arrows[i] = {arrs[i].src, arrs[i].tgt};
        labels[i] = {arrs[i].g, arrs[i].h};
    }
    std::vector<int> unit(objs.size());
    for (std::size_t s = 0; s < objs.size(); ++s) {
        auto [x, k, y] = objs[s];
        unit[s] = arr_index.at({gg.unit(x), hh.unit(y), static_cast<int>(s)});
    }
    std::vector<int> inv(arrs.size());
    for (std::size_t i = 0; i < arrs.size(); ++i)
        inv[i] = arr_index.at({gg.inverse(arrs[i].g), hh.inverse(arrs[i].h), arrs[i].tgt});
    std::vector<int> comp(arrs.size() * arrs.size(), -1);
    for (std::size_t i2 = 0; i2 < arrs.size(); ++i2)
        for (std::size_t i1 = 0; i1 < arrs.size(); ++i1) {
            if (arrs[i2].src != arrs[i1].tgt) continue;
            comp[i2 * arrs.size() + i1] = arr_index.at(
                {gg.compose(arrs[i2].g, arrs[i1].g), hh.compose(arrs[i2].h, arrs[i1].h),
                 arrs[i1].src});
        }
    FiniteGroupoid out(static_cast<int>(objs.size()), std::move(arrows), std::move(unit),
                       std::move(inv), std::move(comp));
    return {std::move(out), std::move(objs), std::move(labels)};
}

/// Fraction beta/alpha: a span G <- W -> H whose left leg is Morita.
/// The class of such spans is how general stack maps are presented; the
/// span itself is invertible as a stack map iff beta is Morita too.
/// Testing whether two fractions present the same stack map (a search
/// over arbitrary mediating apexes) is out of scope here.
struct Fraction {
    FiniteGroupoid apex, left_target, right_target;
    GroupoidMorphism alpha, beta;

    Fraction(FiniteGroupoid w, FiniteGroupoid g, FiniteGroupoid h, GroupoidMorphism a,
             GroupoidMorphism b)
        : apex(std::move(w)), left_target(std::move(g)), right_target(std::move(h)),
          alpha(std::move(a)), beta(std::move(b)) {
        validate_morphism(apex, right_target, beta);
        if (!is_morita(apex, left_target, alpha).morita)
            throw NotMoritaError("the left leg of a fraction must be Morita");
    }
};

inline bool fraction_invertible(const Fraction& f) {
    return is_morita(f.apex, f.right_target, f.beta).morita;
}

}  // namespace orbistack
