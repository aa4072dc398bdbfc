#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "orbistack/cf.hpp"
#include "orbistack/matrix.hpp"
#include "orbistack/quadratic.hpp"

namespace orbistack {

// Deciding when two rigid circle rotations have isomorphic orbit stacks:
// rotation numbers tau, sigma are equivalent iff they lie in one orbit of
// the GL2(Z) homography action. The decision runs on continued fractions
// (two irrationals are GL2(Z)-equivalent iff their expansions eventually
// coincide, i.e. iff their minimal periods are cyclic rotations of one
// another). This uses the full determinant-(+-1) group; the SL2(Z)
// refinement, which adds a parity condition on the tails, is deliberately
// not implemented here.
//
// Inputs are restricted to rationals and real quadratic irrationals: the
// class where the question is exactly decidable. All rationals form a
// single equivalence class (every rational rotation has the same orbit
// stack up to isomorphism, the circle times a classifying stack of Z).

enum class RotationEquivReason {
    BothRational,
    RationalVsIrrational,
    DifferentFields,
    TailsMatch,
    TailsDiffer,
};

inline const char* to_string(RotationEquivReason r) {
    switch (r) {
        case RotationEquivReason::BothRational: return "both rotation numbers are rational";
        case RotationEquivReason::RationalVsIrrational:
            return "one rotation number is rational, the other is irrational";
        case RotationEquivReason::DifferentFields:
            return "rotation numbers lie in different quadratic fields";
        case RotationEquivReason::TailsMatch:
            return "continued-fraction tails eventually coincide";
        case RotationEquivReason::TailsDiffer:
            return "continued-fraction tails never coincide";
    }
    return "?";
}

struct RotationEquivVerdict {
    bool equivalent;
    RotationEquivReason reason;
};

inline RotationEquivVerdict gl2z_equivalent(const QuadraticNumber& tau, const QuadraticNumber& sigma) {
    if (tau.is_rational() && sigma.is_rational())
        return {true, RotationEquivReason::BothRational};
    if (tau.is_rational() != sigma.is_rational())
        return {false, RotationEquivReason::RationalVsIrrational};
    if (tau.d() != sigma.d())
        return {false, RotationEquivReason::DifferentFields};
    auto ct = canonical_cycle(cf_expand(tau).period);
    auto cs = canonical_cycle(cf_expand(sigma).period);
    if (ct == cs) return {true, RotationEquivReason::TailsMatch};
    return {false, RotationEquivReason::TailsDiffer};
}

/// Outcome of the exhaustive homography search. Only Found is conclusive;
/// an empty witness means no matrix with entries in [-bound, bound] maps
/// tau to sigma, not that none exists.
struct HomographySearch {
    std::optional<IntegerMatrix> witness;
    long bound;

    bool found() const { return witness.has_value(); }
};

/// Exhaustively enumerates unimodular 2x2 matrices with entries in
/// [-bound, bound] and returns the first one mapping tau exactly to
/// sigma. Candidates are tried in a fixed total order, ranked by distance
/// from the identity (sum of |M - I| entries) and then by the entrywise
/// magnitude order of matrix_less, so an equal pair always reports the
/// identity and a translated pair reports the translation.
inline HomographySearch brute_force_equiv_oracle(const QuadraticNumber& tau,
                                                 const QuadraticNumber& sigma, long bound) {
    if (bound < 1) throw DomainError("oracle bound must be positive");
    // homographies with integer entries preserve the field, so a field
    // mismatch cannot have a witness
    if (tau.d() != sigma.d() || tau.is_rational() != sigma.is_rational())
        return {std::nullopt, bound};

    struct Cand {
        long e[4];
        long dist;
    };
    std::vector<Cand> cands;
    cands.reserve(static_cast<std::size_t>(2 * bound + 1) * (2 * bound + 1) * 4);
    for (long a = -bound; a <= bound; ++a)
        for (long c = -bound; c <= bound; ++c)
            for (long b = -bound; b <= bound; ++b)
                for (long d = -bound; d <= bound; ++d) {
                    long det = a * d - c * b;
                    if (det != 1 && det != -1) continue;
                    Cand cd{{a, c, b, d}, 0};
                    cd.dist = std::abs(a - 1) + std::abs(c) + std::abs(b) + std::abs(d - 1);
                    cands.push_back(cd);
                }
    auto mag_key = [](long v) { return std::make_pair(std::abs(v), v < 0); };
    std::sort(cands.begin(), cands.end(), [&](const Cand& x, const Cand& y) {
        if (x.dist != y.dist) return x.dist < y.dist;
        for (int i = 0; i < 4; ++i)
            if (x.e[i] != y.e[i]) return mag_key(x.e[i]) < mag_key(y.e[i]);
        return false;
    });
    for (const auto& cd : cands) {
        IntegerMatrix m{{cd.e[0], cd.e[1]}, {cd.e[2], cd.e[3]}};
        try {
            if (qn_apply_homography(m, tau) == sigma) return {m, bound};
        } catch (const ZeroDenominatorError&) {
            // pole at tau; not a witness
        }
    }
    return {std::nullopt, bound};
}

}  // namespace orbistack
