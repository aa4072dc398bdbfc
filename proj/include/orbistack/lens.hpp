#pragma once

#include <numeric>
#include <utility>
#include <vector>

#include "orbistack/errors.hpp"

namespace orbistack {

// Lens spaces L(p, q) are classified at three levels by modular
// arithmetic on q, and the three predicates genuinely differ:
//   homotopy equivalence:      q q' = +-x^2 (mod p) solvable,
//   homeomorphism:             q' = +-q^{+-1} (mod p),
//   orbit-stack isomorphism:   q' = +-q (mod p).
// Stack classes refine homeomorphism classes refine homotopy classes.
// Everything is decided by direct enumeration mod p; p stays desk-sized
// and auditability beats cleverness here.

/// Coprime pair (p, q) with q canonicalized into [1, p-1].
struct LensParams {
    long p;
    long q;

    LensParams(long p_, long q_) : p(p_) {
        if (p < 2) throw DomainError("lens space needs p >= 2");
        q = ((q_ % p) + p) % p;
        if (q == 0 || std::gcd(q, p) != 1) throw NotCoprimeError("q must be a unit mod p");
    }
};

namespace detail {

inline long mod_inverse(long q, long p) {
    long r0 = p, r1 = q, s0 = 0, s1 = 1;
    while (r1 != 0) {
        long k = r0 / r1;
        r0 -= k * r1;
        std::swap(r0, r1);
        s0 -= k * s1;
        std::swap(s0, s1);
    }
    if (r0 != 1) throw NotCoprimeError("no inverse mod p");
    return ((s0 % p) + p) % p;
}

}  // namespace detail

/// qq' = +-x^2 (mod p) for some x, by enumerating the squares mod p.
inline bool lens_homotopy_equiv(long p, long q_in, long q2_in) {
    LensParams a(p, q_in), b(p, q2_in);
    long prod = static_cast<long>((static_cast<long long>(a.q) * b.q) % p);
    for (long x = 0; x < p; ++x) {
        long sq = static_cast<long>((static_cast<long long>(x) * x) % p);
        if (sq == prod || (p - sq) % p == prod) return true;
    }
    return false;
}

/// q' = q, -q, q^{-1} or -q^{-1} (mod p).
inline bool lens_homeo_equiv(long p, long q_in, long q2_in) {
    LensParams a(p, q_in), b(p, q2_in);
    long qi = detail::mod_inverse(a.q, p);
    return b.q == a.q || b.q == (p - a.q) % p || b.q == qi || b.q == (p - qi) % p;
}

/// q' = +-q (mod p).
inline bool lens_stack_equiv(long p, long q_in, long q2_in) {
    LensParams a(p, q_in), b(p, q2_in);
    return b.q == a.q || b.q == (p - a.q) % p;
}

/// The three partitions of the units mod p, coarsest to finest. Each
/// predicate is verified to be an equivalence relation on the units
/// before partitioning; a failure there would be an implementation bug,
/// not a property of the input.
struct LensClassification {
    long p;
    std::vector<long> units;
    std::vector<std::vector<long>> homotopy_classes;
    std::vector<std::vector<long>> homeo_classes;
    std::vector<std::vector<long>> stack_classes;
};

namespace detail {

template <typename Pred>
inline std::vector<std::vector<long>> partition_units(const std::vector<long>& units,
                                                      Pred&& eq) {
    for (long q : units)
        if (!eq(q, q)) throw InternalError("lens predicate is not reflexive");
    for (long q : units)
        for (long r : units)
            if (eq(q, r) != eq(r, q)) throw InternalError("lens predicate is not symmetric");
    for (long q : units)
        for (long r : units)
            for (long s : units)
                if (eq(q, r) && eq(r, s) && !eq(q, s))
                    throw InternalError("lens predicate is not transitive");
    std::vector<std::vector<long>> classes;
    std::vector<bool> used(units.size(), false);
    for (std::size_t i = 0; i < units.size(); ++i) {
        if (used[i]) continue;
        std::vector<long> cls;
        for (std::size_t j = i; j < units.size(); ++j)
            if (!used[j] && eq(units[i], units[j])) {
                used[j] = true;
                cls.push_back(units[j]);
            }
        classes.push_back(std::move(cls));
    }
    return classes;
}

}  // namespace detail

inline LensClassification lens_classify(long p) {
    if (p < 2) throw DomainError("lens space needs p >= 2");
    LensClassification out;
    out.p = p;
    for (long q = 1; q < p; ++q)
        if (std::gcd(q, p) == 1) out.units.push_back(q);

    // memoized tables so the O(units^3) equivalence-relation audit inside
    // partition_units stays cheap for every p up to a few hundred
    std::vector<bool> is_square(p, false);
    for (long x = 0; x < p; ++x)
        is_square[static_cast<long>((static_cast<long long>(x) * x) % p)] = true;
    std::vector<long> inv(p, 0);
    for (long q : out.units) inv[q] = detail::mod_inverse(q, p);

    auto homotopy = [&](long a, long b) {
        long prod = static_cast<long>((static_cast<long long>(a) * b) % p);
        return is_square[prod] || is_square[(p - prod) % p];
    };
    auto homeo = [&](long a, long b) {
        return b == a || b == (p - a) % p || b == inv[a] || b == (p - inv[a]) % p;
    };
    auto stack = [&](long a, long b) { return b == a || b == (p - a) % p; };

    out.homotopy_classes = detail::partition_units(out.units, homotopy);
    out.homeo_classes = detail::partition_units(out.units, homeo);
    out.stack_classes = detail::partition_units(out.units, stack);
    return out;
}

}  // namespace orbistack
