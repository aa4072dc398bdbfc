#pragma once

#include <map>
#include <utility>
#include <vector>

#include "orbistack/errors.hpp"
#include "orbistack/numeric.hpp"
#include "orbistack/quadratic.hpp"

namespace orbistack {

/// Continued fraction of a rational or real quadratic irrational.
///
/// The preperiod always holds at least a0 (the integer part; the only
/// digit allowed to be <= 0). The period is empty exactly for rationals,
/// and otherwise is the minimal cycle: the first repeated complete
/// quotient closes it, and since a complete quotient determines the whole
/// tail, no shorter cycle can generate the same eventual digit stream.
/// Finite (rational) expansions are canonical: the last digit is >= 2
/// unless the expansion is the single digit [a0].
struct ContinuedFraction {
    std::vector<Int> preperiod;
    std::vector<Int> period;

    bool is_rational() const { return period.empty(); }

    bool operator==(const ContinuedFraction& o) const {
        return preperiod == o.preperiod && period == o.period;
    }
};

/// Expansion together with the exact complete quotients xi_k, one per
/// digit position k < preperiod+period. For k >= preperiod the quotients
/// repeat with the period; they are what the ideal-cycle comparison in
/// the toral classifier matches on.
struct SurdExpansion {
    ContinuedFraction cf;
    std::vector<QuadraticNumber> quotients;

    std::size_t preperiod_length() const { return cf.preperiod.size(); }
    std::size_t period_length() const { return cf.period.size(); }

    /// Digit at any index, unrolling the period.
    const Int& digit(std::size_t k) const {
        if (k < cf.preperiod.size()) return cf.preperiod[k];
        if (cf.period.empty()) throw DomainError("finite expansion has no digit there");
        return cf.period[(k - cf.preperiod.size()) % cf.period.size()];
    }
};

namespace detail {

inline SurdExpansion expand_rational(const Int& num, const Int& den) {
    SurdExpansion e;
    Int p = num, q = den;
    while (true) {
        e.quotients.push_back(QuadraticNumber::rational(p, q));
        Int a = fdiv(p, q);
        e.cf.preperiod.push_back(a);
        Int r = p - a * q;
        if (r == 0) break;
        p = q;
        q = r;
    }
    // canonical finite form: never end in 1 unless the whole expansion is [a0]
    auto& d = e.cf.preperiod;
    if (d.size() >= 2 && d.back() == 1) {
        d.pop_back();
        d.back() += 1;
        e.quotients.pop_back();
    }
    return e;
}

}  // namespace detail

/// Continued-fraction expansion with complete quotients. Rationals get
/// the canonical finite Euclid expansion; quadratic irrationals get the
/// eventually periodic expansion via the (P, Q) surd recurrence, cutting
/// the cycle at the first repeated state.
inline SurdExpansion cf_expand_full(const QuadraticNumber& tau) {
    if (tau.is_rational()) return detail::expand_rational(tau.a(), tau.c());

    // write tau = (P + sqrt(D)) / Q with Q | D - P^2
    Int D = tau.b() * tau.b() * tau.d();
    Int P = tau.a(), Q = tau.c();
    if (tau.b() < 0) {
        P = -P;
        Q = -Q;
    }
    if (!mpz_divisible_p(Int(D - P * P).get_mpz_t(), Q.get_mpz_t())) {
        Int aq = abs_int(Q);
        P *= aq;
        D *= Q * Q;
        Q *= aq;
    }

    SurdExpansion e;
    std::vector<Int> digits;
    std::map<std::pair<Int, Int>, std::size_t> seen;
    Int sq = isqrt(D);
    std::size_t cycle_start = 0;
    while (true) {
        auto state = std::make_pair(P, Q);
        auto it = seen.find(state);
        if (it != seen.end()) {
            cycle_start = it->second;
            break;
        }
        seen.emplace(state, digits.size());
        e.quotients.emplace_back(P, Int(1), Q, D);
        Int a;
        if (Q > 0)
            a = fdiv(P + sq, Q);
        else
            a = -fdiv(P + sq, -Q) - 1;
        digits.push_back(a);
        Int Pn = a * Q - P;
        Int Qn = divexact(D - Pn * Pn, Q);
        P = Pn;
        Q = Qn;
    }

    if (cycle_start == 0) {
        // purely periodic: keep a0 in the preperiod, rotate the cycle by one
        e.cf.preperiod.assign(digits.begin(), digits.begin() + 1);
        e.cf.period.assign(digits.begin() + 1, digits.end());
        e.cf.period.push_back(digits[0]);
        e.quotients.push_back(e.quotients[0]);
    } else {
        e.cf.preperiod.assign(digits.begin(), digits.begin() + cycle_start);
        e.cf.period.assign(digits.begin() + cycle_start, digits.end());
    }
    return e;
}

inline ContinuedFraction cf_expand(const QuadraticNumber& tau) { return cf_expand_full(tau).cf; }

/// Least rotation of a cycle under lexicographic order; canonical
/// representative for rotation-invariant comparison.
inline std::vector<Int> canonical_cycle(const std::vector<Int>& cycle) {
    if (cycle.empty()) return cycle;
    std::size_t n = cycle.size();
    std::size_t best = 0;
    for (std::size_t s = 1; s < n; ++s) {
        for (std::size_t i = 0; i < n; ++i) {
            const Int& a = cycle[(s + i) % n];
            const Int& b = cycle[(best + i) % n];
            if (a == b) continue;
            if (a < b) best = s;
            break;
        }
    }
    std::vector<Int> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = cycle[(best + i) % n];
    return out;
}

}  // namespace orbistack
