#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>

#include "orbistack/errors.hpp"

namespace orbistack {

// Exact arithmetic substrate. Int/Rat are GMP types; everything built on
// top of them in this library is exact, there is no floating point on any
// decision path.
using Int = mpz_class;
using Rat = mpq_class;

inline int sign(const Int& x) { return sgn(x); }
inline int sign(const Rat& x) { return sgn(x); }

inline Int abs_int(const Int& x) { return abs(x); }

inline Int gcd_int(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm_int(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

/// Exact quotient; throws if b does not divide a.
inline Int divexact(const Int& a, const Int& b) {
    if (b == 0) throw DomainError("division by zero");
    if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()))
        throw InternalError("divexact: " + b.get_str() + " does not divide " + a.get_str());
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/// Floor division (rounds toward -inf, matching the continued-fraction
/// recurrences).
inline Int fdiv(const Int& a, const Int& b) {
    if (b == 0) throw DomainError("division by zero");
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/// Nonnegative remainder of a mod m (m > 0).
inline Int mod_nonneg(const Int& a, const Int& m) {
    if (m <= 0) throw DomainError("modulus must be positive");
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline bool is_perfect_square(const Int& x) {
    return x >= 0 && mpz_perfect_square_p(x.get_mpz_t());
}

inline Int isqrt(const Int& x) {
    if (x < 0) throw DomainError("isqrt of negative number");
    Int r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    return r;
}

/// Splits n > 0 as s^2 * f with f squarefree; returns {s, f}.
/// Plain trial division; radicands at desk scale are small.
inline std::pair<Int, Int> extract_square(Int n) {
    if (n <= 0) throw DomainError("extract_square expects a positive argument");
    Int s = 1;
    Int f = 1;
    for (Int p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        s *= pow_int(p, e / 2);
        if (e % 2) f *= p;
    }
    f *= n;  // leftover prime
    return {s, f};
}

inline double to_double(const Rat& q) { return q.get_d(); }

inline std::string to_string(const Int& x) { return x.get_str(); }

/// "a" for integers, "a/b" otherwise.
inline std::string to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace orbistack
