#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orbistack/cf.hpp"
#include "orbistack/lattice.hpp"
#include "orbistack/matrix.hpp"
#include "orbistack/polynomial.hpp"
#include "orbistack/quadratic.hpp"

namespace orbistack {

// Deciding when two hyperbolic toral automorphisms have isomorphic orbit
// stacks: x -> Ax and x -> Bx on the n-torus do iff A is GL_n(Z)-conjugate
// to B or to B^{-1}. The conjugacy question itself is solved completely
// for n = 2 through the Latimer-MacDuffee correspondence (conjugacy
// classes of matrices with a fixed irreducible characteristic polynomial
// f <-> ideal classes of Z[x]/(f), compared here via continued-fraction
// cycles of the associated quadratic irrationals), and by bounded search
// for everything else. Every Yes ships a certificate P with P A P^{-1} = B
// verified exactly before it is returned.

/// Fast hyperbolicity test for 2x2 unimodular matrices:
/// det = +1: hyperbolic iff |trace| > 2; det = -1: hyperbolic iff trace != 0.
inline bool is_hyperbolic_2x2_fast(const IntegerMatrix& a) {
    if (a.dim() != 2) throw DimensionMismatchError("fast path needs a 2x2 matrix");
    Int d = a.det();
    Int t = a.trace();
    if (d == 1) return t > 2 || t < -2;
    if (d == -1) return t != 0;
    throw NotUnimodularError("hyperbolicity is defined for unimodular matrices");
}

/// General hyperbolicity test: no eigenvalue of modulus 1. The factor of
/// the characteristic polynomial f carrying any unit-circle roots is
/// g = gcd(f, x^n f(1/x)) (roots of f closed under z -> 1/z land in g).
/// Reject eigenvalues +-1 directly; the remaining unit-circle roots of
/// the self-reciprocal g(z) = z^m h(z + 1/z) correspond exactly to real
/// roots of h in the open interval (-2, 2), counted by Sturm sequences.
inline bool is_hyperbolic_via_sturm(const IntegerMatrix& a) {
    if (!a.is_unimodular())
        throw NotUnimodularError("hyperbolicity is defined for unimodular matrices");
    IntegerPolynomial f = charpoly(a);
    IntegerPolynomial g = poly_gcd(f, f.reversed());
    if (g.eval(Int(1)) == 0 || g.eval(Int(-1)) == 0) return false;
    if (g.degree() <= 0) return true;
    int deg = g.degree();
    if (deg % 2 != 0) throw InternalError("self-reciprocal factor has odd degree");
    int m = deg / 2;
    for (int i = 0; i <= deg; ++i)
        if (g.coeff(i) != g.coeff(deg - i))
            throw InternalError("gcd with the reversed polynomial is not palindromic");
    // h built from z^k + z^{-k} = q_k(z + 1/z), q_{k+1} = w q_k - q_{k-1}
    IntegerPolynomial h({g.coeff(m)});
    IntegerPolynomial qk_prev({2});     // q_0
    IntegerPolynomial qk({0, 1});       // q_1 = w
    IntegerPolynomial w({0, 1});
    for (int k = 1; k <= m; ++k) {
        h = h + IntegerPolynomial({g.coeff(m + k)}) * qk;
        IntegerPolynomial next = w * qk - qk_prev;
        qk_prev = qk;
        qk = next;
    }
    return count_real_roots_in(h, Rat(-2), Rat(2), /*open=*/true) == 0;
}

inline bool is_hyperbolic(const IntegerMatrix& a) {
    if (a.dim() == 2) return is_hyperbolic_2x2_fast(a);
    return is_hyperbolic_via_sturm(a);
}

/// Total order used to pick the reported conjugacy certificate: total
/// entry magnitude first, then the entrywise magnitude order of
/// matrix_less. Under this order A = B reports the identity and the cat
/// map versus its transpose reports the swap.
inline bool certificate_less(const IntegerMatrix& a, const IntegerMatrix& b) {
    Int sa = 0, sb = 0;
    for (const auto& v : a.entries()) sa += abs_int(v);
    for (const auto& v : b.entries()) sb += abs_int(v);
    if (sa != sb) return sa < sb;
    return matrix_less(a, b);
}

enum class ConjugacyStatus { Yes, No, Unknown };

struct ConjugacyVerdict {
    ConjugacyStatus status = ConjugacyStatus::Unknown;
    std::optional<IntegerMatrix> certificate;  // Yes: P with P A P^{-1} = B
    std::string obstruction;                   // No: named checkable invariant
    long bound = 0;                            // Unknown: exhausted search bound
    std::string method;
    std::string note;                          // warnings (e.g. reducible rerouting)
    std::string branch;                        // set by toral_stack_equiv

    bool yes() const { return status == ConjugacyStatus::Yes; }
    bool no() const { return status == ConjugacyStatus::No; }
    bool unknown() const { return status == ConjugacyStatus::Unknown; }
};

enum class ConjugacyMethod { Auto, LatimerMacDuffee, BoundedSearch };

struct ConjugacyConfig {
    ConjugacyMethod method = ConjugacyMethod::Auto;
    long bound = 10;
};

/// Ideal of the order Z[theta], theta a root of x^2 - t x + e, with
/// Z-basis {q, p + theta} in the canonical range q > 0, 0 <= p < q.
/// Closure under multiplication by theta amounts to q | f(-p).
struct QuadraticIdeal {
    Int q, p;
    Int t, e;  // theta^2 = t*theta - e

    QuadraticIdeal(Int q_, Int p_, Int t_, Int e_)
        : q(std::move(q_)), p(std::move(p_)), t(std::move(t_)), e(std::move(e_)) {
        if (q <= 0) throw DomainError("ideal basis needs q > 0");
        p = mod_nonneg(p, q);
        Int fp = p * p + t * p + e;  // f(-p)
        if (!mpz_divisible_p(fp.get_mpz_t(), q.get_mpz_t()))
            throw DomainError("not a Z[theta]-module: q does not divide f(-p)");
    }

    /// The associated quadratic irrational (p + theta)/q with
    /// theta = (t + sqrt(disc))/2; ideal classes coincide exactly when
    /// these numbers are GL2(Z)-equivalent.
    QuadraticNumber xi() const {
        Int disc = t * t - 4 * e;
        return QuadraticNumber(2 * p + t, 1, 2 * q, disc);
    }
};

/// Row-eigenvector ideal of a 2x2 matrix with irreducible characteristic
/// polynomial: (A - theta I) (b, theta - a)^T = 0 makes Z*b + Z*(theta - a)
/// a Z[theta]-module; multiplication by theta acts on the basis
/// (b, theta - a) through A^T, consistently for every input, so equality
/// of ideal classes decides GL2(Z)-conjugacy.
inline QuadraticIdeal ideal_from_matrix(const IntegerMatrix& a) {
    if (a.dim() != 2) throw DimensionMismatchError("ideal construction needs a 2x2 matrix");
    Int t = a.trace();
    Int e = a.det();
    Int b = a.at(0, 1);
    if (b == 0) throw DomainError("characteristic polynomial is reducible (b = 0)");
    return QuadraticIdeal(abs_int(b), -a.at(0, 0), t, e);
}

namespace detail {

/// Element r + s*theta of Q(theta), theta^2 = t*theta - e.
struct QThetaElem {
    Rat r, s;
};

inline QThetaElem qt_mul(const QThetaElem& x, const QThetaElem& y, const Int& t, const Int& e) {
    // (r + s th)(r' + s' th) = rr' - ss'e + (rs' + sr' + ss't) th
    return {x.r * y.r - x.s * y.s * Rat(e), x.r * y.s + x.s * y.r + x.s * y.s * Rat(t)};
}

inline QThetaElem qt_inv(const QThetaElem& x, const Int& t, const Int& e) {
    // conjugate of theta is t - theta; norm(r + s th) = r^2 + rst + e s^2
    Rat norm = x.r * x.r + x.r * x.s * Rat(t) + Rat(e) * x.s * x.s;
    if (norm == 0) throw DomainError("inverse of zero in Q(theta)");
    return {(x.r + x.s * Rat(t)) / norm, -x.s / norm};
}

/// Basis of the conjugation module {X : X A = B X} over Z (saturated).
inline std::vector<IntegerMatrix> conjugation_module_basis(const IntegerMatrix& a,
                                                           const IntegerMatrix& b) {
    std::size_t n = a.dim();
    std::size_t nn = n * n;
    // column for X = E_{ij}: entries (r,s) of E_{ij} A - B E_{ij}
    std::vector<IntVec> cols(nn, IntVec(nn, Int(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            IntVec& col = cols[i * n + j];
            for (std::size_t s = 0; s < n; ++s) col[i * n + s] += a.at(j, s);
            for (std::size_t r = 0; r < n; ++r) col[r * n + j] -= b.at(r, i);
        }
    auto kernel = integer_kernel(cols, nn);
    std::vector<IntegerMatrix> basis;
    for (const auto& v : kernel) {
        IntegerMatrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = v[i * n + j];
        basis.push_back(m);
    }
    return basis;
}

/// Visits every unimodular element of the conjugation module with
/// entries in [-bound, bound]. The coefficient box is derived exactly
/// from an invertible coordinate minor, so the enumeration misses no
/// candidate. The visitor returns true to stop early.
template <typename Visitor>
inline void scan_conjugators(const IntegerMatrix& a, const IntegerMatrix& b, long bound,
                             Visitor&& visit) {
    auto basis = conjugation_module_basis(a, b);
    std::size_t r = basis.size();
    if (r == 0) return;
    std::size_t n = a.dim();
    std::size_t nn = n * n;

    // pick r coordinate positions with an invertible r x r minor
    std::vector<std::vector<Rat>> mat(r, std::vector<Rat>(nn));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < nn; ++k) mat[i][k] = Rat(basis[i].entries()[k]);
    std::vector<std::size_t> cols_pick;
    std::vector<std::vector<Rat>> m = mat;
    std::size_t row = 0;
    for (std::size_t k = 0; k < nn && row < r; ++k) {
        std::size_t piv = row;
        while (piv < r && m[piv][k] == 0) ++piv;
        if (piv == r) continue;
        std::swap(m[piv], m[row]);
        for (std::size_t i = 0; i < r; ++i) {
            if (i == row || m[i][k] == 0) continue;
            Rat f = m[i][k] / m[row][k];
            for (std::size_t c = 0; c < nn; ++c) m[i][c] -= f * m[row][c];
        }
        cols_pick.push_back(k);
        ++row;
    }
    if (row < r) throw InternalError("conjugation module basis is degenerate");

    // S = r x r minor at the picked coordinates; coefficients x of a
    // candidate satisfy x = S^{-1} y with |y_j| <= bound
    std::vector<std::vector<Rat>> s(r, std::vector<Rat>(r)), sinv(r, std::vector<Rat>(r, Rat(0)));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) s[i][j] = mat[j][cols_pick[i]];
    for (std::size_t i = 0; i < r; ++i) sinv[i][i] = 1;
    for (std::size_t k = 0; k < r; ++k) {
        std::size_t piv = k;
        while (s[piv][k] == 0) ++piv;
        std::swap(s[piv], s[k]);
        std::swap(sinv[piv], sinv[k]);
        Rat d = s[k][k];
        for (std::size_t c = 0; c < r; ++c) {
            s[k][c] /= d;
            sinv[k][c] /= d;
        }
        for (std::size_t i = 0; i < r; ++i) {
            if (i == k || s[i][k] == 0) continue;
            Rat f = s[i][k];
            for (std::size_t c = 0; c < r; ++c) {
                s[i][c] -= f * s[k][c];
                sinv[i][c] -= f * sinv[k][c];
            }
        }
    }
    std::vector<long> box(r);
    double volume = 1;
    for (std::size_t i = 0; i < r; ++i) {
        Rat radius(0);
        for (std::size_t j = 0; j < r; ++j) radius += abs(sinv[i][j]) * Rat(bound);
        Int ceilr = fdiv(radius.get_num(), radius.get_den()) + 1;
        box[i] = ceilr.get_si();
        volume *= 2.0 * box[i] + 1.0;
    }
    if (volume > 2e8) throw DomainError("conjugator search space too large for this bound");

    Int big(bound);
    std::vector<long> x(r, 0);
    std::vector<Int> entries(nn);
    auto scan = [&](auto&& self, std::size_t lvl) -> bool {
        if (lvl == r) {
            bool all_zero = true;
            for (std::size_t k = 0; k < nn; ++k) {
                entries[k] = 0;
                for (std::size_t i = 0; i < r; ++i)
                    if (x[i]) entries[k] += Int(x[i]) * basis[i].entries()[k];
                if (entries[k] != 0) all_zero = false;
                if (entries[k] > big || entries[k] < -big) return false;
            }
            if (all_zero) return false;
            IntegerMatrix cand(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) cand.at(i, j) = entries[i * n + j];
            if (!cand.is_unimodular()) return false;
            return visit(cand);
        }
        for (long v = -box[lvl]; v <= box[lvl]; ++v) {
            x[lvl] = v;
            if (self(self, lvl + 1)) return true;
        }
        return false;
    };
    scan(scan, 0);
}

/// Convergent matrix [[p_{m-1}, p_{m-2}], [q_{m-1}, q_{m-2}]] of the first
/// m digits: xi = (p_{m-1} eta + p_{m-2}) / (q_{m-1} eta + q_{m-2}) where
/// eta is the m-th complete quotient.
inline IntegerMatrix convergent_matrix(const SurdExpansion& e, std::size_t m) {
    Int p1 = 1, p2 = 0, q1 = 0, q2 = 1;
    for (std::size_t k = 0; k < m; ++k) {
        Int a = e.digit(k);
        Int p = a * p1 + p2;
        Int q = a * q1 + q2;
        p2 = p1;
        p1 = p;
        q2 = q1;
        q1 = q;
    }
    IntegerMatrix c(2);
    c.at(0, 0) = p1;
    c.at(0, 1) = p2;
    c.at(1, 0) = q1;
    c.at(1, 1) = q2;
    return c;
}

/// Moebius action in the ordinary row convention, used only internally
/// for the certificate reconstruction: h_M(x) = (M00 x + M01)/(M10 x + M11).
inline QuadraticNumber moebius_row(const IntegerMatrix& m, const QuadraticNumber& x) {
    QuadraticNumber num = x * QuadraticNumber::rational(m.at(0, 0)) + QuadraticNumber::rational(m.at(0, 1));
    QuadraticNumber den = x * QuadraticNumber::rational(m.at(1, 0)) + QuadraticNumber::rational(m.at(1, 1));
    return num / den;
}

}  // namespace detail

/// Canonical certificate: the least conjugator under matrix_less among
/// all valid ones whose entries are bounded by the given seed
/// certificate. Keeps reported certificates independent of which method
/// found them; if the seed is too large to canonicalize it is returned
/// unchanged (it is verified either way).
inline IntegerMatrix canonical_certificate(const IntegerMatrix& a, const IntegerMatrix& b,
                                           const IntegerMatrix& seed) {
    long bound = 1;
    for (const auto& v : seed.entries()) {
        Int m = abs_int(v);
        if (m > bound) bound = mpz_fits_slong_p(m.get_mpz_t()) ? m.get_si() : (1L << 30);
    }
    std::optional<IntegerMatrix> best;
    try {
        detail::scan_conjugators(a, b, bound, [&](const IntegerMatrix& cand) {
            if (!best || certificate_less(cand, *best)) best = cand;
            return false;
        });
    } catch (const DomainError&) {
        return seed;  // search space too large; keep the verified seed
    }
    if (!best) throw InternalError("certificate canonicalization lost the seed");
    return *best;
}

namespace detail {

/// Complete decision for n = 2 with irreducible characteristic polynomial
/// of positive nonsquare discriminant. Class equality is read off the
/// continued-fraction cycles of the ideal numbers; a Yes is upgraded to an
/// exact conjugator by matching a complete quotient eta shared by both
/// cycles, transporting bases along the convergents, and converting the
/// resulting multiplier gamma (with gamma * I_A = I_B) into a basis change.
inline ConjugacyVerdict lm_conjugate(const IntegerMatrix& a, const IntegerMatrix& b, long bound) {
    ConjugacyVerdict v;
    v.method = "latimer-macduffee";
    QuadraticIdeal ia = ideal_from_matrix(a);
    QuadraticIdeal ib = ideal_from_matrix(b);
    const Int& t = ia.t;
    const Int& e = ia.e;

    SurdExpansion ea = cf_expand_full(ia.xi());
    SurdExpansion eb = cf_expand_full(ib.xi());

    std::map<std::pair<std::pair<Int, Int>, std::pair<Int, Int>>, std::size_t> cycle_a;
    auto key = [](const QuadraticNumber& x) {
        return std::make_pair(std::make_pair(x.a(), x.b()), std::make_pair(x.c(), x.d()));
    };
    for (std::size_t m = ea.preperiod_length(); m < ea.quotients.size(); ++m)
        cycle_a.emplace(key(ea.quotients[m]), m);

    std::optional<std::pair<std::size_t, std::size_t>> match;
    for (std::size_t n = eb.preperiod_length(); n < eb.quotients.size(); ++n) {
        auto it = cycle_a.find(key(eb.quotients[n]));
        if (it != cycle_a.end()) {
            match = std::make_pair(it->second, n);
            break;
        }
    }
    if (!match) {
        v.status = ConjugacyStatus::No;
        v.obstruction = "distinct ideal classes";
        return v;
    }
    auto [m, n] = *match;

    IntegerMatrix ca = convergent_matrix(ea, m);
    IntegerMatrix cb = convergent_matrix(eb, n);
    IntegerMatrix g = cb * ca.inverse();
    if (moebius_row(g, ia.xi()) != ib.xi())
        throw InternalError("convergent transport failed to map xi_A to xi_B");

    // gamma = q_B / (g10 (p_A + theta) + g11 q_A); then gamma * I_A = I_B
    QThetaElem den{Rat(g.at(1, 0) * ia.p + g.at(1, 1) * ia.q), Rat(g.at(1, 0))};
    QThetaElem gamma = qt_inv(den, t, e);
    gamma.r *= Rat(ib.q);
    gamma.s *= Rat(ib.q);

    // U: coordinates of gamma * (basis of I_A) in the basis of I_B, where
    // the bases (b, theta - a) carry multiplication-by-theta as A^T, B^T
    Int bA = a.at(0, 1), aA = a.at(0, 0);
    Int bB = b.at(0, 1), aB = b.at(0, 0);
    QThetaElem w1{gamma.r * Rat(bA), gamma.s * Rat(bA)};  // gamma * b_A
    // gamma * (theta - a_A): gamma*theta = (-s e) + (r + s t) theta
    QThetaElem w2{-gamma.s * Rat(e) - gamma.r * Rat(aA),
                  gamma.r + gamma.s * Rat(t) - gamma.s * Rat(aA)};
    auto coords = [&](const QThetaElem& w) {
        Rat y = w.s;
        Rat x = (w.r + y * Rat(aB)) / Rat(bB);
        if (x.get_den() != 1 || y.get_den() != 1)
            throw InternalError("gamma does not map I_A onto I_B integrally");
        return std::make_pair(Int(x.get_num()), Int(y.get_num()));
    };
    auto [x1, y1] = coords(w1);
    auto [x2, y2] = coords(w2);
    IntegerMatrix u(2);
    u.at(0, 0) = x1;
    u.at(0, 1) = x2;
    u.at(1, 0) = y1;
    u.at(1, 1) = y2;
    if (!u.is_unimodular()) throw InternalError("basis change between ideals is not unimodular");

    IntegerMatrix p = u.transpose().inverse();
    if (p * a != b * p) throw InternalError("reconstructed conjugator fails P A = B P");
    v.status = ConjugacyStatus::Yes;
    v.certificate = canonical_certificate(a, b, p);
    v.bound = bound;
    return v;
}

inline ConjugacyVerdict search_conjugate(const IntegerMatrix& a, const IntegerMatrix& b,
                                         long bound) {
    ConjugacyVerdict v;
    v.method = "bounded-search";
    v.bound = bound;
    std::optional<IntegerMatrix> best;
    detail::scan_conjugators(a, b, bound, [&](const IntegerMatrix& cand) {
        if (!best || certificate_less(cand, *best)) best = cand;
        return false;
    });
    if (!best) {
        v.status = ConjugacyStatus::Unknown;
        return v;
    }
    if (*best * a != b * *best || !best->is_unimodular())
        throw InternalError("search produced an invalid conjugator");
    v.status = ConjugacyStatus::Yes;
    v.certificate = *best;
    return v;
}

}  // namespace detail

/// GL_n(Z)-conjugacy of unimodular matrices. The characteristic
/// polynomial screens definite No answers for every n; n = 2 inputs with
/// an irreducible characteristic polynomial of positive discriminant get
/// the complete Latimer-MacDuffee decision, everything else falls back to
/// bounded search (Yes with certificate, or an honest Unknown recording
/// the exhausted bound).
inline ConjugacyVerdict glnz_conjugate(const IntegerMatrix& a, const IntegerMatrix& b,
                                       const ConjugacyConfig& config = {}) {
    if (a.dim() != b.dim()) throw DimensionMismatchError("conjugacy needs equal dimensions");
    if (!a.is_unimodular() || !b.is_unimodular())
        throw NotUnimodularError("conjugacy is decided for unimodular matrices");

    ConjugacyVerdict v;
    if (charpoly(a) != charpoly(b)) {
        v.status = ConjugacyStatus::No;
        v.obstruction = "charpoly mismatch";
        v.method = "invariant-screen";
        return v;
    }

    bool lm_applicable = false;
    std::string reroute_note;
    if (a.dim() == 2) {
        Int disc = a.trace() * a.trace() - 4 * a.det();
        if (disc > 0 && !is_perfect_square(disc))
            lm_applicable = true;
        else if (is_perfect_square(disc))
            reroute_note = "reducible characteristic polynomial; routed to bounded search";
        else
            reroute_note = "complex quadratic eigenvalues; routed to bounded search";
    }

    ConjugacyMethod method = config.method;
    if (method == ConjugacyMethod::Auto)
        method = lm_applicable ? ConjugacyMethod::LatimerMacDuffee : ConjugacyMethod::BoundedSearch;
    if (method == ConjugacyMethod::LatimerMacDuffee && !lm_applicable) {
        method = ConjugacyMethod::BoundedSearch;
        if (reroute_note.empty())
            reroute_note = "latimer-macduffee needs n = 2; routed to bounded search";
    }

    if (method == ConjugacyMethod::LatimerMacDuffee) return detail::lm_conjugate(a, b, config.bound);
    v = detail::search_conjugate(a, b, config.bound);
    v.note = reroute_note;
    return v;
}

/// Stack equivalence of hyperbolic toral automorphisms: Yes iff A is
/// conjugate to B or to B^{-1}. The branch field records which side
/// decided ("direct" or "inverse").
inline ConjugacyVerdict toral_stack_equiv(const IntegerMatrix& a, const IntegerMatrix& b,
                                          const ConjugacyConfig& config = {}) {
    if (!is_hyperbolic(a) || !is_hyperbolic(b))
        throw NotHyperbolicError("stack equivalence here assumes hyperbolic automorphisms");
    ConjugacyVerdict direct = glnz_conjugate(a, b, config);
    if (direct.yes()) {
        direct.branch = "direct";
        return direct;
    }
    ConjugacyVerdict inverse = glnz_conjugate(a, b.inverse(), config);
    if (inverse.yes()) {
        inverse.branch = "inverse";
        return inverse;
    }
    if (direct.no() && inverse.no()) {
        ConjugacyVerdict v;
        v.status = ConjugacyStatus::No;
        v.obstruction = "direct: " + direct.obstruction + "; inverse: " + inverse.obstruction;
        v.method = direct.method;
        return v;
    }
    ConjugacyVerdict v;
    v.status = ConjugacyStatus::Unknown;
    v.bound = config.bound;
    v.method = "bounded-search";
    return v;
}

}  // namespace orbistack
