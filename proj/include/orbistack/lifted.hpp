#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "orbistack/errors.hpp"
#include "orbistack/lattice.hpp"
#include "orbistack/matrix.hpp"

namespace orbistack {

// Exact arithmetic in the lifted groups that classify orbit stacks: the
// circle case Z x_eps Z and the toral case Z x_A Z^n (the fundamental
// group extension of the acting group, realized concretely).
//
// Convention note. Two equivalent displays of the semidirect law are in
// circulation: (k,v)(k',v') = (k+k', v + A^k v') and the mirror form
// (k,v)(k',v') = (k+k', A^{-k'} v + v'). This module fixes the first,
// the one under which the inverse is (-k, -A^{-k} v) and the commutator
// comes out as (0, v + A^k v' - A^{k'} v - v'). The mirror form presents
// an isomorphic group via (k, v) -> (k, A^k v); a unit test pins the
// internal consistency of the adopted convention and that isomorphism.

/// Element (m, n) of Z x_eps Z with eps in {+1, -1}:
/// (m,n)(m',n') = (m+m', n + eps^m n').
struct CircleLiftedElement {
    Int m, n;
    int eps;
};

inline CircleLiftedElement circle_element(int eps, Int m, Int n) {
    if (eps != 1 && eps != -1) throw DomainError("orientation sign must be +1 or -1");
    return {std::move(m), std::move(n), eps};
}

inline CircleLiftedElement circle_identity(int eps) { return circle_element(eps, 0, 0); }

namespace detail {
inline int eps_pow(int eps, const Int& m) {
    if (eps == 1) return 1;
    return mpz_even_p(m.get_mpz_t()) ? 1 : -1;
}
}  // namespace detail

inline CircleLiftedElement multiply(const CircleLiftedElement& x, const CircleLiftedElement& y) {
    if (x.eps != y.eps) throw ContextMismatchError("mixed orientation signs");
    return {x.m + y.m, x.n + detail::eps_pow(x.eps, x.m) * y.n, x.eps};
}

inline CircleLiftedElement inverse(const CircleLiftedElement& x) {
    // eps^{-m} = eps^m for eps = +-1
    return {-x.m, -detail::eps_pow(x.eps, x.m) * x.n, x.eps};
}

inline bool operator==(const CircleLiftedElement& a, const CircleLiftedElement& b) {
    return a.eps == b.eps && a.m == b.m && a.n == b.n;
}

inline CircleLiftedElement commutator(const CircleLiftedElement& x, const CircleLiftedElement& y) {
    return multiply(multiply(x, y), multiply(inverse(x), inverse(y)));
}

/// Shared context for Z x_A Z^n: the unimodular matrix A. Stateless and
/// immutable; negative powers go through the exact integer inverse.
class ToralContext {
public:
    explicit ToralContext(IntegerMatrix a) : a_(std::move(a)) {
        if (!a_.is_unimodular())
            throw NotUnimodularError("lifted toral group needs a unimodular matrix");
    }

    const IntegerMatrix& matrix() const { return a_; }
    std::size_t dim() const { return a_.dim(); }

    IntegerMatrix power(long k) const { return a_.pow(k); }

    bool operator==(const ToralContext& o) const { return a_ == o.a_; }

private:
    IntegerMatrix a_;
};

using ToralContextPtr = std::shared_ptr<const ToralContext>;

inline ToralContextPtr make_toral_context(IntegerMatrix a) {
    return std::make_shared<const ToralContext>(std::move(a));
}

/// Element (k, v) of Z x_A Z^n: (k,v)(k',v') = (k+k', v + A^k v').
struct ToralLiftedElement {
    long k;
    IntVec v;
    ToralContextPtr ctx;
};

inline ToralLiftedElement toral_element(const ToralContextPtr& ctx, long k, IntVec v) {
    if (!ctx) throw DomainError("null toral context");
    if (v.size() != ctx->dim()) throw DimensionMismatchError("translation part has wrong length");
    return {k, std::move(v), ctx};
}

inline ToralLiftedElement toral_identity(const ToralContextPtr& ctx) {
    return toral_element(ctx, 0, IntVec(ctx->dim(), Int(0)));
}

namespace detail {
inline void require_same_context(const ToralLiftedElement& x, const ToralLiftedElement& y) {
    if (!x.ctx || !y.ctx) throw DomainError("null toral context");
    if (!(x.ctx == y.ctx || *x.ctx == *y.ctx))
        throw ContextMismatchError("elements built over different matrices");
}
}  // namespace detail

inline ToralLiftedElement multiply(const ToralLiftedElement& x, const ToralLiftedElement& y) {
    detail::require_same_context(x, y);
    IntVec w = x.ctx->power(x.k).apply(y.v);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += x.v[i];
    return {x.k + y.k, std::move(w), x.ctx};
}

inline ToralLiftedElement inverse(const ToralLiftedElement& x) {
    // (k, v)^{-1} = (-k, -A^{-k} v)
    IntVec w = x.ctx->power(-x.k).apply(x.v);
    for (auto& c : w) c = -c;
    return {-x.k, std::move(w), x.ctx};
}

inline bool operator==(const ToralLiftedElement& a, const ToralLiftedElement& b) {
    return a.k == b.k && a.v == b.v && *a.ctx == *b.ctx;
}

/// x y x^{-1} y^{-1}; always lands in 0 x Z^n, with translation part
/// v + A^k v' - A^{k'} v - v'.
inline ToralLiftedElement commutator(const ToralLiftedElement& x, const ToralLiftedElement& y) {
    ToralLiftedElement c = multiply(multiply(x, y), multiply(inverse(x), inverse(y)));
    if (c.k != 0) throw InternalError("toral commutator left the translation subgroup");
    return c;
}

struct CommutatorLattice {
    LatticeBasis basis;
    std::optional<Int> index;  // [Z^n : L], empty = infinite
};

/// Lattice spanned by the translation parts of commutators with exponents
/// |k| <= k_max: concretely the columns of (I - A^k) for 1 <= |k| <= k_max
/// plus the general commutators of (1, e_i) against (k, e_j). For a
/// hyperbolic A the k = 1 columns already have full rank (1 is not an
/// eigenvalue), so the index is finite; it is reported, not asserted,
/// to be 1.
inline CommutatorLattice commutator_lattice(const IntegerMatrix& a, long k_max) {
    if (k_max < 1) throw DomainError("k_max must be positive");
    auto ctx = make_toral_context(a);
    std::size_t n = a.dim();
    std::vector<IntVec> gens;
    IntegerMatrix id = IntegerMatrix::identity(n);
    for (long k = 1; k <= k_max; ++k) {
        for (long s : {k, -k}) {
            IntegerMatrix diff = id - ctx->power(s);
            for (std::size_t j = 0; j < n; ++j) {
                IntVec col(n);
                for (std::size_t i = 0; i < n; ++i) col[i] = diff.at(i, j);
                gens.push_back(std::move(col));
            }
        }
    }
    // a few general commutators; they lie in the same span but keep the
    // generating set honest about its definition
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            IntVec ei(n, Int(0)), ej(n, Int(0));
            ei[i] = 1;
            ej[j] = 1;
            auto c = commutator(toral_element(ctx, 1, ei), toral_element(ctx, std::min(k_max, 2L), ej));
            gens.push_back(c.v);
        }
    LatticeBasis basis = hnf(gens, n);
    auto index = basis.index();
    return {std::move(basis), std::move(index)};
}

}  // namespace orbistack
