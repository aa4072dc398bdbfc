#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbistack/errors.hpp"
#include "orbistack/numeric.hpp"

namespace orbistack {

using IntVec = std::vector<Int>;

/// Sublattice of Z^n in Hermite normal form.
///
/// Convention (fixed; any consistent one would do, but this one is pinned
/// and relied on for byte-identical output): basis vectors are columns,
/// listed so that their pivot rows strictly increase; entries above each
/// pivot are zero; pivots are positive; and for every pivot row p_j the
/// entries of the *earlier* basis vectors at row p_j are reduced into
/// [0, pivot). For a full-rank lattice this is the lower-triangular HNF
/// with positive diagonal and reduced sub-diagonal entries in each row;
/// the index in Z^n is the product of the diagonal.
struct LatticeBasis {
    std::size_t ambient = 0;
    std::vector<IntVec> basis;       // columns, pivot rows increasing
    std::vector<std::size_t> pivots; // pivot row of each basis vector

    std::size_t rank() const { return basis.size(); }

    /// Index [Z^n : L], or nullopt when the rank is deficient (infinite).
    std::optional<Int> index() const {
        if (rank() < ambient) return std::nullopt;
        Int idx = 1;
        for (std::size_t j = 0; j < basis.size(); ++j) idx *= basis[j][pivots[j]];
        return idx;
    }

    /// Exact membership test via back-substitution along the pivots.
    bool contains(IntVec v) const {
        if (v.size() != ambient) throw DimensionMismatchError("vector/lattice dimension mismatch");
        for (std::size_t j = 0; j < basis.size(); ++j) {
            const Int& piv = basis[j][pivots[j]];
            const Int& cur = v[pivots[j]];
            if (cur == 0) continue;
            if (!mpz_divisible_p(cur.get_mpz_t(), piv.get_mpz_t())) return false;
            Int q = divexact(cur, piv);
            for (std::size_t i = 0; i < ambient; ++i) v[i] -= q * basis[j][i];
        }
        for (const auto& x : v)
            if (x != 0) return false;
        return true;
    }

    bool contains_lattice(const LatticeBasis& other) const {
        for (const auto& b : other.basis)
            if (!contains(b)) return false;
        return true;
    }

    bool operator==(const LatticeBasis& o) const {
        return ambient == o.ambient && basis == o.basis && pivots == o.pivots;
    }
};

namespace detail {

/// Column elimination into upper-staircase form. Operates in place on a
/// list of columns; if `transform` is nonnull the same unimodular column
/// operations are applied to it (it should start as an identity set of
/// columns). Returns the pivot rows of the first `r` columns; columns
/// beyond r are zero.
inline std::vector<std::size_t> columns_to_staircase(std::vector<IntVec>& cols, std::size_t nrows,
                                                     std::vector<IntVec>* transform = nullptr) {
    std::vector<std::size_t> pivots;
    std::size_t t = 0;  // next pivot slot
    auto colop_swap = [&](std::size_t i, std::size_t j) {
        std::swap(cols[i], cols[j]);
        if (transform) std::swap((*transform)[i], (*transform)[j]);
    };
    auto colop_neg = [&](std::size_t i) {
        for (auto& v : cols[i]) v = -v;
        if (transform)
            for (auto& v : (*transform)[i]) v = -v;
    };
    // replace columns (i, j) by (x*ci + y*cj, u*ci + v*cj), det = xv - yu = +-1
    auto colop_combine = [&](std::size_t i, std::size_t j, const Int& x, const Int& y,
                             const Int& u, const Int& v) {
        for (std::size_t r = 0; r < cols[i].size(); ++r) {
            Int a = cols[i][r], b = cols[j][r];
            cols[i][r] = x * a + y * b;
            cols[j][r] = u * a + v * b;
        }
        if (transform)
            for (std::size_t r = 0; r < (*transform)[i].size(); ++r) {
                Int a = (*transform)[i][r], b = (*transform)[j][r];
                (*transform)[i][r] = x * a + y * b;
                (*transform)[j][r] = u * a + v * b;
            }
    };

    for (std::size_t row = 0; row < nrows && t < cols.size(); ++row) {
        // clear row in all columns >= t down to a single pivot column
        std::size_t lead = cols.size();
        for (std::size_t j = t; j < cols.size(); ++j) {
            if (cols[j][row] == 0) continue;
            if (lead == cols.size()) {
                lead = j;
                continue;
            }
            // combine columns lead and j to put gcd in lead, zero in j
            Int a = cols[lead][row], b = cols[j][row];
            Int g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            colop_combine(lead, j, x, y, divexact(-b, g), divexact(a, g));
        }
        if (lead == cols.size()) continue;
        colop_swap(t, lead);
        if (cols[t][row] < 0) colop_neg(t);
        pivots.push_back(row);
        ++t;
    }
    return pivots;
}

}  // namespace detail

/// Hermite normal form of the sublattice generated by `generators`.
/// Idempotent: feeding the returned basis back in reproduces it.
inline LatticeBasis hnf(const std::vector<IntVec>& generators, std::size_t n) {
    for (const auto& v : generators)
        if (v.size() != n) throw DimensionMismatchError("generator length does not match ambient dimension");
    std::vector<IntVec> cols = generators;
    auto pivots = detail::columns_to_staircase(cols, n);
    cols.resize(pivots.size());
    // reduce earlier columns at each pivot row
    for (std::size_t j = 0; j < cols.size(); ++j) {
        const Int& piv = cols[j][pivots[j]];
        for (std::size_t k = 0; k < j; ++k) {
            Int q = fdiv(cols[k][pivots[j]], piv);
            if (q == 0) continue;
            for (std::size_t i = 0; i < n; ++i) cols[k][i] -= q * cols[j][i];
        }
    }
    LatticeBasis b;
    b.ambient = n;
    b.basis = std::move(cols);
    b.pivots = std::move(pivots);
    return b;
}

/// Basis of the integer kernel {x : M x = 0} of the linear map given by
/// `columns` (the image of the k-th standard basis vector), via a
/// unimodular column reduction. The result is a basis of the full
/// integer kernel (saturated by construction).
inline std::vector<IntVec> integer_kernel(std::vector<IntVec> cols, std::size_t nrows) {
    std::size_t k = cols.size();
    std::vector<IntVec> transform(k, IntVec(k, Int(0)));
    for (std::size_t j = 0; j < k; ++j) transform[j][j] = 1;
    auto pivots = detail::columns_to_staircase(cols, nrows, &transform);
    std::vector<IntVec> kernel;
    for (std::size_t j = pivots.size(); j < k; ++j) kernel.push_back(transform[j]);
    return kernel;
}

}  // namespace orbistack
