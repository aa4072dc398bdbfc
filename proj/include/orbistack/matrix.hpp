#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "orbistack/errors.hpp"
#include "orbistack/numeric.hpp"

namespace orbistack {

/// Square integer matrix with exact arithmetic throughout.
/// Entries are stored row-major: at(i, j) is row i, column j.
class IntegerMatrix {
public:
    IntegerMatrix() : n_(0) {}

    explicit IntegerMatrix(std::size_t n) : n_(n), e_(n * n, Int(0)) {}

    IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows) {
        n_ = rows.size();
        e_.reserve(n_ * n_);
        for (const auto& row : rows) {
            if (row.size() != n_) throw DimensionMismatchError("matrix literal is not square");
            for (long v : row) e_.emplace_back(v);
        }
    }

    static IntegerMatrix identity(std::size_t n) {
        IntegerMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t dim() const { return n_; }

    Int& at(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }

    bool operator==(const IntegerMatrix& o) const { return n_ == o.n_ && e_ == o.e_; }
    bool operator!=(const IntegerMatrix& o) const { return !(*this == o); }

    IntegerMatrix operator*(const IntegerMatrix& o) const {
        require_same_dim(o);
        IntegerMatrix r(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t k = 0; k < n_; ++k) {
                const Int& a = at(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < n_; ++j) r.at(i, j) += a * o.at(k, j);
            }
        return r;
    }

    IntegerMatrix operator+(const IntegerMatrix& o) const {
        require_same_dim(o);
        IntegerMatrix r(n_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
        return r;
    }

    IntegerMatrix operator-(const IntegerMatrix& o) const {
        require_same_dim(o);
        IntegerMatrix r(n_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
        return r;
    }

    IntegerMatrix operator-() const {
        IntegerMatrix r(n_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = -e_[i];
        return r;
    }

    std::vector<Int> apply(const std::vector<Int>& v) const {
        if (v.size() != n_) throw DimensionMismatchError("vector length does not match matrix");
        std::vector<Int> r(n_, Int(0));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) r[i] += at(i, j) * v[j];
        return r;
    }

    IntegerMatrix transpose() const {
        IntegerMatrix r(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    Int trace() const {
        Int t = 0;
        for (std::size_t i = 0; i < n_; ++i) t += at(i, i);
        return t;
    }

    /// Exact determinant via fraction-free (Bareiss) elimination.
    Int det() const {
        if (n_ == 0) return 1;
        if (n_ == 1) return at(0, 0);
        if (n_ == 2) return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
        std::vector<Int> a = e_;
        auto el = [&](std::size_t i, std::size_t j) -> Int& { return a[i * n_ + j]; };
        Int prev = 1;
        int sign_flips = 0;
        for (std::size_t k = 0; k + 1 < n_; ++k) {
            if (el(k, k) == 0) {
                std::size_t p = k + 1;
                while (p < n_ && el(p, k) == 0) ++p;
                if (p == n_) return 0;
                for (std::size_t j = 0; j < n_; ++j) std::swap(el(k, j), el(p, j));
                ++sign_flips;
            }
            for (std::size_t i = k + 1; i < n_; ++i)
                for (std::size_t j = k + 1; j < n_; ++j)
                    el(i, j) = divexact(el(i, j) * el(k, k) - el(i, k) * el(k, j), prev);
            prev = el(k, k);
        }
        Int d = el(n_ - 1, n_ - 1);
        return (sign_flips % 2) ? Int(-d) : d;
    }

    bool is_unimodular() const {
        Int d = det();
        return d == 1 || d == -1;
    }

    /// Adjugate: adj(A) * A = det(A) * I.
    IntegerMatrix adjugate() const {
        IntegerMatrix r(n_);
        if (n_ == 1) {
            r.at(0, 0) = 1;
            return r;
        }
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) {
                Int m = minor_det(i, j);
                r.at(j, i) = ((i + j) % 2) ? Int(-m) : m;
            }
        return r;
    }

    /// Exact integer inverse; exists iff the matrix is unimodular.
    IntegerMatrix inverse() const {
        Int d = det();
        if (d != 1 && d != -1)
            throw NotUnimodularError("matrix has no integer inverse (det = " + d.get_str() + ")");
        IntegerMatrix adj = adjugate();
        if (d == -1)
            for (auto& v : adj.e_) v = -v;
        return adj;
    }

    /// Integer power; negative exponents require a unimodular matrix.
    IntegerMatrix pow(long k) const {
        IntegerMatrix base = k >= 0 ? *this : inverse();
        unsigned long e = k >= 0 ? static_cast<unsigned long>(k) : static_cast<unsigned long>(-k);
        IntegerMatrix r = identity(n_);
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    /// Compact literal form: [[2,1],[1,1]].
    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < n_; ++i) {
            s += (i ? ",[" : "[");
            for (std::size_t j = 0; j < n_; ++j) {
                if (j) s += ",";
                s += at(i, j).get_str();
            }
            s += "]";
        }
        return s + "]";
    }

    const std::vector<Int>& entries() const { return e_; }

private:
    void require_same_dim(const IntegerMatrix& o) const {
        if (n_ != o.n_) throw DimensionMismatchError("matrix dimensions differ");
    }

    Int minor_det(std::size_t row, std::size_t col) const {
        IntegerMatrix m(n_ - 1);
        for (std::size_t i = 0, mi = 0; i < n_; ++i) {
            if (i == row) continue;
            for (std::size_t j = 0, mj = 0; j < n_; ++j) {
                if (j == col) continue;
                m.at(mi, mj) = at(i, j);
                ++mj;
            }
            ++mi;
        }
        return m.det();
    }

    std::size_t n_;
    std::vector<Int> e_;
};

/// Total order used whenever a single canonical matrix has to be picked
/// out of a set of witnesses: entries are compared row-major, and each
/// entry by (|v|, sign) with the positive value first. Under this order
/// the identity precedes its negative and small certificates precede
/// large ones.
inline bool matrix_less(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    const auto& x = a.entries();
    const auto& y = b.entries();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == y[i]) continue;
        Int ax = abs_int(x[i]), ay = abs_int(y[i]);
        if (ax != ay) return ax < ay;
        return x[i] > y[i];  // same magnitude: positive first
    }
    return false;
}

}  // namespace orbistack
