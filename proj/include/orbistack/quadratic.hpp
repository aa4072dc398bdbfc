#pragma once

#include <cmath>
#include <compare>
#include <string>

#include "orbistack/errors.hpp"
#include "orbistack/matrix.hpp"
#include "orbistack/numeric.hpp"

namespace orbistack {

/// Exact element (a + b*sqrt(d))/c of a real quadratic field, or of Q.
///
/// Canonical form, established at construction and preserved by every
/// operation:
///   - c >= 1 and gcd(a, b, c) = 1;
///   - d is squarefree and >= 2 whenever b != 0 (square factors of the
///     radicand are folded into b at construction);
///   - rational values are exactly those with b = 0, and then d = 0 acts
///     as the "rational" field tag. One arithmetic/comparison path serves
///     both rationals and irrationals.
///
/// Arithmetic between elements of two distinct fields Q(sqrt(d1)),
/// Q(sqrt(d2)) throws MixedFieldsError; rationals combine with anything.
class QuadraticNumber {
public:
    QuadraticNumber() : a_(0), b_(0), c_(1), d_(0) {}

    QuadraticNumber(Int a, Int b, Int c, Int d) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
        normalize();
    }

    static QuadraticNumber rational(Int num, Int den = 1) {
        return QuadraticNumber(std::move(num), 0, std::move(den), 0);
    }

    static QuadraticNumber from_rat(const Rat& q) {
        return QuadraticNumber(q.get_num(), 0, q.get_den(), 0);
    }

    /// sqrt(n) for n >= 1, with square extraction (sqrt(8) = 2*sqrt(2)).
    static QuadraticNumber sqrt_of(const Int& n) {
        if (n <= 0) throw DomainError("sqrt argument must be positive");
        return QuadraticNumber(0, 1, 1, n);
    }

    const Int& a() const { return a_; }
    const Int& b() const { return b_; }
    const Int& c() const { return c_; }
    const Int& d() const { return d_; }

    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    Rat rational_value() const {
        if (!is_rational()) throw DomainError("not a rational number");
        Rat q(a_, c_);
        q.canonicalize();
        return q;
    }

    bool operator==(const QuadraticNumber& o) const {
        return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
    }
    bool operator!=(const QuadraticNumber& o) const { return !(*this == o); }

    QuadraticNumber operator-() const { return QuadraticNumber(-a_, -b_, c_, d_); }

    QuadraticNumber operator+(const QuadraticNumber& o) const {
        Int d = common_field(o);
        return QuadraticNumber(a_ * o.c_ + o.a_ * c_, b_ * o.c_ + o.b_ * c_, c_ * o.c_, d);
    }

    QuadraticNumber operator-(const QuadraticNumber& o) const { return *this + (-o); }

    QuadraticNumber operator*(const QuadraticNumber& o) const {
        Int d = common_field(o);
        return QuadraticNumber(a_ * o.a_ + b_ * o.b_ * d, a_ * o.b_ + b_ * o.a_, c_ * o.c_, d);
    }

    /// Multiplicative inverse: c*(a - b*sqrt(d)) / (a^2 - b^2 d).
    QuadraticNumber inverse() const {
        if (is_zero()) throw DomainError("inverse of zero");
        Int norm = a_ * a_ - b_ * b_ * d_;
        // norm = 0 would force a = b = 0 since d is squarefree >= 2.
        if (norm == 0) throw InternalError("vanishing norm on a nonzero element");
        if (norm < 0) return QuadraticNumber(-c_ * a_, c_ * b_, -norm, d_);
        return QuadraticNumber(c_ * a_, -c_ * b_, norm, d_);
    }

    QuadraticNumber operator/(const QuadraticNumber& o) const { return *this * o.inverse(); }

    /// Exact sign under the real embedding with sqrt(d) > 0.
    int sign() const {
        if (b_ == 0) return orbistack::sign(a_);
        if (a_ == 0) return orbistack::sign(b_);
        int sa = orbistack::sign(a_), sb = orbistack::sign(b_);
        if (sa == sb) return sa;
        // Opposite signs: compare a^2 against b^2 d.
        int cmp = orbistack::sign(Int(a_ * a_ - b_ * b_ * d_));
        return cmp == 0 ? 0 : (cmp > 0 ? sa : sb);
    }

    std::strong_ordering operator<=>(const QuadraticNumber& o) const {
        int s = (*this - o).sign();
        if (s < 0) return std::strong_ordering::less;
        if (s > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    Int floor() const {
        if (is_rational()) return fdiv(a_, c_);
        // floor((a + b*sqrt(d))/c) with c > 0: floor of the numerator is
        // exact because b*sqrt(d) is irrational.
        Int s = isqrt(b_ * b_ * d_);  // floor(|b| sqrt(d))
        Int num = (b_ > 0) ? Int(a_ + s) : Int(a_ - s - 1);  // floor(a + b sqrt d)
        return fdiv(num, c_);
    }

    double to_double() const {
        double x = a_.get_d();
        if (b_ != 0) x += b_.get_d() * std::sqrt(d_.get_d());
        return x / c_.get_d();
    }

    /// Validates the canonical-form invariants (used by property tests).
    bool is_canonical() const {
        if (c_ < 1) return false;
        if (gcd_int(gcd_int(a_, b_), c_) != 1) return false;
        if (b_ == 0) return d_ == 0;
        if (d_ < 2) return false;
        auto [s, f] = extract_square(d_);
        return s == 1 && f == d_;
    }

private:
    /// Returns the field tag of the combination, throwing on a genuine mix.
    Int common_field(const QuadraticNumber& o) const {
        if (b_ == 0) return o.d_;
        if (o.b_ == 0) return d_;
        if (d_ == o.d_) return d_;
        throw MixedFieldsError("cannot combine elements of Q(sqrt(" + d_.get_str() +
                               ")) and Q(sqrt(" + o.d_.get_str() + "))");
    }

    void normalize() {
        if (c_ == 0) throw ZeroDenominatorError("zero denominator in quadratic number");
        if (b_ != 0) {
            if (d_ <= 0) throw DomainError("radicand must be positive");
            auto [s, f] = extract_square(d_);
            b_ *= s;
            d_ = f;
            if (d_ == 1) {  // perfect-square radicand: the value is rational
                a_ += b_;
                b_ = 0;
            }
        }
        if (b_ == 0) d_ = 0;
        if (c_ < 0) {
            a_ = -a_;
            b_ = -b_;
            c_ = -c_;
        }
        Int g = gcd_int(gcd_int(a_, b_), c_);
        if (g > 1) {
            a_ /= g;
            b_ /= g;
            c_ /= g;
        }
    }

    Int a_, b_, c_, d_;
};

/// Action of a unimodular 2x2 integer matrix on a quadratic number by a
/// homography.
///
/// Convention (fixed deliberately, the transpose convention is equally
/// common elsewhere): the matrix
///
///     M = [[a, c],
///          [b, d]]
///
/// sends tau to (a*tau + b) / (c*tau + d). With row-major storage this
/// reads (M00*tau + M10) / (M01*tau + M11). Composition is contravariant
/// under this convention:
///
///     apply(M*N, tau) = apply(N, apply(M, tau)).
inline QuadraticNumber qn_apply_homography(const IntegerMatrix& m, const QuadraticNumber& tau) {
    if (m.dim() != 2) throw DimensionMismatchError("homography needs a 2x2 matrix");
    if (!m.is_unimodular()) throw NotUnimodularError("homography matrix must have det +-1");
    QuadraticNumber num = tau * QuadraticNumber::rational(m.at(0, 0)) + QuadraticNumber::rational(m.at(1, 0));
    QuadraticNumber den = tau * QuadraticNumber::rational(m.at(0, 1)) + QuadraticNumber::rational(m.at(1, 1));
    if (den.is_zero())
        throw ZeroDenominatorError("homography has a pole at this rational input");
    return num / den;
}

}  // namespace orbistack
