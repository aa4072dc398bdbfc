#pragma once

#include <string>
#include <vector>

#include "orbistack/errors.hpp"
#include "orbistack/matrix.hpp"
#include "orbistack/numeric.hpp"

namespace orbistack {

/// Dense integer polynomial, coefficients by ascending degree.
/// The zero polynomial has an empty coefficient list.
class IntegerPolynomial {
public:
    IntegerPolynomial() = default;

    explicit IntegerPolynomial(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

    IntegerPolynomial(std::initializer_list<long> coeffs) {
        for (long v : coeffs) c_.emplace_back(v);
        trim();
    }

    static IntegerPolynomial x_power(std::size_t k) {
        std::vector<Int> c(k + 1, Int(0));
        c[k] = 1;
        return IntegerPolynomial(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    const Int& coeff(std::size_t k) const {
        static const Int zero(0);
        return k < c_.size() ? c_[k] : zero;
    }
    const std::vector<Int>& coeffs() const { return c_; }

    const Int& leading() const {
        if (is_zero()) throw DomainError("zero polynomial has no leading coefficient");
        return c_.back();
    }

    bool is_monic() const { return !is_zero() && c_.back() == 1; }

    bool operator==(const IntegerPolynomial& o) const { return c_ == o.c_; }
    bool operator!=(const IntegerPolynomial& o) const { return !(*this == o); }

    Int eval(const Int& x) const {
        Int r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    Rat eval(const Rat& x) const {
        Rat r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    IntegerPolynomial derivative() const {
        if (c_.size() <= 1) return IntegerPolynomial();
        std::vector<Int> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = Int(k) * c_[k];
        return IntegerPolynomial(std::move(d));
    }

    IntegerPolynomial operator*(const IntegerPolynomial& o) const {
        if (is_zero() || o.is_zero()) return IntegerPolynomial();
        std::vector<Int> r(c_.size() + o.c_.size() - 1, Int(0));
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        return IntegerPolynomial(std::move(r));
    }

    IntegerPolynomial operator+(const IntegerPolynomial& o) const {
        std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
        return IntegerPolynomial(std::move(r));
    }

    IntegerPolynomial operator-(const IntegerPolynomial& o) const {
        std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) - o.coeff(i);
        return IntegerPolynomial(std::move(r));
    }

    /// Coefficient-reversed polynomial x^deg * p(1/x).
    IntegerPolynomial reversed() const {
        std::vector<Int> r(c_.rbegin(), c_.rend());
        return IntegerPolynomial(std::move(r));
    }

    Int content() const {
        Int g = 0;
        for (const auto& v : c_) g = gcd_int(g, v);
        return g;
    }

    /// Primitive part with positive leading coefficient.
    IntegerPolynomial primitive_part() const {
        if (is_zero()) return *this;
        Int g = content();
        if (c_.back() < 0) g = -g;
        std::vector<Int> r(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = divexact(c_[i], g);
        return IntegerPolynomial(std::move(r));
    }

    /// "x^2 - 3x + 1"-style rendering, for reports and errors.
    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (int k = degree(); k >= 0; --k) {
            const Int& a = coeff(k);
            if (a == 0) continue;
            Int m = abs_int(a);
            if (s.empty())
                s += (a < 0 ? "-" : "");
            else
                s += (a < 0 ? " - " : " + ");
            if (m != 1 || k == 0) s += m.get_str();
            if (k > 0) s += (m != 1 ? "*x" : "x");
            if (k > 1) s += "^" + std::to_string(k);
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Int> c_;
};

/// Pseudo-remainder of a by b (b nonzero). Only the root set is
/// meaningful; the scale factor is an unspecified power of b's leading
/// coefficient, so do not use this where signs matter.
inline IntegerPolynomial pseudo_rem(IntegerPolynomial a, const IntegerPolynomial& b) {
    if (b.is_zero()) throw DomainError("pseudo-division by zero polynomial");
    const Int& lb = b.leading();
    while (!a.is_zero() && a.degree() >= b.degree()) {
        int shift = a.degree() - b.degree();
        Int la = a.leading();
        std::vector<Int> r(a.coeffs().size(), Int(0));
        for (std::size_t i = 0; i < a.coeffs().size(); ++i) r[i] = lb * a.coeff(i);
        for (int i = 0; i <= b.degree(); ++i) r[i + shift] -= la * b.coeff(i);
        r.resize(a.coeffs().size() - 1);
        a = IntegerPolynomial(std::move(r));
    }
    return a;
}

/// Primitive gcd with positive leading coefficient.
inline IntegerPolynomial poly_gcd(IntegerPolynomial a, IntegerPolynomial b) {
    if (a.is_zero()) return b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    a = a.primitive_part();
    b = b.primitive_part();
    while (!b.is_zero()) {
        IntegerPolynomial r = pseudo_rem(a, b).primitive_part();
        a = std::move(b);
        b = std::move(r);
    }
    return a.primitive_part();
}

/// Exact quotient a / b when b divides a over Q; result is primitive.
inline IntegerPolynomial poly_divide_exact(const IntegerPolynomial& a, const IntegerPolynomial& b) {
    if (b.is_zero()) throw DomainError("division by zero polynomial");
    if (a.is_zero()) return IntegerPolynomial();
    if (a.degree() < b.degree()) throw DomainError("poly_divide_exact: degree mismatch");
    std::vector<Rat> rem(a.coeffs().begin(), a.coeffs().end());
    std::vector<Rat> quot(a.degree() - b.degree() + 1, Rat(0));
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
        Rat f = rem[k + b.degree()] / Rat(b.leading());
        quot[k] = f;
        for (int i = 0; i <= b.degree(); ++i) rem[k + i] -= f * Rat(b.coeff(i));
    }
    for (const auto& v : rem)
        if (v != 0) throw DomainError("poly_divide_exact: remainder is nonzero");
    Int den = 1;
    for (const auto& v : quot) den = lcm_int(den, v.get_den());
    std::vector<Int> c(quot.size());
    for (std::size_t i = 0; i < quot.size(); ++i) c[i] = Int(quot[i] * den);
    return IntegerPolynomial(std::move(c)).primitive_part();
}

/// Monic characteristic polynomial, computed exactly by the
/// Faddeev-LeVerrier recurrence (all divisions are exact).
inline IntegerPolynomial charpoly(const IntegerMatrix& a) {
    std::size_t n = a.dim();
    std::vector<Int> c(n + 1, Int(0));
    c[n] = 1;
    IntegerMatrix m(n);  // M_0 = 0, c_0 = 1: then M_k = A(M_{k-1} + c_{k-1} I)
    Int ck = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        IntegerMatrix t = m;
        for (std::size_t i = 0; i < n; ++i) t.at(i, i) += ck;
        m = a * t;
        ck = divexact(-m.trace(), Int(k));
        c[n - k] = ck;
    }
    return IntegerPolynomial(std::move(c));
}

namespace detail {

/// Polynomial over Q, ascending coefficients, used for sign-exact Sturm
/// chains where pseudo-remainder rescaling would be unsound.
using QPoly = std::vector<Rat>;

inline void qtrim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly to_qpoly(const IntegerPolynomial& p) {
    QPoly q(p.coeffs().begin(), p.coeffs().end());
    return q;
}

inline Rat qeval(const QPoly& p, const Rat& x) {
    Rat r = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
    return r;
}

inline QPoly qderivative(const QPoly& p) {
    if (p.size() <= 1) return {};
    QPoly d(p.size() - 1);
    for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = Rat(static_cast<long>(k)) * p[k];
    return d;
}

/// Ordinary remainder over Q (sign-exact).
inline QPoly qrem(QPoly a, const QPoly& b) {
    while (a.size() >= b.size() && !a.empty()) {
        Rat f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
        a.pop_back();
        qtrim(a);
    }
    return a;
}

inline int sturm_sign_changes(const std::vector<QPoly>& chain, const Rat& x) {
    int changes = 0, prev = 0;
    for (const auto& p : chain) {
        int s = sign(qeval(p, x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

/// Exact division of p by (x - r) for a rational root r of p.
inline IntegerPolynomial divide_out_root(const IntegerPolynomial& p, const Rat& r) {
    std::vector<Rat> q(p.degree(), Rat(0));
    Rat carry = p.coeff(p.degree());
    for (int k = p.degree() - 1; k >= 0; --k) {
        q[k] = carry;
        carry = Rat(p.coeff(k)) + r * carry;
    }
    if (carry != 0) throw InternalError("divide_out_root: not a root");
    Int den = 1;
    for (const auto& v : q) den = lcm_int(den, v.get_den());
    std::vector<Int> c(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) c[i] = Int(q[i] * den);
    return IntegerPolynomial(std::move(c)).primitive_part();
}

}  // namespace detail

/// Squarefree part p / gcd(p, p'), primitive.
inline IntegerPolynomial squarefree_part(const IntegerPolynomial& p) {
    if (p.is_zero()) return p;
    IntegerPolynomial g = poly_gcd(p, p.derivative());
    if (g.degree() <= 0) return p.primitive_part();
    return poly_divide_exact(p.primitive_part(), g);
}

/// Exact count of distinct real roots of p in the interval (lo, hi),
/// open (default) or closed at both ends. Sturm sequences over Q; any
/// root sitting exactly on an endpoint is divided out first so the
/// endpoint evaluations are nonzero.
inline int count_real_roots_in(const IntegerPolynomial& p, const Rat& lo, const Rat& hi,
                               bool open_endpoints = true) {
    if (p.is_zero()) throw DomainError("root counting needs a nonzero polynomial");
    if (lo > hi) return 0;
    IntegerPolynomial sf = squarefree_part(p);
    if (lo == hi) {
        if (open_endpoints) return 0;
        return sf.eval(lo) == 0 ? 1 : 0;
    }

    bool root_at_lo = false, root_at_hi = false;
    while (sf.degree() >= 1 && sf.eval(lo) == 0) {
        root_at_lo = true;
        sf = detail::divide_out_root(sf, lo);
    }
    while (sf.degree() >= 1 && sf.eval(hi) == 0) {
        root_at_hi = true;
        sf = detail::divide_out_root(sf, hi);
    }
    int interior = 0;
    if (sf.degree() >= 1) {
        std::vector<detail::QPoly> chain;
        chain.push_back(detail::to_qpoly(sf));
        chain.push_back(detail::qderivative(chain[0]));
        while (chain.back().size() >= 2) {
            detail::QPoly r = detail::qrem(chain[chain.size() - 2], chain.back());
            if (r.empty()) break;
            for (auto& v : r) v = -v;
            chain.push_back(std::move(r));
        }
        interior = detail::sturm_sign_changes(chain, lo) - detail::sturm_sign_changes(chain, hi);
    }
    if (!open_endpoints) interior += (root_at_lo ? 1 : 0) + (root_at_hi ? 1 : 0);
    return interior;
}

}  // namespace orbistack
