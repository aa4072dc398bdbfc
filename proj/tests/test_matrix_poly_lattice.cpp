#include <catch2/catch.hpp>

#include <algorithm>
#include <random>

#include "orbistack/lattice.hpp"
#include "orbistack/matrix.hpp"
#include "orbistack/polynomial.hpp"

using namespace orbistack;

namespace {

// Independent oracle for real-root counting: Descartes-bound bisection
// (Vincent-Collins-Akritas root isolation), a different algorithm family
// from the Sturm chains it checks. Exact rational arithmetic only.

// Sign variations in the coefficients of (1+x)^n p((a + b x)/(1 + x)).
// Zero variations means no root of p in (a, b); one variation means
// exactly one.
int descartes_bound(const IntegerPolynomial& p, const Rat& a, const Rat& b) {
    int n = p.degree();
    // q1(x) = p(a + (b - a) x): Taylor shift by a, then scale by (b - a)
    std::vector<Rat> q(p.coeffs().begin(), p.coeffs().end());
    for (int i = 0; i < n; ++i)            // synthetic Horner shift by a
        for (int j = n - 1; j >= i; --j) q[j] += a * q[j + 1];
    Rat scale = b - a, pw = 1;
    for (int k = 1; k <= n; ++k) {
        pw *= scale;
        q[k] *= pw;
    }
    // q2(x) = (1+x)^n q1(1/(1+x)): reverse, then Taylor shift by 1
    std::reverse(q.begin(), q.end());
    for (int i = 0; i < n; ++i)
        for (int j = n - 1; j >= i; --j) q[j] += q[j + 1];
    int variations = 0, prev = 0;
    for (const auto& c : q) {
        int s = sign(c);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++variations;
        prev = s;
    }
    return variations;
}

// Distinct roots of p in the open interval (lo, hi); p(lo), p(hi) != 0.
int count_roots_oracle(const IntegerPolynomial& p_in, const Rat& lo, const Rat& hi) {
    IntegerPolynomial p = squarefree_part(p_in);
    if (p.degree() < 1) return 0;
    REQUIRE(p.eval(lo) != 0);
    REQUIRE(p.eval(hi) != 0);
    int v = descartes_bound(p, lo, hi);
    if (v <= 1) return v;
    // split the interval at a non-root point (a rational root can sit at
    // the midpoint; slide toward lo until clear, roots are finite)
    Rat mid = (lo + hi) / 2;
    for (long k = 3; p.eval(mid) == 0; k += 2) mid = lo + (hi - lo) / k;
    return count_roots_oracle(p, lo, mid) + count_roots_oracle(p, mid, hi);
}

}  // namespace

TEST_CASE("determinant, unimodularity, exact inverse") {
    IntegerMatrix cat{{2, 1}, {1, 1}};
    CHECK(cat.det() == 1);
    CHECK(cat.is_unimodular());
    CHECK(cat * cat.inverse() == IntegerMatrix::identity(2));

    IntegerMatrix m3{{1, 2, 3}, {0, 1, 4}, {5, 6, 0}};
    CHECK(m3.det() == 1);
    CHECK(m3 * m3.inverse() == IntegerMatrix::identity(3));
    CHECK(m3.inverse() * m3 == IntegerMatrix::identity(3));

    IntegerMatrix ns{{2, 0}, {0, 2}};
    CHECK(ns.det() == 4);
    CHECK_FALSE(ns.is_unimodular());
    CHECK_THROWS_AS(ns.inverse(), NotUnimodularError);

    std::mt19937 rng(3);
    std::uniform_int_distribution<long> e(-6, 6);
    for (int i = 0; i < 50; ++i) {
        IntegerMatrix a(3);
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c) a.at(r, c) = e(rng);
        // Bareiss determinant vs cofactor expansion through the adjugate:
        // A * adj(A) = det(A) I
        IntegerMatrix prod = a * a.adjugate();
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c)
                CHECK(prod.at(r, c) == (r == c ? a.det() : Int(0)));
    }
}

TEST_CASE("matrix powers with negative exponents") {
    IntegerMatrix cat{{2, 1}, {1, 1}};
    CHECK(cat.pow(0) == IntegerMatrix::identity(2));
    CHECK(cat.pow(3) == cat * cat * cat);
    CHECK(cat.pow(-2) * cat.pow(2) == IntegerMatrix::identity(2));
}

TEST_CASE("characteristic polynomials") {
    CHECK(charpoly(IntegerMatrix::identity(2)) == IntegerPolynomial{1, -2, 1});
    CHECK(charpoly(IntegerMatrix{{2, 1}, {1, 1}}) == IntegerPolynomial{1, -3, 1});
    CHECK(charpoly(IntegerMatrix{{0, -1}, {1, 0}}) == IntegerPolynomial{1, 0, 1});
    // degree-3 cross-check by direct expansion of det(xI - A)
    IntegerMatrix a{{1, 2, 0}, {-1, 0, 3}, {2, 1, 1}};
    auto f = charpoly(a);
    CHECK(f.is_monic());
    CHECK(f.degree() == 3);
    for (long x : {-3L, -1L, 0L, 2L, 5L}) {
        IntegerMatrix xi = IntegerMatrix::identity(3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                xi.at(i, j) = Int(x) * (i == j ? 1 : 0) - a.at(i, j);
        CHECK(f.eval(Int(x)) == xi.det());
    }
}

TEST_CASE("sturm root counting on pinned examples") {
    CHECK(count_real_roots_in(IntegerPolynomial{-2, 0, 1}, Rat(0), Rat(2)) == 1);   // x^2-2
    CHECK(count_real_roots_in(IntegerPolynomial{1, 0, 1}, Rat(-10), Rat(10)) == 0); // x^2+1
    // x^3 - 3x + 1: discriminant 81 > 0, three real roots, all in (-2, 2):
    // signs at -2,-1,0,1,2 are -,+,+,-,+ giving a root in each sign flip
    CHECK(count_real_roots_in(IntegerPolynomial{1, -3, 0, 1}, Rat(-2), Rat(2)) == 3);
    // endpoint handling: roots of x^2-1 at the closed ends
    CHECK(count_real_roots_in(IntegerPolynomial{-1, 0, 1}, Rat(-1), Rat(1), true) == 0);
    CHECK(count_real_roots_in(IntegerPolynomial{-1, 0, 1}, Rat(-1), Rat(1), false) == 2);
    // repeated roots are counted once: (x-1)^2 (x+2)
    IntegerPolynomial rep = IntegerPolynomial{-1, 1} * IntegerPolynomial{-1, 1} * IntegerPolynomial{2, 1};
    CHECK(count_real_roots_in(rep, Rat(-3), Rat(3)) == 2);
}

TEST_CASE("sturm agrees with the monotone-bracketing oracle") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<long> coef(-9, 9);
    std::uniform_int_distribution<int> deg(1, 6);
    int checked = 0;
    for (int i = 0; i < 120; ++i) {
        int n = deg(rng);
        std::vector<Int> c(n + 1);
        for (auto& v : c) v = coef(rng);
        if (c[n] == 0) c[n] = 1;
        IntegerPolynomial p(std::move(c));
        Rat lo(-12), hi(12);
        if (p.eval(lo) == 0 || p.eval(hi) == 0) continue;
        int oracle = count_roots_oracle(p, lo, hi);
        int sturm = count_real_roots_in(p, lo, hi);
        INFO(p.to_string());
        CHECK(sturm == oracle);
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("polynomial gcd and squarefree part") {
    IntegerPolynomial a = IntegerPolynomial{-1, 1} * IntegerPolynomial{1, 1};   // x^2-1
    IntegerPolynomial b = IntegerPolynomial{-1, 1} * IntegerPolynomial{3, 1};   // (x-1)(x+3)
    CHECK(poly_gcd(a, b) == IntegerPolynomial{-1, 1});
    IntegerPolynomial sq = IntegerPolynomial{-1, 1} * IntegerPolynomial{-1, 1};
    CHECK(squarefree_part(sq) == IntegerPolynomial{-1, 1});
}

TEST_CASE("hermite normal form: pinned examples") {
    SECTION("standard basis") {
        auto b = hnf({{Int(1), Int(0)}, {Int(0), Int(1)}}, 2);
        REQUIRE(b.rank() == 2);
        CHECK(b.basis[0] == IntVec{1, 0});
        CHECK(b.basis[1] == IntVec{0, 1});
        CHECK(b.index().value() == 1);
    }
    SECTION("doubled lattice") {
        auto b = hnf({{Int(2), Int(0)}, {Int(0), Int(2)}}, 2);
        REQUIRE(b.rank() == 2);
        CHECK(b.index().value() == 4);
    }
    SECTION("columns of I - A for the cat map have index 1") {
        // I - A = [[-1,-1],[-1,0]], det = -1, so the columns span all of Z^2
        auto b = hnf({{Int(-1), Int(-1)}, {Int(-1), Int(0)}}, 2);
        REQUIRE(b.rank() == 2);
        CHECK(b.index().value() == 1);
    }
    SECTION("rank-deficient input") {
        auto b = hnf({{Int(2), Int(4)}, {Int(1), Int(2)}, {Int(3), Int(6)}}, 2);
        CHECK(b.rank() == 1);
        CHECK_FALSE(b.index().has_value());
        CHECK(b.contains({Int(1), Int(2)}));
        CHECK_FALSE(b.contains({Int(1), Int(3)}));
    }
    SECTION("empty input") {
        auto b = hnf({}, 3);
        CHECK(b.rank() == 0);
        CHECK_FALSE(b.index().has_value());
    }
}

TEST_CASE("hnf is unique and idempotent") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<long> e(-8, 8);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 3;
        std::vector<IntVec> gens;
        for (int k = 0; k < 4; ++k) {
            IntVec v(n);
            for (auto& x : v) x = e(rng);
            gens.push_back(v);
        }
        auto b1 = hnf(gens, n);
        // shuffle and mix generators by unimodular column tricks
        std::vector<IntVec> mixed = gens;
        std::shuffle(mixed.begin(), mixed.end(), rng);
        for (std::size_t i = 0; i + 1 < mixed.size(); ++i)
            for (std::size_t r = 0; r < n; ++r) mixed[i][r] += 3 * mixed[i + 1][r];
        auto b2 = hnf(mixed, n);
        CHECK(b1 == b2);
        std::vector<IntVec> again = b1.basis;
        CHECK(hnf(again, n) == b1);
    }
}

TEST_CASE("integer kernel of a linear map") {
    // map Z^3 -> Z^2 with matrix rows (1 2 3; 2 4 6): kernel has rank 2
    std::vector<IntVec> cols = {{Int(1), Int(2)}, {Int(2), Int(4)}, {Int(3), Int(6)}};
    auto ker = integer_kernel(cols, 2);
    REQUIRE(ker.size() == 2);
    for (const auto& v : ker) {
        CHECK(v[0] * 1 + v[1] * 2 + v[2] * 3 == 0);
        CHECK(v[0] * 2 + v[1] * 4 + v[2] * 6 == 0);
    }
    // saturation: (0,3,-2) is in the kernel and must be generated
    auto lat = hnf(ker, 3);
    CHECK(lat.contains({Int(0), Int(3), Int(-2)}));
    CHECK(lat.contains({Int(1), Int(1), Int(-1)}));
}
