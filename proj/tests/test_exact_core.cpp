#include "doctest.h"
#include "helpers.hpp"

#include "skt/linalg.hpp"

using namespace skt;
using namespace skt::testing;

TEST_CASE("scalar arithmetic is an exact field with involutive conjugation") {
    Scalar a = S("1/2+1/3i"), b = S("-2+5i");
    CHECK(a + b - b == a);
    CHECK((a * b) / b == a);
    CHECK(a.conj().conj() == a);
    CHECK((a * b).conj() == a.conj() * b.conj());
    CHECK(a * a.inverse() == Scalar(1));
    CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
    CHECK(Scalar::i_pow(-1) == -Scalar::i());
    CHECK_THROWS_AS(Scalar().inverse(), std::invalid_argument);
}

TEST_CASE("scalar text round trip") {
    for (const char* txt : {"0", "2", "-1/2", "1i", "-3/4i", "1/2+1/2i", "2-3i", "-1-1i"}) {
        Scalar s = Scalar::parse(txt);
        CHECK(Scalar::parse(s.str()) == s);
    }
    CHECK(Scalar::parse("i") == Scalar::i());
    CHECK(Scalar::parse("-i") == -Scalar::i());
    CHECK_THROWS_AS(Scalar::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Scalar::parse("x"), std::invalid_argument);
}

TEST_CASE("solve_affine on the zero map returns the full domain as kernel") {
    Matrix a(1, 3);
    auto sol = solve_affine(a, {Scalar()});
    REQUIRE(sol);
    CHECK(sol->particular == Vec{Scalar(), Scalar(), Scalar()});
    CHECK(sol->kernel.size() == 3);
}

TEST_CASE("solve_affine scalar division") {
    Matrix a(1, 1);
    a.set(0, 0, Scalar(2));
    auto sol = solve_affine(a, {Scalar(1)});
    REQUIRE(sol);
    CHECK(sol->particular[0] == S("1/2"));
    CHECK(sol->kernel.empty());
}

TEST_CASE("solve_affine one equation two unknowns") {
    Matrix a(1, 2);
    a.set(0, 0, Scalar(1));
    a.set(0, 1, Scalar(1));
    auto sol = solve_affine(a, {Scalar(2)});
    REQUIRE(sol);
    CHECK(sol->particular == Vec{Scalar(2), Scalar()});
    REQUIRE(sol->kernel.size() == 1);
    // canonical kernel vector has 1 at the free column
    CHECK(sol->kernel[0] == Vec{Scalar(-1), Scalar(1)});
}

TEST_CASE("rank + kernel dimension equals the number of columns") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        int r = 1 + trial % 5, c = 1 + (trial * 3) % 6;
        Matrix m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                if (trial % 2 == 0 || (i + j) % 2) m.set(i, j, rng.scalar());
        CHECK(rank(m) + static_cast<int>(kernel_basis(m).size()) == c);
    }
}

TEST_CASE("infeasible systems are reported, not thrown") {
    Matrix a(2, 1);
    a.set(0, 0, Scalar(1));
    a.set(1, 0, Scalar(1));
    CHECK_FALSE(solve_affine(a, {Scalar(1), Scalar(2)}));
}

TEST_CASE("min_norm_solution of a homogeneous system is zero") {
    Matrix a(1, 2);
    a.set(0, 0, Scalar(1));
    a.set(0, 1, Scalar(1));
    auto x = min_norm_solution(a, {Scalar()}, GramForm(Matrix::identity(2)));
    REQUIRE(x);
    CHECK(*x == Vec{Scalar(), Scalar()});
}

TEST_CASE("min_norm_solution projects onto the kernel complement") {
    // A = [1 1], b = [1], G = identity -> (1/2, 1/2); brute-force check by
    // minimising |x0 + s k|^2 over rational points of the kernel line.
    Matrix a(1, 2);
    a.set(0, 0, Scalar(1));
    a.set(0, 1, Scalar(1));
    GramForm g(Matrix::identity(2));
    auto x = min_norm_solution(a, {Scalar(1)}, g);
    REQUIRE(x);
    CHECK(*x == Vec{S("1/2"), S("1/2")});
    Vec k{Scalar(-1), Scalar(1)};
    mpq_class best = g.pair(*x, *x).re();
    for (int num = -8; num <= 8; ++num) {
        Vec y = *x;
        Scalar s = Scalar::of(num, 4);
        for (int i = 0; i < 2; ++i) y[i] += s * k[i];
        Scalar norm = g.pair(y, y);
        CHECK(norm.is_real());
        CHECK(norm.re() >= best);
    }
    // spec-level orthogonality: k^H G x = 0
    Scalar khgx;
    for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l) khgx += k[j].conj() * g.matrix().at(j, l) * (*x)[l];
    CHECK(khgx.is_zero());
}

TEST_CASE("min_norm_solution reports infeasibility") {
    Matrix a(2, 1);
    a.set(0, 0, Scalar(1));
    a.set(1, 0, Scalar(1));
    CHECK_FALSE(min_norm_solution(a, {Scalar(1), Scalar(2)}, GramForm(Matrix::identity(1))));
}

TEST_CASE("min_norm_solution with a non-trivial Hermitian Gram form") {
    Rng rng(11);
    // G = M^H M + I is Hermitian positive definite
    for (int trial = 0; trial < 20; ++trial) {
        Matrix m(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m.set(i, j, rng.scalar());
        Matrix g = m.conj_transpose() * m + Matrix::identity(3);
        GramForm gram(g);
        Matrix a(1, 3);
        for (int j = 0; j < 3; ++j) a.set(0, j, rng.scalar());
        if (rank(a) == 0) continue;
        auto x = min_norm_solution(a, {rng.scalar()}, gram);
        REQUIRE(x);
        auto hom = solve_affine(a, {Scalar()});
        REQUIRE(hom);
        for (const Vec& k : hom->kernel) {
            CHECK(gram.pair(*x, k).is_zero());
            // any feasible perturbation is no shorter
            Vec y = *x;
            Scalar s = rng.nonzero_scalar();
            for (int i = 0; i < 3; ++i) y[i] += s * k[i];
            CHECK(gram.pair(y, y).re() >= gram.pair(*x, *x).re());
        }
    }
}

TEST_CASE("GramForm rejects non-Hermitian and indefinite matrices") {
    Matrix bad(2, 2);
    bad.set(0, 0, Scalar(1));
    bad.set(0, 1, Scalar::i());
    bad.set(1, 0, Scalar::i());  // should be -i for Hermitian
    bad.set(1, 1, Scalar(1));
    CHECK_THROWS_AS(GramForm{bad}, std::invalid_argument);

    Matrix indef(2, 2);
    indef.set(0, 0, Scalar(1));
    indef.set(1, 1, Scalar(-1));
    CHECK_THROWS_AS(GramForm{indef}, std::invalid_argument);
}

TEST_CASE("determinant and inverse are exact") {
    Matrix m(2, 2);
    m.set(0, 0, S("1/2"));
    m.set(0, 1, Scalar::i());
    m.set(1, 0, Scalar(1));
    m.set(1, 1, Scalar(3));
    CHECK(determinant(m) == S("3/2") - Scalar::i());
    auto inv = inverse(m);
    REQUIRE(inv);
    CHECK((m * *inv) == Matrix::identity(2));
    Matrix sing(2, 2);
    sing.set(0, 0, Scalar(1));
    sing.set(1, 0, Scalar(2));
    CHECK(determinant(sing).is_zero());
    CHECK_FALSE(inverse(sing));
}
