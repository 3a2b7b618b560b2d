#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "supergrass/superalgebras.hpp"

using namespace supergrass;

namespace {

GaussianMatrix random_gmatrix(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> c(-3, 3);
    GaussianMatrix m(n, n);
    for (int r = 0; r < n; ++r)
        for (int j = 0; j < n; ++j) m.at(r, j) = GaussianRational(mpq_class(c(rng)), mpq_class(c(rng)));
    return m;
}

QnElement random_homogeneous(std::mt19937_64& rng, const QnAlgebra& q) {
    return rng() % 2 == 0 ? q.even(random_gmatrix(rng, q.n())) : q.odd(random_gmatrix(rng, q.n()));
}

} // namespace

TEST_CASE("dimension counts of the strange algebra") {
    QnAlgebra q2(2);
    CHECK(q2.dim() == 8);
    CHECK(q2.quotient_dim() == 7);
    CHECK(q2.dim_even() == 4);
    CHECK(q2.dim_odd() == 4);
}

TEST_CASE("the identity pair is central") {
    std::mt19937_64 rng(3);
    for (int n : {2, 3, 4}) {
        QnAlgebra q(n);
        for (int round = 0; round < 10; ++round) {
            QnElement x = random_homogeneous(rng, q);
            CHECK(QnAlgebra::is_zero(q.bracket(q.center_element(), x)));
            CHECK(QnAlgebra::is_zero(q.bracket(x, q.center_element())));
        }
    }
}

TEST_CASE("bracket closes and is super-antisymmetric") {
    std::mt19937_64 rng(5);
    for (int n : {2, 3}) {
        QnAlgebra q(n);
        for (int round = 0; round < 20; ++round) {
            QnElement x = random_homogeneous(rng, q);
            QnElement y = random_homogeneous(rng, q);
            QnElement xy = q.bracket(x, y); // closure asserted inside
            QnElement yx = q.bracket(y, x);
            int sign = (x.parity == Parity::Odd && y.parity == Parity::Odd) ? 1 : -1;
            CHECK(xy.a == (sign < 0 ? -yx.a : yx.a));
            CHECK(xy.b == (sign < 0 ? -yx.b : yx.b));
        }
    }
}

TEST_CASE("super Jacobi identity on seeded random triples") {
    std::mt19937_64 rng(7);
    for (int n : {2, 3, 4}) {
        QnAlgebra q(n);
        for (int round = 0; round < 100; ++round) {
            QnElement x = random_homogeneous(rng, q);
            QnElement y = random_homogeneous(rng, q);
            QnElement z = random_homogeneous(rng, q);
            CHECK(QnAlgebra::is_zero(q.jacobi_defect(x, y, z)));
        }
    }
}

TEST_CASE("quotient representatives are traceless and bracket-compatible") {
    std::mt19937_64 rng(11);
    QnAlgebra q(3);
    for (int round = 0; round < 10; ++round) {
        QnElement x = random_homogeneous(rng, q);
        QnElement y = random_homogeneous(rng, q);
        QnElement r = q.quotient_representative(x);
        GaussianRational tr;
        for (int i = 0; i < 3; ++i) tr += r.a.at(i, i);
        CHECK(tr.is_zero());
        // the bracket descends: [x, y] and [rep(x), rep(y)] agree mod center
        QnElement b1 = q.quotient_representative(q.bracket(x, y));
        QnElement b2 = q.quotient_representative(q.bracket(q.quotient_representative(x), q.quotient_representative(y)));
        CHECK(b1.a == b2.a);
        CHECK(b1.b == b2.b);
    }
}

// ---------------------------------------------------------------------------

TEST_CASE("the exceptional algebra has dimension eight") {
    CHECK(V21Algebra::dim() == 8);
    int odd = 0, even = 0;
    for (int i = 0; i < 8; ++i) (V21Algebra::basis_parity(i) == Parity::Odd ? odd : even)++;
    CHECK(odd == 4);
    CHECK(even == 4);
}

TEST_CASE("bracket table structure") {
    using V = V21Algebra;
    // [g_0, g_1] = 0
    for (int a = V::kE; a <= V::kF; ++a) {
        CHECK(V::is_zero(V::bracket_basis(a, V::kD)));
        CHECK(V::is_zero(V::bracket_basis(V::kD, a)));
    }
    // [d, -] maps the odd copy identically onto g_0
    for (int v = V::kEbar; v <= V::kFbar; ++v) {
        V::Element img = V::bracket_basis(V::kD, v);
        V::Element expected = V::basis(v - 3);
        CHECK(img == expected);
        CHECK(V::bracket_basis(v, V::kD) == expected); // symmetric: both odd
    }
    // z is the grading operator
    for (int i = 0; i < 8; ++i) {
        V::Element img = V::bracket_basis(V::kZ, i);
        V::Element expected = V::basis(i);
        GaussianRational deg(V::basis_degree(i));
        for (auto& c : expected) c *= deg;
        CHECK(img == expected);
    }
    // sl2 relations
    CHECK(V::bracket_basis(V::kH, V::kE) == [] { auto v = V::basis(V::kE); v[V::kE] = GaussianRational(2); return v; }());
    CHECK(V::bracket_basis(V::kE, V::kF) == V::basis(V::kH));
}

TEST_CASE("super Jacobi holds exhaustively on all basis triples") {
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            for (int k = 0; k < 8; ++k) {
                INFO(V21Algebra::basis_name(i) << "," << V21Algebra::basis_name(j) << ","
                                               << V21Algebra::basis_name(k));
                CHECK(V21Algebra::is_zero(V21Algebra::jacobi_defect_basis(i, j, k)));
            }
}

TEST_CASE("bracket is super-antisymmetric on the basis") {
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            auto lhs = V21Algebra::bracket_basis(i, j);
            auto rhs = V21Algebra::bracket_basis(j, i);
            int sign =
                (V21Algebra::basis_parity(i) == Parity::Odd && V21Algebra::basis_parity(j) == Parity::Odd) ? 1
                                                                                                           : -1;
            for (int t = 0; t < 8; ++t) {
                GaussianRational expect = rhs[static_cast<size_t>(t)];
                if (sign < 0) expect = -expect;
                CHECK(lhs[static_cast<size_t>(t)] == expect);
            }
        }
}
