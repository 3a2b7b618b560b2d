#include <catch2/catch_amalgamated.hpp>

#include "supergrass/supermatrix.hpp"
#include "test_support.hpp"

using namespace supergrass;
using supergrass::testing::Ring;
using supergrass::testing::Rng;

namespace {

/// [[x, xi], [xi, x]] over a 1|1 ring.
SuperMatrix sample_pi_block(const Ring& r) {
    SuperMatrix m(r.table, 2, 2);
    m.at(0, 0) = r.fx(0);
    m.at(0, 1) = r.fxi(0);
    m.at(1, 0) = r.fxi(0);
    m.at(1, 1) = r.fx(0);
    return m;
}

} // namespace

TEST_CASE("identity is neutral for the matrix product") {
    Ring r(1, 1);
    SuperMatrix z = sample_pi_block(r);
    CHECK(mat_mul(SuperMatrix::identity(r.table, 2), z) == z);
    CHECK(mat_mul(z, SuperMatrix::identity(r.table, 2)) == z);
}

TEST_CASE("the symplectic block matrix squares to minus the identity") {
    Ring r(0, 0);
    GaussianMatrix aj = GaussianMatrix::symplectic_blocks(4);
    SuperMatrix m = SuperMatrix::from_numeric(r.table, aj);
    CHECK(mat_mul(m, m) == -SuperMatrix::identity(r.table, 4));
    CHECK((aj * aj.conj()).scalar_of().value() == GaussianRational(-1));
}

TEST_CASE("hand-checked inverse of the basic pi block") {
    Ring r(1, 1);
    SuperMatrix z = sample_pi_block(r);
    SuperFunction x2 = r.fx(0) * r.fx(0);
    SuperMatrix expected(r.table, 2, 2);
    expected.at(0, 0) = r.one() / r.fx(0);
    expected.at(0, 1) = -r.fxi(0) / x2;
    expected.at(1, 0) = -r.fxi(0) / x2;
    expected.at(1, 1) = r.one() / r.fx(0);
    CHECK(mat_mul(z, expected) == SuperMatrix::identity(r.table, 2));
    CHECK(z.super_inverse() == expected);
}

TEST_CASE("inverse of the identity and singular-body rejection") {
    Ring r(1, 2);
    CHECK(SuperMatrix::identity(r.table, 3).super_inverse() == SuperMatrix::identity(r.table, 3));

    SuperMatrix bad(r.table, 2, 2);
    bad.at(0, 0) = r.fxi(0) * r.fxi(1);
    bad.at(1, 1) = r.one();
    CHECK_THROWS_AS(bad.super_inverse(), non_invertible_error);
}

TEST_CASE("row extraction") {
    Ring r(1, 1);
    SuperMatrix m(r.table, 2, 1);
    m.at(0, 0) = r.fx(0);
    m.at(1, 0) = r.one();
    SuperMatrix one_row = m.extract_rows({1});
    REQUIRE(one_row.rows() == 1);
    CHECK(one_row.at(0, 0) == r.one());

    // the renormalizing submatrix of the 2|1 pi chart matrix
    SuperMatrix z(r.table, 4, 2);
    z.at(0, 0) = r.fx(0);
    z.at(0, 1) = r.fxi(0);
    z.at(1, 0) = r.one();
    z.at(2, 0) = r.fxi(0);
    z.at(2, 1) = r.fx(0);
    z.at(3, 1) = r.one();
    CHECK(z.extract_rows({0, 2}) == sample_pi_block(r));

    CHECK(m.extract_rows({0, 1}) == m);
    CHECK_THROWS_AS(m.extract_rows({0, 2}), index_error);
    CHECK_THROWS_AS(m.extract_rows({1, 0}), index_error);
}

TEST_CASE("body and soul split and soul nilpotency") {
    Ring r(2, 3);
    Rng rng(41);
    for (int round = 0; round < 8; ++round) {
        SuperMatrix m(r.table, 3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                m.at(i, j) =
                    SuperFunction(supergrass::testing::random_polynomial(rng, r.table, r.x, r.xi, 3));
        BodySoulSplit split = body_soul_split(m);
        CHECK(split.body + split.soul == m);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                CHECK(split.body.at(i, j).max_odd_degree() == 0);
                CHECK(split.soul.at(i, j).xi_component(0).is_zero());
            }
        // soul^(q+1) = 0 with q the number of odd generators
        SuperMatrix p = split.soul;
        for (size_t t = 0; t < r.xi.size(); ++t) p = p * split.soul;
        CHECK(p.is_zero());
    }
}

TEST_CASE("random matrices with invertible body invert exactly on both sides") {
    Ring r(2, 2);
    Rng rng(43);
    for (int round = 0; round < 6; ++round) {
        SuperMatrix m(r.table, 2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                SuperPolynomial soul = supergrass::testing::random_polynomial(rng, r.table, {}, r.xi, 2);
                m.at(i, j) = SuperFunction(soul.soul());
            }
        // shift by a unit body: I + diag-dominant even part
        m.at(0, 0) += r.one() + r.fx(0) * r.fx(0);
        m.at(1, 1) += r.fx(1);
        m.at(0, 1) += r.fx(0);
        SuperMatrix inv = m.super_inverse(); // internally verified two-sided
        CHECK(mat_mul(m, inv) == SuperMatrix::identity(r.table, 2));
        CHECK(mat_mul(inv, m) == SuperMatrix::identity(r.table, 2));
        // body of the inverse is the inverse of the body
        CHECK(mat_mul(m.body(), inv.body()) == SuperMatrix::identity(r.table, 2));
    }
}

TEST_CASE("parity signatures validate block parities") {
    Ring r(1, 1);
    SuperMatrix z(r.table, 2, 2);
    z.at(0, 0) = r.fx(0);
    z.at(0, 1) = r.fxi(0);
    z.at(1, 0) = r.fxi(0);
    z.at(1, 1) = r.fx(0);
    CHECK_NOTHROW(z.set_signature(BlockSignature{1, 1, 1, 1}));
    SuperMatrix bad = z;
    bad.at(0, 0) = r.fxi(0);
    CHECK_THROWS_AS(bad.set_signature(BlockSignature{1, 1, 1, 1}), parity_error);
}

TEST_CASE("dimension mismatches are rejected") {
    Ring r(1, 0);
    SuperMatrix a(r.table, 2, 3), b(r.table, 2, 2);
    CHECK_THROWS_AS(mat_mul(a, b), dimension_error);
    CHECK_THROWS_AS(a.super_inverse(), dimension_error);
}
