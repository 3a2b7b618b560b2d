#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace supergrass;
using supergrass::testing::Ring;
using supergrass::testing::Rng;

namespace {

// Independent multiplication oracle: terms are flat factor lists; products
// concatenate the lists, then odd factors are bubble-sorted counting
// transpositions, and repeated odd factors kill the term.
struct OracleTerm {
    GaussianRational coeff;
    std::vector<VarId> factors; // in written order, evens may repeat
};

SuperPolynomial oracle_to_poly(const TablePtr& table, const std::vector<OracleTerm>& terms) {
    SuperPolynomial out(table);
    for (const auto& t : terms) {
        std::vector<VarId> odd;
        Monomial m;
        int sign = 1;
        // walk factors left to right; evens commute out freely, odds count
        // the crossings over the odds already seen
        for (VarId v : t.factors) {
            if (table->parity(v) == Parity::Even) {
                bool merged = false;
                for (auto& [w, e] : m.even)
                    if (w == v) {
                        ++e;
                        merged = true;
                    }
                if (!merged) m.even.emplace_back(v, 1);
            } else {
                int crossings = 0;
                size_t pos = odd.size();
                for (size_t i = 0; i < odd.size(); ++i)
                    if (odd[i] > v) {
                        pos = std::min(pos, i);
                        ++crossings;
                    }
                if (std::find(odd.begin(), odd.end(), v) != odd.end()) {
                    sign = 0;
                    break;
                }
                odd.insert(odd.begin() + static_cast<long>(pos), v);
                if (crossings % 2 != 0) sign = -sign;
            }
        }
        if (sign == 0) continue;
        std::sort(m.even.begin(), m.even.end());
        m.odd = odd;
        out.add_term(m, sign < 0 ? -t.coeff : t.coeff);
    }
    return out;
}

std::vector<OracleTerm> oracle_mul(const std::vector<OracleTerm>& a, const std::vector<OracleTerm>& b) {
    std::vector<OracleTerm> out;
    for (const auto& s : a)
        for (const auto& t : b) {
            OracleTerm r;
            r.coeff = s.coeff * t.coeff;
            r.factors = s.factors;
            r.factors.insert(r.factors.end(), t.factors.begin(), t.factors.end());
            out.push_back(std::move(r));
        }
    return out;
}

} // namespace

TEST_CASE("odd generators square to zero") {
    Ring r(1, 2);
    CHECK((r.pxi(0) * r.pxi(0)).is_zero());
}

TEST_CASE("odd generators anticommute") {
    Ring r(0, 2);
    CHECK(r.pxi(0) * r.pxi(1) == -(r.pxi(1) * r.pxi(0)));
}

TEST_CASE("product expansion matches the naive term-by-term oracle") {
    Ring r(1, 2);
    // (x + xi1 xi2) * (x - xi1 xi2) = x^2
    std::vector<OracleTerm> a = {{GaussianRational(1), {r.x[0]}}, {GaussianRational(1), {r.xi[0], r.xi[1]}}};
    std::vector<OracleTerm> b = {{GaussianRational(1), {r.x[0]}}, {GaussianRational(-1), {r.xi[0], r.xi[1]}}};
    SuperPolynomial lib = (r.px(0) + r.pxi(0) * r.pxi(1)) * (r.px(0) - r.pxi(0) * r.pxi(1));
    SuperPolynomial expected = oracle_to_poly(r.table, oracle_mul(a, b));
    CHECK(lib == expected);
    CHECK(lib == r.px(0) * r.px(0));
}

TEST_CASE("random products match the oracle") {
    Ring r(2, 3);
    Rng rng(42);
    std::uniform_int_distribution<int> nfac(0, 3);
    std::uniform_int_distribution<size_t> var(0, 4);
    auto random_oracle_terms = [&](int nterms) {
        std::vector<OracleTerm> out;
        for (int t = 0; t < nterms; ++t) {
            OracleTerm term;
            term.coeff = supergrass::testing::random_scalar(rng);
            int m = nfac(rng);
            for (int f = 0; f < m; ++f) {
                size_t pick = var(rng);
                term.factors.push_back(pick < 2 ? r.x[pick] : r.xi[pick - 2]);
            }
            out.push_back(std::move(term));
        }
        return out;
    };
    for (int round = 0; round < 50; ++round) {
        auto a = random_oracle_terms(3);
        auto b = random_oracle_terms(3);
        SuperPolynomial pa = oracle_to_poly(r.table, a);
        SuperPolynomial pb = oracle_to_poly(r.table, b);
        CHECK(pa * pb == oracle_to_poly(r.table, oracle_mul(a, b)));
    }
}

TEST_CASE("ring axioms hold exactly on random polynomials") {
    Ring r(2, 3);
    Rng rng(7);
    for (int round = 0; round < 30; ++round) {
        SuperPolynomial a = supergrass::testing::random_polynomial(rng, r.table, r.x, r.xi);
        SuperPolynomial b = supergrass::testing::random_polynomial(rng, r.table, r.x, r.xi);
        SuperPolynomial c = supergrass::testing::random_polynomial(rng, r.table, r.x, r.xi);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + b) * c == a * c + b * c);
    }
}

TEST_CASE("homogeneous elements supercommute with the parity sign") {
    Ring r(1, 4);
    Rng rng(11);
    auto random_homogeneous = [&](int odd_degree) {
        SuperPolynomial p(r.table);
        for (int t = 0; t < 3; ++t) {
            Monomial m = supergrass::testing::random_monomial(rng, r.x, {});
            // choose odd part of exact size odd_degree
            std::vector<VarId> odds = r.xi;
            std::shuffle(odds.begin(), odds.end(), rng);
            odds.resize(static_cast<size_t>(odd_degree));
            std::sort(odds.begin(), odds.end());
            m.odd = odds;
            p.add_term(m, supergrass::testing::random_scalar(rng));
        }
        return p;
    };
    for (int p = 0; p <= 2; ++p)
        for (int q = 0; q <= 2; ++q) {
            SuperPolynomial f = random_homogeneous(p);
            SuperPolynomial g = random_homogeneous(q);
            SuperPolynomial rhs = g * f;
            if (p * q % 2 != 0) rhs = -rhs;
            CHECK(f * g == rhs);
        }
}

TEST_CASE("mismatched tables are rejected") {
    Ring a(1, 1), b(2, 1);
    CHECK_THROWS_AS(a.px(0) * b.px(0), ring_mismatch_error);
}

TEST_CASE("conjugation swaps partners and conjugates coefficients") {
    Ring r(1, 2, /*doubled=*/true);
    VarId xbar = r.table->partner(r.x[0]);
    SuperPolynomial ix = r.px(0).scaled(GaussianRational::i());
    SuperPolynomial expected = SuperPolynomial::variable(r.table, xbar).scaled(-GaussianRational::i());
    CHECK(ix.conjugate() == expected);

    // xi1 xi2 -> xibar1 xibar2, no sign
    SuperPolynomial prod = r.pxi(0) * r.pxi(1);
    SuperPolynomial expected2 = SuperPolynomial::variable(r.table, r.table->partner(r.xi[0])) *
                                SuperPolynomial::variable(r.table, r.table->partner(r.xi[1]));
    CHECK(prod.conjugate() == expected2);
}

TEST_CASE("conjugation is an involutive antilinear ring homomorphism") {
    Ring r(2, 2, /*doubled=*/true);
    Rng rng(13);
    std::vector<VarId> evens = r.x, odds = r.xi;
    evens.push_back(r.table->partner(r.x[0]));
    for (int round = 0; round < 20; ++round) {
        SuperPolynomial f = supergrass::testing::random_polynomial(rng, r.table, evens, odds);
        SuperPolynomial g = supergrass::testing::random_polynomial(rng, r.table, evens, odds);
        CHECK(f.conjugate().conjugate() == f);
        CHECK((f * g).conjugate() == f.conjugate() * g.conjugate());
        GaussianRational lambda = supergrass::testing::random_scalar(rng);
        CHECK(f.scaled(lambda).conjugate() == f.conjugate().scaled(lambda.conj()));
    }
}

TEST_CASE("conjugation requires a doubled table") {
    Ring r(1, 1);
    CHECK_THROWS_AS(r.px(0).conjugate(), conjugation_error);
}

TEST_CASE("derivative follows the product rule on even variables") {
    Ring r(2, 2);
    Rng rng(17);
    for (int round = 0; round < 20; ++round) {
        SuperPolynomial f = supergrass::testing::random_polynomial(rng, r.table, r.x, r.xi);
        SuperPolynomial g = supergrass::testing::random_polynomial(rng, r.table, r.x, r.xi);
        CHECK((f * g).derivative(r.x[0]) == f.derivative(r.x[0]) * g + f * g.derivative(r.x[0]));
    }
    CHECK_THROWS_AS(r.px(0).derivative(r.xi[0]), parity_error);
}
