#include <catch2/catch_amalgamated.hpp>

#include "supergrass/lifts.hpp"
#include "test_support.hpp"

using namespace supergrass;
using supergrass::testing::Rng;

TEST_CASE("theta with scalar one is the identity") {
    Atlas atlas = Atlas::build_pi(2, 1);
    CHECK(is_identity_morphism(theta(atlas, 0, SuperFunction::one(atlas.table()))));
    CHECK_THROWS_AS(theta(atlas, 0, SuperFunction::zero(atlas.table())), config_error);
}

TEST_CASE("theta at minus one is the parity sign automorphism") {
    Atlas atlas = Atlas::build_pi(2, 1);
    SuperMorphism t = theta(atlas, 0, SuperFunction::constant(atlas.table(), GaussianRational(-1)));
    for (const auto& c : atlas.chart(0).coords) {
        SuperFunction v = SuperFunction::variable(atlas.table(), c.var);
        CHECK(t.at(c.var) == (c.parity == Parity::Even ? v : -v));
    }
}

TEST_CASE("theta scales by the grading degree") {
    Atlas atlas = Atlas::build_pi(3, 1, {.with_alpha = true});
    SuperFunction a = generic_alpha(atlas);
    SuperMorphism t = theta(atlas, 0, a);
    const Chart& ch = atlas.chart(0);
    std::vector<VarId> odds;
    for (const auto& c : ch.coords)
        if (c.parity == Parity::Odd) odds.push_back(c.var);
    REQUIRE(odds.size() >= 2);
    SuperFunction prod = SuperFunction::variable(atlas.table(), odds[0]) *
                         SuperFunction::variable(atlas.table(), odds[1]);
    CHECK(pull_back(t, prod) == a * a * prod);
}

TEST_CASE("theta is a group homomorphism in the scalar") {
    Atlas atlas = Atlas::build_pi(2, 1, {.with_alpha = true});
    SuperFunction a = generic_alpha(atlas);
    SuperFunction two = SuperFunction::constant(atlas.table(), GaussianRational(2));
    SuperMorphism lhs = compose(theta(atlas, 0, a), theta(atlas, 0, two));
    SuperMorphism rhs = theta(atlas, 0, a * two);
    CHECK(morphism_equal(lhs, rhs));
}

TEST_CASE("parity sign lift passes on every tested atlas") {
    for (auto [n, k] : {std::pair{2, 1}, {3, 1}, {4, 2}}) {
        Atlas atlas = Atlas::build_pi(n, k);
        LiftCompatReport r =
            check_lift_compatibility(atlas, SuperFunction::constant(atlas.table(), GaussianRational(-1)));
        INFO("n=" << n << " k=" << k);
        CHECK(r.pass);
    }
}

TEST_CASE("generic scalar lifts exactly on the split case") {
    Atlas atlas = Atlas::build_pi(2, 1, {.with_alpha = true});
    LiftCompatReport r = check_lift_compatibility(atlas, generic_alpha(atlas));
    CHECK(r.pass);
}

TEST_CASE("generic scalar fails on non-split atlases with a degree-2 witness") {
    for (auto [n, k] : {std::pair{3, 1}, {4, 2}}) {
        Atlas atlas = Atlas::build_pi(n, k, {.with_alpha = true});
        LiftCompatReport r = check_lift_compatibility(atlas, generic_alpha(atlas));
        INFO("n=" << n << " k=" << k);
        REQUIRE_FALSE(r.pass);
        REQUIRE_FALSE(r.witnesses.empty());
        CHECK_FALSE(r.witnesses.front().degree2_term.is_zero());
    }
}

TEST_CASE("lift compatibility passes iff transitions are degree homogeneous") {
    // operational form of the graded criterion: the split atlas passes even
    // where the natural atlas fails
    Atlas natural = Atlas::build_pi(4, 2, {.with_alpha = true});
    Atlas split = natural.gr();
    CHECK_FALSE(check_lift_compatibility(natural, generic_alpha(natural)).pass);
    CHECK(check_lift_compatibility(split, generic_alpha(split)).pass);
}

// ---------------------------------------------------------------------------

namespace {

LiftCandidate standard_lift(const SuperDomain& d, const SuperFunction& alpha) {
    LiftCandidate cand;
    cand.alpha = alpha;
    for (VarId v : d.evens) cand.psi.emplace(v, SuperFunction::variable(d.table, v));
    for (VarId v : d.odds) cand.psi.emplace(v, alpha * SuperFunction::variable(d.table, v));
    return cand;
}

} // namespace

TEST_CASE("normalization leaves the standard lift alone") {
    SuperDomain d = make_superdomain(2, 3);
    SuperFunction a = SuperFunction::variable(d.table, *d.alpha);
    NormalizedLift out = normalize_lift(d, standard_lift(d, a), 0);
    CHECK(lift_is_standard(d, out.lift));
    for (VarId v : d.all_vars()) CHECK(out.coordinate_change.at(v) == SuperFunction::variable(d.table, v));
}

TEST_CASE("an injected coordinate change is recovered and inverted") {
    SuperDomain d = make_superdomain(1, 2);
    SuperFunction a = SuperFunction::variable(d.table, *d.alpha);
    Assignment h = identity_assignment(d);
    SuperFunction bump = SuperFunction::variable(d.table, d.odds[0]) * SuperFunction::variable(d.table, d.odds[1]);
    h.at(d.evens[0]) = SuperFunction::variable(d.table, d.evens[0]) + bump;

    LiftCandidate cand;
    cand.alpha = a;
    cand.psi = conjugate_lift(d, standard_lift(d, a).psi, h);
    // the conjugate carries the telltale correction
    CHECK(cand.psi.at(d.evens[0]) ==
          SuperFunction::variable(d.table, d.evens[0]) + (a * a - SuperFunction::one(d.table)) * bump);

    NormalizedLift out = normalize_lift(d, cand, 0);
    CHECK(lift_is_standard(d, out.lift));
    // the returned change is the inverse of the injected one
    Assignment h_inv = invert_unipotent(d, h);
    for (VarId v : d.all_vars()) CHECK(out.coordinate_change.at(v) == h_inv.at(v));
    // and it conjugates the input to the output
    Assignment reconjugated = conjugate_lift(d, cand.psi, out.coordinate_change, out.coordinate_change_inverse);
    for (VarId v : d.all_vars()) CHECK(reconjugated.at(v) == out.lift.psi.at(v));
}

TEST_CASE("order two performs no steps") {
    SuperDomain d = make_superdomain(1, 2, /*with_alpha=*/false);
    SuperFunction minus_one = SuperFunction::constant(d.table, GaussianRational(-1));
    Assignment h = identity_assignment(d);
    h.at(d.evens[0]) = SuperFunction::variable(d.table, d.evens[0]) +
                       SuperFunction::variable(d.table, d.odds[0]) * SuperFunction::variable(d.table, d.odds[1]);
    LiftCandidate cand;
    cand.alpha = minus_one;
    cand.psi = conjugate_lift(d, standard_lift(d, minus_one).psi, h);
    // alpha^2 = 1 for every p, so the candidate comes back unchanged
    NormalizedLift out = normalize_lift(d, cand, 2);
    for (VarId v : d.all_vars()) CHECK(out.lift.psi.at(v) == cand.psi.at(v));
    for (VarId v : d.all_vars()) CHECK(out.coordinate_change.at(v) == SuperFunction::variable(d.table, v));
}

TEST_CASE("normalization is idempotent") {
    SuperDomain d = make_superdomain(2, 4);
    SuperFunction a = SuperFunction::variable(d.table, *d.alpha);
    Rng rng(57);
    Assignment h = identity_assignment(d);
    // a random unipotent change: even += degree-2, odd += degree-3
    SuperPolynomial p = supergrass::testing::random_polynomial(rng, d.table, d.evens, d.odds, 6);
    h.at(d.evens[0]) = SuperFunction::variable(d.table, d.evens[0]) + SuperFunction(p.xi_component(2));
    h.at(d.odds[0]) = SuperFunction::variable(d.table, d.odds[0]) + SuperFunction(p.xi_component(3));
    LiftCandidate cand{conjugate_lift(d, standard_lift(d, a).psi, h), a};
    NormalizedLift once = normalize_lift(d, cand, 0);
    CHECK(lift_is_standard(d, once.lift));
    NormalizedLift twice = normalize_lift(d, once.lift, 0);
    for (VarId v : d.all_vars()) CHECK(twice.lift.psi.at(v) == once.lift.psi.at(v));
}

TEST_CASE("order four keeps only degree multiples of four") {
    SuperDomain d = make_superdomain(1, 4, /*with_alpha=*/false);
    SuperFunction alpha_i = SuperFunction::constant(d.table, GaussianRational::i());
    Rng rng(61);
    for (int round = 0; round < 5; ++round) {
        Assignment h = identity_assignment(d);
        SuperPolynomial p = supergrass::testing::random_polynomial(rng, d.table, d.evens, d.odds, 8);
        h.at(d.evens[0]) = SuperFunction::variable(d.table, d.evens[0]) +
                           SuperFunction(p.xi_component(2) + p.xi_component(4));
        h.at(d.odds[0]) = SuperFunction::variable(d.table, d.odds[0]) + SuperFunction(p.xi_component(3));
        LiftCandidate cand{conjugate_lift(d, standard_lift(d, alpha_i).psi, h), alpha_i};
        NormalizedLift out = normalize_lift(d, cand, 4);
        CHECK(lift_is_grading_homogeneous(d, out.lift));
    }
}

TEST_CASE("malformed lift candidates are rejected") {
    SuperDomain d = make_superdomain(1, 2);
    SuperFunction a = SuperFunction::variable(d.table, *d.alpha);
    LiftCandidate cand = standard_lift(d, a);
    cand.psi.at(d.evens[0]) = cand.psi.at(d.evens[0]) + SuperFunction::one(d.table);
    CHECK_THROWS_AS(normalize_lift(d, cand, 0), malformed_lift_error);
}

// ---------------------------------------------------------------------------

TEST_CASE("perpendicular involution on the smallest split atlas") {
    Atlas atlas = Atlas::build_pi(2, 1).gr();
    AtlasMap phi = perp_involution(atlas);
    int c1 = atlas.chart_id_pi({1}), c2 = atlas.chart_id_pi({2});
    CHECK(phi.target_of(c1) == c2);
    // chart {2} coordinates pull back to minus the chart {1} coordinates
    VarId y = atlas.table()->find("x{2}(1,2)");
    VarId eta = atlas.table()->find("xi{2}(1,2)");
    SuperFunction x = SuperFunction::variable(atlas.table(), atlas.table()->find("x{1}(2,1)"));
    SuperFunction xi = SuperFunction::variable(atlas.table(), atlas.table()->find("xi{1}(2,1)"));
    CHECK(phi.at(c1).at(y) == -x);
    CHECK(phi.at(c1).at(eta) == -xi);

    CheckReport inv = involution_check(atlas, phi);
    INFO(inv.witness);
    CHECK(inv.pass);
}

TEST_CASE("perpendicular involution squares to one and respects gr transitions") {
    Atlas atlas = Atlas::build_pi(4, 2).gr();
    AtlasMap phi = perp_involution(atlas);
    CheckReport inv = involution_check(atlas, phi);
    INFO(inv.witness);
    CHECK(inv.pass);
    CheckReport compat = atlas_compatibility_check(atlas, phi);
    INFO(compat.witness);
    CHECK(compat.pass);
}

TEST_CASE("perpendicular involution preconditions") {
    CHECK_THROWS_AS(perp_involution(Atlas::build_pi(3, 1).gr()), config_error);
    CHECK_THROWS_AS(perp_involution(Atlas::build_pi(4, 2)), config_error);
}

// ---------------------------------------------------------------------------

namespace {

GaussianMatrix rational_matrix(std::initializer_list<std::initializer_list<long>> rows) {
    GaussianMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows.begin()->size()));
    int r = 0;
    for (const auto& row : rows) {
        int c = 0;
        for (long v : row) m.at(r, c++) = GaussianRational(v);
        ++r;
    }
    return m;
}

} // namespace

TEST_CASE("projective action: identity and scalars act trivially") {
    Atlas atlas = Atlas::build_pi(3, 1);
    CHECK(is_identity_map(projective_action(atlas, GaussianMatrix::identity(3))));
    CHECK(is_identity_map(projective_action(atlas, GaussianMatrix::identity(3).scaled(GaussianRational(5)))));
    GaussianMatrix singular(3, 3);
    CHECK_THROWS_AS(projective_action(atlas, singular), non_invertible_error);
}

TEST_CASE("projective action respects the group law") {
    Atlas atlas = Atlas::build_pi(3, 1);
    GaussianMatrix g1 = rational_matrix({{1, 2, 0}, {0, 1, 0}, {1, 0, 1}});
    GaussianMatrix g2 = rational_matrix({{1, 0, 1}, {2, 1, 0}, {0, 0, 1}});
    AtlasMap lhs = compose_maps(projective_action(atlas, g1), projective_action(atlas, g2));
    AtlasMap rhs = projective_action(atlas, g1 * g2);
    CHECK(map_equal(atlas, lhs, rhs));
}

TEST_CASE("projective action is compatible with the atlas and the parity sign") {
    Atlas atlas = Atlas::build_pi(4, 2);
    GaussianMatrix g = rational_matrix({{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 2}, {1, 0, 0, 1}});
    AtlasMap action = projective_action(atlas, g);
    CheckReport compat = atlas_compatibility_check(atlas, action);
    INFO(compat.witness);
    CHECK(compat.pass);

    AtlasMap sign = parity_sign_map(atlas);
    CHECK(map_equal(atlas, compose_maps(action, sign), compose_maps(sign, action)));
}
