#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "supergrass/gmatrix.hpp"

namespace supergrass {

/// Finite group with an involutive twisting automorphism, given by tables.
/// Elements are 0..order-1 with 0 the identity.
class FiniteGammaGroup {
public:
    FiniteGammaGroup(std::vector<std::vector<int>> mul, std::vector<int> sigma)
        : mul_(std::move(mul)), sigma_(std::move(sigma)) {
        const int n = order();
        if (static_cast<int>(sigma_.size()) != n) throw config_error("sigma table size mismatch");
        for (int a = 0; a < n; ++a) {
            if (mul_[static_cast<size_t>(a)].size() != static_cast<size_t>(n))
                throw config_error("multiplication table is ragged");
            if (mul(0, a) != a || mul(a, 0) != a) throw config_error("element 0 must be the identity");
            if (sigma(sigma(a)) != a) throw config_error("sigma is not involutive");
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (sigma(mul(a, b)) != mul(sigma(a), sigma(b))) throw config_error("sigma is not a homomorphism");
        inverse_.assign(static_cast<size_t>(n), -1);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (mul(a, b) == 0) inverse_[static_cast<size_t>(a)] = b;
        for (int a = 0; a < n; ++a)
            if (inverse_[static_cast<size_t>(a)] < 0) throw config_error("element without inverse");
    }

    int order() const { return static_cast<int>(mul_.size()); }
    int mul(int a, int b) const { return mul_[static_cast<size_t>(a)][static_cast<size_t>(b)]; }
    int sigma(int a) const { return sigma_[static_cast<size_t>(a)]; }
    int inverse(int a) const { return inverse_[static_cast<size_t>(a)]; }

    /// Z/2 written multiplicatively ({+1,-1}), with the trivial involution.
    static FiniteGammaGroup sign_group() {
        return FiniteGammaGroup({{0, 1}, {1, 0}}, {0, 1});
    }

    static FiniteGammaGroup trivial() { return FiniteGammaGroup({{0}}, {0}); }

    static FiniteGammaGroup product(const FiniteGammaGroup& a, const FiniteGammaGroup& b) {
        const int na = a.order(), nb = b.order();
        auto enc = [nb](int x, int y) { return x * nb + y; };
        std::vector<std::vector<int>> mul(static_cast<size_t>(na * nb),
                                          std::vector<int>(static_cast<size_t>(na * nb)));
        std::vector<int> sig(static_cast<size_t>(na * nb));
        for (int x1 = 0; x1 < na; ++x1)
            for (int y1 = 0; y1 < nb; ++y1) {
                sig[static_cast<size_t>(enc(x1, y1))] = enc(a.sigma(x1), b.sigma(y1));
                for (int x2 = 0; x2 < na; ++x2)
                    for (int y2 = 0; y2 < nb; ++y2)
                        mul[static_cast<size_t>(enc(x1, y1))][static_cast<size_t>(enc(x2, y2))] =
                            enc(a.mul(x1, x2), b.mul(y1, y2));
            }
        return FiniteGammaGroup(std::move(mul), std::move(sig));
    }

    bool z1_check(int c) const {
        if (c < 0 || c >= order()) throw index_error("element outside the carrier");
        return mul(c, sigma(c)) == 0;
    }

    std::vector<int> z1_elements() const {
        std::vector<int> out;
        for (int c = 0; c < order(); ++c)
            if (z1_check(c)) out.push_back(c);
        return out;
    }

    /// The twisted action a * c = a c sigma(a)^{-1}.
    int star(int a, int c) const { return mul(mul(a, c), inverse(sigma(a))); }

    /// Orbit representatives of Z^1 under the star action (smallest element of
    /// each orbit, ascending).  The neutral class comes first.
    std::vector<int> h1_classes() const {
        std::vector<int> z1 = z1_elements();
        std::vector<int> reps;
        std::vector<bool> seen(static_cast<size_t>(order()), false);
        for (int c : z1) {
            if (seen[static_cast<size_t>(c)]) continue;
            reps.push_back(c);
            for (int a = 0; a < order(); ++a) seen[static_cast<size_t>(star(a, c))] = true;
        }
        return reps;
    }
};

// ---------------------------------------------------------------------------
// Matrix cocycles for the projective linear group with entrywise conjugation
// ---------------------------------------------------------------------------

/// c * sigma(c) = c * conj(c) is projectively trivial, i.e. a scalar matrix.
inline bool z1_check_projective(const GaussianMatrix& c) {
    if (c.det().is_zero()) throw non_invertible_error("cocycle candidate must be invertible");
    GaussianMatrix p = c * c.conj();
    return p.scalar_of().has_value();
}

/// Connecting-map sign of a projective cocycle: lift to the linear group,
/// compute lift * conj(lift) = lambda * I with lambda real, return sign of
/// lambda.  Changing the lift scales lambda by a positive norm.
inline int delta_sign(const GaussianMatrix& lift) {
    GaussianMatrix p = lift * lift.conj();
    auto lambda = p.scalar_of();
    if (!lambda) throw not_structure_error("lift * conj(lift) is not scalar; not a projective cocycle");
    if (!lambda->is_real() || lambda->is_zero())
        throw not_structure_error("cocycle scalar must be real and nonzero");
    return sgn(lambda->re()) > 0 ? 1 : -1;
}

// ---------------------------------------------------------------------------
// Classification of the real-structure classes per the automorphism group
// ---------------------------------------------------------------------------

struct RealStructureClassInvariant {
    std::string label; // "(1,1)", "(1,psi)", "(c,1)", "(c,psi)"
    int delta_sign = 1;
    int psi_component = 0; // +1/-1 for the sign factor; 0 when the factor is the connected group
};

struct ClassificationResult {
    int n = 0, k = 0;
    std::string group_shape;
    std::vector<RealStructureClassInvariant> classes;
    int count() const { return static_cast<int>(classes.size()); }
};

/// Number and invariants of the real-structure classes: two for odd n, two
/// for (2,1), four for even n != 2.  The projective factor contributes the
/// connecting-map sign, the sign factor its own two classes, and the torus
/// factor of the (2,1) case is cohomologically trivial.
inline ClassificationResult classify_real_structures(int n, int k) {
    if (k <= 0 || k >= n) throw config_error("classification needs 0 < k < n");
    ClassificationResult res;
    res.n = n;
    res.k = k;
    if (n == 2) {
        res.group_shape = "PGL_2 x C*";
        res.classes.push_back({"(1,1)", +1, 0});
        res.classes.push_back({"(c,1)", -1, 0});
        return res;
    }
    res.group_shape = "PGL_" + std::to_string(n) + " x {1,psi}";
    if (n % 2 == 1) {
        res.classes.push_back({"(1,1)", +1, +1});
        res.classes.push_back({"(1,psi)", +1, -1});
    } else {
        res.classes.push_back({"(1,1)", +1, +1});
        res.classes.push_back({"(1,psi)", +1, -1});
        res.classes.push_back({"(c,1)", -1, +1});
        res.classes.push_back({"(c,psi)", -1, -1});
    }
    return res;
}

// ---------------------------------------------------------------------------
// Twisted matrix algebra: the fixed points of X -> a_J conj(X) a_J^{-1}
// ---------------------------------------------------------------------------

struct QuaternionSolveResult {
    int nprime = 0;
    int real_dimension = 0;                       // nullspace dimension of the fixed-point system
    std::vector<GaussianMatrix> quaternion_units; // 1, i, j, k as 2x2 complex matrices
    bool units_satisfy_pattern = false;
    bool units_span = false; // the units span the n'=1 solution space
    bool hamilton_ok = false;
};

/// The quaternion units of the twisted 2x2 algebra.
inline std::vector<GaussianMatrix> quaternion_units() {
    GaussianRational i = GaussianRational::i();
    GaussianMatrix one = GaussianMatrix::identity(2);
    GaussianMatrix qi = GaussianMatrix::from_rows({{GaussianRational(0), GaussianRational(1)},
                                                   {GaussianRational(-1), GaussianRational(0)}});
    GaussianMatrix qj = GaussianMatrix::from_rows({{GaussianRational(0), i}, {i, GaussianRational(0)}});
    GaussianMatrix qk = GaussianMatrix::from_rows({{i, GaussianRational(0)}, {GaussianRational(0), -i}});
    return {one, qi, qj, qk};
}

/// Solves the real-linear fixed-point system J conj(Y) = Y J blockwise on
/// 2n' x 2n' matrices and certifies the quaternionic structure of the
/// solution algebra.
inline QuaternionSolveResult twisted_algebra_solve(int nprime) {
    if (nprime < 1) throw config_error("twisted algebra solve needs n' >= 1");
    QuaternionSolveResult res;
    res.nprime = nprime;
    const int n = 2 * nprime;
    GaussianMatrix aj = GaussianMatrix::symplectic_blocks(n);

    // real-linear system: a_J conj(X) - X a_J = 0; unknowns re/im per entry
    const int unknowns = 2 * n * n;
    auto re_index = [n](int r, int c) { return 2 * (r * n + c); };
    std::vector<std::vector<mpq_class>> rows;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            // entry (r,c) of a_J conj(X) - X a_J, split into re and im
            std::vector<mpq_class> re_row(static_cast<size_t>(unknowns), 0);
            std::vector<mpq_class> im_row(static_cast<size_t>(unknowns), 0);
            for (int t = 0; t < n; ++t) {
                const GaussianRational& a = aj.at(r, t); // real entries (0, +-1)
                if (!a.is_zero()) {
                    // a * conj(X_{t,c}) = a*re - i a*im
                    re_row[static_cast<size_t>(re_index(t, c))] += a.re();
                    im_row[static_cast<size_t>(re_index(t, c) + 1)] -= a.re();
                }
                const GaussianRational& b = aj.at(t, c);
                if (!b.is_zero()) {
                    // -X_{r,t} * b
                    re_row[static_cast<size_t>(re_index(r, t))] -= b.re();
                    im_row[static_cast<size_t>(re_index(r, t) + 1)] -= b.re();
                }
            }
            rows.push_back(std::move(re_row));
            rows.push_back(std::move(im_row));
        }
    auto basis = rational_nullspace(rows, unknowns);
    res.real_dimension = static_cast<int>(basis.size());

    res.quaternion_units = quaternion_units();
    // each unit solves the 2x2 system
    GaussianMatrix j2 = GaussianMatrix::symplectic_blocks(2);
    res.units_satisfy_pattern = true;
    for (const auto& u : res.quaternion_units)
        if (!(j2 * u.conj() == u * j2)) res.units_satisfy_pattern = false;

    if (nprime == 1) {
        // the four units are independent and dim = 4, hence they span
        std::vector<std::vector<mpq_class>> coords;
        for (const auto& u : res.quaternion_units) {
            std::vector<mpq_class> v;
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) {
                    v.push_back(u.at(r, c).re());
                    v.push_back(u.at(r, c).im());
                }
            coords.push_back(std::move(v));
        }
        // rank of the 4x8 coordinate matrix
        LinearSystemResult ls = solve_rational_system(
            [&] {
                std::vector<std::vector<mpq_class>> aug;
                for (auto& v : coords) {
                    std::vector<mpq_class> row = v;
                    row.push_back(0);
                    aug.push_back(std::move(row));
                }
                return aug;
            }(),
            8);
        res.units_span = res.real_dimension == 4 && ls.rank == 4;
    } else {
        res.units_span = res.real_dimension == 4 * nprime * nprime;
    }

    // full Hamilton table on {1, i, j, k}
    const auto& u = res.quaternion_units;
    auto eq = [&](const GaussianMatrix& a, const GaussianMatrix& b) { return a == b; };
    const GaussianMatrix &one = u[0], &qi = u[1], &qj = u[2], &qk = u[3];
    res.hamilton_ok = eq(qi * qi, -one) && eq(qj * qj, -one) && eq(qk * qk, -one) && eq(qi * qj, qk) &&
                      eq(qj * qi, -qk) && eq(qj * qk, qi) && eq(qk * qj, -qi) && eq(qk * qi, qj) &&
                      eq(qi * qk, -qj) && eq(one * qi, qi) && eq(qi * one, qi) && eq(one * qj, qj) &&
                      eq(qj * one, qj) && eq(one * qk, qk) && eq(qk * one, qk) && eq(one * one, one);
    return res;
}

/// Existence of real points for the twisted conjugation v -> A conj(v) on the
/// Grassmannian of k-planes: sigma^2 = +1 gives the real form, sigma^2 = -1
/// gives the quaternionic form for even k and nothing for odd k.
enum class RealPointsVerdict { NonemptyReal, NonemptyQuaternionic, Empty };

inline std::string verdict_name(RealPointsVerdict v) {
    switch (v) {
        case RealPointsVerdict::NonemptyReal: return "nonempty-real";
        case RealPointsVerdict::NonemptyQuaternionic: return "nonempty-quaternionic";
        default: return "empty";
    }
}

inline RealPointsVerdict real_points_exist(const GaussianMatrix& a, int k) {
    GaussianMatrix p = a * a.conj();
    auto lambda = p.scalar_of();
    if (!lambda || (!(*lambda == GaussianRational(1)) && !(*lambda == GaussianRational(-1))))
        throw not_structure_error("A conj(A) must be +I or -I");
    if (*lambda == GaussianRational(1)) return RealPointsVerdict::NonemptyReal;
    return k % 2 == 0 ? RealPointsVerdict::NonemptyQuaternionic : RealPointsVerdict::Empty;
}

} // namespace supergrass
