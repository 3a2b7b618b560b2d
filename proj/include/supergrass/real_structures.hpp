#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "supergrass/galois.hpp"
#include "supergrass/lifts.hpp"

namespace supergrass {

enum class StructureKind { Mu0, PsiMu0, CMu0, CPsiMu0 };

inline std::string structure_name(StructureKind k) {
    switch (k) {
        case StructureKind::Mu0: return "mu0";
        case StructureKind::PsiMu0: return "psi-mu0";
        case StructureKind::CMu0: return "c-mu0";
        default: return "c-psi-mu0";
    }
}

inline std::optional<StructureKind> structure_from_name(const std::string& s) {
    for (StructureKind k :
         {StructureKind::Mu0, StructureKind::PsiMu0, StructureKind::CMu0, StructureKind::CPsiMu0})
        if (structure_name(k) == s) return k;
    return std::nullopt;
}

/// Antiholomorphic involutive automorphism of the pi-atlas, realized chart by
/// chart.  The base cocycle (if any) is the projective matrix composed in
/// front of the standard conjugation; the sign twist composes the parity sign
/// automorphism.
struct RealStructure {
    StructureKind kind = StructureKind::Mu0;
    std::optional<GaussianMatrix> base_cocycle;
    bool sign_twist = false;
    AtlasMap realization;
};

/// The standard conjugation: every coordinate maps to its conjugate partner,
/// chart by chart, with the identity base map.
inline AtlasMap conjugation_map(const Atlas& atlas) {
    if (!atlas.doubled()) throw conjugation_error("real structures need an atlas with conjugate partners");
    AtlasMap out;
    for (int i = 0; i < atlas.chart_count(); ++i) {
        const Chart& ch = atlas.chart(i);
        SuperMorphism m;
        m.table = atlas.table();
        m.source = m.target = i;
        m.antiholomorphic = true;
        for (const auto& c : ch.coords)
            m.pullback.emplace(c.var, SuperFunction::variable(atlas.table(), atlas.table()->partner(c.var)));
        out.per_chart.push_back(std::move(m));
    }
    return out;
}

inline RealStructure standard_mu(const Atlas& atlas) {
    if (atlas.flavor() != Flavor::Pi) throw config_error("real structures are built on the pi flavor");
    RealStructure s;
    s.kind = StructureKind::Mu0;
    s.realization = conjugation_map(atlas);
    return s;
}

/// Composes a holomorphic automorphism (projective matrix and/or parity sign)
/// with a real structure.  The matrix must satisfy the cocycle condition
/// g conj(g) = lambda I with lambda real, which is exactly what makes the
/// composition square to the identity.
inline RealStructure compose_real(const Atlas& atlas, std::optional<GaussianMatrix> g, bool sign_twist,
                                  const RealStructure& mu) {
    RealStructure out;
    out.base_cocycle = g;
    out.sign_twist = sign_twist != mu.sign_twist;
    if (g) {
        GaussianMatrix p = *g * g->conj();
        auto lambda = p.scalar_of();
        if (!lambda || !lambda->is_real() || lambda->is_zero()) {
            std::ostringstream os;
            os << "not an involution: g conj(g) is not a real scalar matrix";
            throw not_involution_error(os.str());
        }
    }
    AtlasMap realization = mu.realization;
    if (sign_twist) realization = compose_maps(parity_sign_map(atlas), realization);
    if (g) realization = compose_maps(projective_action(atlas, *g), realization);
    out.realization = std::move(realization);
    if (!g && mu.base_cocycle) out.base_cocycle = mu.base_cocycle;
    bool has_cocycle = out.base_cocycle.has_value();
    out.kind = has_cocycle ? (out.sign_twist ? StructureKind::CPsiMu0 : StructureKind::CMu0)
                           : (out.sign_twist ? StructureKind::PsiMu0 : StructureKind::Mu0);
    return out;
}

/// All structure representatives available for the atlas: the conjugation and
/// its sign twist always; the two twisted ones when n is even.
inline std::vector<RealStructure> structure_representatives(const Atlas& atlas) {
    std::vector<RealStructure> out;
    RealStructure mu0 = standard_mu(atlas);
    out.push_back(mu0);
    out.push_back(compose_real(atlas, std::nullopt, true, mu0));
    if (atlas.n() % 2 == 0) {
        GaussianMatrix aj = GaussianMatrix::symplectic_blocks(atlas.n());
        out.push_back(compose_real(atlas, aj, false, mu0));
        out.push_back(compose_real(atlas, aj, true, mu0));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Fixed-point relations
// ---------------------------------------------------------------------------

enum class FixedStatus { Consistent, Empty, NotApplicable, NonAffine };

/// Real-linear relations among the real and imaginary parts of the chart
/// coordinates (odd coordinates split exactly like even ones).  Unknown order:
/// (re, im) per coordinate, in the chart's canonical coordinate order.
struct FixedRelationSet {
    int chart_id = -1;
    FixedStatus status = FixedStatus::NotApplicable;
    int dimension = -1; // real dimension of the solution space when consistent
    std::vector<VarId> coordinate_order;
    std::vector<std::vector<mpq_class>> relations; // rows over 2*#coords unknowns, last column constant
    std::string diagnostic;
};

/// Extracts the fixed-point relations of a structure on a base-invariant
/// chart.  Charts moved by the base map report NotApplicable; realizations
/// with a non-constant renormalizer report NonAffine and point to the global
/// existence criterion.
inline FixedRelationSet fixed_relations(const Atlas& atlas, const RealStructure& mu, int chart_id) {
    FixedRelationSet out;
    out.chart_id = chart_id;
    const SuperMorphism& m = mu.realization.at(chart_id);
    if (m.target != chart_id) {
        out.status = FixedStatus::NotApplicable;
        out.diagnostic = "chart is not invariant under the base map";
        return out;
    }
    const Chart& ch = atlas.chart(chart_id);
    for (const auto& c : ch.coords) out.coordinate_order.push_back(c.var);
    const int ncoords = static_cast<int>(out.coordinate_order.size());
    const int unknowns = 2 * ncoords;
    std::map<VarId, int> slot;      // coordinate var -> unknown base index
    std::map<VarId, int> bar_slot;  // conjugated var -> unknown base index of the original
    for (int i = 0; i < ncoords; ++i) {
        VarId v = out.coordinate_order[static_cast<size_t>(i)];
        slot[v] = 2 * i;
        bar_slot[atlas.table()->partner(v)] = 2 * i;
    }

    for (int i = 0; i < ncoords; ++i) {
        VarId v = out.coordinate_order[static_cast<size_t>(i)];
        const SuperFunction& e = m.at(v);
        // affine check: constant denominator, total degree <= 1 monomials
        if (!(e.den().term_count() == 1 && e.den().leading_term().first.is_constant())) {
            out.status = FixedStatus::NonAffine;
            out.diagnostic = "renormalizing submatrix is not constant on this chart; "
                             "use the global existence criterion (real_points_exist)";
            return out;
        }
        std::vector<mpq_class> re_row(static_cast<size_t>(unknowns) + 1, 0);
        std::vector<mpq_class> im_row(static_cast<size_t>(unknowns) + 1, 0);
        // z_v - E = 0
        re_row[static_cast<size_t>(2 * i)] += 1;
        im_row[static_cast<size_t>(2 * i + 1)] += 1;
        for (const auto& [mono, coeff] : e.num().terms()) {
            int degree = mono.even_degree() + mono.odd_degree();
            if (degree > 1) {
                out.status = FixedStatus::NonAffine;
                out.diagnostic = "fixed equation is not affine-linear; "
                                 "use the global existence criterion (real_points_exist)";
                return out;
            }
            if (degree == 0) {
                // constant kappa moves to the right-hand side; the equation is
                // z - kappa - ... = 0, so the rhs column gets +kappa
                re_row[static_cast<size_t>(unknowns)] += coeff.re();
                im_row[static_cast<size_t>(unknowns)] += coeff.im();
                continue;
            }
            VarId w = mono.even.empty() ? mono.odd.front() : mono.even.front().first;
            auto s = slot.find(w);
            auto bs = bar_slot.find(w);
            if (s != slot.end()) {
                // lambda * z_w with z_w = re + i im
                re_row[static_cast<size_t>(s->second)] -= coeff.re();
                re_row[static_cast<size_t>(s->second + 1)] += coeff.im();
                im_row[static_cast<size_t>(s->second)] -= coeff.im();
                im_row[static_cast<size_t>(s->second + 1)] -= coeff.re();
            } else if (bs != bar_slot.end()) {
                // lambda * conj(z_w) with conj(z_w) = re - i im
                re_row[static_cast<size_t>(bs->second)] -= coeff.re();
                re_row[static_cast<size_t>(bs->second + 1)] -= coeff.im();
                im_row[static_cast<size_t>(bs->second)] -= coeff.im();
                im_row[static_cast<size_t>(bs->second + 1)] += coeff.re();
            } else {
                out.status = FixedStatus::NonAffine;
                out.diagnostic = "fixed equation references a foreign coordinate";
                return out;
            }
        }
        out.relations.push_back(std::move(re_row));
        out.relations.push_back(std::move(im_row));
    }

    LinearSystemResult ls = solve_rational_system(out.relations, unknowns);
    if (!ls.consistent) {
        out.status = FixedStatus::Empty;
        out.dimension = -1;
    } else {
        out.status = FixedStatus::Consistent;
        out.dimension = ls.solution_dimension();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Pattern matching against the four chart models
// ---------------------------------------------------------------------------

enum class ChartModel { PiR, PiRPrime, PiH, PiHPrime, Empty, Unknown };

inline std::string chart_model_name(ChartModel m) {
    switch (m) {
        case ChartModel::PiR: return "Pi-R";
        case ChartModel::PiRPrime: return "Pi-R-prime";
        case ChartModel::PiH: return "Pi-H";
        case ChartModel::PiHPrime: return "Pi-H-prime";
        case ChartModel::Empty: return "empty";
        default: return "unknown";
    }
}

namespace detail {

/// Canonical reduced row echelon form of the homogeneous part (the relation
/// sets of interest have zero right-hand side).
inline std::vector<std::vector<mpq_class>> relation_rowspace(const std::vector<std::vector<mpq_class>>& rows,
                                                             int unknowns) {
    LinearSystemResult ls = solve_rational_system(rows, unknowns);
    std::vector<std::vector<mpq_class>> out;
    for (const auto& r : ls.rref) {
        bool zero = true;
        for (const auto& v : r)
            if (v != 0) zero = false;
        if (!zero) out.push_back(r);
    }
    return out;
}

struct BlockSlot {
    // unknown base indices of the four block coordinates z11, z12, z21, z22
    int z11 = -1, z12 = -1, z21 = -1, z22 = -1;
    Parity parity = Parity::Even;
};

} // namespace detail

/// Groups the coordinates of a paired chart into 2x2 blocks: index pairs
/// (2t-1, 2t) on both the row and the column labels.
inline std::vector<detail::BlockSlot> coordinate_blocks(const Atlas& atlas, const FixedRelationSet& rel) {
    const Chart& ch = atlas.chart(rel.chart_id);
    std::map<VarId, int> base;
    for (size_t i = 0; i < rel.coordinate_order.size(); ++i) base[rel.coordinate_order[i]] = 2 * static_cast<int>(i);
    std::map<std::tuple<int, int, int>, detail::BlockSlot> blocks; // (row pair, col pair, parity)
    for (const auto& c : ch.coords) {
        int rp = (c.label_row + 1) / 2, cp = (c.label_col + 1) / 2;
        bool r_first = c.label_row % 2 == 1, c_first = c.label_col % 2 == 1;
        auto key = std::make_tuple(rp, cp, c.parity == Parity::Even ? 0 : 1);
        detail::BlockSlot& b = blocks[key];
        b.parity = c.parity;
        int idx = base.at(c.var);
        if (r_first && c_first)
            b.z11 = idx;
        else if (r_first && !c_first)
            b.z12 = idx;
        else if (!r_first && c_first)
            b.z21 = idx;
        else
            b.z22 = idx;
    }
    std::vector<detail::BlockSlot> out;
    for (auto& [key, b] : blocks) {
        if (b.z11 < 0 || b.z12 < 0 || b.z21 < 0 || b.z22 < 0)
            throw config_error("chart coordinates do not group into index-paired blocks");
        out.push_back(b);
    }
    return out;
}

/// Matches a consistent relation set against the four chart models; Empty for
/// inconsistent sets, Unknown when nothing matches.
inline ChartModel match_quaternionic(const Atlas& atlas, const FixedRelationSet& rel) {
    if (rel.status == FixedStatus::Empty) return ChartModel::Empty;
    if (rel.status != FixedStatus::Consistent) return ChartModel::Unknown;
    const Chart& ch = atlas.chart(rel.chart_id);
    const int unknowns = 2 * static_cast<int>(rel.coordinate_order.size());
    auto actual = detail::relation_rowspace(rel.relations, unknowns);

    auto try_match = [&](const std::vector<std::vector<mpq_class>>& pattern) {
        return detail::relation_rowspace(pattern, unknowns) == actual;
    };
    auto row = [&](std::initializer_list<std::pair<int, long>> entries) {
        std::vector<mpq_class> r(static_cast<size_t>(unknowns) + 1, 0);
        for (auto [idx, c] : entries) r[static_cast<size_t>(idx)] = c;
        return r;
    };

    // Pi-R: every coordinate real.  Pi-R': even real, odd pure imaginary.
    {
        std::vector<std::vector<mpq_class>> pi_r, pi_r_prime;
        for (size_t i = 0; i < rel.coordinate_order.size(); ++i) {
            VarId v = rel.coordinate_order[i];
            int re = 2 * static_cast<int>(i), im = re + 1;
            pi_r.push_back(row({{im, 1}}));
            pi_r_prime.push_back(row({{atlas.table()->parity(v) == Parity::Even ? im : re, 1}}));
        }
        if (try_match(pi_r)) return ChartModel::PiR;
        if (try_match(pi_r_prime)) return ChartModel::PiRPrime;
    }

    // blockwise quaternionic patterns need index-paired charts
    bool paired = ch.index.even_set.size() % 2 == 0;
    for (size_t t = 0; paired && t + 1 < ch.index.even_set.size(); t += 2)
        if (ch.index.even_set[t + 1] != ch.index.even_set[t] + 1 || ch.index.even_set[t] % 2 == 0) paired = false;
    if (paired) {
        auto blocks = coordinate_blocks(atlas, rel);
        std::vector<std::vector<mpq_class>> pi_h, pi_h_prime;
        for (const auto& b : blocks) {
            // z11 = conj(z22), z12 = -conj(z21)
            std::vector<std::vector<mpq_class>> quaternion_rows = {
                row({{b.z11, 1}, {b.z22, -1}}),
                row({{b.z11 + 1, 1}, {b.z22 + 1, 1}}),
                row({{b.z12, 1}, {b.z21, 1}}),
                row({{b.z12 + 1, 1}, {b.z21 + 1, -1}}),
            };
            for (auto& r : quaternion_rows) pi_h.push_back(r);
            if (b.parity == Parity::Even) {
                for (auto& r : quaternion_rows) pi_h_prime.push_back(std::move(r));
            } else {
                // xi11 = -conj(xi22), xi21 = conj(xi12)
                pi_h_prime.push_back(row({{b.z11, 1}, {b.z22, 1}}));
                pi_h_prime.push_back(row({{b.z11 + 1, 1}, {b.z22 + 1, -1}}));
                pi_h_prime.push_back(row({{b.z21, 1}, {b.z12, -1}}));
                pi_h_prime.push_back(row({{b.z21 + 1, 1}, {b.z12 + 1, 1}}));
            }
        }
        if (try_match(pi_h)) return ChartModel::PiH;
        if (try_match(pi_h_prime)) return ChartModel::PiHPrime;
    }
    return ChartModel::Unknown;
}

// ---------------------------------------------------------------------------
// Emptiness certificate on the homogeneous model
// ---------------------------------------------------------------------------

/// For a chart moved by the base map, composes the realization with the
/// transition back and cross-multiplies the fixed equation of an even
/// coordinate.  Returns true when some equation realifies to a sum of squares
/// plus a positive constant, which has no real solutions.
inline bool empty_fixed_locus_certificate(const Atlas& atlas, const RealStructure& mu, int chart_id) {
    const SuperMorphism& m = mu.realization.at(chart_id);
    SuperMorphism s = m.target == chart_id ? m : compose(atlas.transition(m.target, chart_id), m);
    const Chart& ch = atlas.chart(chart_id);
    for (const auto& c : ch.coords) {
        if (c.parity != Parity::Even) continue;
        const SuperFunction& e = s.at(c.var);
        SuperPolynomial eq =
            SuperPolynomial::variable(atlas.table(), c.var) * e.den() - e.num(); // z * den - num = 0
        SuperPolynomial body = eq.body();
        if (body.is_zero()) continue;
        // realify: v -> re + i*im, conj(v) -> re - i*im on a scratch table
        auto scratch = std::make_shared<VariableTable>();
        Assignment realify;
        std::vector<VarId> used = body.used_vars();
        bool ok = true;
        for (VarId v : used) {
            VarId orig = v;
            if (atlas.table()->has_partner(v) && atlas.table()->partner(v) < v) orig = atlas.table()->partner(v);
            std::string base_name = atlas.table()->name(orig);
            if (scratch->find("re_" + base_name) != kNoVar) continue;
            scratch->add("re_" + base_name, Parity::Even);
            scratch->add("im_" + base_name, Parity::Even);
        }
        TablePtr scratch_ptr = scratch;
        for (VarId v : used) {
            VarId orig = v;
            bool is_bar = atlas.table()->has_partner(v) && atlas.table()->partner(v) < v;
            if (is_bar) orig = atlas.table()->partner(v);
            std::string base_name = atlas.table()->name(orig);
            SuperFunction re = SuperFunction::variable(scratch_ptr, scratch_ptr->find("re_" + base_name));
            SuperFunction im = SuperFunction::variable(scratch_ptr, scratch_ptr->find("im_" + base_name));
            SuperFunction unit = SuperFunction::constant(scratch_ptr, GaussianRational::i());
            realify.emplace(v, is_bar ? re - unit * im : re + unit * im);
        }
        if (!ok) continue;
        SuperFunction realified = substitute(body, realify, scratch_ptr);
        if (!realified.is_polynomial()) continue;
        const SuperPolynomial& rp = realified.num();
        if (rp.is_zero()) continue;
        bool positive = true;
        bool has_positive_constant = false;
        for (const auto& [mono, coeff] : rp.terms()) {
            if (!coeff.is_real() || sgn(coeff.re()) <= 0) positive = false;
            for (const auto& [v, ex] : mono.even)
                if (ex % 2 != 0) positive = false;
            if (mono.is_constant() && coeff.is_real() && sgn(coeff.re()) > 0) has_positive_constant = true;
        }
        if (positive && has_positive_constant) return true;
    }
    return false;
}

} // namespace supergrass
