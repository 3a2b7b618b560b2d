#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "supergrass/atlas.hpp"

namespace supergrass {

/// Grading automorphism of one chart: x -> x, xi -> alpha * xi.
inline SuperMorphism theta(const Atlas& atlas, int chart_id, const SuperFunction& alpha) {
    if (alpha.is_zero()) throw config_error("theta requires a nonzero scalar");
    const Chart& ch = atlas.chart(chart_id);
    SuperMorphism m;
    m.table = atlas.table();
    m.source = m.target = chart_id;
    for (const auto& c : ch.coords) {
        SuperFunction v = SuperFunction::variable(atlas.table(), c.var);
        m.pullback.emplace(c.var, c.parity == Parity::Even ? v : alpha * v);
    }
    return m;
}

/// The generic even parameter of the atlas as a scalar.
inline SuperFunction generic_alpha(const Atlas& atlas) {
    if (!atlas.alpha()) throw config_error("atlas was built without the generic parameter");
    return SuperFunction::variable(atlas.table(), *atlas.alpha());
}

/// An automorphism (or anti-automorphism) of the whole atlas: one morphism per
/// source chart; the targets encode the induced chart permutation.
struct AtlasMap {
    std::vector<SuperMorphism> per_chart;

    int target_of(int chart_id) const { return per_chart[static_cast<size_t>(chart_id)].target; }
    const SuperMorphism& at(int chart_id) const { return per_chart[static_cast<size_t>(chart_id)]; }
    bool antiholomorphic() const { return !per_chart.empty() && per_chart.front().antiholomorphic; }
};

inline AtlasMap identity_map(const Atlas& atlas) {
    AtlasMap out;
    for (int i = 0; i < atlas.chart_count(); ++i) out.per_chart.push_back(atlas.identity_on(i));
    return out;
}

/// Composition a after b, chartwise.
inline AtlasMap compose_maps(const AtlasMap& a, const AtlasMap& b) {
    AtlasMap out;
    out.per_chart.reserve(b.per_chart.size());
    for (const auto& mb : b.per_chart) out.per_chart.push_back(compose(a.at(mb.target), mb));
    return out;
}

/// Morphism equality allowing different target charts: the shorter-target side
/// is carried over by the connecting transition first.
inline bool equal_up_to_transition(const Atlas& atlas, const SuperMorphism& m1, const SuperMorphism& m2) {
    if (m1.source != m2.source || m1.antiholomorphic != m2.antiholomorphic) return false;
    if (m1.target == m2.target) return morphism_equal(m1, m2);
    return morphism_equal(compose(atlas.transition(m1.target, m2.target), m1), m2);
}

inline bool map_equal(const Atlas& atlas, const AtlasMap& a, const AtlasMap& b) {
    if (a.per_chart.size() != b.per_chart.size()) return false;
    for (size_t i = 0; i < a.per_chart.size(); ++i)
        if (!equal_up_to_transition(atlas, a.per_chart[i], b.per_chart[i])) return false;
    return true;
}

inline bool is_identity_map(const AtlasMap& a) {
    for (const auto& m : a.per_chart)
        if (!is_identity_morphism(m)) return false;
    return true;
}

/// a o a = id over every chart, allowing the chart permutation to move.
inline CheckReport involution_check(const Atlas& atlas, const AtlasMap& a) {
    for (int i = 0; i < atlas.chart_count(); ++i) {
        SuperMorphism square = compose(a.at(a.target_of(i)), a.at(i));
        SuperMorphism id = atlas.identity_on(i);
        if (square.target != i) {
            if (!equal_up_to_transition(atlas, square, id))
                return CheckReport::fail("square of the map is not the identity on chart " +
                                             atlas.chart(i).index.str(),
                                         SuperFunction::zero(atlas.table()), SuperFunction::zero(atlas.table()));
            continue;
        }
        if (auto v = first_mismatch(square, id))
            return CheckReport::fail("square of the map moves coordinate " + atlas.table()->name(*v),
                                     square.at(*v), id.at(*v));
    }
    return CheckReport::ok();
}

/// Compatibility with the atlas: a_J o T(i->j) = T(s(i)->s(j)) o a_I for all
/// ordered chart pairs; this is what makes the chartwise data one morphism.
inline CheckReport atlas_compatibility_check(const Atlas& atlas, const AtlasMap& a) {
    for (int i = 0; i < atlas.chart_count(); ++i)
        for (int j = 0; j < atlas.chart_count(); ++j) {
            if (i == j) continue;
            SuperMorphism lhs = compose(a.at(j), atlas.transition(i, j));
            SuperMorphism rhs = compose(atlas.transition(a.target_of(i), a.target_of(j)), a.at(i));
            if (auto v = first_mismatch(lhs, rhs)) {
                std::ostringstream os;
                os << "map is incompatible with transition " << atlas.chart(i).index.str() << " -> "
                   << atlas.chart(j).index.str() << " on coordinate " << atlas.table()->name(*v);
                return CheckReport::fail(os.str(), lhs.at(*v), rhs.at(*v));
            }
        }
    return CheckReport::ok();
}

/// The standard parity sign automorphism: x -> x, xi -> -xi on every chart.
inline AtlasMap parity_sign_map(const Atlas& atlas) {
    AtlasMap out;
    SuperFunction minus_one = SuperFunction::constant(atlas.table(), GaussianRational(-1));
    for (int i = 0; i < atlas.chart_count(); ++i) out.per_chart.push_back(theta(atlas, i, minus_one));
    return out;
}

/// Chartwise grading map for a fixed scalar, as an atlas map (identity on the
/// chart permutation).
inline AtlasMap grading_map(const Atlas& atlas, const SuperFunction& alpha) {
    AtlasMap out;
    for (int i = 0; i < atlas.chart_count(); ++i) out.per_chart.push_back(theta(atlas, i, alpha));
    return out;
}

struct LiftWitness {
    int from = -1, to = -1;
    VarId coordinate = kNoVar;
    SuperFunction lhs, rhs;     // the two sides of the failing grading identity
    SuperFunction degree2_term; // nonzero degree-2 component certifying the failure
};

struct LiftCompatReport {
    bool pass = true;
    std::vector<LiftWitness> witnesses;
};

/// Grading compatibility of every transition: theta on the target side equals
/// theta on the source side through the pullback.  A pass certifies that the
/// homothety lifts with the standard chartwise formula.
inline LiftCompatReport check_lift_compatibility(const Atlas& atlas, const SuperFunction& alpha,
                                                 bool stop_at_first_failure = true) {
    LiftCompatReport report;
    for (int i = 0; i < atlas.chart_count(); ++i)
        for (int j = 0; j < atlas.chart_count(); ++j) {
            if (i == j) continue;
            if (!report.pass && stop_at_first_failure) return report;
            const SuperMorphism& t = atlas.transition(i, j);
            SuperMorphism lhs = compose(t, theta(atlas, i, alpha));
            SuperMorphism rhs = compose(theta(atlas, j, alpha), t);
            if (auto v = first_mismatch(lhs, rhs)) {
                LiftWitness w;
                w.from = i;
                w.to = j;
                w.coordinate = *v;
                w.lhs = lhs.at(*v);
                w.rhs = rhs.at(*v);
                // locate an inhomogeneous component of the transition itself
                w.degree2_term = SuperFunction::zero(atlas.table());
                for (const auto& [tv, tf] : t.pullback) {
                    int base = atlas.table()->parity(tv) == Parity::Even ? 0 : 1;
                    SuperFunction comp = tf.xi_component(base + 2);
                    if (!comp.is_zero()) {
                        w.degree2_term = comp;
                        break;
                    }
                }
                report.pass = false;
                report.witnesses.push_back(std::move(w));
            }
        }
    return report;
}

// ---------------------------------------------------------------------------
// Lift normalization on a superdomain
// ---------------------------------------------------------------------------

/// Standalone superdomain: p even and q odd coordinates, optionally with the
/// generic even parameter adjoined.
struct SuperDomain {
    TablePtr table;
    std::vector<VarId> evens, odds;
    std::optional<VarId> alpha;

    std::vector<VarId> all_vars() const {
        std::vector<VarId> out = evens;
        out.insert(out.end(), odds.begin(), odds.end());
        return out;
    }
};

inline SuperDomain make_superdomain(int p, int q, bool with_alpha = true) {
    auto table = std::make_shared<VariableTable>();
    SuperDomain d;
    for (int i = 1; i <= p; ++i) d.evens.push_back(table->add("x" + std::to_string(i), Parity::Even));
    for (int j = 1; j <= q; ++j) d.odds.push_back(table->add("xi" + std::to_string(j), Parity::Odd));
    if (with_alpha) d.alpha = table->add("alpha", Parity::Even, /*is_param=*/true);
    d.table = std::move(table);
    return d;
}

/// Chart-level homothety lift candidate: psi(x) = x + F_2 + F_4 + ...,
/// psi(xi) = alpha (xi + G_3 + G_5 + ...).
struct LiftCandidate {
    Assignment psi;
    SuperFunction alpha;
};

inline void validate_lift_shape(const SuperDomain& d, const LiftCandidate& cand) {
    for (VarId v : d.evens) {
        auto it = cand.psi.find(v);
        if (it == cand.psi.end() || !(it->second.xi_component(0) == SuperFunction::variable(d.table, v)))
            throw malformed_lift_error("even pullback must be the coordinate plus higher degrees");
    }
    for (VarId v : d.odds) {
        auto it = cand.psi.find(v);
        SuperFunction expected = cand.alpha * SuperFunction::variable(d.table, v);
        if (it == cand.psi.end() || !(it->second.xi_component(1) == expected))
            throw malformed_lift_error("odd pullback must be alpha times the coordinate plus higher degrees");
    }
}

inline Assignment identity_assignment(const SuperDomain& d) {
    Assignment a;
    for (VarId v : d.all_vars()) a.emplace(v, SuperFunction::variable(d.table, v));
    return a;
}

/// Applies one assignment after another: (a_then o first)(v) = first(v)
/// rewritten through a_then.  The result substitutes like running `first`
/// and then `a_then` on the symbols.
inline Assignment chain_assignments(const Assignment& a_then, const Assignment& first, const TablePtr& table) {
    Assignment out;
    for (const auto& [v, f] : first) out.emplace(v, substitute(f, a_then, table));
    return out;
}

/// Inverse of a unipotent coordinate change h(v) = v + d(v) with nilpotent
/// corrections, by fixpoint iteration.
inline Assignment invert_unipotent(const SuperDomain& d, const Assignment& h) {
    Assignment inv = identity_assignment(d);
    const int cap = static_cast<int>(d.odds.size()) + 2;
    for (int round = 0; round < cap; ++round) {
        Assignment next;
        bool stable = true;
        for (VarId v : d.all_vars()) {
            SuperFunction dv = h.at(v) - SuperFunction::variable(d.table, v);
            SuperFunction candidate = SuperFunction::variable(d.table, v) - substitute(dv, inv, d.table);
            if (!(candidate == inv.at(v))) stable = false;
            next.emplace(v, std::move(candidate));
        }
        inv = std::move(next);
        if (stable) break;
    }
    for (VarId v : d.all_vars())
        if (!(substitute(h.at(v), inv, d.table) == SuperFunction::variable(d.table, v)))
            throw malformed_lift_error("coordinate change is not unipotently invertible");
    return inv;
}

/// Conjugates a lift by a coordinate change: new_psi = inv o psi o h on the
/// coordinate symbols.
inline Assignment conjugate_lift(const SuperDomain& d, const Assignment& psi, const Assignment& h,
                                 const Assignment& inv) {
    Assignment out;
    for (VarId v : d.all_vars()) {
        SuperFunction e = substitute(h.at(v), psi, d.table);
        out.emplace(v, substitute(e, inv, d.table));
    }
    return out;
}

inline Assignment conjugate_lift(const SuperDomain& d, const Assignment& psi, const Assignment& h) {
    return conjugate_lift(d, psi, h, invert_unipotent(d, h));
}

struct NormalizedLift {
    LiftCandidate lift;
    Assignment coordinate_change;         // total change, new coordinates in terms of old
    Assignment coordinate_change_inverse; // old coordinates in terms of new
};

/// Degree-by-degree normalization of a lift candidate.  `order` is the order
/// of the scalar: 0 stands for generic/infinite, otherwise the exact order of
/// a concrete alpha in Q(i).  Degrees with alpha^(2p) = 1 are skipped; for odd
/// or generic order the result is the standard lift, for even order only
/// degree multiples of the order survive.
inline NormalizedLift normalize_lift(const SuperDomain& d, const LiftCandidate& candidate, int order) {
    validate_lift_shape(d, candidate);
    const SuperFunction one = SuperFunction::one(d.table);
    Assignment psi = candidate.psi;
    Assignment h_total = identity_assignment(d);
    Assignment inv_total = identity_assignment(d);
    const int q = static_cast<int>(d.odds.size());

    auto alpha_power_is_one = [&](int e) {
        if (order == 0) return false; // generic parameter, no relations
        return e % order == 0;
    };

    for (int p = 1; 2 * p <= q; ++p) {
        if (alpha_power_is_one(2 * p)) continue;
        SuperFunction c = one / (one - candidate.alpha.pow(2 * p));
        // (I) absorb the even-degree-2p corrections of the even pullbacks
        Assignment h1 = identity_assignment(d);
        bool any = false;
        for (VarId v : d.evens) {
            SuperFunction f = (psi.at(v) - SuperFunction::variable(d.table, v)).xi_component(2 * p);
            if (f.is_zero()) continue;
            h1.at(v) = SuperFunction::variable(d.table, v) + c * f;
            any = true;
        }
        if (any) {
            Assignment inv1 = invert_unipotent(d, h1);
            psi = conjugate_lift(d, psi, h1, inv1);
            h_total = chain_assignments(h_total, h1, d.table);
            inv_total = chain_assignments(inv1, inv_total, d.table);
        }
        // (II) absorb the odd-degree-(2p+1) corrections of the odd pullbacks
        Assignment h2 = identity_assignment(d);
        any = false;
        for (VarId v : d.odds) {
            SuperFunction g = psi.at(v).xi_component(2 * p + 1) / candidate.alpha;
            if (g.is_zero()) continue;
            h2.at(v) = SuperFunction::variable(d.table, v) + c * g;
            any = true;
        }
        if (any) {
            Assignment inv2 = invert_unipotent(d, h2);
            psi = conjugate_lift(d, psi, h2, inv2);
            h_total = chain_assignments(h_total, h2, d.table);
            inv_total = chain_assignments(inv2, inv_total, d.table);
        }
    }

    NormalizedLift out;
    out.lift = LiftCandidate{std::move(psi), candidate.alpha};
    out.coordinate_change = std::move(h_total);
    out.coordinate_change_inverse = std::move(inv_total);
    validate_lift_shape(d, out.lift);
    return out;
}

/// The grading eigencondition on a normalized lift: theta fixes the even
/// pullbacks and scales the odd ones by alpha.
inline bool lift_is_grading_homogeneous(const SuperDomain& d, const LiftCandidate& lift) {
    Assignment theta_assign;
    for (VarId v : d.evens) theta_assign.emplace(v, SuperFunction::variable(d.table, v));
    for (VarId v : d.odds) theta_assign.emplace(v, lift.alpha * SuperFunction::variable(d.table, v));
    for (VarId v : d.evens)
        if (!(substitute(lift.psi.at(v), theta_assign, d.table) == lift.psi.at(v))) return false;
    for (VarId v : d.odds)
        if (!(substitute(lift.psi.at(v), theta_assign, d.table) == lift.alpha * lift.psi.at(v))) return false;
    return true;
}

inline bool lift_is_standard(const SuperDomain& d, const LiftCandidate& lift) {
    for (VarId v : d.evens)
        if (!(lift.psi.at(v) == SuperFunction::variable(d.table, v))) return false;
    for (VarId v : d.odds)
        if (!(lift.psi.at(v) == lift.alpha * SuperFunction::variable(d.table, v))) return false;
    return true;
}

// ---------------------------------------------------------------------------
// The perpendicular involution on the split pi-atlas, and the projective
// linear action
// ---------------------------------------------------------------------------

/// Complement chart map V -> V-perp on the split atlas of the pi flavor with
/// n = 2k: chart I goes to its complement, and the target coordinate with
/// labels (r, c) pulls back to minus the source coordinate with labels (c, r).
inline AtlasMap perp_involution(const Atlas& atlas) {
    if (atlas.flavor() != Flavor::Pi) throw config_error("perp involution requires the pi flavor");
    if (atlas.n() != 2 * atlas.k()) throw config_error("perp involution requires n = 2k");
    if (!atlas.graded()) throw config_error("perp involution lives on the split (gr) atlas");
    AtlasMap out;
    for (int i = 0; i < atlas.chart_count(); ++i) {
        const Chart& src = atlas.chart(i);
        ChartIndex comp;
        comp.flavor = Flavor::Pi;
        for (int v = 1; v <= atlas.n(); ++v)
            if (!std::binary_search(src.index.even_set.begin(), src.index.even_set.end(), v))
                comp.even_set.push_back(v);
        int j = atlas.chart_id(comp);
        const Chart& dst = atlas.chart(j);
        SuperMorphism m;
        m.table = atlas.table();
        m.source = i;
        m.target = j;
        for (const auto& c : dst.coords) {
            // target labels: row r in I, column c0 in complement(I)
            VarId source_var = kNoVar;
            for (const auto& s : src.coords)
                if (s.parity == c.parity && s.label_row == c.label_col && s.label_col == c.label_row) {
                    source_var = s.var;
                    break;
                }
            if (source_var == kNoVar) throw index_error("perp involution: no transposed source coordinate");
            m.pullback.emplace(c.var, -SuperFunction::variable(atlas.table(), source_var));
        }
        out.per_chart.push_back(std::move(m));
    }
    return out;
}

/// Action of an invertible matrix on the pi-atlas: Z -> diag(g,g) Z followed
/// by renormalization into a deterministic target chart.  Scalar matrices act
/// trivially, so the action factors through the projective group.
inline AtlasMap projective_action(const Atlas& atlas, const GaussianMatrix& g) {
    if (atlas.flavor() != Flavor::Pi) throw config_error("projective action implemented on the pi flavor");
    if (g.rows() != atlas.n() || g.cols() != atlas.n()) throw dimension_error("matrix size must match n");
    if (g.det().is_zero()) throw non_invertible_error("projective action requires an invertible matrix");

    const int n = atlas.n();
    GaussianMatrix big(2 * n, 2 * n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            big.at(r, c) = g.at(r, c);
            big.at(n + r, n + c) = g.at(r, c);
        }
    SuperMatrix upstairs = SuperMatrix::from_numeric(atlas.table(), big);

    auto signed_perm = g.signed_permutation_pattern();

    AtlasMap out;
    for (int i = 0; i < atlas.chart_count(); ++i) {
        const Chart& src = atlas.chart(i);
        int target = -1;
        if (signed_perm) {
            std::vector<int> image;
            for (int v : src.index.even_set) image.push_back((*signed_perm)[static_cast<size_t>(v - 1)].first + 1);
            std::sort(image.begin(), image.end());
            ChartIndex idx;
            idx.flavor = Flavor::Pi;
            idx.even_set = std::move(image);
            target = atlas.chart_id(idx);
        } else {
            for (int j = 0; j < atlas.chart_count(); ++j) {
                // invertibility of the renormalizer at the chart origin
                GaussianMatrix sub(atlas.k(), atlas.k());
                const auto& rows_j = atlas.chart(j).index.even_set;
                const auto& cols_i = src.index.even_set;
                for (int r = 0; r < atlas.k(); ++r)
                    for (int c = 0; c < atlas.k(); ++c) sub.at(r, c) = g.at(rows_j[static_cast<size_t>(r)] - 1, cols_i[static_cast<size_t>(c)] - 1);
                if (!sub.det().is_zero()) {
                    target = j;
                    break;
                }
            }
            if (target < 0) throw non_invertible_error("no admissible target chart for the projective action");
        }
        SuperMatrix w = atlas.renormalize(upstairs * src.z, target);
        SuperMorphism m;
        m.table = atlas.table();
        m.source = i;
        m.target = target;
        m.pullback = atlas.read_coordinates(w, target);
        check_morphism_parity(m);
        if (atlas.graded()) m = gr_morphism(m);
        out.per_chart.push_back(std::move(m));
    }
    return out;
}

} // namespace supergrass
