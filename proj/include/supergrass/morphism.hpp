#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "supergrass/chart.hpp"

namespace supergrass {

/// Pullback map between charts: each target coordinate is assigned a
/// SuperFunction in the source chart's coordinates.  Antiholomorphic morphisms
/// write their pullbacks in the conjugated (barred) source coordinates; two of
/// them compose to a holomorphic one.
struct SuperMorphism {
    TablePtr table;
    int source = -1;
    int target = -1;
    bool antiholomorphic = false;
    Assignment pullback; // target coordinate var -> expression in source vars

    const SuperFunction& at(VarId v) const {
        auto it = pullback.find(v);
        if (it == pullback.end()) throw index_error("morphism does not assign this coordinate");
        return it->second;
    }
};

inline SuperMorphism identity_morphism(const TablePtr& table, const Chart& chart, int chart_id) {
    SuperMorphism m;
    m.table = table;
    m.source = m.target = chart_id;
    for (const auto& c : chart.coords) m.pullback.emplace(c.var, SuperFunction::variable(table, c.var));
    return m;
}

/// Extends an assignment to the conjugated variables: bar(v) must map to the
/// formal conjugate of the image of v.
inline Assignment extend_with_conjugates(const Assignment& a, const TablePtr& table) {
    Assignment out = a;
    if (!table->doubled()) return out;
    for (const auto& [v, f] : a) {
        VarId bar = table->partner(v);
        if (!out.count(bar)) out.emplace(bar, f.conjugate());
    }
    return out;
}

/// Pulls an arbitrary function on the target chart back along the morphism.
inline SuperFunction pull_back(const SuperMorphism& m, const SuperFunction& f) {
    return substitute(f, extend_with_conjugates(m.pullback, m.table), m.table);
}

/// Composition f after g (point level); pullbacks compose the other way:
/// each target coordinate expression of f is rewritten through g's assignment,
/// with barred variables mapped to conjugated images.  Antiholomorphic flags
/// combine by XOR.
inline SuperMorphism compose(const SuperMorphism& f, const SuperMorphism& g) {
    if (f.source != g.target) throw dimension_error("morphism composition chart mismatch");
    require_same_ring(f.table, g.table, "morphism composition");
    SuperMorphism out;
    out.table = f.table;
    out.source = g.source;
    out.target = f.target;
    out.antiholomorphic = f.antiholomorphic != g.antiholomorphic;
    Assignment ext = extend_with_conjugates(g.pullback, g.table);
    for (const auto& [v, expr] : f.pullback) out.pullback.emplace(v, substitute(expr, ext, f.table));
    return out;
}

inline bool morphism_equal(const SuperMorphism& a, const SuperMorphism& b) {
    if (a.source != b.source || a.target != b.target || a.antiholomorphic != b.antiholomorphic) return false;
    if (a.pullback.size() != b.pullback.size()) return false;
    for (const auto& [v, f] : a.pullback) {
        auto it = b.pullback.find(v);
        if (it == b.pullback.end() || !(f == it->second)) return false;
    }
    return true;
}

/// First coordinate (if any) on which the two morphisms disagree.
inline std::optional<VarId> first_mismatch(const SuperMorphism& a, const SuperMorphism& b) {
    for (const auto& [v, f] : a.pullback) {
        auto it = b.pullback.find(v);
        if (it == b.pullback.end() || !(f == it->second)) return v;
    }
    for (const auto& [v, f] : b.pullback)
        if (!a.pullback.count(v)) return v;
    return std::nullopt;
}

inline bool is_identity_morphism(const SuperMorphism& m) {
    if (m.source != m.target || m.antiholomorphic) return false;
    for (const auto& [v, f] : m.pullback)
        if (!(f == SuperFunction::variable(m.table, v))) return false;
    return true;
}

/// Checks that even coordinates pull back to even functions and odd to odd.
inline void check_morphism_parity(const SuperMorphism& m) {
    for (const auto& [v, f] : m.pullback) {
        auto p = f.parity();
        if (!p || (*p != m.table->parity(v) && !f.is_zero()))
            throw parity_error("pullback of '" + m.table->name(v) + "' violates parity");
    }
}

/// Degreewise filtering of a holomorphic morphism: even coordinates keep the
/// odd-degree-0 component of their pullback, odd coordinates the degree-1
/// component.
inline SuperMorphism gr_morphism(const SuperMorphism& m) {
    if (m.antiholomorphic) throw parity_error("gr of an antiholomorphic morphism");
    SuperMorphism out = m;
    for (auto& [v, f] : out.pullback)
        f = m.table->parity(v) == Parity::Even ? f.xi_component(0) : f.xi_component(1);
    return out;
}

} // namespace supergrass
