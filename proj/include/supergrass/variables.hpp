#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "supergrass/errors.hpp"

namespace supergrass {

enum class Parity { Even, Odd };

inline Parity parity_sum(Parity a, Parity b) {
    return a == b ? Parity::Even : Parity::Odd;
}

using VarId = int;
inline constexpr VarId kNoVar = -1;

struct VarInfo {
    std::string name;
    Parity parity = Parity::Even;
    VarId partner = kNoVar; // conjugate partner, kNoVar if the table is not doubled
    bool is_param = false;  // formal parameters (the generic scalar) pass through substitution
};

/// Ordered symbol table for one coordinate ring.  Every polynomial, fraction,
/// matrix and morphism refers to exactly one table; mixing tables is an error.
class VariableTable {
public:
    VarId add(std::string name, Parity parity, bool is_param = false) {
        if (by_name_.count(name)) throw ring_mismatch_error("duplicate variable name: " + name);
        VarId id = static_cast<VarId>(vars_.size());
        by_name_.emplace(name, id);
        vars_.push_back(VarInfo{std::move(name), parity, kNoVar, is_param});
        return id;
    }

    /// Registers conjugate partners for every variable added so far.  Bars are
    /// appended after the originals, in the same order, so that conjugation is
    /// monotone on variable ids.
    void double_with_conjugates(const std::string& bar_suffix = "~") {
        if (doubled_) throw ring_mismatch_error("table already doubled");
        const size_t n = vars_.size();
        for (size_t v = 0; v < n; ++v) {
            VarId bar = add(vars_[v].name + bar_suffix, vars_[v].parity, vars_[v].is_param);
            vars_[v].partner = bar;
            vars_[bar].partner = static_cast<VarId>(v);
        }
        doubled_ = true;
    }

    size_t size() const { return vars_.size(); }
    bool doubled() const { return doubled_; }

    const VarInfo& info(VarId v) const {
        if (v < 0 || static_cast<size_t>(v) >= vars_.size()) throw index_error("variable id out of range");
        return vars_[static_cast<size_t>(v)];
    }

    Parity parity(VarId v) const { return info(v).parity; }
    const std::string& name(VarId v) const { return info(v).name; }
    bool is_param(VarId v) const { return info(v).is_param; }

    VarId partner(VarId v) const {
        VarId p = info(v).partner;
        if (p == kNoVar)
            throw conjugation_error("variable '" + name(v) + "' has no conjugate partner (table not doubled)");
        return p;
    }
    bool has_partner(VarId v) const { return info(v).partner != kNoVar; }

    VarId find(const std::string& name) const {
        auto it = by_name_.find(name);
        return it == by_name_.end() ? kNoVar : it->second;
    }

    /// Even (resp. odd) variables in id order; the positions in these lists are
    /// the indices used by the serialization format.
    std::vector<VarId> even_vars() const { return by_parity(Parity::Even); }
    std::vector<VarId> odd_vars() const { return by_parity(Parity::Odd); }

    friend bool operator==(const VariableTable& a, const VariableTable& b) {
        if (a.vars_.size() != b.vars_.size()) return false;
        for (size_t i = 0; i < a.vars_.size(); ++i) {
            const VarInfo& x = a.vars_[i];
            const VarInfo& y = b.vars_[i];
            if (x.name != y.name || x.parity != y.parity || x.partner != y.partner || x.is_param != y.is_param)
                return false;
        }
        return true;
    }

private:
    std::vector<VarId> by_parity(Parity p) const {
        std::vector<VarId> out;
        for (size_t v = 0; v < vars_.size(); ++v)
            if (vars_[v].parity == p) out.push_back(static_cast<VarId>(v));
        return out;
    }

    std::vector<VarInfo> vars_;
    std::unordered_map<std::string, VarId> by_name_;
    bool doubled_ = false;
};

using TablePtr = std::shared_ptr<const VariableTable>;

inline bool same_ring(const TablePtr& a, const TablePtr& b) {
    return a == b || (a && b && *a == *b);
}

inline void require_same_ring(const TablePtr& a, const TablePtr& b, const char* what) {
    if (!same_ring(a, b)) throw ring_mismatch_error(std::string("incompatible coordinate rings in ") + what);
}

} // namespace supergrass
