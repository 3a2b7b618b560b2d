#pragma once

#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "supergrass/morphism.hpp"

namespace supergrass {

struct overlap_empty_error : non_invertible_error {
    explicit overlap_empty_error(const std::string& what) : non_invertible_error(what) {}
};

struct AtlasOptions {
    bool doubled = false;    // register conjugate partners for every coordinate
    bool with_alpha = false; // adjoin the generic even parameter
};

/// Verdict of one symbolic identity check, with the offending coordinate and
/// the two sides when it fails.
struct CheckReport {
    bool pass = true;
    std::string witness;
    std::optional<SuperFunction> lhs, rhs;

    static CheckReport ok() { return {}; }
    static CheckReport fail(std::string w, SuperFunction l, SuperFunction r) {
        CheckReport rep;
        rep.pass = false;
        rep.witness = std::move(w);
        rep.lhs = std::move(l);
        rep.rhs = std::move(r);
        return rep;
    }
};

/// Chart atlas of a super-Grassmannian (plain flavor) or pi-symmetric
/// super-Grassmannian (pi flavor), with cached transition morphisms computed
/// from the renormalization rule Z_J = Z_I * C_IJ^{-1}.
class Atlas {
public:
    static Atlas build_plain(int m, int n, int k, int l, AtlasOptions opt = {}) {
        if (k <= 0 || k > m || l < 0 || l > n) throw config_error("plain atlas requires 0 < k <= m, 0 <= l <= n");
        return Atlas(Flavor::Plain, m, n, k, l, opt);
    }
    static Atlas build_pi(int n, int k, AtlasOptions opt = {}) {
        if (k <= 0 || k >= n) throw config_error("pi atlas requires 0 < k < n");
        return Atlas(Flavor::Pi, n, n, k, k, opt);
    }

    Flavor flavor() const { return flavor_; }
    int m() const { return m_; }
    int n() const { return n_; }
    int k() const { return k_; }
    int l() const { return l_; }
    bool graded() const { return graded_; }
    bool doubled() const { return table_->doubled(); }
    const TablePtr& table() const { return table_; }

    std::optional<VarId> alpha() const { return alpha_; }

    int chart_count() const { return static_cast<int>(charts_.size()); }
    const std::vector<Chart>& charts() const { return charts_; }
    const Chart& chart(int id) const {
        if (id < 0 || id >= chart_count()) throw index_error("chart id out of range");
        return charts_[static_cast<size_t>(id)];
    }

    int chart_id(const ChartIndex& idx) const {
        auto it = chart_ids_.find(idx);
        if (it == chart_ids_.end()) throw index_error("no such chart: " + idx.str());
        return it->second;
    }

    /// Chart whose index set is given by 1-based labels (pi flavor).
    int chart_id_pi(const std::vector<int>& set) const {
        ChartIndex idx;
        idx.flavor = Flavor::Pi;
        idx.even_set = set;
        return chart_id(idx);
    }

    /// 0-based rows of any chart matrix that the renormalizing submatrix C_IJ
    /// for target chart J consists of.
    std::vector<int> renormalization_rows(int target) const {
        const ChartIndex& idx = chart(target).index;
        std::vector<int> rows;
        if (flavor_ == Flavor::Pi) {
            for (int i : idx.even_set) rows.push_back(i - 1);
            for (int i : idx.even_set) rows.push_back(n_ + i - 1);
        } else {
            for (int i : idx.even_set) rows.push_back(i - 1);
            for (int j : idx.odd_set) rows.push_back(m_ + j - 1);
        }
        std::sort(rows.begin(), rows.end());
        return rows;
    }

    /// Transition morphism from chart `from` to chart `to`, i.e. the pullback
    /// assigning to each `to`-coordinate its expression in `from`-coordinates,
    /// read off the non-identity entries of Z_from * C^{-1}.
    const SuperMorphism& transition(int from, int to) const {
        auto key = std::make_pair(from, to);
        auto it = transition_cache_.find(key);
        if (it != transition_cache_.end()) return it->second;
        SuperMorphism t = compute_transition(from, to);
        return transition_cache_.emplace(key, std::move(t)).first->second;
    }

    bool transition_cached(int from, int to) const {
        return transition_cache_.count(std::make_pair(from, to)) != 0;
    }

    /// Re-coordinatization of an arbitrary matrix W into the shape of chart
    /// `target`: W * (rows of W at the target's identity positions)^{-1}.
    SuperMatrix renormalize(const SuperMatrix& w, int target) const {
        SuperMatrix c = w.extract_rows(renormalization_rows(target));
        SuperMatrix cinv;
        try {
            cinv = c.super_inverse();
        } catch (const non_invertible_error& e) {
            throw overlap_empty_error(std::string("renormalizing submatrix identically singular: ") + e.what());
        }
        return w * cinv;
    }

    /// Reads the coordinate assignment of chart `target` off a matrix in that
    /// chart's normal form.
    Assignment read_coordinates(const SuperMatrix& w, int target) const {
        const Chart& ch = chart(target);
        Assignment a;
        for (const auto& c : ch.coords) {
            auto existing = a.find(c.var);
            const SuperFunction& value = w.at(c.row, c.col);
            if (existing == a.end()) {
                a.emplace(c.var, value);
            } else if (!(existing->second == value)) {
                throw parity_error("pi-symmetry violated while reading chart coordinates");
            }
        }
        return a;
    }

    /// The split (degree-homogeneous) atlas over the same charts.
    Atlas gr() const {
        Atlas a = *this;
        a.graded_ = true;
        a.transition_cache_.clear();
        return a;
    }

    /// transition(to<-from) composed around a triple: passes iff
    /// transition(i<-k) = transition(i<-j) o transition(j<-k) exactly.
    CheckReport cocycle_check(int i, int j, int k) const {
        const SuperMorphism& direct = transition(k, i);
        SuperMorphism composite = compose(transition(j, i), transition(k, j));
        if (auto v = first_mismatch(direct, composite)) {
            std::ostringstream os;
            os << "cocycle mismatch on coordinate " << table_->name(*v) << " for charts (" << chart(i).index.str()
               << "," << chart(j).index.str() << "," << chart(k).index.str() << ")";
            return CheckReport::fail(os.str(), direct.at(*v), composite.at(*v));
        }
        return CheckReport::ok();
    }

    /// Pair identity: transition(i<-j) o transition(j<-i) = id.
    CheckReport pair_identity_check(int i, int j) const {
        SuperMorphism round = compose(transition(j, i), transition(i, j));
        if (!is_identity_morphism(round)) {
            auto v = first_mismatch(round, identity_morphism(table_, chart(i), i));
            std::string name = v ? table_->name(*v) : "?";
            return CheckReport::fail("transition round trip is not the identity on coordinate " + name,
                                     v ? round.at(*v) : SuperFunction::zero(table_),
                                     v ? SuperFunction::variable(table_, *v) : SuperFunction::zero(table_));
        }
        return CheckReport::ok();
    }

    /// The degree-1 part of each odd pullback must equal the Jacobian pairing
    /// of the even pullbacks: the odd coordinate behaves as the differential
    /// of its even label partner.
    CheckReport retract_check_pair(int from, int to) const {
        return retract_check_morphism(transition(from, to));
    }

    /// Same check on an explicit transition morphism.
    CheckReport retract_check_morphism(const SuperMorphism& t) const {
        if (flavor_ != Flavor::Pi) throw config_error("retract check requires the pi flavor");
        const Chart& source = chart(t.source);
        const Chart& target = chart(t.target);
        for (const auto& c : target.coords) {
            if (c.parity != Parity::Odd) continue;
            VarId even_partner = target.paired_var(c.var);
            SuperFunction lhs = t.at(c.var).xi_component(1);
            SuperFunction even0 = t.at(even_partner).xi_component(0);
            SuperFunction rhs = SuperFunction::zero(table_);
            for (const auto& s : source.coords) {
                if (s.parity != Parity::Even) continue;
                SuperFunction d = even0.derivative(s.var);
                if (d.is_zero()) continue;
                rhs += d * SuperFunction::variable(table_, source.paired_var(s.var));
            }
            if (!(lhs == rhs)) {
                std::ostringstream os;
                os << "retract pairing fails for " << table_->name(c.var) << " on transition "
                   << source.index.str() << " -> " << target.index.str();
                return CheckReport::fail(os.str(), lhs, rhs);
            }
        }
        return CheckReport::ok();
    }

    /// Whole-atlas retract verification over all ordered chart pairs.
    CheckReport retract_check() const {
        for (int i = 0; i < chart_count(); ++i)
            for (int j = 0; j < chart_count(); ++j) {
                if (i == j) continue;
                CheckReport r = retract_check_pair(i, j);
                if (!r.pass) return r;
            }
        return CheckReport::ok();
    }

    /// gr functoriality on cached transitions: gr(f o g) = gr(f) o gr(g).
    CheckReport gr_functoriality_check(int i, int j, int k) const {
        SuperMorphism lhs = gr_morphism(compose(transition(j, i), transition(k, j)));
        SuperMorphism rhs = compose(gr_morphism(transition(j, i)), gr_morphism(transition(k, j)));
        if (auto v = first_mismatch(lhs, rhs))
            return CheckReport::fail("gr functoriality fails on coordinate " + table_->name(*v), lhs.at(*v),
                                     rhs.at(*v));
        return CheckReport::ok();
    }

    SuperMorphism identity_on(int chart_id) const { return identity_morphism(table_, chart(chart_id), chart_id); }

private:
    Atlas(Flavor flavor, int m, int n, int k, int l, AtlasOptions opt)
        : flavor_(flavor), m_(m), n_(n), k_(k), l_(l) {
        auto table = std::make_shared<VariableTable>();
        std::vector<ChartIndex> indices;
        if (flavor_ == Flavor::Pi) {
            for (auto& s : subsets_lex(n_, k_)) {
                ChartIndex idx;
                idx.flavor = Flavor::Pi;
                idx.even_set = s;
                indices.push_back(std::move(idx));
            }
        } else {
            for (auto& se : subsets_lex(m_, k_))
                for (auto& so : subsets_lex(n_, l_)) {
                    ChartIndex idx;
                    idx.flavor = Flavor::Plain;
                    idx.even_set = se;
                    idx.odd_set = so;
                    indices.push_back(std::move(idx));
                }
        }
        for (const auto& idx : indices) ChartBuilder::declare_variables(*table, flavor_, m_, n_, k_, l_, idx);
        if (opt.with_alpha) alpha_ = table->add("alpha", Parity::Even, /*is_param=*/true);
        if (opt.doubled) table->double_with_conjugates();
        table_ = std::move(table);
        for (const auto& idx : indices) {
            chart_ids_.emplace(idx, static_cast<int>(charts_.size()));
            charts_.push_back(ChartBuilder::build(table_, flavor_, m_, n_, k_, l_, idx));
        }
    }

    SuperMorphism compute_transition(int from, int to) const {
        const Chart& src = chart(from);
        SuperMorphism t;
        t.table = table_;
        t.source = from;
        t.target = to;
        if (from == to) {
            t = identity_morphism(table_, src, from);
        } else {
            SuperMatrix w = renormalize(src.z, to);
            verify_normal_form(w, to);
            t.pullback = read_coordinates(w, to);
        }
        check_morphism_parity(t);
        if (graded_) t = gr_morphism(t);
        return t;
    }

    void verify_normal_form(const SuperMatrix& w, int target) const {
        const Chart& tgt = chart(target);
        SuperMatrix rows = w.extract_rows(renormalization_rows(target));
        SuperMatrix id = SuperMatrix::identity(table_, rows.rows());
        if (!(rows == id)) throw non_invertible_error("renormalized matrix lost its identity rows");
        if (flavor_ == Flavor::Pi) ChartBuilder::assert_pi_symmetry(w, n_, k_);
        (void)tgt;
    }

    Flavor flavor_;
    int m_, n_, k_, l_;
    bool graded_ = false;
    TablePtr table_;
    std::vector<Chart> charts_;
    std::map<ChartIndex, int> chart_ids_;
    std::optional<VarId> alpha_;
    mutable std::map<std::pair<int, int>, SuperMorphism> transition_cache_;
};

} // namespace supergrass
