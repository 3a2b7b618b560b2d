#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "supergrass/rational.hpp"
#include "supergrass/variables.hpp"

namespace supergrass {

/// Monomial of the supercommutative ring: a sparse even exponent vector and a
/// strictly sorted set of odd generators.  The sign of any product is
/// normalized by the parity of the merge permutation of the odd parts.
struct Monomial {
    std::vector<std::pair<VarId, int>> even; // sorted by VarId, exponents > 0
    std::vector<VarId> odd;                  // strictly increasing

    int even_degree() const {
        int d = 0;
        for (const auto& [v, e] : even) d += e;
        return d;
    }
    int odd_degree() const { return static_cast<int>(odd.size()); }

    bool is_constant() const { return even.empty() && odd.empty(); }

    int exponent(VarId v) const {
        for (const auto& [w, e] : even)
            if (w == v) return e;
        return std::count(odd.begin(), odd.end(), v) ? 1 : 0;
    }

    /// Graded lexicographic on the even part, then lexicographic on the odd
    /// index set.  Sparse-aware: a missing variable counts as exponent zero.
    static int compare(const Monomial& a, const Monomial& b) {
        int da = a.even_degree(), db = b.even_degree();
        if (da != db) return da < db ? -1 : 1;
        size_t i = 0, j = 0;
        while (i < a.even.size() && j < b.even.size()) {
            const auto& [va, ea] = a.even[i];
            const auto& [vb, eb] = b.even[j];
            if (va != vb) return va < vb ? 1 : -1; // earlier variable present beats absent
            if (ea != eb) return ea > eb ? 1 : -1;
            ++i;
            ++j;
        }
        if (i < a.even.size()) return 1;
        if (j < b.even.size()) return -1;
        if (a.odd != b.odd) return a.odd < b.odd ? -1 : 1;
        return 0;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.even == b.even && a.odd == b.odd; }
};

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return Monomial::compare(a, b) < 0; }
};

namespace detail {

/// Merges two sorted odd index lists; returns the sign of the interleaving
/// permutation, or nullopt when a generator repeats (xi^2 = 0).
inline std::optional<std::pair<std::vector<VarId>, int>> merge_odd(const std::vector<VarId>& a,
                                                                   const std::vector<VarId>& b) {
    std::vector<VarId> out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    long crossings = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return std::nullopt;
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else {
            // b[j] jumps over the remaining a-elements
            crossings += static_cast<long>(a.size() - i);
            out.push_back(b[j++]);
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return std::make_pair(std::move(out), (crossings % 2 == 0) ? 1 : -1);
}

/// Sorts an odd index list, tracking the permutation sign; nullopt on repeats.
inline std::optional<std::pair<std::vector<VarId>, int>> sort_odd(std::vector<VarId> v) {
    int sign = 1;
    for (size_t i = 1; i < v.size(); ++i)
        for (size_t j = i; j > 0 && v[j] < v[j - 1]; --j) {
            std::swap(v[j], v[j - 1]);
            sign = -sign;
        }
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i] == v[i - 1]) return std::nullopt;
    return std::make_pair(std::move(v), sign);
}

inline std::vector<std::pair<VarId, int>> merge_even(const std::vector<std::pair<VarId, int>>& a,
                                                     const std::vector<std::pair<VarId, int>>& b) {
    std::vector<std::pair<VarId, int>> out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first == b[j].first) {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        } else if (a[i].first < b[j].first) {
            out.push_back(a[i++]);
        } else {
            out.push_back(b[j++]);
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return out;
}

} // namespace detail

/// Element of F[x_1..x_p] (x) /\(xi_1..xi_q) over Q(i), in canonical form:
/// no zero coefficients, odd sets strictly sorted, odd squares absent.
class SuperPolynomial {
public:
    using TermMap = std::map<Monomial, GaussianRational, MonomialLess>;

    SuperPolynomial() = default;
    explicit SuperPolynomial(TablePtr table) : table_(std::move(table)) {}

    static SuperPolynomial constant(TablePtr table, GaussianRational c) {
        SuperPolynomial p(std::move(table));
        if (!c.is_zero()) p.terms_.emplace(Monomial{}, std::move(c));
        return p;
    }
    static SuperPolynomial variable(TablePtr table, VarId v) {
        SuperPolynomial p(table);
        Monomial m;
        if (table->parity(v) == Parity::Even)
            m.even.emplace_back(v, 1);
        else
            m.odd.push_back(v);
        p.terms_.emplace(std::move(m), GaussianRational::one());
        return p;
    }

    const TablePtr& table() const { return table_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    void add_term(const Monomial& m, const GaussianRational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    GaussianRational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? GaussianRational::zero() : it->second;
    }

    GaussianRational constant_term() const { return coefficient(Monomial{}); }

    /// Parity of the polynomial when homogeneous; nullopt for mixed parity.
    std::optional<Parity> parity() const {
        std::optional<Parity> p;
        for (const auto& [m, c] : terms_) {
            Parity q = (m.odd_degree() % 2 == 0) ? Parity::Even : Parity::Odd;
            if (!p)
                p = q;
            else if (*p != q)
                return std::nullopt;
        }
        if (!p) return Parity::Even; // zero is even
        return p;
    }

    /// True when no odd generator occurs at all (the commutative subring).
    bool is_pure_even() const {
        for (const auto& [m, c] : terms_)
            if (!m.odd.empty()) return false;
        return true;
    }

    /// Odd-generator-free part of the polynomial (constants and even variables).
    SuperPolynomial body() const {
        SuperPolynomial out(table_);
        for (const auto& [m, c] : terms_)
            if (m.odd.empty()) out.terms_.emplace(m, c);
        return out;
    }

    /// Complement of body(): every term lies in the ideal of odd generators.
    SuperPolynomial soul() const {
        SuperPolynomial out(table_);
        for (const auto& [m, c] : terms_)
            if (!m.odd.empty()) out.terms_.emplace(m, c);
        return out;
    }

    /// Terms with exactly p odd generators.
    SuperPolynomial xi_component(int p) const {
        SuperPolynomial out(table_);
        for (const auto& [m, c] : terms_)
            if (m.odd_degree() == p) out.terms_.emplace(m, c);
        return out;
    }

    int max_odd_degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.odd_degree());
        return d;
    }

    int max_exponent(VarId v) const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(v));
        return d;
    }

    std::vector<VarId> used_vars() const {
        std::vector<VarId> out;
        for (const auto& [m, c] : terms_) {
            for (const auto& [v, e] : m.even) out.push_back(v);
            for (VarId v : m.odd) out.push_back(v);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    SuperPolynomial operator-() const {
        SuperPolynomial out(table_);
        for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
        return out;
    }

    SuperPolynomial& operator+=(const SuperPolynomial& o) {
        require_same_ring(table_, o.table_, "polynomial addition");
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    SuperPolynomial& operator-=(const SuperPolynomial& o) {
        require_same_ring(table_, o.table_, "polynomial subtraction");
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    friend SuperPolynomial operator+(SuperPolynomial a, const SuperPolynomial& b) { return a += b; }
    friend SuperPolynomial operator-(SuperPolynomial a, const SuperPolynomial& b) { return a -= b; }

    friend SuperPolynomial operator*(const SuperPolynomial& a, const SuperPolynomial& b) {
        require_same_ring(a.table_, b.table_, "polynomial multiplication");
        SuperPolynomial out(a.table_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                auto merged = detail::merge_odd(ma.odd, mb.odd);
                if (!merged) continue; // odd square vanishes
                Monomial m;
                m.even = detail::merge_even(ma.even, mb.even);
                m.odd = std::move(merged->first);
                GaussianRational c = ca * cb;
                if (merged->second < 0) c = -c;
                out.add_term(m, c);
            }
        }
        return out;
    }

    SuperPolynomial& operator*=(const SuperPolynomial& o) { return *this = *this * o; }

    SuperPolynomial scaled(const GaussianRational& c) const {
        SuperPolynomial out(table_);
        if (c.is_zero()) return out;
        for (const auto& [m, k] : terms_) out.terms_.emplace(m, k * c);
        return out;
    }

    SuperPolynomial pow(int e) const {
        if (e < 0) throw non_invertible_error("negative polynomial power");
        SuperPolynomial acc = constant(table_, GaussianRational::one());
        SuperPolynomial base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            if (e >>= 1) base = base * base;
        }
        return acc;
    }

    /// Coefficient-wise complex conjugation combined with the swap of every
    /// variable with its conjugate partner.  Requires a doubled table.
    SuperPolynomial conjugate() const {
        SuperPolynomial out(table_);
        for (const auto& [m, c] : terms_) {
            Monomial cm;
            cm.even.reserve(m.even.size());
            for (const auto& [v, e] : m.even) cm.even.emplace_back(table_->partner(v), e);
            std::sort(cm.even.begin(), cm.even.end());
            std::vector<VarId> odd;
            odd.reserve(m.odd.size());
            for (VarId v : m.odd) odd.push_back(table_->partner(v));
            auto sorted = detail::sort_odd(std::move(odd));
            if (!sorted) throw conjugation_error("conjugation produced a repeated odd generator");
            cm.odd = std::move(sorted->first);
            GaussianRational cc = c.conj();
            if (sorted->second < 0) cc = -cc;
            out.add_term(cm, cc);
        }
        return out;
    }

    /// Partial derivative with respect to an even variable.
    SuperPolynomial derivative(VarId v) const {
        if (table_->parity(v) != Parity::Even) throw parity_error("derivative only along even variables");
        SuperPolynomial out(table_);
        for (const auto& [m, c] : terms_) {
            for (size_t i = 0; i < m.even.size(); ++i) {
                if (m.even[i].first != v) continue;
                Monomial d = m;
                GaussianRational k = c * GaussianRational(m.even[i].second);
                if (--d.even[i].second == 0) d.even.erase(d.even.begin() + static_cast<long>(i));
                out.add_term(d, k);
                break;
            }
        }
        return out;
    }

    friend bool operator==(const SuperPolynomial& a, const SuperPolynomial& b) {
        return same_ring(a.table_, b.table_) && a.terms_ == b.terms_;
    }
    friend bool operator!=(const SuperPolynomial& a, const SuperPolynomial& b) { return !(a == b); }

    /// Leading (largest) term in the canonical order; ring must be nonzero.
    const std::pair<const Monomial, GaussianRational>& leading_term() const {
        if (terms_.empty()) throw non_invertible_error("leading term of zero polynomial");
        return *terms_.rbegin();
    }

    /// Componentwise minimum of the even exponents over all terms: the even
    /// monomial content.  Zero polynomial has empty content.
    std::vector<std::pair<VarId, int>> even_monomial_content() const {
        if (terms_.empty()) return {};
        std::vector<std::pair<VarId, int>> content = terms_.begin()->first.even;
        for (const auto& [m, c] : terms_) {
            std::vector<std::pair<VarId, int>> next;
            size_t i = 0, j = 0;
            while (i < content.size() && j < m.even.size()) {
                if (content[i].first == m.even[j].first) {
                    next.emplace_back(content[i].first, std::min(content[i].second, m.even[j].second));
                    ++i;
                    ++j;
                } else if (content[i].first < m.even[j].first) {
                    ++i;
                } else {
                    ++j;
                }
            }
            content = std::move(next);
            if (content.empty()) break;
        }
        return content;
    }

    /// Divides every term by the given even monomial (must divide exactly).
    SuperPolynomial divided_by_even_monomial(const std::vector<std::pair<VarId, int>>& mono) const {
        if (mono.empty()) return *this;
        SuperPolynomial out(table_);
        for (const auto& [m, c] : terms_) {
            Monomial d = m;
            for (const auto& [v, e] : mono) {
                bool found = false;
                for (size_t i = 0; i < d.even.size(); ++i) {
                    if (d.even[i].first != v) continue;
                    if (d.even[i].second < e) throw non_invertible_error("monomial content division failed");
                    d.even[i].second -= e;
                    if (d.even[i].second == 0) d.even.erase(d.even.begin() + static_cast<long>(i));
                    found = true;
                    break;
                }
                if (!found) throw non_invertible_error("monomial content division failed");
            }
            out.terms_.emplace(std::move(d), c);
        }
        return out;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!first) os << " + ";
            first = false;
            os << it->second.str();
            for (const auto& [v, e] : it->first.even) {
                os << "*" << table_->name(v);
                if (e > 1) os << "^" << e;
            }
            for (VarId v : it->first.odd) os << "*" << table_->name(v);
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const SuperPolynomial& p) { return os << p.str(); }

private:
    TablePtr table_;
    TermMap terms_;
};

/// Exact division in the pure-even (commutative) subring: returns a/b when b
/// divides a exactly, nullopt otherwise.
inline std::optional<SuperPolynomial> divide_exact_even(const SuperPolynomial& a, const SuperPolynomial& b) {
    if (!a.is_pure_even() || !b.is_pure_even()) return std::nullopt;
    if (b.is_zero()) return std::nullopt;
    SuperPolynomial q(a.table());
    SuperPolynomial r = a;
    const auto& [lm, lc] = b.leading_term();
    while (!r.is_zero()) {
        const auto& [rm, rc] = r.leading_term();
        // try lm | rm
        Monomial t;
        size_t i = 0;
        bool divides = true;
        for (const auto& [v, e] : lm.even) {
            while (i < rm.even.size() && rm.even[i].first < v) {
                t.even.push_back(rm.even[i]);
                ++i;
            }
            if (i >= rm.even.size() || rm.even[i].first != v || rm.even[i].second < e) {
                divides = false;
                break;
            }
            int rest = rm.even[i].second - e;
            if (rest > 0) t.even.emplace_back(v, rest);
            ++i;
        }
        if (!divides) return std::nullopt;
        while (i < rm.even.size()) {
            t.even.push_back(rm.even[i]);
            ++i;
        }
        SuperPolynomial step(a.table());
        step.add_term(t, rc / lc);
        q += step;
        r -= step * b;
    }
    return q;
}

} // namespace supergrass
