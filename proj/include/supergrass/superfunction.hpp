#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "supergrass/polynomial.hpp"

namespace supergrass {

/// Fraction num/den of the supercommutative coordinate ring.  Denominators are
/// restricted to the pure-even subring (no odd generators), so equality is
/// decidable by cross-multiplication; every inverse the charts need factors
/// through a body inverse times a finite Neumann series.
class SuperFunction {
public:
    SuperFunction() = default;

    explicit SuperFunction(SuperPolynomial num)
        : num_(std::move(num)), den_(SuperPolynomial::constant(num_.table(), GaussianRational::one())) {
        normalize();
    }

    SuperFunction(SuperPolynomial num, SuperPolynomial den) : num_(std::move(num)), den_(std::move(den)) {
        require_same_ring(num_.table(), den_.table(), "fraction construction");
        check_denominator(den_);
        normalize();
    }

    static SuperFunction zero(TablePtr t) { return SuperFunction(SuperPolynomial(std::move(t))); }
    static SuperFunction one(TablePtr t) {
        return SuperFunction(SuperPolynomial::constant(std::move(t), GaussianRational::one()));
    }
    static SuperFunction constant(TablePtr t, GaussianRational c) {
        return SuperFunction(SuperPolynomial::constant(std::move(t), std::move(c)));
    }
    static SuperFunction variable(TablePtr t, VarId v) {
        return SuperFunction(SuperPolynomial::variable(std::move(t), v));
    }

    const SuperPolynomial& num() const { return num_; }
    const SuperPolynomial& den() const { return den_; }
    const TablePtr& table() const { return num_.table(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const {
        return den_.term_count() == 1 && den_.leading_term().first.is_constant();
    }

    std::optional<Parity> parity() const { return num_.parity(); }

    /// a/b = c/d  iff  a*d = c*b in the polynomial ring.  When one denominator
    /// divides the other exactly the comparison drops a factor.
    friend bool operator==(const SuperFunction& a, const SuperFunction& b) {
        if (a.den_ == b.den_) return a.num_ == b.num_; // common case after arithmetic
        if (auto q = divide_exact_even(b.den_, a.den_)) return a.num_ * *q == b.num_;
        if (auto q = divide_exact_even(a.den_, b.den_)) return b.num_ * *q == a.num_;
        return a.num_ * b.den_ == b.num_ * a.den_;
    }
    friend bool operator!=(const SuperFunction& a, const SuperFunction& b) { return !(a == b); }

    SuperFunction operator-() const { return raw(-num_, den_); }

    friend SuperFunction operator+(const SuperFunction& a, const SuperFunction& b) {
        require_same_ring(a.table(), b.table(), "fraction addition");
        if (a.den_ == b.den_) return SuperFunction(a.num_ + b.num_, a.den_);
        if (auto q = divide_exact_even(b.den_, a.den_)) return SuperFunction(a.num_ * *q + b.num_, b.den_);
        if (auto q = divide_exact_even(a.den_, b.den_)) return SuperFunction(b.num_ * *q + a.num_, a.den_);
        return SuperFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend SuperFunction operator-(const SuperFunction& a, const SuperFunction& b) { return a + (-b); }
    friend SuperFunction operator*(const SuperFunction& a, const SuperFunction& b) {
        require_same_ring(a.table(), b.table(), "fraction multiplication");
        return SuperFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend SuperFunction operator/(const SuperFunction& a, const SuperFunction& b) { return a * b.inverse(); }

    SuperFunction& operator+=(const SuperFunction& o) { return *this = *this + o; }
    SuperFunction& operator-=(const SuperFunction& o) { return *this = *this - o; }
    SuperFunction& operator*=(const SuperFunction& o) { return *this = *this * o; }
    SuperFunction& operator/=(const SuperFunction& o) { return *this = *this / o; }

    SuperFunction scaled(const GaussianRational& c) const { return raw(num_.scaled(c), den_); }

    /// Exact multiplicative inverse.  The numerator splits as body + soul;
    /// the finite Neumann series sum_t (-soul)^t body^(T-t) / body^(T+1)
    /// inverts it, so only pure-even polynomials ever become denominators.
    SuperFunction inverse() const {
        if (num_.is_zero()) throw non_invertible_error("inverse of zero");
        if (num_.is_pure_even()) return SuperFunction(den_, num_);
        SuperPolynomial b = num_.body();
        if (b.is_zero()) throw non_invertible_error("inverse of a function with vanishing body");
        SuperPolynomial s = num_.soul();
        std::vector<SuperPolynomial> soul_powers{SuperPolynomial::constant(table(), GaussianRational::one())};
        SuperPolynomial sp = s;
        while (!sp.is_zero()) {
            soul_powers.push_back(sp);
            sp = sp * s;
        }
        const int T = static_cast<int>(soul_powers.size()) - 1;
        std::vector<SuperPolynomial> body_powers{SuperPolynomial::constant(table(), GaussianRational::one())};
        for (int t = 1; t <= T + 1; ++t) body_powers.push_back(body_powers.back() * b);
        SuperPolynomial acc(table());
        for (int t = 0; t <= T; ++t) {
            SuperPolynomial term = soul_powers[static_cast<size_t>(t)] * body_powers[static_cast<size_t>(T - t)];
            acc += (t % 2 == 0) ? term : -term;
        }
        return SuperFunction(den_ * acc, body_powers[static_cast<size_t>(T + 1)]);
    }

    SuperFunction pow(int e) const {
        if (e < 0) return inverse().pow(-e);
        SuperFunction acc = one(table());
        SuperFunction base = *this;
        while (e) {
            if (e & 1) acc *= base;
            if (e >>= 1) base *= base;
        }
        return acc;
    }

    SuperFunction conjugate() const { return SuperFunction(num_.conjugate(), den_.conjugate()); }

    SuperFunction derivative(VarId v) const {
        return SuperFunction(num_.derivative(v) * den_ - num_ * den_.derivative(v), den_ * den_);
    }

    SuperFunction body() const { return raw(num_.body(), den_); }

    /// Component of odd degree p (denominator is always of odd degree zero).
    SuperFunction xi_component(int p) const { return raw(num_.xi_component(p), den_); }

    int max_odd_degree() const { return num_.max_odd_degree(); }

    std::string str() const {
        if (is_polynomial()) {
            GaussianRational c = den_.leading_term().second;
            return c.is_one() ? num_.str() : "(" + num_.str() + ")/(" + den_.str() + ")";
        }
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

    friend std::ostream& operator<<(std::ostream& os, const SuperFunction& f) { return os << f.str(); }

private:
    static void check_denominator(const SuperPolynomial& den) {
        if (!den.is_pure_even())
            throw non_invertible_error("denominator contains odd generators");
        if (den.is_zero()) throw non_invertible_error("denominator body is zero");
    }

    // bypasses denominator re-checks for internally preserved denominators
    static SuperFunction raw(SuperPolynomial num, SuperPolynomial den) {
        SuperFunction f;
        f.num_ = std::move(num);
        f.den_ = std::move(den);
        f.normalize();
        return f;
    }

    void normalize() {
        if (num_.is_zero()) {
            den_ = SuperPolynomial::constant(num_.table(), GaussianRational::one());
            return;
        }
        // monomial content only; no multivariate gcd
        auto cn = num_.even_monomial_content();
        auto cd = den_.even_monomial_content();
        std::vector<std::pair<VarId, int>> common;
        size_t i = 0, j = 0;
        while (i < cn.size() && j < cd.size()) {
            if (cn[i].first == cd[j].first) {
                common.emplace_back(cn[i].first, std::min(cn[i].second, cd[j].second));
                ++i;
                ++j;
            } else if (cn[i].first < cd[j].first) {
                ++i;
            } else {
                ++j;
            }
        }
        if (!common.empty()) {
            num_ = num_.divided_by_even_monomial(common);
            den_ = den_.divided_by_even_monomial(common);
        }
        GaussianRational lead = den_.leading_term().second;
        if (!lead.is_one()) {
            GaussianRational inv = GaussianRational::one() / lead;
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }

    SuperPolynomial num_, den_;
};

/// A XiDegreeDecomposition: pairs (p, component of odd degree p), ascending,
/// zero components omitted.  The components sum back to the input.
using XiDegreeDecomposition = std::vector<std::pair<int, SuperFunction>>;

inline XiDegreeDecomposition xi_decompose(const SuperFunction& f) {
    XiDegreeDecomposition out;
    for (int p = 0; p <= f.max_odd_degree(); ++p) {
        SuperFunction c = f.xi_component(p);
        if (!c.is_zero()) out.emplace_back(p, std::move(c));
    }
    return out;
}

/// Variable assignment used by substitution and morphism pullbacks.
using Assignment = std::map<VarId, SuperFunction>;

namespace detail {

inline const SuperFunction* lookup(const Assignment& a, VarId v) {
    auto it = a.find(v);
    return it == a.end() ? nullptr : &it->second;
}

} // namespace detail

/// Substitutes SuperFunctions for variables in a polynomial.  Unassigned
/// formal parameters map to themselves; any other unassigned variable is an
/// error.  All assigned values must live in one common ring.
inline SuperFunction substitute(const SuperPolynomial& p, const Assignment& a, const TablePtr& out_table) {
    if (p.is_zero()) return SuperFunction::zero(out_table);

    std::vector<VarId> used = p.used_vars();
    std::map<VarId, SuperFunction> values;
    std::map<VarId, int> maxexp;
    for (VarId v : used) {
        const SuperFunction* val = detail::lookup(a, v);
        if (val == nullptr) {
            if (!p.table()->is_param(v))
                throw ring_mismatch_error("substitution misses variable '" + p.table()->name(v) + "'");
            values.emplace(v, SuperFunction::variable(out_table, v));
        } else {
            require_same_ring(val->table(), out_table, "substitution values");
            auto vp = val->parity();
            if (!vp || *vp != p.table()->parity(v))
                throw parity_error("substitution does not preserve the parity of '" + p.table()->name(v) + "'");
            values.emplace(v, *val);
        }
        maxexp[v] = p.max_exponent(v);
    }

    // Common-denominator evaluation.  Denominators are grouped by a common
    // base polynomial (a denominator equal to base^t joins the base's group
    // with weight t), so chart transitions whose entries carry different
    // powers of one determinant share a single group.  For group g the
    // exponent budget is E_g = max over terms of the weighted degree, and the
    // common denominator is prod_g base_g^(E_g).
    auto is_unit_poly = [](const SuperPolynomial& d) {
        return d.term_count() == 1 && d.leading_term().first.is_constant() && d.leading_term().second.is_one();
    };
    // power of `base` that equals d; 0 when d is not such a power
    auto power_of = [&](const SuperPolynomial& d, const SuperPolynomial& base) -> int {
        SuperPolynomial r = d;
        int t = 0;
        while (!is_unit_poly(r)) {
            auto q = divide_exact_even(r, base);
            if (!q) return 0;
            r = std::move(*q);
            ++t;
        }
        return t;
    };

    std::map<VarId, std::vector<SuperPolynomial>> num_pow;
    std::vector<SuperPolynomial> group_base;
    std::map<VarId, std::pair<int, int>> group_of; // var -> (group id, weight), id -1 for unit dens
    for (VarId v : used) {
        const SuperFunction& val = values.at(v);
        int e = maxexp[v];
        std::vector<SuperPolynomial> np{SuperPolynomial::constant(out_table, GaussianRational::one())};
        for (int t = 1; t <= e; ++t) np.push_back(np.back() * val.num());
        num_pow.emplace(v, std::move(np));
        const SuperPolynomial& d = val.den();
        if (is_unit_poly(d)) {
            group_of[v] = {-1, 0};
            continue;
        }
        int gid = -1, weight = 0;
        for (size_t g = 0; g < group_base.size() && gid < 0; ++g) {
            if (int t = power_of(d, group_base[g]); t > 0) {
                gid = static_cast<int>(g);
                weight = t;
            } else if (int s = power_of(group_base[g], d); s > 0) {
                // the new denominator is the finer base: reweight the group
                for (auto& [w, gw] : group_of)
                    if (gw.first == static_cast<int>(g)) gw.second *= s;
                group_base[g] = d;
                gid = static_cast<int>(g);
                weight = 1;
            }
        }
        if (gid < 0) {
            gid = static_cast<int>(group_base.size());
            group_base.push_back(d);
            weight = 1;
        }
        group_of[v] = {gid, weight};
    }

    std::vector<int> group_budget(group_base.size(), 0);
    auto weighted_degree = [&](const Monomial& m, std::vector<int>& deg) {
        std::fill(deg.begin(), deg.end(), 0);
        for (const auto& [v, e] : m.even) {
            auto [g, w] = group_of.at(v);
            if (g >= 0) deg[static_cast<size_t>(g)] += w * e;
        }
        for (VarId v : m.odd) {
            auto [g, w] = group_of.at(v);
            if (g >= 0) deg[static_cast<size_t>(g)] += w;
        }
    };
    std::vector<int> deg(group_base.size(), 0);
    for (const auto& [m, c] : p.terms()) {
        weighted_degree(m, deg);
        for (size_t g = 0; g < group_base.size(); ++g) group_budget[g] = std::max(group_budget[g], deg[g]);
    }

    std::vector<std::vector<SuperPolynomial>> den_pow;
    SuperPolynomial den_total = SuperPolynomial::constant(out_table, GaussianRational::one());
    for (size_t g = 0; g < group_base.size(); ++g) {
        std::vector<SuperPolynomial> dp{SuperPolynomial::constant(out_table, GaussianRational::one())};
        for (int t = 1; t <= group_budget[g]; ++t) dp.push_back(dp.back() * group_base[g]);
        den_total = den_total * dp[static_cast<size_t>(group_budget[g])];
        den_pow.push_back(std::move(dp));
    }

    SuperPolynomial acc(out_table);
    for (const auto& [m, c] : p.terms()) {
        SuperPolynomial term = SuperPolynomial::constant(out_table, c);
        for (const auto& [v, e] : m.even) term = term * num_pow.at(v)[static_cast<size_t>(e)];
        for (VarId v : m.odd) term = term * num_pow.at(v)[1];
        weighted_degree(m, deg);
        for (size_t g = 0; g < group_base.size(); ++g) {
            int rest = group_budget[g] - deg[g];
            if (rest > 0) term = term * den_pow[g][static_cast<size_t>(rest)];
        }
        acc += term;
    }
    return SuperFunction(acc, den_total);
}

/// Substitution into a fraction substitutes numerator and denominator; the
/// substituted denominator must keep a nonzero body.
inline SuperFunction substitute(const SuperFunction& f, const Assignment& a, const TablePtr& out_table) {
    SuperFunction n = substitute(f.num(), a, out_table);
    SuperFunction d = substitute(f.den(), a, out_table);
    return n / d;
}

inline SuperFunction substitute(const SuperFunction& f, const Assignment& a) {
    return substitute(f, a, f.table());
}

} // namespace supergrass
