#pragma once

#include <string>
#include <utility>
#include <vector>

#include "supergrass/gmatrix.hpp"
#include "supergrass/variables.hpp"

namespace supergrass {

/// Homogeneous element of the strange superalgebra: the pair (A, B) embedded
/// as [[A, B], [B, A]]; B = 0 is even, A = 0 is odd.
struct QnElement {
    GaussianMatrix a, b;
    Parity parity = Parity::Even;
};

/// The strange matrix superalgebra of block matrices [[A,B],[B,A]] with the
/// superbracket [X,Y] = XY - (-1)^{|X||Y|} YX; the identity block pair is
/// central and spans the center that the quotient removes.
class QnAlgebra {
public:
    explicit QnAlgebra(int n) : n_(n) {
        if (n < 1) throw config_error("q_n needs n >= 1");
    }

    int n() const { return n_; }
    int dim_even() const { return n_ * n_; }
    int dim_odd() const { return n_ * n_; }
    int dim() const { return 2 * n_ * n_; }
    int quotient_dim() const { return dim() - 1; }

    QnElement even(GaussianMatrix a) const {
        check(a);
        return {std::move(a), GaussianMatrix(n_, n_), Parity::Even};
    }
    QnElement odd(GaussianMatrix b) const {
        check(b);
        return {GaussianMatrix(n_, n_), std::move(b), Parity::Odd};
    }
    QnElement center_element() const { return even(GaussianMatrix::identity(n_)); }

    /// Product of the 2n x 2n embeddings, expressed back in (A, B) pairs.
    static std::pair<GaussianMatrix, GaussianMatrix> pair_product(const QnElement& x, const QnElement& y) {
        return {x.a * y.a + x.b * y.b, x.a * y.b + x.b * y.a};
    }

    QnElement bracket(const QnElement& x, const QnElement& y) const {
        auto [pa, pb] = pair_product(x, y);
        auto [qa, qb] = pair_product(y, x);
        bool odd_pair = x.parity == Parity::Odd && y.parity == Parity::Odd;
        GaussianMatrix ra = odd_pair ? pa + qa : pa - qa;
        GaussianMatrix rb = odd_pair ? pb + qb : pb - qb;
        QnElement r;
        r.a = std::move(ra);
        r.b = std::move(rb);
        r.parity = parity_sum(x.parity, y.parity);
        // closure: the bracket of homogeneous elements is homogeneous
        if (r.parity == Parity::Even ? !r.b.is_zero() : !r.a.is_zero())
            throw parity_error("superbracket left the algebra");
        return r;
    }

    /// [X, [Y, Z]] - [[X, Y], Z] - (-1)^{|X||Y|} [Y, [X, Z]].
    QnElement jacobi_defect(const QnElement& x, const QnElement& y, const QnElement& z) const {
        QnElement lhs = bracket(x, bracket(y, z));
        QnElement r1 = bracket(bracket(x, y), z);
        QnElement r2 = bracket(y, bracket(x, z));
        int sign = (x.parity == Parity::Odd && y.parity == Parity::Odd) ? -1 : 1;
        QnElement out;
        out.a = lhs.a - r1.a - (sign < 0 ? -r2.a : r2.a);
        out.b = lhs.b - r1.b - (sign < 0 ? -r2.b : r2.b);
        out.parity = parity_sum(x.parity, parity_sum(y.parity, z.parity));
        return out;
    }

    static bool is_zero(const QnElement& x) { return x.a.is_zero() && x.b.is_zero(); }

    /// Canonical representative of the class modulo the center: the A-part is
    /// made traceless.
    QnElement quotient_representative(const QnElement& x) const {
        QnElement out = x;
        GaussianRational tr;
        for (int i = 0; i < n_; ++i) tr += x.a.at(i, i);
        GaussianRational shift = tr / GaussianRational(n_);
        for (int i = 0; i < n_; ++i) out.a.at(i, i) -= shift;
        return out;
    }

private:
    void check(const GaussianMatrix& m) const {
        if (m.rows() != n_ || m.cols() != n_) throw dimension_error("q_n block must be n x n");
    }

    int n_;
};

// ---------------------------------------------------------------------------
// The eight-dimensional graded superalgebra of the exceptional (2,1) case:
// g_{-1} = V (odd), g_0 = sl_2 (even), g_1 = <d> (odd), extended by the
// grading operator z.
// ---------------------------------------------------------------------------

/// Basis order: e, h, f (g_0), then ebar, hbar, fbar (g_{-1}), then d, then z.
class V21Algebra {
public:
    static constexpr int kE = 0, kH = 1, kF = 2;
    static constexpr int kEbar = 3, kHbar = 4, kFbar = 5;
    static constexpr int kD = 6, kZ = 7;

    using Element = std::vector<GaussianRational>; // coefficients over the basis

    static int dim() { return 8; }

    static Parity basis_parity(int i) {
        return (i >= kEbar && i <= kFbar) || i == kD ? Parity::Odd : Parity::Even;
    }

    /// Z-degree of a basis vector; z itself sits in degree 0.
    static int basis_degree(int i) {
        if (i >= kEbar && i <= kFbar) return -1;
        if (i == kD) return 1;
        return 0;
    }

    static std::string basis_name(int i) {
        static const char* names[8] = {"e", "h", "f", "ebar", "hbar", "fbar", "d", "z"};
        return names[i];
    }

    static Element zero() { return Element(8); }
    static Element basis(int i) {
        Element v(8);
        v[static_cast<size_t>(i)] = GaussianRational::one();
        return v;
    }

    static bool is_zero(const Element& v) {
        for (const auto& c : v)
            if (!c.is_zero()) return false;
        return true;
    }

    /// Bracket of two basis vectors.
    static Element bracket_basis(int i, int j) {
        // sl2 structure constants: [h,e]=2e, [h,f]=-2f, [e,f]=h
        auto sl2 = [](int a, int b) -> Element {
            Element out(8);
            auto add = [&](int idx, long c) { out[static_cast<size_t>(idx)] += GaussianRational(c); };
            if (a == kH && b == kE) add(kE, 2);
            if (a == kE && b == kH) add(kE, -2);
            if (a == kH && b == kF) add(kF, -2);
            if (a == kF && b == kH) add(kF, 2);
            if (a == kE && b == kF) add(kH, 1);
            if (a == kF && b == kE) add(kH, -1);
            return out;
        };

        // [z, v] = deg(v) * v, and [v, z] = -(-1)^{0}[z, v] = -[z, v]
        if (i == kZ || j == kZ) {
            if (i == kZ && j == kZ) return zero();
            int v = i == kZ ? j : i;
            Element out = basis(v);
            GaussianRational c(basis_degree(v));
            for (auto& x : out) x *= c;
            if (j == kZ)
                for (auto& x : out) x = -x; // [v, z] = -[z, v] since z is even
            return out;
        }
        bool gi0 = i <= kF, gj0 = j <= kF;
        bool gi1 = i >= kEbar && i <= kFbar, gj1 = j >= kEbar && j <= kFbar;
        if (gi0 && gj0) return sl2(i, j);
        if (gi0 && gj1) { // adjoint action on the odd copy
            Element s = sl2(i, j - 3);
            Element out(8);
            for (int t = kE; t <= kF; ++t) out[static_cast<size_t>(t + 3)] = s[static_cast<size_t>(t)];
            return out;
        }
        if (gi1 && gj0) { // [v, a] = -[a, v] (odd, even)
            Element out = bracket_basis(j, i);
            for (auto& x : out) x = -x;
            return out;
        }
        if (gi1 && gj1) return zero(); // degree -2 vanishes
        if (i == kD && j == kD) return zero();
        if (i == kD && gj1) { // [d, vbar] = v in g_0, and symmetrically
            Element out(8);
            out[static_cast<size_t>(j - 3)] = GaussianRational::one();
            return out;
        }
        if (gi1 && j == kD) return bracket_basis(j, i); // both odd: symmetric
        if (i == kD && gj0) {                           // [d, g_0] = -[g_0, d] = 0
            return zero();
        }
        if (gi0 && j == kD) return zero(); // [g_0, g_1] = 0
        return zero();
    }

    static Element bracket(const Element& x, const Element& y) {
        Element out(8);
        for (int i = 0; i < 8; ++i) {
            if (x[static_cast<size_t>(i)].is_zero()) continue;
            for (int j = 0; j < 8; ++j) {
                if (y[static_cast<size_t>(j)].is_zero()) continue;
                Element b = bracket_basis(i, j);
                GaussianRational c = x[static_cast<size_t>(i)] * y[static_cast<size_t>(j)];
                for (int t = 0; t < 8; ++t) out[static_cast<size_t>(t)] += c * b[static_cast<size_t>(t)];
            }
        }
        return out;
    }

    /// Super Jacobi defect on basis vectors.
    static Element jacobi_defect_basis(int i, int j, int k) {
        Element lhs = bracket(basis(i), bracket_basis(j, k));
        Element r1 = bracket(bracket_basis(i, j), basis(k));
        Element r2 = bracket(basis(j), bracket_basis(i, k));
        int sign = (basis_parity(i) == Parity::Odd && basis_parity(j) == Parity::Odd) ? -1 : 1;
        Element out(8);
        for (int t = 0; t < 8; ++t)
            out[static_cast<size_t>(t)] =
                lhs[static_cast<size_t>(t)] - r1[static_cast<size_t>(t)] -
                (sign < 0 ? -r2[static_cast<size_t>(t)] : r2[static_cast<size_t>(t)]);
        return out;
    }
};

} // namespace supergrass
