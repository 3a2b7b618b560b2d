#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "supergrass/gmatrix.hpp"
#include "supergrass/superfunction.hpp"

namespace supergrass {

/// Even/odd block structure of a supermatrix: rows split as (re | ro), columns
/// as (ce | co).  Entries in the diagonal blocks are even, off-diagonal odd.
struct BlockSignature {
    int row_even = 0, row_odd = 0, col_even = 0, col_odd = 0;
};

/// Rectangular matrix over SuperFunctions.
class SuperMatrix {
public:
    SuperMatrix() = default;
    SuperMatrix(TablePtr table, int rows, int cols)
        : table_(std::move(table)),
          rows_(rows),
          cols_(cols),
          entries_(static_cast<size_t>(rows) * static_cast<size_t>(cols), SuperFunction::zero(table_)) {
        if (rows < 0 || cols < 0) throw dimension_error("negative matrix size");
    }

    static SuperMatrix identity(TablePtr table, int n) {
        SuperMatrix m(std::move(table), n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = SuperFunction::one(m.table_);
        return m;
    }

    static SuperMatrix from_numeric(TablePtr table, const GaussianMatrix& g) {
        SuperMatrix m(table, g.rows(), g.cols());
        for (int r = 0; r < g.rows(); ++r)
            for (int c = 0; c < g.cols(); ++c) m.at(r, c) = SuperFunction::constant(table, g.at(r, c));
        return m;
    }

    const TablePtr& table() const { return table_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    SuperFunction& at(int r, int c) { return entries_[index(r, c)]; }
    const SuperFunction& at(int r, int c) const { return entries_[index(r, c)]; }

    void set_signature(BlockSignature sig) {
        if (sig.row_even + sig.row_odd != rows_ || sig.col_even + sig.col_odd != cols_)
            throw dimension_error("parity signature does not match matrix size");
        signature_ = sig;
        validate_signature();
    }
    const std::optional<BlockSignature>& signature() const { return signature_; }

    /// Checks that entries of even blocks are even and odd blocks odd.
    void validate_signature() const {
        if (!signature_) return;
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) {
                bool row_odd = r >= signature_->row_even;
                bool col_odd = c >= signature_->col_even;
                Parity expected = row_odd == col_odd ? Parity::Even : Parity::Odd;
                auto p = at(r, c).parity();
                if (!p || (*p != expected && !at(r, c).is_zero()))
                    throw parity_error("matrix entry (" + std::to_string(r) + "," + std::to_string(c) +
                                       ") violates the block parity signature");
            }
    }

    friend SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b) {
        require_same_ring(a.table_, b.table_, "matrix product");
        if (a.cols_ != b.rows_) throw dimension_error("matrix product dimension mismatch");
        SuperMatrix m(a.table_, a.rows_, b.cols_);
        for (int r = 0; r < a.rows_; ++r)
            for (int k = 0; k < a.cols_; ++k) {
                if (a.at(r, k).is_zero()) continue;
                for (int c = 0; c < b.cols_; ++c) {
                    if (b.at(k, c).is_zero()) continue;
                    m.at(r, c) += a.at(r, k) * b.at(k, c);
                }
            }
        return m;
    }

    friend SuperMatrix operator+(const SuperMatrix& a, const SuperMatrix& b) {
        require_same_ring(a.table_, b.table_, "matrix sum");
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw dimension_error("matrix sum dimension mismatch");
        SuperMatrix m = a;
        for (size_t i = 0; i < m.entries_.size(); ++i) m.entries_[i] += b.entries_[i];
        return m;
    }

    SuperMatrix operator-() const {
        SuperMatrix m = *this;
        for (auto& e : m.entries_) e = -e;
        return m;
    }
    friend SuperMatrix operator-(const SuperMatrix& a, const SuperMatrix& b) { return a + (-b); }

    friend bool operator==(const SuperMatrix& a, const SuperMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (size_t i = 0; i < a.entries_.size(); ++i)
            if (a.entries_[i] != b.entries_[i]) return false;
        return true;
    }
    friend bool operator!=(const SuperMatrix& a, const SuperMatrix& b) { return !(a == b); }

    bool is_zero() const {
        for (const auto& e : entries_)
            if (!e.is_zero()) return false;
        return true;
    }

    SuperMatrix transpose() const {
        SuperMatrix m(table_, cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) m.at(c, r) = at(r, c);
        return m;
    }

    /// Square submatrix (or rectangular) of the given rows, indices 0-based
    /// and strictly increasing.
    SuperMatrix extract_rows(const std::vector<int>& row_indices) const {
        SuperMatrix m(table_, static_cast<int>(row_indices.size()), cols_);
        int last = -1;
        for (size_t i = 0; i < row_indices.size(); ++i) {
            int r = row_indices[i];
            if (r <= last) throw index_error("row indices must be strictly increasing");
            if (r < 0 || r >= rows_) throw index_error("row index out of range");
            last = r;
            for (int c = 0; c < cols_; ++c) m.at(static_cast<int>(i), c) = at(r, c);
        }
        return m;
    }

    SuperMatrix body() const {
        SuperMatrix m(table_, rows_, cols_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) m.at(r, c) = at(r, c).body();
        return m;
    }
    SuperMatrix soul() const { return *this - body(); }

    /// Exact two-sided inverse via body inversion and the finite Neumann
    /// series sum_p (-B^{-1} N)^p B^{-1}; the result is multiplied back
    /// against the input on both sides as a self-check.
    SuperMatrix super_inverse() const;

    std::string str() const {
        std::string s;
        for (int r = 0; r < rows_; ++r) {
            s += r == 0 ? "[" : " ";
            s += "[";
            for (int c = 0; c < cols_; ++c) {
                if (c) s += ", ";
                s += at(r, c).str();
            }
            s += "]";
            s += r + 1 == rows_ ? "]" : "\n";
        }
        return s;
    }

private:
    size_t index(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw index_error("matrix index out of range");
        return static_cast<size_t>(r) * static_cast<size_t>(cols_) + static_cast<size_t>(c);
    }

    TablePtr table_;
    int rows_ = 0, cols_ = 0;
    std::vector<SuperFunction> entries_;
    std::optional<BlockSignature> signature_;
};

struct BodySoulSplit {
    SuperMatrix body;
    SuperMatrix soul;
};

inline BodySoulSplit body_soul_split(const SuperMatrix& m) { return {m.body(), m.soul()}; }

namespace detail {

/// Fraction-free Bareiss determinant of a pure-even polynomial matrix;
/// nullopt when an intermediate exact division fails.
inline std::optional<SuperPolynomial> bareiss_det(std::vector<std::vector<SuperPolynomial>> m,
                                                  const TablePtr& table) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return SuperPolynomial::constant(table, GaussianRational::one());
    SuperPolynomial prev = SuperPolynomial::constant(table, GaussianRational::one());
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        int pivot = -1;
        for (int r = k; r < n; ++r)
            if (!m[static_cast<size_t>(r)][static_cast<size_t>(k)].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) return SuperPolynomial(table); // singular
        if (pivot != k) {
            std::swap(m[static_cast<size_t>(pivot)], m[static_cast<size_t>(k)]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                SuperPolynomial t = m[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                                        m[static_cast<size_t>(k)][static_cast<size_t>(k)] -
                                    m[static_cast<size_t>(i)][static_cast<size_t>(k)] *
                                        m[static_cast<size_t>(k)][static_cast<size_t>(j)];
                auto q = divide_exact_even(t, prev);
                if (!q) return std::nullopt;
                m[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::move(*q);
            }
            m[static_cast<size_t>(i)][static_cast<size_t>(k)] = SuperPolynomial(table);
        }
        prev = m[static_cast<size_t>(k)][static_cast<size_t>(k)];
    }
    SuperPolynomial d = m[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)];
    return sign < 0 ? -d : d;
}

/// Determinant by fraction Gaussian elimination; always applicable.
inline SuperPolynomial fraction_det(const std::vector<std::vector<SuperPolynomial>>& m, const TablePtr& table) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return SuperPolynomial::constant(table, GaussianRational::one());
    SuperFunction det = SuperFunction::one(table);
    std::vector<std::vector<SuperFunction>> f(static_cast<size_t>(n));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            f[static_cast<size_t>(r)].push_back(SuperFunction(m[static_cast<size_t>(r)][static_cast<size_t>(c)]));
    for (int k = 0; k < n; ++k) {
        int pivot = -1;
        for (int r = k; r < n; ++r)
            if (!f[static_cast<size_t>(r)][static_cast<size_t>(k)].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) return SuperPolynomial(table);
        if (pivot != k) {
            std::swap(f[static_cast<size_t>(pivot)], f[static_cast<size_t>(k)]);
            det = -det;
        }
        det *= f[static_cast<size_t>(k)][static_cast<size_t>(k)];
        SuperFunction inv = f[static_cast<size_t>(k)][static_cast<size_t>(k)].inverse();
        for (int r = k + 1; r < n; ++r) {
            SuperFunction factor = f[static_cast<size_t>(r)][static_cast<size_t>(k)] * inv;
            if (factor.is_zero()) continue;
            for (int c = k; c < n; ++c)
                f[static_cast<size_t>(r)][static_cast<size_t>(c)] -=
                    factor * f[static_cast<size_t>(k)][static_cast<size_t>(c)];
        }
    }
    // the determinant is a polynomial, so the fraction reduces exactly
    auto q = divide_exact_even(det.num(), det.den());
    if (!q) throw non_invertible_error("internal: determinant fraction failed to reduce");
    return *q;
}

inline SuperPolynomial even_poly_det(const std::vector<std::vector<SuperPolynomial>>& m, const TablePtr& table) {
    if (auto d = bareiss_det(m, table)) return *d;
    return fraction_det(m, table);
}

/// Inverse of a square matrix over the pure-even fraction subring.
inline SuperMatrix even_matrix_inverse(const SuperMatrix& b) {
    const int n = b.rows();
    const TablePtr& table = b.table();
    // clear denominators: P = diag(d_r) * B with d_r the product of row dens
    std::vector<SuperPolynomial> row_den;
    std::vector<std::vector<SuperPolynomial>> p(static_cast<size_t>(n));
    for (int r = 0; r < n; ++r) {
        SuperPolynomial d = SuperPolynomial::constant(table, GaussianRational::one());
        for (int c = 0; c < n; ++c) d = d * b.at(r, c).den();
        row_den.push_back(d);
        for (int c = 0; c < n; ++c) {
            auto q = divide_exact_even(d, b.at(r, c).den());
            if (!q) throw non_invertible_error("internal: row denominator clearing failed");
            p[static_cast<size_t>(r)].push_back(b.at(r, c).num() * *q);
        }
    }
    SuperPolynomial det = even_poly_det(p, table);
    if (det.is_zero())
        throw non_invertible_error("singular body: the body determinant vanishes identically");
    // adjugate via cofactor determinants: inv(P) = adj(P)/det(P), then
    // inv(B) = inv(P) * diag(d_r)
    SuperMatrix inv(table, n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            std::vector<std::vector<SuperPolynomial>> minor;
            minor.reserve(static_cast<size_t>(n) - 1);
            for (int i = 0; i < n; ++i) {
                if (i == c) continue; // adj(P)[r][c] = (-1)^(r+c) * minor det without row c / col r
                std::vector<SuperPolynomial> row;
                row.reserve(static_cast<size_t>(n) - 1);
                for (int j = 0; j < n; ++j) {
                    if (j == r) continue;
                    row.push_back(p[static_cast<size_t>(i)][static_cast<size_t>(j)]);
                }
                minor.push_back(std::move(row));
            }
            SuperPolynomial cof = even_poly_det(minor, table);
            if ((r + c) % 2 != 0) cof = -cof;
            inv.at(r, c) = SuperFunction(cof * row_den[static_cast<size_t>(c)], det);
        }
    return inv;
}

} // namespace detail

inline SuperMatrix SuperMatrix::super_inverse() const {
    if (rows_ != cols_) throw dimension_error("inverse of a non-square matrix");
    SuperMatrix b = body();
    SuperMatrix n = soul();
    SuperMatrix binv = detail::even_matrix_inverse(b);
    SuperMatrix acc = binv;
    SuperMatrix step = -(binv * n); // -B^{-1} N, nilpotent
    SuperMatrix power = step;
    const int cap = static_cast<int>(table_->odd_vars().size()) + 1;
    int p = 1;
    while (!power.is_zero()) {
        if (p > cap) throw non_invertible_error("internal: Neumann series failed to terminate");
        acc = acc + power * binv;
        power = power * step;
        ++p;
    }
    SuperMatrix id = identity(table_, rows_);
    if (!(*this * acc == id) || !(acc * *this == id))
        throw non_invertible_error("internal: inverse verification failed");
    return acc;
}

/// Matrix product alias matching the operation vocabulary of the engine.
inline SuperMatrix mat_mul(const SuperMatrix& a, const SuperMatrix& b) { return a * b; }

} // namespace supergrass
