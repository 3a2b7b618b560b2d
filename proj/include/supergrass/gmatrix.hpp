#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "supergrass/rational.hpp"

namespace supergrass {

/// Dense matrix over Q(i) with exact arithmetic.
class GaussianMatrix {
public:
    GaussianMatrix() = default;
    GaussianMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * static_cast<size_t>(cols)) {
        if (rows < 0 || cols < 0) throw dimension_error("negative matrix size");
    }

    static GaussianMatrix identity(int n) {
        GaussianMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = GaussianRational::one();
        return m;
    }

    static GaussianMatrix from_rows(std::initializer_list<std::initializer_list<GaussianRational>> rows) {
        int r = static_cast<int>(rows.size());
        int c = r ? static_cast<int>(rows.begin()->size()) : 0;
        GaussianMatrix m(r, c);
        int i = 0;
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != c) throw dimension_error("ragged matrix literal");
            int j = 0;
            for (const auto& v : row) m.at(i, j++) = v;
            ++i;
        }
        return m;
    }

    /// diag(J,...,J) with J = [[0,1],[-1,0]], n/2 blocks; n must be even.
    static GaussianMatrix symplectic_blocks(int n) {
        if (n % 2 != 0) throw dimension_error("symplectic block matrix needs even size");
        GaussianMatrix m(n, n);
        for (int b = 0; b < n / 2; ++b) {
            m.at(2 * b, 2 * b + 1) = GaussianRational::one();
            m.at(2 * b + 1, 2 * b) = -GaussianRational::one();
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    GaussianRational& at(int r, int c) { return data_[index(r, c)]; }
    const GaussianRational& at(int r, int c) const { return data_[index(r, c)]; }

    GaussianMatrix conj() const {
        GaussianMatrix m(rows_, cols_);
        for (size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i].conj();
        return m;
    }

    GaussianMatrix transpose() const {
        GaussianMatrix m(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) m.at(c, r) = at(r, c);
        return m;
    }

    GaussianMatrix operator-() const {
        GaussianMatrix m(rows_, cols_);
        for (size_t i = 0; i < data_.size(); ++i) m.data_[i] = -data_[i];
        return m;
    }

    friend GaussianMatrix operator*(const GaussianMatrix& a, const GaussianMatrix& b) {
        if (a.cols_ != b.rows_) throw dimension_error("matrix product dimension mismatch");
        GaussianMatrix m(a.rows_, b.cols_);
        for (int r = 0; r < a.rows_; ++r)
            for (int k = 0; k < a.cols_; ++k) {
                if (a.at(r, k).is_zero()) continue;
                for (int c = 0; c < b.cols_; ++c) m.at(r, c) += a.at(r, k) * b.at(k, c);
            }
        return m;
    }

    friend GaussianMatrix operator+(const GaussianMatrix& a, const GaussianMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw dimension_error("matrix sum dimension mismatch");
        GaussianMatrix m = a;
        for (size_t i = 0; i < m.data_.size(); ++i) m.data_[i] += b.data_[i];
        return m;
    }
    friend GaussianMatrix operator-(const GaussianMatrix& a, const GaussianMatrix& b) { return a + (-b); }

    GaussianMatrix scaled(const GaussianRational& c) const {
        GaussianMatrix m(rows_, cols_);
        for (size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] * c;
        return m;
    }

    friend bool operator==(const GaussianMatrix& a, const GaussianMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const GaussianMatrix& a, const GaussianMatrix& b) { return !(a == b); }

    bool is_zero() const {
        for (const auto& v : data_)
            if (!v.is_zero()) return false;
        return true;
    }

    /// lambda with *this == lambda * I, if it is a scalar matrix.
    std::optional<GaussianRational> scalar_of() const {
        if (rows_ != cols_ || rows_ == 0) return std::nullopt;
        GaussianRational lambda = at(0, 0);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) {
                if (r == c && at(r, c) != lambda) return std::nullopt;
                if (r != c && !at(r, c).is_zero()) return std::nullopt;
            }
        return lambda;
    }

    GaussianRational det() const {
        if (rows_ != cols_) throw dimension_error("determinant of a non-square matrix");
        GaussianMatrix m = *this;
        GaussianRational d = GaussianRational::one();
        for (int k = 0; k < rows_; ++k) {
            int pivot = -1;
            for (int r = k; r < rows_; ++r)
                if (!m.at(r, k).is_zero()) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) return GaussianRational::zero();
            if (pivot != k) {
                for (int c = 0; c < cols_; ++c) std::swap(m.at(pivot, c), m.at(k, c));
                d = -d;
            }
            d *= m.at(k, k);
            GaussianRational inv = GaussianRational::one() / m.at(k, k);
            for (int r = k + 1; r < rows_; ++r) {
                GaussianRational f = m.at(r, k) * inv;
                if (f.is_zero()) continue;
                for (int c = k; c < cols_; ++c) m.at(r, c) -= f * m.at(k, c);
            }
        }
        return d;
    }

    GaussianMatrix inverse() const {
        if (rows_ != cols_) throw dimension_error("inverse of a non-square matrix");
        GaussianMatrix m = *this;
        GaussianMatrix inv = identity(rows_);
        for (int k = 0; k < rows_; ++k) {
            int pivot = -1;
            for (int r = k; r < rows_; ++r)
                if (!m.at(r, k).is_zero()) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) throw non_invertible_error("singular matrix");
            if (pivot != k)
                for (int c = 0; c < cols_; ++c) {
                    std::swap(m.at(pivot, c), m.at(k, c));
                    std::swap(inv.at(pivot, c), inv.at(k, c));
                }
            GaussianRational piv_inv = GaussianRational::one() / m.at(k, k);
            for (int c = 0; c < cols_; ++c) {
                m.at(k, c) *= piv_inv;
                inv.at(k, c) *= piv_inv;
            }
            for (int r = 0; r < rows_; ++r) {
                if (r == k || m.at(r, k).is_zero()) continue;
                GaussianRational f = m.at(r, k);
                for (int c = 0; c < cols_; ++c) {
                    m.at(r, c) -= f * m.at(k, c);
                    inv.at(r, c) -= f * inv.at(k, c);
                }
            }
        }
        return inv;
    }

    /// If the matrix is lambda * (permutation with +-1 entries), returns for
    /// each column c the row r and the sign with entry lambda*sign at (r,c).
    std::optional<std::vector<std::pair<int, int>>> signed_permutation_pattern() const {
        if (rows_ != cols_) return std::nullopt;
        std::vector<std::pair<int, int>> out(static_cast<size_t>(cols_), {-1, 0});
        GaussianRational scale;
        bool have_scale = false;
        std::vector<bool> row_used(static_cast<size_t>(rows_), false);
        for (int c = 0; c < cols_; ++c) {
            for (int r = 0; r < rows_; ++r) {
                const GaussianRational& v = at(r, c);
                if (v.is_zero()) continue;
                if (out[static_cast<size_t>(c)].first != -1) return std::nullopt; // two entries in a column
                if (!have_scale) {
                    scale = v;
                    have_scale = true;
                }
                int sign;
                if (v == scale)
                    sign = 1;
                else if (v == -scale)
                    sign = -1;
                else
                    return std::nullopt;
                out[static_cast<size_t>(c)] = {r, sign};
            }
            auto [r, s] = out[static_cast<size_t>(c)];
            if (r < 0 || row_used[static_cast<size_t>(r)]) return std::nullopt;
            row_used[static_cast<size_t>(r)] = true;
        }
        return out;
    }

private:
    size_t index(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw index_error("matrix index out of range");
        return static_cast<size_t>(r) * static_cast<size_t>(cols_) + static_cast<size_t>(c);
    }

    int rows_ = 0, cols_ = 0;
    std::vector<GaussianRational> data_;
};

/// Row-reduces an augmented rational system [A | b]; exact arithmetic.
struct LinearSystemResult {
    bool consistent = true;
    int rank = 0;
    int unknowns = 0;
    /// Reduced row echelon form of the augmented matrix (rational entries).
    std::vector<std::vector<mpq_class>> rref;
    int solution_dimension() const { return consistent ? unknowns - rank : -1; }
};

inline LinearSystemResult solve_rational_system(std::vector<std::vector<mpq_class>> aug, int unknowns) {
    LinearSystemResult res;
    res.unknowns = unknowns;
    const int rows = static_cast<int>(aug.size());
    const int cols = unknowns + 1;
    int lead = 0;
    for (int col = 0; col < unknowns && lead < rows; ++col) {
        int pivot = -1;
        for (int r = lead; r < rows; ++r)
            if (aug[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(aug[static_cast<size_t>(pivot)], aug[static_cast<size_t>(lead)]);
        mpq_class inv = 1 / aug[static_cast<size_t>(lead)][static_cast<size_t>(col)];
        for (int c = 0; c < cols; ++c) aug[static_cast<size_t>(lead)][static_cast<size_t>(c)] *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == lead) continue;
            mpq_class f = aug[static_cast<size_t>(r)][static_cast<size_t>(col)];
            if (f == 0) continue;
            for (int c = 0; c < cols; ++c)
                aug[static_cast<size_t>(r)][static_cast<size_t>(c)] -=
                    f * aug[static_cast<size_t>(lead)][static_cast<size_t>(c)];
        }
        ++lead;
    }
    res.rank = lead;
    for (int r = 0; r < rows; ++r) {
        bool all_zero = true;
        for (int c = 0; c < unknowns; ++c)
            if (aug[static_cast<size_t>(r)][static_cast<size_t>(c)] != 0) {
                all_zero = false;
                break;
            }
        if (all_zero && aug[static_cast<size_t>(r)][static_cast<size_t>(unknowns)] != 0) res.consistent = false;
    }
    res.rref = std::move(aug);
    return res;
}

/// Nullspace basis of a homogeneous rational system A x = 0.
inline std::vector<std::vector<mpq_class>> rational_nullspace(const std::vector<std::vector<mpq_class>>& a,
                                                              int unknowns) {
    std::vector<std::vector<mpq_class>> aug;
    aug.reserve(a.size());
    for (const auto& row : a) {
        std::vector<mpq_class> r = row;
        r.resize(static_cast<size_t>(unknowns) + 1, 0);
        aug.push_back(std::move(r));
    }
    LinearSystemResult res = solve_rational_system(std::move(aug), unknowns);
    // locate pivot columns
    std::vector<int> pivot_col;
    std::vector<bool> is_pivot(static_cast<size_t>(unknowns), false);
    int r = 0;
    for (int c = 0; c < unknowns && r < static_cast<int>(res.rref.size()); ++c) {
        if (res.rref[static_cast<size_t>(r)][static_cast<size_t>(c)] == 1) {
            bool pivotal = true;
            for (int rr = 0; rr < static_cast<int>(res.rref.size()); ++rr)
                if (rr != r && res.rref[static_cast<size_t>(rr)][static_cast<size_t>(c)] != 0) pivotal = false;
            if (pivotal) {
                pivot_col.push_back(c);
                is_pivot[static_cast<size_t>(c)] = true;
                ++r;
            }
        }
    }
    std::vector<std::vector<mpq_class>> basis;
    for (int free_c = 0; free_c < unknowns; ++free_c) {
        if (is_pivot[static_cast<size_t>(free_c)]) continue;
        std::vector<mpq_class> v(static_cast<size_t>(unknowns), 0);
        v[static_cast<size_t>(free_c)] = 1;
        for (size_t pr = 0; pr < pivot_col.size(); ++pr)
            v[static_cast<size_t>(pivot_col[pr])] = -res.rref[pr][static_cast<size_t>(free_c)];
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace supergrass
