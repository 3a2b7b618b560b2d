#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "supergrass/supermatrix.hpp"

namespace supergrass {

enum class Flavor { Plain, Pi };

inline std::string flavor_name(Flavor f) { return f == Flavor::Plain ? "plain" : "pi"; }

/// Index of a chart: a k-subset of {1..m} and an l-subset of {1..n} for the
/// plain flavor; a single k-subset of {1..n} for the pi flavor (stored in
/// even_set, odd_set left empty).  Labels are 1-based and strictly sorted.
struct ChartIndex {
    Flavor flavor = Flavor::Pi;
    std::vector<int> even_set;
    std::vector<int> odd_set;

    friend bool operator==(const ChartIndex& a, const ChartIndex& b) {
        return a.flavor == b.flavor && a.even_set == b.even_set && a.odd_set == b.odd_set;
    }
    friend bool operator<(const ChartIndex& a, const ChartIndex& b) {
        if (a.even_set != b.even_set) return a.even_set < b.even_set;
        return a.odd_set < b.odd_set;
    }

    std::string str() const {
        std::ostringstream os;
        os << "{";
        for (size_t i = 0; i < even_set.size(); ++i) os << (i ? "," : "") << even_set[i];
        if (flavor == Flavor::Plain) {
            os << "|";
            for (size_t i = 0; i < odd_set.size(); ++i) os << (i ? "," : "") << odd_set[i];
        }
        os << "}";
        return os.str();
    }
};

inline void validate_subset(const std::vector<int>& s, int upper, const char* what) {
    int prev = 0;
    for (int v : s) {
        if (v <= prev || v > upper) throw index_error(std::string("invalid chart index set for ") + what);
        prev = v;
    }
}

/// One coordinate slot of a chart matrix.
struct ChartCoordinate {
    VarId var = kNoVar;
    Parity parity = Parity::Even;
    int row = 0, col = 0;           // 0-based position inside the chart matrix
    int label_row = 0, label_col = 0; // paper-style labels: ambient row, index-set element
};

/// A coordinate chart: the matrix Z with identity rows at the positions named
/// by the index, plus the table bookkeeping for its nontrivial entries.
struct Chart {
    ChartIndex index;
    SuperMatrix z;
    std::vector<ChartCoordinate> coords;
    std::vector<int> identity_rows; // 0-based rows of z carrying identity rows
    std::map<VarId, size_t> coord_of_var;

    const ChartCoordinate& coordinate(VarId v) const {
        auto it = coord_of_var.find(v);
        if (it == coord_of_var.end()) throw index_error("variable is not a coordinate of this chart");
        return coords[it->second];
    }

    std::vector<VarId> coordinate_vars() const {
        std::vector<VarId> out;
        out.reserve(coords.size());
        for (const auto& c : coords) out.push_back(c.var);
        return out;
    }

    /// For the pi flavor: the odd coordinate sharing the labels of an even one
    /// and vice versa.
    VarId paired_var(VarId v) const {
        const ChartCoordinate& c = coordinate(v);
        for (const auto& o : coords)
            if (o.parity != c.parity && o.label_row == c.label_row && o.label_col == c.label_col) return o.var;
        throw index_error("coordinate has no label partner");
    }
};

namespace detail {

inline std::string coord_name(const char* kind, const ChartIndex& idx, int label_row, int label_col) {
    std::ostringstream os;
    os << kind << idx.str() << "(" << label_row << "," << label_col << ")";
    return os.str();
}

inline int rank_in(const std::vector<int>& set, int value) {
    auto it = std::lower_bound(set.begin(), set.end(), value);
    if (it == set.end() || *it != value) throw index_error("value not in index set");
    return static_cast<int>(it - set.begin());
}

} // namespace detail

/// Registers the coordinates of one chart in the table and builds its matrix.
/// For the pi flavor the lower blocks repeat the upper-half variables, and the
/// repetition is an asserted invariant of the matrix, not an implicit one.
class ChartBuilder {
public:
    /// Phase 1: declare variables (shared mutable table).
    static void declare_variables(VariableTable& table, Flavor flavor, int m, int n, int k, int l,
                                  const ChartIndex& idx) {
        if (flavor == Flavor::Pi) {
            for (int r = 1; r <= n; ++r) {
                if (std::binary_search(idx.even_set.begin(), idx.even_set.end(), r)) continue;
                for (int c : idx.even_set) table.add(detail::coord_name("x", idx, r, c), Parity::Even);
            }
            for (int r = 1; r <= n; ++r) {
                if (std::binary_search(idx.even_set.begin(), idx.even_set.end(), r)) continue;
                for (int c : idx.even_set) table.add(detail::coord_name("xi", idx, r, c), Parity::Odd);
            }
            return;
        }
        // plain: even coordinates X' then Y', odd coordinates Xi' then H'
        for (int r = 1; r <= m; ++r) {
            if (std::binary_search(idx.even_set.begin(), idx.even_set.end(), r)) continue;
            for (int c : idx.even_set) table.add(detail::coord_name("x", idx, r, c), Parity::Even);
        }
        for (int r = 1; r <= n; ++r) {
            if (std::binary_search(idx.odd_set.begin(), idx.odd_set.end(), r)) continue;
            for (int c : idx.odd_set) table.add(detail::coord_name("y", idx, r, c), Parity::Even);
        }
        for (int r = 1; r <= m; ++r) {
            if (std::binary_search(idx.even_set.begin(), idx.even_set.end(), r)) continue;
            for (int c : idx.odd_set) table.add(detail::coord_name("xi", idx, r, c), Parity::Odd);
        }
        for (int r = 1; r <= n; ++r) {
            if (std::binary_search(idx.odd_set.begin(), idx.odd_set.end(), r)) continue;
            for (int c : idx.even_set) table.add(detail::coord_name("eta", idx, r, c), Parity::Odd);
        }
        (void)k;
        (void)l;
    }

    /// Phase 2: assemble the chart against the frozen table.
    static Chart build(const TablePtr& table, Flavor flavor, int m, int n, int k, int l, const ChartIndex& idx) {
        Chart chart;
        chart.index = idx;
        if (flavor == Flavor::Pi) {
            chart.z = SuperMatrix(table, 2 * n, 2 * k);
            chart.z.set_signature(BlockSignature{n, n, k, k});
            for (int i : idx.even_set) {
                int pos = detail::rank_in(idx.even_set, i);
                chart.z.at(i - 1, pos) = SuperFunction::one(table);
                chart.z.at(n + i - 1, k + pos) = SuperFunction::one(table);
                chart.identity_rows.push_back(i - 1);
                chart.identity_rows.push_back(n + i - 1);
            }
            for (int r = 1; r <= n; ++r) {
                if (std::binary_search(idx.even_set.begin(), idx.even_set.end(), r)) continue;
                for (int c : idx.even_set) {
                    int pos = detail::rank_in(idx.even_set, c);
                    VarId xv = table->find(detail::coord_name("x", idx, r, c));
                    VarId ov = table->find(detail::coord_name("xi", idx, r, c));
                    chart.z.at(r - 1, pos) = SuperFunction::variable(table, xv);
                    chart.z.at(n + r - 1, k + pos) = SuperFunction::variable(table, xv);
                    chart.z.at(r - 1, k + pos) = SuperFunction::variable(table, ov);
                    chart.z.at(n + r - 1, pos) = SuperFunction::variable(table, ov);
                    chart.coords.push_back({xv, Parity::Even, r - 1, pos, r, c});
                    chart.coords.push_back({ov, Parity::Odd, r - 1, k + pos, r, c});
                }
            }
            chart.z.validate_signature();
            assert_pi_symmetry(chart.z, n, k);
        } else {
            chart.z = SuperMatrix(table, m + n, k + l);
            chart.z.set_signature(BlockSignature{m, n, k, l});
            for (int i : idx.even_set) {
                int pos = detail::rank_in(idx.even_set, i);
                chart.z.at(i - 1, pos) = SuperFunction::one(table);
                chart.identity_rows.push_back(i - 1);
            }
            for (int j : idx.odd_set) {
                int pos = detail::rank_in(idx.odd_set, j);
                chart.z.at(m + j - 1, k + pos) = SuperFunction::one(table);
                chart.identity_rows.push_back(m + j - 1);
            }
            for (int r = 1; r <= m; ++r) {
                if (std::binary_search(idx.even_set.begin(), idx.even_set.end(), r)) continue;
                for (int c : idx.even_set) {
                    int pos = detail::rank_in(idx.even_set, c);
                    VarId v = table->find(detail::coord_name("x", idx, r, c));
                    chart.z.at(r - 1, pos) = SuperFunction::variable(table, v);
                    chart.coords.push_back({v, Parity::Even, r - 1, pos, r, c});
                }
                for (int c : idx.odd_set) {
                    int pos = detail::rank_in(idx.odd_set, c);
                    VarId v = table->find(detail::coord_name("xi", idx, r, c));
                    chart.z.at(r - 1, k + pos) = SuperFunction::variable(table, v);
                    chart.coords.push_back({v, Parity::Odd, r - 1, k + pos, r, c});
                }
            }
            for (int r = 1; r <= n; ++r) {
                if (std::binary_search(idx.odd_set.begin(), idx.odd_set.end(), r)) continue;
                for (int c : idx.even_set) {
                    int pos = detail::rank_in(idx.even_set, c);
                    VarId v = table->find(detail::coord_name("eta", idx, r, c));
                    chart.z.at(m + r - 1, pos) = SuperFunction::variable(table, v);
                    chart.coords.push_back({v, Parity::Odd, m + r - 1, pos, r, c});
                }
                for (int c : idx.odd_set) {
                    int pos = detail::rank_in(idx.odd_set, c);
                    VarId v = table->find(detail::coord_name("y", idx, r, c));
                    chart.z.at(m + r - 1, k + pos) = SuperFunction::variable(table, v);
                    chart.coords.push_back({v, Parity::Even, m + r - 1, k + pos, r, c});
                }
            }
            chart.z.validate_signature();
        }
        std::sort(chart.identity_rows.begin(), chart.identity_rows.end());
        for (size_t i = 0; i < chart.coords.size(); ++i) chart.coord_of_var.emplace(chart.coords[i].var, i);
        return chart;
    }

    /// The pi condition: the lower half repeats the upper-half blocks with the
    /// column blocks swapped.
    static void assert_pi_symmetry(const SuperMatrix& z, int n, int k) {
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < k; ++c) {
                if (z.at(r, c) != z.at(n + r, k + c) || z.at(r, k + c) != z.at(n + r, c))
                    throw parity_error("pi-symmetry X'=Y', Xi'=H' violated in chart matrix");
            }
    }
};

/// All k-subsets of {1..m} in lexicographic order (1-based labels).
inline std::vector<std::vector<int>> subsets_lex(int m, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > m) return out;
    std::vector<int> cur(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) cur[static_cast<size_t>(i)] = i + 1;
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[static_cast<size_t>(i)] == m - k + i + 1) --i;
        if (i < 0) break;
        ++cur[static_cast<size_t>(i)];
        for (int j = i + 1; j < k; ++j) cur[static_cast<size_t>(j)] = cur[static_cast<size_t>(j - 1)] + 1;
    }
    return out;
}

} // namespace supergrass
