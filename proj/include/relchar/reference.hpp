#pragma once

// Reference computations used only to cross-check the main kernel.  The
// invariant factors here come from gcds of k x k minors, a textbook route
// that shares no code with the elimination-based Smith normal form.

#include "relchar/intmatrix.hpp"

#include <vector>

namespace relchar::reference {

inline Integer minor_det(const IntMatrix& m, const std::vector<int>& rows,
                         const std::vector<int>& cols) {
    int k = static_cast<int>(rows.size());
    if (k == 0)
        return 1;
    Integer det = 0;
    // Laplace expansion along the first selected row.
    for (int j = 0; j < k; ++j) {
        const Integer& v = m.get(rows[0], cols[j]);
        if (v == 0)
            continue;
        std::vector<int> sub_rows(rows.begin() + 1, rows.end());
        std::vector<int> sub_cols;
        for (int c = 0; c < k; ++c)
            if (c != j)
                sub_cols.push_back(cols[c]);
        Integer term = v * minor_det(m, sub_rows, sub_cols);
        det += (j % 2 == 0) ? term : -term;
    }
    return det;
}

namespace detail {
inline void subsets(int n, int k, int start, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i <= n - (k - static_cast<int>(cur.size())); ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}
} // namespace detail

/// gcd of all k x k minors, 0 when all vanish.
inline Integer minor_gcd(const IntMatrix& m, int k) {
    std::vector<std::vector<int>> row_sets, col_sets;
    std::vector<int> cur;
    detail::subsets(m.rows(), k, 0, cur, row_sets);
    detail::subsets(m.cols(), k, 0, cur, col_sets);
    Integer g = 0;
    for (const auto& rs : row_sets)
        for (const auto& cs : col_sets) {
            g = boost::multiprecision::gcd(g, minor_det(m, rs, cs));
            if (g == 1)
                return g;
        }
    return g;
}

/// Invariant factors d_1 | d_2 | ... via d_k = gcd(k-minors)/gcd((k-1)-minors).
/// Only practical for small matrices; that is the point of an oracle.
inline std::vector<Integer> invariant_factors(const IntMatrix& m) {
    std::vector<Integer> factors;
    Integer prev = 1;
    int bound = std::min(m.rows(), m.cols());
    for (int k = 1; k <= bound; ++k) {
        Integer g = minor_gcd(m, k);
        if (g == 0)
            break;
        factors.push_back(g / prev);
        prev = g;
    }
    return factors;
}

inline int rank(const IntMatrix& m) {
    return static_cast<int>(invariant_factors(m).size());
}

} // namespace relchar::reference
