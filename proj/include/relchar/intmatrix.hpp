#pragma once

// Sparse exact integer linear algebra: Smith normal form with tracked
// unimodular transforms, Diophantine and rational solvers, kernel and
// membership computations.  Everything is deterministic: pivot choice is
// smallest nonzero absolute value with lowest (row, col) as tie-break.

#include "relchar/numbers.hpp"

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace relchar {

using IntVec = std::vector<Integer>;
using RatVec = std::vector<Rational>;

/// Sparse integer matrix.  Absent entries are zero; stored entries are
/// nonzero and iterate in lexicographic (row, col) order.
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {
        require(rows >= 0 && cols >= 0, "IntMatrix: negative dimensions");
    }

    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            m.set(i, i, 1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const Integer& get(int r, int c) const {
        static const Integer zero = 0;
        check_index(r, c);
        auto it = data_[r].find(c);
        return it == data_[r].end() ? zero : it->second;
    }

    void set(int r, int c, const Integer& v) {
        check_index(r, c);
        if (v == 0)
            data_[r].erase(c);
        else
            data_[r][c] = v;
    }

    void add(int r, int c, const Integer& v) {
        check_index(r, c);
        auto it = data_[r].find(c);
        if (it == data_[r].end()) {
            if (v != 0)
                data_[r][c] = v;
        } else {
            it->second += v;
            if (it->second == 0)
                data_[r].erase(it);
        }
    }

    const std::map<int, Integer>& row(int r) const { return data_[r]; }

    bool is_zero() const {
        for (const auto& row : data_)
            if (!row.empty())
                return false;
        return true;
    }

    int nnz() const {
        int n = 0;
        for (const auto& row : data_)
            n += static_cast<int>(row.size());
        return n;
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (const auto& [c, v] : data_[r])
                t.set(c, r, v);
        return t;
    }

    IntMatrix operator*(const IntMatrix& o) const {
        require(cols_ == o.rows_, "IntMatrix: dimension mismatch in product");
        IntMatrix p(rows_, o.cols_);
        for (int r = 0; r < rows_; ++r)
            for (const auto& [k, v] : data_[r])
                for (const auto& [c, w] : o.data_[k])
                    p.add(r, c, v * w);
        return p;
    }

    IntVec apply(const IntVec& x) const {
        require(static_cast<int>(x.size()) == cols_, "IntMatrix: vector length mismatch");
        IntVec y(rows_, 0);
        for (int r = 0; r < rows_; ++r)
            for (const auto& [c, v] : data_[r])
                y[r] += v * x[c];
        return y;
    }

    RatVec apply(const RatVec& x) const {
        require(static_cast<int>(x.size()) == cols_, "IntMatrix: vector length mismatch");
        RatVec y(rows_, 0);
        for (int r = 0; r < rows_; ++r)
            for (const auto& [c, v] : data_[r])
                y[r] += Rational(v) * x[c];
        return y;
    }

    IntVec column(int c) const {
        IntVec col(rows_, 0);
        for (int r = 0; r < rows_; ++r) {
            auto it = data_[r].find(c);
            if (it != data_[r].end())
                col[r] = it->second;
        }
        return col;
    }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    static IntMatrix from_columns(int rows, const std::vector<IntVec>& cols) {
        IntMatrix m(rows, static_cast<int>(cols.size()));
        for (int c = 0; c < static_cast<int>(cols.size()); ++c) {
            require(static_cast<int>(cols[c].size()) == rows, "from_columns: ragged input");
            for (int r = 0; r < rows; ++r)
                m.set(r, c, cols[c][r]);
        }
        return m;
    }

  private:
    void check_index(int r, int c) const {
        require(r >= 0 && r < rows_ && c >= 0 && c < cols_, "IntMatrix: index out of range");
    }

    int rows_ = 0, cols_ = 0;
    std::vector<std::map<int, Integer>> data_;
};

/// U * M * V = D with U, V unimodular and D diagonal with a divisibility
/// chain d1 | d2 | ... (all nonnegative).  The inverses are tracked during
/// reduction so callers never need to invert a unimodular matrix.
struct SnfDecomposition {
    IntMatrix u, d, v;
    IntMatrix u_inv, v_inv;

    int rank() const {
        int r = 0;
        int n = std::min(d.rows(), d.cols());
        while (r < n && d.get(r, r) != 0)
            ++r;
        return r;
    }
};

namespace detail {

// Workspace for the reduction; keeps a row-major copy plus a column index so
// pivot search and column operations stay proportional to the nonzeros.
class SnfWorker {
  public:
    explicit SnfWorker(const IntMatrix& m)
        : rows_(m.rows()), cols_(m.cols()), d_(m.rows()), col_rows_(m.cols()),
          u_(m.rows()), uinv_cols_(m.rows()), v_cols_(m.cols()), vinv_(m.cols()) {
        for (int r = 0; r < rows_; ++r)
            for (const auto& [c, val] : m.row(r)) {
                d_[r][c] = val;
                col_rows_[c].insert(r);
            }
        for (int i = 0; i < rows_; ++i) {
            u_[i][i] = 1;
            uinv_cols_[i][i] = 1;
        }
        for (int j = 0; j < cols_; ++j) {
            v_cols_[j][j] = 1;
            vinv_[j][j] = 1;
        }
    }

    SnfDecomposition run() {
        int t = 0;
        int bound = std::min(rows_, cols_);
        while (t < bound) {
            auto piv = find_pivot(t);
            if (!piv)
                break;
            reduce_at(t, piv->first, piv->second);
            ++t;
        }
        for (int i = 0; i < bound; ++i) {
            auto it = d_[i].find(i);
            if (it != d_[i].end() && it->second < 0)
                negate_row(i);
        }
        return pack();
    }

  private:
    using Row = std::map<int, Integer>;

    std::optional<std::pair<int, int>> find_pivot(int t) const {
        std::optional<std::pair<int, int>> best;
        Integer best_abs = 0;
        for (int r = t; r < rows_; ++r)
            for (const auto& [c, v] : d_[r]) {
                if (c < t)
                    continue;
                Integer a = boost::multiprecision::abs(v);
                if (!best || a < best_abs) {
                    best = {r, c};
                    best_abs = a;
                }
            }
        return best;
    }

    void reduce_at(int t, int pr, int pc) {
        swap_rows(t, pr);
        swap_cols(t, pc);
        while (true) {
            bool clean = true;
            Integer piv = d_[t].at(t);
            // clear column t
            std::vector<int> rows_in_col(col_rows_[t].begin(), col_rows_[t].end());
            for (int r : rows_in_col) {
                if (r == t)
                    continue;
                Integer q = d_[r].at(t) / piv; // truncated: remainder < |piv|
                if (q != 0)
                    row_add(r, t, -q);
                if (d_[r].count(t))
                    clean = false;
            }
            if (!clean) {
                repivot(t);
                continue;
            }
            // clear row t
            std::vector<std::pair<int, Integer>> row_entries(d_[t].begin(), d_[t].end());
            for (const auto& [c, val] : row_entries) {
                if (c == t)
                    continue;
                Integer q = val / piv;
                if (q != 0)
                    col_add(c, t, -q);
                if (d_[t].count(c))
                    clean = false;
            }
            if (!clean) {
                repivot(t);
                continue;
            }
            // pivot must divide the remaining submatrix for the chain d1|d2|...
            piv = d_[t].at(t);
            int bad_row = -1;
            for (int r = t + 1; r < rows_ && bad_row < 0; ++r)
                for (const auto& [c, v] : d_[r]) {
                    if (c <= t)
                        continue;
                    if (v % piv != 0) {
                        bad_row = r;
                        break;
                    }
                }
            if (bad_row >= 0) {
                row_add(t, bad_row, 1);
                repivot(t);
                continue;
            }
            break;
        }
    }

    // move the smallest remaining entry (searching from (t,t)) back to (t,t)
    void repivot(int t) {
        auto piv = find_pivot(t);
        require(piv.has_value(), "snf: lost pivot");
        swap_rows(t, piv->first);
        swap_cols(t, piv->second);
    }

    void swap_rows(int i, int j) {
        if (i == j)
            return;
        for (const auto& [c, v] : d_[i])
            col_rows_[c].erase(i);
        for (const auto& [c, v] : d_[j])
            col_rows_[c].erase(j);
        std::swap(d_[i], d_[j]);
        for (const auto& [c, v] : d_[i])
            col_rows_[c].insert(i);
        for (const auto& [c, v] : d_[j])
            col_rows_[c].insert(j);
        std::swap(u_[i], u_[j]);
        std::swap(uinv_cols_[i], uinv_cols_[j]);
    }

    void swap_cols(int i, int j) {
        if (i == j)
            return;
        std::set<int> touched = col_rows_[i];
        touched.insert(col_rows_[j].begin(), col_rows_[j].end());
        for (int r : touched) {
            auto it_i = d_[r].find(i);
            auto it_j = d_[r].find(j);
            Integer vi = it_i == d_[r].end() ? Integer(0) : it_i->second;
            Integer vj = it_j == d_[r].end() ? Integer(0) : it_j->second;
            set_entry(r, i, vj);
            set_entry(r, j, vi);
        }
        std::swap(v_cols_[i], v_cols_[j]);
        std::swap(vinv_[i], vinv_[j]);
    }

    // row_i += q * row_t (on D and U); U_inv column t -= q * column i
    void row_add(int i, int t, const Integer& q) {
        for (const auto& [c, v] : d_[t]) {
            auto it = d_[i].find(c);
            Integer nv = (it == d_[i].end() ? Integer(0) : it->second) + q * v;
            set_entry(i, c, nv);
        }
        for (const auto& [c, v] : u_[t]) {
            auto it = u_[i].find(c);
            Integer nv = (it == u_[i].end() ? Integer(0) : it->second) + q * v;
            if (nv == 0)
                u_[i].erase(c);
            else
                u_[i][c] = nv;
        }
        for (const auto& [r, v] : uinv_cols_[i]) {
            auto it = uinv_cols_[t].find(r);
            Integer nv = (it == uinv_cols_[t].end() ? Integer(0) : it->second) - q * v;
            if (nv == 0)
                uinv_cols_[t].erase(r);
            else
                uinv_cols_[t][r] = nv;
        }
    }

    // col_j += q * col_t (on D and V); V_inv row t -= q * row j
    void col_add(int j, int t, const Integer& q) {
        std::vector<int> rows_t(col_rows_[t].begin(), col_rows_[t].end());
        for (int r : rows_t) {
            Integer v = d_[r].at(t);
            auto it = d_[r].find(j);
            Integer nv = (it == d_[r].end() ? Integer(0) : it->second) + q * v;
            set_entry(r, j, nv);
        }
        for (const auto& [r, v] : v_cols_[t]) {
            auto it = v_cols_[j].find(r);
            Integer nv = (it == v_cols_[j].end() ? Integer(0) : it->second) + q * v;
            if (nv == 0)
                v_cols_[j].erase(r);
            else
                v_cols_[j][r] = nv;
        }
        for (const auto& [c, v] : vinv_[j]) {
            auto it = vinv_[t].find(c);
            Integer nv = (it == vinv_[t].end() ? Integer(0) : it->second) - q * v;
            if (nv == 0)
                vinv_[t].erase(c);
            else
                vinv_[t][c] = nv;
        }
    }

    void negate_row(int i) {
        for (auto& [c, v] : d_[i])
            v = -v;
        for (auto& [c, v] : u_[i])
            v = -v;
        for (auto& [r, v] : uinv_cols_[i])
            v = -v;
    }

    void set_entry(int r, int c, const Integer& v) {
        if (v == 0) {
            d_[r].erase(c);
            col_rows_[c].erase(r);
        } else {
            d_[r][c] = v;
            col_rows_[c].insert(r);
        }
    }

    SnfDecomposition pack() const {
        SnfDecomposition s;
        s.d = IntMatrix(rows_, cols_);
        for (int r = 0; r < rows_; ++r)
            for (const auto& [c, v] : d_[r])
                s.d.set(r, c, v);
        s.u = IntMatrix(rows_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (const auto& [c, v] : u_[r])
                s.u.set(r, c, v);
        s.u_inv = IntMatrix(rows_, rows_);
        for (int c = 0; c < rows_; ++c)
            for (const auto& [r, v] : uinv_cols_[c])
                s.u_inv.set(r, c, v);
        s.v = IntMatrix(cols_, cols_);
        for (int c = 0; c < cols_; ++c)
            for (const auto& [r, v] : v_cols_[c])
                s.v.set(r, c, v);
        s.v_inv = IntMatrix(cols_, cols_);
        for (int r = 0; r < cols_; ++r)
            for (const auto& [c, v] : vinv_[r])
                s.v_inv.set(r, c, v);
        return s;
    }

    int rows_, cols_;
    std::vector<Row> d_;
    std::vector<std::set<int>> col_rows_;
    std::vector<Row> u_;         // row-major
    std::vector<Row> uinv_cols_; // column-major
    std::vector<Row> v_cols_;    // column-major
    std::vector<Row> vinv_;      // row-major
};

} // namespace detail

inline SnfDecomposition smith_normal_form(const IntMatrix& m) {
    return detail::SnfWorker(m).run();
}

/// Integer solution of A x = b, or nullopt when none exists (certified by
/// a divisibility obstruction in the Smith form).
inline std::optional<IntVec> solve_diophantine(const SnfDecomposition& snf, const IntVec& b) {
    const IntMatrix& d = snf.d;
    require(static_cast<int>(b.size()) == d.rows(), "solve_diophantine: dimension mismatch");
    IntVec ub = snf.u.apply(b);
    IntVec y(d.cols(), 0);
    int n = std::min(d.rows(), d.cols());
    for (int t = 0; t < d.rows(); ++t) {
        Integer dt = t < n ? d.get(t, t) : Integer(0);
        if (dt == 0) {
            if (ub[t] != 0)
                return std::nullopt;
        } else {
            if (ub[t] % dt != 0)
                return std::nullopt;
            y[t] = ub[t] / dt;
        }
    }
    return snf.v.apply(y);
}

inline std::optional<IntVec> solve_diophantine(const IntMatrix& a, const IntVec& b) {
    return solve_diophantine(smith_normal_form(a), b);
}

/// Rational solution of A x = b through a Smith decomposition of the
/// integer matrix A (much faster than dense elimination when the
/// decomposition is cached).
inline std::optional<RatVec> solve_rational_snf(const SnfDecomposition& snf, const RatVec& b) {
    const IntMatrix& d = snf.d;
    require(static_cast<int>(b.size()) == d.rows(), "solve_rational_snf: dimension mismatch");
    RatVec ub = snf.u.apply(b);
    RatVec y(d.cols(), 0);
    int n = std::min(d.rows(), d.cols());
    for (int t = 0; t < d.rows(); ++t) {
        Integer dt = t < n ? d.get(t, t) : Integer(0);
        if (dt == 0) {
            if (ub[t] != 0)
                return std::nullopt;
        } else {
            y[t] = ub[t] / Rational(dt);
        }
    }
    return snf.v.apply(y);
}

/// Saturated basis of the integer kernel of A (columns of V over the zero
/// part of the Smith form).
inline std::vector<IntVec> kernel_basis(const SnfDecomposition& snf) {
    std::vector<IntVec> basis;
    int n = std::min(snf.d.rows(), snf.d.cols());
    for (int t = 0; t < snf.d.cols(); ++t)
        if (t >= n || snf.d.get(t, t) == 0)
            basis.push_back(snf.v.column(t));
    return basis;
}

inline std::vector<IntVec> kernel_basis(const IntMatrix& a) {
    return kernel_basis(smith_normal_form(a));
}

/// Coefficients expressing target in the given generators, or nullopt.
inline std::optional<IntVec> membership_with_witness(const std::vector<IntVec>& generators,
                                                     const IntVec& target) {
    int dim = static_cast<int>(target.size());
    for (const auto& g : generators)
        require(static_cast<int>(g.size()) == dim, "membership: dimension mismatch");
    return solve_diophantine(IntMatrix::from_columns(dim, generators), target);
}

// ---------------------------------------------------------------------------
// Dense rational elimination (for small systems: lifts, feasibility).

using RatMatrix = std::vector<RatVec>; // row-major, rectangular

inline RatMatrix rat_from_int(const IntMatrix& m) {
    RatMatrix a(m.rows(), RatVec(m.cols(), 0));
    for (int r = 0; r < m.rows(); ++r)
        for (const auto& [c, v] : m.row(r))
            a[r][c] = Rational(v);
    return a;
}

namespace detail {

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<int> rref(RatMatrix& a) {
    std::vector<int> pivots;
    if (a.empty())
        return pivots;
    int rows = static_cast<int>(a.size());
    int cols = static_cast<int>(a[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int sel = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c] != 0) {
                sel = i;
                break;
            }
        if (sel < 0)
            continue;
        std::swap(a[r], a[sel]);
        Rational inv = Rational(1) / a[r][c];
        for (int j = c; j < cols; ++j)
            a[r][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0)
                continue;
            Rational f = a[i][c];
            for (int j = c; j < cols; ++j)
                a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace detail

/// Rational solution of A x = b, or nullopt when inconsistent.  Free
/// variables are set to zero, which makes the result deterministic.
inline std::optional<RatVec> solve_rational(const RatMatrix& a, const RatVec& b) {
    int rows = static_cast<int>(a.size());
    int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
    require(static_cast<int>(b.size()) == rows, "solve_rational: dimension mismatch");
    if (rows == 0)
        return RatVec(cols, 0);
    RatMatrix aug(rows, RatVec(cols + 1, 0));
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c)
            aug[r][c] = a[r][c];
        aug[r][cols] = b[r];
    }
    auto pivots = detail::rref(aug);
    for (int p : pivots)
        if (p == cols)
            return std::nullopt; // pivot in the rhs column
    RatVec x(cols, 0);
    for (int i = 0; i < static_cast<int>(pivots.size()); ++i)
        x[pivots[i]] = aug[i][cols];
    return x;
}

inline std::optional<RatVec> solve_rational(const IntMatrix& a, const RatVec& b) {
    if (a.rows() == 0)
        return RatVec(a.cols(), 0);
    return solve_rational(rat_from_int(a), b);
}

/// Basis of the rational kernel of A.
inline std::vector<RatVec> rational_kernel_basis(const RatMatrix& a_in) {
    RatMatrix a = a_in;
    int rows = static_cast<int>(a.size());
    int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
    std::vector<RatVec> basis;
    if (rows == 0) {
        for (int c = 0; c < cols; ++c) {
            RatVec e(cols, 0);
            e[c] = 1;
            basis.push_back(e);
        }
        return basis;
    }
    auto pivots = detail::rref(a);
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots)
        is_pivot[p] = true;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c])
            continue;
        RatVec x(cols, 0);
        x[c] = 1;
        for (int i = 0; i < static_cast<int>(pivots.size()); ++i)
            x[pivots[i]] = -a[i][c];
        basis.push_back(x);
    }
    return basis;
}

/// Does the affine subspace { y0 + W t : t rational } meet the integer
/// lattice?  Returns t for a witness point, or nullopt.  W is given by
/// columns; y0 and the columns have length M.
inline std::optional<RatVec> integer_point_in_affine(const std::vector<RatVec>& w_columns,
                                                     const RatVec& y0) {
    int m = static_cast<int>(y0.size());
    int d = static_cast<int>(w_columns.size());
    if (d == 0) {
        for (const auto& v : y0)
            if (!is_integer(v))
                return std::nullopt;
        return RatVec{};
    }
    // Left-null space of W = kernel of W^T.
    RatMatrix wt(d, RatVec(m, 0));
    for (int j = 0; j < d; ++j) {
        require(static_cast<int>(w_columns[j].size()) == m, "integer_point: ragged columns");
        for (int i = 0; i < m; ++i)
            wt[j][i] = w_columns[j][i];
    }
    std::vector<RatVec> qs = rational_kernel_basis(wt);
    // Solve Q v = Q y0 over the integers (v integral) after clearing
    // denominators row by row.
    int nq = static_cast<int>(qs.size());
    IntMatrix qint(nq, m);
    IntVec rhs(nq, 0);
    for (int i = 0; i < nq; ++i) {
        Rational r0 = 0;
        for (int j = 0; j < m; ++j)
            r0 += qs[i][j] * y0[j];
        Integer mult = 1;
        for (int j = 0; j < m; ++j)
            mult = boost::multiprecision::lcm(mult, den(qs[i][j]));
        mult = boost::multiprecision::lcm(mult, den(r0));
        for (int j = 0; j < m; ++j)
            qint.set(i, j, num(qs[i][j] * Rational(mult)));
        rhs[i] = num(r0 * Rational(mult));
    }
    auto v = solve_diophantine(qint, rhs);
    if (!v)
        return std::nullopt;
    // Recover t from W t = v - y0.
    RatMatrix wmat(m, RatVec(d, 0));
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < m; ++i)
            wmat[i][j] = w_columns[j][i];
    RatVec delta(m, 0);
    for (int i = 0; i < m; ++i)
        delta[i] = Rational((*v)[i]) - y0[i];
    auto t = solve_rational(wmat, delta);
    require(t.has_value(), "integer_point: inconsistent recovery");
    return t;
}

} // namespace relchar
