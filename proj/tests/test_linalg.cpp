#include <doctest.h>

#include "relchar/fgab.hpp"
#include "relchar/intmatrix.hpp"
#include "relchar/reference.hpp"

using namespace relchar;

namespace {

IntMatrix make(int rows, int cols, std::initializer_list<long long> vals) {
    IntMatrix m(rows, cols);
    auto it = vals.begin();
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            m.set(r, c, Integer(*it++));
    return m;
}

void check_snf_invariants(const IntMatrix& m, const SnfDecomposition& s) {
    CHECK(s.u * s.u_inv == IntMatrix::identity(m.rows()));
    CHECK(s.v * s.v_inv == IntMatrix::identity(m.cols()));
    CHECK(s.u * m * s.v == s.d);
    int n = std::min(m.rows(), m.cols());
    Integer prev = 0;
    for (int r = 0; r < s.d.rows(); ++r)
        for (const auto& [c, v] : s.d.row(r))
            CHECK(r == c);
    for (int t = 0; t < n; ++t) {
        Integer dt = s.d.get(t, t);
        CHECK(dt >= 0);
        if (t > 0 && dt != 0) {
            CHECK(prev != 0);
            CHECK(dt % prev == 0);
        }
        prev = dt;
    }
}

IntMatrix random_matrix(Rng& rng, int rows, int cols, long long bound = 4) {
    IntMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (rng.range(0, 2) != 0)
                m.set(r, c, rng.small_int(bound));
    return m;
}

} // namespace

TEST_CASE("snf: already diagonal") {
    IntMatrix m = make(1, 1, {2});
    auto s = smith_normal_form(m);
    check_snf_invariants(m, s);
    CHECK(s.d.get(0, 0) == 2);
    CHECK(s.u == IntMatrix::identity(1));
    CHECK(s.v == IntMatrix::identity(1));
}

TEST_CASE("snf: zero matrix") {
    IntMatrix m(2, 3);
    auto s = smith_normal_form(m);
    check_snf_invariants(m, s);
    CHECK(s.d.is_zero());
    CHECK(s.u == IntMatrix::identity(2));
    CHECK(s.v == IntMatrix::identity(3));
}

TEST_CASE("snf: 2x2 with divisibility chain") {
    IntMatrix m = make(2, 2, {2, 4, 6, 8});
    auto s = smith_normal_form(m);
    check_snf_invariants(m, s);
    // oracle: gcd of 1-minors is 2, |det| = 8, so factors are 2, 4
    auto fac = reference::invariant_factors(m);
    REQUIRE(fac.size() == 2);
    CHECK(fac[0] == 2);
    CHECK(fac[1] == 4);
    CHECK(s.d.get(0, 0) == 2);
    CHECK(s.d.get(1, 1) == 4);
}

TEST_CASE("snf: random matrices match the minors oracle") {
    Rng rng(12345);
    for (int iter = 0; iter < 60; ++iter) {
        int rows = static_cast<int>(rng.range(1, 5));
        int cols = static_cast<int>(rng.range(1, 5));
        IntMatrix m = random_matrix(rng, rows, cols);
        auto s = smith_normal_form(m);
        check_snf_invariants(m, s);
        auto fac = reference::invariant_factors(m);
        CHECK(static_cast<int>(fac.size()) == s.rank());
        for (int t = 0; t < s.rank(); ++t)
            CHECK(s.d.get(t, t) == fac[t]);
    }
}

TEST_CASE("solve_diophantine: basic examples") {
    CHECK(*solve_diophantine(make(1, 1, {2}), {Integer(4)}) == IntVec{Integer(2)});
    CHECK(!solve_diophantine(make(1, 1, {2}), {Integer(3)}).has_value());
    auto x = solve_diophantine(make(2, 2, {1, 2, 3, 4}), {Integer(5), Integer(11)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == 2);
}

TEST_CASE("solve_diophantine: random instances vs direct substitution and parity oracle") {
    Rng rng(777);
    int solvable = 0;
    for (int iter = 0; iter < 1000; ++iter) {
        int rows = static_cast<int>(rng.range(1, 4));
        int cols = static_cast<int>(rng.range(1, 4));
        IntMatrix a = random_matrix(rng, rows, cols, 3);
        IntVec b(rows);
        for (auto& v : b)
            v = rng.small_int(6);
        auto x = solve_diophantine(a, b);
        if (x) {
            ++solvable;
            CHECK(a.apply(*x) == b);
        } else {
            // independent path: the SNF-transformed system must show a
            // divisibility or zero-row obstruction
            auto s = smith_normal_form(a);
            IntVec ub = s.u.apply(b);
            bool obstructed = false;
            int n = std::min(rows, cols);
            for (int t = 0; t < rows; ++t) {
                Integer dt = t < n ? s.d.get(t, t) : Integer(0);
                if (dt == 0 ? ub[t] != 0 : ub[t] % dt != 0)
                    obstructed = true;
            }
            CHECK(obstructed);
        }
    }
    CHECK(solvable > 100); // sanity: the sample is not degenerate
}

TEST_CASE("solve_rational: basic examples") {
    auto x = solve_rational(make(1, 1, {2}), {Rational(3)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == Rational(3, 2));
    CHECK(!solve_rational(make(1, 1, {0}), {Rational(1)}).has_value());
    auto y = solve_rational(make(2, 2, {1, 1, 1, 1}), {Rational(2), Rational(2)});
    REQUIRE(y.has_value());
    CHECK((*y)[0] + (*y)[1] == Rational(2));
}

TEST_CASE("kernel_basis spans the kernel and is saturated") {
    Rng rng(4242);
    for (int iter = 0; iter < 40; ++iter) {
        IntMatrix a = random_matrix(rng, static_cast<int>(rng.range(1, 4)),
                                    static_cast<int>(rng.range(1, 4)));
        auto basis = kernel_basis(a);
        for (const auto& k : basis) {
            IntVec img = a.apply(k);
            for (const auto& v : img)
                CHECK(v == 0);
        }
        CHECK(static_cast<int>(basis.size()) == a.cols() - reference::rank(a));
    }
}

TEST_CASE("membership_with_witness") {
    std::vector<IntVec> gens = {{Integer(2), Integer(0)}, {Integer(0), Integer(1)}};
    auto c = membership_with_witness(gens, {Integer(4), Integer(3)});
    REQUIRE(c.has_value());
    CHECK((*c)[0] == 2);
    CHECK((*c)[1] == 3);
    CHECK(!membership_with_witness({{Integer(2), Integer(0)}}, {Integer(1), Integer(0)}));
}

TEST_CASE("homology_presentation: circle boundary matrix") {
    // 3-vertex circle: d1 has columns e01 -> v1-v0, e12 -> v2-v1, e02 -> v2-v0
    IntMatrix d1 = make(3, 3, {-1, 0, -1, 1, -1, 0, 0, 1, 1});
    IntMatrix d2(3, 0);
    auto h1 = homology_presentation(d2, d1);
    CHECK(h1.free_rank == 1);
    CHECK(h1.torsion_orders.empty());
    // degree 0 of a point
    IntMatrix dp0(0, 1), dp1(1, 0);
    auto h0 = homology_presentation(dp1, dp0);
    CHECK(h0.free_rank == 1);
    CHECK(h0.torsion_orders.empty());
}

TEST_CASE("homology_presentation: torsion with verified witness") {
    // Z --2--> Z presented as H_0 of the complex 0 -> Z -2-> Z
    IntMatrix d_next = make(1, 1, {2});
    IntMatrix d_this(0, 1);
    auto h = homology_presentation(d_next, d_this);
    CHECK(h.free_rank == 0);
    REQUIRE(h.torsion_orders.size() == 1);
    CHECK(h.torsion_orders[0] == 2);
    // witness: d_next * w = 2 * generator
    IntVec img = d_next.apply(h.torsion_witnesses[0]);
    for (int i = 0; i < 1; ++i)
        CHECK(img[i] == 2 * h.torsion_generators[0][i]);
}

TEST_CASE("homology_presentation: rank-nullity two ways on random complexes") {
    Rng rng(999);
    for (int iter = 0; iter < 40; ++iter) {
        // build a random two-step complex d_this * d_next = 0 by using
        // d_next = kernel columns of a random d_this times random integers
        int n = static_cast<int>(rng.range(2, 6));
        int p = static_cast<int>(rng.range(1, 4));
        IntMatrix d_this = random_matrix(rng, p, n);
        auto kb = kernel_basis(d_this);
        int m = static_cast<int>(rng.range(0, 3));
        IntMatrix d_next(n, m);
        for (int j = 0; j < m; ++j) {
            if (kb.empty())
                continue;
            for (int rep = 0; rep < 2; ++rep) {
                const IntVec& k = kb[rng.range(0, static_cast<long long>(kb.size()) - 1)];
                Integer scale = rng.small_int(2);
                for (int r = 0; r < n; ++r)
                    d_next.add(r, j, scale * k[r]);
            }
        }
        auto h = homology_presentation(d_next, d_this);
        int dim_ker = n - reference::rank(d_this);
        int rank_im = reference::rank(d_next);
        CHECK(h.free_rank == dim_ker - rank_im);
        for (size_t j = 0; j < h.torsion_orders.size(); ++j) {
            IntVec img = d_next.apply(h.torsion_witnesses[j]);
            for (int r = 0; r < n; ++r)
                CHECK(img[r] == h.torsion_orders[j] * h.torsion_generators[j][r]);
        }
        // every generator is a cycle
        for (const auto& g : h.free_generators) {
            IntVec img = d_this.apply(g);
            for (const auto& v : img)
                CHECK(v == 0);
        }
    }
}

TEST_CASE("class_coordinates and class_order") {
    // H = Z x Z/4: complex 0 -> Z -(0,4,0)-> Z^3, d_this kills third coord
    IntMatrix d_next = make(3, 1, {0, 4, 0});
    IntMatrix d_this = make(1, 3, {0, 0, 1});
    auto h = homology_presentation(d_next, d_this);
    CHECK(h.free_rank == 1);
    REQUIRE(h.torsion_orders.size() == 1);
    CHECK(h.torsion_orders[0] == 4);
    IntVec cyc = {Integer(3), Integer(2), Integer(0)};
    auto cc = class_coordinates(h, cyc);
    REQUIRE(cc.has_value());
    IntVec rep = representative(h, *cc);
    auto cc2 = class_coordinates(h, rep);
    REQUIRE(cc2.has_value());
    CHECK(*cc == *cc2);
    auto ord = class_order(h, {Integer(0), Integer(2), Integer(0)});
    REQUIRE(ord.has_value());
    CHECK(*ord == 2);
    CHECK(!class_order(h, {Integer(1), Integer(0), Integer(0)}).has_value());
}

TEST_CASE("integer_point_in_affine") {
    // line (1/2, 0) + t(1, 2): integer points at t = 1/2 + n
    std::vector<RatVec> w = {{Rational(1), Rational(2)}};
    RatVec y0 = {Rational(1, 2), Rational(0)};
    auto t = integer_point_in_affine(w, y0);
    REQUIRE(t.has_value());
    Rational p0 = y0[0] + (*t)[0], p1 = y0[1] + (*t)[0] * 2;
    CHECK(is_integer(p0));
    CHECK(is_integer(p1));
    // line (1/2, 1/2) + t(2, 0): second coordinate never integral
    std::vector<RatVec> w2 = {{Rational(2), Rational(0)}};
    RatVec y2 = {Rational(1, 2), Rational(1, 2)};
    CHECK(!integer_point_in_affine(w2, y2).has_value());
    // zero-dimensional affine space
    std::vector<RatVec> w3;
    CHECK(integer_point_in_affine(w3, {Rational(2), Rational(-3)}).has_value());
    CHECK(!integer_point_in_affine(w3, {Rational(1, 2)}).has_value());
}
