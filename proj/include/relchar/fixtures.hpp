#pragma once

// Shipped test spaces: the point, the interval, the two-point sphere, two
// circle models, and the simplicial degree-2 covering map between them.

#include "relchar/product.hpp"
#include "relchar/simplicial.hpp"

namespace relchar::fixtures {

/// One-point simplicial set.
inline SetPtr point(const std::string& name = "PT") {
    SimplicialSet::Data d;
    d.name = name;
    d.simplex_names = {{"pt"}};
    d.faces = {{{}}};
    return SimplicialSet::create(std::move(d));
}

/// Interval: vertices v0, v1, edge e01 with d0 = v1, d1 = v0.
inline SetPtr interval() {
    SimplicialSet::Data d;
    d.name = "INT";
    d.simplex_names = {{"v0", "v1"}, {"e01"}};
    d.faces = {{{}, {}},
               {{identity_cell({0, 1}), identity_cell({0, 0})}}};
    return SimplicialSet::create(std::move(d));
}

/// Two points q+ and q- (the boundary sphere of the interval).
inline SetPtr two_points() {
    SimplicialSet::Data d;
    d.name = "S0";
    d.simplex_names = {{"q+", "q-"}};
    d.faces = {{{}, {}}};
    return SimplicialSet::create(std::move(d));
}

/// Circle with three vertices v0, v1, v2 and edges e01, e12, e02
/// (e02 runs from v0 to v2).  Fundamental cycle: e01 + e12 - e02.
inline SetPtr circle3() {
    SimplicialSet::Data d;
    d.name = "S1";
    d.simplex_names = {{"v0", "v1", "v2"}, {"e01", "e12", "e02"}};
    d.faces = {{{}, {}, {}},
               {{identity_cell({0, 1}), identity_cell({0, 0})},
                {identity_cell({0, 2}), identity_cell({0, 1})},
                {identity_cell({0, 2}), identity_cell({0, 0})}}};
    return SimplicialSet::create(std::move(d));
}

inline ZChain circle3_cycle(const SetPtr& s1) {
    ZChain z(s1, 1);
    z.add(0, 1);  // e01
    z.add(1, 1);  // e12
    z.add(2, -1); // e02
    return z;
}

/// Circle with six vertices w0..w5.  Edge orientations are chosen so that
/// reducing indices mod 3 is a simplicial map onto circle3:
///   a0: w0->w1, a1: w1->w2, a2: w3->w2, a3: w3->w4, a4: w4->w5, a5: w0->w5.
/// Fundamental cycle: a0 + a1 - a2 + a3 + a4 - a5.
inline SetPtr circle6() {
    SimplicialSet::Data d;
    d.name = "S1_6";
    d.simplex_names = {{"w0", "w1", "w2", "w3", "w4", "w5"},
                       {"a0", "a1", "a2", "a3", "a4", "a5"}};
    auto edge = [](int from, int to) {
        return std::vector<Cell>{identity_cell({0, to}), identity_cell({0, from})};
    };
    d.faces = {{{}, {}, {}, {}, {}, {}},
               {edge(0, 1), edge(1, 2), edge(3, 2), edge(3, 4), edge(4, 5), edge(0, 5)}};
    return SimplicialSet::create(std::move(d));
}

inline ZChain circle6_cycle(const SetPtr& s1_6) {
    ZChain z(s1_6, 1);
    z.add(0, 1);
    z.add(1, 1);
    z.add(2, -1);
    z.add(3, 1);
    z.add(4, 1);
    z.add(5, -1);
    return z;
}

/// The simplicial double cover circle6 -> circle3 (w_i -> v_{i mod 3});
/// pushes the six-cycle to twice the three-cycle on the nose.
inline MapPtr degree2_map(const SetPtr& s1_6, const SetPtr& s1) {
    std::vector<std::vector<Cell>> images(2);
    for (int i = 0; i < 6; ++i)
        images[0].push_back(identity_cell({0, i % 3}));
    // a0->e01, a1->e12, a2->e02, a3->e01, a4->e12, a5->e02
    int edge_image[6] = {0, 1, 2, 0, 1, 2};
    for (int i = 0; i < 6; ++i)
        images[1].push_back(identity_cell({1, edge_image[i]}));
    return make_map("DEG2", s1_6, s1, std::move(images));
}

/// Inclusion of the vertex v0 into circle3.
inline MapPtr point_in_circle(const SetPtr& pt, const SetPtr& s1) {
    return make_map("PT_in_S1", pt, s1, {{identity_cell({0, 0})}});
}

/// Inclusion of the two points as the endpoints of the interval
/// (q+ -> v1, q- -> v0); the interval fundamental chain bounds q+ - q-.
inline MapPtr sphere_in_interval(const SetPtr& s0, const SetPtr& interval) {
    return make_map("S0_in_INT", s0, interval,
                    {{identity_cell({0, 1}), identity_cell({0, 0})}});
}

inline ZChain two_points_cycle(const SetPtr& s0) {
    ZChain z(s0, 0);
    z.add(0, 1);
    z.add(1, -1);
    return z;
}

inline ZChain interval_chain(const SetPtr& interval) {
    ZChain z(interval, 1);
    z.add(0, 1);
    return z;
}

/// Moore space M(Z/2, 1): one vertex, one loop e, one 2-cell T with
/// boundary 2e (d0 T = e, d1 T = s0 v, d2 T = e).  H_1 = Z/2.
inline SetPtr moore2() {
    SimplicialSet::Data d;
    d.name = "MOORE2";
    d.simplex_names = {{"v"}, {"e"}, {"T"}};
    d.faces = {{{}},
               {{identity_cell({0, 0}), identity_cell({0, 0})}},
               {{identity_cell({1, 0}), Cell{{0, 0}, Surj{0, 0}}, identity_cell({1, 0})}}};
    return SimplicialSet::create(std::move(d));
}

/// S1 x PT -> S1 x S1 given by the vertex inclusion on the second factor.
inline MapPtr circle_in_torus(const SetPtr& s1_pt, const SetPtr& torus, const MapPtr& pt_in_s1) {
    require(s1_pt->is_product() && torus->is_product(), "circle_in_torus: need products");
    auto id_s1 = identity_map(s1_pt->factor_a());
    return product_map("S1xPT_in_S1xS1", id_s1, pt_in_s1, s1_pt, torus);
}

} // namespace relchar::fixtures
