#pragma once

// Finitely generated abelian group presentations computed from pairs of
// boundary matrices: ker(d_this)/im(d_next), with cycle generators and
// exact torsion witnesses.

#include "relchar/intmatrix.hpp"

#include <optional>
#include <vector>

namespace relchar {

/// Presentation of a subquotient ker(d_this)/im(d_next) of Z^n.
/// Generators are ambient integer vectors (cycles); each torsion generator
/// g with order N stores a witness a (in the source of d_next) satisfying
/// d_next * a = N * g exactly.  Torsion orders form a divisibility chain
/// N_1 | N_2 | ... in ascending order.
struct FgAbPresentation {
    int ambient_dim = 0;
    int free_rank = 0;
    std::vector<Integer> torsion_orders;
    std::vector<IntVec> free_generators;
    std::vector<IntVec> torsion_generators;
    std::vector<IntVec> torsion_witnesses; // same length as torsion_generators

    // kernel data, kept for coordinate computations
    std::vector<IntVec> cycle_basis;   // basis of ker(d_this)
    IntMatrix kernel_coords;           // rows of V^-1: coordinates in cycle_basis
    IntMatrix relations;               // im(d_next) in kernel coordinates

    bool is_trivial() const { return free_rank == 0 && torsion_orders.empty(); }

    Integer order() const { // 0 = infinite
        if (free_rank > 0)
            return 0;
        Integer n = 1;
        for (const auto& t : torsion_orders)
            n *= t;
        return n;
    }
};

/// Coordinates of a class in an FgAbPresentation: free part in Z^r, torsion
/// part canonicalized to [0, N_j).
struct ClassCoordinates {
    IntVec free_part;
    IntVec torsion_part;

    bool is_zero() const {
        for (const auto& v : free_part)
            if (v != 0)
                return false;
        for (const auto& v : torsion_part)
            if (v != 0)
                return false;
        return true;
    }
    bool operator==(const ClassCoordinates& o) const {
        return free_part == o.free_part && torsion_part == o.torsion_part;
    }
    bool operator!=(const ClassCoordinates& o) const { return !(*this == o); }
};

/// Present ker(d_this)/im(d_next).  d_this: Z^n -> Z^p, d_next: Z^m -> Z^n,
/// with d_this * d_next = 0 (validated).
inline FgAbPresentation homology_presentation(const IntMatrix& d_next, const IntMatrix& d_this) {
    require(d_next.rows() == d_this.cols(), "homology_presentation: chain degrees mismatch");
    require((d_this * d_next).is_zero(), "homology_presentation: d_this * d_next != 0");

    FgAbPresentation pres;
    pres.ambient_dim = d_this.cols();

    SnfDecomposition s1 = smith_normal_form(d_this);
    int n = d_this.cols();
    int bound = std::min(d_this.rows(), n);
    std::vector<int> kernel_cols;
    for (int t = 0; t < n; ++t)
        if (t >= bound || s1.d.get(t, t) == 0)
            kernel_cols.push_back(t);
    int z = static_cast<int>(kernel_cols.size());
    for (int t : kernel_cols)
        pres.cycle_basis.push_back(s1.v.column(t));
    // kernel coordinates: the matching rows of V^-1
    pres.kernel_coords = IntMatrix(z, n);
    for (int i = 0; i < z; ++i)
        for (int c = 0; c < n; ++c) {
            const Integer& val = s1.v_inv.get(kernel_cols[i], c);
            if (val != 0)
                pres.kernel_coords.set(i, c, val);
        }

    pres.relations = pres.kernel_coords * d_next; // z x m
    SnfDecomposition s2 = smith_normal_form(pres.relations);
    int r2 = s2.rank();

    auto ambient = [&](const IntVec& coords) {
        IntVec g(n, 0);
        for (int i = 0; i < z; ++i)
            if (coords[i] != 0)
                for (int c = 0; c < n; ++c)
                    g[c] += coords[i] * pres.cycle_basis[i][c];
        return g;
    };

    for (int j = 0; j < z; ++j) {
        IntVec gen_coords = s2.u_inv.column(j);
        if (j < r2) {
            Integer order = s2.d.get(j, j);
            if (order == 1)
                continue;
            pres.torsion_orders.push_back(order);
            pres.torsion_generators.push_back(ambient(gen_coords));
            pres.torsion_witnesses.push_back(s2.v.column(j));
        } else {
            pres.free_generators.push_back(ambient(gen_coords));
        }
    }
    pres.free_rank = static_cast<int>(pres.free_generators.size());
    return pres;
}

/// Raw solution expressing `cycle` over [free gens | torsion gens |
/// relation images]: coefficients are not canonicalized.
inline std::optional<IntVec> raw_class_solution(const FgAbPresentation& pres,
                                                const IntVec& cycle) {
    require(static_cast<int>(cycle.size()) == pres.ambient_dim,
            "raw_class_solution: dimension mismatch");
    std::vector<IntVec> cols;
    for (const auto& g : pres.free_generators)
        cols.push_back(g);
    for (const auto& g : pres.torsion_generators)
        cols.push_back(g);
    for (int j = 0; j < pres.relations.cols(); ++j) {
        IntVec coords = pres.relations.column(j);
        IntVec g(pres.ambient_dim, 0);
        for (int i = 0; i < static_cast<int>(pres.cycle_basis.size()); ++i)
            if (coords[i] != 0)
                for (int c = 0; c < pres.ambient_dim; ++c)
                    g[c] += coords[i] * pres.cycle_basis[i][c];
        cols.push_back(g);
    }
    return membership_with_witness(cols, cycle);
}

/// Coordinates of the class of `cycle` (must lie in ker(d_this)) in the
/// presentation.  nullopt when the vector is not in the kernel span.
inline std::optional<ClassCoordinates> class_coordinates(const FgAbPresentation& pres,
                                                         const IntVec& cycle) {
    auto sol = raw_class_solution(pres, cycle);
    if (!sol)
        return std::nullopt;
    ClassCoordinates cc;
    int f = pres.free_rank;
    int t = static_cast<int>(pres.torsion_orders.size());
    cc.free_part.assign(sol->begin(), sol->begin() + f);
    cc.torsion_part.resize(t);
    for (int j = 0; j < t; ++j) {
        Integer v = (*sol)[f + j] % pres.torsion_orders[j];
        if (v < 0)
            v += pres.torsion_orders[j];
        cc.torsion_part[j] = v;
    }
    return cc;
}

/// Smallest N >= 1 with N * [cycle] = 0, or nullopt when the class has
/// infinite order.
inline std::optional<Integer> class_order(const FgAbPresentation& pres, const IntVec& cycle) {
    auto cc = class_coordinates(pres, cycle);
    require(cc.has_value(), "class_order: not a cycle of the presented complex");
    for (const auto& v : cc->free_part)
        if (v != 0)
            return std::nullopt;
    Integer n = 1;
    for (int j = 0; j < static_cast<int>(pres.torsion_orders.size()); ++j) {
        if (cc->torsion_part[j] == 0)
            continue;
        Integer g = boost::multiprecision::gcd(cc->torsion_part[j], pres.torsion_orders[j]);
        n = boost::multiprecision::lcm(n, pres.torsion_orders[j] / g);
    }
    return n;
}

/// Vector from class coordinates: sum of generators with the given
/// coefficients (a representative cycle of that class).
inline IntVec representative(const FgAbPresentation& pres, const ClassCoordinates& cc) {
    IntVec g(pres.ambient_dim, 0);
    for (int i = 0; i < pres.free_rank; ++i)
        for (int c = 0; c < pres.ambient_dim; ++c)
            g[c] += cc.free_part[i] * pres.free_generators[i][c];
    for (int j = 0; j < static_cast<int>(pres.torsion_orders.size()); ++j)
        for (int c = 0; c < pres.ambient_dim; ++c)
            g[c] += cc.torsion_part[j] * pres.torsion_generators[j][c];
    return g;
}

} // namespace relchar
