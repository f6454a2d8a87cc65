#pragma once

// Kunneth splittings at cycle level for mapping cones, the cross product of
// relative and absolute characters (triple-level and by the two-branch
// evaluation formula, which serves as the oracle), and the internal
// products.

#include "relchar/characters.hpp"
#include "relchar/sampling.hpp"

namespace relchar {

/// Tensor of the mapping cone complex with the chains of another space,
/// stored componentwise: C(phi) (x) C(X') = (C(X) (x) C(X')) + (C(A)[1] (x) C(X')).
template <class R> struct ConeTensor {
    MapPtr phi;
    SetPtr xprime;
    Tensor<R> tx; // over (X, X')
    Tensor<R> ta; // over (A, X')

    ConeTensor(MapPtr phi_, SetPtr xp)
        : phi(std::move(phi_)), xprime(std::move(xp)), tx(phi->target(), xprime),
          ta(phi->source(), xprime) {}

    bool operator==(const ConeTensor& o) const { return tx == o.tx && ta == o.ta; }
};

using ZConeTensor = ConeTensor<Integer>;

template <class R>
ConeTensor<R> cone_tensor_of(const ConeChainT<R>& c, const Chain<R>& z) {
    ConeTensor<R> t(c.phi, z.space());
    t.tx = tensor_of(c.x, z);
    if (c.degree() >= 1)
        t.ta = tensor_of(c.a, z);
    return t;
}

/// Everything needed to form products of cone characters over phi with
/// absolute characters on X': the product spaces, the induced map
/// phi x id, and complex data on both cones.
struct ConeCrossContext {
    ConeCtxPtr small;  // cone of phi
    AbsCtxPtr xprime;  // X'
    SetPtr xxp;        // X x X'
    SetPtr axp;        // A x X'
    MapPtr phi_x_id;   // A x X' -> X x X'
    ConeCtxPtr big;    // cone of phi x id

    static std::shared_ptr<ConeCrossContext> make(const ConeCtxPtr& small,
                                                  const AbsCtxPtr& xprime) {
        auto cc = std::make_shared<ConeCrossContext>();
        cc->small = small;
        cc->xprime = xprime;
        const MapPtr& phi = small->phi;
        cc->xxp = product_space(phi->target(), xprime->space);
        cc->axp = product_space(phi->source(), xprime->space);
        cc->phi_x_id = product_map(phi->name() + "_x_id", phi, identity_map(xprime->space),
                                   cc->axp, cc->xxp);
        cc->big = ConeContext::make(cc->phi_x_id);
        return cc;
    }
};

using CrossCtxPtr = std::shared_ptr<ConeCrossContext>;

/// EZ for the cone tensor, componentwise on both factors.
template <class R>
ConeChainT<R> cone_ez(const ConeCrossContext& cc, const ConeTensor<R>& t) {
    Chain<R> x = t.tx.is_zero() ? Chain<R>(cc.xxp, 0) : ez(cc.xxp, t.tx);
    Chain<R> a = t.ta.is_zero() ? Chain<R>(cc.axp, 0) : ez(cc.axp, t.ta);
    int deg = 0;
    if (!x.is_zero())
        deg = x.degree();
    else if (!a.is_zero())
        deg = a.degree() + 1;
    else
        return cone_zero_chain<R>(cc.phi_x_id, 0);
    if (x.is_zero())
        x = Chain<R>(cc.xxp, deg);
    if (a.is_zero() && deg >= 1)
        a = Chain<R>(cc.axp, deg - 1);
    return {cc.phi_x_id, x, a};
}

/// AW for the cone tensor, componentwise.
template <class R>
ConeTensor<R> cone_aw(const ConeCrossContext& cc, const ConeChainT<R>& c) {
    require(c.phi == cc.phi_x_id, "cone_aw: chain not on the product cone");
    ConeTensor<R> t(cc.small->phi, cc.xprime->space);
    t.tx = aw(c.x);
    if (c.degree() >= 1) {
        Tensor<R> ta = aw(c.a);
        t.ta = ta;
    }
    return t;
}

/// Cross product of a cone cochain with an absolute cochain, componentwise
/// through AW on each product.
inline QConeCochain cone_cross_cochain(const ConeCrossContext& cc, const QConeCochain& u,
                                       const QCochain& v) {
    QCochain x = cross_cochain(cc.xxp, u.x, v);
    QCochain a = (u.degree() >= 1) ? cross_cochain(cc.axp, u.a, v) : QCochain(cc.axp, 0);
    if (u.degree() == 0)
        return {cc.phi_x_id, x, QCochain(cc.axp, 0)};
    return {cc.phi_x_id, x, a};
}

// --- the Kunneth splitting -------------------------------------------------

/// Cycle-level splitting S of the cross-product inclusion K for
/// Z_n(phi x id); the complement of im(K S) consists of torsion cycles with
/// stored witnesses N r = bnd(w).
struct KunnethSplit {
    CrossCtxPtr cc;
    int total_degree = 0;

    struct TensorBasisElem {
        int p;  // cone degree of the first factor
        int i;  // index into the cycle basis of Z_p(phi)
        int j;  // index into the cycle basis of Z_{n-p}(X')
    };
    std::vector<TensorBasisElem> tensor_basis;
    std::vector<IntVec> s_rows;       // S on the big cycle basis, coords over tensor_basis
    std::vector<IntVec> k_columns;    // K of each tensor basis element (big-cone coords)
    std::vector<IntVec> remainders;   // r_m = zeta_m - K S zeta_m
    std::vector<Integer> witness_orders;
    std::vector<IntVec> witness_chains; // degree n+1 big-cone chains, bnd = N r

    /// S of an arbitrary cycle, as coordinates over tensor_basis.
    IntVec s_of(const IntVec& z) const {
        auto coeffs = decompose(z);
        IntVec out(tensor_basis.size(), 0);
        for (size_t m = 0; m < coeffs.size(); ++m)
            if (coeffs[m] != 0)
                for (size_t t = 0; t < out.size(); ++t)
                    out[t] += coeffs[m] * s_rows[m][t];
        return out;
    }

    /// K applied to tensor coordinates.
    IntVec k_of(const IntVec& tensor_coords) const {
        IntVec out(cc->big->data.dim(total_degree), 0);
        for (size_t t = 0; t < tensor_coords.size(); ++t)
            if (tensor_coords[t] != 0)
                for (size_t r = 0; r < out.size(); ++r)
                    out[r] += tensor_coords[t] * k_columns[t][r];
        return out;
    }

    /// Torsion witness for the complement part of z: (N, w, r) with
    /// N r = bnd(w) and r = z - K S z.
    struct ComplementWitness {
        IntVec remainder;
        Integer order;
        IntVec chain;
    };
    ComplementWitness complement_witness(const IntVec& z) const {
        auto coeffs = decompose(z);
        ComplementWitness w;
        w.remainder.assign(cc->big->data.dim(total_degree), 0);
        w.order = 1;
        for (size_t m = 0; m < coeffs.size(); ++m)
            if (coeffs[m] != 0) {
                for (size_t r = 0; r < w.remainder.size(); ++r)
                    w.remainder[r] += coeffs[m] * remainders[m][r];
                w.order = boost::multiprecision::lcm(w.order, witness_orders[m]);
            }
        w.chain.assign(cc->big->data.dim(total_degree + 1), 0);
        for (size_t m = 0; m < coeffs.size(); ++m)
            if (coeffs[m] != 0) {
                Integer scale = coeffs[m] * (w.order / witness_orders[m]);
                for (size_t r = 0; r < w.chain.size(); ++r)
                    w.chain[r] += scale * witness_chains[m][r];
            }
        return w;
    }

    IntVec decompose(const IntVec& z) const {
        const auto& basis = cc->big->data.cycle_basis(total_degree);
        auto coeffs = membership_with_witness(basis, z);
        require(coeffs.has_value(), "KunnethSplit: not a cycle");
        return *coeffs;
    }
};

inline KunnethSplit build_kunneth_split(const CrossCtxPtr& cc, int n) {
    KunnethSplit split;
    split.cc = cc;
    split.total_degree = n;
    const ComplexData& small = cc->small->data;
    const ComplexData& xp = cc->xprime->data;
    const ComplexData& big = cc->big->data;

    // tensor basis of [Z(phi) (x) Z(X')]_n and the K-images
    for (int p = 0; p <= n; ++p) {
        int q = n - p;
        const auto& zp = small.cycle_basis(p);
        const auto& zq = xp.cycle_basis(q);
        for (int i = 0; i < static_cast<int>(zp.size()); ++i)
            for (int j = 0; j < static_cast<int>(zq.size()); ++j) {
                split.tensor_basis.push_back({p, i, j});
                ConeChain zc = cc->small->decode_chain(zp[i], p);
                ZChain zx = chain_from_vector(cc->xprime->space, q, zq[j]);
                ConeChain img = cone_ez(*cc, cone_tensor_of(zc, zx));
                split.k_columns.push_back(cc->big->encode(img));
            }
    }

    // chain-level cycle projections s_phi and s' (c |-> c - sigma(bnd c))
    auto cycle_part = [](const ComplexData& d, const IntVec& c, int deg) {
        IntVec y = d.bnd(deg).apply(c);
        const SnfDecomposition& s = d.bnd_snf(deg);
        IntVec uy = s.u.apply(y);
        IntVec q(d.dim(deg), 0);
        int bound = std::min(s.d.rows(), s.d.cols());
        for (int t = 0; t < bound; ++t) {
            Integer dt = s.d.get(t, t);
            if (dt != 0) {
                require(uy[t] % dt == 0, "cycle_part: boundary not in the image lattice");
                q[t] = uy[t] / dt;
            }
        }
        IntVec x = s.v.apply(q);
        IntVec out(c.size());
        for (size_t i = 0; i < c.size(); ++i)
            out[i] = c[i] - x[i];
        return out;
    };

    // decompositions of cycles over the cycle bases, cached
    auto in_basis = [](const std::vector<IntVec>& basis, const IntVec& z) {
        auto c = membership_with_witness(basis, z);
        require(c.has_value(), "build_kunneth_split: cycle decomposition failed");
        return *c;
    };

    // S on the big cycle basis: S = (s_phi (x) s') . AW
    const auto& zbasis = big.cycle_basis(n);
    for (const auto& zvec : zbasis) {
        ConeChain z = cc->big->decode_chain(zvec, n);
        ZConeTensor t = cone_aw(*cc, z);
        IntVec row(split.tensor_basis.size(), 0);
        // collect per (p, x'-simplex) the cone chain component, then apply
        // s_phi (x) s' termwise (bilinearity)
        std::map<std::pair<int, int>, std::pair<IntVec, IntVec>> groups;
        // key: (p, j') where j' indexes an X' simplex of degree n-p;
        // value: (x-part coords, a-part coords) of the cone chain
        for (const auto& [key, val] : t.tx.terms()) {
            const auto& [xs, ys] = key;
            int p = xs.degree;
            auto& g = groups[{p, ys.index}];
            if (g.first.empty())
                g.first.assign(cc->small->data.dim(p), 0);
            g.first[xs.index] += val;
        }
        for (const auto& [key, val] : t.ta.terms()) {
            const auto& [as, ys] = key;
            int p = as.degree + 1;
            auto& g = groups[{p, ys.index}];
            if (g.first.empty())
                g.first.assign(cc->small->data.dim(p), 0);
            g.first[cc->small->x_dim(p) + as.index] += val;
        }
        for (const auto& [key, val] : groups) {
            const auto& [p, jprime] = key;
            int q = n - p;
            // s_phi of the cone component
            IntVec zc = cycle_part(small, val.first, p);
            // s' of the X' simplex
            IntVec simp(xp.dim(q), 0);
            simp[jprime] = 1;
            IntVec zs = cycle_part(xp, simp, q);
            // decompose both in their cycle bases and take the outer product
            IntVec ci = in_basis(small.cycle_basis(p), zc);
            IntVec cj = in_basis(xp.cycle_basis(q), zs);
            for (size_t t2 = 0; t2 < split.tensor_basis.size(); ++t2) {
                const auto& e = split.tensor_basis[t2];
                if (e.p != p)
                    continue;
                Integer contrib = ci[e.i] * cj[e.j];
                if (contrib != 0)
                    row[t2] += contrib;
            }
        }
        split.s_rows.push_back(row);
    }

    // complement remainders and torsion witnesses
    const FgAbPresentation& hn = big.homology(n);
    for (size_t m = 0; m < zbasis.size(); ++m) {
        IntVec ks = split.k_of(split.s_rows[m]);
        IntVec r(zbasis[m].size());
        for (size_t i = 0; i < r.size(); ++i)
            r[i] = zbasis[m][i] - ks[i];
        split.remainders.push_back(r);
        auto order = class_order(hn, r);
        require(order.has_value(), "build_kunneth_split: complement cycle not torsion");
        IntVec target(r.size());
        for (size_t i = 0; i < r.size(); ++i)
            target[i] = *order * r[i];
        auto w = big.boundary_preimage(target, n + 1);
        require(w.has_value(), "build_kunneth_split: witness solve failed");
        split.witness_orders.push_back(*order);
        split.witness_chains.push_back(*w);
    }
    return split;
}

// --- the cross product ------------------------------------------------------

/// Triple-level cross product of a cone character on phi with an absolute
/// character on X':
///   c_x    = c x c',
///   lift_x = lift x c' + (-1)^k curv x lift',
///   curv_x = curv x curv'.
inline CharTriple cross_char(const ConeCrossContext& cc, const CharTriple& h,
                             const CharTriple& hp) {
    require(h.flavor == Flavor::cone && h.cone->phi == cc.small->phi,
            "cross_char: first factor must be a cone character on phi");
    require(hp.flavor == Flavor::absolute && hp.abs->space == cc.xprime->space,
            "cross_char: second factor must be absolute on X'");
    int k = h.k, kp = hp.k;
    QConeCochain c = to_rational(h.c_cone());
    QConeCochain lift = h.lift_cone();
    QConeCochain curv = h.curv_cone();
    QCochain cp = to_rational(hp.c_abs());
    QCochain liftp = hp.lift_abs();
    QCochain curvp = hp.curv_abs();

    QConeCochain cx = cone_cross_cochain(cc, c, cp);
    QConeCochain lift1 = cone_cross_cochain(cc, lift, cp);
    QConeCochain lift2 = cone_cross_cochain(cc, curv, liftp);
    QConeCochain liftx = (k % 2 == 0) ? lift1 + lift2 : lift1 - lift2;
    QConeCochain curvx = cone_cross_cochain(cc, curv, curvp);

    ConeCochain cxi{cx.phi, to_integral(cx.x), to_integral(cx.a)};
    return make_char(cc.big, k + kp, cxi, liftx, curvx);
}

/// Evaluation of the cross product by the two-branch formula through a
/// Kunneth splitting (the oracle for cross_char).
inline CircleValue cross_formula_eval(const CharTriple& h, const CharTriple& hp,
                                      const KunnethSplit& split, const IntVec& z) {
    const ConeCrossContext& cc = *split.cc;
    int k = h.k, kp = hp.k;
    int n = split.total_degree;
    require(n == k + kp - 1, "cross_formula_eval: cycle degree must be k + k' - 1");
    CircleValue total;
    // degree-split part
    IntVec tensor = split.s_of(z);
    for (size_t t = 0; t < tensor.size(); ++t) {
        if (tensor[t] == 0)
            continue;
        const auto& e = split.tensor_basis[t];
        int p = e.p, q = n - p;
        const IntVec& zc = cc.small->data.cycle_basis(p)[e.i];
        const IntVec& zp2 = cc.xprime->data.cycle_basis(q)[e.j];
        if (p == k - 1 && q == kp) {
            // h(x, y) ^ <c(h'), y'>
            Integer pairing = 0;
            for (size_t i = 0; i < zp2.size(); ++i)
                pairing += hp.c[i] * zp2[i];
            total = total + evaluate(h, zc) * (pairing * tensor[t]);
        } else if (p == k && q == kp - 1) {
            // h'(y') ^ ((-1)^k <c(h), (x, y)>)
            Integer pairing = 0;
            for (size_t i = 0; i < zc.size(); ++i)
                pairing += h.c[i] * zc[i];
            if (k % 2 != 0)
                pairing = -pairing;
            total = total + evaluate(hp, zp2) * (pairing * tensor[t]);
        }
        // otherwise the value is 1 (contributes nothing)
    }
    // torsion part via the stored witnesses:
    // (1/N) ( int_w (curv,cov)(h) x curv(h') - <c(h) x c(h'), w> )
    auto w = split.complement_witness(z);
    QConeCochain curvx =
        cone_cross_cochain(cc, h.curv_cone(), hp.curv_abs());
    QConeCochain cx =
        cone_cross_cochain(cc, to_rational(h.c_cone()), to_rational(hp.c_abs()));
    RatVec curvx_v = cc.big->encode_rat(curvx);
    RatVec cx_v = cc.big->encode_rat(cx);
    Rational acc = 0;
    for (size_t i = 0; i < w.chain.size(); ++i)
        if (w.chain[i] != 0)
            acc += (curvx_v[i] - cx_v[i]) * Rational(w.chain[i]);
    total = total + CircleValue(acc / Rational(w.order));
    return total;
}

// --- internal products --------------------------------------------------------

/// Cup-level module action of X-cochains on cone cochains:
/// (u_X, u_A) cup_phi w := (u_X cup w, u_A cup phi^* w).
inline QConeCochain cone_cup(const QConeCochain& u, const QCochain& w) {
    QCochain x = cup(u.x, w);
    if (u.degree() == 0)
        return {u.phi, x, QCochain(u.phi->source(), 0)};
    QCochain a = cup(u.a, pullback(*u.phi, w));
    return {u.phi, x, a};
}

/// Internal product of a cone character with an absolute character on the
/// same base.
inline CharTriple star(const CharTriple& h, const CharTriple& hp) {
    require(h.flavor == Flavor::cone, "star: first factor must be a cone character");
    require(hp.flavor == Flavor::absolute && hp.abs->space == h.cone->phi->target(),
            "star: second factor must be absolute on the base");
    int k = h.k, kp = hp.k;
    QConeCochain c = to_rational(h.c_cone());
    QConeCochain lift = h.lift_cone();
    QConeCochain curv = h.curv_cone();
    QCochain cp = to_rational(hp.c_abs());

    QConeCochain cs = cone_cup(c, cp);
    QConeCochain l1 = cone_cup(lift, cp);
    QConeCochain l2 = cone_cup(curv, hp.lift_abs());
    QConeCochain ls = (k % 2 == 0) ? l1 + l2 : l1 - l2;
    QConeCochain ws = cone_cup(curv, hp.curv_abs());
    ConeCochain csi{cs.phi, to_integral(cs.x), to_integral(cs.a)};
    return make_char(h.cone, k + kp, csi, ls, ws);
}

/// Internal product of two absolute characters on the same space (the
/// nu-formula; in this discrete model wedge and cup coincide, so there is
/// no correction term).
inline CharTriple abs_star(const CharTriple& h, const CharTriple& hp) {
    require(h.flavor == Flavor::absolute && hp.flavor == Flavor::absolute &&
                h.abs->space == hp.abs->space,
            "abs_star: absolute characters on one space required");
    int k = h.k, kp = hp.k;
    QCochain c = to_rational(h.c_abs());
    QCochain cp = to_rational(hp.c_abs());
    QCochain cs = cup(c, cp);
    QCochain l1 = cup(h.lift_abs(), cp);
    QCochain l2 = cup(h.curv_abs(), hp.lift_abs());
    QCochain ls = (k % 2 == 0) ? l1 + l2 : l1 - l2;
    QCochain ws = cup(h.curv_abs(), hp.curv_abs());
    return make_char(h.abs, k + kp, to_integral(cs), ls, ws);
}

/// Cross product of two absolute characters, on the product space.
inline CharTriple cross_abs(const AbsCtxPtr& prod_ctx, const CharTriple& h,
                            const CharTriple& hp) {
    require(h.flavor == Flavor::absolute && hp.flavor == Flavor::absolute,
            "cross_abs: absolute characters required");
    const SetPtr& prod = prod_ctx->space;
    require(prod->is_product() && prod->factor_a() == h.abs->space &&
                prod->factor_b() == hp.abs->space,
            "cross_abs: context is not the product of the factors");
    int k = h.k, kp = hp.k;
    QCochain c = to_rational(h.c_abs());
    QCochain cp = to_rational(hp.c_abs());
    QCochain cx = cross_cochain(prod, c, cp);
    QCochain l1 = cross_cochain(prod, h.lift_abs(), cp);
    QCochain l2 = cross_cochain(prod, h.curv_abs(), hp.lift_abs());
    QCochain lx = (k % 2 == 0) ? l1 + l2 : l1 - l2;
    QCochain wx = cross_cochain(prod, h.curv_abs(), hp.curv_abs());
    return make_char(prod_ctx, k + kp, to_integral(cx), lx, wx);
}

/// An empty simplicial set; the cone of empty -> X is the absolute complex
/// of X, which lets the Kunneth machinery treat absolute products.
inline SetPtr empty_space() {
    SimplicialSet::Data d;
    d.name = "EMPTY";
    return SimplicialSet::create(std::move(d));
}

inline ConeCtxPtr cone_over_space(const AbsCtxPtr& x) {
    auto empty = empty_space();
    auto incl = make_map("empty_in_" + x->space->name(), empty, x->space, {});
    return std::make_shared<ConeContext>(incl, x, AbsContext::make(empty));
}

/// Re-wrap an absolute character as a cone character over empty -> X (the
/// complexes coincide degreewise).
inline CharTriple as_cone_char(const CharTriple& h, const ConeCtxPtr& over_empty) {
    require(h.flavor == Flavor::absolute && over_empty->phi->target() == h.abs->space,
            "as_cone_char: context mismatch");
    CharTriple r;
    r.flavor = Flavor::cone;
    r.k = h.k;
    r.cone = over_empty;
    r.c = h.c;
    r.lift = h.lift;
    r.curv = h.curv;
    detail::validate_triple(r);
    return r;
}

} // namespace relchar
