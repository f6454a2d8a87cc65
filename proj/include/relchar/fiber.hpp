#pragma once

// Trivial bundles X x F with an oriented fiber cycle, transfer maps
// (lambda = ez(- (x) z_F)), fiber integration of cochains and characters,
// and the bounded-fiber constructions.

#include "relchar/kunneth.hpp"

namespace relchar {

/// Trivial bundle over one space: total = base x fiber with a fundamental
/// fiber cycle z_F (closed), or a bounded pair (z_F, del z_F != 0).
struct Bundle {
    AbsCtxPtr base;
    SetPtr fiber;
    int fiber_dim = 0;
    ZChain z_f;
    SetPtr total;
    AbsCtxPtr total_ctx;
    MapPtr projection;

    bool closed_fiber() const { return fiber_dim == 0 || boundary(z_f).is_zero(); }
};

inline Bundle make_bundle(const AbsCtxPtr& base, const SetPtr& fiber, const ZChain& z_f,
                          bool require_closed = true) {
    require(z_f.space() == fiber, "make_bundle: fiber cycle on the wrong space");
    Bundle b;
    b.base = base;
    b.fiber = fiber;
    b.fiber_dim = z_f.degree();
    b.z_f = z_f;
    b.total = product_space(base->space, fiber);
    b.total_ctx = AbsContext::make(b.total);
    b.projection = projection_first(b.total);
    if (require_closed)
        require(b.closed_fiber(), "make_bundle: fundamental cycle is not closed");
    return b;
}

/// lambda(c) = ez(c (x) cyc); the default transfer uses the bundle's fiber
/// cycle.
template <class R>
Chain<R> transfer_lambda(const Bundle& b, const Chain<R>& c, const Chain<R>& cyc) {
    require(c.space() == b.base->space, "transfer_lambda: chain not on the base");
    if (c.is_zero() || cyc.is_zero())
        return Chain<R>(b.total, c.degree() + cyc.degree());
    return ez(b.total, tensor_of(c, cyc));
}

inline ZChain transfer_lambda(const Bundle& b, const ZChain& c) {
    return transfer_lambda(b, c, b.z_f);
}

/// (fint u)(c) := u(ez(c (x) cyc)); lowers degree by deg(cyc).
template <class R>
Cochain<R> fint_cochain(const Bundle& b, const Cochain<R>& u, const ZChain& cyc) {
    require(u.space() == b.total, "fint_cochain: cochain not on the total space");
    int m = u.degree() - cyc.degree();
    require(m >= 0, "fint_cochain: degree below the fiber dimension");
    Cochain<R> r(b.base->space, m);
    Chain<R> cyc_r(cyc.space(), cyc.degree());
    for (const auto& [i, v] : cyc.coeffs())
        cyc_r.add(i, R(v));
    for (int idx = 0; idx < b.base->space->count(m); ++idx) {
        Chain<R> lam = transfer_lambda(b, simplex_chain<R>(b.base->space, {m, idx}), cyc_r);
        R val{};
        for (const auto& [j, w] : lam.coeffs()) {
            const R& uv = u.coeff(j);
            if (uv != 0)
                val += uv * w;
        }
        if (val != 0)
            r.add(idx, val);
    }
    return r;
}

template <class R> Cochain<R> fint_cochain(const Bundle& b, const Cochain<R>& u) {
    return fint_cochain(b, u, b.z_f);
}

/// Fiber integration of an absolute character on the total space.
inline CharTriple fiber_integrate_char(const Bundle& b, const CharTriple& h, const ZChain& cyc) {
    require(h.flavor == Flavor::absolute && h.abs->space == b.total,
            "fiber_integrate_char: character not on the total space");
    int f = cyc.degree();
    require(h.k >= f + 1, "fiber_integrate_char: degree too low");
    ZCochain c = fint_cochain(b, h.c_abs(), cyc);
    QCochain lift = fint_cochain(b, h.lift_abs(), cyc);
    QCochain curv = fint_cochain(b, h.curv_abs(), cyc);
    return make_char(b.base, h.k - f, c, lift, curv);
}

inline CharTriple fiber_integrate_char(const Bundle& b, const CharTriple& h) {
    return fiber_integrate_char(b, h, b.z_f);
}

/// Bundle over a mapping cone: the pair of trivial bundles over X and A
/// with the same fiber, and the induced map Phi = phi x id_F.
struct ConeBundle {
    ConeCtxPtr base;   // cone of phi
    Bundle x_bundle;   // over X
    Bundle a_bundle;   // over A
    MapPtr big_phi;    // phi x id_F : A x F -> X x F
    ConeCtxPtr total;  // cone of big_phi
};

inline ConeBundle make_cone_bundle(const ConeCtxPtr& base, const SetPtr& fiber,
                                   const ZChain& z_f) {
    ConeBundle cb;
    cb.base = base;
    cb.x_bundle = make_bundle(base->x_ctx, fiber, z_f);
    cb.a_bundle = make_bundle(base->a_ctx, fiber, z_f);
    cb.big_phi = product_map(base->phi->name() + "_x_idF", base->phi, identity_map(fiber),
                             cb.a_bundle.total, cb.x_bundle.total);
    cb.total = std::make_shared<ConeContext>(cb.big_phi, cb.x_bundle.total_ctx,
                                             cb.a_bundle.total_ctx);
    return cb;
}

/// Componentwise transfer on cone chains (exact chain map for closed
/// fibers).
inline ConeChain cone_transfer_lambda(const ConeBundle& cb, const ConeChain& c) {
    require(c.phi == cb.base->phi, "cone_transfer_lambda: wrong cone");
    ZChain x = transfer_lambda(cb.x_bundle, c.x);
    ZChain a = c.degree() >= 1 ? transfer_lambda(cb.a_bundle, c.a)
                               : ZChain(cb.a_bundle.total, 0);
    int f = cb.x_bundle.fiber_dim;
    if (c.degree() + f == 0)
        return {cb.big_phi, x, ZChain(cb.a_bundle.total, 0)};
    return {cb.big_phi, x, a};
}

/// Componentwise fiber integration on cone cochains.
inline QConeCochain cone_fint_cochain(const ConeBundle& cb, const QConeCochain& u,
                                      const ZChain& cyc) {
    require(u.phi == cb.big_phi, "cone_fint_cochain: cochain not on the total cone");
    QCochain x = fint_cochain(cb.x_bundle, u.x, cyc);
    int m = u.degree() - cyc.degree();
    QCochain a = (u.degree() >= 1 && m >= 1) ? fint_cochain(cb.a_bundle, u.a, cyc)
                                             : QCochain(cb.base->phi->source(), std::max(m - 1, 0));
    if (m == 0)
        return {cb.base->phi, x, QCochain(cb.base->phi->source(), 0)};
    return {cb.base->phi, x, a};
}

inline QConeCochain cone_fint_cochain(const ConeBundle& cb, const QConeCochain& u) {
    return cone_fint_cochain(cb, u, cb.x_bundle.z_f);
}

/// Fiber integration of a cone character on the total cone, degree k ->
/// k - dim F; each field is fiber-integrated (pi-hat-shriek through the
/// transfer map).
inline CharTriple fiber_integrate_char(const ConeBundle& cb, const CharTriple& h,
                                       const ZChain& cyc) {
    require(h.flavor == Flavor::cone && h.cone->phi == cb.big_phi,
            "fiber_integrate_char: character not on the total cone");
    int f = cyc.degree();
    require(h.k - f >= 2, "fiber_integrate_char: resulting degree below 2");
    QConeCochain c = cone_fint_cochain(cb, to_rational(h.c_cone()), cyc);
    QConeCochain lift = cone_fint_cochain(cb, h.lift_cone(), cyc);
    QConeCochain curv = cone_fint_cochain(cb, h.curv_cone(), cyc);
    ConeCochain ci{c.phi, to_integral(c.x), to_integral(c.a)};
    return make_char(cb.base, h.k - f, ci, lift, curv);
}

inline CharTriple fiber_integrate_char(const ConeBundle& cb, const CharTriple& h) {
    return fiber_integrate_char(cb, h, cb.x_bundle.z_f);
}

// --- fibers with boundary ---------------------------------------------------

/// Fiberwise boundary integration: integrate over del z_F.  For a
/// character h of degree k this equals iota((-1)^{k - dim F} fint_F
/// (curv, cov)(h)) (verified in the tests).
inline CharTriple boundary_fiber_integrate(const ConeBundle& cb, const CharTriple& h) {
    ZChain zdf = boundary(cb.x_bundle.z_f);
    require(!zdf.is_zero(), "boundary_fiber_integrate: fiber is closed");
    return fiber_integrate_char(cb, h, zdf);
}

/// The topological trivialization predicted for the boundary integral.
inline CharTriple boundary_fiber_iota(const ConeBundle& cb, const CharTriple& h) {
    int k = h.k;
    int f = cb.x_bundle.z_f.degree();
    QConeCochain fint_curv = cone_fint_cochain(cb, h.curv_cone(), cb.x_bundle.z_f);
    QConeCochain form = ((k - f) % 2 == 0) ? fint_curv : -fint_curv;
    return iota_cone(cb.base, form);
}

/// Bounding data for section_from_bounding: F' with an embedding of F as a
/// subcomplex and a chain z_F' with del z_F' = incl_* z_F.
struct BoundingFiber {
    SetPtr fprime;
    MapPtr incl; // F -> F'
    ZChain z_fprime;
};

inline BoundingFiber make_bounding_fiber(const SetPtr& fprime, const MapPtr& incl,
                                         const ZChain& z_fprime, const ZChain& z_f) {
    require(incl->target() == fprime && z_fprime.space() == fprime,
            "make_bounding_fiber: inconsistent spaces");
    require(boundary(z_fprime) == pushforward(*incl, z_f),
            "make_bounding_fiber: del z_F' != incl_* z_F");
    return {fprime, incl, z_fprime};
}

/// Extension of a cochain by zero along an embedding with nondegenerate
/// injective images.
template <class R>
Cochain<R> extend_by_zero_along(const SimplicialMap& incl, const Cochain<R>& u,
                                const SetPtr& target) {
    require(u.space() == incl.source() && incl.target() == target,
            "extend_by_zero_along: space mismatch");
    Cochain<R> r(target, u.degree());
    for (const auto& [i, v] : u.coeffs()) {
        const Cell& img = incl.image({u.degree(), i});
        require(!img.degenerate(), "extend_by_zero_along: image degenerate");
        r.add(img.base.index, v);
    }
    return r;
}

struct BoundingSection {
    std::optional<CharTriple> section; // cone character over phi
    QCochain prescribed_cov;           // the covariant derivative it carries
};

/// Section of the fiber integral pi-hat-shriek(h) along phi, for a bundle
/// whose pullback over A bounds along the given data.  The covariant
/// derivative is (-1)^{k + dim F'} fint_{F'} W for the canonical closed
/// extension W of curv(Phi^* h), built from an integral closed extension V
/// of the pulled-back class cocycle.  Returns nullopt when no such V
/// exists.
inline BoundingSection section_from_bounding(const ConeBundle& cb, const CharTriple& h,
                                             const BoundingFiber& bf) {
    require(h.flavor == Flavor::absolute && h.abs->space == cb.x_bundle.total,
            "section_from_bounding: character must live on the total space");
    int k = h.k;
    int f = cb.x_bundle.fiber_dim;
    int kappa = k - f;
    require(kappa >= 2, "section_from_bounding: resulting degree below 2");
    const MapPtr& phi = cb.base->phi;
    const SetPtr& a_space = phi->source();

    // A x F' and the embedding A x F -> A x F'
    SetPtr axfp = product_space(a_space, bf.fprime);
    MapPtr emb = product_map("AxF_in_AxF'", identity_map(a_space), bf.incl, cb.a_bundle.total,
                             axfp);
    auto axfp_ctx = AbsContext::make(axfp);

    // pull h back to A x F
    ZCochain c_af = pullback(*cb.big_phi, h.c_abs());
    QCochain l_af = pullback(*cb.big_phi, h.lift_abs());

    // integral closed extension V of c_af over A x F': delta V = 0 and
    // emb^* V = c_af
    int dim_k = axfp->count(k);
    IntMatrix delta = axfp_ctx->data.delta(k);
    IntMatrix restrict(cb.a_bundle.total->count(k), dim_k);
    for (int i = 0; i < cb.a_bundle.total->count(k); ++i) {
        Cell img = emb->apply(identity_cell({k, i}));
        if (!img.degenerate())
            restrict.set(i, img.base.index, 1);
    }
    IntMatrix sys(delta.rows() + restrict.rows(), dim_k);
    for (int r = 0; r < delta.rows(); ++r)
        for (const auto& [c, v] : delta.row(r))
            sys.set(r, c, v);
    for (int r = 0; r < restrict.rows(); ++r)
        for (const auto& [c, v] : restrict.row(r))
            sys.set(delta.rows() + r, c, v);
    IntVec rhs(sys.rows(), 0);
    for (const auto& [i, v] : c_af.coeffs())
        rhs[delta.rows() + i] = v;
    auto vsol = solve_diophantine(sys, rhs);
    if (!vsol)
        return {std::nullopt, QCochain(a_space, kappa - 1)};
    ZCochain v_ext(axfp, k);
    for (int i = 0; i < dim_k; ++i)
        if ((*vsol)[i] != 0)
            v_ext.add(i, (*vsol)[i]);

    // W = V + delta(ext(l_af)): the canonical closed extension of Phi^*curv
    QCochain ext_l = extend_by_zero_along(*emb, l_af, axfp);
    QCochain w_ext = to_rational(v_ext) + coboundary(ext_l);

    // fint over F' of a cochain on A x F'
    Bundle aprime;
    aprime.base = cb.base->a_ctx;
    aprime.fiber = bf.fprime;
    aprime.fiber_dim = bf.z_fprime.degree();
    aprime.z_f = bf.z_fprime;
    aprime.total = axfp;
    aprime.total_ctx = axfp_ctx;
    aprime.projection = projection_first(axfp);

    auto sign = [](int e) { return e % 2 == 0 ? Rational(1) : Rational(-1); };
    // cov = (-1)^{k + dim F'} fint_{F'} W   (dim F' = f + 1)
    QCochain theta = fint_cochain(aprime, w_ext, bf.z_fprime) * sign(k + f + 1);
    // C_A = (-1)^{kappa+1} V . lambda',  L_A = (-1)^{kappa} ext(l) . lambda'
    ZCochain c_a = fint_cochain(aprime, v_ext, bf.z_fprime) *
                   ((kappa + 1) % 2 == 0 ? Integer(1) : Integer(-1));
    QCochain l_a = fint_cochain(aprime, ext_l, bf.z_fprime) * sign(kappa);

    // X-parts: the fields of pi-hat-shriek(h)
    ZCochain c_x = fint_cochain(cb.x_bundle, h.c_abs());
    QCochain l_x = fint_cochain(cb.x_bundle, h.lift_abs(), cb.x_bundle.z_f);
    QCochain w_x = fint_cochain(cb.x_bundle, h.curv_abs(), cb.x_bundle.z_f);

    ConeCochain cc{phi, c_x, c_a};
    QConeCochain ll{phi, l_x, l_a};
    QConeCochain ww{phi, w_x, theta};
    CharTriple section = make_char(cb.base, kappa, cc, ll, ww);
    return {section, theta};
}

} // namespace relchar
