#pragma once

// Differential characters in three flavors (absolute, mapping cone,
// quotient-relative), stored as triples (c, lift, curv) with
// delta(lift) = curv - c.  Holonomies are rational circle values, which
// keeps every decision procedure exact.

#include "relchar/cone.hpp"

namespace relchar {

enum class Flavor { absolute, cone, quotient };

inline const char* flavor_name(Flavor f) {
    switch (f) {
    case Flavor::absolute:
        return "absolute";
    case Flavor::cone:
        return "cone";
    case Flavor::quotient:
        return "quotient";
    }
    return "?";
}

/// A differential character of degree k: integral cocycle c of degree k,
/// rational lift of degree k-1 and rational curvature of degree k, with
/// delta(lift) = curv - c.  Fields are stored in the coordinates of the
/// flavor's based complex.
struct CharTriple {
    Flavor flavor = Flavor::absolute;
    int k = 2;
    AbsCtxPtr abs;
    ConeCtxPtr cone;
    PairCtxPtr pair;
    IntVec c;    // degree k
    RatVec lift; // degree k-1
    RatVec curv; // degree k

    const ComplexData& data() const {
        switch (flavor) {
        case Flavor::absolute:
            return abs->data;
        case Flavor::cone:
            return cone->data;
        case Flavor::quotient:
            return pair->data;
        }
        throw Error("CharTriple: bad flavor");
    }

    bool same_group(const CharTriple& o) const {
        if (flavor != o.flavor || k != o.k)
            return false;
        switch (flavor) {
        case Flavor::absolute:
            return abs->space == o.abs->space;
        case Flavor::cone:
            return cone->phi == o.cone->phi;
        case Flavor::quotient:
            return pair->incl == o.pair->incl;
        }
        return false;
    }

    // typed views
    QCochain lift_abs() const { return abs->decode_cochain(lift, k - 1); }
    QCochain curv_abs() const { return abs->decode_cochain(curv, k); }
    QConeCochain lift_cone() const { return cone->decode_cochain(lift, k - 1); }
    QConeCochain curv_cone() const { return cone->decode_cochain(curv, k); }
    ConeCochain c_cone() const {
        RatVec cv(c.size());
        for (size_t i = 0; i < c.size(); ++i)
            cv[i] = Rational(c[i]);
        QConeCochain q = cone->decode_cochain(cv, k);
        return {q.phi, to_integral(q.x), to_integral(q.a)};
    }
    ZCochain c_abs() const {
        ZCochain u(abs->space, k);
        for (int i = 0; i < static_cast<int>(c.size()); ++i)
            if (c[i] != 0)
                u.add(i, c[i]);
        return u;
    }

    CharTriple operator+(const CharTriple& o) const {
        require(same_group(o), "CharTriple: group mismatch");
        CharTriple r = *this;
        for (size_t i = 0; i < c.size(); ++i)
            r.c[i] += o.c[i];
        for (size_t i = 0; i < lift.size(); ++i)
            r.lift[i] += o.lift[i];
        for (size_t i = 0; i < curv.size(); ++i)
            r.curv[i] += o.curv[i];
        return r;
    }
    CharTriple operator-(const CharTriple& o) const { return *this + (-o); }
    CharTriple operator-() const {
        CharTriple r = *this;
        for (auto& v : r.c)
            v = -v;
        for (auto& v : r.lift)
            v = -v;
        for (auto& v : r.curv)
            v = -v;
        return r;
    }
    CharTriple operator*(const Integer& n) const {
        CharTriple r = *this;
        for (auto& v : r.c)
            v *= n;
        for (auto& v : r.lift)
            v *= Rational(n);
        for (auto& v : r.curv)
            v *= Rational(n);
        return r;
    }
};

namespace detail {

inline void validate_triple(const CharTriple& h) {
    // the k = 1 covariant-derivative ambiguity only affects the relative
    // flavors; absolute degree-1 characters are needed as the domain of
    // breve_i in the lowest long-exact-sequence position
    if (h.flavor == Flavor::absolute)
        require(h.k >= 1, "character degree must be >= 1");
    else
        require(h.k >= 2, "character degree must be >= 2");
    const ComplexData& d = h.data();
    require(static_cast<int>(h.c.size()) == d.dim(h.k), "c: wrong length");
    require(static_cast<int>(h.lift.size()) == d.dim(h.k - 1), "lift: wrong length");
    require(static_cast<int>(h.curv.size()) == d.dim(h.k), "curv: wrong length");
    // delta c = 0
    IntVec dc = d.apply_delta(h.c, h.k);
    for (const auto& v : dc)
        require(v == 0, "character: c is not a cocycle");
    // delta lift = curv - c
    RatVec dl = d.apply_delta(h.lift, h.k - 1);
    for (size_t i = 0; i < dl.size(); ++i)
        require(dl[i] == h.curv[i] - Rational(h.c[i]),
                "character: delta(lift) != curv - c");
}

} // namespace detail

inline CharTriple make_char(const AbsCtxPtr& ctx, int k, IntVec c, RatVec lift, RatVec curv) {
    CharTriple h;
    h.flavor = Flavor::absolute;
    h.k = k;
    h.abs = ctx;
    h.c = std::move(c);
    h.lift = std::move(lift);
    h.curv = std::move(curv);
    detail::validate_triple(h);
    return h;
}

inline CharTriple make_char(const ConeCtxPtr& ctx, int k, IntVec c, RatVec lift, RatVec curv) {
    CharTriple h;
    h.flavor = Flavor::cone;
    h.k = k;
    h.cone = ctx;
    h.c = std::move(c);
    h.lift = std::move(lift);
    h.curv = std::move(curv);
    detail::validate_triple(h);
    return h;
}

inline CharTriple make_char(const PairCtxPtr& ctx, int k, IntVec c, RatVec lift, RatVec curv) {
    CharTriple h;
    h.flavor = Flavor::quotient;
    h.k = k;
    h.pair = ctx;
    h.c = std::move(c);
    h.lift = std::move(lift);
    h.curv = std::move(curv);
    detail::validate_triple(h);
    return h;
}

// typed constructors
inline CharTriple make_char(const AbsCtxPtr& ctx, int k, const ZCochain& c, const QCochain& lift,
                            const QCochain& curv) {
    IntVec cv(ctx->space->count(k), 0);
    for (const auto& [i, v] : c.coeffs())
        cv[i] = v;
    return make_char(ctx, k, std::move(cv), ctx->encode_rat(lift), ctx->encode_rat(curv));
}

inline CharTriple make_char(const ConeCtxPtr& ctx, int k, const ConeCochain& c,
                            const QConeCochain& lift, const QConeCochain& curv) {
    RatVec cr = ctx->encode_rat(to_rational(c));
    IntVec cv(cr.size());
    for (size_t i = 0; i < cr.size(); ++i)
        cv[i] = num(cr[i]);
    return make_char(ctx, k, std::move(cv), ctx->encode_rat(lift), ctx->encode_rat(curv));
}

inline CharTriple make_char(const PairCtxPtr& ctx, int k, const ZCochain& c, const QCochain& lift,
                            const QCochain& curv) {
    require(ctx->vanishes_on_sub(c) && ctx->vanishes_on_sub(lift) && ctx->vanishes_on_sub(curv),
            "quotient character: fields must vanish on the subcomplex");
    return make_char(ctx, k, [&] {
        RatVec cr = ctx->encode_rat(to_rational(c));
        IntVec cv(cr.size());
        for (size_t i = 0; i < cr.size(); ++i)
            cv[i] = num(cr[i]);
        return cv;
    }(), ctx->encode_rat(lift), ctx->encode_rat(curv));
}

template <class Ctx> CharTriple zero_char(const Ctx& ctx, int k) {
    const ComplexData& d = ctx->data;
    return make_char(ctx, k, IntVec(d.dim(k), 0), RatVec(d.dim(k - 1), 0), RatVec(d.dim(k), 0));
}

// --- evaluation -----------------------------------------------------------

/// Value of the character on a cycle (given in complex coordinates).
inline CircleValue evaluate(const CharTriple& h, const IntVec& z) {
    const ComplexData& d = h.data();
    require(static_cast<int>(z.size()) == d.dim(h.k - 1), "evaluate: wrong degree");
    require(d.is_cycle(z, h.k - 1), "evaluate: not a cycle");
    Rational v = 0;
    for (size_t i = 0; i < z.size(); ++i)
        if (z[i] != 0)
            v += Rational(z[i]) * h.lift[i];
    return CircleValue(v);
}

inline CircleValue evaluate(const CharTriple& h, const ZChain& z) {
    require(h.flavor == Flavor::absolute, "evaluate: chain flavor mismatch");
    return evaluate(h, h.abs->encode(z));
}

inline CircleValue evaluate(const CharTriple& h, const ConeChain& z) {
    require(h.flavor == Flavor::cone, "evaluate: chain flavor mismatch");
    return evaluate(h, h.cone->encode(z));
}

/// Quotient characters evaluate on relative cycles: chains on X whose
/// boundary lies in the subcomplex.
inline CircleValue evaluate_quotient(const CharTriple& h, const ZChain& z) {
    require(h.flavor == Flavor::quotient, "evaluate_quotient: flavor mismatch");
    return evaluate(h, h.pair->encode(h.pair->reduce(z)));
}

// --- equality -------------------------------------------------------------

/// Two triples present the same character iff the curvatures agree exactly
/// and the lift difference has integral periods on the cycle basis.  This
/// is the triple-level relation (c, lift, curv) ~ (c + delta b,
/// lift - b - delta s, curv); gauge_witness returns such a pair (b, s).
inline bool equals(const CharTriple& h1, const CharTriple& h2) {
    require(h1.same_group(h2), "equals: group mismatch");
    for (size_t i = 0; i < h1.curv.size(); ++i)
        if (h1.curv[i] != h2.curv[i])
            return false;
    RatVec dl(h1.lift.size());
    for (size_t i = 0; i < dl.size(); ++i)
        dl[i] = h1.lift[i] - h2.lift[i];
    return h1.data().integral_periods(dl, h1.k - 1);
}

inline bool is_zero_char(const CharTriple& h) {
    CharTriple z = h;
    for (auto& v : z.c)
        v = 0;
    for (auto& v : z.lift)
        v = 0;
    for (auto& v : z.curv)
        v = 0;
    return equals(h, z);
}

struct GaugeWitness {
    IntVec b; // integral cochain of degree k-1
    RatVec s; // rational cochain of degree k-2
};

inline std::optional<GaugeWitness> gauge_witness(const CharTriple& h1, const CharTriple& h2) {
    if (!equals(h1, h2))
        return std::nullopt;
    const ComplexData& d = h1.data();
    int k = h1.k;
    RatVec dl(h1.lift.size());
    for (size_t i = 0; i < dl.size(); ++i)
        dl[i] = h1.lift[i] - h2.lift[i];
    // b with b(z_i) = -dl(z_i) on the cycle basis (always solvable: the
    // basis is saturated)
    RatVec per = d.periods(dl, k - 1);
    IntVec rhs(per.size());
    for (size_t i = 0; i < per.size(); ++i)
        rhs[i] = -num(per[i]);
    auto b = solve_diophantine(d.cycle_rows_snf(k - 1), rhs);
    require(b.has_value(), "gauge_witness: period system unsolvable");
    // s with delta s = -b - dl (solvable over Q: zero periods)
    RatVec target(dl.size());
    for (size_t i = 0; i < dl.size(); ++i)
        target[i] = -Rational((*b)[i]) - dl[i];
    auto s = solve_rational_snf(d.delta_snf(k - 2), target);
    require(s.has_value(), "gauge_witness: exactness system unsolvable");
    return GaugeWitness{*b, *s};
}

// --- structure maps ---------------------------------------------------------

/// Curvature (the stored field).
inline RatVec curvature(const CharTriple& h) { return h.curv; }

/// Covariant derivative: the A-component of the curvature pair (cone only).
inline QCochain covariant_derivative(const CharTriple& h) {
    require(h.flavor == Flavor::cone, "covariant_derivative: cone flavor required");
    return h.curv_cone().a;
}

struct CharClass {
    IntVec cocycle;
    ClassCoordinates coords;
};

/// Characteristic class: the stored cocycle c with its coordinates in the
/// canonical presentation of H^k(Z).
inline CharClass characteristic_class(const CharTriple& h) {
    auto cc = class_coordinates(h.data().cohomology(h.k), h.c);
    require(cc.has_value(), "characteristic_class: coordinate computation failed");
    return {h.c, *cc};
}

/// iota(form): the topologically trivial character (0, form, delta form).
template <class Ctx> CharTriple iota(const Ctx& ctx, int k, const RatVec& form) {
    const ComplexData& d = ctx->data;
    require(static_cast<int>(form.size()) == d.dim(k - 1), "iota: wrong form degree");
    return make_char(ctx, k, IntVec(d.dim(k), 0), form, d.apply_delta(form, k - 1));
}

inline CharTriple iota_abs(const AbsCtxPtr& ctx, const QCochain& form) {
    return iota(ctx, form.degree() + 1, ctx->encode_rat(form));
}

inline CharTriple iota_cone(const ConeCtxPtr& ctx, const QConeCochain& form) {
    return iota(ctx, form.degree() + 1, ctx->encode_rat(form));
}

inline CharTriple iota_quot(const PairCtxPtr& ctx, const QCochain& form) {
    require(ctx->vanishes_on_sub(form), "iota_quot: form must vanish on the subcomplex");
    return iota(ctx, form.degree() + 1, ctx->encode_rat(form));
}

/// j(u) for a Q/Z-cocycle u represented by a rational cochain with integral
/// coboundary: the flat character (-delta u, u, 0).
template <class Ctx> CharTriple j_char(const Ctx& ctx, int k, const RatVec& u) {
    const ComplexData& d = ctx->data;
    require(static_cast<int>(u.size()) == d.dim(k - 1), "j: wrong degree");
    RatVec du = d.apply_delta(u, k - 1);
    IntVec c(du.size());
    for (size_t i = 0; i < du.size(); ++i) {
        require(is_integer(du[i]), "j: cochain is not closed mod Z");
        c[i] = -num(du[i]);
    }
    return make_char(ctx, k, std::move(c), u, RatVec(d.dim(k), 0));
}

/// Rational cochain u of degree n with integral coboundary, realizing the
/// homomorphism H_n -> Q/Z prescribed by its values on the presentation
/// generators.  Torsion values must be compatible with the orders.
inline RatVec qz_cocycle(const ComplexData& d, int n, const RatVec& free_values,
                         const RatVec& torsion_values) {
    const FgAbPresentation& pres = d.homology(n);
    require(static_cast<int>(free_values.size()) == pres.free_rank,
            "qz_cocycle: wrong number of free values");
    require(torsion_values.size() == pres.torsion_orders.size(),
            "qz_cocycle: wrong number of torsion values");
    for (size_t j = 0; j < torsion_values.size(); ++j)
        require(is_integer(torsion_values[j] * Rational(pres.torsion_orders[j])),
                "qz_cocycle: torsion value incompatible with the order");
    const auto& basis = d.cycle_basis(n);
    // batch the raw class solutions over one decomposition
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
    SnfDecomposition class_snf =
        smith_normal_form(IntMatrix::from_columns(pres.ambient_dim, cols));
    RatVec values(basis.size(), 0);
    for (size_t i = 0; i < basis.size(); ++i) {
        auto sol = solve_diophantine(class_snf, basis[i]);
        require(sol.has_value(), "qz_cocycle: basis cycle not in the presentation");
        Rational v = 0;
        for (int f = 0; f < pres.free_rank; ++f)
            v += Rational((*sol)[f]) * free_values[f];
        for (size_t j = 0; j < torsion_values.size(); ++j)
            v += Rational((*sol)[pres.free_rank + j]) * torsion_values[j];
        values[i] = v;
    }
    // u with the prescribed periods on the cycle basis
    auto u = solve_rational_snf(d.cycle_rows_snf(n), values);
    require(u.has_value(), "qz_cocycle: period prescription unsolvable");
    // closed mod Z by construction; validated here
    RatVec du = d.apply_delta(*u, n);
    for (const auto& v : du)
        require(is_integer(v), "qz_cocycle: result not closed mod Z");
    return *u;
}

/// Evaluation on a torsion cycle through a witness N z = bnd(w):
/// (1/N) (<curv, w> - <c, w>) mod 1.  Must agree with evaluate().
inline CircleValue eval_torsion_oracle(const CharTriple& h, const IntVec& z, const Integer& n,
                                       const IntVec& w) {
    const ComplexData& d = h.data();
    require(n >= 1, "eval_torsion_oracle: order must be positive");
    require(static_cast<int>(w.size()) == d.dim(h.k), "eval_torsion_oracle: wrong witness degree");
    IntVec bw = d.apply_bnd(w, h.k);
    for (size_t i = 0; i < z.size(); ++i)
        require(bw[i] == n * z[i], "eval_torsion_oracle: witness equation fails");
    Rational total = 0;
    for (size_t i = 0; i < w.size(); ++i)
        if (w[i] != 0)
            total += (h.curv[i] - Rational(h.c[i])) * Rational(w[i]);
    return CircleValue(total / Rational(n));
}

/// Topological trivialization: a form theta with iota(theta) = h, which
/// exists iff the class of h vanishes.
inline std::optional<RatVec> topological_trivialization(const CharTriple& h) {
    const ComplexData& d = h.data();
    auto cc = characteristic_class(h);
    if (!cc.coords.is_zero())
        return std::nullopt;
    // solve c = delta b over Z
    auto b = solve_diophantine(d.delta_snf(h.k - 1), h.c);
    require(b.has_value(), "topological_trivialization: class vanished but no primitive");
    RatVec theta(h.lift.size());
    for (size_t i = 0; i < theta.size(); ++i)
        theta[i] = h.lift[i] + Rational((*b)[i]);
    return theta;
}

/// Character with prescribed curvature and class (the pair must satisfy the
/// de Rham matching condition; otherwise nullopt).
template <class Ctx>
std::optional<CharTriple> char_with_curv_class(const Ctx& ctx, int k, const RatVec& curv,
                                               const ClassCoordinates& coords) {
    const ComplexData& d = ctx->data;
    IntVec c = representative(d.cohomology(k), coords);
    RatVec target(curv.size());
    for (size_t i = 0; i < curv.size(); ++i)
        target[i] = curv[i] - Rational(c[i]);
    auto l = solve_rational_snf(d.delta_snf(k - 1), target);
    if (!l)
        return std::nullopt;
    return make_char(ctx, k, std::move(c), *l, curv);
}

/// Character with prescribed curvature (requires closed integral periods;
/// the class is the canonical integral lift of the de Rham class).
template <class Ctx>
CharTriple char_with_curvature(const Ctx& ctx, int k, const RatVec& curv) {
    const ComplexData& d = ctx->data;
    require(d.is_cocycle_rational(curv, k), "char_with_curvature: form not closed");
    require(d.integral_periods(curv, k), "char_with_curvature: periods not integral");
    const FgAbPresentation& coh = d.cohomology(k);
    // curv = sum q_i g_i + delta s with q integral since periods are integral
    int nf = coh.free_rank;
    int dim = d.dim(k);
    int dlow = d.dim(k - 1);
    RatMatrix m(dim, RatVec(nf + dlow, 0));
    IntMatrix delta = d.delta(k - 1);
    for (int i = 0; i < nf; ++i)
        for (int r = 0; r < dim; ++r)
            m[r][i] = Rational(coh.free_generators[i][r]);
    for (int r = 0; r < delta.rows(); ++r)
        for (const auto& [cc, v] : delta.row(r))
            m[r][nf + cc] = Rational(v);
    auto sol = solve_rational(m, curv);
    require(sol.has_value(), "char_with_curvature: decomposition failed");
    IntVec c(dim, 0);
    for (int i = 0; i < nf; ++i) {
        require(is_integer((*sol)[i]), "char_with_curvature: non-integral class coordinate");
        Integer q = num((*sol)[i]);
        for (int r = 0; r < dim; ++r)
            c[r] += q * coh.free_generators[i][r];
    }
    RatVec lift(dlow, 0);
    for (int i = 0; i < dlow; ++i)
        lift[i] = (*sol)[nf + i];
    return make_char(ctx, k, std::move(c), std::move(lift), curv);
}

// --- maps between absolute and cone characters -----------------------------

/// breve-i: from a degree k-1 character on A to a degree-k cone character,
/// evaluating as (s, t) -> h(t).  Convention: c' = (0, -c), lift' = (0,
/// lift), curv' = (0, -curv).
inline CharTriple breve_i(const CharTriple& h, const ConeCtxPtr& ctx) {
    require(h.flavor == Flavor::absolute && h.abs->space == ctx->phi->source(),
            "breve_i: expected an absolute character on the source of phi");
    int k = h.k + 1;
    const ComplexData& d = ctx->data;
    int dx = ctx->x_dim(k), dxl = ctx->x_dim(k - 1);
    IntVec c(d.dim(k), 0);
    RatVec lift(d.dim(k - 1), 0), curv(d.dim(k), 0);
    for (int i = 0; i < ctx->a_dim(k); ++i) {
        c[dx + i] = -h.c[i];
        curv[dx + i] = -h.curv[i];
    }
    for (int i = 0; i < ctx->a_dim(k - 1); ++i)
        lift[dxl + i] = h.lift[i];
    return make_char(ctx, k, std::move(c), std::move(lift), std::move(curv));
}

/// breve-p: X-components of a cone character, evaluating as z -> h(z, 0).
inline CharTriple breve_p(const CharTriple& h, const AbsCtxPtr& xctx) {
    require(h.flavor == Flavor::cone && xctx->space == h.cone->phi->target(),
            "breve_p: expected a cone character and the target context");
    int k = h.k;
    IntVec c(xctx->data.dim(k), 0);
    RatVec lift(xctx->data.dim(k - 1), 0), curv(xctx->data.dim(k), 0);
    for (int i = 0; i < h.cone->x_dim(k); ++i) {
        c[i] = h.c[i];
        curv[i] = h.curv[i];
    }
    for (int i = 0; i < h.cone->x_dim(k - 1); ++i)
        lift[i] = h.lift[i];
    return make_char(xctx, k, std::move(c), std::move(lift), std::move(curv));
}

/// Pullback of an absolute character along a simplicial map.
inline CharTriple pullback_char(const CharTriple& h, const MapPtr& f, const AbsCtxPtr& src_ctx) {
    require(h.flavor == Flavor::absolute && h.abs->space == f->target() &&
                src_ctx->space == f->source(),
            "pullback_char: map/space mismatch");
    ZCochain c = pullback(*f, h.c_abs());
    QCochain lift = pullback(*f, h.lift_abs());
    QCochain curv = pullback(*f, h.curv_abs());
    return make_char(src_ctx, h.k, c, lift, curv);
}

/// Pullback of a cone character along a commuting square (f, g):
/// psi : B -> Y, phi : A -> X, f : Y -> X, g : B -> A, phi g = f psi.
inline CharTriple pullback_char(const CharTriple& h, const MapPtr& f, const MapPtr& g,
                                const ConeCtxPtr& src_ctx) {
    require(h.flavor == Flavor::cone, "pullback_char: cone flavor required");
    require(f->target() == h.cone->phi->target() && g->target() == h.cone->phi->source() &&
                f->source() == src_ctx->phi->target() && g->source() == src_ctx->phi->source(),
            "pullback_char: square mismatch");
    ConeCochain c = h.c_cone();
    QConeCochain lift = h.lift_cone();
    QConeCochain curv = h.curv_cone();
    ConeCochain pc{src_ctx->phi, pullback(*f, c.x), pullback(*g, c.a)};
    QConeCochain pl{src_ctx->phi, pullback(*f, lift.x), pullback(*g, lift.a)};
    QConeCochain pw{src_ctx->phi, pullback(*f, curv.x), pullback(*g, curv.a)};
    return make_char(src_ctx, h.k, pc, pl, pw);
}

// --- sections ---------------------------------------------------------------

struct SectionResult {
    std::optional<CharTriple> section;
    std::optional<ClassCoordinates> obstruction; // class of phi^* c(h) when no section
};

/// Section of h along phi: a cone character h' with breve_p(h') = h.
/// Exists iff phi^* c(h) is an integral coboundary.
inline SectionResult section_along(const CharTriple& h, const ConeCtxPtr& ctx) {
    require(h.flavor == Flavor::absolute && h.abs->space == ctx->phi->target(),
            "section_along: expected an absolute character on the target of phi");
    const MapPtr& phi = ctx->phi;
    int k = h.k;
    ZCochain pc = pullback(*phi, h.c_abs());
    IntVec target = [&] {
        IntVec v(ctx->a_ctx->data.dim(k), 0);
        for (const auto& [i, val] : pc.coeffs())
            v[i] = val;
        return v;
    }();
    auto b = solve_diophantine(ctx->a_ctx->data.delta_snf(k - 1), target);
    if (!b) {
        auto coords = class_coordinates(ctx->a_ctx->data.cohomology(k), target);
        require(coords.has_value(), "section_along: obstruction class computation failed");
        return {std::nullopt, coords};
    }
    ZCochain ba(phi->source(), k - 1);
    for (int i = 0; i < static_cast<int>(b->size()); ++i)
        if ((*b)[i] != 0)
            ba.add(i, (*b)[i]);
    // cone triple: c' = (c, b), lift' = (lift, 0), curv' = (curv, phi^*lift + b)
    ConeCochain cc{phi, h.c_abs(), ba};
    QConeCochain ll{phi, h.lift_abs(), QCochain(phi->source(), k - 2)};
    QCochain theta = pullback(*phi, h.lift_abs()) + to_rational(ba);
    QConeCochain ww{phi, h.curv_abs(), theta};
    return {make_char(ctx, k, cc, ll, ww), std::nullopt};
}

/// Parallel section: a section with covariant derivative zero; exists iff
/// phi^* h = 0.
inline std::optional<CharTriple> parallel_section(const CharTriple& h, const ConeCtxPtr& ctx) {
    require(h.flavor == Flavor::absolute && h.abs->space == ctx->phi->target(),
            "parallel_section: expected an absolute character on the target of phi");
    CharTriple pulled = pullback_char(h, ctx->phi, ctx->a_ctx);
    auto w = gauge_witness(pulled, zero_char(ctx->a_ctx, h.k));
    if (!w)
        return std::nullopt;
    // build the section with c_A := b from the witness; its covariant
    // derivative is then exactly -delta(s), killed by adding
    // breve_i(iota(-s)).
    const MapPtr& phi = ctx->phi;
    int k = h.k;
    ZCochain ba(phi->source(), k - 1);
    for (int i = 0; i < static_cast<int>(w->b.size()); ++i)
        if (w->b[i] != 0)
            ba.add(i, w->b[i]);
    ConeCochain cc{phi, h.c_abs(), ba};
    QConeCochain ll{phi, h.lift_abs(), QCochain(phi->source(), k - 2)};
    QCochain theta = pullback(*phi, h.lift_abs()) + to_rational(ba);
    QConeCochain ww{phi, h.curv_abs(), theta};
    CharTriple section = make_char(ctx, k, cc, ll, ww);
    RatVec neg_s(w->s.size());
    for (size_t i = 0; i < w->s.size(); ++i)
        neg_s[i] = -w->s[i];
    CharTriple corrector = breve_i(iota(ctx->a_ctx, k - 1, neg_s), ctx);
    CharTriple result = section + corrector;
    // postcondition: cov = 0 exactly
    QCochain cov = covariant_derivative(result);
    require(cov.is_zero(), "parallel_section: covariant derivative not zero");
    return result;
}

// --- comparison of the two relative flavors --------------------------------

/// Quotient character -> cone character for the inclusion (precomposition
/// with q: (v, w) -> v mod A).
inline CharTriple quotient_to_cone(const CharTriple& h, const ConeCtxPtr& ctx) {
    require(h.flavor == Flavor::quotient, "quotient_to_cone: quotient flavor required");
    require(ctx->phi == h.pair->incl, "quotient_to_cone: cone context must be the inclusion");
    int k = h.k;
    const MapPtr& incl = h.pair->incl;
    ZCochain cx = [&] {
        RatVec v(h.c.size());
        for (size_t i = 0; i < h.c.size(); ++i)
            v[i] = Rational(h.c[i]);
        return to_integral(h.pair->decode_cochain(v, k));
    }();
    QCochain lx = h.pair->decode_cochain(h.lift, k - 1);
    QCochain wx = h.pair->decode_cochain(h.curv, k);
    ConeCochain cc{incl, cx, ZCochain(incl->source(), k - 1)};
    QConeCochain ll{incl, lx, QCochain(incl->source(), k - 2)};
    QConeCochain ww{incl, wx, QCochain(incl->source(), k - 1)};
    return make_char(ctx, k, cc, ll, ww);
}

/// Extension of a cochain on the subcomplex by zero to X.
template <class R> Cochain<R> extend_by_zero(const PairContext& pair, const Cochain<R>& u) {
    require(u.space() == pair.a_space(), "extend_by_zero: cochain not on the subcomplex");
    Cochain<R> r(pair.x_space(), u.degree());
    for (const auto& [i, v] : u.coeffs())
        r.add(pair.incl->image({u.degree(), i}).base.index, v);
    return r;
}

/// Parallel cone character -> quotient character (inverse of
/// quotient_to_cone up to equality of characters).
inline CharTriple cone_to_quotient(const CharTriple& h, const PairCtxPtr& pair) {
    require(h.flavor == Flavor::cone, "cone_to_quotient: cone flavor required");
    require(h.cone->phi == pair->incl, "cone_to_quotient: pair must match the cone");
    QCochain cov = covariant_derivative(h);
    require(cov.is_zero(), "cone_to_quotient: character is not parallel");
    int k = h.k;
    ConeCochain c = h.c_cone();
    QConeCochain lift = h.lift_cone();
    QConeCochain curv = h.curv_cone();
    // gauge the triple into the image of the quotient cochains:
    //   c_bar = c_X - delta(ext(c_A)),  l_bar = l_X + ext(c_A) - delta(ext(l_A))
    ZCochain ext_ca = extend_by_zero(*pair, c.a);
    QCochain ext_la = extend_by_zero(*pair, lift.a);
    ZCochain c_bar = c.x - coboundary(ext_ca);
    QCochain l_bar = lift.x + to_rational(ext_ca) - coboundary(ext_la);
    QCochain w_bar = curv.x;
    return make_char(pair, k, pair->reduce(c_bar), pair->reduce(l_bar), pair->reduce(w_bar));
}

// --- Hopkins-Singer subgroup and quotient ----------------------------------

/// h lies in the subgroup H_0 iff its covariant derivative is closed with
/// integral periods on Z_{k-1}(A).
inline bool hs_in_H0(const CharTriple& h) {
    require(h.flavor == Flavor::cone, "hs_in_H0: cone flavor required");
    QCochain cov = covariant_derivative(h);
    if (!coboundary(cov).is_zero())
        return false;
    const ComplexData& ad = h.cone->a_ctx->data;
    return ad.integral_periods(h.cone->a_ctx->encode_rat(cov), h.k - 1);
}

/// Equality in the Hopkins-Singer quotient: h1 - h2 must equal
/// iota_phi(omega, 0) for some closed omega on X with integral periods.
/// Decided as a rational/integral linear feasibility problem.
inline bool hs_equal(const CharTriple& h1, const CharTriple& h2) {
    require(h1.same_group(h2) && h1.flavor == Flavor::cone, "hs_equal: group mismatch");
    require(hs_in_H0(h1) && hs_in_H0(h2), "hs_equal: characters must lie in H_0");
    CharTriple diff = h1 - h2;
    const ConeCtxPtr& ctx = h1.cone;
    int k = h1.k;
    QConeCochain dcurv = ctx->decode_cochain(diff.curv, k);
    if (!dcurv.x.is_zero())
        return false;
    const AbsContext& xc = *ctx->x_ctx;
    int dimw = xc.data.dim(k - 1);
    // rational constraints on omega: delta omega = 0 and phi^* omega = dcov
    IntMatrix delta = xc.data.delta(k - 1);
    IntMatrix pull = pushforward_matrix(*ctx->phi, k - 1).transpose();
    int rows = delta.rows() + pull.rows();
    RatMatrix a(rows, RatVec(dimw, 0));
    RatVec rhs(rows, 0);
    for (int r = 0; r < delta.rows(); ++r)
        for (const auto& [cc, v] : delta.row(r))
            a[r][cc] = Rational(v);
    RatVec dcov = ctx->a_ctx->encode_rat(dcurv.a);
    for (int r = 0; r < pull.rows(); ++r) {
        for (const auto& [cc, v] : pull.row(r))
            a[delta.rows() + r][cc] = Rational(v);
        rhs[delta.rows() + r] = dcov[r];
    }
    std::optional<RatVec> omega0;
    std::vector<RatVec> kern;
    if (rows == 0) {
        omega0 = RatVec(dimw, 0);
        for (int j = 0; j < dimw; ++j) {
            RatVec e(dimw, 0);
            e[j] = 1;
            kern.push_back(e);
        }
    } else {
        omega0 = solve_rational(a, rhs);
        if (!omega0)
            return false;
        kern = rational_kernel_basis(a);
    }
    // integrality constraints: on cone cycles, periods of (dlift - (omega,0))
    // must be integers; on X cycles, periods of omega must be integers.
    const auto& cone_cycles = ctx->data.cycle_basis(k - 1);
    const auto& x_cycles = xc.data.cycle_basis(k - 1);
    int m = static_cast<int>(cone_cycles.size() + x_cycles.size());
    auto eval_l = [&](const RatVec& omega) {
        RatVec y(m, 0);
        int dx = ctx->x_dim(k - 1);
        for (size_t i = 0; i < cone_cycles.size(); ++i) {
            Rational v = 0;
            for (int j = 0; j < ctx->data.dim(k - 1); ++j)
                if (cone_cycles[i][j] != 0)
                    v += Rational(cone_cycles[i][j]) *
                         (diff.lift[j] - (j < dx ? omega[j] : Rational(0)));
            y[i] = v;
        }
        for (size_t i = 0; i < x_cycles.size(); ++i) {
            Rational v = 0;
            for (int j = 0; j < dimw; ++j)
                if (x_cycles[i][j] != 0)
                    v += Rational(x_cycles[i][j]) * omega[j];
            y[cone_cycles.size() + i] = v;
        }
        return y;
    };
    RatVec y0 = eval_l(*omega0);
    std::vector<RatVec> cols;
    RatVec zero_omega(dimw, 0);
    RatVec base = eval_l(zero_omega);
    for (const auto& w : kern) {
        RatVec yw = eval_l(w);
        RatVec col(m, 0);
        for (int i = 0; i < m; ++i)
            col[i] = yw[i] - base[i]; // linear part of the affine map
        cols.push_back(col);
    }
    return integer_point_in_affine(cols, y0).has_value();
}

} // namespace relchar
