#pragma once

// Deterministic samplers for characters, forms and cycles, shared by the
// unit tests and the CLI verification suites.  Sampling follows the exact
// sequences: class + curvature part, flat part, iota part, so repeated
// draws reach the whole character group.

#include "relchar/characters.hpp"

namespace relchar::sampling {

inline RatVec random_form(Rng& rng, const ComplexData& d, int n) {
    RatVec v(d.dim(n), 0);
    for (auto& x : v)
        x = rng.small_rational();
    return v;
}

/// Random closed form with integral periods: integral cocycle plus a
/// rational coboundary.
inline RatVec random_integral_period_form(Rng& rng, const ComplexData& d, int n) {
    RatVec v(d.dim(n), 0);
    auto lattice = kernel_basis(d.delta(n));
    for (const auto& z : lattice) {
        Integer a = rng.small_int(2);
        if (a == 0)
            continue;
        for (size_t i = 0; i < z.size(); ++i)
            v[i] += Rational(a * z[i]);
    }
    RatVec db = d.apply_delta(random_form(rng, d, n - 1), n - 1);
    for (size_t i = 0; i < db.size(); ++i)
        v[i] += db[i];
    return v;
}

inline ClassCoordinates random_class(Rng& rng, const FgAbPresentation& pres) {
    ClassCoordinates cc;
    cc.free_part.resize(pres.free_rank);
    for (auto& v : cc.free_part)
        v = rng.small_int(2);
    cc.torsion_part.resize(pres.torsion_orders.size());
    for (size_t j = 0; j < cc.torsion_part.size(); ++j)
        cc.torsion_part[j] = Integer(rng.range(0, static_cast<long long>(pres.torsion_orders[j]) - 1));
    return cc;
}

/// Random Q/Z-valued hom on H_n realized as a rational cochain with
/// integral coboundary.
inline RatVec random_qz_cocycle(Rng& rng, const ComplexData& d, int n) {
    const FgAbPresentation& pres = d.homology(n);
    RatVec fv(pres.free_rank, 0);
    for (auto& v : fv)
        v = rng.small_rational();
    RatVec tv(pres.torsion_orders.size(), 0);
    for (size_t j = 0; j < tv.size(); ++j) {
        long long nj = static_cast<long long>(pres.torsion_orders[j]);
        tv[j] = Rational(rng.range(0, nj - 1), nj);
    }
    return qz_cocycle(d, n, fv, tv);
}

/// Random character: prescribed random class and curvature, plus flat and
/// topologically trivial noise.
template <class Ctx> CharTriple random_character(Rng& rng, const Ctx& ctx, int k) {
    const ComplexData& d = ctx->data;
    ClassCoordinates cc = random_class(rng, d.cohomology(k));
    IntVec c = representative(d.cohomology(k), cc);
    RatVec curv(d.dim(k), 0);
    for (size_t i = 0; i < curv.size(); ++i)
        curv[i] = Rational(c[i]);
    RatVec db = d.apply_delta(random_form(rng, d, k - 1), k - 1);
    for (size_t i = 0; i < db.size(); ++i)
        curv[i] += db[i];
    auto h = char_with_curv_class(ctx, k, curv, cc);
    require(h.has_value(), "random_character: construction failed");
    CharTriple flat = j_char(ctx, k, random_qz_cocycle(rng, d, k - 1));
    CharTriple noise = iota(ctx, k, random_form(rng, d, k - 1));
    return *h + flat + noise;
}

/// Random flat character (curvature zero).
template <class Ctx> CharTriple random_flat_character(Rng& rng, const Ctx& ctx, int k) {
    return j_char(ctx, k, random_qz_cocycle(rng, ctx->data, k - 1));
}

/// Random cycle of degree n (integer combination of the cycle basis).
inline IntVec random_cycle(Rng& rng, const ComplexData& d, int n, long long bound = 2) {
    IntVec v(d.dim(n), 0);
    for (const auto& z : d.cycle_basis(n)) {
        Integer a = rng.small_int(bound);
        if (a == 0)
            continue;
        for (size_t i = 0; i < z.size(); ++i)
            v[i] += a * z[i];
    }
    return v;
}

/// A random gauge-equivalent presentation of the same character:
/// (c + delta b, lift - b - delta s, curv).
inline CharTriple random_gauge_perturbation(Rng& rng, const CharTriple& h) {
    const ComplexData& d = h.data();
    int k = h.k;
    IntVec b(d.dim(k - 1), 0);
    for (auto& v : b)
        v = rng.small_int(2);
    RatVec s = random_form(rng, d, k - 2);
    CharTriple r = h;
    IntVec db = d.apply_delta(b, k - 1);
    for (size_t i = 0; i < r.c.size(); ++i)
        r.c[i] += db[i];
    RatVec ds = d.apply_delta(s, k - 2);
    for (size_t i = 0; i < r.lift.size(); ++i)
        r.lift[i] -= Rational(b[i]) + ds[i];
    return r;
}

} // namespace relchar::sampling
