#include <doctest.h>

#include "relchar/fixtures.hpp"
#include "relchar/kunneth.hpp"
#include "test_util.hpp"

using namespace relchar;
using namespace relchar::fixtures;
namespace smp = relchar::sampling;
using relchar::testutil::random_chain;

namespace {

struct CrossFixture {
    SetPtr s1 = circle3();
    SetPtr s16 = circle6();
    MapPtr phi = degree2_map(s16, s1);
    ConeCtxPtr cone = ConeContext::make(phi);
    AbsCtxPtr xp = AbsContext::make(s1); // X' is the same circle
    CrossCtxPtr cc = ConeCrossContext::make(cone, xp);
};

ConeChain random_cone_chain(Rng& rng, const MapPtr& phi, int n) {
    ZChain x = random_chain(rng, phi->target(), n);
    ZChain a = n >= 1 ? random_chain(rng, phi->source(), n - 1) : ZChain(phi->source(), 0);
    return {phi, x, a};
}

} // namespace

TEST_CASE("cone_ez is componentwise and cone_aw inverts it") {
    CrossFixture f;
    Rng rng(31);
    // ((s, 0) (x) z') -> (ez(s (x) z'), 0)
    ZChain s = random_chain(rng, f.s1, 1);
    ZChain zp = random_chain(rng, f.xp->space, 1);
    ConeChain cs{f.phi, s, ZChain(f.s16, 0)};
    ConeChain img = cone_ez(*f.cc, cone_tensor_of(cs, zp));
    CHECK(img.x == ez(f.cc->xxp, tensor_of(s, zp)));
    CHECK(img.a.is_zero());
    // ((0, t) (x) z') -> (0, ez(t (x) z'))
    ZChain t = random_chain(rng, f.s16, 1);
    ConeChain ct{f.phi, ZChain(f.s1, 2), t};
    ConeChain img2 = cone_ez(*f.cc, cone_tensor_of(ct, zp));
    CHECK(img2.x.is_zero());
    CHECK(img2.a == ez(f.cc->axp, tensor_of(t, zp)));
    // roundtrip on random tensors
    for (int iter = 0; iter < 25; ++iter) {
        int n = static_cast<int>(rng.range(1, 2));
        int q = static_cast<int>(rng.range(0, 1));
        ConeChain c = random_cone_chain(rng, f.phi, n);
        ZChain z = random_chain(rng, f.xp->space, q);
        ZConeTensor tz = cone_tensor_of(c, z);
        CHECK(cone_aw(*f.cc, cone_ez(*f.cc, tz)) == tz);
    }
}

TEST_CASE("cone_ez is a chain map for the tensor differential") {
    CrossFixture f;
    Rng rng(32);
    for (int iter = 0; iter < 25; ++iter) {
        int n = static_cast<int>(rng.range(1, 2));
        int q = static_cast<int>(rng.range(0, 1));
        ConeChain c = random_cone_chain(rng, f.phi, n);
        ZChain z = random_chain(rng, f.xp->space, q);
        if (n + q < 1)
            continue;
        // boundary of the image
        ConeChain img = cone_ez(*f.cc, cone_tensor_of(c, z));
        ConeChain lhs = cone_boundary(img);
        // image of the tensor boundary: del_phi(c) (x) z + (-1)^n c (x) del z
        ConeChain rhs = cone_zero_chain<Integer>(f.cc->phi_x_id, n + q - 1);
        if (n >= 1) {
            ConeChain bc = cone_boundary(c);
            rhs = rhs + cone_ez(*f.cc, cone_tensor_of(bc, z));
        }
        if (q >= 1) {
            ConeChain term = cone_ez(*f.cc, cone_tensor_of(c, boundary(z)));
            rhs = (n % 2 == 0) ? rhs + term : rhs - term;
        }
        CHECK(lhs == rhs);
    }
}

TEST_CASE("ez is strictly associative under the reassociation map") {
    auto s1 = circle3();
    auto a = circle6();
    auto ab = product_space(a, s1);
    auto bc = product_space(s1, s1);
    auto ab_c = product_space(ab, s1);
    auto a_bc = product_space(a, bc);
    auto assoc = assoc_map(ab_c, a_bc);
    Rng rng(33);
    for (int iter = 0; iter < 20; ++iter) {
        ZChain x = random_chain(rng, a, static_cast<int>(rng.range(0, 1)));
        ZChain y = random_chain(rng, s1, static_cast<int>(rng.range(0, 1)));
        ZChain z = random_chain(rng, s1, static_cast<int>(rng.range(0, 1)));
        ZChain lhs = ez(ab_c, tensor_of(ez(ab, tensor_of(x, y)), z));
        ZChain rhs = ez(a_bc, tensor_of(x, ez(bc, tensor_of(y, z))));
        CHECK(pushforward(*assoc, lhs) == rhs);
    }
}

TEST_CASE("ez satisfies the swap rule with the Koszul sign") {
    auto s1 = circle3();
    auto s16 = circle6();
    auto ab = product_space(s16, s1);
    auto ba = product_space(s1, s16);
    auto swap = swap_map(ab, ba);
    Rng rng(34);
    for (int iter = 0; iter < 20; ++iter) {
        int p = static_cast<int>(rng.range(0, 1));
        int q = static_cast<int>(rng.range(0, 1));
        ZChain x = random_chain(rng, s16, p);
        ZChain y = random_chain(rng, s1, q);
        ZChain lhs = pushforward(*swap, ez(ab, tensor_of(x, y)));
        ZChain rhs = ez(ba, tensor_of(y, x));
        if ((p * q) % 2 != 0)
            rhs = -rhs;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("kunneth split: X' = PT gives an exact splitting (no complement)") {
    auto s1 = circle3();
    auto s16 = circle6();
    auto cone = ConeContext::make(degree2_map(s16, s1));
    auto cc = ConeCrossContext::make(cone, AbsContext::make(point()));
    for (int n = 1; n <= 2; ++n) {
        KunnethSplit split = build_kunneth_split(cc, n);
        for (const auto& r : split.remainders)
            for (const auto& v : r)
                CHECK(v == 0);
        // S K = id on the tensor basis
        for (size_t t = 0; t < split.tensor_basis.size(); ++t) {
            IntVec e(split.tensor_basis.size(), 0);
            e[t] = 1;
            CHECK(split.s_of(split.k_of(e)) == e);
        }
    }
}

TEST_CASE("kunneth split for (DEG2, S1): S K = id and torsion witnesses") {
    CrossFixture f;
    for (int n = 2; n <= 3; ++n) {
        KunnethSplit split = build_kunneth_split(f.cc, n);
        // S . K = id on the full tensor basis (eq. of the splitting)
        for (size_t t = 0; t < split.tensor_basis.size(); ++t) {
            IntVec e(split.tensor_basis.size(), 0);
            e[t] = 1;
            CHECK(split.s_of(split.k_of(e)) == e);
        }
        // every complement cycle's witness is valid: bnd(w) = N r
        const ComplexData& big = f.cc->big->data;
        for (size_t m = 0; m < split.remainders.size(); ++m) {
            IntVec bw = big.apply_bnd(split.witness_chains[m], n + 1);
            for (size_t i = 0; i < bw.size(); ++i)
                CHECK(bw[i] == split.witness_orders[m] * split.remainders[m][i]);
            CHECK(split.witness_orders[m] >= 1);
            CHECK(2 % split.witness_orders[m] == 0); // N in {1, 2}
        }
        // X' = S1 has free homology, so the complement is null-homologous
        for (const auto& o : split.witness_orders)
            CHECK(o == 1);
    }
}

TEST_CASE("kunneth split with a 2-torsion factor has order-2 complement witnesses") {
    auto s1 = circle3();
    auto s16 = circle6();
    auto cone = ConeContext::make(degree2_map(s16, s1));
    auto moore = AbsContext::make(moore2());
    auto cc = ConeCrossContext::make(cone, moore);
    // Tor(H_1(phi), H_1(X'))_2 = Tor(Z/2, Z/2) = Z/2 sits in degree 3
    KunnethSplit split = build_kunneth_split(cc, 3);
    const ComplexData& big = cc->big->data;
    bool has2 = false;
    for (size_t m = 0; m < split.remainders.size(); ++m) {
        IntVec bw = big.apply_bnd(split.witness_chains[m], 4);
        for (size_t i = 0; i < bw.size(); ++i)
            CHECK(bw[i] == split.witness_orders[m] * split.remainders[m][i]);
        has2 |= (split.witness_orders[m] == 2);
    }
    CHECK(has2);
    for (size_t t = 0; t < split.tensor_basis.size(); ++t) {
        IntVec e(split.tensor_basis.size(), 0);
        e[t] = 1;
        CHECK(split.s_of(split.k_of(e)) == e);
    }
    // the cross formula agrees with the construction here too, exercising
    // the order-2 witness branch
    Rng rng(77);
    CharTriple h = smp::random_character(rng, cone, 2);
    CharTriple hp = smp::random_character(rng, moore, 2);
    CharTriple x = cross_char(*cc, h, hp);
    for (const auto& z : big.cycle_basis(3))
        CHECK(evaluate(x, z) == cross_formula_eval(h, hp, split, z));
}

TEST_CASE("cross_char: triple identity, curvature multiplicativity, bilinearity") {
    CrossFixture f;
    Rng rng(35);
    CharTriple h = smp::random_character(rng, f.cone, 2);
    CharTriple hp = smp::random_character(rng, f.xp, 2);
    // construction validates delta(lift_x) = curv_x - c_x (the sign test)
    CharTriple x = cross_char(*f.cc, h, hp);
    CHECK(x.k == 4);
    // curvature multiplicativity, exact at cochain level
    QConeCochain expected =
        cone_cross_cochain(*f.cc, h.curv_cone(), hp.curv_abs());
    CHECK(x.curv == f.cc->big->encode_rat(expected));
    // h x 0 = 0 and additivity in the first slot
    CHECK(is_zero_char(cross_char(*f.cc, h, zero_char(f.xp, 2))));
    CHECK(is_zero_char(cross_char(*f.cc, zero_char(f.cone, 2), hp)));
    CharTriple h2 = smp::random_character(rng, f.cone, 2);
    CharTriple lhs = cross_char(*f.cc, h + h2, hp);
    CharTriple rhs = cross_char(*f.cc, h, hp) + cross_char(*f.cc, h2, hp);
    CHECK(equals(lhs, rhs));
}

TEST_CASE("cross_char equals cross_formula_eval on the full cycle basis") {
    CrossFixture f;
    Rng rng(36);
    KunnethSplit split = build_kunneth_split(f.cc, 3);
    const auto& basis = f.cc->big->data.cycle_basis(3);
    for (int iter = 0; iter < 3; ++iter) {
        CharTriple h = smp::random_character(rng, f.cone, 2);
        CharTriple hp = smp::random_character(rng, f.xp, 2);
        CharTriple x = cross_char(*f.cc, h, hp);
        for (const auto& z : basis)
            CHECK(evaluate(x, z) == cross_formula_eval(h, hp, split, z));
    }
    // the same for the identity map (trivial cone homology)
    auto cone_id = ConeContext::make(identity_map(f.s1));
    auto cc_id = ConeCrossContext::make(cone_id, f.xp);
    KunnethSplit split_id = build_kunneth_split(cc_id, 3);
    const auto& basis_id = cc_id->big->data.cycle_basis(3);
    CharTriple h = smp::random_character(rng, cone_id, 2);
    CharTriple hp = smp::random_character(rng, f.xp, 2);
    CharTriple x = cross_char(*cc_id, h, hp);
    for (const auto& z : basis_id)
        CHECK(evaluate(x, z) == cross_formula_eval(h, hp, split_id, z));
}

TEST_CASE("iota is multiplicative for the cross product") {
    CrossFixture f;
    Rng rng(37);
    RatVec form = smp::random_form(rng, f.cone->data, 1);
    CharTriple hp = smp::random_character(rng, f.xp, 2);
    CharTriple lhs = cross_char(*f.cc, iota(f.cone, 2, form), hp);
    // (omega, theta) x curv(h') at cochain level
    QConeCochain fc = f.cone->decode_cochain(form, 1);
    QConeCochain crossed = cone_cross_cochain(*f.cc, fc, hp.curv_abs());
    CharTriple rhs = iota(f.cc->big, 4, f.cc->big->encode_rat(crossed));
    CHECK(equals(lhs, rhs));
}

TEST_CASE("characteristic class of a cross is the cross of the classes") {
    CrossFixture f;
    Rng rng(38);
    CharTriple h = smp::random_character(rng, f.cone, 2);
    CharTriple hp = smp::random_character(rng, f.xp, 2);
    // perturb the representatives; the class coordinates must agree with
    // the cross of the original cocycles
    CharTriple hg = smp::random_gauge_perturbation(rng, h);
    CharTriple hpg = smp::random_gauge_perturbation(rng, hp);
    CharTriple x1 = cross_char(*f.cc, h, hp);
    CharTriple x2 = cross_char(*f.cc, hg, hpg);
    CHECK(equals(x1, x2));
    CHECK(characteristic_class(x1).coords == characteristic_class(x2).coords);
}

TEST_CASE("breve maps are multiplicative for the cross product") {
    CrossFixture f;
    Rng rng(39);
    // ti_mult: breve_i(h) x h' = breve_i(h x h')
    CharTriple h_on_a = smp::random_character(rng, f.cone->a_ctx, 1);
    CharTriple hp = smp::random_character(rng, f.xp, 2);
    CharTriple lhs = cross_char(*f.cc, breve_i(h_on_a, f.cone), hp);
    auto axp_ctx = AbsContext::make(f.cc->axp);
    CharTriple ha_cross = cross_abs(axp_ctx, h_on_a, hp);
    CharTriple rhs = breve_i(ha_cross, f.cc->big);
    CHECK(equals(lhs, rhs));
    // vds_mult: breve_p(h x h') = breve_p(h) x h'
    CharTriple hc = smp::random_character(rng, f.cone, 2);
    auto xxp_ctx = AbsContext::make(f.cc->xxp);
    CharTriple lhs2 = breve_p(cross_char(*f.cc, hc, hp), xxp_ctx);
    CharTriple rhs2 = cross_abs(xxp_ctx, breve_p(hc, f.cone->x_ctx), hp);
    CHECK(equals(lhs2, rhs2));
}

TEST_CASE("cross product is natural") {
    CrossFixture f;
    Rng rng(40);
    // second factor mapped along the double cover p: S1_6 -> S1
    auto yp = AbsContext::make(f.s16);
    auto p = degree2_map(f.s16, f.s1);
    auto cc_y = ConeCrossContext::make(f.cone, yp);
    // (id, id) x p : cone(phi x id_{S1_6}) -> cone(phi x id_{S1})
    auto fmap = product_map("idxp", identity_map(f.s1), p, cc_y->xxp, f.cc->xxp);
    auto gmap = product_map("idxp_a", identity_map(f.s16), p, cc_y->axp, f.cc->axp);
    CharTriple h = smp::random_character(rng, f.cone, 2);
    CharTriple hp = smp::random_character(rng, f.xp, 2);
    CharTriple big = cross_char(*f.cc, h, hp);
    CharTriple lhs = pullback_char(big, fmap, gmap, cc_y->big);
    CharTriple rhs = cross_char(*cc_y, h, pullback_char(hp, p, yp));
    CHECK(equals(lhs, rhs));
}

TEST_CASE("cross product formula on split cycles of products (eq:xx branches)") {
    Rng rng(41);
    auto s1 = circle3();
    auto torus = product_space(s1, s1);
    auto s1_ctx = AbsContext::make(s1);
    auto t2_ctx = AbsContext::make(torus);
    ZChain z1 = circle3_cycle(s1);
    ZChain z2 = ez(torus, tensor_of(circle3_cycle(s1), circle3_cycle(s1)));

    // branch (k-1, k'): X = S1 (flat h, value t), X' = T^2 (class n on [T^2])
    {
        auto prod = product_space(s1, torus);
        auto prod_ctx = AbsContext::make(prod);
        RatVec u = qz_cocycle(s1_ctx->data, 1, {Rational(1, 3)}, {});
        CharTriple h = j_char(s1_ctx, 2, u);
        // the hom takes value 1/3 on the presentation generator, which is
        // the fundamental cycle up to sign
        CHECK((evaluate(h, z1).value() == Rational(1, 3) ||
               evaluate(h, z1).value() == Rational(2, 3)));
        ClassCoordinates cc = smp::random_class(rng, t2_ctx->data.cohomology(2));
        cc.free_part[0] = 2;
        IntVec crep = representative(t2_ctx->data.cohomology(2), cc);
        RatVec curv(t2_ctx->data.dim(2));
        for (size_t i = 0; i < curv.size(); ++i)
            curv[i] = Rational(crep[i]);
        auto hp = char_with_curv_class(t2_ctx, 2, curv, cc);
        REQUIRE(hp.has_value());
        Integer pairing = 0;
        IntVec z2v = chain_to_vector(z2);
        for (size_t i = 0; i < z2v.size(); ++i)
            pairing += hp->c[i] * z2v[i];
        CharTriple x = cross_abs(prod_ctx, h, *hp);
        ZChain zz = ez(prod, tensor_of(z1, z2));
        CircleValue got = evaluate(x, prod_ctx->encode(zz));
        CHECK(got == evaluate(h, z1) * pairing);
        CHECK(!got.is_zero());
    }
    // branch (k, k'-1): X = T^2, X' = S1
    {
        auto prod = product_space(torus, s1);
        auto prod_ctx = AbsContext::make(prod);
        ClassCoordinates cc = smp::random_class(rng, t2_ctx->data.cohomology(2));
        cc.free_part[0] = 1;
        IntVec crep = representative(t2_ctx->data.cohomology(2), cc);
        RatVec curv(t2_ctx->data.dim(2));
        for (size_t i = 0; i < curv.size(); ++i)
            curv[i] = Rational(crep[i]);
        auto h = char_with_curv_class(t2_ctx, 2, curv, cc);
        REQUIRE(h.has_value());
        RatVec u = qz_cocycle(s1_ctx->data, 1, {Rational(1, 4)}, {});
        CharTriple hp = j_char(s1_ctx, 2, u);
        Integer pairing = 0;
        IntVec z2v = chain_to_vector(z2);
        for (size_t i = 0; i < z2v.size(); ++i)
            pairing += h->c[i] * z2v[i];
        // (-1)^k with k = 2: positive
        CharTriple x = cross_abs(prod_ctx, *h, hp);
        ZChain zz = ez(prod, tensor_of(z2, z1));
        CircleValue got = evaluate(x, prod_ctx->encode(zz));
        CHECK(got == evaluate(hp, z1) * pairing);
        CHECK(!got.is_zero());
    }
    // branch "otherwise": with both factors 1-dimensional and k = k' = 2
    // no cycle degree matches the special branches, and indeed the whole
    // degree-4 product group on S1 x S1 is trivial
    {
        auto prod = product_space(s1, s1);
        auto prod_ctx = AbsContext::make(prod);
        RatVec u = qz_cocycle(s1_ctx->data, 1, {Rational(1, 3)}, {});
        CharTriple h = j_char(s1_ctx, 2, u);
        CharTriple hp = j_char(s1_ctx, 2, u);
        CharTriple x = cross_abs(prod_ctx, h, hp);
        CHECK(is_zero_char(x));
    }
}

TEST_CASE("cross associativity after reassociation (group-level identity)") {
    // with degree-2 factors the product group in degree 6 is trivial at
    // this scale; the identity is asserted through equals() after
    // transporting along the canonical reassociation of the product
    auto s1 = circle3();
    auto pt = point();
    auto incl = point_in_circle(pt, s1);
    auto cone = ConeContext::make(incl);
    auto s1b = AbsContext::make(circle3());
    auto s1c = AbsContext::make(circle3());
    auto cc1 = ConeCrossContext::make(cone, s1b); // cone(phi x id_B)
    auto cc12 = ConeCrossContext::make(cc1->big, s1c);
    auto bc = AbsContext::make(product_space(s1b->space, s1c->space));
    auto cc2 = ConeCrossContext::make(cone, bc);
    Rng rng(42);
    CharTriple h = smp::random_character(rng, cone, 2);
    CharTriple hb = smp::random_character(rng, s1b, 2);
    CharTriple hc = smp::random_character(rng, s1c, 2);
    CharTriple lhs = cross_char(*cc12, cross_char(*cc1, h, hb), hc);
    CharTriple inner = cross_abs(bc, hb, hc);
    CharTriple rhs = cross_char(*cc2, h, inner);
    // transport rhs to the nested bracketing
    auto fx = assoc_map(cc12->xxp, cc2->xxp);
    auto ga = assoc_map(cc12->axp, cc2->axp);
    CharTriple rhs_t = pullback_char(rhs, fx, ga, cc12->big);
    CHECK(equals(lhs, rhs_t));
}
