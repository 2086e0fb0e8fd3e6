#include <catch2/catch_amalgamated.hpp>

#include <padiclf/zmod.hpp>
#include <padiclf/quadext.hpp>
#include <padiclf/quadratic_number.hpp>
#include <padiclf/cyclotomic.hpp>

#include <random>

using namespace padiclf;

TEST_CASE("p = 2 is rejected, odd primes accepted") {
    CHECK_THROWS_AS(PadicCtx(2, 5), precondition_error);
    CHECK_THROWS_AS(PadicCtx(9, 5), precondition_error);
    CHECK_NOTHROW(PadicCtx(3, 20));
    CHECK_NOTHROW(PadicCtx(7, 20));
}

TEST_CASE("valuations of scalars") {
    for (long p : {3L, 5L, 7L, 13L}) {
        const PadicCtx* C = detail::intern_ctx(p, 10);
        CHECK(Zp::from(C, p).valuation() == Val::exact(QQ(1)));
        CHECK(Zp::one(C).valuation() == Val::exact(QQ(0)));
        CHECK(Zp::zero(C).valuation() == Val::bounded_below(QQ(10)));
    }
    const PadicCtx* C5 = detail::intern_ctx(5, 10);
    CHECK(Zp::from(C5, 1).valuation() == Val::exact(QQ(0)));

    // alpha a root of X^2 + 5: v_5(alpha) = 1/2
    const QuadCtx* Q = detail::intern_quad_ctx(5, 10, 0, 5);
    Qp2 alpha = Qp2::root(Q);
    CHECK(alpha.valuation() == Val::exact(QQ(1, 2)));
    CHECK((alpha * alpha).valuation() == Val::exact(QQ(1)));
    // additivity where determined
    Qp2 x = Qp2::from(Q, 3, 1);
    CHECK((x * alpha).valuation().v == x.valuation().v + QQ(1, 2));
}

TEST_CASE("teichmuller lifts") {
    const PadicCtx* C = detail::intern_ctx(5, 3);
    CHECK(teichmuller(C, 1) == Zp::one(C));
    Zp w = teichmuller(C, 2);
    CHECK(w.lift() % 5 == 2);
    CHECK(w.pow(4) == Zp::one(C));
    // uniqueness: the only x mod 125 with x^4 = 1 and x = 2 mod 5
    int count = 0;
    for (uint64_t x = 0; x < 125; ++x)
        if (x % 5 == 2 && Zp(C, x).pow(4) == Zp::one(C)) ++count;
    CHECK(count == 1);

    for (long p : {3L, 5L, 7L}) {
        const PadicCtx* Cp = detail::intern_ctx(p, 8);
        CHECK(teichmuller(Cp, p - 1).lift() == Cp->pN - 1);  // omega(-1) = -1
        CHECK_THROWS_AS(teichmuller(Cp, p), precondition_error);
    }
}

TEST_CASE("hensel unit roots of Hecke polynomials") {
    SECTION("p=5, k=0, a_p=1") {
        const PadicCtx* C = detail::intern_ctx(5, 20);
        auto r = hensel_unit_root(C, 1, 0);
        CHECK(r.alpha.lift() % 5 == 1);
        CHECK(r.alpha * r.beta == Zp::from(C, 5));
        CHECK(r.alpha + r.beta == Zp::one(C));
        CHECK((r.alpha * r.alpha - r.alpha + Zp::from(C, 5)).is_zero());
        CHECK(r.beta_val == 1);
    }
    SECTION("p=3, k=0, a_p=-1") {
        const PadicCtx* C = detail::intern_ctx(3, 20);
        auto r = hensel_unit_root(C, -1, 0);
        CHECK(r.alpha.lift() % 3 == 2);
        CHECK((r.alpha * r.alpha + r.alpha + Zp::from(C, 3)).is_zero());
    }
    SECTION("a_p = 1+p accepted, multiples of p rejected") {
        const PadicCtx* C = detail::intern_ctx(5, 12);
        CHECK_NOTHROW(hensel_unit_root(C, 6, 0));
        CHECK(hensel_unit_root(C, 6, 0).alpha.is_unit());
        CHECK_THROWS_AS(hensel_unit_root(C, 10, 0), precondition_error);
    }
}

TEST_CASE("ring axioms on random samples") {
    std::mt19937_64 rng(12345);
    const PadicCtx* C = detail::intern_ctx(7, 12);
    const QuadCtx* Q = detail::intern_quad_ctx(7, 12, 1, 7);
    auto rnd = [&]() { return Zp(C, rng() % C->pN); };
    auto rndq = [&]() { return Qp2(Q, rng() % C->pN, rng() % C->pN); };
    for (int i = 0; i < 200; ++i) {
        Zp a = rnd(), b = rnd(), c = rnd();
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        Qp2 x = rndq(), y = rndq(), z = rndq();
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x * y == y * x);
    }
    // division only by units
    CHECK_THROWS_AS(Zp::from(C, 7).inv(), precondition_error);
    CHECK_THROWS_AS(Qp2::from(Q, 7, 7).inv(), precondition_error);
    CHECK(Zp::from(C, 3) * Zp::from(C, 3).inv() == Zp::one(C));
}

TEST_CASE("quadext conjugation and norm") {
    const QuadCtx* Q = detail::intern_quad_ctx(5, 15, 2, 5);  // X^2 = 2X - 5
    std::mt19937_64 rng(99);
    for (int i = 0; i < 100; ++i) {
        Qp2 x(Q, rng() % Q->base->pN, rng() % Q->base->pN);
        Qp2 y(Q, rng() % Q->base->pN, rng() % Q->base->pN);
        CHECK((x * y).conj() == x.conj() * y.conj());
        CHECK((x * x.conj()).c1() == 0);  // norms land in the base
        CHECK((x + x.conj()).c1() == 0);  // traces land in the base
    }
    Qp2 r = Qp2::root(Q);
    CHECK((r * r - Qp2::from(Q, 2) * r + Qp2::from(Q, 5)).is_zero());
}

TEST_CASE("cyclotomic ring basics") {
    // zeta_m^m = 1 after reduction
    for (long m : {3L, 4L, 5L, 12L, 20L, 45L}) {
        auto z = CycloZZ::root_of_unity(m, 1, ZZ(0));
        auto pw = CycloZZ::from_const(m, ZZ(1));
        for (long i = 0; i < m; ++i) pw = pw * z;
        CHECK(pw == CycloZZ::from_const(m, ZZ(1)));
    }
    // conjugation is a ring involution; multiplication commutes/associates
    std::mt19937_64 rng(7);
    long m = 36;
    auto rnd = [&]() {
        CycloZZ a = CycloZZ::zero(m, ZZ(0));
        for (size_t i = 0; i < (size_t)a.deg(); ++i) a.at(i) = ZZ((long)(rng() % 19) - 9);
        return a;
    };
    for (int i = 0; i < 50; ++i) {
        CycloZZ a = rnd(), b = rnd(), c = rnd();
        CHECK((a * b).conj() == a.conj() * b.conj());
        CHECK(a.conj().conj() == a);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
    // extend_to is a ring map
    for (int i = 0; i < 20; ++i) {
        CycloZZ a = rnd(), b = rnd();
        CHECK((a * b).extend_to(72) == a.extend_to(72) * b.extend_to(72));
    }
    // galois action: zeta -> zeta^s is a ring automorphism
    for (long s : {5L, 7L, 11L, 35L}) {
        CycloZZ a = rnd(), b = rnd();
        CHECK((a * b).galois(s) == a.galois(s) * b.galois(s));
    }
}

TEST_CASE("reduction mod p^N of exact cyclotomic elements") {
    const PadicCtx* C = detail::intern_ctx(5, 8);
    CycloZZ a = CycloZZ::root_of_unity(12, 7, ZZ(0)) * ZZ(126);
    auto ar = reduce_mod(a, C);
    CHECK(ar.conductor() == 12);
    // homomorphism on a couple of products
    CycloZZ b = CycloZZ::root_of_unity(12, 5, ZZ(0)) + CycloZZ::from_const(12, ZZ(3));
    CHECK(reduce_mod(a * b, C) == reduce_mod(a, C) * reduce_mod(b, C));
}
