#include <catch2/catch_amalgamated.hpp>

#include <padiclf/quadfield.hpp>

using namespace padiclf;

TEST_CASE("kronecker characters of imaginary quadratic fields") {
    SECTION("d = 4 (Gaussian field)") {
        auto chi = kronecker_character(4);
        CHECK(chi.value_exp(1) == 0);
        CHECK(*chi.value_exp(3) == 1);  // chi(3) = -1
        CHECK(chi.order() == 2);
        CHECK(chi.sign() == -1);
    }
    SECTION("d = 3") {
        auto chi = kronecker_character(3);
        CHECK(*chi.value_exp(2) == 1);  // chi(2) = -1
    }
    SECTION("odd character for every fundamental d") {
        for (long d : {3L, 4L, 7L, 8L, 11L, 15L, 19L, 20L, 23L, 24L}) {
            auto chi = kronecker_character(d);
            CHECK(chi.sign() == -1);
            CHECK(chi.is_primitive());
        }
    }
    SECTION("non-fundamental inputs rejected") {
        CHECK_THROWS_AS(ImagQuadField(5), precondition_error);   // -5 = 3 mod 4 fails
        CHECK_THROWS_AS(ImagQuadField(12), precondition_error);  // -12 not fundamental
        CHECK_THROWS_AS(ImagQuadField(9), precondition_error);
        CHECK_THROWS_AS(ImagQuadField(16), precondition_error);
    }
}

TEST_CASE("splitting types") {
    ImagQuadField Qi(4), Q3(3);
    CHECK(Qi.splitting_type(5) == Splitting::split);
    CHECK(Qi.splitting_type(3) == Splitting::inert);
    CHECK(Q3.splitting_type(3) == Splitting::ramified);
    // chi_{K/Q}(p) agrees with the splitting type for p < 100, p not dividing d
    for (long d : {3L, 4L, 7L, 8L, 11L}) {
        ImagQuadField K(d);
        auto chi = K.kronecker_character();
        for (long p = 3; p < 100; ++p) {
            if (!is_prime_long(p) || d % p == 0) continue;
            auto s = K.splitting_type(p);
            int v = (*chi.value_exp(p) == 0) ? 1 : -1;
            CHECK(s == (v == 1 ? Splitting::split : Splitting::inert));
        }
    }
}

TEST_CASE("character multiplicativity and conductors") {
    for (long M : {45L, 44L, 49L, 27L}) {
        for (auto& chi : all_characters(M)) {
            for (long a = 1; a < M; ++a) {
                for (long b = a; b < M; ++b) {
                    auto ea = chi.value_exp(a), eb = chi.value_exp(b), eab = chi.value_exp(a * b % M);
                    if (!ea || !eb) {
                        CHECK(!eab);
                        continue;
                    }
                    CHECK(*eab == mod_long(*ea + *eb, chi.order()));
                }
            }
        }
    }
    // chi(a) = 0 exactly when gcd(a, M) > 1; chi(1) = 1
    auto chs = all_characters(45);
    for (auto& chi : chs) {
        CHECK(*chi.value_exp(1) == 0);
        for (long a = 0; a < 45; ++a)
            CHECK(chi.value_exp(a).has_value() == (std::gcd(a, 45L) == 1));
    }
    // conductor of an induced character
    auto prim5 = primitive_characters(5);
    REQUIRE(prim5.size() == 3);  // orders 2 and 4 twice
    for (auto& chi : prim5) {
        auto ind = chi.induce(45);
        CHECK(ind.conductor() == 5);
        CHECK(ind.primitive_part().modulus() == 5);
    }
}

TEST_CASE("norm residue characters") {
    ImagQuadField Qi(4);
    SECTION("trivial character composes to the all-ones table") {
        ResidueRingOK R(Qi, 5, 1);
        auto eta = compose_norm(DirichletCharacter::trivial(1), R);
        for (long u : R.units) CHECK(eta.value_exp(u) == 0);
        CHECK(eta.order == 1);
    }
    SECTION("unit counts: (p-1)^2 split, p^2 - 1 inert (n = 1)") {
        ResidueRingOK Rsplit(Qi, 5, 1);
        CHECK(Rsplit.num_units() == 16);
        ResidueRingOK Rinert(Qi, 3, 1);
        CHECK(Rinert.num_units() == 8);
    }
    SECTION("value at a = x + yi is chi(x^2 + y^2)") {
        ResidueRingOK R(Qi, 5, 1);
        DirichletCharacter chi;  // order-4 character mod 5
        for (auto& c : all_characters(5))
            if (c.order() == 4) { chi = c; break; }
        auto eta = compose_norm(chi, R);
        for (long u : R.units) {
            auto [x, y] = R.decode(u);
            long nm = mod_long(x * x + y * y, 5);
            CHECK(*eta.value_exp(u) == *chi.value_exp(nm));
        }
        // multiplicativity on the unit group
        for (long u : R.units)
            for (long v : R.units)
                CHECK(*eta.value_exp(R.mul(u, v)) ==
                      mod_long(*eta.value_exp(u) + *eta.value_exp(v), eta.order));
    }
    SECTION("compose_norm is multiplicative in chi") {
        ResidueRingOK R(Qi, 5, 1);
        auto chars = all_characters(5);
        for (auto& c1 : chars)
            for (auto& c2 : chars) {
                auto lhs = compose_norm(c1, R) * compose_norm(c2, R);
                auto rhs = compose_norm(c1 * c2, R);
                CHECK(lhs.order == rhs.order);
                for (long u : R.units) CHECK(lhs.value_exp(u) == rhs.value_exp(u));
            }
    }
    SECTION("p-power modulus enforced") {
        ResidueRingOK R(Qi, 5, 1);
        CHECK_THROWS_AS(compose_norm(kronecker_character(3).induce(15), R), precondition_error);
    }
    SECTION("residue rings at depth 2 and ramified p have consistent unit groups") {
        ResidueRingOK R25(Qi, 5, 2);
        CHECK(R25.num_units() == 400);  // (5^2 - 5)^2
        long prod = 1;
        for (long o : R25.orders) prod *= o;
        CHECK(prod == R25.num_units());
        ImagQuadField Q3(3);
        ResidueRingOK Rram(Q3, 3, 1);
        CHECK(Rram.num_units() == 6);  // p(p-1)
        ResidueRingOK Rram2(Q3, 3, 2);
        CHECK(Rram2.num_units() == 54);
    }
}
