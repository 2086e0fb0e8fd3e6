#include <catch2/catch_amalgamated.hpp>

#include <padiclf/lvalue.hpp>
#include <padiclf/quadfield.hpp>

#include <iostream>

using namespace padiclf;

TEST_CASE("space dimensions match the independent formulas") {
    struct Case { long N; int k; long cusp; long eis; };
    // cuspidal rank 2 dim S + boundary
    for (auto [N, k, cusp, eis] : {Case{11, 0, 2, 1}, Case{1, 0, 0, 0}, Case{5, 2, 2, 2},
                                   Case{14, 0, 2, 3}, Case{19, 0, 2, 1}, Case{17, 0, 2, 1},
                                   Case{55, 0, 10, 3}, Case{33, 0, 6, 3}}) {
        ManinSymbolSpace sp(N, k);
        Gamma0Data g(N);
        INFO("N=" << N << " k=" << k);
        CHECK(2 * g.dim_cusp_forms(k) == cusp);
        CHECK(g.dim_eisenstein(k) == eis);
        CHECK(sp.dim() == sp.expected_dim());
        CHECK(sp.dim() == cusp + eis);
    }
}

TEST_CASE("Hecke operators: eigenvalues, commutativity, boundary") {
    ManinSymbolSpace sp(11, 0);
    MatQQ T2 = sp.hecke_matrix(2);
    auto cp = charpoly(T2);
    // X_0(11): #E(F_2) = 5 gives a_2 = 2 + 1 - 5 = -2 (independent point-count oracle);
    // Eisenstein eigenvalue is ell + 1 = 3.
    CHECK(poly_eval(cp, QQ(-2)) == 0);
    CHECK(poly_eval(cp, QQ(3)) == 0);
    // (X-3)(X+2)^2
    MatQQ T3 = sp.hecke_matrix(3), T5 = sp.hecke_matrix(5), T7 = sp.hecke_matrix(7);
    CHECK(T2.commutes_with(T3));
    CHECK(T2.commutes_with(T5));
    CHECK(T3.commutes_with(T7));
    MatQQ star = sp.star_matrix();
    CHECK((star * star).a == MatQQ::identity(sp.dim()).a);
    CHECK(star.commutes_with(T2));

    // commutativity for ell, q <= 13 on a second level
    ManinSymbolSpace sp14(14, 0);
    MatQQ U2 = sp14.hecke_matrix(2), U7 = sp14.hecke_matrix(7), T3b = sp14.hecke_matrix(3),
          T13 = sp14.hecke_matrix(13);
    CHECK(U2.commutes_with(T3b));
    CHECK(U7.commutes_with(T13));
    CHECK(U2.commutes_with(U7));
}

TEST_CASE("rational newform search finds the classical tables") {
    SECTION("level 11") {
        ManinSymbolSpace sp(11, 0);
        auto forms = find_rational_newforms(sp, 13);
        REQUIRE(forms.size() == 1);
        auto& f = forms[0];
        CHECK(f.a(2) == -2);
        CHECK(f.a(3) == -1);
        CHECK(f.a(5) == 1);
        CHECK(f.a(7) == -2);
        CHECK(f.a(13) == 4);
    }
    SECTION("level 17 has a_3 = 0 (supersingular 3)") {
        ManinSymbolSpace sp(17, 0);
        auto forms = find_rational_newforms(sp, 13);
        REQUIRE(forms.size() == 1);
        CHECK(forms[0].a(2) == -1);
        CHECK(forms[0].a(3) == 0);
    }
    SECTION("level 19") {
        ManinSymbolSpace sp(19, 0);
        auto forms = find_rational_newforms(sp, 13);
        REQUIRE(forms.size() == 1);
        CHECK(forms[0].a(2) == 0);
        CHECK(forms[0].a(3) == -2);
    }
}

static EigenformData form_11a(const ManinSymbolSpace& sp, long ell_bound = 20) {
    auto forms = find_rational_newforms(sp, ell_bound);
    REQUIRE(forms.size() == 1);
    EigenformData f = forms[0];
    f.label = "11a";
    return f;
}

TEST_CASE("eigen-symbol extraction and star decomposition") {
    ManinSymbolSpace sp(11, 0);
    EigenformData f = form_11a(sp);
    auto plus = eigen_symbol(sp, f, +1);
    auto minus = eigen_symbol(sp, f, -1);
    verify_eigenvalues(plus);
    verify_eigenvalues(minus);
    // report the normalised value phi^+([0] - [infinity])(1)
    QQ v = sp.pair_path<QQ>(plus.values, Cusp::infinity(), Cusp::of(0, 1), {QQ(1)}, QQ(0));
    std::cout << "[modsym] 11a plus symbol value at {infinity -> 0}: " << v << "\n";
    CHECK(v != 0);
}

TEST_CASE("p-stabilisation is a U_p eigenvector") {
    ManinSymbolSpace sp11(11, 0);
    EigenformData f = form_11a(sp11);
    SECTION("p = 5, level 55") {
        ManinSymbolSpace sp55(55, 0);
        auto plus = eigen_symbol(sp11, f, +1);
        auto stab = p_stabilize(plus, sp55, 5);
        auto up = apply_up(stab);
        QuadQ alpha = stab.alpha();
        for (size_t i = 0; i < up.size(); ++i) CHECK(up[i] == alpha * stab.values[i]);
    }
    SECTION("stabilising with alpha and with beta gives independent symbols") {
        // beta-stabilisation corresponds to conjugating alpha |-> t - alpha;
        // independence amounts to phi | iota_p not being a multiple of phi,
        // guaranteed by alpha != beta (regularity). Check directly that the
        // two value vectors are not proportional.
        ManinSymbolSpace sp55(55, 0);
        auto plus = eigen_symbol(sp11, f, +1);
        auto stab = p_stabilize(plus, sp55, 5);
        // phi_alpha = A + B alpha, phi_beta = A + B beta = (A + Bt) - B alpha
        std::vector<QQ> va, vb;
        for (auto& q : stab.values) {
            va.push_back(q.x());
            vb.push_back(q.y());
        }
        bool proportional = true;
        QQ r0 = 0;
        bool have = false;
        for (size_t i = 0; i < va.size(); ++i) {
            if (vb[i] == 0) {
                if (va[i] != 0) proportional = false;
                continue;
            }
            QQ r = va[i] / vb[i];
            if (!have) { r0 = r; have = true; }
            else if (r != r0) proportional = false;
        }
        CHECK_FALSE(proportional);
    }
}

TEST_CASE("trace back to the base level recovers a multiple of phi") {
    ManinSymbolSpace sp11(11, 0);
    ManinSymbolSpace sp33(33, 0);
    EigenformData f = form_11a(sp11);
    auto plus = eigen_symbol(sp11, f, +1);
    auto stab = p_stabilize(plus, sp33, 3);
    auto traced = trace_to_base<QuadQ>(sp11, sp33, stab.values, 3, stab.zero());
    // traced should be c * phi for a scalar c in Q[alpha]; determine c and check
    size_t nz = 0;
    while (plus.values[nz] == 0) ++nz;
    QuadQ c = traced[nz] * QuadQ::constant(stab.t, stab.n, QQ(1) / plus.values[nz]);
    for (size_t i = 0; i < traced.size(); ++i)
        CHECK(traced[i] == c * QuadQ::constant(stab.t, stab.n, plus.values[i]));
    // documented normalisation: Tr(phi_alpha) = ((p+1) - a_p * alpha^{-1}) phi
    QuadQ ainv = QuadQ::root(stab.t, stab.n).inv();
    QuadQ expected = QuadQ::constant(stab.t, stab.n, QQ(3 + 1)) -
                     QuadQ::constant(stab.t, stab.n, QQ(stab.form.a(3))) * ainv;
    CHECK(c == expected);
    CHECK(!c.is_zero());
}

TEST_CASE("algebraic L-values: parity, linearity, normalisation") {
    ManinSymbolSpace sp(11, 0);
    EigenformData f = form_11a(sp);
    auto plus = eigen_symbol(sp, f, +1);
    auto minus = eigen_symbol(sp, f, -1);

    SECTION("wrong parity gives the zero-by-parity diagnostic") {
        auto chi = kronecker_character(4);  // odd character
        auto bad = algebraic_L_value(plus, chi, 0);
        CHECK(bad.parity_zero);
        CHECK(bad.required_sign == -1);
        // and the Birch sum over the wrong-sign symbol really vanishes
        auto sum = birch_sum<QQ>(sp, plus.values, chi, 0, QQ(0));
        CHECK(sum.is_zero());
    }
    SECTION("trivial character, j = 0, plus sign") {
        // two evaluation routes for the same value: the direct path pairing and
        // the Birch sum at the trivial character; the symbol's own lattice is
        // the normalisation (relative to the Neron lattice of X_0(11) this
        // value is the classical L(f,1)/Omega^+ = 1/5 up to the lattice index)
        auto triv = DirichletCharacter::trivial(1);
        auto v = algebraic_L_value(plus, triv, 0);
        REQUIRE_FALSE(v.parity_zero);
        REQUIRE(v.value.is_scalar());
        QQ direct = sp.pair_path<QQ>(plus.values, Cusp::infinity(), Cusp::of(0, 1), {QQ(1)}, QQ(0));
        CHECK(v.value.scalar_part() == direct);
        CHECK(v.value.scalar_part() == 2);  // 11a in the integral-coprime normalisation
    }
    SECTION("linearity in the character over the group algebra") {
        // indicator of a residue class decomposes over all characters mod m
        long m = 5;
        auto chars = all_characters(m);
        int j = 0;
        // sum over chi of chibar(a0) * S(chi) picks out phi-terms at x = a0 mod m
        long a0 = 2;
        CycloQQ total = CycloQQ::zero(4, QQ(0));
        for (auto& chi : chars) {
            auto S = birch_sum<QQ>(sp, minus.values, chi, j, QQ(0), 4);
            auto w = chi.inverse().value_in<QQ>(4, a0, QQ(0));
            total += S * w;
        }
        // compare with direct evaluation at x = a0 only (times phi(m-units count))
        std::vector<QQ> P = {QQ(a0), QQ(m)};
        P.resize(1);  // k = 0: degree 0 polynomial, (a0 + mz)^0 = 1
        P[0] = 1;
        QQ direct = sp.pair_path<QQ>(minus.values, Cusp::infinity(), Cusp::of(a0, m), P, QQ(0));
        CHECK(total == CycloQQ::from_const(4, QQ(4) * direct));
    }
}
