#pragma once

#include "eigenform.hpp"
#include "dirichlet.hpp"

namespace padiclf {

/// p-stabilised eigen-symbol at level Np, values in Q[alpha] with
/// alpha^2 = a_p * alpha - p^{k+1}: phi_alpha = phi - alpha^{-1} (phi | iota_p),
/// the symbol-side form of f_alpha(z) = f(z) - beta f(pz). Exact; a numeric
/// alpha only enters upon reduction.
struct StabilizedSymbol {
    const ManinSymbolSpace* space_Np = nullptr;
    const ManinSymbolSpace* space_N = nullptr;
    EigenformData form;
    int sign = +1;
    long p = 0;
    long t = 0, n = 0;  // alpha^2 = t alpha - n
    std::vector<QuadQ> values;

    QuadQ zero() const { return QuadQ(t, n, 0, 0); }
    QuadQ alpha() const { return QuadQ::root(t, n); }
};

/// Degeneracy twist (phi | iota_p)(D)(P) = phi(iota_p D)(iota_p . P).
inline QQ twisted_value_by_matrix(const ManinSymbolSpace& spN, const std::vector<QQ>& values,
                                  const Mat2& iota, const Mat2& g, int i, int k) {
    Cusp from = apply(iota * g, Cusp::of(0, 1));
    Cusp to = apply(iota * g, Cusp::infinity());
    std::vector<QQ> mono((size_t)k + 1, QQ(0));
    mono[(size_t)i] = 1;
    std::vector<QQ> P = poly_act(iota, mono, k, QQ(0));
    return spN.pair_path<QQ>(values, from, to, P, QQ(0));
}

/// p-stabilise a level-N eigen-symbol to level Np with the symbolic root
/// alpha of X^2 - a_p X + p^{k+1}. U_p phi_alpha = alpha phi_alpha exactly.
inline StabilizedSymbol p_stabilize(const RationalEigenSymbol& phi, const ManinSymbolSpace& spNp,
                                    long p) {
    const ManinSymbolSpace& spN = *phi.space;
    require(spNp.level() == spN.level() * p && spNp.weight_index() == spN.weight_index(),
            "p_stabilize: target space must have level Np and the same weight");
    require(spN.level() % p != 0, "p_stabilize: p must not divide the base level");
    int k = spN.weight_index();
    StabilizedSymbol out;
    out.space_Np = &spNp;
    out.space_N = &spN;
    out.form = phi.form;
    out.sign = phi.sign;
    out.p = p;
    out.t = phi.form.a(p);
    out.n = 1;
    for (int i = 0; i <= k; ++i) out.n *= p;  // p^{k+1}
    Mat2 iota{p, 0, 0, 1};
    out.values.reserve((size_t)spNp.ncols());
    for (long x = 0; x < spNp.p1().size(); ++x) {
        const Mat2& g = spNp.p1().lifts[(size_t)x];
        for (int i = 0; i <= k; ++i) {
            Cusp from = apply(g, Cusp::of(0, 1));
            Cusp to = apply(g, Cusp::infinity());
            std::vector<QQ> mono((size_t)k + 1, QQ(0));
            mono[(size_t)i] = 1;
            QQ v1 = spN.pair_path<QQ>(phi.values, from, to, mono, QQ(0));
            QQ vp = twisted_value_by_matrix(spN, phi.values, iota, g, i, k);
            // phi1 - alpha^{-1} phip with alpha^{-1} = (t - alpha)/n
            QQ nn(out.n);
            out.values.push_back(QuadQ(out.t, out.n, v1 - QQ(out.t) * vp / nn, vp / nn));
        }
    }
    return out;
}

/// Exact U_p application on the stabilised symbol; used to assert the
/// defining eigen-property.
inline std::vector<QuadQ> apply_up(const StabilizedSymbol& phi) {
    std::vector<Mat2> deltas;
    for (long a = 0; a < phi.p; ++a) deltas.push_back(Mat2{1, a, 0, phi.p});
    return phi.space_Np->apply_operator<QuadQ>(phi.values, deltas, phi.zero());
}

/// Coset representatives of Gamma_0(Np) in Gamma_0(N), p prime to N: the p+1
/// classes of P^1(F_p) realised by matrices with lower-left divisible by N.
inline std::vector<Mat2> gamma0_coset_reps(long N, long p) {
    require(N % p != 0, "gamma0_coset_reps: p must not divide N");
    std::vector<Mat2> reps;
    for (long jj = 0; jj < p; ++jj) reps.push_back(Mat2{1, 0, N * jj, 1});
    // the remaining class: bottom row (N, p)
    long r0 = p, r1 = N, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        long q = r0 / r1;
        long r2 = r0 - q * r1; r0 = r1; r1 = r2;
        long s2 = s0 - q * s1; s0 = s1; s1 = s2;
        long t2 = t0 - q * t1; t0 = t1; t1 = t2;
    }
    require(r0 == 1 || r0 == -1, "gamma0_coset_reps: gcd(N, p) != 1");
    // s0 * p + t0 * N = r0
    Mat2 last{r0 * s0, -r0 * t0, N, p};
    require(last.det() == 1, "gamma0_coset_reps: completion failed");
    reps.push_back(last);
    return reps;
}

/// Trace of a level-Np symbol down to level N:
/// (Tr psi)(D)(P) = sum_gamma psi(gamma D)(gamma . P) over the cosets above.
template <class Coef>
std::vector<Coef> trace_to_base(const ManinSymbolSpace& spN, const ManinSymbolSpace& spNp,
                                const std::vector<Coef>& values, long p, const Coef& zero) {
    auto reps = gamma0_coset_reps(spN.level(), p);
    int k = spN.weight_index();
    std::vector<Coef> out((size_t)spN.ncols(), zero);
    for (long x = 0; x < spN.p1().size(); ++x) {
        const Mat2& g = spN.p1().lifts[(size_t)x];
        for (int i = 0; i <= k; ++i) {
            std::vector<Coef> mono((size_t)k + 1, zero);
            mono[(size_t)i] = coef_ops<Coef>::from_zz(zero, ZZ(1));
            Coef acc = zero;
            for (const Mat2& gamma : reps) {
                Mat2 A = gamma * g;
                Cusp from = apply(A, Cusp::of(0, 1));
                Cusp to = apply(A, Cusp::infinity());
                std::vector<Coef> P = poly_act(gamma, mono, k, zero);
                acc = acc + spNp.pair_path<Coef>(values, from, to, P, zero);
            }
            out[(size_t)spN.col(x, i)] = acc;
        }
    }
    return out;
}

/// Parity sign forced on the symbol by (theta, j): eigen-symbols of the wrong
/// star-sign pair to zero.
inline int parity_sign(const DirichletCharacter& theta, int j, int k) {
    int s = theta.sign();
    if (j % 2 == 1) s = -s;
    if (k % 2 == 1) s = -s;
    return s;
}

/// Birch-style twisted sum S(phi, theta, j) =
///   sum_{x mod M} theta(x) phi([x/M] - [infinity])((x + M z)^j),
/// exact in the cyclotomic ring of conductor ord(theta) over the value field.
/// This is the algebraic part of the completed twisted L-value in the
/// normalisation fixed by the symbol itself.
template <class Coef>
Cyclo<Coef> birch_sum(const ManinSymbolSpace& space, const std::vector<Coef>& values,
                      const DirichletCharacter& theta, int j, const Coef& zero,
                      long target_conductor = 0) {
    int k = space.weight_index();
    require(j >= 0 && j <= k, "birch_sum: need 0 <= j <= k");
    long M = theta.modulus();
    long m = target_conductor ? target_conductor : std::max(theta.order(), 1L);
    require(m % std::max(theta.order(), 1L) == 0, "birch_sum: bad target conductor");
    Cyclo<Coef> acc = Cyclo<Coef>::zero(m, zero);
    auto one = coef_ops<Coef>::from_zz(zero, ZZ(1));
    for (long x = 0; x < std::max(M, 1L); ++x) {
        auto e = theta.value_exp(x);
        if (!e) continue;
        // P(z) = (x + M z)^j, degree j <= k
        std::vector<Coef> P((size_t)k + 1, zero);
        ZZ xp = 1;
        std::vector<ZZ> xpow((size_t)j + 1);
        for (int i = 0; i <= j; ++i) { xpow[(size_t)i] = xp; xp *= x; }
        ZZ Mp = 1;
        for (int i = 0; i <= j; ++i) {
            // coeff of z^i: C(j, i) x^{j-i} M^i
            P[(size_t)i] = coef_ops<Coef>::from_zz(zero, binomial_zz(j, i) * xpow[(size_t)(j - i)] * Mp);
            Mp *= std::max(M, 1L);
        }
        Coef v = space.pair_path<Coef>(values, Cusp::infinity(), Cusp::of(x, std::max(M, 1L)), P, zero);
        acc.add_root_multiple(*e * (m / std::max(theta.order(), 1L)), v);
    }
    return acc;
}

/// Result of the classical algebraic L-value operation: the Birch sum itself,
/// plus the zero-by-parity diagnostic.
struct AlgebraicLValue {
    CycloQQ value;
    bool parity_zero = false;
    int required_sign = 0;
};

/// algebraic L-value of the (level N, unstabilised) eigen-symbol at the
/// character theta and twist z^j.
inline AlgebraicLValue algebraic_L_value(const RationalEigenSymbol& phi,
                                         const DirichletCharacter& theta, int j,
                                         long target_conductor = 0) {
    AlgebraicLValue out;
    out.required_sign = parity_sign(theta, j, phi.space->weight_index());
    if (out.required_sign != phi.sign) {
        out.parity_zero = true;
        long m = target_conductor ? target_conductor : std::max(theta.order(), 1L);
        out.value = CycloQQ::zero(m, QQ(0));
        return out;
    }
    out.value = birch_sum<QQ>(*phi.space, phi.values, theta, j, QQ(0), target_conductor);
    return out;
}

/// The same Birch sum over the stabilised symbol (exact, values in Q[alpha]);
/// the Mazur-Tate oracle is alpha^{-n} times this.
inline Cyclo<QuadQ> birch_sum_stabilized(const StabilizedSymbol& phi,
                                         const DirichletCharacter& theta, int j,
                                         long target_conductor = 0) {
    return birch_sum<QuadQ>(*phi.space_Np, phi.values, theta, j, phi.zero(), target_conductor);
}

}  // namespace padiclf
