#pragma once

#include "quadfield.hpp"

namespace padiclf {

/// Exact Gauss sum with its norm certificate tau * conj(tau).
struct GaussSumResult {
    std::string description;
    CycloZZ value;
    ZZ certificate = 0;           // scalar part of tau * conj(tau)
    bool certificate_scalar = false;

    void certify() {
        CycloZZ prod = value * value.conj();
        certificate_scalar = prod.is_scalar();
        if (certificate_scalar) certificate = prod.scalar_part();
    }
};

/// tau(chi) = sum_{a mod M} chi(a) zeta_M^a, exact in Z[zeta_L],
/// L = lcm(M, ord chi).
inline GaussSumResult tau_q(const DirichletCharacter& chi) {
    long M = chi.modulus();
    GaussSumResult out;
    out.description = "tau(" + chi.label() + ")";
    if (M == 1) {
        out.value = CycloZZ::from_const(1, ZZ(1));
        out.certify();
        return out;
    }
    long L = std::lcm(M, chi.order());
    CycloZZ acc = CycloZZ::zero(L, ZZ(0));
    for (long a = 0; a < M; ++a) {
        auto e = chi.value_exp(a);
        if (!e) continue;
        // chi(a) zeta_M^a = zeta_L^{e*(L/ord) + a*(L/M)}
        acc.add_root_multiple(*e * (L / chi.order()) + a * (L / M), ZZ(1));
    }
    out.value = acc;
    out.certify();
    return out;
}

/// Additive character of K at level p^n: the exponent Tr_{K/Q}(a / (p^n sqrt(-d)))
/// of a = x + y*omega is exactly y / p^n, so the character is
/// a |-> zeta_{p^n}^{sign * y}. The sign distinguishes the two readings of the
/// square root in the trace; see hasse_davenport_check for which one the
/// product identity selects.
inline GaussSumResult tau_K(const ResidueCharacter& eta, int sign = +1) {
    const ResidueRingOK& R = *eta.R;
    long pn = R.pn;
    long L = std::lcm(pn, eta.order);
    GaussSumResult out;
    out.description = "tau_K(ord " + std::to_string(eta.order) + " mod " + std::to_string(R.p) +
                      "^" + std::to_string(R.n) + ", sign " + (sign > 0 ? "+" : "-") + ")";
    CycloZZ acc = CycloZZ::zero(L, ZZ(0));
    for (long u : R.units) {
        auto e = eta.value_exp(u);
        long y = R.decode(u).second;
        acc.add_root_multiple(*e * (L / eta.order) + sign * y * (L / pn), ZZ(1));
    }
    out.value = acc;
    out.certify();
    return out;
}

/// tau(chi) with the substitution zeta_M -> zeta_M^s applied to the additive
/// part of the defining sum (the character values are untouched). When
/// s = 1 mod ord(chi) this agrees with the Galois action of s on Z[zeta_L].
inline CycloZZ tau_q_additive_twist(const DirichletCharacter& chi, long s) {
    long M = chi.modulus();
    require(M > 1 && std::gcd(s, M) == 1, "tau_q_additive_twist: s must be a unit mod M");
    long L = std::lcm(M, chi.order());
    CycloZZ acc = CycloZZ::zero(L, ZZ(0));
    for (long a = 0; a < M; ++a) {
        auto e = chi.value_exp(a);
        if (!e) continue;
        acc.add_root_multiple(*e * (L / chi.order()) + a * s % M * (L / M), ZZ(1));
    }
    return acc;
}

struct HasseDavenportReport {
    CycloZZ lhs_plus, lhs_minus, rhs;  // tau_K(chi o N) tau(chi_K) for both signs; tau(chi) tau(chi chi_K)
    bool holds_plus = false, holds_minus = false;
    int preferred_sign = 0;  // sign convention satisfying the identity, 0 if neither
};

/// Checks tau_K(chi o N) tau(chi_{K/Q}) = tau(chi) tau(chi chi_{K/Q}) as exact
/// cyclotomic algebra, for chi primitive of p-power conductor, p unramified in K.
inline HasseDavenportReport hasse_davenport_check(const DirichletCharacter& chi,
                                                  const ImagQuadField& K) {
    long M = chi.modulus();
    require(chi.is_primitive() && M > 1, "hasse_davenport_check: chi must be primitive of conductor > 1");
    auto fac = factor_long(M);
    require(fac.size() == 1, "hasse_davenport_check: conductor must be a prime power");
    long p = fac[0].first;
    int n = fac[0].second;
    require(K.d % p != 0, "hasse_davenport_check: p must be unramified in K");

    ResidueRingOK R(K, p, n);
    ResidueCharacter etaN = compose_norm(chi, R);
    DirichletCharacter chiK = K.kronecker_character();
    GaussSumResult tK_plus = tau_K(etaN, +1);
    GaussSumResult tK_minus = tau_K(etaN, -1);
    GaussSumResult t_chiK = tau_q(chiK);
    GaussSumResult t_chi = tau_q(chi);
    GaussSumResult t_prod = tau_q(chi * chiK);

    long L = 1;
    for (const CycloZZ* v : {&tK_plus.value, &t_chiK.value, &t_chi.value, &t_prod.value})
        L = std::lcm(L, v->conductor());

    auto up = [&](const CycloZZ& v) { return v.extend_to(L); };
    HasseDavenportReport rep;
    rep.lhs_plus = up(tK_plus.value) * up(t_chiK.value);
    rep.lhs_minus = up(tK_minus.value) * up(t_chiK.value);
    rep.rhs = up(t_chi.value) * up(t_prod.value);
    rep.holds_plus = (rep.lhs_plus == rep.rhs);
    rep.holds_minus = (rep.lhs_minus == rep.rhs);
    rep.preferred_sign = rep.holds_plus ? +1 : (rep.holds_minus ? -1 : 0);
    return rep;
}

}  // namespace padiclf
