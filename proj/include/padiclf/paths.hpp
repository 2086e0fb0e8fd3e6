#pragma once

#include "common.hpp"
#include "cyclotomic.hpp"

namespace padiclf {

/// 2x2 integer matrix; desk-scale entries (path convergents, level data) stay
/// far below long overflow.
struct Mat2 {
    long a = 1, b = 0, c = 0, d = 1;

    long det() const { return a * d - b * c; }
    Mat2 operator*(const Mat2& o) const {
        return Mat2{a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mat2 inv_unimodular() const {
        long D = det();
        require(D == 1 || D == -1, "Mat2: inverse of non-unimodular matrix");
        return Mat2{D * d, -D * b, -D * c, D * a};
    }
    bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
};

inline const Mat2 MAT_ID{1, 0, 0, 1};
inline const Mat2 MAT_SIGMA{0, -1, 1, 0};
inline const Mat2 MAT_TAU{0, -1, 1, -1};
inline const Mat2 MAT_MINUS_ID{-1, 0, 0, -1};
inline const Mat2 MAT_STAR{-1, 0, 0, 1};  // z -> -z involution

/// A cusp a/c in lowest terms; infinity is 1/0.
struct Cusp {
    long num = 1, den = 0;

    static Cusp infinity() { return Cusp{1, 0}; }
    static Cusp of(long n, long d) {
        require(!(n == 0 && d == 0), "Cusp: 0/0");
        if (d < 0) { n = -n; d = -d; }
        long g = std::gcd(std::abs(n), d);
        if (g > 1) { n /= g; d /= g; }
        if (d == 0) n = 1;
        return Cusp{n, d};
    }
    bool is_infinity() const { return den == 0; }
    bool operator==(const Cusp& o) const { return num == o.num && den == o.den; }
};

inline Cusp apply(const Mat2& m, const Cusp& x) {
    return Cusp::of(m.a * x.num + m.b * x.den, m.c * x.num + m.d * x.den);
}

/// Manin's trick: [x] - [infinity] = sum_j D_{u_j} with D_u = u([infinity]-[0])
/// and u_j in SL_2(Z), via the continued-fraction convergents of x.
inline std::vector<Mat2> unimodular_path_chain(const Cusp& x) {
    std::vector<Mat2> out;
    if (x.is_infinity()) return out;
    long pm1 = 1, qm1 = 0, pm2 = 0, qm2 = 1;
    std::vector<std::pair<long, long>> conv = {{1, 0}};
    long num = x.num, den = x.den;
    while (den != 0) {
        long q = (num >= 0) ? num / den : -((-num + den - 1) / den);  // floor
        long r = num - q * den;
        long p0 = q * pm1 + pm2, q0 = q * qm1 + qm2;
        conv.push_back({p0, q0});
        pm2 = pm1; qm2 = qm1; pm1 = p0; qm1 = q0;
        num = den; den = r;
    }
    for (size_t j = 1; j < conv.size(); ++j) {
        long d = conv[j].first * conv[j - 1].second - conv[j - 1].first * conv[j].second;
        require(d == 1 || d == -1, "unimodular_path_chain: consecutive convergents not coprime");
        Mat2 u{d * conv[j].first, conv[j - 1].first, d * conv[j].second, conv[j - 1].second};
        require(u.det() == 1, "unimodular_path_chain: non-unimodular step");
        out.push_back(u);
    }
    return out;
}

struct SignedStep {
    Mat2 u;
    int sign;
};

/// The divisor [s] - [r] as a signed sum of unimodular divisors D_u.
inline std::vector<SignedStep> decompose_path(const Cusp& r, const Cusp& s) {
    std::vector<SignedStep> out;
    for (const Mat2& u : unimodular_path_chain(s)) out.push_back({u, +1});
    for (const Mat2& u : unimodular_path_chain(r)) out.push_back({u, -1});
    return out;
}

/// Weight-k left action (g . P)(z) = (a + cz)^k P((b + dz)/(a + cz)) on
/// polynomials of degree <= k (coefficient vector in the z-power basis).
template <class Coef>
std::vector<Coef> poly_act(const Mat2& g, const std::vector<Coef>& P, int k, const Coef& zero) {
    require((long)P.size() == k + 1, "poly_act: wrong coefficient length");
    auto cf = [&](long v) { return coef_ops<Coef>::from_zz(zero, ZZ(v)); };
    Coef A = cf(g.a), B = cf(g.b), C = cf(g.c), D = cf(g.d);
    // power tables (a + cz)^j and (b + dz)^j, degree-truncation-free (<= k)
    std::vector<std::vector<Coef>> pa(k + 1), pb(k + 1);
    pa[0] = {coef_ops<Coef>::from_zz(zero, ZZ(1))};
    pb[0] = pa[0];
    for (int j = 1; j <= k; ++j) {
        pa[j].assign(j + 1, zero);
        pb[j].assign(j + 1, zero);
        for (int i = 0; i < j; ++i) {
            pa[j][i] = pa[j][i] + pa[j - 1][i] * A;
            pa[j][i + 1] = pa[j][i + 1] + pa[j - 1][i] * C;
            pb[j][i] = pb[j][i] + pb[j - 1][i] * B;
            pb[j][i + 1] = pb[j][i + 1] + pb[j - 1][i] * D;
        }
    }
    std::vector<Coef> out((size_t)k + 1, zero);
    for (int i = 0; i <= k; ++i) {
        if (coef_ops<Coef>::is_zero(P[(size_t)i])) continue;
        // P_i * (b + dz)^i (a + cz)^{k-i}
        const auto& u = pb[i];
        const auto& v = pa[k - i];
        for (int s = 0; s <= i; ++s) {
            if (coef_ops<Coef>::is_zero(u[(size_t)s])) continue;
            Coef w = P[(size_t)i] * u[(size_t)s];
            for (int t = 0; t <= k - i; ++t)
                out[(size_t)(s + t)] = out[(size_t)(s + t)] + w * v[(size_t)t];
        }
    }
    return out;
}

}  // namespace padiclf
