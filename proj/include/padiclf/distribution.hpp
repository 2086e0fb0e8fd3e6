#pragma once

#include "zmod.hpp"
#include "quadext.hpp"
#include "cyclotomic.hpp"
#include "paths.hpp"

namespace padiclf {

// ---------------------------------------------------------------------------
// Scalar-ring glue for the approximation modules: Zp (ordinary), Qp2
// (non-unit Hecke root) and FamElt (weight-variable coefficients) share one
// interface.
// ---------------------------------------------------------------------------

template <class S>
struct ring_ops;

template <>
struct ring_ops<Zp> {
    static const PadicCtx* padic_ctx(const Zp& proto) { return proto.ctx(); }
    static Zp from_zz(const Zp& proto, const ZZ& z) { return Zp::from(proto.ctx(), z); }
    static Zp zero(const Zp& proto) { return Zp::zero(proto.ctx()); }
    static Zp one(const Zp& proto) { return Zp::one(proto.ctx()); }
    static bool is_zero(const Zp& x) { return x.is_zero(); }
    static bool is_unit(const Zp& x) { return x.is_unit(); }
    static Zp inv(const Zp& x) { return x.inv(); }
    static Zp shift_down(const Zp& x, int t) { return x.shift_down(t); }
    static Zp truncate(const Zp& x, int m) {
        return m >= x.ctx()->N ? x : Zp(x.ctx(), x.lift_mod(std::max(m, 0)));
    }
    static Val valuation(const Zp& x) { return x.valuation(); }
};

template <>
struct ring_ops<Qp2> {
    static const PadicCtx* padic_ctx(const Qp2& proto) { return proto.ctx()->base; }
    static Qp2 from_zz(const Qp2& proto, const ZZ& z) {
        return Qp2::from_base(proto.ctx(), Zp::from(proto.ctx()->base, z));
    }
    static Qp2 zero(const Qp2& proto) { return Qp2::zero(proto.ctx()); }
    static Qp2 one(const Qp2& proto) { return Qp2::one(proto.ctx()); }
    static bool is_zero(const Qp2& x) { return x.is_zero(); }
    static bool is_unit(const Qp2& x) { return x.is_unit(); }
    static Qp2 inv(const Qp2& x) { return x.inv(); }
    static Qp2 shift_down(const Qp2& x, int t) { return x.shift_down(t); }
    static Qp2 truncate(const Qp2& x, int m) { return x.truncate(std::max(m, 0)); }
    static Val valuation(const Qp2& x) { return x.valuation(); }
};

/// Truncated polynomial ring (Z/p^N)[w]/(w^{M_w}) carrying family coefficients
/// over the weight disc centred at k0 (w = k - k0).
class FamElt {
public:
    FamElt() = default;
    FamElt(const PadicCtx* C, int Mw) : c_((size_t)Mw, Zp::zero(C)) {}
    static FamElt constant(const PadicCtx* C, int Mw, const Zp& v) {
        FamElt r(C, Mw);
        r.c_[0] = v;
        return r;
    }
    int mw() const { return (int)c_.size(); }
    const PadicCtx* ctx() const { return c_[0].ctx(); }
    const Zp& coeff(int i) const { return c_[(size_t)i]; }
    Zp& coeff(int i) { return c_[(size_t)i]; }

    bool is_zero() const {
        for (auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }
    FamElt operator+(const FamElt& o) const {
        FamElt r = *this;
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
        return r;
    }
    FamElt operator-(const FamElt& o) const {
        FamElt r = *this;
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
        return r;
    }
    FamElt operator-() const {
        FamElt r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    FamElt operator*(const FamElt& o) const {
        FamElt r(ctx(), mw());
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (size_t j = 0; i + j < c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
        }
        return r;
    }
    FamElt& operator+=(const FamElt& o) { *this = *this + o; return *this; }
    FamElt& operator-=(const FamElt& o) { *this = *this - o; return *this; }
    FamElt& operator*=(const FamElt& o) { *this = *this * o; return *this; }
    bool operator==(const FamElt& o) const {
        for (size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != o.c_[i]) return false;
        return true;
    }
    bool operator!=(const FamElt& o) const { return !(*this == o); }

    bool is_unit() const { return c_[0].is_unit(); }
    FamElt inv() const {
        require(is_unit(), "FamElt: inverse of non-unit");
        // power series inversion mod w^{Mw}
        FamElt r(ctx(), mw());
        Zp c0inv = c_[0].inv();
        r.c_[0] = c0inv;
        for (int i = 1; i < mw(); ++i) {
            Zp acc = Zp::zero(ctx());
            for (int j = 1; j <= i; ++j) acc += c_[(size_t)j] * r.c_[(size_t)(i - j)];
            r.c_[(size_t)i] = -(acc * c0inv);
        }
        return r;
    }
    /// specialisation w = s
    Zp eval(const Zp& s) const {
        Zp r = Zp::zero(ctx());
        for (size_t i = c_.size(); i-- > 0;) r = r * s + c_[i];
        return r;
    }
    FamElt shift_down(int t) const {
        FamElt r = *this;
        for (auto& x : r.c_) x = x.shift_down(t);
        return r;
    }
    FamElt truncate(int m) const {
        FamElt r = *this;
        for (auto& x : r.c_) x = ring_ops<Zp>::truncate(x, m);
        return r;
    }
    Val valuation() const {
        bool all = true;
        QQ best = 0;
        for (auto& x : c_) {
            Val v = x.valuation();
            if (!v.at_least) {
                if (all || v.v < best) best = v.v;
                all = false;
            }
        }
        if (all) return Val::bounded_below(QQ(ctx()->N));
        return Val::exact(best);
    }

private:
    std::vector<Zp> c_;
};

template <>
struct ring_ops<FamElt> {
    static const PadicCtx* padic_ctx(const FamElt& proto) { return proto.ctx(); }
    static FamElt from_zz(const FamElt& proto, const ZZ& z) {
        return FamElt::constant(proto.ctx(), proto.mw(), Zp::from(proto.ctx(), z));
    }
    static FamElt zero(const FamElt& proto) { return FamElt(proto.ctx(), proto.mw()); }
    static FamElt one(const FamElt& proto) { return from_zz(proto, ZZ(1)); }
    static bool is_zero(const FamElt& x) { return x.is_zero(); }
    static bool is_unit(const FamElt& x) { return x.is_unit(); }
    static FamElt inv(const FamElt& x) { return x.inv(); }
    static FamElt shift_down(const FamElt& x, int t) { return x.shift_down(t); }
    static FamElt truncate(const FamElt& x, int m) { return x.truncate(m); }
    static Val valuation(const FamElt& x) { return x.valuation(); }
};

template <>
struct coef_ops<FamElt> {
    static FamElt from_zz(const FamElt& proto, const ZZ& z) {
        return ring_ops<FamElt>::from_zz(proto, z);
    }
    static bool is_zero(const FamElt& z) { return z.is_zero(); }
};

// ---------------------------------------------------------------------------
// Finite approximation of rigid-analytic distributions: M moments, moment j
// meaningful mod p^{N-j} (the standard triangular filtration).
// ---------------------------------------------------------------------------

template <class S>
struct Moments {
    std::vector<S> m;

    long size() const { return (long)m.size(); }
    static Moments zero(long M, const S& proto) {
        return Moments{std::vector<S>((size_t)M, ring_ops<S>::zero(proto))};
    }
    Moments operator+(const Moments& o) const {
        Moments r = *this;
        for (size_t i = 0; i < m.size(); ++i) r.m[i] = r.m[i] + o.m[i];
        return r;
    }
    Moments operator-(const Moments& o) const {
        Moments r = *this;
        for (size_t i = 0; i < m.size(); ++i) r.m[i] = r.m[i] - o.m[i];
        return r;
    }
    Moments scaled(const S& s) const {
        Moments r = *this;
        for (auto& x : r.m) x = x * s;
        return r;
    }
    /// moment filtration: moment j truncated mod p^{N-j}
    Moments filtered(int N) const {
        Moments r = *this;
        for (size_t j = 0; j < r.m.size(); ++j)
            r.m[j] = ring_ops<S>::truncate(r.m[j], N - (int)j);
        return r;
    }
    bool operator==(const Moments& o) const { return m == o.m; }
};

/// Row-major M x M matrix of a weight-k Sigma_0(p) action on moments:
/// W[j][i] = coefficient of z^i in (a + cz)^{k-j} (b + dz)^j, truncated at M.
template <class S>
struct MomentMatrix {
    long M = 0;
    std::vector<S> w;

    const S& at(long j, long i) const { return w[(size_t)(j * M + i)]; }
    S& at(long j, long i) { return w[(size_t)(j * M + i)]; }

    Moments<S> apply(const Moments<S>& mu, const S& proto) const {
        Moments<S> out = Moments<S>::zero(M, proto);
        for (long j = 0; j < M; ++j) {
            S acc = ring_ops<S>::zero(proto);
            for (long i = 0; i < M; ++i) {
                if (ring_ops<S>::is_zero(at(j, i))) continue;
                acc = acc + at(j, i) * mu.m[(size_t)i];
            }
            out.m[(size_t)j] = acc;
        }
        return out;
    }
};

namespace detail {

// series utilities over S, truncated at M terms
template <class S>
std::vector<S> series_mul(const std::vector<S>& a, const std::vector<S>& b, long M, const S& proto) {
    std::vector<S> out((size_t)M, ring_ops<S>::zero(proto));
    for (long i = 0; i < (long)a.size() && i < M; ++i) {
        if (ring_ops<S>::is_zero(a[(size_t)i])) continue;
        for (long j = 0; j < (long)b.size() && i + j < M; ++j)
            out[(size_t)(i + j)] = out[(size_t)(i + j)] + a[(size_t)i] * b[(size_t)j];
    }
    return out;
}

// x^t / t! computed exactly in S for v_p(x) >= 1 (the p-part of t! divides x^t)
template <class S>
S divided_power(const S& x, long t, const S& proto) {
    const PadicCtx* C = ring_ops<S>::padic_ctx(proto);
    if (t == 0) return ring_ops<S>::one(proto);
    // t! = p^e * u with u a p-unit
    long e = 0;
    ZZ unit = 1;
    for (long i = 2; i <= t; ++i) {
        long v = 0, m = i;
        while (m % C->p == 0) { m /= C->p; ++v; }
        e += v;
        unit = mod_zz(unit * m, ZZ(C->pN));
    }
    S xt = ring_ops<S>::one(proto);
    for (long i = 0; i < t; ++i) xt = xt * x;
    if (e > 0) {
        Val v = ring_ops<S>::valuation(xt);
        require(v.at_least || v.v >= QQ(e), "divided_power: inexact division (v_p(x) < 1?)");
    }
    S shifted = ring_ops<S>::shift_down(xt, (int)e);
    Zp uinv = Zp::from(C, unit).inv();
    return shifted * ring_ops<S>::from_zz(proto, uinv.lift_zz());
}

}  // namespace detail

/// Weight-k moment matrix of gamma = (a b; c d) in Sigma_0(p):
/// p | c, a a p-unit, det != 0.
template <class S>
MomentMatrix<S> weight_action_matrix(const Mat2& g, int k, long M, const S& proto) {
    const PadicCtx* C = ring_ops<S>::padic_ctx(proto);
    require(mod_long(g.c, C->p) == 0, "weight_action_matrix: c not divisible by p");
    require(mod_long(g.a, C->p) != 0, "weight_action_matrix: a not a p-unit");
    require(g.det() != 0, "weight_action_matrix: singular matrix");
    auto from_l = [&](long v) { return ring_ops<S>::from_zz(proto, ZZ(v)); };
    S A = from_l(g.a), B = from_l(g.b), Cc = from_l(g.c), D = from_l(g.d);
    S Ainv = ring_ops<S>::inv(A);

    // inv_v = (a + cz)^{-1} = a^{-1} sum (-c/a)^i z^i
    std::vector<S> inv_v((size_t)M, ring_ops<S>::zero(proto));
    S x = (-Cc) * Ainv;
    S cur = Ainv;
    for (long i = 0; i < M; ++i) {
        inv_v[(size_t)i] = cur;
        cur = cur * x;
    }
    // row_0 = (a + cz)^k
    std::vector<S> row((size_t)M, ring_ops<S>::zero(proto));
    row[0] = ring_ops<S>::one(proto);
    for (int t = 0; t < k; ++t) {
        std::vector<S> nxt((size_t)M, ring_ops<S>::zero(proto));
        for (long i = 0; i < M; ++i) {
            if (ring_ops<S>::is_zero(row[(size_t)i])) continue;
            nxt[(size_t)i] = nxt[(size_t)i] + row[(size_t)i] * A;
            if (i + 1 < M) nxt[(size_t)(i + 1)] = nxt[(size_t)(i + 1)] + row[(size_t)i] * Cc;
        }
        row = nxt;
    }
    MomentMatrix<S> W;
    W.M = M;
    W.w.assign((size_t)(M * M), ring_ops<S>::zero(proto));
    std::vector<S> u = {B, D};
    for (long j = 0; j < M; ++j) {
        for (long i = 0; i < M; ++i) W.at(j, i) = row[(size_t)i];
        if (j + 1 < M) {
            row = detail::series_mul(row, u, M, proto);
            row = detail::series_mul(row, inv_v, M, proto);
        }
    }
    return W;
}

/// binom(w, t) as a polynomial in w mod w^{Mw}, times x^t, computed as
/// (prod_{i<t}(w-i)) * (x^t / t!); the divided power keeps everything
/// p-integral for v_p(x) >= 1.
inline std::vector<Zp> binomial_w_times_power(const Zp& x, long t, int Mw) {
    const PadicCtx* C = x.ctx();
    std::vector<Zp> ff((size_t)Mw, Zp::zero(C));
    ff[0] = Zp::one(C);
    for (long i = 0; i < t; ++i) {
        std::vector<Zp> nf((size_t)Mw, Zp::zero(C));
        Zp iz = Zp::from(C, i);
        for (int s = 0; s < Mw; ++s) {
            nf[(size_t)s] = -(ff[(size_t)s] * iz);
            if (s + 1 < Mw) nf[(size_t)(s + 1)] += ff[(size_t)s];
        }
        ff = nf;
    }
    Zp dp = detail::divided_power<Zp>(x, t, Zp::zero(C));
    for (auto& c : ff) c *= dp;
    return ff;
}

/// The universal character <y>^w = sum_t binom(w, t)(<y>-1)^t as an element of
/// (Z/p^N)[w]/(w^{Mw}); converges for p >= 3 since term t carries p^{t - v(t!)}.
inline FamElt universal_character_value(const Zp& y_angle, int Mw) {
    const PadicCtx* C = y_angle.ctx();
    Zp y = y_angle - Zp::one(C);
    FamElt acc(C, Mw);
    long tmax = Mw + (C->N * (C->p - 1)) / std::max(C->p - 2, 1L) + 4;
    for (long t = 0; t <= tmax; ++t) {
        auto term = binomial_w_times_power(y, t, Mw);
        for (int s = 0; s < Mw; ++s) acc.coeff(s) += term[(size_t)s];
    }
    return acc;
}

/// Family analogue over FamElt: the universal-character action at the centre
/// k0, i.e. row_j = (a+cz)^{k0-j} (b+dz)^j * <a>^w (1 + (c/a) z)^w with the
/// binomial series in w truncated at M_w. The base rows live over Z/p^N; only
/// the z-series E(z) = <a>^w (1 + (c/a)z)^w carries w.
inline MomentMatrix<FamElt> family_action_matrix(const Mat2& g, int k0, long M,
                                                 const FamElt& proto) {
    const PadicCtx* C = proto.ctx();
    int Mw = proto.mw();
    MomentMatrix<Zp> W0 = weight_action_matrix<Zp>(g, k0, M, Zp::zero(C));

    Zp a = Zp::from(C, g.a);
    Zp teich = teichmuller(C, mod_long(g.a, C->p));
    FamElt angle_w = universal_character_value(a * teich.inv(), Mw);

    // binz[i] = binom(w, i) (c/a)^i, so E(z) = angle_w * sum binz[i] z^i
    std::vector<FamElt> binz((size_t)M, FamElt(C, Mw));
    Zp x = Zp::from(C, g.c) * a.inv();
    long imax = std::min<long>(M, x.is_zero() ? 1 : M);
    for (long i = 0; i < imax; ++i) {
        auto t = binomial_w_times_power(x, i, Mw);
        for (int s = 0; s < Mw; ++s) binz[(size_t)i].coeff(s) = t[(size_t)s];
        binz[(size_t)i] = binz[(size_t)i] * angle_w;
    }
    MomentMatrix<FamElt> out;
    out.M = M;
    out.w.assign((size_t)(M * M), FamElt(C, Mw));
    for (long j = 0; j < M; ++j) {
        for (long s = 0; s < M; ++s) {
            const Zp& base = W0.at(j, s);
            if (base.is_zero()) continue;
            for (long t = 0; s + t < M; ++t) {
                if (binz[(size_t)t].is_zero()) continue;
                FamElt add = binz[(size_t)t];
                for (int q = 0; q < Mw; ++q) add.coeff(q) *= base;
                out.at(j, s + t) += add;
            }
        }
    }
    return out;
}

}  // namespace padiclf
