#pragma once

#include "common.hpp"
#include "zmod.hpp"
#include "quadext.hpp"
#include "quadratic_number.hpp"

namespace padiclf {

/// Coefficients of the m-th cyclotomic polynomial, cached across calls.
inline const std::vector<ZZ>& cyclotomic_polynomial(long m) {
    static std::map<long, std::vector<ZZ>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;

    // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, by exact division.
    std::function<std::vector<ZZ>(long)> compute = [&](long mm) -> std::vector<ZZ> {
        auto found = cache.find(mm);
        if (found != cache.end()) return found->second;
        std::vector<ZZ> f(mm + 1, ZZ(0));
        f[0] = -1;
        f[mm] = 1;
        for (long d = 1; d < mm; ++d) {
            if (mm % d != 0) continue;
            std::vector<ZZ> g = compute(d);
            // exact division f /= g (g monic)
            std::vector<ZZ> q(f.size() - g.size() + 1, ZZ(0));
            for (long i = (long)q.size() - 1; i >= 0; --i) {
                q[i] = f[i + g.size() - 1];
                if (q[i] == 0) continue;
                for (size_t j = 0; j < g.size(); ++j) f[i + j] -= q[i] * g[j];
            }
            f = q;
        }
        cache[mm] = f;
        return f;
    };
    compute(m);
    return cache.at(m);
}

// Coefficient-ring glue: how to drop a plain integer into the ring of a
// prototype element.
template <class Coef>
struct coef_ops;

template <>
struct coef_ops<ZZ> {
    static ZZ from_zz(const ZZ&, const ZZ& z) { return z; }
    static bool is_zero(const ZZ& z) { return z == 0; }
};
template <>
struct coef_ops<QQ> {
    static QQ from_zz(const QQ&, const ZZ& z) { return QQ(z); }
    static bool is_zero(const QQ& z) { return z == 0; }
};
template <>
struct coef_ops<QuadQ> {
    static QuadQ from_zz(const QuadQ& proto, const ZZ& z) {
        return QuadQ::constant(proto.t(), proto.n(), QQ(z));
    }
    static bool is_zero(const QuadQ& z) { return z.is_zero(); }
};
template <>
struct coef_ops<Zp> {
    static Zp from_zz(const Zp& proto, const ZZ& z) { return Zp::from(proto.ctx(), z); }
    static bool is_zero(const Zp& z) { return z.is_zero(); }
};
template <>
struct coef_ops<Qp2> {
    static Qp2 from_zz(const Qp2& proto, const ZZ& z) {
        return Qp2::from_base(proto.ctx(), Zp::from(proto.ctx()->base, z));
    }
    static bool is_zero(const Qp2& z) { return z.is_zero(); }
};

/// Element of Coef[x]/(Phi_m(x)), i.e. the ring of integers (or a base change
/// of it) of the m-th cyclotomic field, in the power basis 1, z, ..., z^{phi(m)-1}.
/// Exact coefficients by default; reduction mod p^N is the explicit base change
/// to Coef = Zp.
template <class Coef>
class Cyclo {
public:
    Cyclo() : m_(1) {}
    Cyclo(long m, Coef zero) : m_(m), c_((size_t)phi_of(m), zero) {}

    static long phi_of(long m) { return (long)cyclotomic_polynomial(m).size() - 1; }

    static Cyclo zero(long m, const Coef& z) { return Cyclo(m, z); }
    static Cyclo from_const(long m, const Coef& v) {
        Cyclo r(m, coef_ops<Coef>::from_zz(v, ZZ(0)));
        r.c_[0] = v;
        return r;
    }
    /// zeta_m^e as a ring element.
    static Cyclo root_of_unity(long m, long e, const Coef& zero) {
        Cyclo r(m, zero);
        e = mod_long(e, m);
        std::vector<Coef> raw((size_t)m, zero);
        raw[(size_t)e] = coef_ops<Coef>::from_zz(zero, ZZ(1));
        r.c_ = reduce_vec(m, std::move(raw), zero);
        return r;
    }

    long conductor() const { return m_; }
    long deg() const { return (long)c_.size(); }
    const std::vector<Coef>& coeffs() const { return c_; }
    Coef& at(size_t i) { return c_[i]; }
    const Coef& at(size_t i) const { return c_[i]; }

    bool is_zero() const {
        for (auto& x : c_)
            if (!coef_ops<Coef>::is_zero(x)) return false;
        return true;
    }
    /// True when the reduced form has no z-terms, i.e. the element lies in Coef.
    bool is_scalar() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (!coef_ops<Coef>::is_zero(c_[i])) return false;
        return true;
    }
    const Coef& scalar_part() const { return c_[0]; }

    Cyclo operator+(const Cyclo& o) const {
        check(o);
        Cyclo r = *this;
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = r.c_[i] + o.c_[i];
        return r;
    }
    Cyclo operator-(const Cyclo& o) const {
        check(o);
        Cyclo r = *this;
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = r.c_[i] - o.c_[i];
        return r;
    }
    Cyclo operator-() const {
        Cyclo r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    Cyclo operator*(const Cyclo& o) const {
        check(o);
        const Coef zero = proto_zero();
        std::vector<Coef> raw(2 * c_.size(), zero);
        for (size_t i = 0; i < c_.size(); ++i) {
            if (coef_ops<Coef>::is_zero(c_[i])) continue;
            for (size_t j = 0; j < o.c_.size(); ++j) {
                if (coef_ops<Coef>::is_zero(o.c_[j])) continue;
                raw[i + j] = raw[i + j] + c_[i] * o.c_[j];
            }
        }
        Cyclo r(m_, zero);
        r.c_ = reduce_vec(m_, std::move(raw), zero);
        return r;
    }
    Cyclo operator*(const Coef& s) const {
        Cyclo r = *this;
        for (auto& x : r.c_) x = x * s;
        return r;
    }
    Cyclo& operator+=(const Cyclo& o) { *this = *this + o; return *this; }
    Cyclo& operator-=(const Cyclo& o) { *this = *this - o; return *this; }
    Cyclo& operator*=(const Cyclo& o) { *this = *this * o; return *this; }
    bool operator==(const Cyclo& o) const { return m_ == o.m_ && c_ == o.c_; }
    bool operator!=(const Cyclo& o) const { return !(*this == o); }

    /// Add s * zeta_m^e without building a temporary element.
    void add_root_multiple(long e, const Coef& s) {
        e = mod_long(e, m_);
        if ((long)e < deg()) {
            c_[(size_t)e] = c_[(size_t)e] + s;
            return;
        }
        *this += root_of_unity(m_, e, proto_zero()) * s;
    }

    /// Galois action zeta |-> zeta^s for gcd(s, m) = 1; s = -1 is complex conjugation.
    Cyclo galois(long s) const {
        s = mod_long(s, m_);
        require(std::gcd(s, m_) == 1, "Cyclo::galois: exponent not coprime to conductor");
        const Coef zero = proto_zero();
        std::vector<Coef> raw((size_t)m_ + 1, zero);
        for (size_t i = 0; i < c_.size(); ++i) {
            if (coef_ops<Coef>::is_zero(c_[i])) continue;
            size_t e = (size_t)(((unsigned long)i * (unsigned long)s) % (unsigned long)m_);
            raw[e] = raw[e] + c_[i];
        }
        Cyclo r(m_, zero);
        r.c_ = reduce_vec(m_, std::move(raw), zero);
        return r;
    }
    Cyclo conj() const { return galois(m_ - 1); }

    /// Image in the cyclotomic ring of conductor m2 (m must divide m2).
    Cyclo extend_to(long m2) const {
        require(m2 % m_ == 0, "Cyclo::extend_to: target conductor not a multiple");
        if (m2 == m_) return *this;
        const Coef zero = proto_zero();
        long step = m2 / m_;
        std::vector<Coef> raw((size_t)m2 + 1, zero);
        for (size_t i = 0; i < c_.size(); ++i) raw[(size_t)((long)i * step)] = c_[i];
        Cyclo r(m2, zero);
        r.c_ = reduce_vec(m2, std::move(raw), zero);
        return r;
    }

    template <class Coef2, class Fn>
    Cyclo<Coef2> map_coeffs(Fn fn, const Coef2& zero2) const {
        Cyclo<Coef2> r(m_, zero2);
        for (size_t i = 0; i < c_.size(); ++i) r.at(i) = fn(c_[i]);
        return r;
    }

    Coef proto_zero() const {
        return c_.empty() ? Coef{} : coef_ops<Coef>::from_zz(c_[0], ZZ(0));
    }

private:
    void check(const Cyclo& o) const {
        require(m_ == o.m_, "Cyclo: conductor mismatch");
    }

    // Remainder of a raw coefficient vector modulo the (monic) Phi_m.
    static std::vector<Coef> reduce_vec(long m, std::vector<Coef> raw, const Coef& zero) {
        const auto& phi = cyclotomic_polynomial(m);
        size_t d = phi.size() - 1;
        std::vector<Coef> phic;
        phic.reserve(phi.size());
        for (const auto& z : phi) phic.push_back(coef_ops<Coef>::from_zz(zero, z));
        if (raw.size() < d) raw.resize(d, zero);
        for (size_t top = raw.size(); top-- > d;) {
            if (coef_ops<Coef>::is_zero(raw[top])) continue;
            Coef c = raw[top];
            for (size_t j = 0; j <= d; ++j)
                raw[top - d + j] = raw[top - d + j] - c * phic[j];
        }
        raw.resize(d, zero);
        return raw;
    }

    long m_;
    std::vector<Coef> c_;
};

using CycloZZ = Cyclo<ZZ>;
using CycloQQ = Cyclo<QQ>;

inline CycloQQ to_qq(const CycloZZ& a) {
    return a.map_coeffs([](const ZZ& z) { return QQ(z); }, QQ(0));
}

inline Cyclo<Zp> reduce_mod(const CycloZZ& a, const PadicCtx* C) {
    return a.map_coeffs([&](const ZZ& z) { return Zp::from(C, z); }, Zp::zero(C));
}

/// Reduce an exact rational-cyclotomic element mod p^N (denominators must be
/// p-units; this is checked).
inline Cyclo<Zp> reduce_mod(const CycloQQ& a, const PadicCtx* C) {
    return a.map_coeffs(
        [&](const QQ& q) {
            require(mod_zz(q.get_den(), ZZ(C->p)) != 0, "reduce_mod: denominator divisible by p");
            return Zp::from(C, q.get_num()) * Zp::from(C, q.get_den()).inv();
        },
        Zp::zero(C));
}

/// Coefficientwise minimum of v_p over the power basis; used by diagnostics
/// (this is the valuation for unramified conductors, a lower bound otherwise).
inline Val min_coeff_valuation(const Cyclo<Zp>& a) {
    bool all_zero = true;
    QQ best = 0;
    for (const auto& x : a.coeffs()) {
        Val v = x.valuation();
        if (!v.at_least) {
            if (all_zero || v.v < best) best = v.v;
            all_zero = false;
        }
    }
    if (all_zero) {
        const PadicCtx* C = a.coeffs().empty() ? nullptr : a.coeffs()[0].ctx();
        return Val::bounded_below(QQ(C ? C->N : 0));
    }
    return Val::exact(best);
}

}  // namespace padiclf
