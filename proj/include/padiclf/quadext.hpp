#pragma once

#include "zmod.hpp"

namespace padiclf {

/// Context for the quadratic extension (Z/p^N)[X]/(X^2 - t X + n).
/// Houses non-unit Hecke roots; in the supersingular weight-2 case the defining
/// polynomial is X^2 + p and the root is a uniformiser of a ramified extension.
struct QuadCtx {
    const PadicCtx* base;
    long t, n;            // X^2 = tX - n
    uint64_t tr, nr;      // reductions mod p^N

    QuadCtx(const PadicCtx* base_, long t_, long n_)
        : base(base_), t(t_), n(n_), tr(base_->reduce_long(t_)), nr(base_->reduce_long(n_)) {}
};

namespace detail {
inline const QuadCtx* intern_quad_ctx(long p, int N, long t, long n) {
    static std::map<std::tuple<long, int, long, long>, std::unique_ptr<QuadCtx>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(p, N, t, n);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<QuadCtx>(intern_ctx(p, N), t, n)).first;
    return it->second.get();
}
}  // namespace detail

/// Element c0 + c1*X of the quadratic extension, both coordinates mod p^N.
class Qp2 {
public:
    Qp2() : C_(nullptr), c0_(0), c1_(0) {}
    Qp2(const QuadCtx* C, uint64_t c0, uint64_t c1) : C_(C), c0_(c0), c1_(c1) {}
    static Qp2 from_base(const QuadCtx* C, const Zp& x) { return Qp2(C, x.lift(), 0); }
    static Qp2 from(const QuadCtx* C, long c0, long c1 = 0) {
        return Qp2(C, C->base->reduce_long(c0), C->base->reduce_long(c1));
    }
    static Qp2 zero(const QuadCtx* C) { return Qp2(C, 0, 0); }
    static Qp2 one(const QuadCtx* C) { return Qp2(C, 1, 0); }
    static Qp2 root(const QuadCtx* C) { return Qp2(C, 0, 1); }  // the class of X

    const QuadCtx* ctx() const { return C_; }
    uint64_t c0() const { return c0_; }
    uint64_t c1() const { return c1_; }
    bool is_zero() const { return c0_ == 0 && c1_ == 0; }

    Qp2 operator+(const Qp2& o) const {
        const auto* B = C_->base;
        return Qp2(C_, B->add(c0_, o.c0_), B->add(c1_, o.c1_));
    }
    Qp2 operator-(const Qp2& o) const {
        const auto* B = C_->base;
        return Qp2(C_, B->sub(c0_, o.c0_), B->sub(c1_, o.c1_));
    }
    Qp2 operator-() const {
        const auto* B = C_->base;
        return Qp2(C_, B->neg(c0_), B->neg(c1_));
    }
    Qp2 operator*(const Qp2& o) const {
        // (a + bX)(c + dX) = ac - bd n + (ad + bc + bd t) X
        const auto* B = C_->base;
        uint64_t ac = B->mul(c0_, o.c0_), bd = B->mul(c1_, o.c1_);
        uint64_t ad_bc = B->add(B->mul(c0_, o.c1_), B->mul(c1_, o.c0_));
        return Qp2(C_, B->sub(ac, B->mul(bd, C_->nr)), B->add(ad_bc, B->mul(bd, C_->tr)));
    }
    Qp2& operator+=(const Qp2& o) { *this = *this + o; return *this; }
    Qp2& operator-=(const Qp2& o) { *this = *this - o; return *this; }
    Qp2& operator*=(const Qp2& o) { *this = *this * o; return *this; }
    bool operator==(const Qp2& o) const { return c0_ == o.c0_ && c1_ == o.c1_; }
    bool operator!=(const Qp2& o) const { return !(*this == o); }

    Qp2 conj() const {
        // X |-> t - X
        const auto* B = C_->base;
        return Qp2(C_, B->add(c0_, B->mul(c1_, C_->tr)), B->neg(c1_));
    }
    /// Norm to Z/p^N: c0^2 + t c0 c1 + n c1^2 would be the norm for X^2 + tX + n;
    /// with our convention X^2 - tX + n it is c0^2 + t c0 c1 + n c1^2 evaluated
    /// as x * conj(x).
    Zp norm() const {
        Qp2 m = (*this) * conj();
        return Zp(C_->base, m.c0_);
    }
    Zp trace() const {
        const auto* B = C_->base;
        return Zp(B, B->add(B->add(c0_, c0_), B->mul(c1_, C_->tr)));
    }

    bool is_unit() const { return norm().is_unit(); }
    Qp2 inv() const {
        Zp nm = norm();
        require(nm.is_unit(), "Qp2: division by a non-unit");
        Zp ninv = nm.inv();
        Qp2 cj = conj();
        const auto* B = C_->base;
        return Qp2(C_, B->mul(cj.c0_, ninv.lift()), B->mul(cj.c1_, ninv.lift()));
    }
    Qp2 pow(uint64_t e) const {
        Qp2 r = one(C_), b = *this;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    /// Half-integer valuation via the norm: v(x) = v(N(x)) / 2.
    Val valuation() const {
        Val nv = norm().valuation();
        return Val{nv.v / 2, nv.at_least};
    }

    /// Exact-where-possible division by p^t on both coordinates; error digits
    /// below p^t are discarded (ledgered by the caller).
    Qp2 shift_down(int t) const {
        const auto* B = C_->base;
        return Qp2(C_, c0_ / B->ppow[t], c1_ / B->ppow[t]);
    }

    Qp2 truncate(int m) const {
        const auto* B = C_->base;
        return Qp2(C_, c0_ % B->ppow[m], c1_ % B->ppow[m]);
    }

private:
    const QuadCtx* C_;
    uint64_t c0_, c1_;
};

}  // namespace padiclf
