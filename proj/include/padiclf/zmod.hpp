#pragma once

#include "common.hpp"

#include <memory>
#include <mutex>

namespace padiclf {

/// Fixed-precision arithmetic context for Z/p^N, p an odd prime.
/// p^N must fit in 62 bits so products can be reduced through unsigned __int128.
struct PadicCtx {
    long p;
    int N;
    uint64_t pN;
    std::vector<uint64_t> ppow;  // ppow[i] = p^i, i = 0..N

    PadicCtx(long p_, int N_) : p(p_), N(N_) {
        require(p >= 3 && is_prime_long(p), "PadicCtx: p must be an odd prime (p = 2 is rejected)");
        require(N >= 1, "PadicCtx: precision N must be positive");
        ppow.resize(N + 1);
        ppow[0] = 1;
        for (int i = 1; i <= N; ++i) {
            require(ppow[i - 1] <= (uint64_t(1) << 62) / (uint64_t)p, "PadicCtx: p^N exceeds 62 bits");
            ppow[i] = ppow[i - 1] * (uint64_t)p;
        }
        pN = ppow[N];
    }

    uint64_t reduce(const ZZ& z) const { return mpz_fdiv_ui(z.get_mpz_t(), pN); }
    uint64_t reduce_long(long z) const {
        long r = z % (long)pN;
        return (uint64_t)(r < 0 ? r + (long)pN : r);
    }
    uint64_t mul(uint64_t a, uint64_t b) const {
        return (uint64_t)(((unsigned __int128)a * b) % pN);
    }
    uint64_t add(uint64_t a, uint64_t b) const {
        uint64_t s = a + b;
        return s >= pN ? s - pN : s;
    }
    uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + pN - b; }
    uint64_t neg(uint64_t a) const { return a == 0 ? 0 : pN - a; }
    uint64_t pow(uint64_t a, uint64_t e) const {
        uint64_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    bool is_unit(uint64_t a) const { return a % (uint64_t)p != 0; }
    uint64_t inv(uint64_t a) const {
        require(is_unit(a), "Zp: division by a non-unit");
        // extended gcd against p^N
        long long g = (long long)pN, x = 0, x1 = 1;
        long long a1 = (long long)a;
        while (a1 != 0) {
            long long q = g / a1;
            g -= q * a1; std::swap(g, a1);
            x -= q * x1; std::swap(x, x1);
        }
        return (uint64_t)(x < 0 ? x + (long long)pN : x);
    }
    // valuation of a nonzero residue; 0 maps to "at least N"
    Val valuation(uint64_t a) const {
        if (a == 0) return Val::bounded_below(QQ(N));
        long v = 0;
        while (a % (uint64_t)p == 0) { a /= (uint64_t)p; ++v; }
        return Val::exact(QQ(v));
    }
};

namespace detail {
// Contexts are interned so scalars can share a plain pointer.
inline const PadicCtx* intern_ctx(long p, int N) {
    static std::map<std::pair<long, int>, std::unique_ptr<PadicCtx>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, N);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<PadicCtx>(p, N)).first;
    return it->second.get();
}
}  // namespace detail

/// Element of Z/p^N with value semantics; immutable after construction.
class Zp {
public:
    Zp() : C_(nullptr), v_(0) {}
    Zp(const PadicCtx* C, uint64_t reduced) : C_(C), v_(reduced) {}
    static Zp from(const PadicCtx* C, const ZZ& z) { return Zp(C, C->reduce(z)); }
    static Zp from(const PadicCtx* C, long z) { return Zp(C, C->reduce_long(z)); }
    static Zp zero(const PadicCtx* C) { return Zp(C, 0); }
    static Zp one(const PadicCtx* C) { return Zp(C, 1); }

    const PadicCtx* ctx() const { return C_; }
    uint64_t lift() const { return v_; }
    ZZ lift_zz() const { return ZZ((unsigned long)v_); }
    bool is_zero() const { return v_ == 0; }
    bool is_unit() const { return C_->is_unit(v_); }

    Zp operator+(const Zp& o) const { return Zp(C_, C_->add(v_, o.v_)); }
    Zp operator-(const Zp& o) const { return Zp(C_, C_->sub(v_, o.v_)); }
    Zp operator*(const Zp& o) const { return Zp(C_, C_->mul(v_, o.v_)); }
    Zp operator-() const { return Zp(C_, C_->neg(v_)); }
    Zp& operator+=(const Zp& o) { v_ = C_->add(v_, o.v_); return *this; }
    Zp& operator-=(const Zp& o) { v_ = C_->sub(v_, o.v_); return *this; }
    Zp& operator*=(const Zp& o) { v_ = C_->mul(v_, o.v_); return *this; }
    bool operator==(const Zp& o) const { return v_ == o.v_; }
    bool operator!=(const Zp& o) const { return v_ != o.v_; }

    Zp inv() const { return Zp(C_, C_->inv(v_)); }
    Zp pow(uint64_t e) const { return Zp(C_, C_->pow(v_, e)); }
    Val valuation() const { return C_->valuation(v_); }

    /// Exact division by p^t when possible; otherwise the sub-p^t digits are
    /// discarded. Callers must account the t digits of lost absolute precision
    /// in their ledger. Not a ring operation.
    Zp shift_down(int t) const {
        return Zp(C_, v_ / C_->ppow[t]);
    }
    bool divisible_by_p_pow(int t) const { return v_ % C_->ppow[t] == 0; }

    /// Residue modulo p^m for m <= N (digit truncation).
    uint64_t lift_mod(int m) const { return v_ % C_->ppow[m]; }

private:
    const PadicCtx* C_;
    uint64_t v_;
};

/// Teichmueller lift: the unique (p-1)-st root of unity congruent to a mod p.
inline Zp teichmuller(const PadicCtx* C, long a) {
    require(a % C->p != 0, "teichmuller: argument divisible by p");
    Zp x = Zp::from(C, a);
    for (int i = 0; i < C->N + 2; ++i) x = x.pow((uint64_t)C->p);
    return x;
}

struct UnitRootPair {
    Zp alpha;        // unit root of X^2 - a_p X + p^{k+1}
    Zp beta;         // the other root, p^{k+1}/alpha
    long beta_val;   // v_p(beta) = k+1, exact
};

/// Unit root of the Hecke polynomial X^2 - a_p X + p^{k+1} (ordinary case),
/// found by Hensel lifting from X = a_p mod p.
inline UnitRootPair hensel_unit_root(const PadicCtx* C, long a_p, int k) {
    require(mod_long(a_p, C->p) != 0, "hensel_unit_root: a_p is divisible by p (non-ordinary)");
    require(k + 1 <= C->N, "hensel_unit_root: p^{k+1} vanishes at this precision");
    Zp ap = Zp::from(C, a_p);
    Zp pk1 = Zp(C, C->ppow[k + 1]);
    Zp x = ap;  // root mod p
    for (int i = 0; i < C->N + 2; ++i) {
        Zp fx = x * x - ap * x + pk1;
        Zp dfx = x + x - ap;  // unit: 2x - a_p = x - beta = unit
        x = x - fx * dfx.inv();
    }
    Zp beta = ap - x;
    return UnitRootPair{x, beta, k + 1};
}

}  // namespace padiclf
