#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>
#include <optional>
#include <numeric>
#include <algorithm>
#include <map>
#include <gmpxx.h>

namespace padiclf {

using ZZ = mpz_class;
using QQ = mpq_class;

// Error taxonomy mirrored by the CLI exit codes.
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw precondition_error(msg);
}

inline ZZ pow_zz(const ZZ& base, unsigned long e) {
    ZZ r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline long to_long(const ZZ& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("ZZ does not fit in long");
    return z.get_si();
}

// Nonnegative residue of z mod m (m > 0).
inline ZZ mod_zz(const ZZ& z, const ZZ& m) {
    ZZ r;
    mpz_mod(r.get_mpz_t(), z.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline long mod_long(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

inline long gcd_long(long a, long b) { return std::gcd(a, b); }

// Solves a*x = gcd(a,m) mod m; returns x with 0 <= x < m. Requires gcd(a,m)=1 for an inverse.
inline long inv_mod_long(long a, long m) {
    long g = m, x = 0, x1 = 1, a1 = mod_long(a, m);
    while (a1 != 0) {
        long q = g / a1;
        g -= q * a1; std::swap(g, a1);
        x -= q * x1; std::swap(x, x1);
    }
    if (g != 1) throw precondition_error("inv_mod_long: not invertible");
    return mod_long(x, m);
}

inline long pow_mod_long(long a, long e, long m) {
    unsigned __int128 r = 1, b = (unsigned long)mod_long(a, m);
    while (e > 0) {
        if (e & 1) r = (r * b) % (unsigned long)m;
        b = (b * b) % (unsigned long)m;
        e >>= 1;
    }
    return (long)r;
}

inline long valuation_long(long n, long p) {
    if (n == 0) return -1;  // caller decides what "infinite" means
    long v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

inline std::vector<std::pair<long, int>> factor_long(long n) {
    std::vector<std::pair<long, int>> f;
    for (long q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
        if (n % q == 0) {
            int e = 0;
            while (n % q == 0) { n /= q; ++e; }
            f.push_back({q, e});
        }
    }
    if (n > 1) f.push_back({n, 1});
    return f;
}

inline bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

inline long euler_phi_long(long n) {
    long r = n;
    for (auto [q, e] : factor_long(n)) r = r / q * (q - 1);
    return r;
}

// Kronecker symbol (a|n), full generality.
inline int kronecker_symbol(ZZ a, ZZ n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}
inline int kronecker_symbol(long a, long n) {
    return kronecker_symbol(ZZ(a), ZZ(n));
}

// Exact rational valuation "v" or the statement "v >= bound"; used for p-adic
// valuations where zero residues only certify a lower bound.
struct Val {
    QQ v;
    bool at_least = false;  // true: actual valuation is >= v

    static Val exact(const QQ& q) { return Val{q, false}; }
    static Val bounded_below(const QQ& q) { return Val{q, true}; }

    bool operator==(const Val& o) const { return v == o.v && at_least == o.at_least; }
    std::string str() const {
        std::string s = v.get_str();
        return at_least ? (">= " + s) : s;
    }
};

inline QQ binomial_qq(const QQ& x, unsigned long k) {
    QQ r = 1;
    for (unsigned long i = 0; i < k; ++i) r *= (x - (long)i) / QQ((long)(i + 1));
    return r;
}

inline ZZ binomial_zz(long n, long k) {
    if (k < 0) return 0;
    ZZ r;
    if (n >= 0) {
        if (k > n) return 0;
        mpz_bin_uiui(r.get_mpz_t(), (unsigned long)n, (unsigned long)k);
        return r;
    }
    // C(n,k) = (-1)^k C(k-n-1, k) for n < 0
    mpz_bin_uiui(r.get_mpz_t(), (unsigned long)(k - n - 1), (unsigned long)k);
    return (k % 2 == 0) ? r : ZZ(-r);
}

}  // namespace padiclf
