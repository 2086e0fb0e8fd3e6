#pragma once

#include "paths.hpp"

namespace padiclf {

/// P^1(Z/N): normalized representatives of (c : d), lookup table, and a fixed
/// SL_2(Z) lift for every class (bottom row congruent to the representative).
struct P1Line {
    long N;
    std::vector<std::pair<long, long>> reps;
    std::vector<long> table;  // table[c * N + d] = index, -1 when gcd(c,d,N) > 1
    std::vector<Mat2> lifts;

    explicit P1Line(long N_) : N(N_) {
        require(N >= 1, "P1Line: level must be positive");
        table.assign((size_t)(N * N), -1);
        std::vector<long> units;
        for (long u = 0; u < N; ++u)
            if (std::gcd(u, N) == 1) units.push_back(u);
        for (long c = 0; c < N; ++c) {
            for (long d = 0; d < N; ++d) {
                if (std::gcd(std::gcd(c, d), N) != 1) continue;
                if (table[(size_t)(c * N + d)] != -1) continue;
                long idx = (long)reps.size();
                // canonical representative: lexicographic minimum over unit scalings
                long bc = c, bd = d;
                for (long u : units) {
                    long cc = mod_long(u * c, N), dd = mod_long(u * d, N);
                    if (cc < bc || (cc == bc && dd < bd)) { bc = cc; bd = dd; }
                }
                reps.push_back({bc, bd});
                for (long u : units) {
                    long cc = mod_long(u * c, N), dd = mod_long(u * d, N);
                    table[(size_t)(cc * N + dd)] = idx;
                }
                lifts.push_back(lift_rep(bc, bd));
            }
        }
    }

    long size() const { return (long)reps.size(); }

    long index(long c, long d) const {
        c = mod_long(c, N);
        d = mod_long(d, N);
        return table[(size_t)(c * N + d)];
    }
    long index_bottom_row(const Mat2& g) const { return index(g.c, g.d); }

private:
    Mat2 lift_rep(long c, long d) const {
        if (N == 1) return MAT_ID;
        // find integers (c0, d0) = (c, d) mod N with gcd(c0, d0) = 1
        long c0 = c, d0 = d;
        if (c0 == 0 && d0 == 0) c0 = N;
        for (int t = 0; t < 4 * (int)N + 4; ++t) {
            long dd = d0 + (long)t * N;
            long g = std::gcd(std::abs(c0), std::abs(dd));
            if (g == 1 || (c0 == 0 && (dd == 1 || dd == -1))) {
                d0 = dd;
                // Bezout: a*d0 - b*c0 = 1
                long g2 = d0, x = 0, x1 = 1, y = 0, y1 = 0;
                // extended gcd of (d0, c0): find a, b with a*d0 + bb*c0 = 1
                long r0 = d0, r1 = c0, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
                while (r1 != 0) {
                    long q = r0 / r1;
                    long r2 = r0 - q * r1; r0 = r1; r1 = r2;
                    long s2 = s0 - q * s1; s0 = s1; s1 = s2;
                    long t2 = t0 - q * t1; t0 = t1; t1 = t2;
                }
                require(r0 == 1 || r0 == -1, "P1Line: lift gcd failure");
                long sgn = r0;  // s0*d0 + t0*c0 = r0
                long a = sgn * s0, bneg = sgn * t0;  // a*d0 + bneg*c0 = 1
                Mat2 m{a, -bneg, c0, d0};
                (void)g2; (void)x; (void)x1; (void)y; (void)y1;
                require(m.det() == 1, "P1Line: lift determinant");
                require(index(m.c, m.d) == index(c, d), "P1Line: lift class mismatch");
                return m;
            }
        }
        throw std::logic_error("P1Line: no coprime lift found");
    }
};

/// Lift of a matrix in SL_2(Z/N) to SL_2(Z), used for Hecke coset
/// representatives that must hit a prescribed congruence class.
inline Mat2 lift_sl2z_mod(long a, long b, long c, long d, long N, const P1Line& p1) {
    require(mod_long(a * d - b * c, N) == mod_long(1, N), "lift_sl2z_mod: determinant not 1 mod N");
    long idx = p1.index(c, d);
    require(idx >= 0, "lift_sl2z_mod: bottom row not in P^1");
    // base with the right bottom row class, then fix the class scaling and the
    // upper row with a unipotent correction
    // find unit u with (uc, ud) = rep; we need the exact (c, d): rebuild a lift
    // with bottom row congruent to (c, d) itself.
    long c0 = mod_long(c, N), d0 = mod_long(d, N);
    Mat2 base = MAT_ID;
    {
        // same search as P1Line::lift_rep but for (c0, d0) directly; c may be
        // shifted by N as well (needed when c = 0 mod N)
        long dd0 = d0;
        bool found = false;
        for (long sc = 0; sc < 2 && !found; ++sc) {
        long cc = c0 + sc * N;
        for (long t = 0; t < 4 * N + 4 && !found; ++t) {
            long dd = dd0 + t * N;
            if (std::gcd(std::abs(cc), std::abs(dd)) == 1) {
                long r0 = dd, r1 = cc, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
                while (r1 != 0) {
                    long q = r0 / r1;
                    long r2 = r0 - q * r1; r0 = r1; r1 = r2;
                    long s2 = s0 - q * s1; s0 = s1; s1 = s2;
                    long t2 = t0 - q * t1; t0 = t1; t1 = t2;
                }
                long sgn = r0;
                base = Mat2{sgn * s0, -sgn * t0, cc, dd};
                require(base.det() == 1, "lift_sl2z_mod: base determinant");
                found = true;
            }
        }
        }
        require(found, "lift_sl2z_mod: no coprime bottom row lift");
    }
    // base = (a' b'; c d) mod N; base^{-1} * target = (1 u; 0 1) mod N
    long ap = mod_long(base.a, N), bp = mod_long(base.b, N);
    // inverse of base mod N: (d -b'; -c a')
    long u = mod_long(base.d * mod_long(b, N) - bp * mod_long(d, N), N);
    Mat2 res = base * Mat2{1, u, 0, 1};
    require(mod_long(res.a - a, N) == 0 && mod_long(res.b - b, N) == 0 &&
                mod_long(res.c - c, N) == 0 && mod_long(res.d - d, N) == 0,
            "lift_sl2z_mod: congruence not achieved");
    (void)ap;
    return res;
}

}  // namespace padiclf
