#pragma once

#include "dirichlet.hpp"

#include <set>
#include <functional>

namespace padiclf {

enum class Splitting { split, inert, ramified };

inline const char* to_string(Splitting s) {
    switch (s) {
        case Splitting::split: return "split";
        case Splitting::inert: return "inert";
        default: return "ramified";
    }
}

/// Imaginary quadratic field K of discriminant -d, d > 0 fundamental, with
/// ring of integers Z[omega], omega^2 = t*omega - n.
struct ImagQuadField {
    long d;        // |discriminant|
    long omega_t;  // trace of omega
    long omega_n;  // norm of omega
    long units;    // #O_K^x

    explicit ImagQuadField(long d_) : d(d_) {
        bool ok = false;
        if (d % 4 == 3) {
            ok = squarefree(d);
        } else if (d % 4 == 0) {
            long m = d / 4;
            ok = squarefree(m) && (m % 4 == 1 || m % 4 == 2);
        }
        require(ok, "ImagQuadField: -d is not a fundamental discriminant");
        if (d % 2 == 1) {
            omega_t = 1;
            omega_n = (1 + d) / 4;
        } else {
            omega_t = 0;
            omega_n = d / 4;
        }
        units = (d == 3) ? 6 : (d == 4 ? 4 : 2);
    }

    long norm(long x, long y) const {  // N(x + y*omega)
        return x * x + omega_t * x * y + omega_n * y * y;
    }

    Splitting splitting_type(long p) const {
        require(p >= 3 && is_prime_long(p), "splitting_type: p must be an odd prime");
        if (d % p == 0) return Splitting::ramified;
        int k = kronecker_symbol(-(long)d, p);
        return k == 1 ? Splitting::split : Splitting::inert;
    }

    /// chi_{K/Q} as a Dirichlet character mod d (the Kronecker symbol (-d | .)).
    DirichletCharacter kronecker_character() const {
        const UnitGroup* G = unit_group(d);
        std::vector<long> t(G->num_gens());
        for (long i = 0; i < G->num_gens(); ++i) {
            int v = kronecker_symbol(-(long)d, G->gens[(size_t)i]);
            long di = G->orders[(size_t)i];
            if (v == 1) {
                t[(size_t)i] = 0;
            } else {
                require(di % 2 == 0, "kronecker_character: sign on odd-order generator");
                t[(size_t)i] = di / 2;
            }
        }
        DirichletCharacter chi(G, t);
        for (long a = 1; a < d; ++a) {
            if (std::gcd(a, d) != 1) continue;
            auto e = chi.value_exp(a);
            int got = (*e == 0) ? 1 : -1;
            require(got == kronecker_symbol(-(long)d, a), "kronecker_character: table mismatch");
        }
        return chi;
    }

private:
    static bool squarefree(long n) {
        for (auto [q, e] : factor_long(n))
            if (e > 1) return false;
        return true;
    }
};

inline DirichletCharacter kronecker_character(long d) { return ImagQuadField(d).kronecker_character(); }

/// The finite ring O_K / p^n O_K with its unit group structure, computed by a
/// generic abelian-basis algorithm and verified exhaustively. Elements are
/// encoded as x * p^n + y for a = x + y*omega.
struct ResidueRingOK {
    const ImagQuadField K;
    long p;
    int n;
    long pn;

    std::vector<long> units;                  // encoded unit elements
    std::vector<long> gens;                   // unit-group generators (encoded)
    std::vector<long> orders;                 // their orders
    long exponent = 1;
    std::map<long, std::vector<long>> dlog;   // encoded unit -> exponent vector

    ResidueRingOK(const ImagQuadField& K_, long p_, int n_) : K(K_), p(p_), n(n_) {
        pn = 1;
        for (int i = 0; i < n; ++i) pn *= p;
        for (long x = 0; x < pn; ++x)
            for (long y = 0; y < pn; ++y)
                if (mod_long(K.norm(x, y), p) != 0) units.push_back(x * pn + y);
        build_structure();
    }

    long encode(long x, long y) const { return mod_long(x, pn) * pn + mod_long(y, pn); }
    std::pair<long, long> decode(long a) const { return {a / pn, a % pn}; }
    long one() const { return encode(1, 0); }

    long mul(long a, long b) const {
        auto [x1, y1] = decode(a);
        auto [x2, y2] = decode(b);
        long yy = mod_long(y1 * y2, pn);
        long x = mod_long(x1 * x2 - yy * K.omega_n, pn);
        long y = mod_long(x1 * y2 + y1 * x2 + yy * K.omega_t, pn);
        return x * pn + y;
    }
    long pow(long a, long e) const {
        long r = one();
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    long neg(long a) const {
        auto [x, y] = decode(a);
        return encode(-x, -y);
    }
    long norm_of(long a) const {
        auto [x, y] = decode(a);
        return mod_long(K.norm(x, y), pn);
    }
    bool is_unit(long a) const { return mod_long(norm_of(a), p) != 0; }

    long num_units() const { return (long)units.size(); }

private:
    long elt_order(long a) const {
        long t = 1, x = a;
        while (x != one()) { x = mul(x, a); ++t; }
        return t;
    }

    // Basis of an abelian q-group given as a set of encoded elements.
    void q_group_basis(const std::vector<long>& elems, std::vector<long>& bgens,
                       std::vector<long>& bords) const {
        std::map<long, std::vector<long>> sub;  // subgroup generated so far, with dlogs
        sub[one()] = {};
        while ((long)sub.size() < (long)elems.size()) {
            long best = -1, best_t = 0;
            for (long g : elems) {
                if (sub.count(g)) continue;
                long t = 1, x = g;
                while (!sub.count(x)) { x = mul(x, g); ++t; }
                if (t > best_t) { best_t = t; best = g; }
            }
            // correct so that <basis> and <g> intersect trivially
            long x = pow(best, best_t);
            std::vector<long> xd = sub.at(x);
            long g = best;
            for (size_t i = 0; i < bgens.size(); ++i) {
                require(xd[i] % best_t == 0, "q_group_basis: correction step failed");
                long y = xd[i] / best_t;
                g = mul(g, pow(bgens[i], bords[i] - mod_long(y, bords[i])));
            }
            bgens.push_back(g);
            bords.push_back(best_t);
            // rebuild subgroup with dlogs
            std::map<long, std::vector<long>> sub2;
            for (auto& [e, v] : sub) {
                long acc = e;
                for (long t = 0; t < best_t; ++t) {
                    std::vector<long> v2 = v;
                    v2.push_back(t);
                    sub2[acc] = v2;
                    acc = mul(acc, g);
                }
            }
            require((long)sub2.size() == (long)sub.size() * best_t,
                    "q_group_basis: subgroup growth mismatch");
            sub = std::move(sub2);
        }
        sub_final_ = std::move(sub);
    }

    mutable std::map<long, std::vector<long>> sub_final_;

    void build_structure() {
        long order = num_units();
        for (auto [q, e] : factor_long(order)) {
            long qe = 1;
            for (int i = 0; i < e; ++i) qe *= q;
            long cof = order / qe;
            std::set<long> sylow_set;
            for (long u : units) sylow_set.insert(pow(u, cof));
            std::vector<long> sylow(sylow_set.begin(), sylow_set.end());
            std::vector<long> bg, bo;
            q_group_basis(sylow, bg, bo);
            // append, recording dlogs of every unit into these generators later
            for (size_t i = 0; i < bg.size(); ++i) {
                gens.push_back(bg[i]);
                orders.push_back(bo[i]);
            }
        }
        for (long o : orders) exponent = std::lcm(exponent, o);
        // full dlog by enumerating all products; verifies the decomposition
        std::vector<long> idx(gens.size(), 0);
        std::function<void(size_t, long)> rec = [&](size_t i, long acc) {
            if (i == gens.size()) {
                require(!dlog.count(acc), "ResidueRingOK: decomposition not direct");
                dlog[acc] = idx;
                return;
            }
            long a = acc;
            for (long t = 0; t < orders[i]; ++t) {
                idx[i] = t;
                rec(i + 1, a);
                a = mul(a, gens[i]);
            }
        };
        rec(0, one());
        require((long)dlog.size() == num_units(), "ResidueRingOK: generators do not span units");
    }
};

/// A character of (O_K/p^n)^x given by its exponent table: value at a is
/// zeta_order^{table[a]}, and 0 outside the units.
struct ResidueCharacter {
    const ResidueRingOK* R;
    long order;
    std::map<long, long> expo;  // encoded unit -> exponent mod order

    std::optional<long> value_exp(long a) const {
        auto it = expo.find(a);
        if (it == expo.end()) return std::nullopt;
        return it->second;
    }
    int sign() const {  // value at -1
        long m1 = R->encode(-1, 0);
        long e = expo.at(m1);
        return e == 0 ? 1 : -1;
    }
    ResidueCharacter inverse() const {
        ResidueCharacter r{R, order, {}};
        for (auto& [a, e] : expo) r.expo[a] = mod_long(-e, order);
        return r;
    }
    ResidueCharacter operator*(const ResidueCharacter& o) const {
        require(R == o.R, "ResidueCharacter: ring mismatch");
        long L = std::lcm(order, o.order);
        ResidueCharacter r{R, L, {}};
        for (auto& [a, e] : expo) r.expo[a] = mod_long(e * (L / order) + o.expo.at(a) * (L / o.order), L);
        r.normalise_order();
        return r;
    }
    void normalise_order() {
        long g = order;
        for (auto& [a, e] : expo) g = std::gcd(g, e);
        if (g > 1) {
            for (auto& [a, e] : expo) e /= g;
            order /= g;
        }
        if (order == 0) order = 1;
    }
    /// Smallest j with the character trivial on units congruent to 1 mod p^j.
    int conductor_exponent() const {
        for (int j = 0; j <= R->n; ++j) {
            long pj = 1;
            for (int i = 0; i < j; ++i) pj *= R->p;
            bool ok = true;
            for (long u : R->units) {
                auto [x, y] = R->decode(u);
                if (mod_long(x - 1, pj) != 0 || mod_long(y, pj) != 0) continue;
                if (expo.at(u) != 0) { ok = false; break; }
            }
            if (ok) return j;
        }
        return R->n;
    }
};

/// chi composed with the norm map N_{K/Q} on (O_K/p^n)^x.
/// chi must have p-power modulus dividing p^n.
inline ResidueCharacter compose_norm(const DirichletCharacter& chi, const ResidueRingOK& R) {
    long M = chi.modulus();
    require(M == 1 || factor_long(M).size() == 1, "compose_norm: chi modulus must be a prime power");
    if (M > 1) {
        auto f = factor_long(M);
        require(f[0].first == R.p && f[0].second <= R.n, "compose_norm: chi modulus must divide p^n");
    }
    ResidueCharacter out{&R, std::max(chi.order(), 1L), {}};
    for (long u : R.units) {
        long nm = R.norm_of(u);
        auto e = chi.value_exp(mod_long(nm, M == 1 ? 1 : M));
        require(e.has_value(), "compose_norm: norm of a unit is not a unit");
        out.expo[u] = mod_long(*e, out.order);
    }
    out.normalise_order();
    return out;
}

inline ResidueCharacter trivial_residue_character(const ResidueRingOK& R) {
    ResidueCharacter out{&R, 1, {}};
    for (long u : R.units) out.expo[u] = 0;
    return out;
}

}  // namespace padiclf
