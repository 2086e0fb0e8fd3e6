#pragma once

#include "cyclotomic.hpp"

#include <sstream>

namespace padiclf {

/// Structure of (Z/M)^x: generators with orders from the prime-power
/// decomposition, discrete-log tables, CRT data.
struct UnitGroup {
    long M;
    std::vector<long> gens;    // generators as residues mod M
    std::vector<long> orders;  // cyclic orders d_i
    long exponent;             // lcm of orders
    std::vector<std::vector<long>> dlog;  // dlog[i][a] = exponent of gens[i], or -1

    explicit UnitGroup(long M_) : M(M_) {
        require(M >= 1, "UnitGroup: modulus must be positive");
        std::vector<std::pair<long, long>> local;  // (generator mod q^e lifted to M, order)
        if (M == 1) {
            exponent = 1;
        } else {
            for (auto [q, e] : factor_long(M)) {
                long qe = 1;
                for (int i = 0; i < e; ++i) qe *= q;
                if (q == 2) {
                    if (e >= 2) local.push_back({crt_lift(qe - 1, qe), 2});
                    if (e >= 3) local.push_back({crt_lift(5, qe), qe / 4});
                } else {
                    long g = primitive_root_prime_power(q, e);
                    local.push_back({crt_lift(g, qe), qe / q * (q - 1)});
                }
            }
            exponent = 1;
            for (auto& [g, d] : local) {
                gens.push_back(g);
                orders.push_back(d);
                exponent = std::lcm(exponent, d);
            }
        }
        build_dlog();
    }

    long num_gens() const { return (long)gens.size(); }
    long order() const { return euler_phi_long(M); }
    bool is_unit(long a) const { return std::gcd(mod_long(a, M), M) == 1; }

    /// Exponent vector of a on the generators; requires gcd(a, M) = 1.
    std::vector<long> dlog_vec(long a) const {
        a = mod_long(a, M);
        require(is_unit(a), "UnitGroup: dlog of non-unit");
        std::vector<long> e(gens.size());
        for (size_t i = 0; i < gens.size(); ++i) {
            e[i] = dlog[i][a];
        }
        return e;
    }

private:
    long crt_lift(long g, long qe) const {
        // element congruent to g mod q^e and 1 mod M/q^e
        long rest = M / qe;
        if (rest == 1) return mod_long(g, M);
        long u = inv_mod_long(rest, qe);
        // x = 1 + rest * t, t = (g-1) * u mod qe
        long t = mod_long((g - 1) % qe * u % qe, qe);
        return mod_long(1 + rest * t, M);
    }

    static long primitive_root_prime_power(long q, long e) {
        long g = 2;
        auto fac = factor_long(q - 1);
        for (;; ++g) {
            bool ok = true;
            for (auto [r, _] : fac)
                if (pow_mod_long(g, (q - 1) / r, q) == 1) { ok = false; break; }
            if (ok) break;
        }
        if (e == 1) return g;
        long q2 = q * q;
        if (pow_mod_long(g, q - 1, q2) == 1) g += q;
        return g;
    }

    void build_dlog() {
        dlog.assign(gens.size(), std::vector<long>((size_t)M, -1));
        // enumerate the full group as products of generator powers
        std::vector<long> idx(gens.size(), 0);
        long total = order();
        std::vector<long> cur(gens.size(), 1);
        long count = 0;
        std::function<void(size_t, long)> rec = [&](size_t i, long acc) {
            if (i == gens.size()) {
                for (size_t j = 0; j < gens.size(); ++j) {
                    if (dlog[j][acc] == -1) dlog[j][acc] = idx[j];
                }
                ++count;
                return;
            }
            long a = acc;
            for (long t = 0; t < orders[i]; ++t) {
                idx[i] = t;
                rec(i + 1, a);
                a = (long)(((__int128)a * gens[i]) % M);
            }
        };
        rec(0, mod_long(1, M));
        require(count == total, "UnitGroup: generator enumeration does not cover the group");
    }
};

inline const UnitGroup* unit_group(long M) {
    static std::map<long, std::unique_ptr<UnitGroup>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(M);
    if (it == cache.end()) it = cache.emplace(M, std::make_unique<UnitGroup>(M)).first;
    return it->second.get();
}

/// Dirichlet character mod M, stored as an exponent vector on the generators
/// of (Z/M)^x. Values are exact roots of unity, handled as exponents of
/// zeta_order; evaluation tables are derived caches.
class DirichletCharacter {
public:
    DirichletCharacter() : G_(unit_group(1)), t_{} {}
    DirichletCharacter(const UnitGroup* G, std::vector<long> t) : G_(G), t_(std::move(t)) {
        require((long)t_.size() == G_->num_gens(), "DirichletCharacter: exponent vector size");
        for (size_t i = 0; i < t_.size(); ++i) t_[i] = mod_long(t_[i], G_->orders[i]);
        compute_order();
    }
    static DirichletCharacter trivial(long M) {
        const UnitGroup* G = unit_group(M);
        return DirichletCharacter(G, std::vector<long>((size_t)G->num_gens(), 0));
    }

    long modulus() const { return G_->M; }
    long order() const { return order_; }
    bool is_trivial() const { return order_ == 1; }
    const std::vector<long>& exponents() const { return t_; }

    /// chi(a) = zeta_order^{value_exp(a)}; nullopt when gcd(a, M) > 1.
    std::optional<long> value_exp(long a) const {
        a = mod_long(a, G_->M);
        if (!G_->is_unit(a)) return std::nullopt;
        auto e = G_->dlog_vec(a);
        long E = G_->exponent;
        long acc = 0;
        for (size_t i = 0; i < t_.size(); ++i)
            acc = mod_long(acc + (E / G_->orders[i]) * t_[i] % E * (e[i] % G_->orders[i]) % E, E);
        // acc is a multiple of E/order
        return mod_long(acc / (E / order_), order_);
    }

    template <class Coef>
    Cyclo<Coef> value_in(long m, long a, const Coef& zero) const {
        require(m % order_ == 0, "DirichletCharacter: target conductor misses character order");
        auto e = value_exp(a);
        if (!e) return Cyclo<Coef>::zero(m, zero);
        return Cyclo<Coef>::root_of_unity(m, *e * (m / order_), zero);
    }

    int sign() const {  // chi(-1)
        auto e = value_exp(-1);
        return (*e == 0) ? 1 : -1;
    }

    DirichletCharacter operator*(const DirichletCharacter& o) const {
        if (G_ == o.G_) {
            std::vector<long> t(t_.size());
            for (size_t i = 0; i < t_.size(); ++i) t[i] = t_[i] + o.t_[i];
            return DirichletCharacter(G_, t);
        }
        long L = std::lcm(modulus(), o.modulus());
        return induce(L) * o.induce(L);
    }
    DirichletCharacter inverse() const {
        std::vector<long> t(t_.size());
        for (size_t i = 0; i < t_.size(); ++i) t[i] = -t_[i];
        return DirichletCharacter(G_, t);
    }

    /// The character of modulus M2 (a multiple of the conductor) with the same
    /// values on units prime to M2.
    DirichletCharacter induce(long M2) const {
        const UnitGroup* G2 = unit_group(M2);
        require(M2 % conductor() == 0, "DirichletCharacter::induce: conductor does not divide target");
        std::vector<long> t2(G2->num_gens());
        for (long i = 0; i < G2->num_gens(); ++i) {
            long g = G2->gens[(size_t)i];
            // value of the primitive avatar at g (g is a unit mod M2, hence mod cond)
            auto prim = primitive_part();
            auto e = prim.value_exp(g);
            long o = prim.order();
            // zeta_o^{e} = zeta_{d}^{t} requires t * o = e * d mod d*o scaling
            long d = G2->orders[(size_t)i];
            require((*e * d) % o == 0, "induce: value order incompatibility");
            t2[(size_t)i] = mod_long(*e * d / o, d);
        }
        return DirichletCharacter(G2, t2);
    }

    long conductor() const {
        for (long f = 1; f <= G_->M; ++f) {
            if (G_->M % f != 0) continue;
            bool ok = true;
            for (long a = 1; a < G_->M && ok; ++a) {
                if (!G_->is_unit(a) || mod_long(a, f) != mod_long(1, f)) continue;
                if (*value_exp(a) != 0) ok = false;
            }
            if (ok) return f;
        }
        return G_->M;
    }
    bool is_primitive() const { return conductor() == G_->M; }
    DirichletCharacter primitive_part() const {
        long f = conductor();
        if (f == G_->M) return *this;
        // find the character mod f agreeing on units
        const UnitGroup* Gf = unit_group(f);
        std::vector<long> tf(Gf->num_gens());
        for (long i = 0; i < Gf->num_gens(); ++i) {
            long g = Gf->gens[(size_t)i];
            // lift g to a unit mod M congruent to g mod f
            long lift = g;
            while (!G_->is_unit(lift)) lift += f;
            auto e = value_exp(lift);
            long d = Gf->orders[(size_t)i];
            require((*e * d) % order_ == 0, "primitive_part: order incompatibility");
            tf[(size_t)i] = mod_long(*e * d / order_, d);
        }
        return DirichletCharacter(Gf, tf);
    }

    std::string label() const {
        std::ostringstream os;
        os << modulus() << "." << order_;
        for (auto t : t_) os << "." << t;
        return os.str();
    }

    bool operator==(const DirichletCharacter& o) const { return G_ == o.G_ && t_ == o.t_; }

private:
    void compute_order() {
        order_ = 1;
        for (size_t i = 0; i < t_.size(); ++i) {
            long d = G_->orders[i];
            order_ = std::lcm(order_, d / std::gcd(d, t_[i] == 0 ? d : t_[i]));
        }
    }

    const UnitGroup* G_;
    std::vector<long> t_;
    long order_ = 1;
};

/// All characters mod M, in the canonical exponent-vector order.
inline std::vector<DirichletCharacter> all_characters(long M) {
    const UnitGroup* G = unit_group(M);
    std::vector<DirichletCharacter> out;
    std::vector<long> t((size_t)G->num_gens(), 0);
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == t.size()) {
            out.emplace_back(G, t);
            return;
        }
        for (long v = 0; v < G->orders[i]; ++v) {
            t[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

inline std::vector<DirichletCharacter> primitive_characters(long M) {
    std::vector<DirichletCharacter> out;
    for (auto& chi : all_characters(M))
        if (chi.is_primitive()) out.push_back(chi);
    return out;
}

}  // namespace padiclf
