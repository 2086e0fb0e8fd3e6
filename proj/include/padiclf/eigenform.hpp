#pragma once

#include "modsym.hpp"

#include <cmath>

namespace padiclf {

/// Hecke data of a rational eigenform: level, weight k+2, a_ell table, and the
/// slope bookkeeping for a chosen p-stabilisation.
struct EigenformData {
    std::string label;
    long N = 0;
    int k = 0;                 // weight is k + 2
    std::map<long, long> ap;   // a_ell for primes ell (integers at desk scale)

    long a(long ell) const {
        auto it = ap.find(ell);
        require(it != ap.end(), "EigenformData: a_" + std::to_string(ell) + " not available");
        return it->second;
    }
    bool ramanujan_ok() const {
        for (auto& [ell, a_ell] : ap) {
            double bound = 2.0 * std::pow((double)ell, (k + 1) / 2.0) + 1e-9;
            if (std::abs((double)a_ell) > bound) return false;
        }
        return true;
    }
};

/// Eigen-symbol of a rational newform, one star-eigenvalue sign at a time.
/// Values are materialised on all Manin columns and scaled so the free-basis
/// coordinates are coprime integers; the complex period Omega^{sign} is
/// defined away by this normalisation.
struct RationalEigenSymbol {
    const ManinSymbolSpace* space = nullptr;
    EigenformData form;
    int sign = +1;
    std::vector<QQ> values;

    QQ value(long coset, int i) const { return values[(size_t)space->col(coset, i)]; }
};

namespace detail {
inline void normalise_integral_coprime(std::vector<QQ>& v) {
    ZZ den = 1, num = 0;
    for (auto& x : v) den = lcm(den, ZZ(x.get_den()));
    for (auto& x : v) x *= QQ(den);
    for (auto& x : v) num = gcd(num, ZZ(x.get_num()));
    if (num != 0)
        for (auto& x : v) x /= QQ(num);
}
}  // namespace detail

/// Solve for the one-dimensional sign-eigenspace with the prescribed Hecke
/// eigenvalues; throws when the joint eigenspace is not one-dimensional.
inline RationalEigenSymbol eigen_symbol(const ManinSymbolSpace& space, const EigenformData& f,
                                        int sign, const std::vector<long>& which_ell = {2, 3, 5}) {
    require(space.level() == f.N && space.weight_index() == f.k,
            "eigen_symbol: space does not match the form");
    long d = space.dim();
    std::vector<MatQQ> conditions;
    MatQQ star = space.star_matrix();
    for (long i = 0; i < d; ++i) star(i, i) -= QQ(sign);
    conditions.push_back(star);
    for (long ell : which_ell) {
        if ((long)f.N % ell == 0 && f.ap.find(ell) == f.ap.end()) continue;
        MatQQ T = space.hecke_matrix(ell);
        for (long i = 0; i < d; ++i) T(i, i) -= QQ(f.a(ell));
        conditions.push_back(T);
    }
    long rows = 0;
    for (auto& C : conditions) rows += C.n;
    MatQQ stacked(rows, d);
    long r0 = 0;
    for (auto& C : conditions) {
        for (long i = 0; i < C.n; ++i)
            for (long j = 0; j < d; ++j) stacked(r0 + i, j) = C(i, j);
        r0 += C.n;
    }
    auto ker = kernel(stacked);
    require(ker.size() == 1, "eigen_symbol: eigenspace dimension " + std::to_string(ker.size()) +
                                 " (expected 1; regular p-stabilised newform required)");
    RationalEigenSymbol out;
    out.space = &space;
    out.form = f;
    out.sign = sign;
    out.values = space.materialise<QQ>(ker[0], QQ(0));
    // coprime-integral value lattice: this normalisation defines Omega^{sign}
    detail::normalise_integral_coprime(out.values);
    // pin the residual sign: make phi([0]-[infinity])(z^{j0}) positive at the
    // first monomial of the right parity with a nonzero value, else the first
    // nonzero column
    QQ pin = 0;
    for (int j = 0; j <= space.weight_index() && pin == 0; ++j) {
        std::vector<QQ> mono((size_t)space.weight_index() + 1, QQ(0));
        mono[(size_t)j] = 1;
        pin = space.pair_path<QQ>(out.values, Cusp::infinity(), Cusp::of(0, 1), mono, QQ(0));
    }
    if (pin == 0)
        for (auto& x : out.values) {
            if (x != 0) { pin = x; break; }
        }
    if (pin < 0)
        for (auto& y : out.values) y = -y;
    return out;
}

/// Verify a_ell for every prime ell in the table against the Hecke action on
/// the eigen-symbol (exact check, no matrices needed beyond the stencil).
inline void verify_eigenvalues(const RationalEigenSymbol& phi) {
    const auto& sp = *phi.space;
    for (auto& [ell, a_ell] : phi.form.ap) {
        auto out = sp.apply_operator<QQ>(phi.values, sp.hecke_cosets(ell), QQ(0));
        for (size_t i = 0; i < out.size(); ++i)
            require(out[i] == QQ(a_ell) * phi.values[i],
                    "verify_eigenvalues: a_" + std::to_string(ell) + " fails on the symbol");
    }
}

/// Search for rational weight-2 eigensystems (desk scale): candidate integer
/// eigenvalues within the Ramanujan bound, narrowed prime by prime until the
/// joint eigenspace is one-dimensional.
inline std::vector<EigenformData> find_rational_newforms(const ManinSymbolSpace& space,
                                                         long ell_bound = 100) {
    require(space.weight_index() == 0, "find_rational_newforms: weight-2 search only");
    long N = space.level();
    long d = space.dim();
    MatQQ star = space.star_matrix();

    std::vector<long> ells;
    for (long ell = 2; ell <= ell_bound; ++ell)
        if (is_prime_long(ell)) ells.push_back(ell);

    // determine systems by narrowing on ell = 2, 3, 5, ... with star sign +1
    struct Partial {
        std::map<long, long> ap;
        MatQQ stacked;
    };
    MatQQ base = star;
    for (long i = 0; i < d; ++i) base(i, i) -= QQ(1);
    std::vector<Partial> active = {{{}, base}};
    std::vector<EigenformData> out;
    size_t ell_idx = 0;
    while (!active.empty() && ell_idx < ells.size()) {
        long ell = ells[ell_idx++];
        MatQQ T = space.hecke_matrix(ell);
        long bound = (N % ell == 0) ? (long)std::sqrt((double)ell)
                                    : (long)(2.0 * std::sqrt((double)ell));
        std::vector<Partial> next;
        for (auto& pa : active) {
            for (long a = -bound; a <= bound; ++a) {
                MatQQ cond = T;
                for (long i = 0; i < d; ++i) cond(i, i) -= QQ(a);
                MatQQ stacked(pa.stacked.n + d, d);
                for (long i = 0; i < pa.stacked.n; ++i)
                    for (long j = 0; j < d; ++j) stacked(i, j) = pa.stacked(i, j);
                for (long i = 0; i < d; ++i)
                    for (long j = 0; j < d; ++j) stacked(pa.stacked.n + i, j) = cond(i, j);
                auto ker = kernel(stacked);
                if (ker.empty()) continue;
                Partial nx{pa.ap, stacked};
                nx.ap[ell] = a;
                next.push_back(std::move(nx));
            }
        }
        // finalise 1-dimensional systems, keep the rest splitting
        std::vector<Partial> keep;
        for (auto& pa : next) {
            auto ker = kernel(pa.stacked);
            if (ker.size() == 1) {
                // extend eigenvalues along the eigenvector
                std::vector<QQ> fv = ker[0];
                auto vals = space.materialise<QQ>(fv, QQ(0));
                EigenformData f;
                f.N = N;
                f.k = 0;
                f.label = std::to_string(N) + "." + std::to_string(out.size() + 1);
                size_t nz = 0;
                while (vals[nz] == 0) ++nz;
                bool is_cuspidal = true;
                for (long l2 : ells) {
                    auto img = space.apply_operator<QQ>(vals, space.hecke_cosets(l2), QQ(0));
                    QQ ratio = img[nz] / vals[nz];
                    bool consistent = true;
                    for (size_t i = 0; i < vals.size(); ++i)
                        if (img[i] != ratio * vals[i]) { consistent = false; break; }
                    if (!consistent || ratio.get_den() != 1) { is_cuspidal = false; break; }
                    f.ap[l2] = to_long(ZZ(ratio.get_num()));
                    if (N % l2 != 0 && f.ap[l2] == l2 + 1) { is_cuspidal = false; break; }
                }
                if (is_cuspidal && f.ramanujan_ok()) {
                    bool dup = false;
                    for (auto& g : out)
                        if (g.ap == f.ap) dup = true;
                    if (!dup) out.push_back(std::move(f));
                }
            } else if (ker.size() > 1) {
                keep.push_back(std::move(pa));
            }
        }
        active = std::move(keep);
    }
    // canonical labels in table order
    std::sort(out.begin(), out.end(),
              [](const EigenformData& a, const EigenformData& b) { return a.ap < b.ap; });
    for (size_t i = 0; i < out.size(); ++i)
        out[i].label = std::to_string(out[i].N) + std::string(1, (char)('a' + i));
    return out;
}

}  // namespace padiclf
