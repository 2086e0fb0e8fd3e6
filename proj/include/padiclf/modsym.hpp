#pragma once

#include "p1line.hpp"
#include "linalg.hpp"
#include "quadratic_number.hpp"

namespace padiclf {

/// Dimension bookkeeping for Gamma_0(N), used as the independent oracle for
/// the rank of the solved Manin relations.
struct Gamma0Data {
    long N;
    long index;   // [SL2(Z) : Gamma_0(N)]
    long nu2, nu3, ncusps;
    QQ genus;

    explicit Gamma0Data(long N_) : N(N_) {
        index = N;
        for (auto [q, e] : factor_long(N)) index = index / q * (q + 1);
        auto count_solutions = [&](long a) {  // x^2 + a x + 1 = 0 mod N (a = 0 or 1)
            long cnt = 1;
            for (auto [q, e] : factor_long(N)) {
                long qe = 1;
                for (int i = 0; i < e; ++i) qe *= q;
                long local = 0;
                for (long x = 0; x < qe; ++x)
                    if (mod_long(x * x + a * x + 1, qe) == 0) ++local;
                cnt *= local;
            }
            return cnt;
        };
        nu2 = (N % 4 == 0) ? 0 : count_solutions(0);
        nu3 = (N % 9 == 0) ? 0 : count_solutions(1);
        ncusps = 0;
        for (long dd = 1; dd <= N; ++dd)
            if (N % dd == 0) ncusps += euler_phi_long(std::gcd(dd, N / dd));
        genus = QQ(1) + QQ(index) / 12 - QQ(nu2) / 4 - QQ(nu3) / 3 - QQ(ncusps) / 2;
    }

    /// dim S_{k+2}(Gamma_0(N)) for even k >= 0.
    long dim_cusp_forms(int k) const {
        long w = k + 2;
        require(w >= 2 && w % 2 == 0, "dim_cusp_forms: weight must be even and >= 2");
        if (w == 2) {
            require(genus.get_den() == 1, "dim_cusp_forms: genus not integral");
            return to_long(ZZ(genus.get_num()));
        }
        QQ dim = QQ(w - 1) * (genus - 1) + QQ(w / 2 - 1) * ncusps + QQ(nu2) * (w / 4) +
                 QQ(nu3) * (w / 3);
        require(dim.get_den() == 1, "dim_cusp_forms: dimension not integral");
        return to_long(ZZ(dim.get_num()));
    }
    long dim_eisenstein(int k) const {
        long w = k + 2;
        if (w == 2) return ncusps - 1;
        return ncusps;
    }
    long dim_modular_symbols(int k) const { return 2 * dim_cusp_forms(k) + dim_eisenstein(k); }
};

/// Merel's matrices of determinant n: a > b >= 0, d > c >= 0, ad - bc = n.
/// They realise T_n (and U_p for p | N) on Manin symbols.
inline std::vector<Mat2> merel_matrices(long n) {
    std::vector<Mat2> out;
    for (long a = 1; a <= n; ++a) {
        for (long d = 1; d <= n; ++d) {
            long bc = a * d - n;
            if (bc < 0) continue;
            if (bc == 0) {
                for (long c = 0; c < d; ++c) out.push_back(Mat2{a, 0, c, d});
                continue;
            }
            for (long b = 1; b < a; ++b) {
                if (bc % b != 0) continue;
                long c = bc / b;
                if (c < d) out.push_back(Mat2{a, b, c, d});
            }
        }
    }
    return out;
}

/// Weight-k modular symbols for Gamma_0(N) in the solved Manin presentation.
///
/// A symbol phi assigns to every coset generator g (an SL_2(Z) lift of a point
/// of P^1(Z/N)) the functional P |-> phi(D_g)(P) on polynomials of degree <= k,
/// where D_g = g([infinity] - [0]). Columns index the pairs
/// (coset, monomial z^i); the sigma/tau/minus-one Manin relations are solved
/// once and every column carries an expression in the free basis.
class ManinSymbolSpace {
public:
    ManinSymbolSpace(long N, int k) : N_(N), k_(k), p1_(N) {
        require(N >= 1 && N <= 200, "ManinSymbolSpace: level out of desk range");
        require(k >= 0 && k <= 10, "ManinSymbolSpace: weight index out of desk range");
        build();
    }

    long level() const { return N_; }
    int weight_index() const { return k_; }
    const P1Line& p1() const { return p1_; }
    long ncols() const { return p1_.size() * (k_ + 1); }
    long col(long coset, int i) const { return coset * (k_ + 1) + i; }
    long dim() const { return solution_.dim(); }
    const RelationSolution& solution() const { return solution_; }

    /// Independent dimension count (genus/cusp formulas).
    long expected_dim() const { return Gamma0Data(N_).dim_modular_symbols(k_); }

    // ---- symbols as materialised value vectors ------------------------------

    template <class Coef>
    std::vector<Coef> materialise(const std::vector<Coef>& free_values, const Coef& zero) const {
        return solution_.materialise(
            free_values, zero,
            [&](const Coef& v, const QQ& q) -> Coef { return v * coef_from_qq<Coef>(zero, q); });
    }

    /// phi([s] - [r]) paired with the polynomial P (degree <= k), where values
    /// is the materialised column vector of phi.
    template <class Coef>
    Coef pair_path(const std::vector<Coef>& values, const Cusp& r, const Cusp& s,
                   const std::vector<Coef>& P, const Coef& zero) const {
        Coef acc = zero;
        for (const SignedStep& st : decompose_path(r, s)) {
            long x = p1_.index_bottom_row(st.u);
            Mat2 gamma = st.u * p1_.lifts[(size_t)x].inv_unimodular();  // u = gamma * lift
            std::vector<Coef> Q = poly_act(gamma.inv_unimodular(), P, k_, zero);
            Coef term = zero;
            for (int i = 0; i <= k_; ++i)
                term = term + values[(size_t)col(x, i)] * Q[(size_t)i];
            if (st.sign > 0) acc = acc + term;
            else acc = acc - term;
        }
        return acc;
    }

    /// Hecke-type operator on symbols from explicit coset representatives
    /// delta: (phi | T)(D)(P) = sum_delta phi(delta D)(delta . P).
    template <class Coef>
    std::vector<Coef> apply_operator(const std::vector<Coef>& values,
                                     const std::vector<Mat2>& deltas, const Coef& zero) const {
        std::vector<Coef> out((size_t)ncols(), zero);
        for (long x = 0; x < p1_.size(); ++x) {
            const Mat2& g = p1_.lifts[(size_t)x];
            for (const Mat2& delta : deltas) {
                Mat2 A = delta * g;
                Cusp from = apply(A, Cusp::of(0, 1));
                Cusp to = apply(A, Cusp::infinity());
                for (const SignedStep& st : decompose_path(from, to)) {
                    long y = p1_.index_bottom_row(st.u);
                    Mat2 gamma = st.u * p1_.lifts[(size_t)y].inv_unimodular();
                    Mat2 act = gamma.inv_unimodular() * delta;  // acts on the polynomial side
                    for (int i = 0; i <= k_; ++i) {
                        std::vector<Coef> mono((size_t)k_ + 1, zero);
                        mono[(size_t)i] = coef_from_qq<Coef>(zero, QQ(1));
                        std::vector<Coef> Q = poly_act(act, mono, k_, zero);
                        Coef term = zero;
                        for (int m = 0; m <= k_; ++m)
                            term = term + values[(size_t)col(y, m)] * Q[(size_t)m];
                        auto& slot = out[(size_t)col(x, i)];
                        if (st.sign > 0) slot = slot + term;
                        else slot = slot - term;
                    }
                }
            }
        }
        return out;
    }

    /// Coset representatives for T_ell (ell prime, not dividing N) or U_ell
    /// (ell | N) acting on symbols.
    std::vector<Mat2> hecke_cosets(long ell) const {
        std::vector<Mat2> deltas;
        for (long a = 0; a < ell; ++a) deltas.push_back(Mat2{1, a, 0, ell});
        if (N_ % ell != 0) {
            long li = inv_mod_long(ell, N_);
            Mat2 gamma = lift_sl2z_mod(li, 0, 0, mod_long(ell, N_), N_, p1_);
            deltas.push_back(gamma * Mat2{ell, 0, 0, 1});
        }
        return deltas;
    }

    /// Matrix of an operator on the solved basis (free columns).
    MatQQ operator_matrix(const std::vector<Mat2>& deltas) const {
        long d = dim();
        MatQQ M(d, d);
        for (long j = 0; j < d; ++j) {
            std::vector<QQ> fv((size_t)d, QQ(0));
            fv[(size_t)j] = 1;
            auto vals = materialise<QQ>(fv, QQ(0));
            auto out = apply_operator<QQ>(vals, deltas, QQ(0));
            for (long i = 0; i < d; ++i) M(i, j) = out[(size_t)solution_.free_cols[(size_t)i]];
        }
        return M;
    }
    MatQQ hecke_matrix(long ell) const { return operator_matrix(hecke_cosets(ell)); }
    MatQQ star_matrix() const { return operator_matrix({MAT_STAR}); }

private:
    template <class Coef>
    static Coef coef_from_qq(const Coef& zero, const QQ& q);

    void build() {
        std::vector<std::map<long, QQ>> rows;
        const QQ one(1);
        for (long x = 0; x < p1_.size(); ++x) {
            const Mat2& g = p1_.lifts[(size_t)x];
            // sigma relation: phi(D_{g sigma}) = -phi(D_g)
            {
                Mat2 gs = g * MAT_SIGMA;
                long y = p1_.index_bottom_row(gs);
                Mat2 gamma = gs * p1_.lifts[(size_t)y].inv_unimodular();
                // phi(D_{g sigma}) = phi(D_y) | gamma^{-1}
                for (int i = 0; i <= k_; ++i) {
                    std::map<long, QQ> row;
                    row[col(x, i)] += one;
                    add_poly_term(row, y, gamma.inv_unimodular(), i, one);
                    rows.push_back(std::move(row));
                }
            }
            // tau relation: phi(D_g) + phi(D_{g tau}) + phi(D_{g tau^2}) = 0
            {
                std::array<Mat2, 2> gts = {g * MAT_TAU, g * MAT_TAU * MAT_TAU};
                for (int i = 0; i <= k_; ++i) {
                    std::map<long, QQ> row;
                    row[col(x, i)] += one;
                    for (const Mat2& gt : gts) {
                        long y = p1_.index_bottom_row(gt);
                        Mat2 gamma = gt * p1_.lifts[(size_t)y].inv_unimodular();
                        add_poly_term(row, y, gamma.inv_unimodular(), i, one);
                    }
                    rows.push_back(std::move(row));
                }
            }
            // minus identity: phi(D_g)(P) = phi(D_g)((-I) . P); trivial for even k
            if (k_ % 2 == 1) {
                for (int i = 0; i <= k_; ++i) {
                    std::map<long, QQ> row;
                    row[col(x, i)] += QQ(2);
                    rows.push_back(std::move(row));
                }
            }
        }
        solution_ = solve_relations(ncols(), std::move(rows));
    }

    // accumulate  coeff * phi(D_y)(act . z^i)  into the row
    void add_poly_term(std::map<long, QQ>& row, long y, const Mat2& act, int i, const QQ& coeff) {
        std::vector<QQ> mono((size_t)k_ + 1, QQ(0));
        mono[(size_t)i] = 1;
        std::vector<QQ> Q = poly_act(act, mono, k_, QQ(0));
        for (int m = 0; m <= k_; ++m) {
            if (Q[(size_t)m] == 0) continue;
            row[col(y, m)] += coeff * Q[(size_t)m];
        }
    }

    long N_;
    int k_;
    P1Line p1_;
    RelationSolution solution_;
};

template <>
inline QQ ManinSymbolSpace::coef_from_qq<QQ>(const QQ&, const QQ& q) {
    return q;
}
template <>
inline QuadQ ManinSymbolSpace::coef_from_qq<QuadQ>(const QuadQ& zero, const QQ& q) {
    return QuadQ::constant(zero.t(), zero.n(), q);
}

}  // namespace padiclf
