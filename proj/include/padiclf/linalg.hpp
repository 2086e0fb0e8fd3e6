#pragma once

#include "common.hpp"

namespace padiclf {

/// Solution of a sparse homogeneous QQ-linear system: free columns parametrise
/// the kernel, every column carries an expression in the free ones.
struct RelationSolution {
    long ncols = 0;
    std::vector<long> free_cols;
    std::vector<std::vector<std::pair<long, QQ>>> expr;  // expr[col]: (free slot, coeff)

    long dim() const { return (long)free_cols.size(); }

    /// Materialise a full value vector from values on the free columns.
    template <class Coef, class FromQQ>
    std::vector<Coef> materialise(const std::vector<Coef>& free_values, const Coef& zero,
                                  FromQQ scale) const {
        std::vector<Coef> out((size_t)ncols, zero);
        for (long c = 0; c < ncols; ++c)
            for (auto& [slot, q] : expr[(size_t)c]) out[(size_t)c] = out[(size_t)c] + scale(free_values[(size_t)slot], q);
        return out;
    }
};

/// Row-echelon solve, then back-substitution; rows are sparse maps col -> coeff.
inline RelationSolution solve_relations(long ncols, std::vector<std::map<long, QQ>> rows) {
    // forward elimination: distinct leading columns
    std::map<long, std::vector<std::map<long, QQ>>> byLead;
    auto push = [&](std::map<long, QQ>&& r) {
        while (!r.empty() && r.begin()->second == 0) r.erase(r.begin());
        // clean zeros
        for (auto it = r.begin(); it != r.end();) {
            if (it->second == 0) it = r.erase(it);
            else ++it;
        }
        if (!r.empty()) byLead[r.begin()->first].push_back(std::move(r));
    };
    for (auto& r : rows) push(std::move(r));

    std::map<long, std::map<long, QQ>> pivot_rows;  // pivot col -> normalized row
    while (!byLead.empty()) {
        auto it = byLead.begin();
        long c = it->first;
        auto bucket = std::move(it->second);
        byLead.erase(it);
        // sparsest row as pivot
        size_t best = 0;
        for (size_t i = 1; i < bucket.size(); ++i)
            if (bucket[i].size() < bucket[best].size()) best = i;
        std::map<long, QQ> piv = std::move(bucket[best]);
        QQ lead = piv.begin()->second;
        for (auto& [k, v] : piv) v /= lead;
        for (size_t i = 0; i < bucket.size(); ++i) {
            if (i == best) continue;
            auto& r = bucket[i];
            QQ f = r.begin()->second;
            for (auto& [k, v] : piv) {
                auto jt = r.find(k);
                if (jt == r.end()) r.emplace(k, -f * v);
                else {
                    jt->second -= f * v;
                    if (jt->second == 0) r.erase(jt);
                }
            }
            push(std::move(r));
        }
        pivot_rows.emplace(c, std::move(piv));
    }

    RelationSolution sol;
    sol.ncols = ncols;
    sol.expr.assign((size_t)ncols, {});
    std::vector<long> slot_of((size_t)ncols, -1);
    for (long c = 0; c < ncols; ++c) {
        if (pivot_rows.count(c)) continue;
        slot_of[(size_t)c] = (long)sol.free_cols.size();
        sol.free_cols.push_back(c);
        sol.expr[(size_t)c] = {{slot_of[(size_t)c], QQ(1)}};
    }
    // back-substitute pivot columns in decreasing order
    for (auto it = pivot_rows.rbegin(); it != pivot_rows.rend(); ++it) {
        long c = it->first;
        std::map<long, QQ> acc;  // free slot -> coeff
        for (auto& [k, v] : it->second) {
            if (k == c) continue;
            for (auto& [slot, q] : sol.expr[(size_t)k]) {
                acc[slot] -= v * q;
            }
        }
        auto& e = sol.expr[(size_t)c];
        for (auto& [slot, q] : acc)
            if (q != 0) e.push_back({slot, q});
    }
    return sol;
}

/// Dense rational matrix (row-major), sized for desk-scale Hecke algebra.
struct MatQQ {
    long n = 0, m = 0;
    std::vector<QQ> a;

    MatQQ() = default;
    MatQQ(long n_, long m_) : n(n_), m(m_), a((size_t)(n_ * m_), QQ(0)) {}
    QQ& operator()(long i, long j) { return a[(size_t)(i * m + j)]; }
    const QQ& operator()(long i, long j) const { return a[(size_t)(i * m + j)]; }

    static MatQQ identity(long n) {
        MatQQ I(n, n);
        for (long i = 0; i < n; ++i) I(i, i) = 1;
        return I;
    }
    MatQQ operator*(const MatQQ& o) const {
        require(m == o.n, "MatQQ: dimension mismatch");
        MatQQ r(n, o.m);
        for (long i = 0; i < n; ++i)
            for (long k = 0; k < m; ++k) {
                const QQ& x = (*this)(i, k);
                if (x == 0) continue;
                for (long j = 0; j < o.m; ++j) {
                    const QQ& y = o(k, j);
                    if (y == 0) continue;
                    r(i, j) += x * y;
                }
            }
        return r;
    }
    MatQQ operator+(const MatQQ& o) const {
        MatQQ r = *this;
        for (size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
        return r;
    }
    MatQQ operator-(const MatQQ& o) const {
        MatQQ r = *this;
        for (size_t i = 0; i < a.size(); ++i) r.a[i] -= o.a[i];
        return r;
    }
    MatQQ scaled(const QQ& s) const {
        MatQQ r = *this;
        for (auto& x : r.a) x *= s;
        return r;
    }
    QQ trace() const {
        QQ t = 0;
        for (long i = 0; i < n; ++i) t += (*this)(i, i);
        return t;
    }
    bool commutes_with(const MatQQ& o) const { return ((*this) * o).a == (o * (*this)).a; }
};

/// Characteristic polynomial by Faddeev-LeVerrier; exact, monic,
/// coefficients c[0..n] with c[n] = 1 (c[i] multiplies X^i).
inline std::vector<QQ> charpoly(const MatQQ& A) {
    long n = A.n;
    std::vector<QQ> c((size_t)n + 1, QQ(0));
    c[(size_t)n] = 1;
    MatQQ M = MatQQ::identity(n);
    for (long k = 1; k <= n; ++k) {
        MatQQ AM = A * M;
        QQ ck = -AM.trace() / QQ(k);
        c[(size_t)(n - k)] = ck;
        if (k < n) {
            M = AM;
            for (long i = 0; i < n; ++i) M(i, i) += ck;
        }
    }
    return c;
}

inline QQ poly_eval(const std::vector<QQ>& poly, const QQ& x) {
    QQ r = 0;
    for (size_t i = poly.size(); i-- > 0;) r = r * x + poly[i];
    return r;
}

/// Kernel of a dense rational matrix (right kernel), as column vectors.
inline std::vector<std::vector<QQ>> kernel(const MatQQ& A) {
    long n = A.n, m = A.m;
    MatQQ R = A;
    std::vector<long> pivot_col_of_row;
    std::vector<bool> is_pivot((size_t)m, false);
    long row = 0;
    for (long col = 0; col < m && row < n; ++col) {
        long pr = -1;
        for (long i = row; i < n; ++i)
            if (R(i, col) != 0) { pr = i; break; }
        if (pr == -1) continue;
        for (long j = 0; j < m; ++j) std::swap(R(pr, j), R(row, j));
        QQ inv = R(row, col);
        for (long j = 0; j < m; ++j) R(row, j) /= inv;
        for (long i = 0; i < n; ++i) {
            if (i == row || R(i, col) == 0) continue;
            QQ f = R(i, col);
            for (long j = 0; j < m; ++j) R(i, j) -= f * R(row, j);
        }
        pivot_col_of_row.push_back(col);
        is_pivot[(size_t)col] = true;
        ++row;
    }
    std::vector<std::vector<QQ>> basis;
    for (long col = 0; col < m; ++col) {
        if (is_pivot[(size_t)col]) continue;
        std::vector<QQ> v((size_t)m, QQ(0));
        v[(size_t)col] = 1;
        for (size_t i = 0; i < pivot_col_of_row.size(); ++i) v[(size_t)pivot_col_of_row[i]] = -R((long)i, col);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline MatQQ transpose(const MatQQ& A) {
    MatQQ T(A.m, A.n);
    for (long i = 0; i < A.n; ++i)
        for (long j = 0; j < A.m; ++j) T(j, i) = A(i, j);
    return T;
}

/// Newton polygon of a polynomial sum c_i X^i with respect to p: slopes of the
/// lower convex hull of (i, v_p(c_i)), as (slope, multiplicity) with the root
/// valuation convention (slope h occurs once per root of valuation h).
struct NewtonSlope {
    QQ slope;
    long mult;
};

inline QQ qq_valuation(const QQ& x, long p) {
    require(x != 0, "qq_valuation: zero");
    ZZ num = x.get_num(), den = x.get_den();
    long v = 0;
    while (mod_zz(num, ZZ(p)) == 0) { num /= p; ++v; }
    while (mod_zz(den, ZZ(p)) == 0) { den /= p; --v; }
    return QQ(v);
}

inline std::vector<NewtonSlope> newton_slopes(const std::vector<std::optional<QQ>>& vals) {
    // vals[i] = v(c_i), nullopt for c_i = 0 (treated as +infinity)
    long n = (long)vals.size() - 1;
    std::vector<std::pair<long, QQ>> pts;
    for (long i = 0; i <= n; ++i)
        if (vals[(size_t)i]) pts.push_back({i, *vals[(size_t)i]});
    require(!pts.empty() && pts.back().first == n, "newton_slopes: leading coefficient vanishes");
    // lower convex hull, left to right
    std::vector<std::pair<long, QQ>> hull;
    for (auto& pt : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            // drop b if it lies above segment a-pt
            QQ lhs = (b.second - a.second) * QQ(pt.first - a.first);
            QQ rhs = (pt.second - a.second) * QQ(b.first - a.first);
            if (lhs >= rhs) hull.pop_back();
            else break;
        }
        hull.push_back(pt);
    }
    std::vector<NewtonSlope> out;
    for (size_t i = 0; i + 1 < hull.size(); ++i) {
        long len = hull[i + 1].first - hull[i].first;
        QQ slope = (hull[i].second - hull[i + 1].second) / QQ(len);
        out.push_back({slope, len});
    }
    return out;
}

inline std::vector<NewtonSlope> newton_slopes_qq(const std::vector<QQ>& poly, long p) {
    std::vector<std::optional<QQ>> vals(poly.size());
    for (size_t i = 0; i < poly.size(); ++i)
        if (poly[i] != 0) vals[i] = qq_valuation(poly[i], p);
    return newton_slopes(vals);
}

}  // namespace padiclf
