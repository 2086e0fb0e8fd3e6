#pragma once

#include "common.hpp"

namespace padiclf {

/// Exact element x + y*alpha of Q[alpha]/(alpha^2 - t*alpha + n).
/// Carries stabilised-symbol values when the Hecke root alpha is irrational
/// (e.g. a_p = 0, alpha^2 = -p^{k+1}); for rational alpha the y-part stays 0.
class QuadQ {
public:
    QuadQ() : t_(0), n_(0), x_(0), y_(0) {}
    QuadQ(long t, long n, QQ x, QQ y) : t_(t), n_(n), x_(std::move(x)), y_(std::move(y)) {}
    static QuadQ constant(long t, long n, const QQ& x) { return QuadQ(t, n, x, 0); }
    static QuadQ root(long t, long n) { return QuadQ(t, n, 0, 1); }

    long t() const { return t_; }
    long n() const { return n_; }
    const QQ& x() const { return x_; }
    const QQ& y() const { return y_; }
    bool is_zero() const { return x_ == 0 && y_ == 0; }
    bool is_rational() const { return y_ == 0; }

    QuadQ operator+(const QuadQ& o) const { return QuadQ(t_, n_, x_ + o.x_, y_ + o.y_); }
    QuadQ operator-(const QuadQ& o) const { return QuadQ(t_, n_, x_ - o.x_, y_ - o.y_); }
    QuadQ operator-() const { return QuadQ(t_, n_, -x_, -y_); }
    QuadQ operator*(const QuadQ& o) const {
        // (x + y a)(u + v a) = xu - yv n + (xv + yu + yv t) a
        QQ yv = y_ * o.y_;
        return QuadQ(t_, n_, x_ * o.x_ - yv * n_, x_ * o.y_ + y_ * o.x_ + yv * t_);
    }
    QuadQ& operator+=(const QuadQ& o) { x_ += o.x_; y_ += o.y_; return *this; }
    QuadQ& operator-=(const QuadQ& o) { x_ -= o.x_; y_ -= o.y_; return *this; }
    QuadQ& operator*=(const QuadQ& o) { *this = *this * o; return *this; }
    bool operator==(const QuadQ& o) const { return x_ == o.x_ && y_ == o.y_; }
    bool operator!=(const QuadQ& o) const { return !(*this == o); }

    QuadQ operator*(const QQ& c) const { return QuadQ(t_, n_, x_ * c, y_ * c); }

    QuadQ conj() const { return QuadQ(t_, n_, x_ + y_ * t_, -y_); }
    QQ norm() const { return x_ * x_ + x_ * y_ * t_ + y_ * y_ * n_; }
    QuadQ inv() const {
        QQ nm = norm();
        require(nm != 0, "QuadQ: division by zero");
        QuadQ cj = conj();
        return QuadQ(t_, n_, cj.x_ / nm, cj.y_ / nm);
    }

private:
    long t_, n_;  // defining relation alpha^2 = t*alpha - n
    QQ x_, y_;
};

}  // namespace padiclf
