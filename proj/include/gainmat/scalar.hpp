#pragma once

#include <string>

#include "gainmat/errors.hpp"
#include "gainmat/rational.hpp"

namespace gainmat {

inline bool is_square_free(unsigned n) {
    if (n < 2) return false;
    for (unsigned p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) return false;
    return true;
}

// Element a + b*sqrt(n) of a real quadratic field. n = 0 marks a pure rational
// (then b = 0 by invariant); mixing two distinct nonzero n in one operation is
// a context error. Operations over one square-free n are exact field arithmetic.
class Scalar {
  public:
    Scalar() : n_(0) {}
    Scalar(int v) : a_(v), n_(0) {}
    Scalar(long long v) : a_(v), n_(0) {}
    Scalar(const BigInt& v) : a_(v), n_(0) {}
    Scalar(const Rational& v) : a_(v), n_(0) {}

    // a + b*sqrt(n); n = 0 requires b = 0, n > 0 must be square-free.
    static Scalar quad(const Rational& a, const Rational& b, unsigned n) {
        if (n == 0) {
            if (b != 0) throw context_error("sqrt(0) context with nonzero irrational part");
            return Scalar(a);
        }
        if (!is_square_free(n)) throw input_error("quadratic context " + std::to_string(n) + " is not square-free");
        Scalar s;
        s.a_ = a;
        s.b_ = b;
        s.n_ = (b == 0) ? 0 : n;  // b = 0 collapses to the rational context
        return s;
    }

    static Scalar sqrt_of(unsigned n) { return quad(0, 1, n); }

    const Rational& rational_part() const { return a_; }
    const Rational& radical_part() const { return b_; }
    unsigned context() const { return n_; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return n_ == 0; }

    friend bool operator==(const Scalar& x, const Scalar& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.n_ == y.n_;
    }
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

    Scalar operator-() const {
        Scalar r = *this;
        r.a_ = -r.a_;
        r.b_ = -r.b_;
        return r;
    }

    friend Scalar operator+(const Scalar& x, const Scalar& y) {
        const unsigned n = joint_context(x, y);
        return make(x.a_ + y.a_, x.b_ + y.b_, n);
    }
    friend Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }

    friend Scalar operator*(const Scalar& x, const Scalar& y) {
        const unsigned n = joint_context(x, y);
        return make(x.a_ * y.a_ + Rational(BigInt(n)) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, n);
    }

    friend Scalar operator/(const Scalar& x, const Scalar& y) {
        if (y.is_zero()) throw error("division by zero scalar");
        const unsigned n = joint_context(x, y);
        // 1/(a + b sqrt(n)) = (a - b sqrt(n)) / (a^2 - n b^2); the norm is nonzero
        // because sqrt(n) is irrational for square-free n >= 2.
        const Rational norm = y.a_ * y.a_ - Rational(BigInt(n)) * y.b_ * y.b_;
        const Scalar conj = make(y.a_ / norm, -y.b_ / norm, n);
        return x * conj;
    }

    Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
    Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
    Scalar& operator*=(const Scalar& y) { return *this = *this * y; }
    Scalar& operator/=(const Scalar& y) { return *this = *this / y; }

    std::string str() const {
        if (b_ == 0) return to_string(a_);
        std::string s;
        if (a_ != 0) s = to_string(a_);
        if (b_ > 0 && a_ != 0) s += "+";
        if (b_ == -1)
            s += "-";
        else if (b_ != 1)
            s += to_string(b_) + "*";
        s += "sqrt(" + std::to_string(n_) + ")";
        return s;
    }

  private:
    static unsigned joint_context(const Scalar& x, const Scalar& y) {
        if (x.n_ == 0) return y.n_;
        if (y.n_ == 0 || x.n_ == y.n_) return x.n_;
        throw context_error("mixed quadratic contexts sqrt(" + std::to_string(x.n_) + ") and sqrt(" +
                            std::to_string(y.n_) + ")");
    }

    static Scalar make(Rational a, Rational b, unsigned n) {
        Scalar s;
        s.a_ = std::move(a);
        s.b_ = std::move(b);
        s.n_ = (s.b_ == 0) ? 0 : n;
        return s;
    }

    Rational a_, b_;
    unsigned n_;
};

}  // namespace gainmat
