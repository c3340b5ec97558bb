#pragma once

#include <gmpxx.h>

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace skt {

/// Exact Gaussian rational a + b*i with arbitrary-precision rational parts.
/// Every coefficient in the system is one of these; there is no floating
/// point anywhere.
class Scalar {
public:
    Scalar() : re_(0), im_(0) {}
    Scalar(long v) : re_(v), im_(0) {}
    Scalar(mpq_class re, mpq_class im = mpq_class(0))
        : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }

    static Scalar of(long num, long den = 1) {
        if (den == 0) throw std::invalid_argument("Scalar::of: zero denominator");
        mpq_class q(num, den);
        q.canonicalize();
        return Scalar(q);
    }

    static Scalar gauss(long re_num, long re_den, long im_num, long im_den) {
        if (re_den == 0 || im_den == 0)
            throw std::invalid_argument("Scalar::gauss: zero denominator");
        mpq_class a(re_num, re_den), b(im_num, im_den);
        a.canonicalize();
        b.canonicalize();
        return Scalar(a, b);
    }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }
    /// Real and strictly positive.
    bool is_positive_real() const { return im_ == 0 && re_ > 0; }

    Scalar conj() const { return Scalar(re_, -im_); }

    mpq_class norm2() const { return re_ * re_ + im_ * im_; }

    Scalar inverse() const {
        if (is_zero()) throw std::invalid_argument("Scalar::inverse: division by zero");
        mpq_class n = norm2();
        return Scalar(re_ / n, -im_ / n);
    }

    Scalar operator-() const { return Scalar(-re_, -im_); }

    Scalar& operator+=(const Scalar& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class i2 = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i2);
        return *this;
    }
    Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    /// Total order for use as a map key (lexicographic on (re, im)).
    friend bool operator<(const Scalar& a, const Scalar& b) {
        int c = cmp(a.re_, b.re_);
        if (c != 0) return c < 0;
        return cmp(a.im_, b.im_) < 0;
    }

    /// i^k for any integer k.
    static Scalar i_pow(long k) {
        long m = ((k % 4) + 4) % 4;
        switch (m) {
            case 0: return Scalar(1);
            case 1: return Scalar::i();
            case 2: return Scalar(-1);
            default: return -Scalar::i();
        }
    }

    /// (-1)^k.
    static Scalar sign_pow(long k) { return (k % 2 == 0) ? Scalar(1) : Scalar(-1); }

    /// Rough size in bits of all four integer components; used by the
    /// elimination pivot rule (smallest entry wins).
    std::size_t bit_size() const;

    /// Canonical text form, e.g. "0", "2", "-1/2", "1i", "1/2-3/4i".
    std::string str() const;

    /// Inverse of str(); also accepts a bare "i" and "-i".
    /// Throws std::invalid_argument on malformed input.
    static Scalar parse(const std::string& text);

private:
    mpq_class re_, im_;
};

}  // namespace skt
