#pragma once

// Exact rational arithmetic on 64-bit integers with overflow detection.
// The closed-form moment tables of the ergodic logistic map are exact
// fractions; keeping them exact makes the identity tests meaningful.
// Every operation reduces through gcd before multiplying, and throws
// std::overflow_error once a numerator or denominator no longer fits in
// int64 (raw moments stay representable through order 31).

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

namespace chaoticlms {

class Rational {
public:
    Rational() = default;
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        normalize();
    }

    long long num() const { return num_; }
    long long den() const { return den_; }

    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        const long long g = std::gcd(a.den_, b.den_);
        const long long bd = b.den_ / g;
        const long long num = checked_add(checked_mul(a.num_, bd),
                                          checked_mul(b.num_, a.den_ / g));
        const long long den = checked_mul(a.den_, bd);
        return Rational(num, den);
    }

    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

    Rational operator-() const {
        Rational r;
        r.num_ = checked_neg(num_);
        r.den_ = den_;
        return r;
    }

    friend Rational operator*(const Rational& a, const Rational& b) {
        // cross-reduce first so intermediates stay small
        const long long g1 = std::gcd(std::abs(a.num_), b.den_);
        const long long g2 = std::gcd(std::abs(b.num_), a.den_);
        Rational r;
        r.num_ = checked_mul(a.num_ / g1, b.num_ / g2);
        r.den_ = checked_mul(a.den_ / g2, b.den_ / g1);
        return r;
    }

    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        Rational inv;
        if (b.num_ < 0) {
            inv.num_ = checked_neg(b.den_);
            inv.den_ = checked_neg(b.num_);
        } else {
            inv.num_ = b.den_;
            inv.den_ = b.num_;
        }
        return a * inv;
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

private:
    long long num_ = 0;
    long long den_ = 1;

    void normalize() {
        if (den_ < 0) {
            num_ = checked_neg(num_);
            den_ = checked_neg(den_);
        }
        const long long g = std::gcd(std::abs(num_), den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    static long long checked_mul(long long a, long long b) {
        long long r;
        if (__builtin_mul_overflow(a, b, &r))
            throw std::overflow_error("Rational: 64-bit overflow in multiply");
        return r;
    }
    static long long checked_add(long long a, long long b) {
        long long r;
        if (__builtin_add_overflow(a, b, &r))
            throw std::overflow_error("Rational: 64-bit overflow in add");
        return r;
    }
    static long long checked_neg(long long a) {
        long long r;
        if (__builtin_sub_overflow(0LL, a, &r))
            throw std::overflow_error("Rational: 64-bit overflow in negate");
        return r;
    }
};

// C(n,k) as an exact rational, built as prod_{i=1..k} (n-k+i)/i so every
// partial product reduces to an integer-valued fraction.
inline Rational rational_binomial(unsigned n, unsigned k) {
    if (k > n) return Rational(0);
    if (k > n - k) k = n - k;
    Rational c(1);
    for (unsigned i = 1; i <= k; ++i)
        c = c * Rational(static_cast<long long>(n - k + i), static_cast<long long>(i));
    return c;
}

} // namespace chaoticlms
