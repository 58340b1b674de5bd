#ifndef VARPI_RATIONAL_HPP
#define VARPI_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <string>

#include "varpi/errors.hpp"

namespace varpi {

/// Exact rational number with a +infinity marker, used for valuations.
/// Normalized so den > 0 and gcd(num, den) = 1; infinity is den == 0.
/// All valuations in the library are normalized by val(varpi) = 1, so the
/// numbers stay tiny; intermediates go through __int128 and overflow of the
/// 64-bit result is a hard error rather than silent wraparound.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) { init(n, d); }

    static Rational infinity() {
        Rational r;
        r.num_ = 1;
        r.den_ = 0;
        return r;
    }

    bool is_infinite() const { return den_ == 0; }
    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return den_ != 0 && num_ == 0; }
    bool is_negative() const { return den_ != 0 && num_ < 0; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (a.is_infinite() || b.is_infinite()) return infinity();
        __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
        __int128 d = (__int128)a.den_ * b.den_;
        return make(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        if (a.is_infinite()) {
            if (b.is_infinite()) throw domain_error("rational: inf - inf");
            return infinity();
        }
        if (b.is_infinite()) throw domain_error("rational: x - inf");
        __int128 n = (__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_;
        return make(n, (__int128)a.den_ * b.den_);
    }
    Rational operator-() const {
        if (is_infinite()) throw domain_error("rational: -inf");
        Rational r(*this);
        r.num_ = -r.num_;
        return r;
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        if (a.is_infinite() || b.is_infinite()) {
            if (a.is_zero() || b.is_zero()) throw domain_error("rational: 0 * inf");
            return infinity();
        }
        return make((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw domain_error("rational: division by zero");
        if (b.is_infinite()) throw domain_error("rational: division by inf");
        if (a.is_infinite()) return infinity();
        return make((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }

    // Total order with +inf greater than everything (and equal to itself).
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        if (a.is_infinite()) return false;
        if (b.is_infinite()) return true;
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    friend Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
    friend Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

    /// Floor as an integer; error on infinity.
    long long floor() const {
        if (is_infinite()) throw domain_error("rational: floor(inf)");
        long long q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }
    long long ceil() const {
        if (is_infinite()) throw domain_error("rational: ceil(inf)");
        long long q = num_ / den_;
        if (num_ % den_ != 0 && num_ > 0) ++q;
        return q;
    }
    bool is_integer() const { return den_ == 1; }

    std::string str() const {
        if (is_infinite()) return "inf";
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

  private:
    void init(long long n, long long d) {
        if (d == 0) throw domain_error("rational: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        long long g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        num_ = n;
        den_ = d;
    }
    static Rational make(__int128 n, __int128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 a = n < 0 ? -n : n;
        __int128 g = gcd128(a, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        constexpr __int128 lim = (__int128)INT64_MAX;
        if (n > lim || n < -lim || d > lim) throw domain_error("rational: overflow");
        Rational r;
        r.num_ = (long long)n;
        r.den_ = (long long)d;
        return r;
    }
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    long long num_, den_;
};

} // namespace varpi

#endif
