#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>

#include "ringends/errors.hpp"

namespace ringends {

using Integer = mpz_class;

/// Exact rational number. Always stored in lowest terms with positive
/// denominator; arithmetic never rounds.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(static_cast<signed long>(n)) {} // NOLINT(google-explicit-constructor)
    Rational(const Integer& n) : v_(n) {}                 // NOLINT(google-explicit-constructor)
    Rational(const Integer& num, const Integer& den) : v_(num, den) {
        if (den == 0) throw error("Rational: zero denominator");
        v_.canonicalize();
    }
    Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    Integer numerator() const { return v_.get_num(); }
    Integer denominator() const { return v_.get_den(); }

    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    bool is_negative() const { return v_ < 0; }
    bool is_positive() const { return v_ > 0; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
    Rational operator/(const Rational& o) const {
        if (o.is_zero()) throw error("Rational: division by zero");
        return Rational(mpq_class(v_ / o.v_));
    }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator!=(const Rational& o) const { return v_ != o.v_; }
    bool operator<(const Rational& o) const { return v_ < o.v_; }
    bool operator<=(const Rational& o) const { return v_ <= o.v_; }
    bool operator>(const Rational& o) const { return v_ > o.v_; }
    bool operator>=(const Rational& o) const { return v_ >= o.v_; }

    Rational inverse() const {
        if (is_zero()) throw error("Rational: inverse of zero");
        return Rational(denominator(), numerator());
    }

    Rational pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        Rational r(1);
        Rational base = *this;
        while (e > 0) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    std::string str() const {
        if (is_integer()) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    /// Exact value as long; throws when it does not fit or is not integral.
    long as_long() const {
        if (!is_integer()) throw error("Rational: not an integer: " + str());
        if (!v_.get_num().fits_slong_p()) throw error("Rational: out of long range");
        return v_.get_num().get_si();
    }

    const mpq_class& raw() const { return v_; }

private:
    mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.is_negative() ? -r : r; }

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

} // namespace ringends
