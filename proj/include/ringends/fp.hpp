#pragma once

#include <cstdint>
#include <ostream>

#include "ringends/errors.hpp"
#include "ringends/numtheory.hpp"

namespace ringends {

/// Element of a prime field F_p, carrying its modulus. A modulus of 0 acts
/// as a wildcard for additive/multiplicative identities produced by generic
/// code (x - x, x / x); mixed operations adopt the concrete modulus.
class Fp {
public:
    Fp() : v_(0), p_(0) {}
    Fp(long v, long p) : p_(p) {
        if (p < 0) throw error("Fp: negative modulus");
        if (p == 0) { v_ = v; return; }
        v_ = v % p;
        if (v_ < 0) v_ += p;
    }

    long value() const { return v_; }
    long modulus() const { return p_; }

    friend Fp operator+(Fp x, const Fp& y) {
        long p = merge(x.p_, y.p_);
        return Fp(x.v_ + y.v_, p);
    }
    friend Fp operator-(Fp x, const Fp& y) {
        long p = merge(x.p_, y.p_);
        return Fp(x.v_ - y.v_, p);
    }
    friend Fp operator*(Fp x, const Fp& y) {
        long p = merge(x.p_, y.p_);
        if (p == 0) return Fp(x.v_ * y.v_, 0);
        return Fp((x.v_ * y.v_) % p, p);
    }
    friend Fp operator/(Fp x, const Fp& y) {
        long p = merge(x.p_, y.p_);
        if (p == 0) {
            if (y.v_ == 0) throw error("Fp: division by zero");
            return Fp(x.v_ / y.v_, 0);
        }
        if (y.v_ % p == 0) throw error("Fp: division by zero");
        return Fp((x.v_ % p) * inv_mod(y.v_, p), p);
    }
    Fp& operator+=(const Fp& y) { *this = *this + y; return *this; }
    Fp& operator-=(const Fp& y) { *this = *this - y; return *this; }
    Fp& operator*=(const Fp& y) { *this = *this * y; return *this; }

    friend bool operator==(const Fp& x, const Fp& y) {
        long p = merge(x.p_, y.p_);
        if (p == 0) return x.v_ == y.v_;
        long a = x.v_ % p, b = y.v_ % p;
        if (a < 0) a += p;
        if (b < 0) b += p;
        return a == b;
    }
    friend bool operator!=(const Fp& x, const Fp& y) { return !(x == y); }

    Fp pow(long e) const {
        if (p_ == 0) throw error("Fp: pow needs a modulus");
        return Fp(pow_mod(v_, e, p_), p_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.v_; }

private:
    static long merge(long p, long q) {
        if (p == 0) return q;
        if (q == 0) return p;
        if (p != q) throw error("Fp: modulus mismatch");
        return p;
    }

    long v_;
    long p_;
};

} // namespace ringends
