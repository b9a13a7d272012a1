#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "ringends/errors.hpp"
#include "ringends/numtheory.hpp"
#include "ringends/rational.hpp"

namespace ringends {

/// A place of Q: the archimedean place or a rational prime.
struct Place {
    bool archimedean = false;
    long p = 0; // prime when finite

    static Place infinity() { return Place{true, 0}; }
    static Place prime(long q) {
        if (!is_prime(q)) throw error("Place: " + std::to_string(q) + " is not prime");
        return Place{false, q};
    }

    bool operator==(const Place& o) const {
        return archimedean == o.archimedean && (archimedean || p == o.p);
    }
    // finite places ascending, archimedean place last
    bool operator<(const Place& o) const {
        if (archimedean != o.archimedean) return !archimedean;
        return !archimedean && p < o.p;
    }
    std::string str() const { return archimedean ? "inf" : std::to_string(p); }
};

namespace detail {

// strips all factors of q from n, returning (valuation, unit part)
inline std::pair<long, Integer> split_valuation(Integer n, long q) {
    long v = 0;
    while (n % q == 0) { n /= q; ++v; }
    return {v, n};
}

} // namespace detail

/// Hilbert symbol (a, b)_v over the completion of Q at v: +1 when
/// z^2 = a x^2 + b y^2 has a nontrivial solution there, -1 otherwise.
/// Symmetric and bimultiplicative in a and b.
inline int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
    if (a.is_zero() || b.is_zero()) throw error("hilbert_symbol: arguments must be nonzero");
    // The symbol only depends on square classes; replace p/q by p*q.
    Integer x = a.numerator() * a.denominator();
    Integer y = b.numerator() * b.denominator();
    if (v.archimedean) return (x < 0 && y < 0) ? -1 : 1;
    long q = v.p;
    auto [alpha, u] = detail::split_valuation(x, q);
    auto [beta, w] = detail::split_valuation(y, q);
    if (q != 2) {
        int s = 1;
        if ((alpha * beta) % 2 && ((q - 1) / 2) % 2) s = -s;
        if (beta % 2) s *= legendre(u, q);
        if (alpha % 2) s *= legendre(w, q);
        return s;
    }
    // p = 2: epsilon(u) = (u-1)/2 mod 2, omega(u) = (u^2-1)/8 mod 2 on 2-adic units
    auto eps = [](const Integer& t) { return static_cast<long>(mpz_class((t - 1) / 2).get_si() & 1); };
    auto omg = [](const Integer& t) { return static_cast<long>(mpz_class((t * t - 1) / 8).get_si() & 1); };
    long e = eps(u) * eps(w) + (alpha % 2) * omg(w) + (beta % 2) * omg(u);
    return (e % 2) ? -1 : 1;
}

/// Places where the quaternion algebra (a, b / Q) ramifies, i.e. where the
/// Hilbert symbol is -1. Finite candidates are the primes dividing 2ab.
inline std::vector<Place> ramified_places(const Rational& a, const Rational& b) {
    if (a.is_zero() || b.is_zero()) throw error("ramified_places: arguments must be nonzero");
    std::set<long> primes{2};
    for (long p : prime_divisors(a.numerator())) primes.insert(p);
    for (long p : prime_divisors(a.denominator())) primes.insert(p);
    for (long p : prime_divisors(b.numerator())) primes.insert(p);
    for (long p : prime_divisors(b.denominator())) primes.insert(p);
    std::vector<Place> out;
    for (long p : primes)
        if (hilbert_symbol(a, b, Place::prime(p)) == -1) out.push_back(Place::prime(p));
    if (hilbert_symbol(a, b, Place::infinity()) == -1) out.push_back(Place::infinity());
    std::sort(out.begin(), out.end());
    return out;
}

inline std::string places_str(const std::vector<Place>& ps) {
    std::string s = "{";
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (i) s += ",";
        s += ps[i].str();
    }
    return s + "}";
}

} // namespace ringends
