#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "ringends/errors.hpp"
#include "ringends/rational.hpp"

namespace ringends {

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Prime factorization by trial division, as (prime, exponent) pairs in
/// ascending prime order. Group orders and quaternion parameters are tiny,
/// so nothing faster is needed.
inline std::vector<std::pair<long, int>> factorize(long n) {
    if (n <= 0) throw error("factorize: argument must be positive");
    std::vector<std::pair<long, int>> out;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline long euler_phi(long n) {
    if (n < 1) throw error("euler_phi: argument must be positive");
    long r = n;
    for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

inline std::vector<long> divisors(long n) {
    std::vector<long> ds;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        ds.push_back(d);
        if (d != n / d) ds.push_back(n / d);
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

inline long gcd(long a, long b) { return std::gcd(a, b); }
inline long lcm(long a, long b) { return std::lcm(a, b); }

inline long pow_mod(long base, long exp, long mod) {
    long r = 1 % mod;
    base %= mod;
    if (base < 0) base += mod;
    while (exp > 0) {
        if (exp & 1) r = (r * base) % mod;
        base = (base * base) % mod;
        exp >>= 1;
    }
    return r;
}

inline long inv_mod(long a, long m) {
    long a1 = a % m;
    if (a1 < 0) a1 += m;
    long r0 = a1, r1 = m, s0 = 1, s1 = 0;
    while (r1 != 0) {
        long q = r0 / r1;
        long rt = r0 - q * r1; r0 = r1; r1 = rt;
        long st = s0 - q * s1; s0 = s1; s1 = st;
    }
    if (r0 != 1) throw error("inv_mod: not invertible");
    long r = s0 % m;
    return r < 0 ? r + m : r;
}

/// Smallest primitive root modulo an odd prime p.
inline long primitive_root(long p) {
    if (!is_prime(p)) throw error("primitive_root: modulus not prime");
    if (p == 2) return 1;
    auto fac = factorize(p - 1);
    for (long g = 2; g < p; ++g) {
        bool ok = true;
        for (auto [q, e] : fac)
            if (pow_mod(g, (p - 1) / q, p) == 1) { ok = false; break; }
        if (ok) return g;
    }
    throw internal_error("primitive_root: none found");
}

/// Legendre symbol (a|p) for an odd prime p.
inline int legendre(const Integer& a, long p) {
    Integer pz(p);
    return mpz_legendre(a.get_mpz_t(), pz.get_mpz_t());
}

/// Kronecker symbol (a|n).
inline int kronecker(const Integer& a, const Integer& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

/// Squarefree part of a nonzero integer, carrying the sign: n = s * m^2
/// with s squarefree, returns s. Trial division; the cofactor is accepted
/// only when provably prime.
inline Integer squarefree_part(Integer n) {
    if (n == 0) throw error("squarefree_part: zero argument");
    Integer s = 1;
    if (n < 0) { s = -1; n = -n; }
    for (Integer p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e % 2) s *= p;
    }
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 40) == 0)
            throw unsupported_error("squarefree_part: cofactor too large to certify");
        s *= n;
    }
    return s;
}

/// Squarefree part of a nonzero rational modulo squares:
/// p/q = squarefree_part(p*q) * (square).
inline Integer squarefree_part(const Rational& r) {
    if (r.is_zero()) throw error("squarefree_part: zero argument");
    return squarefree_part(Integer(r.numerator() * r.denominator()));
}

inline std::vector<long> prime_divisors(const Integer& n) {
    Integer m = n < 0 ? Integer(-n) : n;
    if (m == 0) throw error("prime_divisors: zero argument");
    std::vector<long> ps;
    for (Integer p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        ps.push_back(p.get_si());
        while (m % p == 0) m /= p;
    }
    if (m > 1) {
        if (!m.fits_slong_p()) throw unsupported_error("prime_divisors: factor out of range");
        ps.push_back(m.get_si());
    }
    return ps;
}

} // namespace ringends
