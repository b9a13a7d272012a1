#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ringends/errors.hpp"
#include "ringends/numtheory.hpp"
#include "ringends/rational.hpp"

namespace ringends {

namespace detail {

/// Coefficients of the n-th cyclotomic polynomial, ascending degree,
/// computed as (x^n - 1) / prod_{d|n, d<n} Phi_d. Memoized.
inline const std::vector<Integer>& cyclotomic_polynomial(long n) {
    static std::mutex mu;
    static std::map<long, std::vector<Integer>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    std::vector<Integer> num(n + 1, Integer(0));
    num[0] = -1;
    num[n] = 1;
    for (long d : divisors(n)) {
        if (d == n) continue;
        const auto& phi_d = cyclotomic_polynomial(d);
        // num /= phi_d  (exact division of monic polynomials)
        std::vector<Integer> q(num.size() - phi_d.size() + 1, Integer(0));
        std::vector<Integer> r = num;
        for (long i = static_cast<long>(q.size()) - 1; i >= 0; --i) {
            Integer c = r[i + phi_d.size() - 1];
            q[i] = c;
            if (c == 0) continue;
            for (std::size_t j = 0; j < phi_d.size(); ++j)
                r[i + j] -= c * phi_d[j];
        }
        for (const auto& c : r)
            if (c != 0) throw internal_error("cyclotomic_polynomial: division not exact");
        num = std::move(q);
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(n, std::move(num)).first->second;
}

/// Per-conductor reduction data: x^k mod Phi_n for k in [0, n), each a
/// vector of phi(n) integer coefficients.
struct CycBasis {
    long n = 1;
    long phi = 1;
    std::vector<std::vector<Integer>> powrem; // [k][i], k in [0,n), i in [0,phi)
};

inline const CycBasis& cyc_basis(long n) {
    static std::mutex mu;
    static std::map<long, std::unique_ptr<CycBasis>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;

    auto basis = std::make_unique<CycBasis>();
    basis->n = n;
    basis->phi = euler_phi(n);
    auto poly = cyclotomic_polynomial(n); // monic, degree phi
    long deg = basis->phi;
    basis->powrem.resize(n);
    // x^k for k < deg is itself; for higher k use x^k = x * x^(k-1) mod Phi.
    for (long k = 0; k < n; ++k) {
        std::vector<Integer> v(deg, Integer(0));
        if (k < deg) {
            v[k] = 1;
        } else {
            const auto& prev = basis->powrem[k - 1];
            // multiply by x
            std::vector<Integer> shifted(deg + 1, Integer(0));
            for (long i = 0; i < deg; ++i) shifted[i + 1] = prev[i];
            Integer lead = shifted[deg];
            for (long i = 0; i < deg; ++i)
                v[i] = shifted[i] - lead * poly[i];
        }
        basis->powrem[k] = std::move(v);
    }
    auto* ptr = basis.get();
    cache[n] = std::move(basis);
    return *ptr;
}

} // namespace detail

/// Exact element of the cyclotomic field Q(zeta_n), stored in the power
/// basis 1, zeta, ..., zeta^(phi(n)-1) modulo the n-th cyclotomic
/// polynomial. Values over different conductors compare equal when they
/// agree after embedding into the lcm conductor.
class CycNumber {
public:
    CycNumber() : n_(1) {}
    CycNumber(const Rational& r) : n_(1) { // NOLINT(google-explicit-constructor)
        if (!r.is_zero()) coeff_[0] = r;
    }
    CycNumber(long v) : CycNumber(Rational(v)) {} // NOLINT(google-explicit-constructor)

    /// zeta_n^k.
    static CycNumber root_of_unity(long n, long k) {
        return from_powers(n, {{k, Rational(1)}});
    }

    /// Reduction of a formal sum  sum_i c_i * zeta_n^(e_i)  to canonical form.
    static CycNumber from_powers(long n, const std::vector<std::pair<long, Rational>>& terms) {
        if (n < 1) throw error("CycNumber: conductor must be positive");
        const auto& basis = detail::cyc_basis(n);
        CycNumber out;
        out.n_ = n;
        for (const auto& [e, c] : terms) {
            if (c.is_zero()) continue;
            long k = e % n;
            if (k < 0) k += n;
            const auto& rem = basis.powrem[k];
            for (long i = 0; i < basis.phi; ++i) {
                if (rem[i] == 0) continue;
                out.add_coeff(i, c * Rational(rem[i]));
            }
        }
        return out;
    }

    long conductor() const { return n_; }
    const std::map<long, Rational>& coefficients() const { return coeff_; }

    bool is_zero() const { return coeff_.empty(); }
    bool is_rational() const {
        return coeff_.empty() || (coeff_.size() == 1 && coeff_.begin()->first == 0);
    }
    Rational as_rational() const {
        if (coeff_.empty()) return Rational(0);
        if (!is_rational()) throw error("CycNumber: not rational: " + str());
        return coeff_.begin()->second;
    }

    /// Re-expression in Q(zeta_m) for a multiple m of the conductor.
    CycNumber embedded(long m) const {
        if (m % n_ != 0) throw error("CycNumber: embedding conductor not a multiple");
        if (m == n_) return *this;
        long step = m / n_;
        std::vector<std::pair<long, Rational>> terms;
        for (const auto& [e, c] : coeff_) terms.emplace_back(e * step, c);
        return from_powers(m, terms);
    }

    friend CycNumber operator+(const CycNumber& x, const CycNumber& y) {
        auto [a, b] = aligned(x, y);
        CycNumber out = a;
        for (const auto& [e, c] : b.coeff_) out.add_coeff(e, c);
        return out;
    }
    friend CycNumber operator-(const CycNumber& x, const CycNumber& y) {
        auto [a, b] = aligned(x, y);
        CycNumber out = a;
        for (const auto& [e, c] : b.coeff_) out.add_coeff(e, -c);
        return out;
    }
    CycNumber operator-() const {
        CycNumber out;
        out.n_ = n_;
        for (const auto& [e, c] : coeff_) out.coeff_[e] = -c;
        return out;
    }
    friend CycNumber operator*(const CycNumber& x, const CycNumber& y) {
        auto [a, b] = aligned(x, y);
        std::vector<std::pair<long, Rational>> terms;
        for (const auto& [e1, c1] : a.coeff_)
            for (const auto& [e2, c2] : b.coeff_)
                terms.emplace_back(e1 + e2, c1 * c2);
        return from_powers(a.n_, terms);
    }
    CycNumber& operator+=(const CycNumber& y) { *this = *this + y; return *this; }
    CycNumber& operator-=(const CycNumber& y) { *this = *this - y; return *this; }
    CycNumber& operator*=(const CycNumber& y) { *this = *this * y; return *this; }

    CycNumber operator*(const Rational& r) const {
        CycNumber out;
        if (r.is_zero()) return out;
        out.n_ = n_;
        for (const auto& [e, c] : coeff_) out.coeff_[e] = c * r;
        return out;
    }

    CycNumber pow(long k) const {
        CycNumber r(Rational(1));
        CycNumber base = *this;
        if (k < 0) throw error("CycNumber: negative power unsupported");
        while (k > 0) {
            if (k & 1) r *= base;
            base *= base;
            k >>= 1;
        }
        return r;
    }

    friend bool operator==(const CycNumber& x, const CycNumber& y) {
        auto [a, b] = aligned(x, y);
        return a.coeff_ == b.coeff_;
    }
    friend bool operator!=(const CycNumber& x, const CycNumber& y) { return !(x == y); }

    /// Galois automorphism zeta_n -> zeta_n^k, extended Q-linearly.
    /// Requires gcd(k, n) = 1.
    CycNumber galois(long k) const {
        long kk = k % n_;
        if (kk < 0) kk += n_;
        if (n_ == 1) return *this;
        if (gcd(kk, n_) != 1)
            throw error("galois: exponent " + std::to_string(k) + " not coprime to conductor " +
                        std::to_string(n_));
        std::vector<std::pair<long, Rational>> terms;
        for (const auto& [e, c] : coeff_) terms.emplace_back(e * kk, c);
        return from_powers(n_, terms);
    }

    CycNumber conjugate() const { return galois(n_ <= 2 ? 1 : n_ - 1); }

    /// Equivalent value over the smallest conductor dividing the current
    /// one. Offered, never forced by the arithmetic.
    CycNumber minimized() const {
        for (long d : divisors(n_)) {
            if (d == n_) break;
            // candidate: does the value lie in Q(zeta_d)?
            if (n_ % d != 0) continue;
            CycNumber cand;
            if (in_subfield(d, cand)) return cand;
        }
        return *this;
    }

    /// Deterministic total order (for sorting character rows): compares the
    /// coefficient vectors over the lcm conductor lexicographically.
    static int compare(const CycNumber& x, const CycNumber& y) {
        auto [a, b] = aligned(x, y);
        long phi = detail::cyc_basis(a.n_).phi;
        for (long i = 0; i < phi; ++i) {
            Rational ca = a.coeff_at(i), cb = b.coeff_at(i);
            if (ca < cb) return -1;
            if (cb < ca) return 1;
        }
        return 0;
    }

    std::string str() const {
        if (coeff_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : coeff_) {
            Rational ac = abs(c);
            if (first) {
                if (c.is_negative()) os << "-";
                first = false;
            } else {
                os << (c.is_negative() ? " - " : " + ");
            }
            bool unit = (ac == Rational(1));
            if (e == 0) {
                os << ac.str();
            } else {
                if (!unit) os << ac.str() << "*";
                os << "z" << n_;
                if (e > 1) os << "^" << e;
            }
        }
        return os.str();
    }

    Rational coeff_at(long e) const {
        auto it = coeff_.find(e);
        return it == coeff_.end() ? Rational(0) : it->second;
    }

private:
    static std::pair<CycNumber, CycNumber> aligned(const CycNumber& x, const CycNumber& y) {
        long m = lcm(x.n_, y.n_);
        return {x.embedded(m), y.embedded(m)};
    }

    void add_coeff(long e, const Rational& c) {
        auto it = coeff_.find(e);
        if (it == coeff_.end()) {
            if (!c.is_zero()) coeff_[e] = c;
            return;
        }
        it->second += c;
        if (it->second.is_zero()) coeff_.erase(it);
    }

    bool in_subfield(long d, CycNumber& out) const {
        // Solve  this = sum_i x_i * embedded(zeta_d^i)  exactly.
        const auto& bd = detail::cyc_basis(d);
        const auto& bn = detail::cyc_basis(n_);
        long step = n_ / d;
        // columns: images of zeta_d^i in the power basis of Q(zeta_n)
        std::vector<std::vector<Rational>> cols;
        for (long i = 0; i < bd.phi; ++i) {
            const auto& rem = bn.powrem[(i * step) % n_];
            std::vector<Rational> col(bn.phi, Rational(0));
            for (long j = 0; j < bn.phi; ++j) col[j] = Rational(rem[j]);
            cols.push_back(std::move(col));
        }
        std::vector<Rational> target(bn.phi, Rational(0));
        for (const auto& [e, c] : coeff_) target[e] = c;
        // Gaussian elimination on the augmented system.
        std::size_t rows = bn.phi, ncols = cols.size();
        std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(ncols + 1, Rational(0)));
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < ncols; ++j) m[i][j] = cols[j][i];
            m[i][ncols] = target[i];
        }
        std::size_t row = 0;
        std::vector<long> pivot_col(ncols, -1);
        for (std::size_t col = 0; col < ncols && row < rows; ++col) {
            std::size_t sel = row;
            while (sel < rows && m[sel][col].is_zero()) ++sel;
            if (sel == rows) continue;
            std::swap(m[sel], m[row]);
            Rational piv = m[row][col];
            for (auto& x : m[row]) x /= piv;
            for (std::size_t i = 0; i < rows; ++i) {
                if (i == row) continue;
                Rational f = m[i][col];
                if (f.is_zero()) continue;
                for (std::size_t j = col; j <= ncols; ++j) m[i][j] -= f * m[row][j];
            }
            pivot_col[col] = static_cast<long>(row);
            ++row;
        }
        for (std::size_t i = row; i < rows; ++i)
            if (!m[i][ncols].is_zero()) return false;
        std::vector<std::pair<long, Rational>> terms;
        for (std::size_t col = 0; col < ncols; ++col) {
            long r = pivot_col[col];
            if (r < 0) continue;
            if (!m[r][ncols].is_zero()) terms.emplace_back(static_cast<long>(col), m[r][ncols]);
        }
        out = from_powers(d, terms);
        return true;
    }

    long n_;
    std::map<long, Rational> coeff_; // exponent in [0, phi(n)) -> nonzero coeff
};

inline std::ostream& operator<<(std::ostream& os, const CycNumber& c) { return os << c.str(); }

/// zeta_n -> zeta_n^k on a value, rejecting k not coprime to the conductor.
inline CycNumber galois_act(const CycNumber& x, long k) { return x.galois(k); }

/// Minimal polynomial of x over Q: monic coefficient vector, ascending
/// degree. Exact linear algebra over the power basis.
inline std::vector<Rational> minimal_polynomial(const CycNumber& x) {
    long n = x.conductor();
    long phi = detail::cyc_basis(n).phi;
    std::vector<CycNumber> powers;
    powers.push_back(CycNumber(Rational(1)));
    // Find the first linear dependence among 1, x, x^2, ...
    std::vector<std::vector<Rational>> rows;
    auto to_vec = [&](const CycNumber& c) {
        CycNumber e = c.embedded(n);
        std::vector<Rational> v(phi, Rational(0));
        for (const auto& [ex, co] : e.coefficients()) v[ex] = co;
        return v;
    };
    for (long k = 1; k <= phi + 1; ++k) {
        powers.push_back(powers.back() * x);
        // solve: powers[k] = sum_{i<k} c_i powers[i]?
        std::size_t cols = k, dim = phi;
        std::vector<std::vector<Rational>> m(dim, std::vector<Rational>(cols + 1, Rational(0)));
        for (std::size_t i = 0; i < cols; ++i) {
            auto v = to_vec(powers[i]);
            for (std::size_t r = 0; r < dim; ++r) m[r][i] = v[r];
        }
        auto tv = to_vec(powers[k]);
        for (std::size_t r = 0; r < dim; ++r) m[r][cols] = tv[r];
        // Gaussian elimination
        std::size_t row = 0;
        std::vector<long> where(cols, -1);
        for (std::size_t col = 0; col < cols && row < dim; ++col) {
            std::size_t sel = row;
            while (sel < dim && m[sel][col].is_zero()) ++sel;
            if (sel == dim) continue;
            std::swap(m[sel], m[row]);
            Rational piv = m[row][col];
            for (auto& xx : m[row]) xx /= piv;
            for (std::size_t i = 0; i < dim; ++i) {
                if (i == row) continue;
                Rational f = m[i][col];
                if (f.is_zero()) continue;
                for (std::size_t j = col; j <= cols; ++j) m[i][j] -= f * m[row][j];
            }
            where[col] = static_cast<long>(row);
            ++row;
        }
        bool consistent = true;
        for (std::size_t i = row; i < dim; ++i)
            if (!m[i][cols].is_zero()) { consistent = false; break; }
        if (!consistent) continue;
        std::vector<Rational> poly(k + 1, Rational(0));
        poly[k] = Rational(1);
        for (std::size_t col = 0; col < cols; ++col)
            poly[col] = where[col] >= 0 ? -m[where[col]][cols] : Rational(0);
        return poly;
    }
    throw internal_error("minimal_polynomial: no dependence found");
}

} // namespace ringends
