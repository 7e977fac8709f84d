#pragma once

// Exact arithmetic base layer: big integer/rational aliases, prime sieve with
// smallest-prime-factor table, factorization, the multiplicative zoo
// (moebius, omega, sigma_k, totient), the full Kronecker symbol, Bernoulli
// numbers and binomials. Everything is exact; no floating point here.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace sfj {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using int128 = __int128;
using int256 = boost::multiprecision::int256_t;

inline double to_double(const Rational& x) { return x.convert_to<double>(); }
inline double to_double(const Int& x) { return x.convert_to<double>(); }

// ---------------------------------------------------------------------------
// primes

// Smallest-prime-factor sieve; spf[n] = least prime dividing n (n >= 2).
struct spf_sieve {
    std::vector<int32_t> spf;

    explicit spf_sieve(int64_t limit) : spf(static_cast<size_t>(std::max<int64_t>(limit, 1)) + 1, 0) {
        for (int64_t i = 2; i < static_cast<int64_t>(spf.size()); ++i) {
            if (spf[i] == 0) {
                for (int64_t j = i; j < static_cast<int64_t>(spf.size()); j += i)
                    if (spf[j] == 0) spf[j] = static_cast<int32_t>(i);
            }
        }
    }

    int64_t limit() const { return static_cast<int64_t>(spf.size()) - 1; }
    bool is_prime(int64_t n) const { return n >= 2 && spf[n] == n; }
};

inline std::vector<int64_t> primes_up_to(int64_t limit) {
    std::vector<int64_t> out;
    if (limit < 2) return out;
    std::vector<bool> comp(static_cast<size_t>(limit) + 1, false);
    for (int64_t i = 2; i <= limit; ++i) {
        if (!comp[i]) {
            out.push_back(i);
            for (int64_t j = i * i; j <= limit; j += i) comp[j] = true;
        }
    }
    return out;
}

// Trial division; intended for inputs up to ~1e12 (divisor loop is sqrt(n)).
inline std::vector<std::pair<int64_t, int>> factorize(int64_t n) {
    assert(n >= 1);
    std::vector<std::pair<int64_t, int>> f;
    for (int64_t p : {int64_t{2}, int64_t{3}, int64_t{5}}) {
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e) f.emplace_back(p, e);
    }
    // 6k +- 1 wheel.
    static const int steps[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    int64_t d = 7;
    int si = 0;
    while (d * d <= n) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) { n /= d; ++e; }
            f.emplace_back(d, e);
        }
        d += steps[si];
        si = (si + 1) & 7;
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

inline bool is_prime(int64_t n) {
    if (n < 2) return false;
    auto f = factorize(n);
    return f.size() == 1 && f[0].second == 1;
}

inline std::vector<int64_t> divisors(int64_t n) {
    std::vector<int64_t> out{1};
    for (const auto& [p, e] : factorize(n)) {
        size_t sz = out.size();
        int64_t pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t j = 0; j < sz; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// multiplicative functions

inline int moebius(int64_t n) {
    assert(n >= 1);
    int m = 1;
    for (const auto& [p, e] : factorize(n)) {
        (void)p;
        if (e > 1) return 0;
        m = -m;
    }
    return m;
}

inline int omega(int64_t n) {
    assert(n >= 1);
    return static_cast<int>(factorize(n).size());
}

inline bool is_squarefree(int64_t n) { return moebius(n) != 0; }

inline Int sigma_k(int k, int64_t n) {
    assert(n >= 1 && k >= 0);
    Int s = 1;
    for (const auto& [p, e] : factorize(n)) {
        // 1 + p^k + ... + p^(k e), computed exactly.
        Int pk = boost::multiprecision::pow(Int(p), static_cast<unsigned>(k));
        Int term = 1, pw = 1;
        for (int i = 1; i <= e; ++i) {
            pw *= pk;
            term += pw;
        }
        s *= term;
    }
    return s;
}

inline int64_t euler_totient(int64_t n) {
    assert(n >= 1);
    int64_t t = n;
    for (const auto& [p, e] : factorize(n)) {
        (void)e;
        t -= t / p;
    }
    return t;
}

// n = s * m^2 with s squarefree; returns {s, m}.
inline std::pair<int64_t, int64_t> squarefree_decompose(int64_t n) {
    assert(n >= 1);
    int64_t s = 1, m = 1;
    for (const auto& [p, e] : factorize(n)) {
        for (int i = 0; i < e / 2; ++i) m *= p;
        if (e & 1) s *= p;
    }
    return {s, m};
}

// ---------------------------------------------------------------------------
// Kronecker symbol (a|n), the full extension of Jacobi to all integers n.

inline int kronecker(int64_t a, int64_t n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0) return 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    int twos = 0;
    while ((n & 1) == 0) { n >>= 1; ++twos; }
    if (twos) {
        // (a|2) = 0, 1, -1 for a even, a = +-1 (8), a = +-3 (8).
        int64_t am8 = ((a % 8) + 8) % 8;
        if (am8 == 0 || am8 == 2 || am8 == 4 || am8 == 6) return 0;
        if ((twos & 1) && (am8 == 3 || am8 == 5)) result = -result;
    }
    a %= n;
    if (a < 0) a += n;
    // Jacobi symbol via reciprocity, n odd positive from here on.
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            int64_t nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5) result = -result;
        }
        std::swap(a, n);
        if ((a % 4 == 3) && (n % 4 == 3)) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

// True iff d is a fundamental discriminant (of a quadratic field, or 1).
inline bool is_fundamental_discriminant(int64_t d) {
    if (d == 1) return true;
    int64_t m = d % 4;
    if (m < 0) m += 4;
    if (m == 1) return is_squarefree(d < 0 ? -d : d);
    if (m == 0) {
        int64_t q = d / 4;
        int64_t qm = q % 4;
        if (qm < 0) qm += 4;
        return (qm == 2 || qm == 3) && is_squarefree(q < 0 ? -q : q);
    }
    return false;
}

// ---------------------------------------------------------------------------
// extended gcd: returns g = gcd(a, b) >= 0 and (u, v) with u a + v b = g.

struct ext_gcd_result {
    int64_t g, u, v;
};

inline ext_gcd_result ext_gcd(int64_t a, int64_t b) {
    int64_t old_r = a, r = b;
    int64_t old_u = 1, u = 0;
    int64_t old_v = 0, v = 1;
    while (r != 0) {
        int64_t q = old_r / r;
        old_r -= q * r; std::swap(old_r, r);
        old_u -= q * u; std::swap(old_u, u);
        old_v -= q * v; std::swap(old_v, v);
    }
    if (old_r < 0) { old_r = -old_r; old_u = -old_u; old_v = -old_v; }
    return {old_r, old_u, old_v};
}

// Inverse of a modulo m > 0; requires gcd(a, m) = 1.
inline int64_t inv_mod(int64_t a, int64_t m) {
    auto [g, u, v] = ext_gcd(((a % m) + m) % m, m);
    (void)v;
    assert(g == 1);
    return ((u % m) + m) % m;
}

// ---------------------------------------------------------------------------
// Bernoulli numbers (B1 = -1/2 convention) and binomial coefficients.

inline Int binomial(int64_t n, int64_t k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (int64_t i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;  // exact at every step: r is C(n-k+i, i)
    }
    return r;
}

// Memoized via sum_{j<=n} C(n+1, j) B_j = 0 for n >= 1.
inline const Rational& bernoulli(int n) {
    assert(n >= 0);
    static std::vector<Rational> cache{Rational(1), Rational(-1, 2)};
    while (static_cast<int>(cache.size()) <= n) {
        int m = static_cast<int>(cache.size());
        Rational s = 0;
        for (int j = 0; j < m; ++j) s += Rational(binomial(m + 1, j)) * cache[j];
        cache.push_back(-s / (m + 1));
    }
    return cache[n];
}

// zeta(1 - 2m) = -B_{2m} / (2m) for m >= 1.
inline Rational zeta_negative_odd(int one_minus_2m) {
    assert(one_minus_2m < 0 && (1 - one_minus_2m) % 2 == 0);
    int two_m = 1 - one_minus_2m;
    return -bernoulli(two_m) / two_m;
}

inline int64_t ipow(int64_t b, int e) {
    int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

inline Int ipow_int(const Int& b, unsigned e) { return boost::multiprecision::pow(b, e); }

}  // namespace sfj
