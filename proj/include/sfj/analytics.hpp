#pragma once

// Smoothed second-moment sums over half-integral forms, the Moebius
// squarefree sieve S(M, X; f), growth-slope diagnostics, the 19^omega(r)
// bound check for U(r^2), and the elementary prime-product ratio lemma.
//
// This is the only layer where floating point enters: each |a~(n)|^2 is
// computed exactly upstream and converted once, sums are compensated, and
// the truncation policy P >= 40 X keeps the e^{-n/X} tail below e^{-40}.
// Prime products beyond the sieving cap carry a certified analytic tail
// (sum_{p > P} y/p^2 < y/P), so reported ratio values are upper bounds.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "arith.hpp"
#include "errors.hpp"
#include "halfint.hpp"

namespace sfj {

inline constexpr double truncation_multiplier = 40.0;  // require P >= 40 X
inline constexpr int64_t prime_product_cap = 20000000;  // sieving cap for prime products

namespace detail {

struct kahan {
    double s = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double value() const { return s; }
};

inline const std::vector<int64_t>& capped_primes() {
    static const std::vector<int64_t> ps = primes_up_to(prime_product_cap);
    return ps;
}

}  // namespace detail

// least-squares slope of y against x through the origin
inline double ls_slope_origin(const std::vector<double>& xs, const std::vector<double>& ys) {
    assert(xs.size() == ys.size() && !xs.empty());
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sxy += xs[i] * ys[i];
        sxx += xs[i] * xs[i];
    }
    assert(sxx > 0);
    return sxy / sxx;
}

// sum_{1 <= n <= P, filter(n)} |a~(f, n)|^2 e^{-n/X}
template <class V, class Filter>
double smoothed_sum(const halfint_form<V>& f, double X, Filter&& filter) {
    assert(X > 0);
    if (static_cast<double>(f.prec()) < truncation_multiplier * X)
        throw precision_too_low("smoothed_sum: need precision >= 40 X");
    detail::kahan acc;
    for (int64_t n = 1; n <= f.prec(); ++n) {
        if (!filter(n)) continue;
        acc.add(f.normalized_sq(n) * std::exp(-static_cast<double>(n) / X));
    }
    return acc.value();
}

template <class V>
double smoothed_sum(const halfint_form<V>& f, double X) {
    return smoothed_sum(f, X, [](int64_t) { return true; });
}

// ---------------------------------------------------------------------------
// growth diagnostics

struct growth_report {
    std::vector<double> grid;
    std::vector<double> values;           // R(X) per grid point
    std::vector<double> doubling_ratios;  // R(2X) / R(X)
    double slope = 0;                     // least-squares through the origin
};

template <class V>
growth_report growth_diagnostics(const halfint_form<V>& f, const std::vector<double>& grid) {
    assert(!grid.empty());
    growth_report rep;
    rep.grid = grid;
    for (double X : grid) {
        double rX = smoothed_sum(f, X);
        rep.values.push_back(rX);
        rep.doubling_ratios.push_back(smoothed_sum(f, 2 * X) / rX);
    }
    rep.slope = ls_slope_origin(rep.grid, rep.values);
    return rep;
}

// ---------------------------------------------------------------------------
// squarefree sieve

// sum_{r^2 | n} mu(r) = [n squarefree] for all n <= bound
inline bool sieve_identity_selftest(int64_t bound) {
    std::vector<int32_t> acc(static_cast<size_t>(bound) + 1, 0);
    for (int64_t r = 1; r * r <= bound; ++r) {
        int mu = moebius(r);
        if (mu == 0) continue;
        for (int64_t m = r * r; m <= bound; m += r * r) acc[static_cast<size_t>(m)] += mu;
    }
    for (int64_t n = 1; n <= bound; ++n)
        if (acc[static_cast<size_t>(n)] != (is_squarefree(n) ? 1 : 0)) return false;
    return true;
}

// S(M, X; f) = sum over squarefree d coprime to M of |a~(f, d)|^2 e^{-d/X},
// computed directly and through the Moebius/U(r^2) expansion; the two
// regroupings of the same finite term set must agree to float roundoff.
// M even keeps every admissible index odd.
template <class V>
double sieve_S(const halfint_form<V>& f, int64_t M, double X) {
    if (M < 2 || M % 2 != 0 || !is_squarefree(M))
        throw std::invalid_argument("sieve_S: M must be even and squarefree");
    if (static_cast<double>(f.prec()) < truncation_multiplier * X)
        throw precision_too_low("sieve_S: need precision >= 40 X");
    const int64_t P = f.prec();

    detail::kahan direct;
    for (int64_t d = 1; d <= P; ++d) {
        if (std::gcd(d, M) != 1 || !is_squarefree(d)) continue;
        direct.add(f.normalized_sq(d) * std::exp(-static_cast<double>(d) / X));
    }

    detail::kahan expanded;
    for (int64_t r = 1; r * r <= P; ++r) {
        if (std::gcd(r, M) != 1) continue;
        int mu = moebius(r);
        if (mu == 0) continue;
        halfint_form<V> uf = u_op(f, r);
        detail::kahan inner;
        for (int64_t n = 1; n <= uf.prec(); ++n) {
            if (std::gcd(n, M) != 1) continue;
            inner.add(uf.normalized_sq(n) * std::exp(-static_cast<double>(r * r * n) / X));
        }
        expanded.add(mu * inner.value());
    }

    double a = direct.value(), b = expanded.value();
    double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
    if (std::fabs(a - b) / scale >= 1e-12)
        throw inconsistent_table("sieve_S: direct and expanded sums disagree");
    return a;
}

struct sieve_report {
    int64_t M = 0;
    std::vector<double> grid;
    std::vector<double> values;
    double slope = 0;
    bool identity_ok = false;  // direct/expanded agreement held at every grid point
};

template <class V>
sieve_report make_sieve_report(const halfint_form<V>& f, int64_t M,
                               const std::vector<double>& grid) {
    assert(!grid.empty());
    sieve_report rep;
    rep.M = M;
    rep.grid = grid;
    for (double X : grid) rep.values.push_back(sieve_S(f, M, X));  // throws if the identity fails
    rep.identity_ok = true;
    rep.slope = ls_slope_origin(rep.grid, rep.values);
    return rep;
}

// ---------------------------------------------------------------------------
// 19^omega(r) bound check for U(r^2)

struct ur2_report {
    int64_t r = 1;
    std::vector<double> grid;
    std::vector<double> values;  // S_r(Y) per grid point
    std::vector<double> ratios;  // S_r(Y) / (C_hat Y)
    double c_hat = 0;            // slope of the r = 1 sum over the same grid
    double max_ratio = 0;
    double bound_factor = 4;  // 19^omega(r) times the safety factor 4
    bool within_bound = false;
};

// S_r(Y) = sum |a~(U(r^2) f, n)|^2 e^{-n/Y} against the calibration line
// C_hat Y fitted from r = 1 on the same grid; the admissible envelope is
// 19^omega(r) times a safety factor of 4 (an empirical surrogate constant,
// reported rather than asserted as sharp).
template <class V>
ur2_report bound_check_ur2(const halfint_form<V>& f, int64_t r, const std::vector<double>& grid) {
    assert(!grid.empty());
    if (r < 1 || r % 2 == 0 || !is_squarefree(r))
        throw std::invalid_argument("bound_check_ur2: r must be odd and squarefree");
    if (std::gcd(r, f.level()) != 1)
        throw std::invalid_argument("bound_check_ur2: r must be coprime to the level");

    ur2_report rep;
    rep.r = r;
    rep.grid = grid;
    std::vector<double> base;
    for (double Y : grid) base.push_back(smoothed_sum(f, Y));
    rep.c_hat = ls_slope_origin(grid, base);
    assert(rep.c_hat > 0);

    halfint_form<V> uf = u_op(f, r);
    for (double Y : grid) {
        double sY = smoothed_sum(uf, Y);
        rep.values.push_back(sY);
        rep.ratios.push_back(sY / (rep.c_hat * Y));
    }
    rep.max_ratio = *std::max_element(rep.ratios.begin(), rep.ratios.end());
    rep.bound_factor = 4.0 * std::pow(19.0, static_cast<double>(omega(r)));
    rep.within_bound = rep.max_ratio <= rep.bound_factor;
    return rep;
}

// ---------------------------------------------------------------------------
// prime-product ratio lemma and the choice of M

namespace detail {

// -1 + prod_{T < p} (1 + y/p^2), sieved to the cap with a certified
// analytic tail: the omitted factors are bounded by exp(y / cap).
inline double prime_tail_product(double y, double T) {
    double log_num = 0;
    for (int64_t p : capped_primes())
        if (static_cast<double>(p) > T)
            log_num += std::log1p(y / (static_cast<double>(p) * static_cast<double>(p)));
    return std::expm1(log_num + y / static_cast<double>(prime_product_cap));
}

inline double euler_factor_product(double T) {  // prod_{p <= T} (1 - 1/p)
    double v = 1;
    for (int64_t p : capped_primes()) {
        if (static_cast<double>(p) > T) break;
        v *= 1.0 - 1.0 / static_cast<double>(p);
    }
    return v;
}

}  // namespace detail

// (-1 + prod_{p > T} (1 + y/p^2)) / prod_{p <= T} (1 - 1/p), as a certified
// upper bound; tends to 0 as T grows.
inline double easylemma_ratio(double y, double T) {
    assert(y >= 0);
    assert(T >= 2);
    return detail::prime_tail_product(y, T) / detail::euler_factor_product(T);
}

struct chosen_M {
    int64_t T = 0;
    Int M;  // product of all primes <= T
};

// Doubling scan for the smallest T = 2^j with
//   slope_lower prod_{p <= T} (1 - 1/p) > slope_upper (-1 + prod_{p > T} (1 + y/p^2)),
// returning the primorial of T. Degenerate surrogate slopes exhaust the cap.
inline chosen_M choose_M(double y, double slope_lower, double slope_upper,
                         int64_t t_cap = int64_t{1} << 20) {
    assert(y >= 0);
    assert(slope_upper >= 0);
    for (int64_t T = 2; T <= t_cap; T *= 2) {
        double lhs = slope_lower * detail::euler_factor_product(static_cast<double>(T));
        double rhs = slope_upper * detail::prime_tail_product(y, static_cast<double>(T));
        if (lhs > rhs) {
            chosen_M out;
            out.T = T;
            out.M = 1;
            for (int64_t p : detail::capped_primes()) {
                if (p > T) break;
                out.M *= p;
            }
            return out;
        }
    }
    throw not_found("choose_M: no admissible T below the cap; surrogate slopes too pessimistic");
}

}  // namespace sfj
