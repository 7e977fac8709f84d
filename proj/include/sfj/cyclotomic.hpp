#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_n). Elements are stored as
// rational coordinate vectors on the power basis 1, z, ..., z^{phi(n)-1},
// always reduced modulo the n-th cyclotomic polynomial, so the zero element
// has a unique representation and equality testing is exact. Elements of
// different orders are compared/combined inside Q(zeta_lcm).

#include <cassert>
#include <complex>
#include <map>
#include <vector>

#include "arith.hpp"

namespace sfj {

namespace detail {

// Exact division of integer polynomials, divisor monic; asserts remainder 0.
inline std::vector<Int> poly_div_exact(std::vector<Int> num, const std::vector<Int>& den) {
    assert(!den.empty() && den.back() == 1);
    size_t dn = den.size() - 1;
    assert(num.size() >= den.size());
    std::vector<Int> q(num.size() - dn, 0);
    for (size_t j = num.size(); j-- > dn;) {
        Int t = num[j];
        if (t == 0) continue;
        q[j - dn] = t;
        for (size_t i = 0; i < den.size(); ++i) num[j - dn + i] -= t * den[i];
    }
    for (const Int& r : num) {
        (void)r;
        assert(r == 0);
    }
    return q;
}

}  // namespace detail

// Coefficients of Phi_n, ascending; computed as (x^n - 1) / prod_{d|n, d<n} Phi_d.
inline const std::vector<Int>& cyclotomic_polynomial(int64_t n) {
    assert(n >= 1);
    static std::map<int64_t, std::vector<Int>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<Int> poly(static_cast<size_t>(n) + 1, 0);
    poly[0] = -1;
    poly[static_cast<size_t>(n)] = 1;
    for (int64_t d : divisors(n))
        if (d < n) poly = detail::poly_div_exact(std::move(poly), cyclotomic_polynomial(d));
    return cache.emplace(n, std::move(poly)).first->second;
}

class Cyclotomic {
  public:
    Cyclotomic() : order_(1), c_{Rational(0)} {}
    explicit Cyclotomic(const Rational& r) : order_(1), c_{r} {}
    explicit Cyclotomic(const Int& r) : order_(1), c_{Rational(r)} {}
    explicit Cyclotomic(int64_t r) : order_(1), c_{Rational(r)} {}

    // zeta_n^k
    static Cyclotomic zeta(int64_t n, int64_t k) {
        assert(n >= 1);
        k %= n;
        if (k < 0) k += n;
        std::vector<Rational> a(static_cast<size_t>(k) + 1, Rational(0));
        a.back() = 1;
        return Cyclotomic(n, reduce(std::move(a), n));
    }

    int64_t order() const { return order_; }
    const std::vector<Rational>& coords() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }

    bool is_rational() const {
        for (size_t j = 1; j < c_.size(); ++j)
            if (c_[j] != 0) return false;
        return true;
    }

    // Requires is_rational().
    Rational as_rational() const {
        assert(is_rational());
        return c_[0];
    }

    Cyclotomic promoted(int64_t big) const {
        assert(big % order_ == 0);
        if (big == order_) return *this;
        int64_t stride = big / order_;
        std::vector<Rational> a(static_cast<size_t>(c_.size() - 1) * stride + 1, Rational(0));
        for (size_t j = 0; j < c_.size(); ++j) a[j * stride] = c_[j];
        return Cyclotomic(big, reduce(std::move(a), big));
    }

    friend Cyclotomic operator+(const Cyclotomic& x, const Cyclotomic& y) {
        int64_t L = std::lcm(x.order_, y.order_);
        Cyclotomic a = x.promoted(L), b = y.promoted(L);
        for (size_t j = 0; j < b.c_.size(); ++j) a.c_[j] += b.c_[j];
        a.collapse();
        return a;
    }

    friend Cyclotomic operator-(const Cyclotomic& x, const Cyclotomic& y) { return x + (-y); }

    Cyclotomic operator-() const {
        Cyclotomic r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend Cyclotomic operator*(const Cyclotomic& x, const Cyclotomic& y) {
        int64_t L = std::lcm(x.order_, y.order_);
        Cyclotomic a = x.promoted(L), b = y.promoted(L);
        std::vector<Rational> prod(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                if (b.c_[j] != 0) prod[i + j] += a.c_[i] * b.c_[j];
        }
        Cyclotomic r(L, reduce(std::move(prod), L));
        r.collapse();
        return r;
    }

    friend Cyclotomic operator*(const Rational& s, const Cyclotomic& x) {
        Cyclotomic r = x;
        for (auto& v : r.c_) v *= s;
        r.collapse();
        return r;
    }

    Cyclotomic& operator+=(const Cyclotomic& y) { return *this = *this + y; }
    Cyclotomic& operator*=(const Cyclotomic& y) { return *this = *this * y; }

    friend bool operator==(const Cyclotomic& x, const Cyclotomic& y) { return (x - y).is_zero(); }
    friend bool operator!=(const Cyclotomic& x, const Cyclotomic& y) { return !(x == y); }

    // complex conjugation: zeta -> zeta^{-1}
    Cyclotomic conj() const {
        std::vector<Rational> a(static_cast<size_t>(order_), Rational(0));
        if (order_ == 1) return *this;
        for (size_t j = 0; j < c_.size(); ++j) {
            int64_t e = (order_ - static_cast<int64_t>(j)) % order_;
            a[static_cast<size_t>(e)] += c_[j];
        }
        Cyclotomic r(order_, reduce(std::move(a), order_));
        r.collapse();
        return r;
    }

    // |z|^2 = z * conj(z); real, returned through the canonical embedding.
    double abs_sq() const {
        std::complex<double> z = to_complex();
        return z.real() * z.real() + z.imag() * z.imag();
    }

    std::complex<double> to_complex() const {
        std::complex<double> s = 0;
        const double tau = 6.283185307179586476925286766559;
        for (size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            double ang = tau * static_cast<double>(j) / static_cast<double>(order_);
            s += to_double(c_[j]) * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        return s;
    }

  private:
    Cyclotomic(int64_t order, std::vector<Rational> coords)
        : order_(order), c_(std::move(coords)) {}

    static std::vector<Rational> reduce(std::vector<Rational> a, int64_t n) {
        size_t un = static_cast<size_t>(n);
        if (a.size() > un) {
            for (size_t j = un; j < a.size(); ++j) a[j % un] += a[j];
            a.resize(un);
        }
        const auto& phi = cyclotomic_polynomial(n);
        size_t deg = phi.size() - 1;
        for (size_t j = a.size(); j-- > deg;) {
            if (a[j] == 0) continue;
            Rational q = a[j];
            for (size_t i = 0; i + 1 < phi.size(); ++i)
                if (phi[i] != 0) a[j - deg + i] -= q * Rational(phi[i]);
            a[j] = 0;
        }
        a.resize(deg);
        return a;
    }

    // Rational values drop back to order 1, keeping representations canonical
    // across mixed-order arithmetic.
    void collapse() {
        if (order_ > 1 && is_rational()) {
            Rational r = c_[0];
            order_ = 1;
            c_.assign(1, r);
        }
    }

    int64_t order_;
    std::vector<Rational> c_;
};

}  // namespace sfj
