#pragma once

// Truncated q-expansions with exact rational coefficients. Precision
// bookkeeping follows the min rule: any binary operation is valid exactly on
// the range both operands cover.

#include <cassert>
#include <cstdint>
#include <vector>

#include "arith.hpp"
#include "errors.hpp"

namespace sfj {

class qseries {
  public:
    qseries() : c_{Rational(0)} {}
    explicit qseries(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { assert(!c_.empty()); }

    int64_t prec() const { return static_cast<int64_t>(c_.size()) - 1; }

    const Rational& operator[](int64_t n) const {
        if (n < 0 || n > prec()) throw out_of_precision("qseries: coefficient beyond precision");
        return c_[static_cast<size_t>(n)];
    }

    Rational& at(int64_t n) { return c_[static_cast<size_t>(n)]; }

    friend qseries operator+(const qseries& f, const qseries& g) {
        int64_t p = std::min(f.prec(), g.prec());
        std::vector<Rational> c(static_cast<size_t>(p) + 1);
        for (int64_t n = 0; n <= p; ++n) c[static_cast<size_t>(n)] = f[n] + g[n];
        return qseries(std::move(c));
    }

    friend qseries operator-(const qseries& f, const qseries& g) {
        int64_t p = std::min(f.prec(), g.prec());
        std::vector<Rational> c(static_cast<size_t>(p) + 1);
        for (int64_t n = 0; n <= p; ++n) c[static_cast<size_t>(n)] = f[n] - g[n];
        return qseries(std::move(c));
    }

    friend qseries operator*(const qseries& f, const qseries& g) {
        int64_t p = std::min(f.prec(), g.prec());
        std::vector<Rational> c(static_cast<size_t>(p) + 1, Rational(0));
        for (int64_t i = 0; i <= p; ++i) {
            if (f[i] == 0) continue;
            for (int64_t j = 0; i + j <= p; ++j)
                if (g[j] != 0) c[static_cast<size_t>(i + j)] += f[i] * g[j];
        }
        return qseries(std::move(c));
    }

    friend qseries operator*(const Rational& s, const qseries& f) {
        std::vector<Rational> c(f.c_);
        for (auto& x : c) x *= s;
        return qseries(std::move(c));
    }

    friend bool operator==(const qseries& f, const qseries& g) { return f.c_ == g.c_; }

  private:
    std::vector<Rational> c_;  // coefficients of q^0 .. q^prec
};

// E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n, even k >= 2.
inline qseries eisenstein(int k, int64_t prec) {
    assert(k >= 2 && k % 2 == 0 && prec >= 0);
    Rational factor = Rational(-2 * k) / bernoulli(k);
    std::vector<Rational> c(static_cast<size_t>(prec) + 1, Rational(0));
    c[0] = 1;
    // sigma_{k-1} by sieving divisors
    std::vector<Int> s(static_cast<size_t>(prec) + 1, Int(0));
    for (int64_t d = 1; d <= prec; ++d) {
        Int dk = ipow_int(Int(d), static_cast<unsigned>(k - 1));
        for (int64_t n = d; n <= prec; n += d) s[static_cast<size_t>(n)] += dk;
    }
    for (int64_t n = 1; n <= prec; ++n) c[static_cast<size_t>(n)] = factor * Rational(s[static_cast<size_t>(n)]);
    return qseries(std::move(c));
}

// Discriminant cusp form (E4^3 - E6^2)/1728.
inline qseries delta_series(int64_t prec) {
    qseries e4 = eisenstein(4, prec), e6 = eisenstein(6, prec);
    return Rational(1, 1728) * (e4 * e4 * e4 - e6 * e6);
}

}  // namespace sfj
