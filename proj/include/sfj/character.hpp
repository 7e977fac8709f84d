#pragma once

// Dirichlet characters with exact values: a character mod q stores, for each
// residue, an exponent e with chi(a) = zeta_ord^e (or zero off the units).
// Real characters expose Rational values directly; general ones go through
// Cyclotomic. Includes Kronecker characters, conductors/primitive parts,
// products, the full dual of (Z/q)^*, and generalized Bernoulli numbers.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <vector>

#include "abelian.hpp"
#include "arith.hpp"
#include "cyclotomic.hpp"
#include "errors.hpp"

namespace sfj {

struct char_value {
    bool zero;      // true when gcd(n, q) > 1
    int64_t ord;    // order of the character
    int64_t e;      // value is zeta_ord^e when !zero

    bool is_one() const { return !zero && e % ord == 0; }
};

class dirichlet_character {
  public:
    static dirichlet_character trivial(int64_t q) {
        assert(q >= 1);
        dirichlet_character chi;
        chi.modulus_ = q;
        chi.order_ = 1;
        chi.exps_.assign(static_cast<size_t>(q), -1);
        for (int64_t a = 0; a < q; ++a)
            if (std::gcd(a, q) == 1) chi.exps_[static_cast<size_t>(a)] = 0;
        if (q == 1) chi.exps_[0] = 0;
        return chi;
    }

    // Kronecker character a -> (D|a); D must be a fundamental discriminant.
    static dirichlet_character quadratic(int64_t D) {
        assert(is_fundamental_discriminant(D));
        if (D == 1) return trivial(1);
        int64_t q = D < 0 ? -D : D;
        dirichlet_character chi;
        chi.modulus_ = q;
        chi.order_ = 2;
        chi.exps_.assign(static_cast<size_t>(q), -1);
        for (int64_t a = 0; a < q; ++a) {
            int v = kronecker(D, a);
            if (v == 1) chi.exps_[static_cast<size_t>(a)] = 0;
            if (v == -1) chi.exps_[static_cast<size_t>(a)] = 1;
        }
        return chi;
    }

    // All phi(q) characters mod q, deterministic order (trivial first).
    static std::vector<dirichlet_character> all_mod(int64_t q) {
        assert(q >= 1);
        std::vector<int64_t> units;  // for q = 1 this is {0}, since gcd(0,1) = 1
        for (int64_t a = 0; a < q; ++a)
            if (std::gcd(a, q) == 1) units.push_back(a);
        const int n = static_cast<int>(units.size());
        std::vector<int> pos(static_cast<size_t>(q), -1);
        for (int i = 0; i < n; ++i) pos[static_cast<size_t>(units[i])] = i;
        std::vector<std::vector<int>> mul(n, std::vector<int>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) mul[i][j] = pos[static_cast<size_t>(units[i] * units[j] % q)];
        abelian_dual dual = dual_of(mul, pos[1 % q]);
        std::vector<dirichlet_character> out;
        out.reserve(dual.chars.size());
        for (const auto& table : dual.chars) {
            dirichlet_character chi;
            chi.modulus_ = q;
            chi.order_ = dual.exponent;
            chi.exps_.assign(static_cast<size_t>(q), -1);
            for (int i = 0; i < n; ++i) chi.exps_[static_cast<size_t>(units[i])] = table[i];
            chi.normalize();
            out.push_back(std::move(chi));
        }
        return out;
    }

    int64_t modulus() const { return modulus_; }
    int64_t order() const { return order_; }
    bool is_trivial() const { return order_ == 1; }
    bool is_real() const { return order_ <= 2; }

    char_value operator()(int64_t n) const {
        int64_t a = n % modulus_;
        if (a < 0) a += modulus_;
        int64_t e = exps_[static_cast<size_t>(a)];
        if (e < 0) return {true, order_, 0};
        return {false, order_, e};
    }

    // Requires a real character.
    Rational real_value(int64_t n) const {
        assert(is_real());
        char_value v = (*this)(n);
        if (v.zero) return 0;
        return v.is_one() ? 1 : -1;
    }

    Cyclotomic cyc_value(int64_t n) const {
        char_value v = (*this)(n);
        if (v.zero) return Cyclotomic();
        return Cyclotomic::zeta(v.ord, v.e);
    }

    bool is_even() const { return (*this)(modulus_ - 1).is_one() || modulus_ <= 2; }
    bool is_odd() const { return !is_even(); }

    // Smallest f | q with: a = 1 (mod f), gcd(a, q) = 1 implies chi(a) = 1.
    int64_t conductor() const {
        for (int64_t f : divisors(modulus_)) {
            bool ok = true;
            for (int64_t a = 1; a < modulus_ && ok; a += f)
                if (std::gcd(a, modulus_) == 1 && !(*this)(a).is_one()) ok = false;
            if (modulus_ == 1) ok = true;
            if (ok) return f;
        }
        assert(false);
        return modulus_;
    }

    // The primitive character mod conductor() inducing this one.
    dirichlet_character primitive_part() const {
        int64_t f = conductor();
        if (f == modulus_) return *this;
        dirichlet_character psi;
        psi.modulus_ = f;
        psi.order_ = order_;
        psi.exps_.assign(static_cast<size_t>(f), -1);
        for (int64_t a = 0; a < f; ++a) {
            if (std::gcd(a, f) != 1 && f > 1) continue;
            // lift a to a residue coprime to the full modulus
            int64_t b = a;
            while (std::gcd(b, modulus_) != 1) b += f;
            psi.exps_[static_cast<size_t>(a)] = exps_[static_cast<size_t>(b % modulus_)];
        }
        psi.normalize();
        return psi;
    }

    // Character mod M induced by this one; conductor must divide M.
    dirichlet_character attached_mod(int64_t M) const {
        dirichlet_character psi = primitive_part();
        if (M % psi.modulus_ != 0)
            throw conductor_obstruction("conductor " + std::to_string(psi.modulus_) +
                                        " does not divide " + std::to_string(M));
        dirichlet_character chi;
        chi.modulus_ = M;
        chi.order_ = psi.order_;
        chi.exps_.assign(static_cast<size_t>(M), -1);
        for (int64_t a = 0; a < M; ++a)
            if (std::gcd(a, M) == 1 || M == 1) {
                char_value v = psi(a);
                assert(!v.zero);
                chi.exps_[static_cast<size_t>(a)] = v.e;
            }
        chi.normalize();
        return chi;
    }

    friend dirichlet_character operator*(const dirichlet_character& x, const dirichlet_character& y) {
        int64_t M = std::lcm(x.modulus_, y.modulus_);
        int64_t E = std::lcm(x.order_, y.order_);
        dirichlet_character chi;
        chi.modulus_ = M;
        chi.order_ = E;
        chi.exps_.assign(static_cast<size_t>(M), -1);
        for (int64_t a = 0; a < M; ++a) {
            if (std::gcd(a, M) != 1 && M > 1) continue;
            char_value u = x(a), v = y(a);
            assert(!u.zero && !v.zero);
            chi.exps_[static_cast<size_t>(a)] = (u.e * (E / u.ord) + v.e * (E / v.ord)) % E;
        }
        if (M == 1) chi.exps_[0] = 0;
        chi.normalize();
        return chi;
    }

    friend bool operator==(const dirichlet_character& x, const dirichlet_character& y) {
        return x.modulus_ == y.modulus_ && x.order_ == y.order_ && x.exps_ == y.exps_;
    }

  private:
    // Reduce order_ to the true order and rescale exponents accordingly.
    void normalize() {
        int64_t g = order_;
        for (int64_t e : exps_)
            if (e > 0) g = std::gcd(g, e);
        if (g > 1) {
            for (auto& e : exps_)
                if (e > 0) e /= g;
            order_ /= g;
        }
        if (order_ < 1) order_ = 1;
    }

    int64_t modulus_ = 1;
    int64_t order_ = 1;
    std::vector<int64_t> exps_;  // exponent of zeta_order at each residue, -1 off units
};

// chi_{-4}, the odd primitive character mod 4.
inline dirichlet_character eps4() { return dirichlet_character::quadratic(-4); }

// Character of Q(sqrt(p)): Kronecker character of its discriminant.
inline dirichlet_character eps_prime(int64_t p) {
    assert(is_prime(p));
    int64_t D = (p % 4 == 1) ? p : 4 * p;
    return dirichlet_character::quadratic(D);
}

// Generalized Bernoulli number B_{k,chi} for a real character, evaluated on
// its primitive part: f^{k-1} sum_a chi(a) B_k(a/f) with f the conductor.
inline Rational gen_bernoulli(int k, const dirichlet_character& chi_in) {
    assert(k >= 1);
    if (!chi_in.is_real()) throw std::invalid_argument("gen_bernoulli: character must be real");
    dirichlet_character chi = chi_in.primitive_part();
    int64_t f = chi.modulus();
    // B_k(x) = sum_j C(k,j) B_j x^{k-j}
    Rational acc = 0;
    for (int64_t a = 1; a <= f; ++a) {
        Rational v = chi.real_value(a);
        if (v == 0) continue;
        Rational x(a, f), bk = 0, xp = 1;
        for (int j = k; j >= 0; --j) {  // ascending powers x^{k-j}
            bk += Rational(binomial(k, j)) * bernoulli(j) * xp;
            xp *= x;
        }
        acc += v * bk;
    }
    Rational fk = 1;
    for (int i = 1; i < k; ++i) fk *= f;
    return fk * acc;
}

// L(1-k, chi) = -B_{k,chi}/k for k >= 1 (real chi).
inline Rational dirichlet_L_negative(int one_minus_k, const dirichlet_character& chi) {
    int k = 1 - one_minus_k;
    assert(k >= 1);
    return -gen_bernoulli(k, chi) / k;
}

}  // namespace sfj
