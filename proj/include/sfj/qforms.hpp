#pragma once

// Binary quadratic forms (a, b, c) <-> a x^2 + b x y + c y^2, positive
// definite, with the matrix [[a, b/2], [b/2, c]] half-integral. Throughout,
// D denotes 4ac - b^2 > 0 (the form's discriminant is -D). Provides
// reduction with an exact record of the unimodular change of variables,
// representation of odd primes with completion to SL2(Z), enumeration of
// reduced forms, class groups with Gauss composition, and twisted class
// sums with exact cyclotomic values.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <numeric>
#include <vector>

#include "abelian.hpp"
#include "arith.hpp"
#include "cyclotomic.hpp"
#include "errors.hpp"

namespace sfj {

struct quad_form {
    int64_t a, b, c;

    int64_t disc() const { return 4 * a * c - b * b; }  // = -discriminant > 0
    int64_t content() const { return std::gcd(std::gcd(a, b), c); }
    bool is_positive_definite() const { return a > 0 && disc() > 0; }
    int64_t eval(int64_t x, int64_t y) const { return a * x * x + b * x * y + c * y * y; }

    bool is_reduced() const {
        if (!(std::abs(b) <= a && a <= c)) return false;
        if ((std::abs(b) == a || a == c) && b < 0) return false;
        return true;
    }

    friend bool operator==(const quad_form& f, const quad_form& g) {
        return f.a == g.a && f.b == g.b && f.c == g.c;
    }
    friend bool operator<(const quad_form& f, const quad_form& g) {
        if (f.a != g.a) return f.a < g.a;
        if (f.b != g.b) return f.b < g.b;
        return f.c < g.c;
    }
};

// [[p, q], [r, s]], determinant +1.
struct unimodular {
    int64_t p = 1, q = 0, r = 0, s = 1;

    int64_t det() const { return p * s - q * r; }

    friend unimodular operator*(const unimodular& u, const unimodular& v) {
        return {u.p * v.p + u.q * v.r, u.p * v.q + u.q * v.s,
                u.r * v.p + u.s * v.r, u.r * v.q + u.s * v.s};
    }
    friend bool operator==(const unimodular& u, const unimodular& v) {
        return u.p == v.p && u.q == v.q && u.r == v.r && u.s == v.s;
    }
};

// (f . U)(x, y) = f(p x + q y, r x + s y); Gram matrices: U^T F U.
inline quad_form apply(const quad_form& f, const unimodular& u) {
    assert(u.det() == 1);
    int64_t a = f.eval(u.p, u.r);
    int64_t c = f.eval(u.q, u.s);
    int64_t b = 2 * f.a * u.p * u.q + f.b * (u.p * u.s + u.q * u.r) + 2 * f.c * u.r * u.s;
    return {a, b, c};
}

struct reduction_result {
    quad_form g;   // reduced
    unimodular u;  // g = apply(f, u)
};

inline reduction_result reduce(quad_form f) {
    assert(f.is_positive_definite());
    unimodular u;
    const unimodular swap_s{0, -1, 1, 0};  // (a, b, c) -> (c, -b, a)
    for (;;) {
        if (f.a > f.c) {
            f = apply(f, swap_s);
            u = u * swap_s;
            continue;
        }
        if (!(-f.a < f.b && f.b <= f.a)) {
            // translate b into (-a, a]
            int64_t t = (f.a - f.b) >= 0 ? (f.a - f.b) / (2 * f.a)
                                         : -((f.b - f.a + 2 * f.a - 1) / (2 * f.a));
            unimodular tr{1, t, 0, 1};
            f = apply(f, tr);
            u = u * tr;
            continue;
        }
        if (f.a == f.c && f.b < 0) {
            f = apply(f, swap_s);
            u = u * swap_s;
            continue;
        }
        break;
    }
    assert(f.is_reduced());
    return {f, u};
}

// Finds primitive (x0, y0) with f(y0, x0) an odd prime, and completes the
// column (y0, x0) to A in SL2(Z), so that apply(f, A) has the prime as its
// last coefficient. The scan is deterministic: shells s = max(|x0|, |y0|)
// ascending, x0 = 0..s, y0 in the order 0, 1, -1, 2, -2, ...
struct representation {
    unimodular u;
    quad_form g;  // apply(f, u); g.c = p
    int64_t p;
};

inline representation represent_odd_prime(const quad_form& f, int64_t bound = 200) {
    assert(f.is_positive_definite());
    if (f.content() != 1)
        throw not_primitive("represent_odd_prime: content " + std::to_string(f.content()));
    for (int64_t s = 1; s <= bound; ++s) {
        for (int64_t x0 = 0; x0 <= s; ++x0) {
            for (int64_t t = 0; t <= 2 * s; ++t) {
                int64_t y0 = (t % 2 == 1) ? (t + 1) / 2 : -t / 2;  // 0, 1, -1, 2, -2, ...
                if (std::max(x0, std::abs(y0)) != s) continue;
                if (std::gcd(x0, std::abs(y0)) != 1) continue;
                int64_t m = f.eval(y0, x0);
                if (m % 2 == 0 || !is_prime(m)) continue;
                auto [g, uu, vv] = ext_gcd(x0, y0);
                assert(g == 1);
                unimodular A{uu, y0, -vv, x0};  // det = uu*x0 + vv*y0 = 1
                assert(A.det() == 1);
                return {A, apply(f, A), m};
            }
        }
    }
    throw bound_exhausted("represent_odd_prime: no odd prime in shells up to " +
                          std::to_string(bound));
}

// All reduced positive-definite forms with 4ac - b^2 = D, sorted; D = 0, 1, 2
// mod 4 with no solutions gives the empty list.
inline std::vector<quad_form> enumerate_reduced(int64_t D, bool primitive_only = false) {
    assert(D > 0);
    std::vector<quad_form> out;
    int64_t r = D % 4;
    if (r == 1 || r == 2) return out;
    int64_t b0 = (r == 3) ? 1 : 0;
    for (int64_t b = b0; 3 * b * b <= D; b += 2) {
        int64_t m4 = D + b * b;
        assert(m4 % 4 == 0);
        int64_t m = m4 / 4;
        for (int64_t a = std::max<int64_t>(b, 1); a * a <= m; ++a) {
            if (m % a != 0) continue;
            int64_t c = m / a;
            quad_form f{a, b, c};
            if (primitive_only && f.content() != 1) continue;
            out.push_back(f);
            if (b > 0 && b < a && a < c) out.push_back({a, -b, c});
        }
    }
    for (const auto& f : out) assert(f.is_reduced() && f.disc() == D);
    std::sort(out.begin(), out.end());
    return out;
}

// Class group of forms of discriminant -D, for -D a fundamental discriminant.
class class_group {
  public:
    explicit class_group(int64_t D) : D_(D) {
        if (!is_fundamental_discriminant(-D))
            throw std::invalid_argument("class_group: -D must be fundamental");
        classes_ = enumerate_reduced(D, /*primitive_only=*/true);
        const int h = static_cast<int>(classes_.size());
        mul_.assign(h, std::vector<int>(h));
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < h; ++j) mul_[i][j] = index_of(compose(classes_[i], classes_[j]));
        id_ = index_of(reduce(principal_form()).g);
        verify();
        dual_ = dual_of(mul_, id_);
    }

    int64_t disc() const { return D_; }
    int size() const { return static_cast<int>(classes_.size()); }
    const std::vector<quad_form>& classes() const { return classes_; }
    int identity() const { return id_; }
    int mul(int i, int j) const { return mul_[i][j]; }
    int index_of(const quad_form& reduced) const {
        auto it = std::lower_bound(classes_.begin(), classes_.end(), reduced);
        if (it == classes_.end() || !(*it == reduced))
            throw inconsistent_table("class_group: form not in class list");
        return static_cast<int>(it - classes_.begin());
    }

    // exponent of the group = common order of all character values
    int64_t character_exponent() const { return dual_.exponent; }
    int character_count() const { return static_cast<int>(dual_.chars.size()); }
    // chi_k(class i) as an exact root of unity; k = 0 is trivial.
    Cyclotomic character(int k, int i) const {
        return Cyclotomic::zeta(dual_.exponent, dual_.chars[static_cast<size_t>(k)][static_cast<size_t>(i)]);
    }

    // Gauss composition of two forms of discriminant -D (classes well-defined).
    quad_form compose(quad_form f, quad_form g) const {
        assert(f.disc() == D_ && g.disc() == D_);
        if (std::gcd(f.a, g.a) != 1) g = coprime_leading(g, f.a);
        // B = b1 (mod 2 a1), B = b2 (mod 2 a2); parities already agree
        assert((g.b - f.b) % 2 == 0);
        int64_t t = ((g.b - f.b) / 2) % g.a;
        if (t < 0) t += g.a;
        t = t * inv_mod(f.a % g.a == 0 ? 1 : f.a % g.a, g.a) % g.a;
        int64_t A = f.a * g.a;
        int64_t B = f.b + 2 * f.a * t;
        assert((B * B + D_) % (4 * A) == 0);
        int64_t C = (B * B + D_) / (4 * A);
        return reduce(quad_form{A, B, C}).g;
    }

    quad_form inverse(const quad_form& f) const { return reduce(quad_form{f.a, -f.b, f.c}).g; }

  private:
    quad_form principal_form() const {
        if (D_ % 4 == 0) return {1, 0, D_ / 4};
        return {1, 1, (D_ + 1) / 4};
    }

    // Equivalent form whose leading coefficient is coprime to n: scan
    // primitive vectors shell by shell (same order as represent_odd_prime).
    quad_form coprime_leading(const quad_form& g, int64_t n) const {
        for (int64_t s = 0; s <= 4 * (std::abs(n) + 2); ++s) {
            for (int64_t x = 0; x <= s; ++x) {
                for (int64_t t = 0; t <= 2 * s; ++t) {
                    int64_t y = (t % 2 == 1) ? (t + 1) / 2 : -t / 2;
                    if (std::max(x, std::abs(y)) != s) continue;
                    if (std::gcd(x, std::abs(y)) != 1) continue;
                    int64_t v = g.eval(x, y);
                    if (std::gcd(v, n) != 1) continue;
                    auto [gg, uu, vv] = ext_gcd(x, y);
                    assert(gg == 1);
                    unimodular A{x, -vv, y, uu};  // first column (x, y), det 1
                    assert(A.det() == 1);
                    quad_form out = apply(g, A);
                    assert(out.a == v);
                    return out;
                }
            }
        }
        throw bound_exhausted("coprime_leading: scan exhausted");  // unreachable in practice
    }

    // Explicit group-law verification; throws on any failure.
    void verify() const {
        const int h = size();
        for (int i = 0; i < h; ++i) {
            if (mul_[id_][i] != i || mul_[i][id_] != i)
                throw inconsistent_table("class_group: identity fails");
            bool has_inv = false;
            for (int j = 0; j < h; ++j)
                if (mul_[i][j] == id_) has_inv = true;
            if (!has_inv) throw inconsistent_table("class_group: no inverse");
            if (mul_[i][index_of(inverse(classes_[i]))] != id_)
                throw inconsistent_table("class_group: inverse mismatch");
        }
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < h; ++j) {
                if (mul_[i][j] != mul_[j][i]) throw inconsistent_table("class_group: not abelian");
                for (int k = 0; k < h; ++k)
                    if (mul_[mul_[i][j]][k] != mul_[i][mul_[j][k]])
                        throw inconsistent_table("class_group: not associative");
            }
    }

    int64_t D_;
    std::vector<quad_form> classes_;
    std::vector<std::vector<int>> mul_;
    int id_ = 0;
    abelian_dual dual_;
};

// sum over classes of conj(chi_k(class)) * coeff(representative), exact.
template <class CoeffFn>
Cyclotomic class_sum(CoeffFn&& coeff, const class_group& G, int k) {
    Cyclotomic s;
    for (int i = 0; i < G.size(); ++i) {
        Rational a = coeff(G.classes()[static_cast<size_t>(i)]);
        if (a == 0) continue;
        s += a * G.character(k, i).conj();
    }
    return s;
}

}  // namespace sfj
