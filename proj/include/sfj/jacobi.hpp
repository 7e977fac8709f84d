#pragma once

// Jacobi forms of degree 1. Index-1 forms with GL2(Z)-symmetric coefficients
// are stored as tables over D = 4n - r^2; general index-m tables store the
// rectangle n = 0..nmax, r in (-m, m]. Includes Cohen's H(r, N) (with fast
// integer paths for r = 3, 5), the index-1 Jacobi Eisenstein series, and the
// two cusp generators of weights 10 and 12,
//     phi_10 = (E6 E_{4,1} - E4 E_{6,1})/144,
//     phi_12 = (E4^2 E_{4,1} - E6 E_{6,1})/144,
// normalized so the D = 3 coefficient is 1. All values are exact.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <vector>

#include "arith.hpp"
#include "character.hpp"
#include "errors.hpp"
#include "series.hpp"

namespace sfj {

namespace detail {

// chi_D(a) for a = 0..|D|-1 into buf, via multiplicativity over an spf table
// covering |D|; kronecker() is evaluated at primes only.
inline void chi_buffer(int64_t D, const spf_sieve& spf, std::vector<int8_t>& buf) {
    int64_t q = D < 0 ? -D : D;
    buf.assign(static_cast<size_t>(q), 0);
    if (q == 1) {
        buf[0] = 1;  // trivial character
        return;
    }
    buf[1] = 1;
    for (int64_t a = 2; a < q; ++a) {
        int64_t p = spf.spf[static_cast<size_t>(a)];
        int8_t cp = (a == p) ? static_cast<int8_t>(kronecker(D, p)) : buf[static_cast<size_t>(p)];
        buf[static_cast<size_t>(a)] = static_cast<int8_t>(cp * buf[static_cast<size_t>(a / p)]);
    }
}

// B_{3,chi_D} via 2f B = sum chi(a) a (2a - f)(a - f), f = |D|.
inline Rational gen_bernoulli3_fast(int64_t D, const std::vector<int8_t>& chi) {
    int64_t f = D < 0 ? -D : D;
    int128 s = 0;
    for (int64_t a = 1; a < f; ++a) {
        int c = chi[static_cast<size_t>(a)];
        if (c == 0) continue;
        int128 t = static_cast<int128>(a) * (2 * a - f) * (a - f);
        s += (c > 0) ? t : -t;
    }
    return Rational(Int(s), Int(2 * f));
}

// B_{5,chi_D} via 6f B = sum chi(a) (6a^5 - 15a^4 f + 10a^3 f^2 - a f^4).
inline Rational gen_bernoulli5_fast(int64_t D, const std::vector<int8_t>& chi) {
    int64_t f = D < 0 ? -D : D;
    int128 f2 = static_cast<int128>(f) * f;
    int128 f4 = f2 * f2;
    int128 s = 0;
    for (int64_t a = 1; a < f; ++a) {
        int c = chi[static_cast<size_t>(a)];
        if (c == 0) continue;
        int128 a2 = static_cast<int128>(a) * a;
        int128 a4 = a2 * a2;
        int128 t = 6 * a4 * a - 15 * a4 * f + 10 * a2 * a * f2 - a * f4;
        s += (c > 0) ? t : -t;
    }
    return Rational(Int(s), Int(6 * f));
}

}  // namespace detail

// H(r, N) for 0 <= N <= nmax: H(r, 0) = zeta(1 - 2r); for N >= 1 with
// (-1)^r N = D f^2 (D fundamental),
//   H(r, N) = L(1-r, chi_D) sum_{d | f} mu(d) chi_D(d) d^{r-1} sigma_{2r-1}(f/d),
// and 0 when (-1)^r N = 2, 3 (mod 4).
class cohen_table {
  public:
    cohen_table(int r, int64_t nmax) : r_(r), nmax_(nmax) {
        assert(r >= 1 && nmax >= 0);
        h_.assign(static_cast<size_t>(nmax) + 1, Rational(0));
        h_[0] = -bernoulli(2 * r) / (2 * r);
        // chi_D tables need residues mod |D| <= 4 nmax
        spf_sieve spf(4 * nmax + 4);
        std::vector<int8_t> chi;
        std::map<int64_t, Rational> lvalue;  // D -> L(1-r, chi_D)
        for (int64_t N = 1; N <= nmax; ++N) {
            int64_t sign_n = (r % 2 == 1) ? -N : N;
            int64_t m4 = ((sign_n % 4) + 4) % 4;
            if (m4 == 2 || m4 == 3) continue;
            auto [s, m] = squarefree_decompose(N);
            int64_t d0 = (r % 2 == 1) ? -s : s;
            int64_t D, f;
            if (((d0 % 4) + 4) % 4 == 1) {
                D = d0;
                f = m;
            } else {
                assert(m % 2 == 0);
                D = 4 * d0;
                f = m / 2;
            }
            auto it = lvalue.find(D);
            if (it == lvalue.end()) {
                Rational B;
                if (D == 1) {
                    B = gen_bernoulli(r, dirichlet_character::trivial(1));
                } else if (r == 3) {
                    detail::chi_buffer(D, spf, chi);
                    B = detail::gen_bernoulli3_fast(D, chi);
                } else if (r == 5) {
                    detail::chi_buffer(D, spf, chi);
                    B = detail::gen_bernoulli5_fast(D, chi);
                } else {
                    B = gen_bernoulli(r, dirichlet_character::quadratic(D));
                }
                it = lvalue.emplace(D, -B / r).first;
            }
            Rational mult = 0;
            for (int64_t d : divisors(f)) {
                int mu = moebius(d);
                if (mu == 0) continue;
                int chi_d = kronecker(D, d);
                if (chi_d == 0) continue;
                Rational term = Rational(ipow_int(Int(d), static_cast<unsigned>(r - 1))) *
                                Rational(sigma_k(2 * r - 1, f / d));
                mult += Rational(mu * chi_d) * term;
            }
            h_[static_cast<size_t>(N)] = it->second * mult;
        }
    }

    int r() const { return r_; }
    int64_t nmax() const { return nmax_; }

    const Rational& H(int64_t N) const {
        if (N < 0 || N > nmax_) throw out_of_precision("cohen_table: N out of range");
        return h_[static_cast<size_t>(N)];
    }

  private:
    int r_;
    int64_t nmax_;
    std::vector<Rational> h_;
};

inline Rational cohen_H(int r, int64_t N) { return cohen_table(r, N).H(N); }

// ---------------------------------------------------------------------------

enum class jacobi_storage { disc_table, nr_table };

class jacobi_form {
  public:
    // Index-1 form with c(n, r) a function of D = 4n - r^2 alone; v[D] for
    // D = 0..max_disc (entries at D = 1, 2 mod 4 must be zero).
    static jacobi_form from_disc_table(int weight, std::vector<Rational> v) {
        jacobi_form f;
        f.weight_ = weight;
        f.index_ = 1;
        f.storage_ = jacobi_storage::disc_table;
        f.v_ = std::move(v);
        assert(!f.v_.empty());
        for (size_t d = 0; d < f.v_.size(); ++d)
            if (d % 4 == 1 || d % 4 == 2) assert(f.v_[d] == 0);
        return f;
    }

    // Cuspidal index-m table over n = 0..nmax, r0 in (-m, m]; entries with
    // 4 n m - r0^2 <= 0 are identically zero.
    static jacobi_form from_nr_table(int weight, int64_t index, int64_t nmax,
                                     std::vector<Rational> v) {
        jacobi_form f;
        f.weight_ = weight;
        f.index_ = index;
        f.nmax_ = nmax;
        f.storage_ = jacobi_storage::nr_table;
        f.v_ = std::move(v);
        assert(static_cast<int64_t>(f.v_.size()) == (nmax + 1) * 2 * index);
        for (int64_t n = 0; n <= nmax; ++n)
            for (int64_t r0 = -index + 1; r0 <= index; ++r0)
                if (4 * n * index - r0 * r0 <= 0)
                    assert(f.v_[static_cast<size_t>(n * 2 * index + r0 + index - 1)] == 0);
        return f;
    }

    int weight() const { return weight_; }
    int64_t index() const { return index_; }
    jacobi_storage storage() const { return storage_; }

    // largest D with c determined for every (n, r) of that discriminant
    int64_t max_disc() const {
        if (storage_ == jacobi_storage::disc_table)
            return static_cast<int64_t>(v_.size()) - 1;
        // min over r0 of 4(nmax+1)m - r0^2, minus 1; r0 = m is the worst
        return 4 * (nmax_ + 1) * index_ - index_ * index_ - 1;
    }

    int64_t max_n() const {
        assert(storage_ == jacobi_storage::nr_table);
        return nmax_;
    }

    Rational c(int64_t n, int64_t r) const {
        int128 D = static_cast<int128>(4) * n * index_ - static_cast<int128>(r) * r;
        if (storage_ == jacobi_storage::disc_table) {
            if (D < 0) return 0;
            if (D > max_disc()) throw out_of_precision("jacobi_form::c: disc beyond table");
            return v_[static_cast<size_t>(static_cast<int64_t>(D))];
        }
        if (D <= 0) return 0;  // cuspidal table
        int64_t two_m = 2 * index_;
        int64_t r0 = ((r % two_m) + two_m) % two_m;
        if (r0 > index_) r0 -= two_m;
        int64_t n0 = n - static_cast<int64_t>((static_cast<int128>(r) * r - static_cast<int128>(r0) * r0) / (4 * index_));
        assert(4 * n0 * index_ - r0 * r0 == D);
        if (n0 > nmax_) throw out_of_precision("jacobi_form::c: n beyond table");
        assert(n0 >= 0);
        return v_[static_cast<size_t>(n0 * two_m + r0 + index_ - 1)];
    }

    // c*(D): the coefficient at any (n, r) with 4n - r^2 = D (index 1 only).
    Rational c_star(int64_t D) const {
        if (index_ != 1) throw std::invalid_argument("c_star: index must be 1");
        if (D < 0) return 0;
        int64_t m4 = D % 4;
        if (m4 == 1 || m4 == 2) return 0;
        int64_t r0 = (m4 == 3) ? 1 : 0;
        return c((D + r0 * r0) / 4, r0);
    }

    bool is_identically_zero() const {
        for (const auto& x : v_)
            if (x != 0) return false;
        return true;
    }

  private:
    int weight_ = 0;
    int64_t index_ = 1;
    int64_t nmax_ = 0;
    jacobi_storage storage_ = jacobi_storage::disc_table;
    std::vector<Rational> v_;
};

// E_{k,1}(D) = H(k-1, D) / H(k-1, 0), even k >= 4, as an index-1 disc table.
inline jacobi_form jacobi_eisenstein(int k, int64_t max_disc) {
    assert(k >= 4 && k % 2 == 0);
    cohen_table H(k - 1, max_disc);
    Rational h0 = H.H(0);
    assert(h0 != 0);
    std::vector<Rational> v(static_cast<size_t>(max_disc) + 1);
    for (int64_t D = 0; D <= max_disc; ++D) v[static_cast<size_t>(D)] = H.H(D) / h0;
    return jacobi_form::from_disc_table(k, std::move(v));
}

// g(tau) * phi(tau, z) for an elliptic series g and an index-1 disc-table
// form: in D-space this is out[D] = sum_j g[j] in[D - 4j]. A window of the
// result is re-verified against the direct (n, r) convolution.
inline jacobi_form series_times(const qseries& g, const jacobi_form& phi, int weight_out) {
    assert(phi.storage() == jacobi_storage::disc_table && phi.index() == 1);
    int64_t out_disc = std::min(phi.max_disc(), 4 * g.prec() + 3);
    std::vector<Rational> v(static_cast<size_t>(out_disc) + 1, Rational(0));
    for (int64_t D = 0; D <= out_disc; ++D) {
        Rational s = 0;
        for (int64_t j = 0; 4 * j <= D; ++j) {
            if (g[j] == 0) continue;
            s += g[j] * phi.c_star(D - 4 * j);
        }
        v[static_cast<size_t>(D)] = s;
    }
    jacobi_form out = jacobi_form::from_disc_table(weight_out, std::move(v));
    // honesty window: D-space convolution must agree with the (n, r) one
    for (int64_t n = 0; n <= std::min<int64_t>(6, out_disc / 4); ++n)
        for (int64_t r = 0; r * r <= 4 * n; ++r) {
            Rational direct = 0;
            for (int64_t j = 0; j <= n; ++j) direct += g[j] * phi.c(n - j, r);
            if (direct != out.c(n, r))
                throw inconsistent_table("series_times: window check failed");
        }
    return out;
}

namespace detail {

// 1 + factor * sum sigma_{k-1}(n) q^n as exact int256 coefficients.
inline std::vector<int256> eisenstein_int(int k, int64_t factor, int64_t prec) {
    std::vector<int256> c(static_cast<size_t>(prec) + 1, int256(0));
    c[0] = 1;
    std::vector<int256> s(static_cast<size_t>(prec) + 1, int256(0));
    for (int64_t d = 1; d <= prec; ++d) {
        int256 dk = 1;
        for (int i = 0; i < k - 1; ++i) dk *= d;
        for (int64_t n = d; n <= prec; n += d) s[static_cast<size_t>(n)] += dk;
    }
    for (int64_t n = 1; n <= prec; ++n) c[static_cast<size_t>(n)] = factor * s[static_cast<size_t>(n)];
    return c;
}

// Integer disc-table of E_{k,1} (k = 4 or 6): H(k-1, D)/H(k-1, 0) is integral.
inline std::vector<int256> eisenstein_jacobi_int(int k, int64_t max_disc) {
    cohen_table H(k - 1, max_disc);
    Rational h0 = H.H(0);
    std::vector<int256> v(static_cast<size_t>(max_disc) + 1, int256(0));
    for (int64_t D = 0; D <= max_disc; ++D) {
        Rational x = H.H(D) / h0;
        assert(boost::multiprecision::denominator(x) == 1);
        v[static_cast<size_t>(D)] = boost::multiprecision::numerator(x).convert_to<int256>();
    }
    return v;
}

// (A e41 - B e61)/144 in D-space, for elliptic integer series A, B.
inline jacobi_form combine_phi(int weight, const std::vector<int256>& A,
                               const std::vector<int256>& B, const std::vector<int256>& e41,
                               const std::vector<int256>& e61, int64_t max_disc) {
    std::vector<Rational> v(static_cast<size_t>(max_disc) + 1, Rational(0));
    for (int64_t D = 0; D <= max_disc; ++D) {
        if (D % 4 == 1 || D % 4 == 2) continue;
        int256 acc = 0;
        for (int64_t j = 0; 4 * j <= D; ++j) {
            size_t d4 = static_cast<size_t>(D - 4 * j);
            size_t ju = static_cast<size_t>(j);
            acc += A[ju] * e41[d4] - B[ju] * e61[d4];
        }
        assert(acc % 144 == 0);
        v[static_cast<size_t>(D)] = Rational((acc / 144).convert_to<Int>());
    }
    return jacobi_form::from_disc_table(weight, std::move(v));
}

}  // namespace detail

// Weight-10 index-1 cusp generator; c*(0) = 0, c*(3) = 1, c*(4) = -2.
inline jacobi_form phi_10_1(int64_t max_disc) {
    assert(max_disc >= 4);
    int64_t prec_q = max_disc / 4;
    auto e4 = detail::eisenstein_int(4, 240, prec_q);
    auto e6 = detail::eisenstein_int(6, -504, prec_q);
    auto e41 = detail::eisenstein_jacobi_int(4, max_disc);
    auto e61 = detail::eisenstein_jacobi_int(6, max_disc);
    jacobi_form out = detail::combine_phi(10, e6, e4, e41, e61, max_disc);
    if (out.c_star(0) != 0 || out.c_star(3) != 1 || out.c_star(4) != -2)
        throw inconsistent_table("phi_10_1: normalization check failed");
    return out;
}

// Weight-12 index-1 cusp generator; c*(0) = 0, c*(3) = 1, c*(4) = 10.
inline jacobi_form phi_12_1(int64_t max_disc) {
    assert(max_disc >= 4);
    int64_t prec_q = max_disc / 4;
    auto e4 = detail::eisenstein_int(4, 240, prec_q);
    auto e6 = detail::eisenstein_int(6, -504, prec_q);
    // E4^2 by direct convolution
    std::vector<int256> e4sq(static_cast<size_t>(prec_q) + 1, int256(0));
    for (int64_t i = 0; i <= prec_q; ++i) {
        if (e4[static_cast<size_t>(i)] == 0) continue;
        for (int64_t j = 0; i + j <= prec_q; ++j)
            e4sq[static_cast<size_t>(i + j)] += e4[static_cast<size_t>(i)] * e4[static_cast<size_t>(j)];
    }
    auto e41 = detail::eisenstein_jacobi_int(4, max_disc);
    auto e61 = detail::eisenstein_jacobi_int(6, max_disc);
    jacobi_form out = detail::combine_phi(12, e4sq, e6, e41, e61, max_disc);
    if (out.c_star(0) != 0 || out.c_star(3) != 1 || out.c_star(4) != 10)
        throw inconsistent_table("phi_12_1: normalization check failed");
    return out;
}

}  // namespace sfj
