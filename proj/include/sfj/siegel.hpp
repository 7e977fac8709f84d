#pragma once

// Degree-2 Siegel cusp form coefficient tables, built by the arithmetic lift
// of an index-1 Jacobi cusp form phi of weight k:
//   a(n, r, m) = sum_{d | gcd(n, r, m)} d^{k-1} c*_phi((4 n m - r^2)/d^2).
// Coefficients live on positive-definite semi-integral S = (a, b, c) and
// depend only on the GL2(Z)-class; the table stores one value per reduced
// form, keyed and sorted by (m, n, r) = (c, a, b). Fourier-Jacobi slices and
// nonvanishing scans read off this table.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

#include "arith.hpp"
#include "errors.hpp"
#include "jacobi.hpp"
#include "qforms.hpp"

namespace sfj {

class siegel_form {
  public:
    struct entry {
        int32_t a, b, c;
        Rational v;
    };

    siegel_form(std::string label, int weight, int64_t max_disc, std::vector<entry> entries)
        : label_(std::move(label)), weight_(weight), max_disc_(max_disc), e_(std::move(entries)) {
        for (size_t i = 1; i < e_.size(); ++i) assert(key_less(e_[i - 1], e_[i]));
    }

    const std::string& label() const { return label_; }
    int weight() const { return weight_; }
    int64_t max_disc() const { return max_disc_; }
    const std::vector<entry>& entries() const { return e_; }

    Rational coefficient(const quad_form& s) const {
        if (!s.is_positive_definite())
            throw std::invalid_argument("siegel_form: form must be positive definite");
        if (s.disc() > max_disc_) throw out_of_precision("siegel_form: disc beyond table");
        quad_form g = reduce(s).g;
        entry probe{static_cast<int32_t>(g.a), static_cast<int32_t>(g.b),
                    static_cast<int32_t>(g.c), Rational(0)};
        auto it = std::lower_bound(e_.begin(), e_.end(), probe, key_less);
        if (it == e_.end() || it->a != probe.a || it->b != probe.b || it->c != probe.c)
            throw inconsistent_table("siegel_form: reduced form missing from table");
        return it->v;
    }

    Rational coefficient(int64_t n, int64_t r, int64_t m) const { return coefficient({n, r, m}); }

  private:
    static bool key_less(const entry& x, const entry& y) {
        if (x.c != y.c) return x.c < y.c;  // (m, n, r) order
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    }

    std::string label_;
    int weight_;
    int64_t max_disc_;
    std::vector<entry> e_;
};

// The lift itself. phi must be an index-1 disc table (a cusp form: c*(0) = 0).
inline siegel_form maass_lift(std::string label, const jacobi_form& phi, int64_t max_disc) {
    assert(phi.storage() == jacobi_storage::disc_table && phi.index() == 1);
    if (max_disc > phi.max_disc())
        throw out_of_precision("maass_lift: phi table too short for requested disc range");
    if (phi.c_star(0) != 0) throw std::invalid_argument("maass_lift: phi is not cuspidal");
    const int k = phi.weight();
    std::vector<siegel_form::entry> out;
    // (c, a, b) ascending = cache order; reduced means -a < b <= a <= c,
    // b >= 0 when a = c or b = -a excluded already.
    for (int64_t c = 1; 4 * c - 1 <= max_disc; ++c) {
        for (int64_t a = 1; a <= c && a * (4 * c - a) <= max_disc; ++a) {
            for (int64_t b = -a + 1; b <= a; ++b) {
                if (a == c && b < 0) continue;
                int64_t D = 4 * a * c - b * b;
                if (D > max_disc) continue;
                int64_t g = std::gcd(std::gcd(a, std::abs(b)), c);
                Rational v = 0;
                for (int64_t d = 1; d <= g; ++d) {
                    if (g % d != 0) continue;
                    if (d == 1)
                        v += phi.c_star(D);
                    else
                        v += Rational(ipow_int(Int(d), static_cast<unsigned>(k - 1))) *
                             phi.c_star(D / (d * d));
                }
                out.push_back({static_cast<int32_t>(a), static_cast<int32_t>(b),
                               static_cast<int32_t>(c), std::move(v)});
            }
        }
    }
    return siegel_form(std::move(label), k, max_disc, std::move(out));
}

// Fourier-Jacobi slice phi_m: the index-m Jacobi cusp form with coefficients
// c(n, r) = a(F, (n, r, m)). nmax = -1 takes the largest complete slice.
inline jacobi_form fj_slice(const siegel_form& F, int64_t m, int64_t nmax = -1) {
    assert(m >= 1);
    int64_t cap = F.max_disc() / (4 * m);
    if (nmax < 0) nmax = cap;
    if (nmax > cap) throw out_of_precision("fj_slice: slice deeper than the table");
    std::vector<Rational> v(static_cast<size_t>((nmax + 1) * 2 * m), Rational(0));
    for (int64_t n = 0; n <= nmax; ++n)
        for (int64_t r0 = -m + 1; r0 <= m; ++r0) {
            if (4 * n * m - r0 * r0 <= 0) continue;
            v[static_cast<size_t>(n * 2 * m + r0 + m - 1)] = F.coefficient(n, r0, m);
        }
    return jacobi_form::from_nr_table(F.weight(), m, nmax, std::move(v));
}

struct scan_row {
    int64_t D;
    quad_form f;
    Rational value;
};

// Coefficients at odd fundamental discriminants: D <= bound, D = 3 (mod 4),
// squarefree; rows are the nonzero ones, ordered by (D, form).
inline std::vector<scan_row> scan_fundamental(const siegel_form& F, int64_t bound) {
    if (bound > F.max_disc()) throw out_of_precision("scan_fundamental: bound beyond table");
    std::vector<scan_row> rows;
    for (int64_t D = 3; D <= bound; D += 4) {
        if (!is_squarefree(D)) continue;
        for (const auto& f : enumerate_reduced(D)) {
            assert(f.content() == 1);  // automatic at fundamental discriminant
            Rational v = F.coefficient(f);
            if (v != 0) rows.push_back({D, f, std::move(v)});
        }
    }
    return rows;
}

inline int64_t count_distinct_nonzero_disc(const std::vector<scan_row>& rows) {
    int64_t count = 0, last = 0;
    for (const auto& r : rows)
        if (r.D != last) {
            ++count;
            last = r.D;
        }
    return count;
}

struct slice_witness {
    int64_t p, n, r;
};

// Smallest odd prime p whose Fourier-Jacobi slice has a nonzero coefficient
// within the table, with a witness (n, r).
inline slice_witness first_nonzero_odd_prime_slice(const siegel_form& F) {
    for (int64_t p = 3;; p += 2) {
        if (!is_prime(p)) continue;
        int64_t nmax = F.max_disc() / (4 * p);
        if (nmax < 1)
            throw not_found_within_precision(
                "first_nonzero_odd_prime_slice: slices exhausted at p = " + std::to_string(p));
        for (int64_t n = 1; n <= nmax; ++n)
            for (int64_t r0 = -p + 1; r0 <= p; ++r0) {
                if (4 * n * p - r0 * r0 <= 0) continue;
                if (F.coefficient(n, r0, p) != 0) return {p, n, r0};
            }
    }
}

}  // namespace sfj
