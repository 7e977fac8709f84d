#pragma once

// Half-integral weight forms of weight kappa + 1/2 on Gamma_0(N), 4 | N,
// with character, stored as exact coefficient tables a(1..prec). The value
// type V is Rational for untwisted data and Cyclotomic for twisted data.
//
// Theta decomposition: an index-p Jacobi cusp form phi of even weight k
// yields h of weight (k-1) + 1/2, level 4p, trivial character, with
//   a_h(N) = sum_{mu mod 2p, mu^2 = -N (mod 4p)} c_phi((N + mu^2)/(4p), mu).
// For odd k and an odd character chi mod p the twisted variant multiplies
// each term by chi(mu) and lands in level 4p^2, character eps4 * chi.
//
// Operators: U(r^2), restriction to indices coprime to p, descent a(n) ->
// a(pn) when the support allows it, and T(p^2). U(r^2) rescales the
// normalized coefficient view; the exact dilation factor is carried along so
// the view stays exact. sanitize() runs the restrict/descend loop over the
// odd primes of the level and records the full audit chain.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "arith.hpp"
#include "character.hpp"
#include "cyclotomic.hpp"
#include "errors.hpp"
#include "jacobi.hpp"

namespace sfj {

namespace detail {

inline Rational char_value_as(const dirichlet_character& chi, int64_t n, const Rational*) {
    return chi.real_value(n);
}
inline Cyclotomic char_value_as(const dirichlet_character& chi, int64_t n, const Cyclotomic*) {
    return chi.cyc_value(n);
}
inline bool value_is_zero(const Rational& v) { return v == 0; }
inline bool value_is_zero(const Cyclotomic& v) { return v.is_zero(); }
inline double value_abs_sq(const Rational& v) { return to_double(v * v); }
inline double value_abs_sq(const Cyclotomic& v) { return v.abs_sq(); }

}  // namespace detail

template <class V>
class halfint_form {
  public:
    halfint_form(int kappa, int64_t level, const dirichlet_character& chi, int64_t prec,
                 std::vector<V> coeffs, int64_t dilation = 1)
        : kappa_(kappa),
          level_(level),
          chi_(chi.attached_mod(level)),
          prec_(prec),
          dilation_(dilation),
          c_(std::move(coeffs)) {
        assert(level_ % 4 == 0);
        assert(prec_ >= 1);
        assert(static_cast<int64_t>(c_.size()) == prec_ + 1);
        if constexpr (std::is_same_v<V, Rational>) {
            if (!chi_.is_real())
                throw std::invalid_argument("halfint_form<Rational>: character must be real");
        }
    }

    int kappa() const { return kappa_; }
    int64_t level() const { return level_; }
    const dirichlet_character& chi() const { return chi_; }
    int64_t prec() const { return prec_; }
    int64_t dilation() const { return dilation_; }

    const V& a(int64_t n) const {
        if (n < 1) throw std::invalid_argument("halfint_form: index must be >= 1");
        if (n > prec_) throw out_of_precision("halfint_form: index beyond precision");
        return c_[static_cast<size_t>(n)];
    }

    bool is_zero() const {
        for (int64_t n = 1; n <= prec_; ++n)
            if (!detail::value_is_zero(c_[static_cast<size_t>(n)])) return false;
        return true;
    }

    bool supported_on_multiples_of(int64_t p) const {
        for (int64_t n = 1; n <= prec_; ++n)
            if (n % p != 0 && !detail::value_is_zero(c_[static_cast<size_t>(n)])) return false;
        return true;
    }

    // Kohnen plus space: a(n) = 0 whenever (-1)^kappa n = 2, 3 (mod 4).
    bool plus_space_ok() const {
        for (int64_t n = 1; n <= prec_; ++n) {
            int64_t m = ((kappa_ % 2 == 1 ? -n : n) % 4 + 4) % 4;
            if ((m == 2 || m == 3) && !detail::value_is_zero(c_[static_cast<size_t>(n)]))
                return false;
        }
        return true;
    }

    // |a~(n)|^2 where a~(n) = a(n) (dilation^2 n)^{1/4 - kappa/2}: the exact
    // normalized view that makes U(r^2) a pure index rescaling.
    double normalized_sq(int64_t n) const {
        double base = static_cast<double>(dilation_) * static_cast<double>(dilation_) *
                      static_cast<double>(n);
        return detail::value_abs_sq(a(n)) * std::pow(base, 0.5 - kappa_);
    }

  private:
    int kappa_;
    int64_t level_;
    dirichlet_character chi_;
    int64_t prec_;
    int64_t dilation_;
    std::vector<V> c_;  // index 0 unused
};

using halfint_rational = halfint_form<Rational>;
using halfint_cyclotomic = halfint_form<Cyclotomic>;

// ---------------------------------------------------------------------------
// theta decomposition

// Even-weight index-p Jacobi cusp form -> untwisted theta component.
// prec = -1 takes the deepest complete table.
inline halfint_rational theta_decompose(const jacobi_form& phi, int64_t prec = -1) {
    const int64_t p = phi.index();
    assert(p >= 3 && is_prime(p) && p % 2 == 1);
    if (phi.weight() % 2 != 0)
        throw std::invalid_argument("theta_decompose: weight must be even (use the twisted map)");
    assert(phi.storage() == jacobi_storage::nr_table);
    int64_t cap = 4 * p * phi.max_n() - (2 * p - 1) * (2 * p - 1);
    if (prec < 0) prec = cap;
    if (prec > cap) throw out_of_precision("theta_decompose: requested precision beyond slice");
    assert(prec >= 1);
    std::vector<Rational> c(static_cast<size_t>(prec) + 1, Rational(0));
    for (int64_t N = 1; N <= prec; ++N) {
        Rational s = 0;
        for (int64_t mu = 0; mu < 2 * p; ++mu) {
            if ((mu * mu + N) % (4 * p) != 0) continue;
            s += phi.c((N + mu * mu) / (4 * p), mu);
        }
        c[static_cast<size_t>(N)] = s;
    }
    return halfint_rational(phi.weight() - 1, 4 * p, dirichlet_character::trivial(4 * p), prec,
                            std::move(c));
}

// Odd-weight index-p slice twisted by an odd character chi mod p.
inline halfint_cyclotomic theta_decompose_twisted(const jacobi_form& phi,
                                                  const dirichlet_character& chi,
                                                  int64_t prec = -1) {
    const int64_t p = phi.index();
    assert(p >= 3 && is_prime(p) && p % 2 == 1);
    if (phi.weight() % 2 != 1)
        throw std::invalid_argument("theta_decompose_twisted: weight must be odd");
    if (chi.modulus() != p) throw std::invalid_argument("theta_decompose_twisted: chi must live mod p");
    if (!chi.is_odd()) throw character_parity("theta_decompose_twisted: chi must be odd");
    assert(phi.storage() == jacobi_storage::nr_table);
    int64_t cap = 4 * p * phi.max_n() - (2 * p - 1) * (2 * p - 1);
    if (prec < 0) prec = cap;
    if (prec > cap) throw out_of_precision("theta_decompose_twisted: precision beyond slice");
    std::vector<Cyclotomic> c(static_cast<size_t>(prec) + 1);
    for (int64_t N = 1; N <= prec; ++N) {
        Cyclotomic s;
        for (int64_t mu = 0; mu < 2 * p; ++mu) {
            if ((mu * mu + N) % (4 * p) != 0) continue;
            char_value v = chi(mu);
            if (v.zero) continue;
            Rational coeff = phi.c((N + mu * mu) / (4 * p), mu);
            if (coeff == 0) continue;
            s += coeff * Cyclotomic::zeta(v.ord, v.e);
        }
        c[static_cast<size_t>(N)] = s;
    }
    dirichlet_character out_chi = eps4() * chi;
    return halfint_cyclotomic(phi.weight() - 1, 4 * p * p, out_chi, prec, std::move(c));
}

// ---------------------------------------------------------------------------
// operators

// U(r^2): b(n) = a(r^2 n); r odd squarefree. Level lcm(N, r); the dilation
// factor tracks the normalized view exactly.
template <class V>
halfint_form<V> u_op(const halfint_form<V>& f, int64_t r) {
    if (r < 1 || r % 2 == 0 || !is_squarefree(r))
        throw std::invalid_argument("u_op: r must be odd and squarefree");
    int64_t prec = f.prec() / (r * r);
    if (prec < 1)
        throw precision_shrunk_below_one("u_op: table too short for r = " + std::to_string(r));
    std::vector<V> c(static_cast<size_t>(prec) + 1);
    for (int64_t n = 1; n <= prec; ++n) c[static_cast<size_t>(n)] = f.a(r * r * n);
    return halfint_form<V>(f.kappa(), std::lcm(f.level(), r), f.chi(), prec, std::move(c),
                           f.dilation() * r);
}

// Kill coefficients with p | n; level rises to N p^2.
template <class V>
halfint_form<V> restrict_coprime(const halfint_form<V>& f, int64_t p) {
    assert(is_prime(p));
    std::vector<V> c(static_cast<size_t>(f.prec()) + 1);
    for (int64_t n = 1; n <= f.prec(); ++n)
        if (n % p != 0) c[static_cast<size_t>(n)] = f.a(n);
    return halfint_form<V>(f.kappa(), f.level() * p * p, f.chi(), f.prec(), std::move(c),
                           f.dilation());
}

// Descent at an odd prime p: requires support in pZ, p | N/4, and
// cond(chi eps_p) | N/p; output a'(n) = a(pn) at level N/p, char chi eps_p.
template <class V>
halfint_form<V> descend(const halfint_form<V>& f, int64_t p) {
    assert(is_prime(p) && p % 2 == 1);
    if (!f.supported_on_multiples_of(p))
        throw not_supported_on_multiples("descend: support not inside " + std::to_string(p) + "Z");
    if ((f.level() / 4) % p != 0)
        throw level_obstruction("descend: p does not divide N/4");
    int64_t new_level = f.level() / p;
    dirichlet_character psi = f.chi() * eps_prime(p);
    if (new_level % psi.conductor() != 0)
        throw conductor_obstruction("descend: cond(chi eps_p) does not divide N/p");
    int64_t prec = f.prec() / p;
    if (prec < 1) throw precision_shrunk_below_one("descend: table too short");
    std::vector<V> c(static_cast<size_t>(prec) + 1);
    for (int64_t n = 1; n <= prec; ++n) c[static_cast<size_t>(n)] = f.a(p * n);
    return halfint_form<V>(f.kappa(), new_level, psi, prec, std::move(c), f.dilation());
}

// T(p^2) for odd p not dividing the level:
//   b(n) = a(p^2 n) + chi*(n, p) p^{kappa-1} a(n) + chi(p)^2 p^{2 kappa - 1} a(n/p^2),
// with chi*(n, p) = chi(p) ((-1)^kappa n | p).
template <class V>
halfint_form<V> hecke_T_p2(const halfint_form<V>& f, int64_t p) {
    if (!is_prime(p) || p % 2 == 0 || f.level() % p == 0)
        throw std::invalid_argument("hecke_T_p2: need odd prime p with p coprime to the level");
    int64_t prec = f.prec() / (p * p);
    if (prec < 1) throw precision_shrunk_below_one("hecke_T_p2: table too short");
    const V* tag = nullptr;
    V chi_p = detail::char_value_as(f.chi(), p, tag);
    Rational pk1 = Rational(ipow_int(Int(p), static_cast<unsigned>(f.kappa() - 1)));
    Rational p2k1 = Rational(ipow_int(Int(p), static_cast<unsigned>(2 * f.kappa() - 1)));
    std::vector<V> c(static_cast<size_t>(prec) + 1);
    for (int64_t n = 1; n <= prec; ++n) {
        int64_t sn = (f.kappa() % 2 == 1) ? -n : n;
        V term = f.a(p * p * n);
        term += (Rational(kronecker(sn, p)) * pk1) * (chi_p * f.a(n));
        if (n % (p * p) == 0) term += p2k1 * (chi_p * (chi_p * f.a(n / (p * p))));
        c[static_cast<size_t>(n)] = term;
    }
    return halfint_form<V>(f.kappa(), f.level(), f.chi(), prec, std::move(c), f.dilation());
}

// f == lambda * g? Returns lambda when the tables are proportional over the
// common range (and g is nonzero there).
inline std::optional<Rational> scalar_ratio(const halfint_rational& f, const halfint_rational& g) {
    int64_t prec = std::min(f.prec(), g.prec());
    int64_t pivot = 0;
    for (int64_t n = 1; n <= prec; ++n)
        if (g.a(n) != 0) {
            pivot = n;
            break;
        }
    if (pivot == 0) return std::nullopt;
    Rational lambda = f.a(pivot) / g.a(pivot);
    for (int64_t n = 1; n <= prec; ++n)
        if (f.a(n) != lambda * g.a(n)) return std::nullopt;
    return lambda;
}

// ---------------------------------------------------------------------------
// sanitize: the restrict/descend loop

struct sanitize_step {
    enum class op { restrict_op, descend_op };
    op kind;
    int64_t p;
    int64_t level_after;
};

template <class V>
struct sanitize_report {
    std::vector<halfint_form<V>> chain;  // g_0 = input, ..., g_t = result
    std::vector<sanitize_step> steps;
    int64_t index_multiplier = 1;  // a_final(n) = a_input(n * index_multiplier) off the level

    const halfint_form<V>& result() const { return chain.back(); }
};

// For each odd prime p | N(input), ascending: restrict to indices coprime to
// p; when the restriction would be zero (support inside pZ), descend at p
// instead and retry. Descent obstructions cannot fire on data satisfying the
// hypotheses, so they surface as hypothesis_violation.
template <class V>
sanitize_report<V> sanitize(const halfint_form<V>& f) {
    if (f.is_zero()) throw zero_input("sanitize: input is identically zero");
    sanitize_report<V> rep;
    rep.chain.push_back(f);
    std::vector<int64_t> odd_primes;
    for (const auto& [p, e] : factorize(f.level()))
        if (p % 2 == 1) odd_primes.push_back(p);
    for (int64_t p : odd_primes) {
        for (;;) {
            const halfint_form<V>& g = rep.chain.back();
            if (!g.supported_on_multiples_of(p)) {
                rep.chain.push_back(restrict_coprime(g, p));
                rep.steps.push_back({sanitize_step::op::restrict_op, p,
                                     rep.chain.back().level()});
                break;
            }
            try {
                rep.chain.push_back(descend(g, p));
            } catch (const level_obstruction& e) {
                throw hypothesis_violation(std::string("sanitize: ") + e.what());
            } catch (const conductor_obstruction& e) {
                throw hypothesis_violation(std::string("sanitize: ") + e.what());
            }
            rep.steps.push_back({sanitize_step::op::descend_op, p, rep.chain.back().level()});
            rep.index_multiplier *= p;
        }
    }
    return rep;
}

}  // namespace sfj
