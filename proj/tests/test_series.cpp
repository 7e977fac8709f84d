// Exact q-series arithmetic. Oracles: brute-force divisor sums, classical
// identities (E4^2 = E8, 1728 Delta = E4^3 - E6^2), Ramanujan's congruence.

#include <catch2/catch_amalgamated.hpp>

#include "sfj/series.hpp"

using namespace sfj;

TEST_CASE("eisenstein series: normalization and pinned coefficients") {
    qseries e4 = eisenstein(4, 10), e6 = eisenstein(6, 10);
    CHECK(e4[0] == 1);
    CHECK(e4[1] == 240);
    CHECK(e4[2] == 2160);
    CHECK(e4[3] == 6720);
    CHECK(e6[0] == 1);
    CHECK(e6[1] == -504);
    CHECK(e6[2] == -16632);
    // brute-force sigma_{k-1}
    for (int k : {4, 6, 8}) {
        qseries e = eisenstein(k, 60);
        Rational factor = Rational(-2 * k) / bernoulli(k);
        for (int64_t n = 1; n <= 60; ++n) {
            Int s = 0;
            for (int64_t d = 1; d <= n; ++d)
                if (n % d == 0) s += ipow_int(Int(d), static_cast<unsigned>(k - 1));
            CHECK(e[n] == factor * Rational(s));
        }
    }
}

TEST_CASE("min-precision rule") {
    qseries a = eisenstein(4, 20), b = eisenstein(6, 7);
    CHECK((a + b).prec() == 7);
    CHECK((a * b).prec() == 7);
    CHECK_THROWS_AS((a * b)[8], out_of_precision);
}

TEST_CASE("E4^2 = E8") {
    qseries e4 = eisenstein(4, 50);
    CHECK(e4 * e4 == eisenstein(8, 50));
}

TEST_CASE("delta: pinned tau values, multiplicativity, Ramanujan congruence") {
    qseries d = delta_series(100);
    CHECK(d[0] == 0);
    CHECK(d[1] == 1);
    CHECK(d[2] == -24);
    CHECK(d[3] == 252);
    CHECK(d[4] == -1472);
    CHECK(d[5] == 4830);
    CHECK(d[6] == -6048);
    CHECK(d[12] == -370944);
    // tau(mn) = tau(m) tau(n) for coprime m, n
    for (int64_t m = 2; m <= 10; ++m)
        for (int64_t n = 2; n <= 10; ++n) {
            if (std::gcd(m, n) != 1 || m * n > 100) continue;
            CHECK(d[m * n] == d[m] * d[n]);
        }
    // tau(n) = sigma_11(n) mod 691
    for (int64_t n = 1; n <= 100; ++n) {
        Rational diff = d[n] - Rational(sigma_k(11, n));
        Int num = boost::multiprecision::numerator(diff);
        CHECK(boost::multiprecision::denominator(diff) == 1);
        CHECK(num % 691 == 0);
    }
    // 1728 Delta = E4^3 - E6^2 on the nose
    qseries e4 = eisenstein(4, 40), e6 = eisenstein(6, 40);
    CHECK(Rational(1728) * delta_series(40) == e4 * e4 * e4 - e6 * e6);
}
