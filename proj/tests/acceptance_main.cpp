// Acceptance suite: builds the weight-10 and weight-12 lifts at full scale
// once, then prints one PASS/FAIL line per numbered check and exits with the
// number of failures. Everything upstream of the analytics layer is exact.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sfj/analytics.hpp"
#include "sfj/cache.hpp"
#include "sfj/halfint.hpp"
#include "sfj/jacobi.hpp"
#include "sfj/qforms.hpp"
#include "sfj/siegel.hpp"

using namespace sfj;
namespace fs = std::filesystem;
using clk = std::chrono::steady_clock;

namespace {

int failures = 0;

struct check_failed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
    if (!cond) throw check_failed(what);
}

template <class Fn>
void check(int id, const char* title, Fn&& body) {
    auto t0 = clk::now();
    std::string note;
    bool ok = true;
    try {
        note = body();
    } catch (const std::exception& e) {
        ok = false;
        note = e.what();
    }
    double secs = std::chrono::duration<double>(clk::now() - t0).count();
    std::printf("%s %2d  %s: %s  [%.1fs]\n", ok ? "PASS" : "FAIL", id, title, note.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++failures;
}

template <class T>
std::string str(const T& x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

quad_form random_pos_def(std::mt19937_64& rng, int64_t max_disc) {
    for (;;) {
        int64_t a = 1 + static_cast<int64_t>(rng() % 30);
        int64_t c = 1 + static_cast<int64_t>(rng() % 30);
        int64_t b = static_cast<int64_t>(rng() % 61) - 30;
        quad_form f{a, b, c};
        if (f.is_positive_definite() && f.disc() <= max_disc) return f;
    }
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

int main() {
    auto t0 = clk::now();
    std::printf("# building fixtures (weight-10 lift to disc 49400, weight-12 to 4000)\n");
    std::fflush(stdout);

    const jacobi_form phi10 = phi_10_1(49400);
    const siegel_form F10 = maass_lift("F10", phi10, 49400);
    const jacobi_form phi12 = phi_12_1(4000);
    const siegel_form F12 = maass_lift("F12", phi12, 4000);
    const jacobi_form phi3 = fj_slice(F10, 3);
    const halfint_form<Rational> h = theta_decompose(phi3);

    std::printf("# fixtures ready: %zu + %zu table entries, theta precision %lld  [%.1fs]\n",
                F10.entries().size(), F12.entries().size(), static_cast<long long>(h.prec()),
                std::chrono::duration<double>(clk::now() - t0).count());
    std::fflush(stdout);

    check(1, "construction of phi_10", [&] {
        require(phi10.c_star(3) == 1 && phi10.c_star(4) == -2, "normalization pins failed");
        // same form along a second, all-rational route
        jacobi_form A = series_times(eisenstein(6, 1000), jacobi_eisenstein(4, 4000), 10);
        jacobi_form B = series_times(eisenstein(4, 1000), jacobi_eisenstein(6, 4000), 10);
        for (int64_t D = 0; D <= 4000; ++D)
            require(Rational(144) * phi10.c_star(D) == A.c_star(D) - B.c_star(D),
                    "construction routes disagree at disc " + std::to_string(D));
        int64_t cells = 0;
        for (int64_t n = 0; n <= 1000; ++n)
            for (int64_t r = 0; r * r <= 4 * n; ++r) {
                int64_t D = 4 * n - r * r;
                require(phi10.c(n, r) == phi10.c_star(D) && phi10.c(n, -r) == phi10.c_star(D),
                        "coefficient not a function of the discriminant");
                ++cells;
            }
        return "c*(3)=1, c*(4)=-2; two routes agree for disc <= 4000; " + std::to_string(cells) +
               " (n,r) cells depend on D alone";
    });

    check(2, "Hurwitz class numbers", [&] {
        cohen_table H(1, 2000);
        require(H.H(0) == Rational(-1, 12), "H(1,0) must be -1/12");
        for (int64_t N = 1; N <= 2000; ++N) {
            Rational count = 0;
            for (const auto& f : enumerate_reduced(N)) {
                if (f.b == 0 && f.a == f.c)
                    count += Rational(1, 2);
                else if (f.a == f.b && f.b == f.c)
                    count += Rational(1, 3);
                else
                    count += 1;
            }
            require(H.H(N) == count, "mismatch with the weighted form count at N = " +
                                         std::to_string(N));
        }
        return "H(1,N) equals the weighted reduced-form count for all N <= 2000";
    });

    check(3, "class invariance of the lifts", [&] {
        std::mt19937_64 rng(20260814);
        const unimodular S{0, -1, 1, 0};
        auto run = [&](const siegel_form& F) {
            for (int iter = 0; iter < 200; ++iter) {
                quad_form f = random_pos_def(rng, F.max_disc());
                unimodular u;
                for (int i = 0; i < 6; ++i) {
                    int64_t t = static_cast<int64_t>(rng() % 5) - 2;
                    u = u * unimodular{1, t, 0, 1};
                    if (rng() & 1) u = u * S;
                }
                require(F.coefficient(f) == F.coefficient(apply(f, u)),
                        "coefficient changed under a unimodular substitution");
            }
        };
        run(F10);
        run(F12);
        return "200 random (form, substitution) pairs each on F10 and F12, exact";
    });

    check(4, "nonzero odd fundamental coefficients", [&] {
        int64_t n10 = count_distinct_nonzero_disc(scan_fundamental(F10, 3000));
        int64_t n12 = count_distinct_nonzero_disc(scan_fundamental(F12, 3000));
        require(n10 >= 10, "F10: fewer than 10 odd squarefree discs with nonzero coefficient");
        require(n12 >= 10, "F12: fewer than 10 odd squarefree discs with nonzero coefficient");
        return "distinct odd squarefree discs <= 3000 with nonzero coefficient: F10 " +
               std::to_string(n10) + ", F12 " + std::to_string(n12);
    });

    check(5, "theta decomposition lands in the plus space", [&] {
        require(!h.is_zero(), "h vanishes");
        require(h.a(3) == 1, "h(3) must be 1");
        for (int64_t n = 1; n <= h.prec(); ++n)
            if (n % 4 == 1 || n % 4 == 2)
                require(h.a(n) == 0, "plus-space vanishing fails at " + std::to_string(n));
        return "h != 0, h(3) = 1, h(n) = 0 for n = 1, 2 (mod 4) up to precision " +
               std::to_string(h.prec());
    });

    check(6, "Hecke proportionality", [&] {
        auto l5 = scalar_ratio(hecke_T_p2(h, 5), h);
        auto l7 = scalar_ratio(hecke_T_p2(h, 7), h);
        require(l5.has_value(), "T(25) h is not proportional to h");
        require(l7.has_value(), "T(49) h is not proportional to h");
        // eigenvalues of the weight-18 elliptic newform Delta * E6
        qseries f18 = delta_series(8) * eisenstein(6, 8);
        require(*l5 == f18[5] && *l7 == f18[7], "eigenvalues disagree with Delta * E6");
        return "T(25) h = " + str(*l5) + " h, T(49) h = " + str(*l7) +
               " h; both match Delta * E6";
    });

    check(7, "operator identities on a random vector", [&] {
        std::mt19937_64 rng(7771);
        std::vector<Rational> v(10001);
        for (int64_t n = 1; n <= 10000; ++n)
            v[static_cast<size_t>(n)] = Rational(static_cast<int64_t>(rng() % 19) - 9,
                                                 static_cast<int64_t>(rng() % 3) + 1);
        halfint_form<Rational> f(9, 4, dirichlet_character::trivial(4), 10000, v);
        for (int64_t r : {3, 5}) {
            auto u = u_op(f, r);
            for (int64_t n = 1; n <= u.prec(); ++n) {
                require(u.a(n) == f.a(r * r * n), "U relabel identity fails");
                require(u.normalized_sq(n) == f.normalized_sq(r * r * n),
                        "normalized view is not U-invariant");
            }
        }
        auto two_step = u_op(u_op(f, 3), 5);
        auto one_step = u_op(f, 15);
        require(two_step.level() == one_step.level() &&
                    two_step.dilation() == one_step.dilation() &&
                    two_step.prec() == one_step.prec(),
                "U composition changes shape");
        for (int64_t n = 1; n <= one_step.prec(); ++n)
            require(two_step.a(n) == one_step.a(n), "U(9) U(25) != U(225)");
        auto lhs = hecke_T_p2(u_op(f, 3), 5);
        auto rhs = u_op(hecke_T_p2(f, 5), 3);
        require(lhs.prec() == rhs.prec() && lhs.level() == rhs.level(), "T-U shapes differ");
        for (int64_t n = 1; n <= lhs.prec(); ++n)
            require(lhs.a(n) == rhs.a(n), "T(25) U(9) != U(9) T(25)");
        return "U relabel, U composition, and T-U commutation exact on a length-10000 vector";
    });

    check(8, "squarefree sieve identity", [&] {
        require(sieve_identity_selftest(100000), "mu-sum identity fails below 100000");
        double s25 = sieve_S(h, 6, 25.0);   // each call cross-checks the expanded
        double s100 = sieve_S(h, 6, 100.0);  // form to relative 1e-12 internally
        require(s25 > 0 && s100 > s25, "sieved sums must be positive and growing");
        return "exact for n <= 100000; S(6,X;h) direct vs expanded within 1e-12 at X = 25, 100";
    });

    check(9, "linear growth of the second moment", [&] {
        growth_report g = growth_diagnostics(h, {25, 50, 100, 200});
        for (double r : g.doubling_ratios)
            require(1.6 <= r && r <= 2.4, "doubling ratio " + fmt(r) + " outside [1.6, 2.4]");
        sieve_report s = make_sieve_report(h, 6, {25, 50, 100, 200});
        for (size_t i = 1; i < s.values.size(); ++i)
            require(s.values[i] > s.values[i - 1], "sieved sums not strictly increasing");
        require(s.slope > 0, "sieved slope must be positive");
        return "R(2X)/R(X) in [" + fmt(*std::min_element(g.doubling_ratios.begin(),
                                                         g.doubling_ratios.end())) +
               ", " + fmt(*std::max_element(g.doubling_ratios.begin(),
                                            g.doubling_ratios.end())) +
               "] on X = 25..200; sieved slope " + fmt(s.slope);
    });

    check(10, "dilated sums stay under the bound", [&] {
        auto b5 = bound_check_ur2(h, 5, {10, 20, 40});
        auto b7 = bound_check_ur2(h, 7, {5, 10, 20});
        auto b35 = bound_check_ur2(h, 35, {0.25, 0.5, 1.0});
        require(b5.within_bound, "r = 5 exceeds the bound");
        require(b7.within_bound, "r = 7 exceeds the bound");
        require(b35.within_bound, "r = 35 exceeds the bound");
        return "max ratio r=5: " + fmt(b5.max_ratio) + "/" + fmt(b5.bound_factor) +
               ", r=7: " + fmt(b7.max_ratio) + "/" + fmt(b7.bound_factor) +
               ", r=35: " + fmt(b35.max_ratio) + "/" + fmt(b35.bound_factor);
    });

    check(11, "prime-product ratio is small", [&] {
        double v2 = easylemma_ratio(19.0, 100.0);
        double v3 = easylemma_ratio(19.0, 1000.0);
        double v4 = easylemma_ratio(19.0, 10000.0);
        require(v2 > v3 && v3 > v4, "ratio must decrease in T");
        require(v4 > 0 && v4 < 0.01, "final ratio must land below 0.01");
        return "T = 100, 1000, 10000 give " + fmt(v2) + " > " + fmt(v3) + " > " + fmt(v4) +
               " < 0.01";
    });

    check(12, "level-lowering case split", [&] {
        auto shape = [&](const sanitize_report<Rational>& rep) {
            require(rep.steps.size() == 1 && rep.steps[0].kind == sanitize_step::op::restrict_op &&
                        rep.steps[0].p == 3,
                    "expected a single restriction at 3");
            require(rep.index_multiplier == 1 && rep.result().level() == 108,
                    "unexpected final level");
            const auto& out = rep.result();
            require(!out.is_zero(), "sanitized form vanished");
            for (int64_t n = 3; n <= out.prec(); n += 3)
                require(out.a(n) == 0, "support not coprime to the final level");
        };
        shape(sanitize(h));
        shape(sanitize(u_op(h, 3)));  // dilated input

        // mangled input: the part of h supported on multiples of 3
        std::vector<Rational> gv(static_cast<size_t>(h.prec()) + 1);
        for (int64_t n = 3; n <= h.prec(); n += 3) gv[static_cast<size_t>(n)] = h.a(n);
        halfint_form<Rational> g(9, 12, h.chi(), h.prec(), gv);
        bool violation = false, conductor = false, level = false;
        try {
            sanitize(g);
        } catch (const hypothesis_violation&) {
            violation = true;
        }
        try {
            descend(g, 3);
        } catch (const conductor_obstruction&) {
            conductor = true;
        }
        // second synthetic input: 3-divisible support at a level prime to 3
        std::vector<Rational> sv(101);
        sv[3] = 1;
        halfint_form<Rational> s(9, 20, dirichlet_character::trivial(20), 100, sv);
        try {
            descend(s, 3);
        } catch (const level_obstruction&) {
            level = true;
        }
        require(violation && conductor && level, "an obstruction failed to fire");
        return "restriction branch on h and its dilation; conductor and level obstructions "
               "fire on the two synthetic inputs";
    });

    check(13, "class sums at disc 23", [&] {
        class_group G(23);
        require(G.size() == 3, "class number of disc -23 must be 3");
        Rational a213 = F10.coefficient(2, 1, 3);
        require(a213 == 2736, "a(F10, (2,1,3)) must be 2736");
        auto coeff = [&](const quad_form& f) { return F10.coefficient(f); };
        Cyclotomic one = Cyclotomic::zeta(1, 0), zero;
        Cyclotomic expected = (Rational(3) * a213) * one;
        int trivial_hits = 0, zero_hits = 0;
        for (int k = 0; k < G.character_count(); ++k) {
            bool is_trivial = true;
            for (int i = 0; i < G.size(); ++i)
                if (!(G.character(k, i) == one)) is_trivial = false;
            Cyclotomic s = class_sum(coeff, G, k);
            if (is_trivial) {
                require(s == expected, "trivial-character sum must be 3 a(2,1,3)");
                ++trivial_hits;
            } else {
                require(s == zero, "nontrivial-character sum must vanish");
                ++zero_hits;
            }
        }
        require(trivial_hits == 1 && zero_hits == 2, "unexpected character split");
        return "trivial sum = 3 * 2736 = 8208, both nontrivial sums exactly 0";
    });

    check(14, "byte-deterministic command output", [&] {
        const char* bin = std::getenv("SFJ_CLI");
        require(bin != nullptr, "SFJ_CLI is not set");
        fs::path dir = fs::temp_directory_path() / ("sfj_accept_" + std::to_string(::getpid()));
        fs::remove_all(dir);
        fs::create_directories(dir / "cache");
        std::string cd = " --cache-dir " + (dir / "cache").string();
        std::vector<std::string> cmds = {
            "selftest --bound 2000",
            "fj --form F10 --m 2 --nmax 8" + cd,
            "theta --form F10 --p 3 --prec 50 --max-disc 700" + cd,
            "scan --form F10 --bound 300" + cd,
            "class-sum --form F10 --disc 23" + cd,
            "sieve --form F10 --p 3 --M 6 --grid 1,2,4 --max-disc 1000" + cd,
            "ratio --y 19 --T 1000",
        };
        int idx = 0;
        for (const auto& args : cmds) {
            fs::path a = dir / ("a" + std::to_string(idx) + ".txt");
            fs::path b = dir / ("b" + std::to_string(idx) + ".txt");
            ++idx;
            for (const fs::path* out : {&a, &b}) {
                std::string cmd =
                    std::string(bin) + " " + args + " > " + out->string() + " 2>/dev/null";
                int status = std::system(cmd.c_str());
                require(WEXITSTATUS(status) == 0, "command failed: " + args);
            }
            std::string bytes = slurp(a);
            require(!bytes.empty() && bytes == slurp(b), "outputs differ: " + args);
        }
        fs::remove_all(dir);
        return "selftest and all 6 table-emitting subcommands byte-identical across two runs";
    });

    std::printf("# %d/14 passed\n", 14 - failures);
    return failures;
}
