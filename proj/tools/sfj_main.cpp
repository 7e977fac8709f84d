// Command-line driver: builds and caches Saito-Kurokawa lift tables and
// exposes the slicing / theta / scanning / sieving pipeline. All outputs are
// deterministic: a `# config:` echo line with the resolved run configuration,
// then CSV rows (floats printed with 12 significant digits, exact rationals
// as "p/q"). Exit codes: 0 success, 1 domain error, 2 usage error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "sfj/analytics.hpp"
#include "sfj/cache.hpp"
#include "sfj/halfint.hpp"
#include "sfj/jacobi.hpp"
#include "sfj/qforms.hpp"
#include "sfj/siegel.hpp"

using namespace sfj;

namespace {

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string join_doubles(const std::vector<double>& xs) {
    std::string s;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ',';
        s += fmt(xs[i]);
    }
    return s;
}

void echo_config(const std::vector<std::pair<std::string, std::string>>& kv) {
    std::string line = "# config:";
    for (const auto& [k, v] : kv) line += " " + k + "=" + v;
    std::cout << line << '\n';
}

jacobi_form build_phi(const std::string& form_id, int64_t max_disc) {
    if (form_id == "F10") return phi_10_1(max_disc);
    if (form_id == "F12") return phi_12_1(max_disc);
    throw std::invalid_argument("unknown form id '" + form_id + "' (expected F10 or F12)");
}

// cache hit at sufficient depth wins; otherwise construct in-process
siegel_form obtain_form(const std::string& form_id, int64_t max_disc,
                        const std::string& cache_dir) {
    if (max_disc < 4) max_disc = 4;  // generator tables start at disc 4
    std::string path = cache_path(cache_dir, form_id);
    if (std::ifstream probe(path); probe.good()) {
        siegel_form F = cache_load(path);
        if (F.label() != form_id) throw cache_error("cache holds a different form: " + path);
        if (F.max_disc() >= max_disc) return F;
    }
    return maass_lift(form_id, build_phi(form_id, max_disc), max_disc);
}

std::string cyclotomic_to_string(const Cyclotomic& z) {
    if (z.is_rational()) return rational_to_string(z.as_rational());
    std::string s = "zeta" + std::to_string(z.order()) + ":";
    const auto& c = z.coords();
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) s += ';';
        s += rational_to_string(c[i]);
    }
    return s;
}

// --- subcommand handlers ---------------------------------------------------

void run_build(const std::string& form_id, int64_t max_disc, const std::string& cache_dir) {
    std::string path = cache_path(cache_dir, form_id);
    int64_t target = max_disc;
    if (std::ifstream probe(path); probe.good()) {
        siegel_form old = cache_load(path);
        if (old.label() != form_id) throw cache_error("cache holds a different form: " + path);
        if (old.max_disc() > target) target = old.max_disc();  // extend, never shrink
    }
    echo_config({{"subcommand", "build"},
                 {"cache_dir", cache_dir},
                 {"form", form_id},
                 {"max_disc", std::to_string(target)}});
    siegel_form F = maass_lift(form_id, build_phi(form_id, target), target);
    cache_write(path, F);
    std::cout << "entries=" << F.entries().size() << '\n';
}

void run_coeff(const std::string& form_id, const std::vector<int64_t>& t, int64_t max_disc,
               const std::string& cache_dir) {
    if (t.size() != 3) throw std::invalid_argument("--t expects n,r,m");
    quad_form q{t[0], t[1], t[2]};
    if (!q.is_positive_definite())
        throw std::invalid_argument("(n, r, m) is not positive definite");
    int64_t need = std::max(max_disc, q.disc());
    echo_config({{"subcommand", "coeff"},
                 {"cache_dir", cache_dir},
                 {"form", form_id},
                 {"max_disc", std::to_string(need)},
                 {"t", std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
                           std::to_string(t[2])}});
    siegel_form F = obtain_form(form_id, need, cache_dir);
    std::cout << rational_to_string(F.coefficient(q)) << '\n';
}

void run_fj(const std::string& form_id, int64_t m, int64_t nmax, int64_t max_disc,
            const std::string& cache_dir) {
    if (m < 1 || nmax < 0) throw std::invalid_argument("need m >= 1 and nmax >= 0");
    int64_t need = std::max(max_disc, 4 * m * nmax);
    echo_config({{"subcommand", "fj"},
                 {"cache_dir", cache_dir},
                 {"form", form_id},
                 {"m", std::to_string(m)},
                 {"max_disc", std::to_string(need)},
                 {"nmax", std::to_string(nmax)}});
    siegel_form F = obtain_form(form_id, need, cache_dir);
    jacobi_form phi = fj_slice(F, m, nmax);
    std::cout << "n,r,value\n";
    for (int64_t n = 0; n <= nmax; ++n)
        for (int64_t r = -m + 1; r <= m; ++r)
            std::cout << n << ',' << r << ',' << rational_to_string(phi.c(n, r)) << '\n';
}

void run_theta(const std::string& form_id, int64_t p, int64_t prec, int64_t max_disc,
               const std::string& cache_dir) {
    echo_config({{"subcommand", "theta"},
                 {"cache_dir", cache_dir},
                 {"form", form_id},
                 {"max_disc", std::to_string(max_disc)},
                 {"p", std::to_string(p)},
                 {"prec", std::to_string(prec)}});
    siegel_form F = obtain_form(form_id, max_disc, cache_dir);
    halfint_rational h = theta_decompose(fj_slice(F, p), prec);
    std::cout << "N,value\n";
    for (int64_t N = 1; N <= h.prec(); ++N)
        std::cout << N << ',' << rational_to_string(h.a(N)) << '\n';
}

void run_scan(const std::string& form_id, int64_t bound, int64_t max_disc,
              const std::string& cache_dir) {
    int64_t need = std::max(max_disc, bound);
    echo_config({{"subcommand", "scan"},
                 {"bound", std::to_string(bound)},
                 {"cache_dir", cache_dir},
                 {"form", form_id},
                 {"max_disc", std::to_string(need)}});
    siegel_form F = obtain_form(form_id, need, cache_dir);
    std::cout << "D,a,b,c,value\n";
    for (const auto& row : scan_fundamental(F, bound))
        std::cout << row.D << ',' << row.f.a << ',' << row.f.b << ',' << row.f.c << ','
                  << rational_to_string(row.value) << '\n';
}

void run_class_sum(const std::string& form_id, int64_t disc, int64_t max_disc,
                   const std::string& cache_dir) {
    int64_t need = std::max(max_disc, disc);
    echo_config({{"subcommand", "class-sum"},
                 {"cache_dir", cache_dir},
                 {"disc", std::to_string(disc)},
                 {"form", form_id},
                 {"max_disc", std::to_string(need)}});
    siegel_form F = obtain_form(form_id, need, cache_dir);
    class_group G(disc);
    std::cout << "char,value\n";
    for (int k = 0; k < G.character_count(); ++k) {
        Cyclotomic s = class_sum([&](const quad_form& g) { return F.coefficient(g); }, G, k);
        std::cout << k << ',' << cyclotomic_to_string(s) << '\n';
    }
}

void run_sieve(const std::string& form_id, int64_t p, const std::string& m_policy,
               std::vector<double> grid, double y, int64_t max_disc,
               const std::string& cache_dir) {
    if (grid.empty()) throw std::invalid_argument("--grid must be nonempty");
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("--grid must be increasing");
    double ymax = grid.back();
    int64_t need = std::max<int64_t>(
        max_disc, static_cast<int64_t>(truncation_multiplier * ymax) + (2 * p - 1) * (2 * p - 1) +
                      8 * p);
    siegel_form F = obtain_form(form_id, need, cache_dir);
    halfint_rational h = theta_decompose(fj_slice(F, p));

    int64_t M = 0;
    if (m_policy == "auto") {
        double c_hat = growth_diagnostics(h, grid).slope;
        chosen_M pick = choose_M(y, c_hat, c_hat);
        if (pick.M > Int(std::numeric_limits<int64_t>::max()))
            throw std::invalid_argument("auto-chosen M exceeds the supported range");
        M = pick.M.convert_to<int64_t>();
    } else {
        M = std::stoll(m_policy);
    }
    echo_config({{"subcommand", "sieve"},
                 {"M", std::to_string(M)},
                 {"cache_dir", cache_dir},
                 {"form", form_id},
                 {"grid", join_doubles(grid)},
                 {"max_disc", std::to_string(need)},
                 {"p", std::to_string(p)},
                 {"y", fmt(y)}});
    sieve_report rep = make_sieve_report(h, M, grid);
    std::cout << "X,S\n";
    for (size_t i = 0; i < rep.grid.size(); ++i)
        std::cout << fmt(rep.grid[i]) << ',' << fmt(rep.values[i]) << '\n';
    std::cout << "# slope=" << fmt(rep.slope) << '\n';
    std::cout << "# identity_ok=" << (rep.identity_ok ? "true" : "false") << '\n';
}

void run_ratio(double y, double T) {
    echo_config({{"subcommand", "ratio"}, {"T", fmt(T)}, {"y", fmt(y)}});
    std::cout << "y,T,value\n";
    std::cout << fmt(y) << ',' << fmt(T) << ',' << fmt(easylemma_ratio(y, T)) << '\n';
}

void run_selftest(int64_t bound) {
    echo_config({{"subcommand", "selftest"}, {"bound", std::to_string(bound)}});
    bool all_ok = true;
    auto report = [&](const char* name, bool ok) {
        std::cout << (ok ? "ok " : "FAIL ") << name << '\n';
        all_ok = all_ok && ok;
    };

    report("sieve_identity", sieve_identity_selftest(bound));

    {
        bool ok = true;
        for (int64_t a = 3; a <= 99 && ok; a += 2)
            for (int64_t b = 3; b <= 99 && ok; b += 2) {
                if (std::gcd(a, b) != 1) continue;
                int s = ((a - 1) / 2) % 2 == 1 && ((b - 1) / 2) % 2 == 1 ? -1 : 1;
                ok = kronecker(a, b) * kronecker(b, a) == s;
            }
        report("kronecker_reciprocity", ok);
    }
    {
        bool ok = true;
        for (int64_t N = 0; N <= 300 && ok; ++N) {
            Rational want = 0;
            if (N == 0) {
                want = Rational(-1, 12);
            } else if (N % 4 == 1 || N % 4 == 2) {
                want = 0;
            } else {
                for (const auto& f : enumerate_reduced(N, /*primitive_only=*/false)) {
                    if (f.a == f.c && f.b == f.a)
                        want += Rational(1, 3);
                    else if (f.b == 0 && f.a == f.c)
                        want += Rational(1, 2);
                    else
                        want += 1;
                }
            }
            ok = cohen_H(1, N) == want;
        }
        report("hurwitz_cohen", ok);
    }
    {
        bool ok = true;
        for (int64_t n = 3; n <= 24 && ok; ++n) {
            Cyclotomic s;
            for (int64_t k = 0; k < n; ++k) s += Cyclotomic::zeta(n, k);
            ok = s.is_zero();
        }
        report("cyclotomic_vanishing", ok);
    }
    {
        jacobi_form phi = phi_10_1(100);
        report("phi10_pins", phi.c_star(0) == 0 && phi.c_star(3) == 1 && phi.c_star(4) == -2);
    }
    {
        jacobi_form phi = phi_12_1(100);
        report("phi12_pins", phi.c_star(0) == 0 && phi.c_star(3) == 1 && phi.c_star(4) == 10);
    }
    {
        bool ok = true;
        try {
            class_group G(23);
            ok = G.size() == 3;
            for (int k = 0; k < G.character_count() && ok; ++k) {
                Cyclotomic s;
                for (int i = 0; i < G.size(); ++i) s += G.character(k, i);
                ok = (k == 0) ? (s == Cyclotomic(3)) : s.is_zero();
            }
        } catch (const std::exception&) {
            ok = false;
        }
        report("class_group_23", ok);
    }

    if (!all_ok) throw std::runtime_error("selftest failed");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic toolkit for degree-2 Saito-Kurokawa lifts and their "
                 "half-integral weight shadows"};
    app.require_subcommand(1);

    std::string form_id = "F10";
    std::string cache_dir = default_cache_dir();
    std::string m_policy = "auto";
    std::vector<int64_t> t;
    std::vector<double> grid{25, 50, 100, 200};
    int64_t max_disc = 0, m = 1, nmax = 0, p = 3, prec = -1, bound = 100000, disc = 23;
    double y = 19.0, T = 10000.0;

    auto* c_build = app.add_subcommand("build", "construct a lift and persist its cache");
    c_build->add_option("--form", form_id, "form id (F10 or F12)")->required();
    c_build->add_option("--max-disc", max_disc, "discriminant bound")->required()
        ->check(CLI::PositiveNumber);
    c_build->add_option("--cache-dir", cache_dir, "cache directory");
    c_build->callback([&] { run_build(form_id, max_disc, cache_dir); });

    auto* c_coeff = app.add_subcommand("coeff", "print one Fourier coefficient");
    c_coeff->add_option("--form", form_id)->required();
    c_coeff->add_option("--t", t, "matrix entries n,r,m")->required()->delimiter(',')
        ->expected(3);
    c_coeff->add_option("--max-disc", max_disc);
    c_coeff->add_option("--cache-dir", cache_dir);
    c_coeff->callback([&] { run_coeff(form_id, t, max_disc, cache_dir); });

    auto* c_fj = app.add_subcommand("fj", "emit a Fourier-Jacobi slice as CSV");
    c_fj->add_option("--form", form_id)->required();
    c_fj->add_option("--m", m, "slice index")->required()->check(CLI::PositiveNumber);
    c_fj->add_option("--nmax", nmax, "rows to emit")->required();
    c_fj->add_option("--max-disc", max_disc);
    c_fj->add_option("--cache-dir", cache_dir);
    c_fj->callback([&] { run_fj(form_id, m, nmax, max_disc, cache_dir); });

    auto* c_theta = app.add_subcommand("theta", "theta component of a prime slice as CSV");
    c_theta->add_option("--form", form_id)->required();
    c_theta->add_option("--p", p, "slice prime")->required()->check(CLI::PositiveNumber);
    c_theta->add_option("--prec", prec, "coefficients to emit (-1 = deepest)");
    c_theta->add_option("--max-disc", max_disc, "lift depth")->required();
    c_theta->add_option("--cache-dir", cache_dir);
    c_theta->callback([&] { run_theta(form_id, p, prec, max_disc, cache_dir); });

    auto* c_scan = app.add_subcommand("scan", "fundamental odd squarefree coefficient scan");
    c_scan->add_option("--form", form_id)->required();
    c_scan->add_option("--bound", bound, "discriminant bound")->required()
        ->check(CLI::PositiveNumber);
    c_scan->add_option("--max-disc", max_disc);
    c_scan->add_option("--cache-dir", cache_dir);
    c_scan->callback([&] { run_scan(form_id, bound, max_disc, cache_dir); });

    auto* c_cs = app.add_subcommand("class-sum", "character-weighted class sums");
    c_cs->add_option("--form", form_id)->required();
    c_cs->add_option("--disc", disc, "positive D with -D fundamental")->required()
        ->check(CLI::PositiveNumber);
    c_cs->add_option("--max-disc", max_disc);
    c_cs->add_option("--cache-dir", cache_dir);
    c_cs->callback([&] { run_class_sum(form_id, disc, max_disc, cache_dir); });

    auto* c_sieve = app.add_subcommand("sieve", "squarefree sieve report over an X grid");
    c_sieve->add_option("--form", form_id)->required();
    c_sieve->add_option("--p", p, "slice prime")->required()->check(CLI::PositiveNumber);
    c_sieve->add_option("--M", m_policy, "sieve modulus or 'auto'");
    c_sieve->add_option("--grid", grid, "X grid")->delimiter(',');
    c_sieve->add_option("--y", y, "ratio-lemma parameter");
    c_sieve->add_option("--max-disc", max_disc);
    c_sieve->add_option("--cache-dir", cache_dir);
    c_sieve->callback([&] { run_sieve(form_id, p, m_policy, grid, y, max_disc, cache_dir); });

    auto* c_ratio = app.add_subcommand("ratio", "elementary prime-product ratio");
    c_ratio->add_option("--y", y)->required();
    c_ratio->add_option("--T", T)->required()->check(CLI::Range(2.0, 1e7));
    c_ratio->callback([&] { run_ratio(y, T); });

    auto* c_self = app.add_subcommand("selftest", "run the exact-identity suites");
    c_self->add_option("--bound", bound, "sieve identity bound");
    c_self->callback([&] { run_selftest(bound); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
