#pragma once

// Character table (Pontryagin dual) of a finite abelian group presented by
// an explicit multiplication table. Characters are built by extending from
// the trivial subgroup one generator at a time; each extension step solves
// m*s = t (mod E) for the new generator's exponent. Used both for Dirichlet
// characters mod q and for class group characters.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <vector>

#include "arith.hpp"
#include "errors.hpp"

namespace sfj {

struct abelian_dual {
    int64_t exponent = 1;                     // common order E of all values
    std::vector<std::vector<int64_t>> chars;  // chars[i][g]: chi_i(g) = zeta_E^that
};

// mul[i][j] = index of the product, id = index of the identity.
inline abelian_dual dual_of(const std::vector<std::vector<int>>& mul, int id) {
    const int n = static_cast<int>(mul.size());
    assert(n >= 1 && mul[id][id] == id);

    auto elt_order = [&](int g) {
        int64_t o = 1;
        int x = g;
        while (x != id) {
            x = mul[x][g];
            ++o;
        }
        return o;
    };
    int64_t E = 1;
    for (int g = 0; g < n; ++g) E = std::lcm(E, elt_order(g));

    // in_sub[g] >= 0 once g joins the subgroup; chars hold exponents on it.
    std::vector<char> in_sub(n, 0);
    in_sub[id] = 1;
    std::vector<int> members{id};
    std::vector<std::vector<int64_t>> chars{std::vector<int64_t>(n, 0)};

    for (int g = 0; g < n; ++g) {
        if (in_sub[g]) continue;
        // m = order of g modulo the current subgroup
        int64_t m = 1;
        int x = g;
        while (!in_sub[x]) {
            x = mul[x][g];
            ++m;
        }
        const int gm = x;  // g^m, inside the subgroup
        std::vector<std::vector<int64_t>> next;
        next.reserve(chars.size() * static_cast<size_t>(m));
        for (const auto& chi : chars) {
            int64_t t = chi[gm];
            // m*s = t (mod E); extension theory guarantees m | gcd stuff works out
            int64_t d = std::gcd(m, E);
            assert(t % d == 0);
            int64_t s0 = (t / d) % (E / d) * inv_mod((m / d) % (E / d), E / d) % (E / d);
            for (int64_t j = 0; j < d; ++j) {
                int64_t s = (s0 + j * (E / d)) % E;
                std::vector<int64_t> ext = chi;
                int64_t val = 0;
                int pw = id;
                for (int64_t i = 1; i < m; ++i) {
                    pw = mul[pw][g];
                    val = (val + s) % E;
                    for (int h : members) ext[mul[h][pw]] = (chi[h] + val) % E;
                }
                next.push_back(std::move(ext));
            }
        }
        chars = std::move(next);
        std::vector<int> grown = members;
        int pw = id;
        for (int64_t i = 1; i < m; ++i) {
            pw = mul[pw][g];
            for (int h : members) {
                int e = mul[h][pw];
                if (!in_sub[e]) {
                    in_sub[e] = 1;
                    grown.push_back(e);
                }
            }
        }
        members = std::move(grown);
    }

    assert(static_cast<int>(members.size()) == n);
    assert(static_cast<int>(chars.size()) == n);
    std::sort(chars.begin(), chars.end());
    // paranoia: all distinct, all homomorphisms
    for (size_t i = 0; i + 1 < chars.size(); ++i) assert(chars[i] != chars[i + 1]);
    for (const auto& chi : chars)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                assert((chi[a] + chi[b]) % E == chi[mul[a][b]]);
    return {E, std::move(chars)};
}

}  // namespace sfj
