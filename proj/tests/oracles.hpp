// Copyright 2026 The mntgen Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

// Brute-force reference routines for the test suites. Nothing here calls
// into the library's number theory; fixed-width arithmetic only.

#ifndef MNTGEN_TESTS_ORACLES_HPP
#define MNTGEN_TESTS_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

using i128 = __int128;

inline bool trial_division_prime(std::uint64_t m) {
    if (m < 2) return false;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) return false;
    }
    return true;
}

inline std::uint64_t repeated_multiplication_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    std::uint64_t r = 1 % mod;
    for (std::uint64_t i = 0; i < exp; ++i) r = static_cast<std::uint64_t>((static_cast<i128>(r) * base) % mod);
    return r;
}

/// Floor square root for nonnegative 128-bit values.
inline i128 isqrt128(i128 v) {
    if (v < 0) throw std::invalid_argument("isqrt128");
    i128 r = static_cast<i128>(std::sqrt(static_cast<long double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

inline bool is_square128(i128 v) {
    if (v < 0) return false;
    i128 r = isqrt128(v);
    return r * r == v;
}

/// All (X, Y), Y >= 0, with X^2 - D*Y^2 = m and |X| <= xmax, by scanning Y.
inline std::set<std::pair<long long, long long>> pell_by_scan(long long D, long long m, long long xmax) {
    std::set<std::pair<long long, long long>> out;
    const i128 xm2 = static_cast<i128>(xmax) * xmax;
    for (long long Y = 0;; ++Y) {
        const i128 x2 = static_cast<i128>(m) + static_cast<i128>(D) * Y * Y;
        if (x2 > xm2 && D > 0) break;
        if (x2 < 0) continue;
        if (is_square128(x2)) {
            const long long X = static_cast<long long>(isqrt128(x2));
            out.insert({X, Y});
            out.insert({-X, Y});
        }
    }
    return out;
}

/// Least (u, v) with u^2 - D v^2 = 1, v >= 1, by scanning v.
inline std::pair<i128, i128> unit_by_scan(long long D) {
    for (i128 v = 1;; ++v) {
        const i128 u2 = 1 + static_cast<i128>(D) * v * v;
        if (is_square128(u2)) return {isqrt128(u2), v};
    }
}

/// Least v in [1, v_cap] with 1 + D v^2 a square, or 0 if none. Tracks the
/// least u with r = u^2 - D v^2 - 1 >= 0; u grows by a0 or a0 + 1 per step.
/// Fixed width: requires D <= 10^4 and v_cap <= 2^32.
inline std::uint64_t unit_scan_capped(long long D, std::uint64_t v_cap) {
    if (D < 2 || D > 10000 || v_cap > (std::uint64_t{1} << 32)) throw std::invalid_argument("unit_scan_capped");
    const std::int64_t d = D;
    const std::int64_t a0 = static_cast<std::int64_t>(isqrt128(d));
    std::int64_t u = a0 + 1;  // v = 1: u^2 >= 1 + D
    std::int64_t r = u * u - d - 1;
    while (r - (2 * u - 1) >= 0) {
        r -= 2 * u - 1;
        --u;
    }
    std::int64_t step = 3 * d;  // D (2v + 1) at v = 1
    for (std::uint64_t v = 1; v <= v_cap; ++v) {
        if (r == 0) return v;
        r += a0 * (2 * u + a0) - step;
        u += a0;
        step += 2 * d;
        while (r < 0) {
            r += 2 * u + 1;
            ++u;
        }
    }
    return 0;
}

/// Least (u, v) with u^2 - D v^2 = 1 by walking the Stern-Brocot tree
/// towards sqrt(D) one mediant at a time; every solution of the unit
/// equation is a best upper approximation and lies on that path.
/// Arbitrary precision through the caller-supplied integer type.
template <class Int>
std::pair<Int, Int> unit_by_mediants(const Int &D) {
    Int a = 0, b = 1, c = 1, d = 0;  // a/b < sqrt(D) < c/d
    for (;;) {
        Int u = a + c, v = b + d;
        const Int norm = u * u - D * v * v;
        if (norm == 1) return {u, v};
        if (norm < 0) {
            a = u;
            b = v;
        } else {
            c = u;
            d = v;
        }
    }
}

/// m = d*y^2 by full trial factorization.
inline std::pair<std::uint64_t, std::uint64_t> squarefree_by_factoring(std::uint64_t m) {
    std::uint64_t d = 1, y = 1;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        unsigned e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        for (unsigned i = 0; i + 1 < e; i += 2) y *= p;
        if (e % 2) d *= p;
    }
    return {d * m, y};
}

inline bool squarefree_naive(std::uint64_t m) {
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % (p * p) == 0) return false;
    }
    return m >= 1;
}

/// Roots in [0, q) of a*x^2 + b*x + c modulo q by exhaustion.
inline std::vector<long long> roots_by_scan(long long a, long long b, long long c, long long q) {
    std::vector<long long> out;
    for (long long s = 0; s < q; ++s) {
        const i128 v = static_cast<i128>(a) * s * s + static_cast<i128>(b) * s + c;
        if (v % q == 0) out.push_back(s);
    }
    return out;
}

/// Coefficients of a polynomial of degree <= 4 with given values at
/// x = 0..4, by exact Lagrange interpolation (denominators divide 24).
inline std::vector<long long> interpolate5(const std::vector<i128> &values) {
    // Newton forward differences.
    std::vector<i128> diff = values;
    std::vector<i128> newton;
    for (std::size_t level = 0; level < values.size(); ++level) {
        newton.push_back(diff[0]);
        for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
        diff.pop_back();
    }
    // sum newton[j] * C(x, j) expanded to monomials, scaled by 24
    std::vector<i128> coeffs(values.size(), 0);
    std::vector<i128> falling{1};  // product (x - 0)(x - 1)...(x - j + 1)
    i128 fact = 1;
    for (std::size_t j = 0; j < newton.size(); ++j) {
        if (j > 0) {
            fact *= static_cast<i128>(j);
            std::vector<i128> next(falling.size() + 1, 0);
            for (std::size_t i = 0; i < falling.size(); ++i) {
                next[i + 1] += falling[i];
                next[i] -= falling[i] * static_cast<i128>(j - 1);
            }
            falling = next;
        }
        for (std::size_t i = 0; i < falling.size(); ++i) {
            coeffs[i] += newton[j] * falling[i] * (24 / fact);
        }
    }
    std::vector<long long> out;
    for (auto c : coeffs) {
        if (c % 24 != 0) throw std::logic_error("interpolate5: non-integral coefficient");
        out.push_back(static_cast<long long>(c / 24));
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

}  // namespace oracle

#endif  // MNTGEN_TESTS_ORACLES_HPP
