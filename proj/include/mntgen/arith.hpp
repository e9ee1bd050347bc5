// Copyright 2026 The mntgen Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

// Arbitrary-precision number theory primitives: modular exponentiation,
// primality, modular square roots and square-free decomposition.

#ifndef MNTGEN_ARITH_HPP
#define MNTGEN_ARITH_HPP

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>

namespace mntgen {

/// An element of Z/mZ with 0 <= value < modulus.
class Residue {
public:
    Residue(const mpz_class &value, const mpz_class &modulus) : modulus_(modulus) {
        if (modulus_ < 2) {
            throw std::invalid_argument("Residue: modulus must be >= 2");
        }
        mpz_fdiv_r(value_.get_mpz_t(), value.get_mpz_t(), modulus_.get_mpz_t());
    }

    const mpz_class &value() const { return value_; }
    const mpz_class &modulus() const { return modulus_; }

    friend bool operator==(const Residue &a, const Residue &b) {
        return a.value_ == b.value_ && a.modulus_ == b.modulus_;
    }

private:
    mpz_class value_;
    mpz_class modulus_;
};

inline Residue mod_pow(const mpz_class &base, const mpz_class &exp, const mpz_class &modulus) {
    if (modulus < 2) {
        throw std::invalid_argument("mod_pow: modulus must be >= 2");
    }
    if (exp < 0) {
        throw std::invalid_argument("mod_pow: exponent must be nonnegative");
    }
    mpz_class r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), modulus.get_mpz_t());
    return Residue(r, modulus);
}

/// Floor of the square root; m must be nonnegative.
inline mpz_class isqrt(const mpz_class &m) {
    if (m < 0) {
        throw std::invalid_argument("isqrt: negative argument");
    }
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline bool is_square(const mpz_class &m) {
    return m >= 0 && mpz_perfect_square_p(m.get_mpz_t()) != 0;
}

inline std::size_t bit_length(const mpz_class &m) {
    return m == 0 ? 0 : mpz_sizeinbase(m.get_mpz_t(), 2);
}

/// Sign of |a| - |b|.
inline int cmpabs(const mpz_class &a, const mpz_class &b) {
    return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
}

namespace detail {

inline constexpr std::array<unsigned, 25> small_primes = {
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41,
    43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

// Strong probable-prime test to base a; m odd, m > 3, 1 < a < m - 1 not required.
inline bool strong_probable_prime(const mpz_class &m, const mpz_class &a) {
    const mpz_class m1 = m - 1;
    mpz_class d = m1;
    unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), r);

    mpz_class base = a % m;
    if (base == 0) {
        return true;
    }
    mpz_class x;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
    if (x == 1 || x == m1) {
        return true;
    }
    for (unsigned long i = 1; i < r; ++i) {
        x = (x * x) % m;
        if (x == m1) {
            return true;
        }
        if (x == 1) {
            return false;
        }
    }
    return false;
}

inline mpz_class half_mod(const mpz_class &v, const mpz_class &m) {
    mpz_class r = v;
    if (mpz_odd_p(r.get_mpz_t())) {
        r += m;
    }
    mpz_fdiv_q_2exp(r.get_mpz_t(), r.get_mpz_t(), 1);
    return r % m;
}

// Strong Lucas probable-prime test with Selfridge's parameter choice
// (first D in 5, -7, 9, -11, ... with Jacobi(D/m) = -1, P = 1, Q = (1 - D)/4).
// m must be odd, > 1 and not a perfect square.
inline bool strong_lucas_probable_prime(const mpz_class &m) {
    long dd = 5;
    for (;;) {
        mpz_class dz = dd;
        int j = mpz_jacobi(dz.get_mpz_t(), m.get_mpz_t());
        if (j == -1) {
            break;
        }
        if (j == 0 && abs(dz) != m) {
            return false;
        }
        dd = dd > 0 ? -(dd + 2) : -dd + 2;
    }
    const mpz_class D = dd;
    const mpz_class P = 1;
    const mpz_class Q = (1 - D) / 4;

    // m + 1 = d * 2^s with d odd
    mpz_class d = m + 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

    mpz_class U = 1, V = P, Qk = Q % m;
    if (Qk < 0) {
        Qk += m;
    }
    const mpz_class Qm = Qk;
    for (long bit = static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2)) - 2; bit >= 0; --bit) {
        // k -> 2k
        U = (U * V) % m;
        V = (V * V - 2 * Qk) % m;
        Qk = (Qk * Qk) % m;
        if (mpz_tstbit(d.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) {
            // 2k -> 2k + 1
            mpz_class u2 = half_mod(P * U + V, m);
            mpz_class v2 = half_mod(D * U + P * V, m);
            U = u2;
            V = v2;
            Qk = (Qk * Qm) % m;
        }
        if (U < 0) U += m;
        if (V < 0) V += m;
    }
    U %= m;
    V %= m;
    if (U < 0) U += m;
    if (V < 0) V += m;
    if (U == 0 || V == 0) {
        return true;
    }
    for (unsigned long r = 1; r < s; ++r) {
        V = (V * V - 2 * Qk) % m;
        if (V < 0) V += m;
        if (V == 0) {
            return true;
        }
        Qk = (Qk * Qk) % m;
    }
    return false;
}

}  // namespace detail

/// Deterministic below 2^64. Above that: base-2 strong test, strong Lucas
/// test, and 16 further strong tests on bases drawn from a generator seeded
/// with m itself, so the answer is reproducible.
inline bool is_prime(const mpz_class &m) {
    if (m < 2) {
        return false;
    }
    for (unsigned p : detail::small_primes) {
        if (m == p) {
            return true;
        }
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            return false;
        }
    }
    if (m < 97 * 97) {
        return true;
    }

    if (bit_length(m) <= 64) {
        // Sufficient for every m < 3.3 * 10^24.
        static constexpr std::array<unsigned, 12> witnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
        for (unsigned a : witnesses) {
            if (!detail::strong_probable_prime(m, a)) {
                return false;
            }
        }
        return true;
    }

    if (!detail::strong_probable_prime(m, 2)) {
        return false;
    }
    if (is_square(m)) {
        return false;
    }
    if (!detail::strong_lucas_probable_prime(m)) {
        return false;
    }
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(m);
    const mpz_class span = m - 3;
    for (int i = 0; i < 16; ++i) {
        mpz_class a = rng.get_z_range(span) + 2;
        if (!detail::strong_probable_prime(m, a)) {
            return false;
        }
    }
    return true;
}

/// Square root of a modulo an odd prime q (Tonelli-Shanks). Returns the
/// smaller of the two roots, 0 when a == 0 (mod q), empty for non-residues.
inline std::optional<Residue> sqrt_mod(const mpz_class &a, const mpz_class &q) {
    if (q < 3 || mpz_even_p(q.get_mpz_t()) || !is_prime(q)) {
        throw std::invalid_argument("sqrt_mod: modulus must be an odd prime");
    }
    mpz_class n;
    mpz_fdiv_r(n.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t());
    if (n == 0) {
        return Residue(0, q);
    }
    if (mpz_legendre(n.get_mpz_t(), q.get_mpz_t()) != 1) {
        return std::nullopt;
    }

    mpz_class r;
    if (mpz_tstbit(q.get_mpz_t(), 1)) {
        // q = 3 (mod 4)
        mpz_class e = (q + 1) / 4;
        mpz_powm(r.get_mpz_t(), n.get_mpz_t(), e.get_mpz_t(), q.get_mpz_t());
    } else {
        mpz_class odd = q - 1;
        unsigned long s = mpz_scan1(odd.get_mpz_t(), 0);
        mpz_fdiv_q_2exp(odd.get_mpz_t(), odd.get_mpz_t(), s);

        mpz_class z = 2;
        while (mpz_legendre(z.get_mpz_t(), q.get_mpz_t()) != -1) {
            ++z;
        }
        mpz_class c, t, e;
        mpz_powm(c.get_mpz_t(), z.get_mpz_t(), odd.get_mpz_t(), q.get_mpz_t());
        mpz_powm(t.get_mpz_t(), n.get_mpz_t(), odd.get_mpz_t(), q.get_mpz_t());
        e = (odd + 1) / 2;
        mpz_powm(r.get_mpz_t(), n.get_mpz_t(), e.get_mpz_t(), q.get_mpz_t());
        unsigned long m = s;
        while (t != 1) {
            // least i with t^(2^i) = 1
            unsigned long i = 0;
            mpz_class tt = t;
            while (tt != 1) {
                tt = (tt * tt) % q;
                ++i;
            }
            mpz_class b = c;
            for (unsigned long j = 0; j + i + 1 < m; ++j) {
                b = (b * b) % q;
            }
            m = i;
            c = (b * b) % q;
            t = (t * c) % q;
            r = (r * b) % q;
        }
    }
    mpz_class other = q - r;
    return Residue(r < other ? r : other, q);
}

/// Writes m = d * y^2 with d square-free. Trial division runs over candidate
/// divisors up to trial_bound (stopping early once the cofactor is
/// exhausted); the cofactor left over is accepted when it is 1, a perfect
/// square, a prime, or smaller than trial_bound^3 (then it has at most two
/// prime factors, both above the bound). Otherwise the split is undetermined.
inline std::optional<std::pair<mpz_class, mpz_class>> squarefree_split(const mpz_class &m,
                                                                       const mpz_class &trial_bound = 1000000) {
    if (m < 1) {
        throw std::invalid_argument("squarefree_split: m must be positive");
    }
    if (trial_bound < 1) {
        throw std::invalid_argument("squarefree_split: trial bound must be positive");
    }
    mpz_class rest = m;
    mpz_class d = 1, y = 1;

    auto strip = [&](const mpz_class &p) {
        unsigned e = 0;
        while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
            mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
            ++e;
        }
        for (unsigned i = 0; i + 1 < e; i += 2) {
            y *= p;
        }
        if (e % 2 == 1) {
            d *= p;
        }
    };

    mpz_class p = 2;
    bool exhausted = false;
    while (p <= trial_bound) {
        if (p * p > rest) {
            exhausted = true;
            break;
        }
        strip(p);
        p += (p == 2) ? 1 : 2;
    }
    if (rest == 1) {
        return std::make_pair(d, y);
    }
    if (exhausted) {
        // rest has no divisor <= sqrt(rest): it is prime
        d *= rest;
        return std::make_pair(d, y);
    }
    if (is_square(rest)) {
        y *= isqrt(rest);
        return std::make_pair(d, y);
    }
    if (is_prime(rest) || rest < trial_bound * trial_bound * trial_bound) {
        d *= rest;
        return std::make_pair(d, y);
    }
    return std::nullopt;
}

}  // namespace mntgen

#endif  // MNTGEN_ARITH_HPP
