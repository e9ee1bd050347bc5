// Copyright 2026 The mntgen Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

// Exact solver for X^2 - D*Y^2 = m.
//
// Nonsquare D: every solution is (f*X', f*Y') with f^2 | m and (X', Y')
// primitive for m' = m/f^2. Primitive solutions fall into classes indexed by
// z = X'/Y' mod |m'|, a root of z^2 = D (mod |m'|); each class, if nonempty,
// has a member among the PQa convergents of (z + sqrt(D))/|m'| within the
// preperiod plus two periods. Class members are then reduced by the
// fundamental unit and expanded to any bound on |X|.
//
// Square D = e^2: (X - eY)(X + eY) = m has finitely many solutions, read off
// from the divisor pairs of m.

#ifndef MNTGEN_PELL_HPP
#define MNTGEN_PELL_HPP

#include "mntgen/arith.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace mntgen {

struct PellInstance {
    mpz_class D;
    mpz_class m;
};

struct PellSolution {
    mpz_class X;
    mpz_class Y;

    friend bool operator==(const PellSolution &, const PellSolution &) = default;
};

/// Output order: |X|, then X (negative first), then Y.
inline bool solution_order(const PellSolution &a, const PellSolution &b) {
    const int c = cmpabs(a.X, b.X);
    if (c != 0) return c < 0;
    if (a.X != b.X) return a.X < b.X;
    return a.Y < b.Y;
}

struct ContinuedFraction {
    mpz_class a0;
    std::vector<mpz_class> period;
};

struct FundamentalUnit {
    mpz_class u;
    mpz_class v;
};

namespace detail {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

inline mpz_class floor_div(const mpz_class &a, const mpz_class &b) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline mpz_class to_mpz(std::int64_t v) {
    mpz_class r;
    mpz_set_si(r.get_mpz_t(), static_cast<long>(v));
    return r;
}

inline const mpz_class &to_mpz(const mpz_class &v) { return v; }

/// floor((P + sqrt(D)) / Q) for nonsquare D, root = isqrt(D).
template <class Int>
Int pq_quotient(const Int &P, const Int &Q, const Int &root) {
    if (Q > 0) {
        return floor_div(Int(P + root), Q);
    }
    return Int(-(floor_div(Int(P + root), Int(-Q)) + 1));
}

/// Walks the PQa recurrence for (P0 + sqrt(D))/Q0, Q0 | D - P0^2, through the
/// preperiod and two full periods. For each index i it calls
/// visit(i, a_i, norm_i) with norm_i = G_i^2 - D*B_i^2 = (-1)^(i+1) Q_{i+1} Q0;
/// the walk stops early when visit returns true.
template <class Int, class Visit>
void pqa_walk(const Int &D, const Int &P0, const Int &Q0, Visit &&visit) {
    Int root;
    if constexpr (std::is_same_v<Int, mpz_class>) {
        root = isqrt(D);
    } else {
        root = static_cast<Int>(isqrt(to_mpz(D)).get_si());
    }
    Int P = P0, Q = Q0;
    bool have_reduced = false;
    Int reduced_P = 0, reduced_Q = 0;
    std::size_t reduced_at = 0;
    std::size_t stop_at = 0;
    const std::size_t guard = 1u << 26;

    for (std::size_t i = 0; i < guard; ++i) {
        if (!have_reduced && Q > 0 && P <= root && Q > root - P && Q <= root + P) {
            have_reduced = true;
            reduced_P = P;
            reduced_Q = Q;
            reduced_at = i;
        } else if (have_reduced && stop_at == 0 && P == reduced_P && Q == reduced_Q) {
            stop_at = i + (i - reduced_at);
        }
        if (stop_at != 0 && i == stop_at) {
            return;
        }
        const Int a = pq_quotient(P, Q, root);
        const Int P1 = a * Q - P;
        const Int Q1 = (D - P1 * P1) / Q;
        Int norm = Q1 * Q0;
        if (i % 2 == 0) {
            norm = -norm;
        }
        if (visit(i, a, norm)) {
            return;
        }
        P = P1;
        Q = Q1;
    }
    throw std::runtime_error("pqa_walk: period not found within iteration guard");
}

inline bool fits_small(const mpz_class &D, const mpz_class &M) {
    return D > 0 && bit_length(D) <= 40 && bit_length(M) <= 20;
}

/// First convergent (G_i, B_i) of (z + sqrt(D))/M with G^2 - D*B^2 = target.
template <class Int>
bool pqa_first_hit(const Int &D, const Int &z, const Int &M, const Int &target, std::vector<Int> &quotients) {
    quotients.clear();
    bool found = false;
    pqa_walk<Int>(D, z, M, [&](std::size_t, const Int &a, const Int &norm) {
        quotients.push_back(a);
        if (norm == target) {
            found = true;
            return true;
        }
        return false;
    });
    return found;
}

/// Convergent of (z + sqrt(D))/M after the given partial quotients.
template <class Int>
std::pair<mpz_class, mpz_class> pqa_convergent(const mpz_class &z, const mpz_class &M,
                                               const std::vector<Int> &quotients) {
    mpz_class g2 = -z, g1 = M;  // G_{-2}, G_{-1}
    mpz_class b2 = 1, b1 = 0;   // B_{-2}, B_{-1}
    for (const auto &aq : quotients) {
        const mpz_class a = to_mpz(aq);
        mpz_class g = a * g1 + g2;
        mpz_class b = a * b1 + b2;
        g2 = std::move(g1);
        g1 = std::move(g);
        b2 = std::move(b1);
        b1 = std::move(b);
    }
    return {g1, b1};
}

inline void require_nonsquare(const mpz_class &D, const char *who) {
    if (D <= 0) {
        throw std::invalid_argument(std::string(who) + ": D must be positive");
    }
    if (is_square(D)) {
        throw std::invalid_argument(std::string(who) + ": D must not be a perfect square");
    }
}

inline std::pair<mpz_class, mpz_class> times_unit(const mpz_class &X, const mpz_class &Y, const mpz_class &D,
                                                  const FundamentalUnit &e) {
    return {X * e.u + D * Y * e.v, X * e.v + Y * e.u};
}

inline std::pair<mpz_class, mpz_class> over_unit(const mpz_class &X, const mpz_class &Y, const mpz_class &D,
                                                 const FundamentalUnit &e) {
    return {X * e.u - D * Y * e.v, Y * e.u - X * e.v};
}

inline void sort_unique(std::vector<PellSolution> &v) {
    std::sort(v.begin(), v.end(), solution_order);
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

/// One PQa hit per class of solutions (not yet reduced by the unit).
inline std::vector<PellSolution> raw_class_members(const mpz_class &D, const mpz_class &m) {
    std::vector<PellSolution> out;
    const mpz_class abs_m = abs(m);
    for (mpz_class f = 1; f * f <= abs_m; ++f) {
        const mpz_class f2 = f * f;
        if (!mpz_divisible_p(m.get_mpz_t(), f2.get_mpz_t())) {
            continue;
        }
        const mpz_class mp = m / f2;
        const mpz_class M = abs(mp);
        // z in (-M/2, M/2] with z^2 = D (mod M)
        mpz_class lo = -(M - 1) / 2;
        if (M == 1) lo = 0;
        for (mpz_class z = lo; 2 * z <= M; ++z) {
            mpz_class r = z * z - D;
            if (!mpz_divisible_p(r.get_mpz_t(), M.get_mpz_t())) {
                continue;
            }
            std::pair<mpz_class, mpz_class> gb;
            bool found;
            if (fits_small(D, M)) {
                std::vector<std::int64_t> qs;
                found = pqa_first_hit<std::int64_t>(D.get_si(), z.get_si(), M.get_si(), mp.get_si(), qs);
                if (found) gb = pqa_convergent(z, M, qs);
            } else {
                std::vector<mpz_class> qs;
                found = pqa_first_hit<mpz_class>(D, z, M, mp, qs);
                if (found) gb = pqa_convergent(z, M, qs);
            }
            if (!found) {
                continue;
            }
            if (gb.first * gb.first - D * gb.second * gb.second != mp) {
                throw std::logic_error("Pell: convergent does not satisfy the recorded norm");
            }
            out.push_back({f * gb.first, f * gb.second});
        }
    }
    return out;
}

}  // namespace detail

/// sqrt(D) = [a0; period...] for nonsquare D > 0.
inline ContinuedFraction cf_sqrt(const mpz_class &D) {
    detail::require_nonsquare(D, "cf_sqrt");
    ContinuedFraction cf;
    cf.a0 = isqrt(D);
    // (0 + sqrt(D))/1: a_0, then the period runs from index 1 until a_i = 2*a0.
    detail::pqa_walk<mpz_class>(D, 0, 1, [&](std::size_t i, const mpz_class &a, const mpz_class &) {
        if (i == 0) {
            return false;
        }
        cf.period.push_back(a);
        return a == 2 * cf.a0;
    });
    return cf;
}

/// Least (u, v), u, v >= 1, with u^2 - D*v^2 = 1.
inline FundamentalUnit fundamental_unit(const mpz_class &D) {
    detail::require_nonsquare(D, "fundamental_unit");
    const ContinuedFraction cf = cf_sqrt(D);
    const std::size_t len = cf.period.size();
    // convergent index len-1 (even period) or 2*len-1 (odd period)
    const std::size_t last = (len % 2 == 0) ? len - 1 : 2 * len - 1;
    mpz_class p2 = 0, p1 = 1, q2 = 1, q1 = 0;
    for (std::size_t i = 0; i <= last; ++i) {
        const mpz_class &a = (i == 0) ? cf.a0 : cf.period[(i - 1) % len];
        mpz_class p = a * p1 + p2;
        mpz_class q = a * q1 + q2;
        p2 = std::move(p1);
        p1 = std::move(p);
        q2 = std::move(q1);
        q1 = std::move(q);
    }
    if (p1 * p1 - D * q1 * q1 != 1) {
        throw std::logic_error("fundamental_unit: period convergent is not a unit");
    }
    return {p1, q1};
}

/// Finite solution set of X^2 - e^2*Y^2 = m with Y >= 0, for square D = e^2.
inline std::vector<PellSolution> degenerate_solutions(const PellInstance &inst) {
    if (inst.D <= 0 || !is_square(inst.D)) {
        throw std::invalid_argument("degenerate_solutions: D must be a positive perfect square");
    }
    if (inst.m == 0) {
        throw std::invalid_argument("degenerate_solutions: m must be nonzero");
    }
    const mpz_class e = isqrt(inst.D);
    const mpz_class abs_m = abs(inst.m);
    std::vector<PellSolution> out;
    auto try_pair = [&](const mpz_class &d1, const mpz_class &d2) {
        // d1 = X - eY, d2 = X + eY
        mpz_class sum = d1 + d2, diff = d2 - d1;
        if (mpz_odd_p(sum.get_mpz_t())) return;
        mpz_class two_e = 2 * e;
        if (!mpz_divisible_p(diff.get_mpz_t(), two_e.get_mpz_t())) return;
        mpz_class Y = diff / two_e;
        if (Y < 0) return;
        out.push_back({sum / 2, Y});
    };
    for (mpz_class d = 1; d * d <= abs_m; ++d) {
        if (!mpz_divisible_p(abs_m.get_mpz_t(), d.get_mpz_t())) continue;
        const mpz_class other = abs_m / d;
        for (const mpz_class &d1 : {d, other}) {
            for (int sign : {1, -1}) {
                mpz_class a = sign * d1;
                mpz_class b = inst.m / a;
                try_pair(a, b);
            }
        }
    }
    detail::sort_unique(out);
    return out;
}

/// Class representatives of X^2 - D*Y^2 = m for nonsquare D: in each class
/// the member with least |Y|, Y >= 0, listed with both signs of X. Every
/// solution is a representative times a power of the fundamental unit,
/// possibly with Y negated.
inline std::vector<PellSolution> fundamental_solutions(const PellInstance &inst) {
    detail::require_nonsquare(inst.D, "fundamental_solutions");
    if (inst.m == 0) {
        throw std::invalid_argument("fundamental_solutions: m must be nonzero");
    }
    std::vector<PellSolution> raw = detail::raw_class_members(inst.D, inst.m);
    if (raw.empty()) {
        return raw;
    }
    const FundamentalUnit e = fundamental_unit(inst.D);
    std::vector<PellSolution> out;
    for (auto [X, Y] : raw) {
        for (;;) {
            auto down = detail::over_unit(X, Y, inst.D, e);
            if (cmpabs(down.second, Y) < 0) {
                std::tie(X, Y) = down;
                continue;
            }
            auto up = detail::times_unit(X, Y, inst.D, e);
            if (cmpabs(up.second, Y) < 0) {
                std::tie(X, Y) = up;
                continue;
            }
            break;
        }
        if (Y < 0) {
            X = -X;
            Y = -Y;
        }
        out.push_back({X, Y});
        out.push_back({-X, Y});
    }
    detail::sort_unique(out);
    return out;
}

/// Every solution with |X| <= x_bound, Y >= 0, in solution_order.
inline std::vector<PellSolution> solutions_up_to(const PellInstance &inst, const mpz_class &x_bound) {
    if (inst.m == 0) {
        throw std::invalid_argument("Pell: m must be nonzero");
    }
    if (inst.D <= 0) {
        throw std::invalid_argument("Pell: D must be positive");
    }
    std::vector<PellSolution> out;
    if (is_square(inst.D)) {
        for (auto &s : degenerate_solutions(inst)) {
            if (cmpabs(s.X, x_bound) <= 0) out.push_back(std::move(s));
        }
        return out;
    }
    const std::vector<PellSolution> reps = fundamental_solutions(inst);
    if (reps.empty()) {
        return out;
    }
    const FundamentalUnit e = fundamental_unit(inst.D);
    for (const auto &rep : reps) {
        for (int sy : {1, -1}) {
            mpz_class X = rep.X, Y = sy * rep.Y;
            // |X| along the orbit decreases, then increases
            for (;;) {
                if (cmpabs(X, x_bound) <= 0) {
                    out.push_back({X, abs(Y)});
                }
                auto next = detail::times_unit(X, Y, inst.D, e);
                if (cmpabs(next.first, x_bound) > 0 && cmpabs(next.first, X) >= 0) {
                    break;
                }
                std::tie(X, Y) = next;
            }
        }
    }
    detail::sort_unique(out);
    return out;
}

/// Every solution with |X| < 2^limit_bits.
inline std::vector<PellSolution> iterate_solutions(const PellInstance &inst, unsigned limit_bits) {
    if (limit_bits == 0) {
        throw std::invalid_argument("iterate_solutions: limit_bits must be positive");
    }
    mpz_class bound;
    mpz_ui_pow_ui(bound.get_mpz_t(), 2, limit_bits);
    return solutions_up_to(inst, bound - 1);
}

}  // namespace mntgen

#endif  // MNTGEN_PELL_HPP
