// Copyright 2026 The mntgen Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

// Curve parameter search.
//
// Pell-driven mode walks square-free |Delta| upward, solves
// X^2 - 3|Delta|Y^2 = m once per discriminant, inverts X = alpha*x + beta for
// every family and keeps the x whose p(x), n(x) are prime. Direct-scan mode
// walks x instead and recovers (Delta, Y) from the square-free part of
// 4p - t^2. Both modes emit the same record.

#ifndef MNTGEN_SEARCH_HPP
#define MNTGEN_SEARCH_HPP

#include "mntgen/arith.hpp"
#include "mntgen/families.hpp"
#include "mntgen/pell.hpp"
#include "mntgen/poly.hpp"
#include "mntgen/report.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <climits>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace mntgen {

/// Everything needed to re-verify a parameter set without its family.
struct CurveParameters {
    int k = 6;
    mpz_class q = 1;
    mpz_class p;
    mpz_class n;
    mpz_class t;
    mpz_class delta;
    mpz_class Y;
};

struct CurveCandidate {
    FamilySpec family;
    mpz_class x;
    mpz_class X;  // alpha*x + beta
    mpz_class p;
    mpz_class n;
    mpz_class t;
    mpz_class delta;
    mpz_class Y;

    CurveParameters parameters() const { return {family.k, family.q, p, n, t, delta, Y}; }

    friend bool operator==(const CurveCandidate &, const CurveCandidate &) = default;
};

/// Emission order: |Delta|, |X|, branch, s, X, x.
inline bool candidate_order(const CurveCandidate &a, const CurveCandidate &b) {
    if (int c = cmpabs(a.delta, b.delta); c != 0) return c < 0;
    if (int c = cmpabs(a.X, b.X); c != 0) return c < 0;
    if (a.family.branch != b.family.branch) return a.family.branch < b.family.branch;
    if (a.family.s != b.family.s) return a.family.s < b.family.s;
    if (a.X != b.X) return a.X < b.X;
    return a.x < b.x;
}

/// Inclusive bound on the bit length of p.
struct BitWindow {
    unsigned min_bits = 0;
    unsigned max_bits = UINT_MAX;

    bool contains(const mpz_class &v) const {
        const std::size_t b = bit_length(v);
        return b >= min_bits && b <= max_bits;
    }
};

enum class SearchMode { PellDriven, DirectScan };

struct SearchConfig {
    int k = 6;
    mpz_class q = 1;
    bool branch_a = true;
    bool branch_b = true;
    std::uint64_t delta_min = 1;
    std::uint64_t delta_max = 10000;
    unsigned x_bits_max = 64;
    BitWindow p_bits;
    std::size_t max_hits = 0;  // 0: unlimited
    SearchMode mode = SearchMode::PellDriven;
    mpz_class x_min = -10000;
    mpz_class x_max = 10000;
    mpz_class trial_bound = 1000000;
    unsigned jobs = 1;
    std::function<void(const std::string &)> diagnostics;

    void validate() const {
        if (!is_supported_degree(k)) throw std::invalid_argument("k must be 3, 4 or 6");
        if (q < 1) throw std::invalid_argument("q must be positive");
        if (!branch_a && !branch_b) throw std::invalid_argument("no branch selected");
        if (delta_min < 1) throw std::invalid_argument("delta_min must be >= 1");
        if (delta_max < delta_min) throw std::invalid_argument("empty discriminant range");
        if (x_bits_max == 0) throw std::invalid_argument("x_bits_max must be positive");
        if (p_bits.max_bits < p_bits.min_bits) throw std::invalid_argument("empty bit window");
        if (x_max < x_min) throw std::invalid_argument("empty scan range");
        if (trial_bound < 1) throw std::invalid_argument("trial_bound must be positive");
    }
};

inline std::optional<mpz_class> recover_x(const QuadraticFamily &fam, const mpz_class &X) {
    const mpz_class num = X - fam.pell.beta;
    if (!mpz_divisible_p(num.get_mpz_t(), fam.pell.alpha.get_mpz_t())) {
        return std::nullopt;
    }
    mpz_class x;
    mpz_divexact(x.get_mpz_t(), num.get_mpz_t(), fam.pell.alpha.get_mpz_t());
    return x;
}

/// n > k and n | Phi_k(p).
inline bool embedding_degree_holds(const mpz_class &p, const mpz_class &n, int k) {
    if (n <= k) {
        return false;
    }
    const mpz_class v = cyclotomic(k)(p);
    return mpz_divisible_p(v.get_mpz_t(), n.get_mpz_t()) != 0;
}

inline bool is_squarefree(const mpz_class &m) {
    if (m < 1) return false;
    auto split = squarefree_split(m);
    return split && split->second == 1;
}

/// Re-verifies a parameter set from (k, q, p, n, t, Delta, Y) alone.
inline VerificationReport verify_candidate(const CurveParameters &c) {
    VerificationReport r;
    if (!is_supported_degree(c.k)) {
        r.add("k", false, "embedding degree must be 3, 4 or 6");
        return r;
    }
    r.add("q_positive", c.q >= 1);
    r.add("p_prime", is_prime(c.p));
    r.add("n_prime", is_prime(c.n));
    r.add("n_exceeds_k", c.n > c.k);
    r.add("n_distinct_from_q", c.n != c.q);
    r.add("order_identity", c.q * c.n == c.p + 1 - c.t, "q*n must equal p + 1 - t");
    r.add("cm_equation", c.Y > 0 && c.t * c.t - 4 * c.p == c.delta * c.Y * c.Y, "t^2 - 4p must equal Delta*Y^2");
    {
        bool ok = c.delta < 0;
        std::string detail;
        if (ok) {
            auto split = squarefree_split(mpz_class(-c.delta));
            ok = split && split->second == 1;
            if (!split) detail = "square-freeness undetermined";
        }
        r.add("delta_squarefree", ok, detail);
    }
    r.add("hasse_bound", c.t * c.t <= 4 * c.p, "t^2 must not exceed 4p");
    r.add("trace_nondegenerate", c.t != 0 && c.t != 1 && c.t != 2);
    {
        const mpz_class qn = c.q * c.n;
        bool ok = qn > 0;
        if (ok) {
            const mpz_class v = cyclotomic(c.k)(c.p);
            ok = mpz_divisible_p(v.get_mpz_t(), qn.get_mpz_t()) != 0;
        }
        r.add("embedding_divisibility", ok, "q*n must divide Phi_k(p)");
    }
    r.add("embedding_degree", embedding_degree_holds(c.p, c.n, c.k));
    return r;
}

namespace detail {

/// Evaluates the family at x and applies every filter; Delta and Y come from
/// the caller and are checked against the CM identity.
inline std::optional<CurveCandidate> finish_candidate(const QuadraticFamily &fam, const mpz_class &x,
                                                      const mpz_class &delta, const mpz_class &Y,
                                                      const BitWindow &window) {
    const int k = fam.spec.k;
    CurveCandidate c;
    c.family = fam.spec;
    c.x = x;
    c.X = fam.pell.alpha * x + fam.pell.beta;
    c.p = fam.p(x);
    c.n = fam.n(x);
    c.t = fam.t(x);
    c.delta = delta;
    c.Y = Y;

    if (c.n <= k || c.n == fam.spec.q) return std::nullopt;
    if (c.t == 0 || c.t == 1 || c.t == 2) return std::nullopt;
    if (!window.contains(c.p)) return std::nullopt;
    if (Y <= 0 || c.t * c.t > 4 * c.p) return std::nullopt;
    if (!is_prime(c.n) || !is_prime(c.p)) return std::nullopt;
    if (c.t * c.t - 4 * c.p != delta * Y * Y) {
        throw std::logic_error("search: CM identity fails at x = " + x.get_str());
    }
    if (fam.spec.q * c.n != c.p + 1 - c.t) {
        throw std::logic_error("search: order identity fails at x = " + x.get_str());
    }
    const mpz_class qn = fam.spec.q * c.n;
    const mpz_class phi = cyclotomic(k)(c.p);
    if (!mpz_divisible_p(phi.get_mpz_t(), qn.get_mpz_t())) return std::nullopt;
    if (!embedding_degree_holds(c.p, c.n, k)) return std::nullopt;
    return c;
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint64_t> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

inline mpz_class to_mpz_u64(std::uint64_t v) {
    mpz_class r;
    mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return r;
}

inline std::uint64_t isqrt_u64(std::uint64_t v) { return isqrt(to_mpz_u64(v)).get_ui(); }

/// Square-free integers in [lo, hi]; primes must cover sqrt(hi).
inline std::vector<std::uint64_t> squarefree_segment(std::uint64_t lo, std::uint64_t hi,
                                                     const std::vector<std::uint64_t> &primes) {
    std::vector<bool> bad(hi - lo + 1, false);
    for (std::uint64_t p : primes) {
        const std::uint64_t sq = p * p;
        if (sq > hi) break;
        std::uint64_t start = ((lo + sq - 1) / sq) * sq;
        for (std::uint64_t v = start; v <= hi; v += sq) bad[v - lo] = true;
    }
    std::vector<std::uint64_t> out;
    for (std::uint64_t v = lo; v <= hi; ++v) {
        if (!bad[v - lo]) out.push_back(v);
    }
    return out;
}

/// Runs work(i) for chunk indices in ascending order of claim across jobs
/// threads. With max_hits > 0, chunks beyond the first completed prefix
/// holding max_hits results are not started.
template <class Work>
std::vector<std::vector<CurveCandidate>> run_chunks(std::size_t chunks, unsigned jobs, std::size_t max_hits,
                                                    Work &&work) {
    std::vector<std::vector<CurveCandidate>> results(chunks);
    std::vector<char> done(chunks, 0);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> limit{chunks};
    std::mutex mu;
    std::size_t prefix = 0, prefix_hits = 0;
    std::exception_ptr failure;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= limit.load()) return;
            std::vector<CurveCandidate> local;
            try {
                local = work(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!failure) failure = std::current_exception();
                limit.store(0);
                return;
            }
            std::lock_guard<std::mutex> lock(mu);
            results[i] = std::move(local);
            done[i] = 1;
            while (prefix < chunks && done[prefix]) {
                prefix_hits += results[prefix].size();
                ++prefix;
                if (max_hits > 0 && prefix_hits >= max_hits && limit.load() > prefix) {
                    limit.store(prefix);
                }
            }
        }
    };

    const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(chunks, 1))));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < n; ++j) pool.emplace_back(worker);
        for (auto &th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    return results;
}

}  // namespace detail

/// Candidate from one Pell solution, using X_sign * sol.X as X.
inline std::optional<CurveCandidate> candidate_from_solution(const QuadraticFamily &fam, const mpz_class &delta,
                                                             const PellSolution &sol, int x_sign,
                                                             const BitWindow &window = {}) {
    const mpz_class X = x_sign < 0 ? mpz_class(-sol.X) : sol.X;
    const auto x = recover_x(fam, X);
    if (!x) {
        return std::nullopt;
    }
    return detail::finish_candidate(fam, *x, delta, sol.Y, window);
}

/// Square-free integers in [lo, hi].
inline std::vector<std::uint64_t> squarefree_in_range(std::uint64_t lo, std::uint64_t hi) {
    if (hi < lo) return {};
    return detail::squarefree_segment(lo, hi, detail::primes_up_to(detail::isqrt_u64(hi)));
}

inline std::vector<CurveCandidate> run_search(const SearchConfig &cfg) {
    cfg.validate();
    auto diag = [&](const std::string &msg) {
        if (cfg.diagnostics) cfg.diagnostics(msg);
    };
    if (!admissible_cofactor(cfg.k, cfg.q)) {
        throw std::invalid_argument("cofactor " + cfg.q.get_str() + " is not admissible for k=" +
                                    std::to_string(cfg.k));
    }
    const std::vector<QuadraticFamily> fams = families_for(cfg.k, cfg.q, cfg.branch_a, cfg.branch_b);
    if (cfg.q > 1 && cfg.q <= cfg.k) {
        diag("warning: cofactor q=" + cfg.q.get_str() + " does not exceed k=" + std::to_string(cfg.k) +
             "; only q*n | Phi_k(p) is checked for it");
    }

    std::vector<std::vector<CurveCandidate>> chunks;
    if (cfg.mode == SearchMode::PellDriven) {
        constexpr std::uint64_t chunk_size = 256;
        const std::uint64_t span = cfg.delta_max - cfg.delta_min;
        const std::size_t count = static_cast<std::size_t>(span / chunk_size + 1);
        const auto primes = detail::primes_up_to(detail::isqrt_u64(cfg.delta_max));
        mpz_class bound;
        mpz_ui_pow_ui(bound.get_mpz_t(), 2, cfg.x_bits_max);
        bound -= 1;
        const mpz_class m = fams.empty() ? mpz_class(0) : fams.front().pell.m;

        chunks = detail::run_chunks(count, cfg.jobs, cfg.max_hits, [&](std::size_t i) {
            std::vector<CurveCandidate> out;
            if (fams.empty()) return out;
            const std::uint64_t lo = cfg.delta_min + i * chunk_size;
            const std::uint64_t hi = std::min(cfg.delta_max, lo + chunk_size - 1);
            for (std::uint64_t d : detail::squarefree_segment(lo, hi, primes)) {
                const mpz_class abs_delta = detail::to_mpz_u64(d);
                const mpz_class delta = -abs_delta;
                const auto sols = solutions_up_to(PellInstance{3 * abs_delta, m}, bound);
                for (const auto &fam : fams) {
                    for (const auto &sol : sols) {
                        if (sol.X < 0) continue;
                        for (int sign : {1, -1}) {
                            if (sign < 0 && sol.X == 0) continue;
                            if (auto c = candidate_from_solution(fam, delta, sol, sign, cfg.p_bits)) {
                                out.push_back(std::move(*c));
                            }
                        }
                    }
                }
            }
            std::sort(out.begin(), out.end(), candidate_order);
            return out;
        });
    } else {
        constexpr unsigned long chunk_size = 1024;
        const mpz_class span = cfg.x_max - cfg.x_min;
        const std::size_t count = mpz_class(span / chunk_size + 1).get_ui();
        const mpz_class dmin = detail::to_mpz_u64(cfg.delta_min), dmax = detail::to_mpz_u64(cfg.delta_max);
        std::mutex diag_mu;

        chunks = detail::run_chunks(count, cfg.jobs, 0, [&](std::size_t i) {
            std::vector<CurveCandidate> out;
            const mpz_class lo = cfg.x_min + mpz_class(chunk_size) * static_cast<unsigned long>(i);
            mpz_class hi = lo + (chunk_size - 1);
            if (hi > cfg.x_max) hi = cfg.x_max;
            for (mpz_class x = lo; x <= hi; ++x) {
                for (const auto &fam : fams) {
                    const mpz_class p = fam.p(x), n = fam.n(x), t = fam.t(x);
                    if (n <= cfg.k || n == cfg.q || t == 0 || t == 1 || t == 2) continue;
                    if (!cfg.p_bits.contains(p)) continue;
                    if (!is_prime(n) || !is_prime(p)) continue;
                    const mpz_class gap = 4 * p - t * t;
                    if (gap <= 0) continue;
                    const auto split = squarefree_split(gap, cfg.trial_bound);
                    if (!split) {
                        std::lock_guard<std::mutex> lock(diag_mu);
                        diag("scan: cannot split 4p - t^2 = " + gap.get_str() + " at x = " + x.get_str() +
                             "; skipped");
                        continue;
                    }
                    if (split->first < dmin || split->first > dmax) continue;
                    if (auto c = detail::finish_candidate(fam, x, -split->first, split->second, cfg.p_bits)) {
                        out.push_back(std::move(*c));
                    }
                }
            }
            return out;
        });
    }

    std::vector<CurveCandidate> all;
    for (auto &c : chunks) {
        all.insert(all.end(), std::make_move_iterator(c.begin()), std::make_move_iterator(c.end()));
    }
    std::sort(all.begin(), all.end(), candidate_order);
    if (cfg.max_hits > 0 && all.size() > cfg.max_hits) {
        all.resize(cfg.max_hits);
    }
    return all;
}

}  // namespace mntgen

#endif  // MNTGEN_SEARCH_HPP
