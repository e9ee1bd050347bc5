// Copyright 2026 The mntgen Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

// Acceptance run: one line per criterion, "PASS" only when the check holds
// and the wall time stays inside its budget. Exit status 0 iff all pass.

#include "mntgen/cli.hpp"
#include "mntgen/mntgen.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

using namespace mntgen;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string &what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

struct Criterion {
    int id;
    const char *title;
    double budget_seconds;
    std::function<Outcome()> body;
};

unsigned jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

QuadraticFamily fam(int k, long q, long s, Branch b) { return build_family(FamilySpec{k, q, s, b}); }

bool same_up_to_sign(const IntPolynomial &a, const IntPolynomial &b) { return a == b || a == -b; }

// ---------------------------------------------------------------------------

Outcome classic_table() {
    Outcome o;
    const IntPolynomial two_y{0, 2}, minus_x{0, -1};
    struct Row {
        int k;
        IntPolynomial sub;
        IntPolynomial n_a, n_b, p, t_a, t_b, x_a, x_b;
        long m;
    };
    const std::vector<Row> rows = {
        {6, two_y, {1, 2, 4}, {1, -2, 4}, {1, 0, 4}, {1, -2}, {1, 2}, {1, 6}, {-1, 6}, -8},
        {4, minus_x, {1, 0, 1}, {2, 2, 1}, {1, 1, 1}, {1, 1}, {0, -1}, {1, 3}, {2, 3}, -8},
        {3, two_y, {1, -6, 12}, {1, 6, 12}, {-1, 0, 12}, {-1, 6}, {-1, -6}, {3, 6}, {-3, 6}, 24},
    };
    for (const auto &r : rows) {
        const auto a = fam(r.k, 1, 0, Branch::A), b = fam(r.k, 1, 0, Branch::B);
        const std::string k = "k=" + std::to_string(r.k) + ": ";
        o.require(compose(a.n, r.sub) == r.n_a && compose(b.n, r.sub) == r.n_b, k + "n mismatch");
        o.require(compose(a.p, r.sub) == r.p && compose(b.p, r.sub) == r.p, k + "p mismatch");
        o.require(compose(a.t, r.sub) == r.t_a && compose(b.t, r.sub) == r.t_b, k + "t mismatch");
        o.require(same_up_to_sign(compose(a.pell.x_polynomial(), r.sub), r.x_a) &&
                      same_up_to_sign(compose(b.pell.x_polynomial(), r.sub), r.x_b),
                  k + "Pell X mismatch");
        o.require(a.pell.m == r.m && b.pell.m == r.m, k + "Pell constant mismatch");
    }
    if (o.ok) o.detail = "3 rows x 2 branches; Pell X compared up to sign";
    return o;
}

Outcome small_cofactor_table() {
    Outcome o;
    const auto r1 = fam(4, 2, 1, Branch::A);
    o.require(r1.n == IntPolynomial{1, 2, 2} && r1.p == IntPolynomial{1, 2, 4} && r1.t == IntPolynomial{0, -2},
              "row q=2 s=1");
    const auto r2 = fam(4, 5, 2, Branch::A);
    o.require(r2.n == IntPolynomial{1, 4, 5} && r2.p == IntPolynomial{3, 15, 25} && r2.t == IntPolynomial{-1, -5},
              "row q=5 s=2");
    const auto r3 = fam(4, 5, 3, Branch::A);
    o.require(r3.n == IntPolynomial{2, 6, 5} && r3.p == IntPolynomial{7, 25, 25}, "row q=5 s=3 n, p");
    o.require(r3.t == IntPolynomial{-2, -5}, "row q=5 s=3 derived t should be -5x-2, got " + r3.t.to_string());
    o.require(mpz_class(5) * r3.n != r3.p + IntPolynomial{1} - IntPolynomial{-1, -5},
              "printed t -5x-1 unexpectedly satisfies the identity");

    // the tool's own stderr must carry the warning
    const char *argv[] = {"mntgen", "families", "--k", "4", "--q", "5"};
    std::istringstream in;
    std::ostringstream out, err;
    const int code = cli::run(6, argv, in, out, err);
    o.require(code == 0, "families --k 4 --q 5 exited " + std::to_string(code));
    const std::string e = err.str();
    o.require(e.find("prints t = -5x-1") != std::string::npos && e.find("-5x-2") != std::string::npos,
              "no erratum warning for the printed -5x-1");
    if (o.ok) o.detail = "3 rows; erratum warning emitted for printed t=-5x-1 (derived -5x-2)";
    return o;
}

Outcome factorization_identities() {
    Outcome o;
    const IntPolynomial phi3 = cyclotomic(3), phi4 = cyclotomic(4), phi6 = cyclotomic(6);
    const IntPolynomial phi4_shift{2, -2, 1};
    o.require(compose(phi6, phi4) == phi3 * phi6, "Phi6(Phi4) != Phi3*Phi6");
    o.require(compose(phi4, phi6) == phi4 * phi4_shift, "Phi4(Phi6) != Phi4(x)Phi4(x-1)");
    o.require(compose(phi3, aux_g(0)) == aux_g(1) * aux_g(2), "Phi3(g0) != g1*g2");

    std::mt19937_64 rng(20260101);
    std::uniform_int_distribution<long> xs(-1000, 1000);
    const std::vector<std::pair<IntPolynomial, IntPolynomial>> sides = {
        {compose(phi6, phi4), phi3 * phi6}, {compose(phi4, phi6), phi4 * phi4_shift},
        {compose(phi3, aux_g(0)), aux_g(1) * aux_g(2)}};
    const std::vector<std::pair<IntPolynomial, IntPolynomial>> parts = {
        {phi6, phi4}, {phi4, phi6}, {phi3, aux_g(0)}};
    for (std::size_t i = 0; i < sides.size(); ++i) {
        for (int j = 0; j < 10000; ++j) {
            const mpz_class x = xs(rng);
            const mpz_class direct = parts[i].first(parts[i].second(x));
            o.require(sides[i].first(x) == direct && sides[i].second(x) == direct,
                      "pointwise disagreement at x=" + x.get_str());
        }
    }
    if (o.ok) o.detail = "3 identities exact; 3 x 10^4 random points agree";
    return o;
}

Outcome family_mass_verification() {
    Outcome o;
    std::size_t total = 0;
    for (int k : {3, 4, 6}) {
        int primes = 0;
        for (unsigned long q = 2; primes < 50; ++q) {
            if (!admissible_cofactor(k, q) || q == 1) continue;
            ++primes;
            std::size_t here = 0;
            for (Branch b : {Branch::A, Branch::B}) {
                for (const auto &s : find_roots(k, q, b)) {
                    const auto f = build_family({k, q, s, b});
                    const auto r = verify_family(f);
                    o.require(r.all_passed(), "k=" + std::to_string(k) + " q=" + std::to_string(q) +
                                                  " s=" + s.get_str() + " failed checks");
                    const mpz_class expect = k == 4 ? -4 : -3;
                    o.require(discriminant(f.n) == expect,
                              "k=" + std::to_string(k) + " q=" + std::to_string(q) + " n discriminant " +
                                  discriminant(f.n).get_str());
                    ++here;
                }
            }
            o.require(here > 0, "no families for k=" + std::to_string(k) + " q=" + std::to_string(q));
            total += here;
        }
    }
    if (o.ok) o.detail = std::to_string(total) + " families over 3 x 50 cofactors, all checks pass";
    return o;
}

Outcome pell_oracle() {
    Outcome o;
    std::size_t instances = 0, solutions = 0;
    for (long D = 2; D <= 500; ++D) {
        if (oracle::is_square128(D)) continue;
        for (long m : {-8L, 24L}) {
            const auto got = solutions_up_to({D, m}, 1000000);
            std::set<std::pair<long long, long long>> mine;
            for (const auto &s : got) mine.insert({s.X.get_si(), s.Y.get_si()});
            const auto brute = oracle::pell_by_scan(D, m, 1000000);
            o.require(mine == brute && mine.size() == got.size(),
                      "D=" + std::to_string(D) + " m=" + std::to_string(m) + " set mismatch");
            ++instances;
            solutions += got.size();
        }
    }
    // fundamental units: exhaustive scan up to the cap, mediant descent beyond
    const std::uint64_t cap = std::uint64_t{1} << 31;
    std::size_t scanned = 0;
    std::vector<long> beyond;
    for (long D = 2; D <= 200; ++D) {
        if (oracle::is_square128(D)) continue;
        const auto e = fundamental_unit(D);
        const std::uint64_t v = oracle::unit_scan_capped(D, cap);
        if (v != 0) {
            o.require(e.v == mpz_class(std::to_string(v)), "unit mismatch at D=" + std::to_string(D));
            ++scanned;
        } else {
            o.require(e.v > mpz_class(std::to_string(cap)), "scan missed unit at D=" + std::to_string(D));
            beyond.push_back(D);
        }
        const auto [u, w] = oracle::unit_by_mediants<mpz_class>(mpz_class(D));
        o.require(e.u == u && e.v == w, "mediant descent disagrees at D=" + std::to_string(D));
    }
    if (o.ok) {
        std::string list;
        for (long D : beyond) list += (list.empty() ? "" : ",") + std::to_string(D);
        o.detail = std::to_string(instances) + " instances, " + std::to_string(solutions) +
                   " solutions equal; units: " + std::to_string(scanned) + " by exhaustive scan, D=" + list +
                   " have v > 2^31 (scan proves none below; mediant descent agrees)";
    }
    return o;
}

Outcome known_candidate() {
    Outcome o;
    SearchConfig cfg;
    cfg.k = 6;
    cfg.q = 1;
    cfg.branch_a = false;
    cfg.delta_max = 50;
    cfg.jobs = jobs();
    const auto hits = run_search(cfg);
    const CurveCandidate *known = nullptr;
    for (const auto &c : hits) {
        if (c.x == 4 && c.p == 17 && c.n == 13 && c.t == 5 && c.delta == -43 && c.Y == 1) known = &c;
    }
    o.require(known != nullptr, "candidate x=4 p=17 n=13 t=5 delta=-43 Y=1 not found");
    if (!known) return o;

    const std::string record = to_json(*known).dump() + "\n";
    const char *argv[] = {"mntgen", "verify"};
    std::istringstream in(record);
    std::ostringstream out, err;
    const int code = cli::run(2, argv, in, out, err);
    o.require(code == 0, "verify rejected the record: " + out.str());
    if (o.ok) o.detail = std::to_string(hits.size()) + " hits for |Delta| <= 50, known candidate present and verified";
    return o;
}

using HitKey = std::tuple<int, std::string, char, std::string, std::string, std::string, std::string>;

HitKey key_of(const CurveCandidate &c) {
    return {c.family.k, c.family.s.get_str(), to_string(c.family.branch)[0], c.x.get_str(), c.p.get_str(),
            c.delta.get_str(), c.Y.get_str()};
}

Outcome cross_path() {
    Outcome o;
    const std::vector<std::pair<int, std::vector<long>>> grid = {{6, {1, 3, 7}}, {4, {1, 2, 5}}, {3, {1, 7, 13}}};
    std::size_t total = 0;
    std::string counts;
    for (const auto &[k, qs] : grid) {
        for (long q : qs) {
            SearchConfig scan;
            scan.k = k;
            scan.q = q;
            scan.mode = SearchMode::DirectScan;
            scan.x_min = -10000;
            scan.x_max = 10000;
            scan.delta_max = 100000;
            scan.trial_bound = 1000000;
            scan.jobs = jobs();
            std::size_t undetermined = 0;
            scan.diagnostics = [&undetermined](const std::string &m) {
                if (m.rfind("scan:", 0) == 0) ++undetermined;
            };

            SearchConfig pell = scan;
            pell.mode = SearchMode::PellDriven;
            pell.x_bits_max = 64;
            pell.diagnostics = nullptr;

            std::set<HitKey> a, b;
            for (const auto &c : run_search(scan)) a.insert(key_of(c));
            for (const auto &c : run_search(pell)) {
                if (c.x >= -10000 && c.x <= 10000) b.insert(key_of(c));
                o.require(verify_candidate(c.parameters()).all_passed(), "pell hit fails verification");
            }
            const std::string tag = "k=" + std::to_string(k) + " q=" + std::to_string(q);
            o.require(undetermined == 0, tag + ": scan could not split " + std::to_string(undetermined) + " values");
            o.require(a == b, tag + ": scan " + std::to_string(a.size()) + " vs pell " + std::to_string(b.size()));
            counts += (counts.empty() ? "" : " ") + std::to_string(a.size());
            total += a.size();
        }
    }
    if (o.ok) o.detail = "9 (k,q) pairs, " + std::to_string(total) + " hits, sets equal [" + counts + "]";
    return o;
}

Outcome scale_check() {
    Outcome o;
    SearchConfig cfg;
    cfg.k = 6;
    cfg.q = 7;
    cfg.delta_max = 100000;
    cfg.p_bits = BitWindow{60, 80};
    cfg.x_bits_max = 80 / 2 + 4;
    cfg.jobs = jobs();
    const auto hits = run_search(cfg);
    std::size_t violations = 0;
    for (const auto &c : hits) {
        const CurveParameters p = c.parameters();
        bool ok = verify_candidate(p).all_passed();
        // second opinion from GMP's own primality routine
        ok = ok && mpz_probab_prime_p(p.p.get_mpz_t(), 40) != 0 && mpz_probab_prime_p(p.n.get_mpz_t(), 40) != 0;
        // multiplicative order of p modulo n is exactly 6
        mpz_class r;
        for (unsigned long e : {1ul, 2ul, 3ul}) {
            mpz_powm_ui(r.get_mpz_t(), p.p.get_mpz_t(), e, p.n.get_mpz_t());
            ok = ok && r != 1;
        }
        mpz_powm_ui(r.get_mpz_t(), p.p.get_mpz_t(), 6, p.n.get_mpz_t());
        ok = ok && r == 1;
        const std::size_t bits = bit_length(p.p);
        ok = ok && bits >= 60 && bits <= 80;
        ok = ok && p.t * p.t - 4 * p.p == p.delta * p.Y * p.Y && -p.delta <= 100000;
        if (!ok) ++violations;
    }
    o.require(violations == 0, std::to_string(violations) + " invariant violations");
    if (o.ok) o.detail = std::to_string(hits.size()) + " hits in [60,80] bits, 0 violations";
    return o;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "classic families reproduce the q=1 table", 1, classic_table},
        {2, "small-cofactor k=4 table with derived trace and erratum warning", 1, small_cofactor_table},
        {3, "cyclotomic factorization identities", 1, factorization_identities},
        {4, "family mass verification, 50 cofactors per k", 30, family_mass_verification},
        {5, "Pell solver equals brute force; fundamental units", 60, pell_oracle},
        {6, "known end-to-end candidate and verify", 5, known_candidate},
        {7, "scan and Pell search agree on x in [-1e4, 1e4], |Delta| <= 1e5", 600, cross_path},
        {8, "k=6 q=7 search, p in [60,80] bits, |Delta| <= 1e5", 900, scale_check},
    };
    int failures = 0;
    for (const auto &c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception &e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs <= c.budget_seconds;
        const bool pass = o.ok && in_time;
        if (!in_time && o.ok) o.detail += " (over budget)";
        failures += pass ? 0 : 1;
        std::printf("criterion %d %s: %s [%.2f s / %.0f s] %s\n", c.id, pass ? "PASS" : "FAIL", c.title, secs,
                    c.budget_seconds, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
